"""Darboux transforms of Delaunay cylinders: bubbletons and their Bianchi permutations."""
from ._accel import backend_name, use_backend
from .algebra import Quaternion
from .bianchi import Stage, TransformPipeline, build_pipeline, permute, stage_from_pair
from .darboux import DarbouxSurface, bubbleton, make_darboux_surface, transform_point
from .delaunay import DelaunayProfile, make_profile, position
from .errors import BubbletonError
from .resonance import admissible, catalog, resonance_mu
from .spectral import SpectralData, section, spectral_data

__version__ = "0.1.0"

__all__ = [
    "BubbletonError", "DarbouxSurface", "DelaunayProfile", "Quaternion", "SpectralData", "Stage",
    "TransformPipeline", "admissible", "backend_name", "bubbleton", "build_pipeline", "catalog",
    "make_darboux_surface", "make_profile", "permute", "position", "resonance_mu", "section",
    "spectral_data", "stage_from_pair", "transform_point", "use_backend",
]
