"""User surface: configuration, mesh export and the command line."""
from .cli import RunResult, main, run
from .config import JobConfig, build_config
from .mesh import MeshFile, export_mesh, read_obj

__all__ = ["JobConfig", "MeshFile", "RunResult", "build_config", "export_mesh", "main",
           "read_obj", "run"]
