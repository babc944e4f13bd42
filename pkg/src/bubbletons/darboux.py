"""mu-Darboux transforms of Delaunay surfaces: f_hat = f + T with
T^{-1} = (N (a - 1) + alpha b alpha^{-1}) / 2.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import EPS_INV, Quaternion, mul
from .delaunay import DelaunayProfile, frame, make_profile
from .errors import NearZeroQuaternion, NotClosed, SingularT, ZeroSection
from .resonance import resonance_mu
from .spectral import ParallelSection, SpectralData, spectral_data

REAL_PART_TOL = 1e-12


def _as_quaternion(v) -> Quaternion:
    return v if isinstance(v, Quaternion) else Quaternion.from_vector(v)


def inverse_T(N: Quaternion, alpha: Quaternion, spec: SpectralData, eps: float = EPS_INV) -> Quaternion:
    """T^{-1}; alpha b alpha^{-1} is formed as beta (alpha i alpha^{-1}) so it stays imaginary."""
    try:
        ainv = alpha.inverse(eps)
    except NearZeroQuaternion as exc:
        raise ZeroSection("parallel section vanishes") from exc
    rotated_i = mul(alpha * 1j, ainv)
    return (N * (spec.a - 1.0) + rotated_i * spec.beta) * 0.5


def transform_quaternion(f: Quaternion, N: Quaternion, alpha: Quaternion, spec: SpectralData,
                         eps: float = EPS_INV) -> Quaternion:
    tinv = inverse_T(N, alpha, spec, eps)
    scale = np.abs(tinv.real) / np.maximum(abs(tinv), 1.0)
    if np.any(scale > REAL_PART_TOL):
        raise SingularT(f"T^-1 has a real part of {float(np.max(scale)):.3g}")
    n2 = tinv.norm2()
    if np.any(n2 <= eps * eps):
        raise SingularT("T^-1 vanishes")
    # inverse of an imaginary quaternion v is -v / |v|^2
    T = Quaternion(1j * tinv.z0.imag, tinv.z1) * (-1.0 / n2)
    return f + T


def transform_point(f, N, alpha: Quaternion, spec: SpectralData, eps: float = EPS_INV) -> np.ndarray:
    """Darboux transform of the point(s) ``f`` with unit normal(s) ``N``; returns (..., 3)."""
    return transform_quaternion(_as_quaternion(f), _as_quaternion(N), alpha, spec, eps).vector()


def is_closed(spec: SpectralData, coeffs, m_cover: int, tol: float = 1e-9) -> bool:
    mp, mm = (complex(c) for c in coeffs)
    if mp == 0 or mm == 0:
        return True
    return spec.resonant_on(m_cover, tol)


@dataclass
class DarbouxSurface:
    base: DelaunayProfile
    spec: SpectralData
    coeffs: tuple
    cover_m: int
    section: ParallelSection

    def quaternion(self, x, y) -> Quaternion:
        fr = frame(self.base, x, y)
        return transform_quaternion(fr.f, fr.N, self.section(x, y), self.spec)

    def __call__(self, x, y) -> np.ndarray:
        return self.quaternion(x, y).vector()

    @property
    def closed(self) -> bool:
        return is_closed(self.spec, self.coeffs, self.cover_m)


def make_darboux_surface(prof: DelaunayProfile, spec: SpectralData, coeffs=(1.0, 1.0),
                         cover_m: int = 1, require_closed: bool = True,
                         backend: str = "auto") -> DarbouxSurface:
    if cover_m < 1:
        raise ValueError("cover must be a positive integer")
    if require_closed and not is_closed(spec, coeffs, cover_m):
        raise NotClosed(f"mu = {spec.mu} with coefficients {coeffs} does not close on the "
                        f"{cover_m}-fold cover (t = {spec.t})")
    sec = ParallelSection(spec, prof, coeffs, backend)
    return DarbouxSurface(prof, spec, sec.coeffs, cover_m, sec)


def bubbleton(r: float, m: int, n: int, branch: int = 1, coeffs=(1.0, 1.0),
              backend: str = "auto") -> DarbouxSurface:
    """Closed transform at the resonance point of the admissible pair (m, n)."""
    point = resonance_mu(r, m, n, branch)
    prof = make_profile(r)
    return make_darboux_surface(prof, spectral_data(point.mu, r), coeffs, m, True, backend)
