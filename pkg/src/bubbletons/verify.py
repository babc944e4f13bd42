"""Residual checks for surfaces given as evaluators ``(x, y) -> (..., 3)``.

Derivatives are 4th-order central differences. Each check returns a
:class:`CheckResult`; results are collected into a :class:`VerificationReport`
that serialises deterministically to JSON.
"""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy.spatial import cKDTree

from .delaunay import DelaunayProfile, frame
from .errors import DegenerateMetric

H_FIRST = 1e-5
# Second derivatives of transforms lose accuracy to roundoff near bubble tips,
# where the conformal factor is small; 1e-3 keeps truncation below 1e-8.
H_SECOND = 1e-3

_W1 = ((2, -1.0), (1, 8.0), (-1, -8.0), (-2, 1.0))
_W2 = ((2, -1.0), (1, 16.0), (0, -30.0), (-1, 16.0), (-2, -1.0))


@dataclass(frozen=True)
class Grid:
    x_min: float
    x_max: float
    nx: int
    y_max: float = 2 * math.pi
    ny: int = 64
    y_min: float = 0.0

    def axes(self):
        return (np.linspace(self.x_min, self.x_max, self.nx),
                np.linspace(self.y_min, self.y_max, self.ny))

    def mesh(self):
        x, y = self.axes()
        return np.meshgrid(x, y, indexing="ij")

    def describe(self) -> dict:
        return asdict(self)


@dataclass
class CheckResult:
    name: str
    params: dict
    max_residual: float
    mean_residual: float
    tolerance: float
    passed: bool
    skipped: int = 0

    @classmethod
    def from_residuals(cls, name, params, residuals, tolerance, skipped=0):
        residuals = np.asarray(residuals, dtype=float)
        mx = float(np.max(residuals)) if residuals.size else float("nan")
        mean = float(np.mean(residuals)) if residuals.size else float("nan")
        return cls(name, params, mx, mean, float(tolerance), bool(mx <= tolerance), skipped)


@dataclass
class VerificationReport:
    entries: list = field(default_factory=list)

    def add(self, entry: CheckResult) -> CheckResult:
        self.entries.append(entry)
        return entry

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def to_dict(self) -> dict:
        return {"passed": self.passed, "checks": [asdict(e) for e in self.entries]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"


def fd_first(F, x, y, h=H_FIRST):
    fx = sum(c * F(x + k * h, y) for k, c in _W1) / (12 * h)
    fy = sum(c * F(x, y + k * h) for k, c in _W1) / (12 * h)
    return fx, fy


def fd_second(F, x, y, h=H_SECOND, f0=None):
    f0 = F(x, y) if f0 is None else f0
    fxx = sum(c * (f0 if k == 0 else F(x + k * h, y)) for k, c in _W2) / (12 * h * h)
    fyy = sum(c * (f0 if k == 0 else F(x, y + k * h)) for k, c in _W2) / (12 * h * h)
    fxy = sum(ci * cj * F(x + i * h, y + j * h) for i, ci in _W1 for j, cj in _W1) / (144 * h * h)
    return fxx, fyy, fxy


def _dot(u, v):
    return np.sum(u * v, axis=-1)


def mean_curvature(F, x, y, h1=H_FIRST, h2=H_SECOND):
    """Mean curvature with respect to the normal f_x x f_y / |f_x x f_y|, plus the metric determinant."""
    fx, fy = fd_first(F, x, y, h1)
    fxx, fyy, fxy = fd_second(F, x, y, h2)
    n = np.cross(fx, fy)
    nn = np.linalg.norm(n, axis=-1, keepdims=True)
    n = n / np.where(nn > 0, nn, 1.0)
    E, Fm, G = _dot(fx, fx), _dot(fx, fy), _dot(fy, fy)
    L, Mm, Nn = _dot(fxx, n), _dot(fxy, n), _dot(fyy, n)
    det = E * G - Fm * Fm
    with np.errstate(divide="ignore", invalid="ignore"):
        H = (L * G - 2 * Mm * Fm + Nn * E) / (2 * det)
    return H, det, E + G


def check_conformal(F, grid: Grid, tol: float = 1e-6, h: float = H_FIRST,
                    name: str = "conformal") -> CheckResult:
    """max(| |f_x| - |f_y| | / |f_x|, |<f_x, f_y>| / |f_x|^2) over the grid."""
    x, y = grid.mesh()
    fx, fy = fd_first(F, x, y, h)
    E, G = _dot(fx, fx), _dot(fy, fy)
    res = np.maximum(np.abs(np.sqrt(E) - np.sqrt(G)) / np.sqrt(E), np.abs(_dot(fx, fy)) / E)
    return CheckResult.from_residuals(name, {"grid": grid.describe(), "h": h}, res, tol)


def check_mean_curvature(F, grid: Grid, tol: float = 1e-4, h1: float = H_FIRST,
                         h2: float = H_SECOND, target: float = 1.0,
                         name: str = "mean_curvature") -> CheckResult:
    """|H - 1| with one global orientation, the one closer to H = +1."""
    x, y = grid.mesh()
    H, det, trace = mean_curvature(F, x, y, h1, h2)
    good = np.isfinite(H) & (det > 1e-12 * trace * trace)
    skipped = int(np.size(H) - np.count_nonzero(good))
    if not np.any(good):
        raise DegenerateMetric("metric is singular at every grid point")
    H = H[good]
    plus, minus = np.abs(H - target), np.abs(-H - target)
    res = plus if np.max(plus) <= np.max(minus) else minus
    params = {"grid": grid.describe(), "h1": h1, "h2": h2, "target": target,
              "orientation": 1 if res is plus else -1}
    return CheckResult.from_residuals(name, params, res, tol, skipped)


def check_closure(F, m_cover: int, grid_x, tol: float = 1e-8, h: float = H_FIRST,
                  name: str = "closure") -> CheckResult:
    """Mismatch of position and y-derivative between y = 0 and y = 2 pi m."""
    x = np.asarray(grid_x, dtype=float)
    period = 2.0 * math.pi * m_cover
    y0, y1 = np.zeros_like(x), np.full_like(x, period)
    d_pos = np.linalg.norm(F(x, y1) - F(x, y0), axis=-1)
    d_der = np.linalg.norm(fd_first(F, x, y1, h)[1] - fd_first(F, x, y0, h)[1], axis=-1)
    params = {"m_cover": m_cover, "x_min": float(x.min()), "x_max": float(x.max()),
              "nx": int(x.size), "h": h}
    return CheckResult.from_residuals(name, params, np.maximum(d_pos, d_der), tol)


def rotation_about_axis(axis, angle: float) -> np.ndarray:
    k = np.asarray(axis, dtype=float)
    k = k / np.linalg.norm(k)
    K = np.array([[0, -k[2], k[1]], [k[2], 0, -k[0]], [-k[1], k[0], 0]])
    return np.eye(3) + math.sin(angle) * K + (1 - math.cos(angle)) * (K @ K)


def check_dihedral(points, n: int, axis=(1.0, 0.0, 0.0), tol: float = 2e-2,
                   probes: int | None = 2000, seed: int = 0,
                   name: str = "dihedral") -> CheckResult:
    """One-sided Hausdorff distance from the cloud rotated by 2 pi / n to the cloud.

    Normalised by the bounding-box diagonal. The axis passes through the origin.
    """
    pts = np.asarray(points, dtype=float).reshape(-1, 3)
    rng = np.random.default_rng(seed)
    idx = np.arange(len(pts)) if probes is None or probes >= len(pts) else \
        rng.choice(len(pts), probes, replace=False)
    rotated = pts[idx] @ rotation_about_axis(axis, 2 * math.pi / n).T
    dist, _ = cKDTree(pts).query(rotated)
    diameter = float(np.linalg.norm(pts.max(axis=0) - pts.min(axis=0)))
    params = {"n": n, "axis": [float(a) for a in axis], "points": int(len(pts)),
              "probes": int(len(idx)), "seed": seed}
    return CheckResult(name, params, float(dist.max() / diameter),
                       float(dist.mean() / diameter), tol, bool(dist.max() / diameter <= tol))


def check_constant_distance(F, base: DelaunayProfile, grid: Grid, tol: float = 1e-8,
                            name: str = "parallel_distance") -> CheckResult:
    """Relative spread std/mean of |f_hat - (f + N)| over the grid."""
    x, y = grid.mesh()
    fr = frame(base, x, y)
    d = np.linalg.norm(F(x, y) - (fr.f + fr.N).vector(), axis=-1)
    mean = float(np.mean(d))
    spread = float(np.std(d) / mean) if mean > 0 else 0.0
    params = {"grid": grid.describe(), "mean_distance": mean}
    return CheckResult(name, params, spread, spread, tol, bool(spread <= tol))
