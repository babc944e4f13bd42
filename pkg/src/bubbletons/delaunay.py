"""Delaunay surfaces f(x, y) = i p(x) + j q(x) e^{-iy}.

The profile is parametrised conformally: with s = 1 - r and
M = 1 - (1 - 1/s)^2,

    q  = s dn(s x | M),      p' = q^2 + r s,      p(0) = 0.

Surfaces are evaluated on broadcast arrays of (x, y); vector results carry a
trailing axis of length 3.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import elliptic
from .algebra import Quaternion
from .errors import InvalidNecksize


class ProfileValues(NamedTuple):
    q: np.ndarray
    dq: np.ndarray
    ddq: np.ndarray
    dp: np.ndarray
    ddp: np.ndarray
    p: np.ndarray
    sn: np.ndarray
    amp: np.ndarray


@dataclass(frozen=True)
class DelaunayProfile:
    r: float
    M: float
    s: float
    K: float
    E: float

    @property
    def period(self) -> float:
        return 2.0 * self.K / self.s

    @property
    def kind(self) -> str:
        if self.r == 0.5:
            return "cylinder"
        return "unduloid" if self.r > 0 else "nodoid"

    def values(self, x) -> ProfileValues:
        x = np.asarray(x, dtype=float)
        s, M = self.s, self.M
        sn, cn, dn, amp = elliptic.ellipj(s * x, M)
        q = s * dn
        dq = -s * s * M * sn * cn
        ddq = -s ** 3 * M * dn * (cn * cn - sn * sn)
        dp = q * q + self.r * s
        ddp = 2.0 * q * dq
        p = s * elliptic.inc_E(amp, M) + self.r * s * x
        return ProfileValues(q, dq, ddq, dp, ddp, p, sn, amp)

    def q(self, x):
        return self.values(x).q

    def dq(self, x):
        return self.values(x).dq

    def dp(self, x):
        return self.values(x).dp

    def p(self, x):
        return self.values(x).p


def make_profile(r: float) -> DelaunayProfile:
    r = float(r)
    if not np.isfinite(r) or r > 0.5 or r == 0.0:
        raise InvalidNecksize(f"necksize must satisfy r <= 1/2 and r != 0, got {r}")
    s = 1.0 - r
    M = 1.0 - (1.0 - 1.0 / s) ** 2
    M = max(M, 0.0)  # r = 1/2 can round to -0.0
    return DelaunayProfile(r=r, M=M, s=s, K=float(elliptic.complete_K(M)),
                           E=float(elliptic.complete_E(M)))


@dataclass(frozen=True)
class SurfaceSample:
    position: np.ndarray
    normal: np.ndarray
    fx: np.ndarray
    fy: np.ndarray
    x: np.ndarray
    y: np.ndarray


class Frame(NamedTuple):
    """Quaternion-valued f, f_x, f_y, N at a set of points."""
    f: Quaternion
    fx: Quaternion
    fy: Quaternion
    N: Quaternion
    values: ProfileValues


def frame(prof: DelaunayProfile, x, y) -> Frame:
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    v = prof.values(x)
    e = np.exp(-1j * y)
    f = Quaternion(1j * v.p, v.q * e)
    fx = Quaternion(1j * v.dp, v.dq * e)
    fy = Quaternion(np.zeros_like(e), -1j * v.q * e)
    N = Quaternion(1j * v.dq / v.q, -v.dp * e / v.q)
    return Frame(f, fx, fy, N, v)


def surface_point(prof: DelaunayProfile, x, y) -> SurfaceSample:
    fr = frame(prof, x, y)
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    return SurfaceSample(fr.f.vector(), fr.N.vector(), fr.fx.vector(), fr.fy.vector(), x, y)


def position(prof: DelaunayProfile, x, y) -> np.ndarray:
    return frame(prof, x, y).f.vector()


def gauss_map(prof: DelaunayProfile, x, y) -> np.ndarray:
    """Unit normal (i q' - j p' e^{-iy}) / q, oriented so that H = +1."""
    return frame(prof, x, y).N.vector()


def parallel_surface(prof: DelaunayProfile, x, y) -> np.ndarray:
    fr = frame(prof, x, y)
    return (fr.f + fr.N).vector()
