"""Common Darboux transforms by Bianchi permutability.

A transform is carried as a pair (alpha, beta) with
beta = (N alpha (a-1) + alpha b) / 2, so that f_hat = f + alpha beta^{-1}.
Two pairs with different spectral parameters combine into a pair over the
first transform; folding this rule over a list of stages yields
multibubbletons.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .algebra import EPS_INV, Quaternion, mul
from .darboux import is_closed
from .delaunay import DelaunayProfile, frame
from .errors import EqualSpectralParams, NearZeroQuaternion, NotClosed, ZeroSection
from .resonance import resonance_mu
from .spectral import ParallelSection, SpectralData, balanced_coefficients, spectral_data

EQUAL_A_TOL = 1e-12


def beta_of(alpha: Quaternion, N: Quaternion, spec: SpectralData) -> Quaternion:
    return (mul(N, alpha) * (spec.a - 1.0) + alpha * spec.b) * 0.5


def _inv(q: Quaternion, what: str) -> Quaternion:
    try:
        return q.inverse(EPS_INV)
    except NearZeroQuaternion as exc:
        raise ZeroSection(f"{what} vanishes") from exc


@dataclass
class SectionPair:
    alpha: Quaternion
    beta: Quaternion
    spec: SpectralData

    def offset(self) -> Quaternion:
        """alpha beta^{-1}, the step from the base surface to the transform."""
        return mul(self.alpha, _inv(self.beta, "beta"))


def same_parameter(s1: SpectralData, s2: SpectralData) -> bool:
    """mu and 1/mu share a: they parametrise the same transforms."""
    return abs(s1.a - s2.a) <= EQUAL_A_TOL * max(1.0, abs(s1.a))


def permute(pair1: SectionPair, pair2: SectionPair, check: bool = True) -> SectionPair:
    """Pair for mu_2 over f_1 = f + alpha_1 beta_1^{-1}.

    With ``check=False`` equal parameters are let through; this is only
    meaningful for demonstrating that the result then collapses to f.
    """
    if check and same_parameter(pair1.spec, pair2.spec):
        raise EqualSpectralParams("permutability needs two different spectral parameters")
    a1, b1 = pair1.alpha, pair1.beta
    step = mul(a1, _inv(b1, "beta"))
    alpha = pair2.alpha - mul(step, pair2.beta)
    ratio = (pair2.spec.a - 1.0) / (pair1.spec.a - 1.0)
    beta = pair2.beta - mul(mul(b1, _inv(a1, "alpha")), pair2.alpha) * ratio
    return SectionPair(alpha, beta, pair2.spec)


@dataclass(frozen=True)
class Stage:
    spec: SpectralData
    coeffs: tuple
    cover_m: int = 1


def stage_from_pair(r: float, m: int, n: int, prof: DelaunayProfile | None = None,
                    branch: int = 1, centre: float | None = None, coeffs=(1.0, 1.0)) -> Stage:
    """Stage at the resonance point of (m, n); ``centre`` places the bubble near x = centre."""
    spec = spectral_data(resonance_mu(r, m, n, branch).mu, r)
    if centre is not None:
        if prof is None:
            raise ValueError("a profile is needed to centre the bubble")
        coeffs = balanced_coefficients(spec, prof, centre)
    return Stage(spec, tuple(complex(c) for c in coeffs), m)


@dataclass
class TransformPipeline:
    base: DelaunayProfile
    stages: tuple
    closure_cover: int
    backend: str = "auto"

    def __post_init__(self):
        self._sections = [ParallelSection(s.spec, self.base, s.coeffs, self.backend)
                          for s in self.stages]

    def pairs(self, x, y, N: Quaternion) -> list[SectionPair]:
        out = []
        for sec in self._sections:
            alpha = sec(x, y)
            out.append(SectionPair(alpha, beta_of(alpha, N, sec.spec), sec.spec))
        return out

    def quaternion(self, x, y) -> Quaternion:
        fr = frame(self.base, x, y)
        f = fr.f
        pairs = self.pairs(x, y, fr.N)
        while pairs:
            first, rest = pairs[0], pairs[1:]
            f = f + first.offset()
            pairs = [permute(first, p) for p in rest]
        return f

    def __call__(self, x, y) -> np.ndarray:
        return self.quaternion(x, y).vector()


def build_pipeline(prof: DelaunayProfile, stages, backend: str = "auto") -> TransformPipeline:
    stages = tuple(s if isinstance(s, Stage) else Stage(*s) for s in stages)
    if not stages:
        raise ValueError("a pipeline needs at least one stage")
    for i, si in enumerate(stages):
        if si.spec.r != prof.r:
            raise ValueError("stage spectral data belongs to a different necksize")
        if not is_closed(si.spec, si.coeffs, si.cover_m):
            raise NotClosed(f"stage {i} (mu = {si.spec.mu}) does not close on its "
                            f"{si.cover_m}-fold cover")
        for sj in stages[:i]:
            if same_parameter(si.spec, sj.spec):
                raise EqualSpectralParams(f"stages share the spectral parameter a = {si.spec.a}")
    cover = math.lcm(*(s.cover_m for s in stages))
    return TransformPipeline(prof, stages, cover, backend)
