"""Resonance points and admissible (m, n) pairs.

On the m-fold cover a section has a multiplier exactly when ``m t`` is an
integer n; solving ``t(mu) = n/m`` for mu gives the resonance points
``mu_n^m``. Whether such a point is real and produces a genuine bubbleton
depends on the necksize through the admissibility table below.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidNecksize, NotAdmissible


@dataclass(frozen=True)
class AdmissiblePair:
    m: int
    n: int

    @property
    def kind(self) -> str:
        return "localized" if self.n > self.m else "dihedral"


@dataclass(frozen=True)
class ResonancePoint:
    pair: AdmissiblePair
    r: float
    mu: float
    branch: int = 1

    @property
    def t(self) -> float:
        return self.pair.n / self.pair.m


def _check_r(r) -> float:
    r = float(r)
    if not math.isfinite(r) or r > 0.5 or r == 0.0:
        raise InvalidNecksize(f"necksize must satisfy r <= 1/2 and r != 0, got {r}")
    return r


def admissible(r: float, m: int, n: int) -> bool:
    r = _check_r(r)
    if m < 1 or n < 1 or m == n or math.gcd(m, n) != 1:
        return False
    bound = (m - n) / (2 * m)
    if r == 0.5:
        return m < n
    if r > 0:
        return m < n or r < bound
    return (m < n and bound < r) or m > n


def resonance_mu(r: float, m: int, n: int, branch: int = 1) -> ResonancePoint:
    if branch not in (1, -1):
        raise ValueError("branch must be +1 or -1")
    if not admissible(r, m, n):
        raise NotAdmissible(f"(m, n) = ({m}, {n}) is not admissible for r = {r}")
    r = float(r)
    d = (n * n - m * m) / (m * m)
    R = 2.0 * r * (1.0 - r)
    A = d + R
    root = math.sqrt(d * (d + 4.0 * r * (1.0 - r)))
    # (A + root)(A - root) = R^2: form the larger root directly, the other as its reciprocal
    big = (A + math.copysign(root, A)) / R
    mu = big if branch * A >= 0 else 1.0 / big
    return ResonancePoint(AdmissiblePair(m, n), r, mu, branch)


def phi_count(r: float, n: int) -> int:
    """Number of m < n, coprime to n, admissible for r (Euler's phi when r > 0)."""
    r = _check_r(r)
    return sum(1 for m in range(1, n) if math.gcd(m, n) == 1 and (m - n) / (2 * m) < r)


def catalog(r: float, m_max: int, n_max: int) -> list[ResonancePoint]:
    r = _check_r(r)
    out = []
    for n in range(1, n_max + 1):
        for m in range(1, m_max + 1):
            if admissible(r, m, n):
                out.extend(resonance_mu(r, m, n, b) for b in (1, -1))
    return out


def format_table(points: list[ResonancePoint]) -> str:
    lines = [f"{'m':>3} {'n':>3} {'kind':<9} {'branch':>6} {'t':>10} {'mu':>24}"]
    for p in points:
        t = Fraction(p.pair.n, p.pair.m)
        lines.append(f"{p.pair.m:>3} {p.pair.n:>3} {p.pair.kind:<9} {'+' if p.branch > 0 else '-':>6} "
                     f"{str(t):>10} {p.mu:>24.17g}")
    return "\n".join(lines) + "\n"
