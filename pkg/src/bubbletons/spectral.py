"""Spectral data and explicit parallel sections over a Delaunay surface.

For a real spectral parameter mu the parallel sections of the associated
connection are spanned by

    alpha_pm(x, y) = e^{iy/2} S_pm(x) e^{±ity/2},
    S_pm(x)        = (q b - i q'(a-1) + j X_pm(x)) c_pm(x),
    X_pm           = 1 ± t + (a-1) p'.

``c_pm`` has a closed form through the third-kind integral. When ``X_pm``
has real zeros the closed form is evaluated with a principal value and a
parity correction, and the default ("auto") backend instead integrates the
linear x-system over one profile period and extends it by its Floquet
multiplier.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp

from . import elliptic
from .algebra import EPS_INV, Quaternion, mul
from .delaunay import DelaunayProfile, frame, make_profile
from .errors import (BranchPoint, ExcludedParameter, InvalidNecksize, SingularDenominator,
                     ZeroSection)

BRANCH_TOL = 1e-12  # on t^2
ODE_RTOL = 1e-13
ODE_ATOL = 1e-30  # pure relative control: decaying branches shrink by e^-10 per period
BACKENDS = ("auto", "closed", "ode")


@dataclass(frozen=True)
class SpectralData:
    mu: float
    r: float
    a: float
    beta: float
    t: complex

    @property
    def b(self) -> complex:
        return 1j * self.beta

    @property
    def t_is_real(self) -> bool:
        return self.t.imag == 0.0

    @property
    def is_parallel(self) -> bool:
        return self.mu == -1.0

    def kappa(self, sign: int) -> complex:
        """Exponential rate i b (1 ± t) / (2 (a - 1))."""
        return -self.beta * (1 + sign * self.t) / (2.0 * (self.a - 1.0))

    def resonant_on(self, m_cover: int, tol: float = 1e-9) -> bool:
        """True when every parallel section has a multiplier on the m-fold cover."""
        if not self.t_is_real:
            return False
        mt = m_cover * self.t.real
        return abs(mt - round(mt)) <= tol


def _check_sign(sign: int) -> int:
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign!r}")
    return sign


def spectral_data(mu: float, r: float) -> SpectralData:
    """Spectral data of ``mu`` over the Delaunay surface of necksize ``r``.

    ``mu = -1`` is accepted: it yields the parallel surface and has
    ``t = |1 - 2r|``, which vanishes on the cylinder.
    """
    mu = float(mu)
    r = float(r)
    if r > 0.5 or r == 0.0 or not math.isfinite(r):
        raise InvalidNecksize(f"necksize must satisfy r <= 1/2 and r != 0, got {r}")
    if not math.isfinite(mu) or mu == 0.0 or mu == 1.0:
        raise ExcludedParameter(f"spectral parameter {mu} is excluded")
    a = 0.5 * (mu + 1.0 / mu)
    beta = 0.5 * (1.0 / mu - mu)
    t2 = 1.0 + 2.0 * r * (1.0 - r) * (a - 1.0)
    t = complex(math.sqrt(t2), 0.0) if t2 >= 0 else complex(0.0, math.sqrt(-t2))
    if abs(t2) < BRANCH_TOL and mu != -1.0:
        raise BranchPoint(f"mu = {mu} is a branch point (t = 0) for r = {r}")
    return SpectralData(mu=mu, r=r, a=a, beta=beta, t=t)


def characteristic(spec: SpectralData, sign: int):
    """Third-kind characteristic N_pm with X_pm = D_pm (1 - N_pm sn^2)."""
    sign = _check_sign(sign)
    s = 1.0 - spec.r
    M = max(1.0 - (1.0 - 1.0 / s) ** 2, 0.0)
    D = 1.0 + sign * spec.t + (spec.a - 1.0) * s
    if abs(D) < EPS_INV:
        raise SingularDenominator("1 ± t + (a-1)(1-r) vanishes")
    N = (spec.a - 1.0) * s * s * M / D
    return N.real if spec.t_is_real else N


def multiplier(spec: SpectralData, m_cover: int, sign: int) -> complex:
    """Factor picked up by alpha_pm under y -> y + 2 pi m."""
    sign = _check_sign(sign)
    return (-1.0) ** m_cover * np.exp(sign * m_cover * np.pi * 1j * spec.t)


def has_zeros(spec: SpectralData, sign: int) -> bool:
    """Whether X_pm vanishes somewhere on the real line."""
    if not spec.t_is_real:
        return False
    N = characteristic(spec, sign)
    return N >= 1.0


def x_system(spec: SpectralData, prof: DelaunayProfile, x, u0, u1):
    """Right-hand side of alpha_x = (f_y alpha (a-1) - f_x alpha b) / 2 at y = 0."""
    v = prof.values(x)
    am1, b = spec.a - 1.0, spec.b
    d0 = 0.5 * am1 * (-1j * v.q * u1) - 0.5 * b * (1j * v.dp * u0 - v.dq * u1)
    d1 = 0.5 * am1 * (-1j * v.q * u0) - 0.5 * b * (-1j * v.dp * u1 + v.dq * u0)
    return d0, d1


def y_system_matrix(spec: SpectralData, prof: DelaunayProfile, x) -> np.ndarray:
    """Coefficient matrix of the y-system for (alpha_0, e^{iy} alpha_1); shape (..., 2, 2)."""
    v = prof.values(x)
    am1, b = spec.a - 1.0, spec.b
    A = np.empty(np.shape(v.q) + (2, 2), dtype=complex)
    A[..., 0, 0] = -1j * v.dp * am1
    A[..., 0, 1] = 1j * v.q * b + v.dq * am1
    A[..., 1, 0] = 1j * v.q * b - v.dq * am1
    A[..., 1, 1] = 1j * (2.0 + v.dp * am1)
    return 0.5 * A


class _ClosedForm:
    """c_pm from the third-kind integral, with a principal value in the zero regime."""

    def __init__(self, spec: SpectralData, prof: DelaunayProfile, sign: int):
        self.spec, self.prof, self.sign = spec, prof, sign
        s = prof.s
        self.one_t = 1.0 + sign * spec.t
        self.D = self.one_t + (spec.a - 1.0) * s
        self.N = characteristic(spec, sign)
        self.kappa = spec.kappa(sign)
        self.scale = self.one_t / (self.D * s)
        self.zero_regime = has_zeros(spec, sign)
        if self.zero_regime:
            theta0 = math.asin(1.0 / math.sqrt(self.N))
            # c has a simple pole at the zeros where X' has the sign of kappa (1 ± t);
            # there X c changes sign relative to the |X|-based formula.
            flip_on_falling = np.sign((self.kappa * self.one_t).real) == -np.sign(spec.a - 1.0)
            self._flip_offset = -theta0 if flip_on_falling else theta0
            self._flip_shift = 1.0 if flip_on_falling else 0.0

    def _parity(self, amp):
        n = np.floor((amp + self._flip_offset) / np.pi) + self._flip_shift
        return 1.0 - 2.0 * np.mod(n, 2.0)

    def c_and_log_derivative(self, v, x, X):
        spec = self.spec
        if self.zero_regime:
            Pi = elliptic.inc_Pi_pv(self.N, v.amp, self.prof.M)
        else:
            Pi = elliptic.inc_Pi(self.N, v.amp, self.prof.M)
        expo = np.exp(self.kappa * (x - self.scale * Pi))
        if spec.t_is_real:
            c = expo / np.sqrt(np.abs(X.real))
            if self.zero_regime:
                c = c * self._parity(v.amp)
        else:
            c = expo / np.sqrt(X)
        dX = (spec.a - 1.0) * v.ddp
        dlog = -0.5 * dX / X + self.kappa - self.kappa * self.one_t / X
        return c, dlog


def _bracket(spec: SpectralData, v, sign: int):
    am1 = spec.a - 1.0
    z0 = v.q * spec.b - 1j * v.dq * am1
    X = (1.0 + sign * spec.t) + am1 * v.dp
    return z0, X + 0j


class _OdeBackend:
    """Floquet solution of the x-system, integrated over one period.

    The system is traceless, so the two Floquet multipliers multiply to 1.
    A branch that decays forwards is integrated backwards instead, keeping
    the wanted solution dominant over the other one.
    """

    def __init__(self, spec: SpectralData, prof: DelaunayProfile, sign: int):
        self.spec, self.prof, self.sign = spec, prof, sign
        v0 = prof.values(np.array(0.0))
        z0, X0 = _bracket(spec, v0, sign)
        c0 = 1.0 / np.sqrt(abs(X0.real)) if spec.t_is_real else 1.0 / np.sqrt(X0)
        self._start = np.array([z0 * c0, X0 * c0], dtype=complex).ravel()
        self.period = prof.period
        self.direction = 1.0
        self._integrate()
        if abs(self.floquet) < 1.0:
            self.direction = -1.0
            self._integrate()

    def _integrate(self):
        spec, prof, start = self.spec, self.prof, self._start

        def rhs(x, u):
            d0, d1 = x_system(spec, prof, np.array(x), u[0], u[1])
            return np.array([d0, d1], dtype=complex).ravel()

        sol = solve_ivp(rhs, (0.0, self.direction * self.period), start, method="DOP853",
                        rtol=ODE_RTOL, atol=ODE_ATOL, dense_output=True)
        if not sol.success:  # pragma: no cover - scipy failure is exceptional
            raise RuntimeError(f"parallel-section integration failed: {sol.message}")
        self._dense = sol.sol
        # multiplier over one period in the integration direction
        self.floquet = complex(np.vdot(start, sol.y[:, -1]) / np.vdot(start, start))

    def values(self, x):
        x = np.asarray(x, dtype=float)
        step = self.direction * self.period
        k = np.floor(x / step)
        local = x - k * step
        local = np.clip(local, min(0.0, step), max(0.0, step))
        u = self._dense(local.ravel()).reshape((2,) + x.shape)
        growth = self.floquet ** k
        u0, u1 = u[0] * growth, u[1] * growth
        d0, d1 = x_system(self.spec, self.prof, x, u0, u1)
        return u0, u1, d0, d1


class SectionBasis:
    """S_pm(x) = alpha_pm(x, 0) together with its x-derivative, for one sign."""

    def __init__(self, spec: SpectralData, prof: DelaunayProfile, sign: int,
                 backend: str = "auto"):
        sign = _check_sign(sign)
        if backend not in BACKENDS:
            raise ValueError(f"backend must be one of {BACKENDS}, got {backend!r}")
        self.spec, self.prof, self.sign = spec, prof, sign
        if backend == "auto":
            backend = "ode" if has_zeros(spec, sign) else "closed"
        self.backend = backend
        self._impl = (_ClosedForm if backend == "closed" else _OdeBackend)(spec, prof, sign)

    def values(self, x):
        """Return (z0, z1, dz0, dz1) of S and S' at ``x``."""
        x = np.asarray(x, dtype=float)
        if self.backend == "ode":
            return self._impl.values(x)
        v = self.prof.values(x)
        z0, X = _bracket(self.spec, v, self.sign)
        c, dlog = self._impl.c_and_log_derivative(v, x, X)
        if self._impl.zero_regime:
            # z0 c' is 0 * inf at the poles of c; the x-system gives S' without cancellation
            u0, u1 = z0 * c, X * c
            return (u0, u1) + x_system(self.spec, self.prof, x, u0, u1)
        am1 = self.spec.a - 1.0
        dz0 = v.dq * self.spec.b - 1j * v.ddq * am1 + z0 * dlog
        dX = am1 * v.ddp + X * dlog
        return z0 * c, X * c, dz0 * c, dX * c

    def c(self, x):
        x = np.asarray(x, dtype=float)
        if self.backend == "closed":
            v = self.prof.values(x)
            _, X = _bracket(self.spec, v, self.sign)
            return self._impl.c_and_log_derivative(v, x, X)[0]
        u0, u1, _, _ = self._impl.values(x)
        z0, X = _bracket(self.spec, self.prof.values(x), self.sign)
        return (np.conj(z0) * u0 + np.conj(X) * u1) / (np.abs(z0) ** 2 + np.abs(X) ** 2)


def c_pm(spec: SpectralData, prof: DelaunayProfile, x, sign: int, backend: str = "auto"):
    """The scalar factor c_pm(x); normalised by c_pm(0) = 1/sqrt|X_pm(0)|."""
    return SectionBasis(spec, prof, sign, backend).c(x)


def _lift(z0, z1, dz0, dz1, spec: SpectralData, sign: int, y):
    """alpha and its partials from S, S' via e^{iy/2} S e^{±ity/2}."""
    y = np.asarray(y, dtype=float)
    left = np.exp(0.5j * y)
    right = np.exp(0.5j * sign * spec.t * y)
    a0 = left * z0 * right
    a1 = np.conj(left) * z1 * right
    ax0 = left * dz0 * right
    ax1 = np.conj(left) * dz1 * right
    rate = 0.5j * sign * spec.t
    ay0 = (0.5j + rate) * a0
    ay1 = (-0.5j + rate) * a1
    return Quaternion(a0, a1), Quaternion(ax0, ax1), Quaternion(ay0, ay1)


def basis_section(spec: SpectralData, prof: DelaunayProfile, x, y, sign: int,
                  backend: str = "auto") -> Quaternion:
    basis = SectionBasis(spec, prof, sign, backend)
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    return _lift(*basis.values(x), spec, sign, y)[0]


@dataclass
class ParallelSection:
    """alpha = alpha_+ m_+ + alpha_- m_- for fixed right coefficients (m_+, m_-)."""

    spec: SpectralData
    prof: DelaunayProfile
    coeffs: tuple = (1.0, 1.0)
    backend: str = "auto"
    _bases: dict = field(init=False, repr=False)

    def __post_init__(self):
        mp, mm = (complex(c) for c in self.coeffs)
        if mp == 0 and mm == 0:
            raise ValueError("section coefficients must not both vanish")
        self.coeffs = (mp, mm)
        self._bases = {s: SectionBasis(self.spec, self.prof, s, self.backend)
                       for s, m in ((1, mp), (-1, mm)) if m != 0}

    def derivatives(self, x, y):
        """Return (alpha, alpha_x, alpha_y) as quaternions."""
        x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
        out = None
        for sign, m in ((1, self.coeffs[0]), (-1, self.coeffs[1])):
            if m == 0:
                continue
            parts = _lift(*self._bases[sign].values(x), self.spec, sign, y)
            parts = [p * m for p in parts]
            out = parts if out is None else [o + p for o, p in zip(out, parts)]
        return tuple(out)

    def __call__(self, x, y) -> Quaternion:
        return self.derivatives(x, y)[0]


def section(spec: SpectralData, prof: DelaunayProfile, coeffs, x, y,
            backend: str = "auto", eps: float = EPS_INV) -> Quaternion:
    alpha = ParallelSection(spec, prof, coeffs, backend)(x, y)
    if np.any(abs(alpha) < eps):
        raise ZeroSection("parallel section vanishes at a queried point")
    return alpha


def balanced_coefficients(spec: SpectralData, prof: DelaunayProfile, x0: float,
                          backend: str = "auto") -> tuple:
    """Coefficients (1/|S_+(x0)|, 1/|S_-(x0)|), which centre the bubble near x = x0."""
    out = []
    for sign in (1, -1):
        z0, z1, _, _ = SectionBasis(spec, prof, sign, backend).values(np.array(float(x0)))
        out.append(complex(1.0 / math.sqrt(abs(z0) ** 2 + abs(z1) ** 2)))
    return tuple(out)


def _fd_partials(fieldfn, x, y, h):
    def d(dx, dy):
        q = fieldfn(x + dx, y + dy)
        return np.stack([q.z0, q.z1])

    w = ((2, -1.0), (1, 8.0), (-1, -8.0), (-2, 1.0))
    ax = sum(c * d(k * h, 0.0) for k, c in w) / (12 * h)
    ay = sum(c * d(0.0, k * h) for k, c in w) / (12 * h)
    return Quaternion(ax[0], ax[1]), Quaternion(ay[0], ay[1])


def pde_residual(field, spec: SpectralData, prof: DelaunayProfile, x, y, h: float = 1e-5):
    """Largest residual of the two parallel-section equations, relative to |alpha|.

    ``field`` is a :class:`ParallelSection` (analytic partials) or any callable
    ``(x, y) -> Quaternion`` (4th-order central differences with step ``h``).
    """
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    if isinstance(field, ParallelSection):
        alpha, ax, ay = field.derivatives(x, y)
    else:
        alpha = field(x, y)
        ax, ay = _fd_partials(field, x, y, h)
    fr = frame(prof, x, y)
    am1, b = spec.a - 1.0, spec.b
    fya = mul(fr.fy, alpha)
    fxa = mul(fr.fx, alpha)
    res_x = ax - (fya * (0.5 * am1) - fxa * (0.5 * b))
    res_y = ay + (fxa * (0.5 * am1) + fya * (0.5 * b))
    scale = abs(alpha)
    return float(np.max(np.maximum(abs(res_x), abs(res_y)) / scale))


def profile_and_spectrum(r: float, mu: float):
    """Convenience pair (make_profile(r), spectral_data(mu, r))."""
    return make_profile(r), spectral_data(mu, r)
