"""Jacobi elliptic functions and Legendre elliptic integrals.

All functions take the parameter ``M = k**2`` with ``0 <= M < 1`` and accept
numpy arrays (broadcast against each other). Amplitudes are never reduced
modulo pi: ``am`` is the continuous, strictly increasing branch and the
incomplete integrals are continued additively across multiples of pi, e.g.
``inc_E(phi + k*pi) == inc_E(phi) + 2*k*E(M)``.

Functions are built on Carlson's symmetric integrals R_F, R_D, R_J and on the
descending Landen (AGM) scheme; the kernels run under numba when available.
"""
from __future__ import annotations

import numpy as np

from . import _accel
from .errors import ParameterOutOfRange, SingularCharacteristic

__all__ = [
    "am", "sn_cn_dn", "ellipj", "complete_K", "complete_E", "complete_Pi",
    "inc_F", "inc_E", "inc_Pi", "inc_Pi_pv", "carlson_rf", "carlson_rd", "carlson_rj",
]


def _check_parameter(M) -> np.ndarray:
    M = np.asarray(M, dtype=float)
    if np.any(~np.isfinite(M)) or np.any(M < 0.0) or np.any(M >= 1.0):
        raise ParameterOutOfRange(f"elliptic parameter must satisfy 0 <= M < 1, got {M}")
    return M


def _flat(*arrays, dtype=float):
    """Broadcast, flatten to contiguous 1-D, and return the common shape."""
    b = np.broadcast_arrays(*[np.asarray(a) for a in arrays])
    shape = b[0].shape
    flat = [np.ascontiguousarray(v, dtype=dtype).ravel() for v in b]
    return shape, flat


def carlson_rf(x, y, z):
    shape, (x, y, z) = _flat(x, y, z)
    return _accel.kernels().carlson_rf(x, y, z).reshape(shape)


def carlson_rd(x, y, z):
    shape, (x, y, z) = _flat(x, y, z)
    return _accel.kernels().carlson_rd(x, y, z).reshape(shape)


def carlson_rj(x, y, z, p):
    """R_J for real non-negative x, y, z and complex p off the cut (-inf, 0]."""
    shape, (x, y, z) = _flat(x, y, z)
    p = np.ascontiguousarray(np.broadcast_to(np.asarray(p, dtype=complex), shape)).ravel()
    return _accel.kernels().carlson_rj(x, y, z, p).reshape(shape)


def ellipj(u, M):
    """Return ``(sn, cn, dn, am)`` at ``u``; ``am`` is the continuous amplitude."""
    M = _check_parameter(M)
    shape, (u, M) = _flat(u, M)
    sn, cn, dn, ph = _accel.kernels().ellipj(u, M)
    return sn.reshape(shape), cn.reshape(shape), dn.reshape(shape), ph.reshape(shape)


def am(u, M):
    return ellipj(u, M)[3]


def sn_cn_dn(u, M):
    sn, cn, dn, _ = ellipj(u, M)
    return sn, cn, dn


def complete_K(M):
    M = _check_parameter(M)
    return carlson_rf(0.0, 1.0 - M, 1.0)


def complete_E(M):
    M = _check_parameter(M)
    return carlson_rf(0.0, 1.0 - M, 1.0) - M / 3.0 * carlson_rd(0.0, 1.0 - M, 1.0)


def complete_Pi(N, M):
    M = _check_parameter(M)
    N = np.asarray(N)
    if not np.iscomplexobj(N) and np.any(N >= 1.0):
        raise SingularCharacteristic("complete third-kind integral diverges for real N >= 1")
    val = carlson_rf(0.0, 1.0 - M, 1.0) + N / 3.0 * carlson_rj(0.0, 1.0 - M, 1.0, 1.0 - N)
    return val if np.iscomplexobj(N) else val.real


def _reduce(phi):
    phi = np.asarray(phi, dtype=float)
    k = np.floor(phi / np.pi + 0.5)
    phi0 = phi - k * np.pi
    s = np.sin(phi0)
    return k, phi0, s, np.cos(phi0) ** 2


def inc_F(phi, M):
    M = _check_parameter(M)
    k, _, s, c2 = _reduce(phi)
    return 2.0 * k * complete_K(M) + s * carlson_rf(c2, 1.0 - M * s * s, 1.0)


def inc_E(phi, M):
    M = _check_parameter(M)
    k, _, s, c2 = _reduce(phi)
    d2 = 1.0 - M * s * s
    partial = s * carlson_rf(c2, d2, 1.0) - M / 3.0 * s ** 3 * carlson_rd(c2, d2, 1.0)
    return 2.0 * k * complete_E(M) + partial


def inc_Pi(N, phi, M):
    """Incomplete third-kind integral int_0^phi dθ / ((1 - N sin²θ) sqrt(1 - M sin²θ)).

    ``N`` may be complex. For real ``N`` the pole ``N sin²θ = 1`` must not lie
    on the path, otherwise :class:`SingularCharacteristic` is raised.
    """
    M = _check_parameter(M)
    complex_n = np.iscomplexobj(N)
    N = np.asarray(N, dtype=complex if complex_n else float)
    k, phi0, s, c2 = _reduce(phi)
    k, s, c2, N, M = np.broadcast_arrays(k, s, c2, N, M)
    if not complex_n:
        crosses_quarter = (k != 0) & (N >= 1.0)
        if np.any(crosses_quarter | (N * s * s >= 1.0)):
            raise SingularCharacteristic("pole of the third-kind integrand lies on the path")
    d2 = 1.0 - M * s * s
    partial = s * carlson_rf(c2, d2, 1.0) + N / 3.0 * s ** 3 * carlson_rj(c2, d2, 1.0, 1.0 - N * s * s)
    val = partial
    wraps = k != 0
    if np.any(wraps):
        val = val + np.where(wraps, 2.0 * k, 0.0) * _complete_pi_masked(N, M, wraps)
    return val if complex_n else val.real


def inc_Pi_pv(N, phi, M):
    """Cauchy principal value of the third-kind integral for real ``N``.

    Agrees with :func:`inc_Pi` when the pole is off the path. The R_J
    argument ``p = 1 - N sin²`` is passed with imaginary part +0, so the
    duplication runs along the upper limit; its real part is the principal
    value. Not defined exactly at ``N sin²(phi) = 1``.
    """
    M = _check_parameter(M)
    N = np.asarray(N, dtype=float)
    k, _, s, c2 = _reduce(phi)
    k, s, c2, N, M = np.broadcast_arrays(k, s, c2, N, M)
    d2 = 1.0 - M * s * s
    p = np.asarray(1.0 - N * s * s, dtype=complex)
    partial = s * carlson_rf(c2, d2, 1.0) + N / 3.0 * s ** 3 * carlson_rj(c2, d2, 1.0, p).real
    wraps = k != 0
    if np.any(wraps):
        pc = np.asarray(1.0 - N[wraps], dtype=complex)
        comp = np.zeros(N.shape)
        comp[wraps] = carlson_rf(0.0, 1.0 - M[wraps], 1.0) + N[wraps] / 3.0 * carlson_rj(
            0.0, 1.0 - M[wraps], 1.0, pc).real
        partial = partial + 2.0 * k * comp
    return partial


def _complete_pi_masked(N, M, mask):
    out = np.zeros(N.shape, dtype=complex)
    out[mask] = carlson_rf(0.0, 1.0 - M[mask], 1.0) + N[mask] / 3.0 * carlson_rj(
        0.0, 1.0 - M[mask], 1.0, 1.0 - N[mask])
    return out
