"""Vectorised numpy kernels. Same contracts as ``_kernels_numba``.

Every duplication loop runs until *all* elements have converged; extra
iterations on already-converged elements only shrink the truncation error.
"""
import numpy as np

_MAXIT = 40
_EPS = np.finfo(float).eps
_QF = (3.0e-16) ** (-1.0 / 6.0)
_QJ = (0.25e-16) ** (-1.0 / 6.0)

_RC_SERIES = 1.0 / (2.0 * np.arange(9) + 1.0)


def ellipj(u, m):
    u = np.asarray(u, dtype=float)
    m = np.asarray(m, dtype=float)
    a = [np.ones_like(m)]
    c = [np.sqrt(m)]
    b = np.sqrt(1.0 - m)
    while np.any(c[-1] > _EPS * a[-1]) and len(a) <= _MAXIT:
        an = a[-1]
        a.append(0.5 * (an + b))
        c.append(0.5 * (an - b))
        b = np.sqrt(an * b)
    nit = len(a) - 1
    half_period = np.pi / a[nit]
    k = np.floor(u / half_period + 0.5)
    u0 = u - k * half_period
    phi = (2.0 ** nit) * a[nit] * u0
    for j in range(nit, 0, -1):
        phi = 0.5 * (phi + np.arcsin(c[j] / a[j] * np.sin(phi)))
    sign = 1.0 - 2.0 * np.mod(k, 2.0)
    sn = sign * np.sin(phi)
    return sn, sign * np.cos(phi), np.sqrt(1.0 - m * sn * sn), phi + k * np.pi


def complete_k(m):
    a = np.ones_like(np.asarray(m, dtype=float))
    b = np.sqrt(1.0 - np.asarray(m, dtype=float))
    for _ in range(_MAXIT):
        if np.all(np.abs(a - b) <= _EPS * a):
            break
        a, b = 0.5 * (a + b), np.sqrt(a * b)
    return np.pi / (a + b)


def carlson_rf(x, y, z):
    x, y, z = (np.array(v, dtype=float) for v in (x, y, z))
    a0 = (x + y + z) / 3.0
    q = _QF * np.max(np.abs([a0 - x, a0 - y, a0 - z]), axis=0)
    a = a0.copy()
    while np.any(q >= np.abs(a)):
        sx, sy, sz = np.sqrt(x), np.sqrt(y), np.sqrt(z)
        lam = sx * sy + sy * sz + sz * sx
        x, y, z, a = 0.25 * (x + lam), 0.25 * (y + lam), 0.25 * (z + lam), 0.25 * (a + lam)
        q *= 0.25
    dx = 1.0 - x / a
    dy = 1.0 - y / a
    dz = -(dx + dy)
    e2 = dx * dy - dz * dz
    e3 = dx * dy * dz
    return (1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0) / np.sqrt(a)


def carlson_rd(x, y, z):
    x, y, z = (np.array(v, dtype=float) for v in (x, y, z))
    a0 = (x + y + 3.0 * z) / 5.0
    q = _QJ * np.max(np.abs([a0 - x, a0 - y, a0 - z]), axis=0)
    a = a0.copy()
    total = np.zeros_like(a)
    fac = 1.0
    while np.any(q >= np.abs(a)):
        sx, sy, sz = np.sqrt(x), np.sqrt(y), np.sqrt(z)
        lam = sx * sy + sy * sz + sz * sx
        total += fac / (sz * (z + lam))
        fac *= 0.25
        x, y, z, a = 0.25 * (x + lam), 0.25 * (y + lam), 0.25 * (z + lam), 0.25 * (a + lam)
        q *= 0.25
    dx = 1.0 - x / a
    dy = 1.0 - y / a
    dz = -(dx + dy) / 3.0
    e2 = dx * dy - 6.0 * dz * dz
    e3 = (3.0 * dx * dy - 8.0 * dz * dz) * dz
    e4 = 3.0 * (dx * dy - dz * dz) * dz * dz
    e5 = dx * dy * dz ** 3
    series = (1.0 - 3.0 * e2 / 14.0 + e3 / 6.0 + 9.0 * e2 * e2 / 88.0
              - 3.0 * e4 / 22.0 - 9.0 * e2 * e3 / 52.0 + 3.0 * e5 / 26.0)
    return fac * series / (a * np.sqrt(a)) + 3.0 * total


def _rc_one(e):
    # R_C(1, 1 + e), elementwise on a complex array
    out = np.empty_like(e)
    small = np.abs(e) < 1e-3
    if np.any(small):
        es = e[small]
        out[small] = np.polynomial.polynomial.polyval(-es, _RC_SERIES)
    if np.any(~small):
        w = np.sqrt(e[~small])
        out[~small] = np.arctan(w) / w
    return out


def carlson_rj(x, y, z, p):
    x, y, z = (np.array(v, dtype=complex) for v in (x, y, z))
    p = np.array(p, dtype=complex)
    a0 = (x + y + z + 2.0 * p) / 5.0
    delta = (p - x) * (p - y) * (p - z)
    q = _QJ * np.max(np.abs([a0 - x, a0 - y, a0 - z, a0 - p]), axis=0)
    a = a0.copy()
    x0, y0, z0 = x, y, z
    total = np.zeros_like(a)
    fac = 1.0
    fac3 = 1.0
    while np.any(q * fac >= np.abs(a)):
        sx, sy, sz, sp = np.sqrt(x), np.sqrt(y), np.sqrt(z), np.sqrt(p)
        lam = sx * sy + sy * sz + sz * sx
        d = (sp + sx) * (sp + sy) * (sp + sz)
        total += fac * _rc_one(fac3 * delta / (d * d)) / d
        fac *= 0.25
        fac3 /= 64.0
        x, y, z = 0.25 * (x + lam), 0.25 * (y + lam), 0.25 * (z + lam)
        p, a = 0.25 * (p + lam), 0.25 * (a + lam)
    dx = (a0 - x0) * fac / a
    dy = (a0 - y0) * fac / a
    dz = (a0 - z0) * fac / a
    dp = -(dx + dy + dz) / 2.0
    e2 = dx * dy + dx * dz + dy * dz - 3.0 * dp * dp
    e3 = dx * dy * dz + 2.0 * e2 * dp + 4.0 * dp ** 3
    e4 = (2.0 * dx * dy * dz + e2 * dp + 3.0 * dp ** 3) * dp
    e5 = dx * dy * dz * dp * dp
    series = (1.0 - 3.0 * e2 / 14.0 + e3 / 6.0 + 9.0 * e2 * e2 / 88.0
              - 3.0 * e4 / 22.0 - 9.0 * e2 * e3 / 52.0 + 3.0 * e5 / 26.0)
    return fac * series / (a * np.sqrt(a)) + 6.0 * total
