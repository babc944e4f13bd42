"""numba kernels. Same contracts as ``_kernels_numpy``: 1-D contiguous inputs."""
import cmath
import math

import numpy as np
from numba import njit

_MAXIT = 40
_EPS = 2.220446049250313e-16
# Carlson stopping constants, r = 1e-16
_QF = (3.0e-16) ** (-1.0 / 6.0)
_QJ = (0.25e-16) ** (-1.0 / 6.0)


@njit(cache=True)
def ellipj(u, m):
    n = u.shape[0]
    sn = np.empty(n)
    cn = np.empty(n)
    dn = np.empty(n)
    ph = np.empty(n)
    a = np.empty(_MAXIT + 1)
    c = np.empty(_MAXIT + 1)
    for idx in range(n):
        mi = m[idx]
        ui = u[idx]
        a[0] = 1.0
        b = math.sqrt(1.0 - mi)
        c[0] = math.sqrt(mi)
        nit = 0
        while c[nit] > _EPS * a[nit] and nit < _MAXIT:
            a[nit + 1] = 0.5 * (a[nit] + b)
            c[nit + 1] = 0.5 * (a[nit] - b)
            b = math.sqrt(a[nit] * b)
            nit += 1
        half_period = math.pi / a[nit]  # 2K
        k = math.floor(ui / half_period + 0.5)
        u0 = ui - k * half_period
        phi = (2.0 ** nit) * a[nit] * u0
        for j in range(nit, 0, -1):
            phi = 0.5 * (phi + math.asin(c[j] / a[j] * math.sin(phi)))
        sign = 1.0 - 2.0 * (k % 2.0)
        s = math.sin(phi)
        sn[idx] = sign * s
        cn[idx] = sign * math.cos(phi)
        dn[idx] = math.sqrt(1.0 - mi * s * s)
        ph[idx] = phi + k * math.pi
    return sn, cn, dn, ph


@njit(cache=True)
def complete_k(m):
    n = m.shape[0]
    out = np.empty(n)
    for idx in range(n):
        a = 1.0
        b = math.sqrt(1.0 - m[idx])
        for _ in range(_MAXIT):
            if abs(a - b) <= _EPS * a:
                break
            a, b = 0.5 * (a + b), math.sqrt(a * b)
        out[idx] = math.pi / (a + b)
    return out


@njit(cache=True)
def _rf(x, y, z):
    a0 = (x + y + z) / 3.0
    q = _QF * max(abs(a0 - x), abs(a0 - y), abs(a0 - z))
    a = a0
    while q >= abs(a):
        sx = math.sqrt(x)
        sy = math.sqrt(y)
        sz = math.sqrt(z)
        lam = sx * sy + sy * sz + sz * sx
        x = 0.25 * (x + lam)
        y = 0.25 * (y + lam)
        z = 0.25 * (z + lam)
        a = 0.25 * (a + lam)
        q *= 0.25
    dx = 1.0 - x / a
    dy = 1.0 - y / a
    dz = -(dx + dy)
    e2 = dx * dy - dz * dz
    e3 = dx * dy * dz
    return (1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0) / math.sqrt(a)


@njit(cache=True)
def _rd(x, y, z):
    a0 = (x + y + 3.0 * z) / 5.0
    q = _QJ * max(abs(a0 - x), abs(a0 - y), abs(a0 - z))
    a = a0
    total = 0.0
    fac = 1.0
    while q >= abs(a):
        sx = math.sqrt(x)
        sy = math.sqrt(y)
        sz = math.sqrt(z)
        lam = sx * sy + sy * sz + sz * sx
        total += fac / (sz * (z + lam))
        fac *= 0.25
        x = 0.25 * (x + lam)
        y = 0.25 * (y + lam)
        z = 0.25 * (z + lam)
        a = 0.25 * (a + lam)
        q *= 0.25
    dx = 1.0 - x / a
    dy = 1.0 - y / a
    dz = -(dx + dy) / 3.0
    e2 = dx * dy - 6.0 * dz * dz
    e3 = (3.0 * dx * dy - 8.0 * dz * dz) * dz
    e4 = 3.0 * (dx * dy - dz * dz) * dz * dz
    e5 = dx * dy * dz * dz * dz
    series = (1.0 - 3.0 * e2 / 14.0 + e3 / 6.0 + 9.0 * e2 * e2 / 88.0
              - 3.0 * e4 / 22.0 - 9.0 * e2 * e3 / 52.0 + 3.0 * e5 / 26.0)
    return fac * series / (a * math.sqrt(a)) + 3.0 * total


@njit(cache=True)
def _rc_one(e):
    # R_C(1, 1 + e)
    if abs(e) < 1e-3:
        s = 0.0j
        term = 1.0 + 0.0j
        for k in range(9):
            s += term / (2 * k + 1)
            term *= -e
        return s
    w = cmath.sqrt(e)
    return cmath.atan(w) / w


@njit(cache=True)
def _rj(x, y, z, p):
    a0 = (x + y + z + 2.0 * p) / 5.0
    delta = (p - x) * (p - y) * (p - z)
    q = _QJ * max(abs(a0 - x), abs(a0 - y), abs(a0 - z), abs(a0 - p))
    a = a0
    x0, y0, z0 = x, y, z
    total = 0.0j
    fac = 1.0
    fac3 = 1.0
    xc = x + 0.0j
    yc = y + 0.0j
    zc = z + 0.0j
    while q * fac >= abs(a):
        sx = cmath.sqrt(xc)
        sy = cmath.sqrt(yc)
        sz = cmath.sqrt(zc)
        sp = cmath.sqrt(p)
        lam = sx * sy + sy * sz + sz * sx
        d = (sp + sx) * (sp + sy) * (sp + sz)
        e = fac3 * delta / (d * d)
        total += fac * _rc_one(e) / d
        fac *= 0.25
        fac3 *= 1.0 / 64.0
        xc = 0.25 * (xc + lam)
        yc = 0.25 * (yc + lam)
        zc = 0.25 * (zc + lam)
        p = 0.25 * (p + lam)
        a = 0.25 * (a + lam)
    dx = (a0 - x0) * fac / a
    dy = (a0 - y0) * fac / a
    dz = (a0 - z0) * fac / a
    dp = -(dx + dy + dz) / 2.0
    e2 = dx * dy + dx * dz + dy * dz - 3.0 * dp * dp
    e3 = dx * dy * dz + 2.0 * e2 * dp + 4.0 * dp * dp * dp
    e4 = (2.0 * dx * dy * dz + e2 * dp + 3.0 * dp * dp * dp) * dp
    e5 = dx * dy * dz * dp * dp
    series = (1.0 - 3.0 * e2 / 14.0 + e3 / 6.0 + 9.0 * e2 * e2 / 88.0
              - 3.0 * e4 / 22.0 - 9.0 * e2 * e3 / 52.0 + 3.0 * e5 / 26.0)
    return fac * series / (a * cmath.sqrt(a)) + 6.0 * total


@njit(cache=True)
def carlson_rf(x, y, z):
    out = np.empty(x.shape[0])
    for i in range(x.shape[0]):
        out[i] = _rf(x[i], y[i], z[i])
    return out


@njit(cache=True)
def carlson_rd(x, y, z):
    out = np.empty(x.shape[0])
    for i in range(x.shape[0]):
        out[i] = _rd(x[i], y[i], z[i])
    return out


@njit(cache=True)
def carlson_rj(x, y, z, p):
    out = np.empty(x.shape[0], dtype=np.complex128)
    for i in range(x.shape[0]):
        out[i] = _rj(x[i], y[i], z[i], p[i])
    return out
