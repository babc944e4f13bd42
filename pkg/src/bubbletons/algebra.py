"""Quaternions in the C + jC representation.

A quaternion is stored as two complex numbers (or broadcastable complex
arrays) ``z0, z1`` meaning ``z0 + j*z1``, with the rule ``j z = conj(z) j``.
Writing ``q = w + x i + y j + z k`` this is ``z0 = w + i x``, ``z1 = y - i z``.

Points of 3-space are imaginary quaternions and are exchanged with the
rest of the package as float arrays of shape ``(..., 3)``.
"""
from __future__ import annotations

import numpy as np

from .errors import NearZeroQuaternion

EPS_INV = 1e-14


class Quaternion:
    """Immutable (by convention) quaternion field ``z0 + j z1``.

    ``q * w`` with ``w`` complex is right multiplication, ``w * q`` is left
    multiplication; the two differ through the j-conjugation rule.
    """

    __slots__ = ("z0", "z1")
    __array_priority__ = 1000  # keep ndarray * Quaternion on our __rmul__

    def __init__(self, z0=0.0, z1=0.0):
        self.z0 = np.asarray(z0, dtype=complex)
        self.z1 = np.asarray(z1, dtype=complex)

    @classmethod
    def from_components(cls, w, x, y, z) -> "Quaternion":
        w, x, y, z = (np.asarray(v, dtype=float) for v in (w, x, y, z))
        return cls(w + 1j * x, y - 1j * z)

    @classmethod
    def from_vector(cls, v) -> "Quaternion":
        v = np.asarray(v, dtype=float)
        return cls(1j * v[..., 0], v[..., 1] - 1j * v[..., 2])

    @property
    def real(self) -> np.ndarray:
        return self.z0.real

    def vector(self) -> np.ndarray:
        """Imaginary part as an ``(..., 3)`` array."""
        z0, z1 = np.broadcast_arrays(self.z0, self.z1)
        return np.stack([z0.imag, z1.real, -z1.imag], axis=-1)

    def components(self) -> np.ndarray:
        z0, z1 = np.broadcast_arrays(self.z0, self.z1)
        return np.stack([z0.real, z0.imag, z1.real, -z1.imag], axis=-1)

    @property
    def shape(self):
        return np.broadcast_shapes(self.z0.shape, self.z1.shape)

    def conj(self) -> "Quaternion":
        return Quaternion(np.conj(self.z0), -self.z1)

    def norm2(self) -> np.ndarray:
        return np.abs(self.z0) ** 2 + np.abs(self.z1) ** 2

    def __abs__(self) -> np.ndarray:
        return np.sqrt(self.norm2())

    def inverse(self, eps: float = EPS_INV) -> "Quaternion":
        n2 = self.norm2()
        if np.any(n2 <= eps * eps):
            raise NearZeroQuaternion(f"cannot invert quaternion with |q| <= {eps:g}")
        return Quaternion(np.conj(self.z0) / n2, -self.z1 / n2)

    def __neg__(self):
        return Quaternion(-self.z0, -self.z1)

    def __add__(self, other):
        if isinstance(other, Quaternion):
            return Quaternion(self.z0 + other.z0, self.z1 + other.z1)
        return Quaternion(self.z0 + other, self.z1)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            return mul(self, other)
        return Quaternion(self.z0 * other, self.z1 * other)

    def __rmul__(self, other):
        # left multiplication by a complex scalar: w (z0 + j z1) = w z0 + j conj(w) z1
        return Quaternion(other * self.z0, np.conj(other) * self.z1)

    def __truediv__(self, other):
        if isinstance(other, Quaternion):
            return self * other.inverse()
        return Quaternion(self.z0 / other, self.z1 / other)

    def __getitem__(self, idx):
        z0, z1 = np.broadcast_arrays(self.z0, self.z1)
        return Quaternion(z0[idx], z1[idx])

    def allclose(self, other, atol=1e-12) -> bool:
        d = self - other
        return bool(np.all(abs(d) <= atol))

    def __repr__(self):
        return f"Quaternion(z0={self.z0!r}, z1={self.z1!r})"


ONE = Quaternion(1.0, 0.0)
I = Quaternion(1j, 0.0)
J = Quaternion(0.0, 1.0)
K = Quaternion(0.0, -1j)


def mul(p: Quaternion, q: Quaternion) -> Quaternion:
    """(a0 + j a1)(b0 + j b1) = (a0 b0 - conj(a1) b1) + j (conj(a0) b1 + a1 b0)."""
    return Quaternion(p.z0 * q.z0 - np.conj(p.z1) * q.z1,
                      np.conj(p.z0) * q.z1 + p.z1 * q.z0)


def inverse(q: Quaternion, eps: float = EPS_INV) -> Quaternion:
    return q.inverse(eps)


def dot_cross(a, b):
    """Return ``(<a, b>, a x b)`` for 3-vectors via ``ab = -<a,b> + a x b``."""
    prod = mul(Quaternion.from_vector(a), Quaternion.from_vector(b))
    return -prod.real, prod.vector()


def expi(theta) -> np.ndarray:
    return np.exp(1j * np.asarray(theta, dtype=float))
