"""Complex polynomials stored by ascending coefficients."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as npoly


def _as_coeffs(coeffs) -> np.ndarray:
    arr = np.atleast_1d(np.asarray(coeffs, dtype=complex)).copy()
    if arr.ndim != 1:
        raise ValueError("polynomial coefficients must be one-dimensional")
    if arr.size == 0:
        arr = np.zeros(1, dtype=complex)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class ComplexPolynomial:
    """Polynomial ``D_0 + D_1 z + ... + D_d z^d``.

    Trailing zero coefficients are kept as given; ``degree`` reports the
    highest index holding a nonzero entry (``-1`` for the zero polynomial).
    """

    coeffs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _as_coeffs(self.coeffs))

    @classmethod
    def from_roots(cls, roots, lead=1.0) -> ComplexPolynomial:
        roots = np.asarray(list(roots), dtype=complex)
        if roots.size == 0:
            return cls([lead])
        return cls(lead * npoly.polyfromroots(roots))

    @classmethod
    def constant(cls, value=1.0) -> ComplexPolynomial:
        return cls([value])

    @property
    def degree(self) -> int:
        nz = np.flatnonzero(self.coeffs)
        return int(nz[-1]) if nz.size else -1

    def is_zero(self) -> bool:
        return self.degree < 0

    def __call__(self, z):
        return npoly.polyval(z, self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, ComplexPolynomial):
            return NotImplemented
        return np.array_equal(self.trimmed().coeffs, other.trimmed().coeffs)

    def __hash__(self):
        return hash(tuple(self.trimmed().coeffs.tolist()))

    def __mul__(self, other):
        if isinstance(other, ComplexPolynomial):
            return ComplexPolynomial(npoly.polymul(self.coeffs, other.coeffs))
        return ComplexPolynomial(self.coeffs * complex(other))

    __rmul__ = __mul__

    def __add__(self, other):
        if isinstance(other, ComplexPolynomial):
            return ComplexPolynomial(npoly.polyadd(self.coeffs, other.coeffs))
        return self + ComplexPolynomial([other])

    def __neg__(self):
        return ComplexPolynomial(-self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def trimmed(self, tol=0.0) -> ComplexPolynomial:
        """Drop trailing coefficients with modulus ``<= tol * max|D_k|``."""
        c = self.coeffs
        scale = np.max(np.abs(c)) if c.size else 0.0
        keep = np.flatnonzero(np.abs(c) > tol * scale) if scale > 0 else np.array([], int)
        if keep.size == 0:
            return ComplexPolynomial([0.0])
        return ComplexPolynomial(c[: keep[-1] + 1])

    def normalized(self) -> ComplexPolynomial:
        """Scale so the largest coefficient has modulus one and the first
        nonzero coefficient is real positive."""
        c = np.array(self.coeffs)
        big = np.max(np.abs(c))
        if big == 0:
            return ComplexPolynomial(c)
        c = c / big
        first = c[np.flatnonzero(np.abs(c) > 0)[0]]
        c = c * (abs(first) / first)
        c[np.flatnonzero(np.abs(c) > 0)[0]] = abs(first)
        return ComplexPolynomial(c)

    def monic(self) -> ComplexPolynomial:
        t = self.trimmed()
        if t.is_zero():
            raise ZeroDivisionError("zero polynomial has no leading coefficient")
        return ComplexPolynomial(t.coeffs / t.coeffs[-1])

    def roots(self) -> np.ndarray:
        """Roots as eigenvalues of the companion matrix."""
        t = self.trimmed()
        if t.degree <= 0:
            return np.zeros(0, dtype=complex)
        return npoly.polyroots(t.coeffs)

    def divide_linear(self, a) -> tuple[ComplexPolynomial, complex]:
        """Synthetic division by ``z - a``; returns quotient and remainder."""
        c = self.trimmed().coeffs
        if c.size == 1:
            return ComplexPolynomial([0.0]), complex(c[0])
        out = np.zeros(c.size - 1, dtype=complex)
        acc = 0j
        for k in range(c.size - 1, 0, -1):
            acc = c[k] + acc * a
            out[k - 1] = acc
        rem = c[0] + acc * a
        return ComplexPolynomial(out), complex(rem)

    def to_json(self):
        return [[float(v.real), float(v.imag)] for v in self.coeffs]

    @classmethod
    def from_json(cls, data) -> ComplexPolynomial:
        return cls([complex(re, im) for re, im in data])

    def __repr__(self):
        body = ", ".join(f"{v:.6g}" for v in self.coeffs)
        return f"ComplexPolynomial([{body}])"
