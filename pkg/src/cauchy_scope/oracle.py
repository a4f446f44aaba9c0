"""Closed-form reference computations for rational functions.

Everything here works from zeros, poles and a scale factor and never looks
at samples, so it can serve as an independent check on the sampled
pipeline.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from math import comb
from typing import Sequence

import numpy as np

from .errors import ConditioningError, InputError
from .polynomial import ComplexPolynomial

# Generation constants for random_rational; documented in its docstring.
MAX_MULTIPLICITY = 3
MIN_POLE_RADIUS = 0.2
MIN_POLE_SEPARATION = 0.15
ZERO_RADIUS = 1.6
ZERO_CIRCLE_BAND = 0.1
MIN_ZERO_POLE_SEPARATION = 0.15


def _points(items) -> tuple:
    out = []
    for item in items:
        loc, mult = item
        mult = int(mult)
        if mult < 1:
            raise InputError(f"multiplicity must be positive, got {mult}")
        out.append((complex(loc), mult))
    return tuple(out)


@dataclass(frozen=True)
class RationalFunction:
    """``scale * prod (z - zeros)^m / prod (z - poles)^k``."""

    zeros: tuple = ()
    poles: tuple = ()
    scale: complex = 1.0

    def __post_init__(self):
        object.__setattr__(self, "zeros", _points(self.zeros))
        object.__setattr__(self, "poles", _points(self.poles))
        object.__setattr__(self, "scale", complex(self.scale))
        if self.scale == 0:
            raise InputError("scale must be nonzero")
        for z, _ in self.zeros:
            for p, _ in self.poles:
                if abs(z - p) < 1e-12:
                    raise InputError(f"zero {z} coincides with pole {p}; reduce first")

    # -- forms ---------------------------------------------------------
    def numerator(self) -> ComplexPolynomial:
        roots = [z for z, m in self.zeros for _ in range(m)]
        return ComplexPolynomial.from_roots(roots, self.scale)

    def denominator(self) -> ComplexPolynomial:
        roots = [p for p, k in self.poles for _ in range(k)]
        return ComplexPolynomial.from_roots(roots)

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        out = np.full(z.shape, self.scale, dtype=complex)
        for a, m in self.zeros:
            out = out * (z - a) ** m
        for p, k in self.poles:
            out = out / (z - p) ** k
        return out if out.ndim else complex(out)

    # -- structure -----------------------------------------------------
    def interior_poles(self) -> list:
        return [(p, k) for p, k in self.poles if abs(p) < 1]

    def exterior_poles(self) -> list:
        return [(p, k) for p, k in self.poles if abs(p) > 1]

    def pole_count(self) -> int:
        """Poles inside the disc, with multiplicity."""
        return sum(k for _, k in self.interior_poles())

    def zero_count(self) -> int:
        return sum(m for z, m in self.zeros if abs(z) < 1)

    def analytic_factor(self) -> RationalFunction:
        """``f * prod_{|a|<1} (z - a)^k``: holomorphic on a neighbourhood of the closed disc."""
        return RationalFunction(self.zeros, tuple(self.exterior_poles()), self.scale)

    def principal_part(self, pole: complex, multiplicity: int) -> np.ndarray:
        """``[c_1, ..., c_m]`` with ``f = sum c_k / (z - a)^k + (holomorphic near a)``."""
        a, m = complex(pole), int(multiplicity)
        # Taylor coefficients of g(a + u) = f(a + u) (u)^m up to order m - 1
        g = np.zeros(m, dtype=complex)
        g[0] = self.scale
        for z, mult in self.zeros:
            for _ in range(mult):
                g = np.convolve(g, [a - z, 1.0])[:m]
        for p, k in self.poles:
            if abs(p - a) < 1e-14:
                continue
            for _ in range(k):
                # divide by (a - p) + u
                d0 = a - p
                out = np.zeros(m, dtype=complex)
                for i in range(m):
                    prev = out[i - 1] if i else 0.0
                    out[i] = (g[i] - prev) / d0
                g = out
        # c_k multiplies (z-a)^(-k) and equals g_{m-k}
        return np.array([g[m - k] for k in range(1, m + 1)])

    # -- serialization -------------------------------------------------
    def to_json(self) -> dict:
        return {
            "zeros": [[z.real, z.imag, m] for z, m in self.zeros],
            "poles": [[p.real, p.imag, k] for p, k in self.poles],
            "scale": [self.scale.real, self.scale.imag],
        }

    @classmethod
    def from_json(cls, data) -> RationalFunction:
        if isinstance(data, str):
            data = json.loads(data)
        try:
            zeros = [(complex(re, im), m) for re, im, m in data.get("zeros", [])]
            poles = [(complex(re, im), k) for re, im, k in data.get("poles", [])]
            sre, sim = data.get("scale", [1.0, 0.0])
        except (TypeError, ValueError) as exc:
            raise InputError(f"malformed rational description: {exc}") from exc
        return cls(tuple(zeros), tuple(poles), complex(sre, sim))


def exact_negative_coefficients(r: RationalFunction, depth: int) -> np.ndarray:
    """``[f^(-1), ..., f^(-depth)]`` from the partial-fraction expansion.

    Each term ``c/(z-a)^k`` with ``|a| < 1`` contributes
    ``c * binom(n-1, k-1) * a^(n-k)`` to ``f^(-n)`` for ``n >= k``; poles
    outside the disc and the polynomial part only feed nonnegative indices.
    """
    for p, _ in r.poles:
        if abs(abs(p) - 1) <= 1e-3:
            raise ConditioningError(f"pole {p} within 1e-3 of the unit circle")
    out = np.zeros(depth, dtype=complex)
    n = np.arange(1, depth + 1)
    for a, m in r.interior_poles():
        c = r.principal_part(a, m)
        for k in range(1, m + 1):
            mask = n >= k
            binom = np.array([comb(int(nn) - 1, k - 1) for nn in n[mask]], dtype=float)
            out[mask] += c[k - 1] * binom * np.power(complex(a), n[mask] - k)
    return out


def exact_winding(r: RationalFunction) -> int:
    """Zeros minus poles inside the disc, with multiplicity."""
    for pt, _ in r.zeros + r.poles:
        if abs(abs(pt) - 1) < 1e-9:
            raise ConditioningError(f"winding undefined: {pt} lies on the unit circle")
    return r.zero_count() - r.pole_count()


def exact_composite_winding(r: RationalFunction, P: ComplexPolynomial, Q: ComplexPolynomial) -> int:
    """Winding number of ``P f + Q`` by counting roots of ``P*num + Q*den`` in the disc."""
    num = P * r.numerator() + Q * r.denominator()
    roots = num.trimmed().roots()
    if roots.size and np.min(np.abs(np.abs(roots) - 1)) < 1e-9:
        raise ConditioningError("P f + Q vanishes on the unit circle")
    return int(np.sum(np.abs(roots) < 1)) - sum(k for _, k in r.interior_poles())


def _uniform_annulus(rng, r_min: float, r_max: float) -> complex:
    radius = np.sqrt(rng.uniform(r_min**2, r_max**2))
    return complex(radius * np.exp(2j * np.pi * rng.uniform()))


def random_rational(seed: int, max_poles: int, pole_radius_cap: float = 0.8) -> RationalFunction:
    """Reproducible random rational function with all poles in ``|z| <= pole_radius_cap``.

    Distribution (fixed; changing it invalidates golden files):

    * total pole count uniform on ``0..max_poles``; split into distinct
      poles with multiplicity 1, 2 or 3 (probabilities 0.6, 0.25, 0.15,
      capped by what remains);
    * pole locations uniform by area in ``0.2 <= |z| <= cap``, resampled
      until distinct poles are at least 0.15 apart;
    * ``0..max_poles + 1`` simple zeros uniform by area in ``|z| <= 1.6``,
      resampled while within 0.1 of the unit circle or 0.15 of a pole;
    * scale with modulus uniform in ``[0.5, 2]`` and uniform phase.
    """
    if not pole_radius_cap < 1:
        raise InputError("pole_radius_cap must be < 1")
    rng = np.random.default_rng(seed)
    r_min = min(MIN_POLE_RADIUS, pole_radius_cap / 2)

    remaining = int(rng.integers(0, max_poles + 1))
    poles = []
    while remaining > 0:
        choices = np.arange(1, min(MAX_MULTIPLICITY, remaining) + 1)
        probs = np.array([0.6, 0.25, 0.15][: choices.size])
        mult = int(rng.choice(choices, p=probs / probs.sum()))
        for _ in range(1000):
            loc = _uniform_annulus(rng, r_min, pole_radius_cap)
            if all(abs(loc - p) >= MIN_POLE_SEPARATION for p, _ in poles):
                break
        else:  # pragma: no cover - separation always attainable at desk scale
            raise RuntimeError("could not place separated poles")
        poles.append((loc, mult))
        remaining -= mult

    zeros = []
    for _ in range(int(rng.integers(0, max_poles + 2))):
        for _ in range(1000):
            loc = _uniform_annulus(rng, 0.0, ZERO_RADIUS)
            if abs(abs(loc) - 1) < ZERO_CIRCLE_BAND:
                continue
            if any(abs(loc - p) < MIN_ZERO_POLE_SEPARATION for p, _ in poles):
                continue
            break
        zeros.append((loc, 1))

    scale = rng.uniform(0.5, 2.0) * np.exp(2j * np.pi * rng.uniform())
    return RationalFunction(tuple(zeros), tuple(poles), complex(scale))


def rational_corpus(count: int, max_poles: int = 5, pole_radius_cap: float = 0.8, seed: int = 0) -> list:
    """``count`` instances from consecutive seeds starting at ``seed``."""
    return [random_rational(seed + i, max_poles, pole_radius_cap) for i in range(count)]


def pole_multiset(items: Sequence) -> list:
    """Sorted ``(location, multiplicity)`` pairs, for comparisons in tests."""
    return sorted(((complex(a), int(k)) for a, k in items), key=lambda t: (round(t[0].real, 6), round(t[0].imag, 6)))
