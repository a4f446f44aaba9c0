"""Built-in boundary functions addressed by short text specs.

Grammar (``--gen`` on the command line)::

    pole:a[,b,...]          1 / prod (z - a_i); repeated entries raise multiplicity
    zpole[:a]               z / (z - a), a = 0.5 by default
    poly:<expr>             Laurent polynomial, e.g. "z^3+2", "z^-2+0.1z^5"
    poly:<c0,c1,...>        ascending coefficient list
    lacunary:<k>            sum_{j=1..k} 2^-j z^(-3^j)
    conj-rational:a[,b,...] conj(1 / prod (z - a_i)) on the circle

Complex numbers use Python syntax (``0.3+0.2j``).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import ParseError
from .oracle import RationalFunction
from .polynomial import ComplexPolynomial


@dataclass(frozen=True)
class BuiltinFunction:
    spec: str
    func: Callable
    rational: Optional[RationalFunction] = None

    def __call__(self, z):
        return self.func(z)


def _complex(token: str) -> complex:
    try:
        return complex(token.strip().replace(" ", ""))
    except ValueError as exc:
        raise ParseError(f"not a complex number: {token!r}") from exc


def _split_terms(expr: str) -> list:
    terms, depth, start = [], 0, 0
    for i, ch in enumerate(expr):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and i > start and expr[i - 1] not in "eE^":
            terms.append(expr[start:i])
            start = i
    terms.append(expr[start:])
    return [t for t in terms if t]


def parse_laurent(expr: str) -> dict:
    """``{power: coefficient}`` for a sum of terms like ``-0.5z^-2`` or ``(1+2j)*z``."""
    s = expr.replace(" ", "").replace("**", "^").replace("{", "").replace("}", "")
    if not s:
        raise ParseError("empty polynomial expression")
    out: dict = {}
    for term in _split_terms(s):
        sign = -1.0 if term[0] == "-" else 1.0
        body = term[1:] if term[0] in "+-" else term
        if "z" in body:
            coef_str, _, pow_str = body.partition("z")
            coef_str = coef_str.rstrip("*")
            coef = _complex(coef_str) if coef_str else 1.0
            if not pow_str:
                power = 1
            elif pow_str.startswith("^"):
                try:
                    power = int(pow_str[1:].strip("()"))
                except ValueError as exc:
                    raise ParseError(f"bad exponent in term {term!r}") from exc
            else:
                raise ParseError(f"cannot parse term {term!r}")
        else:
            coef, power = _complex(body), 0
        out[power] = out.get(power, 0) + sign * coef
    return out


def laurent_function(terms: dict) -> Callable:
    items = sorted(terms.items())

    def f(z):
        z = np.asarray(z, dtype=complex)
        acc = np.zeros(z.shape, dtype=complex)
        for power, coef in items:
            acc = acc + coef * z**power
        return acc

    return f


def parse_polynomial(text: str) -> ComplexPolynomial:
    """Polynomial from an expression (``"z-0.5"``) or ascending coefficients (``"-0.5,1"``)."""
    text = text.strip()
    if "z" in text:
        terms = parse_laurent(text)
        if min(terms) < 0:
            raise ParseError(f"negative powers are not allowed in a polynomial: {text!r}")
        c = np.zeros(max(terms) + 1, dtype=complex)
        for p, v in terms.items():
            c[p] = v
        return ComplexPolynomial(c)
    return ComplexPolynomial([_complex(t) for t in text.split(",")])


def _points(arg: str) -> list:
    pts: dict = {}
    for token in arg.split(","):
        a = _complex(token)
        pts[a] = pts.get(a, 0) + 1
    return list(pts.items())


def lacunary(k: int, base: float = 2.0) -> Callable:
    def f(z):
        z = np.asarray(z, dtype=complex)
        return sum(base ** (-j) * z ** (-(3**j)) for j in range(1, k + 1))

    return f


def conj_rational(points: list) -> RationalFunction:
    """Rational function equal to ``conj(1/prod (z - a)^m)`` on the unit circle.

    Uses ``conj(1/(z - a)) = -(1/conj(a)) * z / (z - 1/conj(a))`` for
    ``a != 0`` and ``conj(1/z) = z``.
    """
    zeros, poles, scale = {}, [], 1.0 + 0j
    for a, m in points:
        if abs(abs(a) - 1) < 1e-9:
            raise ParseError(f"conj-rational point {a} lies on the unit circle")
        if a == 0:
            zeros[0j] = zeros.get(0j, 0) + m
            continue
        b = 1 / np.conj(a)
        zeros[0j] = zeros.get(0j, 0) + m
        poles.append((complex(b), m))
        scale *= (-b) ** m
    return RationalFunction(tuple(zeros.items()), tuple(poles), scale)


def parse_generator(text: str) -> BuiltinFunction:
    kind, _, arg = text.strip().partition(":")
    kind = kind.strip().lower()
    if kind == "pole":
        if not arg:
            raise ParseError("pole: needs at least one location")
        r = RationalFunction(poles=tuple(_points(arg)))
        return BuiltinFunction(text, r, r)
    if kind == "zpole":
        a = _complex(arg) if arg else 0.5
        r = RationalFunction(zeros=((0j, 1),), poles=((a, 1),))
        return BuiltinFunction(text, r, r)
    if kind == "poly":
        if not arg:
            raise ParseError("poly: needs an expression or coefficient list")
        if "z" in arg:
            terms = parse_laurent(arg)
        else:
            terms = {k: _complex(t) for k, t in enumerate(arg.split(","))}
        return BuiltinFunction(text, laurent_function(terms))
    if kind == "lacunary":
        try:
            k = int(arg)
        except ValueError as exc:
            raise ParseError(f"lacunary: expects an integer, got {arg!r}") from exc
        if k < 1:
            raise ParseError("lacunary: needs k >= 1")
        return BuiltinFunction(text, lacunary(k))
    if kind == "conj-rational":
        if not arg:
            raise ParseError("conj-rational: needs at least one point")
        r = conj_rational(_points(arg))
        return BuiltinFunction(text, r, r)
    raise ParseError(f"unknown generator {kind!r}")
