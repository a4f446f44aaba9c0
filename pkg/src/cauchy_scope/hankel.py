"""Hankel systems built from negative Fourier coefficients.

Row ``r`` of a system of order ``N`` is ``(f^(-1-r), f^(-2-r), ..., f^(-1-r-N))``;
a vector ``D`` in its null space gives a polynomial ``P = sum D_c z^c`` with
``(P f)^(-1-r) = 0`` for every row kept. For a boundary function whose
coanalytic part is rational with poles inside the disc, the minimal such
``P`` is the pole polynomial and the rank of large square truncations equals
the number of poles counted with multiplicity.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import PreconditionError
from .polynomial import ComplexPolynomial
from .spectrum import FourierSpectrum
from .tolerances import DEFAULT_TOLERANCES

__all__ = [
    "ComplexPolynomial",
    "HankelSystem",
    "Annihilator",
    "RankReport",
    "build_system",
    "hankel_matrix",
    "annihilator",
    "numeric_rank",
    "rank_report",
]


def hankel_matrix(neg: np.ndarray, rows: int, cols: int) -> np.ndarray:
    """``H[r, c] = neg[r + c]`` where ``neg[k] = f^(-1-k)``."""
    r = np.arange(rows)[:, None]
    c = np.arange(cols)[None, :]
    return np.asarray(neg)[r + c] if rows and cols else np.zeros((rows, cols), dtype=complex)


@dataclass(frozen=True, eq=False)
class HankelSystem:
    order: int
    rows: np.ndarray
    coefficient_scale: float = field(default=0.0)

    @property
    def row_count(self) -> int:
        return int(self.rows.shape[0])

    def entry(self, r: int, c: int) -> complex:
        return complex(self.rows[r, c])

    def residual(self, D) -> float:
        if self.row_count == 0:
            return 0.0
        return float(np.linalg.norm(self.rows @ np.asarray(D, dtype=complex)))

    def leading_columns(self, order: int) -> HankelSystem:
        return HankelSystem(order, self.rows[:, : order + 1], self.coefficient_scale)


def build_system(spec: FourierSpectrum, N: int, rows: int | None = None) -> HankelSystem:
    """Order-``N`` system with ``rows`` equations (default ``2N``).

    ``rows == N`` reproduces the square-minus-one system whose solvability
    is guaranteed by counting unknowns.
    """
    if N < 0:
        raise PreconditionError("order must be nonnegative")
    R = 2 * N if rows is None else int(rows)
    if R < N:
        raise PreconditionError(f"need at least N={N} rows, got {R}")
    depth = R + N
    if depth > spec.half_window:
        raise PreconditionError(
            f"system of order {N} with {R} rows needs f^(-{depth}); window is {spec.half_window}"
        )
    neg = spec.negative(max(depth, 1))
    return HankelSystem(N, hankel_matrix(neg, R, N + 1), spec.max_abs())


@dataclass(frozen=True, eq=False)
class Annihilator:
    """Null direction of a Hankel system as a polynomial.

    ``nullity`` counts singular values below the cutoff (including the
    missing ones of a wide system). When it exceeds one the returned
    polynomial is the minimal-degree member of the null space, found by
    re-solving with fewer columns; ``flags`` records that.
    """

    polynomial: ComplexPolynomial
    residual: float
    singular_values: np.ndarray
    nullity: int
    flags: tuple = ()


def _cutoff(sv: np.ndarray, scale: float, rank_tol: float, coef_floor: float) -> float:
    top = float(sv[0]) if sv.size else 0.0
    return max(rank_tol * top, coef_floor * scale)


def _smallest_direction(A: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    cols = A.shape[1]
    if A.shape[0] == 0:
        v = np.zeros(cols, dtype=complex)
        v[-1] = 1.0
        return v, np.zeros(0)
    _, s, Vh = np.linalg.svd(A, full_matrices=True)
    return np.conj(Vh[-1]), s


def annihilator(
    system: HankelSystem,
    rank_tol: float = DEFAULT_TOLERANCES.rank_tol,
    coef_floor: float = DEFAULT_TOLERANCES.coef_floor,
) -> Annihilator:
    """Unit-normalized ``D`` minimizing ``||system @ D||``.

    The homogeneous system is never infeasible, so this never fails; a zero
    system returns ``P = 1`` with the ``all-annihilating`` flag.
    """
    N = system.order
    A = system.rows
    if A.shape[0]:
        sv = np.linalg.svd(A, compute_uv=False)
    else:
        sv = np.zeros(0)
    padded = np.zeros(N + 1)
    padded[: min(sv.size, N + 1)] = sv[: N + 1]
    cut = _cutoff(sv, system.coefficient_scale, rank_tol, coef_floor)

    flags = []
    if sv.size == 0 or sv[0] <= cut:
        D = np.zeros(N + 1, dtype=complex)
        D[0] = 1.0
        flags.append("all-annihilating")
        P = ComplexPolynomial(D)
        return Annihilator(P, system.residual(D), padded, N + 1, tuple(flags))

    rank = int(np.sum(padded > cut))
    nullity = N + 1 - rank
    if nullity > 1:
        flags.append("degenerate-null-space")
        sub = system.leading_columns(rank)
        v, _ = _smallest_direction(sub.rows)
        D = np.zeros(N + 1, dtype=complex)
        D[: rank + 1] = v
    else:
        D, _ = _smallest_direction(A)

    P = ComplexPolynomial(D).normalized()
    return Annihilator(P, system.residual(P.coeffs), padded, max(nullity, 0), tuple(flags))


@dataclass(frozen=True)
class RankReport:
    rank: int
    singular_values: tuple
    gap: float  # sigma_rank / sigma_{rank+1} (max|f^| / sigma_1 at rank 0); inf if nothing follows

    def to_dict(self):
        return {"rank": self.rank, "singular_values": list(self.singular_values), "gap": self.gap}


def rank_report(
    spec: FourierSpectrum,
    max_order: int,
    rank_tol: float = DEFAULT_TOLERANCES.rank_tol,
    coef_floor: float = DEFAULT_TOLERANCES.coef_floor,
) -> RankReport:
    size = max_order + 1
    if 2 * max_order + 1 > spec.half_window:
        raise PreconditionError(
            f"square truncation of order {max_order} needs f^(-{2 * max_order + 1}); "
            f"window is {spec.half_window}"
        )
    H = hankel_matrix(spec.negative(2 * max_order + 1), size, size)
    sv = np.linalg.svd(H, compute_uv=False)
    cut = _cutoff(sv, spec.max_abs(), rank_tol, coef_floor)
    rank = int(np.sum(sv > cut))
    # rank 0 has no sigma_rank; compare the largest singular value with the coefficient scale
    top = sv[rank - 1] if rank else spec.max_abs()
    if rank == size or sv[rank] == 0:
        gap = float("inf")
    else:
        gap = float(top / sv[rank])
    return RankReport(rank, tuple(float(s) for s in sv), gap)


def numeric_rank(
    spec: FourierSpectrum,
    max_order: int,
    rank_tol: float = DEFAULT_TOLERANCES.rank_tol,
    coef_floor: float = DEFAULT_TOLERANCES.coef_floor,
) -> int:
    """Number of singular values of the square Hankel truncation above the cutoff."""
    return rank_report(spec, max_order, rank_tol, coef_floor).rank
