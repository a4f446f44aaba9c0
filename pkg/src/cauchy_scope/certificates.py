"""Explicit winding-number witnesses.

A pair of polynomials ``(P, Q)`` with ``W(P f + Q) <= -N - 1`` proves that
``f`` has no meromorphic extension with at most ``N`` poles. Two
constructions are provided: a Fejer-mean construction for functions with a
particular pattern of vanishing coefficients (:func:`cesaro_witness`), and
the general shift construction (:func:`falsify`). :func:`zero_free_completion`
builds a polynomial ``Q`` making ``Psi + prod (z - a_j)^p_j Q`` zero free on
the closed disc, which pins down ``W(f + S Q)`` exactly for meromorphic ``f``.
"""
from __future__ import annotations

import cmath
import enum
import itertools
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import (
    CauchyScopeError,
    CompletionError,
    PreconditionError,
    ResolutionError,
    SearchError,
    WindingUndefinedError,
)
from .extension import cluster_roots, default_tail_depth, moment_residuals
from .hankel import annihilator, build_system
from .oracle import RationalFunction
from .polynomial import ComplexPolynomial
from .spectrum import BoundarySamples, FourierSpectrum, fejer_weights, fourier_coefficients, sample, synthesize
from .tolerances import DEFAULT_TOLERANCES, Tolerances
from .winding import composite_winding, winding_number


class CertificateKind(str, enum.Enum):
    FALSIFIER = "FALSIFIER"
    CONSISTENCY = "CONSISTENCY"


@dataclass(frozen=True, eq=False)
class WindingCertificate:
    P: ComplexPolynomial
    Q: ComplexPolynomial
    winding: int
    min_modulus: float
    kind: CertificateKind
    pole_budget: int
    grid_size: int
    details: dict = field(default_factory=dict)

    def verify(self, f: BoundarySamples, min_mod_tol=None):
        """Recompute the winding of ``P f + Q`` from ``f``."""
        return composite_winding(f, self.P, self.Q, min_mod_tol)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "pole_budget": self.pole_budget,
            "winding": self.winding,
            "min_modulus": self.min_modulus,
            "grid_size": self.grid_size,
            "P": self.P.to_json(),
            "Q": self.Q.to_json(),
            "details": self.details,
        }


@dataclass(frozen=True)
class NoFalsifier:
    """``P f`` has no coanalytic tail beyond ``N``: nothing to falsify."""

    pole_budget: int
    annihilator: ComplexPolynomial
    tail_residual: float
    checked_tail_depth: int

    def to_dict(self) -> dict:
        return {
            "kind": "NO_FALSIFIER",
            "message": "no falsifier found",
            "pole_budget": self.pole_budget,
            "P": self.annihilator.to_json(),
            "tail_residual": self.tail_residual,
            "checked_tail_depth": self.checked_tail_depth,
        }


def _kind_for(winding: int, N: int) -> CertificateKind:
    return CertificateKind.FALSIFIER if winding <= -N - 1 else CertificateKind.CONSISTENCY


# ---------------------------------------------------------------------------
# Fejer-mean witness


def cesaro_witness(
    spec: FourierSpectrum,
    N: int,
    f: Optional[BoundarySamples] = None,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> WindingCertificate:
    """Witness ``Q`` with ``W(f + Q) = -N - 1`` for patterned coefficients.

    Requires ``f^(-N-1) != 0`` and ``f^(-j) = 0`` for ``j = 1..N`` and
    ``j = N+2..2N+1``. With ``g = z^(N+1) f / f^(-N-1)`` the Fejer means
    ``C_m`` of ``g`` have the form ``1 + z^(N+1) R_m + conj(z^(N+1) T_m)``;
    once ``|C_m - g| <= 1/2`` on the grid, ``Q = -f^(-N-1) (R_m + T_m)``
    keeps ``z^(N+1)(f + Q)/f^(-N-1)`` in the strip ``1/2 <= Re <= 3/2``.
    """
    f = spec.source if f is None else f
    if f is None:
        raise PreconditionError("cesaro_witness needs the boundary samples of f")
    K = spec.half_window
    if 2 * N + 1 > K:
        raise PreconditionError(f"window {K} cannot show the pattern for N={N}")
    pivot = spec[-(N + 1)]
    if abs(pivot) <= tolerances.coef_floor * spec.max_abs():
        raise PreconditionError(f"pattern violated: f^(-{N + 1}) vanishes")
    limit = tolerances.pattern_rel * abs(pivot)
    for j in list(range(1, N + 1)) + list(range(N + 2, 2 * N + 2)):
        if abs(spec[-j]) > limit:
            raise PreconditionError(
                f"pattern violated at index -{j}: |f^(-{j})| = {abs(spec[-j]):.3e} > {limit:.3e}"
            )

    s = N + 1
    Kg = K - s
    n = np.arange(-Kg, Kg + 1)
    g_coeffs = np.array([spec[k - s] for k in n]) / pivot
    z = f.points
    g_vals = z**s * f.values / pivot

    chosen = None
    for m in range(Kg + 1):
        c = g_coeffs * fejer_weights(m, Kg)
        C = synthesize(FourierSpectrum(Kg, c, f.grid_size)).values
        err = float(np.max(np.abs(C - g_vals)))
        if err <= 0.5:
            chosen = (m, c, err)
            break
    if chosen is None:
        raise ResolutionError(f"no Fejer mean within the window reaches distance 1/2 (window {Kg})")
    m, c, err = chosen

    # c[k + Kg] is the coefficient of z^k in C_m
    R = c[Kg + s :]  # z^(N+1) R_m(z) = sum_{k>=N+1} c_k z^k
    T = np.conj(c[: Kg - s + 1][::-1])  # conj(z^(N+1) T_m) = sum_{k>=N+1} c_{-k} z^(-k)
    width = max(R.size, T.size, 1)
    RT = np.zeros(width, dtype=complex)
    RT[: R.size] += R
    RT[: T.size] += T
    Q = ComplexPolynomial(-pivot * RT).trimmed(1e-300)
    P = ComplexPolynomial([1.0])

    result = composite_winding(f, P, Q)
    h = z**s * (f.values + Q(z)) / pivot
    re_min, re_max = float(np.min(h.real)), float(np.max(h.real))
    details = {
        "cesaro_order": m,
        "cesaro_distance": err,
        "pivot": [pivot.real, pivot.imag],
        "strip_real_min": re_min,
        "strip_real_max": re_max,
    }
    if result.winding != -N - 1:
        raise CauchyScopeError(
            f"Fejer witness winds {result.winding}, expected {-N - 1}; details {details}"
        )
    return WindingCertificate(
        P, Q, result.winding, result.min_modulus, CertificateKind.FALSIFIER, N, result.grid_size, details
    )


# ---------------------------------------------------------------------------
# general falsifier


def _fallback_norm(spec: FourierSpectrum, f: BoundarySamples) -> float:
    norm = f.sup_norm()
    return norm if norm > 0 else 1.0


def falsify(
    spec: FourierSpectrum,
    f: BoundarySamples,
    N: int,
    tail_depth: Optional[int] = None,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
    alpha_levels: int = 20,
    alpha_phases: int = 16,
):
    """Try to build ``(P, Q)`` with ``W(P f + Q) <= -N - 1``.

    ``P`` annihilates ``f^(-1..-N)`` of ``P f`` (``N`` equations, ``N + 1``
    unknowns). If the moment residuals of ``P f`` for ``n = N+1..N+tail_depth``
    are below ``tail_tol`` the function returns :class:`NoFalsifier`.
    Otherwise ``P f - F_1`` (``F_1`` the analytic part of ``P f`` within
    the window) is the conjugate of a function with a zero of order at
    least ``N + 1`` at the origin, and a small constant shift ``alpha`` off
    its boundary image gives the required winding. Candidates tried, first
    hit wins: ``alpha = 0``, then ``|alpha| = 2^-t * max|P f - F_1|`` for
    ``t = 1..alpha_levels`` at ``alpha_phases`` equispaced phases.
    ``Q = -F_1 + alpha`` has degree up to the window size.
    """
    if N < 0:
        raise PreconditionError("pole budget must be nonnegative")
    depth = default_tail_depth(N) if tail_depth is None else int(tail_depth)
    K = spec.half_window
    if K < 2 * N + depth:
        raise PreconditionError(f"window {K} too small for budget {N} with tail depth {depth}")
    norm = _fallback_norm(spec, f)

    if N == 0:
        P = ComplexPolynomial([1.0])
    else:
        P = annihilator(build_system(spec, N, rows=N), tolerances.rank_tol, tolerances.coef_floor).polynomial

    tail = moment_residuals(spec, P, N + 1, N + depth)
    tail_residual = float(np.max(np.abs(tail)) / norm) if tail.size else 0.0
    if tail_residual <= tolerances.tail_tol:
        return NoFalsifier(N, P, tail_residual, depth)

    Pf = f.map(lambda z, v: P(z) * v)
    pf_spec = fourier_coefficients(Pf, K)
    F1 = ComplexPolynomial(pf_spec.nonnegative())
    z = f.points
    conj_tail = Pf.values - F1(z)
    tail_norm = float(np.max(np.abs(conj_tail)))

    candidates = [0j]
    for t in range(1, alpha_levels + 1):
        for p in range(alpha_phases):
            candidates.append(tail_norm * 2.0**-t * cmath.exp(2j * math.pi * p / alpha_phases))

    best = {"winding": None, "min_modulus": 0.0, "tried": 0}
    for alpha in candidates:
        best["tried"] += 1
        Q = ComplexPolynomial(np.concatenate([[alpha - F1.coeffs[0]], -F1.coeffs[1:]]))
        try:
            res = composite_winding(f, P, Q)
        except (WindingUndefinedError, ResolutionError):
            continue
        if best["winding"] is None or res.winding < best["winding"]:
            best.update(winding=res.winding, min_modulus=res.min_modulus)
        if res.winding <= -N - 1:
            details = {
                "alpha": [alpha.real, alpha.imag],
                "tail_residual": tail_residual,
                "tail_norm": tail_norm,
                "degree_cap": K,
                "checked_tail_depth": depth,
                "candidates_tried": best["tried"],
            }
            return WindingCertificate(
                P, Q, res.winding, res.min_modulus, CertificateKind.FALSIFIER, N, res.grid_size, details
            )
    raise SearchError(
        f"no shift constant among {len(candidates)} candidates gave winding <= {-N - 1}",
        {"best_winding": best["winding"], "min_modulus": best["min_modulus"], "tail_residual": tail_residual},
    )


# ---------------------------------------------------------------------------
# zero-free completion


def taylor_jet(coeffs: np.ndarray, a: complex, order: int) -> np.ndarray:
    """``[g(a), g'(a), g''(a)/2!, ...]`` up to ``order`` for ``g = sum coeffs[n] z^n``."""
    out = np.zeros(order + 1, dtype=complex)
    c = np.asarray(coeffs, dtype=complex)
    for ell in range(order + 1):
        out[ell] = npoly.polyval(a, c) / math.factorial(ell)
        c = npoly.polyder(c) if c.size > 1 else np.zeros(1, dtype=complex)
    return out


def series_log(s: np.ndarray) -> np.ndarray:
    """Truncated power series of ``log(s)`` (principal branch for the constant term)."""
    s = np.asarray(s, dtype=complex)
    L = np.zeros_like(s)
    L[0] = cmath.log(s[0])
    for ell in range(1, s.size):
        acc = ell * s[ell]
        for k in range(1, ell):
            acc -= k * L[k] * s[ell - k]
        L[ell] = acc / (ell * s[0])
    return L


def series_exp(L: np.ndarray) -> np.ndarray:
    L = np.asarray(L, dtype=complex)
    E = np.zeros_like(L)
    E[0] = cmath.exp(L[0])
    for ell in range(1, L.size):
        E[ell] = sum(k * L[k] * E[ell - k] for k in range(1, ell + 1)) / ell
    return E


def _jet_system(nodes, jets, degree: int) -> tuple:
    rows, rhs = [], []
    i = np.arange(degree + 1)
    for a, jet in zip(nodes, jets):
        for ell, value in enumerate(jet):
            binom = np.array([math.comb(int(ii), ell) for ii in i], dtype=float)
            powers = np.where(i >= ell, np.power(complex(a), np.maximum(i - ell, 0)), 0)
            rows.append(binom * powers)
            rhs.append(value)
    return np.array(rows, dtype=complex), np.array(rhs, dtype=complex)


def hermite_interpolate(nodes: Sequence[complex], jets: Sequence[np.ndarray]) -> ComplexPolynomial:
    """Polynomial whose Taylor coefficients at ``nodes[j]`` start with ``jets[j]``."""
    A, b = _jet_system(nodes, jets, sum(len(j) for j in jets) - 1)
    return ComplexPolynomial(np.linalg.solve(A, b))


def smooth_interpolate(nodes: Sequence[complex], jets: Sequence[np.ndarray], degree: int) -> ComplexPolynomial:
    """Jet interpolant of the given degree with least ``sum_{n>=1} |c_n|^2``.

    That sum is twice the variance of ``Re Phi`` over the circle, so among
    interpolants of this degree the result has the flattest modulus
    ``|exp(Phi)|``. The constant term is left (almost) unpenalised.
    """
    A, b = _jet_system(nodes, jets, degree)
    free = 1e4
    A[:, 0] *= free
    c = np.linalg.lstsq(A, b, rcond=None)[0]
    c[0] *= free
    return ComplexPolynomial(c)


@dataclass(frozen=True, eq=False)
class Completion:
    """Result of :func:`zero_free_completion`.

    ``Psi + prod (z - a_j)^p_j * Q`` equals ``exp(exponent)`` up to the
    truncation of ``Q`` to a polynomial.
    """

    Q: ComplexPolynomial
    exponent: ComplexPolynomial
    points: tuple
    winding: int
    min_modulus: float
    jet_error: float
    negative_leak: float

    def to_dict(self) -> dict:
        return {
            "Q": self.Q.to_json(),
            "exponent": self.exponent.to_json(),
            "points": [[a.real, a.imag, p] for a, p in self.points],
            "winding": self.winding,
            "min_modulus": self.min_modulus,
            "jet_error": self.jet_error,
            "negative_leak": self.negative_leak,
        }


def _merge_points(points) -> list:
    merged: list = []
    for a, p in points:
        a, p = complex(a), int(p)
        if p < 1:
            raise PreconditionError(f"multiplicity must be positive, got {p}")
        if abs(a) >= 1:
            raise PreconditionError(f"point {a} is not inside the unit disc")
        for idx, (b, q) in enumerate(merged):
            if abs(a - b) < 1e-12:
                merged[idx] = (b, q + p)
                break
        else:
            merged.append((a, p))
    return merged


def zero_free_completion(
    psi: FourierSpectrum,
    interior_points,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> Completion:
    """Polynomial ``Q`` with ``Psi + prod (z - a_j)^p_j Q`` free of zeros on the closed disc.

    ``Psi`` must be holomorphic (no negative coefficients) and nonzero at
    every ``a_j``. The exponent ``Phi`` is the minimal-degree Hermite
    interpolant of the logarithmic jets of ``Psi`` through order ``p_j - 1``
    at each ``a_j``, so ``exp(Phi) - Psi`` vanishes to order ``p_j`` there and
    ``Q = (exp(Phi) - Psi) / prod (z - a_j)^p_j`` is holomorphic; its Taylor
    coefficients up to the window size give the polynomial. The result is
    verified by winding number zero and a positive minimum modulus.
    """
    points = _merge_points(interior_points)
    if not points:
        raise PreconditionError("at least one interior point is required")
    K = psi.half_window
    scale = psi.max_abs()
    if scale == 0:
        raise PreconditionError("Psi is identically zero")
    leak_in = float(np.max(np.abs(psi.negative(K)))) if K else 0.0
    if leak_in > 1e-8 * scale:
        raise PreconditionError(f"Psi has negative Fourier modes of size {leak_in:.3e}; not holomorphic")

    coeffs = psi.nonnegative()
    nodes, log_jets, value_jets = [], [], []
    for a, p in points:
        # matching more derivatives than divisibility needs makes exp(Phi) swing harder on the circle
        jet = taylor_jet(coeffs, a, p - 1)
        if abs(jet[0]) <= tolerances.coef_floor * scale:
            raise PreconditionError(f"Psi vanishes at the interior point {a}")
        nodes.append(a)
        value_jets.append(jet)
        log_jets.append(series_log(jet))

    M = psi.source_grid_size
    psi_samples = psi.source if psi.source is not None else synthesize(psi)
    z = psi_samples.points
    phi = _flattest_exponent(nodes, log_jets, z)

    jet_error = 0.0
    for a, (_, p), vj in zip(nodes, points, value_jets):
        ej = series_exp(taylor_jet(phi.coeffs, a, p - 1))
        jet_error = max(jet_error, float(np.max(np.abs(ej - vj))))

    weight = np.ones(M, dtype=complex)
    for a, p in points:
        weight = weight * (z - a) ** p
    target = np.exp(phi(z))
    q_vals = (target - psi_samples.values) / weight
    q_hat = np.fft.fft(q_vals) / M

    # start at the window size; double the degree (up to the Nyquist limit
    # of the grid) while the truncation still breaks the verification
    degrees = [max(K, 1)]
    while degrees[-1] < M // 2 - 1:
        degrees.append(min(2 * degrees[-1], M // 2 - 1))
    for degree in degrees:
        Q = ComplexPolynomial(q_hat[: degree + 1])
        negative_leak = float(np.max(np.abs(q_hat[M - degree :]))) if degree else 0.0
        try:
            res, rouche = _verify_completion(psi_samples, points, weight, Q, target)
        except CompletionError as exc:
            last = exc
            continue
        break
    else:
        last.diagnostics.update(jet_error=jet_error, negative_leak=negative_leak, degree=degrees[-1])
        raise last
    return Completion(Q, phi, tuple(points), res.winding, res.min_modulus, jet_error, negative_leak)


def _verify_completion(psi_samples, points, weight, Q, target):
    z = psi_samples.points
    completed_vals = psi_samples.values + weight * Q(z)
    source = None
    if psi_samples.source is not None:
        gen = psi_samples.source
        pts = tuple(points)

        def source(zz, _gen=gen, _pts=pts, _Q=Q):
            w = np.ones_like(zz)
            for a, p in _pts:
                w = w * (zz - a) ** p
            return _gen(zz) + w * _Q(zz)

    # Psi + w Q is holomorphic, so winding 0 on a resolved grid means no zeros
    # inside; the modulus floor is the rounding level of the sum, not a share
    # of max|.|, because exp(Phi) can legitimately span many decades
    terms = np.abs(psi_samples.values) + np.abs(weight * Q(z))
    noise = 1e3 * np.finfo(float).eps * float(np.max(terms))
    rouche = float(np.max(np.abs(completed_vals - target) / np.abs(target)))
    diagnostics = {"rouche_ratio": rouche, "degree": Q.degree}
    try:
        res = winding_number(BoundarySamples(completed_vals, source), min_mod_tol=noise)
    except (WindingUndefinedError, ResolutionError) as exc:
        raise CompletionError(f"completed function could not be verified: {exc}", diagnostics) from exc
    if res.winding != 0:
        diagnostics.update(winding=res.winding, min_modulus=res.min_modulus)
        raise CompletionError("completed function is not zero free on the closed disc", diagnostics)
    return res, rouche


def _flattest_exponent(nodes, log_jets, z, branch_range: int = 2, extra_degree: int = 16) -> ComplexPolynomial:
    """Exponent with the smallest spread of ``Re Phi`` on the circle.

    Candidates: each node's logarithm shifted by ``2 pi i k`` (``|k| <=
    branch_range``, first node fixed), each interpolated at minimal degree
    and at ``extra_degree`` more with :func:`smooth_interpolate`.
    """
    minimal = sum(len(j) for j in log_jets) - 1
    best, best_spread = None, np.inf
    shifts = range(-branch_range, branch_range + 1)
    for ks in itertools.product(shifts, repeat=len(nodes) - 1):
        jets = [log_jets[0]]
        for k, jet in zip(ks, log_jets[1:]):
            shifted = jet.copy()
            shifted[0] += 2j * math.pi * k
            jets.append(shifted)
        for cand in (hermite_interpolate(nodes, jets), smooth_interpolate(nodes, jets, minimal + extra_degree)):
            spread = float(np.ptp(cand(z).real))
            if spread < best_spread:
                best, best_spread = cand, spread
    return best


# ---------------------------------------------------------------------------
# random polynomial draws and the S-multiple check


def random_polynomial(
    rng: np.random.Generator,
    max_degree: int = 6,
    scale: float = 1.0,
    vanish_at_zero: bool = False,
) -> ComplexPolynomial:
    """Complex Gaussian coefficients; degree uniform on ``0..max_degree``."""
    deg = int(rng.integers(0, max_degree + 1))
    c = (rng.standard_normal(deg + 1) + 1j * rng.standard_normal(deg + 1)) / math.sqrt(2)
    magnitude = scale * 10.0 ** rng.uniform(-1, 1)
    c = c * magnitude
    if vanish_at_zero:
        c = np.concatenate([[0.0], c])
    return ComplexPolynomial(c)


def sample_windings(
    f: BoundarySamples,
    draws: int,
    seed: int = 0,
    max_degree: int = 6,
    multiplier: Optional[ComplexPolynomial] = None,
    vanish_at_zero: bool = False,
    random_P: bool = False,
    max_attempts: Optional[int] = None,
) -> dict:
    """Windings of ``P f + S Q`` for random admissible draws.

    ``P`` is 1 unless ``random_P``; ``S`` is ``multiplier`` (default 1).
    Draws where the composite nearly vanishes or cannot be resolved are
    rejected and redrawn, up to ``max_attempts`` (default ``20 * draws``).
    """
    rng = np.random.default_rng(seed)
    S = ComplexPolynomial([1.0]) if multiplier is None else multiplier
    norm = f.sup_norm() or 1.0
    s_norm = float(np.max(np.abs(S(f.points)))) or 1.0
    attempts_left = 20 * draws if max_attempts is None else max_attempts
    windings, pairs, rejected = [], [], 0
    while len(windings) < draws and attempts_left > 0:
        attempts_left -= 1
        P = random_polynomial(rng, max_degree) if random_P else ComplexPolynomial([1.0])
        if P.is_zero():
            rejected += 1
            continue
        p_norm = float(np.max(np.abs(P(f.points))))
        Q = random_polynomial(rng, max_degree, p_norm * norm / s_norm, vanish_at_zero) * S
        try:
            res = composite_winding(f, P, Q)
        except (WindingUndefinedError, ResolutionError, PreconditionError):
            rejected += 1
            continue
        windings.append(res.winding)
        pairs.append((P, Q))
    return {"windings": windings, "pairs": pairs, "rejected": rejected}


@dataclass(frozen=True)
class ConstrainedQReport:
    """Windings of ``f + S Q`` for a rational ``f`` and a fixed multiplier ``S``."""

    pole_count: int
    special_winding: Optional[int]
    expected_special: int
    skipped_reason: Optional[str]
    draw_windings: tuple
    rejected_draws: int

    @property
    def min_draw_winding(self):
        return min(self.draw_windings) if self.draw_windings else None

    @property
    def special_agrees(self) -> Optional[bool]:
        if self.special_winding is None:
            return None
        return self.special_winding == self.expected_special

    def to_dict(self) -> dict:
        return {
            "pole_count": self.pole_count,
            "special_winding": self.special_winding,
            "expected_special": self.expected_special,
            "special_agrees": self.special_agrees,
            "skipped_reason": self.skipped_reason,
            "min_draw_winding": self.min_draw_winding,
            "draw_windings": list(self.draw_windings),
            "rejected_draws": self.rejected_draws,
        }


def constrained_q_check(
    f: RationalFunction,
    S: ComplexPolynomial,
    draws: int = 100,
    seed: int = 0,
    grid_size: int = 4096,
    half_window: int = 256,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> ConstrainedQReport:
    """Compare ``W(f + S Q)`` against the pole count of a rational ``f``.

    When the holomorphic factor ``H = f * prod (z - a_j)^k_j`` vanishes
    neither at the poles nor at the roots of ``S``, a completion ``Q``
    makes ``H + prod (z - a_j)^k_j S Q`` zero free, hence
    ``W(f + S Q) = -(number of poles)``; that special ``Q`` is built and its
    winding reported. Random draws of ``Q`` are sampled as well.
    """
    if S.is_zero():
        raise PreconditionError("S must be nonzero")
    s_roots = cluster_roots(S, tolerances.eps_cluster, tolerances.structure_tol)
    if any(abs(r) >= 1 for r, _ in s_roots):
        raise PreconditionError("all roots of S must lie inside the disc")
    N = f.pole_count()
    samples = sample(f, grid_size)

    H = f.analytic_factor()
    points = _merge_points(list(f.interior_poles()) + s_roots)
    special = None
    reason = None
    h_scale = float(np.max(np.abs(H(samples.points))))
    if any(abs(H(a)) <= tolerances.coef_floor * h_scale for a, _ in points):
        reason = "holomorphic factor vanishes at a pole or a root of S"
    else:
        psi = fourier_coefficients(sample(H, grid_size), half_window)
        try:
            completion = zero_free_completion(psi, points, tolerances)
        except CompletionError as exc:
            reason = f"completion failed: {exc}"
        else:
            lead = S.trimmed().coeffs[-1]
            Q = completion.Q * (1.0 / lead)
            special = composite_winding(samples, ComplexPolynomial([1.0]), S * Q).winding

    sampled = sample_windings(samples, draws, seed, multiplier=S)
    return ConstrainedQReport(N, special, -N, reason, tuple(sampled["windings"]), sampled["rejected"])


def q_only_probe(f: BoundarySamples, draws: int = 200, seed: int = 0, max_degree: int = 6) -> dict:
    """Experimental: windings of ``f + Q`` over random ``Q`` with ``P = 1`` fixed.

    This only collects numbers; it decides nothing about extendibility.
    """
    sampled = sample_windings(f, draws, seed, max_degree)
    w = sampled["windings"]
    values, counts = np.unique(w, return_counts=True) if w else ([], [])
    return {
        "experimental": True,
        "draws": len(w),
        "rejected": sampled["rejected"],
        "min_winding": min(w) if w else None,
        "histogram": {int(v): int(c) for v, c in zip(values, counts)},
    }
