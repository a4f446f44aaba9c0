import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cauchy_scope.errors import DomainError, PreconditionError
from cauchy_scope.extension import (
    MeromorphicReport,
    Verdict,
    cauchy_extend,
    classify_roots,
    cluster_roots,
    detect_meromorphic,
    minimal_budget,
    moment_residuals,
)
from cauchy_scope.oracle import RationalFunction, random_rational
from cauchy_scope.polynomial import ComplexPolynomial
from cauchy_scope.spectrum import fourier_coefficients, sample

from .conftest import half_pole, lacunary_fn, spectrum_of


def zpole(z):
    return z / (z - 0.5)


# -- root classification ------------------------------------------------------

def test_classify_interior_and_exterior():
    c = classify_roots(ComplexPolynomial.from_roots([0.5, 2]))
    assert [(round(a.real, 12), k) for a, k in c.interior] == [(0.5, 1)]
    assert [(round(a.real, 12), k) for a, k in c.exterior] == [(2.0, 1)]
    assert c.boundary == []


def test_classify_double_root_at_origin():
    c = classify_roots(ComplexPolynomial([0, 0, 1]))
    assert len(c.interior) == 1
    a, k = c.interior[0]
    assert abs(a) < 1e-12 and k == 2


def test_classify_boundary():
    c = classify_roots(ComplexPolynomial.from_roots([1.0, 0.3]), eps_b=1e-6)
    assert len(c.boundary) == 1 and abs(c.boundary[0][0] - 1) < 1e-12
    assert len(c.interior) == 1


def test_cluster_recovers_triple_root_under_noise():
    a = 0.4 - 0.2j
    P = ComplexPolynomial.from_roots([a, a, a, -0.5])
    noisy = ComplexPolynomial(P.coeffs + 1e-13 * np.array([1, -1j, 1, 1j, 0]))
    out = cluster_roots(noisy)
    mults = sorted(k for _, k in out)
    assert mults == [1, 3]
    loc = [x for x, k in out if k == 3][0]
    assert abs(loc - a) < 1e-10


# -- detection ------------------------------------------------------------------

def test_simple_pole():
    rep = detect_meromorphic(spectrum_of(half_pole), 1)
    assert rep.verdict is Verdict.EXTENDS_MEROMORPHICALLY
    assert len(rep.poles) == 1
    a, k = rep.poles[0]
    assert abs(a - 0.5) < 1e-10 and k == 1
    assert rep.tail_residual <= 1e-8


def test_polynomial_is_holomorphic():
    rep = detect_meromorphic(spectrum_of(lambda z: z**3 + 2), 3)
    assert rep.verdict is Verdict.EXTENDS_HOLOMORPHICALLY
    assert rep.poles == ()


def test_zpole_example():
    rep = detect_meromorphic(spectrum_of(zpole), 1)
    assert rep.verdict is Verdict.EXTENDS_MEROMORPHICALLY
    assert abs(rep.poles[0][0] - 0.5) < 1e-10 and rep.poles[0][1] == 1


def test_lacunary_fails_with_large_tail():
    rep = detect_meromorphic(spectrum_of(lacunary_fn(4)), 4)
    assert rep.verdict is Verdict.NO_EXTENSION_WITHIN_BUDGET
    assert rep.tail_residual > 1e-3


def test_budget_below_pole_count_fails():
    f = lambda z: 1 / (z - 0.3) ** 2 + 1 / (z + 0.4)  # noqa: E731
    spec = spectrum_of(f)
    assert not detect_meromorphic(spec, 2).extends
    rep = detect_meromorphic(spec, 3)
    assert rep.extends and rep.pole_count == 3


def test_minimal_budget_scan():
    spec = spectrum_of(lambda z: 1 / (z - 0.3) ** 2 + 1 / (z + 0.4))
    assert minimal_budget(spec, 6).pole_budget == 3
    assert not minimal_budget(spectrum_of(lacunary_fn(3)), 2).extends


def test_exterior_poles_are_irrelevant():
    inside = detect_meromorphic(spectrum_of(half_pole), 2)
    both = detect_meromorphic(spectrum_of(lambda z: 1 / (z - 0.5) + 3 / (z - 2.5j)), 2)
    assert [k for _, k in both.poles] == [k for _, k in inside.poles]
    assert abs(both.poles[0][0] - inside.poles[0][0]) < 1e-10


@settings(max_examples=15, deadline=None)
@given(st.complex_numbers(min_magnitude=0.1, max_magnitude=10, allow_nan=False, allow_infinity=False))
def test_scale_invariance(c):
    a = detect_meromorphic(spectrum_of(half_pole, 2048, 128), 2)
    b = detect_meromorphic(spectrum_of(lambda z: c * half_pole(z), 2048, 128), 2)
    assert a.verdict == b.verdict
    assert abs(a.poles[0][0] - b.poles[0][0]) < 1e-9


def test_budget_monotonicity():
    spec = spectrum_of(lambda z: 1 / (z - 0.3) + 1 / (z + 0.5j) ** 2)
    verdicts = [detect_meromorphic(spec, n).extends for n in range(8)]
    first = verdicts.index(True)
    assert all(verdicts[first:]) and not any(verdicts[:first])
    assert first == 3


def test_window_check():
    with pytest.raises(PreconditionError):
        detect_meromorphic(spectrum_of(half_pole, 256, 20), 4)


def test_moment_residuals_vanish_for_annihilator():
    spec = spectrum_of(half_pole)
    res = moment_residuals(spec, ComplexPolynomial([-0.5, 1]), 1, 30)
    assert np.max(np.abs(res)) < 1e-12


def test_report_roundtrip():
    rep = detect_meromorphic(spectrum_of(lambda z: 1 / (z - 0.3) ** 2), 3)
    again = MeromorphicReport.from_dict(rep.to_dict())
    assert again.to_dict() == rep.to_dict()


# -- evaluation --------------------------------------------------------------------

@pytest.mark.parametrize(
    "fn, w, expected",
    [(half_pole, 0, -2), (lambda z: z**3, 0.3, 0.027), (zpole, 0.25, -1)],
)
def test_cauchy_extend_values(fn, w, expected):
    s = sample(fn, 4096)
    rep = detect_meromorphic(fourier_coefficients(s, 256), 3)
    assert cauchy_extend(s, rep, w) == pytest.approx(expected, abs=1e-10)


def test_cauchy_extend_guards():
    s = sample(half_pole, 1024)
    rep = detect_meromorphic(fourier_coefficients(s, 128), 1)
    with pytest.raises(DomainError):
        cauchy_extend(s, rep, 0.5 + 1e-5)
    with pytest.raises(DomainError):
        cauchy_extend(s, rep, 0.9999j)
    bad = detect_meromorphic(spectrum_of(lacunary_fn(4), 1024, 128), 1)
    with pytest.raises(PreconditionError):
        cauchy_extend(s, bad, 0)


def test_cauchy_extend_vectorized():
    r = random_rational(4, 4)
    s = sample(r, 4096)
    rep = detect_meromorphic(fourier_coefficients(s, 256), 5)
    w = 0.3 * np.exp(2j * np.pi * np.arange(7) / 7)
    w = w[[min(abs(x - p) for p, _ in r.poles) > 0.05 for x in w]]
    assert np.allclose(cauchy_extend(s, rep, w), r(w), rtol=1e-8)
