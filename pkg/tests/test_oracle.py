import json
from pathlib import Path

import numpy as np
import pytest

from cauchy_scope.errors import ConditioningError, InputError
from cauchy_scope.oracle import (
    RationalFunction,
    exact_composite_winding,
    exact_negative_coefficients,
    exact_winding,
    random_rational,
    rational_corpus,
)
from cauchy_scope.polynomial import ComplexPolynomial
from cauchy_scope.spectrum import fourier_coefficients, sample

GOLDEN = Path(__file__).parent / "data" / "random_rational_seed0_max2.json"


def test_geometric_coefficients():
    r = RationalFunction(poles=((0.5, 1),))
    k = np.arange(1, 21)
    assert np.allclose(exact_negative_coefficients(r, 20), 0.5 ** (k - 1), rtol=0, atol=1e-15)


def test_polynomial_has_no_negative_coefficients():
    r = RationalFunction(zeros=((0.2, 1), (3, 2)), scale=2j)
    assert np.all(exact_negative_coefficients(r, 10) == 0)


def test_linearity_two_poles():
    # 1/(z-0.3) + 1/(z+0.5) = (2z + 0.2) / ((z-0.3)(z+0.5))
    r = RationalFunction(zeros=((-0.1, 1),), poles=((0.3, 1), (-0.5, 1)), scale=2)
    k = np.arange(1, 16)
    expected = 0.3 ** (k - 1) + (-0.5) ** (k - 1)
    assert np.allclose(exact_negative_coefficients(r, 15), expected, atol=1e-14)


def test_double_pole_coefficients():
    # 1/(z-a)^2 = sum_n (n-1) a^(n-2) z^-n
    a = 0.4 + 0.1j
    r = RationalFunction(poles=((a, 2),))
    n = np.arange(1, 12)
    expected = (n - 1) * a ** np.maximum(n - 2, 0)
    assert np.allclose(exact_negative_coefficients(r, 11), expected, atol=1e-14)


def test_pole_on_circle_is_ill_conditioned():
    with pytest.raises(ConditioningError):
        exact_negative_coefficients(RationalFunction(poles=((0.9995, 1),)), 4)


@pytest.mark.parametrize("seed", range(5))
def test_matches_sampled_coefficients(seed):
    r = random_rational(seed, 4)
    spec = fourier_coefficients(sample(r, 4096), 128)
    exact = exact_negative_coefficients(r, 128)
    assert np.max(np.abs(spec.negative(128) - exact)) < 1e-10 * max(1, np.max(np.abs(exact)))


@pytest.mark.parametrize(
    "r, w",
    [
        (RationalFunction(zeros=((0, 3),)), 3),
        (RationalFunction(zeros=((0, 1),), poles=((0.5, 1),)), 0),
        (RationalFunction(zeros=((2, 1),), poles=((0.5, 1),)), -1),
    ],
)
def test_exact_winding(r, w):
    assert exact_winding(r) == w


def test_exact_composite_winding_cancellation():
    r = RationalFunction(poles=((0.5, 1),))
    P = ComplexPolynomial([-0.5, 1])
    assert exact_composite_winding(r, P, ComplexPolynomial([0])) == 0
    assert exact_composite_winding(r, ComplexPolynomial([1]), ComplexPolynomial([0])) == -1


def test_principal_part_reconstructs_function():
    r = RationalFunction(zeros=((0.1j, 1), (2, 1)), poles=((0.3, 2), (-0.4, 1)), scale=1.5)
    z = np.array([0.7 + 0.2j, -0.1 - 0.6j, 1.3])
    total = np.zeros(z.shape, dtype=complex)
    for a, m in r.poles:
        c = r.principal_part(a, m)
        total += sum(c[k - 1] / (z - a) ** k for k in range(1, m + 1))
    # degree of numerator equals degree of denominator minus 1, so no polynomial part
    assert np.allclose(total, r(z))


def test_rejects_cancelling_zero_and_pole():
    with pytest.raises(InputError):
        RationalFunction(zeros=((0.5, 1),), poles=((0.5, 1),))


def test_json_roundtrip():
    r = random_rational(3, 4)
    assert RationalFunction.from_json(json.dumps(r.to_json())) == r


# -- generator -------------------------------------------------------------------

def test_golden_instance():
    data = json.loads(GOLDEN.read_text())
    r = random_rational(0, 2)
    assert r.to_json() == data


def test_same_seed_same_instance():
    assert random_rational(17, 5) == random_rational(17, 5)


def test_zero_budget_gives_polynomial():
    for seed in range(10):
        assert random_rational(seed, 0).poles == ()


def test_corpus_respects_constraints():
    for r in rational_corpus(100, 5, 0.8):
        assert r.pole_count() <= 5
        for p, k in r.poles:
            assert 0.2 - 1e-12 <= abs(p) <= 0.8 + 1e-12
            assert 1 <= k <= 3
        for z, _ in r.zeros:
            assert abs(abs(z) - 1) >= 0.1
