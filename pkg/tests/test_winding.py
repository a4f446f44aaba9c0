import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cauchy_scope.errors import PreconditionError, ResolutionError, WindingUndefinedError
from cauchy_scope.oracle import RationalFunction, exact_winding
from cauchy_scope.polynomial import ComplexPolynomial
from cauchy_scope.spectrum import BoundarySamples, sample
from cauchy_scope.winding import composite_winding, winding_number

ONE = ComplexPolynomial([1.0])
ZERO = ComplexPolynomial([0.0])


@pytest.mark.parametrize(
    "fn, expected",
    [
        (lambda z: z**3, 3),
        (lambda z: 5 + 0 * z, 0),
        (lambda z: np.conj(z), -1),
        (lambda z: (z - 0.5) / (z + 1 / 3), 0),
        (lambda z: (z - 0.5) / (z - 2), 1),
    ],
)
def test_basic_windings(fn, expected):
    assert winding_number(sample(fn, 64)).winding == expected


def test_vanishing_curve_is_rejected():
    s = sample(lambda z: z - 1, 64)
    with pytest.raises(WindingUndefinedError) as info:
        winding_number(s)
    assert info.value.index == 0


def test_coarse_grid_is_refined_with_generator():
    res = winding_number(sample(lambda z: z**20, 16))
    assert res.winding == 20
    assert res.refinements >= 1
    assert res.grid_size > 16


def test_coarse_grid_without_generator_fails():
    vals = sample(lambda z: z**20, 16).values
    with pytest.raises(ResolutionError):
        winding_number(BoundarySamples(vals))


def test_refinement_budget_exhausted():
    # 163 stays between M/4 and 3M/4 modulo every grid tried (64..512), so no
    # grid aliases it to a slowly turning curve
    with pytest.raises(ResolutionError, match="doublings"):
        winding_number(sample(lambda z: z**163, 64))


# -- composite -------------------------------------------------------------------

def test_zero_P_constant_Q():
    s = sample(lambda z: np.exp(np.real(z)) * z**-4, 128)
    assert composite_winding(s, ZERO, ONE).winding == 0


def test_exact_cancellation():
    s = sample(lambda z: 1 / (z - 0.5), 128)
    res = composite_winding(s, ComplexPolynomial([-0.5, 1]), ZERO)
    assert res.winding == 0
    assert res.min_modulus == pytest.approx(1.0)


def test_both_zero_rejected():
    with pytest.raises(PreconditionError):
        composite_winding(sample(lambda z: z, 8), ZERO, ZERO)


def test_constrained_q_draws_on_zpole():
    rng = np.random.default_rng(11)
    s = sample(lambda z: z / (z - 0.5), 2048)
    count = 0
    while count < 40:
        q = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        Q = ComplexPolynomial(np.concatenate([[0], q * 0.3]))
        try:
            w = composite_winding(s, ONE, Q).winding
        except (WindingUndefinedError, ResolutionError):
            continue
        count += 1
        assert w >= 0


# -- properties ------------------------------------------------------------------

@settings(max_examples=40, deadline=None)
@given(st.integers(-6, 6), st.integers(-6, 6))
def test_multiplicative(a, b):
    fa, fb = sample(lambda z: z**a * (3 + z), 256), sample(lambda z: z**b * (1 + 0.2 * z**2), 256)
    prod = BoundarySamples(fa.values * fb.values)
    assert winding_number(prod).winding == winding_number(fa).winding + winding_number(fb).winding


@settings(max_examples=40, deadline=None)
@given(st.integers(-8, 8))
def test_conjugation_negates(k):
    s = sample(lambda z: z**k * (2 + z), 256)
    conj = BoundarySamples(np.conj(s.values))
    assert winding_number(conj).winding == -winding_number(s).winding


@settings(max_examples=30, deadline=None)
@given(st.floats(0.0, 0.45), st.floats(0, 2 * np.pi), st.integers(-4, 4))
def test_small_perturbation_keeps_winding(eps, phase, k):
    # |perturbation| < min|f| on the circle, so the homotopy never passes through 0
    base = lambda z: z**k * (2 + z)  # noqa: E731
    pert = lambda z: base(z) + eps * np.exp(1j * phase) * z**3  # noqa: E731
    assert winding_number(sample(pert, 256)).winding == winding_number(sample(base, 256)).winding


def test_matches_oracle_for_mixed_rational():
    r = RationalFunction(zeros=((0.2, 2), (1.5j, 1)), poles=((-0.4, 1), (3.0, 2)))
    assert winding_number(sample(r, 512)).winding == exact_winding(r) == 1
