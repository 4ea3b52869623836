import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from l3kit import fixtures as fx
from l3kit.algebra import LinearOperator
from l3kit.cohomology import V_TO_G, Cochain
from l3kit.errors import PreconditionError, ShapeError
from l3kit.exactla import DenseTensor
from l3kit.linfty import (
    GradedElement,
    build_pi,
    graded_bracket,
    l3,
    l4,
    lift,
    mc_residual,
    operator_cochain,
    project,
    shuffles,
    twisted_lk,
)
from l3kit.rbo_cohomology import delta_T
from l3kit.twisted_rbo import trbo_defect

W = 2


def _element(rng, degree):
    shape = (W,) * (2 * degree + 2)
    size = W ** (2 * degree + 2)
    return GradedElement(degree, DenseTensor.from_flat(shape, [rng.randint(-1, 1) for _ in range(size)]))


seeds = st.integers(0, 10 ** 6)
degrees = st.integers(0, 1)


@given(seeds, degrees, degrees)
@settings(max_examples=20)
def test_graded_antisymmetry(seed, p, q):
    rng = random.Random(seed)
    P, Q = _element(rng, p), _element(rng, q)
    lhs = graded_bracket(P, Q)
    rhs = graded_bracket(Q, P).scale(-((-1) ** (p * q)))
    assert lhs == rhs


@given(seeds, degrees, degrees, degrees)
@settings(max_examples=12)
def test_graded_jacobi(seed, p, q, r):
    rng = random.Random(seed)
    P, Q, R = _element(rng, p), _element(rng, q), _element(rng, r)
    lhs = graded_bracket(P, graded_bracket(Q, R))
    rhs = (graded_bracket(graded_bracket(P, Q), R)
           + graded_bracket(Q, graded_bracket(P, R)).scale((-1) ** (p * q)))
    assert lhs == rhs


def test_shuffle_count_and_signs():
    sh = list(shuffles(4, 2))
    assert len(sh) == 6
    assert sum(s for _, _, s in sh) == 2


@pytest.mark.parametrize("name", sorted(fx.named_trbo_fixtures()))
def test_structure_element_squares_to_zero(name):
    S, _ = fx.named_trbo_fixtures()[name]
    build_pi(S)


def test_invalid_structure_detected():
    S, _ = fx.fix_t()
    bad = S.with_phi(DenseTensor.from_sparse((2,) * 4, [((1, 1, 1, 1), 1)]))
    with pytest.raises(PreconditionError):
        build_pi(bad)


@given(seeds)
@settings(max_examples=15)
def test_mc_residual_is_operator_defect(seed):
    rng = random.Random(seed)
    S = fx.random_setup(rng, 2, rng.randint(1, 2))
    T = fx.random_matrix(rng, 2, S.dimV, span=1)
    assert mc_residual(S, T).coeffs == trbo_defect(S, T)


@pytest.mark.parametrize("name", sorted(fx.named_trbo_fixtures()))
def test_operators_are_maurer_cartan(name):
    S, T = fx.named_trbo_fixtures()[name]
    assert mc_residual(S, T).is_zero()


def test_lift_project_roundtrip():
    f = Cochain(2, V_TO_G, DenseTensor.from_flat((1, 1, 1, 2), [3, -1]))
    E = lift(f, 2, 1)
    assert E.degree == 1 and E.space_dim == 3
    assert project(E, 2, 1) == f
    with pytest.raises(ShapeError):
        lift(Cochain(1, "g_to_V", DenseTensor.zeros((2, 1))), 2, 1)


def _v_to_g_cochain(rng, S, n):
    shape = (S.dimV,) * (2 * n - 1) + (S.dim,)
    size = 1
    for s in shape:
        size *= s
    return Cochain(n, V_TO_G, DenseTensor.from_flat(shape, [rng.randint(-2, 2) for _ in range(size)]))


@pytest.mark.parametrize("name", ["fix_t", "fix_n", "fix_r", "lie2_regular_inverse"])
@pytest.mark.parametrize("n", [1, 2])
def test_l1_twisted_is_signed_delta_T(name, n):
    S, T = fx.named_trbo_fixtures()[name]
    rng = random.Random(n)
    for _ in range(3):
        f = _v_to_g_cochain(rng, S, n)
        sign = (-1) ** (n - 1)
        assert twisted_lk(S, T, 1, f).coeffs == delta_T(S, T, f).coeffs.scale(sign)


def test_twisted_brackets_vanish_above_four():
    S, T = fx.fix_t()
    args = [operator_cochain(T)] * 5
    assert twisted_lk(S, T, 5, *args).is_zero()


def test_twisted_bracket_argument_checks():
    S, T = fx.fix_t()
    with pytest.raises(ValueError):
        twisted_lk(S, T, 0)
    with pytest.raises(ValueError):
        twisted_lk(S, T, 2, T)
    with pytest.raises(PreconditionError):
        twisted_lk(S.with_phi(None), T, 1, T)


def test_l4_vanishes_on_abelian_data():
    # with zero bracket, zero actions and zero cocycle every derived bracket is zero
    from l3kit.algebra import Representation, ThreeLeibnizAlgebra
    from l3kit.twisted_rbo import TwistedSetup
    S = TwistedSetup(Representation.zero(ThreeLeibnizAlgebra.abelian(2), 2), None)
    T = LinearOperator.from_rows([[1, 2], [3, 4]])
    assert l3(S, T, T, T).is_zero()
    assert l4(S, T, T, T, T).is_zero()


def test_mc_residual_scaling_is_cubic_without_twist():
    S, T = fx.fix_t()
    S0 = S.with_phi(None)
    r1 = mc_residual(S0, T).coeffs
    r2 = mc_residual(S0, T.scale(2)).coeffs
    assert r2 == r1.scale(Fraction(8))


@given(seeds, st.integers(0, 2), st.integers(0, 2))
@settings(max_examples=6)
def test_antisymmetry_and_jacobi_up_to_degree_two(seed, p, q):
    rng = random.Random(seed)
    P, Q, R = _element(rng, p), _element(rng, q), _element(rng, 0)
    assert graded_bracket(P, Q) == graded_bracket(Q, P).scale(-((-1) ** (p * q)))
    lhs = graded_bracket(P, graded_bracket(Q, R))
    rhs = graded_bracket(graded_bracket(P, Q), R) + graded_bracket(Q, graded_bracket(P, R)).scale((-1) ** (p * q))
    assert lhs == rhs
