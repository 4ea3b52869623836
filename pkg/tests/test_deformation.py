import random
from fractions import Fraction

import pytest

from l3kit import fixtures as fx
from l3kit.algebra import LinearOperator
from l3kit.cohomology import V_TO_G, Cochain
from l3kit.deformation import (
    OrderNDeformation,
    _balance,
    check_order_n,
    extend,
    extend_to_order,
    infinitesimal,
    infinitesimals_cohomologous,
    obstruction,
)
from l3kit.errors import PreconditionError, ShapeError
from l3kit.exactla import DenseTensor
from l3kit.rbo_cohomology import cocycle_basis_T, delta_T, wp

from oracle import order_p_balance, tensor_at

NAMED = fx.named_trbo_fixtures()
ZERO = LinearOperator.zero(2, 2)
ID = LinearOperator.identity(2)


def _op(c):
    return LinearOperator(c.coeffs.transpose(1, 0))


@pytest.mark.parametrize("p", [0, 1, 2, 3])
def test_balance_matches_oracle(p):
    rng = random.Random(p)
    S, _ = fx.fix_t()
    terms = [fx.random_matrix(rng, 2, 2, span=1) for _ in range(3)]
    lhs, rhs = _balance(S, terms, p, 2)
    for idx, (l, r) in order_p_balance(S, terms, p).items():
        assert tensor_at(lhs, idx) == l
        assert tensor_at(rhs, idx) == r


@pytest.mark.parametrize("name", sorted(NAMED))
def test_closed_cochains_give_order_one_deformations(name):
    S, T = NAMED[name]
    for c in cocycle_basis_T(S, T, 1):
        rep = check_order_n(S, [T, _op(c)])
        assert rep.ok
        assert infinitesimal(S, [T, _op(c)]) == Cochain(1, V_TO_G, c.coeffs)


def test_order_one_fails_for_non_closed_term():
    S, T = fx.fix_t()
    rep = check_order_n(S, [T, LinearOperator.from_rows([[1, 0], [0, 0]])])
    assert not rep.ok
    assert {v.equation_tag for v in rep.violations} == {"order_1_balance"}


def test_trivial_deformation_has_zero_obstruction():
    S, T = fx.fix_t()
    assert obstruction(S, [T, ZERO]).is_zero()
    assert extend(S, [T, ZERO]) == ZERO


@pytest.mark.parametrize("name", sorted(NAMED))
def test_obstruction_is_closed(name):
    S, T = NAMED[name]
    for c in cocycle_basis_T(S, T, 1)[:3]:
        assert delta_T(S, T, obstruction(S, [T, _op(c)])).is_zero()


def test_frozen_extension_on_fix_t():
    S, T = fx.fix_t()
    T1 = LinearOperator.from_rows([[Fraction(1, 3), 0], [0, 1]])
    T2 = extend(S, [T, T1])
    assert T2 == LinearOperator.from_rows([[Fraction(-2, 9), 0], [0, 0]])
    assert check_order_n(S, [T, T1, T2]).ok


def test_extended_terms_match_exact_operator_family():
    S, T = fx.fix_t()
    T1 = LinearOperator.from_rows([[Fraction(1, 3), 0], [0, 1]])
    terms = extend_to_order(S, [T, T1], 4)
    assert terms is not None and len(terms) == 5
    assert check_order_n(S, terms).ok
    OrderNDeformation(S, tuple(terms))


def test_obstructed_deformation():
    S, T0 = NAMED["zero_on_fix_t"]
    terms = [T0, ID, ZERO]
    assert check_order_n(S, terms).ok
    ob = obstruction(S, terms)
    # with T_0 = 0 only (1,1,1) survives: [u,v,w] - 3 [u,v,w]; phi needs a T_0 factor
    assert ob.coeffs == fx.fix_a1().bracket.scale(-2)
    assert extend(S, terms) is None
    assert extend(S, [T0, ID]) == ZERO
    assert extend_to_order(S, [T0, ID], 3) is None


def test_unobstructed_when_second_cohomology_vanishes():
    S, T = NAMED["sl2_adjoint_inverse"]
    from l3kit.rbo_cohomology import cohomology_dim_T
    assert cohomology_dim_T(S, T, 2) == 0
    for c in cocycle_basis_T(S, T, 1):
        assert extend_to_order(S, [T, _op(c)], 3) is not None


def test_rejects_bad_input():
    S, T = fx.fix_t()
    with pytest.raises(ValueError):
        check_order_n(S, [])
    with pytest.raises(ShapeError):
        check_order_n(S, [LinearOperator.identity(3)])
    with pytest.raises(PreconditionError):
        check_order_n(S, [LinearOperator.from_rows([[1, 0], [0, 0]])])
    with pytest.raises(ValueError):
        infinitesimal(S, [T])
    with pytest.raises(PreconditionError):
        OrderNDeformation(S, (T, LinearOperator.from_rows([[1, 0], [0, 0]])))


def test_cohomologous_infinitesimals_round_trip():
    S, T = fx.fix_t()
    A = DenseTensor.from_sparse((2, 2), [((0, 0), 1)])
    t1 = LinearOperator.from_rows([[Fraction(1, 3), 0], [0, 1]])
    shift = wp(S, T, A)
    t2 = Cochain(1, V_TO_G, t1.matrix.transpose(1, 0) + shift.coeffs)
    B = infinitesimals_cohomologous(S, T, t1, t2)
    assert B is not None
    assert wp(S, T, B).coeffs == shift.coeffs


def test_non_cohomologous_infinitesimals():
    S, T = fx.fix_t()
    t1 = LinearOperator.from_rows([[Fraction(1, 3), 0], [0, 1]])
    assert infinitesimals_cohomologous(S, T, ZERO, t1) is None


def test_cohomologous_requires_closed_inputs():
    S, T = fx.fix_t()
    with pytest.raises(PreconditionError):
        infinitesimals_cohomologous(S, T, ZERO, LinearOperator.from_rows([[1, 0], [0, 0]]))
    with pytest.raises(TypeError):
        infinitesimals_cohomologous(S, T, ZERO, "x")
