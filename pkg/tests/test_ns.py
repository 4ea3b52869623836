import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from l3kit import fixtures as fx
from l3kit.algebra import LinearOperator, ThreeLeibnizAlgebra, check_3leibniz
from l3kit.errors import PreconditionError, ShapeError
from l3kit.exactla import DenseTensor
from l3kit.ns import (
    AXIOM_TAGS,
    PRINTED,
    PRINTED_TAG,
    NSAlgebra,
    check_ns,
    check_weighted_rbo,
    compatible_ns_from_invertible_trbo,
    ns3lie_diagnostic,
    ns_canonical_package,
    ns_from_nijenhuis,
    ns_from_reynolds,
    ns_from_trbo,
    ns_from_weighted_rbo,
    subadjacent,
)
from l3kit.twisted_rbo import induced_bracket

NAMED = fx.named_trbo_fixtures()
MU = fx.fix_a1().bracket
Z = DenseTensor.zeros((2,) * 4)


def test_fix_t_products():
    S, T = fx.fix_t()
    A = ns_from_trbo(S, T)
    assert A.lt == MU and A.md == MU and A.rt == MU
    assert A.dia == MU.scale(-2)
    assert A.star == MU


@pytest.mark.parametrize("name", sorted(NAMED))
def test_trbo_products_are_ns_and_sum_to_induced_bracket(name):
    S, T = NAMED[name]
    A = ns_from_trbo(S, T)
    assert check_ns(A).ok
    assert subadjacent(A).bracket == induced_bracket(S, T).bracket


def test_check_counts_and_tags():
    rep = check_ns(NSAlgebra.zero(2))
    assert rep.ok
    assert rep.checked == 6 * 2 ** 5
    assert len(AXIOM_TAGS) == 6


def test_single_right_product_is_ns():
    for B in (fx.fix_a1().bracket, fx.sl2_3leibniz().bracket):
        d = B.shape[0]
        z = DenseTensor.zeros((d,) * 4)
        assert check_ns(NSAlgebra(d, z, B, z, z)).ok


def test_non_ns_reports_axiom_tags():
    # a right product that is not 3-Leibniz breaks right_on_right
    bad = DenseTensor.from_sparse((2,) * 4, [((0, 0, 0, 0), 1), ((0, 0, 1, 1), 1)])
    rep = check_ns(NSAlgebra(2, Z, bad, Z, Z))
    assert not rep.ok
    assert "right_on_right" in {v.equation_tag for v in rep.violations}
    rep = check_ns(NSAlgebra(2, Z, Z, Z, DenseTensor.from_sparse((2,) * 4, [((0, 0, 0, 0), 1)])))
    assert not rep.ok
    assert {v.equation_tag for v in rep.violations} <= set(AXIOM_TAGS)


@pytest.mark.parametrize("name", ["sl2_adjoint_inverse", "lie2_regular_inverse"])
def test_printed_right_on_mid_axiom_fails(name):
    S, T = NAMED[name]
    A = ns_from_trbo(S, T)
    assert check_ns(A).ok
    rep = check_ns(A, mode=PRINTED)
    assert not rep.ok
    assert {v.equation_tag for v in rep.violations} == {PRINTED_TAG}


def test_unknown_mode():
    with pytest.raises(ValueError):
        check_ns(NSAlgebra.zero(1), mode="lenient")


def test_shape_validation():
    with pytest.raises(ShapeError):
        NSAlgebra(2, Z, Z, Z, DenseTensor.zeros((2, 2, 2)))


@pytest.mark.parametrize("name", sorted(NAMED))
def test_canonical_package_round_trip(name):
    S, T = NAMED[name]
    pkg = ns_canonical_package(ns_from_trbo(S, T))
    assert pkg.witness.ok
    assert pkg.phi == ns_from_trbo(S, T).dia


def test_nijenhuis_products():
    A, N = fx.fix_a1(), fx.fix_n()
    P = ns_from_nijenhuis(A, N)
    assert check_ns(P).ok
    assert check_3leibniz(subadjacent(P)).ok
    ident = ns_from_nijenhuis(A, LinearOperator.identity(2))
    assert ident == ns_from_trbo(*fx.fix_t())
    assert ns_from_nijenhuis(A, LinearOperator.zero(2, 2)) == NSAlgebra.zero(2)


def test_reynolds_products():
    A, T = fx.fix_a1(), fx.fix_r()
    P = ns_from_reynolds(A, T)
    assert check_ns(P).ok
    assert check_3leibniz(subadjacent(P)).ok
    # T e1 = e1, so dia(e1,e1,e1) = -[e1,e1,e1] = -e2
    assert [P.dia[0, 0, 0, k] for k in range(2)] == [0, -1]
    with pytest.raises(PreconditionError):
        ns_from_reynolds(A, LinearOperator.identity(2))


@pytest.mark.parametrize("lam", [1, 2])
def test_weighted_products_from_negative_scalar(lam):
    A = fx.fix_a1()
    B = LinearOperator.identity(2).scale(-lam)
    assert check_weighted_rbo(A, B, lam).ok
    P = ns_from_weighted_rbo(A, B, lam)
    assert check_ns(P).ok
    assert check_3leibniz(subadjacent(P)).ok


def test_weighted_zero_operator():
    A = fx.fix_a1()
    P = ns_from_weighted_rbo(A, LinearOperator.zero(2, 2), 3)
    assert P.dia == MU.scale(9)
    assert P.lt.is_zero() and P.rt.is_zero() and P.md.is_zero()


def test_weight_zero_gives_vanishing_diamond():
    A = ThreeLeibnizAlgebra.abelian(2)
    P = ns_from_weighted_rbo(A, LinearOperator.from_rows([[1, 2], [3, 4]]), 0)
    assert P.dia.is_zero()


def test_weighted_identity_fails_at_weight_zero():
    rep = check_weighted_rbo(fx.fix_a1(), LinearOperator.identity(2), 0)
    assert not rep.ok
    assert rep.violations[0].equation_tag == "weighted_rota_baxter"
    with pytest.raises(PreconditionError):
        ns_from_weighted_rbo(fx.fix_a1(), LinearOperator.identity(2), 0)
    with pytest.raises(ShapeError):
        check_weighted_rbo(fx.fix_a1(), LinearOperator.identity(3), 1)


@pytest.mark.parametrize("name", ["fix_t", "fix_r", "fix_n", "sl2_adjoint_inverse", "lie2_regular_inverse"])
def test_compatible_products_sum_to_original_bracket(name):
    S, T = NAMED[name]
    P = compatible_ns_from_invertible_trbo(S, T)
    assert P.star == S.algebra.bracket


def test_compatible_products_of_fix_t():
    P = compatible_ns_from_invertible_trbo(*fx.fix_t())
    assert P == NSAlgebra(2, MU, MU, MU, MU.scale(-2))


def test_compatible_requires_invertible():
    S, T = NAMED["zero_on_fix_t"]
    with pytest.raises(PreconditionError):
        compatible_ns_from_invertible_trbo(S, T)


@given(st.integers(0, 10 ** 6))
@settings(max_examples=8)
def test_random_operators_give_ns(seed):
    S, T = fx.random_trbo_setup(random.Random(seed), 2)
    P = ns_from_trbo(S, T)
    assert check_ns(P).ok
    assert compatible_ns_from_invertible_trbo(S, T).star == S.algebra.bracket


def test_ns3lie_diagnostic():
    rep = ns3lie_diagnostic(NSAlgebra.zero(2))
    assert rep.ok
    P = ns_from_trbo(*fx.fix_t())
    bad = ns3lie_diagnostic(P)
    assert not bad.ok
    assert {v.equation_tag for v in bad.violations} <= {"right_skew", "middle_cyclic", "left_cyclic"}
