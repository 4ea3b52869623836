from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from l3kit.exactla import (
    DenseTensor,
    einsum,
    format_scalar,
    inverse,
    kernel_basis,
    matmul,
    matvec,
    parse_scalar,
    rank,
    solve,
)

fractions = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(fractions, min_size=c, max_size=c), min_size=r, max_size=r)))


def test_parse_scalar_forms():
    assert parse_scalar("3/6") == Fraction(1, 2)
    assert parse_scalar(" -4 ") == -4
    assert parse_scalar(7) == 7
    for bad in ("1/0", "x", "1/2/3", True, 1.5):
        with pytest.raises(ValueError):
            parse_scalar(bad)


def test_format_scalar_roundtrip():
    for v in (Fraction(0), Fraction(-3), Fraction(5, 7)):
        assert parse_scalar(format_scalar(v)) == v


def test_tensor_normalizes_common_denominator():
    t = DenseTensor.from_array([[Fraction(1, 2), Fraction(1, 4)], [0, 1]])
    assert t.den == 4
    assert t[0, 1] == Fraction(1, 4)
    assert (t.scale(4)).den == 1
    assert t == DenseTensor.from_flat((2, 2), [Fraction(2, 4), Fraction(1, 4), 0, 1])


def test_tensor_arithmetic_and_transpose():
    a = DenseTensor.from_array([[1, 2], [3, 4]])
    b = DenseTensor.identity(2)
    assert (a + b)[0, 0] == 2
    assert (a - a).is_zero()
    assert (-a)[1, 0] == -3
    assert a.transpose(1, 0)[0, 1] == 3
    assert a.reshape(4)[3] == 4
    assert a.nonzero()[0] == ((0, 0), Fraction(1))


def test_einsum_accepts_large_integer_labels():
    # label values far above numpy's sublist range are compacted
    vs = [DenseTensor.from_array([1, 1]) for _ in range(30)]
    ops = []
    for k, v in enumerate(vs):
        ops += [v, [1000 + 2 * k]]
    out = einsum(*ops, out=[])
    assert out.shape == () or out.size == 1
    assert out.entries()[0] == 2 ** 30


@given(matrices())
def test_rank_matches_sympy(rows):
    assert rank(DenseTensor.from_array(rows)) == sympy.Matrix(rows).rank()


@given(matrices())
def test_kernel_basis_spans_nullspace(rows):
    A = DenseTensor.from_array(rows)
    basis = kernel_basis(A)
    assert len(basis) == len(rows[0]) - sympy.Matrix(rows).rank()
    for v in basis:
        assert all(x == 0 for x in matvec(A, v))


@given(matrices(), st.data())
def test_solve_consistency_matches_rank_test(rows, data):
    A = DenseTensor.from_array(rows)
    b = data.draw(st.lists(fractions, min_size=len(rows), max_size=len(rows)))
    x = solve(A, b)
    aug = sympy.Matrix([list(r) + [v] for r, v in zip(rows, b)])
    consistent = aug.rank() == sympy.Matrix(rows).rank()
    assert (x is not None) == consistent
    if x is not None:
        assert matvec(A, x) == b


def test_solve_dimension_mismatch():
    with pytest.raises(ValueError):
        solve(DenseTensor.identity(2), [1, 2, 3])


@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(fractions, min_size=n, max_size=n),
                                                    min_size=n, max_size=n)))
def test_inverse_against_sympy(rows):
    A = DenseTensor.from_array(rows)
    inv = inverse(A)
    M = sympy.Matrix(rows)
    if M.det() == 0:
        assert inv is None
    else:
        assert matmul(A, inv) == DenseTensor.identity(len(rows))


def test_linear_algebra_through_each_backend(backend):
    A = DenseTensor.from_array([[2, 4, 6], [1, 2, 3], [0, 1, Fraction(1, 3)]])
    assert rank(A) == 2
    assert solve(A, [2, 1, 1]) is not None
    assert solve(A, [1, 1, 1]) is None
    (v,) = kernel_basis(A)
    assert matvec(A, v) == [0, 0, 0]


def test_large_integers_survive_elimination(backend):
    big = 10 ** 30
    A = DenseTensor.from_array([[big, 1], [big + 1, 1]])
    assert rank(A) == 2
    assert matvec(A, solve(A, [1, 2])) == [1, 2]


def test_object_storage_is_exact():
    t = DenseTensor.from_array([[Fraction(1, 3)]])
    assert isinstance(t.num, np.ndarray) and t.num.dtype == object
    assert t.scale(3)[0, 0] == 1
