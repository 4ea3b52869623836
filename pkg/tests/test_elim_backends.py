import random

import pytest
import sympy

from l3kit import _elim_py

ext = pytest.importorskip("l3kit._elim_ext")


def _random_rows(rng, r, c, span):
    return [[rng.randint(-span, span) for _ in range(c)] for _ in range(r)]


@pytest.mark.parametrize("span", [3, 10 ** 20])
def test_backends_agree(span):
    rng = random.Random(span % 97)
    for _ in range(60):
        r, c = rng.randint(1, 7), rng.randint(1, 7)
        rows = _random_rows(rng, r, c, span)
        a = _elim_py.row_echelon([list(x) for x in rows], c)
        b = ext.row_echelon([list(x) for x in rows], c)
        assert a == b


def test_reduced_form_matches_sympy_rref():
    rng = random.Random(11)
    for _ in range(40):
        r, c = rng.randint(1, 6), rng.randint(1, 6)
        rows = _random_rows(rng, r, c, 5)
        red, piv = ext.row_echelon([list(x) for x in rows], c)
        M, spiv = sympy.Matrix(rows).rref()
        assert tuple(piv) == tuple(spiv)
        for i, p in enumerate(piv):
            assert [sympy.Rational(v, red[i][p]) for v in red[i]] == list(M.row(i))


def test_overflow_falls_back_to_exact_objects():
    rows = [[2 ** 61, 3], [2 ** 61 + 1, 5]]
    assert ext.row_echelon([list(x) for x in rows], 2) == _elim_py.row_echelon([list(x) for x in rows], 2)
