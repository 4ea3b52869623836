"""Named small examples and random generators of valid structures."""

from __future__ import annotations

import random
from fractions import Fraction

from .algebra import (
    LeibnizAlgebra,
    LeibnizRepresentation,
    LinearOperator,
    Representation,
    ThreeLeibnizAlgebra,
    adjoint_rep,
    rep_from_leibniz_rep,
    threeleibniz_from_leibniz,
    transport_representation,
)
from .cohomology import coboundary_matrix
from .exactla import DenseTensor, kernel_basis
from .twisted_rbo import TwistedSetup, nijenhuis_package, reynolds_setup, trbo_from_invertible_cochain


def fix_a1() -> ThreeLeibnizAlgebra:
    """dim 2, [e1, e1, e1] = e2."""
    return ThreeLeibnizAlgebra(2, DenseTensor.from_sparse((2,) * 4, [((0, 0, 0, 1), 1)]))


def fix_t() -> tuple[TwistedSetup, LinearOperator]:
    """The algebra [e1,e1,e1] = e2 with its adjoint representation, phi = -2 bracket, T = Id."""
    A = fix_a1()
    return TwistedSetup(adjoint_rep(A), A.bracket.scale(-2)), LinearOperator.identity(2)


def fix_n() -> LinearOperator:
    """Nijenhuis operator on fix_a1: N e1 = e1 + e2, N e2 = e2."""
    return LinearOperator.from_rows([[1, 0], [1, 1]])


def fix_r() -> LinearOperator:
    """Reynolds operator on fix_a1: T = diag(1, 1/2)."""
    return LinearOperator.from_rows([[1, 0], [0, Fraction(1, 2)]])


def fix_r_setup() -> tuple[TwistedSetup, LinearOperator]:
    return reynolds_setup(fix_a1()), fix_r()


def fix_n_setup() -> tuple[TwistedSetup, LinearOperator]:
    pkg = nijenhuis_package(fix_a1(), fix_n())
    return pkg.setup, LinearOperator.identity(2)


# Lie and Leibniz sources ---------------------------------------------------

def sl2_lie() -> LeibnizAlgebra:
    """sl2 with basis (e, f, h): [e,f] = h, [h,e] = 2e, [h,f] = -2f."""
    items = [((0, 1, 2), 1), ((1, 0, 2), -1), ((2, 0, 0), 2), ((0, 2, 0), -2),
             ((2, 1, 1), -2), ((1, 2, 1), 2)]
    return LeibnizAlgebra(3, DenseTensor.from_sparse((3, 3, 3), items))


def sl2_standard(symmetric: bool) -> LeibnizRepresentation:
    """Standard 2-dim module; right action -x.u (symmetric) or zero."""
    L = sl2_lie()
    act = [[[0, 1], [0, 0]], [[0, 0], [1, 0]], [[1, 0], [0, -1]]]  # x.e_k column action
    items_L, items_R = [], []
    for x in range(3):
        for k in range(2):
            for i in range(2):
                c = act[x][i][k]
                if c:
                    items_L.append(((x, k, i), c))
                    if symmetric:
                        items_R.append(((k, x, i), -c))
    return LeibnizRepresentation(L, 2, DenseTensor.from_sparse((3, 2, 2), items_L),
                                 DenseTensor.from_sparse((2, 3, 2), items_R))


def regular_leibniz_rep(L: LeibnizAlgebra) -> LeibnizRepresentation:
    return LeibnizRepresentation(L, L.dim, L.bracket, L.bracket)


def nilpotent_leibniz() -> LeibnizAlgebra:
    """dim 2, [e1, e1] = e2."""
    return LeibnizAlgebra(2, DenseTensor.from_sparse((2, 2, 2), [((0, 0, 1), 1)]))


def nonabelian_lie2() -> LeibnizAlgebra:
    """dim 2, [e1, e2] = e2 = -[e2, e1]."""
    return LeibnizAlgebra(2, DenseTensor.from_sparse((2, 2, 2), [((0, 1, 1), 1), ((1, 0, 1), -1)]))


def sl2_3leibniz() -> ThreeLeibnizAlgebra:
    return threeleibniz_from_leibniz(sl2_lie())


# random generation ---------------------------------------------------------

def _rand_frac(rng: random.Random, span: int = 2) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.choice([1, 1, 1, 2]))


def random_invertible(rng: random.Random, n: int, span: int = 1) -> LinearOperator:
    while True:
        rows = [[Fraction(rng.randint(-span, span)) for _ in range(n)] for _ in range(n)]
        op = LinearOperator.from_rows(rows)
        if op.inverse() is not None:
            return op


def random_matrix(rng: random.Random, r: int, c: int, span: int = 2) -> LinearOperator:
    return LinearOperator.from_rows([[_rand_frac(rng, span) for _ in range(c)] for _ in range(r)])


def random_nilpotent_rep(rng: random.Random, d: int, m: int) -> Representation:
    """2-step nilpotent algebra and representation: every composite vanishes.

    Brackets and actions read only the 'low' part of each space and land in
    the 'high' part, which is annihilated.
    """
    dl = max(1, d // 2 + (d % 2))
    ml = max(1, m // 2 + (m % 2)) if m > 1 else m
    low_g = range(dl)
    high_g = range(dl, d)
    low_v = range(ml) if m > 1 else range(0)
    high_v = range(ml, m) if m > 1 else range(m)

    def table(shape, slots, out):
        items = []
        for idx in _product(slots):
            for o in out:
                if rng.random() < 0.5:
                    items.append((idx + (o,), _rand_frac(rng)))
        return DenseTensor.from_sparse(shape, items)

    bracket = table((d,) * 4, [low_g] * 3, high_g)
    A = ThreeLeibnizAlgebra(d, bracket)
    rl = table((d, d, m, m), [low_g, low_g, low_v], high_v)
    rm = table((d, m, d, m), [low_g, low_v, low_g], high_v)
    rr = table((m, d, d, m), [low_v, low_g, low_g], high_v)
    return Representation(A, m, rl, rm, rr)


def _product(ranges):
    if not ranges:
        yield ()
        return
    for i in ranges[0]:
        for rest in _product(ranges[1:]):
            yield (i,) + rest


def _base_reps(d: int, m: int) -> list:
    """Builders of known representations with dim g == d and dim V == m."""
    out = []
    if (d, m) == (3, 2):
        out.append(lambda: rep_from_leibniz_rep(sl2_standard(True)))
        out.append(lambda: rep_from_leibniz_rep(sl2_standard(False)))
    if (d, m) == (3, 3):
        out.append(lambda: adjoint_rep(sl2_3leibniz()))
        out.append(lambda: rep_from_leibniz_rep(regular_leibniz_rep(sl2_lie())))
    if (d, m) == (2, 2):
        out.append(lambda: rep_from_leibniz_rep(regular_leibniz_rep(nilpotent_leibniz())))
        out.append(lambda: rep_from_leibniz_rep(regular_leibniz_rep(nonabelian_lie2())))
        out.append(lambda: adjoint_rep(threeleibniz_from_leibniz(nonabelian_lie2())))
        out.append(lambda: adjoint_rep(fix_a1()))
    return out


def random_representation(rng: random.Random, d: int, m: int) -> Representation:
    """A valid representation with the given dimensions, in a random rational basis."""
    choices = _base_reps(d, m)
    pick = rng.randrange(len(choices) + 1)
    R = random_nilpotent_rep(rng, d, m) if pick == len(choices) else choices[pick]()
    return transport_representation(R, random_invertible(rng, d), random_invertible(rng, m))


def random_cocycle(rng: random.Random, R: Representation, n: int = 2) -> DenseTensor:
    shape = (R.dim,) * (2 * n - 1) + (R.dimV,)
    basis = kernel_basis(coboundary_matrix(R, n))
    vals = [Fraction(0)] * len(basis[0]) if basis else [Fraction(0)] * (R.dim ** (2 * n - 1) * R.dimV)
    for b in basis:
        c = Fraction(rng.randint(-2, 2))
        if c:
            vals = [v + c * x for v, x in zip(vals, b)]
    return DenseTensor.from_flat(shape, vals)


def random_trbo_setup(rng: random.Random, d: int) -> tuple[TwistedSetup, LinearOperator]:
    """A setup with an invertible twisted operator T = w^-1 and phi = -delta w."""
    R = random_representation(rng, d, d)
    w = random_invertible(rng, d)
    return trbo_from_invertible_cochain(R, w)


def random_setup(rng: random.Random, d: int, m: int) -> TwistedSetup:
    R = random_representation(rng, d, m)
    return TwistedSetup(R, random_cocycle(rng, R))


def named_trbo_fixtures() -> dict[str, tuple[TwistedSetup, LinearOperator]]:
    """The twisted Rota-Baxter fixtures used across the suite."""
    S, T = fix_t()
    out = {
        "fix_t": (S, T),
        "zero_on_fix_t": (S, LinearOperator.zero(2, 2)),
        "fix_r": fix_r_setup(),
        "fix_n": fix_n_setup(),
    }
    sl2 = adjoint_rep(sl2_3leibniz())
    out["sl2_adjoint_inverse"] = trbo_from_invertible_cochain(
        sl2, LinearOperator.from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 2]]))
    lie2 = rep_from_leibniz_rep(regular_leibniz_rep(nonabelian_lie2()))
    out["lie2_regular_inverse"] = trbo_from_invertible_cochain(
        lie2, LinearOperator.from_rows([[1, 1], [0, 1]]))
    return out
