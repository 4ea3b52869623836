"""Cochains C^n(g, V), the coboundary, cohomology dimensions, twisted semidirect products."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .algebra import Representation, ThreeLeibnizAlgebra, _semidirect
from .errors import PreconditionError, ShapeError
from .exactla import DenseTensor, kernel_basis, rank
from .multilinear import Expr, Op, Var, evaluate_zero_ok, vsum

G_TO_V = "g_to_V"
V_TO_G = "V_to_g"


@dataclass(frozen=True, eq=False)
class Cochain:
    """An n-cochain: 2n-1 inputs (n-1 pairs then a final slot), one output.

    ``coeffs`` has shape ``[src]*(2n-1) + [dst]``.
    """

    n: int
    direction: str
    coeffs: DenseTensor
    base: Representation | None = None

    def __post_init__(self):
        if self.n < 1:
            raise ShapeError("cochain degree must be at least 1")
        if self.direction not in (G_TO_V, V_TO_G):
            raise ShapeError(f"unknown direction {self.direction!r}")
        if self.coeffs.ndim != 2 * self.n:
            raise ShapeError(f"degree-{self.n} cochain needs {2 * self.n} axes, got {self.coeffs.ndim}")
        if self.base is not None:
            src, dst = self.dims(self.base, self.direction)
            want = (src,) * (2 * self.n - 1) + (dst,)
            if tuple(self.coeffs.shape) != want:
                raise ShapeError(f"cochain shape {self.coeffs.shape} does not match {want}")

    @staticmethod
    def dims(R: Representation, direction: str) -> tuple[int, int]:
        return (R.dim, R.dimV) if direction == G_TO_V else (R.dimV, R.dim)

    @property
    def arity(self) -> int:
        return 2 * self.n - 1

    def is_zero(self) -> bool:
        return self.coeffs.is_zero()

    def __eq__(self, other):
        return (isinstance(other, Cochain) and self.n == other.n
                and self.direction == other.direction and self.coeffs == other.coeffs)

    __hash__ = None


def cochain_dim(src: int, dst: int, n: int) -> int:
    return src ** (2 * n - 1) * dst


def _pair_vars(n: int, d: int):
    xs = [Var(f"x{i}", d) for i in range(1, n + 1)]
    ys = [Var(f"y{i}", d) for i in range(1, n + 1)]
    z = Var("z", d)
    order = []
    for x, y in zip(xs, ys):
        order += [x, y]
    return xs, ys, z, order + [z]


def coboundary_expr(F: Callable[..., Expr], mu: Op, rl: Op, rm: Op, rr: Op, n: int, d: int):
    """Expression for (delta f)(X_1, ..., X_n, z), f of degree n given by ``F``.

    ``mu`` is the bracket of the source algebra and the three actions are on
    the coefficient space. Returns ``(expr, variable_order)``.
    """
    xs, ys, z, order = _pair_vars(n, d)
    terms: list[tuple[int, Expr]] = []

    def pairs_without(j, replace=None):
        out = []
        for i in range(n):
            if i == j:
                continue
            if replace is not None and i == replace[0]:
                out += list(replace[1])
            else:
                out += [xs[i], ys[i]]
        return out

    for j in range(n):
        sign = -1 if (j + 1) % 2 else 1
        for k in range(j + 1, n):
            a1 = pairs_without(j, (k, (xs[k], mu(xs[j], ys[j], ys[k]))))
            a2 = pairs_without(j, (k, (mu(xs[j], ys[j], xs[k]), ys[k])))
            terms.append((sign, F(*a1, z)))
            terms.append((sign, F(*a2, z)))
        terms.append((sign, F(*pairs_without(j), mu(xs[j], ys[j], z))))
        terms.append((-sign, rl(xs[j], ys[j], F(*pairs_without(j), z))))
    last = 1 if (n + 1) % 2 == 0 else -1
    head = pairs_without(n - 1)
    terms.append((last, rm(xs[n - 1], F(*head, ys[n - 1]), z)))
    terms.append((last, rr(F(*head, xs[n - 1]), ys[n - 1], z)))
    return vsum([s * t for s, t in terms]), order


def _rep_ops(R: Representation):
    rl, rm, rr = R.ops
    return R.algebra.mu, rl, rm, rr


def coboundary_tensor(mu: Op, rl: Op, rm: Op, rr: Op, f: DenseTensor, n: int) -> DenseTensor:
    d = mu.tensor.shape[0]
    fop = Op(f, "f")
    expr, order = coboundary_expr(lambda *a: fop(*a), mu, rl, rm, rr, n, d)
    return evaluate_zero_ok(expr, order, f.shape[-1])


def coboundary_matrix_from_ops(mu: Op, rl: Op, rm: Op, rr: Op, n: int, m: int) -> DenseTensor:
    """Matrix of delta: C^n -> C^(n+1) (rows: C^(n+1) flat index, cols: C^n)."""
    d = mu.tensor.shape[0]
    dim_n = cochain_dim(d, m, n)
    universal = DenseTensor.identity(dim_n).reshape((dim_n,) + (d,) * (2 * n - 1) + (m,))
    fop = Op(universal, "f")
    c = Var("basis", dim_n)
    expr, order = coboundary_expr(lambda *a: fop(c, *a), mu, rl, rm, rr, n, d)
    t = evaluate_zero_ok(expr, [c] + order, m)
    dim_next = cochain_dim(d, m, n + 1)
    return t.reshape(dim_n, dim_next).transpose(1, 0)


def coboundary(f: Cochain, R: Representation | None = None) -> Cochain:
    """delta f for f in C^n(g, V)."""
    if f.direction != G_TO_V:
        raise ShapeError("coboundary acts on g -> V cochains; use delta_T for V -> g")
    R = R or f.base
    if R is None:
        raise ShapeError("cochain has no representation attached")
    return Cochain(f.n + 1, G_TO_V, coboundary_tensor(*_rep_ops(R), f.coeffs, f.n), R)


def coboundary_matrix(R: Representation, n: int) -> DenseTensor:
    return coboundary_matrix_from_ops(*_rep_ops(R), n, R.dimV)


def is_cocycle(f: Cochain, R: Representation | None = None) -> bool:
    return coboundary(f, R).is_zero()


def cocycle_basis(R: Representation, n: int) -> list[Cochain]:
    shape = (R.dim,) * (2 * n - 1) + (R.dimV,)
    return [Cochain(n, G_TO_V, DenseTensor.from_flat(shape, v), R)
            for v in kernel_basis(coboundary_matrix(R, n))]


def cohomology_dims_from_matrices(dim_c: int, m_n: DenseTensor, m_prev: DenseTensor | None) -> int:
    z = dim_c - rank(m_n)
    b = 0 if m_prev is None else rank(m_prev)
    return z - b


def cohomology_dim(R: Representation, n: int) -> int:
    """dim HH^n(g, V); B^1 is taken to be zero."""
    if n < 1:
        raise ValueError("cohomology degree must be at least 1")
    dim_c = cochain_dim(R.dim, R.dimV, n)
    prev = coboundary_matrix(R, n - 1) if n >= 2 else None
    return cohomology_dims_from_matrices(dim_c, coboundary_matrix(R, n), prev)


def as_phi(phi, R: Representation) -> DenseTensor:
    """A 2-cochain tensor g g g -> V; None means zero."""
    want = (R.dim,) * 3 + (R.dimV,)
    if phi is None:
        return DenseTensor.zeros(want)
    t = phi.coeffs if isinstance(phi, Cochain) else phi
    if tuple(t.shape) != want:
        raise ShapeError(f"2-cochain has shape {t.shape}, expected {want}")
    return t


def twisted_semidirect(R: Representation, phi) -> ThreeLeibnizAlgebra:
    """Bracket on g + V with the cocycle phi added to the V component."""
    t = as_phi(phi, R)
    if not is_cocycle(Cochain(2, G_TO_V, t, R)):
        raise PreconditionError("phi is not a 2-cocycle")
    return _semidirect(R, t)


def twisted_semidirect_unchecked(R: Representation, phi) -> ThreeLeibnizAlgebra:
    return _semidirect(R, as_phi(phi, R))

