"""Cohomology of a twisted Rota-Baxter operator T: V -> g.

The complex has C^0 = g (x) g, mapped into 1-cochains by ``wp``, and
C^n = C^n(V, g) for n >= 1 with the coboundary of the induced bracket on V
acting on g through the induced representation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .algebra import LinearOperator, Representation, ThreeLeibnizAlgebra, _require
from .cohomology import (
    V_TO_G,
    Cochain,
    _pair_vars,
    cochain_dim,
    coboundary_matrix_from_ops,
    coboundary_tensor,
    cohomology_dims_from_matrices,
)
from .errors import ShapeError
from .exactla import DenseTensor, kernel_basis, rank
from .multilinear import Expr, Op, Var, evaluate, evaluate_zero_ok, vsum
from .twisted_rbo import TwistedSetup, check_trbo, induced_bracket_expr, induced_bracket_unchecked


@dataclass(frozen=True, eq=False)
class InducedRep:
    """rho_T^l: V V g -> g, rho_T^m: V g V -> g, rho_T^r: g V V -> g."""

    bracket: ThreeLeibnizAlgebra
    rho_l: DenseTensor
    rho_m: DenseTensor
    rho_r: DenseTensor

    def as_representation(self) -> Representation:
        """The same data as a representation of (V, [.,.,.]_T) on g."""
        return Representation(self.bracket, self.rho_l.shape[-1], self.rho_l, self.rho_m, self.rho_r)


def _ops(S: TwistedSetup, T: LinearOperator):
    rl, rm, rr = S.rep.ops
    return S.algebra.mu, rl, rm, rr, S.phi_op, T.op


def induced_rep_unchecked(S: TwistedSetup, T: LinearOperator) -> InducedRep:
    mu, rl, rm, rr, phi, t = _ops(S, T)
    d, m = S.dim, S.dimV
    u, v = Var("u", m), Var("v", m)
    x = Var("x", d)
    lt = mu(t(u), t(v), x) - t(rm(t(u), v, x) + rr(u, t(v), x) + phi(t(u), t(v), x))
    mt = mu(t(u), x, t(v)) - t(rl(t(u), x, v) + rr(u, x, t(v)) + phi(t(u), x, t(v)))
    rt = mu(x, t(u), t(v)) - t(rl(x, t(u), v) + rm(x, u, t(v)) + phi(x, t(u), t(v)))
    return InducedRep(induced_bracket_unchecked(S, T),
                      evaluate(lt, [u, v, x]), evaluate(mt, [u, x, v]), evaluate(rt, [x, u, v]))


def induced_rep(S: TwistedSetup, T: LinearOperator) -> InducedRep:
    _require(check_trbo(S, T), "T is not a twisted Rota-Baxter operator")
    return induced_rep_unchecked(S, T)


def delta_T_expr(F: Callable[..., Expr], S: TwistedSetup, T: LinearOperator, n: int):
    """(delta_T f)(U_1, ..., U_n, w), with every term written out in g-operations."""
    mu, rl, rm, rr, phi, t = _ops(S, T)
    us, vs, w, order = _pair_vars(n, S.dimV)

    def tb(a, b, c):
        return induced_bracket_expr(S, T, a, b, c)

    def pairs_without(j, replace=None):
        out = []
        for i in range(n):
            if i == j:
                continue
            if replace is not None and i == replace[0]:
                out += list(replace[1])
            else:
                out += [us[i], vs[i]]
        return out

    terms: list[Expr] = []
    for j in range(n):
        sign = -1 if (j + 1) % 2 else 1
        for k in range(j + 1, n):
            terms.append(sign * F(*pairs_without(j, (k, (us[k], tb(us[j], vs[j], vs[k])))), w))
            terms.append(sign * F(*pairs_without(j, (k, (tb(us[j], vs[j], us[k]), vs[k]))), w))
        terms.append(sign * F(*pairs_without(j), tb(us[j], vs[j], w)))
        f = F(*pairs_without(j), w)
        a, b = us[j], vs[j]
        terms.append(-sign * (mu(t(a), t(b), f)
                              - t(rm(t(a), b, f)) - t(rr(a, t(b), f)) - t(phi(t(a), t(b), f))))
    last = 1 if (n + 1) % 2 == 0 else -1
    head = pairs_without(n - 1)
    un, vn = us[n - 1], vs[n - 1]
    f1 = F(*head, vn)
    f2 = F(*head, un)
    terms.append(last * (mu(t(un), f1, t(w)) - t(rl(t(un), f1, w)) - t(rr(un, f1, t(w)))
                         - t(phi(t(un), f1, t(w)))
                         + mu(f2, t(vn), t(w)) - t(rl(f2, t(vn), w)) - t(rm(f2, vn, t(w)))
                         - t(phi(f2, t(vn), t(w)))))
    return vsum(terms), order


def _cochain_tensor(f) -> tuple[DenseTensor, int]:
    if isinstance(f, Cochain):
        if f.direction != V_TO_G:
            raise ShapeError("delta_T acts on V -> g cochains")
        return f.coeffs, f.n
    n = f.ndim // 2
    return f, n


def delta_T(S: TwistedSetup, T: LinearOperator, f) -> Cochain:
    """delta_T f from the expanded formula."""
    t, n = _cochain_tensor(f)
    m, d = S.dimV, S.dim
    if tuple(t.shape) != (m,) * (2 * n - 1) + (d,):
        raise ShapeError("cochain shape does not match (dim V, dim g)")
    fop = Op(t, "f")
    expr, order = delta_T_expr(lambda *a: fop(*a), S, T, n)
    return Cochain(n + 1, V_TO_G, evaluate_zero_ok(expr, order, d))


def delta_T_via_induced(S: TwistedSetup, T: LinearOperator, f) -> Cochain:
    """delta_T f as the plain coboundary of (V, [.,.,.]_T) with coefficients in g."""
    t, n = _cochain_tensor(f)
    IR = induced_rep_unchecked(S, T)
    out = coboundary_tensor(IR.bracket.mu, Op(IR.rho_l), Op(IR.rho_m), Op(IR.rho_r), t, n)
    return Cochain(n + 1, V_TO_G, out)


def delta_T_matrix(S: TwistedSetup, T: LinearOperator, n: int) -> DenseTensor:
    """Matrix of delta_T: C^n(V, g) -> C^(n+1)(V, g)."""
    m, d = S.dimV, S.dim
    dim_n = cochain_dim(m, d, n)
    universal = DenseTensor.identity(dim_n).reshape((dim_n,) + (m,) * (2 * n - 1) + (d,))
    fop = Op(universal, "f")
    c = Var("basis", dim_n)
    expr, order = delta_T_expr(lambda *a: fop(c, *a), S, T, n)
    out = evaluate_zero_ok(expr, [c] + order, d)
    return out.reshape(dim_n, cochain_dim(m, d, n + 1)).transpose(1, 0)


def delta_T_matrix_via_induced(S: TwistedSetup, T: LinearOperator, n: int) -> DenseTensor:
    IR = induced_rep_unchecked(S, T)
    return coboundary_matrix_from_ops(IR.bracket.mu, Op(IR.rho_l), Op(IR.rho_m), Op(IR.rho_r), n, S.dim)


# degree zero --------------------------------------------------------------

def wp_expr(S: TwistedSetup, T: LinearOperator):
    """wp(a (x) b)(u) = T rho_l(a,b,u) + T phi(a,b,Tu) - [a,b,Tu]."""
    mu, rl, _, _, phi, t = _ops(S, T)
    a, b = Var("a", S.dim), Var("b", S.dim)
    u = Var("u", S.dimV)
    return t(rl(a, b, u)) + t(phi(a, b, t(u))) - mu(a, b, t(u)), [a, b, u]


def wp_tensor(S: TwistedSetup, T: LinearOperator) -> DenseTensor:
    """Shape [d, d, m, d]: index (a, b) then the 1-cochain V -> g."""
    expr, order = wp_expr(S, T)
    return evaluate(expr, order)


def wp_matrix(S: TwistedSetup, T: LinearOperator) -> DenseTensor:
    d, m = S.dim, S.dimV
    return wp_tensor(S, T).reshape(d * d, m * d).transpose(1, 0)


def wp(S: TwistedSetup, T: LinearOperator, A: DenseTensor, check: bool = True) -> Cochain:
    """wp applied to an element of g (x) g (shape [d, d])."""
    if check:
        _require(check_trbo(S, T), "T is not a twisted Rota-Baxter operator")
    d = S.dim
    if tuple(A.shape) != (d, d):
        raise ShapeError(f"degree-0 cochain must have shape ({d}, {d})")
    from .exactla import einsum
    out = einsum(A, [0, 1], wp_tensor(S, T), [0, 1, 2, 3], out=[2, 3])
    return Cochain(1, V_TO_G, out)


def partial_T(S: TwistedSetup, T: LinearOperator, f) -> Cochain:
    """wp on degree 0 (a [d, d] tensor), delta_T on cochains of degree >= 1."""
    if isinstance(f, Cochain):
        return delta_T(S, T, f)
    if isinstance(f, DenseTensor) and f.ndim == 2 and f.shape == (S.dim, S.dim):
        return wp(S, T, f, check=False)
    return delta_T(S, T, f)


def partial_T_matrix(S: TwistedSetup, T: LinearOperator, n: int) -> DenseTensor:
    return wp_matrix(S, T) if n == 0 else delta_T_matrix(S, T, n)


def cohomology_dim_T(S: TwistedSetup, T: LinearOperator, n: int) -> int:
    """dim HH_T^n = dim ker(partial at n) - rank(partial at n-1)."""
    if n < 1:
        raise ValueError("cohomology degree must be at least 1")
    _require(check_trbo(S, T), "T is not a twisted Rota-Baxter operator")
    dim_c = cochain_dim(S.dimV, S.dim, n)
    return cohomology_dims_from_matrices(dim_c, partial_T_matrix(S, T, n), partial_T_matrix(S, T, n - 1))


def cocycle_basis_T(S: TwistedSetup, T: LinearOperator, n: int) -> list[Cochain]:
    shape = (S.dimV,) * (2 * n - 1) + (S.dim,)
    return [Cochain(n, V_TO_G, DenseTensor.from_flat(shape, v))
            for v in kernel_basis(delta_T_matrix(S, T, n))]


def coboundary_rank_T(S: TwistedSetup, T: LinearOperator, n: int) -> int:
    return rank(partial_T_matrix(S, T, n - 1))
