"""Order-n deformations of a twisted Rota-Baxter operator and their obstructions."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .algebra import LinearOperator, _require
from .cohomology import V_TO_G, Cochain
from .errors import L3KitError, PreconditionError, ShapeError
from .exactla import DenseTensor, solve
from .multilinear import Var, evaluate_zero_ok, vsum
from .rbo_cohomology import delta_T, delta_T_matrix, wp_matrix
from .report import Report, timed
from .twisted_rbo import TwistedSetup, check_trbo


def _index_tuples(k: int, total: int, bound: int):
    for idx in product(range(bound + 1), repeat=k):
        if sum(idx) == total:
            yield idx


def _balance(S: TwistedSetup, terms: list[LinearOperator], p: int, bound: int):
    """Both sides of the order-p equation using only terms with index <= bound."""
    rl, rm, rr = S.rep.ops
    mu, phi = S.algebra.mu, S.phi_op
    t = [T.op for T in terms]
    m, d = S.dimV, S.dim
    u, v, w = (Var(n, m) for n in "uvw")
    lhs, rhs = [], []
    for i, j, k in _index_tuples(3, p, bound):
        lhs.append(mu(t[i](u), t[j](v), t[k](w)))
        rhs.append(t[i](rl(t[j](u), t[k](v), w) + rm(t[j](u), v, t[k](w)) + rr(u, t[j](v), t[k](w))))
    for i, j, k, l in _index_tuples(4, p, bound):
        rhs.append(t[i](phi(t[j](u), t[k](v), t[l](w))))
    order = [u, v, w]
    return evaluate_zero_ok(vsum(lhs), order, d), evaluate_zero_ok(vsum(rhs), order, d)


def _check_terms(S: TwistedSetup, terms):
    if not terms:
        raise ValueError("a deformation needs at least the term T_0")
    for T in terms:
        if T.matrix.shape != (S.dim, S.dimV):
            raise ShapeError(f"deformation terms must be {S.dim}x{S.dimV} matrices")


def check_order_n(S: TwistedSetup, terms: list[LinearOperator]) -> Report:
    """The order-p balance for p = 0..n, where n = len(terms) - 1."""
    _check_terms(S, terms)
    _require(check_trbo(S, terms[0]), "T_0 is not a twisted Rota-Baxter operator")
    rep = Report(name="check-order-n")
    n = len(terms) - 1
    with timed(rep):
        for p in range(n + 1):
            lhs, rhs = _balance(S, terms, p, n)
            rep.compare(f"order_{p}_balance", lhs, rhs)
    return rep


@dataclass(frozen=True, eq=False)
class OrderNDeformation:
    setup: TwistedSetup
    terms: tuple[LinearOperator, ...]

    def __post_init__(self):
        _require(check_order_n(self.setup, list(self.terms)), "terms are not an order-n deformation")

    @property
    def order(self) -> int:
        return len(self.terms) - 1


def _as_cochain(x) -> Cochain:
    if isinstance(x, LinearOperator):
        return Cochain(1, V_TO_G, x.matrix.transpose(1, 0))
    if isinstance(x, Cochain):
        if x.n != 1 or x.direction != V_TO_G:
            raise ShapeError("expected a degree-1 V -> g cochain")
        return x
    raise TypeError("expected a LinearOperator or a Cochain")


def infinitesimal(S: TwistedSetup, terms: list[LinearOperator]) -> Cochain:
    if len(terms) < 2:
        raise ValueError("the infinitesimal needs a deformation of order at least 1")
    _require(check_order_n(S, terms), "terms are not an order-n deformation")
    T1 = _as_cochain(terms[1])
    if not delta_T(S, terms[0], T1).is_zero():
        raise L3KitError("infinitesimal is not closed")
    return T1


def obstruction_unchecked(S: TwistedSetup, terms: list[LinearOperator]) -> Cochain:
    n = len(terms) - 1
    lhs, rhs = _balance(S, terms, n + 1, n)
    return Cochain(2, V_TO_G, lhs - rhs)


def obstruction(S: TwistedSetup, terms: list[LinearOperator]) -> Cochain:
    """Ob_T: the order n+1 balance defect built from T_0..T_n; always closed."""
    _require(check_order_n(S, terms), "terms are not an order-n deformation")
    ob = obstruction_unchecked(S, terms)
    if not delta_T(S, terms[0], ob).is_zero():
        raise L3KitError("obstruction is not closed")
    return ob


def extension_system(S: TwistedSetup, terms: list[LinearOperator]):
    """(M, b) with M the degree-1 coboundary matrix and b = -Ob_T flattened."""
    ob = obstruction(S, terms)
    return delta_T_matrix(S, terms[0], 1), [-x for x in ob.coeffs.entries()]


def extend(S: TwistedSetup, terms: list[LinearOperator]) -> LinearOperator | None:
    """A next term T_{n+1} with delta_T T_{n+1} = -Ob_T, or None when no such term exists."""
    M, b = extension_system(S, terms)
    x = solve(M, b)
    if x is None:
        return None
    X = LinearOperator(DenseTensor.from_flat((S.dimV, S.dim), x).transpose(1, 0))
    if not check_order_n(S, list(terms) + [X]).ok:
        raise L3KitError("extension does not satisfy the next order balance")
    return X


def extend_to_order(S: TwistedSetup, terms: list[LinearOperator], N: int) -> list[LinearOperator] | None:
    """Extend step by step until order N; None if some step is obstructed."""
    out = list(terms)
    while len(out) - 1 < N:
        X = extend(S, out)
        if X is None:
            return None
        out.append(X)
    return out


def infinitesimals_cohomologous(S: TwistedSetup, T: LinearOperator, t1, t2) -> DenseTensor | None:
    """An element A of g (x) g with wp(A) = t2 - t1, or None."""
    _require(check_trbo(S, T), "T is not a twisted Rota-Baxter operator")
    c1, c2 = _as_cochain(t1), _as_cochain(t2)
    for c in (c1, c2):
        if not delta_T(S, T, c).is_zero():
            raise PreconditionError("infinitesimals must be closed")
    x = solve(wp_matrix(S, T), (c2.coeffs - c1.coeffs).entries())
    if x is None:
        return None
    return DenseTensor.from_flat((S.dim, S.dim), x)
