"""Twisted Rota-Baxter operators T: V -> g, their graphs, morphisms and transformations."""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import (
    LinearOperator,
    Representation,
    ThreeLeibnizAlgebra,
    _require,
    adjoint_rep,
    check_3leibniz,
    check_representation,
)
from .cohomology import G_TO_V, Cochain, as_phi, coboundary, is_cocycle, twisted_semidirect_unchecked
from .errors import PreconditionError, ShapeError
from .exactla import DenseTensor, einsum, rank
from .multilinear import Op, Var, evaluate
from .report import Report, timed


@dataclass(frozen=True, eq=False)
class TwistedSetup:
    """A representation together with a 2-cocycle phi: g g g -> V."""

    rep: Representation
    phi: DenseTensor

    def __post_init__(self):
        object.__setattr__(self, "phi", as_phi(self.phi, self.rep))

    @classmethod
    def make(cls, rep: Representation, phi, validate: bool = True) -> "TwistedSetup":
        t = as_phi(phi, rep)
        if validate:
            _require(check_3leibniz(rep.algebra), "base bracket is not 3-Leibniz")
            _require(check_representation(rep), "not a representation")
            if not is_cocycle(Cochain(2, G_TO_V, t, rep)):
                raise PreconditionError("phi is not a 2-cocycle")
        return cls(rep, t)

    @property
    def algebra(self) -> ThreeLeibnizAlgebra:
        return self.rep.algebra

    @property
    def dim(self) -> int:
        return self.rep.dim

    @property
    def dimV(self) -> int:
        return self.rep.dimV

    @property
    def phi_op(self) -> Op:
        return Op(self.phi, "phi")

    def with_phi(self, phi) -> "TwistedSetup":
        return TwistedSetup(self.rep, as_phi(phi, self.rep))


def _check_T(S: TwistedSetup, T: LinearOperator):
    if (T.dst_dim, T.src_dim) != (S.dim, S.dimV):
        raise ShapeError(f"T must be a {S.dim}x{S.dimV} matrix (V -> g), got {T.dst_dim}x{T.src_dim}")


def induced_bracket_expr(S: TwistedSetup, T: LinearOperator, u, v, w):
    t = T.op
    rl, rm, rr = S.rep.ops
    phi = S.phi_op
    return (rl(t(u), t(v), w) + rm(t(u), v, t(w)) + rr(u, t(v), t(w))
            + phi(t(u), t(v), t(w)))


def trbo_sides(S: TwistedSetup, T: LinearOperator):
    """Both sides of the twisted Rota-Baxter identity as tensors over (u, v, w)."""
    _check_T(S, T)
    m = S.dimV
    u, v, w = (Var(n, m) for n in "uvw")
    t = T.op
    mu = S.algebra.mu
    order = [u, v, w]
    lhs = evaluate(mu(t(u), t(v), t(w)), order)
    rhs = evaluate(t(induced_bracket_expr(S, T, u, v, w)), order)
    return lhs, rhs


def check_trbo(S: TwistedSetup, T: LinearOperator) -> Report:
    rep = Report(name="check-trbo")
    with timed(rep):
        lhs, rhs = trbo_sides(S, T)
        rep.compare("twisted_rota_baxter", lhs, rhs)
    return rep


def trbo_defect(S: TwistedSetup, T: LinearOperator) -> DenseTensor:
    """[Tu,Tv,Tw] minus T(rho-sum + phi-term), shape [m, m, m, d]."""
    lhs, rhs = trbo_sides(S, T)
    return lhs - rhs


def _require_trbo(S: TwistedSetup, T: LinearOperator):
    _require(check_trbo(S, T), "T is not a twisted Rota-Baxter operator")


def induced_bracket_unchecked(S: TwistedSetup, T: LinearOperator) -> ThreeLeibnizAlgebra:
    _check_T(S, T)
    m = S.dimV
    u, v, w = (Var(n, m) for n in "uvw")
    return ThreeLeibnizAlgebra(m, evaluate(induced_bracket_expr(S, T, u, v, w), [u, v, w]))


def induced_bracket(S: TwistedSetup, T: LinearOperator) -> ThreeLeibnizAlgebra:
    """The bracket [u,v,w]_T on V; T is then a morphism onto its image."""
    _require_trbo(S, T)
    B = induced_bracket_unchecked(S, T)
    _require(check_3leibniz(B), "induced bracket fails the fundamental identity")
    m = S.dimV
    u, v, w = (Var(n, m) for n in "uvw")
    t = T.op
    hom = Report(name="induced-morphism")
    hom.compare("morphism", evaluate(t(B.mu(u, v, w)), [u, v, w]),
                evaluate(S.algebra.mu(t(u), t(v), t(w)), [u, v, w]))
    _require(hom, "T is not a morphism of the induced bracket")
    return B


def graph_embedding(T: LinearOperator) -> DenseTensor:
    """Matrix (d+m) x m whose columns are Tu + u for basis vectors u."""
    d, m = T.dst_dim, T.src_dim
    return DenseTensor.from_array(
        [[T.matrix[i, j] for j in range(m)] for i in range(d)]
        + [[int(i == j) for j in range(m)] for i in range(m)])


def subspace_closed(W: ThreeLeibnizAlgebra, E: DenseTensor) -> bool:
    """Whether the column span of E is closed under the bracket of W."""
    k = E.shape[1]
    prods = einsum(W.bracket, [0, 1, 2, 3], E, [0, 4], E, [1, 5], E, [2, 6], out=[3, 4, 5, 6])
    prods = prods.reshape(W.dim, k ** 3)
    aug = DenseTensor.from_array(
        [[E[i, j] for j in range(k)] + [prods[i, c] for c in range(k ** 3)] for i in range(W.dim)])
    return rank(aug) == rank(E)


def check_graph_subalgebra(S: TwistedSetup, T: LinearOperator) -> bool:
    """Whether {Tu + u} is a subalgebra of the twisted semidirect product."""
    _check_T(S, T)
    W = twisted_semidirect_unchecked(S.rep, S.phi)
    return subspace_closed(W, graph_embedding(T))


def _lin_compare(rep: Report, tag: str, lhs, rhs, order):
    rep.compare(tag, evaluate(lhs, order), evaluate(rhs, order))


def check_algebra_morphism(A: ThreeLeibnizAlgebra, B: ThreeLeibnizAlgebra, f: LinearOperator,
                           report: Report | None = None) -> Report:
    rep = report or Report(name="check-algebra-morphism")
    if (f.dst_dim, f.src_dim) != (B.dim, A.dim):
        raise ShapeError("morphism has wrong shape")
    x, y, z = (Var(n, A.dim) for n in "xyz")
    F = f.op
    _lin_compare(rep, "bracket_morphism", F(A.mu(x, y, z)), B.mu(F(x), F(y), F(z)), [x, y, z])
    return rep


def check_morphism(S: TwistedSetup, S2: TwistedSetup, T: LinearOperator, T2: LinearOperator,
                   f: LinearOperator, g: LinearOperator) -> Report:
    """Morphism (f, g) from T in S to T2 in S2."""
    _check_T(S, T)
    _check_T(S2, T2)
    if (f.dst_dim, f.src_dim) != (S2.dim, S.dim) or (g.dst_dim, g.src_dim) != (S2.dimV, S.dimV):
        raise ShapeError("morphism maps have wrong shapes")
    rep = Report(name="check-morphism")
    with timed(rep):
        check_algebra_morphism(S.algebra, S2.algebra, f, rep)
        d, m = S.dim, S.dimV
        x, y, z = (Var(n, d) for n in "xyz")
        u = Var("u", m)
        F, G = f.op, g.op
        rl, rm, rr = S.rep.ops
        rl2, rm2, rr2 = S2.rep.ops
        _lin_compare(rep, "left_action", G(rl(x, y, u)), rl2(F(x), F(y), G(u)), [x, y, u])
        _lin_compare(rep, "middle_action", G(rm(x, u, y)), rm2(F(x), G(u), F(y)), [x, u, y])
        _lin_compare(rep, "right_action", G(rr(u, x, y)), rr2(G(u), F(x), F(y)), [u, x, y])
        _lin_compare(rep, "cocycle", G(S.phi_op(x, y, z)), S2.phi_op(F(x), F(y), F(z)), [x, y, z])
        _lin_compare(rep, "operator_square", F(T.op(u)), T2.op(G(u)), [u])
    return rep


# Nijenhuis and Reynolds ----------------------------------------------------

def _nijenhuis_parts(A: ThreeLeibnizAlgebra, N: LinearOperator):
    if (N.dst_dim, N.src_dim) != (A.dim, A.dim):
        raise ShapeError("N must be a square map on g")
    mu, n = A.mu, N.op
    return mu, n


def nijenhuis_phi_expr(A, N, x, y, z):
    mu, n = _nijenhuis_parts(A, N)
    return -n(mu(x, y, n(z)) + mu(x, n(y), z) + mu(n(x), y, z)) + n(n(mu(x, y, z)))


def nijenhuis_bracket_expr(A, N, x, y, z):
    mu, n = _nijenhuis_parts(A, N)
    return (mu(x, n(y), n(z)) + mu(n(x), y, n(z)) + mu(n(x), n(y), z)
            + nijenhuis_phi_expr(A, N, x, y, z))


def check_nijenhuis(A: ThreeLeibnizAlgebra, N: LinearOperator) -> Report:
    mu, n = _nijenhuis_parts(A, N)
    x, y, z = (Var(s, A.dim) for s in "xyz")
    rep = Report(name="check-nijenhuis")
    with timed(rep):
        _lin_compare(rep, "nijenhuis", mu(n(x), n(y), n(z)),
                     n(nijenhuis_bracket_expr(A, N, x, y, z)), [x, y, z])
    return rep


@dataclass(frozen=True, eq=False)
class NijenhuisPackage:
    deformed: ThreeLeibnizAlgebra
    rep: Representation
    phi: DenseTensor
    setup: TwistedSetup
    witness: Report


def nijenhuis_package(A: ThreeLeibnizAlgebra, N: LinearOperator) -> NijenhuisPackage:
    """Deformed bracket g_N, its representation on g, the cocycle phi, and Id as witness."""
    _require(check_nijenhuis(A, N), "N is not a Nijenhuis operator")
    mu, n = _nijenhuis_parts(A, N)
    d = A.dim
    x, y, z = (Var(s, d) for s in "xyz")
    order = [x, y, z]
    gN = ThreeLeibnizAlgebra(d, evaluate(nijenhuis_bracket_expr(A, N, x, y, z), order))
    R = Representation(gN, d,
                       evaluate(mu(n(x), n(y), z), order),
                       evaluate(mu(n(x), y, n(z)), order),
                       evaluate(mu(x, n(y), n(z)), order))
    phi = evaluate(nijenhuis_phi_expr(A, N, x, y, z), order)
    S = TwistedSetup.make(R, phi)
    witness = check_trbo(S, LinearOperator.identity(d))
    _require(witness, "identity is not a twisted Rota-Baxter operator for g_N")
    return NijenhuisPackage(gN, R, phi, S, witness)


def reynolds_setup(A: ThreeLeibnizAlgebra) -> TwistedSetup:
    """Adjoint representation with phi = -bracket."""
    return TwistedSetup(adjoint_rep(A), -A.bracket)


def check_reynolds(A: ThreeLeibnizAlgebra, T: LinearOperator) -> Report:
    rep = check_trbo(reynolds_setup(A), T)
    rep.name = "check-reynolds"
    for v in rep.violations:
        v.equation_tag = "reynolds"
    return rep


# cochain shifts and gauge transformations ---------------------------------

def _one_cochain(S: TwistedSetup, w: LinearOperator) -> Cochain:
    if (w.dst_dim, w.src_dim) != (S.dimV, S.dim):
        raise ShapeError("the 1-cochain must map g -> V")
    return Cochain(1, G_TO_V, w.matrix.transpose(1, 0), S.rep)


def shifted_phi(S: TwistedSetup, w: LinearOperator) -> DenseTensor:
    return S.phi + coboundary(_one_cochain(S, w)).coeffs


def shift_map(S: TwistedSetup, w: LinearOperator) -> LinearOperator:
    """x + u  |->  x + u - w(x) on g + V."""
    d, m = S.dim, S.dimV
    rows = [[int(i == j) for j in range(d + m)] for i in range(d)]
    for i in range(m):
        rows.append([-w.matrix[i, j] for j in range(d)] + [int(i == j) for j in range(m)])
    return LinearOperator.from_rows(rows)


def shift_iso(R: Representation, phi, w: LinearOperator) -> Report:
    """Check that x + u - w(x) is an isomorphism between the phi- and (phi + delta w)-twisted products."""
    S = TwistedSetup.make(R, phi)
    rep = Report(name="shift-iso")
    with timed(rep):
        target = twisted_semidirect_unchecked(R, shifted_phi(S, w))
        source = twisted_semidirect_unchecked(R, S.phi)
        f = shift_map(S, w)
        check_algebra_morphism(source, target, f, rep)
        rep.require("invertible", f.rank() == R.dim + R.dimV)
    return rep


def shift_trbo(S: TwistedSetup, T: LinearOperator, w: LinearOperator) -> LinearOperator | None:
    """T (Id - w T)^-1, a (phi + delta w)-twisted operator; None when Id - w T is singular."""
    _require_trbo(S, T)
    _one_cochain(S, w)
    M = LinearOperator.identity(S.dimV) - w.compose(T)
    Mi = M.inverse()
    if Mi is None:
        return None
    T2 = T.compose(Mi)
    _require(check_trbo(S.with_phi(shifted_phi(S, w)), T2), "shifted operator fails the identity")
    return T2


def gauge_transform(S: TwistedSetup, T: LinearOperator, w: LinearOperator) -> LinearOperator | None:
    """T (Id + w T)^-1 for a 1-cocycle w; None when w is not T-admissible."""
    _require_trbo(S, T)
    c = _one_cochain(S, w)
    if not is_cocycle(c):
        raise PreconditionError("w is not a 1-cocycle")
    M = LinearOperator.identity(S.dimV) + w.compose(T)
    Mi = M.inverse()
    if Mi is None:
        return None
    Tw = T.compose(Mi)
    _require(check_trbo(S, Tw), "gauge transform fails the identity")
    iso = check_algebra_morphism(induced_bracket_unchecked(S, T), induced_bracket_unchecked(S, Tw), M)
    _require(iso, "Id + wT is not an isomorphism of induced brackets")
    return Tw


def trbo_from_invertible_cochain(R: Representation, w: LinearOperator) -> tuple[TwistedSetup, LinearOperator]:
    """For invertible w: g -> V, T = w^-1 is a (-delta w)-twisted operator."""
    Wi = w.inverse()
    if Wi is None:
        raise PreconditionError("w is not invertible")
    c = Cochain(1, G_TO_V, w.matrix.transpose(1, 0), R)
    phi = -coboundary(c).coeffs
    return TwistedSetup(R, phi), Wi
