"""NS-3-Leibniz algebras: four ternary products whose sum is 3-Leibniz."""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import (
    LinearOperator,
    Representation,
    ThreeLeibnizAlgebra,
    _require,
    check_3leibniz,
    check_representation,
)
from .cohomology import G_TO_V, Cochain, is_cocycle
from .errors import PreconditionError, ShapeError
from .exactla import DenseTensor, Scalar
from .multilinear import Op, Var, evaluate, evaluate_zero_ok
from .report import Report, timed
from .twisted_rbo import (
    TwistedSetup,
    _nijenhuis_parts,
    check_nijenhuis,
    check_reynolds,
    check_trbo,
    induced_bracket_unchecked,
    nijenhuis_phi_expr,
)

CORRECTED = "corrected"
PRINTED = "printed"

# descriptive names for the six axioms, in order
AXIOM_TAGS = ("right_on_right", "left_on_star", "mid_on_star", "right_on_left",
              "right_on_mid", "diamond_cocycle")
PRINTED_TAG = "right_on_diamond_printed"


@dataclass(frozen=True, eq=False)
class NSAlgebra:
    """Structure constants of the products lt (left), rt (right), md (middle), dia (diamond)."""

    dim: int
    lt: DenseTensor
    rt: DenseTensor
    md: DenseTensor
    dia: DenseTensor

    def __post_init__(self):
        want = (self.dim,) * 4
        for name in ("lt", "rt", "md", "dia"):
            t = getattr(self, name)
            if not isinstance(t, DenseTensor) or tuple(t.shape) != want:
                raise ShapeError(f"{name} must have shape {want}")

    @property
    def star(self) -> DenseTensor:
        return self.lt + self.rt + self.md + self.dia

    @property
    def ops(self):
        return (Op(self.lt, "lt"), Op(self.rt, "rt"), Op(self.md, "md"), Op(self.dia, "dia"),
                Op(self.star, "star"))

    def __eq__(self, other):
        return (isinstance(other, NSAlgebra) and self.dim == other.dim and self.lt == other.lt
                and self.rt == other.rt and self.md == other.md and self.dia == other.dia)

    __hash__ = None

    @classmethod
    def zero(cls, dim: int) -> "NSAlgebra":
        z = DenseTensor.zeros((dim,) * 4)
        return cls(dim, z, z, z, z)


def ns_axioms(A: NSAlgebra, mode: str = CORRECTED):
    """(tag, lhs, rhs) expressions over (a, b, x, y, z)."""
    if mode not in (CORRECTED, PRINTED):
        raise ValueError(f"mode must be {CORRECTED!r} or {PRINTED!r}")
    lt, rt, md, dia, st = A.ops
    a, b, x, y, z = (Var(s, A.dim) for s in "abxyz")
    out = [
        ("right_on_right", rt(a, b, rt(x, y, z)),
         rt(st(a, b, x), y, z) + rt(x, st(a, b, y), z) + rt(x, y, rt(a, b, z))),
        ("left_on_star", lt(a, b, st(x, y, z)),
         lt(lt(a, b, x), y, z) + md(x, lt(a, b, y), z) + rt(x, y, lt(a, b, z))),
        ("mid_on_star", md(a, b, st(x, y, z)),
         lt(md(a, b, x), y, z) + md(x, md(a, b, y), z) + rt(x, y, md(a, b, z))),
        ("right_on_left", rt(a, b, lt(x, y, z)),
         lt(rt(a, b, x), y, z) + lt(x, st(a, b, y), z) + lt(x, y, st(a, b, z))),
    ]
    if mode == CORRECTED:
        out.append(("right_on_mid", rt(a, b, md(x, y, z)),
                    md(st(a, b, x), y, z) + md(x, rt(a, b, y), z) + md(x, y, st(a, b, z))))
    else:
        out.append((PRINTED_TAG, rt(a, b, dia(x, y, z)),
                    lt(rt(a, b, x), y, z) + lt(x, st(a, b, y), z) + lt(x, y, st(a, b, z))))
    out.append(("diamond_cocycle", dia(a, b, st(x, y, z)) + rt(a, b, dia(x, y, z)),
                rt(x, y, dia(a, b, z)) + dia(x, y, st(a, b, z)) + md(x, dia(a, b, y), z)
                + dia(x, st(a, b, y), z) + dia(st(a, b, x), y, z) + lt(dia(a, b, x), y, z)))
    return out, [a, b, x, y, z]


def check_ns(A: NSAlgebra, mode: str = CORRECTED) -> Report:
    rep = Report(name="check-ns")
    with timed(rep):
        axioms, order = ns_axioms(A, mode)
        for tag, lhs, rhs in axioms:
            rep.compare(tag, evaluate(lhs, order), evaluate(rhs, order))
    return rep


def subadjacent(A: NSAlgebra) -> ThreeLeibnizAlgebra:
    _require(check_ns(A), "not an NS-3-Leibniz algebra")
    out = ThreeLeibnizAlgebra(A.dim, A.star)
    _require(check_3leibniz(out), "subadjacent bracket is not 3-Leibniz")
    return out


@dataclass(frozen=True, eq=False)
class NSPackage:
    rep: Representation
    phi: DenseTensor
    setup: TwistedSetup
    witness: Report


def ns_canonical_package(A: NSAlgebra) -> NSPackage:
    """Representation (rt, md, lt) of the subadjacent algebra on itself, phi = dia, witness T = Id."""
    G = subadjacent(A)
    R = Representation(G, A.dim, A.rt, A.md, A.lt)
    _require(check_representation(R), "canonical actions do not form a representation")
    if not is_cocycle(Cochain(2, G_TO_V, A.dia, R)):
        raise PreconditionError("diamond product is not a 2-cocycle")
    S = TwistedSetup(R, A.dia)
    witness = check_trbo(S, LinearOperator.identity(A.dim))
    _require(witness, "identity is not a twisted Rota-Baxter operator")
    return NSPackage(R, A.dia, S, witness)


def _ns_from_exprs(dim, lt, rt, md, dia, order) -> NSAlgebra:
    return NSAlgebra(dim, *(evaluate_zero_ok(e, order, dim) for e in (lt, rt, md, dia)))


def ns_from_trbo_unchecked(S: TwistedSetup, T: LinearOperator) -> NSAlgebra:
    rl, rm, rr = S.rep.ops
    phi, t = S.phi_op, T.op
    u, v, w = (Var(s, S.dimV) for s in "uvw")
    return _ns_from_exprs(S.dimV, rr(u, t(v), t(w)), rl(t(u), t(v), w), rm(t(u), v, t(w)),
                          phi(t(u), t(v), t(w)), [u, v, w])


def ns_from_trbo(S: TwistedSetup, T: LinearOperator) -> NSAlgebra:
    """lt = rho_r(u,Tv,Tw), md = rho_m(Tu,v,Tw), rt = rho_l(Tu,Tv,w), dia = phi(Tu,Tv,Tw)."""
    _require(check_trbo(S, T), "T is not a twisted Rota-Baxter operator")
    out = ns_from_trbo_unchecked(S, T)
    _require(check_ns(out), "constructed products fail the NS axioms")
    if out.star != induced_bracket_unchecked(S, T).bracket:
        raise PreconditionError("subadjacent bracket differs from the induced bracket")
    return out


def ns_from_nijenhuis(A: ThreeLeibnizAlgebra, N: LinearOperator) -> NSAlgebra:
    _require(check_nijenhuis(A, N), "N is not a Nijenhuis operator")
    mu, n = _nijenhuis_parts(A, N)
    x, y, z = (Var(s, A.dim) for s in "xyz")
    out = _ns_from_exprs(A.dim, mu(x, n(y), n(z)), mu(n(x), n(y), z), mu(n(x), y, n(z)),
                         nijenhuis_phi_expr(A, N, x, y, z), [x, y, z])
    _require(check_ns(out), "constructed products fail the NS axioms")
    return out


def ns_from_reynolds(A: ThreeLeibnizAlgebra, T: LinearOperator) -> NSAlgebra:
    _require(check_reynolds(A, T), "T is not a Reynolds operator")
    mu, t = A.mu, T.op
    x, y, z = (Var(s, A.dim) for s in "xyz")
    out = _ns_from_exprs(A.dim, mu(x, t(y), t(z)), mu(t(x), t(y), z), mu(t(x), y, t(z)),
                         -mu(t(x), t(y), t(z)), [x, y, z])
    _require(check_ns(out), "constructed products fail the NS axioms")
    return out


def _weighted_inner(A: ThreeLeibnizAlgebra, B: LinearOperator, lam: Scalar, x, y, z):
    mu, b = A.mu, B.op
    return (mu(x, b(y), b(z)) + mu(b(x), y, b(z)) + mu(b(x), b(y), z)
            + lam * (mu(x, y, b(z)) + mu(b(x), y, z) + mu(x, b(y), z)) + (lam * lam) * mu(x, y, z))


def _check_endo(A: ThreeLeibnizAlgebra, B: LinearOperator):
    if (B.dst_dim, B.src_dim) != (A.dim, A.dim):
        raise ShapeError(f"operator must be {A.dim}x{A.dim}")


def check_weighted_rbo(A: ThreeLeibnizAlgebra, B: LinearOperator, lam) -> Report:
    _check_endo(A, B)
    lam = Scalar(lam)
    x, y, z = (Var(s, A.dim) for s in "xyz")
    b = B.op
    rep = Report(name="check-weighted-rbo")
    with timed(rep):
        order = [x, y, z]
        rep.compare("weighted_rota_baxter", evaluate(A.mu(b(x), b(y), b(z)), order),
                    evaluate(b(_weighted_inner(A, B, lam, x, y, z)), order))
    return rep


def ns_from_weighted_rbo(A: ThreeLeibnizAlgebra, B: LinearOperator, lam) -> NSAlgebra:
    lam = Scalar(lam)
    _require(check_weighted_rbo(A, B, lam), "B is not a Rota-Baxter operator of the given weight")
    mu, b = A.mu, B.op
    x, y, z = (Var(s, A.dim) for s in "xyz")
    dia = lam * (mu(x, y, b(z)) + mu(b(x), y, z) + mu(x, b(y), z)) + (lam * lam) * mu(x, y, z)
    out = _ns_from_exprs(A.dim, mu(x, b(y), b(z)), mu(b(x), b(y), z), mu(b(x), y, b(z)), dia,
                         [x, y, z])
    _require(check_ns(out), "constructed products fail the NS axioms")
    return out


def compatible_ns_from_invertible_trbo(S: TwistedSetup, T: LinearOperator) -> NSAlgebra:
    """NS products on g whose sum is the original bracket, for an invertible T."""
    _require(check_trbo(S, T), "T is not a twisted Rota-Baxter operator")
    Ti = T.inverse()
    if Ti is None:
        raise PreconditionError("T is not invertible")
    rl, rm, rr = S.rep.ops
    t, ti, phi = T.op, Ti.op, S.phi_op
    x, y, z = (Var(s, S.dim) for s in "xyz")
    out = _ns_from_exprs(S.dim, t(rr(ti(x), y, z)), t(rl(x, y, ti(z))), t(rm(x, ti(y), z)),
                         t(phi(x, y, z)), [x, y, z])
    _require(check_ns(out), "constructed products fail the NS axioms")
    if out.star != S.algebra.bracket:
        raise PreconditionError("subadjacent bracket differs from the original bracket")
    return out


def ns3lie_diagnostic(A: NSAlgebra) -> Report:
    """The NS-3-Lie reduction conditions: rt skew in its first two slots, md and lt cyclic shifts of rt."""
    rep = Report(name="ns3lie-diagnostic")
    with timed(rep):
        rep.compare("right_skew", A.rt, -A.rt.transpose(1, 0, 2, 3))
        # md(x,y,z) = rt(z,x,y) and lt(x,y,z) = rt(y,z,x)
        rep.compare("middle_cyclic", A.md, A.rt.transpose(1, 2, 0, 3))
        rep.compare("left_cyclic", A.lt, A.rt.transpose(2, 0, 1, 3))
    return rep
