"""3-Leibniz and Leibniz algebras, their representations, and basic constructions."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import PreconditionError, ShapeError
from .exactla import DenseTensor, einsum, inverse, rank
from .multilinear import Op, Var, evaluate
from .report import Report, timed


def _check_shape(t: DenseTensor, shape, what: str):
    if not isinstance(t, DenseTensor):
        raise ShapeError(f"{what} must be a DenseTensor")
    if tuple(t.shape) != tuple(shape):
        raise ShapeError(f"{what} has shape {tuple(t.shape)}, expected {tuple(shape)}")


@dataclass(frozen=True, eq=False)
class ThreeLeibnizAlgebra:
    """``bracket[i, j, k, l]`` is the coefficient of e_l in [e_i, e_j, e_k]."""

    dim: int
    bracket: DenseTensor

    def __post_init__(self):
        _check_shape(self.bracket, (self.dim,) * 4, "3-Leibniz bracket")

    @property
    def mu(self) -> Op:
        return Op(self.bracket, "mu")

    @classmethod
    def abelian(cls, dim: int) -> "ThreeLeibnizAlgebra":
        return cls(dim, DenseTensor.zeros((dim,) * 4))

    def __eq__(self, other):
        return isinstance(other, ThreeLeibnizAlgebra) and self.dim == other.dim and self.bracket == other.bracket

    __hash__ = None


@dataclass(frozen=True, eq=False)
class LeibnizAlgebra:
    dim: int
    bracket: DenseTensor

    def __post_init__(self):
        _check_shape(self.bracket, (self.dim,) * 3, "Leibniz bracket")

    @property
    def op(self) -> Op:
        return Op(self.bracket, "bracket")

    def __eq__(self, other):
        return isinstance(other, LeibnizAlgebra) and self.dim == other.dim and self.bracket == other.bracket

    __hash__ = None


@dataclass(frozen=True, eq=False)
class Representation:
    """Actions rho_l: g g V -> V, rho_m: g V g -> V, rho_r: V g g -> V."""

    algebra: ThreeLeibnizAlgebra
    dimV: int
    rho_l: DenseTensor
    rho_m: DenseTensor
    rho_r: DenseTensor

    def __post_init__(self):
        d, m = self.algebra.dim, self.dimV
        _check_shape(self.rho_l, (d, d, m, m), "rho_l")
        _check_shape(self.rho_m, (d, m, d, m), "rho_m")
        _check_shape(self.rho_r, (m, d, d, m), "rho_r")

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def ops(self) -> tuple[Op, Op, Op]:
        return Op(self.rho_l, "rho_l"), Op(self.rho_m, "rho_m"), Op(self.rho_r, "rho_r")

    @classmethod
    def zero(cls, algebra: ThreeLeibnizAlgebra, dimV: int) -> "Representation":
        d, m = algebra.dim, dimV
        return cls(algebra, m, DenseTensor.zeros((d, d, m, m)),
                   DenseTensor.zeros((d, m, d, m)), DenseTensor.zeros((m, d, d, m)))

    def __eq__(self, other):
        return (isinstance(other, Representation) and self.algebra == other.algebra
                and self.dimV == other.dimV and self.rho_l == other.rho_l
                and self.rho_m == other.rho_m and self.rho_r == other.rho_r)

    __hash__ = None


@dataclass(frozen=True, eq=False)
class LeibnizRepresentation:
    algebra: LeibnizAlgebra
    dimV: int
    rho_L: DenseTensor
    rho_R: DenseTensor

    def __post_init__(self):
        d, m = self.algebra.dim, self.dimV
        _check_shape(self.rho_L, (d, m, m), "rho_L")
        _check_shape(self.rho_R, (m, d, m), "rho_R")


@dataclass(frozen=True, eq=False)
class LinearOperator:
    """A linear map stored as a (dst_dim x src_dim) matrix."""

    matrix: DenseTensor

    def __post_init__(self):
        if not isinstance(self.matrix, DenseTensor) or self.matrix.ndim != 2:
            raise ShapeError("operator matrix must be a 2-d DenseTensor")

    @property
    def dst_dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def src_dim(self) -> int:
        return self.matrix.shape[1]

    @property
    def op(self) -> Op:
        return Op(self.matrix.transpose(1, 0), "map")

    @classmethod
    def from_rows(cls, rows) -> "LinearOperator":
        return cls(DenseTensor.from_array(rows))

    @classmethod
    def identity(cls, n: int) -> "LinearOperator":
        return cls(DenseTensor.identity(n))

    @classmethod
    def zero(cls, dst: int, src: int) -> "LinearOperator":
        return cls(DenseTensor.zeros((dst, src)))

    def compose(self, other: "LinearOperator") -> "LinearOperator":
        """self after other."""
        return LinearOperator(einsum(self.matrix, [0, 1], other.matrix, [1, 2], out=[0, 2]))

    def __add__(self, other):
        return LinearOperator(self.matrix + other.matrix)

    def __sub__(self, other):
        return LinearOperator(self.matrix - other.matrix)

    def __neg__(self):
        return LinearOperator(-self.matrix)

    def scale(self, c) -> "LinearOperator":
        return LinearOperator(self.matrix.scale(c))

    def rank(self) -> int:
        return rank(self.matrix)

    def inverse(self) -> "LinearOperator | None":
        inv = inverse(self.matrix)
        return None if inv is None else LinearOperator(inv)

    def __eq__(self, other):
        return isinstance(other, LinearOperator) and self.matrix == other.matrix

    __hash__ = None


# identity checks -----------------------------------------------------------

def _bracket_tensor(c) -> DenseTensor:
    return c.bracket if isinstance(c, (ThreeLeibnizAlgebra, LeibnizAlgebra)) else c


def fundamental_identity_sides(mu: Op, d: int):
    a, b, x, y, z = (Var(n, d) for n in "abxyz")
    lhs = mu(a, b, mu(x, y, z))
    rhs = mu(mu(a, b, x), y, z) + mu(x, mu(a, b, y), z) + mu(x, y, mu(a, b, z))
    order = [a, b, x, y, z]
    return evaluate(lhs, order), evaluate(rhs, order)


def check_3leibniz(c) -> Report:
    """Check the fundamental identity on every basis 5-tuple (a, b, x, y, z)."""
    t = _bracket_tensor(c)
    if not isinstance(t, DenseTensor) or t.ndim != 4 or len(set(t.shape)) != 1:
        raise ShapeError("3-Leibniz bracket must have shape [d, d, d, d]")
    rep = Report(name="check-3leibniz")
    with timed(rep):
        lhs, rhs = fundamental_identity_sides(Op(t, "mu"), t.shape[0])
        rep.compare("fundamental_identity", lhs, rhs)
    return rep


def check_leibniz(c) -> Report:
    """Check [x,[y,z]] = [[x,y],z] + [y,[x,z]] on every basis triple."""
    t = _bracket_tensor(c)
    if not isinstance(t, DenseTensor) or t.ndim != 3 or len(set(t.shape)) != 1:
        raise ShapeError("Leibniz bracket must have shape [d, d, d]")
    d = t.shape[0]
    br = Op(t, "bracket")
    x, y, z = (Var(n, d) for n in "xyz")
    rep = Report(name="check-leibniz")
    with timed(rep):
        order = [x, y, z]
        rep.compare("left_leibniz",
                    evaluate(br(x, br(y, z)), order),
                    evaluate(br(br(x, y), z) + br(y, br(x, z)), order))
    return rep


def representation_identities(mu: Op, rl: Op, rm: Op, rr: Op, d: int, m: int):
    """Yield ``(tag, lhs, rhs)`` for the five representation identities."""
    a, b, x, y, z = (Var(n, d) for n in "abxyz")
    u = Var("u", m)
    yield ("left_left", [a, b, x, y, u],
           rl(a, b, rl(x, y, u)),
           rl(mu(a, b, x), y, u) + rl(x, mu(a, b, y), u) + rl(x, y, rl(a, b, u)))
    yield ("left_middle", [a, b, x, u, z],
           rl(a, b, rm(x, u, z)),
           rm(mu(a, b, x), u, z) + rm(x, rl(a, b, u), z) + rm(x, u, mu(a, b, z)))
    yield ("left_right", [a, b, u, y, z],
           rl(a, b, rr(u, y, z)),
           rr(rl(a, b, u), y, z) + rr(u, mu(a, b, y), z) + rr(u, y, mu(a, b, z)))
    yield ("middle_bracket", [a, u, x, y, z],
           rm(a, u, mu(x, y, z)),
           rr(rm(a, u, x), y, z) + rm(x, rm(a, u, y), z) + rl(x, y, rm(a, u, z)))
    yield ("right_bracket", [u, b, x, y, z],
           rr(u, b, mu(x, y, z)),
           rr(rr(u, b, x), y, z) + rm(x, rr(u, b, y), z) + rl(x, y, rr(u, b, z)))


def check_representation(R: Representation) -> Report:
    rep = Report(name="check-rep")
    rl, rm, rr = R.ops
    with timed(rep):
        for tag, order, lhs, rhs in representation_identities(R.algebra.mu, rl, rm, rr, R.dim, R.dimV):
            rep.compare(tag, evaluate(lhs, order), evaluate(rhs, order))
    return rep


def check_leibniz_representation(LR: LeibnizRepresentation) -> Report:
    d, m = LR.algebra.dim, LR.dimV
    br = LR.algebra.op
    L, Rt = Op(LR.rho_L, "rho_L"), Op(LR.rho_R, "rho_R")
    x, y = Var("x", d), Var("y", d)
    u = Var("u", m)
    rep = Report(name="check-leibniz-rep")
    with timed(rep):
        order = [x, y, u]
        rep.compare("leibniz_left_left", evaluate(L(x, L(y, u)), order),
                    evaluate(L(br(x, y), u) + L(y, L(x, u)), order))
        order = [x, u, y]
        rep.compare("leibniz_left_right", evaluate(L(x, Rt(u, y)), order),
                    evaluate(Rt(L(x, u), y) + Rt(u, br(x, y)), order))
        order = [u, x, y]
        rep.compare("leibniz_right_bracket", evaluate(Rt(u, br(x, y)), order),
                    evaluate(Rt(Rt(u, x), y) + L(x, Rt(u, y)), order))
    return rep


def _require(report: Report, what: str):
    if not report.ok:
        raise PreconditionError(f"{what}\n{report.to_text()}", report)


# constructions -------------------------------------------------------------

def threeleibniz_from_leibniz(L: LeibnizAlgebra) -> ThreeLeibnizAlgebra:
    """[x, y, z] = [[x, y], z]."""
    _require(check_leibniz(L), "input is not a Leibniz algebra")
    d = L.dim
    br = L.op
    x, y, z = (Var(n, d) for n in "xyz")
    return ThreeLeibnizAlgebra(d, evaluate(br(br(x, y), z), [x, y, z]))


def leibniz_on_tensor_square(A: ThreeLeibnizAlgebra) -> LeibnizAlgebra:
    """Leibniz bracket on g (x) g, basis e_i (x) e_j at flat index i*dim + j."""
    _require(check_3leibniz(A), "input is not a 3-Leibniz algebra")
    d = A.dim
    I = DenseTensor.identity(d)
    # [x1(x)x2, y1(x)y2] = [x1,x2,y1](x)y2 + y1(x)[x1,x2,y2]
    t1 = einsum(A.bracket, [0, 1, 2, 4], I, [3, 5], out=[0, 1, 2, 3, 4, 5])
    t2 = einsum(I, [2, 4], A.bracket, [0, 1, 3, 5], out=[0, 1, 2, 3, 4, 5])
    return LeibnizAlgebra(d * d, (t1 + t2).reshape(d * d, d * d, d * d))


def adjoint_rep(A: ThreeLeibnizAlgebra) -> Representation:
    c = A.bracket
    return Representation(A, A.dim, c, c, c)


def semidirect_product(R: Representation) -> ThreeLeibnizAlgebra:
    _require(check_representation(R), "input is not a representation")
    return _semidirect(R, None)


def _semidirect(R: Representation, phi: DenseTensor | None) -> ThreeLeibnizAlgebra:
    """Bracket on g + V (g first); ``phi`` is an optional g g g -> V term."""
    d, m = R.dim, R.dimV
    n = d + m
    num = DenseTensor.zeros((n,) * 4).num.copy()
    parts = [
        (R.algebra.bracket, (slice(0, d), slice(0, d), slice(0, d), slice(0, d))),
        (R.rho_l, (slice(0, d), slice(0, d), slice(d, n), slice(d, n))),
        (R.rho_m, (slice(0, d), slice(d, n), slice(0, d), slice(d, n))),
        (R.rho_r, (slice(d, n), slice(0, d), slice(0, d), slice(d, n))),
    ]
    if phi is not None:
        parts.append((phi, (slice(0, d), slice(0, d), slice(0, d), slice(d, n))))
    from math import lcm
    den = 1
    for t, _ in parts:
        den = lcm(den, t.den)
    for t, sl in parts:
        num[sl] = num[sl] + t.num * (den // t.den)
    return ThreeLeibnizAlgebra(n, DenseTensor(num, den))


def rep_from_leibniz_rep(LR: LeibnizRepresentation, form: str = "corrected") -> Representation:
    """Representation of the 3-Leibniz algebra [[x, y], z] built from a Leibniz one.

    rho_l(x,y,u) = L([x,y],u) and rho_m(x,u,y) = R(L(x,u),y). The right action
    is R(R(u,x),y) in the default ``"corrected"`` form, which is what the
    Leibniz semidirect product induces; ``"printed"`` uses R(u,[x,y]), which
    satisfies the identities only when L(x, R(u, y)) vanishes.
    """
    if form not in ("corrected", "printed"):
        raise ValueError(f"unknown form {form!r}")
    _require(check_leibniz_representation(LR), "input is not a Leibniz representation")
    A = threeleibniz_from_leibniz(LR.algebra)
    d, m = LR.algebra.dim, LR.dimV
    br = LR.algebra.op
    L, Rt = Op(LR.rho_L, "rho_L"), Op(LR.rho_R, "rho_R")
    x, y = Var("x", d), Var("y", d)
    u = Var("u", m)
    right = Rt(Rt(u, x), y) if form == "corrected" else Rt(u, br(x, y))
    return Representation(
        A, m,
        evaluate(L(br(x, y), u), [x, y, u]),
        evaluate(Rt(L(x, u), y), [x, u, y]),
        evaluate(right, [u, x, y]),
    )


def transport_algebra(A: ThreeLeibnizAlgebra, P: LinearOperator) -> ThreeLeibnizAlgebra:
    """The bracket carried along an invertible change of basis P (new = P old)."""
    Pi = P.inverse()
    if Pi is None:
        raise PreconditionError("change of basis is singular")
    d = A.dim
    x, y, z = (Var(n, d) for n in "xyz")
    mu, p, pi = A.mu, P.op, Pi.op
    return ThreeLeibnizAlgebra(d, evaluate(p(mu(pi(x), pi(y), pi(z))), [x, y, z]))


def transport_representation(R: Representation, P: LinearOperator, Q: LinearOperator) -> Representation:
    """Representation carried along P on g and Q on V (both invertible)."""
    Pi, Qi = P.inverse(), Q.inverse()
    if Pi is None or Qi is None:
        raise PreconditionError("change of basis is singular")
    A = transport_algebra(R.algebra, P)
    d, m = R.dim, R.dimV
    x, y = Var("x", d), Var("y", d)
    u = Var("u", m)
    rl, rm, rr = R.ops
    pi, q, qi = Pi.op, Q.op, Qi.op
    return Representation(
        A, m,
        evaluate(q(rl(pi(x), pi(y), qi(u))), [x, y, u]),
        evaluate(q(rm(pi(x), qi(u), pi(y))), [x, u, y]),
        evaluate(q(rr(qi(u), pi(x), pi(y))), [u, x, y]),
    )
