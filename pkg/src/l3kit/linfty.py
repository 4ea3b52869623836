"""The graded Lie bracket on pair-structured cochains of W = g + V and derived brackets.

A degree-p element is a map with p input pairs followed by one single input,
stored as a tensor with 2p+1 input axes and one output axis, all of size
dim W. In W the g-coordinates come first.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import factorial

import numpy as np

from .algebra import LinearOperator, _require, _semidirect
from .cohomology import V_TO_G, Cochain
from .errors import PreconditionError, ShapeError
from .exactla import DenseTensor
from .twisted_rbo import TwistedSetup, check_trbo


@dataclass(frozen=True, eq=False)
class GradedElement:
    degree: int
    coeffs: DenseTensor

    def __post_init__(self):
        if self.degree < 0:
            raise ShapeError("graded elements of negative degree are not supported here")
        if self.coeffs.ndim != 2 * self.degree + 2 or len(set(self.coeffs.shape)) > 1:
            raise ShapeError(f"degree {self.degree} needs {2 * self.degree + 2} axes of equal size")

    @property
    def space_dim(self) -> int:
        return self.coeffs.shape[0]

    @classmethod
    def zero(cls, degree: int, W: int) -> "GradedElement":
        return cls(degree, DenseTensor.zeros((W,) * (2 * degree + 2)))

    def __add__(self, other):
        _same(self, other)
        return GradedElement(self.degree, self.coeffs + other.coeffs)

    def __sub__(self, other):
        _same(self, other)
        return GradedElement(self.degree, self.coeffs - other.coeffs)

    def __neg__(self):
        return GradedElement(self.degree, -self.coeffs)

    def scale(self, c) -> "GradedElement":
        return GradedElement(self.degree, self.coeffs.scale(c))

    def is_zero(self) -> bool:
        return self.coeffs.is_zero()

    def __eq__(self, other):
        return (isinstance(other, GradedElement) and self.degree == other.degree
                and self.coeffs == other.coeffs)

    __hash__ = None


def _same(a: GradedElement, b: GradedElement):
    if a.degree != b.degree or a.space_dim != b.space_dim:
        raise ShapeError("degree or dimension mismatch")


def shuffles(n: int, k: int):
    """(first block positions, second block positions, sign) over (k, n-k)-shuffles."""
    for A in combinations(range(n), k):
        Aset = set(A)
        B = [i for i in range(n) if i not in Aset]
        inv = sum(a - i for i, a in enumerate(A))
        yield list(A), B, (-1 if inv % 2 else 1)


def circle(P: GradedElement, Q: GradedElement) -> GradedElement:
    """P o Q: insert Q into each pair component and the final slot of P, over shuffles."""
    if P.space_dim != Q.space_dim:
        raise ShapeError("space dimension mismatch")
    W = P.space_dim
    p, q = P.degree, Q.degree
    d = p + q
    X = lambda j: 2 * j          # noqa: E731
    Y = lambda j: 2 * j + 1      # noqa: E731
    x, o, m = 2 * d, 2 * d + 1, 2 * d + 2
    out_labels = list(range(2 * d + 2))
    acc = np.zeros((W,) * (2 * d + 2), dtype=object)
    pn, qn = P.coeffs.num, Q.coeffs.num
    if P.coeffs.is_zero() or Q.coeffs.is_zero():
        return GradedElement.zero(d, W)

    def contract(subP, subQ):
        return np.einsum(pn, subP, qn, subQ, out_labels)

    for k in range(1, p + 1):
        s0 = -1 if ((k - 1) * q) % 2 else 1
        t = k + q - 1
        for A, B, sg in shuffles(k - 1 + q, k - 1):
            head = []
            for i in range(k - 1):
                head += [X(A[i]), Y(A[i])]
            tail = []
            for i in range(k, p):
                tail += [X(i + q), Y(i + q)]
            qhead = []
            for b in B:
                qhead += [X(b), Y(b)]
            c = s0 * sg
            acc += c * contract(head + [m, Y(t)] + tail + [x, o], qhead + [X(t), m])
            acc += c * contract(head + [X(t), m] + tail + [x, o], qhead + [Y(t), m])
    s1 = -1 if (p * q) % 2 else 1
    for A, B, sg in shuffles(d, p):
        subP = []
        for a in A:
            subP += [X(a), Y(a)]
        subQ = []
        for b in B:
            subQ += [X(b), Y(b)]
        acc += (s1 * sg) * contract(subP + [m, o], subQ + [x, m])
    return GradedElement(d, DenseTensor(acc, P.coeffs.den * Q.coeffs.den))


def graded_bracket(P: GradedElement, Q: GradedElement) -> GradedElement:
    """[P, Q] = P o Q - (-1)^(pq) Q o P."""
    s = -1 if (P.degree * Q.degree) % 2 else 1
    a = circle(P, Q)
    b = circle(Q, P)
    return a - b if s == 1 else a + b


# the structure element and lifts ------------------------------------------

@dataclass(frozen=True, eq=False)
class BigStructure:
    setup: TwistedSetup
    pi: GradedElement


def pi_element(S: TwistedSetup) -> GradedElement:
    return GradedElement(1, _semidirect(S.rep, S.phi).bracket)


def build_pi(S: TwistedSetup, verify: bool = True) -> BigStructure:
    """pi = mu + rho_l + rho_m + rho_r + phi on W; checks [pi, pi] = 0."""
    pi = pi_element(S)
    if verify and not graded_bracket(pi, pi).is_zero():
        raise PreconditionError("[pi, pi] is not zero: the setup is not valid")
    return BigStructure(S, pi)


def lift(f: Cochain, d: int, m: int) -> GradedElement:
    """Extend a V -> g cochain by zero on g-inputs; its values land in g."""
    if f.direction != V_TO_G:
        raise ShapeError("lift expects a V -> g cochain")
    W = d + m
    n_in = f.arity
    if tuple(f.coeffs.shape) != (m,) * n_in + (d,):
        raise ShapeError("cochain shape does not match (dim g, dim V)")
    num = np.zeros((W,) * (n_in + 1), dtype=object)
    num[(slice(d, W),) * n_in + (slice(0, d),)] = f.coeffs.num
    return GradedElement(f.n - 1, DenseTensor(num, f.coeffs.den, normalize=False))


def project(E: GradedElement, d: int, m: int) -> Cochain:
    """Restrict to V-inputs and the g-output."""
    n_in = 2 * E.degree + 1
    num = E.coeffs.num[(slice(d, d + m),) * n_in + (slice(0, d),)]
    return Cochain(E.degree + 1, V_TO_G, DenseTensor(np.ascontiguousarray(num), E.coeffs.den))


def operator_cochain(T: LinearOperator) -> Cochain:
    """T: V -> g as a 1-cochain (tensor [V, g])."""
    return Cochain(1, V_TO_G, T.matrix.transpose(1, 0))


def _as_lifted(S: TwistedSetup, a) -> GradedElement:
    if isinstance(a, GradedElement):
        return a
    if isinstance(a, LinearOperator):
        a = operator_cochain(a)
    return lift(a, S.dim, S.dimV)


def nested(S: TwistedSetup, args, pi: GradedElement | None = None) -> GradedElement:
    acc = pi if pi is not None else pi_element(S)
    for a in args:
        acc = graded_bracket(acc, _as_lifted(S, a))
    return acc


def l3(S: TwistedSetup, P, Q, R, pi: GradedElement | None = None) -> Cochain:
    return project(nested(S, (P, Q, R), pi), S.dim, S.dimV)


def l4(S: TwistedSetup, P, Q, R, U, pi: GradedElement | None = None) -> Cochain:
    return project(nested(S, (P, Q, R, U), pi), S.dim, S.dimV)


def _comb(parts) -> Cochain:
    """Sum of (coefficient, cochain) pairs."""
    acc = None
    for c, ch in parts:
        t = ch.coeffs.scale(c)
        acc = t if acc is None else acc + t
    n = parts[0][1].n
    return Cochain(n, V_TO_G, acc)


def mc_residual(S: TwistedSetup, T: LinearOperator) -> Cochain:
    """(1/3!) l3(T,T,T) + (1/4!) l4(T,T,T,T)."""
    pi = pi_element(S)
    lT = _as_lifted(S, T)
    b1 = graded_bracket(pi, lT)
    b2 = graded_bracket(b1, lT)
    b3 = graded_bracket(b2, lT)
    b4 = graded_bracket(b3, lT)
    d, m = S.dim, S.dimV
    return _comb([(Fraction(1, factorial(3)), project(b3, d, m)),
                  (Fraction(1, factorial(4)), project(b4, d, m))])


def twisted_lk(S: TwistedSetup, T: LinearOperator, k: int, *args, check: bool = True) -> Cochain:
    """The brackets l_k^T obtained by twisting with the Maurer-Cartan element T."""
    if check:
        _require(check_trbo(S, T), "T is not a twisted Rota-Baxter operator")
    if k < 1:
        raise ValueError("k must be positive")
    if len(args) != k:
        raise ValueError(f"l_{k}^T takes {k} arguments")
    d, m = S.dim, S.dimV
    pi = pi_element(S)
    if k >= 5:
        deg = sum(_as_lifted(S, a).degree for a in args)
        return project(GradedElement.zero(deg, d + m), d, m)
    if k == 1:
        (P,) = args
        return _comb([(Fraction(1, 2), l3(S, T, T, P, pi)), (Fraction(1, 6), l4(S, T, T, T, P, pi))])
    if k == 2:
        P, Q = args
        return _comb([(1, l3(S, T, P, Q, pi)), (Fraction(1, 2), l4(S, T, T, P, Q, pi))])
    if k == 3:
        P, Q, R = args
        return _comb([(1, l3(S, P, Q, R, pi)), (1, l4(S, T, P, Q, R, pi))])
    P, Q, R, U = args
    return l4(S, P, Q, R, U, pi)
