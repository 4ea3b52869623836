"""Exact rational scalars, dense tensors and linear algebra over Q."""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm, prod
from typing import Iterable, Sequence

import numpy as np

from ._backend import row_echelon

Scalar = Fraction


def parse_scalar(text) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` (ints are accepted too); ``q`` must be nonzero."""
    if isinstance(text, bool):
        raise ValueError(f"not a scalar: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"scalar must be a string, got {type(text).__name__}")
    s = text.strip()
    num, sep, den = s.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"malformed scalar {text!r}") from None
    if q == 0:
        raise ValueError(f"zero denominator in scalar {text!r}")
    return Fraction(p, q)


def format_scalar(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _as_int_array(values, shape) -> tuple[np.ndarray, int]:
    flat = [Fraction(v) for v in values]
    den = reduce(lcm, (v.denominator for v in flat), 1)
    num = np.empty(len(flat), dtype=object)
    for i, v in enumerate(flat):
        num[i] = v.numerator * (den // v.denominator)
    return num.reshape(shape), den


class DenseTensor:
    """Dense rational tensor, entries in C order (last axis fastest).

    Stored as an integer object array ``num`` and a positive common
    denominator ``den``; instances are treated as immutable.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: np.ndarray, den: int = 1, *, normalize: bool = True):
        if den <= 0:
            raise ValueError("denominator must be positive")
        if num.dtype != object:
            num = num.astype(object)
        self.num = num
        self.den = den
        if normalize:
            self._normalize()

    def _normalize(self):
        if self.den == 1:
            return
        g = self.den
        for v in self.num.flat:
            if v:
                g = gcd(g, v)
                if g == 1:
                    return
        if g == self.den and not any(self.num.flat):
            self.den = 1
            return
        if g > 1:
            self.num = self.num // g
            self.den //= g

    @classmethod
    def zeros(cls, shape: Sequence[int]) -> "DenseTensor":
        num = np.empty(tuple(shape), dtype=object)
        num.fill(0)
        return cls(num, 1, normalize=False)

    @classmethod
    def from_flat(cls, shape: Sequence[int], entries: Iterable) -> "DenseTensor":
        entries = list(entries)
        if len(entries) != prod(shape):
            raise ValueError(f"expected {prod(shape)} entries for shape {tuple(shape)}, got {len(entries)}")
        num, den = _as_int_array(entries, tuple(shape))
        return cls(num, den)

    @classmethod
    def from_array(cls, arr) -> "DenseTensor":
        a = np.asarray(arr, dtype=object)
        return cls.from_flat(a.shape, a.ravel().tolist())

    @classmethod
    def from_sparse(cls, shape: Sequence[int], items: Iterable[tuple[tuple[int, ...], object]]) -> "DenseTensor":
        vals = np.empty(tuple(shape), dtype=object)
        vals.fill(Fraction(0))
        for idx, c in items:
            vals[tuple(idx)] += Fraction(c)
        return cls.from_array(vals)

    @classmethod
    def identity(cls, n: int) -> "DenseTensor":
        num = np.empty((n, n), dtype=object)
        num.fill(0)
        for i in range(n):
            num[i, i] = 1
        return cls(num, 1, normalize=False)

    @property
    def shape(self) -> tuple[int, ...]:
        return self.num.shape

    @property
    def ndim(self) -> int:
        return self.num.ndim

    @property
    def size(self) -> int:
        return self.num.size

    def __getitem__(self, idx) -> Fraction:
        v = self.num[idx]
        if isinstance(v, np.ndarray):
            raise IndexError("use a full multi-index")
        return Fraction(v, self.den)

    def entries(self) -> list[Fraction]:
        d = self.den
        return [Fraction(v, d) for v in self.num.flat]

    def to_fractions(self) -> np.ndarray:
        out = np.empty(self.shape, dtype=object)
        d = self.den
        for idx, v in np.ndenumerate(self.num):
            out[idx] = Fraction(v, d)
        return out

    def flat_index(self, multi: Sequence[int]) -> int:
        return int(np.ravel_multi_index(tuple(multi), self.shape))

    def multi_index(self, flat: int) -> tuple[int, ...]:
        return tuple(int(i) for i in np.unravel_index(flat, self.shape))

    def nonzero(self) -> list[tuple[tuple[int, ...], Fraction]]:
        d = self.den
        return [(tuple(int(i) for i in idx), Fraction(v, d))
                for idx, v in np.ndenumerate(self.num) if v]

    def is_zero(self) -> bool:
        return not any(self.num.flat)

    def reshape(self, *shape) -> "DenseTensor":
        if len(shape) == 1 and isinstance(shape[0], (tuple, list)):
            shape = tuple(shape[0])
        return DenseTensor(self.num.reshape(shape), self.den, normalize=False)

    def transpose(self, *axes) -> "DenseTensor":
        return DenseTensor(self.num.transpose(*axes), self.den, normalize=False)

    def _aligned(self, other: "DenseTensor"):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        den = lcm(self.den, other.den)
        a = self.num if den == self.den else self.num * (den // self.den)
        b = other.num if den == other.den else other.num * (den // other.den)
        return a, b, den

    def __add__(self, other: "DenseTensor") -> "DenseTensor":
        a, b, den = self._aligned(other)
        return DenseTensor(a + b, den)

    def __sub__(self, other: "DenseTensor") -> "DenseTensor":
        a, b, den = self._aligned(other)
        return DenseTensor(a - b, den)

    def __neg__(self) -> "DenseTensor":
        return DenseTensor(-self.num, self.den, normalize=False)

    def scale(self, c) -> "DenseTensor":
        c = Fraction(c)
        return DenseTensor(self.num * c.numerator, self.den * c.denominator)

    def __mul__(self, c) -> "DenseTensor":
        return self.scale(c)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, DenseTensor):
            return NotImplemented
        if self.shape != other.shape:
            return False
        a, b, _ = self._aligned(other)
        return bool(np.all(a == b))

    def __ne__(self, other) -> bool:
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    __hash__ = None

    def __repr__(self) -> str:
        return f"DenseTensor(shape={self.shape}, nnz={len(self.nonzero())})"


def einsum(*operands, out: Sequence[int]) -> DenseTensor:
    """Contract tensors given as ``T1, labels1, T2, labels2, ...``.

    Labels are integer sublists, as in ``numpy.einsum``'s sublist form.
    """
    compact: dict = {}

    def relabel(labels):
        return [compact.setdefault(k, len(compact)) for k in labels]

    args = []
    den = 1
    for t, labels in zip(operands[::2], operands[1::2]):
        args.append(t.num)
        args.append(relabel(labels))
        den *= t.den
    args.append(relabel(out))
    num = np.einsum(*args, optimize=len(operands) > 4)
    if not isinstance(num, np.ndarray):
        num = np.array(num, dtype=object)
    return DenseTensor(num, den)


def stack(tensors: Sequence[DenseTensor]) -> DenseTensor:
    den = reduce(lcm, (t.den for t in tensors), 1)
    return DenseTensor(np.stack([t.num * (den // t.den) for t in tensors]), den)


# linear algebra ------------------------------------------------------------

def _int_rows(a) -> tuple[list[list[int]], int, int]:
    """Integer rows spanning the same row space as ``a``, plus its shape."""
    if isinstance(a, DenseTensor):
        if a.ndim != 2:
            raise ValueError("matrix must be two-dimensional")
        r, c = a.shape
        return [list(row) for row in a.num.tolist()], r, c
    rows = [[Fraction(v) for v in row] for row in a]
    r = len(rows)
    c = len(rows[0]) if rows else 0
    out = []
    for row in rows:
        if len(row) != c:
            raise ValueError("ragged matrix")
        d = reduce(lcm, (v.denominator for v in row), 1)
        out.append([v.numerator * (d // v.denominator) for v in row])
    return out, r, c


def matrix_shape(a) -> tuple[int, int]:
    if isinstance(a, DenseTensor):
        return a.shape
    rows = list(a)
    return len(rows), (len(rows[0]) if rows else 0)


def rank(a) -> int:
    rows, _, c = _int_rows(a)
    if not rows or c == 0:
        return 0
    _, piv = row_echelon(rows, c)
    return len(piv)


def solve(a, b: Sequence) -> list[Fraction] | None:
    """A particular solution of ``a x = b`` (free variables set to zero), or None."""
    rows, r, c = _int_rows(a)
    b = [Fraction(v) for v in b]
    if len(b) != r:
        raise ValueError(f"dimension mismatch: matrix has {r} rows, right-hand side has {len(b)}")
    if r == 0:
        return [Fraction(0)] * c
    if isinstance(a, DenseTensor) and a.den != 1:
        b = [v * a.den for v in b]
    aug = []
    for row, bv in zip(rows, b):
        aug.append([v * bv.denominator for v in row] + [bv.numerator])
    red, piv = row_echelon(aug, c + 1)
    if piv and piv[-1] == c:
        return None
    x = [Fraction(0)] * c
    for row, pc in zip(red, piv):
        x[pc] = Fraction(row[c], row[pc])
    return x


def kernel_basis(a) -> list[list[Fraction]]:
    """Basis of the null space; one vector per free column, that entry set to 1."""
    rows, _, c = _int_rows(a)
    if not rows:
        return [[Fraction(int(i == j)) for i in range(c)] for j in range(c)]
    red, piv = row_echelon(rows, c)
    pivset = set(piv)
    basis = []
    for f in range(c):
        if f in pivset:
            continue
        v = [Fraction(0)] * c
        v[f] = Fraction(1)
        for row, pc in zip(red, piv):
            if row[f]:
                v[pc] = Fraction(-row[f], row[pc])
        basis.append(v)
    return basis


def matvec(a, x: Sequence) -> list[Fraction]:
    if isinstance(a, DenseTensor):
        a = a.to_fractions().tolist()
    return [sum((Fraction(v) * xv for v, xv in zip(row, x)), Fraction(0)) for row in a]


def inverse(a: DenseTensor) -> DenseTensor | None:
    """Exact inverse of a square matrix, or None when singular."""
    n, m = a.shape
    if n != m:
        raise ValueError("inverse needs a square matrix")
    rows = [list(r) + [int(i == j) * a.den for j in range(n)] for i, r in enumerate(a.num.tolist())]
    red, piv = row_echelon(rows, 2 * n)
    if len(piv) < n or piv[n - 1] != n - 1:
        return None
    vals = [[Fraction(red[i][n + j], red[i][i]) for j in range(n)] for i in range(n)]
    return DenseTensor.from_array(vals)


def matmul(a: DenseTensor, b: DenseTensor) -> DenseTensor:
    if a.ndim != 2 or b.ndim != 2 or a.shape[1] != b.shape[0]:
        raise ValueError("matmul needs compatible matrices")
    return einsum(a, [0, 1], b, [1, 2], out=[0, 2])
