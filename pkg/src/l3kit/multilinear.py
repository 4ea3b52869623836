"""Small expression language for composites of multilinear maps.

A multilinear map is a ``DenseTensor`` whose last axis is the output and whose
other axes are its inputs. Expressions are built from typed variables and
``Op`` applications and evaluated to a single tensor over a chosen variable
order; inner applications are contracted first, so cost stays polynomial in
the dimensions of the variables involved.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import count
from typing import Sequence

from .exactla import DenseTensor, einsum


class Expr:
    def terms(self) -> list[tuple[Fraction, "Expr"]]:
        return [(Fraction(1), self)]

    def __add__(self, other: "Expr") -> "Sum":
        return Sum(self.terms() + other.terms())

    def __sub__(self, other: "Expr") -> "Sum":
        return Sum(self.terms() + [(-c, e) for c, e in other.terms()])

    def __neg__(self) -> "Sum":
        return Sum([(-c, e) for c, e in self.terms()])

    def __rmul__(self, c) -> "Sum":
        c = Fraction(c)
        return Sum([(c * k, e) for k, e in self.terms()])


class Var(Expr):
    __slots__ = ("name", "dim")

    def __init__(self, name: str, dim: int):
        self.name = name
        self.dim = dim

    def __repr__(self):
        return self.name


class App(Expr):
    __slots__ = ("op", "args")

    def __init__(self, op: "Op", args: Sequence[Expr]):
        self.op = op
        self.args = list(args)


class Sum(Expr):
    __slots__ = ("items",)

    def __init__(self, items):
        self.items = [(Fraction(c), e) for c, e in items if c]

    def terms(self):
        return list(self.items)


def vsum(exprs: Sequence[Expr]) -> Expr:
    items = []
    for e in exprs:
        items.extend(e.terms())
    return Sum(items)


class Op:
    """A multilinear map, applied to expressions with call syntax."""

    __slots__ = ("tensor", "name")

    def __init__(self, tensor: DenseTensor, name: str = "op"):
        self.tensor = tensor
        self.name = name

    @property
    def arity(self) -> int:
        return self.tensor.ndim - 1

    @property
    def out_dim(self) -> int:
        return self.tensor.shape[-1]

    def __call__(self, *args: Expr) -> App:
        if len(args) != self.arity:
            raise TypeError(f"{self.name} takes {self.arity} arguments, got {len(args)}")
        for k, a in enumerate(args):
            d = out_dim(a)
            if d is not None and d != self.tensor.shape[k]:
                raise ValueError(f"{self.name}: slot {k} has dimension {self.tensor.shape[k]}, argument has {d}")
        return App(self, args)


def out_dim(e: Expr) -> int | None:
    if isinstance(e, Var):
        return e.dim
    if isinstance(e, App):
        return e.op.out_dim
    for _, t in e.terms():
        d = out_dim(t)
        if d is not None:
            return d
    return None


class _Ctx:
    def __init__(self):
        self.ids: dict[str, int] = {}
        self.dims: dict[str, int] = {}
        self.fresh = count(10_000)

    def label(self, v: Var) -> int:
        if v.name not in self.ids:
            self.ids[v.name] = len(self.ids)
            self.dims[v.name] = v.dim
        elif self.dims[v.name] != v.dim:
            raise ValueError(f"variable {v.name} used with two dimensions")
        return self.ids[v.name]


def _eval(e: Expr, ctx: _Ctx) -> tuple[DenseTensor, list[str]]:
    """Tensor with axes (free variables in returned order) + output."""
    if isinstance(e, Var):
        return DenseTensor.identity(e.dim), [e.name]
    if isinstance(e, App):
        operands = []
        op_labels = []
        free: list[str] = []
        for a in e.args:
            if isinstance(a, Var):
                ctx.label(a)
                op_labels.append(a.name)
                if a.name not in free:
                    free.append(a.name)
            else:
                t, names = _eval(a, ctx)
                inner = next(ctx.fresh)
                op_labels.append(inner)
                operands.append((t, [ctx.ids[n] for n in names] + [inner]))
                for n in names:
                    if n not in free:
                        free.append(n)
        out_label = next(ctx.fresh)
        lab = [ctx.ids[x] if isinstance(x, str) else x for x in op_labels]
        args = [e.op.tensor, lab + [out_label]]
        for t, labels in operands:
            args += [t, labels]
        res = einsum(*args, out=[ctx.ids[n] for n in free] + [out_label])
        return res, free
    items = e.terms()
    if not items:
        raise ValueError("cannot evaluate an empty sum without a shape")
    acc = None
    order = None
    for c, t in items:
        val, names = _eval(t, ctx)
        if order is None:
            order = names
        elif sorted(names) != sorted(order):
            raise ValueError(f"terms have different variables: {order} vs {names}")
        if names != order:
            perm = [names.index(n) for n in order] + [len(order)]
            val = val.transpose(perm)
        val = val.scale(c) if c != 1 else val
        acc = val if acc is None else acc + val
    return acc, order


def evaluate(e: Expr, order: Sequence[Var]) -> DenseTensor:
    """Evaluate ``e`` to a tensor with axes ``order`` + output."""
    ctx = _Ctx()
    for v in order:
        ctx.label(v)
    if not e.terms():
        raise ValueError("empty expression")
    val, names = _eval(e, ctx)
    want = [v.name for v in order]
    if sorted(names) != sorted(want):
        raise ValueError(f"expression variables {names} do not match {want}")
    if names != want:
        val = val.transpose([names.index(n) for n in want] + [len(want)])
    return val


def evaluate_zero_ok(e: Expr, order: Sequence[Var], out: int) -> DenseTensor:
    """Like ``evaluate`` but an empty sum gives the zero tensor."""
    if not e.terms():
        return DenseTensor.zeros([v.dim for v in order] + [out])
    return evaluate(e, order)
