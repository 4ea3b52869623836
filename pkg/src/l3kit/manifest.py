"""JSON manifests: named structure-constant records with exact rational entries.

Tensors are stored sparsely as sorted ``[i0, i1, ..., value]`` rows with
zero-based indices and values written as ``"p/q"`` strings (or integers).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path

from .algebra import LeibnizAlgebra, LinearOperator, Representation, ThreeLeibnizAlgebra
from .cohomology import G_TO_V, V_TO_G, Cochain
from .errors import L3KitError
from .exactla import DenseTensor, format_scalar, parse_scalar
from .ns import NSAlgebra
from .twisted_rbo import TwistedSetup

SCHEMA_VERSION = "1"
KINDS = ("algebra", "leibniz", "representation", "operator", "cochain", "ns", "deformation", "tensor")


class ManifestError(L3KitError):
    """Parse or validation failure, with the location inside the manifest."""

    def __init__(self, location: str, message: str):
        super().__init__(f"{location}: {message}")
        self.location = location


@dataclass(frozen=True, eq=False)
class Deformation:
    setup: TwistedSetup
    terms: list
    representation: str
    phi: str | None


# tensors ------------------------------------------------------------------

def encode_tensor(t: DenseTensor) -> list:
    return [list(idx) + [_scalar_json(v)] for idx, v in t.nonzero()]


def _scalar_json(v):
    return v.numerator if v.denominator == 1 else format_scalar(v)


def decode_tensor(shape, rows, loc: str) -> DenseTensor:
    if not isinstance(rows, list):
        raise ManifestError(loc, "expected a list of [index..., value] rows")
    items = []
    for k, row in enumerate(rows):
        where = f"{loc}[{k}]"
        if not isinstance(row, list) or len(row) != len(shape) + 1:
            raise ManifestError(where, f"expected {len(shape)} indices and a value")
        idx = row[:-1]
        for a, (i, n) in enumerate(zip(idx, shape)):
            if isinstance(i, bool) or not isinstance(i, int) or not 0 <= i < n:
                raise ManifestError(where, f"index {i!r} out of range for axis {a} of size {n}")
        try:
            val = parse_scalar(row[-1])
        except (ValueError, ZeroDivisionError, TypeError) as e:
            raise ManifestError(where, f"bad scalar {row[-1]!r}: {e}") from None
        items.append((tuple(idx), val))
    return DenseTensor.from_sparse(tuple(shape), items)


def _dim(rec: dict, key: str, loc: str) -> int:
    v = rec.get(key)
    if isinstance(v, bool) or not isinstance(v, int) or v < 0:
        raise ManifestError(f"{loc}.{key}", "expected a non-negative integer")
    return v


# the manifest -------------------------------------------------------------

@dataclass
class Manifest:
    objects: dict = field(default_factory=dict)
    schema_version: str = SCHEMA_VERSION
    meta: dict = field(default_factory=dict)
    _cache: dict = field(default_factory=dict, repr=False)

    # raw records

    def record(self, name: str, loc: str = "objects") -> dict:
        if name not in self.objects:
            raise ManifestError(loc, f"unknown object {name!r}")
        return self.objects[name]

    def kind(self, name: str) -> str:
        return self.record(name)["type"]

    # resolution

    def get(self, name: str, loc: str | None = None):
        if name in self._cache:
            return self._cache[name]
        rec = self.record(name, loc or "objects")
        obj = self._build(name, rec, f"objects.{name}")
        self._cache[name] = obj
        return obj

    def _ref(self, rec: dict, key: str, loc: str, kind: str):
        ref = rec.get(key)
        if not isinstance(ref, str):
            raise ManifestError(f"{loc}.{key}", "expected an object name")
        if ref not in self.objects:
            raise ManifestError(f"{loc}.{key}", f"dangling reference {ref!r}")
        if self.objects[ref].get("type") != kind:
            raise ManifestError(f"{loc}.{key}", f"{ref!r} is not a {kind}")
        return self.get(ref)

    def _build(self, name: str, rec: dict, loc: str):
        try:
            return self._build_inner(rec, loc)
        except ManifestError:
            raise
        except (L3KitError, ValueError) as e:
            raise ManifestError(loc, str(e)) from None

    def _build_inner(self, rec: dict, loc: str):
        kind = rec.get("type")
        if kind == "algebra":
            d = _dim(rec, "dim", loc)
            return ThreeLeibnizAlgebra(d, decode_tensor((d,) * 4, rec.get("bracket", []), f"{loc}.bracket"))
        if kind == "leibniz":
            d = _dim(rec, "dim", loc)
            return LeibnizAlgebra(d, decode_tensor((d,) * 3, rec.get("bracket", []), f"{loc}.bracket"))
        if kind == "representation":
            A = self._ref(rec, "algebra", loc, "algebra")
            d, m = A.dim, _dim(rec, "dimV", loc)
            shapes = {"rho_l": (d, d, m, m), "rho_m": (d, m, d, m), "rho_r": (m, d, d, m)}
            t = {k: decode_tensor(s, rec.get(k, []), f"{loc}.{k}") for k, s in shapes.items()}
            return Representation(A, m, t["rho_l"], t["rho_m"], t["rho_r"])
        if kind == "operator":
            r, c = _dim(rec, "rows", loc), _dim(rec, "cols", loc)
            return LinearOperator(decode_tensor((r, c), rec.get("entries", []), f"{loc}.entries"))
        if kind == "tensor":
            shape = rec.get("shape")
            if not isinstance(shape, list) or not all(isinstance(s, int) and s >= 0 for s in shape):
                raise ManifestError(f"{loc}.shape", "expected a list of sizes")
            return decode_tensor(tuple(shape), rec.get("entries", []), f"{loc}.entries")
        if kind == "cochain":
            R = self._ref(rec, "representation", loc, "representation")
            n = _dim(rec, "degree", loc)
            if n < 1:
                raise ManifestError(f"{loc}.degree", "degree must be at least 1")
            direction = rec.get("direction")
            if direction not in (G_TO_V, V_TO_G):
                raise ManifestError(f"{loc}.direction", f"expected {G_TO_V!r} or {V_TO_G!r}")
            src, dst = Cochain.dims(R, direction)
            shape = (src,) * (2 * n - 1) + (dst,)
            return Cochain(n, direction, decode_tensor(shape, rec.get("entries", []), f"{loc}.entries"), R)
        if kind == "ns":
            d = _dim(rec, "dim", loc)
            t = {k: decode_tensor((d,) * 4, rec.get(k, []), f"{loc}.{k}") for k in ("lt", "rt", "md", "dia")}
            return NSAlgebra(d, t["lt"], t["rt"], t["md"], t["dia"])
        if kind == "deformation":
            R = self._ref(rec, "representation", loc, "representation")
            phi_name = rec.get("phi")
            phi = None
            if phi_name is not None:
                c = self._ref(rec, "phi", loc, "cochain")
                if c.n != 2 or c.direction != G_TO_V:
                    raise ManifestError(f"{loc}.phi", "phi must be a degree-2 g_to_V cochain")
                phi = c.coeffs
            terms_raw = rec.get("terms")
            if not isinstance(terms_raw, list) or not terms_raw:
                raise ManifestError(f"{loc}.terms", "expected a nonempty list of matrices")
            terms = [LinearOperator(decode_tensor((R.dim, R.dimV), t, f"{loc}.terms[{i}]"))
                     for i, t in enumerate(terms_raw)]
            return Deformation(TwistedSetup.make(R, phi, validate=False), terms, rec["representation"], phi_name)
        raise ManifestError(f"{loc}.type", f"unknown object type {kind!r}")

    def validate(self):
        for name in self.objects:
            self.get(name)
        return self

    # adding constructions

    def add(self, name: str, record: dict) -> str:
        if name in self.objects:
            raise ManifestError("objects", f"object {name!r} already exists")
        if record.get("type") not in KINDS:
            raise ManifestError(f"objects.{name}.type", f"unknown object type {record.get('type')!r}")
        self.objects[name] = record
        return name

    def fresh_name(self, base: str) -> str:
        if base not in self.objects:
            return base
        k = 2
        while f"{base}_{k}" in self.objects:
            k += 1
        return f"{base}_{k}"

    # serialization

    def to_json(self) -> dict:
        out = {"schema_version": self.schema_version, "objects": self.objects}
        if self.meta:
            out["meta"] = self.meta
        return out

    def dumps(self) -> str:
        return compact_json(canonical(self.to_json()))

    def save(self, path) -> None:
        Path(path).write_text(self.dumps())


_SCALAR_ARRAY = re.compile(r"\[\s+([^\[\]{}]*?)\s+\]")


def compact_json(obj) -> str:
    """Indented JSON with arrays of scalars kept on one line."""
    text = json.dumps(obj, indent=2, sort_keys=True)
    text = _SCALAR_ARRAY.sub(lambda m: "[" + ", ".join(x.strip() for x in m.group(1).split(",")) + "]", text)
    return text + "\n"


def canonical(obj):
    """Sort sparse rows so equal content serializes identically."""
    if isinstance(obj, dict):
        return {k: canonical(v) for k, v in obj.items()}
    if isinstance(obj, list):
        if obj and all(isinstance(r, list) and r and all(isinstance(i, int) for i in r[:-1]) for r in obj) \
                and all(not isinstance(r[0], list) for r in obj):
            return sorted((list(r) for r in obj), key=lambda r: r[:-1])
        return [canonical(v) for v in obj]
    return obj


def loads(text: str, source: str = "<string>") -> Manifest:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ManifestError(f"{source}:{e.lineno}:{e.colno}", f"invalid JSON: {e.msg}") from None
    if not isinstance(data, dict):
        raise ManifestError(source, "top level must be an object")
    version = data.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise ManifestError("schema_version", f"unsupported version {version!r}")
    objects = data.get("objects", {})
    if not isinstance(objects, dict):
        raise ManifestError("objects", "expected a name -> record map")
    for name, rec in objects.items():
        if not isinstance(rec, dict) or "type" not in rec:
            raise ManifestError(f"objects.{name}", "record must be an object with a 'type'")
    meta = data.get("meta", {})
    if not isinstance(meta, dict):
        raise ManifestError("meta", "expected an object")
    return Manifest(dict(objects), version, dict(meta)).validate()


def load_manifest(path) -> Manifest:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as e:
        raise ManifestError(str(p), f"cannot read: {e.strerror}") from None
    return loads(text, str(p))


# records from domain objects ---------------------------------------------

def algebra_record(A: ThreeLeibnizAlgebra) -> dict:
    return {"type": "algebra", "dim": A.dim, "bracket": encode_tensor(A.bracket)}


def leibniz_record(L: LeibnizAlgebra) -> dict:
    return {"type": "leibniz", "dim": L.dim, "bracket": encode_tensor(L.bracket)}


def representation_record(R: Representation, algebra: str) -> dict:
    return {"type": "representation", "algebra": algebra, "dimV": R.dimV,
            "rho_l": encode_tensor(R.rho_l), "rho_m": encode_tensor(R.rho_m),
            "rho_r": encode_tensor(R.rho_r)}


def operator_record(T: LinearOperator) -> dict:
    return {"type": "operator", "rows": T.dst_dim, "cols": T.src_dim, "entries": encode_tensor(T.matrix)}


def cochain_record(c: Cochain, representation: str) -> dict:
    return {"type": "cochain", "degree": c.n, "direction": c.direction, "representation": representation,
            "entries": encode_tensor(c.coeffs)}


def ns_record(A: NSAlgebra) -> dict:
    return {"type": "ns", "dim": A.dim, "lt": encode_tensor(A.lt), "rt": encode_tensor(A.rt),
            "md": encode_tensor(A.md), "dia": encode_tensor(A.dia)}


def tensor_record(t: DenseTensor) -> dict:
    return {"type": "tensor", "shape": list(t.shape), "entries": encode_tensor(t)}


def deformation_record(terms, representation: str, phi: str | None) -> dict:
    return {"type": "deformation", "representation": representation, "phi": phi,
            "terms": [encode_tensor(T.matrix) for T in terms]}


def fixture_manifest() -> Manifest:
    """fix_a1 with its adjoint representation, the operators of fix_t, fix_n, fix_r and related records."""
    from .algebra import adjoint_rep
    from .fixtures import fix_a1, fix_n, fix_r, fix_t
    from .rbo_cohomology import cohomology_dim_T
    from .twisted_rbo import reynolds_setup

    A = fix_a1()
    S, T = fix_t()
    man = Manifest()
    man.add("A1", algebra_record(A))
    man.add("ad", representation_record(adjoint_rep(A), "A1"))
    man.add("phi_T", cochain_record(Cochain(2, G_TO_V, S.phi, S.rep), "ad"))
    man.add("phi_R", cochain_record(Cochain(2, G_TO_V, reynolds_setup(A).phi, S.rep), "ad"))
    man.add("T", operator_record(T))
    man.add("N", operator_record(fix_n()))
    man.add("R", operator_record(fix_r()))
    man.add("zero", operator_record(LinearOperator.zero(2, 2)))
    man.add("order1", deformation_record([T, LinearOperator.zero(2, 2)], "ad", "phi_T"))
    man.meta["expected"] = {
        "check-trbo T checked": 8,
        "cohomology-T T degree 1": cohomology_dim_T(S, T, 1),
        "cohomology-T T degree 2": cohomology_dim_T(S, T, 2),
    }
    return man
