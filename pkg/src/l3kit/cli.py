"""Command-line entry point: ``l3kit <command> --manifest FILE --object NAME ...``."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import manifest as mf
from .algebra import LinearOperator, _require, check_3leibniz, check_leibniz, check_representation
from .cohomology import G_TO_V, V_TO_G, Cochain, coboundary, cochain_dim, cohomology_dim, twisted_semidirect
from .deformation import extend, infinitesimals_cohomologous, obstruction
from .errors import L3KitError
from .exactla import DenseTensor, parse_scalar
from .linfty import mc_residual, twisted_lk
from .manifest import Deformation, Manifest, ManifestError
from .ns import (
    CORRECTED,
    PRINTED,
    check_ns,
    check_weighted_rbo,
    ns_from_nijenhuis,
    ns_from_reynolds,
    ns_from_trbo,
    ns_from_weighted_rbo,
    subadjacent,
)
from .rbo_cohomology import cohomology_dim_T, delta_T, induced_rep
from .report import Report, timed
from .twisted_rbo import (
    TwistedSetup,
    check_nijenhuis,
    check_reynolds,
    check_trbo,
    gauge_transform,
    induced_bracket,
    shift_trbo,
    shifted_phi,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class Objects:
    """The --object arguments resolved and grouped by kind, in command-line order."""

    def __init__(self, man: Manifest, names: list[str]):
        self.man = man
        self.names = list(names)
        self.by_kind: dict[str, list[str]] = {}
        for n in self.names:
            self.by_kind.setdefault(man.kind(n), []).append(n)

    def take(self, kind: str, index: int = 0, optional: bool = False):
        names = self.by_kind.get(kind, [])
        if index >= len(names):
            if optional:
                return None, None
            raise UsageError(f"command needs {'another' if index else 'an'} object of type {kind!r}")
        return names[index], self.man.get(names[index])

    def cochains(self, degree: int, direction: str):
        out = []
        for n in self.by_kind.get("cochain", []):
            c = self.man.get(n)
            if c.n == degree and c.direction == direction:
                out.append((n, c))
        return out

    def setup(self) -> tuple[TwistedSetup, str, str | None]:
        rname, R = self.take("representation")
        phis = self.cochains(2, G_TO_V)
        phi_name, phi = phis[0] if phis else (None, None)
        return TwistedSetup.make(R, None if phi is None else phi.coeffs), rname, phi_name

    def operators(self) -> list[tuple[str, LinearOperator]]:
        return [(n, self.man.get(n)) for n in self.by_kind.get("operator", [])]


def _emit_json(data):
    sys.stdout.write(mf.compact_json(data))


def _report_result(rep: Report, args) -> int:
    if args.format == "text":
        sys.stdout.write(rep.to_text() + "\n")
    else:
        _emit_json(rep.to_json())
    return EXIT_OK if rep.ok else EXIT_FAIL


def _artifact(man: Manifest, args, records: list[tuple[str, dict]]) -> int:
    """Append new records; write the grown manifest to --out or print the new records."""
    names = []
    for base, rec in records:
        names.append(man.add(man.fresh_name(base), rec))
    if args.out:
        man.save(args.out)
    new = {n: man.objects[n] for n in names}
    _emit_json(mf.canonical({"schema_version": man.schema_version, "objects": new}))
    return EXIT_OK


def _name(args, default: str) -> str:
    return args.name or default


# commands ------------------------------------------------------------------

def cmd_check_3leibniz(o: Objects, args):
    return check_3leibniz(o.take("algebra")[1])


def cmd_check_leibniz(o: Objects, args):
    return check_leibniz(o.take("leibniz")[1])


def cmd_check_rep(o: Objects, args):
    return check_representation(o.take("representation")[1])


def _setup_and_T(o: Objects):
    S, rname, phi_name = o.setup()
    ops = o.operators()
    if not ops:
        raise UsageError("command needs an operator T: V -> g")
    return S, ops[0][1], rname, phi_name


def cmd_check_trbo(o: Objects, args):
    S, T, _, _ = _setup_and_T(o)
    return check_trbo(S, T)


def cmd_check_nijenhuis(o: Objects, args):
    return check_nijenhuis(o.take("algebra")[1], o.take("operator")[1])


def cmd_check_reynolds(o: Objects, args):
    return check_reynolds(o.take("algebra")[1], o.take("operator")[1])


def _weight(args) -> Fraction:
    if args.weight is None:
        raise UsageError("--weight is required")
    return args.weight


def cmd_check_weighted_rbo(o: Objects, args):
    return check_weighted_rbo(o.take("algebra")[1], o.take("operator")[1], _weight(args))


def cmd_check_ns(o: Objects, args):
    return check_ns(o.take("ns")[1], args.strict_ns)


def cmd_mc_residual(o: Objects, args):
    S, T, _, _ = _setup_and_T(o)
    rep = Report(name="mc-residual")
    with timed(rep):
        res = mc_residual(S, T)
        rep.compare("maurer_cartan", res.coeffs, DenseTensor.zeros(res.coeffs.shape))
    return rep


def cmd_l1t_vs_partialT(o: Objects, args):
    S, T, _, _ = _setup_and_T(o)
    _require(check_trbo(S, T), "T is not a twisted Rota-Baxter operator")
    rep = Report(name="l1t-vs-partialT")
    with timed(rep):
        given = [c for n in (1, 2, 3) for _, c in o.cochains(n, V_TO_G)]
        if not given:
            n = args.degree or 1
            dim = cochain_dim(S.dimV, S.dim, n)
            shape = (S.dimV,) * (2 * n - 1) + (S.dim,)
            given = [Cochain(n, V_TO_G, DenseTensor.from_flat(shape, [int(i == k) for i in range(dim)]))
                     for k in range(dim)]
        for f in given:
            lhs = twisted_lk(S, T, 1, f, check=False).coeffs
            rhs = delta_T(S, T, f).coeffs.scale((-1) ** (f.n - 1))
            rep.compare(f"l1_vs_partial_degree_{f.n}", lhs, rhs)
    return rep


def cmd_coboundary(o: Objects, args):
    cs = [o.man.get(n) for n in o.by_kind.get("cochain", [])]
    if not cs:
        raise UsageError("command needs a cochain")
    c = cs[0]
    rname = o.man.record(o.by_kind["cochain"][0])["representation"]
    if c.direction == G_TO_V:
        out = coboundary(c)
    else:
        S, T, _, _ = _setup_and_T(o)
        out = delta_T(S, T, c)
    return [(_name(args, "coboundary"), mf.cochain_record(out, rname))]


def cmd_cohomology(o: Objects, args):
    _, R = o.take("representation")
    n = args.degree or 1
    return {"degree": n, "dimension": cohomology_dim(R, n)}


def cmd_cohomology_T(o: Objects, args):
    S, T, _, _ = _setup_and_T(o)
    n = args.degree or 1
    return {"degree": n, "dimension": cohomology_dim_T(S, T, n)}


def cmd_twisted_semidirect(o: Objects, args):
    S, _, _ = o.setup()
    return [(_name(args, "twisted_semidirect"), mf.algebra_record(twisted_semidirect(S.rep, S.phi)))]


def cmd_induced_bracket(o: Objects, args):
    S, T, _, _ = _setup_and_T(o)
    return [(_name(args, "induced_bracket"), mf.algebra_record(induced_bracket(S, T)))]


def cmd_induced_rep(o: Objects, args):
    S, T, _, _ = _setup_and_T(o)
    IR = induced_rep(S, T)
    base = _name(args, "induced_rep")
    alg_name = o.man.fresh_name(base + "_bracket")
    return [(alg_name, mf.algebra_record(IR.bracket)),
            (base, mf.representation_record(IR.as_representation(), alg_name))]


def _two_operators(o: Objects):
    ops = o.operators()
    if len(ops) < 2:
        raise UsageError("command needs T (V -> g) and w (g -> V) as operators, in that order")
    return ops[0][1], ops[1][1]


def cmd_gauge(o: Objects, args):
    S, rname, phi_name = o.setup()
    T, w = _two_operators(o)
    Tw = gauge_transform(S, T, w)
    if Tw is None:
        raise L3KitError("w is not admissible: Id + wT is singular")
    return [(_name(args, "gauge"), mf.operator_record(Tw))]


def cmd_shift(o: Objects, args):
    S, rname, phi_name = o.setup()
    T, w = _two_operators(o)
    T2 = shift_trbo(S, T, w)
    if T2 is None:
        raise L3KitError("Id - wT is singular")
    base = _name(args, "shift")
    phi = Cochain(2, G_TO_V, shifted_phi(S, w), S.rep)
    return [(base + "_phi", mf.cochain_record(phi, rname)), (base, mf.operator_record(T2))]


def _deformation(o: Objects) -> tuple[str, Deformation]:
    return o.take("deformation")


def cmd_obstruction(o: Objects, args):
    _, D = _deformation(o)
    ob = obstruction(D.setup, D.terms)
    return [(_name(args, "obstruction"), mf.cochain_record(ob, D.representation))]


def cmd_extend(o: Objects, args):
    _, D = _deformation(o)
    X = extend(D.setup, D.terms)
    if X is None:
        raise _Unextendable()
    return [(_name(args, "extended"), mf.deformation_record(D.terms + [X], D.representation, D.phi))]


class _Unextendable(Exception):
    pass


def cmd_infinitesimal_class(o: Objects, args):
    S, T, _, _ = _setup_and_T(o)
    cs = o.cochains(1, V_TO_G)
    if len(cs) < 2:
        raise UsageError("command needs two degree-1 V_to_g cochains")
    A = infinitesimals_cohomologous(S, T, cs[0][1], cs[1][1])
    if A is None:
        raise _Unextendable("the infinitesimals are not cohomologous")
    return [(_name(args, "infinitesimal_class"), mf.tensor_record(A))]


def cmd_ns_from_trbo(o: Objects, args):
    S, T, _, _ = _setup_and_T(o)
    return [(_name(args, "ns_from_trbo"), mf.ns_record(ns_from_trbo(S, T)))]


def cmd_ns_from_nijenhuis(o: Objects, args):
    return [(_name(args, "ns_from_nijenhuis"),
             mf.ns_record(ns_from_nijenhuis(o.take("algebra")[1], o.take("operator")[1])))]


def cmd_ns_from_reynolds(o: Objects, args):
    return [(_name(args, "ns_from_reynolds"),
             mf.ns_record(ns_from_reynolds(o.take("algebra")[1], o.take("operator")[1])))]


def cmd_ns_from_weighted(o: Objects, args):
    A = ns_from_weighted_rbo(o.take("algebra")[1], o.take("operator")[1], _weight(args))
    return [(_name(args, "ns_from_weighted"), mf.ns_record(A))]


def cmd_subadjacent(o: Objects, args):
    return [(_name(args, "subadjacent"), mf.algebra_record(subadjacent(o.take("ns")[1])))]


CHECKS = {
    "check-3leibniz": cmd_check_3leibniz,
    "check-leibniz": cmd_check_leibniz,
    "check-rep": cmd_check_rep,
    "check-trbo": cmd_check_trbo,
    "check-nijenhuis": cmd_check_nijenhuis,
    "check-reynolds": cmd_check_reynolds,
    "check-weighted-rbo": cmd_check_weighted_rbo,
    "check-ns": cmd_check_ns,
    "mc-residual": cmd_mc_residual,
    "l1t-vs-partialT": cmd_l1t_vs_partialT,
}
CONSTRUCTIONS = {
    "coboundary": cmd_coboundary,
    "twisted-semidirect": cmd_twisted_semidirect,
    "induced-bracket": cmd_induced_bracket,
    "induced-rep": cmd_induced_rep,
    "gauge": cmd_gauge,
    "shift": cmd_shift,
    "obstruction": cmd_obstruction,
    "extend": cmd_extend,
    "infinitesimal-class": cmd_infinitesimal_class,
    "ns-from-trbo": cmd_ns_from_trbo,
    "ns-from-nijenhuis": cmd_ns_from_nijenhuis,
    "ns-from-reynolds": cmd_ns_from_reynolds,
    "ns-from-weighted": cmd_ns_from_weighted,
    "subadjacent": cmd_subadjacent,
}
VALUES = {
    "cohomology": cmd_cohomology,
    "cohomology-T": cmd_cohomology_T,
}
COMMANDS = sorted(list(CHECKS) + list(CONSTRUCTIONS) + list(VALUES) + ["selftest"])


def _scalar_arg(text: str) -> Fraction:
    try:
        return parse_scalar(text)
    except (ValueError, ZeroDivisionError) as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="l3kit", description="Exact checks and constructions for 3-Leibniz "
                                "algebras and twisted Rota-Baxter operators.")
    p.add_argument("command", choices=COMMANDS, metavar="command", help=", ".join(COMMANDS))
    p.add_argument("--manifest", help="input JSON manifest")
    p.add_argument("--object", action="append", default=[], dest="objects", metavar="NAME",
                   help="object name (repeatable; order matters for same-type objects)")
    p.add_argument("--degree", type=int, help="cochain degree")
    p.add_argument("--out", help="write the manifest with appended artifacts here")
    p.add_argument("--name", help="name for the emitted artifact")
    p.add_argument("--strict-ns", choices=[CORRECTED, PRINTED], default=CORRECTED,
                   help="which form of the right-on-middle NS axiom to check")
    p.add_argument("--weight", type=_scalar_arg, help="weight for weighted Rota-Baxter commands (p/q)")
    p.add_argument("--format", choices=["json", "text"], default="json")
    return p


def _error(kind: str, message: str, location: str | None = None) -> None:
    err = {"ok": False, "error": kind, "message": message}
    if location is not None:
        err["location"] = location
    sys.stderr.write(json.dumps(err, sort_keys=True) + "\n")


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE
    if args.command == "selftest":
        from .selftest import run_all
        results = run_all(lambda line: sys.stdout.write(line + "\n"))
        return EXIT_OK if all(r.ok for r in results) else EXIT_FAIL
    if not args.manifest:
        _error("usage", "--manifest is required")
        return EXIT_USAGE
    try:
        man = mf.load_manifest(args.manifest)
        objs = Objects(man, args.objects)
        if args.command in CHECKS:
            return _report_result(CHECKS[args.command](objs, args), args)
        if args.command in VALUES:
            _emit_json(VALUES[args.command](objs, args))
            return EXIT_OK
        return _artifact(man, args, CONSTRUCTIONS[args.command](objs, args))
    except ManifestError as e:
        _error("parse", str(e), e.location)
        return EXIT_USAGE
    except UsageError as e:
        _error("usage", str(e))
        return EXIT_USAGE
    except _Unextendable as e:
        _error("failed", str(e) or "the obstruction class is nonzero: no extension exists")
        return EXIT_FAIL
    except L3KitError as e:
        _error("precondition", str(e))
        return EXIT_FAIL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
