import json
from fractions import Fraction
from pathlib import Path

import pytest

from l3kit import cli
from l3kit import fixtures as fx
from l3kit.algebra import LinearOperator
from l3kit.manifest import (
    Manifest,
    ManifestError,
    canonical,
    decode_tensor,
    encode_tensor,
    fixture_manifest,
    load_manifest,
    loads,
)

ROOT = Path(__file__).resolve().parents[1]
FIX = ROOT / "fixtures" / "fix_a1.json"


def _doc(objects):
    return json.dumps({"schema_version": "1", "objects": objects})


def test_fixture_file_matches_generator():
    assert FIX.read_text() == fixture_manifest().dumps()


def test_round_trip_is_byte_identical(tmp_path):
    man = load_manifest(FIX)
    out = tmp_path / "again.json"
    man.save(out)
    assert out.read_bytes() == FIX.read_bytes()
    again = load_manifest(out)
    assert again.get("T") == man.get("T")


def test_every_object_type_round_trips(tmp_path):
    man = load_manifest(FIX)
    for name in man.objects:
        obj = man.get(name)
        assert obj is not None
    text = man.dumps()
    assert loads(text).dumps() == text


def test_sparse_rows_are_sorted():
    rows = [[1, 0, 2], [0, 1, "1/2"]]
    assert canonical({"x": rows}) == {"x": [[0, 1, "1/2"], [1, 0, 2]]}


def test_tensor_codec():
    t = decode_tensor((2, 2), [[0, 1, "3/4"], [1, 1, -2]], "t")
    assert t[0, 1] == Fraction(3, 4)
    assert decode_tensor((2, 2), encode_tensor(t), "t") == t


@pytest.mark.parametrize("rows,where", [
    ([[0, 0, "1/0"]], "t[0]"),
    ([[0, 2, 1]], "t[0]"),
    ([[0, 1]], "t[0]"),
    ([[0, 0, "abc"]], "t[0]"),
    ("nope", "t"),
])
def test_tensor_codec_errors_carry_location(rows, where):
    with pytest.raises(ManifestError) as exc:
        decode_tensor((2, 2), rows, "t")
    assert exc.value.location == where


def test_empty_manifest_is_valid():
    man = loads(_doc({}))
    assert man.objects == {}
    assert loads("{}").objects == {}


def test_zero_denominator_is_parse_error():
    doc = _doc({"T": {"type": "operator", "rows": 1, "cols": 1, "entries": [[0, 0, "1/0"]]}})
    with pytest.raises(ManifestError) as exc:
        loads(doc)
    assert "objects.T" in exc.value.location


def test_dangling_reference():
    doc = _doc({"ad": {"type": "representation", "algebra": "missing", "dimV": 1,
                       "rho_l": [], "rho_m": [], "rho_r": []}})
    with pytest.raises(ManifestError) as exc:
        loads(doc)
    assert exc.value.location == "objects.ad.algebra"
    assert "dangling" in str(exc.value)


def test_wrong_reference_type():
    doc = _doc({"T": {"type": "operator", "rows": 1, "cols": 1, "entries": []},
                "ad": {"type": "representation", "algebra": "T", "dimV": 1,
                       "rho_l": [], "rho_m": [], "rho_r": []}})
    with pytest.raises(ManifestError):
        loads(doc)


def test_dimension_mismatch_between_objects():
    doc = _doc({"A": {"type": "algebra", "dim": 2, "bracket": []},
                "ad": {"type": "representation", "algebra": "A", "dimV": 1,
                       "rho_l": [[0, 0, 1, 0, 1]], "rho_m": [], "rho_r": []}})
    with pytest.raises(ManifestError) as exc:
        loads(doc)
    assert exc.value.location.startswith("objects.ad")


def test_invalid_json_and_schema():
    with pytest.raises(ManifestError):
        loads("{", "f.json")
    with pytest.raises(ManifestError):
        loads(json.dumps({"schema_version": "9", "objects": {}}))
    with pytest.raises(ManifestError):
        loads(json.dumps([1]))
    with pytest.raises(ManifestError):
        loads(_doc({"x": {"no_type": 1}}))
    with pytest.raises(ManifestError):
        load_manifest("/nonexistent/file.json")


def test_add_refuses_duplicates_and_unknown_types():
    man = Manifest()
    man.add("x", {"type": "tensor", "shape": [1], "entries": []})
    with pytest.raises(ManifestError):
        man.add("x", {"type": "tensor", "shape": [1], "entries": []})
    with pytest.raises(ManifestError):
        man.add("y", {"type": "gadget"})
    assert man.fresh_name("x") == "x_2"


# command line --------------------------------------------------------------

def run(capsys, *argv):
    code = cli.run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_trbo_fix_t(capsys):
    code, out, _ = run(capsys, "check-trbo", "--manifest", str(FIX), "--object", "ad", "--object", "phi_T",
                       "--object", "T")
    assert code == 0
    rep = json.loads(out)
    assert rep["ok"] is True and rep["checked"] == 8 and rep["violations"] == []


def test_check_trbo_without_twist_fails(capsys):
    code, out, _ = run(capsys, "check-trbo", "--manifest", str(FIX), "--object", "ad", "--object", "T")
    assert code == 1
    rep = json.loads(out)
    assert rep["ok"] is False
    assert rep["violations"][0]["equation_tag"] == "twisted_rota_baxter"
    tuples = [tuple(v["basis_tuple"]) for v in rep["violations"]]
    assert tuples == sorted(tuples)


def test_text_report_is_one_based(capsys):
    code, out, _ = run(capsys, "check-trbo", "--manifest", str(FIX), "--object", "ad", "--object", "T",
                       "--format", "text")
    assert code == 1
    assert "e1" in out and "e0" not in out


def test_output_is_deterministic(capsys, tmp_path):
    from l3kit.manifest import ns_record
    from l3kit.ns import ns_from_trbo
    man = fixture_manifest()
    man.add("ns", ns_record(ns_from_trbo(*fx.fix_t())))
    path = tmp_path / "ns.json"
    man.save(path)
    args = ("check-ns", "--manifest", str(path), "--object", "ns")
    a = json.loads(run(capsys, *args)[1])
    b = json.loads(run(capsys, *args)[1])
    for r in (a, b):
        r.pop("timing")
    assert a == b and a["ok"]


def test_extend_trivial_deformation_emits_zero_term(capsys, tmp_path):
    out_path = tmp_path / "grown.json"
    code, out, _ = run(capsys, "extend", "--manifest", str(FIX), "--object", "order1", "--out", str(out_path))
    assert code == 0
    frag = json.loads(out)
    (name, rec), = frag["objects"].items()
    assert rec["type"] == "deformation"
    assert len(rec["terms"]) == 3 and rec["terms"][2] == []
    grown = load_manifest(out_path)
    assert name in grown.objects and "order1" in grown.objects


def test_cohomology_values_match_meta(capsys):
    meta = load_manifest(FIX).meta["expected"]
    for n in (1, 2):
        code, out, _ = run(capsys, "cohomology-T", "--manifest", str(FIX), "--object", "ad", "--object", "phi_T",
                           "--object", "T", "--degree", str(n))
        assert code == 0
        assert json.loads(out) == {"degree": n, "dimension": meta[f"cohomology-T T degree {n}"]}


def test_adjoint_cohomology_command(capsys):
    code, out, _ = run(capsys, "cohomology", "--manifest", str(FIX), "--object", "ad", "--degree", "2")
    assert code == 0 and json.loads(out)["dimension"] == 3


@pytest.mark.parametrize("argv", [
    ["check-rep", "--object", "ad"],
    ["check-3leibniz", "--object", "A1"],
    ["check-nijenhuis", "--object", "A1", "--object", "N"],
    ["check-reynolds", "--object", "A1", "--object", "R"],
    ["check-weighted-rbo", "--object", "A1", "--object", "zero", "--weight", "0"],
    ["mc-residual", "--object", "ad", "--object", "phi_T", "--object", "T"],
    ["l1t-vs-partialT", "--object", "ad", "--object", "phi_T", "--object", "T", "--degree", "2"],
])
def test_passing_checks(capsys, argv):
    code, out, _ = run(capsys, argv[0], "--manifest", str(FIX), *argv[1:])
    assert code == 0, out
    assert json.loads(out)["ok"] is True


@pytest.mark.parametrize("argv", [
    ["twisted-semidirect", "--object", "ad", "--object", "phi_T"],
    ["induced-bracket", "--object", "ad", "--object", "phi_T", "--object", "T"],
    ["induced-rep", "--object", "ad", "--object", "phi_T", "--object", "T"],
    ["obstruction", "--object", "order1"],
    ["ns-from-trbo", "--object", "ad", "--object", "phi_T", "--object", "T"],
    ["ns-from-nijenhuis", "--object", "A1", "--object", "N"],
    ["ns-from-reynolds", "--object", "A1", "--object", "R"],
    ["ns-from-weighted", "--object", "A1", "--object", "zero", "--weight", "2"],
    ["coboundary", "--object", "phi_T"],
])
def test_constructions_emit_loadable_records(capsys, argv):
    code, out, _ = run(capsys, argv[0], "--manifest", str(FIX), *argv[1:])
    assert code == 0, out
    frag = json.loads(out)
    man = load_manifest(FIX)
    for name, rec in frag["objects"].items():
        man.add(name, rec)
    loads(man.dumps())


def test_subadjacent_of_constructed_ns(capsys, tmp_path):
    grown = tmp_path / "g.json"
    assert run(capsys, "ns-from-trbo", "--manifest", str(FIX), "--object", "ad", "--object", "phi_T",
               "--object", "T", "--out", str(grown), "--name", "P")[0] == 0
    code, out, _ = run(capsys, "subadjacent", "--manifest", str(grown), "--object", "P")
    assert code == 0
    rec = next(iter(json.loads(out)["objects"].values()))
    assert rec["bracket"] == [[0, 0, 0, 1, 1]]
    code, out, _ = run(capsys, "check-ns", "--manifest", str(grown), "--object", "P", "--strict-ns", "printed")
    assert code == 0


def test_gauge_and_shift(capsys, tmp_path):
    man = fixture_manifest()
    from l3kit.manifest import operator_record
    man.add("w", operator_record(LinearOperator.from_rows([[0, 0], [1, 0]])))
    man.add("w_id", operator_record(LinearOperator.identity(2)))
    path = tmp_path / "m.json"
    man.save(path)
    code, out, _ = run(capsys, "gauge", "--manifest", str(path), "--object", "ad", "--object", "phi_T",
                       "--object", "T", "--object", "w")
    assert code == 0
    rec = next(iter(json.loads(out)["objects"].values()))
    assert rec["entries"] == [[0, 0, 1], [1, 0, -1], [1, 1, 1]]
    code, _, err = run(capsys, "shift", "--manifest", str(path), "--object", "ad", "--object", "phi_T",
                       "--object", "T", "--object", "w_id")
    assert code == 1
    assert json.loads(err)["ok"] is False


def test_infinitesimal_class(capsys, tmp_path):
    from l3kit.cohomology import V_TO_G, Cochain
    from l3kit.exactla import DenseTensor
    from l3kit.manifest import cochain_record
    from l3kit.rbo_cohomology import wp
    S, T = fx.fix_t()
    t1 = DenseTensor.from_sparse((2, 2), [((0, 0), Fraction(1, 3)), ((1, 1), 1)])
    shift = wp(S, T, DenseTensor.from_sparse((2, 2), [((0, 0), 1)])).coeffs
    man = fixture_manifest()
    man.add("t1", cochain_record(Cochain(1, V_TO_G, t1), "ad"))
    man.add("t2", cochain_record(Cochain(1, V_TO_G, t1 + shift), "ad"))
    man.add("t3", cochain_record(Cochain(1, V_TO_G, DenseTensor.zeros((2, 2))), "ad"))
    path = tmp_path / "m.json"
    man.save(path)
    base = ["infinitesimal-class", "--manifest", str(path), "--object", "ad", "--object", "phi_T", "--object", "T"]
    code, out, _ = run(capsys, *base, "--object", "t1", "--object", "t2")
    assert code == 0
    assert next(iter(json.loads(out)["objects"].values()))["type"] == "tensor"
    code, _, _ = run(capsys, *base, "--object", "t3", "--object", "t1")
    assert code == 1


@pytest.mark.parametrize("argv", [
    ["no-such-command", "--manifest", str(FIX)],
    ["check-trbo"],
    ["check-trbo", "--manifest", str(FIX), "--object", "missing"],
    ["check-weighted-rbo", "--manifest", str(FIX), "--object", "A1", "--object", "zero", "--weight", "1/0"],
    ["check-trbo", "--manifest", "/nonexistent.json"],
    ["coboundary", "--manifest", str(FIX), "--object", "A1"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2


def test_structured_error_on_stderr(capsys):
    code, _, err = run(capsys, "check-trbo", "--manifest", str(FIX), "--object", "missing")
    payload = json.loads(err)
    assert payload["ok"] is False and payload["error"] == "parse" and "location" in payload


def test_precondition_failure_exits_1(capsys):
    code, _, err = run(capsys, "induced-bracket", "--manifest", str(FIX), "--object", "ad", "--object", "T")
    assert code == 1
    assert json.loads(err)["error"] == "precondition"
