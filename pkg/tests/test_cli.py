import csv
import io
import json

import pytest

from stringtop.cli import SUITES, algebra_document, load_algebra_document, run, verify_suite
from stringtop.models import even_sphere_cochains, exterior_algebra, truncated_polynomial


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def table(text):
    for line in text.splitlines():
        if line.startswith("table: "):
            return [int(x) for x in line[7:].split(",")]
    raise AssertionError("no table in %r" % text)


def test_hh_sphere_table():
    code, out, _ = call("hh", "--model", "sphere:3", "--window", "0:9")
    assert code == 0
    assert table(out) == [1, 0, 1, 1, 1, 1, 1, 1, 1, 1]
    assert "window: 0:9" in out and "cutoffs: 8" in out


def test_json_report_embeds_window_and_cutoffs():
    code, out, _ = call("tor", "--model", "sphere:3", "--window", "-2:6", "--format", "json")
    assert code == 0
    d = json.loads(out)
    assert d["kind"] == "tor" and d["window"] == [-2, 6]
    assert d["cutoffs"] and d["stability"][0]["stable"]
    assert {n: v for n, v in d["dims"] if v} == {0: 1, 3: 1}


def test_csv_report():
    code, out, _ = call("ext", "--model", "sphere:3", "--window", "-6:2", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    body = {int(r[0]): int(r[1]) for r in rows if r and r[0].lstrip("-").isdigit()}
    assert {k: v for k, v in body.items() if v} == {-3: 1, 0: 1}


def test_reports_are_byte_identical():
    argv = ("hhc", "--model", "cochains:3", "--window", "-3:6", "--format", "json")
    assert call(*argv) == call(*argv)


def test_out_file(tmp_path):
    p = tmp_path / "r.txt"
    code, out, _ = call("hh", "--model", "poly:2:12", "--window", "0:6", "--out", str(p))
    assert code == 0 and out == ""
    assert table(p.read_text()) == [1, 0, 1, 1, 1, 1, 1]


def test_finite_field():
    code, out, _ = call("tor", "--model", "sphere:3", "--window", "-1:5", "--field", "Fp:5")
    assert code == 0
    assert table(out) == [0, 1, 0, 0, 1, 0, 0]


def test_bad_data_fails_cardy():
    code, out, _ = call("tqft-verify", "bad-data")
    assert code == 1
    assert any(l.startswith("FAIL cardy") for l in out.splitlines())


def test_tqft_verify_passes_on_fixtures():
    for name in ("m2", "m3", "dual"):
        assert call("tqft-verify", name)[0] == 0


def test_tqft_eval_torus_scalar():
    code, out, _ = call("tqft-eval", "dual", "torus", "--format", "json")
    assert code == 0
    assert json.loads(out)["data"]["scalar"] == "3"


def test_tqft_eval_word_file(tmp_path):
    p = tmp_path / "w.txt"
    p.write_text("input: a:C\noutput: b\nnode n = cylinder a -> b\n")
    code, out, _ = call("tqft-eval", "m2", str(p), "--format", "json")
    assert code == 0
    assert json.loads(out)["data"]["matrix"] == [["('1',)", "('1',)", "1"]]


def test_tqft_document(tmp_path):
    doc = {
        "closed": {"basis": ["1"], "multiplication": [["1", "1", "1", "1"]], "unit": [["1", "1"]],
                   "trace": [["1", "1"]]},
        "open": {"b": {"basis": ["1"], "multiplication": [["1", "1", "1", "1"]], "unit": [["1", "1"]],
                       "trace": [["1", "1"]]}},
        "theta": {"b": [["1", "1", "1"]]},
    }
    p = tmp_path / "t.json"
    p.write_text(json.dumps(doc))
    assert call("tqft-verify", str(p))[0] == 0
    doc["closed"]["trace"] = [["1", "2"]]
    p.write_text(json.dumps(doc))
    assert call("tqft-verify", str(p))[0] == 1


def test_wiring_error_is_input_error(tmp_path):
    p = tmp_path / "w.txt"
    p.write_text("input: a:b,b\noutput: c\nnode m = pants-multiply a a -> c\n")
    code, _, err = call("tqft-eval", "m2", str(p))
    assert code == 2 and "WiringTypeError" in err


def _spec(**extra):
    d = {"field": "Q", "basis": [["1", 0], ["e", 1], ["f", 0]], "differential": [["e", "f", "1"]]}
    d.update(extra)
    return d


def test_homology_document(tmp_path):
    p = tmp_path / "c.json"
    p.write_text(json.dumps(_spec()))
    code, out, _ = call("homology", str(p), "--window", "0:1")
    assert code == 0 and table(out) == [1, 0]


def test_homology_d_squared_nonzero(tmp_path):
    d = {"basis": [["a", 2], ["b", 1], ["c", 0]], "differential": [["a", "b", "1"], ["b", "c", "1"]],
         "unit": "c", "multiplication": []}
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(d))
    code, _, err = call("homology", str(p))
    assert code == 2 and "AxiomViolation" in err and "violated at a" in err


@pytest.mark.parametrize("argv", [
    ("verify-suite", "nonsense"),
    ("hh", "--model", "sphere:3", "--window", "5:1"),
    ("hh", "--model", "sphere:3", "--field", "R"),
    ("hh", "--model", "moon:3"),
    ("tor", "--model", "sphere:3", "--left", "klein"),
    ("homology", "/nonexistent.json"),
    ("frobnicate",),
    ("tqft-verify", "nope"),
])
def test_input_errors_exit_2(argv):
    code, _, err = call(*argv)
    assert code == 2 and err


def test_malformed_json(tmp_path):
    p = tmp_path / "x.json"
    p.write_text("{not json")
    code, _, err = call("homology", str(p))
    assert code == 2 and "line 1" in err


def test_models_listing_and_oracle():
    code, out, _ = call("models", "--format", "json")
    assert code == 0 and "sphere:N" in json.loads(out)["data"]["models"]
    code, out, _ = call("models", "--model", "sphere:3", "--window", "0:6")
    assert table(out) == [1, 0, 1, 1, 1, 1, 1]


@pytest.mark.parametrize("a", [exterior_algebra(-3), truncated_polynomial(2, 4), even_sphere_cochains(2, -8)])
def test_algebra_documents_round_trip(a):
    b = load_algebra_document(json.loads(json.dumps(algebra_document(a))))
    assert b.complex.basis.elements == a.complex.basis.elements
    assert {k: v for k, v in b.mult.items() if v} == {k: v for k, v in a.mult.items() if v}
    assert b.complex.betti() == a.complex.betti()


def test_models_emit(tmp_path):
    p = tmp_path / "m.json"
    assert call("models", "--model", "truncpoly:2:4", "--emit", "--out", str(p))[0] == 0
    code, out, _ = call("hh", "--model", str(p), "--window", "0:4")
    assert code == 0
    assert table(out) == table(call("hh", "--model", "truncpoly:2:4", "--window", "0:4")[1])


def test_hh_category_chain_level():
    code, out, _ = call("hh-category", "--model", "poly:2:10", "--objects", "point,k", "--chain-level",
                        "--window", "0:8")
    assert code == 0
    assert table(out) == [1, 0, 1, 1, 1, 1, 1, 1, 1]
    assert "cutoffs: 1,2,3" in out


@pytest.mark.parametrize("name", sorted(SUITES))
def test_suites_pass(name):
    doc = verify_suite(name)
    assert doc.entries and doc.passed, [e for e in doc.entries if not e["passed"]]


def test_verify_suite_cli_lines():
    code, out, _ = call("verify-suite", "cardy")
    assert code == 0
    lines = [l for l in out.splitlines() if l.startswith(("PASS", "FAIL"))]
    assert lines and all(l.startswith("PASS") for l in lines)
