import dataclasses
import json
import os
import subprocess
import sys

import pytest

import pgt.suites as suites
from pgt.catalog import catalog_group
from pgt.cli import main
from pgt.constructions import D4, heisenberg
from pgt.io import GroupFileError, dump_group, group_from_document, load_group
from pgt.suites import CSV_COLUMNS, emit_report, run_suite


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def heis_file(tmp_path):
    path = tmp_path / "heisenberg-3-2.json"
    dump_group(heisenberg(3, 2), path)
    return path


@pytest.mark.parametrize("make", [D4, lambda: heisenberg(3, 2), lambda: catalog_group("paperH-3-3")])
def test_round_trip(tmp_path, make):
    G = make()
    path = tmp_path / "g.json"
    dump_group(G, path)
    H = load_group(path)
    assert H.model == G.model and H.order == G.order
    assert H.to_json() == G.to_json()


def test_round_trip_suite_report(tmp_path):
    G = heisenberg(3, 2)
    G.name = "h"
    path = tmp_path / "h.json"
    dump_group(G, path)
    a = emit_report(run_suite("theorem", [G]))
    b = emit_report(run_suite("theorem", [load_group(path)]))
    assert a == b


def test_permutation_document():
    G = group_from_document({"model": "perm", "degree": 4, "generators": [[1, 2, 3, 0], [3, 1, 2, 0]]})
    assert G.order == 24


def test_json_syntax_error_position(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"model": "table",\n "order": 2,\n "mul": [[0, 1], [1, 0]\n}')
    with pytest.raises(GroupFileError) as exc:
        load_group(path)
    assert exc.value.where.startswith(f"{path}:4:")


def test_field_diagnostics():
    doc = {"model": "bilinear", "p": 3, "d": 2, "m": 1, "B": [[[0], [1]], [[2]]]}
    with pytest.raises(GroupFileError, match=r"field 'B\[1\]': expected length 2"):
        group_from_document(doc, "x.json")
    with pytest.raises(GroupFileError, match="field 'p'"):
        group_from_document({"model": "bilinear", "p": "3"}, "x.json")
    with pytest.raises(GroupFileError, match="field 'model'"):
        group_from_document({"model": "matrix"}, "x.json")


def test_info(capsys, heis_file):
    code, out, _ = run(capsys, "info", str(heis_file))
    assert code == 0
    for line in ("p=3", "|G|=729", "n_total=4", "m=2", "b=2", "l=2"):
        assert line in out.splitlines()


def test_construct_then_info(capsys, tmp_path, heis_file):
    out_file = tmp_path / "out.json"
    assert run(capsys, "construct", "heisenberg", "--p", "3", "--a", "2", "-o", str(out_file))[0] == 0
    _, first, _ = run(capsys, "info", str(heis_file))
    _, second, _ = run(capsys, "info", str(out_file))
    assert first == second


def test_verify_lemmas_d4(capsys, tmp_path):
    path = tmp_path / "D4.json"
    dump_group(D4(), path)
    code, out, _ = run(capsys, "verify", "--suite", "lemmas", str(path))
    assert code == 0 and json.loads(out)["status"] == "pass"


def test_malformed_file_exit_2(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"model": "table", "order": 2, "mul": [[0, 1], [1]]}')
    code, _, err = run(capsys, "info", str(path))
    assert code == 2 and "field 'mul[1]'" in err


def test_usage_error_exit_2(capsys):
    assert run(capsys, "verify", "--suite", "nonsense", "x.json")[0] == 2
    assert run(capsys, "info", "no-such-group")[0] == 2


def test_maxabel(capsys):
    code, out, _ = run(capsys, "maxabel", "extraspecial-3-1", "--all")
    doc = json.loads(out)
    assert code == 0 and doc["count"] == 4 and len(doc["subgroups"]) == 4


def test_certify(capsys):
    code, out, _ = run(capsys, "certify", "D4", "--subgroup", "1")
    doc = json.loads(out)
    assert code == 0 and doc["certificates"][0]["a"] == 1
    assert "ses_certificate" in doc


def test_certify_rejects_non_maximal(capsys):
    code, _, err = run(capsys, "certify", "D4", "--subgroup", "0")
    assert code == 2 and "NotMaximalAbelian" in err


def test_fingerprint_cli(capsys):
    code, out, _ = run(capsys, "fingerprint", "heisenberg-3-1", "extraspecial-3-1")
    assert code == 0 and json.loads(out)["distinguishable"] is False


def test_catalog_listing(capsys):
    code, out, _ = run(capsys, "catalog")
    names = [e["name"] for e in json.loads(out)]
    assert code == 0 and len(names) == 17 and "gab-3-3" in names


def test_empty_suite_csv_header_only():
    text = emit_report(run_suite("lemmas", []), "csv")
    assert text == ",".join(CSV_COLUMNS) + "\n"


def test_theorem_csv_rows():
    text = emit_report(run_suite("theorem", ["extraspecial-3-1"]), "csv")
    rows = text.strip().splitlines()
    assert len(rows) == 1 + 4
    assert rows[1].startswith("theorem,extraspecial-3-1,A0,pass,2,1,1,1,1,")


def test_injected_failure_reported(monkeypatch, capsys):
    real = suites.bound_certificate

    def broken(G, A, params=None):
        return dataclasses.replace(real(G, A, params), holds=False)

    monkeypatch.setattr(suites, "bound_certificate", broken)
    report = run_suite("theorem", ["D4"], threads=1)
    doc = json.loads(emit_report(report))
    assert doc["status"] == "fail" and len(doc["counterexamples"]) == 3
    assert doc["counterexamples"][0]["group"] == "D4"


def test_injected_failure_exit_1(monkeypatch, capsys):
    import pgt.cli as cli

    real = cli.bound_certificate
    monkeypatch.setattr(cli, "bound_certificate", lambda G, A: dataclasses.replace(real(G, A), chain_strict=False))
    code, out, _ = run(capsys, "certify", "D4")
    assert code == 1 and json.loads(out)["counterexamples"]


def test_openq_never_fails():
    report = run_suite("openq", ["extraspecial-3-1", "paperH-3-3"])
    assert report.passed
    assert [r["status"] for r in report.results] == ["evidence", "not-applicable"]


def test_reports_independent_of_workers():
    names = ["D4", "extraspecial-3-1", "heisenberg-5-1"]
    a = emit_report(run_suite("theorem", names, threads=1))
    b = emit_report(run_suite("theorem", names, threads=3))
    assert a == b


def test_console_script(tmp_path):
    env = dict(os.environ, PGT_THREADS="1")
    proc = subprocess.run([sys.executable, "-m", "pgt.cli", "info", "extraspecial-3-1"], capture_output=True,
                          text=True, env=env)
    assert proc.returncode == 0 and "|G|=27" in proc.stdout
