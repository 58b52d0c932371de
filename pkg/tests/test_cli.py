import csv
import io
import json
import subprocess
import sys

import jsonschema
import pytest

from psdec.cli import OUTPUT_SCHEMA, main
from psdec.reports import EXPECTED_DEVIATION, Report


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    payload = json.loads(out)
    jsonschema.validate(payload, OUTPUT_SCHEMA)
    return code, payload


def test_cone_rows(capsys):
    assert len(run_json(capsys, "cone", "--max-level", "1")[1]["entries"]) == 4
    code, payload = run_json(capsys, "cone", "--max-level", "0")
    assert code == 0 and [e["c"] for e in payload["entries"]] == [[0, 0, 0]]


def test_cone_classes(capsys):
    _, payload = run_json(capsys, "cone", "--max-level", "2", "--classes")
    rows = payload["entries"]
    assert len(rows) == 7
    assert sum(r["class_size"] for r in rows) == 1 + 3 + 6
    assert [len(r["members"]) for r in rows] == [r["class_size"] for r in rows]


@pytest.mark.parametrize("argv", [
    ["cone", "--max-level", "31"],
    ["cone"],
    ["decompose", "--c", "1,1,3", "--q", "2"],
    ["decompose", "--c", "1,2", "--q", "2"],
    ["decompose", "--c", "2,3,4", "--q", "1"],
    ["zeta", "--max-n", "41", "--q", "2"],
    ["zeta", "--max-n", "6"],
    ["zeta", "--max-n", "6", "--symbolic", "--aggregate"],
    ["verify", "group", "--m", "1"],
    ["verify", "group", "--p", "4", "--m", "1"],
    ["verify", "gl3", "--p", "2", "--m", "1", "--backend", "polymod"],
    ["bogus"],
    ["cone", "--max-level", "1", "--format", "xml"],
])
def test_usage_errors_exit_1(capsys, argv):
    with pytest.raises(SystemExit) as exc_info:
        code = main(argv)
        raise SystemExit(code)
    assert exc_info.value.code == 1
    assert capsys.readouterr().err


def test_decompose_records(capsys):
    _, payload = run_json(capsys, "decompose", "--c", "2,3,4", "--q", "3")
    rec = payload["entries"][0]
    assert (rec["count"], rec["dim"]) == (1, 8424)
    assert rec["representative"] == [2, 3, 4]
    _, payload = run_json(capsys, "decompose", "--c", "2,3,4", "--q", "2")
    assert payload["entries"][0]["count"] == 0
    assert payload["entries"][0]["note"] == "V_c = 0"
    _, payload = run_json(capsys, "decompose", "--c", "1,0,1", "--q", "5")
    assert (payload["entries"][0]["count"], payload["entries"][0]["dim"]) == (1, 30)


def test_zeta_rows(capsys):
    code, payload = run_json(capsys, "zeta", "--q", "3", "--max-n", "6")
    assert code == 0
    rows = {(r["family"], r["n"]): r for r in payload["entries"]}
    r = rows[("eta2", 5)]
    assert (r["catalogue"], r["printed"], r["agrees"], r["status"]) == (2, 8, False, EXPECTED_DEVIATION)
    _, payload = run_json(capsys, "zeta", "--q", "2", "--max-n", "4")
    r = next(r for r in payload["entries"] if (r["family"], r["n"]) == ("eta1", 4))
    assert (r["catalogue"], r["printed"], r["agrees"]) == (3, 3, True)


def test_zeta_symbolic_and_aggregate(capsys):
    _, payload = run_json(capsys, "zeta", "--symbolic", "--max-n", "6")
    r = next(r for r in payload["entries"] if (r["family"], r["n"]) == ("eta2", 6))
    assert r["catalogue"] == [1] and r["printed"] == [2, 2, 1]
    _, payload = run_json(capsys, "zeta", "--q", "2", "--aggregate", "--max-n", "5")
    agg = {e["dimension"]: e["count"] for e in payload["entries"]}
    assert agg[21] == 5 and agg[6] == 2


def test_verify_group(capsys):
    code, payload = run_json(capsys, "verify", "group", "--p", "3", "--m", "2", "--delta-exp", "0")
    assert code == 0
    assert {r["status"] for r in payload["reports"]} == {"pass"}
    code, payload = run_json(capsys, "verify", "group", "--p", "2", "--m", "1", "--delta-exp", "0")
    assert code == 0
    vcm = next(r for r in payload["reports"] if r["check"] == "group.vcm_constituents")
    assert vcm["detail"]["constituents"] == [] and vcm["detail"]["count"] == 0


def test_verify_gl3_deterministic(capsys):
    argv = ["verify", "gl3", "--p", "2", "--c", "2,2,3", "--m", "1", "--seed", "7"]
    code, first, _ = run(capsys, *argv)
    assert code == 0
    assert run(capsys, *argv)[1] == first
    payload = json.loads(first)
    assert {r["status"] for r in payload["reports"]} == {"pass"}


def test_verify_failure_exit_3(capsys):
    code, payload = run_json(capsys, "verify", "gl3", "--p", "2", "--c", "3,3,4", "--m", "2")
    assert code == 3
    assert "fail" in {r["status"] for r in payload["reports"]}


def test_verify_all(capsys):
    code, payload = run_json(capsys, "verify", "all", "--p", "3", "--m", "1")
    assert code == 0
    checks = {r["check"] for r in payload["reports"]}
    assert {"group.hom_pattern", "gl3.iwahori", "closed.flag_identity", "zeta.eta2"} <= checks
    statuses = {r["check"]: r["status"] for r in payload["reports"]}
    assert statuses["zeta.eta2"] == EXPECTED_DEVIATION


def test_reports_round_trip(capsys):
    _, payload = run_json(capsys, "verify", "group", "--p", "2", "--m", "2", "--delta-exp", "1")
    for data in payload["reports"]:
        assert Report.from_dict(data).to_dict() == data


def test_csv_and_table(capsys):
    _, out, _ = run(capsys, "cone", "--max-level", "1", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 4 and rows[0]["c"] == "[0,0,0]"
    _, out, _ = run(capsys, "cone", "--max-level", "1", "--format", "table")
    lines = out.strip().splitlines()
    assert lines[0].split()[0] == "c" and set(lines[1]) <= {"-", " "}
    assert len(lines) == 6


def test_enumeration_bound_from_environment(capsys, monkeypatch):
    from psdec import spectral

    spectral.setting.cache_clear()
    monkeypatch.setenv("PSDEC_BOUND", "100")
    code, _, err = run(capsys, "verify", "group", "--p", "3", "--m", "1")
    assert code == 1 and "bound" in err
    spectral.setting.cache_clear()


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "psdec", "decompose", "--c", "1,1,1", "--q", "2"],
        capture_output=True, text=True, check=True,
    )
    assert json.loads(out.stdout)["entries"][0]["dim"] == 8
