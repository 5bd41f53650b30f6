"""Report plumbing and CLI contract: configs, determinism, formats, exit codes."""

import csv
import io
import json

import pytest

from grouplab import FactoredInteger
from grouplab import suite as suite_mod
from grouplab.cli import main
from grouplab.suite import (
    ConjectureScanRecord,
    ConjectureScanReport,
    RunConfig,
    render,
    render_json,
    run_conjecture_scan,
    run_full_suite,
    run_table1,
)


# ------------------------------------------------------------- RunConfig


def test_config_rejects_bad_fields():
    with pytest.raises(ValueError):
        RunConfig(selector="everything")
    with pytest.raises(ValueError):
        RunConfig(format="yaml")
    with pytest.raises(ValueError):
        RunConfig(cap=0)
    with pytest.raises(ValueError):
        RunConfig(workers=-1)
    with pytest.raises(ValueError):
        RunConfig(product_powers=4)
    with pytest.raises(ValueError):
        RunConfig(selector="orders")
    with pytest.raises(ValueError):
        RunConfig(selector="explicit")
    with pytest.raises(ValueError, match="over the cap"):
        RunConfig(groups=("S:7",), cap=100)


def test_config_json_round_trip():
    cfg = RunConfig(groups=("A:5", "PSL2:7"), selector="orders", orders=(2, 5), workers=3)
    assert RunConfig.from_json(cfg.to_json()) == cfg


def test_config_from_json_rejects_unknown_fields():
    with pytest.raises(ValueError, match="unknown config fields"):
        RunConfig.from_json({"groups": ["A:5"], "bogus": 1})


def test_config_resolved_workers():
    assert RunConfig(workers=3).resolved_workers() == 3
    assert RunConfig(workers=0).resolved_workers() >= 1


# ----------------------------------------------------------- determinism


def test_full_suite_json_is_deterministic_across_runs_and_workers():
    cfg1 = RunConfig(groups=("A:5", "PSL2:7"), workers=2)
    first = run_full_suite(cfg1)
    second = run_full_suite(cfg1)
    doc1 = json.loads(render_json(first))
    doc2 = json.loads(render_json(second))
    assert doc1.pop("meta") != {} and doc2.pop("meta") != {}
    assert json.dumps(doc1, sort_keys=True) == json.dumps(doc2, sort_keys=True)
    # worker count must not leak into the content
    serial = run_full_suite(RunConfig(groups=("A:5", "PSL2:7"), workers=1))
    assert serial.groups == first.groups
    assert serial.product_checks == first.product_checks
    assert serial.exploration == first.exploration


def test_scan_records_are_deterministic():
    cfg = RunConfig(groups=("A:5",), workers=2)
    assert run_conjecture_scan(cfg).records == run_conjecture_scan(cfg).records


# ---------------------------------------------------------------- formats


def _parse_csv(text: str) -> list[list[str]]:
    return list(csv.reader(io.StringIO(text)))


def test_csv_shape_for_scan():
    report = run_conjecture_scan(RunConfig(groups=("A:5", "C:6"), workers=2))
    rows = _parse_csv(render(report, "csv"))
    assert rows[0] == ["group", "representative", "check", "status", "detail"]
    assert all(len(r) == 5 for r in rows)
    # 5 classes in A5 and the C:6 skip markers, three conjectures each
    assert len(rows) - 1 == 3 * 5 + 3


def test_scan_skips_soluble_groups_with_markers():
    report = run_conjecture_scan(RunConfig(groups=("C:6",), workers=1))
    assert len(report.records) == 3
    assert {r.status for r in report.records} == {"hypothesis_not_triggered"}
    assert {r.representative for r in report.records} == {""}
    assert not report.counterexamples


def test_csv_shape_for_suite():
    report = run_full_suite(RunConfig(groups=("A:5",), workers=2))
    rows = _parse_csv(render(report, "csv"))
    assert rows[0] == ["group", "representative", "check", "status", "detail"]
    assert all(len(r) == 5 for r in rows)
    lemma_rows = [r for r in rows[1:] if r[0] == "A:5"]
    # 13 lemma items x 5 classes plus the theorem instances
    assert len(lemma_rows) >= 65


def test_table1_report():
    report = run_table1(RunConfig(workers=0))
    assert report.all_ok
    assert len(report.rows) == 14
    text = render(report, "text")
    assert "all rows pass" in text
    doc = json.loads(render(report, "json"))
    assert doc["schema"] == "grouplab-report/1"
    assert doc["kind"] == "table1"
    assert all("_wall" not in row for row in doc["rows"])


def test_empty_group_list_gives_empty_reports():
    scan = run_conjecture_scan(RunConfig(groups=(), workers=1))
    assert scan.records == () and not scan.counterexamples
    full = run_full_suite(RunConfig(groups=(), workers=1))
    assert full.all_passed
    assert full.groups == () and full.quotient_checks == ()


# -------------------------------------------------------------- CLI: sol


def test_cli_sol_by_order(capsys):
    assert main(["sol", "--group", "A:5", "--order", "5"]) == 0
    out = capsys.readouterr().out
    assert "2*5" in out and "dihedral 10" in out


def test_cli_sol_json(capsys):
    assert main(["sol", "--group", "S:5", "--element", "(1,2,3)(4,5)",
                 "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["kind"] == "sol"
    assert doc["result"]["order"]["value"] == 12
    assert doc["result"]["structure"]["label"] == "dihedral 12"


def test_cli_sol_element_not_in_group(capsys):
    assert main(["sol", "--group", "A:5", "--element", "(1,2)"]) == 1
    assert "is not in A:5" in capsys.readouterr().err


def test_cli_sol_malformed_element(capsys):
    assert main(["sol", "--group", "A:5", "--element", "(1,2"]) == 1
    assert "error:" in capsys.readouterr().err


def test_cli_sol_unresolvable_order(capsys):
    assert main(["sol", "--group", "S:5", "--order", "7"]) == 1
    err = capsys.readouterr().err
    assert "no class representative of order 7" in err
    assert "[1, 2, 3, 4, 5, 6]" in err


def test_cli_usage_errors_exit_one(capsys):
    assert main(["sol", "--group", "A:5"]) == 1            # neither selector
    assert main(["sol", "--group", "A:5", "--order", "5", "--element", "()"]) == 1
    assert main(["frobnicate"]) == 1
    assert main([]) == 1
    capsys.readouterr()


def test_cli_help_exits_zero(capsys):
    assert main(["--help"]) == 0
    assert "grouplab" in capsys.readouterr().out


def test_cli_unknown_group(capsys):
    assert main(["sol", "--group", "X:9", "--order", "2"]) == 1
    assert "error:" in capsys.readouterr().err


# ------------------------------------------------------ CLI: batch modes


def test_cli_scan_ok(capsys):
    assert main(["scan", "--groups", "A:5,C:6", "--workers", "2"]) == 0
    assert "scan:" in capsys.readouterr().out


def test_cli_suite_small(capsys):
    assert main(["suite", "--groups", "A:5", "--workers", "2"]) == 0
    out = capsys.readouterr().out
    assert "all passed" in out


def test_cli_suite_empty_groups(capsys):
    assert main(["suite", "--groups", "", "--workers", "1"]) == 0
    capsys.readouterr()


def test_cli_table1(capsys):
    assert main(["table1", "--workers", "0"]) == 0
    assert "all rows pass" in capsys.readouterr().out


def test_cli_catalog(capsys):
    assert main(["catalog"]) == 0
    out = capsys.readouterr().out
    assert "PGammaL2:9" in out and "M10" in out


def test_cli_catalog_csv(capsys):
    assert main(["catalog", "--format", "csv"]) == 0
    rows = _parse_csv(capsys.readouterr().out)
    assert rows[0] == ["group", "representative", "check", "status", "detail"]
    assert len(rows) == 15


def test_cli_scan_counterexample_exits_two(monkeypatch, capsys):
    witness = {"group": "A:5", "element": "(1,2,3,4,5)", "sol_order": 27}
    fake = ConjectureScanReport(
        records=(
            ConjectureScanRecord(
                group="A:5",
                representative="(1,2,3,4,5)",
                x_order=5,
                sol_order=FactoredInteger.from_int(27),
                conjecture=2,
                status="COUNTEREXAMPLE",
                witness=witness,
            ),
        ),
        seed=0,
        meta={},
    )
    monkeypatch.setattr(suite_mod, "run_conjecture_scan", lambda config=None: fake)
    assert main(["scan"]) == 2
    out = capsys.readouterr().out
    assert "COUNTEREXAMPLE" in out and "A:5" in out
    # the recorded witness is enough to replay the offending query
    assert main(["sol", "--group", witness["group"], "--element", witness["element"]]) == 0
    capsys.readouterr()


# --------------------------------------------------------- config and out


def test_cli_config_file_and_override(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"groups": ["A:5"], "workers": 2, "format": "json"}))
    assert main(["scan", "--config", str(cfg)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["kind"] == "conjecture_scan"
    # explicit flag beats the file
    assert main(["scan", "--config", str(cfg), "--format", "csv"]) == 0
    rows = _parse_csv(capsys.readouterr().out)
    assert rows[0][0] == "group"


def test_cli_config_unknown_field(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"bogus": 1}))
    assert main(["table1", "--config", str(cfg)]) == 1
    assert "unknown config fields" in capsys.readouterr().err


def test_cli_orders_flag_switches_selector(capsys):
    assert main(["scan", "--groups", "A:5", "--orders", "5", "--workers", "1",
                 "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    reps = {r["x_order"] for r in doc["records"]}
    assert reps == {5}


def test_cli_out_writes_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    assert main(["table1", "--format", "json", "--out", str(target)]) == 0
    assert capsys.readouterr().out == ""
    doc = json.loads(target.read_text())
    assert doc["kind"] == "table1" and doc["all_ok"]


def test_cli_out_unwritable_path(tmp_path, capsys):
    bad = tmp_path / "missing" / "report.json"
    assert main(["table1", "--out", str(bad)]) == 1
    assert "error:" in capsys.readouterr().err
