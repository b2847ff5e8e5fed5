"""Command line behavior: exit codes, report stability, input validation."""

import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from indres.cli import main

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture()
def runner():
    return CliRunner()


def invoke(runner, *args):
    return runner.invoke(main, list(args), catch_exceptions=False)


def test_table_command(runner):
    r = invoke(runner, "table", "S4")
    assert r.exit_code == 0
    assert "order 24" in r.output
    assert "degrees [1, 1, 2, 3, 3]" in r.output


def test_table_unknown_group(runner):
    r = runner.invoke(main, ["table", "nosuch"])
    assert r.exit_code == 2


def test_blocks_command(runner):
    r = invoke(runner, "blocks", "S5", "-p", "2")
    assert r.exit_code == 0
    lines = [ln for ln in r.output.splitlines() if ln.startswith("block")]
    assert len(lines) == 2


def test_quotients_command(runner):
    r = invoke(runner, "quotients", "S4", "-p", "2")
    assert r.exit_code == 0
    assert "Q1 = Z^2" in r.output
    assert "Q2 = Z^2" in r.output


def test_verify_all_hold(runner, tmp_path):
    out = tmp_path / "report.json"
    r = invoke(runner, "verify", "S4", "-p", "2", "-o", str(out))
    assert r.exit_code == 0
    report = json.loads(out.read_text())
    assert all(v["holds"] for v in report["verdicts"].values())
    assert report["ml_counts"]["equal"] is True
    # big integers travel as decimal strings
    assert report["instance"]["order"] == "24"


def test_verify_reports_are_byte_stable(runner, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    invoke(runner, "verify", "A5", "-p", "2", "-o", str(a))
    invoke(runner, "verify", "A5", "-p", "2", "-o", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_verify_subset_of_properties(runner):
    r = invoke(runner, "verify", "S4", "-p", "2", "--props", "pres,pind")
    assert r.exit_code == 0


def test_verify_in_counts(runner):
    r = invoke(runner, "verify", "S4", "-p", "2", "--props", "in")
    assert r.exit_code == 0


def test_verify_bad_property_name(runner):
    r = runner.invoke(main, ["verify", "S4", "-p", "2", "--props", "bogus"])
    assert r.exit_code == 2


def test_group_json_input(runner, tmp_path):
    path = tmp_path / "s3.json"
    path.write_text(
        json.dumps(
            {
                "format": "perm-group",
                "degree": 3,
                "order": "6",
                "generators": [[2, 1, 3], [2, 3, 1]],
            }
        )
    )
    r = invoke(runner, "verify", str(path), "-p", "2")
    assert r.exit_code == 0


def test_group_json_wrong_order_aborts(runner, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(
        json.dumps(
            {
                "format": "perm-group",
                "degree": 3,
                "order": "12",
                "generators": [[2, 1, 3], [2, 3, 1]],
            }
        )
    )
    r = runner.invoke(main, ["verify", str(path), "-p", "2"])
    assert r.exit_code == 2


def test_external_table_reconciles(runner, tmp_path):
    table_path = tmp_path / "s4table.json"
    r = invoke(runner, "table", "S4", "-o", str(table_path))
    assert r.exit_code == 0
    r2 = invoke(
        runner, "verify", "S4", "-p", "2", "--table-g", str(table_path)
    )
    assert r2.exit_code == 0


def test_oracle_subgroup_lattice(runner):
    r = invoke(runner, "oracle", "subgroup-lattice", "S3", "-p", "2")
    assert r.exit_code == 0
    assert "HNF equal" in r.output


def test_oracle_brute_classes(runner):
    r = invoke(runner, "oracle", "brute-classes", "Q8")
    assert r.exit_code == 0


def test_oracle_brute_table(runner):
    r = invoke(runner, "oracle", "brute-table", "S3")
    assert r.exit_code == 0


def test_oracle_budget_exceeded_is_usage_error(runner):
    r = runner.invoke(
        main, ["oracle", "brute-classes", "S4", "--budget-classes", "10"]
    )
    assert r.exit_code == 2


def test_paper_table_small_suite(runner):
    r = invoke(runner, "paper-table", "small")
    assert r.exit_code == 0
    assert "27 of 27 rows match" in r.output


def test_fixture_witness_run_passes(runner, tmp_path):
    out = tmp_path / "fxg.json"
    r = runner.invoke(
        main,
        [
            "verify",
            str(FIXTURES / "fixture_group.json"),
            "-p",
            "2",
            "--subgroup-mode",
            "block:1",
            "--props",
            "wirc,pres,pind,g",
            "--witness",
            str(FIXTURES / "fixture_witness.json"),
            "-o",
            str(out),
        ],
    )
    assert r.exit_code == 0
    report = json.loads(out.read_text())
    assert report["verdicts"]["g"]["holds"] is True
    assert all(v["holds"] for v in report["verdicts"].values())


def test_fixture_block_irc_fails_with_certificate(runner, tmp_path):
    out = tmp_path / "fx.json"
    r = runner.invoke(
        main,
        [
            "verify",
            str(FIXTURES / "fixture_group.json"),
            "-p",
            "2",
            "--subgroup-mode",
            "block:1",
            "--props",
            "irc",
            "-o",
            str(out),
        ],
    )
    assert r.exit_code == 1
    report = json.loads(out.read_text())
    v = report["verdicts"]["irc"]
    assert v["holds"] is False
    assert "matching" in v["certificate"]
