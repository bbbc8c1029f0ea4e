"""Command-line behaviour: output shape, exit codes, cache, determinism."""
import json
import subprocess
import sys

from fecount.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def last_record(out):
    return json.loads(out.strip().splitlines()[-1])


class TestDynkinCommand:
    def test_both_methods_agree(self, capsys):
        code, out, _ = run_cli(capsys, "dynkin", "A", "5", "--method", "both")
        rec = last_record(out)
        assert code == 0
        assert rec["values"] == {"closed": "1296", "recursive": "1296"}
        assert rec["agree"] is True

    def test_single_token_and_single_method(self, capsys):
        code, out, _ = run_cli(capsys, "dynkin", "E7", "--method", "closed")
        rec = last_record(out)
        assert code == 0
        assert rec["values"] == {"closed": "1062882"}
        assert "agree" not in rec

    def test_all_methods_on_d4(self, capsys):
        code, out, _ = run_cli(capsys, "dynkin", "D4", "--method", "all")
        rec = last_record(out)
        assert code == 0 and rec["agree"] is True
        assert set(rec["values"]) == {"closed", "recursive", "oracle"}
        assert set(rec["values"].values()) == {"162"}

    def test_oracle_infeasibility_is_reported_not_fatal(self, capsys):
        code, out, _ = run_cli(capsys, "dynkin", "A9", "--method", "all",
                               "--budget-ms", "0")
        rec = last_record(out)
        assert code == 0  # closed and recursive still agree
        assert rec["agree"] is True and "oracle" not in rec["values"]
        assert any("oracle skipped" in note for note in rec["notes"])

    def test_parse_failure(self, capsys):
        code, _, err = run_cli(capsys, "dynkin", "Q5")
        assert code == 2 and "cannot parse" in err


class TestAffineCommand:
    def test_headline_value(self, capsys):
        code, out, _ = run_cli(capsys, "affine", "2", "3", "5")
        rec = last_record(out)
        assert code == 0 and rec["agree"] is True
        assert rec["values"]["closed"] == "2551500000"

    def test_canonicalizes_argument_order(self, capsys):
        _, out1, _ = run_cli(capsys, "affine", "3", "5", "2", "--method", "closed")
        _, out2, _ = run_cli(capsys, "affine", "2", "3", "5", "--method", "closed")
        assert last_record(out1)["values"] == last_record(out2)["values"]
        assert last_record(out1)["query"] == "affine (2,3,5)"

    def test_rejects_non_positive_euler_number(self, capsys):
        code, _, err = run_cli(capsys, "affine", "2", "3", "7")
        assert code == 2
        assert "(1,p,q), (2,2,r), (2,3,3), (2,3,4), (2,3,5)" in err

    def test_oracle_method_is_refused(self, capsys):
        code, _, err = run_cli(capsys, "affine", "2", "2", "2", "--method", "oracle")
        assert code == 2 and "no finite oracle" in err

    def test_cache_round_trip(self, capsys, tmp_path):
        path = tmp_path / "cache.txt"
        code, out1, _ = run_cli(capsys, "-v", "affine", "2", "3", "4",
                                "--cache", str(path))
        assert code == 0 and path.exists()
        assert "2,3,4 -> 46448640" in path.read_text()
        code, out2, err2 = run_cli(capsys, "-v", "affine", "2", "3", "4",
                                   "--cache", str(path))
        assert code == 0
        assert last_record(out1)["values"] == last_record(out2)["values"]
        assert "hits" in err2  # cache activity is logged when verbose


class TestForestAndOracleCommands:
    def test_forest(self, capsys):
        code, out, _ = run_cli(capsys, "forest", "A2", "A2", "A2")
        assert code == 0 and last_record(out)["values"]["closed"] == "2430"

    def test_oracle(self, capsys):
        code, out, _ = run_cli(capsys, "oracle", "A4")
        assert code == 0 and last_record(out)["values"]["oracle"] == "125"

    def test_oracle_budget_env(self, capsys, monkeypatch):
        monkeypatch.setenv("FEC_ORACLE_BUDGET_MS", "0")
        code, _, err = run_cli(capsys, "oracle", "E6")
        assert code == 2 and "exceeded" in err

    def test_oracle_budget_env_must_be_numeric(self, capsys, monkeypatch):
        monkeypatch.setenv("FEC_ORACLE_BUDGET_MS", "soon")
        code, _, err = run_cli(capsys, "oracle", "A2")
        assert code == 2 and "FEC_ORACLE_BUDGET_MS" in err


class TestVerifyCommand:
    def test_hurwitz_record_count_and_status(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "hurwitz", "--max", "15")
        records = [json.loads(line) for line in out.strip().splitlines()]
        assert code == 0
        assert len(records) == 240
        assert all(r["holds"] for r in records)

    def test_tables_suite(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "tables")
        records = [json.loads(line) for line in out.strip().splitlines()]
        assert code == 0 and all(r["matches"] for r in records)
        noted = [r for r in records if "note" in r]
        assert {r["table"] for r in noted} == {"(2,3,4)"}

    def test_cross_suite(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "cross", "--max-mu", "14")
        records = [json.loads(line) for line in out.strip().splitlines()]
        assert code == 0 and len(records) == 62
        assert all(r["agree"] for r in records)

    def test_markdown_format(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "hurwitz", "--max", "2",
                               "--format", "md")
        assert code == 0 and out.splitlines()[0].startswith("| check |")


class TestTableCommand:
    def test_dynkin_markdown_matches_known_counts(self, capsys):
        code, out, _ = run_cli(capsys, "table", "--dynkin", "--max-rank", "8",
                               "--format", "md")
        assert code == 0
        assert "| A5 | 1296 | 1296 |" in out
        assert "| E8 | 37968750 | 37968750 |" in out

    def test_affine_json_contains_headline_triple(self, capsys):
        code, out, _ = run_cli(capsys, "table", "--affine", "--max-mu", "9",
                               "--format", "json")
        records = [json.loads(line) for line in out.strip().splitlines()]
        assert code == 0
        wanted = [r for r in records if r["triple"] == "(2,3,5)"]
        assert wanted and wanted[0]["e"] == "2551500000"

    def test_affine_csv_smallest_sweep(self, capsys):
        code, out, _ = run_cli(capsys, "table", "--affine", "--max-mu", "2",
                               "--format", "csv")
        lines = out.strip().splitlines()
        assert code == 0
        assert lines[0] == "triple,e,deg_ll"
        assert lines[1:] == ['"(1,1,1)",1,1']


class TestDeterminism:
    def test_identical_runs_identical_bytes_apart_from_timing(self, capsys):
        import re

        def scrub(out):
            return re.sub(r', "elapsed_ms": [0-9.e+-]+}', "}", out)

        _, out1, _ = run_cli(capsys, "affine", "2", "3", "4", "--method", "all")
        _, out2, _ = run_cli(capsys, "affine", "2", "3", "4", "--method", "all")
        assert scrub(out1) == scrub(out2)
        assert out1 != scrub(out1)  # the timing field really was present

    def test_values_parse_back_exactly(self, capsys):
        _, out, _ = run_cli(capsys, "affine", "2", "3", "5", "--method", "closed")
        value = last_record(out)["values"]["closed"]
        assert int(value) == 2551500000


def test_console_entry_point_runs_in_subprocess():
    proc = subprocess.run(
        [sys.executable, "-m", "fecount.cli", "dynkin", "A3", "--method", "both"],
        capture_output=True,
        text=True,
        timeout=60,
    )
    assert proc.returncode == 0
    rec = json.loads(proc.stdout.strip())
    assert rec["values"]["closed"] == "16"
