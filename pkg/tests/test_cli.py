import json

import pytest

from permprob.cli import main
from permprob.output import CsvDoc


@pytest.fixture(autouse=True)
def isolated_cwd(tmp_path, monkeypatch):
    """Keep config lookup and output files inside a scratch directory."""
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv("PERMPROB_CONFIG", raising=False)
    return tmp_path


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestDist:
    def test_csv_reproduces_triangle(self, capsys):
        code, out, _ = run(capsys, "dist", "--family", "C", "--n", "6")
        assert code == 0
        doc = CsvDoc.parse(out)
        assert doc.header == ["n", "m", "count"]
        rows = {(int(r[0]), int(r[1])): int(r[2]) for r in doc.rows}
        assert rows[(6, 0)] == 1
        assert rows[(6, 2)] == 15
        assert rows[(6, 5)] == 264
        assert rows[(6, 6)] == 265
        assert rows[(5, 4)] == 45

    def test_b_triangle_row8(self, capsys):
        code, out, _ = run(capsys, "dist", "--family", "B", "--n", "8")
        assert code == 0
        rows = {(int(r[0]), int(r[1])): int(r[2]) for r in CsvDoc.parse(out).rows}
        assert rows[(8, 7)] == 14833
        assert rows[(8, 8)] == 16687

    def test_a_triangle_single_nonzero_row(self, capsys):
        code, out, _ = run(capsys, "dist", "--family", "A", "--n", "4")
        assert code == 0
        nonzero = [r for r in CsvDoc.parse(out).rows if r[2] != "0"]
        assert nonzero == [["1", "1", "1"], ["2", "2", "2"], ["3", "3", "6"],
                           ["4", "4", "24"]]

    def test_json_format(self, capsys):
        code, out, _ = run(capsys, "dist", "--family", "C", "--n", "2",
                           "--format", "json")
        assert code == 0
        doc = json.loads(out)
        assert doc["family"] == "C"
        assert {"n": 2, "m": 2, "count": 1} in doc["rows"]

    def test_missing_family_is_usage_error(self, capsys):
        code, _, err = run(capsys, "dist", "--n", "3")
        assert code == 2
        assert "family" in err

    def test_svg_rejected_by_parser(self, capsys):
        code, _, _ = run(capsys, "dist", "--family", "C", "--format", "svg")
        assert code == 2

    def test_guard_violation_exit_code(self, capsys):
        code, _, err = run(capsys, "dist", "--family", "C", "--n", "31")
        assert code == 3
        assert "--force" in err

    def test_output_file_and_roundtrip(self, capsys, isolated_cwd):
        out_path = isolated_cwd / "w.csv"
        code, _, _ = run(capsys, "dist", "--family", "C", "--n", "4",
                         "--out", str(out_path))
        assert code == 0
        text = out_path.read_text()
        assert text.endswith("\n") and "\r" not in text
        assert CsvDoc.parse(text).render() == text


class TestExact:
    def test_csv_counts_and_polynomial_comment(self, capsys):
        code, out, _ = run(capsys, "exact", "--family", "A", "--n", "3")
        assert code == 0
        doc = CsvDoc.parse(out)
        assert any("78r^3(1-r)^6" in c for c in doc.comments)
        counts = [int(r[1]) for r in doc.rows]
        assert counts == [1, 9, 36, 78, 90, 45, 6, 0, 0, 0]

    def test_c2_counts(self, capsys):
        code, out, _ = run(capsys, "exact", "--family", "C", "--n", "2")
        assert code == 0
        assert [int(r[1]) for r in CsvDoc.parse(out).rows] == [1, 2, 0]

    def test_b1_counts(self, capsys):
        code, out, _ = run(capsys, "exact", "--family", "B", "--n", "1")
        assert code == 0
        doc = CsvDoc.parse(out)
        assert [int(r[1]) for r in doc.rows] == [1, 0]
        assert any("(1-r)" in c for c in doc.comments)

    def test_json_format(self, capsys):
        code, out, _ = run(capsys, "exact", "--family", "B", "--n", "3",
                           "--format", "json")
        assert code == 0
        doc = json.loads(out)
        assert doc["counts"] == [1, 6, 13, 10, 2, 0, 0, 0]
        assert doc["variables"] == 7
        assert doc["polynomial"].startswith("(1-r)^7")

    def test_guard_violation(self, capsys):
        code, _, _ = run(capsys, "exact", "--family", "A", "--n", "6")
        assert code == 3


class TestCompare:
    def test_all_families_header(self, capsys):
        code, out, _ = run(capsys, "compare", "--n", "2", "--grid", "11")
        assert code == 0
        doc = CsvDoc.parse(out)
        assert doc.header == ["r", "Q_A", "P_A", "Q_B", "P_B", "Q_C", "P_C"]
        assert len(doc.rows) == 11
        # independence is exact at n=2, so the paired columns coincide
        for row in doc.rows:
            assert row[1] == row[2] and row[3] == row[4] and row[5] == row[6]

    def test_family_subset(self, capsys):
        code, out, _ = run(capsys, "compare", "--n", "2", "--grid", "5",
                           "--family", "A", "--family", "C")
        assert code == 0
        assert CsvDoc.parse(out).header == ["r", "Q_A", "P_A", "Q_C", "P_C"]

    def test_csv_roundtrip_byte_identical(self, capsys, isolated_cwd):
        out_path = isolated_cwd / "cmp.csv"
        code, _, _ = run(capsys, "compare", "--n", "3", "--grid", "21",
                         "--out", str(out_path))
        assert code == 0
        text = out_path.read_text()
        assert CsvDoc.parse(text).render() == text

    def test_json_format(self, capsys):
        code, out, _ = run(capsys, "compare", "--n", "2", "--grid", "3",
                           "--family", "B", "--format", "json")
        assert code == 0
        doc = json.loads(out)
        assert doc["rows"][0] == {"r": 0.0, "Q_B": 1.0, "P_B": 1.0}

    def test_svg_deterministic_and_self_contained(self, capsys):
        code, first, _ = run(capsys, "compare", "--n", "2", "--grid", "21",
                             "--format", "svg")
        assert code == 0
        code, second, _ = run(capsys, "compare", "--n", "2", "--grid", "21",
                              "--format", "svg")
        assert first == second
        assert first.startswith("<svg")
        assert first.count("<polyline") == 6
        assert "href" not in first and "url(" not in first
        # legend names every curve
        for label in ("Q (A)", "P (A)", "Q (B)", "P (B)", "Q (C)", "P (C)"):
            assert label in first

    def test_bad_grid_usage_error(self, capsys):
        code, _, _ = run(capsys, "compare", "--n", "2", "--grid", "1")
        assert code == 2


class TestValidate:
    def test_default_run_passes(self, capsys):
        code, out, _ = run(capsys, "validate", "--n", "5")
        assert code == 0
        assert "FAIL" not in out
        assert "checks passed" in out

    def test_artifact_verification_and_tampering(self, capsys, isolated_cwd):
        path = isolated_cwd / "dist.csv"
        assert run(capsys, "dist", "--family", "C", "--n", "4",
                   "--out", str(path))[0] == 0
        code, out, _ = run(capsys, "validate", "--n", "2", str(path))
        assert code == 0
        assert f"artifact:{path}" in out

        tampered = path.read_text().replace("3,3,2", "3,3,7")
        path.write_text(tampered)
        code, out, _ = run(capsys, "validate", "--n", "2", str(path))
        assert code == 1
        assert "FAIL" in out

    def test_exact_artifact_verification(self, capsys, isolated_cwd):
        path = isolated_cwd / "exact.csv"
        assert run(capsys, "exact", "--family", "B", "--n", "3",
                   "--out", str(path))[0] == 0
        assert run(capsys, "validate", "--n", "2", str(path))[0] == 0

    def test_oeis_network_down_still_exits_zero(self, capsys, monkeypatch):
        monkeypatch.setenv("PERMPROB_OEIS_URL", "http://127.0.0.1:9")
        monkeypatch.setenv("PERMPROB_OEIS_TIMEOUT", "0.5")
        code, out, _ = run(capsys, "validate", "--n", "3", "--oeis")
        assert code == 0
        assert "skipped" in out


class TestSeq:
    def test_offline_report(self, capsys):
        code, out, _ = run(capsys, "seq")
        assert code == 0
        assert "A000166" in out and "A000255" in out
        assert "FAIL" not in out

    def test_oeis_flag_with_unreachable_endpoint(self, capsys, monkeypatch):
        monkeypatch.setenv("PERMPROB_OEIS_URL", "http://127.0.0.1:9")
        monkeypatch.setenv("PERMPROB_OEIS_TIMEOUT", "0.5")
        code, out, _ = run(capsys, "seq", "--oeis")
        assert code == 0
        assert "skipped" in out


class TestConfigFile:
    def test_config_supplies_defaults(self, capsys, isolated_cwd):
        (isolated_cwd / "permprob.conf").write_text("family=C\nn=2\n")
        code, out, _ = run(capsys, "dist")
        assert code == 0
        rows = CsvDoc.parse(out).rows
        assert rows[-1] == ["2", "2", "1"]

    def test_flags_override_config(self, capsys, isolated_cwd):
        (isolated_cwd / "permprob.conf").write_text("family=C\nn=6\n")
        code, out, _ = run(capsys, "dist", "--n", "1")
        assert code == 0
        assert CsvDoc.parse(out).rows == [["1", "0", "1"], ["1", "1", "0"]]

    def test_env_selects_config_path(self, capsys, isolated_cwd, monkeypatch):
        other = isolated_cwd / "alt.conf"
        other.write_text("family=B\nn=1\n")
        monkeypatch.setenv("PERMPROB_CONFIG", str(other))
        code, out, _ = run(capsys, "dist")
        assert code == 0
        assert CsvDoc.parse(out).metadata()["family"] == "B"

    def test_defaults_need_no_config(self, capsys):
        code, _, _ = run(capsys, "compare", "--n", "2", "--grid", "3")
        assert code == 0


class TestUsage:
    def test_unknown_subcommand(self, capsys):
        assert run(capsys, "frobnicate")[0] == 2

    def test_unknown_family_value(self, capsys):
        assert run(capsys, "dist", "--family", "D")[0] == 2

    def test_bad_config_family(self, capsys, isolated_cwd):
        (isolated_cwd / "permprob.conf").write_text("family=Z\n")
        assert run(capsys, "dist")[0] == 2
