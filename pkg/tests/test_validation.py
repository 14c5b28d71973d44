import pytest

from permprob import Family
from permprob.output import CsvDoc, make_dist_doc, make_exact_doc
from permprob.probability import exact_counts
from permprob.validation import run_offline_checks, verify_artifact


class TestOfflineChecks:
    def test_all_pass(self):
        results = run_offline_checks(bruteforce_n=5, table_n=8)
        assert results
        failed = [r.name for r in results if not r.passed]
        assert not failed, failed

    def test_check_names_are_stable(self):
        names = {r.name for r in run_offline_checks(bruteforce_n=2, table_n=4)}
        assert {
            "w-triangle-reference",
            "v-triangle-reference",
            "w-closed-vs-recurrence-vs-cycles",
            "v-closed-vs-identity",
            "e-table-vs-bruteforce",
            "term-count-totals",
            "w-diagonal-vs-permanent",
            "v-diagonal-vs-permanent",
            "exact-counts-n3-reference",
            "n2-exactness",
            "probability-endpoints-n3",
            "sequence-references",
        } <= names


class TestArtifactVerification:
    def test_dist_artifact_roundtrip(self, tmp_path):
        path = tmp_path / "dist.csv"
        path.write_text(make_dist_doc(Family.C, 4).render())
        result = verify_artifact(str(path))
        assert result.passed, result.detail

    def test_exact_artifact_roundtrip(self, tmp_path):
        path = tmp_path / "exact.csv"
        path.write_text(make_exact_doc(exact_counts(Family.A, 3)).render())
        assert verify_artifact(str(path)).passed

    def test_tampered_value_detected(self, tmp_path):
        path = tmp_path / "dist.csv"
        text = make_dist_doc(Family.C, 4).render()
        path.write_text(text.replace("4,4,9", "4,4,8"))
        result = verify_artifact(str(path))
        assert not result.passed
        assert "differs" in result.detail

    def test_missing_file(self, tmp_path):
        result = verify_artifact(str(tmp_path / "nope.csv"))
        assert not result.passed

    def test_file_without_metadata(self, tmp_path):
        path = tmp_path / "plain.csv"
        path.write_text("a,b\n1,2\n")
        result = verify_artifact(str(path))
        assert not result.passed
        assert "metadata" in result.detail


class TestCsvDoc:
    def test_parse_render_byte_identical(self):
        doc = make_exact_doc(exact_counts(Family.B, 2))
        text = doc.render()
        assert CsvDoc.parse(text).render() == text

    def test_parse_requires_header(self):
        with pytest.raises(ValueError):
            CsvDoc.parse("# only a comment\n")

    def test_metadata_extraction(self):
        doc = make_dist_doc(Family.B, 3)
        meta = doc.metadata()
        assert meta == {"kind": "dist", "family": "B", "n": "3"}
