import json

import pytest

from conflevel import GreaterThan, LessThan, annotate_row, emit_report, parse_results_csv
from conflevel.errors import DomainError, MissingHeaderError, UnprocessableRowError
from conflevel.model import Kind
from conflevel.tables import ResultsRow, StarP, annotate_table, parse_p_value, parse_stars

FIXTURE_CSV = b"label,mean_a,mean_b,t,p,n\nidentify,4.48,5.55,2.40,*,42\n"
MIXED_CSV = b"""name,mean1,mean2,t_value,p_value,n_total,se,df,notes
identify,4.48,5.55,2.40,*,42,,,fixture
p only,,,,0.0211,,,,
star only,,,,**,,,,
negative star,5.0,4.0,,*,,,,
equal,3.0,3.0,0,,42,,,
exact se,1.0,2.0,,,,0.5,20,"quoted, comma"
bad,abc,1.0,2.0,,,,,
"""


def annotate_text(data, **kw):
    table = parse_results_csv(data)
    return [annotate_row(r, **kw) for r in table.rows], table


class TestParse:
    def test_fixture_row(self):
        (row,) = parse_results_csv(FIXTURE_CSV).rows
        assert row == ResultsRow("identify", 4.48, 5.55, 2.40, StarP(0.05, "*"), 42, None, None)

    @pytest.mark.parametrize("data", [b"", "", b"\n\n"])
    def test_empty(self, data):
        with pytest.raises(MissingHeaderError):
            parse_results_csv(data)

    def test_unrecognized_header(self):
        with pytest.raises(MissingHeaderError):
            parse_results_csv("foo,bar\n1,2\n")

    def test_p_only_row(self):
        (row,) = parse_results_csv("label,p\nx,0.0211\n").rows
        assert row.p_value == 0.0211 and row.mean_a is None and row.t_value is None

    def test_errors_collected_not_dropped(self):
        table = parse_results_csv(MIXED_CSV)
        assert len(table) == 6
        (err,) = table.errors
        assert err.line == 8 and err.label == "bad" and "mean_a" in err.message

    def test_bom_and_text_input(self):
        assert parse_results_csv("﻿label,p\nx,2.11%\n".encode("utf-8")).rows[0].p_value == pytest.approx(0.0211)
        assert parse_results_csv(["label,p", "x,0.5"]).rows[0].p_value == 0.5

    @pytest.mark.parametrize(
        "text,expected",
        [
            ("0.0211", 0.0211),
            ("2.11%", 0.0211),
            ("*", StarP(0.05, "*")),
            ("***", StarP(0.001, "***")),
            ("<.05", StarP(0.05, "<.05")),
            ("p < 1%", StarP(0.01, "p < 1%")),
            ("", None),
        ],
    )
    def test_parse_p(self, text, expected):
        got = parse_p_value(text)
        assert got == (pytest.approx(expected) if isinstance(expected, float) else expected)

    @pytest.mark.parametrize("text", ["0", "1.5", "abc", "<2"])
    def test_parse_p_rejects(self, text):
        with pytest.raises(DomainError):
            parse_p_value(text)

    def test_custom_stars(self):
        stars = parse_stars("+=0.1,*=0.05")
        assert parse_results_csv("label,p\nx,+\n", stars=stars).rows[0].p_value == StarP(0.1, "+")
        with pytest.raises(DomainError):
            parse_stars("*=2")


class TestAnnotate:
    def test_fixture(self):
        (a,), _ = annotate_text(FIXTURE_CSV, hypotheses=[GreaterThan(0), GreaterThan(1)], level=0.95)
        c0, c1 = (s.confidence for s in a.statements)
        assert c0 == pytest.approx(0.989, abs=5e-4)
        assert c1 == pytest.approx(0.562, abs=5e-4)
        assert a.interval[:2] == pytest.approx((0.17, 1.97), abs=0.005)
        assert a.p_value == pytest.approx(0.0211, abs=5e-5)
        assert all(s.kind is Kind.EXACT for s in a.statements)
        assert any("n - 2 = 40" in n for n in a.notes)
        assert any("consistent" in n for n in a.notes)

    def test_star_only(self):
        a = annotate_row(ResultsRow("s", 4.0, 5.0, None, StarP(0.05, "*"), None, None, None))
        (s,) = a.statements
        assert (s.hypothesis, s.confidence, s.kind) == (GreaterThan(0), 0.975, Kind.LOWER_BOUND)
        assert a.interval is None

    def test_negative_star(self):
        a = annotate_row(ResultsRow("s", 5.0, 4.0, None, StarP(0.05, "*"), None, None, None))
        (s,) = a.statements
        assert (s.hypothesis, s.confidence, s.kind) == (LessThan(0), 0.975, Kind.LOWER_BOUND)

    def test_star_rows_never_exact(self):
        rows, _ = annotate_text(MIXED_CSV, hypotheses=[GreaterThan(0), LessThan(0), GreaterThan(1)])
        for a in rows:
            if isinstance(a.input.p_value, StarP) and a.summary is None:
                assert all(s.kind is Kind.LOWER_BOUND for s in a.statements)

    def test_equal_means(self):
        a = annotate_row(ResultsRow("e", 3.0, 3.0, 0.0, None, 42, None, None))
        assert a.statements[0].confidence == 0.5

    def test_p_only(self):
        a = annotate_row(ResultsRow("p", None, None, None, 0.0211, None, None, None), hypotheses=[GreaterThan(0), LessThan(0), GreaterThan(1)])
        assert [s.confidence for s in a.statements] == pytest.approx([0.98945, 0.01055], abs=1e-12)
        assert any("direction" in n for n in a.notes)
        assert any("x > 1".replace("x", "B - A") in n for n in a.notes)

    def test_unprocessable(self):
        with pytest.raises(UnprocessableRowError, match="missing"):
            annotate_row(ResultsRow("u", 1.0, 2.0, None, None, None, None, None))

    def test_annotate_table_collects(self):
        rows = [ResultsRow("u", 1.0, 2.0, None, None, None, None, None), ResultsRow("p", None, None, None, 0.5, None, None, None)]
        good, bad = annotate_table(rows)
        assert len(good) == 1 and bad[0].label == "u"


class TestEmit:
    def test_json_fixture(self):
        rows, _ = annotate_text(FIXTURE_CSV, hypotheses=[GreaterThan(0), LessThan(0), GreaterThan(1)])
        doc = json.loads(emit_report(rows, "json"))
        assert doc["schema_version"] == 1
        (r,) = doc["rows"]
        assert set(r) >= {"label", "statements", "interval", "notes"}
        s0 = r["statements"][0]
        assert s0["kind"] == "Exact" and s0["display"] == "98.9%" and round(s0["confidence"], 3) == 0.989
        assert r["statements"][1]["display"] == "1.1%"
        assert r["statements"][2]["display"] == "56.2%"

    @pytest.mark.parametrize("fmt", ["json", "text", "csv"])
    def test_empty(self, fmt):
        out = emit_report([], fmt)
        if fmt == "json":
            assert json.loads(out)["rows"] == []
        elif fmt == "csv":
            assert parse_results_csv(out).rows == []
        else:
            assert out == b""

    def test_text_phrasing(self):
        rows, _ = annotate_text(FIXTURE_CSV, hypotheses=[GreaterThan(0)])
        text = emit_report(rows, "text").decode()
        assert "confidence (B - A > 0) = 98.9%" in text
        assert "95% interval for B - A: 0.17 to 1.97" in text

    def test_text_bound_phrasing(self):
        a = annotate_row(ResultsRow("s", 4.0, 5.0, None, StarP(0.05, "*"), None, None, None))
        assert "confidence (B - A > 0) > 97.5%" in emit_report([a], "text").decode()

    def test_csv_round_trip_byte_stable(self):
        hyps = [GreaterThan(0), GreaterThan(1)]
        rows, table = annotate_text(MIXED_CSV, hypotheses=hyps)
        first = emit_report(rows, "csv")
        again = [annotate_row(r, hyps) for r in parse_results_csv(first).rows]
        assert emit_report(again, "csv") == first
        assert [a.input for a in again] == [a.input for a in rows]

    def test_errors_reported(self):
        table = parse_results_csv(MIXED_CSV)
        doc = json.loads(emit_report([], "json", errors=table.errors))
        assert doc["errors"][0]["line"] == 8

    def test_unknown_format(self):
        with pytest.raises(DomainError):
            emit_report([], "xml")
