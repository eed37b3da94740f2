"""Reading published results tables and writing confidence-annotated reports.

Input is a UTF-8 CSV with a header row. Recognized columns (aliases in
brackets) are::

    label [name]   mean_a [mean1]   mean_b [mean2]   t [t_value]
    p [p_value]    n [n_total]      se               df

Unrecognized columns are ignored, which is what lets an emitted CSV report
be read back in. The p column accepts a number (``0.0211`` or ``2.11%``), a
star token (``*``, ``**``, ``***``) or an inequality such as ``<.05``.

The effect being annotated is always ``mean_b - mean_a``.
"""

from __future__ import annotations

import csv
import io
import json
import math
import re
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union

from .errors import DomainError, MissingHeaderError, UnprocessableRowError
from .inference import (
    EstimateSign,
    confidence_distribution,
    confidence_interval,
    confidence_level,
    format_percent,
    p_to_confidence,
    star_bound,
    two_tailed_p,
)
from .model import (
    ConfidenceStatement,
    GreaterThan,
    Hypothesis,
    Kind,
    LessThan,
    SampleSummary,
    hypothesis_code,
)
from .specialfn import StudentT, dist_cdf

__all__ = [
    "StarP",
    "ResultsRow",
    "AnnotatedRow",
    "RowError",
    "ParsedTable",
    "DEFAULT_STARS",
    "parse_stars",
    "parse_p_value",
    "parse_results_csv",
    "annotate_row",
    "annotate_table",
    "emit_report",
    "SCHEMA_VERSION",
]

SCHEMA_VERSION = 1
DEFAULT_STARS = {"*": 0.05, "**": 0.01, "***": 0.001}
QUANTITY = "B - A"

_ALIASES = {
    "label": "label",
    "name": "label",
    "mean_a": "mean_a",
    "mean1": "mean_a",
    "mean_b": "mean_b",
    "mean2": "mean_b",
    "t": "t_value",
    "t_value": "t_value",
    "p": "p_value",
    "p_value": "p_value",
    "n": "n_total",
    "n_total": "n_total",
    "se": "se",
    "df": "df",
}
_CSV_INPUT_COLUMNS = ("label", "mean_a", "mean_b", "t", "p", "n", "se", "df")
_CSV_REPORT_COLUMNS = ("p_two_tailed", "ci_level", "ci_lo", "ci_hi", "statements", "notes")
_INEQUALITY = re.compile(r"^\s*p?\s*<\s*(\d*\.?\d+(?:[eE][-+]?\d+)?)\s*(%?)\s*$")


@dataclass(frozen=True)
class StarP:
    """A p-value reported only as ``p < alpha``."""

    alpha: float
    token: str

    def __str__(self):
        return self.token


@dataclass(frozen=True)
class ResultsRow:
    label: str
    mean_a: Optional[float] = None
    mean_b: Optional[float] = None
    t_value: Optional[float] = None
    p_value: Union[float, StarP, None] = None
    n_total: Optional[int] = None
    se: Optional[float] = None
    df: Optional[float] = None

    @property
    def has_means(self) -> bool:
        return self.mean_a is not None and self.mean_b is not None

    def missing_fields(self) -> list:
        """Why the row cannot be processed; empty when it can."""
        if self.p_value is not None:
            return []
        if self.has_means and self.se is not None:
            return []
        if self.t_value is not None and (self.se is not None or self.has_means):
            return []
        if self.t_value is not None and (self.df is not None or (self.n_total or 0) > 2):
            return []
        return ["p", "t with se, both means or df", "se with both means"]


@dataclass(frozen=True)
class AnnotatedRow:
    input: ResultsRow
    statements: tuple
    interval: Optional[tuple] = None
    notes: tuple = ()
    p_value: Optional[float] = None
    summary: Optional[SampleSummary] = None


@dataclass(frozen=True)
class RowError:
    line: int
    label: str
    message: str


@dataclass
class ParsedTable:
    rows: list = field(default_factory=list)
    errors: list = field(default_factory=list)

    def __iter__(self):
        return iter(self.rows)

    def __len__(self):
        return len(self.rows)


def parse_stars(text: str) -> dict:
    """Parse ``"*=0.05,**=0.01,***=0.001"`` into a token -> alpha map."""
    stars = {}
    for part in text.split(","):
        token, _, alpha = part.strip().partition("=")
        try:
            value = float(alpha)
        except ValueError:
            raise DomainError(f"bad star convention {part!r}; expected token=alpha") from None
        if not token or not (0 < value < 1):
            raise DomainError(f"bad star convention {part!r}")
        stars[token] = value
    return stars


def parse_p_value(text: str, stars: Optional[dict] = None):
    """Read one p cell: exact number, star token or ``< alpha`` inequality."""
    stars = DEFAULT_STARS if stars is None else stars
    s = text.strip()
    if not s:
        return None
    if s in stars:
        return StarP(stars[s], s)
    m = _INEQUALITY.match(s)
    if m:
        alpha = float(m.group(1)) / (100.0 if m.group(2) else 1.0)
        if not 0 < alpha < 1:
            raise DomainError(f"p bound out of range: {text!r}")
        return StarP(alpha, s)
    scale = 1.0
    if s.endswith("%"):
        s, scale = s[:-1], 100.0
    try:
        p = float(s) / scale
    except ValueError:
        raise DomainError(f"unrecognized p value {text!r}") from None
    if not 0 < p <= 1:
        raise DomainError(f"p value must lie in (0, 1], got {text!r}")
    return p


def _number(text, name, integer=False):
    s = text.strip()
    if not s:
        return None
    try:
        value = float(s)
    except ValueError:
        raise DomainError(f"{name}: not a number: {text!r}") from None
    if not math.isfinite(value):
        raise DomainError(f"{name}: not finite: {text!r}")
    if integer:
        if value != int(value) or value < 0:
            raise DomainError(f"{name}: expected a non-negative whole number, got {text!r}")
        return int(value)
    return value


def parse_results_csv(data: Union[bytes, str, Iterable[str]], stars: Optional[dict] = None) -> ParsedTable:
    """Parse a results table into rows plus a per-line error report.

    Raises
    ------
    MissingHeaderError
        If the input is empty or its first line names no recognized column.
    """
    if isinstance(data, bytes):
        data = data.decode("utf-8-sig")
    if isinstance(data, str):
        data = io.StringIO(data)
    reader = csv.reader(data)
    header = next(reader, None)
    if header is None or not any(h.strip() for h in header):
        raise MissingHeaderError("results table is empty or has no header row")
    columns = {}
    for i, name in enumerate(header):
        key = _ALIASES.get(name.strip().lower())
        if key is not None and key not in columns:
            columns[key] = i
    if not columns.keys() - {"label"}:
        raise MissingHeaderError(
            f"header {header!r} has no recognized columns; expected some of "
            + ", ".join(sorted(set(_ALIASES)))
        )

    table = ParsedTable()
    for cells in reader:
        line_no = reader.line_num
        if not any(c.strip() for c in cells):
            continue

        def cell(key):
            i = columns.get(key)
            return cells[i] if i is not None and i < len(cells) else ""

        label = cell("label").strip() or f"row {line_no - 1}"
        try:
            row = ResultsRow(
                label=label,
                mean_a=_number(cell("mean_a"), "mean_a"),
                mean_b=_number(cell("mean_b"), "mean_b"),
                t_value=_number(cell("t_value"), "t"),
                p_value=parse_p_value(cell("p_value"), stars),
                n_total=_number(cell("n_total"), "n", integer=True),
                se=_number(cell("se"), "se"),
                df=_number(cell("df"), "df"),
            )
            if row.se is not None and row.se <= 0:
                raise DomainError("se must be positive")
            if row.df is not None and row.df <= 0:
                raise DomainError("df must be positive")
        except DomainError as exc:
            table.errors.append(RowError(line_no, label, str(exc)))
            continue
        table.rows.append(row)
    return table


def _estimate(row):
    if row.has_means:
        return row.mean_b - row.mean_a
    if row.t_value is not None and row.se is not None:
        return row.t_value * row.se
    return None


def _direction(row, estimate, notes):
    if estimate is not None:
        return EstimateSign.of(estimate)
    if row.t_value is not None:
        return EstimateSign.of(row.t_value)
    notes.append("direction not reported; assumed mean_b >= mean_a")
    return EstimateSign.NON_NEGATIVE


def _df(row, notes):
    if row.df is not None:
        return row.df
    if row.n_total is not None and row.n_total > 2:
        df = row.n_total - 2
        notes.append(f"df inferred as n - 2 = {df} (pooled two-sample t)")
        return float(df)
    return None


def _sign_statements(hypotheses, conf_gt0, kind, source, notes):
    """Statements about x > 0 / x < 0 from a confidence in x > 0."""
    out = []
    for h in hypotheses:
        if h == GreaterThan(0.0):
            out.append(ConfidenceStatement(h, conf_gt0, kind, source))
        elif h == LessThan(0.0):
            out.append(ConfidenceStatement(h, 1.0 - conf_gt0, kind, source))
        else:
            notes.append(f"confidence ({_hyp_text(h)}) needs a standard error and df; not computed")
    return out


def annotate_row(
    row: ResultsRow,
    hypotheses: Sequence[Hypothesis] = (GreaterThan(0.0),),
    level: float = 0.95,
) -> AnnotatedRow:
    """Turn one published result into confidence statements.

    The richest available path is used:

    1. estimate, standard error and df known: exact statements for every
       hypothesis plus an interval;
    2. t and df, or an exact p: exact statements about the sign only;
    3. p given only as a star or inequality: a single lower bound on
       confidence in the observed direction.

    The standard error comes from the ``se`` column when present, otherwise
    from ``|mean_b - mean_a| / |t|``. df comes from the ``df`` column, else
    ``n - 2``. Every inference is written to ``notes``.

    Raises
    ------
    UnprocessableRowError
        If the row supports none of the paths.
    """
    missing = row.missing_fields()
    if missing:
        raise UnprocessableRowError(row.label, missing)
    notes = []
    hypotheses = tuple(hypotheses)
    estimate = _estimate(row)
    se = row.se
    if se is None and row.t_value and estimate is not None:
        se = abs(estimate) / abs(row.t_value)
        if se > 0:
            notes.append(f"standard error back-calculated as |mean_b - mean_a| / |t| = {se:.4g}")
        else:
            notes.append("means are equal but t is not zero; standard error not recoverable")
            se = None
    df = _df(row, notes)

    if estimate is not None and se is not None and df is not None:
        summary = SampleSummary(estimate, se, StudentT(df), label=row.label)
        cd = confidence_distribution(summary)
        p = two_tailed_p(summary)
        _check_reported_p(row.p_value, p, notes)
        statements = tuple(confidence_level(cd, h) for h in hypotheses)
        lo, hi = confidence_interval(cd, level)
        return AnnotatedRow(row, statements, (lo, hi, level), tuple(notes), p, summary)

    if estimate is not None and se is not None:
        notes.append("no df or n available; t confidence distribution not built")

    sign = _direction(row, estimate, notes)
    p = None
    if row.t_value is not None and df is not None:
        p = min(1.0, 2.0 * dist_cdf(StudentT(df), -abs(row.t_value)))
        _check_reported_p(row.p_value, p, notes)
    elif isinstance(row.p_value, float):
        p = row.p_value

    if p is not None:
        stmt = p_to_confidence(p, sign)
        statements = _sign_statements(hypotheses, stmt.confidence, Kind.EXACT, stmt.source, notes)
        return AnnotatedRow(row, tuple(statements), None, tuple(notes), p, None)

    if isinstance(row.p_value, StarP):
        bound = star_bound(row.p_value.alpha, sign, row.p_value.token)
        # state the bound for the observed direction so it is always a lower bound
        if sign is EstimateSign.NON_NEGATIVE:
            stmt = bound
        else:
            stmt = ConfidenceStatement(LessThan(0.0), 1.0 - bound.confidence, Kind.LOWER_BOUND, bound.source)
        for h in hypotheses:
            if h != stmt.hypothesis:
                notes.append(f"confidence ({_hyp_text(h)}) not available from a p-value inequality")
        return AnnotatedRow(row, (stmt,), None, tuple(notes), None, None)

    raise UnprocessableRowError(row.label, ["df or n (to use t)", "p"])


def _check_reported_p(reported, p, notes):
    if isinstance(reported, StarP):
        verdict = "consistent" if p < reported.alpha else "INCONSISTENT"
        notes.append(f"computed p = {p:.4g} is {verdict} with reported {reported.token}")
    elif isinstance(reported, float) and abs(reported - p) > max(0.005, 0.05 * reported):
        notes.append(f"computed p = {p:.4g} differs from reported p = {reported:g}")


def annotate_table(rows, hypotheses=(GreaterThan(0.0),), level=0.95):
    """Annotate every row; returns ``(annotated, errors)``."""
    annotated, errors = [], []
    for row in rows:
        try:
            annotated.append(annotate_row(row, hypotheses, level))
        except UnprocessableRowError as exc:
            errors.append(RowError(0, row.label, str(exc)))
    return annotated, errors


def _hyp_text(h, name=QUANTITY):
    return str(h).replace("x", name)


def _statement_text(s, decimals, name=QUANTITY):
    op = {Kind.EXACT: "=", Kind.LOWER_BOUND: ">", Kind.UPPER_BOUND: "<"}[s.kind]
    return f"confidence ({_hyp_text(s.hypothesis, name)}) {op} {format_percent(s.confidence, decimals)}"


def _row_json(a, decimals):
    s = a.summary
    return {
        "label": a.input.label,
        "estimate": None if s is None else s.estimate,
        "standard_error": None if s is None else s.standard_error,
        "df": None if s is None else s.family.df,
        "p_value": a.p_value,
        "statements": [
            {
                "hypothesis": hypothesis_code(st.hypothesis),
                "text": _hyp_text(st.hypothesis),
                "confidence": st.confidence,
                "display": format_percent(st.confidence, decimals),
                "kind": st.kind.value,
                "source": st.source,
            }
            for st in a.statements
        ],
        "interval": None
        if a.interval is None
        else {"lo": a.interval[0], "hi": a.interval[1], "level": a.interval[2]},
        "notes": list(a.notes),
    }


def _fmt(v):
    if v is None:
        return ""
    if isinstance(v, StarP):
        return v.token
    if isinstance(v, int):
        return str(v)
    return repr(float(v))


def emit_report(
    rows: Sequence[AnnotatedRow],
    format: str = "json",
    decimals: int = 1,
    errors: Sequence[RowError] = (),
) -> bytes:
    """Serialize annotated rows as ``json``, ``text`` or ``csv``.

    The JSON document carries ``schema_version``; each row is::

        {"label", "estimate", "standard_error", "df", "p_value",
         "statements": [{"hypothesis", "text", "confidence", "display",
                         "kind", "source"}],
         "interval": {"lo", "hi", "level"} | null,
         "notes": [...]}

    The CSV form repeats the input columns, so it can be parsed again.
    """
    fmt = format.lower()
    if fmt == "json":
        doc = {
            "schema_version": SCHEMA_VERSION,
            "rows": [_row_json(a, decimals) for a in rows],
            "errors": [{"line": e.line, "label": e.label, "message": e.message} for e in errors],
        }
        return (json.dumps(doc, indent=2) + "\n").encode("utf-8")
    if fmt == "text":
        lines = []
        for a in rows:
            lines.append(f"{a.input.label}:")
            if a.summary is not None:
                s = a.summary
                lines.append(
                    f"  {QUANTITY} = {s.estimate:.4g} (standard error {s.standard_error:.3g}, {s.family})"
                )
            if a.p_value is not None:
                lines.append(f"  p = {format_percent(a.p_value, decimals + 1)} (two-tailed)")
            for st in a.statements:
                lines.append("  " + _statement_text(st, decimals))
            if a.interval is not None:
                lo, hi, level = a.interval
                lines.append(f"  {format_percent(level, 0)} interval for {QUANTITY}: {lo:.2f} to {hi:.2f}")
            for note in a.notes:
                lines.append(f"  note: {note}")
        for e in errors:
            lines.append(f"error (line {e.line}, {e.label}): {e.message}")
        return ("\n".join(lines) + "\n").encode("utf-8") if lines else b""
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(_CSV_INPUT_COLUMNS + _CSV_REPORT_COLUMNS)
        for a in rows:
            r = a.input
            lo, hi, level = a.interval if a.interval is not None else (None, None, None)
            w.writerow(
                [
                    r.label,
                    _fmt(r.mean_a),
                    _fmt(r.mean_b),
                    _fmt(r.t_value),
                    _fmt(r.p_value),
                    _fmt(r.n_total),
                    _fmt(r.se),
                    _fmt(r.df),
                    _fmt(a.p_value),
                    _fmt(level),
                    _fmt(lo),
                    _fmt(hi),
                    "; ".join(_statement_text(st, decimals) for st in a.statements),
                    "; ".join(a.notes),
                ]
            )
        return buf.getvalue().encode("utf-8")
    raise DomainError(f"unknown report format {format!r}; expected json, text or csv")
