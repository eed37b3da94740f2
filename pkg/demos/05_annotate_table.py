"""
Annotating a results table
==========================

Feed a CSV of published results in, get confidence statements out. Rows with
only stars produce lower bounds, never made-up exact numbers.
"""

import os
import tempfile

from conflevel import (
    ConfidenceDistribution,
    GreaterThan,
    StudentT,
    annotate_row,
    emit_report,
    parse_results_csv,
    render_confidence_plot,
)

csv_text = """label,mean_a,mean_b,t,p,n
identify,4.48,5.55,2.40,*,42
recall,3.90,4.20,1.10,,42
reported p only,,,,0.0211,
stars only,2.0,2.6,,**,
typo,4.1,n/a,1.0,,30
"""

table = parse_results_csv(csv_text)
for err in table.errors:
    print(f"skipped line {err.line} ({err.label}): {err.message}")

rows = [annotate_row(r, hypotheses=[GreaterThan(0), GreaterThan(1)]) for r in table.rows]
print(emit_report(rows, "text").decode())

# CSV output can be read straight back in
print(emit_report(rows, "csv").decode())

# and a picture of the first row
cd = ConfidenceDistribution(1.07, 1.07 / 2.40, StudentT(40))
print(render_confidence_plot(cd, GreaterThan(1), format="ascii").decode())
path = os.path.join(tempfile.gettempdir(), "confidence_identify.svg")
with open(path, "wb") as fh:
    fh.write(render_confidence_plot(cd, GreaterThan(0)))
print("SVG written to", path)
