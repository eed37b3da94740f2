"""
Reading published p-values as confidence levels
================================================

When a report gives only p (or just stars), confidence that the effect is
positive still follows: 1 - p/2 in the direction of the estimate.
"""

from conflevel import EstimateSign, confidence_to_p, format_percent, p_to_confidence, star_bound

for p in (0.0211, 0.05, 0.2, 1.0):
    st = p_to_confidence(p, EstimateSign.NON_NEGATIVE)
    print(f"p = {p:<6}  ->  confidence (x > 0) = {format_percent(st.confidence, 2)}")

# a negative estimate flips the statement
print(format_percent(p_to_confidence(0.0211, EstimateSign.NEGATIVE).confidence, 2))

# the mapping inverts exactly
print(confidence_to_p(p_to_confidence(0.0211, EstimateSign.NON_NEGATIVE)))

# stars only give inequalities, so only bounds come out
for alpha in (0.05, 0.01, 0.001):
    b = star_bound(alpha, EstimateSign.NON_NEGATIVE)
    print(f"p < {alpha}: confidence (x > 0) > {format_percent(b.confidence, 2)}  [{b.kind.value}]")

# and bounds refuse to be turned back into p-values
try:
    confidence_to_p(star_bound(0.05, EstimateSign.NON_NEGATIVE))
except ValueError as exc:
    print("error:", exc)
