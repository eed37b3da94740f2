"""
Confidence levels from a two-group comparison
==============================================

Two groups rated something on a 1 to 7 scale. Group A averaged 4.48, group B
5.55, the reported t was 2.40 with 42 participants in total.
"""

from conflevel import (
    GreaterThan,
    LessThan,
    SampleSummary,
    StudentT,
    confidence_distribution,
    confidence_interval,
    confidence_level,
    format_percent,
    two_tailed_p,
)

difference = 5.55 - 4.48
se = difference / 2.40          # standard error recovered from t
s = SampleSummary(difference, se, StudentT(42 - 2))

# the usual null hypothesis test
print(f"two-tailed p = {format_percent(two_tailed_p(s), 2)}")

# slide the null distribution over to the estimate: this is the confidence distribution
cd = confidence_distribution(s)
lo, hi = confidence_interval(cd, 0.95)
print(f"95% interval: {lo:.2f} to {hi:.2f}")

# confidence in hypotheses is just area under that curve
for h in (GreaterThan(0), LessThan(0), GreaterThan(1), GreaterThan(difference)):
    print(f"confidence ({h}) = {format_percent(confidence_level(cd, h).confidence)}")

# "B is better" is well supported; "B is better by more than a point" is a coin flip
