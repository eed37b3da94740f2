import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conflevel import (
    Between,
    ConfidenceDistribution,
    ConfidenceStatement,
    GreaterThan,
    Kind,
    LessThan,
    Normal,
    SampleSummary,
    StudentT,
    TwoGroupData,
    VarianceRule,
    confidence_level,
    hypothesis_complement,
    parse_hypothesis,
    summarize_two_groups,
)
from conflevel.errors import DegenerateVarianceError, DomainError, UnsupportedComplementError
from conflevel.model import hypothesis_code
from oracles import pooled_summary, welch_summary

values = st.floats(min_value=-100, max_value=100, allow_nan=False)
groups = st.lists(values, min_size=2, max_size=12)


def test_degenerate_variance():
    with pytest.raises(DegenerateVarianceError):
        summarize_two_groups(TwoGroupData([1, 1], [1, 1]))


def test_pooled_example():
    s = summarize_two_groups(TwoGroupData([1, 2, 3], [2, 3, 4]), VarianceRule.POOLED)
    est, se, df = pooled_summary([1, 2, 3], [2, 3, 4])
    assert s.estimate == pytest.approx(1.0) == est
    assert s.standard_error == pytest.approx(0.8165, abs=5e-5)
    assert s.standard_error == pytest.approx(se, rel=1e-14)
    assert s.family == StudentT(4.0) and df == 4


def test_welch_example():
    s = summarize_two_groups(TwoGroupData([0, 0, 0, 0], [1, 1, 1, 2]), "welch")
    est, se, df = welch_summary([0, 0, 0, 0], [1, 1, 1, 2])
    assert s.estimate == 1.25
    assert s.standard_error == pytest.approx(se, rel=1e-14)
    assert s.family.df == pytest.approx(df, rel=1e-12)
    assert s.family.df == pytest.approx(3.0, abs=1e-9)


def test_pooled_is_default():
    data = TwoGroupData([3.1, 4.0, 5.2, 4.4], [5.0, 6.1, 5.5])
    assert summarize_two_groups(data) == summarize_two_groups(data, VarianceRule.POOLED)


def test_groups_need_two_observations():
    with pytest.raises(DomainError):
        TwoGroupData([1.0], [1.0, 2.0])


@given(groups, groups, st.sampled_from(list(VarianceRule)), st.randoms())
def test_reordering_invariance(a, b, rule, rnd):
    try:
        ref = summarize_two_groups(TwoGroupData(a, b), rule)
    except (DegenerateVarianceError, DomainError):
        return
    a2, b2 = list(a), list(b)
    rnd.shuffle(a2)
    rnd.shuffle(b2)
    assert summarize_two_groups(TwoGroupData(a2, b2), rule) == ref


@given(groups, groups, st.floats(min_value=-50, max_value=50), st.sampled_from(list(VarianceRule)))
def test_shift_equivariance(a, b, delta, rule):
    try:
        ref = summarize_two_groups(TwoGroupData(a, b), rule)
    except (DegenerateVarianceError, DomainError):
        return
    both = summarize_two_groups(TwoGroupData([x + delta for x in a], [x + delta for x in b]), rule)
    only_b = summarize_two_groups(TwoGroupData(a, [x + delta for x in b]), rule)
    tol = 1e-9 * (1 + max(map(abs, a + b)) + abs(delta))
    assert both.estimate == pytest.approx(ref.estimate, abs=tol)
    assert only_b.estimate == pytest.approx(ref.estimate + delta, abs=tol)
    for s in (both, only_b):
        assert s.standard_error == pytest.approx(ref.standard_error, rel=1e-6, abs=tol)
        assert s.family.df == pytest.approx(ref.family.df, rel=1e-6)


@pytest.mark.parametrize(
    "h,expected",
    [(GreaterThan(0), LessThan(0)), (LessThan(1), GreaterThan(1))],
)
def test_complement(h, expected):
    assert hypothesis_complement(h) == expected
    assert hypothesis_complement(expected) == h


def test_between_has_no_complement():
    with pytest.raises(UnsupportedComplementError):
        hypothesis_complement(Between(0, 1))


def test_between_ordering():
    with pytest.raises(DomainError):
        Between(1, 1)


@given(
    st.floats(min_value=-1e3, max_value=1e3),
    st.floats(min_value=1e-3, max_value=1e3),
    st.sampled_from([Normal(), StudentT(3), StudentT(40)]),
    st.floats(min_value=-1e3, max_value=1e3),
)
def test_complementary_confidences_sum_to_one(center, scale, family, c):
    cd = ConfidenceDistribution(center, scale, family)
    total = confidence_level(cd, GreaterThan(c)).confidence + confidence_level(cd, LessThan(c)).confidence
    assert total == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("text,h", [("gt:0", GreaterThan(0)), ("lt:-1.5", LessThan(-1.5)), ("between:0,1", Between(0, 1))])
def test_parse_hypothesis(text, h):
    assert parse_hypothesis(text) == h
    assert parse_hypothesis(hypothesis_code(h)) == h


@pytest.mark.parametrize("text", ["ge:0", "gt:", "between:1", "between:2,1", "x>0"])
def test_parse_hypothesis_rejects(text):
    with pytest.raises(DomainError):
        parse_hypothesis(text)


def test_value_object_invariants():
    with pytest.raises(DomainError):
        SampleSummary(1.0, 0.0, Normal())
    with pytest.raises(DomainError):
        SampleSummary(math.nan, 1.0, Normal())
    with pytest.raises(DomainError):
        ConfidenceDistribution(0.0, -1.0, Normal())
    with pytest.raises(DomainError):
        ConfidenceStatement(GreaterThan(0), 1.2)
    with pytest.raises(TypeError):
        SampleSummary(0.0, 1.0, "normal")
    assert ConfidenceStatement(GreaterThan(0), 0.5).kind is Kind.EXACT
