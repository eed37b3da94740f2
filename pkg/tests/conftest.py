import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conflevel import SampleSummary, StudentT, confidence_distribution  # noqa: E402

# Eggins et al. (2008) Table 3, row 1: difference of means 1.07, t = 2.40, n = 42
FIXTURE_ESTIMATE = 1.07
FIXTURE_T = 2.40
FIXTURE_SE = FIXTURE_ESTIMATE / FIXTURE_T
FIXTURE_DF = 40


@pytest.fixture
def fixture_summary():
    return SampleSummary(FIXTURE_ESTIMATE, FIXTURE_SE, StudentT(FIXTURE_DF), label="identify")


@pytest.fixture
def fixture_cd(fixture_summary):
    return confidence_distribution(fixture_summary)
