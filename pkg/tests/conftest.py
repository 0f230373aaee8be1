import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from tsfsb import Corpus, TimeSeries, gen_diverse_corpus


@pytest.fixture(scope="session")
def small_corpus() -> Corpus:
    return gen_diverse_corpus(count=30, seed=11, length=256)


@pytest.fixture
def random_series():
    rng = np.random.default_rng(1234)

    def make(n: int, sid: str = "r") -> TimeSeries:
        return TimeSeries(id=sid, values=rng.standard_normal(n))

    return make
