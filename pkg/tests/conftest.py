import numpy as np
import pytest

from rlrs.bench import warmup


# the worked 25-symbol example used across the test suite:
# four letters 0..3 (a..d), eight maximal runs
DEMO_STRING = np.array(
    [0] * 4 + [1] * 3 + [0] + [3] * 5 + [0] * 5 + [3] * 2 + [1] + [0] * 4,
    dtype=np.int64,
)
DEMO_SIGMA = 4
DEMO_RUN_ENDS = [3, 6, 7, 12, 17, 19, 20, 24]
DEMO_HEADS = [0, 1, 0, 3, 0, 3, 1, 0]
DEMO_RUN_COUNT_BITS = "000010011001"
DEMO_GROUPED_LENGTHS = [4, 1, 5, 4, 3, 1, 5, 2]


@pytest.fixture(scope="session", autouse=True)
def _warm_kernels():
    # compile all query kernels once so timed tests measure queries only
    warmup()
