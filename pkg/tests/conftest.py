import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from bentcyc import _kernels

# A few oracle sweeps (naive Walsh at n >= 10, exhaustive scans) are only
# tractable with the compiled kernels; BENTCYC_RUN_SLOW=1 forces them anyway.
heavy = pytest.mark.skipif(
    _kernels.ACTIVE != "c" and not os.environ.get("BENTCYC_RUN_SLOW"),
    reason="needs compiled kernels (set BENTCYC_RUN_SLOW=1 to force)",
)

optional_slow = pytest.mark.skipif(
    not os.environ.get("BENTCYC_RUN_SLOW"),
    reason="long-running optional check (set BENTCYC_RUN_SLOW=1)",
)
