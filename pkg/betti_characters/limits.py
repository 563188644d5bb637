"""
Cooperative time limits for long computations.

The expensive loops (Buchberger, the Schreyer frame, module characters) poll `check_deadline()`, so a limit
set by the command line aborts the run between two reduction steps instead of killing the process.
"""
import contextlib
import time
from typing import Iterator, Optional

from betti_characters.exceptions import ComputationTimeout

_deadline: Optional[float] = None


@contextlib.contextmanager
def time_limit(seconds: Optional[float]) -> Iterator[None]:
    global _deadline
    previous = _deadline
    if seconds is not None:
        _deadline = time.monotonic() + seconds
    try:
        yield
    finally:
        _deadline = previous


def check_deadline() -> None:
    if _deadline is not None and time.monotonic() > _deadline:
        raise ComputationTimeout('Computation exceeded the time limit.')
