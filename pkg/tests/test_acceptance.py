"""Acceptance battery: one test per headline criterion.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
pass/fail lines as they complete (criterion 7 draws 10^7 Monte Carlo
samples per domain and dominates the runtime).
"""

import pytest

from hartogs_bergman.acceptance import ALL_CRITERIA


@pytest.mark.parametrize(
    "number,name,runner", ALL_CRITERIA, ids=[f"c{num:02d}-{name}" for num, name, _ in ALL_CRITERIA]
)
def test_criterion(number, name, runner):
    result = runner()
    status = "PASS" if result.passed else "FAIL"
    print(
        f"[{status}] criterion {result.number} ({result.name}): "
        f"{result.details} [{result.elapsed_s:.2f}s]"
    )
    assert result.passed, f"criterion {number} ({name}): {result.details}"
