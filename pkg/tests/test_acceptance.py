"""Runs the eleven acceptance criteria, printing one PASS/FAIL line for each."""
import time

import pytest

from ellimod.acceptance import CRITERIA, run_one

BUDGET_SECONDS = 300


@pytest.mark.parametrize("number", [n for n, _, _ in CRITERIA])
def test_criterion(number, capsys):
    t0 = time.perf_counter()
    res = run_one(number)
    with capsys.disabled():
        print("\n" + res.line())
    assert res.passed, res.detail
    assert time.perf_counter() - t0 < BUDGET_SECONDS
