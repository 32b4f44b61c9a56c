"""One test per acceptance criterion; each prints a single PASS/FAIL line.

Set ``SDKAPPA_QUICK=1`` to skip the stretch criterion.
"""

import os

import pytest

from sdkappa.acceptance import CRITERIA, evaluate

QUICK = os.environ.get("SDKAPPA_QUICK") == "1"


@pytest.mark.slow
@pytest.mark.parametrize("criterion", CRITERIA, ids=lambda c: f"criterion_{c.number:02d}")
def test_criterion(criterion, capsys):
    if QUICK and criterion.stretch:
        pytest.skip("stretch criterion skipped in quick mode")
    outcome = evaluate(criterion)
    with capsys.disabled():
        print("\n" + outcome.line())
    assert outcome.passed, outcome.detail


@pytest.mark.slow
def test_quick_selftest_exit_code_and_budget(capsys):
    import time

    from sdkappa.cli import main

    start = time.perf_counter()
    code = main(["selftest", "--quick"])
    elapsed = time.perf_counter() - start
    err = capsys.readouterr().err
    with capsys.disabled():
        print(f"\n[{'PASS' if code == 0 and elapsed < 60 else 'FAIL'}] selftest --quick: exit {code} in {elapsed:.1f}s")
    assert code == 0, err
    assert elapsed < 60
