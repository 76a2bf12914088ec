"""Acceptance gate: every pinned check must pass, one line of evidence each.

These are the same checks the `cliquehom verify-paper` command runs.  They are
asserted at full strength; a failing check here is a real defect either in the
engine or in the pinned reference data, and is meant to stay visible.
"""
import pytest

from cliquehom.verification import CHECKS, run_check


@pytest.mark.parametrize("check", CHECKS, ids=[c.ident for c in CHECKS])
def test_acceptance(check):
    ok, details = run_check(check)
    status = "PASS" if ok else "FAIL"
    print(f"{check.ident} {status} {check.title}: {details}")
    assert ok, f"{check.ident} {check.title}: {details}"
