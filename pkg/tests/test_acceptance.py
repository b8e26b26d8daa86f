"""Acceptance suite: one test and one printed PASS/FAIL line per criterion."""

import warnings

import pytest

from helix_lab import acceptance

CASES = sorted(acceptance.CRITERIA)


def _id(case):
    number, title, _, _ = case
    return f"{number:02d}-" + title.replace(" ", "-").replace("/", "-")


@pytest.mark.parametrize("case", CASES, ids=[_id(c) for c in CASES])
def test_criterion(case, capsys):
    number = case[0]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        (outcome,) = acceptance.run([str(number)], echo=None)
    with capsys.disabled():
        print("\n" + outcome.line())
    assert outcome.passed, outcome.measured
