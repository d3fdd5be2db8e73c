"""Runs every acceptance criterion at its pinned parameters and prints one
pass/fail line per criterion (visible with `pytest -s`, or via `azw repro`).

Criterion 4 is expected to fail at its stated scan limit: eight discriminants
have their only odd ramified prime >= 19, whose cube (the third equality
witness of the 2t ceiling) exceeds 5000.  The check is implemented exactly as
pinned and the failure message carries the full diagnosis, including a
re-verification of all shortfall pairs at a limit covering the cubes.
"""

import pytest

from azw import acceptance


@pytest.mark.parametrize("runner", acceptance.ALL, ids=lambda fn: fn.__name__)
def test_criterion(runner):
    result = runner()
    print(result.line())
    assert result.passed, result.line()
