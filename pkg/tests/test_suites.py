import pytest

from gs_cohomlab import suites


@pytest.mark.parametrize("name", list(suites.SUITES))
def test_suite_passes(name):
    checks = suites.SUITES[name](1)
    assert checks
    failed = [c.to_json() for c in checks if not c.ok]
    assert not failed
