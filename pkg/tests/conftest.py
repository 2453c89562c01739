import re

import pytest


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    """Print the FAIL counterpart of the acceptance pass lines."""
    outcome = yield
    report = outcome.get_result()
    if report.when != "call" or not report.failed:
        return
    m = re.match(r"test_criterion_(\d+)", item.name)
    if m:
        print(f"\nFAIL criterion {m.group(1)}: {item.name}")
