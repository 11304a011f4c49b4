import re

import numpy as np
import pytest

from gersh.kernels import available_backends


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(params=sorted(available_backends()))
def backend(request):
    return available_backends()[request.param]


def pytest_terminal_summary(terminalreporter):
    # one line per criterion; a parametrized criterion passes only if every case passed
    results = {}
    for outcome in ("passed", "failed"):
        for rep in terminalreporter.stats.get(outcome, []):
            if rep.when != "call" or "test_acceptance.py" not in rep.nodeid:
                continue
            m = re.search(r"test_ac(\d+)_([a-z0-9_]+)", rep.nodeid)
            if m:
                key = (int(m.group(1)), m.group(2))
                results[key] = results.get(key, True) and outcome == "passed"
    if results:
        terminalreporter.section("acceptance criteria")
        for (k, name), ok in sorted(results.items()):
            terminalreporter.write_line(f"AC{k:>2} {'PASSED' if ok else 'FAILED'} {name}")
