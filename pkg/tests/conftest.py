import math

import pytest

# Reference values computed once with mpmath at 30 significant digits.
C = 0.63033070075390631148
LOG2 = math.log(2.0)

_ACCEPTANCE = pytest.StashKey[dict]()


@pytest.fixture
def C_value():
    return C


@pytest.fixture
def criterion(request):
    """Yield a recorder; the outcome of the test becomes the criterion's line."""
    results = request.config.stash.setdefault(_ACCEPTANCE, {})
    info = {"detail": ""}
    yield info
    rep = getattr(request.node, "rep_call", None)
    ok = rep is not None and rep.passed
    line = f"criterion {info['id']:>2}: {'PASS' if ok else 'FAIL'}  {info['name']}"
    if info["detail"]:
        line += f"  [{info['detail']}]"
    results[info["id"]] = line
    print("\n" + line)


@pytest.hookimpl(wrapper=True)
def pytest_runtest_makereport(item, call):
    rep = yield
    if rep.when == "call":
        item.rep_call = rep
    return rep


def pytest_terminal_summary(terminalreporter, config):
    results = config.stash.get(_ACCEPTANCE, {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(results):
        terminalreporter.write_line(results[key])
