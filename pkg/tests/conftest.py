import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

_CRITERIA = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


class _Recorder:
    def __init__(self):
        self.lines = []

    def __call__(self, number, title, passed, detail=""):
        line = f"criterion {number:>2} {'PASS' if passed else 'FAIL'}  {title}  [{detail}]"
        self.lines.append(line)
        print(line)
        return passed

    def info(self, number, detail):
        line = f"criterion {number:>2} info  {detail}"
        self.lines.append(line)
        print(line)


@pytest.fixture
def criterion(request):
    """Records one PASS/FAIL line per acceptance criterion for the summary."""
    rec = _Recorder()
    yield rec
    rep = getattr(request.node, "rep_call", None)
    if not any(" PASS " in l or " FAIL " in l for l in rec.lines):
        rec.lines.append(f"criterion -- FAIL  {request.node.name} did not complete")
    elif rep is not None and rep.failed and not any(" FAIL " in l for l in rec.lines):
        rec.lines.append(f"criterion -- FAIL  {request.node.name} raised after recording")
    _CRITERIA.extend(rec.lines)


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in _CRITERIA:
            terminalreporter.write_line(line)
