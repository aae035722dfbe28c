import importlib

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "cfkit",
    max_examples=60,
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture],
)
settings.load_profile("cfkit")


def _backends():
    from cfkit import _kernel_py

    out = [pytest.param(_kernel_py, id="python")]
    try:
        out.append(pytest.param(importlib.import_module("cfkit._kernel"), id="compiled"))
    except ImportError:
        out.append(pytest.param(None, id="compiled",
                                marks=pytest.mark.skip(reason="compiled kernel not built")))
    return out


@pytest.fixture(params=_backends())
def backend(request):
    return request.param


@pytest.fixture(params=["python", "compiled"])
def active_backend(request, monkeypatch):
    """Route cfkit.kernel through one backend for the duration of a test."""
    from cfkit import _kernel_py, kernel

    impl = _kernel_py
    if request.param == "compiled":
        try:
            impl = importlib.import_module("cfkit._kernel")
        except ImportError:
            pytest.skip("compiled kernel not built")
    monkeypatch.setattr(kernel, "advance", impl.advance)
    monkeypatch.setattr(kernel, "trajectory", impl.trajectory)
    return impl


# -- acceptance report ---------------------------------------------------------------

_ACCEPTANCE = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_ACCEPTANCE] = []


@pytest.fixture
def criterion(request):
    """record(number, title, passed, detail) -> passed; lines are echoed in the summary."""
    lines = request.config.stash[_ACCEPTANCE]

    def record(number, title, passed, detail):
        line = f"CRITERION {number:>2}  {'PASS' if passed else 'FAIL'}  {title}: {detail}"
        lines.append((number, line))
        print(line)
        return passed

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines, key=lambda t: t[0]):
            terminalreporter.write_line(line)
