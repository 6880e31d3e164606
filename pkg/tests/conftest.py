import os

import pytest
from hypothesis import HealthCheck, settings

from lcs_lefschetz.family import build_family
from lcs_lefschetz.invariant import load_model

settings.register_profile(
    "default",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

DATA = os.path.join(os.path.dirname(__file__), "..", "src", "lcs_lefschetz", "data")

# filled by test_acceptance, printed at the end of the run: criterion -> [(ok, detail)]
ACCEPTANCE: dict[int, list[tuple[bool, str]]] = {}


@pytest.fixture(scope="session")
def fam2():
    return build_family(2)


@pytest.fixture(scope="session")
def fam3():
    return build_family(3)


@pytest.fixture(scope="session")
def fam4():
    return build_family(4)


@pytest.fixture(scope="session")
def m2(fam2):
    return fam2.model


@pytest.fixture(scope="session")
def m3(fam3):
    return fam3.model


@pytest.fixture(scope="session")
def m4(fam4):
    return fam4.model


@pytest.fixture(scope="session")
def hopf():
    return load_model(os.path.join(DATA, "hopf_surface.json"))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        parts = ACCEPTANCE[num]
        ok = all(p for p, _ in parts)
        shown = [d for p, d in parts if not p] if not ok else [d for _, d in parts]
        terminalreporter.write_line(f"criterion {num}: {'PASS' if ok else 'FAIL'}  {'; '.join(shown)}")
