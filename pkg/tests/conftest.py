import random

import pytest

from curvetop.bpoly import IntPoly2


def random_curve(seed: int, max_deg: int = 6, coeff: int = 128) -> IntPoly2:
    """Random dense-ish bivariate polynomial, same law as the stress runs."""
    rng = random.Random(seed)
    d = rng.randint(2, max_deg)
    terms = {}
    for i in range(d + 1):
        for j in range(d + 1 - i):
            if rng.random() < 0.5 or i + j == d and rng.random() < 0.7:
                terms[(i, j)] = rng.randint(-coeff, coeff)
    return IntPoly2.from_dict({k: v for k, v in terms.items() if v})


@pytest.fixture
def XY():
    return IntPoly2.X(), IntPoly2.Y()


# one summary line per acceptance criterion, printed after the run
_criteria: dict[int, tuple[str, str]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    tag = getattr(getattr(item, "function", None), "criterion", None)
    if tag is None:
        return
    num, title = tag
    if rep.when == "call" or rep.failed:
        if rep.failed or num not in _criteria:
            _criteria[num] = (title, "FAIL" if rep.failed else "PASS")


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_criteria):
        title, verdict = _criteria[num]
        terminalreporter.write_line(f"criterion {num}: {verdict}  {title}")
