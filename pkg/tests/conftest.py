import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from hermitian_formality.catalog import load_surface
from hermitian_formality.hodge import Metric, random_metric
from hermitian_formality.scalars import Scalar

SURFACE_CASES = [
    ("hopf", {}),
    ("inoue_sm", {"alpha": 1, "beta": Fraction(1, 2)}),
    ("inoue_spm", {"q": 1}),
    ("kodaira_primary", {}),
    ("kodaira_secondary", {}),
]


def surfaces():
    return [load_surface(name, params) for name, params in SURFACE_CASES]


def seeded_metrics(n, seed, diagonal=False):
    rng = random.Random(seed)
    return [random_metric(rng, diagonal=diagonal) for _ in range(n)]


@pytest.fixture(params=SURFACE_CASES, ids=[c[0] for c in SURFACE_CASES])
def surface(request):
    name, params = request.param
    return load_surface(name, params)


rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
scalars = st.builds(Scalar, rationals, rationals)
nonzero_scalars = scalars.filter(bool)


@st.composite
def metrics(draw):
    r2 = draw(st.fractions(min_value=Fraction(1, 8), max_value=20, max_denominator=8))
    s2 = draw(st.fractions(min_value=Fraction(1, 8), max_value=20, max_denominator=8))
    u = draw(st.builds(Scalar, st.fractions(-5, 5, max_denominator=8), st.fractions(-5, 5, max_denominator=8)))
    if r2 * s2 - u.norm() <= 0:
        u = Scalar(0)
    return Metric(r2, s2, u)


ACCEPTANCE_LINES = []


def record_criterion(number, ok, detail):
    line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'} - {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
