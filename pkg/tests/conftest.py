from fractions import Fraction

import pytest
from gmpy2 import mpq
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from nodalprym.cyclo import CycloNum, euler_phi
from nodalprym.mpoly import MPoly

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

LEVELS = [1, 3, 4, 5, 8, 12]


def rationals(bound=20):
    return st.fractions(min_value=-bound, max_value=bound, max_denominator=7).map(
        lambda f: mpq(f.numerator, f.denominator))


@st.composite
def cyclonums(draw, level=None):
    lev = draw(st.sampled_from(LEVELS)) if level is None else level
    coeffs = draw(st.lists(rationals(), min_size=euler_phi(lev), max_size=euler_phi(lev)))
    return CycloNum(lev, coeffs)


@st.composite
def polys(draw, names=("x", "z"), max_terms=4, max_deg=3):
    out = MPoly()
    for _ in range(draw(st.integers(0, max_terms))):
        exps = {n: draw(st.integers(0, max_deg)) for n in names}
        out = out + MPoly.monomial(draw(rationals(9)), exps)
    return out


@pytest.fixture(scope="session")
def frac():
    return Fraction


def pytest_terminal_summary(terminalreporter):
    try:
        import test_acceptance
    except ImportError:
        return
    if not test_acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(test_acceptance.RESULTS):
        title, failures = test_acceptance.RESULTS[k]
        line = f"criterion {k}: {'PASS' if not failures else 'FAIL'} - {title}"
        if failures:
            line += f" ({'; '.join(failures)})"
        terminalreporter.write_line(line)
