from fractions import Fraction

from hypothesis import settings, strategies as st

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")


@st.composite
def angles(draw, max_den: int = 10_000):
    den = draw(st.integers(1, max_den))
    return Fraction(draw(st.integers(0, den - 1)), den)


@st.composite
def odd_den_angles(draw, max_den: int = 4095):
    """Purely periodic angles (odd denominators) in (0, 1)."""
    den = draw(st.integers(1, max_den // 2)) * 2 + 1
    return Fraction(draw(st.integers(1, den - 1)), den)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
