from fractions import Fraction

from hypothesis import settings, strategies as st

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def rationals(lo=-20, hi=20, max_den=8):
    return st.builds(lambda n, d: Fraction(n, d),
                     st.integers(lo * max_den, hi * max_den), st.integers(1, max_den)).filter(
        lambda x: lo <= x <= hi)


def positive_rationals(hi=20, max_den=8):
    return st.builds(lambda n, d: Fraction(n, d), st.integers(1, hi * max_den), st.integers(1, max_den)).filter(
        lambda x: 0 < x <= hi)


def pytest_terminal_summary(terminalreporter):
    rows = []
    for outcome in ("passed", "failed"):
        for rep in terminalreporter.stats.get(outcome, []):
            if "test_acceptance.py" in rep.nodeid and rep.when == "call":
                rows.append((rep.nodeid.split("::")[-1], outcome))
    if rows:
        terminalreporter.section("acceptance criteria")
        for name, outcome in sorted(rows):
            terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")
