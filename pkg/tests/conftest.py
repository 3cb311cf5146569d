import os
import sys
from itertools import product

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from boolcs import BoolPoly, PolySystem

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def naive_eval(p: BoolPoly, point) -> int:
    """Evaluate from the raw monomial masks; shares no code with BoolPoly.eval."""
    acc = 0
    for m in p.termset:
        acc ^= all(point[i] for i in range(p.n) if m >> i & 1)
    return int(acc)


def naive_zeros(polys, n):
    """Every point of F2^n (x1 first) where all polys vanish."""
    return {pt for pt in product((0, 1), repeat=n) if all(naive_eval(p, pt) == 0 for p in polys)}


def truth_table(p: BoolPoly):
    return tuple(naive_eval(p, pt) for pt in product((0, 1), repeat=p.n))


def monomials(n, max_deg=None):
    top = (1 << n) - 1
    if max_deg is None:
        return st.integers(0, top)
    return st.integers(0, top).filter(lambda m: bin(m).count("1") <= max_deg)


@st.composite
def polys(draw, n=None, max_deg=None, max_terms=8):
    if n is None:
        n = draw(st.integers(1, 8))
    terms = draw(st.lists(monomials(n, max_deg), max_size=max_terms))
    return BoolPoly(n, terms)


@st.composite
def systems(draw, n_range=(1, 8), max_deg=3, max_polys=10):
    n = draw(st.integers(*n_range))
    m = draw(st.integers(1, max_polys))
    return PolySystem(n, [draw(polys(n, max_deg, 6)) for _ in range(m)])


@pytest.fixture
def P():
    def make(text, n=3):
        return BoolPoly.parse(text, n)
    return make


CRITERIA: dict[int, str] = {}


def record_criterion(k: int, ok: bool, title: str, detail: str) -> str:
    line = f"criterion {k} [{'PASS' if ok else 'FAIL'}] {title}: {detail}"
    CRITERIA[k] = line
    return line


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(CRITERIA):
        terminalreporter.write_line(CRITERIA[k])
