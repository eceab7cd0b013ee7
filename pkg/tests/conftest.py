from __future__ import annotations

import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from qstab.qlattice import KClass
from qstab.ring import LaurentInt

settings.register_profile(
    "repro", derandomize=True, max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("repro")

SEED = 0


@pytest.fixture
def rng() -> random.Random:
    return random.Random(SEED)


laurents = st.dictionaries(st.integers(-4, 4), st.integers(-5, 5), max_size=4).map(LaurentInt)


def kclasses(n: int):
    return st.lists(laurents, min_size=n, max_size=n).map(KClass)


def random_laurent(r: random.Random, span: int = 2, size: int = 3) -> LaurentInt:
    return LaurentInt({r.randint(-span, span): r.randint(-3, 3) for _ in range(r.randint(0, size))})


def random_class(r: random.Random, n: int) -> KClass:
    return KClass(random_laurent(r) for _ in range(n))


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        ok, detail = results[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}")
