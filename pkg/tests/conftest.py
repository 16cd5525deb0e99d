import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from mukai_kit.fixtures import k3_with_a1_fiber, k3_with_section
from mukai_kit.lattice import CohVector


@pytest.fixture
def X():
    return k3_with_section()


@pytest.fixture
def Y():
    return k3_with_a1_fiber()


def rand_q(rng: random.Random, num=9, den=5) -> Fraction:
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def rand_ns(rng, n, **kw):
    return tuple(rand_q(rng, **kw) for _ in range(n))


def rand_coh(rng, n, **kw) -> CohVector:
    return CohVector(rand_q(rng, **kw), rand_ns(rng, n, **kw), rand_q(rng, **kw))


rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def ns_vectors(n):
    return st.tuples(*([rationals] * n))


def coh_vectors(n):
    return st.builds(CohVector, rationals, ns_vectors(n), rationals)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
