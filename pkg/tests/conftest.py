import random
import sys

import pytest
from hypothesis import strategies as st

from dendriform.terms import Family, Leaf, Node, OpSymbol


def random_monomial(rng: random.Random, n: int, families=(Family.BASE,), nops: int = 1):
    """A uniformly shaped random polylinear monomial in x1..xn."""
    leaves = [Leaf(k) for k in range(1, n + 1)]
    rng.shuffle(leaves)

    def build(items):
        if len(items) == 1:
            return items[0]
        cut = rng.randint(1, len(items) - 1)
        op = OpSymbol(rng.choice(families), rng.randint(1, nops))
        return Node(op, build(items[:cut]), build(items[cut:]))

    return build(leaves)


@st.composite
def monomials(draw, max_degree=5, families=(Family.BASE,), nops=3):
    n = draw(st.integers(min_value=1, max_value=max_degree))
    seed = draw(st.integers(min_value=0, max_value=2**32 - 1))
    return random_monomial(random.Random(seed), n, families, nops)


@pytest.fixture
def rng():
    return random.Random(20261016)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module and module.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in module.summary_lines():
            terminalreporter.write_line(line)
