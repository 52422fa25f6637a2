import random

import pytest

from eccforge.cnf import Formula, normalize, regularize
from eccforge.reduction import reduce


def make_instance(clauses, num_vars):
    """Reduction instance for DIMACS-style integer clauses."""
    f = Formula(num_vars, tuple(tuple((abs(x) - 1, x > 0) for x in c) for c in clauses))
    return reduce(regularize(normalize(f)))


@pytest.fixture(scope="session")
def small_instance():
    # (x1 or x2 or x3) and (not x1 or not x2 or x3): n=8, m=4, ell=3
    return make_instance([(1, 2, 3), (-1, -2, 3)], 3)


@pytest.fixture
def rng():
    return random.Random(1234)
