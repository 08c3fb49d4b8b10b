import itertools
from fractions import Fraction

import pytest

from ghostcalc import Convention, GhostRing, GradedBasis, brackets_from_lie
from ghostcalc.instances import load_corpus

SL2 = {(0, 2): {1: 1}, (1, 0): {0: 2}, (1, 2): {2: -2}}


@pytest.fixture
def sl2():
    ring = GhostRing(GradedBasis.from_spec(["e", "h", "f"]))
    return brackets_from_lie(ring, SL2)


@pytest.fixture
def heisenberg():
    ring = GhostRing(GradedBasis.from_spec(["x", "y", "z"]))
    return brackets_from_lie(ring, {(0, 1): {2: 1}})


@pytest.fixture
def corpus():
    return load_corpus


def mixed_basis():
    return GradedBasis.from_spec([("a", 0), ("b", 1), ("c", 2), ("d", 1)])


def lie_bracket(fam, x, y):
    return fam.value((x, y))


def brute_jacobi(fam):
    """Independent Jacobi check on an ungraded skew family with only l_2."""
    n = fam.basis.dim
    for x, y, z in itertools.product(range(n), repeat=3):
        acc = {}
        for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
            for m, u in fam.value((a, b)).items():
                for k, v in fam.value((m, c)).items():
                    acc[k] = acc.get(k, Fraction(0)) + u * v
        if any(acc.values()):
            return False
    return True
