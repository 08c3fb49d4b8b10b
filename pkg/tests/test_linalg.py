from fractions import Fraction

import sympy
from hypothesis import given, settings, strategies as st

from ghostcalc import linalg

entries = st.fractions(min_value=-4, max_value=4, max_denominator=4)


@settings(max_examples=150)
@given(st.integers(1, 6).flatmap(
    lambda c: st.lists(st.lists(entries, min_size=c, max_size=c), min_size=1, max_size=6)))
def test_rank_matches_sympy(rows):
    assert linalg.rank(rows) == sympy.Matrix(rows).rank()


@settings(max_examples=60)
@given(st.integers(2, 5), st.data())
def test_rank_of_low_rank_products(n, data):
    a = data.draw(st.lists(st.lists(st.integers(-3, 3), min_size=2, max_size=2), min_size=n, max_size=n))
    b = data.draw(st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=2, max_size=2))
    prod = linalg.matmul(linalg.as_matrix(a), linalg.as_matrix(b))
    assert linalg.rank(prod) <= 2
    assert linalg.rank(prod) == sympy.Matrix(prod).rank()


def test_rank_edge_cases():
    assert linalg.rank([]) == 0
    assert linalg.rank([[0, 0], [0, 0]]) == 0
    assert linalg.rank(linalg.identity(4)) == 4
    assert linalg.rank([[Fraction(1, 3), Fraction(2, 3)], [1, 2]]) == 1


def test_matrix_helpers():
    a = linalg.as_matrix([[0, 1], [0, 0]])
    b = linalg.as_matrix([[0, 0], [1, 0]])
    assert linalg.commutator(a, b) == linalg.as_matrix([[1, 0], [0, -1]])
    assert linalg.matvec(a, linalg.as_vector([3, 4])) == (4, 0)
