import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ghostcalc.graded_core import (Convention, GradedBasis, SignedPermutation, all_permutations,
                                   antisymmetrize, compose, inverse, inversions, koszul_sign,
                                   multiplicity_factor, permutation_parity, permute, symmetrize,
                                   unshuffles)

perms = st.integers(1, 6).flatmap(lambda n: st.permutations(list(range(n))))


def test_parity_examples():
    assert permutation_parity((0, 1, 2)) == 1
    assert permutation_parity((1, 0)) == -1
    # 1 -> 2, 2 -> 3, 3 -> 1
    assert permutation_parity((1, 2, 0)) == 1


def test_koszul_examples():
    assert koszul_sign((0, 1), [1, 1]) == 1
    assert koszul_sign((1, 0), [1, 1]) == -1
    assert koszul_sign((1, 0), [0, 1]) == 1


@given(perms)
def test_parity_counts_inversions(p):
    brute = sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])
    assert permutation_parity(p) == (-1) ** brute


@given(perms, st.data())
def test_koszul_is_multiplicative(p, data):
    n = len(p)
    q = tuple(data.draw(st.permutations(list(range(n)))))
    degs = data.draw(st.lists(st.integers(0, 3), min_size=n, max_size=n))
    moved = permute(p, degs)
    assert koszul_sign(compose(q, p), degs) == koszul_sign(p, degs) * koszul_sign(q, moved)


@given(perms)
def test_inverse_and_identity(p):
    ident = tuple(range(len(p)))
    assert compose(p, inverse(p)) == ident
    assert koszul_sign(ident, [1] * len(p)) == 1


def test_signed_permutation():
    sp = SignedPermutation.of((1, 0), [1, 1])
    assert sp.parity == -1 and sp.koszul == -1 and sp.skew_sign == 1


def test_all_permutations_refuses_large():
    with pytest.raises(ValueError):
        all_permutations(9)


def test_antisymmetrize_arity_one_and_two():
    f = {(0,): Fraction(3)}
    assert antisymmetrize(f, [0])((0,)) == 3
    g = {(0, 1): Fraction(1)}
    # odd-odd swap: (-1)^sigma e(sigma) = (+1), so the two terms add
    assert antisymmetrize(g, [1, 1])((0, 1)) == 1
    assert antisymmetrize(g, [1, 1])((1, 0)) == 1
    assert antisymmetrize(g, [0, 0])((1, 0)) == -1


def test_antisymmetrize_twice_is_factorial():
    g = {(0, 1): Fraction(2), (1, 0): Fraction(-5)}
    once = antisymmetrize(g, [0, 0])
    twice = antisymmetrize(once, [0, 0])
    for key in itertools.permutations(range(2)):
        assert twice(key) == 2 * once(key)


def test_symmetrize_examples():
    g = {(0, 1): Fraction(2), (1, 0): Fraction(7)}
    assert symmetrize(g, [0, 0])((0, 1)) == 9
    assert symmetrize({(0,): Fraction(4)}, [2])((0,)) == 4


@given(st.dictionaries(st.tuples(*[st.integers(0, 2)] * 3), st.fractions(max_denominator=5), max_size=8),
       st.lists(st.integers(0, 2), min_size=3, max_size=3))
def test_symmetrize_against_bruteforce(coeffs, degs):
    sym = symmetrize(coeffs, degs)
    for key in itertools.product(range(3), repeat=3):
        brute = Fraction(0)
        for p in itertools.permutations(range(3)):
            odd = sum(1 for i in range(3) for j in range(i + 1, 3)
                      if p[i] > p[j] and degs[i] * degs[j] % 2)
            brute += (-1) ** odd * coeffs.get(tuple(key[i] for i in inverse(p)), Fraction(0))
        assert sym(key) == brute


def test_unshuffles_and_multiplicity():
    assert len(list(unshuffles(4, 2))) == 6
    assert multiplicity_factor((1, 1, 2, 2, 2)) == 12
    assert inversions((2, 0, 1)) == [(0, 1), (0, 2)]


def test_basis_validation():
    with pytest.raises(ValueError):
        GradedBasis.from_spec(["a", "a"])
    with pytest.raises(ValueError):
        GradedBasis.from_spec([("a", -1)])
    b = GradedBasis.from_spec(["a", ("b", 2)])
    assert b.gdegs() == (1, 3) and b.index("b") == 1
    with pytest.raises(KeyError):
        b.index("zz")


def test_convention_parse():
    assert Convention.parse("standard") is Convention.STANDARD
    assert Convention.parse("primary") is Convention.PRIMARY
    with pytest.raises(ValueError):
        Convention.parse("bogus")
