import random
from fractions import Fraction

import pytest

from ghostcalc import (BracketFamily, Convention, GhostRing, GradedBasis, RepresentationFamily,
                       brackets_from_lie, check_cl_infinity, check_ga_infinity, check_representation)
from ghostcalc.random_instances import (adjoint_representation, perturb_family, random_basis,
                                        random_family, random_lie_algebra)
from ghostcalc.structures import (DegreeError, MisuseError, SkewnessError, check_skew, cl_residuals,
                                  ga_residuals, ga_symmetrized_residuals, rep_residuals)

from conftest import brute_jacobi


def ring_of(names, conv="primary"):
    return GhostRing(GradedBasis.from_spec(names), conv)


def test_brackets_from_lie(sl2, heisenberg):
    assert len(sl2.entries) == 3
    assert len(heisenberg.entries) == 1
    assert brackets_from_lie(ring_of("abc"), {}).is_empty()
    assert sl2.value((2, 0)) == {1: -1}


def test_skew_violations_rejected():
    r = ring_of("ab")
    with pytest.raises(SkewnessError):
        BracketFamily(r, {(0, 1): {0: 1}, (1, 0): {0: 1}})
    with pytest.raises(SkewnessError):
        BracketFamily(r, {(0, 0): {0: 1}})
    with pytest.raises(SkewnessError):
        brackets_from_lie(r, {(0, 1): {0: 1}, (1, 0): {0: 2}})


def test_degree_rule_enforced():
    r = ring_of([("a", 0), ("b", 1)])
    with pytest.raises(DegreeError):
        BracketFamily(r, {(0, 0 + 1): {0: 1}})
    BracketFamily(r, {(0, 1): {1: 1}})


def test_check_skew(sl2):
    assert check_skew(sl2).passed
    assert check_skew(BracketFamily(ring_of("ab"), {})).passed
    bad = BracketFamily(ring_of("ab"), {(0, 1): {0: 1}, (1, 0): {0: 1}}, strict=False)
    rep = check_skew(bad)
    assert not rep.passed
    assert rep.violations


def test_sl2_and_heisenberg_pass(sl2, heisenberg):
    for fam in (sl2, heisenberg):
        assert check_cl_infinity(fam).passed
        assert brute_jacobi(fam)


def test_jacobi_oracle_agrees_on_random_lie_perturbations():
    rng = random.Random(11)
    for _ in range(40):
        fam = random_lie_algebra(rng)
        assert check_cl_infinity(fam).passed and brute_jacobi(fam)
        bad = perturb_family(rng, fam)
        assert check_cl_infinity(bad).passed == brute_jacobi(bad)


def test_corrupted_sl2_witness(corpus):
    fam = corpus("sl2-corrupted").family
    rep = check_cl_infinity(fam)
    assert not rep.passed
    v = rep.violations[0]
    assert v.inputs == (0, 1, 2) and v.output == 1 and v.value == 1


def test_l1_only():
    r = ring_of([("a", 1), ("b", 0)])
    good = BracketFamily(r, {(0,): {1: 1}})
    assert check_cl_infinity(good).passed
    r3 = ring_of([("a", 0), ("b", 0)])
    with pytest.raises(DegreeError):
        BracketFamily(r3, {(0,): {1: 1}})
    r2 = ring_of([("a", 2), ("b", 1), ("c", 0)])
    d_sq = BracketFamily(r2, {(0,): {1: 1}, (1,): {2: 1}})
    assert not check_cl_infinity(d_sq).passed


def test_l1_not_a_derivation_fails_at_n2():
    # x (vdeg 1), y (vdeg 0): l1(x) = y, l2(y, x) = x, but l1 l2(y, x) = y != l2(y, l1 x) = 0
    r = ring_of([("x", 1), ("y", 0)], "standard-koszul")
    fam = BracketFamily(r, {(0,): {1: 1}, (0, 1): {0: 1}})
    rep = check_cl_infinity(fam)
    assert not rep.passed
    assert min(v.n for v in rep.violations) == 2


def test_factorial_equals_unshuffle_random():
    rng = random.Random(3)
    for conv in Convention:
        for _ in range(25):
            fam = random_family(rng, GhostRing(random_basis(rng, 3, 2), conv), (1, 2, 3), 0.4)
            assert cl_residuals(fam) == cl_residuals(fam, "factorial")


def test_ga_dual_numbers(corpus):
    fam = corpus("dual-numbers").family
    assert check_ga_infinity(fam).passed
    assert check_ga_infinity(BracketFamily(ring_of("ab"), {}, skew=False)).passed


def test_ga_nonassociative_brute():
    rng = random.Random(5)
    r = ring_of("ab")
    for _ in range(30):
        table = {(i, j): {k: rng.randint(-1, 1) for k in range(2)} for i in range(2) for j in range(2)}
        fam = BracketFamily(r, table, skew=False)

        def mul(x, y):
            out = {}
            for i, a in x.items():
                for j, b in y.items():
                    for k, c in fam.value((i, j)).items():
                        out[k] = out.get(k, 0) + a * b * c
            return {k: v for k, v in out.items() if v}

        assoc = all(mul(mul({i: 1}, {j: 1}), {k: 1}) == mul({i: 1}, mul({j: 1}, {k: 1}))
                    for i in range(2) for j in range(2) for k in range(2))
        assert check_ga_infinity(fam).passed == assoc


def test_ga_symmetrized_routes_agree():
    rng = random.Random(9)
    for _ in range(10):
        fam = random_family(rng, GhostRing(random_basis(rng, 2, 1)), (1, 2), 0.5, skew=False)
        lit = ga_symmetrized_residuals(fam, "literal")
        assert lit == ga_symmetrized_residuals(fam, "composed")


def test_symmetrized_is_weaker(corpus):
    # a Lie algebra viewed as an ordered product is Lie-admissible but not associative
    r = GhostRing(GradedBasis.from_spec(["e", "h", "f"]))
    sl2 = corpus("sl2").family
    ordered = BracketFamily(r, {t: o for t, o in ((t, sl2.value(t)) for t in
                                                   [(i, j) for i in range(3) for j in range(3)]) if o},
                            skew=False)
    assert not check_ga_infinity(ordered).passed
    assert check_ga_infinity(ordered, symmetrized=True).passed


def test_cl_checker_rejects_ordered():
    with pytest.raises(MisuseError):
        check_cl_infinity(BracketFamily(ring_of("a"), {}, skew=False))


def test_adjoint_rep_of_sl2_and_matrix_commutators(sl2):
    rep = adjoint_representation(sl2)
    assert check_representation(rep, sl2).passed
    from ghostcalc import linalg
    for i in range(3):
        for j in range(3):
            lhs = linalg.commutator(rep.matrix((i,)), rep.matrix((j,)))
            rhs = [[0] * 3 for _ in range(3)]
            for k, c in sl2.value((i, j)).items():
                rhs = linalg.madd(rhs, linalg.mscale(c, rep.matrix((k,))))
            assert lhs == linalg.as_matrix(rhs)


def test_trivial_rep_passes(sl2):
    assert check_representation(RepresentationFamily.trivial(sl2.ring, 2), sl2).passed


def test_noncommuting_rep_of_abelian_fails():
    r = ring_of("ab")
    fam = BracketFamily(r, {})
    rep = RepresentationFamily(r, 2, {(0,): [[0, 1], [0, 0]], (1,): [[0, 0], [1, 0]]})
    report = check_representation(rep, fam)
    assert not report.passed
    assert {v.n for v in report.violations} == {2}


def test_rep_factorial_equals_unshuffle():
    rng = random.Random(21)
    from ghostcalc.random_instances import random_representation
    for conv in Convention:
        for _ in range(15):
            ring = GhostRing(random_basis(rng, 3, 1), conv)
            fam = random_family(rng, ring, (1, 2), 0.4)
            rep = random_representation(rng, ring, [0, 1, -1], (0, 1, 2), 0.3)
            assert rep_residuals(rep, fam) == rep_residuals(rep, fam, "factorial")


def test_rep_warns_on_bad_family(corpus):
    fam = corpus("sl2-corrupted").family
    with pytest.warns(UserWarning):
        report = check_representation(RepresentationFamily.trivial(fam.ring), fam)
    assert report.notes


def test_report_serialisation(corpus):
    fam = corpus("sl2-corrupted").family
    rep = check_cl_infinity(fam)
    data = rep.to_json(fam.basis)
    assert data["passed"] is False
    assert "FAIL" in rep.summary(fam.basis)


def test_relabel_preserves_validity(sl2):
    moved = sl2.relabel((2, 0, 1))
    assert check_cl_infinity(moved).passed
    assert moved.basis.names == ("h", "f", "e")
