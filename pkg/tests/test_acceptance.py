"""Acceptance criteria, one test each.

Every test prints a single ``criterion N: PASS|FAIL ...`` line (visible with
``pytest -v`` as well as ``python tests/test_acceptance.py``).
"""
import itertools
import random
import sys
import time
from pathlib import Path

import pytest
import sympy

sys.path.insert(0, str(Path(__file__).parent))

from conftest import brute_jacobi  # noqa: E402
from ghostcalc import (Convention, GhostRing, OddDerivation, check_cl_infinity,  # noqa: E402
                       check_ga_infinity, check_representation, is_nilpotent)
from ghostcalc import cochains as cc  # noqa: E402
from ghostcalc.cli import correspondence_summary, main  # noqa: E402
from ghostcalc.instances import corpus_names, load_corpus  # noqa: E402
from ghostcalc.random_instances import (adjoint_representation, perturb_family,  # noqa: E402
                                        perturb_representation, random_basis, random_family,
                                        random_lie_algebra, random_representation)
from ghostcalc.structures import (cl_residuals, ga_symmetrized_residuals, rep_residuals)  # noqa: E402

LINES = []


@pytest.fixture
def announce(request):
    capman = request.config.pluginmanager.getplugin("capturemanager")

    def emit(number, ok, detail):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}"
        LINES.append(line)
        if capman is not None:
            with capman.global_and_fixture_disabled():
                print("\n" + line)
        else:
            print(line)
    return emit


def skew_corpus():
    return [load_corpus(n) for n in corpus_names() if load_corpus(n).skew]


# --- 1 ---------------------------------------------------------------------------------------------


def random_skew_pool(rng, count):
    pool = []
    convs = list(Convention)
    while len(pool) < count:
        conv = convs[len(pool) % 2]
        kind = len(pool) % 4
        if kind == 0:
            fam = random_lie_algebra(rng, convention=conv)
        elif kind == 1:
            fam = perturb_family(rng, random_lie_algebra(rng, convention=conv))
        else:
            ring = GhostRing(random_basis(rng, rng.randint(1, 4), 2), conv)
            fam = random_family(rng, ring, (1, 2, 3)[:rng.randint(1, 3)], rng.choice([0.2, 0.4]))
        pool.append(fam)
    return pool


def test_criterion_1_iff_equivalence(announce):
    start = time.perf_counter()
    rng = random.Random(20240101)
    discrepancies = 0
    passes = fails = 0
    for fam in random_skew_pool(rng, 120) + [inst.family for inst in skew_corpus()]:
        a = check_cl_infinity(fam).passed
        b = is_nilpotent(OddDerivation(fam)).nilpotent
        discrepancies += a != b
        passes += a
        fails += not a
    # the same statement through the command line on every skew corpus file
    for name in corpus_names():
        if not load_corpus(name).skew:
            continue
        cl = main(["check", "--cl", f"corpus:{name}"])
        nil = main(["check", "--nilpotent", f"corpus:{name}"])
        discrepancies += cl != nil
    elapsed = time.perf_counter() - start
    ok = discrepancies == 0 and passes > 0 and fails > 0 and elapsed <= 60
    announce(1, ok, f"{passes + fails} families ({passes} pass, {fails} fail), "
                    f"{discrepancies} discrepancies, {elapsed:.1f}s")
    assert ok


# --- 2 ---------------------------------------------------------------------------------------------


def test_criterion_2_representation_equivalence(announce):
    rng = random.Random(77)
    cases = []
    for i in range(60):
        conv = list(Convention)[i % 2]
        fam = random_lie_algebra(rng, convention=conv)
        adj = adjoint_representation(fam)
        cases.append((fam, adj))
        cases.append((fam, perturb_representation(rng, adj)))
        degs = [0] * rng.randint(1, 3)
        cases.append((fam, random_representation(rng, fam.ring, degs, (1,), 0.3)))
    for inst in skew_corpus():
        if check_cl_infinity(inst.family).passed:
            cases.append((inst.family, inst.rep_or_trivial()))
    std = load_corpus("graded-standard").family
    adj = adjoint_representation(std)
    cases.append((std, adj))
    for _ in range(10):
        cases.append((std, perturb_representation(rng, adj)))
    # graded modules over l_1-only families
    while len(cases) < 260:
        conv = list(Convention)[len(cases) % 2]
        ring = GhostRing(random_basis(rng, rng.randint(2, 4), 1), conv)
        fam = random_family(rng, ring, (1,), 0.3)
        if not check_cl_infinity(fam).passed:
            continue
        degs = [rng.randint(-1, 1) for _ in range(rng.randint(1, 3))]
        cases.append((fam, random_representation(rng, fam.ring, degs, (0, 1, 2), rng.choice([0.1, 0.3]))))
    discrepancies = passes = fails = 0
    for fam, rep in cases:
        a = check_representation(rep, fam).passed
        b = is_nilpotent(OddDerivation(fam, rep)).nilpotent
        discrepancies += a != b
        passes += a
        fails += not a
    ok = discrepancies == 0 and passes > 0 and fails > 0
    announce(2, ok, f"{len(cases)} (family, module) pairs ({passes} pass, {fails} fail), "
                    f"{discrepancies} discrepancies")
    assert ok


# --- 3 ---------------------------------------------------------------------------------------------


def test_criterion_3_correspondence(announce):
    names = ["abelian-4", "heisenberg-3", "sl2", "graded-primary", "graded-standard"]
    total = failures = 0
    exit_codes = []
    for name in names:
        rows = correspondence_summary(load_corpus(name), 3, max_k=3)
        total += sum(r["cochains"] for r in rows)
        failures += sum(r["failures"] for r in rows)
        exit_codes.append(main(["correspond", "--max-arity", "3", f"corpus:{name}"]))
    ok = failures == 0 and set(exit_codes) == {0}
    announce(3, ok, f"{total} (cochain, k) pairs on {', '.join(names)}; {failures} mismatches")
    assert ok


# --- 4 ---------------------------------------------------------------------------------------------


def _square_zero_on_basis(inst, max_n, max_arity):
    fam, rep = inst.family, inst.representation
    mdim = rep.module_dim if rep else 1
    mdeg = rep.module_degrees if rep else None
    checked = 0
    for n in range(max_n + 1):
        for w in cc.cochain_basis(fam.ring, n, mdim, skew=fam.skew, module_degrees=mdeg):
            checked += 1
            if cc.square(w, rep, fam, max_arity=max_arity):
                return False, checked
    return True, checked


def test_criterion_4_square_zero(announce):
    start = time.perf_counter()
    results = {}
    for name in ("sl2", "graded-standard", "dual-numbers", "upper-triangular-2x2"):
        results[name] = _square_zero_on_basis(load_corpus(name), 4, 8)
    # the named bar differential as well
    for name in ("dual-numbers", "upper-triangular-2x2"):
        alg = load_corpus(name).family
        d = alg.basis.dim
        good = True
        for n in range(4):
            for w in cc.cochain_basis(alg.ring, n, d, skew=False):
                if not cc.hochschild_differential(cc.hochschild_differential(w, alg), alg).is_zero():
                    good = False
        results[name + "/hochschild"] = (good, 0)
    elapsed = time.perf_counter() - start
    ok = all(r[0] for r in results.values()) and elapsed <= 30
    announce(4, ok, ", ".join(f"{k}={'0' if v[0] else 'nonzero'}" for k, v in results.items())
             + f", {elapsed:.1f}s")
    assert ok


# --- 5 ---------------------------------------------------------------------------------------------


def test_criterion_5_cohomology(announce):
    sympy_rank = lambda rows: sympy.Matrix(rows).rank()  # noqa: E731
    got = {
        "abelian-4": cc.cohomology_dims(load_corpus("abelian-4").family, None, 4),
        "sl2": cc.cohomology_dims(load_corpus("sl2").family, None, 3),
        "heisenberg-3": cc.cohomology_dims(load_corpus("heisenberg-3").family, None, 3),
    }
    cross = {
        "sl2": [r.dim_cohomology for r in cc.cohomology_table(load_corpus("sl2").family, None, 3, rank=sympy_rank)],
        "heisenberg-3": [r.dim_cohomology for r in
                         cc.cohomology_table(load_corpus("heisenberg-3").family, None, 3, rank=sympy_rank)],
    }
    ok = (got["abelian-4"] == [1, 4, 6, 4, 1] and got["sl2"] == [1, 0, 0, 1] and got["heisenberg-3"][1] == 2
          and cross["sl2"] == got["sl2"] and cross["heisenberg-3"] == got["heisenberg-3"])
    announce(5, ok, f"abelian-4 {tuple(got['abelian-4'])}, sl2 {tuple(got['sl2'])}, "
                    f"heisenberg-3 H^1={got['heisenberg-3'][1]} (second elimination agrees)")
    assert ok


# --- 6 ---------------------------------------------------------------------------------------------


def brute_associative(fam):
    d = fam.basis.dim

    def mul(x, y):
        out = {}
        for i, a in x.items():
            for j, b in y.items():
                for k, c in fam.value((i, j)).items():
                    out[k] = out.get(k, 0) + a * b * c
        return {k: v for k, v in out.items() if v}

    return all(mul(mul({i: 1}, {j: 1}), {k: 1}) == mul({i: 1}, mul({j: 1}, {k: 1}))
               for i, j, k in itertools.product(range(d), repeat=3))


def test_criterion_6_negative_detection(announce):
    corrupted = load_corpus("sl2-corrupted").family
    nil = is_nilpotent(OddDerivation(corrupted))
    cl = check_cl_infinity(corrupted)
    named_ok = (not nil.nilpotent and nil.witness is not None and not cl.passed and bool(cl.violations)
                and not check_ga_infinity(load_corpus("nonassociative-m2").family).passed)
    rng = random.Random(606)
    false_passes = invalid = 0
    for i in range(50):
        fam = perturb_family(rng, random_lie_algebra(rng, convention=list(Convention)[i % 2]))
        valid = brute_jacobi(fam)
        invalid += not valid
        if not valid and (check_cl_infinity(fam).passed or is_nilpotent(OddDerivation(fam)).nilpotent):
            false_passes += 1
    for i in range(20):
        base = load_corpus(["dual-numbers", "upper-triangular-2x2"][i % 2]).family
        fam = perturb_family(rng, base)
        valid = brute_associative(fam)
        invalid += not valid
        if not valid and (check_ga_infinity(fam).passed or is_nilpotent(OddDerivation(fam)).nilpotent):
            false_passes += 1
    ok = named_ok and false_passes == 0
    announce(6, ok, f"named negatives detected={named_ok}; 70 perturbed instances "
                    f"({invalid} truly invalid), {false_passes} false passes")
    assert ok


# --- 7 ---------------------------------------------------------------------------------------------


def test_criterion_7_internal_consistency(announce):
    compared = mismatches = 0
    for name in corpus_names():
        inst = load_corpus(name)
        fam = inst.family
        rep = inst.representation
        if fam.skew:
            compared += 1
            mismatches += cl_residuals(fam) != cl_residuals(fam, "factorial")
            if rep is not None:
                compared += 1
                mismatches += rep_residuals(rep, fam) != rep_residuals(rep, fam, "factorial")
            a = OddDerivation(fam, summation="sorted")
            b = OddDerivation(fam, summation="all")
            compared += 1
            mismatches += any(a.apply_to_generator(j) != b.apply_to_generator(j) for j in range(fam.basis.dim))
            mdim = rep.module_dim if rep else 1
            for n in range(3):
                for w in cc.cochain_basis(fam.ring, n, mdim):
                    for k in sorted(set(cc.differential_arities(fam, rep)) | {1, 2}):
                        compared += 1
                        mismatches += (cc.cl_differential_component(k, w, rep, fam)
                                       != cc.cl_differential_component(k, w, rep, fam, mode="factorial"))
        else:
            compared += 1
            mismatches += (ga_symmetrized_residuals(fam, "literal") != ga_symmetrized_residuals(fam, "composed"))
    ok = mismatches == 0
    announce(7, ok, f"{compared} factorial/unshuffle comparisons over the corpus, {mismatches} mismatches")
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
