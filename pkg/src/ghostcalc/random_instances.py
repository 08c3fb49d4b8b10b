"""Random homogeneous bracket families and representations for property tests."""
from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Sequence

from .ghost_ring import GhostRing
from .graded_core import Convention, GradedBasis
from .structures import BracketFamily, RepresentationFamily, brackets_from_lie


def random_basis(rng: random.Random, dim: int, max_vdeg: int = 2) -> GradedBasis:
    return GradedBasis.from_spec((f"x{i}", rng.randint(0, max_vdeg)) for i in range(dim))


def _small(rng: random.Random, span: int = 2) -> Fraction:
    return Fraction(rng.choice([x for x in range(-span, span + 1) if x]))


def random_family(rng: random.Random, ring: GhostRing, arities: Sequence[int] = (1, 2, 3),
                  density: float = 0.3, skew: bool = True) -> BracketFamily:
    """Sparse homogeneous family; every entry respects the degree rule."""
    ring = ring.commutative() if skew else ring.free_version()
    b = ring.basis
    brackets = {}
    for k in arities:
        tuples = ring.monomials(k) if skew else itertools.product(range(b.dim), repeat=k)
        for t in tuples:
            target = sum(b.vdeg(i) for i in t) + k - 2
            outs = [j for j in range(b.dim) if b.vdeg(j) == target]
            if not outs:
                continue
            out = {j: _small(rng) for j in outs if rng.random() < density}
            if out:
                brackets[tuple(t)] = out
    return BracketFamily(ring, brackets, skew=skew)


def random_representation(rng: random.Random, ring: GhostRing, module_degrees: Sequence[int],
                          arities: Sequence[int] = (0, 1, 2), density: float = 0.3,
                          skew: bool = True) -> RepresentationFamily:
    ring = ring.commutative() if skew else ring.free_version()
    dim = len(module_degrees)
    maps = {}
    for k in arities:
        tuples = ring.monomials(k) if skew else itertools.product(range(ring.dim), repeat=k)
        for t in tuples:
            shift = 1 - ring.gdeg(t)
            mat = [[Fraction(0)] * dim for _ in range(dim)]
            hit = False
            for a in range(dim):
                for c in range(dim):
                    if module_degrees[a] == module_degrees[c] + shift and rng.random() < density:
                        mat[a][c] = _small(rng)
                        hit = True
            if hit:
                maps[tuple(t)] = mat
    return RepresentationFamily(ring, dim, maps, module_degrees=module_degrees, skew=skew)


# Seeds for valid Lie algebras: (names, structure constants on ordered pairs).
LIE_SEEDS = {
    "sl2": (("e", "h", "f"), {(0, 2): {1: 1}, (1, 0): {0: 2}, (1, 2): {2: -2}}),
    "heisenberg": (("x", "y", "z"), {(0, 1): {2: 1}}),
    "aff1": (("a", "b"), {(0, 1): {1: 1}}),
    "abelian": (("p", "q", "r"), {}),
}


def _random_invertible(rng: random.Random, n: int) -> list[list[Fraction]]:
    from . import linalg
    while True:
        m = [[Fraction(rng.randint(-2, 2)) for _ in range(n)] for _ in range(n)]
        if linalg.rank(m) == n:
            return m


def _inverse(m: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(m)
    a = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        p = next(r for r in range(c, n) if a[r][c] != 0)
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        a[c] = [x / piv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]


def random_lie_algebra(rng: random.Random, seed: str | None = None,
                       convention: Convention = Convention.PRIMARY) -> BracketFamily:
    """A valid Lie algebra: a seed algebra written in a random rational basis."""
    name = seed or rng.choice(sorted(LIE_SEEDS))
    names, consts = LIE_SEEDS[name]
    n = len(names)
    p = _random_invertible(rng, n)       # new basis vector i = sum_a p[a][i] old_a
    q = _inverse(p)
    new = {}
    for i in range(n):
        for j in range(i + 1, n):
            out = [Fraction(0)] * n
            for a in range(n):
                for b in range(n):
                    w = p[a][i] * p[b][j]
                    if not w:
                        continue
                    for c, v in _old_bracket(consts, a, b).items():
                        for k in range(n):
                            out[k] += w * v * q[k][c]
            if any(out):
                new[(i, j)] = {k: x for k, x in enumerate(out) if x}
    basis = GradedBasis.from_spec([f"{nm}'" for nm in names])
    return brackets_from_lie(GhostRing(basis, convention), new)


def _old_bracket(consts, a, b):
    if (a, b) in consts:
        return consts[(a, b)]
    if (b, a) in consts:
        return {k: -v for k, v in consts[(b, a)].items()}
    return {}


def adjoint_representation(fam: BracketFamily) -> RepresentationFamily:
    """``rho_I(y) = (-1)^{vdeg y} l(I, y)`` on ``L`` itself, module degrees ``-vdeg``.

    A representation whenever ``fam`` is a CL-infinity algebra whose ghost
    ring is super-commutative (classical data, or the standard convention).
    """
    ring, basis = fam.ring, fam.basis
    n = basis.dim
    maps = {}
    for k in range(0, fam.max_arity):
        for t in ring.monomials(k):
            mat = [[Fraction(0)] * n for _ in range(n)]
            hit = False
            for y in range(n):
                sign = -1 if basis.vdeg(y) % 2 else 1
                for j, c in fam.value(t + (y,)).items():
                    mat[j][y] += sign * c
                    hit = True
            if hit:
                maps[t] = mat
    return RepresentationFamily(ring, n, maps, module_degrees=[-d for d in basis.vdegs()], skew=fam.skew)


def perturb_family(rng: random.Random, fam: BracketFamily) -> BracketFamily:
    """Copy with one coefficient changed by a nonzero amount (degree rule kept)."""
    b = fam.basis
    slots = []
    for k in sorted(set(fam.arities) | {2}):
        tuples = fam.ring.monomials(k) if fam.skew else itertools.product(range(b.dim), repeat=k)
        for t in tuples:
            target = sum(b.vdeg(i) for i in t) + k - 2
            slots.extend((tuple(t), j) for j in range(b.dim) if b.vdeg(j) == target)
    t, j = rng.choice(slots)
    out = dict(fam.value(t))
    out[j] = out.get(j, Fraction(0)) + _small(rng)
    return fam.with_entry(t, out)


def perturb_representation(rng: random.Random, rep: RepresentationFamily) -> RepresentationFamily:
    """Copy with one matrix entry changed, respecting module degrees."""
    ring = rep.ring
    slots = []
    for k in range(0, max(rep.max_arity, 1) + 1):
        for t in ring.monomials(k):
            shift = 1 - ring.gdeg(t)
            slots.extend((t, a, c) for a in range(rep.module_dim) for c in range(rep.module_dim)
                         if rep.module_degrees[a] == rep.module_degrees[c] + shift)
    maps = dict(rep.entries)
    if not slots:
        return rep
    t, a, c = rng.choice(slots)
    mat = [list(r) for r in (maps.get(t) or [[Fraction(0)] * rep.module_dim for _ in range(rep.module_dim)])]
    mat[a][c] += _small(rng)
    maps[t] = mat
    return RepresentationFamily(ring, rep.module_dim, maps, module_degrees=rep.module_degrees, skew=rep.skew)
