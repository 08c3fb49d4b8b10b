"""Cochains ``C^n(L, V)``, their differentials, the ghost bridge and cohomology.

Skew cochains store sorted index tuples only.  The value on any other tuple
follows the exchange law of the ghost ring, ``omega(.., a, b, ..) =
s(a, b) omega(.., b, a, ..)``, which is what makes

    to_ghost(omega) = (1/n!) sum_{all I} omega(I) eta^I
                    = sum_{sorted I} omega(I) / prod(mult!) eta^I

well defined.  Non-skew cochains live on words and map to the free ring
without any factorial.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from . import linalg
from .derivations import OddDerivation, is_nilpotent
from .ghost_ring import GhostCochain, GhostRing
from .graded_core import all_permutations, multiplicity_factor, permute, unshuffles
from .structures import (BracketFamily, MisuseError, RepresentationFamily, check_ga_infinity)

DEFAULT_MAX_ARITY = 6


class ArityError(ValueError):
    pass


class NotNilpotentError(ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class Cochain:
    """Multilinear map from ``n`` copies of ``L`` to a module ``V``."""

    def __init__(self, ring: GhostRing, arity: int, module_dim: int,
                 values: Mapping[tuple, Sequence] | None = None, skew: bool = True,
                 module_degrees: Sequence[int] | None = None):
        self.skew = skew
        self.ring = ring.commutative() if skew else ring.free_version()
        self.arity = int(arity)
        if self.arity < 0:
            raise ValueError("arity must be non-negative")
        self.module_dim = int(module_dim)
        self.module_degrees = tuple(module_degrees) if module_degrees is not None else (0,) * self.module_dim
        self.values: dict[tuple, linalg.Vector] = {}
        for t, vec in (values or {}).items():
            t = tuple(int(i) for i in t)
            if len(t) != self.arity:
                raise ValueError(f"tuple {t} has length {len(t)}, cochain arity is {self.arity}")
            for i in t:
                self.ring.basis.check_index(i)
            vec = linalg.as_vector(vec)
            if len(vec) != self.module_dim:
                raise ValueError(f"value on {t} has length {len(vec)}, module_dim is {self.module_dim}")
            if skew:
                mono, sign = self.ring.sort_sign(t)
                if sign == 0:
                    if any(vec):
                        raise ValueError(f"value on {t} must vanish by the exchange law")
                    continue
                vec = vec if sign == 1 else linalg.vscale(-1, vec)
                if mono in self.values and self.values[mono] != vec:
                    raise ValueError(f"values on permutations of {mono} violate the exchange law")
                t = mono
            if any(vec):
                self.values[t] = vec

    @property
    def basis(self):
        return self.ring.basis

    def value(self, t: Sequence[int]) -> linalg.Vector:
        t = tuple(t)
        if not self.skew:
            return self.values.get(t, linalg.zeros(self.module_dim))
        mono, sign = self.ring.sort_sign(t)
        v = self.values.get(mono) if sign else None
        if v is None:
            return linalg.zeros(self.module_dim)
        return v if sign == 1 else linalg.vscale(-1, v)

    def is_zero(self) -> bool:
        return not self.values

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        return (self.ring == other.ring and self.arity == other.arity
                and self.module_dim == other.module_dim and self.values == other.values)

    def __add__(self, other: "Cochain") -> "Cochain":
        if other.arity != self.arity or other.ring != self.ring:
            raise ValueError("cannot add cochains of different arity or ring")
        vals = dict(self.values)
        for t, v in other.values.items():
            vals[t] = linalg.vadd(vals.get(t, linalg.zeros(self.module_dim)), v)
        return self._like(self.arity, vals)

    def scale(self, c) -> "Cochain":
        return self._like(self.arity, {t: linalg.vscale(Fraction(c), v) for t, v in self.values.items()})

    def _like(self, arity: int, values) -> "Cochain":
        return Cochain(self.ring, arity, self.module_dim, values, self.skew, self.module_degrees)

    def format(self) -> str:
        if not self.values:
            return "0"
        names = self.basis.names
        lines = []
        for t, v in sorted(self.values.items()):
            args = ",".join(names[i] for i in t)
            lines.append(f"({args}) -> [{', '.join(str(x) for x in v)}]")
        return "\n".join(lines)

    def __repr__(self):
        return f"Cochain(arity={self.arity}, {len(self.values)} values)"


def cochain_basis(ring: GhostRing, arity: int, module_dim: int, skew: bool = True,
                  module_degrees: Sequence[int] | None = None) -> list[Cochain]:
    """Delta cochains on every (sorted tuple or word, module index)."""
    ring = ring.commutative() if skew else ring.free_version()
    out = []
    for t in _tuples(ring, arity):
        for beta in range(module_dim):
            vec = [0] * module_dim
            vec[beta] = 1
            out.append(Cochain(ring, arity, module_dim, {t: vec}, skew, module_degrees))
    return out


def _tuples(ring: GhostRing, n: int):
    if ring.free:
        return itertools.product(range(ring.dim), repeat=n)
    capped = GhostRing(ring.basis, ring.convention, exponent_cap=max(n, 1))
    return capped.monomials(n)


def _check_arity(n: int, max_arity: int):
    if n > max_arity:
        raise ArityError(f"result arity {n} exceeds the configured maximum {max_arity}")


def _hat(vec: linalg.Vector, degrees: Sequence[int]) -> linalg.Vector:
    return tuple(-x if d % 2 else x for x, d in zip(vec, degrees))


def _rep_or_trivial(rep, ring, module_dim, skew, module_degrees=None):
    if rep is not None:
        return rep
    return RepresentationFamily(ring, module_dim, {}, module_degrees=module_degrees, skew=skew)


# --- classical Chevalley-Eilenberg ------------------------------------------------


def ce_differential(omega: Cochain, rep: RepresentationFamily | None, fam: BracketFamily) -> Cochain:
    """Textbook Chevalley-Eilenberg differential (ungraded data only)."""
    if any(omega.basis.vdegs()):
        raise MisuseError("the Chevalley-Eilenberg formula is stated for ungraded data")
    if not omega.skew or not fam.skew:
        raise MisuseError("Chevalley-Eilenberg differential needs skew cochains and brackets")
    if set(fam.arities) - {2}:
        raise MisuseError("Chevalley-Eilenberg differential needs a family with l_2 only")
    rep = _rep_or_trivial(rep, fam.ring, omega.module_dim, True)
    if set(rep.arities) - {1}:
        raise MisuseError("Chevalley-Eilenberg differential needs a representation with rho_1 only")
    n = omega.arity
    dim = omega.module_dim
    vals = {}
    for X in _tuples(omega.ring, n + 1):
        acc = linalg.zeros(dim)
        for i in range(n + 1):
            rest = X[:i] + X[i + 1:]
            v = rep.act((X[i],), omega.value(rest))
            acc = linalg.vadd(acc, v if i % 2 == 0 else linalg.vscale(-1, v))
        for j in range(n + 1):
            for k in range(j + 1, n + 1):
                rest = tuple(x for p, x in enumerate(X) if p not in (j, k))
                sign = 1 if (j + k) % 2 == 0 else -1
                for a, c in fam.value((X[j], X[k])).items():
                    acc = linalg.vadd(acc, linalg.vscale(sign * c, omega.value((a,) + rest)))
        if any(acc):
            vals[X] = acc
    return omega._like(n + 1, vals)


# --- CL-infinity components -------------------------------------------------------------


def cl_differential_component(k: int, omega: Cochain, rep: RepresentationFamily | None, fam: BracketFamily,
                              mode: str = "unshuffle", max_arity: int = DEFAULT_MAX_ARITY) -> Cochain:
    """``S_k``: ``C^n -> C^{n+k-1}``, pairing ``rho_{k-1}`` with ``l_k``."""
    if not omega.skew or not fam.skew:
        raise MisuseError("CL differential needs skew cochains and a skew family; use ga_differential_component")
    if k < 1:
        raise ValueError("k must be at least 1")
    n = omega.arity
    total = n + k - 1
    _check_arity(total, max_arity)
    rep = _rep_or_trivial(rep, fam.ring, omega.module_dim, True, omega.module_degrees)
    if rep.module_dim != omega.module_dim:
        raise ValueError("module dimension mismatch")
    degs = rep.module_degrees
    ring = omega.ring
    vals = {}
    for T in _tuples(ring, total):
        if mode == "unshuffle":
            v = _cl_component_unshuffle(k, omega, rep, fam, T, degs)
        elif mode == "factorial":
            v = _cl_component_factorial(k, omega, rep, fam, T, degs)
        else:
            raise ValueError(f"unknown mode {mode!r}")
        if any(v):
            vals[T] = v
    return omega._like(total, vals)


def _cl_component_unshuffle(k, omega, rep, fam, T, degs):
    ring = omega.ring
    acc = linalg.zeros(omega.module_dim)
    n = omega.arity
    if k - 1 <= len(T) and omega.arity == len(T) - (k - 1):
        for P, Q in unshuffles(len(T), k - 1):
            TP = tuple(T[i] for i in P)
            TQ = tuple(T[i] for i in Q)
            sign = ring.reorder_sign(TP + TQ)
            if sign:
                acc = linalg.vadd(acc, linalg.vscale(sign, rep.act(TP, omega.value(TQ))))
    if n >= 1:
        for P, Q in unshuffles(len(T), k):
            TP = tuple(T[i] for i in P)
            TQ = tuple(T[i] for i in Q)
            sign = ring.reorder_sign(TP + TQ)
            if not sign:
                continue
            for a, c in fam.value(TP).items():
                v = _hat(omega.value((a,) + TQ), degs)
                acc = linalg.vadd(acc, linalg.vscale(-sign * c, v))
    return acc


def _cl_component_factorial(k, omega, rep, fam, T, degs):
    ring = omega.ring
    n = omega.arity
    m = len(T)
    acc = linalg.zeros(omega.module_dim)
    w_rho = Fraction(1, math.factorial(k - 1) * math.factorial(n))
    w_br = Fraction(1, math.factorial(k) * math.factorial(n))
    for perm in all_permutations(m):
        W = permute(perm, T)
        sign = ring.reorder_sign(W)
        if not sign:
            continue
        v = rep.act(W[:k - 1], omega.value(W[k - 1:]))
        acc = linalg.vadd(acc, linalg.vscale(sign * w_rho, v))
        if n == 0:
            continue
        for l in range(n):
            pre, block, suf = W[:l], W[l:l + k], W[l + k:]
            for a, c in fam.value(block).items():
                eps = 1
                for x in pre:
                    eps *= ring.swap(x, a) * ring.chi(block, x)
                v = _hat(omega.value(pre + (a,) + suf), degs)
                acc = linalg.vadd(acc, linalg.vscale(-sign * eps * c * w_br, v))
    return acc


# --- GA-infinity / Hochschild -----------------------------------------------------------


def ga_differential_component(k: int, omega: Cochain, rep: RepresentationFamily | None, fam: BracketFamily,
                              max_arity: int = DEFAULT_MAX_ARITY) -> Cochain:
    """Ordered analogue of :func:`cl_differential_component` on words."""
    if fam.skew:
        raise MisuseError("ga_differential_component needs a non-skew family")
    if omega.skew:
        omega = Cochain(fam.ring, omega.arity, omega.module_dim,
                        {t: omega.value(t) for t in _tuples(fam.ring, omega.arity)},
                        skew=False, module_degrees=omega.module_degrees)
    n = omega.arity
    total = n + k - 1
    _check_arity(total, max_arity)
    rep = _rep_or_trivial(rep, fam.ring, omega.module_dim, False, omega.module_degrees)
    degs = rep.module_degrees
    basis = fam.basis
    vals = {}
    for W in _ga_candidates(k, omega, fam):
        acc = rep.act(W[:k - 1], omega.value(W[k - 1:]))
        if n >= 1:
            for l in range(n):
                pre, block, suf = W[:l], W[l:l + k], W[l + k:]
                sign = -1 if sum(basis.gdeg(x) for x in pre) % 2 else 1
                for a, c in fam.value(block).items():
                    v = _hat(omega.value(pre + (a,) + suf), degs)
                    acc = linalg.vadd(acc, linalg.vscale(-sign * c, v))
        if any(acc):
            vals[W] = acc
    return omega._like(total, vals)


def _ga_candidates(k: int, omega: Cochain, fam: BracketFamily) -> list[tuple]:
    """Words of length ``n + k - 1`` that can pick up a term from the support of ``omega``."""
    dim = fam.basis.dim
    producers: dict[int, list[tuple]] = {}
    for block in itertools.product(range(dim), repeat=k):
        for a in fam.value(block):
            producers.setdefault(a, []).append(block)
    out = set()
    for u in omega.values:
        for pre in itertools.product(range(dim), repeat=k - 1):
            out.add(pre + u)
        for l, a in enumerate(u):
            for block in producers.get(a, ()):
                out.add(u[:l] + block + u[l + 1:])
    return sorted(out)


def left_multiplication(alg: BracketFamily) -> RepresentationFamily:
    """``rho_1(a) b = m_2(a, b)`` on the algebra itself."""
    dim = alg.basis.dim
    maps = {}
    for a in range(dim):
        mat = [[Fraction(0)] * dim for _ in range(dim)]
        for b in range(dim):
            for c, x in alg.value((a, b)).items():
                mat[c][b] = x
        maps[(a,)] = mat
    return RepresentationFamily(alg.ring, dim, maps, skew=False)


def hochschild_differential(omega: Cochain, alg: BracketFamily) -> Cochain:
    """One-sided bar differential ``a_0 w(a_1..) - sum_l (-1)^l w(.., a_l a_{l+1}, ..)``."""
    if alg.skew or set(alg.arities) - {2}:
        raise MisuseError("Hochschild differential needs an ordered family with m_2 only")
    if any(alg.basis.vdegs()):
        raise MisuseError("Hochschild differential is implemented for ungraded algebras")
    if not check_ga_infinity(alg).passed:
        raise MisuseError("m_2 is not associative")
    dim = alg.basis.dim
    if omega.module_dim != dim:
        raise ValueError("cochain must take values in the algebra")
    n = omega.arity
    vals = {}
    for X in itertools.product(range(dim), repeat=n + 1):
        acc = linalg.zeros(dim)
        for b, x in enumerate(omega.value(X[1:])):
            for c, y in alg.value((X[0], b)).items():
                acc = linalg.vadd(acc, tuple(x * y if i == c else Fraction(0) for i in range(dim)))
        for l in range(n):
            sign = -1 if l % 2 else 1
            for a, c in alg.value((X[l], X[l + 1])).items():
                v = omega.value(X[:l] + (a,) + X[l + 2:])
                acc = linalg.vadd(acc, linalg.vscale(-sign * c, v))
        if any(acc):
            vals[X] = acc
    return Cochain(alg.ring, n + 1, dim, vals, skew=False)


# --- total differential -------------------------------------------------------------------


def differential_arities(fam: BracketFamily, rep: RepresentationFamily | None) -> list[int]:
    ks = set(fam.arities)
    if rep is not None:
        ks |= {a + 1 for a in rep.arities}
    return sorted(ks)


def differential_component(k, omega, rep, fam, max_arity=DEFAULT_MAX_ARITY) -> Cochain:
    if fam.skew:
        return cl_differential_component(k, omega, rep, fam, max_arity=max_arity)
    return ga_differential_component(k, omega, rep, fam, max_arity=max_arity)


def total_differential(omega: Cochain, rep, fam, max_arity: int = DEFAULT_MAX_ARITY) -> dict[int, Cochain]:
    """``S omega`` split by arity: ``{n + k - 1: S_k omega}``."""
    out: dict[int, Cochain] = {}
    for k in differential_arities(fam, rep):
        c = differential_component(k, omega, rep, fam, max_arity)
        n = c.arity
        out[n] = out[n] + c if n in out else c
    return {n: c for n, c in sorted(out.items()) if not c.is_zero()}


def square(omega: Cochain, rep, fam, max_arity: int = DEFAULT_MAX_ARITY) -> dict[int, Cochain]:
    """``S(S omega)`` split by arity (empty dict means zero)."""
    acc: dict[int, Cochain] = {}
    for c in total_differential(omega, rep, fam, max_arity).values():
        for n, d in total_differential(c, rep, fam, max_arity).items():
            acc[n] = acc[n] + d if n in acc else d
    return {n: c for n, c in acc.items() if not c.is_zero()}


# --- ghost bridge ----------------------------------------------------------------------------


def to_ghost(omega: Cochain) -> GhostCochain:
    ring = omega.ring
    terms = {}
    for t, vec in omega.values.items():
        w = Fraction(1) if ring.free else Fraction(1, multiplicity_factor(t))
        for beta, x in enumerate(vec):
            if x:
                terms[(t, beta)] = w * x
    return GhostCochain(ring, omega.module_dim, terms)


def from_ghost(g: GhostCochain, arity: int, module_degrees: Sequence[int] | None = None) -> Cochain:
    ring = g.ring
    vals: dict[tuple, list] = {}
    for (mono, beta), c in g.terms.items():
        if len(mono) != arity:
            raise ValueError(f"ghost element has a term of length {len(mono)}, expected arity {arity}")
        w = 1 if ring.free else multiplicity_factor(mono)
        vec = vals.setdefault(mono, [Fraction(0)] * g.module_dim)
        vec[beta] += w * c
    return Cochain(ring, arity, g.module_dim, vals, skew=not ring.free, module_degrees=module_degrees)


def restrict(fam: BracketFamily, rep: RepresentationFamily | None, k: int):
    """The pieces of ``(fam, rep)`` that feed ``S_k``: ``l_k`` and ``rho_{k-1}``."""
    f = BracketFamily(fam.ring, {t: o for t, o in fam.entries.items() if len(t) == k}, skew=fam.skew)
    r = None
    if rep is not None:
        r = RepresentationFamily(rep.ring, rep.module_dim,
                                 {t: m for t, m in rep.entries.items() if len(t) == k - 1},
                                 module_degrees=rep.module_degrees, skew=rep.skew)
    return f, r


def ghost_component(k: int, omega: Cochain, rep, fam) -> GhostCochain:
    """``S_k`` computed on the ghost side: the derivation built from ``l_k`` and ``rho_{k-1}``."""
    f, r = restrict(fam, rep, k)
    r = _rep_or_trivial(r, fam.ring, omega.module_dim, fam.skew, omega.module_degrees)
    return OddDerivation(f, r).apply(to_ghost(omega))


@dataclass
class Correspondence:
    k: int
    arity: int
    agree: bool
    ghost: GhostCochain
    tensor: GhostCochain


def correspondence_check(omega: Cochain, k: int, rep, fam, max_arity: int = DEFAULT_MAX_ARITY) -> bool:
    return correspondence_detail(omega, k, rep, fam, max_arity).agree


def correspondence_detail(omega, k, rep, fam, max_arity=DEFAULT_MAX_ARITY) -> Correspondence:
    tensor = to_ghost(differential_component(k, omega, rep, fam, max_arity))
    ghost = ghost_component(k, omega, rep, fam)
    return Correspondence(k, omega.arity, ghost == tensor, ghost, tensor)


# --- cohomology ---------------------------------------------------------------------------------


@dataclass
class CohomologyRow:
    degree: int
    dim_cochains: int
    rank_out: int
    dim_cohomology: int


def _graded_basis(ring: GhostRing, module_degrees: Sequence[int], degree: int, max_arity: int):
    out = []
    lo = min(module_degrees, default=0)
    for length in range(0, max(degree - lo, 0) + 1):
        gens = list(_tuples(ring, length))
        for t in gens:
            for beta, d in enumerate(module_degrees):
                if ring.gdeg(t) + d == degree:
                    if length > max_arity:
                        raise ArityError(f"degree {degree} needs cochains of arity {length} > {max_arity}")
                    out.append((t, beta))
    return out


def differential_matrix(S: OddDerivation, ring: GhostRing, degs: Sequence[int], degree: int,
                        max_arity: int) -> tuple[list, list, list[list[Fraction]]]:
    src = _graded_basis(ring, degs, degree, max_arity)
    dst = _graded_basis(ring, degs, degree + 1, max_arity)
    pos = {key: i for i, key in enumerate(dst)}
    cols = []
    dim = len(degs)
    for t, beta in src:
        g = GhostCochain(ring, dim, {(t, beta): Fraction(1)})
        img = S.apply(g)
        col = [Fraction(0)] * len(dst)
        for key, c in img.terms.items():
            if key not in pos:
                raise ArityError(f"image term {key} falls outside the tracked cochain space")
            col[pos[key]] = c
        cols.append(col)
    rows = [list(r) for r in zip(*cols)] if cols and dst else []
    return src, dst, rows


def cohomology_table(fam: BracketFamily, rep: RepresentationFamily | None, max_degree: int,
                     max_arity: int = DEFAULT_MAX_ARITY, rank=linalg.rank) -> list[CohomologyRow]:
    """Dimensions of ``H^n`` for ``n = 0..max_degree``, graded by total degree.

    Total degree of ``f_beta eta^T`` is ``gdeg(T) + deg(f_beta)``; for
    ungraded data this is the cochain arity.
    """
    rep = _rep_or_trivial(rep, fam.ring, 1, fam.skew)
    S = OddDerivation(fam, rep)
    verdict = is_nilpotent(S)
    if not verdict.nilpotent:
        raise NotNilpotentError("S^2 != 0; cohomology is undefined", verdict.witness)
    ring = fam.ring
    degs = rep.module_degrees
    ranks = []
    dims = []
    prev = None
    for d in range(0, max_degree + 1):
        src, dst, mat = differential_matrix(S, ring, degs, d, max_arity)
        if prev is not None:
            _check_composite(prev, (src, dst, mat), ring)
        prev = (src, dst, mat)
        dims.append(len(src))
        ranks.append(rank(mat) if mat else 0)
    rows = []
    for d in range(max_degree + 1):
        rank_in = ranks[d - 1] if d > 0 else _rank_into_zero(S, ring, degs, max_arity, rank)
        rows.append(CohomologyRow(d, dims[d], ranks[d], dims[d] - ranks[d] - rank_in))
    return rows


def _check_composite(first, second, ring):
    """Refuse unless ``d_{n+1} d_n = 0``; generator nilpotency alone does not imply it for every grading."""
    src, mid, a = first
    _, dst, b = second
    if not a or not b:
        return
    prod = linalg.matmul(linalg.as_matrix(b), linalg.as_matrix(a))
    for i, row in enumerate(prod):
        for j, x in enumerate(row):
            if x:
                t, beta = src[j]
                u, alpha = dst[i]
                names = ring.basis.names
                raise NotNilpotentError(
                    f"S^2 != 0 on cochains: S^2(f{beta}*{_word(names, t)}) has coefficient {x} "
                    f"on f{alpha}*{_word(names, u)}",
                    {"kind": "cochain", "source": (t, beta), "target": (u, alpha), "coefficient": x})


def _word(names, t):
    return "*".join(f"eta^{names[i]}" for i in t) or "1"


def _rank_into_zero(S, ring, degs, max_arity, rank) -> int:
    """Rank of the map from total degree -1 (nonzero only for negative module degrees)."""
    if min(degs, default=0) >= 0:
        return 0
    _, _, mat = differential_matrix(S, ring, degs, -1, max_arity)
    return rank(mat) if mat else 0


def cohomology_dims(fam: BracketFamily, rep: RepresentationFamily | None, max_degree: int,
                    max_arity: int = DEFAULT_MAX_ARITY) -> list[int]:
    return [row.dim_cohomology for row in cohomology_table(fam, rep, max_degree, max_arity)]
