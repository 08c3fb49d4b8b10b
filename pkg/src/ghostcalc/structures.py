"""Bracket families ``l_n`` / ``m_k``, representation families ``rho_k``, and
ghost-free checkers for their structure equations.

Skew families obey the ring reorder law: permuting the inputs of ``l_n``
multiplies the value by the sign the ghost ring assigns to the same
reordering of ghost variables.  Under the primary convention this sign is
``(-1)^sigma e(sigma)`` computed with internal degrees.

Non-skew families (``skew=False``) carry no symmetry and are paired with the
free ghost algebra.

All residuals below are exact.  For a sorted tuple ``T`` they equal the
coefficient of ``eta^T`` in ``S^2`` times ``prod(mult!)`` of ``T``.
"""
from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import linalg
from .ghost_ring import GhostRing
from .graded_core import GradedBasis, all_permutations, permute, unshuffles

Output = dict[int, Fraction]


class SkewnessError(ValueError):
    pass


class DegreeError(ValueError):
    pass


class MisuseError(ValueError):
    pass


def _clean_output(out: Mapping[int, object]) -> Output:
    return {int(j): Fraction(c) for j, c in out.items() if Fraction(c) != 0}


def _fmt_tuple(basis: GradedBasis, t: Sequence[int]) -> str:
    return "(" + ",".join(basis.names[i] for i in t) + ")"


@dataclass
class Violation:
    """A place where a checked identity fails."""

    n: int
    inputs: tuple[int, ...]
    output: object
    value: object
    detail: str = ""

    def describe(self, basis: GradedBasis) -> str:
        out = self.output
        if isinstance(out, int):
            out = basis.names[out]
        text = f"n={self.n} inputs={_fmt_tuple(basis, self.inputs)} output={out} value={_fmt_value(self.value)}"
        return f"{text} {self.detail}".rstrip()

    def to_json(self, basis: GradedBasis) -> dict:
        out = self.output
        if isinstance(out, int):
            out = basis.names[out]
        return {"n": self.n, "inputs": [basis.names[i] for i in self.inputs],
                "output": out, "value": _json_value(self.value), "detail": self.detail}


def _fmt_value(v) -> str:
    if isinstance(v, tuple):
        return "[" + ", ".join(str(x) for x in v) + "]"
    return str(v)


def _json_value(v):
    if isinstance(v, tuple):
        return [str(x) for x in v]
    return str(v)


@dataclass
class CheckReport:
    name: str
    passed: bool
    convention: str
    violations: list[Violation] = field(default_factory=list)
    checked: int = 0
    notes: list[str] = field(default_factory=list)

    def __bool__(self):
        return self.passed

    def summary(self, basis: GradedBasis, limit: int = 5) -> str:
        status = "PASS" if self.passed else "FAIL"
        lines = [f"{self.name}: {status} (convention={self.convention}, {self.checked} equations checked)"]
        lines += [f"  note: {n}" for n in self.notes]
        for v in self.violations[:limit]:
            lines.append("  witness: " + v.describe(basis))
        if len(self.violations) > limit:
            lines.append(f"  ... {len(self.violations) - limit} more")
        return "\n".join(lines)

    def to_json(self, basis: GradedBasis) -> dict:
        return {"check": self.name, "passed": self.passed, "convention": self.convention,
                "checked": self.checked, "notes": list(self.notes),
                "violations": [v.to_json(basis) for v in self.violations]}


class BracketFamily:
    """Finitely many multilinear maps on the span of a graded basis.

    ``brackets`` maps an input index tuple to ``{output index: coefficient}``.
    With ``skew=True`` and ``strict=True`` the entries are canonicalized to
    sorted representatives; conflicting permuted entries raise
    :class:`SkewnessError`.  ``strict=False`` keeps raw entries (for
    :func:`check_skew`).
    """

    def __init__(self, ring: GhostRing, brackets: Mapping[tuple, Mapping[int, object]] | None = None,
                 skew: bool = True, strict: bool = True, check_degrees: bool = True):
        self.skew = skew
        self.ring = ring.commutative() if skew else ring.free_version()
        self.strict = strict
        raw: dict[tuple[int, ...], Output] = {}
        for t, out in (brackets or {}).items():
            t = tuple(int(i) for i in t)
            if not t:
                raise ValueError("brackets of arity 0 are not supported")
            for i in t:
                self.basis.check_index(i)
            out = _clean_output(out)
            for j in out:
                self.basis.check_index(j)
            if out:
                raw[t] = out
        if skew and strict:
            self.entries = self._canonicalize(raw)
        else:
            self.entries = raw
        if check_degrees:
            self._check_degrees()

    @property
    def basis(self) -> GradedBasis:
        return self.ring.basis

    @property
    def convention(self):
        return self.ring.convention

    def _canonicalize(self, raw: dict) -> dict:
        canon: dict[tuple[int, ...], Output] = {}
        origin: dict[tuple[int, ...], tuple[int, ...]] = {}
        for t, out in raw.items():
            mono, sign = self.ring.sort_sign(t)
            if sign == 0:
                raise SkewnessError(
                    f"entry on {_fmt_tuple(self.basis, t)} must vanish: repeated generator with vanishing square")
            value = {j: sign * c for j, c in out.items()}
            if mono in canon:
                if canon[mono] != value:
                    raise SkewnessError(
                        f"entries on {_fmt_tuple(self.basis, origin[mono])} and {_fmt_tuple(self.basis, t)} "
                        "violate the exchange law")
                continue
            canon[mono] = value
            origin[mono] = t
        return canon

    def _check_degrees(self):
        b = self.basis
        for t, out in self.entries.items():
            expected = sum(b.vdeg(i) for i in t) + len(t) - 2
            for j in out:
                if b.vdeg(j) != expected:
                    raise DegreeError(
                        f"bracket on {_fmt_tuple(b, t)} -> {b.names[j]}: output vdeg {b.vdeg(j)}, "
                        f"homogeneity requires {expected}")

    @property
    def arities(self) -> list[int]:
        return sorted({len(t) for t in self.entries})

    @property
    def max_arity(self) -> int:
        return max(self.arities, default=0)

    def is_empty(self) -> bool:
        return not self.entries

    def value(self, t: Sequence[int]) -> Output:
        """Output coordinates of the map on the basis tuple ``t``."""
        t = tuple(t)
        if not self.skew or not self.strict:
            if t in self.entries or not self.skew:
                return self.entries.get(t, {})
        mono, sign = self.ring.sort_sign(t)
        if sign == 0:
            return {}
        out = self.entries.get(mono)
        if not out:
            return {}
        if sign == 1:
            return out
        return {j: -c for j, c in out.items()}

    def coeff(self, j: int, t: Sequence[int]) -> Fraction:
        return self.value(t).get(j, Fraction(0))

    def apply(self, vectors: Sequence[Mapping[int, Fraction]]) -> Output:
        """Evaluate on general vectors given as sparse coordinate maps."""
        acc: Output = {}
        for combo in itertools.product(*(list(v.items()) for v in vectors)):
            idx = tuple(i for i, _ in combo)
            scale = math.prod((c for _, c in combo), start=Fraction(1))
            for j, c in self.value(idx).items():
                acc[j] = acc.get(j, Fraction(0)) + scale * c
        return {j: c for j, c in acc.items() if c}

    def relabel(self, perm: Sequence[int]) -> "BracketFamily":
        """Same family on a basis whose generator ``i`` moves to position ``perm[i]``."""
        gens = permute(perm, self.basis.generators)
        ring = GhostRing(GradedBasis(gens), self.convention, free=self.ring.free,
                         exponent_cap=self.ring.exponent_cap)
        new = {}
        for t, out in self.entries.items():
            new[tuple(perm[i] for i in t)] = {perm[j]: c for j, c in out.items()}
        return BracketFamily(ring, new, skew=self.skew, strict=self.strict)

    def with_entry(self, t: Sequence[int], out: Mapping[int, object]) -> "BracketFamily":
        """Copy with the entry on ``t`` replaced (sorted representative when skew)."""
        entries = dict(self.entries)
        t = tuple(t)
        if self.skew and self.strict:
            mono, sign = self.ring.sort_sign(t)
            if sign == 0:
                raise SkewnessError("cannot set an entry that must vanish")
            t, out = mono, {j: sign * Fraction(c) for j, c in out.items()}
        entries[t] = out
        return BracketFamily(self.ring, entries, skew=self.skew, strict=self.strict)

    def items(self):
        return sorted(self.entries.items())

    def __repr__(self):
        kind = "skew" if self.skew else "ordered"
        return f"BracketFamily({kind}, {len(self.entries)} entries, arities={self.arities})"


class RepresentationFamily:
    """Maps ``rho_k`` from basis tuples to square matrices on a graded module.

    ``maps`` sends an index tuple (possibly empty) to a ``module_dim`` square
    matrix.  Homogeneity: ``rho(t)`` maps module degree ``p`` to
    ``p + 1 - gdeg(t)``.
    """

    def __init__(self, ring: GhostRing, module_dim: int, maps: Mapping[tuple, Sequence[Sequence]] | None = None,
                 module_degrees: Sequence[int] | None = None, skew: bool = True, strict: bool = True,
                 check_degrees: bool = True):
        self.skew = skew
        self.ring = ring.commutative() if skew else ring.free_version()
        self.module_dim = int(module_dim)
        if self.module_dim < 0:
            raise ValueError("module_dim must be non-negative")
        degs = tuple(module_degrees) if module_degrees is not None else (0,) * self.module_dim
        if len(degs) != self.module_dim:
            raise ValueError(f"module_degrees has length {len(degs)}, expected {self.module_dim}")
        self.module_degrees = tuple(int(d) for d in degs)
        self.strict = strict
        raw = {}
        for t, mat in (maps or {}).items():
            t = tuple(int(i) for i in t)
            for i in t:
                self.basis.check_index(i)
            m = linalg.as_matrix(mat)
            if len(m) != self.module_dim or any(len(r) != self.module_dim for r in m):
                raise ValueError(f"matrix for {_fmt_tuple(self.basis, t)} is not {self.module_dim}x{self.module_dim}")
            if not linalg.is_zero_matrix(m):
                raw[t] = m
        if skew and strict:
            canon, origin = {}, {}
            for t, m in raw.items():
                mono, sign = self.ring.sort_sign(t)
                if sign == 0:
                    raise SkewnessError(f"rho on {_fmt_tuple(self.basis, t)} must vanish")
                val = m if sign == 1 else linalg.mscale(-1, m)
                if mono in canon and canon[mono] != val:
                    raise SkewnessError(
                        f"rho entries on {_fmt_tuple(self.basis, origin[mono])} and "
                        f"{_fmt_tuple(self.basis, t)} violate the exchange law")
                canon[mono] = val
                origin[mono] = t
            self.entries = canon
        else:
            self.entries = raw
        if check_degrees:
            self._check_degrees()

    @property
    def basis(self) -> GradedBasis:
        return self.ring.basis

    def _check_degrees(self):
        for t, m in self.entries.items():
            shift = 1 - self.ring.gdeg(t)
            for a, row in enumerate(m):
                for b, x in enumerate(row):
                    if x and self.module_degrees[a] != self.module_degrees[b] + shift:
                        raise DegreeError(
                            f"rho{_fmt_tuple(self.basis, t)}[{a}][{b}] breaks homogeneity "
                            f"(module degree {self.module_degrees[b]} -> {self.module_degrees[a]}, "
                            f"required shift {shift})")

    @property
    def arities(self) -> list[int]:
        return sorted({len(t) for t in self.entries})

    @property
    def max_arity(self) -> int:
        return max(self.arities, default=0)

    def matrix(self, t: Sequence[int]):
        """Matrix of ``rho`` on ``t``, or ``None`` when it is zero."""
        t = tuple(t)
        if not self.skew or not self.strict:
            if t in self.entries or not self.skew:
                return self.entries.get(t)
        mono, sign = self.ring.sort_sign(t)
        if sign == 0:
            return None
        m = self.entries.get(mono)
        if m is None or sign == 1:
            return m
        return linalg.mscale(-1, m)

    def act(self, t: Sequence[int], vec: linalg.Vector) -> linalg.Vector:
        m = self.matrix(t)
        if m is None:
            return linalg.zeros(self.module_dim)
        return linalg.matvec(m, vec)

    def parity_sign(self, vec: linalg.Vector) -> linalg.Vector:
        """Apply ``(-1)^deg`` componentwise (sign of S passing a module vector)."""
        return tuple(-x if d % 2 else x for x, d in zip(vec, self.module_degrees))

    @classmethod
    def trivial(cls, ring: GhostRing, module_dim: int = 1, skew: bool = True) -> "RepresentationFamily":
        return cls(ring, module_dim, {}, skew=skew)

    def relabel(self, perm: Sequence[int]) -> "RepresentationFamily":
        gens = permute(perm, self.basis.generators)
        ring = GhostRing(GradedBasis(gens), self.ring.convention, free=self.ring.free)
        maps = {tuple(perm[i] for i in t): m for t, m in self.entries.items()}
        return RepresentationFamily(ring, self.module_dim, maps, self.module_degrees, self.skew, self.strict)

    def items(self):
        return sorted(self.entries.items())

    def __repr__(self):
        return f"RepresentationFamily(dim={self.module_dim}, {len(self.entries)} entries, arities={self.arities})"


# --- constructors ------------------------------------------------------------


def brackets_from_lie(ring: GhostRing, constants: Mapping[tuple[int, int], Mapping[int, object]]) -> BracketFamily:
    """Bracket family with only ``l_2``: ``l_2(v_i, v_j) = sum_k c^k_ij v_k``.

    ``constants`` may list one or both orderings of each pair; both must be
    consistent with skewness.
    """
    full: dict[tuple[int, int], Output] = {}
    for (i, j), out in constants.items():
        out = _clean_output(out)
        if i == j and out:
            raise SkewnessError(f"[{ring.basis.names[i]},{ring.basis.names[i]}] must vanish")
        if out:
            full[(i, j)] = out
    for (i, j), out in full.items():
        other = full.get((j, i))
        if other is not None and other != {k: -c for k, c in out.items()}:
            raise SkewnessError(f"c_({ring.basis.names[i]},{ring.basis.names[j]}) is not skew")
    return BracketFamily(ring, full, skew=True)


# --- exchange law -------------------------------------------------------------


def check_skew(fam: BracketFamily | RepresentationFamily) -> CheckReport:
    """Exchange law on every stored tuple against every permutation (arity <= 4 exhaustive)."""
    ring = fam.ring.commutative()
    violations = []
    checked = 0
    for t, val in sorted(fam.entries.items()):
        if len(t) > 4:
            perms = [tuple(range(len(t)))]
        else:
            perms = list(all_permutations(len(t)))
        for p in perms:
            u = permute(p, t)
            checked += 1
            _, sign = ring.sort_sign(u)
            _, sign_t = ring.sort_sign(t)
            if sign == 0 or sign_t == 0:
                if val:
                    violations.append(Violation(len(t), t, None, "nonzero",
                                                "entry must vanish (repeated generator with zero square)"))
                break
            if u == t or u not in fam.entries:
                continue
            expected = _signed(val, sign * sign_t)
            if fam.entries[u] != expected:
                violations.append(Violation(len(t), t, None, "mismatch",
                                            f"permutation {p} -> {_fmt_tuple(fam.basis, u)}"))
    return CheckReport("skew", not violations, fam.ring.convention.value, violations, checked)


def _signed(val, sign):
    if sign == 1:
        return val
    if isinstance(val, dict):
        return {j: -c for j, c in val.items()}
    return linalg.mscale(-1, val)


# --- CL-infinity structure equations -------------------------------------------


def _total_arities(outer: Iterable[int], inner: Iterable[int]) -> list[int]:
    return sorted({k + m - 1 for k in outer for m in inner})


def _add(acc: dict, key, value):
    if value:
        v = acc.get(key, 0) + value
        if v:
            acc[key] = v
        else:
            acc.pop(key, None)


def cl_residuals(fam: BracketFamily, mode: str = "unshuffle") -> dict[tuple[tuple[int, ...], int], Fraction]:
    """Nonzero values of ``sum l_k(l_m(...), ...)`` on sorted tuples.

    ``mode="unshuffle"``: each term once, indexed by unshuffles of positions.
    ``mode="factorial"``: full sums over the symmetric group with the bracket
    inserted in place and weights ``1/(m! k!)``; must agree exactly.
    """
    if not fam.skew:
        raise MisuseError("check_cl_infinity needs a skew family")
    ring = fam.ring
    arities = fam.arities
    dim = ring.dim
    out: dict[tuple[tuple[int, ...], int], Fraction] = {}
    for n in _total_arities(arities, arities):
        ring_cap = GhostRing(ring.basis, ring.convention, exponent_cap=n)
        for T in ring_cap.monomials(n):
            vals: dict[int, Fraction] = {}
            for m in arities:
                k = n - m + 1
                if k not in arities:
                    continue
                if mode == "unshuffle":
                    _cl_unshuffle_terms(fam, T, m, k, dim, vals)
                elif mode == "factorial":
                    _cl_factorial_terms(fam, T, m, k, vals)
                else:
                    raise ValueError(f"unknown mode {mode!r}")
            for j, v in vals.items():
                if v:
                    out[(T, j)] = v
    return out


def _cl_unshuffle_terms(fam, T, m, k, dim, vals):
    ring = fam.ring
    n = len(T)
    for P, Q in unshuffles(n, m):
        TP = tuple(T[i] for i in P)
        TQ = tuple(T[i] for i in Q)
        sign = ring.reorder_sign(TP + TQ)
        if sign == 0:
            continue
        inner = fam.value(TP)
        for a, ca in inner.items():
            for j, cj in fam.value((a,) + TQ).items():
                _add(vals, j, sign * ca * cj)


def _cl_factorial_terms(fam, T, m, k, vals):
    ring = fam.ring
    n = len(T)
    weight = Fraction(1, math.factorial(m) * math.factorial(k))
    for p in all_permutations(n):
        W = tuple(T[p[i]] for i in range(n))
        sign = ring.reorder_sign(W)
        if sign == 0:
            continue
        for l in range(k):
            prefix, block, suffix = W[:l], W[l:l + m], W[l + m:]
            for a, ca in fam.value(block).items():
                eps = 1
                for x in prefix:
                    eps *= ring.swap(x, a) * ring.chi(block, x)
                for j, cj in fam.value(prefix + (a,) + suffix).items():
                    _add(vals, j, weight * sign * eps * ca * cj)


def check_cl_infinity(fam: BracketFamily, mode: str = "unshuffle") -> CheckReport:
    """CL-infinity structure equations, signs from ring reorder signs."""
    if not fam.skew:
        raise MisuseError("check_cl_infinity needs a skew family (use check_ga_infinity)")
    res = cl_residuals(fam, mode)
    violations = [Violation(len(T), T, j, v) for (T, j), v in sorted(res.items())]
    checked = sum(1 for n in _total_arities(fam.arities, fam.arities)
                  for _ in GhostRing(fam.ring.basis, fam.ring.convention, exponent_cap=n).monomials(n)) * fam.ring.dim
    return CheckReport(f"cl-infinity[{mode}]", not violations, fam.convention.value, violations, checked)


# --- GA-infinity / A-infinity --------------------------------------------------


def ga_residuals(fam: BracketFamily) -> dict[tuple[tuple[int, ...], int], Fraction]:
    """Ordered relations ``sum (-1)^{gdeg A} m_k(A, m_j(J), B)`` on every word."""
    ring = fam.ring
    basis = ring.basis
    arities = fam.arities
    out = {}
    for n in _total_arities(arities, arities):
        for W in itertools.product(range(basis.dim), repeat=n):
            vals = _ga_word(fam, W, arities)
            for j, v in vals.items():
                out[(W, j)] = v
    return out


def _ga_word(fam, W, arities):
    basis = fam.basis
    n = len(W)
    vals: dict[int, Fraction] = {}
    for m in arities:
        k = n - m + 1
        if k not in arities:
            continue
        for l in range(k):
            A, J, B = W[:l], W[l:l + m], W[l + m:]
            sign = -1 if sum(basis.gdeg(x) for x in A) % 2 else 1
            for a, ca in fam.value(J).items():
                for j, cj in fam.value(A + (a,) + B).items():
                    _add(vals, j, sign * ca * cj)
    return vals


def ga_symmetrized_residuals(fam: BracketFamily, route: str = "literal") -> dict:
    """Display form with an extra sum over input orderings, weighted by chi(sigma).

    ``route="literal"`` evaluates the full sum directly from the maps;
    ``route="composed"`` sums signed ordered residuals.  Both must agree.
    """
    ring = fam.ring.commutative()
    arities = fam.arities
    out = {}
    for n in _total_arities(arities, arities):
        for T in ring.monomials(n):
            vals: dict[int, Fraction] = {}
            for p in all_permutations(n):
                W = tuple(T[p[i]] for i in range(n))
                chi = ring.reorder_sign(W)
                if chi == 0:
                    continue
                if route == "composed":
                    for j, v in _ga_word(fam, W, arities).items():
                        _add(vals, j, chi * v)
                    continue
                for m in arities:
                    k = n - m + 1
                    if k not in arities:
                        continue
                    for l in range(k):
                        pre = W[:l]
                        sign = -1 if sum(fam.basis.gdeg(x) for x in pre) % 2 else 1
                        for a, ca in fam.value(W[l:l + m]).items():
                            for j, cj in fam.value(pre + (a,) + W[l + m:]).items():
                                _add(vals, j, chi * sign * ca * cj)
            for j, v in vals.items():
                out[(T, j)] = v
    return out


def check_ga_infinity(fam: BracketFamily, symmetrized: bool = False) -> CheckReport:
    """GA-infinity structure equations.

    Default: the ordered (A-infinity) relations on all ordered tuples; with only
    ``m_2`` this is associativity.  ``symmetrized=True`` checks the weaker
    chi-weighted sum over orderings instead.
    """
    if symmetrized:
        res = ga_symmetrized_residuals(fam)
        name = "ga-infinity[symmetrized]"
    else:
        res = ga_residuals(fam)
        name = "ga-infinity"
    violations = [Violation(len(T), T, j, v) for (T, j), v in sorted(res.items())]
    checked = sum(fam.basis.dim ** n for n in _total_arities(fam.arities, fam.arities)) * fam.basis.dim
    return CheckReport(name, not violations, "free", violations, checked)


# --- representation equations ----------------------------------------------------


def rep_residuals(rep: RepresentationFamily, fam: BracketFamily, mode: str = "unshuffle") -> dict:
    """Nonzero module vectors of the representation equations.

    Keys are ``(tuple, beta)`` with ``beta`` the module basis vector acted on.
    """
    if rep.ring.basis != fam.ring.basis:
        raise ValueError("representation and bracket family live on different bases")
    if rep.skew != fam.skew:
        raise MisuseError("representation and bracket family disagree on skewness")
    rar = rep.arities
    bar = fam.arities
    totals = sorted({p + q for p in rar for q in rar} | {m + q - 1 for m in bar for q in rar if q >= 1})
    ring = rep.ring
    dim = rep.module_dim
    out = {}
    for n in totals:
        if fam.skew:
            words = GhostRing(ring.basis, ring.convention, exponent_cap=max(n, 1)).monomials(n)
        else:
            words = itertools.product(range(ring.dim), repeat=n)
        for T in words:
            for beta in range(dim):
                e = tuple(Fraction(int(i == beta)) for i in range(dim))
                if not fam.skew:
                    v = _rep_word(rep, fam, T, e)
                elif mode == "unshuffle":
                    v = _rep_unshuffle(rep, fam, T, e)
                elif mode == "factorial":
                    v = _rep_factorial(rep, fam, T, e)
                else:
                    raise ValueError(f"unknown mode {mode!r}")
                if not linalg.is_zero_vector(v):
                    out[(T, beta)] = v
    return out


def _rep_unshuffle(rep, fam, T, e):
    ring = rep.ring
    n = len(T)
    acc = linalg.zeros(rep.module_dim)
    rar = set(rep.arities)
    for p in range(n + 1):
        if p not in rar or (n - p) not in rar:
            continue
        for P, Q in unshuffles(n, p):
            TP = tuple(T[i] for i in P)
            TQ = tuple(T[i] for i in Q)
            sign = ring.reorder_sign(TP + TQ)
            if sign:
                v = rep.act(TP, rep.act(TQ, e))
                acc = linalg.vadd(acc, linalg.vscale(sign, v))
    for m in fam.arities:
        q = n - m + 1
        if q < 1 or q not in rar:
            continue
        for P, Q in unshuffles(n, m):
            TP = tuple(T[i] for i in P)
            TQ = tuple(T[i] for i in Q)
            sign = ring.reorder_sign(TP + TQ)
            if not sign:
                continue
            for a, ca in fam.value(TP).items():
                v = rep.parity_sign(rep.act((a,) + TQ, e))
                acc = linalg.vadd(acc, linalg.vscale(-sign * ca, v))
    return acc


def _rep_factorial(rep, fam, T, e):
    ring = rep.ring
    n = len(T)
    acc = linalg.zeros(rep.module_dim)
    rar = set(rep.arities)
    perms = list(all_permutations(n))
    for p in range(n + 1):
        q = n - p
        if p not in rar or q not in rar:
            continue
        w = Fraction(1, math.factorial(p) * math.factorial(q))
        for s in perms:
            W = tuple(T[s[i]] for i in range(n))
            sign = ring.reorder_sign(W)
            if sign:
                v = rep.act(W[:p], rep.act(W[p:], e))
                acc = linalg.vadd(acc, linalg.vscale(w * sign, v))
    for m in fam.arities:
        q = n - m + 1
        if q < 1 or q not in rar:
            continue
        w = Fraction(1, math.factorial(m) * math.factorial(q))
        for s in perms:
            W = tuple(T[s[i]] for i in range(n))
            sign = ring.reorder_sign(W)
            if not sign:
                continue
            for l in range(q):
                prefix, block, suffix = W[:l], W[l:l + m], W[l + m:]
                for a, ca in fam.value(block).items():
                    eps = 1
                    for x in prefix:
                        eps *= ring.swap(x, a) * ring.chi(block, x)
                    v = rep.parity_sign(rep.act(prefix + (a,) + suffix, e))
                    acc = linalg.vadd(acc, linalg.vscale(-w * sign * eps * ca, v))
    return acc


def _rep_word(rep, fam, W, e):
    basis = rep.basis
    n = len(W)
    acc = linalg.zeros(rep.module_dim)
    rar = set(rep.arities)
    for p in range(n + 1):
        if p in rar and (n - p) in rar:
            acc = linalg.vadd(acc, rep.act(W[:p], rep.act(W[p:], e)))
    for m in fam.arities:
        q = n - m + 1
        if q < 1 or q not in rar:
            continue
        for l in range(q):
            A, J, B = W[:l], W[l:l + m], W[l + m:]
            sign = -1 if sum(basis.gdeg(x) for x in A) % 2 else 1
            for a, ca in fam.value(J).items():
                v = rep.parity_sign(rep.act(A + (a,) + B, e))
                acc = linalg.vadd(acc, linalg.vscale(-sign * ca, v))
    return acc


def check_representation(rep: RepresentationFamily, fam: BracketFamily, mode: str = "unshuffle") -> CheckReport:
    """Representation equations of ``rep`` over ``fam`` (CL or GA type by skewness)."""
    notes = []
    base = check_cl_infinity(fam) if fam.skew else check_ga_infinity(fam)
    if not base.passed:
        msg = "bracket family fails its own structure equations"
        warnings.warn(msg, stacklevel=2)
        notes.append(msg)
    res = rep_residuals(rep, fam, mode)
    violations = [Violation(len(T), T, f"f{beta}", v) for (T, beta), v in sorted(res.items())]
    name = f"representation[{mode}]" if fam.skew else "representation[ordered]"
    conv = fam.convention.value if fam.skew else "free"
    return CheckReport(name, not violations, conv, violations, _rep_equation_count(rep, fam), notes)


def _rep_equation_count(rep, fam) -> int:
    rar, bar = rep.arities, fam.arities
    totals = {p + q for p in rar for q in rar} | {m + q - 1 for m in bar for q in rar if q >= 1}
    ring = rep.ring
    count = 0
    for n in totals:
        if fam.skew:
            count += sum(1 for _ in GhostRing(ring.basis, ring.convention, exponent_cap=max(n, 1)).monomials(n))
        else:
            count += ring.dim ** n
    return count * rep.module_dim
