"""Odd derivations on the ghost ring and on ``V (x) R``.

The derivation is fixed by its values on generators,

    S eta^j = - sum_k (1/k!) C^j_{i_1..i_k} eta^{i_1} ... eta^{i_k},

and, when a representation is given, on module vectors,

    S f = sum_k (1/k!) [rho_k(v_{i_1}, ..., v_{i_k}) f] eta^{i_1} ... eta^{i_k},

(sums over all index tuples).  It is extended to products by the recursion
``S(p eta^b) = S(p) eta^b + eps * p S(eta^b)``.  The sign ``eps`` depends on
the Leibniz mode:

``"ring"``   each term ``eta^a -> M`` of ``S eta^a`` passes a prefix generator
             ``x`` with ``s(a, x) chi(M, x)``; the sign compatible with the
             commutation law, so ``S`` is well defined on the ring.
``"left"``   ``eps = (-1)^{gdeg p}``, i.e. ``S(ab) = S(a)b - (-1)^{deg a} a S(b)``
             with ``deg`` the internal degree of a ghost.
``"right"``  ``eps = (-1)^{vdeg p}``, i.e. ``S(ab) = S(a)b + (-1)^{deg a} a S(b)``.

For non-skew families the ring is free and no ``1/k!`` is applied.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from . import linalg
from .ghost_ring import GhostCochain, GhostPolynomial, GhostRing, Monomial
from .graded_core import multiplicity_factor
from .structures import BracketFamily, RepresentationFamily

LEIBNIZ_MODES = ("ring", "left", "right")


class ConfigurationError(ValueError):
    pass


Terms = list[tuple[Monomial, Fraction]]


class OddDerivation:
    """BRST-type derivation built from a bracket family and optional representation."""

    def __init__(self, fam: BracketFamily, rep: RepresentationFamily | None = None,
                 leibniz: str = "ring", summation: str = "sorted"):
        if leibniz not in LEIBNIZ_MODES:
            raise ValueError(f"leibniz must be one of {LEIBNIZ_MODES}")
        if rep is not None:
            if rep.basis != fam.basis:
                raise ValueError("representation lives on a different basis")
            if rep.skew != fam.skew:
                raise ValueError("representation and bracket family disagree on skewness")
        self.fam = fam
        self.rep = rep
        self.ring: GhostRing = fam.ring
        self.leibniz = leibniz
        self.summation = summation
        self.gen_images: list[Terms] = [self._generator_terms(j) for j in range(self.ring.dim)]
        self._mono_cache: dict[Monomial, GhostPolynomial] = {}
        self._gen_polys = [GhostPolynomial(self.ring, dict(t)) for t in self.gen_images]

    @property
    def basis(self):
        return self.ring.basis

    @property
    def convention(self):
        return self.ring.convention

    # --- generator values ----------------------------------------------------

    def _generator_terms(self, j: int) -> Terms:
        ring = self.ring
        acc: dict[Monomial, Fraction] = {}
        if not self.fam.skew:
            for t, out in self.fam.entries.items():
                c = out.get(j)
                if c:
                    acc[t] = acc.get(t, Fraction(0)) - c
        elif self.summation == "sorted":
            for t, out in self.fam.entries.items():
                c = out.get(j)
                if c:
                    acc[t] = acc.get(t, Fraction(0)) - c / multiplicity_factor(t)
        elif self.summation == "all":
            # every index tuple, weighted 1/k!
            import itertools
            for k in self.fam.arities:
                w = Fraction(1, math.factorial(k))
                for t in itertools.product(range(ring.dim), repeat=k):
                    c = self.fam.coeff(j, t)
                    if c:
                        mono, sign = ring.sort_sign(t)
                        if sign:
                            acc[mono] = acc.get(mono, Fraction(0)) - w * sign * c
        else:
            raise ValueError(f"unknown summation {self.summation!r}")
        return [(m, c) for m, c in sorted(acc.items()) if c]

    def apply_to_generator(self, j: int) -> GhostPolynomial:
        self.basis.check_index(j)
        return self._gen_polys[j]

    def apply_to_module_basis(self, beta: int) -> GhostCochain:
        """``S f_beta`` for a module basis vector."""
        rep = self._need_rep()
        dim = rep.module_dim
        e = tuple(Fraction(int(i == beta)) for i in range(dim))
        terms: dict = {}
        for t, m in rep.entries.items():
            v = linalg.matvec(m, e)
            w = Fraction(1) if not rep.skew else Fraction(1, multiplicity_factor(t))
            for alpha, x in enumerate(v):
                if x:
                    key = (t, alpha)
                    terms[key] = terms.get(key, Fraction(0)) + w * x
        return GhostCochain(self.ring, dim, terms)

    def _need_rep(self) -> RepresentationFamily:
        if self.rep is None:
            raise ConfigurationError("a representation is required to act on module coefficients")
        return self.rep

    # --- Leibniz ----------------------------------------------------------------

    def pass_sign(self, a: int, inserted: Monomial, x: int) -> int:
        """Sign for the term ``eta^a -> inserted`` to move past prefix generator ``x``."""
        ring = self.ring
        if self.leibniz == "left" or (self.leibniz == "ring" and ring.free):
            return -1 if ring.basis.gdeg(x) % 2 else 1
        if self.leibniz == "right":
            return -1 if ring.basis.vdeg(x) % 2 else 1
        return ring.swap(a, x) * ring.chi(inserted, x)

    def leibniz_expand(self, mono: Sequence[int]) -> GhostPolynomial:
        """``S`` of a monomial via the recursion ``S(p eta^b) = S(p) eta^b + eps p S(eta^b)``."""
        mono = tuple(mono)
        hit = self._mono_cache.get(mono)
        if hit is not None:
            return hit
        ring = self.ring
        acc: dict[Monomial, Fraction] = {}
        for pos, b in enumerate(mono):
            # multiply the running S(prefix) by eta^b on the right
            shifted: dict[Monomial, Fraction] = {}
            for m, c in acc.items():
                nm, sign = ring.sort_sign(m + (b,))
                if sign:
                    shifted[nm] = shifted.get(nm, Fraction(0)) + sign * c
            acc = shifted
            prefix = mono[:pos]
            for ins, c in self.gen_images[b]:
                eps = 1
                for x in prefix:
                    eps *= self.pass_sign(b, ins, x)
                nm, sign = ring.sort_sign(prefix + ins)
                if sign:
                    acc[nm] = acc.get(nm, Fraction(0)) + eps * sign * c
            acc = {m: c for m, c in acc.items() if c}
        out = GhostPolynomial(ring, acc)
        self._mono_cache[mono] = out
        return out

    def lemma_closed_form(self, mono: Sequence[int]) -> GhostPolynomial:
        """Closed-form sum over positions for the ``left``/``right`` modes (cross-check only)."""
        if self.leibniz not in ("left", "right"):
            raise ValueError("closed form exists for the left and right modes only")
        ring = self.ring
        mono = tuple(mono)
        total = ring.zero()
        for l, b in enumerate(mono):
            pre, post = mono[:l], mono[l + 1:]
            vsum = sum(ring.basis.vdeg(x) for x in pre)
            sign = (-1) ** vsum
            if self.leibniz == "left":
                sign *= (-1) ** l
            total = total + (ring.word(pre) * self._gen_polys[b] * ring.word(post)).scale(sign)
        return total

    # --- application --------------------------------------------------------------

    def apply(self, p: GhostPolynomial | GhostCochain):
        if isinstance(p, GhostPolynomial):
            if p.ring != self.ring:
                raise ValueError("polynomial lives in a different ring")
            total: dict[Monomial, Fraction] = {}
            for mono, c in p.terms.items():
                for m, d in self.leibniz_expand(mono).terms.items():
                    total[m] = total.get(m, Fraction(0)) + c * d
            return GhostPolynomial(self.ring, total)
        if isinstance(p, GhostCochain):
            return self._apply_cochain(p)
        raise TypeError(f"cannot apply derivation to {type(p).__name__}")

    def _apply_cochain(self, g: GhostCochain) -> GhostCochain:
        if g.is_zero():
            return g
        rep = self._need_rep()
        if g.module_dim != rep.module_dim:
            raise ValueError("module dimension mismatch")
        ring = self.ring
        images = [self.apply_to_module_basis(b) for b in range(rep.module_dim)]
        acc: dict = {}
        for (mono, beta), c in g.terms.items():
            # S(f_beta) * eta^mono
            for (m1, alpha), d in images[beta].terms.items():
                nm, sign = ring.sort_sign(m1 + mono)
                if sign:
                    key = (nm, alpha)
                    acc[key] = acc.get(key, Fraction(0)) + sign * c * d
            # (-1)^{|f_beta|} f_beta * S(eta^mono)
            eps = -1 if rep.module_degrees[beta] % 2 else 1
            for m, d in self.leibniz_expand(mono).terms.items():
                key = (m, beta)
                acc[key] = acc.get(key, Fraction(0)) + eps * c * d
        return GhostCochain(ring, rep.module_dim, acc)

    def __call__(self, p):
        return self.apply(p)


@dataclass
class SquareResidual:
    generators: list[GhostPolynomial]
    module: list[GhostCochain] = field(default_factory=list)

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self.generators) and all(g.is_zero() for g in self.module)


def square_residual(S: OddDerivation) -> SquareResidual:
    """``S(S(eta^j))`` for every generator and ``S(S(f))`` for every module basis vector."""
    gens = [S.apply(S.apply_to_generator(j)) for j in range(S.ring.dim)]
    module = []
    if S.rep is not None:
        module = [S.apply(S.apply_to_module_basis(b)) for b in range(S.rep.module_dim)]
    return SquareResidual(gens, module)


@dataclass
class NilpotencyResult:
    nilpotent: bool
    convention: str
    witness: dict | None = None
    residual: SquareResidual | None = None

    def __bool__(self):
        return self.nilpotent

    def describe(self, basis) -> str:
        status = "PASS" if self.nilpotent else "FAIL"
        lines = [f"nilpotent: {status} (convention={self.convention})"]
        if self.witness:
            w = self.witness
            mono = "*".join(f"eta^{basis.names[i]}" for i in w["monomial"]) or "1"
            target = f"eta^{basis.names[w['index']]}" if w["kind"] == "generator" else f"f{w['index']}"
            extra = f" in module component f{w['component']}" if w["kind"] == "module" else ""
            lines.append(f"  witness: S^2({target}) has coefficient {w['coefficient']} on {mono}{extra}")
        return "\n".join(lines)


def is_nilpotent(S: OddDerivation) -> NilpotencyResult:
    res = square_residual(S)
    conv = "free" if S.ring.free else S.convention.value
    for j, p in enumerate(res.generators):
        if not p.is_zero():
            mono, c = p.items()[0]
            return NilpotencyResult(False, conv, {"kind": "generator", "index": j, "monomial": mono,
                                                  "coefficient": c}, res)
    for b, g in enumerate(res.module):
        if not g.is_zero():
            (mono, alpha), c = g.items()[0]
            return NilpotencyResult(False, conv, {"kind": "module", "index": b, "monomial": mono,
                                                  "component": alpha, "coefficient": c}, res)
    return NilpotencyResult(True, conv, None, res)


# --- algebroid mode ----------------------------------------------------------------


class CoefficientAlgebra:
    """Finite-dimensional commutative algebra given by structure constants.

    ``table[(a, b)]`` is the product of basis elements ``a`` and ``b`` as a
    coordinate vector; missing pairs multiply to zero.
    """

    def __init__(self, dim: int, table: Mapping[tuple[int, int], Sequence]):
        self.dim = dim
        self.table = {k: linalg.as_vector(v) for k, v in table.items()}
        for (a, b), v in self.table.items():
            if self.table.get((b, a), linalg.zeros(dim)) != v:
                raise ValueError("coefficient algebra must be commutative")

    def mul(self, u: linalg.Vector, v: linalg.Vector) -> linalg.Vector:
        acc = linalg.zeros(self.dim)
        for a, x in enumerate(u):
            if not x:
                continue
            for b, y in enumerate(v):
                if y and (a, b) in self.table:
                    acc = linalg.vadd(acc, linalg.vscale(x * y, self.table[(a, b)]))
        return acc


class AlgebroidDerivation:
    """Derivation whose structure constants take values in a coefficient algebra.

    ``constants`` maps a sorted index tuple to ``{j: algebra vector}``;
    ``rho`` acts on the algebra (module = algebra).  ``S`` differentiates the
    constants as well: ``S(C eta^I) = S(C) eta^I + C S(eta^I)``.
    """

    def __init__(self, ring: GhostRing, algebra: CoefficientAlgebra,
                 constants: Mapping[tuple, Mapping[int, Sequence]],
                 rho: RepresentationFamily | None = None):
        self.ring = ring.commutative()
        self.algebra = algebra
        self.rho = rho
        if rho is not None and rho.module_dim != algebra.dim:
            raise ValueError("rho must act on the coefficient algebra")
        self.gen_images: list[dict] = []
        for j in range(ring.dim):
            terms: dict = {}
            for t, out in constants.items():
                vec = out.get(j)
                if vec is None:
                    continue
                mono, sign = self.ring.sort_sign(t)
                if not sign:
                    continue
                w = Fraction(-sign, multiplicity_factor(mono))
                for alpha, x in enumerate(linalg.as_vector(vec)):
                    if x:
                        key = (mono, alpha)
                        terms[key] = terms.get(key, Fraction(0)) + w * x
            self.gen_images.append(terms)

    def _zero(self):
        return GhostCochain(self.ring, self.algebra.dim, {})

    def apply_to_generator(self, j: int) -> GhostCochain:
        return GhostCochain(self.ring, self.algebra.dim, self.gen_images[j])

    def apply_to_coefficient(self, vec: Sequence) -> GhostCochain:
        if self.rho is None:
            return self._zero()
        vec = linalg.as_vector(vec)
        acc: dict = {}
        for t, m in self.rho.entries.items():
            w = Fraction(1, multiplicity_factor(t))
            for alpha, x in enumerate(linalg.matvec(m, vec)):
                if x:
                    acc[(t, alpha)] = acc.get((t, alpha), Fraction(0)) + w * x
        return GhostCochain(self.ring, self.algebra.dim, acc)

    def _times_coeff(self, vec: linalg.Vector, g: GhostCochain) -> GhostCochain:
        acc: dict = {}
        for (mono, alpha), c in g.terms.items():
            e = tuple(Fraction(int(i == alpha)) for i in range(self.algebra.dim))
            for beta, x in enumerate(self.algebra.mul(vec, e)):
                if x:
                    acc[(mono, beta)] = acc.get((mono, beta), Fraction(0)) + c * x
        return GhostCochain(self.ring, self.algebra.dim, acc)

    def _expand_monomial(self, mono: Monomial) -> GhostCochain:
        ring = self.ring
        acc: dict = {}
        for pos, b in enumerate(mono):
            pre, post = mono[:pos], mono[pos + 1:]
            for (ins, alpha), c in self.gen_images[b].items():
                eps = 1
                for x in pre:
                    eps *= ring.swap(b, x) * ring.chi(ins, x)
                nm, sign = ring.sort_sign(pre + ins + post)
                if sign:
                    key = (nm, alpha)
                    acc[key] = acc.get(key, Fraction(0)) + eps * sign * c
        return GhostCochain(ring, self.algebra.dim, acc)

    def apply(self, g: GhostCochain) -> GhostCochain:
        total = self._zero()
        dim = self.algebra.dim
        for (mono, alpha), c in g.terms.items():
            e = tuple(Fraction(int(i == alpha)) for i in range(dim))
            part = self.apply_to_coefficient(e).mul_poly(self.ring.word(mono))
            part = part + self._times_coeff(e, self._expand_monomial(mono))
            total = total + part.scale(c)
        return total

    def square_residual(self) -> SquareResidual:
        gens = [self.apply(self.apply_to_generator(j)) for j in range(self.ring.dim)]
        coeffs = []
        for a in range(self.algebra.dim):
            e = tuple(Fraction(int(i == a)) for i in range(self.algebra.dim))
            coeffs.append(self.apply(self.apply_to_coefficient(e)))
        return SquareResidual([], gens + coeffs)

    def is_nilpotent(self) -> bool:
        return self.square_residual().is_zero()
