"""The ghost ring ``Q[eta^i]`` with exact rational coefficients.

A monomial is a tuple of generator indices.  In a commutative ring it is
kept sorted (normal form); in the free ring used for non-skew (A-infinity
type) data it is an arbitrary word.  A generator whose square is forced to
vanish by the commutation law never appears twice.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from .graded_core import Convention, GradedBasis

Monomial = tuple[int, ...]
ONE: Monomial = ()

#: Exponent cap for commuting generators in enumeration routines.
DEFAULT_EXPONENT_CAP = 4


class BasisMismatchError(ValueError):
    pass


class GhostRing:
    """Ring context: basis, commutation convention, and free/commutative mode."""

    def __init__(self, basis: GradedBasis, convention: Convention | str = Convention.PRIMARY,
                 free: bool = False, exponent_cap: int = DEFAULT_EXPONENT_CAP):
        self.basis = basis
        self.convention = Convention.parse(convention)
        self.free = free
        self.exponent_cap = exponent_cap
        n = basis.dim
        vd = basis.vdegs()
        if self.convention is Convention.PRIMARY:
            table = [[-(-1) ** (vd[a] * vd[b]) for b in range(n)] for a in range(n)]
        else:
            table = [[(-1) ** ((vd[a] + 1) * (vd[b] + 1)) for b in range(n)] for a in range(n)]
        self._swap = table
        self._sort_cache: dict[tuple, tuple[Monomial, int]] = {}

    def __repr__(self):
        mode = "free" if self.free else self.convention.value
        return f"GhostRing({list(self.basis.names)}, {mode})"

    def __eq__(self, other):
        return (isinstance(other, GhostRing) and self.basis == other.basis
                and self.convention == other.convention and self.free == other.free)

    def __hash__(self):
        return hash((self.basis, self.convention, self.free))

    @property
    def dim(self) -> int:
        return self.basis.dim

    def commutative(self) -> "GhostRing":
        if not self.free:
            return self
        return GhostRing(self.basis, self.convention, free=False, exponent_cap=self.exponent_cap)

    def free_version(self) -> "GhostRing":
        if self.free:
            return self
        return GhostRing(self.basis, self.convention, free=True, exponent_cap=self.exponent_cap)

    # --- signs ---------------------------------------------------------

    def generator_swap_sign(self, a: int, b: int) -> int:
        """``s(a, b)`` with ``eta^a eta^b = s(a, b) eta^b eta^a``."""
        self.basis.check_index(a)
        self.basis.check_index(b)
        return self._swap[a][b]

    def swap(self, a: int, b: int) -> int:
        return self._swap[a][b]

    def squares_vanish(self, a: int) -> bool:
        return self._swap[a][a] == -1

    def chi(self, word: Sequence[int], b: int) -> int:
        """Sign for moving the whole word ``word`` past ``eta^b`` (word on the left)."""
        sign = 1
        for m in word:
            sign *= self._swap[m][b]
        return sign

    def sort_sign(self, word: Sequence[int]) -> tuple[Monomial, int]:
        """Normal form of the product ``eta^{w_1} ... eta^{w_k}`` as (monomial, sign).

        Sign 0 means the product vanishes.  In the free ring words are already
        normal.
        """
        word = tuple(word)
        if self.free:
            return word, 1
        hit = self._sort_cache.get(word)
        if hit is not None:
            return hit
        sign = 1
        n = len(word)
        for i in range(n):
            for j in range(i + 1, n):
                if word[i] > word[j]:
                    sign *= self._swap[word[i]][word[j]]
        mono = tuple(sorted(word))
        for a, b in zip(mono, mono[1:]):
            if a == b and self._swap[a][a] == -1:
                sign = 0
                break
        self._sort_cache[word] = (mono, sign)
        return mono, sign

    def reorder_sign(self, word: Sequence[int]) -> int:
        return self.sort_sign(word)[1]

    # --- degrees -------------------------------------------------------

    def gdeg(self, mono: Sequence[int]) -> int:
        return sum(self.basis.gdeg(i) for i in mono)

    def vdeg(self, mono: Sequence[int]) -> int:
        return sum(self.basis.vdeg(i) for i in mono)

    # --- enumeration ---------------------------------------------------

    def monomials(self, length: int) -> Iterator[Monomial]:
        """Nonzero normal-form monomials with ``length`` factors."""
        if self.free:
            yield from itertools.product(range(self.dim), repeat=length)
            return
        for mono in itertools.combinations_with_replacement(range(self.dim), length):
            ok = True
            for a, grp in itertools.groupby(mono):
                k = len(list(grp))
                if k > 1 and (self.squares_vanish(a) or k > self.exponent_cap):
                    ok = False
                    break
            if ok:
                yield mono

    def monomials_of_gdeg(self, degree: int) -> Iterator[Monomial]:
        for length in range(0, degree + 1):
            for mono in self.monomials(length):
                if self.gdeg(mono) == degree:
                    yield mono

    # --- constructors --------------------------------------------------

    def zero(self) -> "GhostPolynomial":
        return GhostPolynomial(self, {})

    def one(self) -> "GhostPolynomial":
        return GhostPolynomial(self, {ONE: Fraction(1)})

    def gen(self, i: int) -> "GhostPolynomial":
        self.basis.check_index(i)
        return GhostPolynomial(self, {(i,): Fraction(1)})

    def gens(self) -> list["GhostPolynomial"]:
        return [self.gen(i) for i in range(self.dim)]

    def word(self, word: Sequence[int], coeff=1) -> "GhostPolynomial":
        """The product ``coeff * eta^{w_1} ... eta^{w_k}`` in normal form."""
        for i in word:
            self.basis.check_index(i)
        mono, sign = self.sort_sign(word)
        if sign == 0 or coeff == 0:
            return self.zero()
        return GhostPolynomial(self, {mono: Fraction(coeff) * sign})


def monomial_multiply(ring: GhostRing, m1: Monomial, m2: Monomial) -> "GhostPolynomial":
    return ring.word(tuple(m1) + tuple(m2))


def exponents(mono: Monomial) -> list[tuple[int, int]]:
    """Sparse ``(index, exponent)`` form of a sorted monomial."""
    return [(a, len(list(g))) for a, g in itertools.groupby(mono)]


def _same_ring(p, q):
    if p.ring != q.ring:
        raise BasisMismatchError(f"{p.ring!r} vs {q.ring!r}")


class GhostPolynomial:
    """Finite Q-linear combination of normal-form monomials."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: GhostRing, terms: Mapping[Monomial, Fraction] | None = None):
        self.ring = ring
        self.terms: dict[Monomial, Fraction] = {m: Fraction(c) for m, c in (terms or {}).items() if c != 0}

    @classmethod
    def from_words(cls, ring: GhostRing, words: Iterable[tuple[Sequence[int], object]]) -> "GhostPolynomial":
        acc: dict[Monomial, Fraction] = {}
        for word, c in words:
            mono, sign = ring.sort_sign(word)
            if sign and c:
                acc[mono] = acc.get(mono, Fraction(0)) + sign * Fraction(c)
        return cls(ring, acc)

    def copy(self) -> "GhostPolynomial":
        return GhostPolynomial(self.ring, dict(self.terms))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, GhostPolynomial):
            return self.ring == other.ring and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def coefficient(self, mono: Monomial) -> Fraction:
        return self.terms.get(tuple(mono), Fraction(0))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.one() * other
        _same_ring(self, other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return GhostPolynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return GhostPolynomial(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "GhostPolynomial":
        c = Fraction(c)
        if c == 0:
            return self.ring.zero()
        return GhostPolynomial(self.ring, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, GhostPolynomial):
            return NotImplemented
        _same_ring(self, other)
        ring = self.ring
        acc: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono, sign = ring.sort_sign(m1 + m2)
                if sign:
                    acc[mono] = acc.get(mono, Fraction(0)) + sign * c1 * c2
        return GhostPolynomial(ring, acc)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def homogeneous_degree(self) -> int | None:
        degs = {self.ring.gdeg(m) for m in self.terms}
        if len(degs) == 1:
            return degs.pop()
        return 0 if not degs else None

    def items(self):
        return sorted(self.terms.items())

    def format(self) -> str:
        if not self.terms:
            return "0"
        names = self.ring.basis.names
        parts = []
        for mono, c in self.items():
            word = "*".join(f"eta^{names[i]}" for i in mono) or "1"
            parts.append(f"{c}*{word}" if mono else f"{c}")
        return " + ".join(parts)

    def __repr__(self):
        return f"GhostPolynomial({self.format()})"


def poly_add(p: GhostPolynomial, q: GhostPolynomial) -> GhostPolynomial:
    return p + q


def poly_scale(c, p: GhostPolynomial) -> GhostPolynomial:
    return p.scale(c)


def poly_multiply(p: GhostPolynomial, q: GhostPolynomial) -> GhostPolynomial:
    return p * q


Key = tuple[Monomial, int]


class GhostCochain:
    """Element of ``Q[eta] (x) V``: module coordinate ``beta`` times a monomial.

    Stored as ``{(monomial, beta): coefficient}``; the module vector is
    written to the left of the monomial.
    """

    __slots__ = ("ring", "module_dim", "terms")

    def __init__(self, ring: GhostRing, module_dim: int, terms: Mapping[Key, Fraction] | None = None):
        self.ring = ring
        self.module_dim = module_dim
        self.terms: dict[Key, Fraction] = {k: Fraction(c) for k, c in (terms or {}).items() if c != 0}

    @classmethod
    def from_vector(cls, ring: GhostRing, vector: Sequence, poly: GhostPolynomial | None = None) -> "GhostCochain":
        poly = ring.one() if poly is None else poly
        terms = {}
        for beta, x in enumerate(vector):
            if x:
                for mono, c in poly.terms.items():
                    terms[(mono, beta)] = Fraction(x) * c
        return cls(ring, len(vector), terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, GhostCochain):
            return (self.ring == other.ring and self.module_dim == other.module_dim
                    and self.terms == other.terms)
        if other == 0:
            return not self.terms
        return NotImplemented

    def __add__(self, other: "GhostCochain") -> "GhostCochain":
        _same_ring(self, other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return GhostCochain(self.ring, self.module_dim, out)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "GhostCochain":
        c = Fraction(c)
        return GhostCochain(self.ring, self.module_dim, {k: c * v for k, v in self.terms.items()})

    def mul_poly(self, poly: GhostPolynomial) -> "GhostCochain":
        """Right multiplication by a ring element."""
        ring = self.ring
        acc: dict[Key, Fraction] = {}
        for (m1, beta), c1 in self.terms.items():
            for m2, c2 in poly.terms.items():
                mono, sign = ring.sort_sign(m1 + m2)
                if sign:
                    key = (mono, beta)
                    acc[key] = acc.get(key, Fraction(0)) + sign * c1 * c2
        return GhostCochain(ring, self.module_dim, acc)

    def component(self, beta: int) -> GhostPolynomial:
        return GhostPolynomial(self.ring, {m: c for (m, b), c in self.terms.items() if b == beta})

    def items(self):
        return sorted(self.terms.items())

    def format(self, module_names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        names = self.ring.basis.names
        parts = []
        for (mono, beta), c in self.items():
            f = module_names[beta] if module_names else f"f{beta}"
            word = "".join(f"*eta^{names[i]}" for i in mono)
            parts.append(f"{c}*{f}{word}")
        return " + ".join(parts)

    def __repr__(self):
        return f"GhostCochain({self.format()})"
