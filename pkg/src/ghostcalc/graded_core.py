"""Permutations, Koszul signs and the graded (anti)symmetrization operators.

Permutations are given in one-line form as tuples of 0-based images:
``perm[i]`` is the position that element ``i`` is sent to.  Composition
``compose(s, t)`` means "apply ``t`` first, then ``s``".
"""
from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

#: Exhaustive permutation sums refuse beyond this arity.
MAX_ENUM_ARITY = 8


class Convention(str, enum.Enum):
    """Commutation law of the ghost ring.

    ``PRIMARY`` reads ``eta^a eta^b = -(-1)^{deg a deg b} eta^b eta^a`` with
    ``deg`` the internal degree of the generator.  ``STANDARD`` is the usual
    super-commutative law keyed on ghost parity.
    """

    PRIMARY = "primary"
    STANDARD = "standard-koszul"

    @classmethod
    def parse(cls, value: "Convention | str") -> "Convention":
        if isinstance(value, Convention):
            return value
        for member in cls:
            if value == member.value or value == member.name.lower():
                return member
        if value == "standard":
            return cls.STANDARD
        raise ValueError(f"unknown convention {value!r}")


@dataclass(frozen=True)
class Generator:
    name: str
    vdeg: int = 0

    @property
    def gdeg(self) -> int:
        return self.vdeg + 1

    @property
    def parity(self) -> int:
        return self.gdeg % 2


@dataclass(frozen=True)
class GradedBasis:
    """Ordered basis ``v_i`` with internal degrees; ghost degree is ``vdeg + 1``."""

    generators: tuple[Generator, ...] = ()
    _index: Mapping[str, int] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        gens = tuple(g if isinstance(g, Generator) else Generator(*g) for g in self.generators)
        object.__setattr__(self, "generators", gens)
        names = [g.name for g in gens]
        if len(set(names)) != len(names):
            dup = sorted({n for n in names if names.count(n) > 1})
            raise ValueError(f"duplicate generator names: {dup}")
        for g in gens:
            if not isinstance(g.vdeg, int) or g.vdeg < 0:
                raise ValueError(f"generator {g.name!r}: vdeg must be a non-negative integer")
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(names)})

    @classmethod
    def from_spec(cls, spec: Iterable) -> "GradedBasis":
        """Build from names (degree 0) or ``(name, vdeg)`` pairs."""
        gens = []
        for item in spec:
            if isinstance(item, str):
                gens.append(Generator(item, 0))
            else:
                gens.append(Generator(*item))
        return cls(tuple(gens))

    def __len__(self) -> int:
        return len(self.generators)

    @property
    def dim(self) -> int:
        return len(self.generators)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(g.name for g in self.generators)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown generator {name!r}") from None

    def vdeg(self, i: int) -> int:
        return self.generators[i].vdeg

    def gdeg(self, i: int) -> int:
        return self.generators[i].vdeg + 1

    def vdegs(self) -> tuple[int, ...]:
        return tuple(g.vdeg for g in self.generators)

    def gdegs(self) -> tuple[int, ...]:
        return tuple(g.gdeg for g in self.generators)

    def check_index(self, i: int) -> int:
        if not isinstance(i, int) or not 0 <= i < len(self.generators):
            raise IndexError(f"generator index {i!r} out of range for basis of dim {self.dim}")
        return i


def _check_perm(perm: Sequence[int]) -> tuple[int, ...]:
    perm = tuple(perm)
    if sorted(perm) != list(range(len(perm))):
        raise ValueError(f"not a permutation of 0..{len(perm) - 1}: {perm}")
    return perm


def inversions(perm: Sequence[int]) -> list[tuple[int, int]]:
    """Pairs ``i < j`` whose relative order the permutation reverses."""
    perm = _check_perm(perm)
    n = len(perm)
    return [(i, j) for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j]]


def permutation_parity(perm: Sequence[int]) -> int:
    """``(-1)^(number of inversions)``."""
    return -1 if len(inversions(perm)) % 2 else 1


def koszul_sign(perm: Sequence[int], degrees: Sequence[int]) -> int:
    """Sign ``e(perm)`` picked up by graded elements reordered by ``perm``.

    Element ``i`` carries ``degrees[i]``; each crossing pair contributes
    ``(-1)^(degrees[i] * degrees[j])``.
    """
    perm = _check_perm(perm)
    if len(degrees) != len(perm):
        raise ValueError(f"degree list has length {len(degrees)}, permutation has {len(perm)}")
    odd = sum(1 for i, j in inversions(perm) if (degrees[i] * degrees[j]) % 2)
    return -1 if odd % 2 else 1


def compose(s: Sequence[int], t: Sequence[int]) -> tuple[int, ...]:
    """``s o t``: apply ``t`` then ``s``."""
    s, t = _check_perm(s), _check_perm(t)
    if len(s) != len(t):
        raise ValueError("permutations of different size")
    return tuple(s[t[i]] for i in range(len(t)))


def inverse(perm: Sequence[int]) -> tuple[int, ...]:
    perm = _check_perm(perm)
    out = [0] * len(perm)
    for i, p in enumerate(perm):
        out[p] = i
    return tuple(out)


def permute(perm: Sequence[int], items: Sequence) -> tuple:
    """Place ``items[i]`` at position ``perm[i]``."""
    out = [None] * len(items)
    for i, p in enumerate(perm):
        out[p] = items[i]
    return tuple(out)


@dataclass(frozen=True)
class SignedPermutation:
    perm: tuple[int, ...]
    parity: int
    koszul: int

    @classmethod
    def of(cls, perm: Sequence[int], degrees: Sequence[int]) -> "SignedPermutation":
        perm = _check_perm(perm)
        return cls(perm, permutation_parity(perm), koszul_sign(perm, degrees))

    @property
    def skew_sign(self) -> int:
        """``(-1)^sigma e(sigma)``."""
        return self.parity * self.koszul


def all_permutations(n: int) -> Iterable[tuple[int, ...]]:
    if n > MAX_ENUM_ARITY:
        raise ValueError(f"refusing to enumerate S_{n}; limit is {MAX_ENUM_ARITY}")
    return itertools.permutations(range(n))


Coefficients = Callable[[tuple], Fraction] | Mapping[tuple, Fraction]


def _getter(coeffs: Coefficients) -> Callable[[tuple], Fraction]:
    if callable(coeffs):
        return coeffs
    return lambda key: coeffs.get(key, Fraction(0))


def _graded_sum(coeffs: Coefficients, degrees: Sequence[int], skew: bool) -> Callable[[tuple], Fraction]:
    get = _getter(coeffs)
    n = len(degrees)
    perms = list(all_permutations(n))

    def value(indices: tuple) -> Fraction:
        if len(indices) != n:
            raise ValueError(f"expected {n} indices, got {len(indices)}")
        total = Fraction(0)
        for p in perms:
            sign = koszul_sign(p, degrees)
            if skew:
                sign *= permutation_parity(p)
            total += sign * get(permute(p, indices))
        return total

    return value


def antisymmetrize(coeffs: Coefficients, degrees: Sequence[int]) -> Callable[[tuple], Fraction]:
    """``f -> sum_sigma (-1)^sigma e(sigma) f_{sigma(a)}`` as a new coefficient family.

    ``degrees[i]`` is the degree carried by slot ``i``; ``e`` is evaluated
    with those slot degrees.
    """
    return _graded_sum(coeffs, degrees, skew=True)


def symmetrize(coeffs: Coefficients, degrees: Sequence[int]) -> Callable[[tuple], Fraction]:
    """``f -> sum_sigma e(sigma) f_{sigma(a)}``."""
    return _graded_sum(coeffs, degrees, skew=False)


def unshuffles(n: int, p: int) -> Iterable[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Splits of positions ``0..n-1`` into an increasing ``p``-block and its complement."""
    for block in itertools.combinations(range(n), p):
        chosen = set(block)
        yield block, tuple(i for i in range(n) if i not in chosen)


def multiplicity_factor(indices: Sequence[int]) -> int:
    """``prod(mult_i!)`` over repeated entries of ``indices``."""
    out = 1
    for _, group in itertools.groupby(sorted(indices)):
        out *= math.factorial(len(list(group)))
    return out
