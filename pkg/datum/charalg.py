"""
DimDatum - Character Algebra

The group algebra Q[Z^n] with exact rational coefficients, the Weyl
alternating sums A_{Phi,lam}, their W-averages F_{Phi,lam,W}, orbit
characters chi*_{lam,W}, Weyl products and exact equality tests.
"""

import logging
from collections.abc import Iterable, Iterator, Mapping
from fractions import Fraction
from typing import Any, Optional, Union

from sympy import Poly, Rational, Symbol

from .exceptions import ContainmentError, RankMismatchError, RootSystemError
from .lattice import SignedPermutation, Weight, WeylSubgroup, average, check_rank, inner, pad, zero
from .rootsys import RootSystem, delta, require_dominant, sgn, weyl_group

logger = logging.getLogger(__name__)

Scalar = Union[int, Fraction]


class CharacterElement:
    """
    Immutable sparse element of Q[Z^rank].

    Terms with zero coefficient are never stored. Iteration and
    serialization follow lexicographic order on the weights.
    """

    __slots__ = ("_rank", "_terms")

    def __init__(self, rank: int, terms: Optional[Mapping[Weight, Scalar]] = None):
        cleaned: dict[Weight, Fraction] = {}
        for weight, coeff in (terms or {}).items():
            check_rank(rank, weight)
            value = Fraction(coeff)
            if value:
                cleaned[tuple(weight)] = value
        self._rank = rank
        self._terms = dict(sorted(cleaned.items()))

    # -------------------------------------------------------------------------
    # Constructors
    # -------------------------------------------------------------------------

    @classmethod
    def zero(cls, rank: int) -> "CharacterElement":
        return cls(rank)

    @classmethod
    def unit(cls, rank: int) -> "CharacterElement":
        return cls(rank, {zero(rank): 1})

    @classmethod
    def monomial(cls, weight: Weight, coeff: Scalar = 1) -> "CharacterElement":
        return cls(len(weight), {weight: coeff})

    @classmethod
    def from_terms(cls, rank: int, pairs: Iterable[tuple[Weight, Scalar]]) -> "CharacterElement":
        """Sum possibly repeated (weight, coeff) pairs."""
        acc: dict[Weight, Fraction] = {}
        for weight, coeff in pairs:
            acc[weight] = acc.get(weight, Fraction(0)) + Fraction(coeff)
        return cls(rank, acc)

    # -------------------------------------------------------------------------
    # Accessors
    # -------------------------------------------------------------------------

    @property
    def rank(self) -> int:
        return self._rank

    def terms(self) -> dict[Weight, Fraction]:
        return dict(self._terms)

    def coefficient(self, weight: Weight) -> Fraction:
        return self._terms.get(weight, Fraction(0))

    def support(self) -> list[Weight]:
        return list(self._terms)

    def coefficient_sum(self) -> Fraction:
        return sum(self._terms.values(), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __iter__(self) -> Iterator[tuple[Weight, Fraction]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    # -------------------------------------------------------------------------
    # Algebra
    # -------------------------------------------------------------------------

    def _same_rank(self, other: "CharacterElement") -> None:
        if other.rank != self.rank:
            raise RankMismatchError(f"characters of rank {self.rank} and {other.rank}")

    def __add__(self, other: "CharacterElement") -> "CharacterElement":
        self._same_rank(other)
        acc = dict(self._terms)
        for weight, coeff in other._terms.items():
            acc[weight] = acc.get(weight, Fraction(0)) + coeff
        return CharacterElement(self.rank, acc)

    def __neg__(self) -> "CharacterElement":
        return CharacterElement(self.rank, {w: -c for w, c in self._terms.items()})

    def __sub__(self, other: "CharacterElement") -> "CharacterElement":
        return self + (-other)

    def scaled(self, c: Scalar) -> "CharacterElement":
        factor = Fraction(c)
        return CharacterElement(self.rank, {w: factor * v for w, v in self._terms.items()})

    def __mul__(self, other: "CharacterElement") -> "CharacterElement":
        """Convolution product [lam][mu] = [lam + mu]."""
        self._same_rank(other)
        acc: dict[Weight, Fraction] = {}
        for w1, c1 in self._terms.items():
            for w2, c2 in other._terms.items():
                key = tuple(a + b for a, b in zip(w1, w2))
                acc[key] = acc.get(key, Fraction(0)) + c1 * c2
        return CharacterElement(self.rank, acc)

    def act(self, w: SignedPermutation) -> "CharacterElement":
        if w.rank != self.rank:
            raise RankMismatchError(f"group element of rank {w.rank} on rank {self.rank}")
        return CharacterElement(self.rank, {w.act(mu): c for mu, c in self._terms.items()})

    def average(self, group: WeylSubgroup) -> "CharacterElement":
        """(1/|W|) sum of gamma.u over gamma in W, via orbit sums."""
        if group.rank != self.rank:
            raise RankMismatchError(f"group of rank {group.rank} on rank {self.rank}")
        acc: dict[Weight, Fraction] = {}
        for mu, coeff in self._terms.items():
            for nu, share in average(group, mu).items():
                acc[nu] = acc.get(nu, Fraction(0)) + coeff * share
        return CharacterElement(self.rank, acc)

    def is_invariant(self, group: WeylSubgroup) -> bool:
        return all(self.act(g) == self for g in group.generators)

    def pad(self, n: int) -> "CharacterElement":
        """The inclusion i_{m,n} into Q[Z^n]."""
        return CharacterElement(n, {pad(mu, n): c for mu, c in self._terms.items()})

    def symmetrize(self, n: int) -> "CharacterElement":
        """phi_{m,n}: pad to rank n, then average over W_{BC_n}."""
        return self.pad(n).average(WeylSubgroup.hyperoctahedral(n))

    def tensor(self, other: "CharacterElement") -> "CharacterElement":
        """The map M: Q[Z^m] (x) Q[Z^n] -> Q[Z^{m+n}] by concatenating weights."""
        acc: dict[Weight, Fraction] = {}
        for w1, c1 in self._terms.items():
            for w2, c2 in other._terms.items():
                acc[w1 + w2] = acc.get(w1 + w2, Fraction(0)) + c1 * c2
        return CharacterElement(self.rank + other.rank, acc)

    # -------------------------------------------------------------------------
    # Comparison and serialization
    # -------------------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CharacterElement):
            return NotImplemented
        return self.rank == other.rank and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.rank, tuple(self._terms.items())))

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        parts = [f"{c}[{','.join(str(a) for a in w)}]" for w, c in self._terms.items()]
        return " + ".join(parts)

    def to_json(self) -> list[dict[str, Any]]:
        return [
            {"weight": list(weight), "coeff": f"{c.numerator}/{c.denominator}"}
            for weight, c in self._terms.items()
        ]

    @classmethod
    def from_json(cls, rank: int, rows: list[dict[str, Any]]) -> "CharacterElement":
        return cls.from_terms(rank, ((tuple(r["weight"]), Fraction(r["coeff"])) for r in rows))


# =============================================================================
# Characters attached to root systems
# =============================================================================


def alternating_sum(phi: RootSystem, lam: Weight) -> CharacterElement:
    """A_{Phi,lam} = sum over w in W_Phi of sgn(w) [lam + delta - w.delta]."""
    check_rank(phi.rank, lam)
    require_dominant(phi, lam)
    two_delta = delta(phi)
    terms: list[tuple[Weight, int]] = []
    for w in weyl_group(phi).elements:
        moved = w.act(two_delta)
        diff = [d - m for d, m in zip(two_delta, moved)]
        # delta - w.delta is a sum of roots, hence integral
        if any(x % 2 for x in diff):
            raise ArithmeticError(f"delta - w.delta is not integral for {phi.label}")
        weight = tuple(a + x // 2 for a, x in zip(lam, diff))
        terms.append((weight, sgn(phi, w)))
    return CharacterElement.from_terms(phi.rank, terms)


def averaged_character(phi: RootSystem, lam: Weight, group: WeylSubgroup) -> CharacterElement:
    """F_{Phi,lam,W} = (1/|W|) sum over gamma in W of gamma(A_{Phi,lam})."""
    if group.rank != phi.rank:
        raise RankMismatchError(f"group of rank {group.rank} for system of rank {phi.rank}")
    for g in weyl_group(phi).generators:
        if not group.contains(g):
            raise ContainmentError(f"averaging group does not contain the Weyl group of {phi.label}")
    return alternating_sum(phi, lam).average(group)


def orbit_character(lam: Weight, group: WeylSubgroup) -> CharacterElement:
    """chi*_{lam,W} = (1/|W|) sum over gamma in W of [gamma.lam]."""
    return CharacterElement.monomial(lam).average(group)


def weyl_product(phi: RootSystem) -> CharacterElement:
    """F_Phi = (1/|W_Phi|) product over all roots alpha of (1 - [alpha])."""
    product = CharacterElement.unit(phi.rank)
    one = CharacterElement.unit(phi.rank)
    for alpha in phi.sorted_roots:
        product = product * (one - CharacterElement.monomial(alpha))
    return product.scaled(Fraction(1, weyl_group(phi).order))


def char_equal(u: CharacterElement, v: CharacterElement) -> bool:
    if u.rank != v.rank:
        raise RankMismatchError(f"cannot compare characters of rank {u.rank} and {v.rank}")
    return u == v


def conjugate_tori_criterion(
    phi1: RootSystem,
    lam1: Weight,
    phi2: RootSystem,
    lam2: Weight,
    group: WeylSubgroup,
) -> bool:
    """F_{Phi1,lam1,W} == F_{Phi2,lam2,W}, the character-side dimension datum test."""
    left = averaged_character(phi1, lam1, group)
    right = averaged_character(phi2, lam2, group)
    equal = char_equal(left, right)
    logger.debug(f"F[{phi1.label},{lam1}] vs F[{phi2.label},{lam2}]: equal={equal}")
    return equal


# =============================================================================
# Norm polynomials
# =============================================================================

T = Symbol("t")


def poly_in_t(coefficients: Mapping[int, Fraction]) -> Poly:
    """The polynomial sum of c t^e over exponent -> coefficient pairs."""
    expr = sum((Rational(c.numerator, c.denominator) * T**e for e, c in coefficients.items()), Rational(0))
    return Poly(expr, T, domain="QQ")


def norm_polynomial(u: CharacterElement) -> Poly:
    """sum of c t^{|mu|^2} over the terms c[mu] of u."""
    acc: dict[int, Fraction] = {}
    for mu, c in u:
        e = inner(mu, mu)
        acc[e] = acc.get(e, Fraction(0)) + c
    return poly_in_t(acc)


def t_polynomial(phi: RootSystem, lam: Weight) -> Poly:
    """sum over w in W_Phi of sgn(w) t^{|lam + delta - w.delta|^2}, a W-invariant of A_{Phi,lam}."""
    return norm_polynomial(alternating_sum(phi, lam))


def t_polynomial_product(phi: RootSystem, lam: Weight) -> Poly:
    """
    t^{|lam|^2} times the product over positive alpha of (1 - t^{(lam + delta, 2 alpha)}).

    Equal to ``t_polynomial`` for reduced systems only; BC_n is rejected.
    """
    check_rank(phi.rank, lam)
    if phi.reduced_positive != phi.sorted_positive:
        raise RootSystemError(f"{phi.label} is not reduced, the product form does not apply")
    require_dominant(phi, lam)
    shifted = tuple(2 * a + d for a, d in zip(lam, delta(phi)))
    result = Poly(T ** inner(lam, lam), T, domain="QQ")
    for alpha in phi.sorted_positive:
        result = result * Poly(1 - T ** inner(shifted, alpha), T, domain="QQ")
    return result
