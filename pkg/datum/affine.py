"""
DimDatum - Affine Root Systems

Affine root systems on a generalized torus S with X*(S) = Z^r + Z/m:
axiom validation, the classical multiplicity catalog, delta_R and A_R
through a lifting of a simple system, the averaged character F_{R,W},
the density function in product and character form, and numeric
Weyl-integration checks.
"""

import logging
import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import islice, product
from math import factorial, gcd
from typing import Any, Iterator, Optional

import numpy as np
from sympy import Poly, Symbol, cyclotomic_poly
from sympy.polys.domains import QQ

from .charalg import CharacterElement, norm_polynomial
from .exceptions import AffineError, ContainmentError, RankMismatchError
from .lattice import SignedPermutation, Weight, WeylSubgroup, check_rank, inner
from .rootsys import RootSystem, simple_roots, weyl_group

logger = logging.getLogger(__name__)


# =============================================================================
# Generalized tori and their characters
# =============================================================================


@dataclass(frozen=True)
class GeneralizedTorus:
    """A compact abelian group S with S^0 of rank r and cyclic S/S^0 of order m."""

    rank: int
    order: int = 1

    def __post_init__(self) -> None:
        if self.rank < 0:
            raise ValueError(f"torus rank must be nonnegative, got {self.rank}")
        if self.order < 1:
            raise ValueError(f"component group order must be at least 1, got {self.order}")

    def weight(self, finite: Weight, torsion: int = 0) -> "AffineWeight":
        check_rank(self.rank, finite)
        return AffineWeight(finite=tuple(finite), torsion=torsion % self.order)

    def zero(self) -> "AffineWeight":
        return self.weight((0,) * self.rank)

    def from_key(self, key: tuple[int, ...]) -> "AffineWeight":
        return self.weight(key[:-1], key[-1])

    def add(self, a: "AffineWeight", b: "AffineWeight") -> "AffineWeight":
        return self.weight(tuple(x + y for x, y in zip(a.finite, b.finite)), a.torsion + b.torsion)

    def scale(self, c: int, a: "AffineWeight") -> "AffineWeight":
        return self.weight(tuple(c * x for x in a.finite), c * a.torsion)

    def negate(self, a: "AffineWeight") -> "AffineWeight":
        return self.scale(-1, a)


@dataclass(frozen=True, order=True)
class AffineWeight:
    """A character of S: a finite part on S^0 and a torsion residue mod m."""

    finite: Weight
    torsion: int

    def key(self) -> tuple[int, ...]:
        """Flat tuple used as a CharacterElement weight."""
        return self.finite + (self.torsion,)

    def __str__(self) -> str:
        return f"({','.join(str(a) for a in self.finite)};{self.torsion})"


def _coroot_pairing(lam: Weight, alpha: Weight) -> int:
    """2(lam, alpha)/(alpha, alpha), which must be integral."""
    value = Fraction(2 * inner(lam, alpha), inner(alpha, alpha))
    if value.denominator != 1:
        raise AffineError(f"{alpha} is not in the strong-integrality system of the torus")
    return int(value)


def reflect(torus: GeneralizedTorus, alpha: AffineWeight, lam: AffineWeight) -> AffineWeight:
    """s_alpha(lam) = lam - <lam|S^0, alpha-check> alpha."""
    c = _coroot_pairing(lam.finite, alpha.finite)
    return torus.add(lam, torus.scale(-c, alpha))


# =============================================================================
# Automorphism groups of X*(S)
# =============================================================================


@dataclass(frozen=True)
class AffineElement:
    """The automorphism (f, t) -> (P f, t + shift . f mod m)."""

    linear: SignedPermutation
    shift: tuple[int, ...]
    modulus: int

    @classmethod
    def identity(cls, torus: GeneralizedTorus) -> "AffineElement":
        return cls(SignedPermutation.identity(torus.rank), (0,) * torus.rank, torus.order)

    @classmethod
    def reflection(cls, torus: GeneralizedTorus, alpha: AffineWeight) -> "AffineElement":
        linear = SignedPermutation.reflection(alpha.finite)
        norm = inner(alpha.finite, alpha.finite)
        shift = tuple((-(2 * a // norm) * alpha.torsion) % torus.order for a in alpha.finite)
        return cls(linear, shift, torus.order)

    def act(self, torus: GeneralizedTorus, lam: AffineWeight) -> AffineWeight:
        return torus.weight(self.linear.act(lam.finite), lam.torsion + inner(self.shift, lam.finite))

    def compose(self, other: "AffineElement") -> "AffineElement":
        """self o other."""
        # shift of self o other is other.shift + self.shift o other.linear
        pulled = [0] * len(self.shift)
        for j in range(len(self.shift)):
            i = other.linear.perm[j]
            pulled[j] = self.shift[i] * other.linear.signs[i]
        shift = tuple((a + b) % self.modulus for a, b in zip(other.shift, pulled))
        return AffineElement(self.linear.compose(other.linear), shift, self.modulus)

    def sign(self) -> int:
        return self.linear.determinant()


@dataclass(frozen=True)
class AffineGroup:
    """
    Finite group of automorphisms of X*(S), given by generators.

    ``full`` marks W_{BC_r} x| Hom(Z^r, Z/m), which contains every element
    whose linear part is a signed permutation.
    """

    torus: GeneralizedTorus
    generators: tuple[AffineElement, ...]
    full: bool = False
    label: str = ""

    @classmethod
    def reflection_group(cls, system: "AffineRootSystem") -> "AffineGroup":
        """W_R, generated by s_alpha for alpha in R."""
        gens = [AffineElement.reflection(system.torus, alpha) for alpha in system.sorted_roots]
        return cls(torus=system.torus, generators=tuple(dict.fromkeys(gens)), label="W_R")

    @classmethod
    def full_automorphisms(cls, torus: GeneralizedTorus) -> "AffineGroup":
        gens = [
            AffineElement(g, (0,) * torus.rank, torus.order)
            for g in WeylSubgroup.hyperoctahedral(torus.rank).generators
        ]
        if torus.order > 1:
            for j in range(torus.rank):
                shift = tuple(1 if i == j else 0 for i in range(torus.rank))
                gens.append(AffineElement(SignedPermutation.identity(torus.rank), shift, torus.order))
        return cls(torus=torus, generators=tuple(gens), full=True, label="Aut")

    @classmethod
    def lifted_weyl_group(cls, system: "AffineRootSystem", lifting: "Lifting") -> "AffineGroup":
        """W_{R_{s0}}, generated by reflections in the lifted simple roots."""
        gens = [AffineElement.reflection(system.torus, alpha) for alpha in lifting.simple]
        return cls(torus=system.torus, generators=tuple(gens), label="W_Rs0")

    @cached_property
    def elements(self) -> tuple[AffineElement, ...]:
        identity = AffineElement.identity(self.torus)
        found = {identity: None}
        queue = deque([identity])
        while queue:
            g = queue.popleft()
            for s in self.generators:
                h = s.compose(g)
                if h not in found:
                    found[h] = None
                    queue.append(h)
        return tuple(found)

    @property
    def order(self) -> int:
        if self.full:
            r = self.torus.rank
            return 2**r * factorial(r) * self.torus.order**r
        return len(self.elements)

    def contains(self, g: AffineElement) -> bool:
        if self.full:
            return g.modulus == self.torus.order and g.linear.rank == self.torus.rank
        return g in set(self.elements)

    def orbit(self, lam: AffineWeight) -> list[AffineWeight]:
        seen = {lam}
        queue = deque([lam])
        while queue:
            mu = queue.popleft()
            for g in self.generators:
                nu = g.act(self.torus, mu)
                if nu not in seen:
                    seen.add(nu)
                    queue.append(nu)
        return sorted(seen)


# =============================================================================
# Affine root systems
# =============================================================================


@dataclass(frozen=True)
class AffineRootSystem:
    """A finite set of characters of S satisfying the affine root system axioms."""

    torus: GeneralizedTorus
    roots: frozenset[AffineWeight]
    label: str = ""
    kind: Optional[int] = None
    multiple: int = 1

    @property
    def sorted_roots(self) -> list[AffineWeight]:
        return sorted(self.roots)

    @cached_property
    def restricted(self) -> RootSystem:
        """R' = restrictions of R to S^0."""
        return RootSystem.from_roots(self.torus.rank, {a.finite for a in self.roots}, f"{self.label}'")

    @cached_property
    def fibers(self) -> dict[Weight, tuple[AffineWeight, ...]]:
        out: dict[Weight, list[AffineWeight]] = {}
        for alpha in self.sorted_roots:
            out.setdefault(alpha.finite, []).append(alpha)
        return {k: tuple(v) for k, v in sorted(out.items())}

    def fiber(self, restriction: Weight) -> tuple[AffineWeight, ...]:
        return self.fibers.get(restriction, ())

    def m1(self, restriction: Weight) -> int:
        return len(self.fiber(restriction))

    def m2(self, restriction: Weight) -> int:
        return len(self.fiber(tuple(2 * a for a in restriction)))

    def multiplicity(self, restriction: Weight) -> int:
        """m_{alpha'} = m_{1,alpha'} + 2 m_{2,alpha'}."""
        return self.m1(restriction) + 2 * self.m2(restriction)

    def reduced_restrictions(self) -> list[Weight]:
        """Restrictions alpha' with alpha'/2 not a restriction."""
        restrictions = set(self.fibers)
        return [
            a
            for a in sorted(restrictions)
            if not (all(x % 2 == 0 for x in a) and tuple(x // 2 for x in a) in restrictions)
        ]

    def divisibility_holds(self) -> bool:
        """m_{1,alpha'} divides m for every reduced alpha'."""
        return all(self.torus.order % self.m1(a) == 0 for a in self.reduced_restrictions())


def validate_affine(system: AffineRootSystem) -> tuple[bool, list[str]]:
    """
    Check the five axioms. Never raises.

    Returns (ok, diagnostics); each diagnostic names its axiom, so the
    first entry is the first violated axiom.
    """
    torus = system.torus
    m = torus.order
    roots = system.roots
    problems: list[str] = []

    for alpha in system.sorted_roots:
        if len(alpha.finite) != torus.rank or not 0 <= alpha.torsion < m:
            problems.append(f"axiom (1): {alpha} is not a character of the torus")
            return False, problems
        norm = inner(alpha.finite, alpha.finite)
        if norm == 0 or any((2 * a) % norm for a in alpha.finite):
            problems.append(f"axiom (1): restriction of {alpha} is not in the strong-integrality system")
    if problems:
        return False, problems

    for alpha in system.sorted_roots:
        for beta in system.sorted_roots:
            image = reflect(torus, alpha, beta)
            if image not in roots:
                problems.append(f"axiom (2): s_{alpha}({beta}) = {image} is not a root")
                break

    for alpha in system.sorted_roots:
        if torus.scale(2, alpha) in roots:
            problems.append(f"axiom (3): 2*{alpha} is a root")

    restrictions = set(system.fibers)
    checked: set[Weight] = set()
    for alpha in system.sorted_roots:
        a = alpha.finite
        if a in checked:
            continue
        checked.add(a)
        fiber = {b.torsion for b in system.fiber(a)}
        size = len(fiber)
        double = tuple(2 * x for x in a)
        if double not in restrictions:
            if m % size:
                problems.append(f"axiom (4): fiber over {a} has {size} roots, which does not divide {m}")
                continue
            step = m // size
            expected = {(alpha.torsion + k * step) % m for k in range(size)}
            if fiber != expected:
                problems.append(f"axiom (4): fiber over {a} is not a coset of the order-{size} subgroup")
        else:
            if size % 2 or m % size:
                problems.append(f"axiom (5): fiber over {a} has {size} roots, need an even divisor of {m}")
                continue
            step = m // size
            expected = {(alpha.torsion + k * step) % m for k in range(size)}
            expected_double = {(2 * alpha.torsion + (2 * k + 1) * step) % m for k in range(size // 2)}
            doubled = {b.torsion for b in system.fiber(double)}
            if fiber != expected or doubled != expected_double:
                problems.append(f"axiom (5): fibers over {a} and {double} do not have the odd-shift shape")

    for problem in problems:
        logger.debug(f"validate_affine({system.label}): {problem}")
    return not problems, problems


# =============================================================================
# Catalog
# =============================================================================

# m = 1 pattern of (m_1, m_{alpha'}) per root class
_TABULATED: dict[int, dict[str, tuple[int, int]]] = {
    2: {"short": (2, 4), "middle": (2, 2)},
    3: {"short": (2, 2), "long": (1, 1)},
    4: {"short": (2, 2), "long": (1, 1)},
}

_SELECTORS = {
    "m*Phi0:Phi0": 1,
    "m*A2n:BCn": 2,
    "m*A2n-1:Cn": 3,
    "m*Dn:Bn-1": 4,
    "m*D4:G2": 5,
    "m*E6:F4": 6,
}


def _fibered(
    torus: GeneralizedTorus,
    restricted: RootSystem,
    step_for: dict[int, int],
    doubled_step: Optional[int] = None,
) -> set[AffineWeight]:
    """
    Lift every restriction to the full coset of the subgroup generated by step_for[norm].

    Restrictions of norm 4 that are twice another restriction get the odd
    shifts of ``doubled_step`` instead.
    """
    m = torus.order
    roots: set[AffineWeight] = set()
    finite = restricted.roots
    for a in restricted.sorted_roots:
        half = tuple(x // 2 for x in a)
        if doubled_step is not None and all(x % 2 == 0 for x in a) and half in finite:
            size = m // (2 * doubled_step)
            roots |= {torus.weight(a, (2 * k + 1) * doubled_step) for k in range(size)}
            continue
        step = step_for[inner(a, a)]
        roots |= {torus.weight(a, k * step) for k in range(m // step)}
    return roots


def catalog(
    kind: int,
    m: int,
    n: Optional[int] = None,
    phi0: Optional[str] = None,
    order: Optional[int] = None,
) -> AffineRootSystem:
    """
    Build an irreducible affine root system from the classical list.

    Args:
        kind: 1 (m Phi0, Phi0), 2 (m A_2n, BC_n), 3 (m A_2n-1, C_n), 4 (m D_n, B_n-1)
        m: Number of simple factors permuted by the outer component
        n: Rank parameter for kinds 2-4
        phi0: Root system label for kind 1, e.g. ``A1``
        order: Order of S/S^0; defaults to m for kind 1 and 2m otherwise

    Returns:
        The validated affine root system
    """
    if kind in (5, 6):
        raise AffineError(f"catalog kind {kind} has an exceptional target and is not supported")
    if kind not in (1, 2, 3, 4):
        raise AffineError(f"unknown catalog kind {kind}")
    if m < 1:
        raise AffineError(f"m must be at least 1, got {m}")
    base = m if kind == 1 else 2 * m
    torus_order = base if order is None else order
    if torus_order % base:
        raise AffineError(f"fibers of order {base} do not fit in a component group of order {torus_order}")
    d = torus_order // base

    if kind == 1:
        if not phi0:
            raise AffineError("kind 1 needs a finite root system Phi0")
        restricted = RootSystem.from_label(phi0)
        if not restricted.roots or "BC" in phi0:
            raise AffineError(f"Phi0 must be a nonempty reduced classical system, got {phi0!r}")
        torus = GeneralizedTorus(rank=restricted.rank, order=torus_order)
        roots = {torus.weight(a, k * d) for a in restricted.sorted_roots for k in range(m)}
        label = f"{m}*{phi0}:{phi0}"
    else:
        if n is None:
            raise AffineError(f"kind {kind} needs the rank parameter n")
        if kind == 2:
            if n < 1:
                raise AffineError("m*A2n:BCn needs n >= 1")
            restricted = RootSystem.from_label(f"BC{n}")
            torus = GeneralizedTorus(rank=n, order=torus_order)
            roots = _fibered(torus, restricted, {1: d, 2: d}, doubled_step=d)
            label = f"{m}*A{2 * n}:BC{n}"
        elif kind == 3:
            if n < 2:
                raise AffineError("m*A2n-1:Cn needs n >= 2")
            restricted = RootSystem.from_label(f"C{n}")
            torus = GeneralizedTorus(rank=n, order=torus_order)
            roots = _fibered(torus, restricted, {2: d, 4: 2 * d})
            label = f"{m}*A{2 * n - 1}:C{n}"
        else:
            if n < 4:
                raise AffineError("m*Dn:Bn-1 needs n >= 4")
            restricted = RootSystem.from_label(f"B{n - 1}")
            torus = GeneralizedTorus(rank=n - 1, order=torus_order)
            roots = _fibered(torus, restricted, {1: d, 2: 2 * d})
            label = f"{m}*D{n}:B{n - 1}"

    system = AffineRootSystem(torus=torus, roots=frozenset(roots), label=label, kind=kind, multiple=m)
    ok, problems = validate_affine(system)
    if not ok:
        raise AffineError(f"catalog entry {label} fails validation: {problems[0]}")
    if not system.divisibility_holds():
        raise AffineError(f"catalog entry {label} violates m_1 | m")
    return system


def parse_selector(selector: str) -> AffineRootSystem:
    """Build a catalog entry from e.g. ``m*Phi0:Phi0@m=2,Phi0=A1`` or ``m*A2n:BCn@m=2,n=1``."""
    text = selector.replace(" ", "")
    head, _, params_text = text.partition("@")
    if head not in _SELECTORS:
        raise AffineError(f"unknown catalog selector {head!r}")
    params: dict[str, str] = {}
    for part in filter(None, params_text.split(",")):
        key, sep, value = part.partition("=")
        if not sep or not re.fullmatch(r"[A-Za-z0-9]+", key):
            raise AffineError(f"malformed selector parameter {part!r}")
        params[key] = value
    try:
        m = int(params.get("m", "1"))
        n = int(params["n"]) if "n" in params else None
        order = int(params["order"]) if "order" in params else None
    except ValueError as e:
        raise AffineError(f"non-integer selector parameter in {selector!r}") from e
    return catalog(_SELECTORS[head], m, n=n, phi0=params.get("Phi0"), order=order)


def root_class(system: AffineRootSystem, restriction: Weight) -> str:
    norms = sorted({inner(a, a) for a in system.reduced_restrictions()})
    norm = inner(restriction, restriction)
    if system.kind == 2:
        return "short" if norm == norms[0] else "middle"
    return "short" if norm == norms[0] else "long"


def catalog_discrepancies(system: AffineRootSystem) -> list[dict[str, Any]]:
    """Compare computed (m_1, m_alpha') per root class with the tabulated m = 1 pattern."""
    table = _TABULATED.get(system.kind or 0)
    if table is None:
        return []
    seen: dict[str, tuple[int, int]] = {}
    for a in system.reduced_restrictions():
        seen.setdefault(root_class(system, a), (system.m1(a), system.multiplicity(a)))
    out = []
    for cls, computed in sorted(seen.items()):
        tabulated = table.get(cls)
        if tabulated is not None and tabulated != computed:
            out.append({"class": cls, "tabulated": list(tabulated), "computed": list(computed)})
    if out:
        logger.warning(f"{system.label}: multiplicities differ from the m = 1 table in {len(out)} classes")
    return out


# =============================================================================
# Liftings, delta_R and A_R
# =============================================================================


@dataclass(frozen=True)
class Lifting:
    """Lifts of a simple system of R' and the sub-root system R_{s0} they generate."""

    simple: tuple[AffineWeight, ...]
    lifted: dict[Weight, AffineWeight] = field(hash=False, compare=False)


def _generate(system: AffineRootSystem, simple: tuple[AffineWeight, ...]) -> dict[Weight, AffineWeight]:
    torus = system.torus
    found = set(simple) | {torus.negate(a) for a in simple}
    queue = deque(sorted(found))
    while queue:
        beta = queue.popleft()
        for alpha in simple:
            image = reflect(torus, alpha, beta)
            if image not in found:
                found.add(image)
                queue.append(image)
    lifted: dict[Weight, AffineWeight] = {}
    for beta in sorted(found):
        if beta not in system.roots:
            raise AffineError(f"{beta} generated from the lifting is not a root")
        if beta.finite in lifted:
            raise AffineError(f"two lifted roots restrict to {beta.finite}")
        lifted[beta.finite] = beta
    return lifted


def liftings(system: AffineRootSystem) -> Iterator[Lifting]:
    """Admissible liftings in a fixed order: torsion choices per simple root, lexicographically."""
    simple_restrictions = simple_roots(system.restricted)
    choices = [system.fiber(a) for a in simple_restrictions]
    for simple in product(*choices):
        yield Lifting(simple=tuple(simple), lifted=_generate(system, tuple(simple)))


def restricted_weyl_order(system: AffineRootSystem) -> int:
    return weyl_group(system.restricted).order


def _positive_reduced(system: AffineRootSystem, lifting: Lifting) -> list[Weight]:
    restricted = system.restricted
    positive_reduced = [a for a in system.reduced_restrictions() if a in restricted.positive]
    missing = [a for a in positive_reduced if a not in lifting.lifted]
    if missing:
        raise AffineError(f"lifting does not reach the restrictions {missing}")
    return positive_reduced


def _delta_difference(
    system: AffineRootSystem,
    lifting: Lifting,
    positive_reduced: list[Weight],
    linear: SignedPermutation,
) -> AffineWeight:
    """delta_R - w delta_R for any w with linear part ``linear``."""
    torus = system.torus
    w_inv = linear.inverse()
    diff = torus.zero()
    for a in positive_reduced:
        if w_inv.act(a) not in system.restricted.positive:
            diff = torus.add(diff, torus.scale(system.multiplicity(a), lifting.lifted[a]))
    return diff


def _default_lifting(system: AffineRootSystem) -> Lifting:
    lifting = next(liftings(system), None)
    if lifting is None:
        raise AffineError(f"{system.label} has no admissible lifting")
    return lifting


def delta_and_A(  # noqa: N802
    system: AffineRootSystem,
    lifting: Optional[Lifting] = None,
) -> tuple[AffineWeight, CharacterElement]:
    """
    2*delta_R and A_R = (1/|W_R'|) sum over w in W_{R_s0} of eps(w)[delta_R - w delta_R].

    delta_R - w delta_R is assembled as the sum of m_{beta'} times the lift
    of beta' over positive reduced beta' that w^{-1} makes negative, which
    stays a well-defined character even when delta_R is not.

    2*delta_R is likewise the sum of m_{alpha'} times the lift of alpha'. This
    torsion does not depend on the lifting and matches the fiber product on S';
    summing the roots of R^+ that w sends negative would not (for 2*A1:A1 it
    gives torsion 1 where the fiber product needs 0).
    """
    torus = system.torus
    rank = torus.rank + 1
    if not system.roots:
        return torus.zero(), CharacterElement.unit(rank)
    if lifting is None:
        lifting = _default_lifting(system)
    positive_reduced = _positive_reduced(system, lifting)

    two_delta = torus.zero()
    for a in positive_reduced:
        two_delta = torus.add(two_delta, torus.scale(system.multiplicity(a), lifting.lifted[a]))

    group = AffineGroup.lifted_weyl_group(system, lifting)
    w_order = restricted_weyl_order(system)
    if len(group.elements) != w_order:
        raise AffineError(f"W_Rs0 has {len(group.elements)} elements, W_R' has {w_order}")

    terms: list[tuple[Weight, Fraction]] = []
    for w in group.elements:
        diff = _delta_difference(system, lifting, positive_reduced, w.linear)
        moved = w.linear.act(two_delta.finite)
        if any(2 * x != t - mv for x, t, mv in zip(diff.finite, two_delta.finite, moved)):
            raise ArithmeticError(f"{system.label}: finite part of delta - w delta is inconsistent")
        terms.append((diff.key(), Fraction(w.sign(), w_order)))
    return two_delta, CharacterElement.from_terms(rank, terms)


def full_group_A(system: AffineRootSystem, lifting: Optional[Lifting] = None) -> CharacterElement:  # noqa: N802
    """A_R = (1/|W_R|) sum over w in the whole reflection group W_R of eps(w)[delta_R - w delta_R]."""
    rank = system.torus.rank + 1
    if not system.roots:
        return CharacterElement.unit(rank)
    if lifting is None:
        lifting = _default_lifting(system)
    positive_reduced = _positive_reduced(system, lifting)
    elements = AffineGroup.reflection_group(system).elements
    terms = [
        (_delta_difference(system, lifting, positive_reduced, w.linear).key(), Fraction(w.sign(), len(elements)))
        for w in elements
    ]
    logger.debug(f"{system.label}: |W_R| = {len(elements)}")
    return CharacterElement.from_terms(rank, terms)


def f_polynomial(system: AffineRootSystem) -> Poly:
    """f_R(t) = (1/|W_R|) sum over w in W_R of eps(w) t^{|delta_R - w delta_R|^2}, finite parts only."""
    finite = CharacterElement.from_terms(
        system.torus.rank, ((key[:-1], c) for key, c in full_group_A(system))
    )
    return norm_polynomial(finite)


def lifting_independent(system: AffineRootSystem) -> Optional[bool]:
    """Compare A_R for the first two liftings; None when only one lifting exists."""
    first_two = list(islice(liftings(system), 2))
    if len(first_two) < 2:
        return None
    _, a1 = delta_and_A(system, first_two[0])
    _, a2 = delta_and_A(system, first_two[1])
    return a1 == a2


def act_on_character(torus: GeneralizedTorus, g: AffineElement, u: CharacterElement) -> CharacterElement:
    return CharacterElement(
        u.rank, {g.act(torus, torus.from_key(key)).key(): c for key, c in u}
    )


def averaged_F(system: AffineRootSystem, group: AffineGroup) -> CharacterElement:  # noqa: N802
    """F_{R,W} = (1/|W|) sum over gamma in W of gamma.A_R, via orbit sums."""
    torus = system.torus
    if group.torus != torus:
        raise RankMismatchError("averaging group acts on a different torus")
    for alpha in system.sorted_roots:
        if not group.contains(AffineElement.reflection(torus, alpha)):
            raise ContainmentError(f"averaging group does not contain s_{alpha}")
    _, a_r = delta_and_A(system)
    acc: dict[Weight, Fraction] = {}
    for key, c in a_r:
        points = group.orbit(torus.from_key(key))
        share = c / len(points)
        for mu in points:
            acc[mu.key()] = acc.get(mu.key(), Fraction(0)) + share
    return CharacterElement(torus.rank + 1, acc)


# =============================================================================
# Density function
# =============================================================================


def evaluate(torus: GeneralizedTorus, keys: list[tuple[int, ...]], theta: np.ndarray, component: int = 1) -> np.ndarray:
    """Values of the characters ``keys`` at the points (theta, component), shape (points, characters)."""
    if not keys:
        return np.ones((theta.shape[0], 0), dtype=complex)
    data = np.array(keys, dtype=float).reshape(len(keys), torus.rank + 1)
    phase = theta @ data[:, :-1].T + data[:, -1] * component / torus.order
    return np.exp(2j * np.pi * phase)


def _points(torus: GeneralizedTorus, theta: Any) -> np.ndarray:
    points = np.atleast_2d(np.asarray(theta, dtype=float))
    if points.shape[1] != torus.rank:
        raise RankMismatchError(f"points have {points.shape[1]} coordinates, torus has rank {torus.rank}")
    return points


def _require_generator(torus: GeneralizedTorus, component: int) -> None:
    if gcd(component, torus.order) != 1:
        raise AffineError(f"component {component} does not generate Z/{torus.order}")


def density_product(system: AffineRootSystem, theta: Any, component: int = 1) -> np.ndarray:
    """(1/|W_R'|) product over R of (1 - alpha(s))."""
    torus = system.torus
    _require_generator(torus, component)
    points = _points(torus, theta)
    values = evaluate(torus, [a.key() for a in system.sorted_roots], points, component)
    return np.real(np.prod(1 - values, axis=1)) / restricted_weyl_order(system)


def density_character_element(system: AffineRootSystem) -> CharacterElement:
    """
    Sum over tau in W_{R_s0} of tau.A_R, with no further 1/|W_R'| factor.

    A_R already carries 1/|W_R'|, the same normalization as ``density_product``.
    """
    torus = system.torus
    if not system.roots:
        return CharacterElement.unit(torus.rank + 1)
    lifting = next(liftings(system))
    _, a_r = delta_and_A(system, lifting)
    total = CharacterElement.zero(torus.rank + 1)
    for tau in AffineGroup.lifted_weyl_group(system, lifting).elements:
        total = total + act_on_character(torus, tau, a_r)
    return total


def evaluate_character(torus: GeneralizedTorus, u: CharacterElement, theta: Any, component: int = 1) -> np.ndarray:
    points = _points(torus, theta)
    keys = [key for key, _ in u]
    coeffs = np.array([float(c) for _, c in u], dtype=float)
    values = evaluate(torus, keys, points, component)
    return values @ coeffs if keys else np.zeros(points.shape[0], dtype=complex)


@dataclass(frozen=True)
class DensityValue:
    theta: tuple[float, ...]
    component: int
    product: float
    character: float


def density_at(
    system: AffineRootSystem,
    theta: Any,
    component: int = 1,
    tolerance: float = 1e-10,
) -> DensityValue:
    """
    D(s) at s = (theta, component) in both forms.

    Raises AffineError when the forms disagree beyond ``tolerance`` (relative).
    """
    point = _points(system.torus, theta)
    prod_value = float(density_product(system, point, component)[0])
    char_value = float(np.real(evaluate_character(system.torus, density_character_element(system), point, component)[0]))
    if abs(prod_value - char_value) > tolerance * max(1.0, abs(prod_value)):
        raise AffineError(
            f"{system.label}: density forms disagree at {point[0].tolist()}: {prod_value} vs {char_value}"
        )
    return DensityValue(tuple(point[0].tolist()), component, prod_value, char_value)


def density_samples(
    system: AffineRootSystem,
    rng: np.random.Generator,
    points: int,
    component: int = 1,
) -> list[dict[str, Any]]:
    """Rows {theta, component, product, character} at seeded random points."""
    torus = system.torus
    thetas = rng.random((points, torus.rank))
    prod_values = density_product(system, thetas, component)
    char_values = np.real(evaluate_character(torus, density_character_element(system), thetas, component))
    return [
        {"theta": thetas[i].tolist(), "component": component, "product": float(prod_values[i]), "character": float(char_values[i])}
        for i in range(points)
    ]


def fiber_product_error(
    system: AffineRootSystem,
    rng: np.random.Generator,
    points: int,
    component: int = 1,
) -> float:
    """Max over reduced alpha', alpha in R_{1,alpha'} of |prod(1 - beta(s)) - (1 - alpha(s)^{m_alpha'})|."""
    torus = system.torus
    _require_generator(torus, component)
    thetas = rng.random((points, torus.rank))
    worst = 0.0
    for a in system.reduced_restrictions():
        fiber = [b.key() for b in system.fiber(a)] + [
            b.key() for b in system.fiber(tuple(2 * x for x in a))
        ]
        lhs = np.prod(1 - evaluate(torus, fiber, thetas, component), axis=1)
        power = system.multiplicity(a)
        for alpha in system.fiber(a):
            rhs = 1 - evaluate(torus, [alpha.key()], thetas, component)[:, 0] ** power
            worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return worst


# =============================================================================
# Restriction to S'
# =============================================================================


def restriction_is_zero(torus: GeneralizedTorus, u: CharacterElement) -> bool:
    """
    Exact test of u|_{S'} = 0.

    For each finite part the torsion coefficients form a polynomial in a
    primitive m-th root of unity, which vanishes iff the m-th cyclotomic
    polynomial divides it.
    """
    x = Symbol("x")
    phi = Poly(cyclotomic_poly(torus.order, x), x, domain=QQ)
    grouped: dict[Weight, dict[tuple[int], Any]] = {}
    for key, c in u:
        grouped.setdefault(key[:-1], {})[(key[-1],)] = QQ(c.numerator, c.denominator)
    for coeffs in grouped.values():
        if not Poly.from_dict(coeffs, x, domain=QQ).rem(phi).is_zero:
            return False
    return True


def restriction_roundtrip(
    u: CharacterElement,
    torus: GeneralizedTorus,
    rng: np.random.Generator,
) -> float:
    """
    Recover u from its values on S' by least squares; returns the max coefficient error.

    Needs pairwise distinct finite parts: characters that differ only in
    torsion are proportional on S'.
    """
    support = [key for key, _ in u]
    finite_parts = [key[:-1] for key in support]
    if len(set(finite_parts)) != len(finite_parts):
        raise AffineError("round trip needs distinct finite parts")
    count = len(support) + torus.rank + torus.order + 1
    thetas = rng.random((count, torus.rank))
    basis = evaluate(torus, support, thetas)
    truth = np.array([float(c) for _, c in u], dtype=float)
    samples = basis @ truth
    solved, *_ = np.linalg.lstsq(basis, samples, rcond=None)
    return float(np.max(np.abs(solved - truth))) if support else 0.0


# =============================================================================
# Weyl integration on SU(2)
# =============================================================================


def su2_system() -> AffineRootSystem:
    """The connected A1 system on the U(2) torus."""
    return catalog(1, 1, phi0="A1")


def su2_character(d: int, t: np.ndarray) -> np.ndarray:
    """chi_d at diag(e^{2 pi i t}, e^{-2 pi i t})."""
    k = np.arange(d)
    return np.exp(2j * np.pi * np.outer(t, d - 1 - 2 * k)).sum(axis=1)


def weyl_integral(values: np.ndarray, points: int) -> float:
    """
    Trapezoid rule for the integral of f(t) D(t) over [0, 1).

    ``values`` holds f at t_j = j / points; D is the A1 density at
    (t, -t). The sum is numpy's pairwise summation.
    """
    if points < 1:
        raise ValueError(f"need at least one quadrature point, got {points}")
    t = np.arange(points) / points
    density = density_product(su2_system(), np.stack([t, -t], axis=1))
    return float(np.real(np.sum(values * density)) / points)


def weyl_integration_check(d: int, points: int) -> float:
    """Integral of |chi_d|^2 D over the SU(2) torus; orthonormality makes it 1."""
    if d < 1 or points < 64:
        raise ValueError(f"need d >= 1 and at least 64 points, got d={d}, points={points}")
    t = np.arange(points) / points
    chi = su2_character(d, t)
    return weyl_integral(np.abs(chi) ** 2, points)
