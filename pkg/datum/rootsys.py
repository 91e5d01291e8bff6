"""
DimDatum - Root Systems

Classical root systems (A/B/C/D/BC and disjoint unions) embedded in a
weight lattice Z^n, their positive systems, 2*delta, Weyl groups realized
by signed permutations, and validation of the two root-system axioms.
"""

import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Optional

from .exceptions import DominanceError, RankMismatchError, RootSystemError
from .lattice import SignedPermutation, Weight, WeylSubgroup, check_rank, inner, zero

logger = logging.getLogger(__name__)

RootKind = Literal["A", "B", "C", "D", "BC"]

_FACTOR_PATTERN = re.compile(r"^(BC|A|B|C|D)(\d+)(?:@(\d+))?$")


def _first_nonzero_positive(alpha: Weight) -> bool:
    for a in alpha:
        if a:
            return a > 0
    return False


@dataclass(frozen=True)
class RootSystem:
    """A finite root system inside Z^rank with a fixed positive system."""

    rank: int
    roots: frozenset[Weight]
    positive: frozenset[Weight]
    label: str = ""

    @classmethod
    def from_roots(cls, rank: int, roots: set[Weight], label: str = "") -> "RootSystem":
        """Wrap a root set, choosing roots whose first nonzero coordinate is positive."""
        for alpha in roots:
            check_rank(rank, alpha)
        positive = frozenset(a for a in roots if _first_nonzero_positive(a))
        return cls(rank=rank, roots=frozenset(roots), positive=positive, label=label)

    @classmethod
    def empty(cls, rank: int) -> "RootSystem":
        return cls(rank=rank, roots=frozenset(), positive=frozenset(), label="0")

    @classmethod
    def from_label(cls, label: str, rank: Optional[int] = None) -> "RootSystem":
        """Build a system from the CLI grammar, e.g. ``A2``, ``C1+D2`` or ``D2@1``."""
        factors = parse_label(label)
        needed = max((offset + coords for _, coords, offset in factors), default=0)
        ambient = needed if rank is None else rank
        systems = [standard_system(kind, coords, offset, ambient) for kind, coords, offset in factors]
        if not systems:
            return cls.empty(ambient)
        return disjoint_union(*systems)

    @property
    def sorted_roots(self) -> list[Weight]:
        return sorted(self.roots)

    @property
    def sorted_positive(self) -> list[Weight]:
        return sorted(self.positive)

    @property
    def reduced_positive(self) -> list[Weight]:
        """Positive roots alpha with alpha/2 not a root."""
        out = []
        for alpha in self.sorted_positive:
            if all(a % 2 == 0 for a in alpha) and tuple(a // 2 for a in alpha) in self.roots:
                continue
            out.append(alpha)
        return out

    def __len__(self) -> int:
        return len(self.roots)


def parse_label(label: str) -> list[tuple[RootKind, int, int]]:
    """
    Parse a label into (kind, coordinate count, offset) triples.

    ``A2`` is A_2, which occupies three coordinates. Factors without an
    explicit ``@offset`` are placed right after the previous factor.
    """
    text = label.replace(" ", "")
    if text in ("", "0"):
        return []
    factors: list[tuple[RootKind, int, int]] = []
    cursor = 0
    for part in text.split("+"):
        match = _FACTOR_PATTERN.match(part)
        if not match:
            raise RootSystemError(f"cannot parse root system factor {part!r} in {label!r}")
        kind, size_text, offset_text = match.groups()
        size = int(size_text)
        coords = size + 1 if kind == "A" else size
        if coords < 1 or (kind != "A" and size < 1):
            raise RootSystemError(f"factor {part!r} has no coordinates")
        offset = int(offset_text) if offset_text is not None else cursor
        factors.append((kind, coords, offset))  # type: ignore[arg-type]
        cursor = offset + coords
    return factors


def standard_system(kind: RootKind, n: int, coord_offset: int = 0, rank: Optional[int] = None) -> RootSystem:
    """
    Classical realization on coordinates coord_offset .. coord_offset+n-1.

    For kind "A" the n coordinates carry A_{n-1} = {e_i - e_j}.
    """
    if n < 1:
        raise RootSystemError(f"rank must be positive, got {n}")
    ambient = coord_offset + n if rank is None else rank
    if coord_offset < 0 or coord_offset + n > ambient:
        raise RootSystemError(
            f"{kind}{n} at offset {coord_offset} does not fit in Z^{ambient}"
        )

    def e(i: int, c: int = 1) -> list[int]:
        v = [0] * ambient
        v[coord_offset + i] = c
        return v

    roots: set[Weight] = set()
    idx = range(n)
    if kind in ("A", "B", "C", "D", "BC"):
        for i in idx:
            for j in idx:
                if i != j:
                    v = e(i)
                    v[coord_offset + j] = -1
                    roots.add(tuple(v))
    if kind in ("B", "C", "D", "BC"):
        for i in idx:
            for j in idx:
                if i < j:
                    for s in (1, -1):
                        v = e(i, s)
                        v[coord_offset + j] = s
                        roots.add(tuple(v))
    if kind in ("B", "BC"):
        for i in idx:
            roots.add(tuple(e(i)))
            roots.add(tuple(e(i, -1)))
    if kind in ("C", "BC"):
        for i in idx:
            roots.add(tuple(e(i, 2)))
            roots.add(tuple(e(i, -2)))
    if kind not in ("A", "B", "C", "D", "BC"):
        raise RootSystemError(f"unsupported root system kind {kind!r}")

    size = n - 1 if kind == "A" else n
    label = f"{kind}{size}@{coord_offset}"
    return RootSystem.from_roots(ambient, roots, label)


def disjoint_union(*systems: RootSystem) -> RootSystem:
    """Union of root systems sharing an ambient lattice."""
    if not systems:
        raise RootSystemError("disjoint_union needs at least one system")
    rank = systems[0].rank
    roots: set[Weight] = set()
    for phi in systems:
        if phi.rank != rank:
            raise RankMismatchError(f"cannot unite systems of ranks {rank} and {phi.rank}")
        roots |= phi.roots
    label = "+".join(phi.label for phi in systems if phi.roots) or "0"
    return RootSystem.from_roots(rank, roots, label)


def reflect(alpha: Weight, beta: Weight) -> tuple[Fraction, ...]:
    """s_alpha(beta) with exact rational arithmetic."""
    c = Fraction(2 * inner(beta, alpha), inner(alpha, alpha))
    return tuple(b - c * a for a, b in zip(alpha, beta))


def validate(phi: RootSystem, ambient: Optional[int] = None) -> tuple[bool, list[str]]:
    """
    Check reflection closure and strong integrality.

    Returns (ok, diagnostics). Never raises.
    """
    rank = phi.rank if ambient is None else ambient
    problems: list[str] = []
    for alpha in phi.sorted_roots:
        if len(alpha) != rank:
            problems.append(f"root {alpha} does not lie in Z^{rank}")
    if problems:
        return False, problems
    if zero(rank) in phi.roots:
        problems.append("zero vector is listed as a root")
        return False, problems

    for alpha in phi.sorted_roots:
        norm = inner(alpha, alpha)
        for i in range(rank):
            if (2 * alpha[i]) % norm:
                problems.append(f"integrality: 2(e_{i + 1},{alpha})/({alpha},{alpha}) not integral")
        for beta in phi.sorted_roots:
            image = reflect(alpha, beta)
            if any(c.denominator != 1 for c in image) or tuple(int(c) for c in image) not in phi.roots:
                problems.append(f"closure: s_{alpha}({beta}) = {image} is not a root")

    negatives = {tuple(-a for a in alpha) for alpha in phi.positive}
    if phi.positive & negatives or (phi.positive | negatives) != phi.roots:
        problems.append("positive system does not split the roots into +-pairs")

    for problem in problems:
        logger.debug(f"validate({phi.label}): {problem}")
    return not problems, problems


def delta(phi: RootSystem) -> Weight:
    """2*delta, the sum of the positive roots (kept doubled so it stays integral)."""
    total = list(zero(phi.rank))
    for alpha in phi.positive:
        for i, a in enumerate(alpha):
            total[i] += a
    return tuple(total)


def simple_roots(phi: RootSystem) -> list[Weight]:
    """Positive roots that are not a sum of two positive roots."""
    positive = phi.sorted_positive
    sums = {tuple(a + b for a, b in zip(x, y)) for x in positive for y in positive}
    return [alpha for alpha in positive if alpha not in sums]


def weyl_group(phi: RootSystem) -> WeylSubgroup:
    """The group generated by simple reflections, as signed permutations."""
    gens = [SignedPermutation.reflection(alpha) for alpha in simple_roots(phi)]
    return WeylSubgroup.generated_by(phi.rank, gens)


def sgn(phi: RootSystem, w: SignedPermutation) -> int:
    """(-1) to the number of reduced positive roots alpha with w^{-1}(alpha) negative."""
    w_inv = w.inverse()
    flips = sum(1 for alpha in phi.reduced_positive if w_inv.act(alpha) not in phi.positive)
    return -1 if flips % 2 else 1


def is_dominant_integral(phi: RootSystem, lam: Weight) -> bool:
    check_rank(phi.rank, lam)
    for alpha in phi.positive:
        pairing = Fraction(2 * inner(lam, alpha), inner(alpha, alpha))
        if pairing.denominator != 1 or pairing < 0:
            return False
    return True


def require_dominant(phi: RootSystem, lam: Weight) -> None:
    if not is_dominant_integral(phi, lam):
        raise DominanceError(f"{lam} is not dominant and integral for {phi.label}")


# =============================================================================
# Theorem configuration
# =============================================================================


def theorem_systems(n: int) -> tuple[RootSystem, RootSystem]:
    """A_{2n} and C_n + D_{n+1}, both inside Z^{2n+1}."""
    rank = 2 * n + 1
    a_part = standard_system("A", rank, 0, rank)
    d_part = standard_system("D", n + 1, n, rank)
    if n == 0:
        return a_part, disjoint_union(d_part)
    c_part = standard_system("C", n, 0, rank)
    return a_part, disjoint_union(c_part, d_part)


def is_theorem_admissible(lam: Weight) -> bool:
    """Odd length, weakly decreasing, and a_i + a_{2n+2-i} = 0."""
    size = len(lam)
    if size % 2 == 0:
        return False
    if any(lam[i] < lam[i + 1] for i in range(size - 1)):
        return False
    return all(lam[i] + lam[size - 1 - i] == 0 for i in range(size // 2))


def theorem_weight(lam: Weight) -> Weight:
    """lam' = (a_1..a_n ; a_1..a_{n+1}) for the C_n + D_{n+1} side."""
    if not is_theorem_admissible(lam):
        raise DominanceError(
            f"{lam} is not admissible: need 2n+1 decreasing coordinates with a_i + a_(2n+2-i) = 0"
        )
    n = len(lam) // 2
    return lam[:n] + lam[: n + 1]
