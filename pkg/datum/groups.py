"""
DimDatum - Compact Groups

Descriptions of the classical compact groups SU(N), U(n), Sp(n), SO(2k),
tori and their products, in coordinates on a maximal torus, together with
integer embeddings of one group's torus lattice into another's.

Root data here is built independently of ``rootsys`` so that the branching
pipeline and the character pipeline only meet in ``lattice``.
"""

import logging
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Literal

from .exceptions import BranchingError, DominanceError
from .lattice import Weight, check_rank, inner

logger = logging.getLogger(__name__)

GroupKind = Literal["SU", "U", "Sp", "SO", "T"]

_FACTOR_PATTERN = re.compile(r"^(SU|Sp|SO|U|T)\(?(\d+)\)?$")


@dataclass(frozen=True)
class GroupFactor:
    """
    One simple or abelian factor.

    ``size`` is N for SU(N) and U(N), n for Sp(n), 2k for SO(2k) and r for T(r).
    """

    kind: GroupKind
    size: int

    def __post_init__(self) -> None:
        if self.size < 1:
            raise ValueError(f"{self.kind}{self.size}: size must be positive")
        if self.kind == "SO" and self.size % 2:
            raise ValueError(f"only even orthogonal groups are supported, got SO{self.size}")

    @property
    def coords(self) -> int:
        """Number of torus coordinates; SU(N) uses the N coordinates of U(N)."""
        return self.size // 2 if self.kind == "SO" else self.size

    @property
    def name(self) -> str:
        return f"{self.kind}{self.size}"

    def positive_roots(self) -> list[Weight]:
        n = self.coords

        def e(*pairs: tuple[int, int]) -> Weight:
            v = [0] * n
            for i, c in pairs:
                v[i] += c
            return tuple(v)

        roots: list[Weight] = []
        if self.kind in ("SU", "U"):
            roots = [e((i, 1), (j, -1)) for i in range(n) for j in range(i + 1, n)]
        elif self.kind in ("Sp", "SO"):
            for i in range(n):
                for j in range(i + 1, n):
                    roots.append(e((i, 1), (j, -1)))
                    roots.append(e((i, 1), (j, 1)))
            if self.kind == "Sp":
                roots.extend(e((i, 2)) for i in range(n))
        return roots


@dataclass(frozen=True)
class GroupDesc:
    """A product of classical factors acting on the concatenated torus coordinates."""

    factors: tuple[GroupFactor, ...]

    @classmethod
    def parse(cls, text: str) -> "GroupDesc":
        """Parse ``SU6``, ``U3``, ``Sp1xSO4`` or ``T1``."""
        parts = [p for p in text.replace(" ", "").split("x") if p]
        if not parts:
            raise ValueError(f"empty group description {text!r}")
        factors = []
        for part in parts:
            match = _FACTOR_PATTERN.match(part)
            if not match:
                raise ValueError(f"cannot parse group factor {part!r} in {text!r}")
            factors.append(GroupFactor(kind=match.group(1), size=int(match.group(2))))  # type: ignore[arg-type]
        return cls(factors=tuple(factors))

    @classmethod
    def single(cls, kind: GroupKind, size: int) -> "GroupDesc":
        return cls(factors=(GroupFactor(kind=kind, size=size),))

    @property
    def name(self) -> str:
        return "x".join(f.name for f in self.factors)

    @property
    def rank(self) -> int:
        """Number of torus coordinates."""
        return sum(f.coords for f in self.factors)

    @property
    def offsets(self) -> list[int]:
        out = []
        cursor = 0
        for f in self.factors:
            out.append(cursor)
            cursor += f.coords
        return out

    @cached_property
    def positive_roots(self) -> tuple[Weight, ...]:
        roots: list[Weight] = []
        for f, offset in zip(self.factors, self.offsets):
            for alpha in f.positive_roots():
                roots.append((0,) * offset + alpha + (0,) * (self.rank - offset - f.coords))
        return tuple(sorted(roots))

    @cached_property
    def simple_roots(self) -> tuple[Weight, ...]:
        positive = self.positive_roots
        sums = {tuple(a + b for a, b in zip(x, y)) for x in positive for y in positive}
        return tuple(alpha for alpha in positive if alpha not in sums)

    @cached_property
    def two_delta(self) -> Weight:
        total = [0] * self.rank
        for alpha in self.positive_roots:
            for i, a in enumerate(alpha):
                total[i] += a
        return tuple(total)

    def canonical(self, hw: Weight) -> Weight:
        """Subtract the last coordinate of every SU block, killing the (1,...,1) ambiguity."""
        check_rank(self.rank, hw)
        out = list(hw)
        for f, offset in zip(self.factors, self.offsets):
            if f.kind == "SU":
                shift = out[offset + f.coords - 1]
                for i in range(offset, offset + f.coords):
                    out[i] -= shift
        return tuple(out)

    def is_dominant(self, hw: Weight) -> bool:
        check_rank(self.rank, hw)
        return all(inner(hw, alpha) >= 0 for alpha in self.positive_roots)

    def require_dominant(self, hw: Weight) -> None:
        if not self.is_dominant(hw):
            raise DominanceError(f"{hw} is not a dominant weight of {self.name}")

    def su_block(self) -> int:
        """N for a single SU(N) factor, else raise."""
        if len(self.factors) != 1 or self.factors[0].kind != "SU":
            raise BranchingError(f"{self.name} is not a special unitary group")
        return self.factors[0].size

    def __str__(self) -> str:
        return self.name


# =============================================================================
# Embeddings
# =============================================================================


@dataclass(frozen=True)
class Embedding:
    """
    Restriction of weights from ``source`` to ``target`` along a torus map.

    ``matrix`` has one row per target coordinate and one column per source
    coordinate.
    """

    source: GroupDesc
    target: GroupDesc
    matrix: tuple[tuple[int, ...], ...]
    label: str = ""

    def __post_init__(self) -> None:
        if len(self.matrix) != self.target.rank:
            raise BranchingError(
                f"embedding has {len(self.matrix)} rows, {self.target.name} has rank {self.target.rank}"
            )
        for row in self.matrix:
            if len(row) != self.source.rank:
                raise BranchingError(
                    f"embedding row has {len(row)} entries, {self.source.name} has rank {self.source.rank}"
                )
        target_is_su = any(f.kind == "SU" for f in self.target.factors)
        if not target_is_su and any(f.kind == "SU" for f in self.source.factors):
            ones = (1,) * self.source.rank
            if any(sum(r * o for r, o in zip(row, ones)) for row in self.matrix):
                raise BranchingError(f"{self.label or 'embedding'} does not kill the center of {self.source.name}")

    @property
    def name(self) -> str:
        return self.label or f"{self.source.name}>{self.target.name}"

    def restrict(self, weight: Weight) -> Weight:
        check_rank(self.source.rank, weight)
        return tuple(sum(r * w for r, w in zip(row, weight)) for row in self.matrix)


def theorem_embeddings(n: int) -> tuple[Embedding, Embedding]:
    """
    H1 = U(2n+1) and H2 = Sp(n) x SO(2n+2) inside SU(4n+2).

    Both share the torus diag(a_1..a_{2n+1}, a_1^-1..a_{2n+1}^-1), so a
    weight m of SU(4n+2) restricts to (m_i - m_{2n+1+i})_i in both.
    """
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    size = 2 * n + 1
    g = GroupDesc.single("SU", 2 * size)
    matrix = tuple(
        tuple(1 if j == i else -1 if j == size + i else 0 for j in range(2 * size)) for i in range(size)
    )
    h1 = GroupDesc.single("U", size)
    h2_factors = [GroupFactor(kind="SO", size=2 * n + 2)]
    if n > 0:
        h2_factors.insert(0, GroupFactor(kind="Sp", size=n))
    h2 = GroupDesc(factors=tuple(h2_factors))
    return (
        Embedding(source=g, target=h1, matrix=matrix, label="H1"),
        Embedding(source=g, target=h2, matrix=matrix, label="H2"),
    )


def maximal_torus(group: GroupDesc) -> Embedding:
    """SU(N) -> T(N-1) by m -> (m_i - m_N)."""
    size = group.su_block()
    if size == 1:
        raise BranchingError("SU1 has a trivial torus")
    matrix = tuple(
        tuple(1 if j == i else -1 if j == size - 1 else 0 for j in range(size)) for i in range(size - 1)
    )
    return Embedding(source=group, target=GroupDesc.single("T", size - 1), matrix=matrix, label="torus")


def identity(group: GroupDesc) -> Embedding:
    rank = group.rank
    matrix = tuple(tuple(1 if i == j else 0 for j in range(rank)) for i in range(rank))
    return Embedding(source=group, target=group, matrix=matrix, label="G")
