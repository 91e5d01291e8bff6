"""
DimDatum - Weight Lattices

Integer weight lattices Z^n with the standard inner product, the
hyperoctahedral group W_n = {+-1}^n x| S_n acting by signed permutations,
and the orbit machinery every averaging operation is built on.
"""

import logging
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import factorial

from .exceptions import RankMismatchError, RootSystemError

logger = logging.getLogger(__name__)

Weight = tuple[int, ...]


def check_rank(n: int, *weights: Weight) -> None:
    """Raise if any weight does not have exactly n coordinates."""
    for weight in weights:
        if len(weight) != n:
            raise RankMismatchError(f"weight {weight} has rank {len(weight)}, expected {n}")


def inner(lam: Weight, mu: Weight) -> int:
    """Standard inner product (lam, mu) = sum of coordinate products."""
    check_rank(len(lam), mu)
    return sum(a * b for a, b in zip(lam, mu))


def add(lam: Weight, mu: Weight) -> Weight:
    check_rank(len(lam), mu)
    return tuple(a + b for a, b in zip(lam, mu))


def sub(lam: Weight, mu: Weight) -> Weight:
    check_rank(len(lam), mu)
    return tuple(a - b for a, b in zip(lam, mu))


def scale(c: int, lam: Weight) -> Weight:
    return tuple(c * a for a in lam)


def zero(n: int) -> Weight:
    return (0,) * n


def pad(lam: Weight, n: int) -> Weight:
    """Inclusion Z^m -> Z^n appending zeros."""
    if len(lam) > n:
        raise RankMismatchError(f"cannot pad rank {len(lam)} weight down to rank {n}")
    return lam + (0,) * (n - len(lam))


def parse_weight(text: str) -> Weight:
    """
    Parse the comma-separated weight syntax, e.g. "1,0,-1".

    An empty string is the rank-0 weight.
    """
    stripped = text.strip()
    if not stripped:
        return ()
    try:
        return tuple(int(part) for part in stripped.split(","))
    except ValueError as e:
        raise ValueError(f"malformed weight {text!r}: {e}") from e


def format_weight(lam: Weight) -> str:
    return ",".join(str(a) for a in lam)


# =============================================================================
# Signed permutations
# =============================================================================


@dataclass(frozen=True)
class SignedPermutation:
    """
    Element of the hyperoctahedral group acting on Z^n.

    ``perm[j]`` is the image of coordinate j (0-based), so the action is
    ``(w.lam)[perm[j]] = signs[perm[j]] * lam[j]``.
    """

    signs: tuple[int, ...]
    perm: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.signs) != len(self.perm):
            raise RankMismatchError("signs and perm must have equal length")
        if sorted(self.perm) != list(range(len(self.perm))):
            raise ValueError(f"{self.perm} is not a permutation")
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError(f"signs must be +-1, got {self.signs}")

    @property
    def rank(self) -> int:
        return len(self.perm)

    @classmethod
    def identity(cls, n: int) -> "SignedPermutation":
        return cls(signs=(1,) * n, perm=tuple(range(n)))

    @classmethod
    def from_images(cls, images: list[Weight]) -> "SignedPermutation":
        """
        Build the element sending e_j to images[j].

        Raises RootSystemError unless every image is a signed basis vector
        and the targets are distinct.
        """
        n = len(images)
        signs = [1] * n
        perm = [0] * n
        for j, image in enumerate(images):
            check_rank(n, image)
            support = [i for i, a in enumerate(image) if a != 0]
            if len(support) != 1 or abs(image[support[0]]) != 1:
                raise RootSystemError(f"map sends e_{j + 1} to {image}, not a signed basis vector")
            i = support[0]
            perm[j] = i
            signs[i] = image[i]
        if len(set(perm)) != n:
            raise RootSystemError("images of basis vectors are not distinct")
        return cls(signs=tuple(signs), perm=tuple(perm))

    @classmethod
    def reflection(cls, alpha: Weight) -> "SignedPermutation":
        """The reflection s_alpha(lam) = lam - (2(lam,alpha)/(alpha,alpha)) alpha."""
        norm = inner(alpha, alpha)
        if norm == 0:
            raise RootSystemError("cannot reflect in the zero vector")
        n = len(alpha)
        images: list[Weight] = []
        for j in range(n):
            # 2(e_j, alpha) / (alpha, alpha) must be integral for a lattice map
            numerator = 2 * alpha[j]
            if numerator % norm:
                raise RootSystemError(f"reflection in {alpha} does not preserve Z^{n}")
            c = numerator // norm
            images.append(tuple((1 if i == j else 0) - c * alpha[i] for i in range(n)))
        return cls.from_images(images)

    def act(self, lam: Weight) -> Weight:
        check_rank(self.rank, lam)
        out = [0] * self.rank
        for j, a in enumerate(lam):
            i = self.perm[j]
            out[i] = self.signs[i] * a
        return tuple(out)

    def compose(self, other: "SignedPermutation") -> "SignedPermutation":
        """Return self o other (other acts first)."""
        if other.rank != self.rank:
            raise RankMismatchError(f"cannot compose ranks {self.rank} and {other.rank}")
        inv = self._perm_inverse()
        perm = tuple(self.perm[other.perm[j]] for j in range(self.rank))
        signs = tuple(self.signs[i] * other.signs[inv[i]] for i in range(self.rank))
        return SignedPermutation(signs=signs, perm=perm)

    def __mul__(self, other: "SignedPermutation") -> "SignedPermutation":
        return self.compose(other)

    def inverse(self) -> "SignedPermutation":
        inv = self._perm_inverse()
        signs = tuple(self.signs[self.perm[j]] for j in range(self.rank))
        return SignedPermutation(signs=signs, perm=inv)

    def perm_sign(self) -> int:
        """Sign of the underlying permutation."""
        seen = [False] * self.rank
        sign = 1
        for start in range(self.rank):
            if seen[start]:
                continue
            length = 0
            j = start
            while not seen[j]:
                seen[j] = True
                j = self.perm[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
        return sign

    def determinant(self) -> int:
        sign = self.perm_sign()
        for s in self.signs:
            sign *= s
        return sign

    def _perm_inverse(self) -> tuple[int, ...]:
        inv = [0] * self.rank
        for j, i in enumerate(self.perm):
            inv[i] = j
        return tuple(inv)


# =============================================================================
# Weyl subgroups
# =============================================================================


@dataclass(frozen=True)
class WeylSubgroup:
    """
    Finite subgroup of W_n given by generators.

    ``full`` marks the whole hyperoctahedral group, whose order and
    membership are known without enumerating its elements.
    """

    rank: int
    generators: tuple[SignedPermutation, ...]
    full: bool = False

    def __post_init__(self) -> None:
        for g in self.generators:
            if g.rank != self.rank:
                raise RankMismatchError(f"generator of rank {g.rank} in a rank {self.rank} group")

    @classmethod
    def hyperoctahedral(cls, n: int) -> "WeylSubgroup":
        """W_{BC_n}, generated by s_{e_1} and the adjacent transpositions."""
        gens: list[SignedPermutation] = []
        if n >= 1:
            gens.append(SignedPermutation.reflection(tuple(1 if i == 0 else 0 for i in range(n))))
        for i in range(n - 1):
            alpha = tuple(1 if k == i else -1 if k == i + 1 else 0 for k in range(n))
            gens.append(SignedPermutation.reflection(alpha))
        return cls(rank=n, generators=tuple(gens), full=True)

    @classmethod
    def generated_by(cls, rank: int, generators: list[SignedPermutation]) -> "WeylSubgroup":
        unique = list(dict.fromkeys(generators))
        return cls(rank=rank, generators=tuple(unique))

    @cached_property
    def elements(self) -> tuple[SignedPermutation, ...]:
        """All elements, in breadth-first discovery order from the identity."""
        identity = SignedPermutation.identity(self.rank)
        found = {identity: None}
        queue = deque([identity])
        while queue:
            g = queue.popleft()
            for s in self.generators:
                h = s.compose(g)
                if h not in found:
                    found[h] = None
                    queue.append(h)
        logger.debug(f"Enumerated Weyl subgroup of rank {self.rank}: {len(found)} elements")
        return tuple(found)

    @cached_property
    def _element_set(self) -> frozenset[SignedPermutation]:
        return frozenset(self.elements)

    @property
    def order(self) -> int:
        if self.full:
            return hyperoctahedral_order(self.rank)
        return len(self.elements)

    def contains(self, g: SignedPermutation) -> bool:
        if g.rank != self.rank:
            return False
        if self.full:
            return True
        return g in self._element_set


@lru_cache(maxsize=65536)
def _orbit(group: WeylSubgroup, lam: Weight) -> frozenset[Weight]:
    seen = {lam}
    queue = deque([lam])
    while queue:
        mu = queue.popleft()
        for g in group.generators:
            nu = g.act(mu)
            if nu not in seen:
                seen.add(nu)
                queue.append(nu)
    return frozenset(seen)


def orbit(group: WeylSubgroup, lam: Weight) -> frozenset[Weight]:
    """
    The orbit {w.lam : w in W}.

    Computed by closure under the generators, which is enough because
    every element is a word in them.
    """
    check_rank(group.rank, lam)
    return _orbit(group, lam)


def dominant_representative(group: WeylSubgroup, lam: Weight) -> Weight:
    """
    Canonical orbit key.

    For the full hyperoctahedral group this is the sorted absolute values
    (mu_1 >= ... >= mu_n >= 0). For a proper subgroup the lexicographically
    largest orbit element is used instead.
    """
    check_rank(group.rank, lam)
    if group.full:
        return tuple(sorted((abs(a) for a in lam), reverse=True))
    return max(orbit(group, lam))


def average(group: WeylSubgroup, lam: Weight) -> dict[Weight, Fraction]:
    """
    (1/|W|) sum over gamma in W of [gamma.lam], as a sparse map.

    By orbit-stabilizer every orbit point carries the weight 1/|orbit|.
    """
    points = orbit(group, lam)
    share = Fraction(1, len(points))
    return {mu: share for mu in sorted(points)}


def hyperoctahedral_order(n: int) -> int:
    return 2**n * factorial(n)
