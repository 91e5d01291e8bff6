"""
DimDatum - Branching

Full weight systems of irreducible representations (Freudenthal recursion
with a Weyl dimension cross-check), restriction along torus embeddings,
peeling of restricted characters into irreducibles of the subgroup,
tau-dimension data, Casimir eigenvalues and bundle spectra.
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from heapq import heappop, heappush
from typing import Any, Optional, Union

from .cache import WeightCache
from .exceptions import BranchingError
from .groups import Embedding, GroupDesc
from .lattice import Weight, check_rank, inner

logger = logging.getLogger(__name__)

SPECTRUM_SCHEMA_VERSION = 1


@dataclass(frozen=True)
class IrrepLabel:
    """An irreducible representation, named by its highest weight in the group's coordinates."""

    group: GroupDesc
    highest_weight: Weight

    @classmethod
    def of(cls, group: GroupDesc, hw: Weight) -> "IrrepLabel":
        """Validate dominance and canonicalize SU blocks."""
        check_rank(group.rank, hw)
        group.require_dominant(hw)
        return cls(group=group, highest_weight=group.canonical(hw))

    @classmethod
    def trivial(cls, group: GroupDesc) -> "IrrepLabel":
        return cls(group=group, highest_weight=(0,) * group.rank)

    @property
    def name(self) -> str:
        return f"{self.group.name}({','.join(str(a) for a in self.highest_weight)})"

    def __str__(self) -> str:
        return self.name


# =============================================================================
# Weight systems
# =============================================================================


def weyl_dimension(group: GroupDesc, hw: Weight) -> int:
    """Product over positive roots of (hw + delta, alpha) / (delta, alpha)."""
    check_rank(group.rank, hw)
    two_delta = group.two_delta
    shifted = tuple(2 * a + d for a, d in zip(hw, two_delta))
    value = Fraction(1)
    for alpha in group.positive_roots:
        value *= Fraction(inner(shifted, alpha), inner(two_delta, alpha))
    if value.denominator != 1:
        raise ArithmeticError(f"Weyl dimension of {group.name}{hw} is not integral: {value}")
    return int(value)


@lru_cache(maxsize=1024)
def _freudenthal(group: GroupDesc, hw: Weight) -> tuple[tuple[Weight, int], ...]:
    """
    Every weight with its multiplicity, lowering from hw by simple roots.

    Weights are processed in order of (hw - mu, 2*delta), so every mu + k*alpha
    needed on the right-hand side is final before mu is reached.
    """
    positive = group.positive_roots
    simple = group.simple_roots
    two_delta = group.two_delta
    top = tuple(a + d for a, d in zip(hw, two_delta))

    def level(mu: Weight) -> int:
        return inner(tuple(a - b for a, b in zip(hw, mu)), two_delta)

    mult: dict[Weight, int] = {hw: 1}
    heap: list[tuple[int, Weight]] = []
    queued = {hw}

    def lower(mu: Weight) -> None:
        for alpha in simple:
            nu = tuple(a - b for a, b in zip(mu, alpha))
            if nu not in queued:
                queued.add(nu)
                heappush(heap, (level(nu), nu))

    lower(hw)
    while heap:
        depth, mu = heappop(heap)
        numerator = 0
        for alpha in positive:
            step = inner(alpha, two_delta)
            k = 1
            nu = tuple(a + b for a, b in zip(mu, alpha))
            while depth - k * step >= 0:
                m = mult.get(nu, 0)
                if m:
                    numerator += 2 * inner(nu, alpha) * m
                k += 1
                nu = tuple(a + b for a, b in zip(nu, alpha))
        if numerator == 0:
            continue
        denominator = inner(tuple(a - b for a, b in zip(hw, mu)), tuple(t + b for t, b in zip(top, mu)))
        if denominator <= 0 or numerator % denominator:
            raise ArithmeticError(f"Freudenthal step for {group.name}{hw} at {mu}: {numerator}/{denominator}")
        mult[mu] = numerator // denominator
        lower(mu)

    return tuple(sorted(mult.items()))


def weight_multiplicities(
    irrep: IrrepLabel,
    cache: Optional[WeightCache] = None,
) -> dict[Weight, int]:
    """
    The full character of an irreducible on the group's torus.

    Args:
        irrep: Representation to expand
        cache: Optional disk cache consulted before running the recursion

    Returns:
        {weight: multiplicity}, sorted by weight
    """
    group, hw = irrep.group, irrep.highest_weight
    group.require_dominant(hw)
    weights = cache.load(group.name, hw) if cache is not None else None
    if weights is None:
        weights = dict(_freudenthal(group, hw))
        if cache is not None:
            cache.store(group.name, hw, weights)

    dimension = weyl_dimension(group, hw)
    total = sum(weights.values())
    if total != dimension:
        raise ArithmeticError(f"{irrep.name}: weight multiplicities sum to {total}, Weyl dimension is {dimension}")
    return dict(sorted(weights.items()))


# =============================================================================
# Restriction and peeling
# =============================================================================


@dataclass
class Decomposition:
    """Result of peeling rho|_H into irreducibles of H."""

    embedding: str
    source: IrrepLabel
    multiplicities: dict[Weight, int] = field(default_factory=dict)
    source_dimension: int = 0
    peeled_dimension: int = 0

    @property
    def conserved(self) -> bool:
        return self.source_dimension == self.peeled_dimension

    def to_json(self) -> dict[str, Any]:
        return {
            "embedding": self.embedding,
            "rho": self.source.name,
            "dimension": self.source_dimension,
            "components": [[list(hw), m] for hw, m in sorted(self.multiplicities.items())],
        }


def restrict_character(embedding: Embedding, weights: dict[Weight, int]) -> dict[Weight, int]:
    out: dict[Weight, int] = {}
    for mu, m in weights.items():
        nu = embedding.restrict(mu)
        out[nu] = out.get(nu, 0) + m
    return {nu: m for nu, m in sorted(out.items()) if m}


def decompose(
    embedding: Embedding,
    rho: IrrepLabel,
    cache: Optional[WeightCache] = None,
) -> Decomposition:
    """
    Restrict rho to H and peel off irreducibles of H.

    The remaining weight that maximizes (mu, 2*delta_H), ties broken
    lexicographically, is always a highest weight of some constituent.
    """
    if rho.group != embedding.source:
        raise BranchingError(f"{rho.name} is not a representation of {embedding.source.name}")
    h = embedding.target
    residual = restrict_character(embedding, weight_multiplicities(rho, cache))
    result = Decomposition(
        embedding=embedding.name,
        source=rho,
        source_dimension=weyl_dimension(rho.group, rho.highest_weight),
    )

    while residual:
        top = max(residual, key=lambda mu: (inner(mu, h.two_delta), mu))
        c = residual[top]
        if not h.is_dominant(top):
            raise BranchingError(f"peeling {rho.name} along {embedding.name}: {top} is not dominant")
        constituent = weight_multiplicities(IrrepLabel(group=h, highest_weight=top), cache)
        for mu, m in constituent.items():
            left = residual.get(mu, 0) - c * m
            if left < 0:
                raise BranchingError(
                    f"peeling {rho.name} along {embedding.name}: coefficient of {mu} went negative"
                )
            if left:
                residual[mu] = left
            else:
                residual.pop(mu, None)
        key = h.canonical(top)
        result.multiplicities[key] = result.multiplicities.get(key, 0) + c
        result.peeled_dimension += c * weyl_dimension(h, top)

    result.multiplicities = dict(sorted(result.multiplicities.items()))
    if not result.conserved:
        raise BranchingError(
            f"{rho.name} along {embedding.name}: peeled dimension {result.peeled_dimension} "
            f"!= {result.source_dimension}"
        )
    logger.debug(f"{rho.name}|{embedding.name}: {len(result.multiplicities)} constituents")
    return result


def branch_multiplicity(
    embedding: Embedding,
    tau: IrrepLabel,
    rho: IrrepLabel,
    cache: Optional[WeightCache] = None,
) -> int:
    """dim Hom_H(tau, rho|_H)."""
    if tau.group != embedding.target:
        raise BranchingError(f"{tau.name} is not a representation of {embedding.target.name}")
    return decompose(embedding, rho, cache).multiplicities.get(tau.highest_weight, 0)


# =============================================================================
# Casimir eigenvalues and spectra
# =============================================================================


def casimir_eigenvalue(irrep: IrrepLabel) -> Fraction:
    """(lam, lam + 2*delta) in the trace form, SU blocks projected to sum zero."""
    group, hw = irrep.group, irrep.highest_weight
    value = Fraction(inner(hw, group.two_delta))
    for f, offset in zip(group.factors, group.offsets):
        block = hw[offset : offset + f.coords]
        value += sum(a * a for a in block)
        if f.kind == "SU":
            value -= Fraction(sum(block) ** 2, f.coords)
    return value


def _to_cutoff(cutoff: Union[int, Fraction, str]) -> Fraction:
    value = Fraction(cutoff)
    if value <= 0:
        raise ValueError(f"cutoff must be positive, got {cutoff}")
    return value


def enumerate_irreps(group: GroupDesc, cutoff: Union[int, Fraction, str]) -> list[IrrepLabel]:
    """
    Every irreducible of SU(N) with Casimir eigenvalue <= cutoff.

    Breadth-first over sums of fundamental weights; the Casimir grows when
    a dominant weight is added, so pruned branches never come back under the cutoff.
    """
    limit = _to_cutoff(cutoff)
    size = group.su_block()
    fundamentals = [tuple(1 if j < i else 0 for j in range(size)) for i in range(1, size)]
    start = IrrepLabel.trivial(group)
    found = {start.highest_weight: start}
    queue = deque([start])
    while queue:
        irrep = queue.popleft()
        for omega in fundamentals:
            hw = tuple(a + b for a, b in zip(irrep.highest_weight, omega))
            if hw in found:
                continue
            candidate = IrrepLabel.of(group, hw)
            if casimir_eigenvalue(candidate) <= limit:
                found[hw] = candidate
                queue.append(candidate)
    ordered = sorted(found.values(), key=lambda r: (casimir_eigenvalue(r), r.highest_weight))
    logger.debug(f"{len(ordered)} irreducibles of {group.name} below {limit}")
    return ordered


def tau_dimension_datum(
    embedding: Embedding,
    tau: IrrepLabel,
    cutoff: Union[int, Fraction, str],
    cache: Optional[WeightCache] = None,
) -> list[tuple[IrrepLabel, int]]:
    """rho -> dim Hom_H(tau, rho|_H) for every rho below the cutoff, zeros included."""
    return [
        (rho, branch_multiplicity(embedding, tau, rho, cache))
        for rho in enumerate_irreps(embedding.source, cutoff)
    ]


@dataclass(frozen=True)
class Spectrum:
    """Laplace eigenvalues with multiplicities, strictly increasing, all <= cutoff."""

    entries: tuple[tuple[Fraction, int], ...]
    cutoff: Fraction

    def __post_init__(self) -> None:
        values = [e for e, _ in self.entries]
        if any(a >= b for a, b in zip(values, values[1:])):
            raise ValueError("spectrum eigenvalues must be strictly increasing")
        if any(e > self.cutoff for e in values) or any(m < 1 for _, m in self.entries):
            raise ValueError("spectrum entries must lie below the cutoff with positive multiplicity")

    @classmethod
    def from_pairs(cls, pairs: list[tuple[Fraction, int]], cutoff: Fraction) -> "Spectrum":
        """Merge equal eigenvalues and drop zero multiplicities."""
        merged: dict[Fraction, int] = {}
        for value, m in pairs:
            if m:
                merged[value] = merged.get(value, 0) + m
        return cls(entries=tuple(sorted(merged.items())), cutoff=Fraction(cutoff))

    def to_json(self) -> dict[str, Any]:
        return {
            "schema_version": SPECTRUM_SCHEMA_VERSION,
            "cutoff": f"{self.cutoff.numerator}/{self.cutoff.denominator}",
            "entries": [[f"{e.numerator}/{e.denominator}", m] for e, m in self.entries],
        }

    @classmethod
    def from_json(cls, document: dict[str, Any]) -> "Spectrum":
        entries = tuple((Fraction(e), int(m)) for e, m in document["entries"])
        return cls(entries=entries, cutoff=Fraction(document["cutoff"]))


def spectrum_from_datum(
    datum: list[tuple[IrrepLabel, int]],
    cutoff: Union[int, Fraction, str],
) -> Spectrum:
    """Eigenvalue c(rho) with multiplicity dim(rho) * k for every (rho, k) with c(rho) <= cutoff."""
    limit = _to_cutoff(cutoff)
    pairs = [
        (casimir_eigenvalue(rho), weyl_dimension(rho.group, rho.highest_weight) * k)
        for rho, k in datum
        if casimir_eigenvalue(rho) <= limit
    ]
    return Spectrum.from_pairs(pairs, limit)


def bundle_spectrum(
    embedding: Embedding,
    tau: IrrepLabel,
    cutoff: Union[int, Fraction, str],
    cache: Optional[WeightCache] = None,
) -> Spectrum:
    """
    Spectrum of the Laplacian on sections of G x_H V_tau.

    The rho-isotypic part has eigenvalue c(rho) and multiplicity
    dim(rho) * dim Hom_H(tau, rho|_H).
    """
    spectrum = spectrum_from_datum(tau_dimension_datum(embedding, tau, cutoff, cache), cutoff)
    logger.info(
        f"Spectrum of {embedding.source.name}/{embedding.name} with tau={tau.name}: "
        f"{len(spectrum.entries)} eigenvalues"
    )
    return spectrum


def spectra_equal(s1: Spectrum, s2: Spectrum) -> bool:
    if s1.cutoff != s2.cutoff:
        raise ValueError(f"cannot compare spectra with cutoffs {s1.cutoff} and {s2.cutoff}")
    return s1.entries == s2.entries
