"""
DimDatum - Verification Suites

Each suite expands its parameters into a canonical list of independent
checks, fans them out to a process pool and merges the records back in
canonical order.
"""

import json
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from functools import partial
from itertools import product
from pathlib import Path
from typing import Any, Callable, Literal, Optional, TypeVar

import numpy as np
from sympy import Poly

from datum import affine
from datum.branch import (
    IrrepLabel,
    Spectrum,
    branch_multiplicity,
    enumerate_irreps,
    spectra_equal,
    spectrum_from_datum,
)
from datum.cache import WeightCache, atomic_write_bytes, canonical_json_bytes
from datum.charalg import averaged_character, t_polynomial, t_polynomial_product
from datum.exceptions import BranchingError, DatumError
from datum.groups import Embedding, GroupDesc, identity, maximal_torus, theorem_embeddings
from datum.lattice import Weight, WeylSubgroup, format_weight
from datum.polyfam import (
    Parity,
    admissible_weights,
    family_poly,
    factorization_sides,
    is_family_dominant,
    sigma,
    sigma_sign,
    verify_det_equals_weylsum,
    verify_irreducible_inductive,
)
from datum.rootsys import RootSystem, theorem_systems, theorem_weight, weyl_group

from .config import Settings
from .report import CheckRecord, Report

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")

CHECK_ERRORS = (DatumError, ArithmeticError, ValueError)

AffineCheck = Literal["validate", "density", "integration"]


# =============================================================================
# Fan-out
# =============================================================================


def fan_out(fn: Callable[[T], R], items: list[T], jobs: int) -> list[R]:
    """Run ``fn`` over ``items``; results come back in input order whatever ``jobs`` is."""
    if jobs <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def guarded(
    check_id: str,
    reproducer: dict[str, Any],
    timings: bool,
    body: Callable[[], CheckRecord],
) -> CheckRecord:
    """Run one check, turning library errors into a failed record."""
    start = time.perf_counter()
    try:
        record = body()
    except CHECK_ERRORS as e:
        logger.error(f"Check {check_id} raised {type(e).__name__}: {e}")
        record = CheckRecord(id=check_id, status="fail", detail=f"{type(e).__name__}: {e}", reproducer=reproducer)
    if timings:
        record.timing_ms = (time.perf_counter() - start) * 1000
    return record


def _finish(report: Report) -> Report:
    summary = report.to_summary()
    logger.info(
        f"Suite {report.suite} finished: {summary['passed']} passed, "
        f"{summary['failed']} failed, {summary['skipped']} skipped"
    )
    return report


def poly_json(p: Poly) -> list[list[Any]]:
    """[exponent, "p/q"] pairs of a univariate polynomial, highest exponent first."""
    return [[int(e), f"{int(c.p)}/{int(c.q)}"] for (e,), c in p.terms()]


# =============================================================================
# Polynomial identities
# =============================================================================


def _descending(n: int, bound: int) -> list[Weight]:
    values = range(bound, -bound - 1, -1)
    return [lam for lam in product(values, repeat=n) if all(a >= b for a, b in zip(lam, lam[1:]))]


def _identity_check(item: tuple[str, str, Weight], timings: bool) -> CheckRecord:
    kind, family, lam = item
    check_id = f"{kind}/{family}/{format_weight(lam)}"
    reproducer = {"kind": kind, "family": family, "lambda": list(lam)}

    def body() -> CheckRecord:
        if kind == "factorization":
            parity: Parity = "odd" if family == "odd" else "even"
            whole, left, right = factorization_sides(parity, lam)
            return CheckRecord.compare(check_id, whole.to_json(), (left * right).to_json(), reproducer)
        if kind == "det-weylsum":
            ok = verify_det_equals_weylsum(family, lam)
            return CheckRecord.compare(check_id, ok, True, reproducer)
        if kind == "sigma":
            return CheckRecord.compare(
                check_id,
                sigma(family_poly("b", lam)).to_json(),
                family_poly("bp", lam).scaled(sigma_sign(lam)).to_json(),
                reproducer,
            )
        ok = verify_irreducible_inductive(family, lam)
        return CheckRecord.compare(check_id, ok, True, reproducer)

    return guarded(check_id, reproducer, timings, body)


def identity_items(max_m: int, max_coeff: int) -> list[tuple[str, str, Weight]]:
    """Canonical check list: factorizations, then det/Weyl-sum, sigma, irreducibility."""
    items: list[tuple[str, str, Weight]] = []
    for m in range(1, max_m + 1):
        for parity in ("odd", "even"):
            items.extend(("factorization", parity, lam) for lam in admissible_weights(parity, m, max_coeff))
    for n in range(1, max_m + 1):
        weights = _descending(n, max_coeff)
        for family in ("a", "b", "bp", "c", "d"):
            items.extend(("det-weylsum", family, lam) for lam in weights if is_family_dominant(family, lam))
        items.extend(("sigma", "b", lam) for lam in weights if is_family_dominant("b", lam))
        for family in ("b", "bp", "c", "d"):
            items.extend(("irreducible", family, lam) for lam in weights if is_family_dominant(family, lam))
    return items


def run_identities(max_m: int, max_coeff: int, settings: Settings, timings: bool = False) -> Report:
    """Exhaustive sweep of the polynomial identities with m, n <= max_m and |a_i| <= max_coeff."""
    if max_m < 0 or max_coeff < 0:
        raise ValueError("max_m and max_coeff must be nonnegative")
    report = Report(suite="identities", parameters={"max_m": max_m, "max_coeff": max_coeff})
    items = identity_items(max_m, max_coeff)
    logger.info(f"Running {len(items)} identity checks with {settings.jobs} jobs")
    report.extend(fan_out(partial(_identity_check, timings=timings), items, settings.jobs))
    return _finish(report)


# =============================================================================
# Theorem instance
# =============================================================================


def _branch_pair(
    rho: IrrepLabel,
    pair: tuple[Embedding, Embedding],
    taus: tuple[IrrepLabel, IrrepLabel],
    cache_dir: str,
    timings: bool,
) -> CheckRecord:
    check_id = f"branching/{rho.name}"
    reproducer = {"rho": list(rho.highest_weight), "tau1": list(taus[0].highest_weight), "tau2": list(taus[1].highest_weight)}

    def body() -> CheckRecord:
        cache = WeightCache(cache_dir)
        k1 = branch_multiplicity(pair[0], taus[0], rho, cache)
        k2 = branch_multiplicity(pair[1], taus[1], rho, cache)
        return CheckRecord.compare(check_id, k1, k2, reproducer, detail=f"{pair[0].name}={k1} {pair[1].name}={k2}")

    return guarded(check_id, reproducer, timings, body)


def run_theorem(n: int, lam: Weight, cutoff: int, settings: Settings, timings: bool = False) -> Report:
    """
    tau-dimension data of H1 = U(2n+1) and H2 = Sp(n) x SO(2n+2) in SU(4n+2).

    Both pipelines run: branching per rho below the cutoff, and equality of
    the averaged characters over W_{BC_{2n+1}}. Raises DominanceError for an
    inadmissible lambda before any check runs.
    """
    if len(lam) != 2 * n + 1:
        raise ValueError(f"lambda must have {2 * n + 1} coordinates for n = {n}, got {len(lam)}")
    lam_prime = theorem_weight(lam)
    h1, h2 = theorem_embeddings(n)
    taus = (IrrepLabel.of(h1.target, lam), IrrepLabel.of(h2.target, lam_prime))
    report = Report(
        suite="theorem",
        parameters={"n": n, "lambda": list(lam), "lambda_prime": list(lam_prime), "cutoff": cutoff},
    )

    phi1, phi2 = theorem_systems(n)
    gamma = WeylSubgroup.hyperoctahedral(2 * n + 1)
    reproducer = {"lambda": list(lam), "lambda_prime": list(lam_prime)}

    def character_side() -> CheckRecord:
        left = averaged_character(phi1, lam, gamma)
        right = averaged_character(phi2, lam_prime, gamma)
        return CheckRecord.compare("character/averaged-F", left.to_json(), right.to_json(), reproducer)

    character = guarded("character/averaged-F", reproducer, timings, character_side)
    report.add_check(character)

    def t_polynomials() -> CheckRecord:
        left = t_polynomial(phi1, lam)
        right = t_polynomial(phi2, lam_prime)
        if left != t_polynomial_product(phi1, lam) or right != t_polynomial_product(phi2, lam_prime):
            return CheckRecord(
                id="character/t-polynomial",
                status="fail",
                detail="alternating sum disagrees with its product form",
                reproducer=reproducer,
            )
        return CheckRecord.compare("character/t-polynomial", poly_json(left), poly_json(right), reproducer)

    report.add_check(guarded("character/t-polynomial", reproducer, timings, t_polynomials))

    rhos = enumerate_irreps(h1.source, cutoff)
    logger.info(f"Branching {len(rhos)} irreducibles of {h1.source.name} along H1 and H2")
    worker = partial(_branch_pair, pair=(h1, h2), taus=taus, cache_dir=settings.cache_dir, timings=timings)
    branching = fan_out(worker, rhos, settings.jobs)
    report.extend(branching)

    branching_equal = all(r.status == "pass" for r in branching)
    report.add_check(
        CheckRecord.compare(
            "pipelines/agree",
            branching_equal,
            character.status == "pass",
            {**reproducer, "cutoff": cutoff},
            detail=f"irreducibles={len(rhos)}",
        )
    )
    return _finish(report)


# =============================================================================
# Spectra
# =============================================================================


def resolve_embedding(group: GroupDesc, subgroup: str) -> Embedding:
    """H1, H2 (for SU(4n+2)), torus or G."""
    if subgroup in ("H1", "H2"):
        size = group.su_block()
        if size % 4 != 2:
            raise BranchingError(f"H1 and H2 live in SU(4n+2), not {group.name}")
        h1, h2 = theorem_embeddings((size - 2) // 4)
        return h1 if subgroup == "H1" else h2
    if subgroup == "torus":
        return maximal_torus(group)
    if subgroup == "G":
        return identity(group)
    raise BranchingError(f"unknown subgroup {subgroup!r}")


def _branch_one(
    rho: IrrepLabel,
    embedding: Embedding,
    tau: IrrepLabel,
    cache_dir: str,
    timings: bool,
) -> tuple[CheckRecord, int]:
    check_id = f"branching/{rho.name}"
    reproducer = {"rho": list(rho.highest_weight), "tau": list(tau.highest_weight)}
    found: dict[str, int] = {}

    def body() -> CheckRecord:
        k = branch_multiplicity(embedding, tau, rho, WeightCache(cache_dir))
        found["k"] = k
        return CheckRecord(id=check_id, status="pass", detail=f"multiplicity={k}", reproducer=reproducer)

    record = guarded(check_id, reproducer, timings, body)
    return record, found.get("k", 0)


def _sphere_spectrum(cutoff: Fraction) -> Spectrum:
    """Eigenvalues 2l(l+1) of the round S^2 with multiplicities 2l+1."""
    pairs = []
    ell = 0
    while 2 * ell * (ell + 1) <= cutoff:
        pairs.append((Fraction(2 * ell * (ell + 1)), 2 * ell + 1))
        ell += 1
    return Spectrum.from_pairs(pairs, cutoff)


def run_spectrum(
    group_name: str,
    subgroup: str,
    tau: Optional[Weight],
    cutoff: Fraction,
    out_path: Optional[Path],
    settings: Settings,
    timings: bool = False,
) -> Report:
    """Bundle spectrum of G/H with fiber tau, optionally written to ``out_path``."""
    if cutoff <= 0:
        raise ValueError(f"cutoff must be positive, got {cutoff}")
    group = GroupDesc.parse(group_name)
    embedding = resolve_embedding(group, subgroup)
    tau_label = (
        IrrepLabel.trivial(embedding.target) if tau is None else IrrepLabel.of(embedding.target, tau)
    )
    report = Report(
        suite="spectrum",
        parameters={
            "group": group.name,
            "subgroup": embedding.name,
            "tau": list(tau_label.highest_weight),
            "cutoff": f"{cutoff.numerator}/{cutoff.denominator}",
        },
    )

    rhos = enumerate_irreps(group, cutoff)
    worker = partial(_branch_one, embedding=embedding, tau=tau_label, cache_dir=settings.cache_dir, timings=timings)
    results = fan_out(worker, rhos, settings.jobs)
    report.extend([record for record, _ in results])

    spectrum = spectrum_from_datum([(rho, k) for rho, (_, k) in zip(rhos, results)], cutoff)
    document = spectrum.to_json()

    if subgroup == "torus" and group.name == "SU2" and not any(tau_label.highest_weight):
        expected = _sphere_spectrum(cutoff)
        report.add_check(
            CheckRecord.compare("spectrum/sphere", document, expected.to_json(), {"cutoff": str(cutoff)})
        )

    if out_path is not None:
        out_path.parent.mkdir(parents=True, exist_ok=True)
        atomic_write_bytes(out_path, canonical_json_bytes(document))
        logger.info(f"Wrote spectrum with {len(spectrum.entries)} eigenvalues to {out_path}")
    else:
        report.artifacts["spectrum"] = document
    return _finish(report)


def run_compare(left: Path, right: Path) -> Report:
    """Spectrum files compare as multisets; any other JSON compares canonically."""
    report = Report(suite="compare", parameters={"left": str(left), "right": str(right)})
    a = json.loads(left.read_text(encoding="utf-8"))
    b = json.loads(right.read_text(encoding="utf-8"))
    reproducer = {"left": left.name, "right": right.name}
    if all(isinstance(d, dict) and "entries" in d and "cutoff" in d for d in (a, b)):

        def body() -> CheckRecord:
            s1, s2 = Spectrum.from_json(a), Spectrum.from_json(b)
            equal = spectra_equal(s1, s2)
            record = CheckRecord.compare("compare/spectrum", s1.to_json(), s2.to_json(), reproducer)
            record.status = "pass" if equal else "fail"
            return record

        report.add_check(guarded("compare/spectrum", reproducer, False, body))
    else:
        report.add_check(CheckRecord.compare("compare/json", a, b, reproducer))
    return _finish(report)


# =============================================================================
# Characters
# =============================================================================


def averaged_character_document(label: str, lam: Weight, average: Literal["full", "own"]) -> dict[str, Any]:
    """F_{Phi,lam,W} as JSON, W = W_{BC_n} (full) or W_Phi (own)."""
    phi = RootSystem.from_label(label, len(lam))
    group = WeylSubgroup.hyperoctahedral(phi.rank) if average == "full" else weyl_group(phi)
    value = averaged_character(phi, lam, group)
    return {
        "schema_version": 1,
        "system": label,
        "weight": list(lam),
        "average": average,
        "character": value.to_json(),
    }


# =============================================================================
# Affine root systems
# =============================================================================


def run_affine(
    selector: Optional[str],
    checks: list[AffineCheck],
    settings: Settings,
    points: Optional[int] = None,
    dimension: int = 5,
    timings: bool = False,
) -> Report:
    """
    Validation, density and Weyl-integration checks.

    ``points`` defaults to the density or quadrature point count from the
    settings. Raises AffineError when the selector does not parse.
    """
    system = affine.parse_selector(selector) if selector else None
    if system is None and any(c in ("validate", "density") for c in checks):
        raise ValueError("validate and density checks need a catalog selector")
    report = Report(
        suite="affine",
        parameters={
            "selector": selector,
            "checks": list(checks),
            "points": points,
            "dimension": dimension,
            "seed": settings.seed,
        },
    )
    rng = np.random.default_rng(settings.seed)
    key = {"selector": selector, "seed": settings.seed}

    if "validate" in checks and system is not None:
        entry = system

        def validate() -> CheckRecord:
            ok, problems = affine.validate_affine(entry)
            return CheckRecord(id="affine/axioms", status="pass" if ok else "fail", detail="; ".join(problems), reproducer=key)

        def divisibility() -> CheckRecord:
            ok = entry.divisibility_holds()
            return CheckRecord(id="affine/divisibility", status="pass" if ok else "fail", reproducer=key)

        def fiber_law() -> CheckRecord:
            count = points or settings.density_points
            error = affine.fiber_product_error(entry, rng, count)
            return CheckRecord.within("affine/fiber-product", error, settings.pointwise_tolerance, {**key, "points": count})

        def lifting() -> CheckRecord:
            same = affine.lifting_independent(entry)
            if same is None:
                return CheckRecord(id="affine/lifting-independence", status="skip", detail="single lifting", reproducer=key)
            return CheckRecord(id="affine/lifting-independence", status="pass" if same else "fail", reproducer=key)

        def table() -> CheckRecord:
            differences = affine.catalog_discrepancies(entry)
            detail = json.dumps(differences, sort_keys=True) if differences else "matches m = 1 table"
            return CheckRecord(id="affine/catalog-table", status="pass", detail=detail, reproducer=key)

        def full_group() -> CheckRecord:
            _, lifted = affine.delta_and_A(entry)
            whole = affine.full_group_A(entry)
            report.artifacts["f_R"] = poly_json(affine.f_polynomial(entry))
            return CheckRecord.compare("affine/full-group-A", whole.to_json(), lifted.to_json(), key)

        for check_id, body in (
            ("affine/axioms", validate),
            ("affine/divisibility", divisibility),
            ("affine/fiber-product", fiber_law),
            ("affine/lifting-independence", lifting),
            ("affine/catalog-table", table),
            ("affine/full-group-A", full_group),
        ):
            report.add_check(guarded(check_id, key, timings, body))

    if "density" in checks and system is not None:
        entry = system
        count = points or settings.density_points

        def density() -> CheckRecord:
            rows = affine.density_samples(entry, rng, count)
            report.artifacts["density"] = rows
            error = max(
                (abs(r["product"] - r["character"]) / max(1.0, abs(r["product"])) for r in rows),
                default=0.0,
            )
            return CheckRecord.within("affine/density-forms", error, settings.pointwise_tolerance, {**key, "points": count})

        report.add_check(guarded("affine/density-forms", key, timings, density))

    if "integration" in checks:
        count = points or settings.quadrature_points
        for d in range(1, dimension + 1):
            reproducer = {"dimension": d, "points": count}

            def integral(d: int = d, reproducer: dict[str, Any] = reproducer) -> CheckRecord:
                value = affine.weyl_integration_check(d, count)
                return CheckRecord.within(f"integration/norm/{d}", abs(value - 1.0), settings.quadrature_tolerance, reproducer)

            report.add_check(guarded(f"integration/norm/{d}", reproducer, timings, integral))
        if dimension >= 2:
            t = np.arange(count) / count

            def orthogonal() -> CheckRecord:
                values = affine.su2_character(2, t) * np.conj(affine.su2_character(3, t))
                error = abs(affine.weyl_integral(values, count))
                return CheckRecord.within("integration/orthogonal/2-3", error, settings.quadrature_tolerance, {"points": count})

            report.add_check(guarded("integration/orthogonal/2-3", {"points": count}, timings, orthogonal))
    return _finish(report)
