"""
DimDatum - Polynomial Families

The polynomial ring Q[x0, x1, ...] with x0 = 1, the encoding of W_n-averaged
characters as polynomials, the determinant matrices A_n, B_n, B'_n, C_n,
D_n and their families a_n, b_n, b'_n, c_n, d_n, the sigma involution,
the factorization identities and the inductive irreducibility checker.

Polynomials are backed by sparse ``sympy.polys.rings`` elements over QQ.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Literal, Optional, Union

from sympy.polys.domains import QQ
from sympy.polys.orderings import lex
from sympy.polys.rings import PolyElement, PolyRing

from .charalg import CharacterElement, alternating_sum
from .exceptions import DominanceError, RankMismatchError, SchemeError
from .lattice import Weight, WeylSubgroup
from .rootsys import RootSystem, delta, standard_system

logger = logging.getLogger(__name__)

Family = Literal["a", "b", "bp", "c", "d"]
Parity = Literal["odd", "even"]

_FAMILY_ALIASES: dict[str, Family] = {
    "a": "a",
    "b": "b",
    "bp": "bp",
    "b'": "bp",
    "b′": "bp",
    "c": "c",
    "d": "d",
}

# Indeterminates are allocated in blocks so rings are shared between polynomials
_BLOCK = 16


def normalize_family(family: str) -> Family:
    try:
        return _FAMILY_ALIASES[family.lower()]
    except KeyError as e:
        raise ValueError(f"unknown polynomial family {family!r}") from e


@lru_cache(maxsize=None)
def _ring(size: int) -> PolyRing:
    return PolyRing([f"x{i}" for i in range(1, size + 1)], QQ, lex)


def _ring_for(index: int) -> PolyRing:
    blocks = max(1, -(-index // _BLOCK))
    return _ring(blocks * _BLOCK)


def _to_fraction(c: Any) -> Fraction:
    return Fraction(int(c.numerator), int(c.denominator))


# =============================================================================
# Polynomial
# =============================================================================


class Polynomial:
    """
    Sparse polynomial in x1, x2, ... over Q, with x0 already replaced by 1.

    ``degree`` is the total degree before x0 was eliminated when the
    polynomial is homogeneous there, and None otherwise.
    """

    __slots__ = ("_element", "_degree")

    def __init__(self, element: PolyElement, degree: Optional[int]):
        self._element = element
        self._degree = degree

    @classmethod
    def constant(cls, c: Union[int, Fraction], degree: Optional[int] = 0) -> "Polynomial":
        value = Fraction(c)
        ring = _ring(_BLOCK)
        return cls(ring.ground_new(QQ(value.numerator, value.denominator)), degree)

    @classmethod
    def variable(cls, k: int) -> "Polynomial":
        """x_k; x_0 is the constant 1 of degree one."""
        if k < 0:
            raise ValueError(f"indeterminate index must be nonnegative, got {k}")
        if k == 0:
            return cls.constant(1, degree=1)
        ring = _ring_for(k)
        return cls(ring.gens[k - 1], 1)

    @classmethod
    def from_terms(cls, terms: dict[tuple[int, ...], Fraction], degree: Optional[int]) -> "Polynomial":
        """Build from {sorted index multiset: coefficient}."""
        top = max((max(key) for key in terms if key), default=1)
        ring = _ring_for(top)
        data = {}
        for key, c in terms.items():
            exponents = [0] * ring.ngens
            for index in key:
                exponents[index - 1] += 1
            value = Fraction(c)
            data[tuple(exponents)] = QQ(value.numerator, value.denominator)
        return cls(ring.from_dict(data), degree)

    # -------------------------------------------------------------------------
    # Ring plumbing
    # -------------------------------------------------------------------------

    @property
    def element(self) -> PolyElement:
        return self._element

    @property
    def degree(self) -> Optional[int]:
        return self._degree

    def _aligned(self, other: "Polynomial") -> tuple[PolyElement, PolyElement]:
        left, right = self._element, other._element
        if left.ring.ngens == right.ring.ngens:
            return left, right
        ring = left.ring if left.ring.ngens > right.ring.ngens else right.ring
        return left.set_ring(ring), right.set_ring(ring)

    def _sum_degree(self, other: "Polynomial") -> Optional[int]:
        if self.is_zero():
            return other._degree
        if other.is_zero():
            return self._degree
        return self._degree if self._degree == other._degree else None

    # -------------------------------------------------------------------------
    # Arithmetic
    # -------------------------------------------------------------------------

    def __add__(self, other: "Polynomial") -> "Polynomial":
        left, right = self._aligned(other)
        return Polynomial(left + right, self._sum_degree(other))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        left, right = self._aligned(other)
        return Polynomial(left - right, self._sum_degree(other))

    def __neg__(self) -> "Polynomial":
        return Polynomial(-self._element, self._degree)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        left, right = self._aligned(other)
        degree = None
        if self._degree is not None and other._degree is not None:
            degree = self._degree + other._degree
        return Polynomial(left * right, degree)

    def scaled(self, c: Union[int, Fraction]) -> "Polynomial":
        value = Fraction(c)
        return Polynomial(self._element * QQ(value.numerator, value.denominator), self._degree)

    def exquo(self, other: "Polynomial") -> "Polynomial":
        """Exact quotient; raises sympy's ExactQuotientFailed if it does not exist."""
        left, right = self._aligned(other)
        degree = None
        if self._degree is not None and other._degree is not None:
            degree = self._degree - other._degree
        return Polynomial(left.exquo(right), degree)

    # -------------------------------------------------------------------------
    # Inspection
    # -------------------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self._element

    def is_constant(self) -> bool:
        return self._element.is_ground

    def is_homogeneous(self) -> bool:
        return self._degree is not None

    def variables(self) -> list[int]:
        used: set[int] = set()
        for monom in self._element.itermonoms():
            used.update(i + 1 for i, e in enumerate(monom) if e)
        return sorted(used)

    def degree_in(self, k: int) -> int:
        if k < 1 or k > self._element.ring.ngens or self.is_zero():
            return 0
        return int(self._element.degree(k - 1))

    def coeff_in(self, k: int, power: int) -> "Polynomial":
        """Coefficient of x_k^power, as a polynomial in the remaining indeterminates."""
        if k < 1:
            raise ValueError("x0 is eliminated and has no coefficient")
        element = self._element
        if k > element.ring.ngens:
            element = element.set_ring(_ring_for(k))
        degree = None if self._degree is None else self._degree - power
        return Polynomial(element.coeff_wrt(k - 1, power), degree)

    def pseudo_remainder(self, divisor: "Polynomial", k: int) -> "Polynomial":
        """prem(self, divisor) with respect to x_k."""
        left, right = self._aligned(divisor)
        if k > left.ring.ngens:
            ring = _ring_for(k)
            left, right = left.set_ring(ring), right.set_ring(ring)
        return Polynomial(left.prem(right, k - 1), None)

    def terms(self) -> dict[tuple[int, ...], Fraction]:
        """{sorted index multiset: coefficient}, e.g. x1^2*x2 -> (1, 1, 2)."""
        out: dict[tuple[int, ...], Fraction] = {}
        for monom, c in self._element.iterterms():
            key: list[int] = []
            for i, e in enumerate(monom):
                key.extend([i + 1] * e)
            out[tuple(key)] = _to_fraction(c)
        return dict(sorted(out.items(), key=lambda item: _term_order(item[0])))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        left, right = self._aligned(other)
        return bool(left == right)

    def __hash__(self) -> int:
        return hash(tuple(self.terms().items()))

    def __repr__(self) -> str:
        return f"Polynomial({self.to_text()!r})"

    # -------------------------------------------------------------------------
    # Serialization
    # -------------------------------------------------------------------------

    def to_text(self) -> str:
        """Canonical text form, e.g. ``3*x1^2*x2 - x2^2 + 1``."""
        pieces: list[str] = []
        for key, c in self.terms().items():
            factors: list[str] = []
            for index in sorted(set(key)):
                power = key.count(index)
                factors.append(f"x{index}" if power == 1 else f"x{index}^{power}")
            magnitude = abs(c)
            if not factors:
                body = str(magnitude)
            elif magnitude == 1:
                body = "*".join(factors)
            else:
                body = f"{magnitude}*" + "*".join(factors)
            if not pieces:
                pieces.append(body if c > 0 else f"-{body}")
            else:
                pieces.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(pieces) if pieces else "0"

    def to_json(self) -> dict[str, Any]:
        return {
            "degree": self._degree,
            "terms": [
                {
                    "exponents": {str(i): key.count(i) for i in sorted(set(key))},
                    "coeff": f"{c.numerator}/{c.denominator}",
                }
                for key, c in self.terms().items()
            ],
        }


def _term_order(key: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    # total degree descending, then sorted index lists ascending
    return (-len(key), key)


def sigma(p: Polynomial) -> Polynomial:
    """x_{2k} -> x_{2k}, x_{2k+1} -> -x_{2k+1}."""
    flipped: dict[tuple[int, ...], Fraction] = {}
    for key, c in p.terms().items():
        odd = sum(1 for index in key if index % 2)
        flipped[key] = -c if odd % 2 else c
    return Polynomial.from_terms(flipped, p.degree)


def sigma_sign(lam: Weight) -> int:
    """sigma(b_n(lam)) = sigma_sign(lam) * b'_n(lam).

    The two indices in each entry of B_n differ in parity, so sigma turns
    column j into (-1)^(a_j + i - j) times the matching column of B'_n.
    """
    return -1 if sum(lam) % 2 else 1


# =============================================================================
# Encoding of the direct-limit algebra
# =============================================================================


def encode(u: CharacterElement) -> Polynomial:
    """
    E(j_n(u)): [v] -> product of x_{|v_i|}, extended linearly.

    Every term of the W_n-average of [v] has the same monomial, so no
    symmetrization is needed before reading it off.
    """
    terms: dict[tuple[int, ...], Fraction] = {}
    for weight, c in u:
        key = tuple(sorted(abs(a) for a in weight if a != 0))
        terms[key] = terms.get(key, Fraction(0)) + c
    cleaned = {k: v for k, v in terms.items() if v}
    if not cleaned:
        return Polynomial.constant(0, degree=u.rank)
    return Polynomial.from_terms(cleaned, u.rank)


def limit_product(u: CharacterElement, v: CharacterElement) -> CharacterElement:
    """yy' = j_{m+n}(M(y (x) y')), represented in Y_{m+n}."""
    joined = u.tensor(v)
    return joined.average(WeylSubgroup.hyperoctahedral(joined.rank))


# =============================================================================
# Determinant matrices
# =============================================================================


@dataclass(frozen=True)
class SymbolicMatrix:
    """Square matrix of polynomial entries."""

    rows: tuple[tuple[Polynomial, ...], ...]

    def __post_init__(self) -> None:
        for row in self.rows:
            if len(row) != len(self.rows):
                raise RankMismatchError("symbolic matrix must be square")

    @property
    def size(self) -> int:
        return len(self.rows)

    def entry(self, i: int, j: int) -> Polynomial:
        """1-based entry access, matching the entry formulas."""
        return self.rows[i - 1][j - 1]

    def determinant(self) -> Polynomial:
        if self.size <= 4:
            return cofactor_determinant(self.rows)
        return bareiss_determinant(self.rows)


def cofactor_determinant(rows: tuple[tuple[Polynomial, ...], ...]) -> Polynomial:
    n = len(rows)
    if n == 0:
        return Polynomial.constant(1)
    if n == 1:
        return rows[0][0]
    total: Optional[Polynomial] = None
    for j in range(n):
        minor = tuple(row[:j] + row[j + 1 :] for row in rows[1:])
        term = rows[0][j] * cofactor_determinant(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    assert total is not None
    return total


def bareiss_determinant(rows: tuple[tuple[Polynomial, ...], ...]) -> Polynomial:
    """Fraction-free elimination; every division is exact."""
    n = len(rows)
    if n == 0:
        return Polynomial.constant(1)
    m = [list(row) for row in rows]
    sign = 1
    prev = Polynomial.constant(1)
    for k in range(n - 1):
        if m[k][k].is_zero():
            pivot = next((i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
            if pivot is None:
                return Polynomial.constant(0, degree=sum(1 for _ in range(n)))
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]).exquo(prev)
        prev = m[k][k]
    result = m[n - 1][n - 1]
    return -result if sign < 0 else result


def _x(k: int) -> Polynomial:
    return Polynomial.variable(abs(k))


def build_det_matrix(family: str, n: int, lam: Weight) -> SymbolicMatrix:
    """The n x n matrix A_n, B_n, B'_n, C_n or D_n of lam."""
    fam = normalize_family(family)
    if len(lam) != n:
        raise RankMismatchError(f"weight {lam} has {len(lam)} coordinates, matrix size is {n}")
    rows = []
    for i in range(1, n + 1):
        row = []
        for j in range(1, n + 1):
            a = lam[j - 1]
            first = _x(a + i - j)
            if fam == "a":
                entry = first
            elif fam == "b":
                entry = first - _x(a + 2 * n + 1 - i - j)
            elif fam == "bp":
                entry = first + _x(a + 2 * n + 1 - i - j)
            elif fam == "c":
                entry = first - _x(a + 2 * n + 2 - i - j)
            else:
                entry = first + _x(a + 2 * n - i - j)
            row.append(entry)
        rows.append(tuple(row))
    return SymbolicMatrix(rows=tuple(rows))


def is_family_dominant(family: str, lam: Weight) -> bool:
    fam = normalize_family(family)
    if any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)):
        return False
    if not lam or fam == "a":
        return True
    if fam == "d":
        # D_1 has no roots, so every rank-one weight is dominant
        return len(lam) == 1 or lam[-2] >= abs(lam[-1])
    return lam[-1] >= 0


@lru_cache(maxsize=4096)
def family_poly(family: str, lam: Weight) -> Polynomial:
    """a_n, b_n, b'_n, c_n or d_n of lam as a determinant; d_n is half of det D_n."""
    fam = normalize_family(family)
    if not is_family_dominant(fam, lam):
        raise DominanceError(f"{lam} is not dominant for family {fam}")
    n = len(lam)
    if n == 0:
        return Polynomial.constant(1)
    det = build_det_matrix(fam, n, lam).determinant()
    if fam == "d":
        return det.scaled(Fraction(1, 2))
    return det


# =============================================================================
# Cross-checks against the Weyl sums
# =============================================================================

_FAMILY_KIND = {"a": "A", "b": "B", "bp": "B", "c": "C", "d": "D"}


def family_root_system(family: str, n: int) -> RootSystem:
    """A_{n-1}, B_n, C_n or D_n on n coordinates."""
    fam = normalize_family(family)
    return standard_system(_FAMILY_KIND[fam], n, 0, n)  # type: ignore[arg-type]


def d_full_group_sum(lam: Weight) -> CharacterElement:
    """1/2 sum over w in W_n of eps'(w)[lam + delta - w.delta], eps' = sign of the permutation part."""
    n = len(lam)
    two_delta = delta(family_root_system("d", n))
    terms = []
    for w in WeylSubgroup.hyperoctahedral(n).elements:
        moved = w.act(two_delta)
        weight = tuple(a + (d - m) // 2 for a, d, m in zip(lam, two_delta, moved))
        terms.append((weight, Fraction(w.perm_sign(), 2)))
    return CharacterElement.from_terms(n, terms)


def verify_det_equals_weylsum(family: str, lam: Weight) -> bool:
    """det of the family matrix against the encoded alternating sum."""
    fam = normalize_family(family)
    n = len(lam)
    if n == 0:
        raise RankMismatchError("families start at n = 1")
    phi = family_root_system(fam, n)
    weyl_side = encode(alternating_sum(phi, lam))
    if fam == "bp":
        weyl_side = sigma(weyl_side).scaled(sigma_sign(lam))
    det_side = family_poly(fam, lam)
    ok = det_side == weyl_side
    if ok and fam == "d":
        ok = encode(d_full_group_sum(lam)) == det_side
    if not ok:
        logger.error(f"det/Weyl-sum mismatch for {fam}{n}{lam}: {det_side.to_text()} vs {weyl_side.to_text()}")
    return ok


# =============================================================================
# Factorization identities
# =============================================================================


def antisymmetric(lam: Weight) -> bool:
    """a_i + a_{n+1-i} = 0 for every i, the shape for which a_n can factor."""
    n = len(lam)
    return all(lam[i] + lam[n - 1 - i] == 0 for i in range(n // 2))


def factorization_admissible(parity: Parity, lam: Weight) -> bool:
    n = len(lam)
    if parity == "odd" and n % 2 == 0:
        return False
    if parity == "even" and n % 2 == 1:
        return False
    if any(lam[i] < lam[i + 1] for i in range(n - 1)):
        return False
    return antisymmetric(lam)


def factorization_sides(parity: Parity, lam: Weight) -> tuple[Polynomial, Polynomial, Polynomial]:
    """(a_n(lam), first factor, second factor)."""
    if not factorization_admissible(parity, lam):
        raise DominanceError(f"{lam} is not admissible for the {parity} factorization")
    m = len(lam) // 2
    if parity == "odd":
        return family_poly("a", lam), family_poly("c", lam[:m]), family_poly("d", lam[: m + 1])
    return family_poly("a", lam), family_poly("b", lam[:m]), family_poly("bp", lam[:m])


def verify_factorization(parity: Parity, lam: Weight) -> bool:
    """a_{2m+1} = c_m d_{m+1}, or a_{2m} = b_m b'_m."""
    whole, left, right = factorization_sides(parity, lam)
    ok = whole == left * right
    if not ok:
        logger.error(f"{parity} factorization fails for {lam}")
    return ok


def admissible_weights(parity: Parity, m: int, max_coeff: int) -> list[Weight]:
    """Every admissible lam of the given parity and half-size with |a_i| <= max_coeff."""
    out: list[Weight] = []

    def heads(length: int, upper: int) -> list[list[int]]:
        if length == 0:
            return [[]]
        return [[a] + rest for a in range(upper, -1, -1) for rest in heads(length - 1, a)]

    for head in heads(m, max_coeff):
        tail = [-a for a in reversed(head)]
        if parity == "even":
            out.append(tuple(head + tail))
            continue
        # with no head the middle coordinate is the whole d_1 weight and may have either sign
        lowest = head[-1] if head else max_coeff
        floor = -lowest
        for middle in range(lowest, floor - 1, -1):
            out.append(tuple(head + [middle] + tail))
    return out


# =============================================================================
# Inductive irreducibility
# =============================================================================


def top_index(family: str, lam: Weight) -> int:
    """Largest indeterminate index occurring in the family matrix."""
    fam = normalize_family(family)
    n = len(lam)
    offsets = {"b": 2 * n - 1, "bp": 2 * n - 1, "c": 2 * n, "d": 2 * n - 2}
    if fam not in offsets:
        raise SchemeError(f"family {fam} is not covered by the inductive scheme")
    return lam[0] + offsets[fam]


def _is_linear_form(p: Polynomial) -> bool:
    return p.degree == 1 and not p.is_zero() and all(len(key) <= 1 for key in p.terms())


def verify_irreducible_inductive(family: str, lam: Weight) -> bool:
    """
    Irreducibility of b_n, b'_n, c_n, d_n by induction on n.

    Writes p = u*q + r with u the top indeterminate, checks that q is
    +-(the same family at lam' = lam[1:]), that q is irreducible, and that
    q does not divide r (pseudo-remainder with respect to a variable of q).
    """
    fam = normalize_family(family)
    if fam == "a":
        raise SchemeError("the a-family is not covered by the inductive scheme")
    if not lam:
        raise SchemeError("the scheme needs n >= 1")
    p = family_poly(fam, lam)
    if len(lam) == 1:
        return _is_linear_form(p)

    k = top_index(fam, lam)
    if p.degree_in(k) != 1:
        raise SchemeError(f"{fam}{lam} has degree {p.degree_in(k)} in x{k}, expected 1")
    q = p.coeff_in(k, 1)
    r = p.coeff_in(k, 0)
    smaller = family_poly(fam, lam[1:])
    if q != smaller and q != -smaller:
        raise SchemeError(f"coefficient of x{k} in {fam}{lam} is not +-{fam}{lam[1:]}")
    if q.is_constant():
        return True
    if not verify_irreducible_inductive(fam, lam[1:]):
        return False
    if r.is_zero():
        return False
    pivot = max(q.variables())
    divisible = r.pseudo_remainder(q, pivot).is_zero()
    logger.debug(f"{fam}{lam}: x{k} coefficient divides remainder: {divisible}")
    return not divisible
