"""Tests for the encoding, the determinant families and their identities."""

from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from datum.charalg import CharacterElement, orbit_character
from datum.exceptions import DominanceError, SchemeError
from datum.lattice import WeylSubgroup
from datum.polyfam import (
    Polynomial,
    admissible_weights,
    bareiss_determinant,
    build_det_matrix,
    cofactor_determinant,
    encode,
    family_poly,
    is_family_dominant,
    limit_product,
    sigma,
    sigma_sign,
    verify_det_equals_weylsum,
    verify_factorization,
    verify_irreducible_inductive,
)


def x(k: int) -> Polynomial:
    return Polynomial.variable(k)


def poly(terms: dict[tuple[int, ...], int]) -> Polynomial:
    return Polynomial.from_terms({k: Fraction(v) for k, v in terms.items()}, None)


one = Polynomial.constant(1)


class TestPolynomial:
    def test_x0_is_one(self):
        assert x(0) == one
        assert x(0).degree == 1

    def test_text_form(self):
        p = poly({(1, 1, 2): 3, (2, 2): -1, (): 1})
        assert p.to_text() == "3*x1^2*x2 - x2^2 + 1"

    def test_json_mirror(self):
        p = poly({(1, 2): Fraction(1, 2)})
        assert p.to_json() == {"degree": None, "terms": [{"exponents": {"1": 1, "2": 1}, "coeff": "1/2"}]}

    def test_coefficient_extraction(self):
        p = x(3) * x(1) + x(2)
        assert p.degree_in(3) == 1
        assert p.coeff_in(3, 1) == x(1)
        assert p.coeff_in(3, 0) == x(2)

    def test_pseudo_remainder(self):
        q = x(2) - one
        assert (q * (x(1) + x(2))).pseudo_remainder(q, 2).is_zero()
        assert not (x(2) + x(1)).pseudo_remainder(q, 2).is_zero()

    def test_negative_index(self):
        with pytest.raises(ValueError):
            Polynomial.variable(-1)


class TestEncoding:
    def test_orbit_character(self):
        u = orbit_character((2, 1), WeylSubgroup.hyperoctahedral(2))
        assert encode(u) == x(1) * x(2)

    def test_unit(self):
        assert encode(CharacterElement.unit(3)) == one

    def test_monomial_reads_absolute_values(self):
        assert encode(CharacterElement.monomial((3, -1))) == x(1) * x(3)

    def test_encoding_is_multiplicative_on_the_limit(self):
        u = orbit_character((1,), WeylSubgroup.hyperoctahedral(1))
        v = orbit_character((2, 0), WeylSubgroup.hyperoctahedral(2))
        assert encode(limit_product(u, v)) == encode(u) * encode(v)

    def test_sigma(self):
        assert sigma(x(1)) == -x(1)
        assert sigma(x(2)) == x(2)
        assert sigma(one - x(1)) == one + x(1)
        assert sigma(x(1) * x(3)) == x(1) * x(3)

    @pytest.mark.parametrize("lam", [(0,), (1,), (2, 1), (1, 1, 0)])
    def test_sigma_conjugates_b_into_bp(self, lam):
        assert sigma(family_poly("b", lam)) == family_poly("bp", lam).scaled(sigma_sign(lam))

    def test_sigma_sign_on_odd_weights(self):
        assert sigma(family_poly("b", (1,))) == -(x(1) + x(2))
        assert family_poly("bp", (1,)) == x(1) + x(2)
        assert sigma_sign((2, 1)) == -1


class TestDeterminants:
    def test_single_entries(self):
        assert build_det_matrix("a", 1, (2,)).entry(1, 1) == x(2)
        assert build_det_matrix("b", 1, (0,)).entry(1, 1) == one - x(1)

    def test_d_matrix(self):
        m = build_det_matrix("d", 2, (0, 0))
        assert m.entry(1, 1) == one + x(2)
        assert m.entry(1, 2) == x(1).scaled(2)
        assert m.entry(2, 1) == x(1).scaled(2)
        assert m.entry(2, 2) == Polynomial.constant(2)

    def test_a3_at_zero(self):
        expected = poly({(): 1, (1, 1): -2, (1, 1, 2): 2, (2, 2): -1})
        assert family_poly("a", (0, 0, 0)) == expected

    def test_small_values(self):
        assert family_poly("c", (0,)) == one - x(2)
        assert family_poly("d", (3,)) == x(3)
        assert family_poly("d", (0,)) == one

    @pytest.mark.parametrize("family,lam", [("b", (1, 0)), ("c", (2, 1, 0)), ("bp", (1,)), ("a", (1, 0, -1))])
    def test_families_are_homogeneous_of_degree_n(self, family, lam):
        p = family_poly(family, lam)
        assert p.is_homogeneous()
        assert p.degree == len(lam)

    def test_family_aliases(self):
        assert family_poly("B'", (1,)) == family_poly("bp", (1,))

    def test_dominance(self):
        with pytest.raises(DominanceError):
            family_poly("c", (0, 1))

    @settings(max_examples=25, deadline=None)
    @given(st.lists(st.integers(0, 3), min_size=1, max_size=4))
    def test_bareiss_matches_cofactor(self, coords):
        lam = tuple(sorted(coords, reverse=True))
        rows = build_det_matrix("c", len(lam), lam).rows
        assert bareiss_determinant(rows) == cofactor_determinant(rows)


class TestIdentities:
    @pytest.mark.parametrize(
        "family,lam",
        [("a", (0, 0, 0)), ("c", (1,)), ("d", (1, 1)), ("b", (1, 0)), ("bp", (2, 1)), ("d", (1, -1))],
    )
    def test_det_equals_weylsum(self, family, lam):
        assert verify_det_equals_weylsum(family, lam)

    def test_c1_values(self):
        assert family_poly("c", (1,)) == x(1) - x(3)

    @pytest.mark.parametrize(
        "parity,lam",
        [("odd", (0, 0, 0)), ("even", (1, -1)), ("odd", (1, 0, -1)), ("even", (2, 1, -1, -2))],
    )
    def test_factorization(self, parity, lam):
        assert verify_factorization(parity, lam)

    def test_odd_factorization_with_negative_middle(self):
        assert verify_factorization("odd", (-2,))
        assert family_poly("a", (-2,)) == family_poly("d", (-2,))

    def test_odd_factorization_at_zero(self):
        expected = family_poly("a", (0, 0, 0))
        assert (one - x(2)) * (one + x(2) - (x(1) * x(1)).scaled(2)) == expected

    def test_even_factorization_value(self):
        assert family_poly("a", (1, -1)) == x(1) * x(1) - x(2) * x(2)

    @pytest.mark.parametrize(
        "parity,m,count",
        [("even", 1, 4), ("odd", 0, 7), ("odd", 1, 16)],
    )
    def test_admissible_weight_counts(self, parity, m, count):
        assert len(admissible_weights(parity, m, 3)) == count

    def test_admissible_weights_are_antisymmetric(self):
        for lam in admissible_weights("odd", 2, 2):
            assert all(lam[i] + lam[-1 - i] == 0 for i in range(len(lam) // 2))


class TestIrreducibility:
    @pytest.mark.parametrize(
        "family,lam",
        [
            ("b", (0,)),
            ("c", (0, 0)),
            ("bp", (1,)),
            ("d", (1, 0)),
            ("b", (1, 0)),
            ("d", (2, -1)),
            ("d", (2, -2)),
            ("d", (1, -1)),
            ("d", (2, 2, -1)),
            ("d", (2, 1, -1)),
            ("d", (1, 1, -1)),
        ],
    )
    def test_irreducible(self, family, lam):
        assert verify_irreducible_inductive(family, lam)

    def test_a_family_is_out_of_scope(self):
        with pytest.raises(SchemeError):
            verify_irreducible_inductive("a", (1, 0))

    def test_d_family_ignores_the_sign_of_the_last_coordinate(self):
        assert family_poly("d", (-1,)) == x(1)
        assert family_poly("d", (2, -1)) == family_poly("d", (2, 1))

    def test_rank_one_d_weights_are_dominant(self):
        assert verify_det_equals_weylsum("d", (-3,))
        with pytest.raises(DominanceError):
            family_poly("d", (1, -2))


def descending(n: int, bound: int) -> list[tuple[int, ...]]:
    values = range(bound, -bound - 1, -1)
    return [lam for lam in product(values, repeat=n) if all(a >= b for a, b in zip(lam, lam[1:]))]


@pytest.mark.slow
class TestExhaustiveSweeps:
    @pytest.mark.parametrize("parity", ["odd", "even"])
    @pytest.mark.parametrize("m", [0, 1, 2, 3])
    def test_factorization(self, parity, m):
        for lam in admissible_weights(parity, m, 3):
            if lam:
                assert verify_factorization(parity, lam), lam

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_det_equals_weylsum_and_sigma(self, n):
        for lam in descending(n, 2):
            for family in ("a", "b", "bp", "c", "d"):
                if is_family_dominant(family, lam):
                    assert verify_det_equals_weylsum(family, lam), (family, lam)
            if is_family_dominant("b", lam):
                assert sigma(family_poly("b", lam)) == family_poly("bp", lam).scaled(sigma_sign(lam))
