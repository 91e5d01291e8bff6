"""Tests for root systems, Weyl groups and the theorem configuration."""

import pytest

from datum.exceptions import DominanceError, RootSystemError
from datum.lattice import SignedPermutation
from datum.rootsys import (
    RootSystem,
    delta,
    is_theorem_admissible,
    parse_label,
    sgn,
    simple_roots,
    standard_system,
    theorem_systems,
    theorem_weight,
    validate,
    weyl_group,
)


class TestStandardSystems:
    def test_a_type_uses_all_coordinates(self):
        assert standard_system("A", 2, 0).roots == {(1, -1), (-1, 1)}

    def test_c_one(self):
        assert standard_system("C", 1, 0).roots == {(2,), (-2,)}

    def test_offset(self):
        phi = standard_system("D", 2, 1, rank=3)
        assert phi.roots == {(0, 1, -1), (0, -1, 1), (0, 1, 1), (0, -1, -1)}

    def test_offset_overflow(self):
        with pytest.raises(RootSystemError, match="does not fit"):
            standard_system("B", 3, 1, rank=3)

    def test_positive_system_is_first_nonzero_positive(self):
        phi = standard_system("BC", 2, 0)
        assert (1, -1) in phi.positive
        assert (-1, 1) not in phi.positive
        assert len(phi.positive) * 2 == len(phi.roots)

    def test_reduced_positive_drops_doubles(self):
        phi = standard_system("BC", 1, 0)
        assert phi.reduced_positive == [(1,)]

    def test_labels(self):
        assert parse_label("C1+D2") == [("C", 1, 0), ("D", 2, 1)]
        assert RootSystem.from_label("A2").rank == 3
        with pytest.raises(RootSystemError):
            parse_label("E6")


class TestValidate:
    def test_bc2_is_valid(self):
        ok, problems = validate(standard_system("BC", 2, 0))
        assert ok
        assert problems == []

    def test_non_integral_pair(self):
        phi = RootSystem.from_roots(1, {(1,), (-1,), (3,), (-3,)})
        ok, problems = validate(phi)
        assert not ok
        assert problems

    def test_single_pair(self):
        ok, _ = validate(RootSystem.from_roots(2, {(1, 1), (-1, -1)}))
        assert ok

    def test_zero_root(self):
        ok, problems = validate(RootSystem.from_roots(1, {(0,)}))
        assert not ok
        assert "zero vector" in problems[0]


class TestDeltaAndWeylGroups:
    def test_delta(self):
        assert delta(standard_system("A", 2, 0)) == (1, -1)
        assert delta(RootSystem.empty(2)) == (0, 0)
        assert delta(standard_system("C", 2, 0)) == (4, 2)

    @pytest.mark.parametrize("label,order", [("A1", 2), ("BC2", 8), ("C1+D2", 8), ("A2", 6), ("0", 1)])
    def test_weyl_group_orders(self, label, order):
        assert weyl_group(RootSystem.from_label(label, 3 if label == "0" else None)).order == order

    def test_sign_of_simple_reflection(self):
        phi = standard_system("A", 2, 0)
        assert sgn(phi, SignedPermutation.reflection((1, -1))) == -1
        assert sgn(phi, SignedPermutation.identity(2)) == 1

    def test_simple_roots_of_b2(self):
        assert simple_roots(standard_system("B", 2, 0)) == [(0, 1), (1, -1)]


class TestTheoremConfiguration:
    def test_systems_share_the_lattice(self):
        a_part, cd_part = theorem_systems(1)
        assert a_part.rank == cd_part.rank == 3
        assert len(a_part.roots) == 6
        assert cd_part.roots == {(2, 0, 0), (-2, 0, 0), (0, 1, -1), (0, -1, 1), (0, 1, 1), (0, -1, -1)}

    def test_theorem_weight(self):
        assert theorem_weight((1, 0, -1)) == (1, 1, 0)
        assert theorem_weight((0, 0, 0)) == (0, 0, 0)
        assert theorem_weight((2, 1, 0, -1, -2)) == (2, 1, 2, 1, 0)

    @pytest.mark.parametrize("lam", [(2, 0, -1), (1, 0), (0, 1, 0)])
    def test_inadmissible(self, lam):
        assert not is_theorem_admissible(lam)
        with pytest.raises(DominanceError):
            theorem_weight(lam)
