"""Tests for weight lattices and the hyperoctahedral group."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from datum.exceptions import RankMismatchError, RootSystemError
from datum.lattice import (
    SignedPermutation,
    WeylSubgroup,
    average,
    dominant_representative,
    format_weight,
    orbit,
    parse_weight,
)

weights = st.lists(st.integers(-5, 5), min_size=1, max_size=4).map(tuple)


def signed_permutations(n: int) -> st.SearchStrategy[SignedPermutation]:
    return st.builds(
        lambda signs, perm: SignedPermutation(tuple(signs), tuple(perm)),
        st.lists(st.sampled_from([1, -1]), min_size=n, max_size=n),
        st.permutations(list(range(n))),
    )


class TestParsing:
    def test_parse_weight(self):
        assert parse_weight("1,0,-1") == (1, 0, -1)
        assert parse_weight(" 2 ") == (2,)
        assert parse_weight("") == ()

    def test_parse_weight_rejects_garbage(self):
        with pytest.raises(ValueError, match="malformed weight"):
            parse_weight("1,x")

    def test_format_weight(self):
        assert format_weight((3, -1)) == "3,-1"


class TestOrbits:
    def test_fixed_point(self):
        assert orbit(WeylSubgroup.hyperoctahedral(2), (0, 0)) == {(0, 0)}

    def test_sign_flip(self):
        assert orbit(WeylSubgroup.hyperoctahedral(1), (3,)) == {(3,), (-3,)}

    def test_rank_two_orbit(self):
        assert orbit(WeylSubgroup.hyperoctahedral(2), (1, 0)) == {(1, 0), (-1, 0), (0, 1), (0, -1)}

    def test_rank_mismatch(self):
        with pytest.raises(RankMismatchError):
            orbit(WeylSubgroup.hyperoctahedral(2), (1,))

    @pytest.mark.parametrize(
        "lam,expected",
        [((0, -2, 1), (2, 1, 0)), ((0, 0, 0), (0, 0, 0)), ((-1, -1), (1, 1))],
    )
    def test_dominant_representative(self, lam, expected):
        assert dominant_representative(WeylSubgroup.hyperoctahedral(len(lam)), lam) == expected

    def test_average_weights_orbit_uniformly(self):
        shares = average(WeylSubgroup.hyperoctahedral(2), (1, 1))
        assert len(shares) == 4
        assert set(shares.values()) == {Fraction(1, 4)}


class TestGroups:
    @pytest.mark.parametrize("n,order", [(1, 2), (2, 8), (3, 48)])
    def test_hyperoctahedral_order_matches_enumeration(self, n, order):
        group = WeylSubgroup.hyperoctahedral(n)
        assert group.order == order
        assert len(group.elements) == order

    def test_generated_subgroup(self):
        swap = SignedPermutation.reflection((1, -1))
        group = WeylSubgroup.generated_by(2, [swap, swap])
        assert group.order == 2
        assert group.contains(swap)
        assert not group.contains(SignedPermutation.reflection((1, 0)))

    def test_from_images_rejects_non_basis_vectors(self):
        with pytest.raises(RootSystemError):
            SignedPermutation.from_images([(1, 1), (0, 1)])

    @given(signed_permutations(3), signed_permutations(3), st.lists(st.integers(-4, 4), min_size=3, max_size=3))
    def test_action_is_compatible_with_composition(self, g, h, lam):
        lam = tuple(lam)
        assert g.compose(h).act(lam) == g.act(h.act(lam))

    @given(signed_permutations(3), st.lists(st.integers(-4, 4), min_size=3, max_size=3))
    def test_inverse_undoes_action(self, g, lam):
        lam = tuple(lam)
        assert g.inverse().act(g.act(lam)) == lam

    @given(weights)
    def test_dominant_representative_is_orbit_invariant(self, lam):
        group = WeylSubgroup.hyperoctahedral(len(lam))
        key = dominant_representative(group, lam)
        assert all(dominant_representative(group, mu) == key for mu in orbit(group, lam))
