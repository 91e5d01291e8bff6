"""Tests for group descriptions, weight systems, branching and spectra."""

from fractions import Fraction

import pytest

from datum.branch import (
    IrrepLabel,
    Spectrum,
    branch_multiplicity,
    bundle_spectrum,
    casimir_eigenvalue,
    decompose,
    enumerate_irreps,
    spectra_equal,
    tau_dimension_datum,
    weight_multiplicities,
    weyl_dimension,
)
from datum.exceptions import BranchingError, DominanceError
from datum.groups import GroupDesc, identity, maximal_torus, theorem_embeddings

SU2 = GroupDesc.parse("SU2")
SU3 = GroupDesc.parse("SU3")
SU6 = GroupDesc.parse("SU6")

STANDARD = (1, 0, 0, 0, 0, 0)
ADJOINT = (1, 0, 0, 0, 0, -1)


class TestGroupDescriptions:
    def test_parse(self):
        group = GroupDesc.parse("Sp1xSO4")
        assert group.name == "Sp1xSO4"
        assert group.rank == 3
        assert group.offsets == [0, 1]

    @pytest.mark.parametrize("text", ["", "E8", "SO5"])
    def test_parse_rejects(self, text):
        with pytest.raises(ValueError):
            GroupDesc.parse(text)

    def test_canonical_su_weight(self):
        assert SU3.canonical((3, 2, 1)) == (2, 1, 0)

    def test_theorem_embeddings_restrict_alike(self):
        h1, h2 = theorem_embeddings(1)
        assert h1.target.name == "U3"
        assert h2.target.name == "Sp1xSO4"
        assert h1.restrict(ADJOINT) == h2.restrict(ADJOINT) == (1, 0, 1)

    def test_torus_kills_center(self):
        assert maximal_torus(SU2).restrict((1, 1)) == (0,)


class TestWeightSystems:
    def test_su2_standard(self):
        assert weight_multiplicities(IrrepLabel.of(SU2, (1, 0))) == {(0, 1): 1, (1, 0): 1}

    def test_su3_adjoint(self):
        irrep = IrrepLabel.of(SU3, (2, 1, 0))
        weights = weight_multiplicities(irrep)
        assert weyl_dimension(SU3, (2, 1, 0)) == 8
        assert sum(weights.values()) == 8
        assert weights[(1, 1, 1)] == 2

    def test_sp1_standard(self):
        sp1 = GroupDesc.parse("Sp1")
        assert weight_multiplicities(IrrepLabel.of(sp1, (1,))) == {(-1,): 1, (1,): 1}

    def test_dimensions(self):
        assert weyl_dimension(SU6, ADJOINT) == 35
        assert weyl_dimension(GroupDesc.parse("SO4"), (1, 0)) == 4

    def test_not_dominant(self):
        with pytest.raises(DominanceError):
            IrrepLabel.of(SU3, (0, 1, 0))

    def test_cache_is_consulted(self, weight_cache):
        irrep = IrrepLabel.of(SU3, (2, 1, 0))
        computed = weight_multiplicities(irrep, weight_cache)
        assert weight_cache.load("SU3", (2, 1, 0)) == computed
        assert weight_multiplicities(irrep, weight_cache) == computed


class TestBranching:
    def test_trivial(self):
        h1, _ = theorem_embeddings(1)
        assert branch_multiplicity(h1, IrrepLabel.trivial(h1.target), IrrepLabel.trivial(SU6)) == 1

    def test_standard_misses_h2_fiber(self):
        _, h2 = theorem_embeddings(1)
        tau = IrrepLabel.of(h2.target, (1, 1, 0))
        assert branch_multiplicity(h2, tau, IrrepLabel.of(SU6, STANDARD)) == 0

    def test_adjoint_has_multiplicity_two_in_both(self):
        h1, h2 = theorem_embeddings(1)
        rho = IrrepLabel.of(SU6, ADJOINT)
        assert branch_multiplicity(h1, IrrepLabel.of(h1.target, (1, 0, -1)), rho) == 2
        assert branch_multiplicity(h2, IrrepLabel.of(h2.target, (1, 1, 0)), rho) == 2

    def test_decomposition_conserves_dimension(self):
        _, h2 = theorem_embeddings(1)
        result = decompose(h2, IrrepLabel.of(SU6, STANDARD))
        assert result.conserved
        assert result.multiplicities == {(0, 1, 0): 1, (1, 0, 0): 1}

    def test_wrong_group(self):
        h1, _ = theorem_embeddings(1)
        with pytest.raises(BranchingError):
            decompose(h1, IrrepLabel.of(SU3, (1, 0, 0)))

    def test_datum_lists_zeros(self):
        h1, _ = theorem_embeddings(1)
        tau = IrrepLabel.of(h1.target, (1, 0, -1))
        datum = dict((rho.highest_weight, k) for rho, k in tau_dimension_datum(h1, tau, 12))
        assert datum[(0, 0, 0, 0, 0, 0)] == 0
        assert datum[SU6.canonical(STANDARD)] == 0
        assert datum[SU6.canonical(ADJOINT)] == 2

    def test_tiny_cutoff_only_sees_trivial(self):
        h1, _ = theorem_embeddings(1)
        datum = tau_dimension_datum(h1, IrrepLabel.trivial(h1.target), Fraction(1, 2))
        assert [(rho.highest_weight, k) for rho, k in datum] == [((0,) * 6, 1)]


class TestCasimir:
    def test_su2(self):
        assert casimir_eigenvalue(IrrepLabel.trivial(SU2)) == 0
        assert casimir_eigenvalue(IrrepLabel.of(SU2, (1, 0))) == Fraction(3, 2)

    @pytest.mark.parametrize("ell", [1, 2, 3])
    def test_integer_spin(self, ell):
        assert casimir_eigenvalue(IrrepLabel.of(SU2, (2 * ell, 0))) == 2 * ell * (ell + 1)

    def test_enumeration_is_sorted_and_bounded(self):
        irreps = enumerate_irreps(SU6, 12)
        values = [casimir_eigenvalue(r) for r in irreps]
        assert values == sorted(values)
        assert max(values) <= 12
        assert IrrepLabel.of(SU6, ADJOINT) in irreps

    def test_cutoff_must_be_positive(self):
        with pytest.raises(ValueError):
            enumerate_irreps(SU2, 0)


class TestSpectra:
    def test_sphere(self):
        torus = maximal_torus(SU2)
        spectrum = bundle_spectrum(torus, IrrepLabel.trivial(torus.target), 30)
        assert spectrum.entries == ((0, 1), (4, 3), (12, 5), (24, 7))

    def test_only_constants_on_the_group_itself(self):
        spectrum = bundle_spectrum(identity(SU2), IrrepLabel.trivial(SU2), 10)
        assert spectrum.entries == ((0, 1),)

    def test_isospectral_bundles(self):
        h1, h2 = theorem_embeddings(1)
        s1 = bundle_spectrum(h1, IrrepLabel.of(h1.target, (1, 0, -1)), 14)
        s2 = bundle_spectrum(h2, IrrepLabel.of(h2.target, (1, 1, 0)), 14)
        assert spectra_equal(s1, s2)
        assert s1.entries

    def test_shifted_spectrum_differs(self):
        s = Spectrum.from_pairs([(Fraction(0), 1), (Fraction(4), 3)], Fraction(30))
        t = Spectrum.from_pairs([(Fraction(0), 1), (Fraction(4), 3), (Fraction(12), 5)], Fraction(30))
        assert spectra_equal(s, s)
        assert not spectra_equal(s, t)

    def test_different_cutoffs_are_rejected(self):
        s = Spectrum.from_pairs([(Fraction(0), 1)], Fraction(30))
        t = Spectrum.from_pairs([(Fraction(0), 1)], Fraction(20))
        with pytest.raises(ValueError):
            spectra_equal(s, t)

    def test_json_round_trip(self):
        s = Spectrum.from_pairs([(Fraction(3, 2), 2), (Fraction(0), 1), (Fraction(3, 2), 2)], Fraction(5))
        assert s.entries == ((0, 1), (Fraction(3, 2), 4))
        assert Spectrum.from_json(s.to_json()) == s
