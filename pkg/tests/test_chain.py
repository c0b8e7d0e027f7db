import pytest

from qclifford import fock
from qclifford.chain import (ChainSpec, VARIANTS, chain_residuals,
                             classical_chain_check, lexicographic_experiment,
                             relabel_copies, scale_copies)
from qclifford.deform import (GeneratorSet, build_deforming_map,
                              relation_residuals, undeformed_set)
from qclifford.rmatrix import build_permutation, build_rhat_sl
from qclifford.scalar import ONE, Q


class TestSpecValidation:
    def test_unknown_variant(self):
        with pytest.raises(ValueError, match="variant"):
            ChainSpec(1, 2, "mixed", build_rhat_sl(2))

    def test_missing_rhat_m(self):
        with pytest.raises(ValueError, match="requires rhat_m"):
            ChainSpec(2, 2, "RM-braided-mixed", build_rhat_sl(2))

    def test_block_dimension_checks(self):
        with pytest.raises(ValueError, match="rhat_n"):
            ChainSpec(2, 2, "diagonal-mixed", build_rhat_sl(3))
        with pytest.raises(ValueError, match="rhat_m"):
            ChainSpec(2, 2, "RM-braided-mixed", build_rhat_sl(2),
                      build_rhat_sl(3))

    def test_total_mode_guard(self):
        with pytest.raises(ValueError, match="total mode count"):
            ChainSpec(3, 3, "diagonal-mixed", build_rhat_sl(3))

    def test_copy_major_flattening(self):
        spec = ChainSpec(2, 3, "diagonal-mixed", build_rhat_sl(3))
        assert spec.flat(1, 1) == 1
        assert spec.flat(1, 3) == 3
        assert spec.flat(2, 1) == 4


class TestDegenerations:
    def test_single_copy_agrees_tuple_for_tuple(self):
        gens = build_deforming_map(2)
        spec = ChainSpec(1, 2, "diagonal-mixed", build_rhat_sl(2))
        chain_reports = chain_residuals(spec, gens)
        single_reports = relation_residuals(gens, build_rhat_sl(2))
        assert len(chain_reports) == len(single_reports) == 12
        for chain_rep, single_rep in zip(chain_reports, single_reports):
            assert chain_rep.indices[:2] == (1, 1)
            assert chain_rep.indices[2:] == single_rep.indices
            assert chain_rep.exact_zero == single_rep.exact_zero
            assert chain_rep.residual == single_rep.residual  # both zero

    @pytest.mark.parametrize("variant", VARIANTS)
    def test_classical_collapse_to_car(self, variant):
        reports = classical_chain_check(2, 2, variant)
        assert len(reports) == 3 * 3 * 4
        assert all(r.exact_zero for r in reports)

    def test_classical_collapse_m4_n1(self):
        assert all(r.exact_zero for r in classical_chain_check(4, 1))

    def test_permutation_variant2_equals_variant1_at_q_one(self):
        # on a deliberately broken set the residuals are nonzero but must
        # coincide between the two variants when rhat_m is the permutation
        broken = undeformed_set(4)
        broken = GeneratorSet(
            4, (fock.zero(4),) + broken.creators[1:], broken.annihilators,
            provenance="user")
        perm2, perm2n = build_permutation(2), build_permutation(2)
        v1 = chain_residuals(
            ChainSpec(2, 2, "diagonal-mixed", perm2n), broken, q_scalar=ONE)
        v2 = chain_residuals(
            ChainSpec(2, 2, "RM-braided-mixed", perm2n, perm2), broken,
            q_scalar=ONE)
        assert any(not r.exact_zero for r in v1)
        for a, b in zip(v1, v2):
            assert a.indices == b.indices
            assert a.residual == b.residual

    def test_relabelling_preserves_verdicts_at_q_one(self):
        gens = undeformed_set(4)
        shifted = relabel_copies(gens, 2, 2, [2, 1])
        spec = ChainSpec(2, 2, "diagonal-mixed", build_permutation(2))
        before = [r.exact_zero for r in chain_residuals(spec, gens, ONE)]
        after = [r.exact_zero for r in chain_residuals(spec, shifted, ONE)]
        assert sorted(before) == sorted(after)
        assert all(after)


@pytest.fixture(scope="module")
def findings():
    return lexicographic_experiment(2, 2)


class TestLexicographicExperiment:
    def test_single_copy_realization_holds(self):
        findings = lexicographic_experiment(1, 2)
        for variant_data in findings["variants"].values():
            assert all(entry["holds"]
                       for entry in variant_data["families"].values())

    def test_report_is_complete(self, findings):
        assert set(findings["variants"]) == set(VARIANTS)
        for variant_data in findings["variants"].values():
            families = variant_data["families"]
            assert set(families) == {"chain-creator", "chain-annihilator",
                                     "chain-mixed"}
            for entry in families.values():
                assert entry["total"] == 3 * 4
                assert isinstance(entry["holds"], bool)
                assert entry["exact_zero"] + len(entry["failing"]) == entry["total"]

    def test_recorded_findings_for_two_by_two(self, findings):
        # observed verdicts of this realization at generic q: intra-copy
        # relation blocks mostly hold, the inter-copy ones do not
        diag = findings["variants"]["diagonal-mixed"]["families"]
        assert sorted(map(tuple, diag["chain-creator"]["failing"])) == [
            (1, 2, 1, 1), (1, 2, 1, 2), (1, 2, 2, 1), (1, 2, 2, 2)]
        assert sorted(map(tuple, diag["chain-annihilator"]["failing"])) == [
            (1, 2, 1, 1), (1, 2, 1, 2), (1, 2, 2, 2)]
        assert sorted(map(tuple, diag["chain-mixed"]["failing"])) == [
            (1, 1, 1, 1), (1, 1, 2, 2), (1, 2, 1, 1), (1, 2, 2, 2)]
        braided = findings["variants"]["RM-braided-mixed"]["families"]
        assert braided["chain-creator"]["failing"] == diag["chain-creator"]["failing"]
        assert len(braided["chain-mixed"]["failing"]) == 10

    def test_misordered_assignment_fails(self):
        gens = relabel_copies(build_deforming_map(4), 2, 2, [2, 1])
        spec = ChainSpec(2, 2, "diagonal-mixed", build_rhat_sl(2))
        reports = chain_residuals(spec, gens)
        assert any(not r.exact_zero for r in reports)
        # the intra-copy blocks survive relabelling, the ordering-sensitive
        # inter-copy creator block changes its failure pattern
        intra = [r for r in reports if r.indices[0] == r.indices[1]
                 and r.family == "chain-creator"]
        assert all(r.exact_zero for r in intra)

    def test_scale_factors_leave_verdicts_unchanged(self, findings):
        scaled = lexicographic_experiment(2, 2, scales=[ONE, Q])
        for variant in VARIANTS:
            for family, entry in findings["variants"][variant]["families"].items():
                scaled_entry = scaled["variants"][variant]["families"][family]
                assert scaled_entry["failing"] == entry["failing"]

    def test_scale_validation(self):
        gens = build_deforming_map(4)
        with pytest.raises(ValueError, match="expected 2"):
            scale_copies(gens, 2, 2, [Q])
        with pytest.raises(ValueError, match="nonzero"):
            scale_copies(gens, 2, 2, [Q, Q - Q])

    def test_relabel_validation(self):
        gens = build_deforming_map(4)
        with pytest.raises(ValueError, match="permutation"):
            relabel_copies(gens, 2, 2, [1, 1])

    def test_experiment_guard(self):
        with pytest.raises(ValueError):
            lexicographic_experiment(4, 2)
