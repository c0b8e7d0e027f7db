from fractions import Fraction

import pytest

from qclifford import fock
from qclifford.deform import (GeneratorSet, MapConstructionError,
                              build_deforming_map, build_inverse_map,
                              conjugate_realization, poincare_rank,
                              relation_residuals, star_compatibility,
                              undeformed_set)
from qclifford.fock import build_generators, identity, q_exponent
from qclifford.rmatrix import _rhat_sl_any, build_permutation, build_rhat_sl
from qclifford.scalar import ONE, Q, q_power


@pytest.fixture(scope="module")
def lastf2():
    return build_deforming_map(2)


@pytest.fixture(scope="module")
def plain2():
    return undeformed_set(2)


class TestDeformingMap:
    def test_two_mode_closed_form(self, lastf2):
        gens = build_generators(2)
        dress = q_exponent((0, -1))  # q^(-n_2)
        assert lastf2.creators[0] == dress * gens[0][0]
        assert lastf2.creators[1] == gens[1][0]
        assert lastf2.annihilators[0] == gens[0][1] * dress
        assert lastf2.annihilators[1] == gens[1][1]

    def test_single_mode_is_undeformed(self):
        assert build_deforming_map(1).creators[0] == build_generators(1)[0][0]

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_all_relations_exactly_zero(self, n):
        gens = build_deforming_map(n)
        reports = relation_residuals(gens, _rhat_sl_any(n))
        assert len(reports) == 3 * n * n
        assert all(r.exact_zero for r in reports)

    def test_mixed_relation_coefficient_is_q_minus_two(self, lastf2):
        # A^1 Adag_1 + Adag_1 A^1 - 1 - (q^-2 - 1) Adag_2 A^2 == 0
        a1, ad1 = lastf2.annihilators[0], lastf2.creators[0]
        a2, ad2 = lastf2.annihilators[1], lastf2.creators[1]
        anticommutator = a1 * ad1 + ad1 * a1
        good = anticommutator - identity(2) - (ad2 * a2).scale(q_power(-2) - ONE)
        assert good.is_zero
        # the q^-1 - 1 alternative does not close
        bad = anticommutator - identity(2) - (ad2 * a2).scale(q_power(-1) - ONE)
        assert not bad.is_zero

    def test_reversed_dressing_orientation_fails(self):
        # weights on the modes before i instead of after i
        gens = build_generators(2)
        creators = (gens[0][0], q_exponent((-1, 0)) * gens[1][0])
        annihilators = (gens[0][1], gens[1][1] * q_exponent((-1, 0)))
        wrong = GeneratorSet(2, creators, annihilators, provenance="user")
        reports = relation_residuals(wrong, build_rhat_sl(2))
        assert any(not r.exact_zero for r in reports)

    def test_classical_substitution_recovers_plain_generators(self, lastf2, plain2):
        at_one = lastf2.subst(Fraction(1))
        for built, original in zip(at_one.all_generators(),
                                   plain2.all_generators()):
            assert built == original

    def test_deformed_vacuum_properties(self, lastf2, plain2):
        for a in lastf2.annihilators:
            assert a.column(0) == {}
        for dressed, bare in zip(lastf2.creators, plain2.creators):
            assert dressed.column(0) == bare.column(0)


class TestRelationChecker:
    def test_classical_degeneration(self, plain2):
        reports = relation_residuals(plain2, build_permutation(2), ONE)
        assert all(r.exact_zero for r in reports)

    def test_undeformed_fails_deformed_relations(self, plain2):
        reports = relation_residuals(plain2, build_rhat_sl(2))
        assert any(not r.exact_zero for r in reports)

    def test_dimension_mismatch(self, plain2):
        with pytest.raises(ValueError, match="does not match"):
            relation_residuals(plain2, build_rhat_sl(3))

    def test_report_families_and_indices(self, lastf2):
        reports = relation_residuals(lastf2, build_rhat_sl(2))
        families = {r.family for r in reports}
        assert families == {"creator-creator", "annihilator-annihilator", "mixed"}
        indices = [r.indices for r in reports if r.family == "mixed"]
        assert indices == [(1, 1), (1, 2), (2, 1), (2, 2)]


class TestInverseMap:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_composition_is_identity(self, n):
        inverse = build_inverse_map(n, build_deforming_map(n))
        plain = undeformed_set(n)
        for built, original in zip(inverse.all_generators(),
                                   plain.all_generators()):
            assert built == original
        assert inverse.provenance == "inverse-composition"

    def test_two_mode_matches_printed_form(self, lastf2):
        # [1 + (q - 1) N_2] Adag_1 with N_2 = Adag_2 A^2 reproduces adag_1
        n2 = lastf2.creators[1] * lastf2.annihilators[1]
        rebuilt = (identity(2) + n2.scale(Q - ONE)) * lastf2.creators[0]
        assert rebuilt == build_generators(2)[0][0]

    def test_wrong_input_set_rejected(self, plain2):
        with pytest.raises(MapConstructionError):
            build_inverse_map(2, plain2)


class TestConjugation:
    def test_identity_alpha_is_noop(self, lastf2):
        conj = conjugate_realization(lastf2, identity(2))
        assert conj.creators == lastf2.creators
        assert conj.annihilators == lastf2.annihilators

    def test_relations_preserved(self, lastf2):
        alpha = q_exponent((1, 0))
        conj = conjugate_realization(lastf2, alpha)
        reports = relation_residuals(conj, build_rhat_sl(2))
        assert all(r.exact_zero for r in reports)

    def test_diagonal_alpha_fixes_vacuum(self):
        alpha = q_exponent((1, 0))
        assert alpha.column(0) == {0: ONE}

    def test_singular_alpha_rejected(self, lastf2):
        nilpotent = build_generators(2)[0][0]
        with pytest.raises(ValueError, match="singular"):
            conjugate_realization(lastf2, nilpotent)

    def test_unipotent_alpha_breaks_star(self, lastf2):
        gens = build_generators(2)
        alpha = identity(2) + gens[0][0] * gens[1][1]
        conj = conjugate_realization(lastf2, alpha)
        assert all(r.exact_zero
                   for r in relation_residuals(conj, build_rhat_sl(2)))
        assert not star_compatibility(conj).exact_zero


class TestPoincare:
    @pytest.mark.parametrize("n,expected", [(2, 16), (3, 64)])
    def test_full_rank_both_sets(self, n, expected):
        for gens in (undeformed_set(n), build_deforming_map(n)):
            rank, want = poincare_rank(gens)
            assert (rank, want) == (expected, expected)

    def test_degenerate_set_drops_to_half(self, lastf2):
        crippled = GeneratorSet(
            2, (fock.zero(2), lastf2.creators[1]), lastf2.annihilators,
            provenance="user")
        rank, expected = poincare_rank(crippled)
        assert (rank, expected) == (8, 16)

    def test_numeric_mode_agrees(self, lastf2):
        assert poincare_rank(lastf2, mode="numeric") == (16, 16)

    def test_numeric_mode_four_modes(self):
        rank, expected = poincare_rank(build_deforming_map(4), mode="numeric")
        assert (rank, expected) == (256, 256)

    def test_rank_invariant_under_conjugation(self, lastf2):
        conj = conjugate_realization(lastf2, q_exponent((1, 0)))
        assert poincare_rank(conj) == (16, 16)

    def test_mode_guards(self, lastf2):
        with pytest.raises(ValueError):
            poincare_rank(build_deforming_map(4), mode="exact")
        with pytest.raises(ValueError):
            poincare_rank(lastf2, mode="bogus")


class TestStarCompatibility:
    def test_deforming_map_is_star_compatible(self, lastf2):
        report = star_compatibility(lastf2, q_point=1.5)
        assert report.exact_zero
        assert report.numeric_max_abs == 0.0

    def test_undeformed_is_star_compatible(self, plain2):
        assert star_compatibility(plain2).exact_zero


class TestSerialization:
    def test_generator_set_round_trip(self, lastf2):
        doc = lastf2.to_json()
        again = GeneratorSet.from_json(doc)
        assert again.creators == lastf2.creators
        assert again.annihilators == lastf2.annihilators
        assert again.provenance == lastf2.provenance

    def test_length_validation(self, lastf2):
        with pytest.raises(ValueError, match="length"):
            GeneratorSet(2, lastf2.creators[:1], lastf2.annihilators)

    def test_dimension_validation(self, lastf2):
        with pytest.raises(ValueError, match="dimension"):
            GeneratorSet(2, (identity(1), identity(1)), lastf2.annihilators)
