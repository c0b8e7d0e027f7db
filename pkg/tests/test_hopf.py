from fractions import Fraction

import pytest

from qclifford.deform import build_deforming_map, undeformed_set
from qclifford.fock import build_generators, identity, number_op
from qclifford.hopf import (FROZEN_CONVENTION, MIRROR_CONVENTION,
                            act, check_covariance,
                            check_module_algebra, classical_act, classical_js,
                            deformed_js, degree_two_invariant_basis,
                            invariance_check, invariant_from_tensor,
                            invariant_number, verify_I1_identity)
from qclifford.scalar import ONE, Q, parse_rational, q_power


@pytest.fixture(scope="module")
def data():
    return deformed_js()


@pytest.fixture(scope="module")
def lastf2():
    return build_deforming_map(2)


@pytest.fixture(scope="module")
def plain2():
    return undeformed_set(2)


class TestDeformedBilinears:
    def test_defining_relations(self, data):
        E, F, K, Kinv = (data.sigma[n] for n in ("E", "F", "K", "Kinv"))
        assert K * Kinv == identity(2)
        assert K * E * Kinv == E.scale(Q * Q)
        assert K * F * Kinv == F.scale(q_power(-2))
        bracket = E * F - F * E
        assert bracket == (K - Kinv).scale((Q - q_power(-1)) ** -1)

    def test_k_fixes_vacuum(self, data):
        assert data.sigma["K"].column(0) == {0: ONE}

    def test_classical_point_matches_bilinears(self):
        at_one = deformed_js(ONE)
        js = classical_js()
        assert at_one.sigma["E"] == js["j+"]
        assert at_one.sigma["F"] == js["j-"]
        assert at_one.sigma["K"] == identity(2)

    def test_k_derivative_reduces_to_weight(self, data):
        # (sigma(K) - 1)/(q - 1) evaluated at q = 1 is n_1 - n_2 = 2 j0
        js = classical_js()
        ratio = (data.sigma["K"] - identity(2)).scale((Q - ONE) ** -1)
        assert ratio.subst(Fraction(1)) == js["j0"].scale(2)


class TestClassicalBilinears:
    def test_sl2_bracket(self):
        js = classical_js()
        plus, minus, zero_gen = js["j+"], js["j-"], js["j0"]
        assert plus * minus - minus * plus == zero_gen.scale(2)
        assert zero_gen * plus - plus * zero_gen == plus
        assert zero_gen * minus - minus * zero_gen == -minus

    def test_vacuum_annihilated(self):
        assert classical_js()["j0"].column(0) == {}

    def test_raising_action_on_first_excited_state(self):
        # j+ maps the mode-2 one-particle state to the mode-1 one
        assert classical_js()["j+"].column(1) == {2: ONE}

    def test_only_two_modes_supported(self):
        with pytest.raises(ValueError):
            classical_js(3)


class TestAdjointAction:
    def test_k_weight_on_bare_creator(self, data):
        creator = build_generators(2)[0][0]
        assert act("K", creator, data) == creator.scale(Q)

    def test_unit_is_invariant(self, data):
        ident = identity(2)
        for x in ("E", "F", "K"):
            assert act(x, ident, data) == ident.scale(data.counit[x])

    def test_empty_word_acts_as_identity(self, data):
        op = number_op(2, 1)
        assert act((), op, data) == op

    def test_raising_sends_second_creator_to_first(self, data, lastf2):
        assert act("E", lastf2.creators[1], data) == lastf2.creators[0]

    def test_classical_point_is_commutator_action(self):
        at_one = deformed_js(ONE)
        js = classical_js()
        for name, classical in (("E", "j+"), ("F", "j-")):
            for op in (build_generators(2)[0][0], number_op(2, 2)):
                assert act(name, op, at_one) == classical_act(classical, op, js)


class TestModuleAlgebra:
    def test_all_axioms_exactly_zero(self, data, lastf2):
        reports = check_module_algebra(data, lastf2)
        assert len(reports) == 9 * 4 + 3 * 16
        assert all(r.exact_zero for r in reports)

    def test_diagonal_pair_is_trivially_associative(self, data, lastf2):
        reports = check_module_algebra(data, lastf2)
        kk = [r for r in reports
              if r.family == "module-assoc" and r.indices[:2] == ("K", "K")]
        assert kk and all(r.exact_zero for r in kk)

    def test_classical_point_obeys_plain_leibniz(self):
        at_one = deformed_js(ONE)
        gens = build_generators(2)
        a, b = gens[0][0], gens[1][1]
        lhs = act("E", a * b, at_one)
        rhs = act("E", a, at_one) * b + a * act("E", b, at_one)
        assert lhs == rhs


class TestCovariance:
    def test_deformed_generators_transform_exactly(self, data, lastf2):
        reports = check_covariance(lastf2, data)
        assert len(reports) == 12
        assert all(r.exact_zero for r in reports)

    def test_undeformed_generators_fail_generically(self, data, plain2):
        reports = check_covariance(plain2, data)
        assert any(not r.exact_zero for r in reports)

    def test_exactly_one_convention_passes(self, lastf2):
        frozen = deformed_js(convention=FROZEN_CONVENTION)
        mirror = deformed_js(convention=MIRROR_CONVENTION)
        assert all(r.exact_zero for r in check_covariance(lastf2, frozen))
        assert any(not r.exact_zero for r in check_covariance(lastf2, mirror))

    def test_k_rows_use_fundamental_weights(self, data):
        assert data.rho["K"] == ((Q, parse_rational("0")),
                                 (parse_rational("0"), q_power(-1)))

    def test_classical_point_reduces_to_commutator_covariance(self, plain2):
        at_one = deformed_js(ONE)
        reports = check_covariance(plain2, at_one)
        assert all(r.exact_zero for r in reports)


class TestInvariants:
    def test_quadratic_invariants_under_both_actions(self, data, lastf2, plain2):
        i1 = invariant_number(plain2, "I1")
        i1q = invariant_number(lastf2, "I1_q")
        for element in (i1, i1q):
            assert all(r.exact_zero
                       for r in invariance_check(element, data, "deformed"))
            assert all(r.exact_zero
                       for r in invariance_check(element, data, "classical"))

    def test_degree_two_basis_cross_invariance(self, data):
        classical_basis, deformed_basis = degree_two_invariant_basis()
        for element in (*classical_basis, *deformed_basis):
            assert all(r.exact_zero
                       for r in invariance_check(element, data, "deformed")), \
                element.label
            assert all(r.exact_zero
                       for r in invariance_check(element, data, "classical")), \
                element.label

    def test_non_invariant_element_detected(self, data, plain2):
        lone = invariant_from_tensor({(1,): ONE}, plain2, "creators", "adag_1")
        assert any(not r.exact_zero
                   for r in invariance_check(lone, data, "deformed"))

    def test_tensor_builder_validation(self, plain2):
        with pytest.raises(ValueError, match="kind"):
            invariant_from_tensor({(1,): ONE}, plain2, "both")

    def test_invalid_mode_rejected(self, data, plain2):
        element = invariant_number(plain2, "I1")
        with pytest.raises(ValueError, match="mode"):
            invariance_check(element, data, "quantum")


class TestInvariantIdentity:
    def test_exact_zero_two_modes(self, lastf2):
        report = verify_I1_identity(lastf2)
        assert report.exact_zero

    def test_exact_zero_three_modes(self):
        assert verify_I1_identity(build_deforming_map(3)).exact_zero

    def test_doubly_occupied_eigenvalue(self, lastf2):
        i1q = invariant_number(lastf2, "I1_q").expression
        assert i1q.get(3, 3) == parse_rational("(q^2 + 1)/(q^2)")

    def test_vacuum_sector_vanishes(self, lastf2):
        i1q = invariant_number(lastf2, "I1_q").expression
        assert i1q.column(0) == {}

    def test_numeric_spot_check(self, lastf2):
        report = verify_I1_identity(lastf2, q_point=1.3)
        assert report.numeric_max_abs < 1e-12

    def test_classical_point_identity(self, lastf2, plain2):
        deformed_inv = invariant_number(lastf2, "I1_q").expression
        plain_inv = invariant_number(plain2, "I1").expression
        assert deformed_inv.subst(Fraction(1)) == plain_inv

    def test_mode_guard(self):
        with pytest.raises(ValueError):
            verify_I1_identity(build_deforming_map(4))
