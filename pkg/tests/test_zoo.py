from fractions import Fraction

import pytest
from twistlab.algebra import LinearMap, TensorElement, unit_element, validate_bialgebra, validate_morphism
from twistlab.errors import CapExceeded, SignatureMismatch, ZeroScale
from twistlab.scalar import FieldSpec
from twistlab.twist import RMatrix, require_rmatrix, twist_rmatrix
from twistlab.twtr import TwistedMorphism
from twistlab.zoo import (
    ExampleRequest,
    brute_force_rmatrices,
    gamma_cell,
    gamma_twist,
    group_algebra,
    sweedler_morphism,
    sweedler_presentation,
    sweedler_rmatrix,
)


class TestGammaTwist:
    @pytest.mark.parametrize("n", [2, 3])
    def test_twist_and_swap(self, n):
        twist, swap = gamma_twist(n)
        assert twist.carrier.dim == n * n
        assert twist.carrier.field == FieldSpec.cyclotomic(n)
        assert validate_morphism(swap).ok
        assert swap.is_invertible()
        assert swap.compose(swap) == LinearMap.identity(twist.carrier)

    def test_cells_for_every_brute_forced_structure(self):
        twist, _ = gamma_twist(2)
        solutions = brute_force_rmatrices(twist.carrier)
        assert len(solutions) > 1
        for r in solutions:
            cell = gamma_cell(2, r)
            assert isinstance(cell, TwistedMorphism)
            assert cell.triangular
            assert cell.target_r.triangular == r.triangular

    def test_order_three_with_trivial_structure(self):
        twist, _ = gamma_twist(3)
        cell = gamma_cell(3, RMatrix.trivial(twist.carrier))
        assert cell.target_r.triangular

    def test_order_three_with_twisted_structure(self):
        twist, _ = gamma_twist(3)
        p = twist.carrier
        twisted = twist_rmatrix(RMatrix.trivial(p), twist)
        r = require_rmatrix(p, twisted.element.over((p, p)), triangular=True)
        assert r.element != unit_element((p, p))
        cell = gamma_cell(3, r)
        assert cell.target_r.triangular
        assert cell.target_r.element != unit_element((p, p))

    def test_order_three_exceeds_the_ansatz_cap(self):
        twist, _ = gamma_twist(3)
        with pytest.raises(CapExceeded):
            brute_force_rmatrices(twist.carrier)

    def test_order_one_rejected(self):
        with pytest.raises(SignatureMismatch):
            gamma_twist(1)


class TestOracle:
    def test_cyclic_group_of_order_two(self):
        z2 = group_algebra([2])
        half = Fraction(1, 2)
        r_minus = TensorElement((z2, z2), {(0, 0): half, (0, 1): half, (1, 0): half, (1, 1): -half})
        solutions = brute_force_rmatrices(z2)
        assert {r.element for r in solutions} == {unit_element((z2, z2)), r_minus}
        assert all(r.triangular for r in solutions)
        assert not solutions.families

    def test_cyclic_group_of_order_three_over_rationals(self):
        z3 = group_algebra([3])
        solutions = brute_force_rmatrices(z3)
        assert [r.element for r in solutions] == [unit_element((z3, z3))]

    def test_sweedler_is_a_one_parameter_family(self):
        p = sweedler_presentation()
        solutions = brute_force_rmatrices(p)
        assert solutions.families
        assert all(family.dimension == 1 for family in solutions.families)
        for family in solutions.families:
            for value in (0, 1, -3, Fraction(1, 2)):
                member = family.at([value])
                assert isinstance(member, RMatrix)
                assert member.triangular
                lam = 2 * member.element.coefficient((2, 2))
                assert member.element == sweedler_rmatrix(lam, p)
        for r in solutions:
            assert r.element == sweedler_rmatrix(2 * r.element.coefficient((2, 2)), p)

    def test_cap(self):
        with pytest.raises(CapExceeded):
            brute_force_rmatrices(group_algebra([2]), ansatz_dim_cap=3)


class TestFixtures:
    def test_sweedler_morphism_needs_nonzero_scale(self):
        with pytest.raises(ZeroScale):
            sweedler_morphism(0)

    def test_sweedler_request(self):
        fixture = ExampleRequest("sweedler", lam="1/2", d="1", s="2").build()
        assert set(fixture.elements) == {"R", "F"}
        assert fixture.morphisms["f"][1] == "F"
        assert fixture.elements["R"] == sweedler_rmatrix(Fraction(1, 2), fixture.presentation)

    def test_group_algebra_request(self):
        fixture = ExampleRequest("group_algebra", orders=(3, 3), field="cyclotomic:3").build()
        assert fixture.presentation.dim == 9
        assert validate_bialgebra(fixture.presentation).ok

    def test_base_field_request(self):
        assert ExampleRequest("base_field").build().presentation.dim == 1

    def test_gamma_request(self):
        fixture = ExampleRequest("gamma_twist", n=2).build()
        assert set(fixture.elements) == {"R", "F"}
        assert "f" in fixture.morphisms

