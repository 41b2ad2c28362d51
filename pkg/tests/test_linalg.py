from fractions import Fraction

import pytest
from twistlab.errors import NotInvertible
from twistlab.linalg import inverse, nullspace, rank, rref, solve, solve_affine
from twistlab.scalar import FieldSpec

Q = FieldSpec.rational()
Q3 = FieldSpec.cyclotomic(3)


class TestSolve:
    def test_unique_solution(self):
        rows = [{0: Q(2), 1: Q(1)}, {0: Q(1), 1: Q(-1)}]
        assert solve(rows, [Q(3), Q(0)], 2, Q) == (Q.one, Q.one)

    def test_inconsistent_system(self):
        rows = [{0: Q(1)}, {0: Q(1)}]
        assert solve_affine(rows, [Q(1), Q(2)], 1, Q) is None

    def test_affine_family(self):
        solution = solve_affine([{0: Q(1), 1: Q(1)}], [Q(1)], 3, Q)
        assert solution.dimension == 2
        assert solution.point == (Q.one, Q.zero, Q.zero)
        for params in [(Q(0), Q(0)), (Q(2), Q(-1)), (Q(Fraction(1, 3)), Q(5))]:
            x = solution.at(params)
            assert x[0] + x[1] == Q.one
        with pytest.raises(ValueError):
            solution.at((Q.one,))

    def test_no_rows(self):
        solution = solve_affine([], [], 2, Q)
        assert solution.dimension == 2
        assert solve([], [], 2, Q) is None

    def test_cyclotomic_coefficients(self):
        z = Q3.zeta_power(1)
        rows = [{0: z, 1: Q3.one}, {1: z}]
        x = solve(rows, [Q3.zero, Q3.one], 2, Q3)
        assert x[1] == Q3.zeta_power(2)
        assert z * x[0] + x[1] == Q3.zero


class TestReduction:
    def test_rref_has_unit_pivots(self):
        basis = rref([{0: Q(2), 2: Q(4)}, {1: Q(3), 2: Q(3)}], 3, Q)
        assert basis == {0: {0: Q.one, 2: Q(2)}, 1: {1: Q.one, 2: Q.one}}

    def test_nullspace(self):
        (direction,) = nullspace([{0: Q(1), 1: Q(-1)}, {1: Q(1), 2: Q(-1)}], 3, Q)
        assert direction == (Q.one, Q.one, Q.one)

    def test_rank(self):
        assert rank([[Q(1), Q(2)], [Q(2), Q(4)]], Q) == 1
        assert rank([[Q(1), Q(0)], [Q(0), Q(1)]], Q) == 2

    def test_inverse(self):
        z = Q3.zeta_power(1)
        m = ((Q3.one, z), (Q3.zero, Q3.one))
        assert inverse(m, Q3) == ((Q3.one, -z), (Q3.zero, Q3.one))

    def test_singular(self):
        with pytest.raises(NotInvertible):
            inverse([[Q(1), Q(2)], [Q(2), Q(4)]], Q)
        with pytest.raises(NotInvertible):
            inverse([[Q(1), Q(2)]], Q)
