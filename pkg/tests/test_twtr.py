import random
from fractions import Fraction

import pytest
from twistlab.algebra import (
    LinearMap,
    TensorElement,
    basis_element,
    left_projection,
    right_projection,
    unit_element,
    vector,
)
from twistlab.config import Settings, get_settings
from twistlab.errors import BoundaryMismatch, CompositionMismatch, CounitNotOne, ModeMismatch
from twistlab.report import ValidationReport
from twistlab.scalar import FieldSpec
from twistlab.twist import RMatrix, Twist, check_triangular
from twistlab.twtr import (
    GaugeTransformation,
    OneCellClass,
    TriangularBialgebra,
    TwistedMorphism,
    certify_twisted_tensor_product,
    check_gauge,
    check_twisted_morphism,
    check_u_preserves_products,
    cocommutative_cell,
    compose,
    diagonal,
    gauge_equivalent,
    hcompose,
    identity_2cell,
    identity_cell,
    invert_onecell,
    is_invertible_onecell,
    iso_2cell_check,
    mediating_2cell,
    partial_automorphism,
    product,
    projections,
    tensor_onecells,
    terminal_cell,
    vcompose,
    whisker,
)
from twistlab.zoo import (
    gamma_cell,
    gamma_twist,
    group_algebra,
    sweedler,
    sweedler_cell,
    sweedler_gauge_unit,
    sweedler_morphism,
    sweedler_twist,
)

SCALES = [1, 2, -1]
PARAMETERS = [0, 1, -1, 2, Fraction(1, 2)]


def sign_rmatrix(p) -> RMatrix:
    half = Fraction(1, 2)
    return check_triangular(p, TensorElement((p, p), {(0, 0): half, (0, 1): half, (1, 0): half, (1, 1): -half}))


def cell(s, d, lam) -> TwistedMorphism:
    """``(f_s, F_d)`` out of ``(H, R_lam)`` into the structure the criterion singles out."""
    gamma = Fraction(lam) * Fraction(s) ** 2 - 2 * Fraction(d)
    return sweedler_cell(s, d, lam, gamma)


def target_lambda(c: TwistedMorphism) -> Fraction:
    return 2 * c.target_r.element.coefficient((2, 2)).as_fraction()


def nilpotent_unit(p, t, u):
    """``1 + t x + u gx`` on Sweedler's algebra."""
    return vector(p, {"1": 1, "x": t, "gx": u})


def moved(c: TwistedMorphism, a) -> tuple[TwistedMorphism, GaugeTransformation]:
    """``d(a) o c`` and the 2-cell ``a: c => d(a) o c``."""
    target = TriangularBialgebra(c.target, c.target_r)
    other = compose(partial_automorphism(target, a), c)
    two_cell = check_gauge(a, c, other)
    assert isinstance(two_cell, GaugeTransformation)
    return other, two_cell


class TestTwistedMorphisms:
    @pytest.mark.parametrize("s", SCALES)
    @pytest.mark.parametrize("d", [0, 1])
    @pytest.mark.parametrize("lam", [0, 1, Fraction(1, 2)])
    def test_morphism_criterion(self, s, d, lam):
        matching = Fraction(lam) * s * s - 2 * d
        assert isinstance(sweedler_cell(s, d, lam, matching), TwistedMorphism)
        report = sweedler_cell(s, d, lam, matching + 1)
        assert isinstance(report, ValidationReport)
        assert not report["R-matrix transport"].passed

    def test_plain_mode(self, h4):
        c = check_twisted_morphism(sweedler_morphism(2, h4), sweedler_twist(1, h4))
        assert isinstance(c, TwistedMorphism)
        assert not c.triangular

    def test_both_structures_or_neither(self, h4):
        _, r = sweedler(0)
        with pytest.raises(ModeMismatch):
            check_twisted_morphism(sweedler_morphism(1, h4), Twist.trivial(h4), r, None)

    def test_twist_given_as_element(self, h4):
        c = check_twisted_morphism(LinearMap.identity(h4), TensorElement((h4, h4), {(0, 0): 1, (3, 2): 5}))
        assert isinstance(c, TwistedMorphism)
        assert c.twist.inverse == TensorElement((h4, h4), {(0, 0): 1, (3, 2): -5})

    def test_cocommutative_cell(self, z2):
        c = cocommutative_cell(LinearMap.identity(z2))
        assert c == identity_cell(z2, RMatrix.trivial(z2))


class TestComposition:
    def test_identity_laws(self):
        c = cell(2, 1, 1)
        assert compose(c, identity_cell(c.source, c.source_r)) == c
        assert compose(identity_cell(c.target, c.target_r), c) == c

    def test_composite_twist(self):
        c1, c2 = cell(2, 0, 1), cell(1, 1, 4)
        composite = compose(c2, c1)
        assert composite.f == sweedler_morphism(2)
        assert composite.twist.element == sweedler_twist(1).element
        assert composite.target_r.element == sweedler(2)[1].element

    def test_mismatched_ends(self):
        with pytest.raises(CompositionMismatch):
            compose(cell(1, 0, 1), cell(1, 0, 0))

    def test_mixed_modes(self, h4):
        plain = check_twisted_morphism(LinearMap.identity(h4), Twist.trivial(h4))
        with pytest.raises(CompositionMismatch):
            compose(plain, cell(1, 0, 0))

    def test_random_pastings(self):
        seed = get_settings().seed
        rng = random.Random(seed)
        values = [0, 1, -1, Fraction(1, 2)]
        for n in range(50):
            context = f"seed {seed}, run {n}"
            lam = rng.choice(values)
            c1 = cell(rng.choice(SCALES), rng.choice(values), lam)
            c2 = cell(rng.choice(SCALES), rng.choice(values), target_lambda(c1))
            c3 = cell(rng.choice(SCALES), rng.choice(values), target_lambda(c2))
            assert compose(c3, compose(c2, c1)) == compose(compose(c3, c2), c1), context

            p = c1.target
            units = [nilpotent_unit(p, rng.choice(values), rng.choice(values)) for _ in range(4)]
            c1a, alpha = moved(c1, units[0])
            c1b, alpha2 = moved(c1a, units[1])
            c2a, beta = moved(c2, units[2])
            c2b, beta2 = moved(c2a, units[3])

            assert vcompose(alpha, identity_2cell(c1)) == alpha
            assert vcompose(identity_2cell(c1a), alpha) == alpha
            third = moved(c1b, units[2])[1]
            assert vcompose(vcompose(third, alpha2), alpha) == vcompose(third, vcompose(alpha2, alpha)), context

            left = hcompose(vcompose(beta2, beta), vcompose(alpha2, alpha))
            right = vcompose(hcompose(beta2, alpha2), hcompose(beta, alpha))
            assert left == right, context
            assert whisker(c2, alpha) == hcompose(identity_2cell(c2), alpha)

    def test_vertical_boundary(self):
        c = cell(1, 0, 1)
        _, alpha = moved(c, nilpotent_unit(c.target, 1, 0))
        with pytest.raises(BoundaryMismatch):
            vcompose(alpha, alpha)


def diagonal_pairs():
    """Pairs of triangular 1-cells out of a common triangular bialgebra."""
    z2 = group_algebra([2])
    r_minus = sign_rmatrix(z2)
    p0, r0 = sweedler(0)
    gamma = gamma_cell(2, RMatrix.trivial(gamma_twist(2)[0].carrier))
    return [
        (cell(2, 1, 1), cell(1, 0, 1)),
        (identity_cell(z2, r_minus), terminal_cell(TriangularBialgebra(z2, r_minus))),
        (gamma, identity_cell(gamma.source, gamma.source_r)),
        (cell(-1, 0, 0), terminal_cell(TriangularBialgebra(p0, r0))),
    ]


class TestBinaryProducts:
    @pytest.mark.parametrize("index", range(4))
    def test_projections_recover_the_legs(self, index):
        c1, c2 = diagonal_pairs()[index]
        d = diagonal(c1, c2)
        x1 = TriangularBialgebra(c1.target, c1.target_r)
        x2 = TriangularBialgebra(c2.target, c2.target_r)
        p1, p2 = projections(x1, x2)
        assert d.target == product(x1, x2).carrier
        assert compose(p1, d) == c1
        assert compose(p2, d) == c2

    def test_diagonal_of_projections_is_the_identity(self):
        assert check_u_preserves_products(group_algebra([2]), group_algebra([3]))

    def test_diagonal_needs_triangular_mode(self, h4):
        plain = check_twisted_morphism(LinearMap.identity(h4), Twist.trivial(h4))
        with pytest.raises(ModeMismatch):
            diagonal(plain, plain)

    def test_diagonal_needs_a_common_source(self):
        with pytest.raises(CompositionMismatch):
            diagonal(cell(1, 0, 1), cell(1, 0, 0))

    def test_mediating_2cell(self):
        c1, c2 = cell(2, 1, 1), cell(1, 0, 1)
        a1 = nilpotent_unit(c1.target, 1, 0)
        a2 = nilpotent_unit(c2.target, 0, Fraction(1, 2))
        c1a, g1 = moved(c1, a1)
        c2a, g2 = moved(c2, a2)
        source, target = diagonal(c1, c2), diagonal(c1a, c2a)
        g = mediating_2cell(g1, g2, source, target)
        h1, h2 = c1.target, c2.target
        assert left_projection(h1, h2)(g.a) == a1
        assert right_projection(h1, h2)(g.a) == a2
        assert (g.source, g.target) == (source, target)

    def test_mediating_identity(self):
        c1, c2 = cell(1, 0, 1), cell(1, 1, 1)
        d = diagonal(c1, c2)
        g = mediating_2cell(identity_2cell(c1), identity_2cell(c2), d, d)
        assert g.a == unit_element((d.target,))

    def test_tensor_onecells(self, z2):
        c = tensor_onecells(cell(2, 1, 1), identity_cell(z2, RMatrix.trivial(z2)))
        assert c.triangular
        assert c.source.components[1] == z2


FIXTURES = {
    "sweedler": lambda: [TriangularBialgebra(*sweedler(lam)) for lam in PARAMETERS],
    "z2": lambda: [
        TriangularBialgebra(group_algebra([2]), RMatrix.trivial(group_algebra([2]))),
        TriangularBialgebra(group_algebra([2]), sign_rmatrix(group_algebra([2]))),
    ],
    "z3": lambda: [TriangularBialgebra(group_algebra([3]), RMatrix.trivial(group_algebra([3])))],
    "gamma": lambda: [
        TriangularBialgebra(gamma_twist(2)[0].carrier, RMatrix.trivial(gamma_twist(2)[0].carrier))
    ],
}


class TestTerminalObject:
    @pytest.mark.parametrize("name", sorted(FIXTURES))
    def test_terminal_cell(self, name):
        for x in FIXTURES[name]():
            c = terminal_cell(x)
            assert c.f.matrix == (x.carrier.counit,)
            verdict = gauge_equivalent(c, c)
            assert verdict.status == "equal"
            assert verdict.witness.a == unit_element((c.target,))
            assert verdict.dimension == 0


class TestInvertibility:
    @pytest.mark.parametrize("s", SCALES)
    @pytest.mark.parametrize("d", [0, 1])
    def test_sweedler_inverse(self, s, d):
        c = cell(s, d, 1)
        inverse = invert_onecell(c)
        assert compose(inverse, c) == identity_cell(c.source, c.source_r)
        assert compose(c, inverse) == identity_cell(c.target, c.target_r)
        assert inverse.f == sweedler_morphism(Fraction(1, s))

    def test_gamma_inverse(self):
        c = gamma_cell(2)
        inverse = invert_onecell(c)
        assert inverse.f == c.f
        assert compose(inverse, c) == identity_cell(c.source)

    def test_iso_2cell(self):
        c = cell(2, 1, 1)
        _, two_cell = moved(c, sweedler_gauge_unit(3, c.target))
        assert iso_2cell_check(two_cell)
        x = TriangularBialgebra(*sweedler(1))
        assert not iso_2cell_check(identity_2cell(terminal_cell(x)))
        assert not is_invertible_onecell(terminal_cell(x))

    def test_partial_automorphism_is_multiplicative(self):
        x = TriangularBialgebra(*sweedler(1))
        a = nilpotent_unit(x.carrier, 1, 2)
        samples = [nilpotent_unit(x.carrier, 0, 1), basis_element(x.carrier, "g")]
        assert partial_automorphism(x, a, samples).f.is_invertible()

    def test_partial_automorphism_needs_counit_one(self, h4):
        with pytest.raises(CounitNotOne):
            partial_automorphism(h4, vector(h4, {"1": 2}))


class TestGaugeEquivalence:
    @pytest.mark.parametrize("lam", [0, 1])
    def test_sign_flip_is_conjugation_by_g(self, lam):
        identity, flip = sweedler_cell(1, 0, lam, lam), sweedler_cell(-1, 0, lam, lam)
        verdict = gauge_equivalent(identity, flip)
        assert verdict.status == "equal"
        assert verdict.witness.a == basis_element(identity.target, "g")

    def test_scalings_are_not_equivalent(self):
        verdict = gauge_equivalent(sweedler_cell(1, 0, 0, 0), sweedler_cell(2, 0, 0, 0))
        assert verdict.status == "not_equal"
        assert not verdict

    def test_moved_cells_are_equivalent(self):
        c = cell(2, 1, 1)
        other, _ = moved(c, sweedler_gauge_unit(1, c.target))
        verdict = gauge_equivalent(c, other)
        assert verdict.status == "equal"
        assert isinstance(check_gauge(verdict.witness.a, c, other), GaugeTransformation)

    def test_search_cap(self, z2):
        c = identity_cell(z2, RMatrix.trivial(z2))
        verdict = gauge_equivalent(c, c, Settings(gauge_dim_cap=0))
        assert verdict.status == "unknown"
        assert verdict.dimension == 1
        assert gauge_equivalent(c, c).status == "equal"

    def test_different_endpoints(self):
        with pytest.raises(BoundaryMismatch):
            gauge_equivalent(cell(1, 0, 1), cell(1, 0, 0))

    def test_same_carriers_different_rmatrices(self):
        identity, trivial = sweedler_cell(1, 0, 1, 1), sweedler_cell(1, 0, 0, 0)
        assert identity.source == trivial.source and identity.target == trivial.target
        with pytest.raises(BoundaryMismatch, match="R-matrices"):
            gauge_equivalent(identity, trivial)
        report = check_gauge(unit_element((identity.target,)), identity, trivial)
        assert isinstance(report, ValidationReport)
        assert report.first_failure.name == "endpoints"

    def test_plain_and_triangular_cells_differ(self):
        c = sweedler_cell(1, 0, 1, 1)
        plain = check_twisted_morphism(c.f, c.twist)
        assert isinstance(plain, TwistedMorphism) and not plain.triangular
        with pytest.raises(BoundaryMismatch):
            gauge_equivalent(c, plain)
        assert gauge_equivalent(plain, plain).status == "equal"

    def test_classes(self):
        identity = sweedler_cell(1, 0, 1, 1)
        cls = OneCellClass(identity)
        assert cls.contains(sweedler_cell(-1, 0, 1, 1))
        assert len(cls.witnesses) == 1
        assert cls.compose(cls).representative == identity


class TestTwistedTensorProducts:
    def test_sweedler_with_group_algebra(self, z2):
        lam, s, d = 1, 2, 1
        c1 = cell(s, d, lam)
        c2 = identity_cell(z2, RMatrix.trivial(z2))
        c = tensor_onecells(c1, c2)
        x1 = TriangularBialgebra(c1.target, c1.target_r)
        x2 = TriangularBialgebra(z2, RMatrix.trivial(z2))
        x = product(TriangularBialgebra(c1.source, c1.source_r), x2)
        report = certify_twisted_tensor_product(x, x1, x2, c)
        assert report.ok
        assert report.notes["f1 surjective"] and report.notes["f2 surjective"]
        assert report["diagonal is an invertible 1-cell"].passed
        assert report["2-cell from the diagonal"].passed
        assert report["(f1⊗f2)Δ onto (H1⊗H2)_F"].passed

    def test_twist_not_of_weak_form(self, h4, z2):
        c1 = cell(2, 1, 1)
        c = tensor_onecells(c1, identity_cell(z2, RMatrix.trivial(z2)))
        x1 = TriangularBialgebra(c1.target, c1.target_r)
        x2 = TriangularBialgebra(z2, RMatrix.trivial(z2))
        x = product(TriangularBialgebra(c1.source, c1.source_r), x2)
        prod = c.target
        a = basis_element(prod, prod.index("1⊗1")) + basis_element(prod, prod.index("x⊗g"))
        general, _ = moved(c, a)
        assert general.twist != c.twist
        report = certify_twisted_tensor_product(x, x1, x2, general)
        assert report.ok, report.first_failure
        assert {"diagonal is an invertible 1-cell", "2-cell from the diagonal", "(f1⊗f2)Δ onto (H1⊗H2)_F"} <= set(
            report.names()
        )

    def test_sweedler_with_gamma(self):
        fld = FieldSpec.cyclotomic(2)
        lam, s, d = 1, 2, 1
        p, r_source = sweedler(lam, fld)
        _, r_target = sweedler(fld(lam * s * s - 2 * d), fld)
        c1 = check_twisted_morphism(sweedler_morphism(s, p), sweedler_twist(d, p), r_source, r_target)
        assert isinstance(c1, TwistedMorphism)
        twist, _ = gamma_twist(2)
        c2 = gamma_cell(2, RMatrix.trivial(twist.carrier))
        c = tensor_onecells(c1, c2)
        x1 = TriangularBialgebra(p, r_target)
        x2 = TriangularBialgebra(c2.target, c2.target_r)
        x = product(TriangularBialgebra(p, r_source), TriangularBialgebra(c2.source, c2.source_r))
        assert certify_twisted_tensor_product(x, x1, x2, c).ok

    def test_wrong_target(self, z2):
        x = TriangularBialgebra(*sweedler(1))
        x2 = TriangularBialgebra(z2, RMatrix.trivial(z2))
        report = certify_twisted_tensor_product(x, x, x2, identity_cell(x.carrier, x.r))
        assert not report.ok
        assert not report["target is the product"].passed
