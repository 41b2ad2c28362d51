"""Twists, (quasi)triangular structures, weak R-matrices and tensor-product decompositions."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache

from .algebra import (
    BialgebraPresentation,
    LinearMap,
    TensorElement,
    apply_maps,
    comult,
    conjugation_map,
    coopposite,
    elem_inv,
    elem_mul,
    fold,
    interleave,
    is_central,
    leg_comult,
    leg_counit,
    leg_embed,
    op,
    opposite,
    outer,
    tensor_bialgebra,
    unfold,
    unit_element,
    validate_bialgebra,
    validate_morphism,
)
from .errors import (
    InvariantViolation,
    NotCentral,
    NotInvertible,
    SignatureMismatch,
    WrongWeakContext,
)
from .report import ValidationReport

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Twist:
    carrier: BialgebraPresentation
    element: TensorElement
    inverse: TensorElement
    witness: TensorElement | None = None
    report: ValidationReport | None = field(default=None, compare=False, repr=False)

    @classmethod
    def trivial(cls, carrier: BialgebraPresentation) -> Twist:
        one = unit_element((carrier, carrier))
        return cls(carrier, one, one)

    @property
    def is_trivial(self) -> bool:
        return self.element == unit_element((self.carrier, self.carrier))


@dataclass(frozen=True)
class RMatrix:
    carrier: BialgebraPresentation
    element: TensorElement
    inverse: TensorElement
    triangular: bool
    report: ValidationReport | None = field(default=None, compare=False, repr=False)

    @classmethod
    def trivial(cls, carrier: BialgebraPresentation) -> RMatrix:
        """``1 (x) 1``; quasitriangular exactly when the carrier is cocommutative."""
        result = check_triangular(carrier, unit_element((carrier, carrier)))
        if isinstance(result, ValidationReport):
            result.require()
        return result


@dataclass(frozen=True)
class WeakRMatrix:
    left: BialgebraPresentation
    right: BialgebraPresentation
    element: TensorElement
    inverse: TensorElement
    central: bool
    report: ValidationReport | None = field(default=None, compare=False, repr=False)

    @classmethod
    def trivial(cls, left: BialgebraPresentation, right: BialgebraPresentation) -> WeakRMatrix:
        one = unit_element((left, right))
        return cls(left, right, one, one, True)


@dataclass(frozen=True)
class PhiDecomposition:
    f1: TensorElement
    f2: TensorElement
    g: TensorElement
    h: TensorElement
    r: TensorElement

    def to_json(self) -> dict[str, list]:
        return {name: getattr(self, name).to_json() for name in ("f1", "f2", "g", "h", "r")}


@dataclass(frozen=True)
class WeakVariants:
    op_variant: WeakRMatrix
    inv_variant: WeakRMatrix
    op_plain: WeakRMatrix | None = None
    inv_plain: WeakRMatrix | None = None


def _try_inverse(report: ValidationReport, t: TensorElement, hint: TensorElement | None = None):
    one = unit_element(t.factors)
    if hint is not None and hint.factors == t.factors:
        if elem_mul(t, hint) == one and elem_mul(hint, t) == one:
            report.add("invertible", True)
            return hint
    try:
        inverse = elem_inv(t)
    except NotInvertible as e:
        report.add("invertible", False, detail=str(e))
        return None
    report.add("invertible", True)
    return inverse


def _signature(report: ValidationReport, t: TensorElement, *legs: BialgebraPresentation) -> TensorElement | None:
    if t.arity != len(legs) or not all(a.same_algebra(b) for a, b in zip(t.factors, legs)):
        report.add("signature", False, detail=f"expected legs {[p.name for p in legs]}")
        return None
    return t.over(legs)


def check_twist(
    h: BialgebraPresentation, f: TensorElement, *, inverse_hint: TensorElement | None = None
) -> Twist | ValidationReport:
    """Validate ``f`` as a twist on ``h``: invertible, normalized, 2-cocycle."""
    report = ValidationReport(f"twist on {h.name or '?'}")
    f = _signature(report, f, h, h)
    if f is None:
        return report
    inverse = _try_inverse(report, f, inverse_hint)
    one = unit_element((h,))
    report.expect_equal("normalization (ε⊗Id)", [((), leg_counit(f, {1}), one)])
    report.expect_equal("normalization (Id⊗ε)", [((), leg_counit(f, {2}), one)])
    f12 = leg_embed(f, 3, [1, 2])
    f23 = leg_embed(f, 3, [2, 3])
    report.expect_equal(
        "2-cocycle",
        [((), elem_mul(f12, leg_comult(f, 1)), elem_mul(f23, leg_comult(f, 2)))],
    )
    if not report.ok:
        return report
    return Twist(h, f, inverse, report=report)


def require_twist(h: BialgebraPresentation, f: TensorElement, **kwargs) -> Twist:
    result = check_twist(h, f, **kwargs)
    if isinstance(result, ValidationReport):
        result.require()
    return result


def _assert_twist(h: BialgebraPresentation, f: TensorElement, context: str, **kwargs) -> Twist:
    result = check_twist(h, f, **kwargs)
    if isinstance(result, ValidationReport):
        result.assert_ok(context)
    return result


@lru_cache(maxsize=256)
def _twisted(h: BialgebraPresentation, f: TensorElement, f_inv: TensorElement) -> BialgebraPresentation:
    delta = []
    for i in range(h.dim):
        conj = elem_mul(elem_mul(f, TensorElement._make((h, h), h.comult[i])), f_inv)
        delta.append(conj.terms)
    twisted = h.with_comult(delta, f"{h.name}_F")
    if twisted == h:
        return h
    validate_bialgebra(twisted).assert_ok(f"twisted bialgebra {twisted.name}")
    return twisted


def twist_bialgebra(h: BialgebraPresentation, f: Twist) -> BialgebraPresentation:
    """``H_F`` with ``Delta_F = F Delta(-) F^-1``."""
    if not f.carrier.same_algebra(h):
        raise SignatureMismatch(f"twist lives on {f.carrier.name}, not {h.name}")
    return _twisted(h, f.element.over((h, h)), f.inverse.over((h, h)))


def check_quasitriangular(
    h: BialgebraPresentation, r: TensorElement, *, triangular: bool | None = False
) -> RMatrix | ValidationReport:
    """Quasi-cocommutativity, both hexagons, counit legs and QYB.

    ``triangular=True`` also requires ``R^op R = 1``; ``None`` tests it and records the answer in
    ``notes["triangular"]``; ``False`` leaves the flag unset.
    """
    report = ValidationReport(f"{'triangular' if triangular else 'quasitriangular'} structure on {h.name or '?'}")
    r = _signature(report, r, h, h)
    if r is None:
        return report
    inverse = _try_inverse(report, r, op(r) if triangular else None)
    deltas = [TensorElement._make((h, h), h.comult[i]) for i in range(h.dim)]
    report.expect_equal(
        "quasi-cocommutativity",
        (((i,), elem_mul(op(d), r), elem_mul(r, d)) for i, d in enumerate(deltas)),
    )
    r12 = leg_embed(r, 3, [1, 2])
    r13 = leg_embed(r, 3, [1, 3])
    r23 = leg_embed(r, 3, [2, 3])
    report.expect_equal("hexagon (Id⊗Δ)", [((), leg_comult(r, 2), elem_mul(r13, r12))])
    report.expect_equal("hexagon (Δ⊗Id)", [((), leg_comult(r, 1), elem_mul(r13, r23))])
    one = unit_element((h,))
    report.expect_equal("counit (ε⊗Id)", [((), leg_counit(r, {1}), one)])
    report.expect_equal("counit (Id⊗ε)", [((), leg_counit(r, {2}), one)])
    report.expect_equal(
        "quantum Yang-Baxter",
        [((), elem_mul(elem_mul(r12, r13), r23), elem_mul(elem_mul(r23, r13), r12))],
    )
    is_triangular = False
    if triangular:
        is_triangular = report.expect_equal("triangularity", [((), elem_mul(op(r), r), unit_element((h, h)))])
    elif triangular is None:
        is_triangular = elem_mul(op(r), r) == unit_element((h, h))
    if triangular is not False:
        report.notes["triangular"] = is_triangular
    if not report.ok:
        return report
    return RMatrix(h, r, inverse, is_triangular, report=report)


def check_triangular(h: BialgebraPresentation, r: TensorElement) -> RMatrix | ValidationReport:
    return check_quasitriangular(h, r, triangular=True)


def require_rmatrix(h: BialgebraPresentation, r: TensorElement, *, triangular: bool | None = False) -> RMatrix:
    result = check_quasitriangular(h, r, triangular=triangular)
    if isinstance(result, ValidationReport):
        result.require()
    return result


def _assert_rmatrix(
    h: BialgebraPresentation, r: TensorElement, context: str, *, triangular: bool | None = False
) -> RMatrix:
    result = check_quasitriangular(h, r, triangular=triangular)
    if isinstance(result, ValidationReport):
        result.assert_ok(context)
    return result


def twist_rmatrix(r: RMatrix, f: Twist) -> RMatrix:
    """``R_F = F^op R F^-1`` on ``H_F``."""
    if r.carrier != f.carrier:
        raise SignatureMismatch(f"R-matrix on {r.carrier.name} and twist on {f.carrier.name}")
    h_f = twist_bialgebra(r.carrier, f)
    element = elem_mul(elem_mul(op(f.element), r.element), f.inverse).over((h_f, h_f))
    hint = elem_mul(elem_mul(f.element, r.inverse), op(f.inverse)).over((h_f, h_f))
    result = check_quasitriangular(h_f, element, triangular=r.triangular)
    if isinstance(result, ValidationReport):
        result.assert_ok("twisted R-matrix")
    if result.inverse != hint:
        raise InvariantViolation("inverse of the twisted R-matrix disagrees with F R^-1 F^op^-1")
    return result


def twist_by_unit(f: Twist, h: TensorElement) -> Twist:
    """``F^h = (h (x) h) F Delta(h^-1)``, recording ``h`` as the cohomology witness."""
    carrier = f.carrier
    h = h.over((carrier,))
    h_inv = elem_inv(h)
    element = elem_mul(elem_mul(outer(h, h), f.element), comult(h_inv))
    hint = elem_mul(elem_mul(comult(h), f.inverse), outer(h_inv, h_inv))
    twist = _assert_twist(carrier, element, "twist by a unit", inverse_hint=hint)
    return Twist(carrier, twist.element, twist.inverse, witness=h)


def gauge_isomorphism(h: BialgebraPresentation, f: Twist, unit: TensorElement) -> LinearMap:
    """The bialgebra isomorphism ``x -> u x u^-1`` from ``H_F`` to ``H_{F^u}``."""
    source = twist_bialgebra(h, f)
    target = twist_bialgebra(h, twist_by_unit(f, unit))
    hat = conjugation_map(unit.over((h,))).retarget(target, source)
    validate_morphism(hat).assert_ok("gauge isomorphism")
    if not hat.is_invertible():
        raise InvariantViolation("conjugation by a unit is not invertible")
    return hat


def untwist_check(h: BialgebraPresentation, f: Twist) -> bool:
    """If ``F^-1`` is a twist on ``H_F``, assert ``(H_F)_{F^-1} = H``; False when it is not a twist."""
    h_f = twist_bialgebra(h, f)
    back = check_twist(h_f, f.inverse.over((h_f, h_f)), inverse_hint=f.element.over((h_f, h_f)))
    if isinstance(back, ValidationReport):
        return False
    restored = twist_bialgebra(h_f, back)
    if restored != h:
        raise InvariantViolation(f"untwisting {h_f.name} does not give back {h.name}")
    return True


def check_weak_rmatrix(a: BialgebraPresentation, b: BialgebraPresentation, r: TensorElement) -> WeakRMatrix | ValidationReport:
    """Weak hexagons and counit legs for ``R`` in ``A (x) B``."""
    report = ValidationReport(f"weak R-matrix of ({a.name or '?'}, {b.name or '?'})")
    r = _signature(report, r, a, b)
    if r is None:
        return report
    inverse = _try_inverse(report, r)
    abb = (a, b, b)
    aab = (a, a, b)
    report.expect_equal(
        "weak hexagon (Id⊗Δ)",
        [((), leg_comult(r, 2), elem_mul(leg_embed(r, 3, [1, 3], abb), leg_embed(r, 3, [1, 2], abb)))],
    )
    report.expect_equal(
        "weak hexagon (Δ⊗Id)",
        [((), leg_comult(r, 1), elem_mul(leg_embed(r, 3, [1, 3], aab), leg_embed(r, 3, [2, 3], aab)))],
    )
    report.expect_equal("counit (ε⊗Id)", [((), leg_counit(r, {1}), unit_element((b,)))])
    report.expect_equal("counit (Id⊗ε)", [((), leg_counit(r, {2}), unit_element((a,)))])
    if not report.ok:
        return report
    central = is_central(r)
    report.notes["central"] = central
    return WeakRMatrix(a, b, r, inverse, central, report=report)


def _assert_weak(a, b, r, context: str) -> WeakRMatrix:
    result = check_weak_rmatrix(a, b, r)
    if isinstance(result, ValidationReport):
        result.assert_ok(context)
    return result


def pushforward_weak(r: RMatrix, alpha: LinearMap, beta: LinearMap) -> WeakRMatrix:
    """``(alpha (x) beta)(R)`` for bialgebra maps out of the carrier of ``R``."""
    for f in (alpha, beta):
        validate_morphism(f).require()
    element = apply_maps(r.element, [alpha, beta])
    return _assert_weak(alpha.target, beta.target, element, "pushforward of an R-matrix")


def weak_variants(w: WeakRMatrix) -> WeakVariants:
    """``W^op`` over ``(B^op, A^op)`` and ``W^-1`` over ``(A^cop, B^cop)``; also over ``(B, A)``, ``(A, B)`` when central."""
    a, b = w.left, w.right
    flipped = op(w.element)
    b_op, a_op = opposite(b), opposite(a)
    a_cop, b_cop = coopposite(a), coopposite(b)
    op_variant = _assert_weak(b_op, a_op, flipped.on((b_op, a_op)), "W^op")
    inv_variant = _assert_weak(a_cop, b_cop, w.inverse.on((a_cop, b_cop)), "W^-1")
    op_plain = inv_plain = None
    if w.central:
        op_plain = _assert_weak(b, a, flipped, "central W^op")
        inv_plain = _assert_weak(a, b, w.inverse, "central W^-1")
    return WeakVariants(op_variant, inv_variant, op_plain, inv_plain)


def ddr_expand(w: WeakRMatrix) -> TensorElement:
    """``(Delta_A (x) Delta_B)(R)``, asserted equal to ``R_14 R_13 R_24 R_23``."""
    a, b = w.left, w.right
    lhs = leg_comult(leg_comult(w.element, 2), 1)
    legs = (a, a, b, b)
    rhs = unit_element(legs)
    for positions in ([1, 4], [1, 3], [2, 4], [2, 3]):
        rhs = elem_mul(rhs, leg_embed(w.element, 4, positions, legs))
    if lhs != rhs:
        report = ValidationReport("comultiplied weak R-matrix")
        report.expect_equal("(Δ⊗Δ)(R)", [((), lhs, rhs)])
        report.assert_ok()
    return lhs


def _product_legs(h1: BialgebraPresentation, h2: BialgebraPresentation) -> tuple[BialgebraPresentation, ...]:
    return (h1, h2, h1, h2)


def _split(h1: BialgebraPresentation, h2: BialgebraPresentation, element: TensorElement) -> TensorElement:
    product = tensor_bialgebra(h1, h2)
    if element.arity != 2 or not all(p.same_algebra(product) for p in element.factors):
        raise SignatureMismatch(f"expected an element of ({product.name})⊗({product.name})")
    return unfold(element.over((product, product)))


def _middle(w: TensorElement, legs) -> TensorElement:
    """``1 (x) w (x) 1``."""
    return leg_embed(w, 4, [2, 3], legs)


def _phi(h1, h2, element: TensorElement) -> PhiDecomposition:
    split = _split(h1, h2, element)
    f1 = leg_counit(split, {2, 4})
    f2 = leg_counit(split, {1, 3})
    g = leg_counit(split, {2, 3})
    h = leg_counit(split, {1, 4})
    try:
        r = elem_mul(op(g), elem_inv(h))
    except NotInvertible as e:
        raise InvariantViolation(f"the H-component of a twist must be invertible: {e}") from e
    return PhiDecomposition(f1, f2, g, h, r)


def phi_decompose(h1: BialgebraPresentation, h2: BialgebraPresentation, f: Twist) -> PhiDecomposition:
    """The components ``(F_1, F_2, G, H)`` and ``R = G^op H^-1`` of a twist on ``H_1 (x) H_2``."""
    if f.carrier.components != (h1, h2):
        raise SignatureMismatch(f"{f.carrier.name} was not built as the tensor product of {h1.name} and {h2.name}")
    phi = _phi(h1, h2, f.element)
    t1 = _assert_twist(h1, phi.f1, "first component twist")
    t2 = _assert_twist(h2, phi.f2, "second component twist")
    _assert_weak(twist_bialgebra(h2, t2), twist_bialgebra(h1, t1), phi.r, "component weak R-matrix")
    logger.debug("decomposed twist on %s", f.carrier.name)
    return phi


def _canonical(h1, h2, f1: TensorElement, f2: TensorElement, w_inv: TensorElement) -> TensorElement:
    product = tensor_bialgebra(h1, h2)
    legs = _product_legs(h1, h2)
    inner = interleave(f1, f2)
    return fold(elem_mul(_middle(w_inv, legs), inner), (product, product))


def canonical_form_check(h1: BialgebraPresentation, h2: BialgebraPresentation, f: Twist) -> bool:
    """Assert ``F^G = (1 (x) R^-1 (x) 1)(Id (x) tau (x) Id)(F_1 (x) F_2)``."""
    phi = phi_decompose(h1, h2, f)
    product = f.carrier
    g = fold(phi.g, (product,))
    gauged = twist_by_unit(f, g)
    expected = _canonical(h1, h2, phi.f1, phi.f2, elem_inv(phi.r))
    if gauged.element != expected:
        report = ValidationReport("canonical form")
        report.expect_equal("F^G", [((), gauged.element, expected)])
        report.assert_ok()
    return True


def assemble_twist(f1: Twist, f2: Twist, w: WeakRMatrix) -> Twist:
    """``(1 (x) W^-1 (x) 1)(Id (x) tau (x) Id)(F_1 (x) F_2)`` on ``H_1 (x) H_2``."""
    h1, h2 = f1.carrier, f2.carrier
    expected = (twist_bialgebra(h2, f2), twist_bialgebra(h1, f1))
    if (w.left, w.right) != expected:
        raise WrongWeakContext(
            f"weak R-matrix lives on ({w.left.name}, {w.right.name}), expected ({expected[0].name}, {expected[1].name})"
        )
    product = tensor_bialgebra(h1, h2)
    legs = _product_legs(h1, h2)
    element = _canonical(h1, h2, f1.element, f2.element, w.inverse.over((h2, h1)))
    hint = fold(
        elem_mul(interleave(f1.inverse, f2.inverse), _middle(w.element.over((h2, h1)), legs)),
        (product, product),
    )
    return _assert_twist(product, element, "assembled twist", inverse_hint=hint)


def assemble_rmatrix(r1: RMatrix, r2: RMatrix, q: WeakRMatrix) -> RMatrix:
    """``(1 (x) Q (x) 1)(Id (x) tau (x) Id)(R_1 (x) R_2)`` for a central weak ``Q`` of ``(H_2, H_1)``."""
    h1, h2 = r1.carrier, r2.carrier
    if (q.left, q.right) != (h2, h1):
        raise WrongWeakContext(f"Q must be a weak R-matrix of ({h2.name}, {h1.name})")
    if not q.central:
        raise NotCentral("assemble_rmatrix needs a central weak R-matrix")
    product = tensor_bialgebra(h1, h2)
    legs = _product_legs(h1, h2)
    element = fold(elem_mul(_middle(q.element, legs), interleave(r1.element, r2.element)), (product, product))
    triangular = r1.triangular and r2.triangular and flip_inverse_check(q)
    return _assert_rmatrix(product, element, "tensor-product R-matrix", triangular=triangular)


def flip_inverse_check(q: WeakRMatrix) -> bool:
    """``Q^op = Q^-1`` across the product legs: ``Q^op_14 Q_23 = 1`` in ``H_1 (x) H_2 (x) H_1 (x) H_2``."""
    h2, h1 = q.left, q.right
    legs = _product_legs(h1, h2)
    flipped = leg_embed(op(q.element), 4, [1, 4], legs)
    return elem_mul(flipped, _middle(q.element, legs)) == unit_element(legs)


def tensor_rmatrix(r1: RMatrix, r2: RMatrix) -> RMatrix:
    """The standard structure on ``H_1 (x) H_2``."""
    return assemble_rmatrix(r1, r2, WeakRMatrix.trivial(r2.carrier, r1.carrier))


def decompose_rmatrix(h1: BialgebraPresentation, h2: BialgebraPresentation, s: RMatrix) -> tuple[RMatrix, RMatrix, WeakRMatrix]:
    """The triple ``(R_1, R_2, Q)`` with ``Q = H (G^op)^-1``, asserting ``S^G = R_(x)``."""
    if s.carrier.components != (h1, h2):
        raise SignatureMismatch(f"{s.carrier.name} was not built as the tensor product of {h1.name} and {h2.name}")
    phi = _phi(h1, h2, s.element)
    r1 = _assert_rmatrix(h1, phi.f1, "first component R-matrix", triangular=None)
    r2 = _assert_rmatrix(h2, phi.f2, "second component R-matrix", triangular=None)
    q_element = elem_mul(phi.h, elem_inv(op(phi.g)))
    q = _assert_weak(h2, h1, q_element, "component weak R-matrix")
    if not q.central:
        raise InvariantViolation("the weak R-matrix of a quasitriangular tensor product must be central")
    product = s.carrier
    g = fold(phi.g, (product,))
    g_inv = elem_inv(g)
    gauged = elem_mul(elem_mul(outer(g, g), s.element), comult(g_inv))
    expected = assemble_rmatrix(r1, r2, q)
    if gauged != expected.element:
        report = ValidationReport("cohomologous tensor R-matrix")
        report.expect_equal("S^G", [((), gauged, expected.element)])
        report.assert_ok()
    return r1, r2, q


def central_unit_lemma_check(h: BialgebraPresentation, r: RMatrix, unit: TensorElement) -> ValidationReport:
    """Centrality of ``h``, ``R' = (1 (x) 1)^h`` and ``Delta(h)``, and ``R^h`` when both are central."""
    report = ValidationReport(f"central unit on {h.name or '?'}")
    unit = unit.over((h,))
    try:
        unit_inv = elem_inv(unit)
    except NotInvertible as e:
        report.add("invertible", False, detail=str(e))
        return report
    report.add("invertible", True)
    r_prime = elem_mul(outer(unit, unit), comult(unit_inv))
    unit_central = is_central(unit)
    delta_central = is_central(comult(unit))
    r_prime_central = is_central(r_prime)
    report.notes.update(
        {"h central": unit_central, "Δ(h) central": delta_central, "R' central": r_prime_central}
    )
    report.add(
        "h and R' central iff Δ(h) central",
        (unit_central and r_prime_central) == delta_central,
    )
    weak = check_weak_rmatrix(h, h, r_prime)
    report.notes["R' weak"] = not isinstance(weak, ValidationReport)
    if unit_central and not isinstance(weak, ValidationReport) and weak.central:
        gauged = elem_mul(elem_mul(outer(unit, unit), r.element), comult(unit_inv))
        result = check_quasitriangular(h, gauged)
        if isinstance(result, ValidationReport):
            report.extend(result, prefix="R^h ")
        else:
            report.add("R^h quasitriangular", True)
    return report

