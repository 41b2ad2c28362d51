"""The 2-categories of twisted morphisms (Tw) and of triangular bialgebras (TwTr).

A ``TwistedMorphism`` is a pair ``(f, F)``: a twist ``F`` on the target
``H'`` and a bialgebra map ``f: H -> H'_F``. Carrying R-matrices on both
ends puts it in triangular mode.
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from typing import Literal

from .algebra import (
    BialgebraPresentation,
    LinearMap,
    TensorElement,
    apply_maps,
    base_field,
    basis_element,
    comult,
    conjugation_map,
    counit_map,
    counit_value,
    elem_inv,
    elem_mul,
    fold,
    interleave,
    is_central,
    is_cocommutative,
    is_invertible,
    leg_counit,
    leg_embed,
    left_projection,
    op,
    outer,
    product_element,
    right_projection,
    tensor_bialgebra,
    unfold,
    unit_element,
    validate_morphism,
)
from .config import Settings, get_settings
from .errors import (
    BoundaryMismatch,
    CompositionMismatch,
    CounitNotOne,
    InvariantViolation,
    ModeMismatch,
    NotTriangular,
    ProjectionMismatch,
    SignatureMismatch,
)
from .linalg import AffineSolution, solve_affine
from .report import ValidationReport
from .twist import RMatrix, Twist, check_triangular, check_twist, tensor_rmatrix, twist_bialgebra, twist_by_unit

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TriangularBialgebra:
    """A 0-cell of TwTr: a bialgebra with a triangular structure."""

    carrier: BialgebraPresentation
    r: RMatrix

    def __post_init__(self):
        if self.r.carrier != self.carrier:
            raise SignatureMismatch(f"R-matrix lives on {self.r.carrier.name}, not {self.carrier.name}")
        if not self.r.triangular:
            raise NotTriangular(f"R-matrix on {self.carrier.name} is not triangular")

    @classmethod
    def of(cls, carrier: BialgebraPresentation, element: TensorElement) -> TriangularBialgebra:
        result = check_triangular(carrier, element)
        if isinstance(result, ValidationReport):
            result.require()
        return cls(carrier, result)


@dataclass(frozen=True, eq=False)
class TwistedMorphism:
    f: LinearMap
    twist: Twist
    source_r: RMatrix | None = None
    target_r: RMatrix | None = None
    report: ValidationReport | None = field(default=None, compare=False, repr=False)

    @property
    def source(self) -> BialgebraPresentation:
        return self.f.source

    @property
    def target(self) -> BialgebraPresentation:
        return self.twist.carrier

    @property
    def triangular(self) -> bool:
        return self.source_r is not None

    def _key(self) -> tuple:
        return (
            self.source,
            self.target,
            self.f.matrix,
            self.twist.element,
            None if self.source_r is None else self.source_r.element,
            None if self.target_r is None else self.target_r.element,
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TwistedMorphism):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def to_json(self) -> dict:
        return {"matrix": self.f.to_json(), "twist": self.twist.element.to_json()}


@dataclass(frozen=True)
class GaugeTransformation:
    """A 2-cell ``a: source => target``."""

    source: TwistedMorphism
    target: TwistedMorphism
    a: TensorElement
    report: ValidationReport | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class GaugeVerdict:
    status: Literal["equal", "not_equal", "unknown"]
    witness: GaugeTransformation | None = None
    dimension: int | None = None

    def __bool__(self) -> bool:
        return self.status == "equal"


def check_twisted_morphism(
    f: LinearMap,
    twist: Twist | TensorElement,
    source_r: RMatrix | None = None,
    target_r: RMatrix | None = None,
) -> TwistedMorphism | ValidationReport:
    """Validate ``(f, F)``: a counital algebra map intertwining ``Delta`` and ``Delta'_F``."""
    if (source_r is None) != (target_r is None):
        raise ModeMismatch("give R-matrices for both ends or for neither")
    report = ValidationReport(f"twisted morphism {f.source.name} -> {f.target.name}")
    if isinstance(twist, TensorElement):
        checked = check_twist(f.target, twist)
        if isinstance(checked, ValidationReport):
            report.extend(checked, prefix="twist ")
            return report
        twist = checked
    target = twist.carrier
    if not f.target.same_algebra(target):
        raise SignatureMismatch(f"map into {f.target.name} paired with a twist on {target.name}")
    f = f.retarget(target)
    source = f.source
    if source_r is not None:
        if source_r.carrier != source or target_r.carrier != target:
            raise SignatureMismatch("R-matrices must live on the source and target")

    images = [f(basis_element(source, j)) for j in range(source.dim)]
    report.expect_equal(
        "multiplicative",
        (
            ((i, j), f(product_element(source, i, j)), elem_mul(images[i], images[j]))
            for i, j in itertools.product(range(source.dim), repeat=2)
        ),
    )
    report.expect_equal("unital", [((), f(unit_element((source,))), unit_element((target,)))])
    report.expect_equal(
        "counital", (((j,), counit_value(images[j]), source.counit[j]) for j in range(source.dim))
    )
    report.expect_equal(
        "intertwining",
        (
            (
                (j,),
                f(TensorElement._make((source, source), source.comult[j])),
                elem_mul(elem_mul(twist.element, comult(images[j])), twist.inverse),
            )
            for j in range(source.dim)
        ),
    )
    if source_r is not None:
        report.expect_equal(
            "R-matrix transport",
            [
                (
                    (),
                    f(source_r.element),
                    elem_mul(elem_mul(op(twist.element), target_r.element), twist.inverse),
                )
            ],
        )
    if not report.ok:
        return report
    return TwistedMorphism(f, twist, source_r, target_r, report=report)


def require_cell(f, twist, source_r=None, target_r=None) -> TwistedMorphism:
    result = check_twisted_morphism(f, twist, source_r, target_r)
    if isinstance(result, ValidationReport):
        result.require()
    return result


def _assert_cell(f, twist, source_r, target_r, context: str) -> TwistedMorphism:
    result = check_twisted_morphism(f, twist, source_r, target_r)
    if isinstance(result, ValidationReport):
        result.assert_ok(context)
    return result


def _twist_with_hint(carrier: BialgebraPresentation, element: TensorElement, hint: TensorElement, context: str) -> Twist:
    result = check_twist(carrier, element, inverse_hint=hint)
    if isinstance(result, ValidationReport):
        result.assert_ok(context)
    return result


def identity_cell(h: BialgebraPresentation, r: RMatrix | None = None) -> TwistedMorphism:
    return TwistedMorphism(LinearMap.identity(h), Twist.trivial(h), r, r)


def compose(g: TwistedMorphism, f: TwistedMorphism) -> TwistedMorphism:
    """``(f', F') o (f, F) = (f' f, (f' (x) f')(F) F')``."""
    if f.target != g.source:
        raise CompositionMismatch(f"cannot compose a cell into {f.target.name} with one out of {g.source.name}")
    if f.triangular != g.triangular:
        raise CompositionMismatch("cannot compose a triangular cell with a plain one")
    if f.triangular and f.target_r.element != g.source_r.element:
        raise CompositionMismatch("the middle R-matrices differ")
    element = elem_mul(g.f(f.twist.element), g.twist.element)
    hint = elem_mul(g.twist.inverse, g.f(f.twist.inverse))
    twist = _twist_with_hint(g.target, element, hint, "composite twist")
    return _assert_cell(g.f.compose(f.f), twist, f.source_r, g.target_r, "composite cell")


def _same_boundary(c1: TwistedMorphism, c2: TwistedMorphism) -> bool:
    if c1.source != c2.source or c1.target != c2.target or c1.triangular != c2.triangular:
        return False
    return not c1.triangular or (
        c1.source_r.element == c2.source_r.element and c1.target_r.element == c2.target_r.element
    )


def check_gauge(a: TensorElement, source: TwistedMorphism, target: TwistedMorphism) -> GaugeTransformation | ValidationReport:
    """Validate ``a`` as a 2-cell ``source => target``."""
    report = ValidationReport(f"gauge transformation on {source.target.name}")
    if not _same_boundary(source, target):
        report.add("endpoints", False, detail="the two cells must share source, target and R-matrices")
        return report
    h = source.target
    if a.arity != 1 or not a.factors[0].same_algebra(h):
        report.add("signature", False, detail=f"expected an element of {h.name}")
        return report
    a = a.over((h,))
    report.expect_equal("counit", [((), counit_value(a), h.field.one)])
    aa = outer(a, a)
    report.expect_equal(
        "(a⊗a)F = F'Δ'(a)",
        [((), elem_mul(aa, source.twist.element), elem_mul(target.twist.element, comult(a)))],
    )
    src = source.source
    report.expect_equal(
        "a·f(x) = f'(x)·a",
        (
            (
                (j,),
                elem_mul(a, source.f(basis_element(src, j))),
                elem_mul(target.f(basis_element(src, j)), a),
            )
            for j in range(src.dim)
        ),
    )
    if not report.ok:
        return report
    if source.triangular and target.triangular:
        r_prime = source.target_r.element
        r_f = elem_mul(elem_mul(op(source.twist.element), r_prime), source.twist.inverse)
        r_f2 = elem_mul(elem_mul(op(target.twist.element), r_prime), target.twist.inverse)
        if elem_mul(aa, r_f) != elem_mul(r_f2, aa):
            raise InvariantViolation("gauge transformation does not respect the twisted R-matrices", report)
    return GaugeTransformation(source, target, a, report=report)


def _assert_gauge(a, source, target, context: str) -> GaugeTransformation:
    result = check_gauge(a, source, target)
    if isinstance(result, ValidationReport):
        result.assert_ok(context)
    return result


def identity_2cell(c: TwistedMorphism) -> GaugeTransformation:
    return GaugeTransformation(c, c, unit_element((c.target,)))


def vcompose(a: GaugeTransformation, b: GaugeTransformation) -> GaugeTransformation:
    """``a o_v b = ab`` for ``b: f => f'`` and ``a: f' => f''``."""
    if b.target != a.source:
        raise BoundaryMismatch("vertical composition needs the target of b to be the source of a")
    return _assert_gauge(elem_mul(a.a, b.a), b.source, a.target, "vertical composite")


def hcompose(a: GaugeTransformation, b: GaugeTransformation) -> GaugeTransformation:
    """``a o_h b = a g(b)`` for ``b: f => f'`` and ``a: g => g'``."""
    if b.source.target != a.source.source:
        raise BoundaryMismatch("horizontal composition needs b to end where a starts")
    element = elem_mul(a.a, a.source.f(b.a))
    return _assert_gauge(
        element, compose(a.source, b.source), compose(a.target, b.target), "horizontal composite"
    )


def whisker(g: TwistedMorphism, b: GaugeTransformation) -> GaugeTransformation:
    """``g(b): g o f => g o f'``."""
    return hcompose(identity_2cell(g), b)


def product(x1: TriangularBialgebra, x2: TriangularBialgebra) -> TriangularBialgebra:
    """``(H_1 (x) H_2, tilde-R)``."""
    return TriangularBialgebra(tensor_bialgebra(x1.carrier, x2.carrier), tensor_rmatrix(x1.r, x2.r))


def tensor_onecells(c1: TwistedMorphism, c2: TwistedMorphism) -> TwistedMorphism:
    """``(f_1 (x) f_2, (Id (x) tau (x) Id)(F_1 (x) F_2))`` between the product objects."""
    if not (c1.triangular and c2.triangular):
        raise ModeMismatch("1-cells are tensored in triangular mode")
    f = c1.f.kron(c2.f)
    prod = f.target
    element = fold(interleave(c1.twist.element, c2.twist.element), (prod, prod))
    hint = fold(interleave(c1.twist.inverse, c2.twist.inverse), (prod, prod))
    twist = _twist_with_hint(prod, element, hint, "tensored twist")
    return _assert_cell(
        f,
        twist,
        tensor_rmatrix(c1.source_r, c2.source_r),
        tensor_rmatrix(c1.target_r, c2.target_r),
        "tensored 1-cell",
    )


def _projection_cells(
    h1: BialgebraPresentation, h2: BialgebraPresentation, r: RMatrix | None
) -> tuple[TwistedMorphism, TwistedMorphism]:
    cells = []
    for p, target in ((left_projection(h1, h2), h1), (right_projection(h1, h2), h2)):
        target_r = None
        if r is not None:
            image = p(r.element)
            target_r = check_triangular(target, image)
            if isinstance(target_r, ValidationReport):
                target_r.assert_ok("projected R-matrix")
        cells.append(_assert_cell(p, Twist.trivial(target), r, target_r, "projection"))
    return cells[0], cells[1]


def projections(x1: TriangularBialgebra, x2: TriangularBialgebra) -> tuple[TwistedMorphism, TwistedMorphism]:
    """``(Id (x) epsilon, 1 (x) 1)`` and ``(epsilon (x) Id, 1 (x) 1)`` out of the product."""
    prod = product(x1, x2)
    p1, p2 = _projection_cells(x1.carrier, x2.carrier, prod.r)
    for cell, x in ((p1, x1), (p2, x2)):
        if cell.target_r.element != x.r.element:
            raise InvariantViolation(f"projection of tilde-R onto {x.carrier.name} is not its R-matrix")
    return p1, p2


def _split_product(c: TwistedMorphism) -> tuple[BialgebraPresentation, BialgebraPresentation]:
    if len(c.target.components) != 2:
        raise BoundaryMismatch(f"{c.target.name} is not a tensor product")
    return c.target.components


def diagonal(c1: TwistedMorphism, c2: TwistedMorphism) -> TwistedMorphism:
    """``((f_1 (x) f_2) Delta, (1 (x) (f_2 (x) f_1)(S^-1) (x) 1)(Id (x) tau (x) Id)(F_1 (x) F_2))``."""
    if not (c1.triangular and c2.triangular):
        raise ModeMismatch("the diagonal is formed in triangular mode")
    if c1.source != c2.source or c1.source_r.element != c2.source_r.element:
        raise CompositionMismatch("the two cells must leave the same triangular bialgebra")
    s = c1.source_r
    h = c1.source
    if not s.triangular:
        raise NotTriangular(f"the structure on {h.name} is not triangular")
    h1, h2 = c1.target, c2.target
    prod = tensor_bialgebra(h1, h2)
    legs = (h1, h2, h1, h2)
    images = [
        fold(apply_maps(comult(basis_element(h, j)), [c1.f, c2.f]), (prod,)) for j in range(h.dim)
    ]
    f = LinearMap.from_images(h, prod, images)
    middle = leg_embed(apply_maps(s.inverse, [c2.f, c1.f]), 4, [2, 3], legs)
    middle_inv = leg_embed(apply_maps(s.element, [c2.f, c1.f]), 4, [2, 3], legs)
    element = fold(elem_mul(middle, interleave(c1.twist.element, c2.twist.element)), (prod, prod))
    hint = fold(elem_mul(interleave(c1.twist.inverse, c2.twist.inverse), middle_inv), (prod, prod))
    twist = _twist_with_hint(prod, element, hint, "diagonal twist")
    cell = _assert_cell(f, twist, s, tensor_rmatrix(c1.target_r, c2.target_r), "diagonal")
    p1, p2 = _projection_cells(h1, h2, cell.target_r)
    if compose(p1, cell) != c1 or compose(p2, cell) != c2:
        raise InvariantViolation("projections of the diagonal do not recover its legs")
    return cell


def _g_component(c: TwistedMorphism) -> TensorElement:
    return fold(leg_counit(unfold(c.twist.element), {2, 3}), (c.target,))


def _gauge_space(
    source: TwistedMorphism,
    target: TwistedMorphism,
    extra_rows: Sequence[dict] = (),
    extra_rhs: Sequence = (),
) -> AffineSolution | None:
    """Solutions of the linear gauge conditions ``epsilon'(a) = 1`` and ``a f(x) = f'(x) a``."""
    h = source.target
    fld = h.field
    n = h.dim
    rows: list[dict] = [{j: c for j, c in enumerate(h.counit) if c}]
    rhs = [fld.one]
    src = source.source
    for x in range(src.dim):
        fx = source.f(basis_element(src, x))
        gx = target.f(basis_element(src, x))
        block: list[dict] = [{} for _ in range(n)]
        for j in range(n):
            e = basis_element(h, j)
            for (k,), v in (elem_mul(e, fx) - elem_mul(gx, e)).terms.items():
                block[k][j] = v
        rows.extend(block)
        rhs.extend([fld.zero] * n)
    rows.extend(extra_rows)
    rhs.extend(extra_rhs)
    return solve_affine(rows, rhs, n, fld)


def _element_of(h: BialgebraPresentation, values: Sequence) -> TensorElement:
    return TensorElement._make((h,), {(j,): v for j, v in enumerate(values) if v})


def _grid_points(space: AffineSolution, settings: Settings) -> Iterator[tuple]:
    fld_values = [space.point[0].field(v) for v in settings.gauge_grid]
    for params in itertools.product(fld_values, repeat=space.dimension):
        yield space.at(params)


def _quadratic_holds(a: TensorElement, source: TwistedMorphism, target: TwistedMorphism) -> bool:
    return elem_mul(outer(a, a), source.twist.element) == elem_mul(target.twist.element, comult(a))


def _projection_rows(p: LinearMap, value: TensorElement) -> tuple[list[dict], list]:
    rows = [{j: p.matrix[k][j] for j in range(p.source.dim) if p.matrix[k][j]} for k in range(p.target.dim)]
    return rows, [value.coefficient((k,)) for k in range(p.target.dim)]


def mediating_2cell(
    g1: GaugeTransformation,
    g2: GaugeTransformation,
    source: TwistedMorphism,
    target: TwistedMorphism,
    alternatives: Iterable[TensorElement] = (),
    settings: Settings | None = None,
) -> GaugeTransformation:
    """``g = G'^-1 (g_1 (x) g_2) G`` with ``G = (Id (x) epsilon (x) epsilon (x) Id)(F)``."""
    settings = settings or get_settings()
    if source.target != target.target or source.source != target.source:
        raise BoundaryMismatch("the two cells into the product must share their endpoints")
    h1, h2 = _split_product(source)
    p1, p2 = _projection_cells(h1, h2, source.target_r)
    for name, g, p in (("g1", g1, p1), ("g2", g2, p2)):
        expected = (compose(p, source), compose(p, target))
        if (g.source, g.target) != expected:
            raise ProjectionMismatch(f"{name} is not a 2-cell between the projected cells")
        if isinstance(check_gauge(g.a, g.source, g.target), ValidationReport):
            raise ProjectionMismatch(f"{name} fails the gauge axioms")
    prod = source.target
    big_g = _g_component(source)
    big_g_prime = _g_component(target)
    element = elem_mul(elem_mul(elem_inv(big_g_prime), fold(outer(g1.a, g2.a), (prod,))), big_g)
    cell = _assert_gauge(element, source, target, "mediating 2-cell")
    left, right = left_projection(h1, h2), right_projection(h1, h2)
    if left(cell.a) != g1.a.over((h1,)) or right(cell.a) != g2.a.over((h2,)):
        raise InvariantViolation("the mediating 2-cell does not project to its inputs")

    for alt in alternatives:
        checked = check_gauge(alt, source, target)
        if isinstance(checked, ValidationReport):
            continue
        if left(checked.a) == g1.a and right(checked.a) == g2.a and checked.a != cell.a:
            raise InvariantViolation("a second 2-cell has the same projections")

    rows1, rhs1 = _projection_rows(left, g1.a)
    rows2, rhs2 = _projection_rows(right, g2.a)
    space = _gauge_space(source, target, rows1 + rows2, rhs1 + rhs2)
    if space is None:
        raise InvariantViolation("the mediating 2-cell violates its own linear constraints")
    if space.dimension <= settings.gauge_dim_cap:
        for values in _grid_points(space, settings):
            candidate = _element_of(prod, values)
            if _quadratic_holds(candidate, source, target) and candidate != cell.a:
                raise InvariantViolation("a second 2-cell has the same projections")
    logger.debug("mediating 2-cell candidate space has dimension %d", space.dimension)
    return cell


def terminal_cell(x: TriangularBialgebra) -> TwistedMorphism:
    """``(epsilon, 1 (x) 1): (H, R) -> (k, 1 (x) 1)``, with its only gauge endomorphism."""
    h = x.carrier
    k = base_field(h.field)
    cell = _assert_cell(counit_map(h), Twist.trivial(k), x.r, RMatrix.trivial(k), "terminal cell")
    if cell.f.matrix != (tuple(h.counit),):
        raise InvariantViolation("a counital map into k must be the counit")
    space = _gauge_space(cell, cell)
    one = unit_element((k,))
    if space is None or space.dimension or _element_of(k, space.point) != one:
        raise InvariantViolation("the terminal cell has a gauge endomorphism other than 1")
    _assert_gauge(one, cell, cell, "identity 2-cell on the terminal cell")
    return cell


def is_invertible_onecell(c: TwistedMorphism) -> bool:
    return c.f.is_invertible()


def invert_onecell(c: TwistedMorphism) -> TwistedMorphism:
    """``(f^-1, (f^-1 (x) f^-1)(F^-1))``, asserting both composites are identities."""
    g = c.f.inverse()
    element = g(c.twist.inverse)
    twist = _twist_with_hint(c.source, element, g(c.twist.element), "inverse twist")
    inverse = _assert_cell(g, twist, c.target_r, c.source_r, "inverse cell")
    if compose(inverse, c) != identity_cell(c.source, c.source_r):
        raise InvariantViolation("inverse o cell is not the identity")
    if compose(c, inverse) != identity_cell(c.target, c.target_r):
        raise InvariantViolation("cell o inverse is not the identity")
    return inverse


def _partial(h: BialgebraPresentation, r: RMatrix | None, a: TensorElement) -> TwistedMorphism:
    return _assert_cell(conjugation_map(a), twist_by_unit(Twist.trivial(h), a), r, r, "partial automorphism")


def partial_automorphism(
    x: TriangularBialgebra | BialgebraPresentation,
    a: TensorElement,
    samples: Iterable[TensorElement] | None = None,
) -> TwistedMorphism:
    """``d(a) = (a (-) a^-1, (1 (x) 1)^a)``; asserts ``d(ab) = d(a) o d(b)`` on ``samples``."""
    h, r = (x.carrier, x.r) if isinstance(x, TriangularBialgebra) else (x, None)
    a = a.over((h,))
    if counit_value(a) != 1:
        raise CounitNotOne(f"ε(a) = {counit_value(a)}, expected 1")
    elem_inv(a)
    cell = _partial(h, r, a)
    for b in (a,) if samples is None else samples:
        b = b.over((h,))
        if compose(cell, _partial(h, r, b)) != _partial(h, r, elem_mul(a, b)):
            raise InvariantViolation("d is not multiplicative")
    return cell


def gauge_equivalent(c1: TwistedMorphism, c2: TwistedMorphism, settings: Settings | None = None) -> GaugeVerdict:
    """Search for an invertible 2-cell ``c1 => c2``."""
    settings = settings or get_settings()
    if not _same_boundary(c1, c2):
        raise BoundaryMismatch("gauge equivalence compares cells with the same endpoints and R-matrices")
    space = _gauge_space(c1, c2)
    if space is None:
        return GaugeVerdict("not_equal")
    dimension = space.dimension
    if dimension > settings.gauge_dim_cap:
        logger.info("gauge search skipped: candidate space has dimension %d", dimension)
        return GaugeVerdict("unknown", dimension=dimension)
    h = c1.target
    for values in _grid_points(space, settings):
        a = _element_of(h, values)
        if _quadratic_holds(a, c1, c2) and is_invertible(a):
            witness = _assert_gauge(a, c1, c2, "gauge witness")
            return GaugeVerdict("equal", witness, dimension)
    return GaugeVerdict("not_equal" if dimension == 0 else "unknown", dimension=dimension)


def iso_2cell_check(t: GaugeTransformation) -> bool:
    """An invertible 2-cell joins cells that are both invertible or both not."""
    elem_inv(t.a)
    left, right = is_invertible_onecell(t.source), is_invertible_onecell(t.target)
    if left != right:
        raise InvariantViolation("an invertible 2-cell joins an invertible and a non-invertible cell")
    return left


def certify_twisted_tensor_product(
    x: TriangularBialgebra,
    x1: TriangularBialgebra,
    x2: TriangularBialgebra,
    c: TwistedMorphism,
) -> ValidationReport:
    """Decide whether ``c`` exhibits ``x`` as a twisted tensor product of ``x1`` and ``x2``."""
    report = ValidationReport(f"twisted tensor product {x.carrier.name}")
    prod = product(x1, x2)
    report.add(
        "source",
        c.source == x.carrier and c.source_r is not None and c.source_r.element == x.r.element,
    )
    report.add(
        "target is the product",
        c.target == prod.carrier and c.target_r is not None and c.target_r.element == prod.r.element,
    )
    if not report.ok:
        return report
    recheck = check_twisted_morphism(c.f, c.twist, c.source_r, c.target_r)
    report.add("twisted morphism", not isinstance(recheck, ValidationReport))
    invertible = is_invertible_onecell(c)
    report.add("invertible 1-cell", invertible)
    if not report.ok:
        return report
    invert_onecell(c)

    p1, p2 = projections(x1, x2)
    c1, c2 = compose(p1, c), compose(p2, c)
    d = diagonal(c1, c2)
    report.add("diagonal is an invertible 1-cell", is_invertible_onecell(d))
    try:
        mediating_2cell(identity_2cell(c1), identity_2cell(c2), d, c)
    except InvariantViolation as exc:
        report.add("2-cell from the diagonal", False, detail=str(exc))
    else:
        report.add("2-cell from the diagonal", True)
    onto_twisted = d.f.retarget(twist_bialgebra(prod.carrier, d.twist))
    report.add(
        "(f1⊗f2)Δ onto (H1⊗H2)_F",
        validate_morphism(onto_twisted).ok and onto_twisted.is_invertible(),
    )

    h1, h2 = x1.carrier, x2.carrier
    report.notes["f1 surjective"] = p1.f.compose(c.f).rank() == h1.dim
    report.notes["f2 surjective"] = p2.f.compose(c.f).rank() == h2.dim
    split = unfold(c.twist.element)
    middle = leg_counit(split, {1, 4})
    weak_form = split == leg_embed(middle, 4, [2, 3], split.factors)
    report.notes["weak form"] = weak_form
    if weak_form:
        w = elem_inv(middle)
        report.notes["W central"] = is_central(w)
        report.notes["W"] = w
        if report.notes["W central"]:
            report.notes["diagonal reconstruction"] = d == c
    return report


def cocommutative_cell(f: LinearMap) -> TwistedMorphism:
    """``(f, 1 (x) 1)`` between cocommutative bialgebras with ``R = 1 (x) 1``."""
    for h in (f.source, f.target):
        if not is_cocommutative(h):
            raise SignatureMismatch(f"{h.name} is not cocommutative")
    return require_cell(f, Twist.trivial(f.target), RMatrix.trivial(f.source), RMatrix.trivial(f.target))


def check_u_preserves_products(h1: BialgebraPresentation, h2: BialgebraPresentation) -> bool:
    """The diagonal of the projections out of ``U(H_1) x U(H_2)`` is the identity."""
    x1 = TriangularBialgebra(h1, RMatrix.trivial(h1))
    x2 = TriangularBialgebra(h2, RMatrix.trivial(h2))
    p1, p2 = projections(x1, x2)
    prod = product(x1, x2)
    if diagonal(p1, p2) != identity_cell(prod.carrier, prod.r):
        raise InvariantViolation("U does not preserve the binary product")
    return True


@dataclass
class OneCellClass:
    """A gauge class ``[f, F]``; ``witnesses`` are invertible 2-cells into other members."""

    representative: TwistedMorphism
    witnesses: list[GaugeTransformation] = field(default_factory=list)

    def contains(self, cell: TwistedMorphism, settings: Settings | None = None) -> bool | None:
        """True or False when decided, None when the search was inconclusive."""
        verdict = gauge_equivalent(self.representative, cell, settings)
        if verdict.status == "equal":
            self.witnesses.append(verdict.witness)
            return True
        return None if verdict.status == "unknown" else False

    def compose(self, other: OneCellClass) -> OneCellClass:
        """``[g] o [f] = [g o f]`` with ``self = [g]``."""
        return OneCellClass(compose(self.representative, other.representative))
