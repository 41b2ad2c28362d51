"""Concrete bialgebras, R-matrices, twists and morphisms, plus a brute-force R-matrix oracle."""

from __future__ import annotations

import itertools
import logging
from collections.abc import Callable, Iterator, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal

import sympy

from .algebra import (
    BialgebraPresentation,
    LinearMap,
    TensorElement,
    base_field,
    elem_mul,
    leg_comult,
    leg_embed,
    op,
    unit_element,
    validate_bialgebra,
    validate_morphism,
)
from .config import get_settings
from .errors import CapExceeded, SignatureMismatch, ZeroScale
from .linalg import solve_affine
from .report import ValidationReport
from .scalar import FieldSpec, Scalar, _cyclotomic_tables
from .twist import (
    RMatrix,
    Twist,
    WeakRMatrix,
    _assert_rmatrix,
    _assert_twist,
    check_quasitriangular,
    check_weak_rmatrix,
)
from .twtr import TwistedMorphism, check_twisted_morphism, require_cell

logger = logging.getLogger(__name__)

SWEEDLER_BASIS = ("1", "g", "x", "gx")


def _sweedler_index(a: int, b: int) -> int:
    return a + 2 * b


def sweedler_presentation(field: FieldSpec | None = None) -> BialgebraPresentation:
    """Sweedler's 4-dimensional bialgebra on ``(1, g, x, gx)``."""
    field = field or FieldSpec.rational()
    mult = [[{} for _ in range(4)] for _ in range(4)]
    for (a, b), (c, d) in itertools.product(itertools.product(range(2), repeat=2), repeat=2):
        if b + d < 2:
            sign = -1 if b * c else 1
            mult[_sweedler_index(a, b)][_sweedler_index(c, d)] = {_sweedler_index((a + c) % 2, b + d): sign}
    comult = [
        {(0, 0): 1},
        {(1, 1): 1},
        {(2, 0): 1, (1, 2): 1},
        {(3, 1): 1, (0, 3): 1},
    ]
    p = BialgebraPresentation(field, SWEEDLER_BASIS, mult, {0: 1}, comult, [1, 1, 0, 0], name="H4")
    validate_bialgebra(p).assert_ok("Sweedler presentation")
    return p


def sweedler_rmatrix(lam: Scalar | Fraction | int, p: BialgebraPresentation | None = None) -> TensorElement:
    """``R_lambda`` as an element, without validation."""
    p = p or sweedler_presentation()
    half = p.field(Fraction(1, 2))
    lam = p.field(lam)
    terms = {
        (0, 0): half,
        (1, 0): half,
        (0, 1): half,
        (1, 1): -half,
        (2, 2): lam * half,
        (3, 2): lam * half,
        (2, 3): -lam * half,
        (3, 3): lam * half,
    }
    return TensorElement((p, p), terms)


def sweedler(lam: Scalar | Fraction | int = 0, field: FieldSpec | None = None) -> tuple[BialgebraPresentation, RMatrix]:
    p = sweedler_presentation(field)
    return p, _assert_rmatrix(p, sweedler_rmatrix(lam, p), f"R_{lam}", triangular=True)


def sweedler_twist(d: Scalar | Fraction | int, p: BialgebraPresentation | None = None) -> Twist:
    """``F_d = 1 (x) 1 + d (xg (x) x) = 1 (x) 1 - d (gx (x) x)``."""
    p = p or sweedler_presentation()
    d = p.field(d)
    element = TensorElement((p, p), {(0, 0): 1, (3, 2): -d})
    hint = TensorElement((p, p), {(0, 0): 1, (3, 2): d})
    return _assert_twist(p, element, f"F_{d}", inverse_hint=hint)


def sweedler_morphism(s: Scalar | Fraction | int, p: BialgebraPresentation | None = None) -> LinearMap:
    """``f_s``: ``g -> g``, ``x -> s x``."""
    p = p or sweedler_presentation()
    s = p.field(s)
    if not s:
        raise ZeroScale("f_s needs s != 0")
    f = LinearMap.from_columns(p, p, [{0: 1}, {1: 1}, {2: s}, {3: s}], f"f_{s}")
    validate_morphism(f).assert_ok(f"f_{s}")
    return f


def sweedler_cell(
    s: Scalar | Fraction | int, d: Scalar | Fraction | int, lam, gamma
) -> TwistedMorphism | ValidationReport:
    """``(f_s, F_d): (H, R_lambda) -> (H, R_gamma)``; valid iff ``lambda s^2 = gamma + 2d``."""
    p, r_source = sweedler(lam)
    _, r_target = sweedler(gamma)
    return check_twisted_morphism(sweedler_morphism(s, p), sweedler_twist(d, p), r_source, r_target)


def sweedler_gauge_unit(t: Scalar | Fraction | int = 1, p: BialgebraPresentation | None = None) -> TensorElement:
    """``1 + t x``: invertible with counit 1."""
    p = p or sweedler_presentation()
    return TensorElement((p,), {(0,): 1, (2,): t})


def _group_label(exponents: Sequence[int], letters: str) -> str:
    parts = [letter if e == 1 else f"{letter}^{e}" for letter, e in zip(letters, exponents) if e]
    return "".join(parts) or "1"


def group_algebra(orders: Sequence[int], field: FieldSpec | None = None) -> BialgebraPresentation:
    """The group algebra of ``Z_{n_1} x ... x Z_{n_k}``, indexed row-major by exponents."""
    field = field or FieldSpec.rational()
    orders = tuple(orders)
    if not orders or any(n < 1 for n in orders):
        raise SignatureMismatch(f"group orders must be positive, got {list(orders)}")
    letters = "g" if len(orders) == 1 else "xyzuvw"[: len(orders)]
    if len(orders) > len("xyzuvw"):
        raise SignatureMismatch("at most six cyclic factors")
    elements = list(itertools.product(*(range(n) for n in orders)))
    position = {e: i for i, e in enumerate(elements)}
    mult = [
        [{position[tuple((a + b) % n for a, b, n in zip(x, y, orders))]: 1} for y in elements] for x in elements
    ]
    comult = [{(i, i): 1} for i in range(len(elements))]
    name = "k[" + "x".join(f"Z{n}" for n in orders) + "]"
    p = BialgebraPresentation(
        field,
        [_group_label(e, letters) for e in elements],
        mult,
        {0: 1},
        comult,
        [1] * len(elements),
        name=name,
    )
    validate_bialgebra(p).assert_ok(name)
    return p


def gamma_twist(n: int) -> tuple[Twist, LinearMap]:
    """``F = (1/n) sum q^(-ij) x^i (x) y^(-j)`` on ``k[Z_n x Z_n]`` over Q(zeta_n), and the swap of x and y."""
    if n < 2:
        raise SignatureMismatch(f"gamma_twist needs n >= 2, got {n}")
    fld = FieldSpec.cyclotomic(n)
    p = group_algebra([n, n], fld)
    scale = fld(Fraction(1, n))
    terms: dict[tuple[int, int], Scalar] = {}
    hint: dict[tuple[int, int], Scalar] = {}
    for i, j in itertools.product(range(n), repeat=2):
        key = (i * n, (-j) % n)
        terms[key] = scale * fld.zeta_power(-i * j)
        hint[key] = scale * fld.zeta_power(i * j)
    twist = _assert_twist(
        p, TensorElement((p, p), terms), f"gamma twist n={n}", inverse_hint=TensorElement((p, p), hint)
    )
    swap = LinearMap.from_columns(p, p, [{j * n + i: 1} for i in range(n) for j in range(n)], "swap")
    validate_morphism(swap).assert_ok("swap of x and y")
    return twist, swap


def gamma_cell(n: int, r: RMatrix | None = None) -> TwistedMorphism:
    """``(f, F): (k Gamma, R) -> (k Gamma, R')`` with ``R' = (f (x) f)(R)_{F^-1}``."""
    twist, swap = gamma_twist(n)
    p = twist.carrier
    if r is None:
        return require_cell(swap, twist)
    moved = swap(r.element)
    element = elem_mul(elem_mul(op(twist.inverse), moved), twist.element)
    r_prime = _assert_rmatrix(p, element, "transported R-matrix", triangular=r.triangular)
    return require_cell(swap, twist, r, r_prime)


# Brute-force oracle


def _rational(value: sympy.Expr) -> Fraction | None:
    if not value.is_Rational:
        return None
    return Fraction(int(value.p), int(value.q))


class _Components:
    """Field elements as tuples of power-basis components, each a sympy expression."""

    def __init__(self, fld: FieldSpec):
        self.field = fld
        self.degree = fld.degree
        self.powers = _cyclotomic_tables(fld.order)[2] if fld.kind == "cyclotomic" else None

    def constant(self, c: Scalar) -> tuple:
        return tuple(sympy.Rational(q.numerator, q.denominator) for q in c.coeffs)

    def mul(self, u: tuple, v: tuple) -> tuple:
        if self.degree == 1:
            return (u[0] * v[0],)
        acc = [sympy.Integer(0)] * self.degree
        n = self.field.order
        for i, a in enumerate(u):
            if a == 0:
                continue
            for j, b in enumerate(v):
                if b == 0:
                    continue
                for m, w in enumerate(self.powers[(i + j) % n]):
                    if w:
                        acc[m] += w * a * b
        return tuple(acc)

    def scalar(self, comps: Sequence[sympy.Expr]) -> Scalar | None:
        values = [_rational(sympy.simplify(c)) for c in comps]
        if any(v is None for v in values):
            return None
        return Scalar(self.field, tuple(values))


Bilinear = Callable[[TensorElement, TensorElement], TensorElement]
Linear = Callable[[TensorElement], TensorElement]


def _system(
    point: TensorElement,
    directions: Sequence[TensorElement],
    equations: Sequence[tuple[Linear, Bilinear]],
    unknowns: Sequence[tuple],
    comps: _Components,
) -> list[sympy.Expr]:
    """Expand ``L(R) - Q(R, R) = 0`` for ``R = point + sum t_k directions[k]``."""
    out: set[sympy.Expr] = set()
    n = len(directions)
    products = {(k, l): comps.mul(unknowns[k], unknowns[l]) for k in range(n) for l in range(k, n)}
    for linear, quadratic in equations:
        totals: dict[tuple, list] = {}

        def add(element: TensorElement, monomial: tuple | None) -> None:
            for key, c in element.terms.items():
                acc = totals.setdefault(key, [sympy.Integer(0)] * comps.degree)
                term = comps.constant(c) if monomial is None else comps.mul(comps.constant(c), monomial)
                for m, value in enumerate(term):
                    acc[m] += value

        add(linear(point) - quadratic(point, point), None)
        for k, v in enumerate(directions):
            add(linear(v) - quadratic(point, v) - quadratic(v, point), unknowns[k])
        for (k, l), monomial in products.items():
            q = quadratic(directions[k], directions[l])
            if k != l:
                q = q + quadratic(directions[l], directions[k])
            add(-q, monomial)
        for acc in totals.values():
            for value in acc:
                value = sympy.expand(value)
                if value != 0:
                    out.add(value)
    return sorted(out, key=sympy.default_sort_key)


@dataclass(frozen=True)
class RMatrixFamily:
    """A positive-dimensional solution set ``R(s_1, ..., s_m)`` with rational parameters."""

    left: BialgebraPresentation
    right: BialgebraPresentation
    parameters: tuple[sympy.Symbol, ...]
    coefficients: tuple[tuple[tuple[int, int], tuple[sympy.Expr, ...]], ...]
    weak: bool = False

    @property
    def dimension(self) -> int:
        return len(self.parameters)

    def element(self, values: Sequence[Fraction | int]) -> TensorElement:
        if len(values) != len(self.parameters):
            raise SignatureMismatch(f"expected {len(self.parameters)} parameter values, got {len(values)}")
        subs = {s: sympy.Rational(Fraction(v).numerator, Fraction(v).denominator) for s, v in zip(self.parameters, values)}
        comps = _Components(self.left.field)
        terms = {}
        for key, exprs in self.coefficients:
            value = comps.scalar([e.subs(subs) for e in exprs])
            if value is None:
                raise SignatureMismatch("family coefficients must be rational at rational parameters")
            terms[key] = value
        return TensorElement((self.left, self.right), terms)

    def at(self, values: Sequence[Fraction | int]) -> RMatrix | WeakRMatrix | ValidationReport:
        """The member at ``values``, or the failing report where it degenerates."""
        element = self.element(values)
        if self.weak:
            return check_weak_rmatrix(self.left, self.right, element)
        return check_quasitriangular(self.left, element, triangular=None)


@dataclass(frozen=True)
class RMatrixSolutions(Sequence):
    """Isolated solutions in a deterministic order, plus the positive-dimensional families."""

    solutions: tuple = ()
    families: tuple[RMatrixFamily, ...] = ()

    def __getitem__(self, i):
        return self.solutions[i]

    def __len__(self) -> int:
        return len(self.solutions)

    def __iter__(self) -> Iterator:
        return iter(self.solutions)


def _basis_directions(left, right, space) -> tuple[TensorElement, list[TensorElement]]:
    nb = right.dim

    def element(values) -> TensorElement:
        return TensorElement._make((left, right), {divmod(c, nb): v for c, v in enumerate(values) if v})

    return element(space.point), [element(d) for d in space.directions]


def _counit_rows(left, right) -> tuple[list[dict], list[Scalar]]:
    """``(epsilon (x) Id)(R) = 1`` and ``(Id (x) epsilon)(R) = 1``."""
    fld = left.field
    nb = right.dim
    rows, rhs = [], []
    for j in range(nb):
        rows.append({i * nb + j: left.counit[i] for i in range(left.dim) if left.counit[i]})
        rhs.append(right.unit.get(j, fld.zero))
    for i in range(left.dim):
        rows.append({i * nb + j: right.counit[j] for j in range(nb) if right.counit[j]})
        rhs.append(left.unit.get(i, fld.zero))
    return rows, rhs


def _qtr_rows(p: BialgebraPresentation) -> list[dict]:
    """``Delta^op(e_k) R - R Delta(e_k) = 0``, linear in ``R``."""
    n = p.dim
    rows: dict[tuple[int, int, int], dict] = {}
    for k in range(n):
        delta = TensorElement._make((p, p), p.comult[k])
        flipped = op(delta)
        for c in range(n * n):
            e = TensorElement._make((p, p), {divmod(c, n): p.field.one})
            for key, v in (elem_mul(flipped, e) - elem_mul(e, delta)).terms.items():
                rows.setdefault((k, *key), {})[c] = v
    return list(rows.values())


def _solve(
    left: BialgebraPresentation,
    right: BialgebraPresentation,
    rows: list[dict],
    rhs: list,
    equations: Sequence[tuple[Linear, Bilinear]],
    accept: Callable[[TensorElement], object],
    weak: bool,
) -> RMatrixSolutions:
    fld = left.field
    space = solve_affine(rows, rhs, left.dim * right.dim, fld)
    if space is None:
        return RMatrixSolutions()
    point, directions = _basis_directions(left, right, space)
    comps = _Components(fld)
    unknowns = [
        tuple(sympy.Symbol(f"t{k}_{m}") for m in range(comps.degree)) for k in range(len(directions))
    ]
    symbols = [s for t in unknowns for s in t]
    logger.info("solving for %d unknowns over %s", len(symbols), fld)
    system = _system(point, directions, equations, unknowns, comps)
    if not symbols:
        raw = [{}] if not system else []
    elif not system:
        raw = [{}]
    else:
        raw = sympy.solve(system, symbols, dict=True)

    isolated: dict[TensorElement, object] = {}
    families = []
    for solution in raw:
        free = tuple(s for s in symbols if s not in solution)
        coefficients: dict[tuple[int, int], list] = {}
        for key in itertools.product(range(left.dim), range(right.dim)):
            acc = list(comps.constant(point.coefficient(key)))
            for k, v in enumerate(directions):
                c = v.coefficient(key)
                if c:
                    t = tuple(s.subs(solution) for s in unknowns[k])
                    for m, value in enumerate(comps.mul(comps.constant(c), t)):
                        acc[m] += value
            exprs = tuple(sympy.expand(e) for e in acc)
            if any(e != 0 for e in exprs):
                coefficients[key] = exprs
        if free:
            try:
                rational = all(
                    all(c.is_Rational for c in sympy.Poly(e, *free).coeffs())
                    for exprs in coefficients.values()
                    for e in exprs
                    if e != 0
                )
            except sympy.PolynomialError:
                rational = False
            if rational:
                families.append(RMatrixFamily(left, right, free, tuple(sorted(coefficients.items())), weak))
            else:
                logger.info("skipping a non-rational family of solutions")
            continue
        terms = {}
        for key, exprs in coefficients.items():
            value = comps.scalar(exprs)
            if value is None:
                logger.info("skipping an irrational solution")
                break
            terms[key] = value
        else:
            element = TensorElement._make((left, right), terms)
            result = accept(element)
            if not isinstance(result, ValidationReport):
                isolated[element] = result
    ordered = sorted(isolated.items(), key=lambda item: [(k, str(v)) for k, v in item[0].items()])
    return RMatrixSolutions(tuple(value for _, value in ordered), tuple(families))


def _cap(n: int, cap: int | None) -> None:
    cap = get_settings().ansatz_cap if cap is None else cap
    if n > cap:
        raise CapExceeded(f"{n} unknowns exceed the ansatz cap {cap}")


def brute_force_rmatrices(p: BialgebraPresentation, ansatz_dim_cap: int | None = None) -> RMatrixSolutions:
    """All quasitriangular structures on ``p`` with coefficients in its field.

    Quasi-cocommutativity and the counit legs are solved exactly as a linear
    system; the hexagons are then solved on that affine space with sympy, each
    unknown split into its rational power-basis components. Isolated solutions
    are validated (triangular ones flagged); solutions with free parameters
    come back as families.
    """
    _cap(p.dim * p.dim, ansatz_dim_cap)
    rows, rhs = _counit_rows(p, p)
    qtr = _qtr_rows(p)
    rows = qtr + rows
    rhs = [p.field.zero] * len(qtr) + rhs
    equations = (
        (lambda r: leg_comult(r, 2), lambda a, b: elem_mul(leg_embed(a, 3, [1, 3]), leg_embed(b, 3, [1, 2]))),
        (lambda r: leg_comult(r, 1), lambda a, b: elem_mul(leg_embed(a, 3, [1, 3]), leg_embed(b, 3, [2, 3]))),
    )
    return _solve(p, p, rows, rhs, equations, lambda e: check_quasitriangular(p, e, triangular=None), weak=False)


def brute_force_weak_rmatrices(
    a: BialgebraPresentation, b: BialgebraPresentation, ansatz_dim_cap: int | None = None
) -> RMatrixSolutions:
    """All weak R-matrices of ``(a, b)``: counit legs plus the two weak hexagons."""
    _cap(a.dim * b.dim, ansatz_dim_cap)
    rows, rhs = _counit_rows(a, b)
    abb, aab = (a, b, b), (a, a, b)
    equations = (
        (
            lambda r: leg_comult(r, 2),
            lambda x, y: elem_mul(leg_embed(x, 3, [1, 3], abb), leg_embed(y, 3, [1, 2], abb)),
        ),
        (
            lambda r: leg_comult(r, 1),
            lambda x, y: elem_mul(leg_embed(x, 3, [1, 3], aab), leg_embed(y, 3, [2, 3], aab)),
        ),
    )
    return _solve(a, b, rows, rhs, equations, lambda e: check_weak_rmatrix(a, b, e), weak=True)


# Fixture requests


@dataclass(frozen=True)
class Fixture:
    presentation: BialgebraPresentation
    elements: dict[str, TensorElement]
    morphisms: dict[str, tuple[LinearMap, str]] = field(default_factory=dict)


@dataclass(frozen=True)
class ExampleRequest:
    """A named fixture with its parameters; scalars are given as text in the field's grammar."""

    name: Literal["sweedler", "group_algebra", "gamma_twist", "base_field"]
    lam: str = "0"
    d: str | None = None
    s: str | None = None
    orders: tuple[int, ...] = (2,)
    field: str = "rational"
    n: int = 2

    def build(self) -> Fixture:
        if self.name == "sweedler":
            fld = FieldSpec.from_string(self.field)
            p, r = sweedler(fld(self.lam), fld)
            elements = {"R": r.element}
            morphisms = {}
            if self.d is not None:
                elements["F"] = sweedler_twist(fld(self.d), p).element
            if self.s is not None:
                morphisms["f"] = (sweedler_morphism(fld(self.s), p), "F" if self.d is not None else "")
            return Fixture(p, elements, morphisms)
        if self.name == "group_algebra":
            p = group_algebra(self.orders, FieldSpec.from_string(self.field))
            return Fixture(p, {"R": unit_element((p, p))})
        if self.name == "gamma_twist":
            twist, swap = gamma_twist(self.n)
            p = twist.carrier
            return Fixture(p, {"R": unit_element((p, p)), "F": twist.element}, {"f": (swap, "F")})
        if self.name == "base_field":
            p = base_field(FieldSpec.from_string(self.field))
            return Fixture(p, {"R": unit_element((p, p))})
        raise SignatureMismatch(f"unknown example {self.name!r}")

