"""Finite-dimensional bialgebras by structure constants and the leg calculus.

Leg positions in the public functions are 1-based, matching the usual
``T_13`` notation. Basis tuples are always iterated in row-major
lexicographic order.
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass
from functools import cached_property, lru_cache

from . import linalg
from .errors import BadPositions, FieldMismatch, NotInvertible, SignatureMismatch
from .report import ValidationReport
from .scalar import FieldSpec, Scalar

logger = logging.getLogger(__name__)

Index = tuple[int, ...]


def _clean(field: FieldSpec, entries: Mapping) -> dict:
    out = {}
    for key, value in entries.items():
        value = field(value)
        if value:
            out[key] = value
    return out


def _freeze(entries: Mapping) -> tuple:
    return tuple(sorted(entries.items()))


class BialgebraPresentation:
    """A bialgebra ``(H, m, u, Delta, epsilon)`` given by sparse structure constants.

    ``mult[i][j]`` maps ``k`` to the coefficient of ``e_k`` in ``e_i e_j``,
    ``comult[i]`` maps ``(j, k)`` to the coefficient of ``e_j (x) e_k`` in
    ``Delta(e_i)``. ``components`` records the factors when the presentation
    was built by ``tensor_bialgebra``.
    """

    def __init__(
        self,
        field: FieldSpec,
        basis_labels: Sequence[str],
        mult: Sequence[Sequence[Mapping[int, Scalar]]],
        unit: Mapping[int, Scalar],
        comult: Sequence[Mapping[tuple[int, int], Scalar]],
        counit: Sequence[Scalar],
        *,
        name: str = "",
        components: tuple[BialgebraPresentation, ...] = (),
    ):
        dim = len(basis_labels)
        if dim == 0:
            raise SignatureMismatch("a bialgebra needs at least one basis element")
        if len(mult) != dim or any(len(row) != dim for row in mult):
            raise SignatureMismatch(f"multiplication table must be {dim}x{dim}")
        if len(comult) != dim or len(counit) != dim:
            raise SignatureMismatch(f"comultiplication and counit need {dim} entries")
        for key in itertools.chain(unit, *(entry for row in mult for entry in row)):
            if not 0 <= key < dim:
                raise SignatureMismatch(f"basis index {key} out of range for dimension {dim}")
        for entry in comult:
            for j, k in entry:
                if not (0 <= j < dim and 0 <= k < dim):
                    raise SignatureMismatch(f"basis pair {(j, k)} out of range for dimension {dim}")

        self.field = field
        self.basis_labels = tuple(basis_labels)
        self.mult = tuple(tuple(_clean(field, entry) for entry in row) for row in mult)
        self.unit = _clean(field, unit)
        self.comult = tuple(_clean(field, entry) for entry in comult)
        self.counit = tuple(field(c) for c in counit)
        self.name = name
        self.components = tuple(components)
        self._algebra_key = (
            field,
            dim,
            tuple(tuple(_freeze(entry) for entry in row) for row in self.mult),
            _freeze(self.unit),
        )
        self._key = (
            self._algebra_key,
            self.basis_labels,
            tuple(_freeze(entry) for entry in self.comult),
            self.counit,
        )
        self._hash = hash(self._key)

    @property
    def dim(self) -> int:
        return len(self.basis_labels)

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, BialgebraPresentation):
            return NotImplemented
        return self._hash == other._hash and self._key == other._key

    def __hash__(self) -> int:
        return self._hash

    def same_algebra(self, other: BialgebraPresentation) -> bool:
        """Equal as algebras; the coalgebra structures may differ."""
        return self is other or self._algebra_key == other._algebra_key

    def label(self, i: int) -> str:
        return self.basis_labels[i]

    def index(self, label: str) -> int:
        try:
            return self.basis_labels.index(label)
        except ValueError:
            raise SignatureMismatch(f"no basis element {label!r} in {self.name or 'presentation'}") from None

    def with_comult(self, comult: Sequence[Mapping[tuple[int, int], Scalar]], name: str) -> BialgebraPresentation:
        return BialgebraPresentation(
            self.field, self.basis_labels, self.mult, self.unit, comult, self.counit, name=name
        )

    def __repr__(self) -> str:
        return f"BialgebraPresentation({self.name or '?'}, dim={self.dim}, field={self.field})"


class TensorElement:
    """A finitely supported element of ``H_1 (x) ... (x) H_k``."""

    __slots__ = ("factors", "terms", "_hash")

    def __init__(self, factors: Sequence[BialgebraPresentation], terms: Mapping[Index, Scalar]):
        factors = tuple(factors)
        if not factors:
            raise SignatureMismatch("a tensor element needs at least one leg")
        field = factors[0].field
        if any(p.field != field for p in factors):
            raise FieldMismatch("all legs of a tensor element must share one field")
        clean = {}
        for key, value in terms.items():
            key = tuple(key)
            if len(key) != len(factors) or any(not 0 <= i < p.dim for i, p in zip(key, factors)):
                raise SignatureMismatch(f"index {key} does not fit legs of dimensions {[p.dim for p in factors]}")
            value = field(value)
            if value:
                clean[key] = value
        self._init(factors, clean)

    def _init(self, factors, terms) -> None:
        object.__setattr__(self, "factors", factors)
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _make(cls, factors: tuple[BialgebraPresentation, ...], terms: Mapping[Index, Scalar]) -> TensorElement:
        obj = cls.__new__(cls)
        obj._init(factors, {k: v for k, v in terms.items() if v})
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("TensorElement is immutable")

    @property
    def arity(self) -> int:
        return len(self.factors)

    @property
    def field(self) -> FieldSpec:
        return self.factors[0].field

    def items(self) -> list[tuple[Index, Scalar]]:
        return sorted(self.terms.items())

    def coefficient(self, index: Index) -> Scalar:
        return self.terms.get(tuple(index), self.field.zero)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def over(self, factors: Sequence[BialgebraPresentation]) -> TensorElement:
        """The same coefficients tagged with other legs carrying the same algebras."""
        factors = tuple(factors)
        if factors == self.factors:
            return self
        if len(factors) != self.arity or not all(a.same_algebra(b) for a, b in zip(factors, self.factors)):
            raise SignatureMismatch("retagging requires legs with the same algebra structure")
        return TensorElement._make(factors, self.terms)

    def on(self, factors: Sequence[BialgebraPresentation]) -> TensorElement:
        """The same coefficients in other legs of equal dimensions, e.g. ``H^op``."""
        factors = tuple(factors)
        if len(factors) != self.arity or any(
            a.dim != b.dim or a.field != b.field for a, b in zip(factors, self.factors)
        ):
            raise SignatureMismatch("relabelling legs keeps their dimensions")
        return TensorElement._make(factors, self.terms)

    def _check_same(self, other: TensorElement) -> None:
        if self.factors != other.factors and not (
            other.arity == self.arity and all(a.same_algebra(b) for a, b in zip(self.factors, other.factors))
        ):
            raise SignatureMismatch(
                f"legs {[p.name for p in self.factors]} and {[p.name for p in other.factors]} differ"
            )

    def __add__(self, other: TensorElement) -> TensorElement:
        self._check_same(other)
        terms = dict(self.terms)
        for key, value in other.terms.items():
            terms[key] = terms[key] + value if key in terms else value
        return TensorElement._make(self.factors, terms)

    def __sub__(self, other: TensorElement) -> TensorElement:
        return self + (-other)

    def __neg__(self) -> TensorElement:
        return TensorElement._make(self.factors, {k: -v for k, v in self.terms.items()})

    def scale(self, c: Scalar | int) -> TensorElement:
        return TensorElement._make(self.factors, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other: TensorElement) -> TensorElement:
        if isinstance(other, TensorElement):
            return elem_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other: Scalar | int) -> TensorElement:
        return self.scale(other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.factors == other.factors and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.factors, frozenset(self.terms.items()))))
        return self._hash

    def to_json(self) -> list[list]:
        return [[*key, str(value)] for key, value in self.items()]

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for key, value in self.items():
            basis = "⊗".join(p.basis_labels[i] for p, i in zip(self.factors, key))
            parts.append(f"({value})*{basis}" if value != 1 else basis)
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"TensorElement({self})"


def _accumulate(terms: dict, key, value) -> None:
    if key in terms:
        terms[key] = terms[key] + value
    else:
        terms[key] = value


def unit_element(factors: Sequence[BialgebraPresentation]) -> TensorElement:
    factors = tuple(factors)
    terms: dict[Index, Scalar] = {(): factors[0].field.one}
    for p in factors:
        terms = {key + (k,): c * u for key, c in terms.items() for k, u in p.unit.items()}
    return TensorElement._make(factors, terms)


def basis_element(p: BialgebraPresentation, i: int | str, coeff: Scalar | int = 1) -> TensorElement:
    if isinstance(i, str):
        i = p.index(i)
    return TensorElement((p,), {(i,): coeff})


def vector(p: BialgebraPresentation, entries: Mapping[int | str, Scalar | int]) -> TensorElement:
    """An element of ``p`` from ``{index or label: coefficient}``."""
    return TensorElement((p,), {((p.index(k) if isinstance(k, str) else k),): v for k, v in entries.items()})


def outer(s: TensorElement, t: TensorElement) -> TensorElement:
    """``s (x) t`` with the legs of ``s`` first."""
    if s.field != t.field:
        raise FieldMismatch(f"cannot tensor {s.field} with {t.field}")
    terms = {a + b: ca * cb for a, ca in s.terms.items() for b, cb in t.terms.items()}
    return TensorElement._make(s.factors + t.factors, terms)


def interleave(x1: TensorElement, x2: TensorElement) -> TensorElement:
    """``(Id (x) tau (x) Id)(x1 (x) x2)`` for two elements of arity 2."""
    if x1.arity != 2 or x2.arity != 2:
        raise SignatureMismatch("interleave takes two elements of arity 2")
    return leg_flip(outer(x1, x2), 2, 3)


def elem_mul(s: TensorElement, t: TensorElement) -> TensorElement:
    """Product in the tensor-product algebra; the result carries the legs of ``s``."""
    s._check_same(t)
    factors = s.factors
    terms: dict[Index, Scalar] = {}
    for a, ca in s.terms.items():
        for b, cb in t.terms.items():
            partial: dict[Index, Scalar] = {(): ca * cb}
            for p, i, j in zip(factors, a, b):
                product = p.mult[i][j]
                if not product:
                    partial = {}
                    break
                if len(product) == 1:
                    ((k, w),) = product.items()
                    partial = {key + (k,): v * w for key, v in partial.items()}
                else:
                    partial = {key + (k,): v * w for key, v in partial.items() for k, w in product.items()}
            for key, value in partial.items():
                _accumulate(terms, key, value)
    return TensorElement._make(factors, terms)


def product_element(p: BialgebraPresentation, i: int, j: int) -> TensorElement:
    """``e_i e_j`` as an element of ``p``."""
    return TensorElement._make((p,), {(k,): v for k, v in p.mult[i][j].items()})


def _basis_tuples(factors: Sequence[BialgebraPresentation]) -> list[Index]:
    return list(itertools.product(*(range(p.dim) for p in factors)))


@lru_cache(maxsize=4096)
def _inverse(t: TensorElement) -> TensorElement:
    keys = _basis_tuples(t.factors)
    position = {key: n for n, key in enumerate(keys)}
    rows: list[dict[int, Scalar]] = [{} for _ in keys]
    for col, key in enumerate(keys):
        image = elem_mul(t, TensorElement._make(t.factors, {key: t.field.one}))
        for out_key, value in image.terms.items():
            rows[position[out_key]][col] = value
    one = unit_element(t.factors)
    rhs = [one.coefficient(key) for key in keys]
    solution = linalg.solve(rows, rhs, len(keys), t.field)
    if solution is None:
        raise NotInvertible(f"{t} has no inverse")
    u = TensorElement._make(t.factors, dict(zip(keys, solution)))
    if elem_mul(u, t) != one:
        raise NotInvertible(f"{t} has a right inverse that is not a left inverse")
    return u


def elem_inv(t: TensorElement) -> TensorElement:
    """Two-sided inverse, found by solving the left-regular linear system."""
    return _inverse(t)


def is_invertible(t: TensorElement) -> bool:
    try:
        _inverse(t)
    except NotInvertible:
        return False
    return True


def _positions(positions: Iterable[int], arity: int) -> list[int]:
    positions = list(positions)
    if any(not 1 <= p <= arity for p in positions):
        raise BadPositions(f"positions {positions} out of range 1..{arity}")
    return positions


def leg_embed(
    t: TensorElement,
    arity: int,
    positions: Sequence[int],
    factors: Sequence[BialgebraPresentation] | None = None,
) -> TensorElement:
    """Place the legs of ``t`` at ``positions`` and units everywhere else."""
    positions = _positions(positions, arity)
    if len(positions) != t.arity or any(a >= b for a, b in zip(positions, positions[1:])):
        raise BadPositions(f"positions {positions} must be {t.arity} strictly increasing legs")
    if factors is None:
        if any(p != t.factors[0] for p in t.factors):
            raise SignatureMismatch("leg_embed needs explicit factors for mixed legs")
        factors = (t.factors[0],) * arity
    factors = tuple(factors)
    if len(factors) != arity:
        raise SignatureMismatch(f"expected {arity} factors, got {len(factors)}")
    for p, leg in zip(t.factors, positions):
        if not factors[leg - 1].same_algebra(p):
            raise SignatureMismatch(f"leg {leg} carries {factors[leg - 1].name}, not {p.name}")
    slots = {leg - 1: n for n, leg in enumerate(positions)}
    terms: dict[Index, Scalar] = {}
    for key, value in t.terms.items():
        partial: dict[Index, Scalar] = {(): value}
        for leg, p in enumerate(factors):
            if leg in slots:
                i = key[slots[leg]]
                partial = {k + (i,): v for k, v in partial.items()}
            else:
                partial = {k + (j,): v * u for k, v in partial.items() for j, u in p.unit.items()}
        for k, v in partial.items():
            _accumulate(terms, k, v)
    return TensorElement._make(factors, terms)


def permute_legs(t: TensorElement, order: Sequence[int]) -> TensorElement:
    """New leg ``n`` is old leg ``order[n-1]``."""
    order = _positions(order, t.arity)
    if sorted(order) != list(range(1, t.arity + 1)):
        raise BadPositions(f"{order} is not a permutation of the legs")
    factors = tuple(t.factors[o - 1] for o in order)
    terms = {tuple(key[o - 1] for o in order): v for key, v in t.terms.items()}
    return TensorElement._make(factors, terms)


def leg_flip(t: TensorElement, i: int = 1, j: int = 2) -> TensorElement:
    _positions((i, j), t.arity)
    if i == j:
        raise BadPositions("leg_flip needs two distinct legs")
    order = list(range(1, t.arity + 1))
    order[i - 1], order[j - 1] = j, i
    return permute_legs(t, order)


def op(t: TensorElement) -> TensorElement:
    """``T^op`` for an element of arity 2."""
    return leg_flip(t, 1, 2)


def leg_counit(t: TensorElement, legs: Iterable[int]) -> TensorElement:
    """Apply the counit on ``legs`` and drop them."""
    legs = set(_positions(legs, t.arity))
    if not legs:
        raise BadPositions("leg_counit needs at least one leg")
    if len(legs) == t.arity:
        raise BadPositions("cannot drop every leg; use counit_value")
    keep = [n for n in range(t.arity) if n + 1 not in legs]
    terms: dict[Index, Scalar] = {}
    for key, value in t.terms.items():
        for leg in legs:
            value = value * t.factors[leg - 1].counit[key[leg - 1]]
            if not value:
                break
        if value:
            _accumulate(terms, tuple(key[n] for n in keep), value)
    return TensorElement._make(tuple(t.factors[n] for n in keep), terms)


def counit_value(t: TensorElement) -> Scalar:
    """The counit applied on every leg."""
    total = t.field.zero
    for key, value in t.terms.items():
        for p, i in zip(t.factors, key):
            value = value * p.counit[i]
        total = total + value
    return total


def leg_comult(t: TensorElement, leg: int) -> TensorElement:
    """Replace ``leg`` by the two legs of its comultiplication."""
    (leg,) = _positions((leg,), t.arity)
    n = leg - 1
    p = t.factors[n]
    factors = t.factors[:n] + (p, p) + t.factors[n + 1 :]
    terms: dict[Index, Scalar] = {}
    for key, value in t.terms.items():
        for (j, k), c in p.comult[key[n]].items():
            _accumulate(terms, key[:n] + (j, k) + key[n + 1 :], value * c)
    return TensorElement._make(factors, terms)


def comult(t: TensorElement) -> TensorElement:
    """``Delta`` of an element of arity 1."""
    if t.arity != 1:
        raise SignatureMismatch("comult takes an element of arity 1")
    return leg_comult(t, 1)


def apply_maps(t: TensorElement, maps: Sequence[LinearMap | None]) -> TensorElement:
    """Apply ``maps`` leg by leg; ``None`` is the identity."""
    if len(maps) != t.arity:
        raise SignatureMismatch(f"{len(maps)} maps for an element of arity {t.arity}")
    for p, f in zip(t.factors, maps):
        if f is not None and not f.source.same_algebra(p):
            raise SignatureMismatch(f"map from {f.source.name} applied to a leg in {p.name}")
    factors = tuple(p if f is None else f.target for p, f in zip(t.factors, maps))
    terms: dict[Index, Scalar] = {}
    for key, value in t.terms.items():
        partial: dict[Index, Scalar] = {(): value}
        for i, f in zip(key, maps):
            if f is None:
                partial = {k + (i,): v for k, v in partial.items()}
            else:
                column = f.columns[i]
                partial = {k + (j,): v * c for k, v in partial.items() for j, c in column.items()}
        for k, v in partial.items():
            _accumulate(terms, k, v)
    return TensorElement._make(factors, terms)


def is_central(t: TensorElement) -> bool:
    """True iff ``t`` commutes with every leg-embedded basis element."""
    for leg, p in enumerate(t.factors):
        for i in range(p.dim):
            b = leg_embed(basis_element(p, i), t.arity, [leg + 1], factors=t.factors)
            if elem_mul(t, b) != elem_mul(b, t):
                return False
    return True


def is_cocommutative(p: BialgebraPresentation) -> bool:
    return all({(k, j): c for (j, k), c in entry.items()} == entry for entry in p.comult)


def opposite(p: BialgebraPresentation) -> BialgebraPresentation:
    mult = [[p.mult[j][i] for j in range(p.dim)] for i in range(p.dim)]
    return BialgebraPresentation(p.field, p.basis_labels, mult, p.unit, p.comult, p.counit, name=f"{p.name}^op")


def coopposite(p: BialgebraPresentation) -> BialgebraPresentation:
    comult = [{(k, j): c for (j, k), c in entry.items()} for entry in p.comult]
    name = p.name[: -len("^cop")] if p.name.endswith("^cop") else f"{p.name}^cop"
    return BialgebraPresentation(p.field, p.basis_labels, p.mult, p.unit, comult, p.counit, name=name)


@lru_cache(maxsize=None)
def base_field(field: FieldSpec) -> BialgebraPresentation:
    """The one-dimensional bialgebra k."""
    one = field.one
    return BialgebraPresentation(field, ["1"], [[{0: one}]], {0: one}, [{(0, 0): one}], [one], name="k")


@lru_cache(maxsize=256)
def tensor_bialgebra(a: BialgebraPresentation, b: BialgebraPresentation) -> BialgebraPresentation:
    """``A (x) B`` with basis index ``i * dim(B) + j`` for ``e_i (x) e_j``."""
    if a.field != b.field:
        raise FieldMismatch(f"cannot tensor {a.field} with {b.field}")
    db = b.dim

    def pair(i: int, j: int) -> int:
        return i * db + j

    labels = [f"{la}⊗{lb}" for la in a.basis_labels for lb in b.basis_labels]
    mult = []
    for i1, j1 in itertools.product(range(a.dim), range(db)):
        row = []
        for i2, j2 in itertools.product(range(a.dim), range(db)):
            row.append(
                {
                    pair(k, l): c * d
                    for k, c in a.mult[i1][i2].items()
                    for l, d in b.mult[j1][j2].items()
                }
            )
        mult.append(row)
    unit = {pair(k, l): c * d for k, c in a.unit.items() for l, d in b.unit.items()}
    comult = []
    for i, j in itertools.product(range(a.dim), range(db)):
        entry: dict[tuple[int, int], Scalar] = {}
        for (a1, a2), c in a.comult[i].items():
            for (b1, b2), d in b.comult[j].items():
                _accumulate(entry, (pair(a1, b1), pair(a2, b2)), c * d)
        comult.append(entry)
    counit = [ca * cb for ca in a.counit for cb in b.counit]
    product = BialgebraPresentation(
        a.field, labels, mult, unit, comult, counit, name=f"({a.name}⊗{b.name})", components=(a, b)
    )
    logger.debug("built tensor product %s of dimension %d", product.name, product.dim)
    return product


def unfold(t: TensorElement) -> TensorElement:
    """Split every leg that is a tensor product into its two component legs."""
    factors: list[BialgebraPresentation] = []
    splits = []
    for p in t.factors:
        if len(p.components) == 2:
            factors.extend(p.components)
            splits.append(p.components[1].dim)
        else:
            factors.append(p)
            splits.append(None)
    terms = {}
    for key, value in t.terms.items():
        new_key: tuple[int, ...] = ()
        for i, split in zip(key, splits):
            new_key += divmod(i, split) if split else (i,)
        terms[new_key] = value
    return TensorElement._make(tuple(factors), terms)


def fold(t: TensorElement, carriers: Sequence[BialgebraPresentation]) -> TensorElement:
    """Merge consecutive legs into the given tensor-product carriers."""
    factors = list(t.factors)
    widths = [len(c.components) if len(c.components) == 2 else 1 for c in carriers]
    if sum(widths) != t.arity:
        raise SignatureMismatch(f"cannot fold {t.arity} legs into {len(carriers)} carriers")
    start = 0
    for carrier, width in zip(carriers, widths):
        expected = carrier.components if width == 2 else (carrier,)
        for leg, p in zip(range(start, start + width), expected):
            if not factors[leg].same_algebra(p):
                raise SignatureMismatch(f"leg {leg + 1} does not match {carrier.name}")
        start += width
    terms = {}
    for key, value in t.terms.items():
        new_key = []
        pos = 0
        for carrier, width in zip(carriers, widths):
            if width == 2:
                new_key.append(key[pos] * carrier.components[1].dim + key[pos + 1])
            else:
                new_key.append(key[pos])
            pos += width
        terms[tuple(new_key)] = value
    return TensorElement._make(tuple(carriers), terms)


@dataclass(frozen=True, eq=False)
class LinearMap:
    """A linear map given by its matrix; column ``j`` is the image of ``e_j``."""

    source: BialgebraPresentation
    target: BialgebraPresentation
    matrix: tuple[tuple[Scalar, ...], ...]
    name: str = ""

    def __post_init__(self):
        if self.source.field != self.target.field:
            raise FieldMismatch("source and target of a map must share one field")
        if len(self.matrix) != self.target.dim or any(len(row) != self.source.dim for row in self.matrix):
            raise SignatureMismatch(
                f"matrix must be {self.target.dim}x{self.source.dim} for {self.source.name} -> {self.target.name}"
            )
        field = self.source.field
        object.__setattr__(self, "matrix", tuple(tuple(field(v) for v in row) for row in self.matrix))

    @classmethod
    def from_columns(
        cls,
        source: BialgebraPresentation,
        target: BialgebraPresentation,
        columns: Sequence[Mapping[int, Scalar]],
        name: str = "",
    ) -> LinearMap:
        zero = source.field.zero
        matrix = tuple(tuple(columns[j].get(i, zero) for j in range(source.dim)) for i in range(target.dim))
        return cls(source, target, matrix, name)

    @classmethod
    def from_images(
        cls,
        source: BialgebraPresentation,
        target: BialgebraPresentation,
        images: Sequence[TensorElement],
        name: str = "",
    ) -> LinearMap:
        return cls.from_columns(source, target, [{k[0]: v for k, v in img.terms.items()} for img in images], name)

    @classmethod
    def identity(cls, p: BialgebraPresentation) -> LinearMap:
        return cls.from_columns(p, p, [{j: p.field.one} for j in range(p.dim)], "Id")

    @cached_property
    def columns(self) -> tuple[dict[int, Scalar], ...]:
        return tuple(
            {i: self.matrix[i][j] for i in range(self.target.dim) if self.matrix[i][j]}
            for j in range(self.source.dim)
        )

    def __call__(self, t: TensorElement) -> TensorElement:
        return apply_maps(t, [self] * t.arity)

    def compose(self, other: LinearMap) -> LinearMap:
        """``self o other``."""
        if not other.target.same_algebra(self.source) or other.target.dim != self.source.dim:
            raise SignatureMismatch(f"cannot compose {self.source.name} <- {other.target.name}")
        columns = []
        for col in other.columns:
            image: dict[int, Scalar] = {}
            for k, c in col.items():
                for i, v in self.columns[k].items():
                    _accumulate(image, i, c * v)
            columns.append(image)
        return LinearMap.from_columns(other.source, self.target, columns)

    def kron(self, other: LinearMap) -> LinearMap:
        """``self (x) other`` between the tensor-product bialgebras."""
        source = tensor_bialgebra(self.source, other.source)
        target = tensor_bialgebra(self.target, other.target)
        dt = other.target.dim
        columns = []
        for i, j in itertools.product(range(self.source.dim), range(other.source.dim)):
            columns.append(
                {k * dt + l: c * d for k, c in self.columns[i].items() for l, d in other.columns[j].items()}
            )
        return LinearMap.from_columns(source, target, columns)

    def retarget(self, target: BialgebraPresentation, source: BialgebraPresentation | None = None) -> LinearMap:
        """The same matrix between presentations with the same underlying spaces."""
        source = self.source if source is None else source
        if source.dim != self.source.dim or target.dim != self.target.dim:
            raise SignatureMismatch("retarget keeps dimensions")
        return LinearMap(source, target, self.matrix, self.name)

    def rank(self) -> int:
        return linalg.rank(self.matrix, self.source.field)

    def is_invertible(self) -> bool:
        return self.source.dim == self.target.dim and self.rank() == self.source.dim

    def inverse(self) -> LinearMap:
        if self.source.dim != self.target.dim:
            raise NotInvertible(f"{self.source.name} and {self.target.name} have different dimensions")
        return LinearMap(self.target, self.source, linalg.inverse(self.matrix, self.source.field))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinearMap):
            return NotImplemented
        return self.source == other.source and self.target == other.target and self.matrix == other.matrix

    def __hash__(self) -> int:
        return hash((self.source, self.target, self.matrix))

    def to_json(self) -> list[list[str]]:
        return [[str(v) for v in row] for row in self.matrix]


def counit_map(p: BialgebraPresentation) -> LinearMap:
    return LinearMap(p, base_field(p.field), (p.counit,), "ε")


def unit_map(p: BialgebraPresentation) -> LinearMap:
    return LinearMap.from_columns(base_field(p.field), p, [p.unit], "u")


def left_projection(a: BialgebraPresentation, b: BialgebraPresentation) -> LinearMap:
    """``Id (x) epsilon: A (x) B -> A``."""
    product = tensor_bialgebra(a, b)
    columns = [{i: b.counit[j]} if b.counit[j] else {} for i in range(a.dim) for j in range(b.dim)]
    return LinearMap.from_columns(product, a, columns, "p1")


def right_projection(a: BialgebraPresentation, b: BialgebraPresentation) -> LinearMap:
    """``epsilon (x) Id: A (x) B -> B``."""
    product = tensor_bialgebra(a, b)
    columns = [{j: a.counit[i]} if a.counit[i] else {} for i in range(a.dim) for j in range(b.dim)]
    return LinearMap.from_columns(product, b, columns, "p2")


def conjugation_map(a: TensorElement) -> LinearMap:
    """``x -> a x a^-1`` on the carrier of ``a``."""
    if a.arity != 1:
        raise SignatureMismatch("conjugation needs an element of arity 1")
    p = a.factors[0]
    a_inv = elem_inv(a)
    images = [elem_mul(elem_mul(a, basis_element(p, j)), a_inv) for j in range(p.dim)]
    return LinearMap.from_images(p, p, images, "â")


def _basis_products(p: BialgebraPresentation) -> Iterator[tuple[int, int, TensorElement]]:
    for i, j in itertools.product(range(p.dim), repeat=2):
        yield i, j, product_element(p, i, j)


def _delta(p: BialgebraPresentation, i: int) -> TensorElement:
    return TensorElement._make((p, p), p.comult[i])


@lru_cache(maxsize=512)
def validate_bialgebra(p: BialgebraPresentation) -> ValidationReport:
    """Check the bialgebra axioms; failures carry the first index and the residual."""
    report = ValidationReport(f"bialgebra {p.name or '?'}")
    one = unit_element((p,))
    e = [basis_element(p, i) for i in range(p.dim)]
    products = {(i, j): x for i, j, x in _basis_products(p)}
    report.expect_equal(
        "associativity",
        (
            ((i, j, k), elem_mul(products[i, j], e[k]), elem_mul(e[i], products[j, k]))
            for i, j, k in itertools.product(range(p.dim), repeat=3)
        ),
    )
    report.expect_equal(
        "unitality",
        itertools.chain(
            (((i,), elem_mul(one, e[i]), e[i]) for i in range(p.dim)),
            (((i,), elem_mul(e[i], one), e[i]) for i in range(p.dim)),
        ),
    )
    report.expect_equal(
        "coassociativity",
        (((i,), leg_comult(_delta(p, i), 1), leg_comult(_delta(p, i), 2)) for i in range(p.dim)),
    )
    report.expect_equal(
        "counitality",
        itertools.chain(
            (((i,), leg_counit(_delta(p, i), {1}), e[i]) for i in range(p.dim)),
            (((i,), leg_counit(_delta(p, i), {2}), e[i]) for i in range(p.dim)),
        ),
    )
    report.expect_equal(
        "Δ algebra map",
        (
            ((i, j), comult(products[i, j]), elem_mul(_delta(p, i), _delta(p, j)))
            for i, j in itertools.product(range(p.dim), repeat=2)
        ),
    )
    report.expect_equal("Δ unital", [((), comult(one), unit_element((p, p)))])
    report.expect_equal(
        "ε algebra map",
        (
            ((i, j), counit_value(products[i, j]), p.counit[i] * p.counit[j])
            for i, j in itertools.product(range(p.dim), repeat=2)
        ),
    )
    report.expect_equal("ε unital", [((), counit_value(one), p.field.one)])
    return report


def validate_morphism(f: LinearMap) -> ValidationReport:
    """Check that ``f`` is a morphism of bialgebras from its source to its target."""
    src, tgt = f.source, f.target
    report = ValidationReport(f"morphism {f.name or '?'}: {src.name} -> {tgt.name}")
    images = [f(basis_element(src, j)) for j in range(src.dim)]
    report.expect_equal(
        "multiplicative",
        (
            ((i, j), f(product_element(src, i, j)), elem_mul(images[i], images[j]))
            for i, j in itertools.product(range(src.dim), repeat=2)
        ),
    )
    report.expect_equal("unital", [((), f(unit_element((src,))), unit_element((tgt,)))])
    report.expect_equal(
        "counital", (((j,), counit_value(images[j]), src.counit[j]) for j in range(src.dim))
    )
    report.expect_equal(
        "comultiplicative",
        (((j,), f(_delta(src, j)), comult(images[j])) for j in range(src.dim)),
    )
    return report
