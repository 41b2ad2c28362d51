"""Exact linear systems over a FieldSpec, solved with sympy's sparse DomainMatrix."""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass

from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError, DMNonSquareMatrixError

from .errors import NotInvertible
from .scalar import FieldSpec, Scalar

Row = Mapping[int, Scalar]


@dataclass(frozen=True)
class AffineSolution:
    """All solutions ``point + sum(t_k * directions[k])``."""

    point: tuple[Scalar, ...]
    directions: tuple[tuple[Scalar, ...], ...]

    @property
    def dimension(self) -> int:
        return len(self.directions)

    def at(self, params: Sequence[Scalar]) -> tuple[Scalar, ...]:
        if len(params) != len(self.directions):
            raise ValueError(f"expected {len(self.directions)} parameters, got {len(params)}")
        out = list(self.point)
        for t, direction in zip(params, self.directions):
            if t:
                for i, v in enumerate(direction):
                    if v:
                        out[i] = out[i] + t * v
        return tuple(out)


def to_domain_matrix(rows: Sequence[Row], ncols: int, field: FieldSpec) -> DomainMatrix:
    """Sparse rows ``{column: scalar}`` as a DomainMatrix over ``field.domain``."""
    entries: dict[int, dict] = {}
    for i, row in enumerate(rows):
        converted = {j: field(v).to_domain() for j, v in row.items() if v}
        if converted:
            entries[i] = converted
    return DomainMatrix(entries, (len(rows), ncols), field.domain)


def from_domain_matrix(matrix: DomainMatrix, field: FieldSpec) -> dict[int, dict[int, Scalar]]:
    return {i: {j: field.from_domain(v) for j, v in row.items()} for i, row in matrix.to_sparse().rep.items()}


def rref(rows: Sequence[Row], ncols: int, field: FieldSpec) -> dict[int, dict[int, Scalar]]:
    """Reduced row echelon form as ``{pivot column: row}`` with unit pivots."""
    if not rows:
        return {}
    reduced, pivots = to_domain_matrix(rows, ncols, field).rref()
    entries = from_domain_matrix(reduced, field)
    return {pivot: entries.get(k, {}) for k, pivot in enumerate(pivots)}


def solve_affine(
    rows: Sequence[Row],
    rhs: Sequence[Scalar],
    ncols: int,
    field: FieldSpec,
) -> AffineSolution | None:
    """Solve ``rows . x = rhs``; None when the system is inconsistent."""
    augmented = []
    for row, b in zip(rows, rhs):
        r = dict(row)
        if b:
            r[ncols] = b
        augmented.append(r)
    basis = rref(augmented, ncols + 1, field)
    if ncols in basis:
        return None
    zero = field.zero
    point = [zero] * ncols
    for pivot, row in basis.items():
        point[pivot] = row.get(ncols, zero)
    free = [c for c in range(ncols) if c not in basis]
    directions = []
    for f in free:
        direction = [zero] * ncols
        direction[f] = field.one
        for pivot, row in basis.items():
            v = row.get(f)
            if v:
                direction[pivot] = -v
        directions.append(tuple(direction))
    return AffineSolution(tuple(point), tuple(directions))


def nullspace(rows: Sequence[Row], ncols: int, field: FieldSpec) -> tuple[tuple[Scalar, ...], ...]:
    solution = solve_affine(rows, [field.zero] * len(rows), ncols, field)
    assert solution is not None
    return solution.directions


def solve(
    rows: Sequence[Row],
    rhs: Sequence[Scalar],
    ncols: int,
    field: FieldSpec,
) -> tuple[Scalar, ...] | None:
    """The unique solution, or None if there is none or more than one."""
    solution = solve_affine(rows, rhs, ncols, field)
    if solution is None or solution.dimension:
        return None
    return solution.point


def _dense(matrix: Sequence[Sequence[Scalar]]) -> list[dict[int, Scalar]]:
    return [{j: v for j, v in enumerate(row) if v} for row in matrix]


def rank(matrix: Sequence[Sequence[Scalar]], field: FieldSpec) -> int:
    if not matrix:
        return 0
    return to_domain_matrix(_dense(matrix), len(matrix[0]), field).rank()


def inverse(matrix: Sequence[Sequence[Scalar]], field: FieldSpec) -> tuple[tuple[Scalar, ...], ...]:
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise NotInvertible("only square matrices are invertible")
    try:
        inv = to_domain_matrix(_dense(matrix), n, field).inv()
    except (DMNonInvertibleMatrixError, DMNonSquareMatrixError):
        raise NotInvertible("matrix is singular") from None
    entries = from_domain_matrix(inv, field)
    zero = field.zero
    return tuple(tuple(entries.get(i, {}).get(j, zero) for j in range(n)) for i in range(n))
