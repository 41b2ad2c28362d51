"""The JSON presentation document: a bialgebra, named elements and named morphisms.

Every scalar is a string in the scalar grammar. Elements are sparse lists of
``[i_1, ..., i_k, "scalar"]``; morphism matrices are dense. ``dumps`` writes
the canonical form, so ``dumps(loads(text)) == text`` for canonical text.
"""

from __future__ import annotations

import json
import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .algebra import BialgebraPresentation, LinearMap, TensorElement
from .errors import DocumentError, TwistlabError
from .scalar import FieldSpec, Scalar, scalar_parse, scalar_print

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MorphismEntry:
    target: str
    matrix: tuple[tuple[Scalar, ...], ...]
    twist: str | None = None


@dataclass
class PresentationDocument:
    presentation: BialgebraPresentation
    elements: dict[str, dict[tuple[int, ...], Scalar]] = field(default_factory=dict)
    morphisms: dict[str, MorphismEntry] = field(default_factory=dict)
    path: Path | None = None

    @property
    def field(self) -> FieldSpec:
        return self.presentation.field

    def element(self, name: str, factors: Sequence[BialgebraPresentation] | None = None) -> TensorElement:
        """The named element; its legs default to copies of this presentation."""
        try:
            terms = self.elements[name]
        except KeyError:
            known = ", ".join(sorted(self.elements)) or "none"
            raise DocumentError(f"no element {name!r} (known: {known})") from None
        arity = len(next(iter(terms), ())) or (len(factors) if factors else 1)
        factors = tuple(factors) if factors is not None else (self.presentation,) * arity
        try:
            return TensorElement(factors, terms)
        except TwistlabError as e:
            raise DocumentError(f"element {name!r}: {e}") from e

    def has_element(self, name: str) -> bool:
        return name in self.elements

    def resolve_target(self, entry: MorphismEntry) -> PresentationDocument:
        if entry.target == "self":
            return self
        base = self.path.parent if self.path is not None else Path.cwd()
        return load(base / entry.target)

    def morphism(self, name: str) -> tuple[LinearMap, PresentationDocument, TensorElement | None]:
        """The map, the document of its target, and its twist element if one is named."""
        try:
            entry = self.morphisms[name]
        except KeyError:
            known = ", ".join(sorted(self.morphisms)) or "none"
            raise DocumentError(f"no morphism {name!r} (known: {known})") from None
        target = self.resolve_target(entry)
        f = LinearMap(self.presentation, target.presentation, entry.matrix, name)
        twist = target.element(entry.twist) if entry.twist else None
        return f, target, twist


def _require(obj: dict, key: str, kind: type, where: str = "document") -> Any:
    if key not in obj:
        raise DocumentError(f"{where}: missing key {key!r}")
    value = obj[key]
    if not isinstance(value, kind):
        raise DocumentError(f"{where}: {key!r} must be a {kind.__name__}")
    return value


def _optional(obj: dict, key: str, kind: type, default: Any, where: str = "document") -> Any:
    if key not in obj:
        return default
    value = obj[key]
    if not isinstance(value, kind):
        raise DocumentError(f"{where}: {key!r} must be a {kind.__name__}")
    return value


def _field(raw: Any) -> FieldSpec:
    if not isinstance(raw, dict) or "kind" not in raw:
        raise DocumentError("'field' must be an object with a 'kind'")
    if raw["kind"] == "rational":
        return FieldSpec.rational()
    if raw["kind"] == "cyclotomic" and isinstance(raw.get("order"), int):
        return FieldSpec.cyclotomic(raw["order"])
    raise DocumentError(f"unsupported field {raw!r}")


def _scalar(raw: Any, fld: FieldSpec, where: str) -> Scalar:
    if not isinstance(raw, str):
        raise DocumentError(f"{where}: scalars are strings, got {raw!r}")
    return scalar_parse(raw, fld)


def _sparse(raw: Any, arity: int, dim: int | None, fld: FieldSpec, where: str) -> dict:
    if not isinstance(raw, list):
        raise DocumentError(f"{where}: expected a sparse list")
    out = {}
    for entry in raw:
        if not isinstance(entry, list) or len(entry) != arity + 1:
            raise DocumentError(f"{where}: entries have {arity} indices and a scalar, got {entry!r}")
        *index, value = entry
        if any(not isinstance(i, int) or i < 0 or (dim is not None and i >= dim) for i in index):
            raise DocumentError(f"{where}: index {index} out of range for dimension {dim}")
        out[tuple(index)] = _scalar(value, fld, where)
    return out


def _element(raw: Any, fld: FieldSpec, where: str) -> dict:
    if raw == []:
        return {}
    if not isinstance(raw, list) or not isinstance(raw[0], list) or len(raw[0]) < 2:
        raise DocumentError(f"{where}: an element is a sparse list")
    return _sparse(raw, len(raw[0]) - 1, None, fld, where)


def from_dict(obj: Any, path: Path | None = None) -> PresentationDocument:
    if not isinstance(obj, dict):
        raise DocumentError("a document is a JSON object")
    fld = _field(obj.get("field"))
    dim = _require(obj, "dim", int)
    basis = _require(obj, "basis", list)
    if len(basis) != dim or not all(isinstance(b, str) for b in basis):
        raise DocumentError(f"'basis' must list {dim} labels")
    unit = {k[0]: v for k, v in _sparse(_require(obj, "unit", list), 1, dim, fld, "unit").items()}
    mult_raw = _require(obj, "mult", list)
    if len(mult_raw) != dim or any(not isinstance(row, list) or len(row) != dim for row in mult_raw):
        raise DocumentError(f"'mult' must be a {dim}x{dim} array")
    mult = [
        [{k[0]: v for k, v in _sparse(cell, 1, dim, fld, f"mult[{i}][{j}]").items()} for j, cell in enumerate(row)]
        for i, row in enumerate(mult_raw)
    ]
    comult_raw = _require(obj, "comult", list)
    if len(comult_raw) != dim:
        raise DocumentError(f"'comult' must have {dim} entries")
    comult = [_sparse(entry, 2, dim, fld, f"comult[{i}]") for i, entry in enumerate(comult_raw)]
    counit_raw = _require(obj, "counit", list)
    if len(counit_raw) != dim:
        raise DocumentError(f"'counit' must have {dim} entries")
    counit = [_scalar(c, fld, "counit") for c in counit_raw]
    name = _optional(obj, "name", str, path.stem if path else "")
    p = BialgebraPresentation(fld, basis, mult, unit, comult, counit, name=name)

    elements = {
        key: _element(raw, fld, f"elements[{key!r}]") for key, raw in _optional(obj, "elements", dict, {}).items()
    }
    morphisms = {}
    for key, raw in _optional(obj, "morphisms", dict, {}).items():
        where = f"morphisms[{key!r}]"
        if not isinstance(raw, dict):
            raise DocumentError(f"{where}: expected an object")
        matrix = _require(raw, "matrix", list, where)
        if any(not isinstance(row, list) or len(row) != dim for row in matrix):
            raise DocumentError(f"{where}: every matrix row has {dim} entries")
        morphisms[key] = MorphismEntry(
            target=_optional(raw, "target", str, "self", where),
            matrix=tuple(tuple(_scalar(v, fld, where) for v in row) for row in matrix),
            twist=_optional(raw, "twist", str, None, where),
        )
    return PresentationDocument(p, elements, morphisms, path)


def loads(text: str, path: Path | None = None) -> PresentationDocument:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(f"invalid JSON: {e}") from e
    return from_dict(obj, path)


def load(path: str | Path) -> PresentationDocument:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise DocumentError(f"cannot read {path}: {e.strerror or e}") from e
    try:
        doc = loads(text, path)
    except DocumentError as e:
        raise DocumentError(f"{path}: {e}") from e
    logger.debug("loaded %s", path)
    return doc


def _field_json(fld: FieldSpec) -> dict:
    if fld.kind == "rational":
        return {"kind": "rational"}
    return {"kind": "cyclotomic", "order": fld.order}


def _sparse_json(terms: dict) -> list[list]:
    return [[*(key if isinstance(key, tuple) else (key,)), scalar_print(v)] for key, v in sorted(terms.items())]


def to_dict(doc: PresentationDocument) -> dict[str, Any]:
    p = doc.presentation
    out: dict[str, Any] = {
        "name": p.name,
        "field": _field_json(p.field),
        "dim": p.dim,
        "basis": list(p.basis_labels),
        "unit": _sparse_json(p.unit),
        "mult": [[_sparse_json(cell) for cell in row] for row in p.mult],
        "comult": [_sparse_json(entry) for entry in p.comult],
        "counit": [scalar_print(c) for c in p.counit],
    }
    if doc.elements:
        out["elements"] = {name: _sparse_json(terms) for name, terms in sorted(doc.elements.items())}
    if doc.morphisms:
        out["morphisms"] = {
            name: {
                "target": m.target,
                "matrix": [[scalar_print(v) for v in row] for row in m.matrix],
                **({"twist": m.twist} if m.twist else {}),
            }
            for name, m in sorted(doc.morphisms.items())
        }
    return out


def dumps(doc: PresentationDocument) -> str:
    return json.dumps(to_dict(doc), indent=2, ensure_ascii=False) + "\n"


def emit(doc: PresentationDocument, path: str | Path) -> Path:
    path = Path(path)
    path.write_text(dumps(doc), encoding="utf-8")
    logger.info("wrote %s", path)
    return path


def document_for(
    p: BialgebraPresentation,
    elements: dict[str, TensorElement] | None = None,
    morphisms: dict[str, tuple[LinearMap, str]] | None = None,
) -> PresentationDocument:
    """A document for ``p``; morphisms given as ``(map, twist name)`` target ``self``."""
    entries = {}
    for name, (f, twist) in (morphisms or {}).items():
        entries[name] = MorphismEntry("self", f.matrix, twist or None)
    return PresentationDocument(p, {name: dict(e.terms) for name, e in (elements or {}).items()}, entries)
