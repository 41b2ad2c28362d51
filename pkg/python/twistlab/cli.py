"""
Command-line interface for twistlab.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from rich.console import Console
from rich.logging import RichHandler
from rich.markup import escape

from . import document as docs
from .algebra import TensorElement, fold, left_projection, right_projection, tensor_bialgebra, validate_bialgebra
from .config import Settings
from .errors import DocumentError, InvariantViolation, TwistlabError, ValidationFailed
from .report import ValidationReport
from .twist import (
    Twist,
    canonical_form_check,
    check_quasitriangular,
    check_twist,
    check_weak_rmatrix,
    decompose_rmatrix,
    phi_decompose,
    twist_bialgebra,
    twist_rmatrix,
)
from .twtr import (
    TriangularBialgebra,
    TwistedMorphism,
    check_twisted_morphism,
    compose,
    diagonal,
    gauge_equivalent,
    product,
    projections,
)
from .zoo import ExampleRequest

logger = logging.getLogger("twistlab")

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_INTERRUPTED = 0, 1, 2, 130


@dataclass
class Outcome:
    """What one command did: the JSON report is ``{command, inputs, checks, outputs?}``."""

    command: str
    inputs: dict[str, Any]
    reports: list[ValidationReport] = field(default_factory=list)
    outputs: dict[str, Any] = field(default_factory=dict)
    text: str | None = None

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.reports)

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "command": self.command,
            "inputs": self.inputs,
            "checks": [check.to_dict() for r in self.reports for check in r.checks],
        }
        if self.outputs:
            out["outputs"] = self.outputs
        return out


def _report_of(result: Any) -> ValidationReport:
    return result if isinstance(result, ValidationReport) else result.report


def _r_matrix(doc: docs.PresentationDocument, name: str = "R", *, triangular: bool | None = True):
    """The named R-matrix of a document, validated, or None when the document has none."""
    if not doc.has_element(name):
        return None
    return check_quasitriangular(doc.presentation, doc.element(name), triangular=triangular)


def _cell(doc: docs.PresentationDocument, name: str, outcome: Outcome) -> TwistedMorphism | None:
    """Validate a named morphism; triangular when both ends carry an ``R``."""
    f, target, element = doc.morphism(name)
    twist: Twist | TensorElement = element if element is not None else Twist.trivial(target.presentation)
    source_r = target_r = None
    if doc.has_element("R") and target.has_element("R"):
        for d, label in ((doc, "source"), (target, "target")):
            r = _r_matrix(d)
            if isinstance(r, ValidationReport):
                outcome.reports.append(r)
                logger.error("%s R-matrix of %s is not triangular", label, name)
                return None
        source_r, target_r = _r_matrix(doc), _r_matrix(target)
    result = check_twisted_morphism(f, twist, source_r, target_r)
    outcome.reports.append(_report_of(result))
    return None if isinstance(result, ValidationReport) else result


def cmd_check(args: argparse.Namespace) -> Outcome:
    doc = docs.load(args.file)
    p = doc.presentation
    outcome = Outcome("check", {"file": str(args.file), "mode": args.mode})
    bialgebra = validate_bialgebra(p)
    outcome.reports.append(bialgebra)
    mode, _, rest = args.mode.partition(":")
    if mode == "bialgebra" or not bialgebra.ok:
        return outcome
    if mode in ("quasitriangular", "triangular"):
        result = _r_matrix(doc, args.element, triangular=True if mode == "triangular" else None)
        if result is None:
            raise DocumentError(f"{args.file} has no element {args.element!r}")
        outcome.reports.append(_report_of(result))
        if not isinstance(result, ValidationReport):
            outcome.outputs["triangular"] = result.triangular
    elif mode == "twist" and rest:
        outcome.reports.append(_report_of(check_twist(p, doc.element(rest))))
    elif mode == "weak" and rest:
        name, _, other = rest.partition(":")
        right = docs.load(Path(args.file).parent / other).presentation if other else p
        result = check_weak_rmatrix(p, right, doc.element(name, (p, right)))
        outcome.reports.append(_report_of(result))
        if not isinstance(result, ValidationReport):
            outcome.outputs["central"] = result.central
    elif mode == "morphism" and rest:
        cell = _cell(doc, rest, outcome)
        if cell is not None:
            outcome.outputs["triangular"] = cell.triangular
    else:
        raise DocumentError(f"unknown mode {args.mode!r}")
    return outcome


def cmd_twist(args: argparse.Namespace) -> Outcome:
    doc = docs.load(args.file)
    p = doc.presentation
    outcome = Outcome("twist", {"file": str(args.file), "element": args.element})
    result = check_twist(p, doc.element(args.element))
    outcome.reports.append(_report_of(result))
    if isinstance(result, ValidationReport):
        return outcome
    twisted = twist_bialgebra(p, result)
    elements = {}
    r = _r_matrix(doc, triangular=None)
    if r is not None:
        outcome.reports.append(_report_of(r))
        if isinstance(r, ValidationReport):
            return outcome
        elements["R"] = twist_rmatrix(r, result).element
    _write(outcome, docs.document_for(twisted, elements), args.output)
    return outcome


def _split_element(doc: docs.PresentationDocument, name: str, a, b) -> TensorElement:
    """An element over ``A (x) B``, given with 2 product indices or 4 split indices."""
    prod = tensor_bialgebra(a, b)
    terms = doc.elements.get(name)
    if terms and len(next(iter(terms))) == 4:
        return fold(doc.element(name, (a, b, a, b)), (prod, prod))
    return doc.element(name, (prod, prod))


def cmd_decompose(args: argparse.Namespace) -> Outcome:
    doc_a, doc_b = docs.load(args.file_a), docs.load(args.file_b)
    a, b = doc_a.presentation, doc_b.presentation
    outcome = Outcome(
        "decompose",
        {"file_a": str(args.file_a), "file_b": str(args.file_b), "element": args.element, "as": args.kind},
    )
    prod = tensor_bialgebra(a, b)
    element = _split_element(doc_a, args.element, a, b)
    if args.kind == "twist":
        result = check_twist(prod, element)
        outcome.reports.append(_report_of(result))
        if isinstance(result, ValidationReport):
            return outcome
        phi = phi_decompose(a, b, result)
        canonical = ValidationReport("canonical form")
        canonical.add("canonical form", canonical_form_check(a, b, result))
        outcome.reports.append(canonical)
        outcome.outputs.update(phi.to_json())
    else:
        result = check_quasitriangular(prod, element)
        outcome.reports.append(_report_of(result))
        if isinstance(result, ValidationReport):
            return outcome
        r1, r2, q = decompose_rmatrix(a, b, result)
        outcome.outputs.update(
            {"R1": r1.element.to_json(), "R2": r2.element.to_json(), "Q": q.element.to_json()}
        )
    outcome.text = json.dumps(outcome.outputs, indent=2, ensure_ascii=False)
    return outcome


def _triangular(doc: docs.PresentationDocument, outcome: Outcome) -> TriangularBialgebra | None:
    r = _r_matrix(doc)
    if r is None:
        raise DocumentError(f"{doc.path} has no element 'R'")
    outcome.reports.append(_report_of(r))
    if isinstance(r, ValidationReport):
        return None
    return TriangularBialgebra(doc.presentation, r)


def _relative(target: Path, output: str | None) -> str:
    if output is None:
        return str(target)
    return os.path.relpath(target, Path(output).resolve().parent)


def cmd_product(args: argparse.Namespace) -> Outcome:
    doc_a, doc_b = docs.load(args.file_a), docs.load(args.file_b)
    inputs = {"file_a": str(args.file_a), "file_b": str(args.file_b)}
    if args.diag:
        inputs.update({"source": str(args.source), "diag": list(args.diag)})
    outcome = Outcome("product", inputs)
    x1, x2 = _triangular(doc_a, outcome), _triangular(doc_b, outcome)
    if x1 is None or x2 is None:
        return outcome
    prod = product(x1, x2)
    p = prod.carrier
    result = docs.document_for(p, {"R": prod.r.element})
    for name, proj, src in (("p1", left_projection, args.file_a), ("p2", right_projection, args.file_b)):
        result.morphisms[name] = docs.MorphismEntry(
            _relative(Path(src).resolve(), args.output), proj(x1.carrier, x2.carrier).matrix
        )
    if args.diag:
        if args.source is None:
            raise DocumentError("--diag needs --source")
        source = docs.load(args.source)
        cells = [_cell(source, name, outcome) for name in args.diag]
        if any(c is None for c in cells):
            return outcome
        c1, c2 = cells
        if not (c1.triangular and c2.triangular) or c1.target != x1.carrier or c2.target != x2.carrier:
            raise DocumentError("the --diag morphisms must map into the two factors with R-matrices")
        cell = diagonal(c1, c2)
        outcome.reports.append(cell.report)
        p1, p2 = projections(x1, x2)
        recovered = cell.target_r.element == prod.r.element and compose(p1, cell) == c1 and compose(p2, cell) == c2
        legs = ValidationReport("diagonal")
        legs.add("projections recover the legs", recovered)
        outcome.reports.append(legs)
        outcome.outputs["diagonal"] = cell.to_json()
    _write(outcome, result, args.output)
    return outcome


def cmd_example(args: argparse.Namespace) -> Outcome:
    orders = tuple(int(o) for o in args.orders.split(",")) if args.orders else (2,)
    request = ExampleRequest(
        name=args.name,
        lam=args.lam,
        d=args.d,
        s=args.s,
        orders=orders,
        field=args.field,
        n=args.n,
    )
    inputs = {k: v for k, v in vars(args).items() if k in {"name", "lam", "d", "s", "orders", "field", "n"} and v is not None}
    outcome = Outcome("example", inputs)
    fixture = request.build()
    outcome.reports.append(validate_bialgebra(fixture.presentation))
    _write(outcome, docs.document_for(fixture.presentation, fixture.elements, fixture.morphisms), args.output)
    return outcome


def cmd_gauge(args: argparse.Namespace) -> Outcome:
    doc = docs.load(args.file)
    outcome = Outcome("gauge", {"file": str(args.file), "first": args.first, "second": args.second})
    c1, c2 = _cell(doc, args.first, outcome), _cell(doc, args.second, outcome)
    if c1 is None or c2 is None:
        return outcome
    verdict = gauge_equivalent(c1, c2)
    report = ValidationReport("gauge equivalence")
    report.add("gauge equivalent", verdict.status == "equal", detail=verdict.status)
    outcome.reports.append(report)
    outcome.outputs["status"] = verdict.status
    if verdict.dimension is not None:
        outcome.outputs["dimension"] = verdict.dimension
    if verdict.witness is not None:
        outcome.outputs["witness"] = verdict.witness.a.to_json()
    return outcome


def _write(outcome: Outcome, doc: docs.PresentationDocument, output: str | None) -> None:
    if output:
        docs.emit(doc, output)
        outcome.outputs["document"] = str(output)
    else:
        outcome.outputs["document"] = docs.to_dict(doc)
        outcome.text = docs.dumps(doc).rstrip("\n")


def _print_human(outcome: Outcome, console: Console) -> None:
    for report in outcome.reports:
        for check in report.checks:
            mark = "[green]✓[/green]" if check.passed else "[red]✗[/red]"
            line = f"{report.subject}: {check.name}"
            if not check.passed:
                if check.index is not None:
                    line += f" at {list(check.index)}"
                if check.residual is not None:
                    line += f", residual {check.residual}"
                if check.detail:
                    line += f" ({check.detail})"
            console.print(f"{mark} {escape(line)}", highlight=False, soft_wrap=True)
    if outcome.text is not None:
        console.print(outcome.text, markup=False, highlight=False, soft_wrap=True)


def _configure_logging(args: argparse.Namespace, settings: Settings) -> None:
    if args.quiet:
        level = logging.ERROR
    elif args.verbose:
        level = logging.DEBUG
    else:
        level = settings.log_level
    handler = RichHandler(
        console=Console(stderr=True, no_color=settings.no_color), show_time=False, show_path=False
    )
    logging.basicConfig(level=level, format="%(message)s", handlers=[handler], force=True)


def _add_common(parser: argparse.ArgumentParser, *, output: bool = False) -> None:
    parser.add_argument("--json", action="store_true", help="Print a JSON report")
    parser.add_argument(
        "-q",
        "--quiet",
        action="store_true",
        help="Suppress warnings and informational messages",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="Log debugging details")
    if output:
        parser.add_argument("-o", "--output", type=str, default=None, help="Write the document to this path")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twistlab", description="Exact checks for twists, R-matrices and twisted morphisms"
    )
    subparsers = parser.add_subparsers(dest="command", help="Commands")

    check = subparsers.add_parser("check", help="Validate a presentation document")
    check.add_argument("file", help="Presentation document (JSON)")
    check.add_argument(
        "--mode",
        default="bialgebra",
        help="bialgebra, quasitriangular, triangular, twist:NAME, weak:NAME[:OTHERFILE] or morphism:NAME",
    )
    check.add_argument("--element", default="R", help="R-matrix element name (default: R)")
    _add_common(check)

    twist = subparsers.add_parser("twist", help="Twist a bialgebra (and its R-matrix) by a named element")
    twist.add_argument("file")
    twist.add_argument("--element", required=True, help="Name of the twist element")
    _add_common(twist, output=True)

    decompose = subparsers.add_parser("decompose", help="Split a twist or R-matrix on A⊗B into components")
    decompose.add_argument("file_a")
    decompose.add_argument("file_b")
    decompose.add_argument("--element", required=True, help="Element of file_a over A⊗B")
    decompose.add_argument("--as", dest="kind", choices=["twist", "rmatrix"], default="twist")
    _add_common(decompose)

    prod = subparsers.add_parser("product", help="Binary product of two triangular bialgebras")
    prod.add_argument("file_a")
    prod.add_argument("file_b")
    prod.add_argument("--diag", nargs=2, metavar=("M1", "M2"), help="Morphisms of --source into A and B")
    prod.add_argument("--source", default=None, help="Document holding the --diag morphisms")
    _add_common(prod, output=True)

    example = subparsers.add_parser("example", help="Write a fixture document")
    example.add_argument("name", choices=["sweedler", "group_algebra", "gamma_twist", "base_field"])
    example.add_argument("--lambda", dest="lam", default="0", help="Sweedler R-matrix parameter")
    example.add_argument("--d", default=None, help="Sweedler twist parameter")
    example.add_argument("--s", default=None, help="Sweedler morphism scale")
    example.add_argument("--orders", default=None, help="Comma-separated cyclic orders")
    example.add_argument("--field", default="rational", help="rational or cyclotomic:N")
    example.add_argument("--n", type=int, default=2, help="gamma_twist order")
    _add_common(example, output=True)

    gauge = subparsers.add_parser("gauge", help="Search for a gauge transformation between two morphisms")
    gauge.add_argument("file")
    gauge.add_argument("first")
    gauge.add_argument("second")
    _add_common(gauge)
    return parser


COMMANDS = {
    "check": cmd_check,
    "twist": cmd_twist,
    "decompose": cmd_decompose,
    "product": cmd_product,
    "example": cmd_example,
    "gauge": cmd_gauge,
}


def main(argv: list[str] | None = None):
    """CLI entry point."""
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help()
        sys.exit(EXIT_USAGE)

    try:
        settings = Settings.from_env()
        _configure_logging(args, settings)
        outcome = COMMANDS[args.command](args)
        if args.json:
            print(json.dumps(outcome.to_dict(), indent=2, ensure_ascii=False))
        else:
            _print_human(outcome, Console(no_color=settings.no_color))
        sys.exit(EXIT_OK if outcome.ok else EXIT_FAILED)
    except KeyboardInterrupt:
        sys.exit(EXIT_INTERRUPTED)
    except (ValidationFailed, InvariantViolation) as e:
        print(f"Error: {e}", file=sys.stderr)
        sys.exit(EXIT_FAILED)
    except TwistlabError as e:
        print(f"Error: {e}", file=sys.stderr)
        sys.exit(EXIT_USAGE)
    except Exception as e:
        print(f"Error: {e}", file=sys.stderr)
        sys.exit(EXIT_FAILED)


if __name__ == "__main__":
    main()
