"""
Command line interface.

.. code-block:: console

    $ torchlorentz fourvector classify 1 0 0 1
    lightlike, stabilizer H3Zero, space Pi3Zero
    $ torchlorentz --format json subgroup normalizer H3Plus

Reports go to stdout, log messages and errors to stderr. The exit status
is zero on success, 2 for invalid input, 3 for a vanishing input, 4 when a
subalgebra cannot be identified and 5 for unsupported requests and failed
membership tests.
"""
import contextlib
import dataclasses
import json
import logging
import sys
from argparse import ArgumentError
from typing import Any, Callable, Optional, Union

import torch
from jsonargparse import ArgumentParser, Namespace
from jsonargparse.typing import NonNegativeInt, Path_fr, PositiveInt

import torchlorentz
from torchlorentz.algebra import AlgebraElement, GroupElement
from torchlorentz.exceptions import (
    IdentificationError,
    InvalidDocumentError,
    NotMemberError,
    NotTriangularError,
    UnclassifiableDimensionError,
    UnsupportedError,
    VerificationError,
    ZeroElementError,
    ZeroSpinorError,
    ZeroVectorError,
)
from torchlorentz.homspaces import (
    FourVector,
    classify_fourvector,
    classify_velocity,
    covariant_map_exists,
)
from torchlorentz.orbits import canonical_form
from torchlorentz.subalgebras import closure, identify
from torchlorentz.subgroups import (
    SUBGROUP_FAMILIES,
    coset_representatives,
    contains_minus_e,
    make_subgroup,
    normalizer,
)
from torchlorentz.utils.tolerances import (
    PositiveTolerance,
    Tolerances,
    get_tolerances,
    use_tolerances,
)

log = logging.getLogger(__name__)

__all__ = [
    "ElementDocument",
    "MatrixDocument",
    "validate_document",
    "build_parser",
    "main",
]

# first match wins; the zero and membership errors derive from ValueError
EXIT_CODES = (
    ((ZeroElementError, ZeroVectorError, ZeroSpinorError), 3),
    (
        (UnclassifiableDimensionError, IdentificationError, VerificationError),
        4,
    ),
    ((UnsupportedError, NotMemberError, NotTriangularError), 5),
    ((ValueError, KeyError, TypeError), 2),
)

Report = tuple[str, Any]

Entry = Union[float, dict[str, float]]


@dataclasses.dataclass
class ElementDocument:
    """
    An algebra element as ``{"alpha": [a1, a2, a3], "beta": [b1, b2, b3]}``,
    the coordinates of its rotation and boost parts.
    """

    alpha: tuple[float, float, float]
    beta: tuple[float, float, float]

    def to_element(self) -> AlgebraElement:
        return AlgebraElement.from_parts(list(self.alpha), list(self.beta))


@dataclasses.dataclass
class MatrixDocument:
    """
    A 2x2 complex matrix given row by row. Entries are real numbers or
    ``{"re": x, "im": y}`` records, with ``im`` defaulting to zero.
    """

    rows: tuple[tuple[Entry, Entry], tuple[Entry, Entry]]

    def to_tensor(self) -> torch.Tensor:
        entries = [[_complex_from_json(z) for z in row] for row in self.rows]
        return torch.tensor(entries, dtype=torch.complex128)


def validate_document(document_type: type, document: Any) -> Any:
    """
    Checks a decoded JSON object against the fields of ``document_type``.

    Raises:
        InvalidDocumentError: if a field is missing, unknown or mistyped
    """
    name = document_type.__name__
    if not isinstance(document, dict):
        raise InvalidDocumentError(
            f"{name} must be an object, got {type(document).__name__}"
        )
    parser = ArgumentParser(exit_on_error=False)
    parser.add_class_arguments(document_type)
    try:
        cfg = parser.parse_object(document)
    except ArgumentError as error:
        raise InvalidDocumentError(f"Invalid {name}: {error}") from error
    return document_type(**cfg.as_dict())


def _complex_to_json(z: complex) -> dict:
    return {"re": z.real, "im": z.imag}


def _complex_from_json(entry: Entry) -> complex:
    if isinstance(entry, dict):
        if "re" not in entry or not set(entry) <= {"re", "im"}:
            raise InvalidDocumentError(
                f"Matrix entries need keys 're' and optionally 'im', "
                f"got {sorted(entry)}"
            )
        return complex(entry["re"], entry.get("im", 0.0))
    return complex(entry)


def matrix_to_json(matrix: torch.Tensor) -> list:
    return [[_complex_to_json(z) for z in row] for row in matrix.tolist()]


def matrix_from_json(document: Any) -> torch.Tensor:
    """
    Reads a 2x2 matrix given as nested lists of ``{"re", "im"}`` records.
    """
    return validate_document(MatrixDocument, {"rows": document}).to_tensor()


def element_to_json(A: AlgebraElement) -> dict:
    return {"alpha": A.alpha.tolist(), "beta": A.beta.tolist()}


def element_from_json(document: Any) -> AlgebraElement:
    return validate_document(ElementDocument, document).to_element()


def _load(path: Path_fr) -> Any:
    try:
        return json.loads(path.get_content())
    except json.JSONDecodeError as error:
        raise InvalidDocumentError(f"{path}: {error}") from error


def _list(path: Path_fr) -> list:
    document = _load(path)
    if not isinstance(document, list):
        raise InvalidDocumentError(f"{path}: expected a JSON list")
    return document


def _classify_element(cfg: Namespace) -> Report:
    A = element_from_json(_load(cfg.input))
    report = canonical_form(A)
    inv = report.invariants
    result = {
        **report.element_class.as_dict(),
        "invariants": {"c1": inv.c1, "c2": inv.c2},
        "representative": element_to_json(report.representative),
        "conjugator": matrix_to_json(report.conjugator.matrix),
    }
    c = report.element_class
    params = ", ".join(
        f"{name}={value:g}"
        for name, value in (("mu", c.mu), ("nu", c.nu))
        if value is not None
    )
    text = f"{c.kind.value}, {params}" if params else c.kind.value
    return text, result


def _identify_subalgebra(cfg: Namespace) -> Report:
    generators = [element_from_json(record) for record in _list(cfg.input)]
    c, witness = identify(closure(generators))
    result = {**c.as_dict(), "witness": matrix_to_json(witness.matrix)}
    return str(c), result


def _descriptor(family: str, cfg: Namespace):
    elements = None
    if cfg.elements is not None:
        elements = tuple(matrix_from_json(m) for m in _list(cfg.elements))
    return make_subgroup(
        family,
        lam=cfg.lam,
        n=cfg.n,
        eta=cfg.eta,
        k=cfg.k,
        h=cfg.h,
        nu=cfg.nu,
        elements=elements,
    )


def _subgroup_contains(cfg: Namespace, bound: int) -> Report:
    d = _descriptor(cfg.family, cfg)
    if cfg.matrix is None:
        raise ValueError("contains requires --matrix")
    g = GroupElement(matrix_from_json(_load(cfg.matrix)))
    try:
        component = d.component_of(g).as_dict()
    except NotMemberError:
        component = None
    result = {"contains": component is not None, "component": component}
    return str(component is not None).lower(), result


def _subgroup_components(cfg: Namespace, bound: int) -> Report:
    d = _descriptor(cfg.family, cfg)
    representatives = coset_representatives(d, bound)
    result = [
        {"component": component.as_dict(), "matrix": matrix_to_json(q.matrix)}
        for component, q in representatives.items()
    ]
    return f"{len(result)} components", result


def _subgroup_normalizer(cfg: Namespace, bound: int) -> Report:
    N = normalizer(_descriptor(cfg.family, cfg))
    return str(N), N.as_dict()


def _subgroup_minus_e(cfg: Namespace, bound: int) -> Report:
    answer = contains_minus_e(_descriptor(cfg.family, cfg))
    return str(answer).lower(), {"contains_minus_e": answer}


_SUBGROUP_ACTIONS = {
    "contains": _subgroup_contains,
    "components": _subgroup_components,
    "normalizer": _subgroup_normalizer,
    "minus-e": _subgroup_minus_e,
}


def _fourvector(cfg: Namespace) -> Report:
    action = cfg.subcommand
    args = cfg[action]
    x = FourVector(args.x0, args.x1, args.x2, args.x3)
    if action == "velocity":
        label = classify_velocity(x)
        result = {
            "space": label.as_dict(),
            "stabilizer": label.stabilizer.as_dict(),
        }
        text = f"space {label}, stabilizer {label.stabilizer}"
        return text, result

    report = classify_fourvector(x)
    result = {
        "orbit": report.orbit.value,
        "stabilizer": report.stabilizer.as_dict(),
        "space": report.label.as_dict(),
        "witness": matrix_to_json(report.witness.matrix),
        "representative": report.representative.as_list(),
        "scale": report.scale,
    }
    text = (
        f"{report.orbit.causal_type}, stabilizer {report.stabilizer}, "
        f"space {report.label}"
    )
    return text, result


def _covmap(cfg: Namespace) -> Report:
    source = make_subgroup(cfg.source, **(cfg.source_params or {}))
    target = make_subgroup(cfg.target, **(cfg.target_params or {}))
    answer = covariant_map_exists(source, target)
    result = {
        "source": source.as_dict(),
        "target": target.as_dict(),
        **answer.as_dict(),
    }
    return answer.kind.value, result


def _catalog(cfg: Namespace) -> Report:
    result = [
        {
            "family": family,
            "connected": cls.connected,
            "in_catalog": cls.in_catalog,
            "params": [f.name for f in dataclasses.fields(cls)],
        }
        for family, cls in SUBGROUP_FAMILIES.items()
    ]
    return "\n".join(SUBGROUP_FAMILIES), result


def _add_family_options(parser: ArgumentParser) -> None:
    parser.add_argument("family", type=str, help="Family tag, e.g. H3Plus")
    parser.add_argument("--lam", type=Optional[float], help="lambda")
    parser.add_argument("--n", type=Optional[PositiveInt])
    parser.add_argument("--eta", type=Optional[float])
    parser.add_argument("--k", type=Optional[float])
    parser.add_argument("--h", type=Optional[float])
    parser.add_argument("--nu", type=Optional[int])
    parser.add_argument(
        "--elements",
        type=Optional[Path_fr],
        help="JSON list of generating matrices, for H6Discrete",
    )
    parser.add_argument(
        "--matrix",
        type=Optional[Path_fr],
        help="JSON file with a 2x2 matrix of {re, im} entries",
    )


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(
        prog="torchlorentz",
        description="Classification tools for the Lorentz group",
    )
    parser.add_argument(
        "--tol",
        type=Optional[PositiveTolerance],
        help="Uniform override of the comparison tolerances",
    )
    parser.add_argument(
        "--format", type=str, choices=["text", "json"], default="text"
    )
    parser.add_argument(
        "--bound",
        type=NonNegativeInt,
        default=3,
        help="Truncation |m| <= bound of infinite component families",
    )
    parser.add_argument(
        "--log-level",
        type=str,
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        default="WARNING",
    )

    subcommands = parser.add_subcommands()

    classify = ArgumentParser(description="Orbit of an algebra element")
    classify.add_argument("input", type=Path_fr)
    subcommands.add_subcommand("classify-element", classify)

    identify_ = ArgumentParser(description="Catalog class of a subalgebra")
    identify_.add_argument("input", type=Path_fr)
    subcommands.add_subcommand("identify-subalgebra", identify_)

    subgroup = ArgumentParser(description="Queries on a subgroup family")
    subcommands.add_subcommand("subgroup", subgroup)
    actions = subgroup.add_subcommands()
    for name in _SUBGROUP_ACTIONS:
        action = ArgumentParser()
        _add_family_options(action)
        actions.add_subcommand(name, action)

    fourvector = ArgumentParser(description="Orbits of four-vectors")
    subcommands.add_subcommand("fourvector", fourvector)
    fourvector_actions = fourvector.add_subcommands()
    for name in ("classify", "velocity"):
        action = ArgumentParser()
        for component in ("x0", "x1", "x2", "x3"):
            action.add_argument(component, type=float)
        fourvector_actions.add_subcommand(name, action)

    covmap = ArgumentParser(description="Existence of covariant maps")
    covmap.add_argument("source", type=str)
    covmap.add_argument("target", type=str)
    covmap.add_argument("--source-params", type=Optional[dict])
    covmap.add_argument("--target-params", type=Optional[dict])
    subcommands.add_subcommand("covmap", covmap)

    catalog = ArgumentParser(description="The subgroup families")
    subcommands.add_subcommand("catalog", catalog)
    catalog_actions = catalog.add_subcommands()
    catalog_actions.add_subcommand("list", ArgumentParser())

    return parser


def _dispatch(cfg: Namespace) -> tuple[str, Report]:
    command = cfg.subcommand
    args = cfg[command]
    handlers: dict[str, Callable[[Namespace], Report]] = {
        "classify-element": _classify_element,
        "identify-subalgebra": _identify_subalgebra,
        "fourvector": _fourvector,
        "covmap": _covmap,
        "catalog": _catalog,
    }
    if command == "subgroup":
        action = args.subcommand
        report = _SUBGROUP_ACTIONS[action](args[action], cfg.bound)
        return f"subgroup {action}", report
    if command in ("fourvector", "catalog"):
        return f"{command} {args.subcommand}", handlers[command](args)
    return command, handlers[command](args)


def _render(command: str, report: Report, format: str) -> str:
    text, result = report
    if format == "text":
        return text
    document = {
        "version": torchlorentz.__version__,
        "tolerances": get_tolerances().as_dict(),
        "command": command,
        "result": result,
    }
    return json.dumps(document, sort_keys=True, indent=2)


def _exit_code(error: Exception) -> Optional[int]:
    for classes, code in EXIT_CODES:
        if isinstance(error, classes):
            return code
    return None


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        cfg = parser.parse_args(argv)
    except SystemExit as error:
        return error.code if isinstance(error.code, int) else 2

    logging.basicConfig(
        level=cfg.log_level,
        stream=sys.stderr,
        format="%(levelname)s:%(name)s: %(message)s",
    )

    tolerances = (
        use_tolerances(Tolerances.uniform(cfg.tol))
        if cfg.tol is not None
        else contextlib.nullcontext()
    )
    with tolerances:
        try:
            command, report = _dispatch(cfg)
            output = _render(command, report, cfg.format)
        except Exception as error:
            code = _exit_code(error)
            if code is None:
                raise
            log.error("%s: %s", type(error).__name__, error)
            return code

    print(output)
    return 0


if __name__ == "__main__":
    sys.exit(main())
