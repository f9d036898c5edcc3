"""Command-line interface.

Exit codes: 0 success, 1 mathematical failure (with a witness in the
report), 2 I/O or format errors.  Set ADO_LOG=info or ADO_LOG=debug for
progress messages on stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from . import catalog
from .embed import ExpansionError, LiftingError, ScalarSearchError
from .exact_linalg import NonIntegralMatrixError
from .jsonio import (
    JsonFormatError,
    ado_report_to_json,
    certificate_report_to_json,
    certificate_to_json,
    frac_to_str,
    lattice_from_json,
    lattice_to_json,
    rep_from_json,
    rep_to_json,
    submodule_rows_to_json,
    verification_report_to_json,
)
from .lie_core import (
    LatticeValidationError,
    LieLattice,
    center,
    derived_series,
    lower_central_series,
    nilradical,
    solvable_radical,
    validate,
)
from .nilrep import burde_bound, monomial_count, nilpotent_faithful_rep
from .pipeline import (
    VerificationFailure,
    ado_representation,
    degree_bound,
    verify_certificate,
    verify_representation,
)

EXIT_OK = 0
EXIT_MATH = 1
EXIT_FORMAT = 2


def _emit(payload, pretty: bool) -> None:
    print(json.dumps(payload, indent=2 if pretty else None))


def _load_lattice(path: str) -> LieLattice:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    return lattice_from_json(data)


def cmd_validate(args) -> int:
    L = _load_lattice(args.file)
    report = validate(L)
    _emit(
        {
            "ok": report.ok,
            "antisymmetry_violations": [list(t) for t in report.antisymmetry_violations],
            "jacobi_violations": [list(t) for t in report.jacobi_violations],
            "integrality_violations": [list(t) for t in report.integrality_violations],
        },
        args.pretty,
    )
    return EXIT_OK if report.ok else EXIT_MATH


def cmd_radicals(args) -> int:
    L = _load_lattice(args.file)
    payload = {
        "center": submodule_rows_to_json(center(L).module.basis),
        "solvable_radical": submodule_rows_to_json(solvable_radical(L).module.basis),
        "nilradical": submodule_rows_to_json(nilradical(L).module.basis),
        "lower_central": [
            submodule_rows_to_json(m.module.basis) for m in lower_central_series(L)
        ],
        "derived": [
            submodule_rows_to_json(m.module.basis) for m in derived_series(L)
        ],
    }
    _emit(payload, args.pretty)
    return EXIT_OK


def cmd_nilrep(args) -> int:
    from .lie_core import nilpotency_class
    from .nilrep import birkhoff_bounds

    L = _load_lattice(args.file)
    rep = nilpotent_faithful_rep(L)
    report = verify_representation(L, rep)
    _emit(
        {
            "representation": rep_to_json(rep),
            "monomial_count": monomial_count(L),
            "burde_bound": frac_to_str(burde_bound(L.rank)),
            "comparison_bounds": {
                k: frac_to_str(v)
                for k, v in birkhoff_bounds(L.rank, nilpotency_class(L)).items()
            },
            "report": verification_report_to_json(report),
        },
        args.pretty,
    )
    return EXIT_OK if report.ok else EXIT_MATH


def cmd_embed(args) -> int:
    from .embed import embed_splittable

    L = _load_lattice(args.file)
    cert = embed_splittable(L, max_scalar_search=args.max_scalar_search)
    report = verify_certificate(cert)
    payload = certificate_to_json(cert)
    payload["report"] = certificate_report_to_json(report)
    _emit(payload, args.pretty)
    return EXIT_OK if report.ok else EXIT_MATH


def cmd_ado(args) -> int:
    L = _load_lattice(args.file)
    rep, report, cert = ado_representation(
        L,
        strict=args.strict_theorem_path,
        max_scalar_search=args.max_scalar_search,
    )
    payload = {
        "representation": rep_to_json(rep),
        "report": ado_report_to_json(report),
        "degree_bound": frac_to_str(degree_bound(L.rank)),
    }
    if args.emit_certificate and cert is not None:
        payload["certificate"] = certificate_to_json(cert)
    _emit(payload, args.pretty)
    return EXIT_OK if report.ok else EXIT_MATH


def cmd_verify(args) -> int:
    L = _load_lattice(args.lattice)
    with open(args.representation, "r", encoding="utf-8") as fh:
        rep = rep_from_json(json.load(fh), L)
    report = verify_representation(L, rep)
    _emit(verification_report_to_json(report), args.pretty)
    return EXIT_OK if report.ok else EXIT_MATH


def cmd_catalog(args) -> int:
    if args.name is None:
        _emit(catalog.names(), args.pretty)
        return EXIT_OK
    try:
        entry = catalog.get(args.name)
    except KeyError:
        print(f"unknown catalog entry: {args.name}", file=sys.stderr)
        return EXIT_FORMAT
    _emit(lattice_to_json(entry.lattice), args.pretty)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="adorep",
        description="Faithful integer matrix representations of Lie lattices "
        "with certified degree bounds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--pretty", action="store_true", help="indent JSON output")

    p = sub.add_parser("validate", help="check antisymmetry and the Jacobi identity")
    p.add_argument("file")
    common(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("radicals", help="center, radicals and series")
    p.add_argument("file")
    common(p)
    p.set_defaults(func=cmd_radicals)

    p = sub.add_parser("nilrep", help="faithful representation of a nilpotent lattice")
    p.add_argument("file")
    common(p)
    p.set_defaults(func=cmd_nilrep)

    p = sub.add_parser("embed", help="splittable extension certificate")
    p.add_argument("file")
    p.add_argument("--max-scalar-search", type=int, default=64)
    common(p)
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("ado", help="faithful representation within the degree bound")
    p.add_argument("file")
    p.add_argument("--strict-theorem-path", action="store_true",
                   help="disable the nilpotent and semisimple shortcuts")
    p.add_argument("--emit-certificate", action="store_true")
    p.add_argument("--max-scalar-search", type=int, default=64)
    common(p)
    p.set_defaults(func=cmd_ado)

    p = sub.add_parser("verify", help="independently check a representation file")
    p.add_argument("lattice")
    p.add_argument("representation")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("catalog", help="list built-in lattices or emit one")
    p.add_argument("name", nargs="?")
    common(p)
    p.set_defaults(func=cmd_catalog)

    return parser


def main(argv=None) -> int:
    level = os.environ.get("ADO_LOG", "warning").upper()
    logging.basicConfig(
        stream=sys.stderr,
        level=getattr(logging, level, logging.WARNING),
        format="%(levelname)s %(name)s: %(message)s",
    )
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (OSError, json.JSONDecodeError, JsonFormatError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except VerificationFailure as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_MATH
    except (LatticeValidationError, NonIntegralMatrixError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MATH
    except (ExpansionError, LiftingError, ScalarSearchError) as exc:
        print(f"construction error: {exc}", file=sys.stderr)
        return EXIT_MATH


if __name__ == "__main__":
    sys.exit(main())
