import argparse
import logging
import sys
from typing import List, Optional, Sequence

from src.bounds.weighted import WeightedSearchOptions
from src.config import Settings
from src.errors import InconsistencyError, OrthoRankError, ValidationError
from src.exact import ExactLimits
from src.graphs import FamilySpec, generate, serialize_graph6
from src.report import OutputFormat, ReportOptions, emit, resolve_source, run_batch
from src.representations.certificates import (
    OrthoRepresentation,
    load_certificate,
    inertial_condition_holds,
    verify_dr_representation,
    verify_orthogonal_representation,
)
from src.representations.fixtures import shipped_certificates
from src.representations.search import SearchConfig
from src.spectral import inertia

logger = logging.getLogger("orthorank")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_SOUNDNESS = 2
EXIT_INCONCLUSIVE = 3


class UsageError(ValidationError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser(settings: Settings) -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=settings.seed, help="root random seed")
    common.add_argument(
        "--tol-zero", type=float, default=settings.tol_zero, help="absolute zero tolerance for inertia"
    )
    common.add_argument("--restarts", type=int, default=settings.restarts, help="search restarts per dimension")
    common.add_argument(
        "--max-n-exact",
        type=int,
        default=settings.max_n_exact,
        help="largest n for exact oracles and the xi search",
    )
    common.add_argument("--json", action="store_true", help="emit JSON documents, one per line")
    common.add_argument("--workers", type=int, default=settings.workers, help="concurrent documents")
    common.add_argument("--strict", action="store_true", help="exit 3 when a search budget runs out")
    common.add_argument("--timing", action="store_true", help="record runtime in meta")
    common.add_argument("--log-level", default=settings.log_level, help="logging level (stderr)")

    parser = _Parser(
        description="Spectral lower bounds and certificates for orthogonal rank and chromatic parameters"
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sources = "graph6 string, graph6 file, '-' for stdin, or a family spec such as kneser:5,2"

    report = sub.add_parser("report", parents=[common], help="full battery")
    report.add_argument("sources", nargs="+", help=sources)
    report.add_argument("--weighted", action="store_true", help="run the weighted Hoffman search")
    report.add_argument("--no-xi", action="store_true", help="skip the orthogonal-representation search")

    bounds = sub.add_parser("bounds", parents=[common], help="spectral bounds only")
    bounds.add_argument("sources", nargs="+", help=sources)
    bounds.add_argument("--weighted", action="store_true", help="run the weighted Hoffman search")

    exact = sub.add_parser("exact", parents=[common], help="exact oracles only")
    exact.add_argument("sources", nargs="+", help=sources)

    xi = sub.add_parser("xi", parents=[common], help="orthogonal rank interval")
    xi.add_argument("sources", nargs="+", help=sources)
    xi.add_argument("--max-dim", type=int, default=None, help="largest dimension to search")

    verify = sub.add_parser("verify", parents=[common], help="check certificate files")
    verify.add_argument("certificates", nargs="*", help="certificate JSON files (default: the bundled d/r-representations)")

    gen = sub.add_parser("gen", parents=[common], help="print a family member as graph6")
    gen.add_argument("family", help="family spec such as cycle:5")
    return parser


def _options(args, settings: Settings) -> ReportOptions:
    command = args.command
    search = SearchConfig(
        restarts=args.restarts,
        max_iters=settings.max_iters,
        seed=args.seed,
        dimension_range=(1, getattr(args, "max_dim", None)),
    )
    weighted = (
        WeightedSearchOptions(seed=args.seed) if getattr(args, "weighted", False) else None
    )
    return ReportOptions(
        bounds=command in ("report", "bounds", "xi"),
        exact=command in ("report", "exact"),
        xi=command == "xi" or (command == "report" and not args.no_xi),
        seed=args.seed,
        tol_zero=args.tol_zero,
        max_n_exact=args.max_n_exact,
        limits=ExactLimits(coloring_budget=settings.coloring_budget),
        search=search,
        weighted=weighted,
        timing=args.timing,
        workers=args.workers,
    )


def _run_reports(args, settings: Settings) -> int:
    inputs = [item for source in args.sources for item in resolve_source(source)]
    logger.info("%s: %d graphs", args.command, len(inputs))
    documents = run_batch(inputs, _options(args, settings))
    output = OutputFormat.JSON if args.json else OutputFormat.TABLE
    for i, doc in enumerate(documents):
        if output is OutputFormat.TABLE and i:
            print()
        print(emit(doc, output))
    if any(doc.soundness_failures for doc in documents):
        return EXIT_SOUNDNESS
    if args.strict and any(doc.inconclusive for doc in documents):
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def _bundled_certificates():
    for text, cert in shipped_certificates():
        yield text, generate(FamilySpec.parse(text)), cert


def _certificate_files(paths: Sequence[str]):
    for path in paths:
        with open(path, "r") as f:
            g, cert = load_certificate(f.read())
        yield path, g, cert


def _verify(paths: Sequence[str]) -> int:
    """Check certificate files, or the bundled d/r-representations when none are given."""
    code = EXIT_OK
    certificates = _certificate_files(paths) if paths else _bundled_certificates()
    for path, g, cert in certificates:
        if isinstance(cert, OrthoRepresentation):
            check = verify_orthogonal_representation(g, cert)
            n_plus, _, n_minus = inertia(g).inertia
            if check.valid and not inertial_condition_holds(cert.dimension, n_plus, n_minus):
                raise InconsistencyError(f"{path}: certificate violates the inertial condition")
            claim = f"xi <= {cert.dimension}" if check.valid else "no claim"
            print(f"{path}: {'valid' if check.valid else 'invalid'} ({claim}, residual {check.residual:.3g})")
            diagnostics = check.diagnostics
        else:
            result = verify_dr_representation(g, cert)
            claim = f"xi^[{cert.rank}] <= {cert.dimension}" if result.valid else "no claim"
            met = ", meets the inertial bound" if result.valid and result.conjecture_holds else ""
            print(f"{path}: {'valid' if result.valid else 'invalid'} ({claim}, d/r = {result.ratio}){met}")
            if result.valid and not result.conjecture_holds:
                print(f"{path}: below the inertial bound (conjecture counterexample)")
            diagnostics = result.diagnostics
        for line in diagnostics:
            print(f"  {line}")
        if diagnostics:
            code = EXIT_SOUNDNESS
    return code


def main(argv: Optional[List[str]] = None) -> int:
    try:
        settings = Settings.from_env()
        args = build_parser(settings).parse_args(argv)
        level = args.log_level.upper()
        if not isinstance(logging.getLevelName(level), int):
            raise UsageError(f"unknown log level {args.log_level!r}")
        logging.basicConfig(
            level=level,
            stream=sys.stderr,
            format="%(asctime)s %(name)s %(levelname)s %(message)s",
        )
        if args.command == "gen":
            print(serialize_graph6(generate(FamilySpec.parse(args.family))))
            return EXIT_OK
        if args.command == "verify":
            return _verify(args.certificates)
        return _run_reports(args, settings)
    except InconsistencyError as e:
        print(f"error: internal inconsistency: {e}", file=sys.stderr)
        return EXIT_SOUNDNESS
    except (OrthoRankError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
