"""
Per-graph report documents: bounds, exact parameters, the xi interval,
hierarchy consistency checks and out-of-scope notes, with JSON and table
emitters.
"""
import json
import logging
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, replace
try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from enum import Enum

    class StrEnum(str, Enum):
        __str__ = str.__str__
        __format__ = str.__format__
from fractions import Fraction
from typing import Any, Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from src import __version__
from src.bounds import BoundValue, SpectralProfile
from src.bounds.battery import BoundSet, evaluate_bounds
from src.bounds.weighted import WeightedSearchOptions
from src.errors import ValidationError
from src.exact import ExactLimits, ExactParams, compute_exact
from src.graphs import FamilySpec, Graph, generate, parse_graph6, read_graph6_lines
from src.representations.interval import XiInterval, xi_interval
from src.representations.search import SearchConfig
from src.spectral import Spectrum

logger = logging.getLogger(__name__)

SOUNDNESS_SLACK = 1e-9
COLLAPSE_TOLERANCE = 1e-8
OUT_OF_SCOPE = (
    "theta, theta+, chi_vect, chi_q and chi_c values need semidefinite programming "
    "or quantum protocol analysis and are not computed"
)


class Status(StrEnum):
    PASS = "pass"
    FAIL = "fail"
    SKIPPED = "skipped"


class OutputFormat(StrEnum):
    JSON = "json"
    TABLE = "table"


def fmt_number(value) -> Any:
    """Rationals as "p/q" (or "p"), floats to 9 significant digits."""
    if value is None:
        return None
    if isinstance(value, Fraction):
        return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    if isinstance(value, (int, np.integer)):
        return int(value)
    return float(f"{float(value):.9g}")


# --- inputs -----------------------------------------------------------------


class GraphInput(NamedTuple):
    graph: Graph
    family: Optional[FamilySpec] = None


def resolve_source(source: str, stdin: Optional[Iterable[str]] = None) -> List[GraphInput]:
    """
    Interpret a graph source: "-" reads graph6 lines from stdin, an existing
    path is a graph6 file, "name:p1,p2" is a family spec, anything else a
    single graph6 string.
    """
    if source == "-":
        lines = stdin if stdin is not None else sys.stdin
        return [GraphInput(g) for g in read_graph6_lines(lines, "<stdin>")]
    if os.path.isfile(source):
        with open(source, "r") as f:
            return [GraphInput(g) for g in read_graph6_lines(f, source)]
    if ":" in source:
        spec = FamilySpec.parse(source)
        return [GraphInput(generate(spec), spec)]
    return [GraphInput(parse_graph6(source.strip()))]


# --- options and document ---------------------------------------------------


@dataclass(frozen=True)
class ReportOptions:
    bounds: bool = True
    exact: bool = True
    xi: bool = True
    seed: int = 0
    tol_zero: Optional[float] = None
    max_n_exact: int = 20
    limits: ExactLimits = field(default_factory=ExactLimits)
    search: SearchConfig = field(default_factory=SearchConfig)
    generalized: Tuple[str, ...] = ("zero", "degree")
    weighted: Optional[WeightedSearchOptions] = None
    timing: bool = False
    workers: int = 1


@dataclass(frozen=True)
class Check:
    name: str
    status: Status
    soundness: bool
    detail: str = ""


@dataclass(frozen=True)
class ReportDocument:
    """
    JSON-shaped report for one graph. Every field holds plain JSON values, so
    a document read back from its JSON text compares equal to the original.
    """

    graph: Dict[str, Any]
    spectra: Dict[str, Any]
    bounds: Optional[Dict[str, Any]]
    exact: Optional[Dict[str, Any]]
    xi: Optional[Dict[str, Any]]
    checks: List[Dict[str, Any]]
    notes: List[str]
    meta: Dict[str, Any]

    @property
    def soundness_failures(self) -> List[str]:
        return [
            c["name"] for c in self.checks if c["soundness"] and c["status"] == Status.FAIL
        ]

    @property
    def inconclusive(self) -> bool:
        return self.exact is not None and not self.exact["conclusive"]

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ReportDocument":
        return cls(**data)

    @classmethod
    def from_json(cls, text: str) -> "ReportDocument":
        return cls.from_dict(json.loads(text))


# --- sections ---------------------------------------------------------------


def _spectrum_summary(s: Spectrum) -> Dict[str, Any]:
    return {
        "largest": fmt_number(s.largest) if s.n else None,
        "smallest": fmt_number(s.smallest) if s.n else None,
        "inertia": list(s.inertia),
        "multiplicities": [[fmt_number(value), count] for value, count in s.multiplicities()],
        "zero_tolerance": fmt_number(s.zero_tolerance),
        "borderline": s.borderline,
    }


def _bounds_section(bounds: BoundSet) -> Dict[str, Any]:
    named = bounds.named()
    section = {
        "values": {k: fmt_number(b.value) for k, b in named.items()},
        "targets": {k: str(b.target) for k, b in named.items()},
        "provenance": {k: b.matrix for k, b in named.items()},
        "degenerate": sorted(k for k, b in named.items() if b.degenerate),
    }
    if bounds.weighted_hoffman is not None:
        w = bounds.weighted_hoffman
        section["weighted"] = {
            "nonnegative": w.nonnegative,
            "restart": w.restart,
            "evaluations": w.evaluations,
        }
    return section


def _exact_section(params: ExactParams) -> Dict[str, Any]:
    return {
        "chi": params.chi,
        "chi_bounds": list(params.chi_bounds),
        "omega": params.omega,
        "alpha": params.alpha,
        "chi_f": fmt_number(params.chi_f),
        "conclusive": params.conclusive,
        "chi_f_skipped": params.chi_f_skipped,
    }


def _xi_section(interval: XiInterval) -> Dict[str, Any]:
    cert = interval.certificate
    return {
        "lower": fmt_number(interval.lower),
        "lower_source": interval.lower_source,
        "lower_ceiling": interval.lower_ceiling,
        "upper": interval.upper,
        "collapsed": interval.collapsed,
        "certificate": None
        if cert is None
        else {"dimension": cert.dimension, "residual": fmt_number(cert.residual)},
    }


# --- checks -----------------------------------------------------------------


def _compare(
    name: str,
    bound: Optional[BoundValue],
    parameter,
    what: str,
    soundness: bool = True,
) -> Check:
    if bound is None:
        return Check(name, Status.SKIPPED, soundness, "bound not evaluated")
    if parameter is None:
        return Check(name, Status.SKIPPED, soundness, f"{what} not computed")
    if bound.degenerate:
        return Check(name, Status.SKIPPED, soundness, "degenerate bound (no edges)")
    if isinstance(bound.value, Fraction) and isinstance(parameter, (int, Fraction)):
        ok = bound.value <= parameter
    else:
        ok = float(bound.value) <= float(parameter) + SOUNDNESS_SLACK
    detail = f"{fmt_number(bound.value)} <= {what} = {fmt_number(parameter)}"
    return Check(name, Status.PASS if ok else Status.FAIL, soundness, detail)


def _regular_collapse(g: Graph, bounds: BoundSet) -> Check:
    name = "regular_collapse"
    if not g.is_regular():
        return Check(name, Status.SKIPPED, True, "graph is not regular")
    trio = (bounds.hoffman, bounds.lima, bounds.kolotilina)
    if any(b.degenerate for b in trio):
        return Check(name, Status.SKIPPED, True, "degenerate bound (no edges)")
    values = [float(b.value) for b in trio]
    spread = max(values) - min(values)
    status = Status.PASS if spread <= COLLAPSE_TOLERANCE else Status.FAIL
    return Check(name, status, True, f"spread {spread:.3g}")


def consistency_checks(
    g: Graph,
    bounds: BoundSet,
    adjacency: Spectrum,
    exact: Optional[ExactParams],
    interval: Optional[XiInterval],
) -> List[Check]:
    chi = exact.chi if exact else None
    chi_f = exact.chi_f if exact else None
    named = bounds.named()
    checks = [
        _compare(f"{name}<=chi", b, chi, "chi")
        for name, b in named.items()
        if name != "weaker_inertial"
    ]
    w = bounds.weighted_hoffman
    if w is not None and w.nonnegative:
        checks.append(_compare("weighted_hoffman<=chi_f", w.as_bound(), chi_f, "chi_f"))
    checks.append(_compare("weaker_inertial<=chi_f", bounds.weaker_inertial, chi_f, "chi_f"))
    # proved for non-singular graphs, conjectured otherwise
    nonsingular = adjacency.inertia.zero == 0
    checks.append(
        _compare("inertial<=chi_f", bounds.inertial, chi_f, "chi_f", soundness=nonsingular)
    )
    upper = interval.upper if interval else None
    checks.append(_compare("inertial<=xi_upper", bounds.inertial, upper, "xi upper bound"))
    ok = bounds.weaker_inertial.value <= bounds.inertial.value
    checks.append(
        Check(
            "weaker_inertial<=inertial",
            Status.PASS if ok else Status.FAIL,
            True,
            f"{fmt_number(bounds.weaker_inertial.value)} <= {fmt_number(bounds.inertial.value)}",
        )
    )
    checks.append(_regular_collapse(g, bounds))
    return checks


def derived_notes(
    g: Graph, bounds: BoundSet, adjacency: Spectrum, exact: Optional[ExactParams]
) -> List[str]:
    notes = [OUT_OF_SCOPE]
    p, z, q = adjacency.inertia
    if z != 0 or bounds.inertial.degenerate:
        return notes
    inertial = bounds.inertial.value
    chi_f = exact.chi_f if exact else None
    if chi_f is None:
        notes.append(f"chi_f >= {fmt_number(inertial)}")
    elif bounds.weaker_inertial.value == chi_f:
        notes.append(f"xi_f = chi_f = {fmt_number(chi_f)}")
    if exact is not None and exact.cliques_conclusive and exact.alpha == min(p, q):
        notes.append(
            f"alpha = min(n+, n-) = {exact.alpha}: n/alpha = "
            f"{fmt_number(Fraction(g.n, exact.alpha))} equals the inertial bound"
        )
    return notes


# --- running ----------------------------------------------------------------


def run_report(source: GraphInput, options: Optional[ReportOptions] = None) -> ReportDocument:
    """Evaluate everything the options ask for on one graph."""
    options = options or ReportOptions()
    g, family = source
    started = time.perf_counter()
    profile = SpectralProfile.of(g, options.tol_zero)
    bounds = evaluate_bounds(
        g,
        generalized=options.generalized,
        weighted=options.weighted,
        profile=profile,
    )
    notes = []

    exact = None
    if options.exact:
        if g.n <= options.max_n_exact:
            exact = compute_exact(g, options.limits)
        else:
            notes.append(f"exact oracles skipped: n = {g.n} > {options.max_n_exact}")

    interval = None
    if options.xi:
        if g.n <= options.max_n_exact:
            interval = xi_interval(g, replace(options.search, seed=options.seed), bounds)
        else:
            notes.append(f"xi search skipped: n = {g.n} > {options.max_n_exact}")

    checks = consistency_checks(g, bounds, profile.adjacency, exact, interval)
    notes = derived_notes(g, bounds, profile.adjacency, exact) + notes
    meta = {
        "seed": options.seed,
        "tolerances": {
            "zero": fmt_number(profile.adjacency.zero_tolerance),
            "success": fmt_number(options.search.success_tolerance),
            "soundness_slack": SOUNDNESS_SLACK,
        },
        "version": __version__,
    }
    if options.timing:
        meta["runtime_seconds"] = round(time.perf_counter() - started, 3)

    failures = [c.name for c in checks if c.soundness and c.status is Status.FAIL]
    if failures:
        logger.error("soundness checks failed for %s: %s", g.label(), ", ".join(failures))
    return ReportDocument(
        graph={
            "name": g.label(),
            "n": g.n,
            "m": g.m,
            "family": str(family) if family else None,
        },
        spectra={
            kind: _spectrum_summary(s)
            for kind, s in (
                ("adjacency", profile.adjacency),
                ("laplacian", profile.laplacian),
                ("signless-laplacian", profile.signless),
            )
        },
        bounds=_bounds_section(bounds) if options.bounds else None,
        exact=_exact_section(exact) if exact else None,
        xi=_xi_section(interval) if interval else None,
        checks=[
            {"name": c.name, "status": str(c.status), "soundness": c.soundness, "detail": c.detail}
            for c in checks
        ],
        notes=notes,
        meta=meta,
    )


def graph_seed(seed: int, index: int) -> int:
    """Per-document seed derived from the global seed and the input position."""
    return int(np.random.SeedSequence((seed, index)).generate_state(1)[0])


def run_batch(inputs: Sequence[GraphInput], options: ReportOptions) -> List[ReportDocument]:
    """Reports for every input, in input order, with at most options.workers in flight."""

    def one(indexed: Tuple[int, GraphInput]) -> ReportDocument:
        index, source = indexed
        seed = options.seed if len(inputs) == 1 else graph_seed(options.seed, index)
        return run_report(source, replace(options, seed=seed))

    if options.workers <= 1 or len(inputs) <= 1:
        return [one(item) for item in enumerate(inputs)]
    with ThreadPoolExecutor(max_workers=options.workers) as executor:
        return list(executor.map(one, enumerate(inputs)))


# --- emitters ---------------------------------------------------------------


def _table(rows: Sequence[Tuple[str, Any]]) -> List[str]:
    width = max((len(k) for k, _ in rows), default=0)
    return [f"  {k:<{width}}  {v}" for k, v in rows]


def emit_table(doc: ReportDocument) -> str:
    graph = doc.graph
    lines = [f"{graph['name']}  n={graph['n']}  m={graph['m']}"]
    adjacency = doc.spectra["adjacency"]
    lines.append(f"  inertia (n+, n0, n-) = {tuple(adjacency['inertia'])}")
    if adjacency["borderline"]:
        lines.append("  warning: an eigenvalue lies near the zero tolerance")
    if doc.bounds:
        lines.append("bounds")
        lines += _table(
            [
                (name, f"{value}  [{doc.bounds['targets'][name]}]")
                for name, value in doc.bounds["values"].items()
            ]
        )
    if doc.exact:
        lines.append("exact")
        e = doc.exact
        chi = e["chi"] if e["chi"] is not None else f"in {e['chi_bounds']}"
        lines += _table(
            [("chi", chi), ("chi_f", e["chi_f"] or "-"), ("omega", e["omega"]), ("alpha", e["alpha"])]
        )
    if doc.xi:
        upper = doc.xi["upper"] if doc.xi["upper"] is not None else "?"
        lines.append(f"xi in [{doc.xi['lower']} ({doc.xi['lower_source']}), {upper}]")
    lines.append("checks")
    lines += _table(
        [(c["name"], c["status"] + (f"  {c['detail']}" if c["detail"] else "")) for c in doc.checks]
    )
    lines += [f"note: {note}" for note in doc.notes]
    return "\n".join(lines)


def emit(doc: ReportDocument, output: OutputFormat = OutputFormat.JSON) -> str:
    """Serialise one document; JSON uses fixed key order so output is byte-stable."""
    output = OutputFormat(output)
    if output is OutputFormat.JSON:
        return json.dumps(doc.to_dict())
    if output is OutputFormat.TABLE:
        return emit_table(doc)
    raise ValidationError(f"unknown output format {output!r}")
