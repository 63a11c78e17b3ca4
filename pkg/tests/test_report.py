import json
from fractions import Fraction

import pytest

from src.report import (
    OUT_OF_SCOPE,
    GraphInput,
    OutputFormat,
    ReportDocument,
    ReportOptions,
    emit,
    fmt_number,
    graph_seed,
    resolve_source,
    run_batch,
    run_report,
)
from src.representations.search import SearchConfig
from src.errors import GraphFormatError, ValidationError
from src.graphs import FamilySpec, empty_graph
from tests.conftest import family, random_connected_graphs

OPTIONS = ReportOptions()


def _input(text: str) -> GraphInput:
    return resolve_source(text)[0]


def _check(doc: ReportDocument, name: str) -> dict:
    return next(c for c in doc.checks if c["name"] == name)


def test_c5_report():
    """Test the full report on C5."""
    doc = run_report(_input("cycle:5"), OPTIONS)
    assert doc.graph == {"name": "cycle:5", "n": 5, "m": 5, "family": "cycle:5"}
    assert doc.spectra["adjacency"]["inertia"] == [3, 0, 2]
    values = doc.bounds["values"]
    for name in ("hoffman", "lima", "kolotilina"):
        assert values[name] == pytest.approx(2.23606798, abs=1e-8)
    assert values["inertial"] == "5/2"
    assert values["weaker_inertial"] == "5/2"
    assert doc.bounds["targets"]["inertial"] == "xi"
    assert doc.exact["chi"] == 3
    assert doc.exact["chi_f"] == "5/2"
    assert doc.xi["lower"] == "5/2"
    assert doc.xi["lower_ceiling"] == 3
    assert doc.xi["upper"] == 3
    assert doc.xi["collapsed"]
    assert doc.soundness_failures == []
    assert _check(doc, "inertial<=chi_f")["status"] == "pass"
    assert _check(doc, "regular_collapse")["status"] == "pass"
    assert OUT_OF_SCOPE in doc.notes
    assert "xi_f = chi_f = 5/2" in doc.notes


def test_clebsch_report_json():
    """Test the Clebsch graph: inertial bound and chi_f both 16/5."""
    doc = run_report(_input("folded-cube:5"), ReportOptions(xi=False))
    text = emit(doc, OutputFormat.JSON)
    assert '"inertial": "16/5"' in text
    assert '"chi_f": "16/5"' in text
    assert doc.xi is None
    assert doc.exact["alpha"] == 5
    assert any(note.startswith("alpha = min(n+, n-) = 5") for note in doc.notes)
    assert _check(doc, "inertial<=xi_upper")["status"] == "skipped"


def test_large_graph_skips_exact_and_notes_chi_f_bound():
    """Test folded-cube:7: exact oracles skipped and chi_f >= 32/11 noted."""
    doc = run_report(_input("folded-cube:7"), OPTIONS)
    assert doc.spectra["adjacency"]["inertia"] == [22, 0, 42]
    assert doc.bounds["values"]["inertial"] == "32/11"
    assert doc.exact is None
    assert doc.xi is None
    assert "chi_f >= 32/11" in doc.notes
    assert "exact oracles skipped: n = 64 > 20" in doc.notes
    assert doc.soundness_failures == []


def test_edgeless_report():
    """Test that degenerate bounds are reported as 1 and their checks skipped."""
    doc = run_report(GraphInput(empty_graph(3)), OPTIONS)
    assert doc.bounds["values"]["hoffman"] == "1"
    assert doc.bounds["values"]["inertial"] == "1"
    assert "hoffman" in doc.bounds["degenerate"]
    check = _check(doc, "hoffman<=chi")
    assert check["status"] == "skipped"
    assert check["detail"] == "degenerate bound (no edges)"
    assert doc.exact["chi"] == 1
    assert doc.soundness_failures == []


def test_section_toggles():
    """Test that disabled sections are omitted and their checks skipped."""
    doc = run_report(_input("cycle:7"), ReportOptions(exact=False, xi=False))
    assert doc.exact is None and doc.xi is None
    assert _check(doc, "hoffman<=chi")["status"] == "skipped"


def test_json_round_trip():
    """Test that a document read back from JSON equals the original."""
    doc = run_report(_input("kneser:5,2"), OPTIONS)
    assert ReportDocument.from_json(emit(doc)) == doc
    assert json.loads(emit(doc))["meta"]["seed"] == 0


def test_reports_are_deterministic():
    """Test byte-identical JSON for the same input and seed."""
    options = ReportOptions(seed=11, search=SearchConfig(restarts=8))
    first = emit(run_report(_input("andrasfai:3"), options))
    second = emit(run_report(_input("andrasfai:3"), options))
    assert first == second
    assert "runtime_seconds" not in first


def test_timing_is_opt_in():
    """Test that runtime is only recorded on request."""
    doc = run_report(_input("cycle:5"), ReportOptions(xi=False, timing=True))
    assert doc.meta["runtime_seconds"] >= 0


def test_batch_keeps_input_order():
    """Test sequential and threaded batches agree and keep input order."""
    inputs = [_input(text) for text in ("cycle:5", "complete:4", "path:5", "kneser:5,2")]
    options = ReportOptions(search=SearchConfig(restarts=4))
    sequential = run_batch(inputs, options)
    threaded = run_batch(inputs, ReportOptions(search=SearchConfig(restarts=4), workers=3))
    assert [d.graph["name"] for d in sequential] == ["cycle:5", "complete:4", "path:5", "kneser:5,2"]
    assert [emit(d) for d in sequential] == [emit(d) for d in threaded]
    assert [d.meta["seed"] for d in sequential] == [graph_seed(0, i) for i in range(4)]


def test_resolve_source(tmp_path):
    """Test graph6 strings, family specs, files and stdin."""
    assert _input("Dhc").graph == family("cycle:5")
    spec_input = _input("kneser:5,2")
    assert spec_input.family == FamilySpec.parse("kneser:5,2")
    path = tmp_path / "graphs.g6"
    path.write_text("Dhc\nA_\n")
    assert [i.graph.n for i in resolve_source(str(path))] == [5, 2]
    assert [i.graph.n for i in resolve_source("-", ["Bw\n"])] == [3]
    with pytest.raises(GraphFormatError):
        resolve_source("D!")
    with pytest.raises(ValidationError):
        resolve_source("banana:3")


def test_fmt_number():
    """Test rationals as strings and floats at nine significant digits."""
    assert fmt_number(Fraction(16, 5)) == "16/5"
    assert fmt_number(Fraction(4)) == "4"
    assert fmt_number(2.2360679774997896) == 2.23606798
    assert fmt_number(3) == 3
    assert fmt_number(None) is None


def test_table_output():
    """Test the human-readable rendering."""
    doc = run_report(_input("cycle:5"), OPTIONS)
    table = emit(doc, "table")
    assert table.startswith("cycle:5  n=5  m=5")
    assert "inertia (n+, n0, n-) = (3, 0, 2)" in table
    assert "xi in [5/2 (inertial), 3]" in table


@pytest.mark.slow
def test_random_batch_has_no_soundness_failures():
    """Test the full battery on 100 random connected graphs with n <= 9."""
    inputs = [GraphInput(g) for g in random_connected_graphs(100, max_n=9, seed=21)]
    options = ReportOptions(search=SearchConfig(restarts=4, max_iters=500), workers=4)
    for doc in run_batch(inputs, options):
        assert doc.soundness_failures == [], doc.graph["name"]
