import json
import os

import numpy as np
import pytest

from main import EXIT_INCONCLUSIVE, EXIT_OK, EXIT_SOUNDNESS, EXIT_USAGE, main
from src.config import Settings
from src.errors import ConfigError
from src.representations.certificates import ProjectorRepresentation, dump_certificate
from src.representations.fixtures import cycle_projectors
from tests.conftest import FIXTURES, family


def _json_lines(text: str):
    return [json.loads(line) for line in text.splitlines() if line.strip()]


def test_gen_prints_graph6(capsys):
    """Test that gen prints the graph6 string of a family member."""
    assert main(["gen", "cycle:5"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "Dhc"


def test_bounds_json(capsys):
    """Test the bounds subcommand on a graph6 string."""
    assert main(["bounds", "Dhc", "--json"]) == EXIT_OK
    (doc,) = _json_lines(capsys.readouterr().out)
    assert doc["bounds"]["values"]["inertial"] == "5/2"
    assert doc["exact"] is None
    assert doc["xi"] is None


def test_report_json_for_several_sources(capsys):
    """Test one JSON document per input, in order."""
    code = main(["report", "cycle:5", "complete:3", "--json", "--workers", "2"])
    assert code == EXIT_OK
    docs = _json_lines(capsys.readouterr().out)
    assert [d["graph"]["name"] for d in docs] == ["cycle:5", "complete:3"]
    assert docs[0]["xi"]["upper"] == 3
    assert docs[1]["exact"]["chi"] == 3


def test_report_table(capsys):
    """Test the default table output."""
    assert main(["report", "cycle:5", "--no-xi"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "inertial" in out
    assert "checks" in out


def test_xi_with_dimension_cap(capsys):
    """Test that capping the dimension below the lower bound leaves xi open."""
    assert main(["xi", "cycle:5", "--max-dim", "2", "--json"]) == EXIT_OK
    (doc,) = _json_lines(capsys.readouterr().out)
    assert doc["xi"]["upper"] is None
    assert doc["xi"]["lower_ceiling"] == 3


def test_verify_shipped_fixtures(capsys):
    """Test that bundled certificate files verify."""
    paths = [os.path.join(FIXTURES, name) for name in ("c5_five_halves.json", "k3_standard_basis.json")]
    assert main(["verify", *paths]) == EXIT_OK
    out = capsys.readouterr().out
    assert "valid (xi^[2] <= 5, d/r = 5/2)" in out
    assert "valid (xi <= 3" in out


def test_verify_rejects_corrupted_certificate(tmp_path, capsys):
    """Test that an invalid certificate exits with status 2."""
    projectors = np.array(cycle_projectors(2).projectors)
    projectors[1] = projectors[0]
    path = tmp_path / "bad.json"
    path.write_text(dump_certificate(family("cycle:5"), ProjectorRepresentation(5, 2, projectors)))
    assert main(["verify", str(path)]) == EXIT_SOUNDNESS
    assert "invalid (no claim" in capsys.readouterr().out


@pytest.mark.parametrize(
    "argv",
    [
        ["bounds", "D!"],
        ["bounds", "banana:3"],
        ["report"],
        ["bounds", "Dhc", "--log-level", "chatty"],
        ["verify", "does-not-exist.json"],
    ],
)
def test_usage_errors(argv, capsys):
    """Test malformed input exits with status 1 and a message on stderr."""
    assert main(argv) == EXIT_USAGE
    assert capsys.readouterr().err.startswith("error:")


def test_environment_configuration(monkeypatch, capsys):
    """Test ORTHORANK_* variables supply defaults that flags override."""
    monkeypatch.setenv("ORTHORANK_SEED", "5")
    assert main(["bounds", "cycle:5", "--json"]) == EXIT_OK
    (doc,) = _json_lines(capsys.readouterr().out)
    assert doc["meta"]["seed"] == 5
    assert main(["bounds", "cycle:5", "--json", "--seed", "9"]) == EXIT_OK
    (doc,) = _json_lines(capsys.readouterr().out)
    assert doc["meta"]["seed"] == 9


def test_bad_environment_value(monkeypatch, capsys):
    """Test an unparsable variable is a usage error."""
    monkeypatch.setenv("ORTHORANK_RESTARTS", "many")
    with pytest.raises(ConfigError):
        Settings.from_env()
    assert main(["gen", "cycle:5"]) == EXIT_USAGE
    assert "ORTHORANK_RESTARTS" in capsys.readouterr().err


def test_strict_exit_when_colouring_budget_runs_out(monkeypatch):
    """Test --strict turns an inconclusive exact search into status 3."""
    monkeypatch.setenv("ORTHORANK_COLORING_BUDGET", "1")
    assert main(["exact", "cycle:5", "--json"]) == EXIT_OK
    assert main(["exact", "cycle:5", "--json", "--strict"]) == EXIT_INCONCLUSIVE


def test_settings_defaults():
    """Test the defaults without any environment."""
    settings = Settings.from_env()
    assert settings.seed == 0
    assert settings.tol_zero is None
    assert settings.log_level == "WARNING"


def test_verify_without_files_checks_bundled_certificates(capsys):
    """Test that verify with no arguments checks every bundled d/r-representation."""
    assert main(["verify"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 6
    assert lines[0] == "cycle:5: valid (xi^[2] <= 5, d/r = 5/2), meets the inertial bound"
    assert "kneser:7,3: valid (xi^[3] <= 7, d/r = 7/3)" in lines[-1]
    assert all("meets the inertial bound" in line for line in lines)
