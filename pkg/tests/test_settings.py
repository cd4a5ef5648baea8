"""Tests for process settings and the layered run configuration."""

from pathlib import Path

import pytest
from pydantic import ValidationError

from src.placement.domain.model.value_objects import SolverKind
from src.settings import (
    PipelineConfig,
    RunConfig,
    Settings,
    SolverConfig,
    load_run_config,
)

RUN_FILE = """\
[grid]
nx = 12
ny = 8
cell_size_km = 2.0

[pipeline]
days = 3
tau_min_s = 900
home_days = 1

[solver]
kind = "greedy"
h = 2
seed = 10
n_runs = 3
"""


@pytest.fixture
def run_file(tmp_path: Path) -> Path:
    """A partial TOML run file."""
    path = tmp_path / "run.toml"
    path.write_text(RUN_FILE)
    return path


def test_process_settings_from_env(monkeypatch: pytest.MonkeyPatch) -> None:
    """Test the environment prefix of the process settings."""
    monkeypatch.setenv("EV_PLACEMENT_JOBS", "4")

    assert Settings().jobs == 4
    assert Settings().environment == "pytest"


def test_defaults() -> None:
    """Test the configuration without a run file."""
    config = load_run_config()

    assert config.grid.to_spec().n_cells == 1600
    assert config.solver.kind is SolverKind.GA
    assert config.pipeline.l_min_km == 100.0
    assert config.paths.demand_file == Path("out") / "demand.csv"
    assert config.paths.ledger_file == Path("out") / "ledger.json"


def test_run_file(run_file: Path) -> None:
    """Test values read from TOML, with defaults for the rest."""
    config = load_run_config(run_file)

    assert config.grid.to_spec().n_cells == 96
    assert config.grid.cell_size_km == 2.0
    assert config.solver.kind is SolverKind.GREEDY
    assert config.solver.seeds == [10, 11, 12]
    assert config.solver.population == 1000


def test_source_priority(run_file: Path, monkeypatch: pytest.MonkeyPatch) -> None:
    """Test flags over environment over the run file."""
    monkeypatch.setenv("EV_PLACEMENT_SOLVER__H", "3")

    from_env = load_run_config(run_file)
    from_flag = load_run_config(run_file, solver={"h": 5})

    assert from_env.solver.h == 3
    assert from_flag.solver.h == 5
    assert from_flag.solver.kind is SolverKind.GREEDY


def test_missing_run_file(tmp_path: Path) -> None:
    """Test that a missing run file is reported."""
    with pytest.raises(FileNotFoundError):
        load_run_config(tmp_path / "absent.toml")


@pytest.mark.parametrize(
    "content",
    [
        "[solver]\npopulation = 1\n",
        "[solver]\nunknown = 1\n",
        "[pipeline]\ncoordinates = \"latlon\"\n",
        "[pipeline]\nweight_slots = [4, 2]\n",
        "[sweep]\ntau_values_s = []\n",
        "[synth]\nlong_trip_rate = 2.0\n",
    ],
)
def test_invalid_run_file(tmp_path: Path, content: str) -> None:
    """Test that out-of-range or unknown keys are rejected."""
    path = tmp_path / "run.toml"
    path.write_text(content)

    with pytest.raises(ValidationError):
        load_run_config(path)


def test_pipeline_params(run_file: Path) -> None:
    """Test the study window and the home detection period."""
    params = load_run_config(run_file).pipeline.to_params()

    assert params.window.n_days == 3
    assert params.tau_min == 900
    assert params.home_period == (0, 86400)


def test_weight_slots_are_clipped() -> None:
    """Test that the averaging range stops at the window."""
    pipeline = PipelineConfig(weight_slots=(2, 10))

    assert pipeline.slot_list(5) == [2, 3, 4]
    assert PipelineConfig().slot_list(5) is None


def test_ga_params() -> None:
    """Test the conversion to solver parameters."""
    params = SolverConfig(population=20, iterations=5, elite_k=3).to_ga_params()

    assert (params.population_size, params.iterations, params.elite_k) == (20, 5, 3)


def test_synth_uses_pipeline_thresholds(run_file: Path) -> None:
    """Test that the synthetic city plants trips for the configured thresholds."""
    synth = load_run_config(run_file).synth_config()

    assert synth.tau_min_s == 900
    assert synth.l_min_km == 100.0
    assert synth.days == 3


def test_canonical_json(run_file: Path) -> None:
    """Test that the dump is stable and reflects every value."""
    first = load_run_config(run_file).canonical_json()
    second = load_run_config(run_file).canonical_json()
    changed = load_run_config(run_file, solver={"seed": 11}).canonical_json()

    assert first == second
    assert first != changed
    assert RunConfig().canonical_json() != first
