"""Tests for the text-file layout repository."""

from pathlib import Path

import numpy as np
import pandas as pd
import pytest

from src.placement.application.dtos.placement_dtos import PlacedLayoutDTO
from src.placement.infrastructure.repositories.filesystem.layout_repository import (
    FileLayoutRepository,
)
from src.shared.provenance import read_header

HEADER = {"config_sha256": "ab" * 32, "seed": "7"}


@pytest.fixture
def layout() -> PlacedLayoutDTO:
    """Layout fixture with unsorted stations."""
    return PlacedLayoutDTO(
        stations=[9, 2, 5],
        h=2,
        delta=0.25,
        w0=1.5,
        objective=-3.25,
    )


def test_save_and_load(tmp_path: Path, layout: PlacedLayoutDTO) -> None:
    """Test that stations and parameters survive a save."""
    repository = FileLayoutRepository(tmp_path / "layout.txt")

    repository.save(layout, HEADER)
    loaded = repository.load()

    assert loaded.stations == [2, 5, 9]
    assert loaded.h == 2
    assert loaded.delta == 0.25
    assert loaded.w0 == 1.5
    assert loaded.objective == -3.25


def test_file_layout(tmp_path: Path, layout: PlacedLayoutDTO) -> None:
    """Test the provenance header and one sorted cell per line."""
    path = tmp_path / "out" / "layout.txt"

    FileLayoutRepository(path).save(layout, HEADER)

    header = read_header(path)
    assert header["config_sha256"] == HEADER["config_sha256"]
    assert header["seed"] == "7"
    assert header["station_count"] == "3"
    body = [line for line in path.read_text().splitlines() if not line.startswith("#")]
    assert body == ["2", "5", "9"]


def test_load_without_parameters(tmp_path: Path) -> None:
    """Test that a bare list of cells is rejected."""
    path = tmp_path / "layout.txt"
    path.write_text("1\n2\n")

    with pytest.raises(ValueError, match="'h'"):
        FileLayoutRepository(path).load()


def test_load_malformed_cell(tmp_path: Path) -> None:
    """Test that a non-integer line is rejected."""
    path = tmp_path / "layout.txt"
    path.write_text("# h: 1\n# delta: 1.0\nfour\n")

    with pytest.raises(ValueError):
        FileLayoutRepository(path).load()


def test_save_weights(tmp_path: Path) -> None:
    """Test weights sorted by cell next to the layout file."""
    repository = FileLayoutRepository(tmp_path / "layout.txt")

    repository.save_weights([7, 3], np.array([-1.5, 0.25]), HEADER)

    frame = pd.read_csv(tmp_path / "weights.csv", comment="#")
    assert frame.columns.tolist() == ["cell_index", "weight"]
    assert frame["cell_index"].tolist() == [3, 7]
    assert frame["weight"].tolist() == [0.25, -1.5]
