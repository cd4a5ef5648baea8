"""Tests for the metric table and document repository."""

from pathlib import Path

import pandas as pd
import ujson

from src.placement.application.dtos.placement_dtos import (
    LayoutMetricsDTO,
    PopulationComparisonDTO,
)
from src.placement.infrastructure.repositories.filesystem.metrics_repository import (
    FileMetricsRepository,
)
from src.shared.provenance import read_header

HEADER = {"config_sha256": "cd" * 32, "seed": "1"}


def _row(label: str, avg: float) -> LayoutMetricsDTO:
    return LayoutMetricsDTO(
        label=label,
        avg_distance_km=avg,
        distance_variance_km2=0.5,
        station_count=3,
        objective=-2.0,
        h=1,
        delta=0.5,
        w0=0.0,
    )


def test_save_table_csv(tmp_path: Path) -> None:
    """Test one CSV row per model after the provenance header."""
    repository = FileMetricsRepository(tmp_path)

    repository.save_table("layout_metrics", [_row("a", 1.0), _row("b", 2.5)], HEADER)

    path = tmp_path / "layout_metrics.csv"
    assert read_header(path)["config_sha256"] == HEADER["config_sha256"]
    frame = pd.read_csv(path, comment="#")
    assert frame["label"].tolist() == ["a", "b"]
    assert frame["avg_distance_km"].tolist() == [1.0, 2.5]


def test_save_table_jsonl(tmp_path: Path) -> None:
    """Test a provenance record followed by one record per row."""
    FileMetricsRepository(tmp_path).save_table("final", [_row("a", 1.0)], HEADER)

    lines = (tmp_path / "final.jsonl").read_text().splitlines()
    assert ujson.loads(lines[0]) == {"provenance": HEADER}
    record = ujson.loads(lines[1])
    assert record["label"] == "a"
    assert record["coverage_ratio"] is None
    assert len(lines) == 2


def test_save_document(tmp_path: Path) -> None:
    """Test a JSON document with an embedded provenance object."""
    comparison = PopulationComparisonDTO(
        initial_size=2,
        final_size=2,
        initial_best_km=2.0,
        final_best_km=1.5,
        initial_mean_km=3.0,
        final_mean_km=1.5,
        best_improvement=0.25,
        mean_improvement=0.5,
        initial_mean_stations=3.0,
        final_mean_stations=5.0,
    )

    FileMetricsRepository(tmp_path / "nested").save_document(
        "comparison",
        comparison,
        HEADER,
    )

    content = ujson.loads((tmp_path / "nested" / "comparison.json").read_text())
    assert content["provenance"] == HEADER
    assert content["best_improvement"] == 0.25
