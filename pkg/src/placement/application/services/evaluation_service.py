"""Distance metrics of layouts, cross-period evaluation and threshold sweeps."""

import logging
from typing import Iterable, List, Sequence, Tuple

import numpy as np
from scipy.spatial import cKDTree

from src.grid.domain.model.grid import GridSpec
from src.mobility.application.services.trace_service import build_demand
from src.mobility.domain.model.demand import DemandMatrix
from src.mobility.domain.model.trace import TraceLog
from src.mobility.domain.model.value_objects import PipelineParams
from src.placement.application.dtos.placement_dtos import (
    LayoutMetricsDTO,
    PlacedLayoutDTO,
    PopulationComparisonDTO,
    SweepRowDTO,
)
from src.placement.domain.exceptions.domain_exceptions import (
    EmptyProblemError,
    InfeasibleLayoutError,
    InvalidParameterError,
)
from src.placement.domain.model.cover_problem import CoverProblem, Layout, objective
from src.placement.domain.model.population import Population

logger = logging.getLogger(__name__)


def nearest_station_hops(
    stations: Sequence[int],
    cells: np.ndarray,
    grid: GridSpec,
) -> np.ndarray:
    """Hop distance from each cell to its nearest station."""
    if not stations:
        raise InfeasibleLayoutError("A layout without stations has no distances")
    station_ids = np.asarray(stations, dtype=np.int64)
    station_rc = np.column_stack(np.divmod(station_ids, grid.nx))
    cell_rc = np.column_stack(np.divmod(cells, grid.nx))
    tree = cKDTree(station_rc)
    distances, _ = tree.query(cell_rc, p=1)
    return np.rint(distances).astype(np.int64)


def _weighted_distances(
    layout: PlacedLayoutDTO,
    demand: DemandMatrix,
    grid: GridSpec,
) -> Tuple[np.ndarray, np.ndarray]:
    totals = demand.cell_totals()
    cells = np.flatnonzero(totals)
    if cells.size == 0:
        raise EmptyProblemError()
    hops = nearest_station_hops(layout.stations, cells, grid)
    return totals[cells].astype(float), hops


def _metrics(
    layout: PlacedLayoutDTO,
    weights: np.ndarray,
    hops: np.ndarray,
    grid: GridSpec,
    label: str,
) -> LayoutMetricsDTO:
    km = hops * grid.cell_size
    avg = float(np.average(km, weights=weights))
    variance = float(np.average((km - avg) ** 2, weights=weights))
    return LayoutMetricsDTO(
        label=label,
        avg_distance_km=avg,
        distance_variance_km2=variance,
        station_count=layout.station_count,
        objective=layout.objective,
        h=layout.h,
        delta=layout.delta,
        w0=layout.w0,
    )


def layout_metrics(
    layout: PlacedLayoutDTO,
    demand: DemandMatrix,
    grid: GridSpec,
    label: str = "",
) -> LayoutMetricsDTO:
    """Demand-weighted mean and population variance of the nearest-station distance.

    Distances are Manhattan distances between cell centers in km.

    Raises:
        EmptyProblemError: If the demand is all zero
    """
    weights, hops = _weighted_distances(layout, demand, grid)
    return _metrics(layout, weights, hops, grid, label)


def cross_evaluate(
    layout: PlacedLayoutDTO,
    other_demand: DemandMatrix,
    grid: GridSpec,
    label: str = "",
) -> LayoutMetricsDTO:
    """Metrics against another period's demand plus the share covered within h hops."""
    weights, hops = _weighted_distances(layout, other_demand, grid)
    covered = float(weights[hops <= layout.h].sum() / weights.sum())
    if covered < 1:
        logger.info(
            "%.1f%% of the demand lies beyond %d hops of any station",
            100 * (1 - covered),
            layout.h,
        )
    metrics = _metrics(layout, weights, hops, grid, label)
    return metrics.model_copy(update={"coverage_ratio": covered})


def parameter_sweep(
    layout: PlacedLayoutDTO,
    traces: Sequence[TraceLog],
    grid: GridSpec,
    params: PipelineParams,
    tau_values: Sequence[int],
    l_values: Sequence[float],
    jobs: int = 1,
) -> List[SweepRowDTO]:
    """Rebuild the demand for every (tau_min, l_min) pair and evaluate the layout.

    Rows come tau-major, in the order of the given values. A pair that yields no
    demand gets empty metric fields.
    """
    if not tau_values or not l_values:
        raise InvalidParameterError("Sweep value lists must not be empty")
    rows = []
    for tau in tau_values:
        for l_min in l_values:
            swept = params.with_thresholds(tau, l_min)
            demand = build_demand(traces, grid, swept, jobs)
            row = SweepRowDTO(
                tau_min_s=tau,
                l_min_km=l_min,
                total_demand=demand.total,
                station_count=layout.station_count,
            )
            if demand.total:
                metrics = cross_evaluate(layout, demand, grid)
                row = row.model_copy(
                    update={
                        "avg_distance_km": metrics.avg_distance_km,
                        "distance_variance_km2": metrics.distance_variance_km2,
                        "coverage_ratio": metrics.coverage_ratio,
                    },
                )
            rows.append(row)
    return rows


def placed_layout(p: CoverProblem, layout: Layout) -> PlacedLayoutDTO:
    """Full-grid view of a solved layout."""
    return PlacedLayoutDTO(
        stations=list(p.station_cells(layout)),
        h=p.h,
        delta=p.weights.delta,
        w0=p.weights.w0,
        objective=objective(p, layout),
    )


def population_metrics(
    population: Population,
    p: CoverProblem,
    demand: DemandMatrix,
    grid: GridSpec,
    label: str = "member",
) -> List[LayoutMetricsDTO]:
    """One metrics row per population member, in member order."""
    return [
        layout_metrics(placed_layout(p, member), demand, grid, f"{label}-{index}")
        for index, member in enumerate(population)
    ]


def _relative(initial: float, final: float) -> float:
    return (initial - final) / initial if initial else 0.0


def compare_populations(
    initial: Iterable[LayoutMetricsDTO],
    final: Iterable[LayoutMetricsDTO],
) -> PopulationComparisonDTO:
    """Best-versus-best and mean-versus-mean average-distance comparison."""
    before = list(initial)
    after = list(final)
    if not before or not after:
        raise InvalidParameterError("Both populations need at least one member")
    before_km = np.array([m.avg_distance_km for m in before])
    after_km = np.array([m.avg_distance_km for m in after])
    return PopulationComparisonDTO(
        initial_size=len(before),
        final_size=len(after),
        initial_best_km=float(before_km.min()),
        final_best_km=float(after_km.min()),
        initial_mean_km=float(before_km.mean()),
        final_mean_km=float(after_km.mean()),
        best_improvement=_relative(float(before_km.min()), float(after_km.min())),
        mean_improvement=_relative(float(before_km.mean()), float(after_km.mean())),
        initial_mean_stations=float(np.mean([m.station_count for m in before])),
        final_mean_stations=float(np.mean([m.station_count for m in after])),
    )
