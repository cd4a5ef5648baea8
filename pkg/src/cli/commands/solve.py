"""The ``solve`` command: a station layout for a demand matrix."""

import argparse

from src.cli.dependencies import (
    get_demand_repository,
    get_event_publisher,
    get_header,
    get_jobs,
    get_layout_repository,
    get_metrics_repository,
)
from src.cli.flags import add_demand, add_layout, add_output_dir
from src.grid.domain.model.grid import build_network
from src.placement.application.services.placement_service import (
    PlacementService,
    build_cover_problem,
)
from src.placement.domain.exceptions.domain_exceptions import DimensionMismatchError
from src.placement.domain.model.value_objects import (
    ExactCriterion,
    SeedingMethod,
    SolverKind,
)
from src.settings import RunConfig


def register(subparsers: argparse._SubParsersAction) -> None:
    """Add the command and its flags."""
    parser = subparsers.add_parser(
        "solve",
        help="place charging stations",
        description="Write layout.txt, weights.csv and layout metrics.",
    )
    add_output_dir(parser)
    add_demand(parser, "demand file, <output-dir>/demand.csv by default")
    add_layout(parser)
    parser.add_argument(
        "--solver",
        dest="solver.kind",
        choices=[kind.value for kind in SolverKind],
    )
    parser.add_argument("--h", dest="solver.h", type=int, help="coverage radius")
    parser.add_argument(
        "--delta",
        dest="pipeline.delta",
        type=float,
        help="EV penetration ratio",
    )
    parser.add_argument("--w0-multiple", dest="solver.w0_multiple", type=float)
    parser.add_argument(
        "--n-c",
        dest="solver.n_c",
        type=int,
        help="station capacity; uncapacitated when omitted",
    )
    parser.add_argument("--population", dest="solver.population", type=int)
    parser.add_argument("--iterations", dest="solver.iterations", type=int)
    parser.add_argument("--elite-k", dest="solver.elite_k", type=int)
    parser.add_argument("--seed", dest="solver.seed", type=int)
    parser.add_argument("--n-runs", dest="solver.n_runs", type=int)
    parser.add_argument(
        "--seeding",
        dest="solver.seeding",
        choices=[method.value for method in SeedingMethod],
    )
    parser.add_argument(
        "--literal-crossover",
        dest="solver.literal_crossover",
        action="store_const",
        const=True,
    )
    parser.add_argument(
        "--criterion",
        dest="solver.exact_criterion",
        choices=[criterion.value for criterion in ExactCriterion],
    )
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace, config: RunConfig) -> None:
    """Build the cover problem, solve it and persist the results."""
    grid = config.grid.to_spec()
    demand = get_demand_repository(config.paths.demand_file).load()
    if demand.n_cells != grid.n_cells:
        raise DimensionMismatchError(grid.n_cells, demand.n_cells)
    solver = config.solver
    problem = build_cover_problem(
        demand,
        build_network(grid),
        h=solver.h,
        delta=config.pipeline.delta,
        n_c=solver.n_c,
        w0_multiple=solver.w0_multiple,
        slots=config.pipeline.slot_list(demand.n_slots),
        duplicate_rows=solver.duplicate_rows,
    )
    service = PlacementService(
        layout_repository=get_layout_repository(config),
        metrics_repository=get_metrics_repository(config),
        event_publisher=get_event_publisher(),
    )
    service.run(
        problem,
        demand,
        grid,
        kind=solver.kind,
        params=solver.to_ga_params(),
        seeds=solver.seeds,
        header=get_header(config, solver.seed),
        jobs=get_jobs(args),
        criterion=solver.exact_criterion,
    )
