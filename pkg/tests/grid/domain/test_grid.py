"""Tests for the grid partition and its cell network."""

import itertools

import numpy as np
import pytest

from src.grid.domain.exceptions.domain_exceptions import (
    InvalidCellError,
    InvalidGridError,
)
from src.grid.domain.model.grid import (
    GridSpec,
    build_network,
    project_equirectangular,
)


def test_invalid_grid_rejected() -> None:
    """Test that a non-positive cell size or an empty grid is rejected."""
    with pytest.raises(InvalidGridError):
        GridSpec(origin_x=0.0, origin_y=0.0, cell_size=0.0, nx=3, ny=3)
    with pytest.raises(InvalidGridError):
        GridSpec(origin_x=0.0, origin_y=0.0, cell_size=1.0, nx=0, ny=3)


def test_index_and_row_col(grid_3x3: GridSpec) -> None:
    """Test the flat index convention index = row * nx + col."""
    assert grid_3x3.index(1, 2) == 5
    assert grid_3x3.row_col(5) == (1, 2)
    with pytest.raises(InvalidCellError):
        grid_3x3.row_col(9)


def test_cells_of_and_center(grid_3x3: GridSpec) -> None:
    """Test point resolution, including the outer edges, and cell centers."""
    cells = grid_3x3.cells_of(
        np.array([0.1, 1.2, 1.5, -0.01, 1.49]),
        np.array([0.1, 0.6, 0.0, 0.0, 1.49]),
    )

    assert cells.tolist() == [0, 5, -1, -1, 8]
    assert grid_3x3.center(5) == (1.25, 0.75)


def test_hop_distance_is_manhattan(grid_5x5: GridSpec) -> None:
    """Test hop distances and their km conversion."""
    assert grid_5x5.hop_distance(0, 24) == 8
    assert grid_5x5.manhattan_km(0, 24) == 4.0
    assert grid_5x5.diameter == 8


def test_single_cell_network() -> None:
    """Test that a 1x1 grid has one node and no links."""
    grid = GridSpec(origin_x=0.0, origin_y=0.0, cell_size=1.0, nx=1, ny=1)

    net = build_network(grid)

    assert net.adjacency == ((),)


def test_network_degrees(grid_3x3: GridSpec) -> None:
    """Test that the center has four neighbours and a corner two."""
    net = build_network(grid_3x3)

    assert set(net.neighbours(4)) == {1, 3, 5, 7}
    assert set(net.neighbours(0)) == {1, 3}


def test_network_link_count(grid_5x5: GridSpec) -> None:
    """Test the number of directed adjacency entries of a 5x5 grid."""
    net = build_network(grid_5x5)

    assert sum(len(links) for links in net.adjacency) == 80


def test_neighborhood_rings(grid_5x5: GridSpec, grid_3x3: GridSpec) -> None:
    """Test rings at exact hop distances."""
    net = build_network(grid_5x5)

    assert net.neighborhood(12, 0) == {12}
    assert len(net.neighborhood(12, 1)) == 4
    assert len(net.neighborhood(12, 2)) == 8
    assert build_network(grid_3x3).neighborhood(0, 4) == {8}


def test_coverage_sets(grid_5x5: GridSpec) -> None:
    """Test coverage sets from a single cell up to the whole grid."""
    net = build_network(grid_5x5)

    assert net.coverage_set(7, 0) == {7}
    assert net.coverage_set(12, 1) == {7, 11, 12, 13, 17}
    assert net.coverage_set(0, grid_5x5.diameter) == set(range(25))
    assert net.coverage_set(0, 100) == set(range(25))


def test_coverage_sets_are_nested() -> None:
    """Test that growing the radius only adds cells."""
    grid = GridSpec(origin_x=0.0, origin_y=0.0, cell_size=1.0, nx=7, ny=6)
    net = build_network(grid)

    for cell in range(grid.n_cells):
        for h in range(grid.diameter):
            assert net.coverage_set(cell, h) <= net.coverage_set(cell, h + 1)


@pytest.mark.parametrize("h", range(6))
def test_interior_coverage_size(h: int) -> None:
    """Test the diamond size 2h^2 + 2h + 1 away from the border."""
    grid = GridSpec(origin_x=0.0, origin_y=0.0, cell_size=1.0, nx=11, ny=11)
    center = grid.index(5, 5)

    assert len(build_network(grid).coverage_set(center, h)) == 2 * h * h + 2 * h + 1


@pytest.mark.parametrize("shape", [(1, 1), (3, 1), (4, 3), (5, 5)])
def test_neighborhoods_match_bfs(shape: tuple) -> None:
    """Test analytic rings against breadth-first search on the network."""
    nx, ny = shape
    grid = GridSpec(origin_x=0.0, origin_y=0.0, cell_size=1.0, nx=nx, ny=ny)
    net = build_network(grid)

    for cell in range(grid.n_cells):
        distances = net.bfs_hop_distances(cell)
        for hops in range(grid.diameter + 1):
            expected = {z for z, d in distances.items() if d == hops}
            assert net.neighborhood(cell, hops) == expected


def test_bfs_agrees_with_hop_distance(grid_5x5: GridSpec) -> None:
    """Test that BFS distances equal the Manhattan distance in cells."""
    net = build_network(grid_5x5)

    for a, b in itertools.product(range(grid_5x5.n_cells), repeat=2):
        assert net.bfs_hop_distances(a)[b] == grid_5x5.hop_distance(a, b)


def test_equirectangular_projection() -> None:
    """Test that the reference maps to the origin and a degree of latitude."""
    x, y = project_equirectangular(
        np.array([42.36, 43.36]),
        np.array([-71.06, -71.06]),
        42.36,
        -71.06,
    )

    assert x.tolist() == pytest.approx([0.0, 0.0])
    assert y[0] == pytest.approx(0.0)
    assert y[1] == pytest.approx(111.19, abs=0.01)
