"""Square-grid partition and its 4-neighbour cell network."""

import math
from collections import deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Tuple

import numpy as np

from src.grid.domain.exceptions.domain_exceptions import (
    GridTooLargeError,
    InvalidCellError,
    InvalidGridError,
)

# Cells are addressed by a flat index: index = row * nx + col.
CellId = int

EARTH_RADIUS_KM = 6371.0088


@dataclass(frozen=True)
class GridSpec:
    """Square-grid partition of the study region.

    Coordinates are planar kilometre offsets. Row 0 is the southernmost row and
    column 0 the westernmost column.
    """

    origin_x: float
    origin_y: float
    cell_size: float
    nx: int
    ny: int

    def __post_init__(self) -> None:
        """Validate grid attributes."""
        if not self.cell_size > 0:
            raise InvalidGridError("cell_size must be positive")
        if self.nx < 1 or self.ny < 1:
            raise InvalidGridError("nx and ny must be at least 1")
        if self.nx * self.ny > np.iinfo(np.intp).max:
            raise GridTooLargeError(self.nx * self.ny)

    @property
    def n_cells(self) -> int:
        """Total number of cells N = nx * ny."""
        return self.nx * self.ny

    @property
    def diameter(self) -> int:
        """Largest hop distance between two cells of the grid."""
        return self.nx + self.ny - 2

    def check_cell(self, cell: CellId) -> None:
        """Raise InvalidCellError unless ``cell`` addresses a grid cell."""
        if not 0 <= cell < self.n_cells:
            raise InvalidCellError(cell, self.n_cells)

    def index(self, row: int, col: int) -> CellId:
        """Flat index of the cell at (row, col)."""
        if not (0 <= row < self.ny and 0 <= col < self.nx):
            raise InvalidCellError(row * self.nx + col, self.n_cells)
        return row * self.nx + col

    def row_col(self, cell: CellId) -> Tuple[int, int]:
        """(row, col) of a flat cell index."""
        self.check_cell(cell)
        return divmod(cell, self.nx)

    def center(self, cell: CellId) -> Tuple[float, float]:
        """Planar coordinates (km) of the cell center."""
        row, col = self.row_col(cell)
        return (
            self.origin_x + (col + 0.5) * self.cell_size,
            self.origin_y + (row + 0.5) * self.cell_size,
        )

    def cells_of(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        """Cells containing planar points; points outside the grid map to -1."""
        cols = np.floor((np.asarray(xs, dtype=float) - self.origin_x) / self.cell_size)
        rows = np.floor((np.asarray(ys, dtype=float) - self.origin_y) / self.cell_size)
        inside = (cols >= 0) & (cols < self.nx) & (rows >= 0) & (rows < self.ny)
        cells = np.full(cols.shape, -1, dtype=np.int64)
        cells[inside] = rows[inside].astype(np.int64) * self.nx + cols[
            inside
        ].astype(np.int64)
        return cells

    def hop_distance(self, a: CellId, b: CellId) -> int:
        """Hop distance on the cell network, i.e. Manhattan distance in cells."""
        ra, ca = self.row_col(a)
        rb, cb = self.row_col(b)
        return abs(ra - rb) + abs(ca - cb)

    def hop_distances(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Element-wise hop distances between two index arrays."""
        ra, ca = np.divmod(np.asarray(a, dtype=np.int64), self.nx)
        rb, cb = np.divmod(np.asarray(b, dtype=np.int64), self.nx)
        return np.abs(ra - rb) + np.abs(ca - cb)

    def manhattan_km(self, a: CellId, b: CellId) -> float:
        """Manhattan distance between cell centers in km."""
        return self.cell_size * self.hop_distance(a, b)


def project_equirectangular(
    lat: np.ndarray,
    lon: np.ndarray,
    ref_lat: float,
    ref_lon: float,
) -> Tuple[np.ndarray, np.ndarray]:
    """Project geographic coordinates to planar km around a reference point.

    Adequate at metropolitan scale; distortion grows with distance from the
    reference latitude.
    """
    scale = math.pi / 180.0 * EARTH_RADIUS_KM
    x = (np.asarray(lon, dtype=float) - ref_lon) * scale * math.cos(
        math.radians(ref_lat),
    )
    y = (np.asarray(lat, dtype=float) - ref_lat) * scale
    return x, y


@dataclass(frozen=True)
class CellNetwork:
    """Cell network: one node per cell, links between 4-neighbour cells."""

    grid: GridSpec
    adjacency: Tuple[Tuple[CellId, ...], ...]

    def neighbours(self, cell: CellId) -> Tuple[CellId, ...]:
        """North, east, south and west neighbours that exist in the grid."""
        self.grid.check_cell(cell)
        return self.adjacency[cell]

    def neighborhood(self, cell: CellId, hops: int) -> FrozenSet[CellId]:
        """Cells at hop distance exactly ``hops`` from ``cell``."""
        self.grid.check_cell(cell)
        if hops < 0:
            raise ValueError("hop count must be non-negative")
        row, col = divmod(cell, self.grid.nx)
        ring = set()
        for dr in range(-hops, hops + 1):
            rest = hops - abs(dr)
            for dc in {-rest, rest}:
                r, c = row + dr, col + dc
                if 0 <= r < self.grid.ny and 0 <= c < self.grid.nx:
                    ring.add(r * self.grid.nx + c)
        return frozenset(ring)

    def coverage_set(self, cell: CellId, h: int) -> FrozenSet[CellId]:
        """Cells within hop distance ``h`` of ``cell`` (always contains ``cell``)."""
        self.grid.check_cell(cell)
        if h < 0:
            raise ValueError("coverage radius must be non-negative")
        h = min(h, self.grid.diameter)
        covered: set = set()
        for z in range(h + 1):
            covered |= self.neighborhood(cell, z)
        return frozenset(covered)

    def bfs_hop_distances(self, source: CellId) -> Dict[CellId, int]:
        """Hop distances from ``source`` by breadth-first search over adjacency.

        Reference implementation for the analytic Manhattan distance.
        """
        self.grid.check_cell(source)
        distances = {source: 0}
        queue = deque([source])
        while queue:
            current = queue.popleft()
            for nxt in self.adjacency[current]:
                if nxt not in distances:
                    distances[nxt] = distances[current] + 1
                    queue.append(nxt)
        return distances


def build_network(grid: GridSpec) -> CellNetwork:
    """Build the 4-neighbour cell network of a grid."""
    adjacency: List[Tuple[CellId, ...]] = []
    for row in range(grid.ny):
        for col in range(grid.nx):
            links = []
            if row + 1 < grid.ny:
                links.append((row + 1) * grid.nx + col)
            if col + 1 < grid.nx:
                links.append(row * grid.nx + col + 1)
            if row > 0:
                links.append((row - 1) * grid.nx + col)
            if col > 0:
                links.append(row * grid.nx + col - 1)
            adjacency.append(tuple(links))
    return CellNetwork(grid=grid, adjacency=tuple(adjacency))
