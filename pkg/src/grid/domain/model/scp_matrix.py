"""Binary set-cover incidence matrix over a set of retained cells."""

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np
from scipy import sparse
from scipy.spatial import cKDTree

from src.grid.domain.exceptions.domain_exceptions import EmptyRetainedSetError
from src.grid.domain.model.grid import CellId, CellNetwork, GridSpec


@dataclass(frozen=True)
class SCPMatrix:
    """Sparse binary incidence matrix of the set-cover problem.

    Row ``i`` is the retained cell ``cells[i]`` that needs to be covered, column
    ``j`` is a station candidate at ``cells[j]``. Entry (i, j) is 1 when the hop
    distance between both cells is at most ``h``.
    """

    grid: GridSpec
    cells: Tuple[CellId, ...]
    h: int
    rows: sparse.csr_matrix
    columns: sparse.csc_matrix
    # Cell of each row when rows repeat cells; None when rows are ``cells``.
    row_cells: Optional[Tuple[CellId, ...]] = None

    @property
    def row_cell_ids(self) -> Tuple[CellId, ...]:
        """Cell addressed by each row."""
        return self.cells if self.row_cells is None else self.row_cells

    @property
    def n_rows(self) -> int:
        """Number of cells to cover."""
        return int(self.rows.shape[0])

    @property
    def n_cols(self) -> int:
        """Number of station candidates."""
        return int(self.rows.shape[1])

    def covering_columns(self, row: int) -> np.ndarray:
        """Column indices covering ``row``."""
        return self.rows.indices[self.rows.indptr[row] : self.rows.indptr[row + 1]]

    def covered_rows(self, col: int) -> np.ndarray:
        """Row indices covered by column ``col``."""
        return self.columns.indices[
            self.columns.indptr[col] : self.columns.indptr[col + 1]
        ]

    def entry_hops(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(row, col, hop distance) for every nonzero entry, in COO order."""
        coo = self.rows.tocoo()
        row_cells = np.asarray(self.row_cell_ids, dtype=np.int64)
        col_cells = np.asarray(self.cells, dtype=np.int64)
        hops = self.grid.hop_distances(row_cells[coo.row], col_cells[coo.col])
        return coo.row, coo.col, hops

    def repeat_rows(self, repeats: Sequence[int]) -> "SCPMatrix":
        """Copy where row i appears repeats[i] times in place; columns unchanged."""
        order = np.repeat(np.arange(self.n_rows), np.asarray(repeats, dtype=np.int64))
        csr = sparse.csr_matrix(self.rows[order])
        csr.sort_indices()
        csc = csr.tocsc()
        csc.sort_indices()
        row_cells = tuple(self.row_cell_ids[i] for i in order)
        return SCPMatrix(
            grid=self.grid,
            cells=self.cells,
            h=self.h,
            rows=csr,
            columns=csc,
            row_cells=row_cells,
        )

    def to_dense(self) -> np.ndarray:
        """Dense 0/1 matrix; intended for small instances and tests."""
        return self.rows.toarray().astype(np.int8)


def build_scp_matrix(
    net: CellNetwork,
    h: int,
    retained: Iterable[CellId],
) -> SCPMatrix:
    """Build the SCP incidence matrix restricted to ``retained`` cells.

    Covering pairs come from a single Manhattan-metric pair query over the
    (row, col) coordinates of the retained cells.
    """
    if h < 0:
        raise ValueError("coverage radius must be non-negative")
    cells = tuple(sorted(set(retained)))
    if not cells:
        raise EmptyRetainedSetError("Cannot build a set-cover matrix for no cells")
    grid = net.grid
    for cell in cells:
        grid.check_cell(cell)

    coords = np.column_stack(np.divmod(np.asarray(cells, dtype=np.int64), grid.nx))
    tree = cKDTree(coords)
    pairs = tree.query_pairs(r=h, p=1, output_type="ndarray").reshape(-1, 2)
    diagonal = np.arange(len(cells), dtype=np.int64)
    rows_arr = np.concatenate([diagonal, pairs[:, 0], pairs[:, 1]])
    cols_arr = np.concatenate([diagonal, pairs[:, 1], pairs[:, 0]])
    data = np.ones(rows_arr.size, dtype=np.int32)
    shape = (len(cells), len(cells))
    csr = sparse.csr_matrix((data, (rows_arr, cols_arr)), shape=shape)
    csr.sort_indices()
    csc = csr.tocsc()
    csc.sort_indices()
    return SCPMatrix(grid=grid, cells=cells, h=h, rows=csr, columns=csc)
