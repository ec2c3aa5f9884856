"""Planar surface-code lattice geometry.

A distance-d patch is a (2d-1) x (2d-1) grid of sites.  Sites with even
row+column parity are data qubits; the rest are syndrome qubits,
alternating between plaquette checks (detect bit-flips) and star checks
(detect phase-flips).  The left/right edges are rough for bit-flip error
chains and the top/bottom edges are rough for phase-flip chains, so:

* an X-error chain ends invisibly only on the left or right edge, and a
  chain crossing left-to-right is a logical bit-flip;
* dually for Z-error chains and top/bottom.

Check sites are indexed on reduced grids where one step corresponds to
one data-qubit error:

* Z checks (plaquettes) at raw (2R, 2C+1): a d x (d-1) grid,
* X checks (stars) at raw (2R+1, 2C): a (d-1) x d grid.
"""

from __future__ import annotations

import dataclasses
import enum

MAX_BUILD_DISTANCE = 25


class SiteRole(enum.Enum):
    DATA = "data"
    SYNDROME_X = "syndrome_x"
    SYNDROME_Z = "syndrome_z"


@dataclasses.dataclass(frozen=True)
class PlanarLattice:
    """Geometry of one distance-d planar patch.

    ``grid[r][c]`` gives the role of site (r, c).  Data sites are indexed
    row-major by ``data_index``; check sites by their reduced coordinates.
    ``boundary_orientation`` records which edges absorb which chains:
    bit-flip chains end invisibly on the rough left/right edges, phase-flip
    chains on the top/bottom edges.
    """

    d: int
    grid: tuple[tuple[SiteRole, ...], ...]
    boundary_orientation: tuple[tuple[str, str], tuple[str, str]] = (
        ("left", "right"),  # rough for bit-flip chains (logical X runs here)
        ("top", "bottom"),  # rough for phase-flip chains
    )

    @property
    def x_chain_boundaries(self) -> tuple[str, str]:
        return self.boundary_orientation[0]

    @property
    def z_chain_boundaries(self) -> tuple[str, str]:
        return self.boundary_orientation[1]

    @property
    def side(self) -> int:
        return 2 * self.d - 1

    @property
    def num_sites(self) -> int:
        return self.side**2

    @property
    def num_data(self) -> int:
        return 2 * self.d**2 - 2 * self.d + 1

    @property
    def num_z_checks(self) -> int:
        return self.d * (self.d - 1)

    @property
    def num_x_checks(self) -> int:
        return self.d * (self.d - 1)

    def role(self, r: int, c: int) -> SiteRole:
        return self.grid[r][c]

    def data_index(self, r: int, c: int) -> int:
        """Row-major index of the data site at raw coordinates (r, c)."""
        if (r + c) % 2 != 0:
            raise ValueError(f"site ({r}, {c}) is not a data site")
        full_pairs = (r >> 1) * self.side
        if r & 1:
            return full_pairs + self.d + ((c - 1) >> 1)
        return full_pairs + (c >> 1)

    def data_coords(self) -> list[tuple[int, int]]:
        """Raw (r, c) of every data site, in data_index order."""
        return [
            (r, c)
            for r in range(self.side)
            for c in range(self.side)
            if (r + c) % 2 == 0
        ]

    def z_check_neighbors(self, zr: int, zc: int) -> list[int]:
        """Data indices adjacent to the Z check at reduced (zr, zc)."""
        return self._check_neighbors(2 * zr, 2 * zc + 1)

    def x_check_neighbors(self, xr: int, xc: int) -> list[int]:
        """Data indices adjacent to the X check at reduced (xr, xc)."""
        return self._check_neighbors(2 * xr + 1, 2 * xc)

    def _check_neighbors(self, r: int, c: int) -> list[int]:
        out = []
        for rr, cc in ((r - 1, c), (r + 1, c), (r, c - 1), (r, c + 1)):
            if 0 <= rr < self.side and 0 <= cc < self.side:
                out.append(self.data_index(rr, cc))
        return out

    def logical_x_cut(self) -> list[int]:
        """Data indices of the leftmost column; odd residual bit-flip
        support here means a logical bit-flip."""
        return [self.data_index(r, 0) for r in range(0, self.side, 2)]

    def logical_z_cut(self) -> list[int]:
        """Data indices of the top row; odd residual phase-flip support
        here means a logical phase-flip."""
        return [self.data_index(0, c) for c in range(0, self.side, 2)]


def build_lattice(d: int, max_distance: int = MAX_BUILD_DISTANCE) -> PlanarLattice:
    """Construct the distance-d planar lattice.

    d must be odd and within the desk-scale bound (default 25); the
    analytic formulas in ``scaling`` accept any d, but simulation works on
    concrete lattices only.
    """
    if d % 2 == 0:
        raise ValueError(f"lattice distance must be odd, got {d}")
    if not 3 <= d <= max_distance:
        raise ValueError(f"lattice distance must be in [3, {max_distance}], got {d}")
    side = 2 * d - 1
    rows = []
    for r in range(side):
        row = []
        for c in range(side):
            if (r + c) % 2 == 0:
                row.append(SiteRole.DATA)
            elif r % 2 == 0:
                # even row, odd column: plaquette (Z) check
                row.append(SiteRole.SYNDROME_Z)
            else:
                row.append(SiteRole.SYNDROME_X)
        rows.append(tuple(row))
    return PlanarLattice(d=d, grid=tuple(rows))
