"""Tile families and grid tilings of the binary-height picture.

A square tile carries a spin/carry label on its south and north edges and a
height bit on its west and east edges.  Reading a column bottom-up, a tile
adds the incoming carry (south) to the bit on its west edge and emits the sum
bit east and the carry north: ``south + west == east + 2 * north``.  Tiles
with an ``ω`` edge sit outside this bookkeeping.

Triangle tiles have two lower legs (``left``, ``right``) and one upper leg
(``top``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterator, Mapping, Sequence

from .walks import OMEGA

__all__ = [
    "Tile",
    "Tiling",
    "SQUARE_EDGES",
    "TRIANGLE_EDGES",
    "tile_family",
    "FAMILIES",
    "flow_balanced",
    "pyramid_heights",
    "rectangle_heights",
    "is_valid_tiling",
    "tiling_from_config",
    "config_from_tiling",
    "solve_grid_tilings",
    "enumerate_fragment_tilings",
    "TilingError",
]

SQUARE_EDGES = ("south", "west", "east", "north")
TRIANGLE_EDGES = ("left", "right", "top")
SPIN = (-1, 0, 1)
BIT = (0, 1)


class TilingError(ValueError):
    pass


@dataclass(frozen=True)
class Tile:
    name: str
    shape: str
    labels: tuple

    @property
    def edges(self) -> dict:
        names = SQUARE_EDGES if self.shape == "square" else TRIANGLE_EDGES
        return dict(zip(names, self.labels))

    def __getitem__(self, edge: str):
        return self.edges[edge]

    @property
    def has_omega(self) -> bool:
        return OMEGA in self.labels


def _sq(name, s, w, e, n) -> Tile:
    return Tile(name, "square", (s, w, e, n))


def _tri(name, i, j, k) -> Tile:
    return Tile(name, "triangle", (i, j, k))


_A = {
    "A1": _sq("A1", 1, 0, 1, 0),  # up step opens a height line
    "A2": _sq("A2", 1, 1, 0, 1),  # two lines fuse into a carry
    "A3": _sq("A3", 0, 1, 1, 0),  # line passes straight through
    "A4": _sq("A4", 0, 0, 0, 0),  # blank
    "A5": _sq("A5", -1, 1, 0, 0),  # down step closes a line
    "A6": _sq("A6", -1, 0, 1, -1),  # borrow: line bifurcates downwards
    "A7": _sq("A7", OMEGA, 1, 1, 0),
    "A8": _sq("A8", OMEGA, 0, 0, OMEGA),
}

_D = {
    "D1": _tri("D1", 1, 0, 1),
    "D2": _tri("D2", 0, 1, 1),
    "D3": _tri("D3", 1, -1, 0),
    "D4": _tri("D4", -1, 0, -1),
    "D5": _tri("D5", 0, 0, 0),
    "D6": _tri("D6", 0, -1, -1),
    "D7": _tri("D7", -1, 1, 0),
}

_E = {f"E{i}": _tri(f"E{i}", *_D[f"D{i}"].labels) for i in range(1, 7)}
_E.update(
    {
        "E7": _tri("E7", -1, 1, OMEGA),
        "E8": _tri("E8", 0, OMEGA, OMEGA),
        "E9": _tri("E9", OMEGA, 0, OMEGA),
        "E10": _tri("E10", OMEGA, OMEGA, OMEGA),
        "E11": _tri("E11", 1, OMEGA, 1),
        "E12": _tri("E12", OMEGA, -1, -1),
    }
)


def _g_tiles() -> dict[str, Tile]:
    # (in k, left i, right j, out l) with i + k == j + l; output fixed by input
    out = {}
    idx = 1
    for k in SPIN:
        for i in BIT:
            for j, l in product(BIT, (-1, 1)):
                if i + k == j + l:
                    out[f"G{idx}"] = _sq(f"G{idx}", k, i, j, l)
                    idx += 1
    return out


def _w_tiles() -> dict[str, Tile]:
    out = {}
    for idx, (i, j) in enumerate(product((-1, 1), repeat=2), start=1):
        out[f"W{idx}"] = _tri(f"W{idx}", i, j, (i + j) // 2)
    return out


FAMILIES: dict[str, tuple[Tile, ...]] = {
    "B": tuple(_A[f"A{i}"] for i in range(1, 7)),
    "C": tuple(_A[f"A{i}"] for i in range(1, 9)),
    "T": tuple(_D.values()),
    "S": tuple(_E[f"E{i}"] for i in range(1, 13)),
    "G": tuple(_g_tiles().values()),
    "W": tuple(_w_tiles().values()),
}


def tile_family(name: str) -> tuple[Tile, ...]:
    """Complete tile list for tensor family ``B``, ``C``, ``T``, ``S``, ``G`` or ``W``."""
    try:
        return FAMILIES[name]
    except KeyError:
        raise ValueError(f"unknown tile family {name!r}; expected one of {sorted(FAMILIES)}") from None


def flow_balanced(tile: Tile) -> bool | None:
    """Local charge bookkeeping of a tile; ``None`` for tiles carrying ``ω``."""
    if tile.has_omega:
        return None
    if tile.shape == "square":
        s, w, e, n = tile.labels
        if tile.name.startswith("G"):
            return s + w == e + n
        return s + w == e + 2 * n
    i, j, k = tile.labels
    if tile.name.startswith("W"):
        return i + j == 2 * k
    return i + j == k


# ---------------------------------------------------------------------------
# Grid tilings (step pyramid and rectangles)


def pyramid_heights(n: int) -> list[int]:
    """Cells per column of the width-``2n`` step pyramid: ``floor(log2(2x))``, mirrored."""
    if n < 1:
        raise ValueError("n must be >= 1")
    half = [(2 * x).bit_length() - 1 for x in range(1, n + 1)]
    return half + half[::-1]


def rectangle_heights(n: int, m: int) -> list[int]:
    return [m] * (2 * n)


@dataclass
class Tiling:
    """Assignment of tiles to the cells of a column-major grid.

    ``heights[x]`` is the number of cells in column ``x`` (0-based); cell
    ``(x, r)`` has row ``r`` counted from 1 at the bottom.  ``west`` and
    ``east`` hold the boundary bits on the outer left and right edges, row
    1 first; unlisted boundary edges, including every exposed north edge,
    are pinned to 0.
    """

    heights: list[int]
    cells: dict[tuple[int, int], Tile]
    west: tuple[int, ...] = ()
    east: tuple[int, ...] = ()
    meta: dict = field(default_factory=dict)

    @property
    def width(self) -> int:
        return len(self.heights)

    def cell_keys(self) -> list[tuple[int, int]]:
        return [(x, r) for x in range(self.width) for r in range(1, self.heights[x] + 1)]

    def boundary_bit(self, side: str, row: int) -> int:
        bits = self.west if side == "west" else self.east
        return bits[row - 1] if row - 1 < len(bits) else 0

    def south_labels(self) -> tuple:
        return tuple(self.cells[(x, 1)]["south"] for x in range(self.width))


def _expected_edges(til: Tiling, x: int, r: int) -> dict:
    """Labels forced on cell ``(x, r)`` by boundary pins (not by neighbours)."""
    forced = {}
    if r == til.heights[x]:
        forced["north"] = 0
    if x == 0:
        forced["west"] = til.boundary_bit("west", r)
    elif r > til.heights[x - 1]:
        forced["west"] = 0
    if x == til.width - 1:
        forced["east"] = til.boundary_bit("east", r)
    elif r > til.heights[x + 1]:
        forced["east"] = 0
    return forced


def is_valid_tiling(til: Tiling) -> bool:
    """True iff all shared edges match and every boundary pin is respected."""
    keys = til.cell_keys()
    missing = [k for k in keys if k not in til.cells]
    if missing:
        raise TilingError(f"tiling is missing cells {missing[:4]}")
    for x, r in keys:
        tile = til.cells[(x, r)]
        for edge, lab in _expected_edges(til, x, r).items():
            if tile[edge] != lab:
                return False
        if r < til.heights[x] and til.cells[(x, r + 1)]["south"] != tile["north"]:
            return False
        if x + 1 < til.width and r <= til.heights[x + 1]:
            if til.cells[(x + 1, r)]["west"] != tile["east"]:
                return False
    return True


def _bits(value: int, m: int) -> tuple[int, ...]:
    return tuple((value >> k) & 1 for k in range(m))


def tiling_from_config(
    config: Sequence[int],
    heights: Sequence[int] | None = None,
    p: int = 0,
    q: int = 0,
    family: str = "B",
) -> Tiling | None:
    """The unique valid tiling with ``config`` on its south edge, or ``None``.

    Each column adds its spin to the binary height on its west edge, carries
    moving upwards.  ``heights`` defaults to the step pyramid.
    """
    n2 = len(config)
    if n2 == 0 or n2 % 2:
        raise ValueError("config length must be a positive even number")
    if heights is None:
        heights = pyramid_heights(n2 // 2)
    heights = list(heights)
    if len(heights) != n2:
        raise ValueError("geometry width differs from config length")
    need = n2.bit_length() - 1
    if heights != pyramid_heights(n2 // 2) and min(heights) < need:
        raise TilingError(f"geometry too short: need at least {need} rows")
    lookup = {(t["west"], t["south"]): t for t in tile_family(family) if not t.has_omega}
    m_left = heights[0]
    til = Tiling(heights, {}, west=_bits(p, m_left), east=_bits(q, heights[-1]))
    for x, spin in enumerate(config):
        carry = spin
        for r in range(1, heights[x] + 1):
            w = til.boundary_bit("west", r) if x == 0 else (
                til.cells[(x - 1, r)]["east"] if r <= heights[x - 1] else 0
            )
            tile = lookup.get((w, carry))
            if tile is None:
                return None
            til.cells[(x, r)] = tile
            carry = tile["north"]
    return til if is_valid_tiling(til) else None


def config_from_tiling(til: Tiling) -> tuple:
    """Spins read off the south boundary of a valid tiling."""
    if not is_valid_tiling(til):
        raise TilingError("tiling is not valid")
    return til.south_labels()


def solve_grid_tilings(
    heights: Sequence[int],
    south: Sequence | None = None,
    west: Sequence[int] = (),
    east: Sequence[int] = (),
    family: str = "B",
    limit: int | None = None,
) -> Iterator[Tiling]:
    """Every valid tiling of a grid by backtracking over cells, bottom-up within columns.

    ``south=None`` leaves the physical edges free.  Independent of the
    binary-addition shortcut used by :func:`tiling_from_config`.
    """
    heights = list(heights)
    tiles = tile_family(family)
    template = Tiling(heights, {}, tuple(west), tuple(east))
    order = template.cell_keys()
    found = 0

    def consistent(til: Tiling, x: int, r: int, tile: Tile) -> bool:
        for edge, lab in _expected_edges(til, x, r).items():
            if tile[edge] != lab:
                return False
        if r == 1 and south is not None and tile["south"] != south[x]:
            return False
        if r > 1 and til.cells[(x, r - 1)]["north"] != tile["south"]:
            return False
        if x > 0 and r <= heights[x - 1] and til.cells[(x - 1, r)]["east"] != tile["west"]:
            return False
        return True

    def rec(i: int):
        nonlocal found
        if limit is not None and found >= limit:
            return
        if i == len(order):
            found += 1
            yield Tiling(heights, dict(template.cells), tuple(west), tuple(east))
            return
        x, r = order[i]
        for tile in tiles:
            if consistent(template, x, r, tile):
                template.cells[(x, r)] = tile
                yield from rec(i + 1)
                del template.cells[(x, r)]

    yield from rec(0)


def enumerate_fragment_tilings(net, max_nodes: int = 8) -> dict[tuple, list[dict]]:
    """All tilings of a small network fragment, grouped by the labels on its open slots.

    A tiling picks one tile (nonzero tensor entry) per node so that every
    internal bond carries a single label.  Returned tilings map node id to
    tile name.
    """
    from .contraction import iter_labelings

    if len(net.nodes) > max_nodes:
        raise ValueError(f"fragment has {len(net.nodes)} cells; cap is {max_nodes}")
    out: dict[tuple, list[dict]] = {}
    for labeling in iter_labelings(net, {}):
        boundary = tuple(labeling.slot_label(s) for s in net.physical)
        out.setdefault(boundary, []).append(labeling.tiles())
    return out
