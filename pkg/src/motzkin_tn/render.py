"""ASCII and SVG drawings of tilings read off a contracted network."""

from __future__ import annotations

from html import escape

from .contraction import Labeling
from .network import Network
from .tensors import encode_label
from .walks import OMEGA

__all__ = ["grid_cells", "render_ascii", "render_svg"]

_CELL = 44


def grid_cells(labeling: Labeling) -> dict[tuple[int, int], tuple[str, dict]]:
    """``(x, row) -> (tile name, {edge: label})`` for grid-shaped networks."""
    net = labeling.net
    tiles = labeling.tiles()
    out = {}
    for nid, node in net.nodes.items():
        if node.kind not in ("B", "C"):
            continue
        edges = {sp.name: labeling.slot_label((nid, sp.name)) for sp in node.tensor.indices}
        out[node.position] = (tiles[nid], edges)
    return out


def _heights(cells: dict, width: int, rows: int) -> list[str]:
    """Binary height strings (most significant bit first) on each vertical cut, west edge first."""
    out = []
    for x in range(width + 1):
        bits = []
        for r in range(rows, 0, -1):
            if x < width and (x, r) in cells:
                bits.append(cells[(x, r)][1]["west"])
            elif x > 0 and (x - 1, r) in cells:
                bits.append(cells[(x - 1, r)][1]["east"])
            else:
                bits.append(0)
        out.append("".join(str(b) for b in bits))
    return out


def render_ascii(labeling: Labeling) -> str:
    net = labeling.net
    cells = grid_cells(labeling)
    if not cells or any(n.kind not in ("B", "C", "Pi", "P") for n in net.nodes.values()):
        return _render_listing(labeling)
    width = 1 + max(x for x, _ in cells)
    rows = max(r for _, r in cells)
    lines = []
    for r in range(rows, 0, -1):
        row = [cells[(x, r)][0] if (x, r) in cells else ".." for x in range(width)]
        lines.append(f"row {r:<2}| " + " ".join(f"{c:>3}" for c in row))
    spins = [labeling.slot_label(s) for s in net.physical]
    lines.append("spin  | " + " ".join(f"{_spin(s):>3}" for s in spins))
    hs = _heights(cells, width, rows)
    lines.append("heights " + " ".join(f"{int(h, 2)}:{h}" for h in hs))
    return "\n".join(lines) + "\n"


def _spin(s) -> str:
    return {1: "+", 0: "0", -1: "-"}.get(s, str(encode_label(s)))


def _render_listing(labeling: Labeling) -> str:
    net: Network = labeling.net
    tiles = labeling.tiles()
    by_row: dict = {}
    for nid, node in net.nodes.items():
        by_row.setdefault(node.position[0], []).append((node.position[1], nid))
    lines = []
    for row in sorted(by_row, reverse=True):
        items = sorted(by_row[row], key=lambda kv: str(kv[0]))
        lines.append(f"layer {row:<2}| " + " ".join(f"{tiles[n]:>3}" for _, n in items))
    spins = [labeling.slot_label(s) for s in net.physical]
    lines.append("spin    | " + " ".join(f"{_spin(s):>3}" for s in spins))
    return "\n".join(lines) + "\n"


_GLYPH = {1: "\u2191", -1: "\u2193"}


def _vertical(parts: list, x: float, y: float, label) -> None:
    if label == OMEGA:
        parts.append(f'<line x1="{x}" y1="{y - 6}" x2="{x}" y2="{y + 6}" stroke="#555" stroke-dasharray="2,2"/>')
    elif label in _GLYPH:
        parts.append(f'<text x="{x}" y="{y + 4}" text-anchor="middle">{_GLYPH[label]}</text>')


def render_svg(labeling: Labeling) -> str:
    """One square per cell: tile name in the middle, arrows on set edges, dotted strokes for ω."""
    cells = grid_cells(labeling)
    if not cells:
        raise ValueError("SVG rendering needs a grid-shaped network")
    width = 1 + max(x for x, _ in cells)
    rows = max(r for _, r in cells)
    w, h = width * _CELL + 20, (rows + 1) * _CELL + 20
    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" font-family="monospace" font-size="11">']
    for (x, r), (name, edges) in sorted(cells.items()):
        px, py = 10 + x * _CELL, 10 + (rows - r) * _CELL
        cx, cy = px + _CELL / 2, py + _CELL / 2
        fill = "#ffffff" if name == "A4" else "#e8eef8"
        parts.append(f'<rect x="{px}" y="{py}" width="{_CELL}" height="{_CELL}" fill="{fill}" stroke="#333"/>')
        parts.append(f'<text x="{cx}" y="{cy + 4}" text-anchor="middle">{escape(name)}</text>')
        _vertical(parts, cx, py + _CELL - 6, edges["south"])
        _vertical(parts, cx, py + 6, edges["north"])
        if edges["west"] == 1:
            parts.append(f'<text x="{px + 6}" y="{cy + 4}" text-anchor="middle">\u2192</text>')
        if edges["east"] == 1:
            parts.append(f'<text x="{px + _CELL - 6}" y="{cy + 4}" text-anchor="middle">\u2192</text>')
    for x in range(width):
        if (x, 1) in cells:
            s = cells[(x, 1)][1]["south"]
            parts.append(f'<text x="{10 + x * _CELL + _CELL / 2}" y="{10 + rows * _CELL + 16}" text-anchor="middle">{_spin(s)}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
