"""Builders for the binary-height, height-renormalisation and U(1) networks.

A :class:`Network` is a set of tensor placements joined by bonds between
named index slots.  Every slot is exactly one of: bonded to another slot,
pinned to a fixed label, or open.  Open slots are listed in ``physical`` in
site order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from .semiring import Poly, Scalar, scalar_kind
from .tensors import (
    LabeledTensor,
    TensorSet,
    contract_pair,
    encode_label,
    make_B_s,
    make_P,
    make_Pi,
)
from .walks import OMEGA, T as T_SYMBOL, _as_t

__all__ = [
    "Node",
    "Network",
    "NetworkError",
    "boundary_vector",
    "build_binary_height_pyramid",
    "build_rectangle",
    "build_hrn_periodic",
    "build_hrn_open",
    "build_u1_mera",
    "wrap_fredkin",
    "periodic_boundary",
    "log2_exact",
    "zip_rewrite",
    "remove_cap",
    "network_graph",
]

Slot = tuple[str, str]


class NetworkError(ValueError):
    pass


@dataclass
class Node:
    id: str
    tensor: LabeledTensor
    kind: str
    position: tuple
    level: int = 1


@dataclass
class Network:
    nodes: dict[str, Node] = field(default_factory=dict)
    edges: list[tuple[Slot, Slot]] = field(default_factory=list)
    pins: dict[Slot, object] = field(default_factory=dict)
    physical: list[Slot] = field(default_factory=list)
    metadata: dict = field(default_factory=dict)
    readout: Callable | None = None

    # -- construction helpers -------------------------------------------------
    def add(self, node_id: str, tensor: LabeledTensor, kind: str, position: tuple, level: int = 1) -> str:
        if node_id in self.nodes:
            raise NetworkError(f"duplicate node id {node_id}")
        self.nodes[node_id] = Node(node_id, tensor, kind, position, level)
        return node_id

    def connect(self, a: Slot, b: Slot) -> None:
        self.edges.append((a, b))

    def pin(self, slot: Slot, label) -> None:
        self.pins[slot] = label

    # -- queries ---------------------------------------------------------------
    def space(self, slot: Slot):
        node = self.nodes[slot[0]]
        return node.tensor.indices[node.tensor.slot(slot[1])]

    def all_slots(self) -> list[Slot]:
        return [(nid, sp.name) for nid, node in self.nodes.items() for sp in node.tensor.indices]

    def partner(self, slot: Slot) -> Slot | None:
        for a, b in self.edges:
            if a == slot:
                return b
            if b == slot:
                return a
        return None

    @property
    def n_sites(self) -> int:
        return len(self.physical)

    @property
    def kind(self) -> str:
        return self.metadata.get("kind", "motzkin")

    def physical_alphabet(self) -> list[tuple]:
        return [self.space(s).labels for s in self.physical]

    def validate(self) -> None:
        """Check slot coverage, bond alphabets, pin labels and scalar-domain consistency."""
        seen: dict[Slot, str] = {}
        for a, b in self.edges:
            for s in (a, b):
                if s in seen:
                    raise NetworkError(f"slot {s} used twice ({seen[s]} and edge)")
                seen[s] = "edge"
            if set(self.space(a).labels) != set(self.space(b).labels):
                raise NetworkError(f"alphabet mismatch on bond {a} - {b}")
        for s, lab in self.pins.items():
            if s in seen:
                raise NetworkError(f"slot {s} both pinned and {seen[s]}")
            seen[s] = "pin"
            if lab not in self.space(s).labels:
                raise NetworkError(f"pin label {lab!r} not in alphabet of {s}")
        for s in self.physical:
            if s in seen:
                raise NetworkError(f"physical slot {s} is also {seen[s]}")
            seen[s] = "physical"
        missing = set(self.all_slots()) - set(seen)
        if missing:
            raise NetworkError(f"dangling slots {sorted(missing)[:4]}")
        kinds = {n.tensor.scalar_kind for n in self.nodes.values()}
        if "poly_t" in kinds and kinds & {"rational", "float"}:
            raise NetworkError("network mixes polynomial and numeric tensors")

    def count_tensors(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for n in self.nodes.values():
            out[n.kind] = out.get(n.kind, 0) + 1
        return dict(sorted(out.items()))

    def sector_charge(self) -> int | None:
        """Total physical charge forced by the pinned boundary (``None`` if ``ω`` is involved)."""
        total = 0
        for s, lab in self.pins.items():
            sp = self.space(s)
            q = sp.charge(lab)
            if q is None or sp.orientation is None:
                return None
            total += q if sp.orientation == "out" else -q
        return total

    def to_dict(self) -> dict:
        return {
            "nodes": [
                {
                    "id": n.id,
                    "kind": n.kind,
                    "tensor": n.tensor.name,
                    "level": n.level,
                    "position": list(n.position),
                }
                for n in self.nodes.values()
            ],
            "edges": [[a[0], a[1], b[0], b[1]] for a, b in self.edges],
            "pins": [[s[0], s[1], encode_label(lab)] for s, lab in self.pins.items()],
            "physical": [list(s) for s in self.physical],
            "metadata": {k: (str(v) if not isinstance(v, (int, str, list, type(None))) else v) for k, v in self.metadata.items()},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=1)


# ---------------------------------------------------------------------------
# helpers


def log2_exact(n2: int) -> int:
    """``y`` with ``2**y == n2``; raises for anything else."""
    if n2 < 2 or n2 & (n2 - 1):
        raise NetworkError(f"2n={n2} is not a power of two")
    return n2.bit_length() - 1


def boundary_vector(value: int, m: int) -> list[int]:
    """Binary expansion of ``value`` on ``m`` rows, least significant bit first."""
    if value < 0:
        raise ValueError("boundary height must be nonnegative")
    if value >= 2**m:
        raise OverflowError(f"{value} does not fit in {m} bits")
    return [(value >> k) & 1 for k in range(m)]


def periodic_boundary(n2: int, k: int) -> tuple[int, int]:
    """Left/right heights ``(p, q)`` with ``q - p == k`` and ``max(p, q) == 2n``."""
    if abs(k) > n2:
        raise ValueError(f"|k| must not exceed {n2}")
    return (n2, n2 + k) if k <= 0 else (n2 - k, n2)


def _deformation(t, tset: TensorSet):
    """Square tensor factory and readout for the area weight ``t``.

    The deformed row tensors weight each horizontal half-line by ``t`` to
    the power ``2**(row-1)``, which puts ``t`` to the power of *twice* the
    trapezoid area on every walk.  The builders therefore deform with a
    formal square root ``u`` of ``t`` and square it away on readout, keeping
    all arithmetic in integer polynomials.
    """
    t = _as_t(t)
    if t == 1 and not isinstance(t, Poly):
        return (lambda row: tset.at_level("B", row)), None, t
    u = Poly.var()

    def square(row: int) -> LabeledTensor:
        return make_B_s(u, row, tset.at_level("B", row))

    def readout(v):
        if isinstance(v, Poly):
            half = v.halve_exponents()
            return half if t == T_SYMBOL else half.evaluate(t)
        return v

    return square, readout, t


# ---------------------------------------------------------------------------
# grid networks


def _grid(
    net: Network,
    heights: list[int],
    square: Callable[[int], LabeledTensor],
    kind: str,
    west_bits: list[int],
    east_bits: list[int],
    top_pinned: bool = True,
) -> dict[tuple[int, int], str]:
    ids = {}
    width = len(heights)
    for x in range(width):
        for r in range(1, heights[x] + 1):
            ids[(x, r)] = net.add(f"{kind}[{x},{r}]", square(r), kind, (x, r), level=r)
    for x in range(width):
        for r in range(1, heights[x] + 1):
            me = ids[(x, r)]
            if r < heights[x]:
                net.connect((me, "north"), (ids[(x, r + 1)], "south"))
            elif top_pinned:
                net.pin((me, "north"), 0)
            if x == 0:
                net.pin((me, "west"), west_bits[r - 1] if r - 1 < len(west_bits) else 0)
            elif r > heights[x - 1]:
                net.pin((me, "west"), 0)
            if x == width - 1:
                net.pin((me, "east"), east_bits[r - 1] if r - 1 < len(east_bits) else 0)
            elif r <= heights[x + 1]:
                net.connect((me, "east"), (ids[(x + 1, r)], "west"))
            else:
                net.pin((me, "east"), 0)
    return ids


def build_binary_height_pyramid(n: int, t=1, tensors: TensorSet | None = None) -> Network:
    """Step pyramid of ``B`` tensors whose state is ``sum_w t**A(w) |w>`` over Motzkin walks."""
    from .tiles import pyramid_heights

    tset = tensors or TensorSet()
    square, readout, t = _deformation(t, tset)
    heights = pyramid_heights(n)
    net = Network(metadata={"shape": "pyramid", "n": n, "m": max(heights), "p": 0, "q": 0, "t": t})
    ids = _grid(net, heights, square, "B", [], [])
    net.physical = [(ids[(x, 1)], "south") for x in range(2 * n)]
    net.readout = readout
    net.validate()
    return net


def _attach_tree(net: Network, tops: list[Slot], kind: str, tensor_of: Callable[[int], LabeledTensor], start_row: int) -> Slot:
    """Binary tree of triangle tensors over ``tops``; returns the root's output slot."""
    log2_exact(len(tops)) if len(tops) > 1 else None
    layer = list(tops)
    depth = 0
    while len(layer) > 1:
        depth += 1
        nxt = []
        for j in range(len(layer) // 2):
            nid = net.add(f"{kind}tree[{depth},{j}]", tensor_of(depth), kind, (j, start_row + depth), level=start_row)
            net.connect(layer[2 * j], (nid, "left"))
            net.connect(layer[2 * j + 1], (nid, "right"))
            nxt.append((nid, "top"))
        layer = nxt
    return layer[0]


def build_rectangle(
    n: int,
    m: int,
    p: int = 0,
    q: int = 0,
    t=1,
    tensors: TensorSet | None = None,
    square: str = "B",
    top: str = "zeros",
    projector: bool = False,
) -> Network:
    """``m x 2n`` grid with the binary expansions of ``p`` and ``q`` on its west and east edges.

    ``square="C"`` swaps in the ``ω``-extended tensors; ``top="tree"`` caps
    the grid with a binary tree of triangles (``T`` over ``B``, ``S`` over
    ``C``) whose root is pinned to 0; ``projector`` puts ``Π`` on every
    physical leg.
    """
    if m < (2 * n).bit_length() - 1:
        raise NetworkError(f"m={m} is below floor(log2(2n))={(2 * n).bit_length() - 1}")
    west, east = boundary_vector(p, m), boundary_vector(q, m)
    tset = tensors or TensorSet()
    if square == "B":
        sq, readout, t = _deformation(t, tset)
    elif square == "C":
        if _as_t(t) != 1:
            raise NetworkError("C grids are only defined at t=1")
        sq, readout = (lambda row: tset.at_level("C", row)), None
    else:
        raise NetworkError(f"unknown square tensor {square!r}")
    net = Network(metadata={"shape": "rect", "n": n, "m": m, "p": p, "q": q, "t": _as_t(t), "top": top})
    ids = _grid(net, [m] * (2 * n), sq, square, west, east, top_pinned=(top == "zeros"))
    if top == "tree":
        tri = "T" if square == "B" else "S"
        root = _attach_tree(net, [(ids[(x, m)], "north") for x in range(2 * n)], tri, lambda d: tset.at_level(tri, m), m)
        net.pin(root, 0)
    elif top != "zeros":
        raise NetworkError(f"unknown top boundary {top!r}")
    net.physical = [(ids[(x, 1)], "south") for x in range(2 * n)]
    if projector:
        _append_projectors(net)
    net.readout = readout
    net.validate()
    return net


def _append_projectors(net: Network) -> None:
    new = []
    for i, slot in enumerate(net.physical):
        pid = net.add(f"Pi[{i}]", make_Pi(), "Pi", (i, 0))
        net.connect(slot, (pid, "out"))
        new.append((pid, "in"))
    net.physical = new


# ---------------------------------------------------------------------------
# height renormalisation networks


def _build_hrn(
    n2: int,
    square: str,
    triangle: str,
    p: int,
    q: int,
    rows: int | None,
    tset: TensorSet,
) -> Network:
    y = log2_exact(n2)
    rows = y + 1 if rows is None else rows
    if rows < y:
        raise NetworkError(f"rows must be at least {y}")
    west, east = boundary_vector(p, rows), boundary_vector(q, rows)
    net = Network(metadata={"shape": "hrn", "n": n2 // 2, "m": rows, "p": p, "q": q, "t": 1})
    below: list[Slot] = []
    width = n2
    for lev in range(1, y + 1):
        sq = tset.at_level(square, lev)
        row_ids = [net.add(f"{square}[{lev},{x}]", sq, square, (2 * lev - 1, x), lev) for x in range(width)]
        for x, nid in enumerate(row_ids):
            if lev == 1:
                net.physical.append((nid, "south"))
            else:
                net.connect(below[x], (nid, "south"))
            if x == 0:
                net.pin((nid, "west"), west[lev - 1])
            else:
                net.connect((row_ids[x - 1], "east"), (nid, "west"))
        net.pin((row_ids[-1], "east"), east[lev - 1])
        tri = tset.at_level(triangle, lev)
        below = []
        for j in range(width // 2):
            tid = net.add(f"{triangle}[{lev},{j}]", tri, triangle, (2 * lev, j), lev)
            net.connect((row_ids[2 * j], "north"), (tid, "left"))
            net.connect((row_ids[2 * j + 1], "north"), (tid, "right"))
            below.append((tid, "top"))
        width //= 2
    (up,) = below
    for lev in range(y + 1, rows + 1):
        nid = net.add(f"{square}[{lev},0]", tset.at_level(square, lev), square, (2 * lev - 1, 0), lev)
        net.connect(up, (nid, "south"))
        net.pin((nid, "west"), west[lev - 1])
        net.pin((nid, "east"), east[lev - 1])
        up = (nid, "north")
    net.pin(up, 0)
    return net


def build_hrn_periodic(n2: int, p: int, q: int, rows: int | None = None, tensors: TensorSet | None = None) -> Network:
    """Layered ``B``/``T`` network for walks from height ``p`` to ``q`` on ``n2`` sites.

    Layer ``l`` holds a row of ``n2 / 2**(l-1)`` ``B`` tensors carrying bit
    ``l`` of the heights, then a row of ``T`` tensors that halve the width.
    The remaining ``rows - log2(n2)`` high bits sit in a single column on
    top, whose north leg is pinned to 0.  With ``(p, q)`` from
    :func:`periodic_boundary` the state is the sector state of charge ``q - p``.
    """
    net = _build_hrn(n2, "B", "T", p, q, rows, tensors or TensorSet())
    net.metadata["shape"] = "hrn-periodic"
    net.validate()
    return net


def build_hrn_open(n2: int, tensors: TensorSet | None = None, capped: bool = False) -> Network:
    """Layered ``C``/``S`` network with ``Π`` on every site; state is the t=1 Motzkin ground state.

    ``capped=True`` keeps the single top ``C`` tensor (bits 0, north pinned
    0) that the uncapped form replaces by pinning the root ``S`` output.
    """
    y = log2_exact(n2)
    net = _build_hrn(n2, "C", "S", 0, 0, y + 1 if capped else y, tensors or TensorSet())
    _append_projectors(net)
    net.metadata["shape"] = "hrn-open"
    net.validate()
    return net


def build_u1_mera(n2: int, tensors: TensorSet | None = None) -> Network:
    """Holographic U(1) network: per layer a ``G`` MPO then ``W`` blocking, top pinned to charge 0."""
    y = log2_exact(n2)
    tset = tensors or TensorSet()
    net = Network(metadata={"shape": "u1", "n": n2 // 2, "m": y, "p": 0, "q": 0, "t": 1})
    below: list[Slot] = []
    width = n2
    for lev in range(1, y + 1):
        g = tset.at_level("G", lev)
        ids = [net.add(f"G[{lev},{x}]", g, "G", (2 * lev - 1, x), lev) for x in range(width)]
        for x, nid in enumerate(ids):
            if lev == 1:
                net.physical.append((nid, "in"))
            else:
                net.connect(below[x], (nid, "in"))
            if x == 0:
                net.pin((nid, "left"), 0)
            else:
                net.connect((ids[x - 1], "right"), (nid, "left"))
        net.pin((ids[-1], "right"), 0)
        w = tset.at_level("W", lev)
        below = []
        for j in range(width // 2):
            wid = net.add(f"W[{lev},{j}]", w, "W", (2 * lev, j), lev)
            net.connect((ids[2 * j], "out"), (wid, "left"))
            net.connect((ids[2 * j + 1], "out"), (wid, "right"))
            below.append((wid, "top"))
        width //= 2
    net.pin(below[0], 0)
    net.validate()
    return net


def wrap_fredkin(net: Network) -> Network:
    """Append ``P`` to every physical leg, turning a spin-1 network into a spin-1/2 one."""
    for slot in net.physical:
        labels = set(net.space(slot).labels) - {OMEGA}
        if labels != {-1, 0, 1}:
            raise NetworkError(f"physical slot {slot} is not spin-1")
    out = Network(
        nodes=dict(net.nodes),
        edges=list(net.edges),
        pins=dict(net.pins),
        metadata=dict(net.metadata, kind="dyck"),
        readout=net.readout,
    )
    out.metadata["shape"] = f"fredkin-{net.metadata.get('shape', '?')}"
    for i, slot in enumerate(net.physical):
        pid = out.add(f"P[{i}]", make_P(), "P", (i, -1))
        if OMEGA in net.space(slot).labels:
            # route through Π first so the alphabets match
            qid = out.add(f"Pi_P[{i}]", make_Pi(), "Pi", (i, -1))
            out.connect(slot, (qid, "out"))
            slot = (qid, "in")
        out.connect(slot, (pid, "in"))
        out.physical.append((pid, "out"))
    out.validate()
    return out


# ---------------------------------------------------------------------------
# zipper rewriting on the graph


def _edge_map(net: Network) -> dict[Slot, Slot]:
    m = {}
    for a, b in net.edges:
        m[a] = b
        m[b] = a
    return m


def _find_zipper_site(net: Network, square: str, triangle: str):
    link = _edge_map(net)
    for tid, node in net.nodes.items():
        if node.kind != triangle:
            continue
        x = link.get((tid, "left"))
        yy = link.get((tid, "right"))
        if not x or not yy or x[1] != "north" or yy[1] != "north":
            continue
        X, Y = x[0], yy[0]
        if net.nodes[X].kind != square or net.nodes[Y].kind != square:
            continue
        if link.get((X, "east")) != (Y, "west"):
            continue
        xs, ys = link.get((X, "south")), link.get((Y, "south"))
        if not xs or not ys or xs[1] != "north" or ys[1] != "north":
            continue
        X2, Y2 = xs[0], ys[0]
        if net.nodes[X2].kind != square or net.nodes[Y2].kind != square:
            continue
        if link.get((X2, "east")) != (Y2, "west"):
            continue
        return tid, X, Y, X2, Y2
    return None


def zip_rewrite(net: Network, square: str = "B", triangle: str = "T", max_steps: int = 10_000) -> tuple[Network, int]:
    """Apply the zipper identity until no triangle sits on a 2x2 block of squares.

    Each step replaces ``[X2 Y2 / X Y / tri]`` (two square rows capped by a
    triangle) with ``[X2 Y2 / tri / Z]``: the triangle moves below the upper
    row and the two upper squares merge into one.  Returns the rewritten
    network and the number of steps applied.
    """
    net = Network(dict(net.nodes), list(net.edges), dict(net.pins), list(net.physical), dict(net.metadata), net.readout)
    steps = 0
    while steps < max_steps:
        site = _find_zipper_site(net, square, triangle)
        if site is None:
            break
        tid, X, Y, X2, Y2 = site
        link = _edge_map(net)
        above = link.get((tid, "top"))
        west = link.get((X, "west"))
        east = link.get((Y, "east"))
        pin_top = net.pins.get((tid, "top"))
        pin_w = net.pins.get((X, "west"))
        pin_e = net.pins.get((Y, "east"))
        dead = {X, Y}
        net.edges = [(a, b) for a, b in net.edges if a[0] not in dead and b[0] not in dead and tid not in (a[0], b[0])]
        net.pins = {s: v for s, v in net.pins.items() if s[0] not in dead and s[0] != tid}
        nx = net.nodes[X]
        zid = f"{X}+{Y}"
        z = Node(zid, nx.tensor, square, nx.position, nx.level)
        del net.nodes[X], net.nodes[Y]
        net.nodes[zid] = z
        net.connect((X2, "north"), (tid, "left"))
        net.connect((Y2, "north"), (tid, "right"))
        net.connect((tid, "top"), (zid, "south"))
        for slot, partner, pinned in (((zid, "north"), above, pin_top), ((zid, "west"), west, pin_w), ((zid, "east"), east, pin_e)):
            if partner is not None and partner[0] not in dead:
                net.connect(slot, partner)
            elif partner is not None and partner[0] in dead:
                raise NetworkError("zipper site overlaps itself")
            else:
                net.pin(slot, pinned)
        steps += 1
    net.validate()
    return net, steps


def remove_cap(net: Network, square: str = "B") -> Network:
    """Drop the top square of the single apex column, pinning the leg below it to 0.

    Only legal when the cap's west and east bits are equal and its north is
    pinned to 0; that cap then forces its south leg to 0.
    """
    link = _edge_map(net)
    caps = [
        nid
        for nid, n in net.nodes.items()
        if n.kind == square and net.pins.get((nid, "north")) == 0 and (nid, "west") in net.pins and (nid, "east") in net.pins
    ]
    if len(caps) != 1:
        raise NetworkError(f"expected one apex cap, found {len(caps)}")
    (cap,) = caps
    if net.pins[(cap, "west")] != net.pins[(cap, "east")]:
        raise NetworkError("cap bits differ; removing it would change the state")
    below = link[(cap, "south")]
    out = Network(
        {k: v for k, v in net.nodes.items() if k != cap},
        [(a, b) for a, b in net.edges if cap not in (a[0], b[0])],
        {s: v for s, v in net.pins.items() if s[0] != cap},
        list(net.physical),
        dict(net.metadata),
        net.readout,
    )
    bit = net.pins[(cap, "west")]
    k = net.nodes[cap].level
    out.metadata["p"] = net.metadata.get("p", 0) - bit * 2 ** (k - 1)
    out.metadata["q"] = net.metadata.get("q", 0) - bit * 2 ** (k - 1)
    out.pin(below, 0)
    out.validate()
    return out


def network_graph(net: Network):
    """``networkx`` multigraph of a network: nodes tagged by kind, edges by slot pair, pins as leaf nodes."""
    import networkx as nx

    g = nx.Graph()
    for nid, n in net.nodes.items():
        g.add_node(nid, kind=n.kind)
    for a, b in net.edges:
        g.add_edge(a[0], b[0], slots=frozenset({(net.nodes[a[0]].kind, a[1]), (net.nodes[b[0]].kind, b[1])}))
    for i, (s, lab) in enumerate(sorted(net.pins.items(), key=lambda kv: (kv[0][0], kv[0][1]))):
        pid = f"pin{i}"
        g.add_node(pid, kind=f"pin={lab}")
        g.add_edge(s[0], pid, slots=frozenset({(net.nodes[s[0]].kind, s[1])}))
    for i, s in enumerate(net.physical):
        pid = f"site{i}"
        g.add_node(pid, kind="site")
        g.add_edge(s[0], pid, slots=frozenset({(net.nodes[s[0]].kind, s[1])}))
    return g
