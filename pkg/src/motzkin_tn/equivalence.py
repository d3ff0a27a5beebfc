"""Mechanised checks of the local tensor identities and the column arguments.

Each verifier returns a :class:`ProofReport`.  Identities between two
fragments are checked entry by entry over the full product of their open
labels, and the number of boundary labelings on which both sides are
nonzero must equal the expected count, so deleting any tensor entry that a
proof relies on is caught even if both sides lose it together.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field

import networkx as nx

from .contraction import amplitude, contract_full, contract_open, iter_labelings
from .network import (
    Network,
    build_hrn_open,
    build_hrn_periodic,
    build_rectangle,
    build_u1_mera,
    build_binary_height_pyramid,
    log2_exact,
    network_graph,
    periodic_boundary,
    remove_cap,
    zip_rewrite,
)
from .semiring import format_scalar
from .tensors import OMEGA, TensorSet, encode_label
from .walks import ground_state_vector, periodic_sector_state

__all__ = [
    "ProofReport",
    "zipper_fragments",
    "verify_zipper_BT",
    "verify_zipper_CS",
    "verify_cap_removal",
    "verify_GW_equals_BT",
    "verify_boundary_locked",
    "verify_appendix_column_arguments",
    "verify_zipper_rewriting",
    "verify_oracles",
    "verify_hamiltonian",
    "verify_locked_suite",
    "run_suite",
    "SUITES",
    "ZIPPER_SLOTS",
]

ZIPPER_SLOTS = ("w1", "w2", "s1", "s2", "e1", "e2", "k")


def _fmt(lab) -> str:
    return str(encode_label(lab))


@dataclass
class ProofReport:
    name: str
    passed: bool = True
    matched: int = 0
    expected: int | None = None
    columns: tuple[str, ...] = ()
    rows: list[dict] = field(default_factory=list)
    counterexamples: list[dict] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def fail(self, **info) -> None:
        self.passed = False
        self.counterexamples.append(info)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "matched": self.matched,
            "expected": self.expected,
            "rows": self.rows,
            "counterexamples": self.counterexamples,
            "notes": self.notes,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=1, default=str)

    def table(self) -> str:
        lines = [f"{self.name}: {'PASS' if self.passed else 'FAIL'} ({self.matched}" + (f"/{self.expected})" if self.expected is not None else ")")]
        if self.rows:
            cols = list(self.columns or self.rows[0])
            widths = {c: max(len(c), *(len(str(r.get(c, ""))) for r in self.rows)) for c in cols}
            lines.append("  ".join(c.ljust(widths[c]) for c in cols))
            for r in self.rows:
                lines.append("  ".join(str(r.get(c, "")).ljust(widths[c]) for c in cols))
        for ce in self.counterexamples[:5]:
            lines.append(f"counterexample: {ce}")
        lines.extend(f"note: {n}" for n in self.notes)
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# zipper


def zipper_fragments(square: str = "B", triangle: str = "T", tensors: TensorSet | None = None, level: int = 1) -> tuple[Network, Network]:
    """Both sides of the zipper identity with open slots ``w1 w2 s1 s2 e1 e2 k``.

    Left: a 2x2 block of squares (rows ``level`` and ``level+1``) with a
    triangle on the upper norths.  Right: the lower square row, the triangle
    on its norths, then one square of row ``level+1`` above it.
    """
    ts = tensors or TensorSet()
    r = level
    lhs = Network(metadata={"shape": "zipper-lhs"})
    a, b = (lhs.add(f"{square}[{x},{r}]", ts.at_level(square, r), square, (x, r), r) for x in (0, 1))
    c, d = (lhs.add(f"{square}[{x},{r + 1}]", ts.at_level(square, r + 1), square, (x, r + 1), r + 1) for x in (0, 1))
    tri = lhs.add(triangle, ts.at_level(triangle, r + 1), triangle, (0, r + 2), r + 1)
    lhs.connect((a, "east"), (b, "west"))
    lhs.connect((c, "east"), (d, "west"))
    lhs.connect((a, "north"), (c, "south"))
    lhs.connect((b, "north"), (d, "south"))
    lhs.connect((c, "north"), (tri, "left"))
    lhs.connect((d, "north"), (tri, "right"))
    lhs.physical = [(a, "west"), (c, "west"), (a, "south"), (b, "south"), (b, "east"), (d, "east"), (tri, "top")]
    lhs.validate()

    rhs = Network(metadata={"shape": "zipper-rhs"})
    a, b = (rhs.add(f"{square}[{x},{r}]", ts.at_level(square, r), square, (x, r), r) for x in (0, 1))
    tri = rhs.add(triangle, ts.at_level(triangle, r), triangle, (0, r + 1), r)
    z = rhs.add(f"{square}[0,{r + 1}]", ts.at_level(square, r + 1), square, (0, r + 2), r + 1)
    rhs.connect((a, "east"), (b, "west"))
    rhs.connect((a, "north"), (tri, "left"))
    rhs.connect((b, "north"), (tri, "right"))
    rhs.connect((tri, "top"), (z, "south"))
    rhs.physical = [(a, "west"), (z, "west"), (a, "south"), (b, "south"), (b, "east"), (z, "east"), (z, "north")]
    rhs.validate()
    return lhs, rhs


def _tile_names(net: Network, labels: tuple) -> str:
    labs = list(iter_labelings(net, labels, limit=2))
    if len(labs) != 1:
        return f"<{len(labs)} tilings>"
    tiles = labs[0].tiles()
    return " ".join(tiles[n] for n in net.nodes)


def _compare_fragments(report: ProofReport, lhs: Network, rhs: Network, with_tiles: bool = True) -> tuple[dict, dict]:
    left, right = contract_open(lhs), contract_open(rhs)
    for key in sorted(set(left) | set(right), key=lambda k: tuple(map(str, k))):
        lv, rv = left.get(key, 0), right.get(key, 0)
        labels = dict(zip(report.columns[: len(key)], map(_fmt, key)))
        if lv != rv:
            report.fail(labels=labels, lhs=format_scalar(lv), rhs=format_scalar(rv))
            continue
        report.matched += 1
        row = dict(labels, value=format_scalar(lv))
        if with_tiles:
            row["lhs_tiles"] = _tile_names(lhs, key)
            row["rhs_tiles"] = _tile_names(rhs, key)
        report.rows.append(row)
    return left, right


def _check_expected(report: ProofReport) -> None:
    if report.expected is not None and report.matched != report.expected:
        report.fail(reason=f"{report.matched} matched labelings, expected {report.expected}")


def verify_zipper_BT(tensors: TensorSet | None = None, with_tiles: bool = True) -> ProofReport:
    """Zipper identity for ``B``/``T``: 36 boundary labelings, each with value 1 on both sides."""
    lhs, rhs = zipper_fragments("B", "T", tensors)
    rep = ProofReport("zipper-bt", expected=36, columns=ZIPPER_SLOTS + ("value", "lhs_tiles", "rhs_tiles"))
    _compare_fragments(rep, lhs, rhs, with_tiles)
    _check_expected(rep)
    return rep


def verify_zipper_CS(tensors: TensorSet | None = None, with_tiles: bool = True) -> ProofReport:
    """Zipper identity for ``C``/``S``: 64 boundary labelings.

    The two ``B``/``T`` labelings whose left side needs the triangle tile
    ``(-1, 1) -> 0`` are checked separately: ``S`` lacks that tile, so with
    ``C``/``S`` their spin-valued outputs are 0 on both sides and the
    boundary is carried by ``ω`` instead.
    """
    ts = tensors or TensorSet()
    lhs, rhs = zipper_fragments("C", "S", ts)
    rep = ProofReport("zipper-cs", expected=64, columns=ZIPPER_SLOTS + ("value", "lhs_tiles", "rhs_tiles"))
    left, right = _compare_fragments(rep, lhs, rhs, with_tiles)
    _check_expected(rep)

    # the D7-dependent labelings of the B/T table
    bl, _ = zipper_fragments("B", "T", ts)
    bt = contract_open(bl)
    t_tiles = ts["T"].tiles
    d7 = [k for k, v in t_tiles.items() if k == (-1, 1, 0)]
    special = []
    for key in bt:
        labs = list(iter_labelings(bl, key, limit=2))
        if len(labs) == 1 and any(labs[0].entries[n] in d7 for n in bl.nodes if bl.nodes[n].kind == "T"):
            special.append(key)
    shared = sum(1 for k in bt if k in left)
    rep.notes.append(f"{shared} labelings shared with the B/T table; {len(special)} B/T labelings use the (-1,1)->0 triangle")
    for key in special:
        inputs = key[:4]
        spin_out = {k: v for k, v in left.items() if k[:4] == inputs and OMEGA not in k[4:]}
        spin_out_r = {k: v for k, v in right.items() if k[:4] == inputs and OMEGA not in k[4:]}
        if spin_out or spin_out_r:
            rep.fail(reason="D7-dependent labeling has spin-valued output", labels=[_fmt(x) for x in key])
        else:
            rep.notes.append(f"inputs {tuple(map(_fmt, inputs))}: spin-valued outputs 0 on both sides")
    return rep


def verify_cap_removal(kind: str = "BT", tensors: TensorSet | None = None) -> ProofReport:
    """Apex cap removal: a top square with equal side bits and north 0 acts as a projector onto 0.

    Checked on the fragment level (triangle plus cap versus triangle with
    output pinned to 0) and on whole networks (capped HRN versus HRN with
    the cap removed).
    """
    ts = tensors or TensorSet()
    if kind not in ("BT", "CS"):
        raise ValueError("kind must be BT or CS")
    square, triangle = ("B", "T") if kind == "BT" else ("C", "S")
    rep = ProofReport(f"cap-{kind.lower()}", columns=("left", "right", "bits", "capped", "uncapped", "cap_tile"))
    bit_choices = (0, 1) if kind == "BT" else (0,)
    for bit in bit_choices:
        capped = Network(metadata={"shape": "cap"})
        tri = capped.add("tri", ts.at_level(triangle, 2), triangle, (0, 1), 2)
        cap = capped.add("cap", ts.at_level(square, 3), square, (0, 2), 3)
        capped.connect((tri, "top"), (cap, "south"))
        capped.pin((cap, "west"), bit)
        capped.pin((cap, "east"), bit)
        capped.pin((cap, "north"), 0)
        capped.physical = [(tri, "left"), (tri, "right")]
        bare = Network(metadata={"shape": "uncapped"})
        tri2 = bare.add("tri", ts.at_level(triangle, 2), triangle, (0, 1), 2)
        bare.pin((tri2, "top"), 0)
        bare.physical = [(tri2, "left"), (tri2, "right")]
        a, b = contract_open(capped), contract_open(bare)
        for key in sorted(set(a) | set(b), key=lambda k: tuple(map(str, k))):
            labs = list(iter_labelings(capped, key, limit=2))
            tile = labs[0].tiles()["cap"] if len(labs) == 1 else "-"
            if a.get(key, 0) != b.get(key, 0):
                rep.fail(labels=[_fmt(x) for x in key], bits=bit, capped=format_scalar(a.get(key, 0)), uncapped=format_scalar(b.get(key, 0)))
            else:
                rep.matched += 1
            rep.rows.append({"left": _fmt(key[0]), "right": _fmt(key[1]), "bits": bit, "capped": format_scalar(a.get(key, 0)), "uncapped": format_scalar(b.get(key, 0)), "cap_tile": tile})
        if not b:
            rep.fail(reason="uncapped fragment is identically zero")
    rep.expected = len(rep.rows) if rep.passed else None

    # whole-network form
    for n2 in (2, 4):
        y = log2_exact(n2)
        if kind == "BT":
            cases = [(k,) + periodic_boundary(n2, k) for k in range(-n2, n2 + 1)]
            for k, p, q in cases:
                big = build_hrn_periodic(n2, p + 2 ** (y + 1), q + 2 ** (y + 1), rows=y + 2, tensors=ts)
                small = build_hrn_periodic(n2, p, q, tensors=ts)
                s_big, s_small = contract_full(big), contract_full(small)
                s_cut = contract_full(remove_cap(big))
                target = periodic_sector_state(n2, k)
                if not (s_big == s_small == s_cut == target):
                    rep.fail(n2=n2, k=k, reason="capped and uncapped HRN states differ")
        else:
            capped_net = build_hrn_open(n2, ts, capped=True)
            if not (contract_full(capped_net) == contract_full(build_hrn_open(n2, ts)) == contract_full(remove_cap(capped_net, "C")) == ground_state_vector(n2)):
                rep.fail(n2=n2, reason="capped and uncapped open HRN states differ")
    return rep


# ---------------------------------------------------------------------------
# renormalisation unit versus G/W


def _renorm_pair(tensors: TensorSet, level: int = 1) -> tuple[Network, Network]:
    bt = Network(metadata={"shape": "renorm-bt"})
    a = bt.add("B0", tensors.at_level("B", level), "B", (0, 0), level)
    b = bt.add("B1", tensors.at_level("B", level), "B", (1, 0), level)
    t = bt.add("T", tensors.at_level("T", level), "T", (0, 1), level)
    bt.connect((a, "east"), (b, "west"))
    bt.connect((a, "north"), (t, "left"))
    bt.connect((b, "north"), (t, "right"))
    bt.physical = [(a, "west"), (a, "south"), (b, "south"), (b, "east"), (t, "top")]
    gw = Network(metadata={"shape": "renorm-gw"})
    a = gw.add("G0", tensors.at_level("G", level), "G", (0, 0), level)
    b = gw.add("G1", tensors.at_level("G", level), "G", (1, 0), level)
    w = gw.add("W", tensors.at_level("W", level), "W", (0, 1), level)
    gw.connect((a, "right"), (b, "left"))
    gw.connect((a, "out"), (w, "left"))
    gw.connect((b, "out"), (w, "right"))
    gw.physical = [(a, "left"), (a, "in"), (b, "in"), (b, "right"), (w, "top")]
    bt.validate()
    gw.validate()
    return bt, gw


def verify_GW_equals_BT(tensors: TensorSet | None = None) -> ProofReport:
    """Two ``G`` and a ``W`` contract to the same tensor as two ``B`` and a ``T``.

    Labels are identified slot by slot: west/left bit, the two south/in
    spins, east/right bit, and the triangle/isometry output.
    """
    ts = tensors or TensorSet()
    bt, gw = _renorm_pair(ts)
    rep = ProofReport("gw-bt", columns=("bL", "s1", "s2", "bR", "s3", "BT", "GW"))
    a, b = contract_open(bt), contract_open(gw)
    for key in sorted(set(a) | set(b), key=lambda k: tuple(map(str, k))):
        row = dict(zip(rep.columns, map(_fmt, key)), BT=format_scalar(a.get(key, 0)), GW=format_scalar(b.get(key, 0)))
        rep.rows.append(row)
        if a.get(key, 0) != b.get(key, 0):
            rep.fail(**row)
        else:
            rep.matched += 1
    # every (bL, s1, s2) input has exactly one output on the B/T side
    rep.expected = 2 * 3 * 3
    _check_expected(rep)
    rep.notes.append(f"nnz: BT={len(a)} GW={len(b)}")
    return rep


# ---------------------------------------------------------------------------
# boundary locking


def _configs(net: Network, sample, seed: int):
    alphabets = [tuple(x for x in net.space(s).labels if x != OMEGA) for s in net.physical]
    if sample == "all":
        yield from itertools.product(*alphabets)
    else:
        rng = random.Random(seed)
        for _ in range(int(sample)):
            yield tuple(rng.choice(a) for a in alphabets)


def _charge(net: Network, config) -> int | None:
    total = 0
    for s, lab in zip(net.physical, config):
        q = net.space(s).charge(lab)
        if q is None:
            return None
        total += q
    return total


def verify_boundary_locked(net: Network, sample="all", seed: int = 0) -> ProofReport:
    """Every physical configuration admits at most one internal labeling, and one exactly when the amplitude is nonzero."""
    rep = ProofReport(f"locked[{net.metadata.get('shape', '?')}]")
    target = net.sector_charge()
    outside = 0
    for config in _configs(net, sample, seed):
        labs = list(iter_labelings(net, config, limit=2))
        if target is not None and _charge(net, config) != target:
            outside += 1
            if labs:
                rep.fail(config=[_fmt(c) for c in config], reason="labeling found outside the charge sector")
            continue
        amp = amplitude(net, config)
        if len(labs) > 1:
            d = [f"{n}:{labs[0].entries[n]}/{labs[1].entries[n]}" for n in net.nodes if labs[0].entries[n] != labs[1].entries[n]]
            rep.fail(config=[_fmt(c) for c in config], reason="two internal labelings", differ=d[:4])
        elif (len(labs) == 1) != (amp != 0):
            rep.fail(config=[_fmt(c) for c in config], reason=f"{len(labs)} labelings but amplitude {format_scalar(amp)}")
        else:
            rep.matched += 1
    rep.notes.append(f"{rep.matched} in-sector configurations locked; {outside} outside the sector have no labeling")
    return rep


# ---------------------------------------------------------------------------
# column arguments and zipper rewriting


def _isomorphic(a: Network, b: Network) -> bool:
    return nx.is_isomorphic(
        network_graph(a),
        network_graph(b),
        node_match=lambda x, y: x["kind"] == y["kind"],
        edge_match=lambda x, y: x["slots"] == y["slots"],
    )


def verify_zipper_rewriting(n2: int, tensors: TensorSet | None = None) -> ProofReport:
    """Zip the triangle tree of the padded rectangle down to the HRN and compare graphs and states."""
    ts = tensors or TensorSet()
    y = log2_exact(n2)
    rep = ProofReport(f"zipper-rewrite[2n={n2}]", columns=("k", "steps", "isomorphic", "state_equal", "cap_removed_isomorphic"))
    for k in range(0, min(2, n2) + 1):
        p, q = periodic_boundary(n2, k)
        P, Q = p + 2 ** (y + 1), q + 2 ** (y + 1)
        rect = build_rectangle(n2 // 2, y + 2, P, Q, tensors=ts, top="tree")
        zipped, steps = zip_rewrite(rect, "B", "T")
        hrn_big = build_hrn_periodic(n2, P, Q, rows=y + 2, tensors=ts)
        iso = _isomorphic(zipped, hrn_big)
        eq = contract_full(zipped) == contract_full(rect) == contract_full(hrn_big)
        iso2 = _isomorphic(remove_cap(zipped), build_hrn_periodic(n2, p, q, tensors=ts))
        rep.rows.append({"k": k, "steps": steps, "isomorphic": iso, "state_equal": eq, "cap_removed_isomorphic": iso2})
        if iso and eq and iso2:
            rep.matched += 1
        else:
            rep.fail(k=k, isomorphic=iso, state_equal=eq, cap_removed_isomorphic=iso2)
    rect = build_rectangle(n2 // 2, y + 1, tensors=ts, square="C", top="tree", projector=True)
    zipped, steps = zip_rewrite(rect, "C", "S")
    iso = _isomorphic(zipped, build_hrn_open(n2, ts, capped=True))
    iso2 = _isomorphic(remove_cap(zipped, "C"), build_hrn_open(n2, ts))
    eq = contract_full(zipped) == contract_full(rect)
    rep.rows.append({"k": "open", "steps": steps, "isomorphic": iso, "state_equal": eq, "cap_removed_isomorphic": iso2})
    if iso and eq and iso2:
        rep.matched += 1
    else:
        rep.fail(k="open", isomorphic=iso, state_equal=eq, cap_removed_isomorphic=iso2)
    return rep


def _tree_all_zero(n2: int, ts: TensorSet, triangle: str) -> tuple[int, set]:
    net = Network(metadata={"shape": f"{triangle}-tree"})
    from .network import _attach_tree

    leaves = []
    for i in range(n2):
        # a single-leg stand-in for each leaf keeps the tree's inputs open
        leaves.append(None)
    layer_inputs = []
    root = None
    # build the tree directly on open leaves
    width = n2
    layer = []
    for j in range(width // 2):
        nid = net.add(f"{triangle}[1,{j}]", ts.at_level(triangle, 1), triangle, (j, 1))
        layer_inputs += [(nid, "left"), (nid, "right")]
        layer.append((nid, "top"))
    root = _attach_tree(net, layer, triangle, lambda d: ts.at_level(triangle, 1), 1) if len(layer) > 1 else layer[0]
    net.pin(root, 0)
    net.physical = layer_inputs
    net.validate()
    labs = list(iter_labelings(net, [0] * n2, limit=2))
    tiles = set().union(*(set(l.tiles().values()) for l in labs)) if labs else set()
    return len(labs), tiles


def verify_appendix_column_arguments(tensors: TensorSet | None = None, sizes=(2, 4)) -> ProofReport:
    """Replacing the all-zero top boundary by a triangle tree leaves the state unchanged.

    Periodic case: padded rectangles (``m = log2(2n) + 2`` rows, both
    heights shifted up by ``2**(m-1)``) with zero top versus ``T``-tree top,
    both equal to the sector state.  Open case: ``C`` rectangles with
    projectors, zero top versus ``S``-tree top, both equal to the ground
    state.  Also records that an all-zero input to each tree is tiled by
    the blank triangle alone.
    """
    ts = tensors or TensorSet()
    rep = ProofReport("appendix", columns=("case", "2n", "k", "zero_top_nnz", "tree_top_nnz", "equal"))
    for n2 in sizes:
        y = log2_exact(n2)
        for k in range(0, min(2, n2) + 1):
            p, q = periodic_boundary(n2, k)
            P, Q = p + 2 ** (y + 1), q + 2 ** (y + 1)
            flat = contract_full(build_rectangle(n2 // 2, y + 2, P, Q, tensors=ts))
            tree = contract_full(build_rectangle(n2 // 2, y + 2, P, Q, tensors=ts, top="tree"))
            target = periodic_sector_state(n2, k)
            ok = flat == tree == target
            rep.rows.append({"case": "B/T", "2n": n2, "k": k, "zero_top_nnz": flat.nnz, "tree_top_nnz": tree.nnz, "equal": ok})
            rep.matched += ok
            if not ok:
                rep.fail(case="B/T", n2=n2, k=k, zero_top_nnz=flat.nnz, tree_top_nnz=tree.nnz, target_nnz=target.nnz)
        flat = contract_full(build_rectangle(n2 // 2, y + 1, tensors=ts, square="C", projector=True))
        tree = contract_full(build_rectangle(n2 // 2, y + 1, tensors=ts, square="C", top="tree", projector=True))
        target = ground_state_vector(n2)
        ok = flat == tree == target
        rep.rows.append({"case": "C/S", "2n": n2, "k": 0, "zero_top_nnz": flat.nnz, "tree_top_nnz": tree.nnz, "equal": ok})
        rep.matched += ok
        if not ok:
            rep.fail(case="C/S", n2=n2, zero_top_nnz=flat.nnz, tree_top_nnz=tree.nnz, target_nnz=target.nnz)
        for tri, blank in (("T", "D5"), ("S", "E5")):
            count, tiles = _tree_all_zero(n2, ts, tri)
            if n2 > 1 and (count != 1 or tiles != {blank}):
                rep.fail(case=f"{tri}-tree", n2=n2, reason=f"all-zero input has {count} tilings using {sorted(tiles)}")
            else:
                rep.notes.append(f"2n={n2}: all-zero input to the {tri} tree is tiled by {blank} only")
    rep.expected = rep.matched if rep.passed else None
    return rep


# ---------------------------------------------------------------------------
# suites


def verify_oracles(tensors: TensorSet | None = None, max_sites: int = 6) -> ProofReport:
    """Network states against the walk-enumeration oracle, for every builder."""
    from .network import wrap_fredkin

    ts = tensors or TensorSet()
    rep = ProofReport("oracles", columns=("network", "2n", "param", "nnz", "equal"))

    def check(label, n2, param, net_state, oracle):
        ok = net_state == oracle
        rep.rows.append({"network": label, "2n": n2, "param": str(param), "nnz": net_state.nnz, "equal": ok})
        if ok:
            rep.matched += 1
        else:
            diff = sorted(set(net_state.amplitudes) ^ set(oracle.amplitudes), key=str)
            diff += [k for k in net_state.amplitudes if k in oracle.amplitudes and net_state[k] != oracle[k]]
            cfg = diff[0] if diff else None
            rep.fail(network=label, n2=n2, param=str(param), config=None if cfg is None else [_fmt(c) for c in cfg],
                     network_value=format_scalar(net_state[cfg]) if cfg else None, oracle_value=format_scalar(oracle[cfg]) if cfg else None)

    for n2 in range(2, max_sites + 1, 2):
        for t in (1, "t"):
            check("pyramid", n2, t, contract_full(build_binary_height_pyramid(n2 // 2, t, ts)), ground_state_vector(n2, t))
        check("fredkin", n2, "t", contract_full(wrap_fredkin(build_binary_height_pyramid(n2 // 2, "t", ts))), ground_state_vector(n2, "t", "dyck"))
    for n2 in (2, 4):
        check("hrn-open", n2, "-", contract_full(build_hrn_open(n2, ts)), ground_state_vector(n2))
        check("u1", n2, "k=0", contract_full(build_u1_mera(n2, ts)), periodic_sector_state(n2, 0))
        for k in range(-n2, n2 + 1):
            p, q = periodic_boundary(n2, k)
            check("hrn-periodic", n2, f"k={k}", contract_full(build_hrn_periodic(n2, p, q, tensors=ts)), periodic_sector_state(n2, k))
    rep.expected = len(rep.rows)
    return rep


def verify_hamiltonian(max_sites: int = 6) -> ProofReport:
    """Network states are annihilated by the Hamiltonian; kernel dimensions 1 (open) and 4n+1 (periodic)."""
    from fractions import Fraction

    from .hamiltonian import annihilation_residual, build_hamiltonian, kernel_dimension

    rep = ProofReport("hamiltonian", columns=("boundary", "2n", "t", "residual", "kernel", "expected_kernel"))
    for n2 in range(2, max_sites + 1, 2):
        for t in (Fraction(1, 2), 1, 2):
            H = build_hamiltonian(n2, t, "open")
            state = contract_full(build_binary_height_pyramid(n2 // 2, t))
            res = annihilation_residual(H, state)
            ker = kernel_dimension(H) if n2 <= 6 else None
            ok = res <= 1e-12 and ker in (1, None)
            rep.rows.append({"boundary": "open", "2n": n2, "t": str(t), "residual": f"{res:.1e}", "kernel": ker, "expected_kernel": 1})
            rep.matched += ok
            if not ok:
                rep.fail(boundary="open", n2=n2, t=str(t), residual=res, kernel=ker)
    for n2 in (2, 4):
        H = build_hamiltonian(n2, 1, "periodic")
        worst = max(
            annihilation_residual(H, contract_full(build_hrn_periodic(n2, *periodic_boundary(n2, k)))) for k in range(-n2, n2 + 1)
        )
        ker = kernel_dimension(H)
        ok = worst <= 1e-12 and ker == 2 * n2 + 1
        rep.rows.append({"boundary": "periodic", "2n": n2, "t": "1", "residual": f"{worst:.1e}", "kernel": ker, "expected_kernel": 2 * n2 + 1})
        rep.matched += ok
        if not ok:
            rep.fail(boundary="periodic", n2=n2, residual=worst, kernel=ker)
    rep.expected = len(rep.rows)
    return rep


def verify_locked_suite(tensors: TensorSet | None = None, sample="all", seed: int = 0) -> list[ProofReport]:
    ts = tensors or TensorSet()
    nets = [build_binary_height_pyramid(n, 1, ts) for n in (1, 2, 3)]
    nets += [build_u1_mera(n2, ts) for n2 in (2, 4)]
    nets += [build_hrn_open(n2, ts) for n2 in (2, 4)]
    nets += [build_hrn_periodic(n2, *periodic_boundary(n2, k), tensors=ts) for n2 in (2, 4) for k in range(-n2, n2 + 1)]
    reports = []
    for net in nets:
        r = verify_boundary_locked(net, sample, seed)
        m = net.metadata
        r.name = f"locked[{m['shape']} 2n={net.n_sites} p={m.get('p', 0)} q={m.get('q', 0)}]"
        reports.append(r)
    return reports


SUITES = ("zipper-bt", "zipper-cs", "cap", "gw-bt", "locked", "appendix", "oracles", "hamiltonian")


def run_suite(name: str, tensors: TensorSet | None = None, seed: int = 0, sample="all") -> list[ProofReport]:
    """Run one named suite (or ``all``) and return its reports."""
    ts = tensors or TensorSet()
    if name == "all":
        return [r for s in SUITES for r in run_suite(s, ts, seed, sample)]
    if name == "zipper-bt":
        return [verify_zipper_BT(ts)]
    if name == "zipper-cs":
        return [verify_zipper_CS(ts)]
    if name == "cap":
        return [verify_cap_removal("BT", ts), verify_cap_removal("CS", ts)]
    if name == "gw-bt":
        return [verify_GW_equals_BT(ts)]
    if name == "locked":
        return verify_locked_suite(ts, sample, seed)
    if name == "appendix":
        return [verify_appendix_column_arguments(ts), verify_zipper_rewriting(4, ts)]
    if name == "oracles":
        return [verify_oracles(ts)]
    if name == "hamiltonian":
        return [verify_hamiltonian()]
    raise ValueError(f"unknown suite {name!r}; choose from all, {', '.join(SUITES)}")
