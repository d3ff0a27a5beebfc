"""Exact sparse contraction of networks.

Networks are contracted by absorbing one node at a time into a running
sparse tensor over the currently open bonds (a hash join on shared bonds).
The default plan follows node insertion order, which every builder
arranges as a column sweep (grids) or a layer sweep (layered networks), so
the open frontier stays a thin cut through the network.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .network import Network, NetworkError, Slot
from .semiring import Scalar
from .walks import OMEGA, StateVector

__all__ = [
    "ContractionCapError",
    "ContractionPlan",
    "LockViolation",
    "Labeling",
    "contraction_plan",
    "contract_open",
    "contract_full",
    "amplitude",
    "locked_propagate",
    "iter_labelings",
    "count_tensors",
    "FULL_CONTRACTION_CAP",
]

log = logging.getLogger(__name__)

FULL_CONTRACTION_CAP = 12


class ContractionCapError(RuntimeError):
    pass


@dataclass
class LockViolation:
    node: str
    candidates: int
    config: tuple

    def __str__(self) -> str:
        return f"node {self.node} has {self.candidates} admissible entries for {self.config}"


@dataclass
class ContractionPlan:
    order: list[str]
    max_open_bonds: int
    dense_bound: int

    def __str__(self) -> str:
        return f"{len(self.order)} nodes, at most {self.max_open_bonds} open bonds (dense bound {self.dense_bound})"


# ---------------------------------------------------------------------------
# bond bookkeeping


@dataclass
class _Prepared:
    # node id -> (bond ids of the node's free slots, entries restricted to pins)
    nodes: dict[str, tuple[tuple, dict]]
    sizes: dict
    physical: list


def _prepare(net: Network, fixed: dict[Slot, object] | None = None) -> _Prepared:
    bond_of: dict[Slot, object] = {}
    sizes = {}
    for i, (a, b) in enumerate(net.edges):
        bond_of[a] = bond_of[b] = i
        sizes[i] = len(net.space(a).labels)
    for i, s in enumerate(net.physical):
        bond_of[s] = ("site", i)
        sizes[("site", i)] = len(net.space(s).labels)
    pins = dict(net.pins)
    if fixed:
        pins.update(fixed)
    nodes = {}
    for nid, node in net.nodes.items():
        ten = node.tensor
        keep, fix = [], []
        for j, sp in enumerate(ten.indices):
            s = (nid, sp.name)
            if s in pins:
                fix.append((j, pins[s]))
            else:
                keep.append(j)
        ents: dict[tuple, Scalar] = {}
        for key, val in ten.entries.items():
            if all(key[j] == lab for j, lab in fix):
                sub = tuple(key[j] for j in keep)
                ents[sub] = ents.get(sub, 0) + val
        bonds = tuple(bond_of[(nid, ten.indices[j].name)] for j in keep)
        nodes[nid] = (bonds, ents)
    return _Prepared(nodes, sizes, [("site", i) for i in range(len(net.physical))])


def _default_order(prep: _Prepared, base: list[str]) -> list[str]:
    """Insertion order, but any pending node that would not enlarge the frontier is absorbed at once."""
    pending = list(base)
    open_bonds: set = set()
    order: list[str] = []

    def absorb(nid):
        pending.remove(nid)
        order.append(nid)
        for b in prep.nodes[nid][0]:
            open_bonds.symmetric_difference_update({b})

    while pending:
        absorb(pending[0])
        progress = True
        while progress:
            progress = False
            for nid in pending:
                bonds = prep.nodes[nid][0]
                shared = sum(1 for b in bonds if b in open_bonds)
                if shared and 2 * shared >= len(bonds):
                    absorb(nid)
                    progress = True
                    break
    return order


def contraction_plan(net: Network, order: Sequence[str] | None = None) -> ContractionPlan:
    """Absorption order with a bound on the frontier it produces.

    Without an explicit ``order`` this follows the builder's node order
    (column sweep for grids, layer sweep for layered networks) and absorbs
    a waiting node early whenever at least half its legs are already open.
    """
    prep = _prepare(net)
    order = list(order) if order is not None else _default_order(prep, list(net.nodes))
    if sorted(order) != sorted(net.nodes):
        raise NetworkError("plan order must list every node exactly once")
    open_bonds: set = set()
    worst, dense = 0, 1
    for nid in order:
        for b in prep.nodes[nid][0]:
            open_bonds ^= {b}
        worst = max(worst, len(open_bonds))
        size = 1
        for b in open_bonds:
            size *= prep.sizes[b]
        dense = max(dense, size)
    return ContractionPlan(order, worst, dense)


def _absorb(frontier: tuple, table: dict, bonds: tuple, ents: dict) -> tuple[tuple, dict]:
    shared = [b for b in bonds if b in frontier]
    fi = [frontier.index(b) for b in shared]
    ni = [bonds.index(b) for b in shared]
    keep_f = [i for i, b in enumerate(frontier) if b not in shared]
    keep_n = [i for i, b in enumerate(bonds) if b not in shared]
    new_frontier = tuple(frontier[i] for i in keep_f) + tuple(bonds[i] for i in keep_n)
    index: dict[tuple, list] = {}
    for key, val in ents.items():
        index.setdefault(tuple(key[i] for i in ni), []).append((tuple(key[i] for i in keep_n), val))
    out: dict[tuple, Scalar] = {}
    for key, val in table.items():
        for rest, v2 in index.get(tuple(key[i] for i in fi), ()):
            k2 = tuple(key[i] for i in keep_f) + rest
            out[k2] = out.get(k2, 0) + val * v2
    return new_frontier, {k: v for k, v in out.items() if v}


def contract_open(
    net: Network, fixed: dict[Slot, object] | None = None, order: Sequence[str] | None = None, stats: dict | None = None
) -> dict[tuple, Scalar]:
    """Contract everything; result keyed by labels of the remaining physical slots, in site order.

    Values are raw (no readout applied).
    """
    prep = _prepare(net, fixed)
    if order is None:
        order = _default_order(_prepare(net), list(net.nodes))
    frontier: tuple = ()
    table: dict[tuple, Scalar] = {(): 1}
    peak = 0
    for nid in order:
        bonds, ents = prep.nodes[nid]
        frontier, table = _absorb(frontier, table, bonds, ents)
        peak = max(peak, len(table))
        if not table:
            break
    if stats is not None:
        stats["peak_nnz"] = peak
    remaining = [b for b in prep.physical if not fixed or net.physical[b[1]] not in fixed]
    if not table:
        return {}
    if sorted(frontier, key=repr) != sorted(remaining, key=repr):
        raise NetworkError("contraction left internal bonds open")
    perm = [frontier.index(b) for b in remaining]
    return {tuple(k[i] for i in perm): v for k, v in table.items()}


def _readout(net: Network, v):
    return net.readout(v) if net.readout is not None else v


def amplitude(net: Network, config: Sequence) -> Scalar:
    """Amplitude of one physical configuration."""
    config = tuple(config)
    if len(config) != len(net.physical):
        raise ValueError(f"configuration has {len(config)} sites, network has {len(net.physical)}")
    for lab, s in zip(config, net.physical):
        if lab not in net.space(s).labels:
            raise ValueError(f"label {lab!r} not allowed on site {s}")
    res = contract_open(net, dict(zip(net.physical, config)))
    return _readout(net, res.get((), 0))


def contract_full(
    net: Network, cap: int = FULL_CONTRACTION_CAP, order: Sequence[str] | None = None, stats: dict | None = None
) -> StateVector:
    """Full physical state; refuses more than ``cap`` sites."""
    if len(net.physical) > cap:
        raise ContractionCapError(f"{len(net.physical)} sites exceeds the full-contraction cap {cap}")
    res = contract_open(net, order=order, stats=stats)
    amps = {k: _readout(net, v) for k, v in res.items()}
    if any(OMEGA in k for k in amps):
        raise NetworkError("state has support on ω; the network is missing a projector")
    return StateVector(amps, len(net.physical), net.kind)


def count_tensors(net: Network) -> dict[str, int]:
    return net.count_tensors()


# ---------------------------------------------------------------------------
# boundary-locked evaluation


@dataclass
class Labeling:
    """One consistent choice of nonzero entry per node."""

    net: Network
    bonds: dict
    entries: dict[str, tuple]
    value: Scalar = 1
    _prep: _Prepared | None = field(default=None, repr=False)

    def slot_label(self, slot: Slot):
        if slot in self.net.pins:
            return self.net.pins[slot]
        nid, name = slot
        ten = self.net.nodes[nid].tensor
        return self.entries[nid][ten.slot(name)]

    def tiles(self) -> dict[str, str]:
        out = {}
        for nid, key in self.entries.items():
            ten = self.net.nodes[nid].tensor
            out[nid] = ten.tiles.get(key, repr(key))
        return out


class _Solver:
    """Constraint propagation over bond labels; nodes choose among their filtered entries."""

    def __init__(self, net: Network, fixed: dict[Slot, object] | None):
        self.net = net
        self.prep = _prepare(net, fixed)
        self.full_keys = {}
        pins = dict(net.pins)
        pins.update(fixed or {})
        # keep a map back to full tensor keys for tile lookup
        for nid, node in net.nodes.items():
            ten = node.tensor
            keep = [j for j, sp in enumerate(ten.indices) if (nid, sp.name) not in pins]
            fixd = {j: pins[(nid, sp.name)] for j, sp in enumerate(ten.indices) if (nid, sp.name) in pins}
            self.full_keys[nid] = (keep, fixd, ten.rank)
        self.nodes_of: dict = {}
        for nid, (bonds, _) in self.prep.nodes.items():
            for b in bonds:
                self.nodes_of.setdefault(b, []).append(nid)

    def full_key(self, nid: str, sub: tuple) -> tuple:
        keep, fixd, rank = self.full_keys[nid]
        key = [None] * rank
        for j, lab in fixd.items():
            key[j] = lab
        for j, lab in zip(keep, sub):
            key[j] = lab
        return tuple(key)

    def candidates(self, nid: str, bonds_known: dict) -> list[tuple]:
        bonds, ents = self.prep.nodes[nid]
        return [k for k in ents if all(bonds_known.get(b, lab) == lab for b, lab in zip(bonds, k))]

    def propagate(self, known: dict, chosen: dict, queue: list) -> bool:
        """Resolve forced nodes; returns False on contradiction."""
        while queue:
            nid = queue.pop()
            if nid in chosen:
                continue
            cands = self.candidates(nid, known)
            if not cands:
                return False
            if len(cands) == 1:
                (key,) = cands
                chosen[nid] = key
                for b, lab in zip(self.prep.nodes[nid][0], key):
                    if b not in known:
                        known[b] = lab
                        queue.extend(x for x in self.nodes_of[b] if x not in chosen)
        return True

    def solve(self, known: dict, chosen: dict) -> Iterator[tuple[dict, dict]]:
        if not self.propagate(known, chosen, [n for n in self.prep.nodes if n not in chosen]):
            return
        open_nodes = [n for n in self.prep.nodes if n not in chosen]
        if not open_nodes:
            yield known, chosen
            return
        nid = min(open_nodes, key=lambda n: len(self.candidates(n, known)))
        bonds = self.prep.nodes[nid][0]
        for key in self.candidates(nid, known):
            k2, c2 = dict(known), dict(chosen)
            c2[nid] = key
            touched = []
            for b, lab in zip(bonds, key):
                if b not in k2:
                    k2[b] = lab
                    touched.append(b)
            yield from self.solve(k2, c2)

    def value(self, chosen: dict) -> Scalar:
        v = 1
        for nid, key in chosen.items():
            v = v * self.prep.nodes[nid][1][key]
        return v


def iter_labelings(net: Network, fixed: dict[Slot, object] | Sequence | None = None, limit: int | None = None) -> Iterator[Labeling]:
    """Enumerate every consistent entry choice, optionally with physical labels fixed.

    ``fixed`` may be a mapping from slots to labels or a full physical
    configuration.
    """
    if fixed is not None and not isinstance(fixed, dict):
        fixed = dict(zip(net.physical, tuple(fixed)))
    solver = _Solver(net, fixed)
    count = 0
    for known, chosen in solver.solve({}, {}):
        entries = {nid: solver.full_key(nid, key) for nid, key in chosen.items()}
        yield Labeling(net, known, entries, solver.value(chosen))
        count += 1
        if limit is not None and count >= limit:
            return


def locked_propagate(net: Network, config: Sequence, violations: list | None = None) -> Scalar:
    """Amplitude by forced propagation from the pinned boundary and ``config``.

    On a boundary-locked network every node is forced and the cost is linear
    in the number of nodes.  When propagation stalls with several admissible
    entries somewhere, a :class:`LockViolation` is recorded (and logged) and
    the amplitude is computed by generic contraction instead.
    """
    config = tuple(config)
    if len(config) != len(net.physical):
        raise ValueError("configuration length does not match the network")
    fixed = dict(zip(net.physical, config))
    solver = _Solver(net, fixed)
    known: dict = {}
    chosen: dict = {}
    if not solver.propagate(known, chosen, list(solver.prep.nodes)):
        return _readout(net, 0)
    stuck = [n for n in solver.prep.nodes if n not in chosen]
    if stuck:
        v = LockViolation(stuck[0], len(solver.candidates(stuck[0], known)), config)
        log.warning("lock violation: %s", v)
        if violations is not None:
            violations.append(v)
        return amplitude(net, config)
    return _readout(net, solver.value(chosen))
