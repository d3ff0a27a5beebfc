"""Brute-force ground truth: walks, areas, exact ground states and Schmidt spectra.

Nothing here touches tensors.  Every network in the package is checked
against the objects produced by this module.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterator, Sequence, Union

import numpy as np

from .semiring import Poly, Scalar, format_scalar, parse_scalar, power, scalar_kind

__all__ = [
    "OMEGA",
    "HALF_UP",
    "HALF_DOWN",
    "T",
    "EnumerationCapError",
    "Open",
    "Fixed",
    "NetHeight",
    "Walk",
    "StateVector",
    "SchmidtSpectrum",
    "enumerate_walks",
    "exhaustive_walks",
    "walk_area",
    "ground_state_vector",
    "periodic_sector_state",
    "schmidt_spectrum",
    "entanglement_entropy",
    "motzkin_number",
    "catalan_number",
]

OMEGA = "ω"
HALF_UP = Fraction(1, 2)
HALF_DOWN = Fraction(-1, 2)
#: Formal deformation parameter; pass it wherever a ``t`` is accepted.
T = Poly.var()

DEFAULT_CAP = 20

MOTZKIN_STEPS = (-1, 0, 1)
DYCK_STEPS = (-1, 1)

_CHARS = {
    "motzkin": {-1: "-", 0: "0", 1: "+", OMEGA: "w"},
    "dyck": {HALF_DOWN: "d", HALF_UP: "u"},
}
_LABELS = {kind: {c: lab for lab, c in table.items()} for kind, table in _CHARS.items()}


class EnumerationCapError(RuntimeError):
    """Requested enumeration is larger than the configured cap."""


@dataclass(frozen=True)
class Open:
    """Walks from height 0 to height 0 that never go below the axis."""


@dataclass(frozen=True)
class Fixed:
    """Nonnegative walks starting at height ``p`` and ending at height ``q``."""

    p: int
    q: int


@dataclass(frozen=True)
class NetHeight:
    """All step sequences summing to ``k``; no positivity constraint."""

    k: int


Boundary = Union[Open, Fixed, NetHeight, str]


@dataclass(frozen=True)
class Walk:
    steps: tuple[int, ...]
    start: int = 0

    @property
    def heights(self) -> tuple[int, ...]:
        hs = [self.start]
        for s in self.steps:
            hs.append(hs[-1] + s)
        return tuple(hs)

    def __len__(self) -> int:
        return len(self.steps)


def _check_kind(kind: str) -> tuple[int, ...]:
    if kind == "motzkin":
        return MOTZKIN_STEPS
    if kind == "dyck":
        return DYCK_STEPS
    raise ValueError(f"unknown walk kind {kind!r}")


def _normalize_boundary(boundary: Boundary):
    if boundary == "open" or boundary is None:
        return Open()
    if isinstance(boundary, (Open, Fixed, NetHeight)):
        return boundary
    raise ValueError(f"unknown boundary {boundary!r}")


def enumerate_walks(
    n_steps: int, kind: str = "motzkin", boundary: Boundary = "open", cap: int = DEFAULT_CAP
) -> list[Walk]:
    """All walks of ``n_steps`` steps obeying ``boundary``, in lexicographic step order.

    Generation is depth-first with reachability pruning, so the cost scales
    with the number of walks returned rather than ``3**n_steps``.
    """
    steps = _check_kind(kind)
    if n_steps <= 0 or n_steps % 2:
        raise ValueError(f"n_steps must be a positive even integer, got {n_steps}")
    if n_steps > cap:
        raise EnumerationCapError(f"n_steps={n_steps} exceeds enumeration cap {cap}")
    bd = _normalize_boundary(boundary)
    if isinstance(bd, Open):
        start, end, floor = 0, 0, 0
    elif isinstance(bd, Fixed):
        if bd.p < 0 or bd.q < 0:
            raise ValueError("fixed boundary heights must be nonnegative")
        start, end, floor = bd.p, bd.q, 0
    else:
        start, end, floor = 0, bd.k, None

    out: list[Walk] = []
    prefix: list[int] = []

    def rec(h: int, remaining: int) -> None:
        if remaining == 0:
            if h == end:
                out.append(Walk(tuple(prefix), start))
            return
        for s in steps:
            nh = h + s
            if floor is not None and nh < floor:
                continue
            if abs(end - nh) > remaining - 1:
                continue
            if kind == "dyck" and (end - nh - (remaining - 1)) % 2:
                continue
            prefix.append(s)
            rec(nh, remaining - 1)
            prefix.pop()

    rec(start, n_steps)
    return out


def exhaustive_walks(n_steps: int, kind: str = "motzkin", boundary: Boundary = "open") -> list[Walk]:
    """Same contract as :func:`enumerate_walks` by filtering every step sequence.

    Exponential; kept as an independent cross-check for small sizes.
    """
    steps = _check_kind(kind)
    bd = _normalize_boundary(boundary)
    out = []
    for seq in product(steps, repeat=n_steps):
        if isinstance(bd, NetHeight):
            if sum(seq) == bd.k:
                out.append(Walk(seq))
            continue
        start, end = (0, 0) if isinstance(bd, Open) else (bd.p, bd.q)
        w = Walk(seq, start)
        hs = w.heights
        if hs[-1] == end and min(hs) >= 0:
            out.append(w)
    return out


def walk_area(w: Walk) -> Fraction:
    """Trapezoid area under the height profile, ``sum((h[x-1] + h[x]) / 2)``."""
    hs = w.heights
    return Fraction(sum(hs[i] + hs[i + 1] for i in range(len(hs) - 1)), 2)


def motzkin_number(n: int) -> int:
    m = [1, 1]
    for k in range(2, n + 1):
        m.append(((2 * k + 1) * m[k - 1] + (3 * k - 3) * m[k - 2]) // (k + 2))
    return m[n]


def catalan_number(n: int) -> int:
    return math.comb(2 * n, n) // (n + 1)


# ---------------------------------------------------------------------------
# State vectors


def config_to_string(config: Sequence, kind: str = "motzkin") -> str:
    table = _CHARS[kind]
    return "".join(table[c] for c in config)


def string_to_config(s: str, kind: str | None = None) -> tuple:
    if kind is None:
        kind = "dyck" if set(s) <= {"u", "d"} and s else "motzkin"
    table = _LABELS[kind]
    try:
        return tuple(table[ch] for ch in s)
    except KeyError as exc:
        raise ValueError(f"invalid character {exc.args[0]!r} in {kind} config {s!r}") from None


@dataclass
class StateVector:
    """Sparse map from spin configurations to exact (or float) amplitudes."""

    amplitudes: dict[tuple, Scalar]
    n_sites: int
    kind: str = "motzkin"

    def __post_init__(self):
        for cfg in self.amplitudes:
            if len(cfg) != self.n_sites:
                raise ValueError(f"config {cfg} does not have {self.n_sites} sites")
        self.amplitudes = {k: v for k, v in self.amplitudes.items() if v}

    @property
    def scalar_kind(self) -> str:
        return scalar_kind(self.amplitudes.values())

    def __len__(self) -> int:
        return len(self.amplitudes)

    def __getitem__(self, cfg) -> Scalar:
        return self.amplitudes.get(tuple(cfg), 0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, StateVector):
            return NotImplemented
        return (
            self.n_sites == other.n_sites
            and self.kind == other.kind
            and self.amplitudes == other.amplitudes
        )

    @property
    def nnz(self) -> int:
        return len(self.amplitudes)

    def norm_squared(self) -> Scalar:
        total = 0
        for v in self.amplitudes.values():
            total = total + v * v
        return total

    def map(self, fn) -> "StateVector":
        return StateVector({k: fn(v) for k, v in self.amplitudes.items()}, self.n_sites, self.kind)

    def evaluate(self, t) -> "StateVector":
        """Substitute a value for the formal ``t`` in polynomial amplitudes."""
        return self.map(lambda v: v.evaluate(t) if isinstance(v, Poly) else v)

    def is_proportional_to(self, other: "StateVector") -> bool:
        if set(self.amplitudes) != set(other.amplitudes):
            return False
        if not self.amplitudes:
            return True
        k0 = next(iter(self.amplitudes))
        a0, b0 = self.amplitudes[k0], other.amplitudes[k0]
        return all(self.amplitudes[k] * b0 == other.amplitudes[k] * a0 for k in self.amplitudes)

    def to_dense(self, alphabet: Sequence | None = None) -> np.ndarray:
        """Float vector in the product basis, first site most significant."""
        if alphabet is None:
            alphabet = MOTZKIN_STEPS if self.kind == "motzkin" else (HALF_DOWN, HALF_UP)
        pos = {lab: i for i, lab in enumerate(alphabet)}
        d = len(alphabet)
        vec = np.zeros(d**self.n_sites)
        for cfg, amp in self.amplitudes.items():
            idx = 0
            for c in cfg:
                idx = idx * d + pos[c]
            vec[idx] = float(amp)
        return vec

    def to_json(self) -> str:
        amps = {config_to_string(k, self.kind): format_scalar(v) for k, v in self.amplitudes.items()}
        doc = {
            "kind": self.kind,
            "n_sites": self.n_sites,
            "scalar_kind": self.scalar_kind,
            "amplitudes": dict(sorted(amps.items())),
        }
        return json.dumps(doc, indent=2, ensure_ascii=False)

    @classmethod
    def from_json(cls, text: str) -> "StateVector":
        doc = json.loads(text)
        kind = doc["kind"]
        amps = {string_to_config(k, kind): parse_scalar(v) for k, v in doc["amplitudes"].items()}
        return cls(amps, doc["n_sites"], kind)


def _as_t(t) -> Scalar:
    if isinstance(t, str):
        if t.strip() == "t":
            return T
        return parse_scalar(t)
    if isinstance(t, float):
        return Fraction(t).limit_denominator(10**12) if t != int(t) else int(t)
    return t


def ground_state_vector(
    n_sites: int, t=1, kind: str = "motzkin", cap: int = DEFAULT_CAP
) -> StateVector:
    """Unnormalised ``sum_w t**A(w) |w>`` over open walks; ``norm_squared()`` gives the normalisation."""
    t = _as_t(t)
    walks = enumerate_walks(n_sites, kind, Open(), cap)
    amps = {}
    for w in walks:
        area = walk_area(w)
        if area.denominator != 1:
            raise AssertionError("open walks have integral area")
        key = w.steps if kind == "motzkin" else tuple(Fraction(s, 2) for s in w.steps)
        amps[key] = power(t, int(area))
    return StateVector(amps, n_sites, kind)


def periodic_sector_state(n_sites: int, k: int, cap: int = DEFAULT_CAP) -> StateVector:
    """Equal superposition of every spin-1 configuration with total magnetisation ``k``."""
    if abs(k) > n_sites:
        raise ValueError(f"|k|={abs(k)} exceeds n_sites={n_sites}")
    walks = enumerate_walks(n_sites, "motzkin", NetHeight(k), cap)
    return StateVector({w.steps: 1 for w in walks}, n_sites, "motzkin")


# ---------------------------------------------------------------------------
# Schmidt spectra


@dataclass
class SchmidtSpectrum:
    weights: list
    cut: int
    exact: bool = field(default=False)

    def __post_init__(self):
        total = sum(self.weights)
        if self.exact:
            if total != 1:
                raise ValueError(f"exact Schmidt weights sum to {total}")
        elif abs(float(total) - 1.0) > 1e-12:
            raise ValueError(f"Schmidt weights sum to {total}")

    @property
    def rank(self) -> int:
        return len(self.weights)


def _components(entries: dict[tuple, Scalar]) -> list[dict[tuple, Scalar]]:
    """Split a sparse matrix into blocks connected through shared rows or columns."""
    parent: dict = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for r, c in entries:
        parent.setdefault(("r", r), ("r", r))
        parent.setdefault(("c", c), ("c", c))
        a, b = find(("r", r)), find(("c", c))
        if a != b:
            parent[a] = b
    blocks: dict = {}
    for (r, c), v in entries.items():
        blocks.setdefault(find(("r", r)), {})[(r, c)] = v
    return list(blocks.values())


def _is_rank_one(block: dict[tuple, Scalar]) -> bool:
    rows = sorted({r for r, _ in block})
    cols = sorted({c for _, c in block})
    r0, c0 = next(iter(block))
    p = block[(r0, c0)]
    for r in rows:
        for c in cols:
            if block.get((r, c), 0) * p != block.get((r, c0), 0) * block.get((r0, c), 0):
                return False
    return True


def schmidt_spectrum(state: StateVector, cut: int, exact: bool | None = None) -> SchmidtSpectrum:
    """Normalised squared singular values of the amplitude matrix split after ``cut`` sites.

    ``exact=True`` returns ``Fraction`` weights; it needs integer or rational
    amplitudes and a spectrum that is rational (true whenever every block of
    the reshaped matrix has rank one, which covers all walk states here).
    """
    if not state.amplitudes:
        raise ValueError("zero state has no Schmidt spectrum")
    if not 0 < cut < state.n_sites:
        raise ValueError(f"cut {cut} outside 1..{state.n_sites - 1}")
    kind = state.scalar_kind
    if kind == "poly_t":
        raise ValueError("evaluate polynomial amplitudes at a numeric t first")
    if exact is None:
        exact = kind in ("integer", "rational")
    entries = {(cfg[:cut], cfg[cut:]): v for cfg, v in state.amplitudes.items()}
    if exact:
        if kind == "float":
            raise ValueError("exact spectrum needs integer or rational amplitudes")
        sq = []
        for block in _components(entries):
            if not _is_rank_one(block):
                sq.extend(_exact_block_eigs(block))
            else:
                sq.append(sum(Fraction(v) * v for v in block.values()))
        total = sum(sq)
        weights = sorted((Fraction(s) / total for s in sq if s), reverse=True)
        return SchmidtSpectrum(weights, cut, exact=True)
    rows = sorted({r for r, _ in entries})
    cols = sorted({c for _, c in entries})
    ri = {r: i for i, r in enumerate(rows)}
    ci = {c: i for i, c in enumerate(cols)}
    mat = np.zeros((len(rows), len(cols)))
    for (r, c), v in entries.items():
        mat[ri[r], ci[c]] = float(v)
    sv = np.linalg.svd(mat, compute_uv=False)
    sq = sv**2
    sq = sq[sq > 1e-14 * sq.max()]
    weights = sorted((sq / sq.sum()).tolist(), reverse=True)
    return SchmidtSpectrum(weights, cut, exact=False)


def _exact_block_eigs(block: dict[tuple, Scalar]) -> list[Fraction]:
    import sympy

    rows = sorted({r for r, _ in block})
    cols = sorted({c for _, c in block})
    m = sympy.Matrix(len(rows), len(cols), lambda i, j: sympy.Rational(block.get((rows[i], cols[j]), 0)))
    out = []
    for ev, mult in (m * m.T).eigenvals().items():
        if not ev.is_rational:
            raise ValueError("Schmidt spectrum is irrational; use exact=False")
        out.extend([Fraction(int(ev.p), int(ev.q))] * mult)
    return out


def entanglement_entropy(spec: SchmidtSpectrum) -> float:
    """Von Neumann entropy in nats, with ``0 ln 0 = 0``."""
    return -sum(float(p) * math.log(float(p)) for p in spec.weights if p)
