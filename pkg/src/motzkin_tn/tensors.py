"""Charge-labelled sparse tensors and the named building blocks.

Every tensor stores only its nonzero entries, keyed by tuples of index
labels.  Labels are small integers, ``Fraction(±1, 2)`` for spin-1/2 legs, or
the non-physical ``ω``; each index also carries an orientation and a U(1)
charge for every label except ``ω``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .semiring import Poly, Scalar, format_scalar, parse_scalar, power, scalar_kind
from .tiles import SQUARE_EDGES, TRIANGLE_EDGES, Tile, tile_family
from .walks import HALF_DOWN, HALF_UP, OMEGA

__all__ = [
    "IndexSpace",
    "LabeledTensor",
    "ChargeError",
    "delta4",
    "delta3",
    "from_tiles",
    "make_B",
    "make_B_s",
    "make_C",
    "make_T",
    "make_S",
    "make_P",
    "make_Pi",
    "make_G",
    "make_W",
    "check_charge_conservation",
    "charge_violations",
    "contract_pair",
    "TensorSet",
    "SPIN",
    "SPIN_W",
    "BIT",
    "HALF",
    "encode_label",
    "decode_label",
]

SPIN = (-1, 0, 1)
SPIN_W = (-1, 0, 1, OMEGA)
BIT = (0, 1)
HALF = (HALF_DOWN, HALF_UP)


class ChargeError(ValueError):
    pass


@dataclass(frozen=True)
class IndexSpace:
    name: str
    labels: tuple
    orientation: str | None = None
    charges: Mapping = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        if len(set(self.labels)) != len(self.labels):
            raise ValueError(f"duplicate labels in index {self.name!r}")
        if self.orientation not in (None, "in", "out"):
            raise ValueError(f"bad orientation {self.orientation!r}")

    def charge(self, label):
        return self.charges.get(label)

    def scaled(self, factor: int) -> "IndexSpace":
        return replace(self, charges={k: v * factor for k, v in self.charges.items()})

    def renamed(self, name: str) -> "IndexSpace":
        return replace(self, name=name)

    def position(self, label) -> int:
        return self.labels.index(label)


def _space(name, labels, orientation, scale=1):
    charges = {lab: lab * scale for lab in labels if lab != OMEGA}
    return IndexSpace(name, tuple(labels), orientation, charges)


class LabeledTensor:
    """Sparse tensor over labelled indices; zero entries are never stored."""

    __slots__ = ("name", "indices", "entries", "tiles")

    def __init__(
        self,
        name: str,
        indices: Sequence[IndexSpace],
        entries: Mapping[tuple, Scalar],
        tiles: Mapping[tuple, str] | None = None,
    ):
        self.name = name
        self.indices = tuple(indices)
        clean = {}
        for key, val in entries.items():
            key = tuple(key)
            if len(key) != len(self.indices):
                raise ValueError(f"{name}: entry {key} has wrong arity")
            for lab, sp in zip(key, self.indices):
                if lab not in sp.labels:
                    raise ValueError(f"{name}: label {lab!r} not in index {sp.name!r}")
            if val:
                clean[key] = val
        self.entries = dict(sorted(clean.items(), key=lambda kv: self._order(kv[0])))
        self.tiles = dict(tiles or {})

    def _order(self, key: tuple) -> tuple:
        return tuple(sp.position(lab) for lab, sp in zip(key, self.indices))

    @property
    def rank(self) -> int:
        return len(self.indices)

    @property
    def nnz(self) -> int:
        return len(self.entries)

    @property
    def index_names(self) -> tuple[str, ...]:
        return tuple(sp.name for sp in self.indices)

    def slot(self, ref) -> int:
        if isinstance(ref, int):
            return ref
        try:
            return self.index_names.index(ref)
        except ValueError:
            raise KeyError(f"{self.name} has no index {ref!r}") from None

    def __getitem__(self, key) -> Scalar:
        return self.entries.get(tuple(key), 0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LabeledTensor):
            return NotImplemented
        return self.indices == other.indices and self.entries == other.entries

    def __repr__(self) -> str:
        return f"LabeledTensor({self.name!r}, {list(self.index_names)}, nnz={self.nnz})"

    @property
    def scalar_kind(self) -> str:
        return scalar_kind(self.entries.values())

    def with_name(self, name: str) -> "LabeledTensor":
        return LabeledTensor(name, self.indices, self.entries, self.tiles)

    def with_charge_scale(self, factor: int) -> "LabeledTensor":
        return LabeledTensor(self.name, [sp.scaled(factor) for sp in self.indices], self.entries, self.tiles)

    def without(self, key: tuple) -> "LabeledTensor":
        """Copy with one entry deleted (mutation testing)."""
        ents = dict(self.entries)
        del ents[tuple(key)]
        return LabeledTensor(self.name, self.indices, ents, self.tiles)

    def map_values(self, fn) -> "LabeledTensor":
        return LabeledTensor(self.name, self.indices, {k: fn(v) for k, v in self.entries.items()}, self.tiles)

    def fix(self, ref, label) -> "LabeledTensor":
        """Contract index ``ref`` with the basis vector ``|label>``."""
        i = self.slot(ref)
        if label not in self.indices[i].labels:
            raise ValueError(f"label {label!r} not in index {self.indices[i].name!r}")
        idx = self.indices[:i] + self.indices[i + 1 :]
        ents = {k[:i] + k[i + 1 :]: v for k, v in self.entries.items() if k[i] == label}
        return LabeledTensor(self.name, idx, ents)

    def transpose(self, order: Sequence) -> "LabeledTensor":
        perm = [self.slot(o) for o in order]
        if sorted(perm) != list(range(self.rank)):
            raise ValueError("transpose order must be a permutation")
        idx = [self.indices[p] for p in perm]
        ents = {tuple(k[p] for p in perm): v for k, v in self.entries.items()}
        return LabeledTensor(self.name, idx, ents)

    def to_dict(self) -> dict:
        doc = {
            "name": self.name,
            "indices": [
                {
                    "name": sp.name,
                    "labels": [encode_label(lab) for lab in sp.labels],
                    "orientation": sp.orientation,
                    "charges": {str(encode_label(k)): v for k, v in sp.charges.items()},
                }
                for sp in self.indices
            ],
            "entries": [[[encode_label(lab) for lab in k], format_scalar(v)] for k, v in self.entries.items()],
        }
        if self.tiles:
            doc["tiles"] = [[[encode_label(lab) for lab in k], n] for k, n in self.tiles.items()]
        return doc

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False)

    @classmethod
    def from_dict(cls, doc: dict) -> "LabeledTensor":
        spaces = []
        for sp in doc["indices"]:
            labels = tuple(decode_label(x) for x in sp["labels"])
            charges = {decode_label(_maybe_int(k)): v for k, v in sp.get("charges", {}).items()}
            spaces.append(IndexSpace(sp["name"], labels, sp.get("orientation"), charges))
        entries = {tuple(decode_label(x) for x in k): parse_scalar(v) for k, v in doc["entries"]}
        tiles = {tuple(decode_label(x) for x in k): n for k, n in doc.get("tiles", [])}
        return cls(doc["name"], spaces, entries, tiles)


def _maybe_int(s: str):
    try:
        return int(s)
    except ValueError:
        return s


def encode_label(lab):
    if isinstance(lab, Fraction):
        return str(lab)
    return lab


def decode_label(x):
    if isinstance(x, str) and "/" in x:
        return Fraction(x)
    return x


# ---------------------------------------------------------------------------
# Index layouts


def square_spaces(omega: bool = False, scale: int = 1) -> tuple[IndexSpace, ...]:
    spins = SPIN_W if omega else SPIN
    return (
        _space("south", spins, "in", scale),
        _space("west", BIT, "in", scale),
        _space("east", BIT, "out", scale),
        _space("north", spins, "out", 2 * scale),
    )


def triangle_spaces(omega: bool = False, scale: int = 1) -> tuple[IndexSpace, ...]:
    spins = SPIN_W if omega else SPIN
    return (
        _space("left", spins, "in", 2 * scale),
        _space("right", spins, "in", 2 * scale),
        _space("top", spins, "out", 2 * scale),
    )


def g_spaces(scale: int = 1) -> tuple[IndexSpace, ...]:
    return (
        _space("in", SPIN, "in", scale),
        _space("left", BIT, "in", scale),
        _space("right", BIT, "out", scale),
        _space("out", (-1, 1), "out", scale),
    )


def w_spaces(scale: int = 1) -> tuple[IndexSpace, ...]:
    return (
        _space("left", (-1, 1), "in", scale),
        _space("right", (-1, 1), "in", scale),
        _space("top", SPIN, "out", 2 * scale),
    )


# ---------------------------------------------------------------------------
# Constructors


def delta4(k: Sequence, spaces: Sequence[IndexSpace] | None = None) -> LabeledTensor:
    """Rank-one four-index indicator ``δ_k(w, x, y, z)``."""
    k = tuple(k)
    if len(k) != 4:
        raise ValueError("delta4 needs four labels")
    if spaces is None:
        spaces = square_spaces(omega=OMEGA in k)
    return LabeledTensor("delta", spaces, {k: 1})


def delta3(k: Sequence, spaces: Sequence[IndexSpace] | None = None) -> LabeledTensor:
    """Rank-one three-index indicator ``δ_k(x, y, z)``."""
    k = tuple(k)
    if len(k) != 3:
        raise ValueError("delta3 needs three labels")
    if spaces is None:
        spaces = triangle_spaces(omega=OMEGA in k)
    return LabeledTensor("delta", spaces, {k: 1})


def from_tiles(
    name: str, tiles: Iterable[Tile], spaces: Sequence[IndexSpace], weights: Mapping[str, Scalar] | None = None
) -> LabeledTensor:
    """Sum of the rank-one tensors of ``tiles`` (weight 1 unless given)."""
    entries: dict[tuple, Scalar] = {}
    names: dict[tuple, str] = {}
    for tile in tiles:
        d = delta4(tile.labels, spaces) if len(tile.labels) == 4 else delta3(tile.labels, spaces)
        (key,) = d.entries
        w = 1 if weights is None else weights.get(tile.name, 1)
        entries[key] = entries.get(key, 0) + w
        names[key] = tile.name
    return LabeledTensor(name, spaces, entries, names)


def make_B(level: int = 1) -> LabeledTensor:
    """Binary-addition square tensor, sum of tiles A1..A6."""
    return from_tiles("B", tile_family("B"), square_spaces(False, 2 ** (level - 1)))


def make_C(level: int = 1) -> LabeledTensor:
    """``B + A7 + A8``: the square tensor with ``ω`` on its vertical legs."""
    return from_tiles("C", tile_family("C"), square_spaces(True, 2 ** (level - 1)))


def make_B_s(t: Scalar, s: int, base: LabeledTensor | None = None) -> LabeledTensor:
    """Row-``s`` deformed square tensor.

    Each horizontal half-line in a tile costs ``t**(2**(s-1))``, so tiles with
    one horizontal leg set (A1, A2, A5, A6) carry ``t**(2**(s-1))``, the
    through-line A3 carries ``t**(2**s)`` and the blank A4 carries 1.
    ``base`` lets a modified ``B`` be deformed the same way.
    """
    if s < 1:
        raise ValueError("row index s must be >= 1")
    if base is None:
        base = make_B(s)
    ents = {}
    for key, val in base.entries.items():
        spin, west, east, north = key
        ents[key] = val * power(t, (2 ** (s - 1)) * (west + east))
    return LabeledTensor(f"B_{s}", base.indices, ents, base.tiles)


def make_T(level: int = 1) -> LabeledTensor:
    """Triangle ``t_ijk = δ(i + j, k)`` on ``{-1, 0, 1}``: tiles D1..D7."""
    return from_tiles("T", tile_family("T"), triangle_spaces(False, 2 ** (level - 1)))


def make_S(level: int = 1) -> LabeledTensor:
    """Open-chain triangle tensor, tiles E1..E12."""
    return from_tiles("S", tile_family("S"), triangle_spaces(True, 2 ** (level - 1)))


def make_P() -> LabeledTensor:
    """Spin-1 to spin-1/2 map ``|1/2><1| + |-1/2><-1|``; output charge is twice S_z."""
    spaces = (
        _space("in", SPIN, "in"),
        IndexSpace("out", HALF, "out", {HALF_DOWN: -1, HALF_UP: 1}),
    )
    return LabeledTensor("P", spaces, {(1, HALF_UP): 1, (-1, HALF_DOWN): 1})


def make_Pi() -> LabeledTensor:
    """``1 - |ω><ω|`` on the four-valued leg."""
    spaces = (_space("in", SPIN_W, "in"), _space("out", SPIN_W, "out"))
    return LabeledTensor("Pi", spaces, {(s, s): 1 for s in SPIN})


def make_G(level: int = 1) -> LabeledTensor:
    """δ-symmetric disentangler MPO tensor; charges double per level."""
    return from_tiles("G", tile_family("G"), g_spaces(2 ** (level - 1)))


def make_W(level: int = 1) -> LabeledTensor:
    """δ-symmetric blocking tensor ``[-1, 1] x [-1, 1] -> [-2, 0, 2]`` (labels halved)."""
    return from_tiles("W", tile_family("W"), w_spaces(2 ** (level - 1)))


# ---------------------------------------------------------------------------
# Charges and contraction


def charge_violations(t: LabeledTensor) -> list[tuple]:
    """Entries whose incoming and outgoing charges differ (``ω`` entries skipped)."""
    for sp in t.indices:
        if sp.orientation is None:
            raise ChargeError(f"{t.name}: index {sp.name!r} has no orientation")
    bad = []
    for key in t.entries:
        total = 0
        skip = False
        for lab, sp in zip(key, t.indices):
            q = sp.charge(lab)
            if q is None:
                if lab == OMEGA:
                    skip = True
                    break
                raise ChargeError(f"{t.name}: label {lab!r} on {sp.name!r} has no charge")
            total += q if sp.orientation == "in" else -q
        if not skip and total != 0:
            bad.append(key)
    return bad


def check_charge_conservation(t: LabeledTensor) -> bool:
    return not charge_violations(t)


def contract_pair(a: LabeledTensor, b: LabeledTensor, pairs: Sequence[tuple]) -> LabeledTensor:
    """Sum over shared labels of ``a`` and ``b``; free indices of ``a`` come first."""
    ia = [a.slot(x) for x, _ in pairs]
    ib = [b.slot(y) for _, y in pairs]
    for i, j in zip(ia, ib):
        if set(a.indices[i].labels) != set(b.indices[j].labels):
            raise ValueError(
                f"alphabet mismatch contracting {a.name}.{a.indices[i].name} with {b.name}.{b.indices[j].name}"
            )
    free_a = [i for i in range(a.rank) if i not in ia]
    free_b = [j for j in range(b.rank) if j not in ib]
    table: dict[tuple, list] = {}
    for kb, vb in b.entries.items():
        table.setdefault(tuple(kb[j] for j in ib), []).append((tuple(kb[j] for j in free_b), vb))
    out: dict[tuple, Scalar] = {}
    for ka, va in a.entries.items():
        for rest, vb in table.get(tuple(ka[i] for i in ia), ()):
            key = tuple(ka[i] for i in free_a) + rest
            out[key] = out.get(key, 0) + va * vb
    spaces = [a.indices[i] for i in free_a] + [b.indices[j] for j in free_b]
    return LabeledTensor(f"({a.name}*{b.name})", spaces, out)


# ---------------------------------------------------------------------------
# Tensor sets


_DEFAULT_FACTORIES = {"B": make_B, "C": make_C, "T": make_T, "S": make_S, "G": make_G, "W": make_W}


class TensorSet:
    """The six level-1 building blocks used by every network builder.

    Builders ask for ``tset.at_level(name, level)``; replacing an entry here
    (for example from a JSON file) changes every network built from the set.
    """

    NAMES = tuple(_DEFAULT_FACTORIES)

    def __init__(self, tensors: Mapping[str, LabeledTensor] | None = None):
        base = {k: f() for k, f in _DEFAULT_FACTORIES.items()}
        if tensors:
            unknown = set(tensors) - set(base)
            if unknown:
                raise ValueError(f"unknown tensor names {sorted(unknown)}")
            base.update(tensors)
        self._tensors = base

    def __getitem__(self, name: str) -> LabeledTensor:
        return self._tensors[name]

    def at_level(self, name: str, level: int = 1) -> LabeledTensor:
        return self._tensors[name].with_charge_scale(2 ** (level - 1))

    def replace(self, name: str, tensor: LabeledTensor) -> "TensorSet":
        d = dict(self._tensors)
        d[name] = tensor
        return TensorSet(d)

    def mutants(self, names: Iterable[str] | None = None):
        """Yield ``(name, deleted_key, TensorSet)`` for every single-entry deletion."""
        for name in names or self.NAMES:
            for key in self._tensors[name].entries:
                yield name, key, self.replace(name, self._tensors[name].without(key))

    def to_json(self) -> str:
        return json.dumps({k: v.to_dict() for k, v in self._tensors.items()}, ensure_ascii=False, indent=1)

    @classmethod
    def from_json(cls, text: str) -> "TensorSet":
        doc = json.loads(text)
        return cls({k: LabeledTensor.from_dict(v) for k, v in doc.items()})
