"""Exact scalar arithmetic for amplitudes.

Amplitudes live in one of four domains: Python ``int`` (counting at t=1),
``Fraction`` (numeric rational t), :class:`Poly` (formal t with big-integer
coefficients) or ``float`` (entropy work only).  All four support ``+``/``*``
so the contraction engine never needs to know which one it is handling.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

__all__ = ["Poly", "Scalar", "scalar_kind", "format_scalar", "parse_scalar", "power", "is_zero"]


class Poly:
    """Univariate polynomial with integer coefficients and nonnegative exponents.

    Stored as a sparse ``{exponent: coefficient}`` map with no zero
    coefficients.  Instances are treated as immutable.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | None = None):
        clean = {}
        for e, c in (terms or {}).items():
            if e < 0:
                raise ValueError(f"negative exponent {e}")
            if not isinstance(c, int):
                raise TypeError(f"coefficient {c!r} is not an integer")
            if c:
                clean[int(e)] = c
        self._terms = dict(sorted(clean.items()))
        self._hash = None

    @classmethod
    def var(cls, power: int = 1) -> "Poly":
        return cls({power: 1})

    @classmethod
    def const(cls, c: int) -> "Poly":
        return cls({0: c})

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def degree(self) -> int:
        return max(self._terms, default=-1)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def _coerce(self, other) -> "Poly | None":
        if isinstance(other, Poly):
            return other
        if isinstance(other, int):
            return Poly.const(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self._terms)
        for e, c in o._terms.items():
            out[e] = out.get(e, 0) + c
        return Poly(out)

    __radd__ = __add__

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in o._terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return Poly(out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __pow__(self, e: int) -> "Poly":
        if not isinstance(e, int) or e < 0:
            raise ValueError("Poly powers must be nonnegative integers")
        out = Poly.const(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __call__(self, t):
        return self.evaluate(t)

    def evaluate(self, t):
        """Evaluate at ``t`` (int, Fraction or float) without leaving exact arithmetic."""
        total = 0
        for e, c in self._terms.items():
            total += c * t**e
        return total

    def halve_exponents(self) -> "Poly":
        """Substitute ``u**2 -> t``; every exponent must be even."""
        odd = [e for e in self._terms if e % 2]
        if odd:
            raise ValueError(f"odd exponents {odd} cannot be halved")
        return Poly({e // 2: c for e, c in self._terms.items()})

    def __repr__(self) -> str:
        return f"Poly({self._terms})"

    def __str__(self) -> str:
        return format_poly(self)


Scalar = Union[int, Fraction, Poly, float]


def is_zero(x: Scalar) -> bool:
    return not x


def power(t: Scalar, e: int) -> Scalar:
    if e == 0:
        return 1
    return t**e


def scalar_kind(values: Iterable[Scalar]) -> str:
    """Name of the narrowest domain holding every value: integer, rational, poly_t or float."""
    kind = "integer"
    rank = {"integer": 0, "rational": 1, "poly_t": 2, "float": 3}
    for v in values:
        if isinstance(v, bool):
            raise TypeError("booleans are not scalars")
        if isinstance(v, int):
            k = "integer"
        elif isinstance(v, Fraction):
            k = "integer" if v.denominator == 1 else "rational"
        elif isinstance(v, Poly):
            k = "poly_t"
        elif isinstance(v, float):
            k = "float"
        else:
            raise TypeError(f"unsupported scalar {v!r}")
        if rank[k] > rank[kind]:
            kind = k
    return kind


def format_poly(p: Poly, var: str = "t") -> str:
    if not p:
        return "0"
    parts = []
    for e, c in p.terms.items():
        if e == 0:
            body = str(c)
        else:
            mono = var if e == 1 else f"{var}^{e}"
            body = mono if c == 1 else (f"-{mono}" if c == -1 else f"{c}*{mono}")
        parts.append(body)
    s = " + ".join(parts)
    return s.replace("+ -", "- ")


def format_scalar(x: Scalar) -> str:
    if isinstance(x, Poly):
        return format_poly(x)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, float):
        return repr(x)
    return str(int(x))


_TERM = re.compile(r"^(?:(\d+)\*?)?(t)(?:\^(\d+))?$|^(\d+)$")


def parse_scalar(s: str) -> Scalar:
    """Inverse of :func:`format_scalar` for integer, rational and polynomial strings."""
    s = s.strip()
    if "t" not in s:
        if any(ch in s for ch in ".eE") or s in ("inf", "nan"):
            return float(s)
        v = Fraction(s)
        return int(v) if v.denominator == 1 else v
    terms: dict[int, int] = {}
    normalized = s.replace(" ", "").replace("-", "+-")
    for chunk in filter(None, normalized.split("+")):
        sign = 1
        if chunk.startswith("-"):
            sign, chunk = -1, chunk[1:]
        m = _TERM.match(chunk)
        if not m:
            raise ValueError(f"cannot parse polynomial term {chunk!r}")
        if m.group(4) is not None:
            e, c = 0, int(m.group(4))
        else:
            c = int(m.group(1)) if m.group(1) else 1
            e = int(m.group(3)) if m.group(3) else 1
        terms[e] = terms.get(e, 0) + sign * c
    return Poly(terms)
