from __future__ import annotations

import itertools

import pytest

from motzkin_tn.tensors import TensorSet


@pytest.fixture(scope="session")
def tset() -> TensorSet:
    return TensorSet()


def brute_open_walks(n_sites: int, alphabet=(-1, 0, 1)):
    """Every configuration whose prefix sums stay nonnegative and end at 0."""
    out = []
    for cfg in itertools.product(alphabet, repeat=n_sites):
        h, ok = 0, True
        for s in cfg:
            h += s
            if h < 0:
                ok = False
                break
        if ok and h == 0:
            out.append(cfg)
    return out


def brute_area(cfg) -> float:
    h, total = 0, 0
    for s in cfg:
        total += h + (h + s)
        h += s
    return total / 2
