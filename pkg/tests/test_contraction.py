from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from motzkin_tn.contraction import (
    ContractionCapError,
    amplitude,
    contract_full,
    contract_open,
    contraction_plan,
    count_tensors,
    iter_labelings,
    locked_propagate,
)
from motzkin_tn.network import (
    build_binary_height_pyramid,
    build_hrn_open,
    build_hrn_periodic,
    build_rectangle,
    build_u1_mera,
    periodic_boundary,
    wrap_fredkin,
)
from motzkin_tn.semiring import Poly
from motzkin_tn.walks import StateVector, enumerate_walks, ground_state_vector

T = Poly.var()


def test_amplitude_examples():
    assert amplitude(build_binary_height_pyramid(2), (0, 0, 0, 0)) == 1
    assert amplitude(build_binary_height_pyramid(2, "t"), (1, 1, -1, -1)) == T**4
    assert amplitude(build_binary_height_pyramid(2), (-1, 1, 0, 0)) == 0
    assert amplitude(build_hrn_open(2), (-1, 1)) == 0
    with pytest.raises(ValueError):
        amplitude(build_binary_height_pyramid(2), (0, 0))
    with pytest.raises(ValueError):
        amplitude(build_binary_height_pyramid(1), (0, 5))


def test_contract_full_examples():
    assert contract_full(build_binary_height_pyramid(1)).amplitudes == {(0, 0): 1, (1, -1): 1}
    assert contract_full(build_binary_height_pyramid(2)).nnz == 9
    assert contract_full(build_hrn_periodic(2, 2, 2)).nnz == 3
    with pytest.raises(ContractionCapError):
        contract_full(build_binary_height_pyramid(7))


def test_full_equals_amplitudes():
    net = build_binary_height_pyramid(3, "t")
    state = contract_full(net)
    for cfg in itertools.product((-1, 0, 1), repeat=6):
        assert amplitude(net, cfg) == state[cfg]


def test_plan_properties():
    plan = contraction_plan(build_binary_height_pyramid(2))
    assert len(plan.order) == 6
    assert plan == contraction_plan(build_binary_height_pyramid(2))
    hrn = build_hrn_periodic(4, 4, 4)
    order = contraction_plan(hrn).order
    layer = {nid: hrn.nodes[nid].level for nid in order}
    first_level2 = min(i for i, n in enumerate(order) if layer[n] == 2)
    assert all(layer[n] == 1 for n in order[:first_level2] if hrn.nodes[n].kind == "B")
    last_level1_square = max(i for i, n in enumerate(order) if layer[n] == 1 and hrn.nodes[n].kind == "B")
    assert last_level1_square < first_level2


@settings(max_examples=25, deadline=None)
@given(st.randoms(use_true_random=False), st.sampled_from(["pyramid", "u1", "hrn", "open"]))
def test_plan_independence(rng, which):
    net = {
        "pyramid": lambda: build_binary_height_pyramid(2, "t"),
        "u1": lambda: build_u1_mera(4),
        "hrn": lambda: build_hrn_periodic(4, 3, 4),
        "open": lambda: build_hrn_open(4),
    }[which]()
    order = list(net.nodes)
    rng.shuffle(order)
    assert contract_open(net, order=order) == contract_open(net)


@pytest.mark.parametrize("n2", [2, 4, 6, 8, 10])
def test_locked_propagation_on_every_walk(n2):
    net = build_binary_height_pyramid(n2 // 2, "t")
    violations = []
    for w in enumerate_walks(n2):
        assert locked_propagate(net, w.steps, violations) == amplitude(net, w.steps)
    assert violations == []


def test_locked_propagation_examples():
    net = build_u1_mera(4)
    assert locked_propagate(net, (1, 0, -1, 0)) == 1
    assert locked_propagate(net, (1, 1, 0, 0)) == 0
    rng = random.Random(3)
    for net in (build_hrn_open(8), build_hrn_periodic(8, 8, 6), build_u1_mera(8), wrap_fredkin(build_binary_height_pyramid(4))):
        labels = [[x for x in net.space(s).labels if x != "ω"] for s in net.physical]
        violations = []
        for _ in range(200):
            cfg = tuple(rng.choice(a) for a in labels)
            assert locked_propagate(net, cfg, violations) == amplitude(net, cfg)
        assert violations == []


def test_lock_violation_is_recorded():
    # a ring of two squares: with spins (0, 0) the circulating bit may be 0 or 1
    from motzkin_tn.network import Network
    from motzkin_tn.tensors import make_B

    ring = Network()
    a = ring.add("a", make_B(), "B", (0, 1))
    b = ring.add("b", make_B(), "B", (1, 1))
    ring.connect((a, "east"), (b, "west"))
    ring.connect((b, "east"), (a, "west"))
    ring.pin((a, "north"), 0)
    ring.pin((b, "north"), 0)
    ring.physical = [(a, "south"), (b, "south")]
    ring.validate()
    violations = []
    assert locked_propagate(ring, (0, 0), violations) == 2
    assert len(violations) == 1 and violations[0].candidates == 2
    assert len(list(iter_labelings(ring, (0, 0)))) == 2


def test_iter_labelings_unique_tiles():
    net = build_binary_height_pyramid(2)
    labs = list(iter_labelings(net, (1, 1, -1, -1)))
    assert len(labs) == 1
    assert labs[0].tiles()["B[0,1]"] == "A1"
    assert list(iter_labelings(net, (-1, 1, 0, 0))) == []


def test_count_tensors_golden():
    assert count_tensors(build_binary_height_pyramid(3)) == {"B": 10}
    assert count_tensors(build_binary_height_pyramid(7)) == {"B": 34}
    assert count_tensors(build_hrn_open(4)) == {"C": 6, "Pi": 4, "S": 3}


def test_deformed_numeric_t():
    from fractions import Fraction

    for t in (Fraction(1, 2), 2):
        assert contract_full(build_binary_height_pyramid(3, t)) == ground_state_vector(6, t)
    assert isinstance(contract_full(build_binary_height_pyramid(2, "t")), StateVector)
