from __future__ import annotations

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from motzkin_tn.equivalence import (
    run_suite,
    verify_appendix_column_arguments,
    verify_boundary_locked,
    verify_cap_removal,
    verify_GW_equals_BT,
    verify_zipper_BT,
    verify_zipper_CS,
    verify_zipper_rewriting,
    zipper_fragments,
)
from motzkin_tn.contraction import contract_open
from motzkin_tn.network import build_binary_height_pyramid, build_u1_mera
from motzkin_tn.tensors import TensorSet


def test_zipper_bt():
    rep = verify_zipper_BT()
    assert rep.passed and rep.matched == 36
    assert {r["value"] for r in rep.rows} == {"1"}
    zero = [r for r in rep.rows if all(r[c] == "0" for c in ("w1", "w2", "s1", "s2"))]
    assert len(zero) == 1 and zero[0]["k"] == "0"
    assert len(rep.table().splitlines()) == 36 + 2


def test_zipper_cs_and_d7_cases():
    rep = verify_zipper_CS()
    assert rep.passed and rep.matched == 64
    assert any("spin-valued outputs 0 on both sides" in n for n in rep.notes)


def test_zipper_fragments_are_functions_of_left_and_bottom():
    for sq, tri, n in (("B", "T", 36), ("C", "S", 64)):
        lhs, _ = zipper_fragments(sq, tri)
        table = contract_open(lhs)
        inputs = [k[:4] for k in table]
        assert len(set(inputs)) == len(inputs) == n


def test_corrupted_triangle_gives_counterexample():
    ts = TensorSet()
    bad = ts.replace("T", ts["T"].without((0, 0, 0)))
    rep = verify_zipper_BT(bad)
    assert not rep.passed
    assert rep.counterexamples


@pytest.mark.parametrize("kind", ["BT", "CS"])
def test_cap_removal(kind):
    rep = verify_cap_removal(kind)
    assert rep.passed
    if kind == "CS":
        assert {r["cap_tile"] for r in rep.rows if r["capped"] == "1"} == {"A4"}
    with pytest.raises(ValueError):
        verify_cap_removal("XY")


def test_gw_equals_bt():
    rep = verify_GW_equals_BT()
    assert rep.passed and rep.matched == 18
    assert "BT=18 GW=18" in rep.notes[0]
    zero = [r for r in rep.rows if (r["bL"], r["s1"], r["s2"], r["bR"], r["s3"]) == ("0", "0", "0", "0", "0")]
    assert zero and zero[0]["BT"] == zero[0]["GW"] == "1"


def test_boundary_locked_examples():
    rep = verify_boundary_locked(build_u1_mera(4))
    assert rep.passed and rep.matched == 19
    rep = verify_boundary_locked(build_binary_height_pyramid(2))
    assert rep.passed
    rep = verify_boundary_locked(build_binary_height_pyramid(3), sample=50, seed=1)
    assert rep.passed


def test_appendix_and_rewriting():
    rep = verify_appendix_column_arguments()
    assert rep.passed
    assert any("D5 only" in n for n in rep.notes)
    for n2 in (4, 8):
        rw = verify_zipper_rewriting(n2)
        assert rw.passed and all(r["isomorphic"] for r in rw.rows)


def test_report_json():
    doc = json.loads(verify_zipper_BT().to_json())
    assert doc["matched"] == 36 and doc["passed"]


def test_run_suite_all_passes():
    reports = run_suite("all")
    assert all(r.passed for r in reports)
    with pytest.raises(ValueError):
        run_suite("nope")


_MUTANTS = list(TensorSet().mutants())


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(range(len(_MUTANTS))))
def test_random_mutant_detected(i):
    name, key, ts = _MUTANTS[i]
    reports = [verify_zipper_BT(ts), verify_zipper_CS(ts), verify_GW_equals_BT(ts)]
    assert any(not r.passed and r.counterexamples for r in reports), (name, key)
