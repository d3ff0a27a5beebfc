from __future__ import annotations

import pytest

from conftest import brute_open_walks
from motzkin_tn.network import build_binary_height_pyramid
from motzkin_tn.tensors import TensorSet, check_charge_conservation
from motzkin_tn.tiles import (
    Tiling,
    TilingError,
    config_from_tiling,
    flow_balanced,
    is_valid_tiling,
    pyramid_heights,
    rectangle_heights,
    solve_grid_tilings,
    tile_family,
    tiling_from_config,
)
from motzkin_tn.equivalence import zipper_fragments
from motzkin_tn.tiles import enumerate_fragment_tilings


def test_family_sizes():
    assert [len(tile_family(f)) for f in "BCTSGW"] == [6, 8, 7, 12, 6, 4]
    with pytest.raises(ValueError):
        tile_family("Z")


def test_all_tiles_flow_balanced():
    for fam in "BCTSGW":
        for tile in tile_family(fam):
            assert flow_balanced(tile) in (True, None)


def test_flow_rule_matches_charge_checker():
    # a tensor is charge-balanced exactly when each of its tiles is flow-balanced
    ts = TensorSet()
    for fam in "BTGW":
        assert check_charge_conservation(ts[fam]) == all(flow_balanced(t) for t in tile_family(fam))


def test_pyramid_geometry():
    assert pyramid_heights(1) == [1, 1]
    assert pyramid_heights(4) == [1, 2, 2, 3, 3, 2, 2, 1]
    assert sum(pyramid_heights(3)) == 10
    assert sum(pyramid_heights(7)) == 34


def test_blank_rectangle_is_valid():
    blank = {t.name: t for t in tile_family("B")}["A4"]
    til = Tiling(rectangle_heights(2, 3), {(x, r): blank for x in range(4) for r in (1, 2, 3)})
    assert is_valid_tiling(til)
    assert config_from_tiling(til) == (0, 0, 0, 0)


def test_partial_tiling_rejected():
    with pytest.raises(TilingError):
        is_valid_tiling(Tiling([1, 1], {}))


def test_figure_style_walk_and_corruption():
    cfg = (1, 0, 1, -1, -1, 0, 1, -1)
    til = tiling_from_config(cfg)
    assert til is not None and is_valid_tiling(til)
    assert config_from_tiling(til) == cfg
    other = {t.name: t for t in tile_family("B")}
    key = (1, 1)
    til.cells[key] = other["A4"] if til.cells[key].name != "A4" else other["A3"]
    assert not is_valid_tiling(til)


def test_small_examples():
    til = tiling_from_config((1, -1))
    assert [til.cells[(0, 1)]["east"]] == [1]
    assert tiling_from_config((-1, 1)) is None
    flat = tiling_from_config((0,) * 6)
    assert {t.name for t in flat.cells.values()} == {"A4"}
    with pytest.raises(TilingError):
        tiling_from_config((0,) * 8, heights=[1] * 8)


@pytest.mark.parametrize("n2", [2, 4, 6, 8, 10])
def test_bijection_with_walks(n2):
    heights = pyramid_heights(n2 // 2)
    walks = set(brute_open_walks(n2))
    solved = {}
    for til in solve_grid_tilings(heights):
        cfg = config_from_tiling(til)
        assert cfg not in solved, "two tilings share a south boundary"
        solved[cfg] = til
    assert set(solved) == walks
    for cfg in walks:
        assert tiling_from_config(cfg).cells == solved[cfg].cells


@pytest.mark.parametrize("n2", [2, 4, 6])
def test_padding_adds_only_blank_rows(n2):
    m0 = n2.bit_length() - 1
    base = {config_from_tiling(t) for t in solve_grid_tilings(rectangle_heights(n2 // 2, m0))}
    for m in (m0 + 1, m0 + 2):
        tilings = list(solve_grid_tilings(rectangle_heights(n2 // 2, m)))
        assert {config_from_tiling(t) for t in tilings} == base
        for t in tilings:
            assert all(t.cells[(x, r)].name == "A4" for x in range(n2) for r in range(m0 + 1, m + 1))
    assert base == set(brute_open_walks(n2))


def test_fragment_tiling_counts():
    for sq, tri, expected in (("B", "T", 36), ("C", "S", 64)):
        lhs, rhs = zipper_fragments(sq, tri)
        for side in (lhs, rhs):
            table = enumerate_fragment_tilings(side)
            assert len(table) == expected
            assert all(len(v) == 1 for v in table.values())


def test_single_blank_cell_fragment():
    net = build_binary_height_pyramid(1)
    table = enumerate_fragment_tilings(net)
    assert table[(0, 0)] == [{"B[0,1]": "A4", "B[1,1]": "A4"}]
    with pytest.raises(ValueError):
        enumerate_fragment_tilings(build_binary_height_pyramid(4))
