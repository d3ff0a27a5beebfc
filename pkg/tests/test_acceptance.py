"""Acceptance criteria, one test per criterion.

Each test prints a single ``[ACCEPTANCE k] PASS|FAIL ...`` line that stays
visible even under pytest output capture.
"""

from __future__ import annotations

import math
from fractions import Fraction

import pytest

from motzkin_tn.contraction import contract_full, count_tensors
from motzkin_tn.equivalence import (
    verify_cap_removal,
    verify_GW_equals_BT,
    verify_locked_suite,
    verify_zipper_BT,
    verify_zipper_CS,
)
from motzkin_tn.hamiltonian import annihilation_residual, build_hamiltonian, kernel_dimension
from motzkin_tn.network import (
    build_binary_height_pyramid,
    build_hrn_open,
    build_hrn_periodic,
    build_u1_mera,
    periodic_boundary,
    wrap_fredkin,
)
from motzkin_tn.semiring import Poly
from motzkin_tn.tensors import TensorSet, check_charge_conservation
from motzkin_tn.walks import (
    catalan_number,
    entanglement_entropy,
    enumerate_walks,
    ground_state_vector,
    periodic_sector_state,
    schmidt_spectrum,
)

T_VALUES = (Fraction(1, 2), 1, 2, Poly.var())


@pytest.fixture
def report(capsys):
    def emit(k: int, fn, detail: str = "") -> None:
        try:
            fn()
        except Exception as exc:
            with capsys.disabled():
                print(f"\n[ACCEPTANCE {k}] FAIL {type(exc).__name__}: {exc}")
            raise
        with capsys.disabled():
            print(f"\n[ACCEPTANCE {k}] PASS {detail}")

    return emit


def test_criterion_01_oracle_state_equality(report):
    def body():
        for n in range(1, 6):
            for t in T_VALUES:
                got = contract_full(build_binary_height_pyramid(n, t))
                assert got == ground_state_vector(2 * n, t), (2 * n, t)

    report(1, body, "pyramid == oracle, 2n in 2..10, t in {1/2, 1, 2, t}")


def test_criterion_02_walk_counts(report):
    frozen = {2: 2, 4: 9, 6: 51, 8: 323}

    def body():
        for n2, expected in frozen.items():
            assert len(enumerate_walks(n2)) == expected
            assert contract_full(build_binary_height_pyramid(n2 // 2)).nnz == expected

    report(2, body, "nnz 2, 9, 51, 323 from enumeration and contraction")


def test_criterion_03_hrn_and_u1(report):
    def body():
        for n2 in (2, 4, 8):
            assert contract_full(build_hrn_open(n2)) == ground_state_vector(n2)
            assert contract_full(build_u1_mera(n2)) == periodic_sector_state(n2, 0)
        for n2 in (2, 4):
            for k in range(-n2, n2 + 1):
                p, q = periodic_boundary(n2, k)
                assert q - p == k
                assert contract_full(build_hrn_periodic(n2, p, q)) == periodic_sector_state(n2, k), (n2, k)

    report(3, body, "hrn-open, hrn-periodic (all k), u1 equal their sector states")


def test_criterion_04_zipper_proofs(report):
    def body():
        bt, cs = verify_zipper_BT(), verify_zipper_CS()
        assert bt.passed and bt.matched == bt.expected == 36
        assert cs.passed and cs.matched == cs.expected == 64
        for kind in ("BT", "CS"):
            assert verify_cap_removal(kind).passed

    report(4, body, "BT 36/36, CS 64/64, cap removal BT and CS")


def test_criterion_05_gw_charge_locking(report):
    def body():
        gw = verify_GW_equals_BT()
        assert gw.passed and gw.matched == 18
        ts = TensorSet()
        for name in ts.NAMES:
            assert check_charge_conservation(ts[name]), name
        nets = [build_binary_height_pyramid(3, 2), build_hrn_open(4), build_u1_mera(8)]
        nets += [build_hrn_periodic(4, *periodic_boundary(4, k)) for k in (-4, 1, 4)]
        for net in nets:
            for node in net.nodes.values():
                assert check_charge_conservation(node.tensor), node.id
        for rep in verify_locked_suite(sample="all"):
            assert rep.passed, rep.name

    report(5, body, "GW == BT, charge conservation, boundary locking exhaustive at 2n <= 6")


def test_criterion_06_hamiltonian(report):
    def body():
        for n2 in (2, 4, 6):
            for t in T_VALUES[:3]:
                H = build_hamiltonian(n2, t)
                assert annihilation_residual(H, contract_full(build_binary_height_pyramid(n2 // 2, t))) <= 1e-12
                assert kernel_dimension(H) == 1, (n2, t)
        for n2 in (2, 4):
            assert annihilation_residual(build_hamiltonian(n2, 1), contract_full(build_hrn_open(n2))) <= 1e-12
            assert annihilation_residual(build_hamiltonian(n2, 1), contract_full(build_u1_mera(n2))) > 1e-3
            H = build_hamiltonian(n2, 1, "periodic")
            for k in range(-n2, n2 + 1):
                assert annihilation_residual(H, contract_full(build_hrn_periodic(n2, *periodic_boundary(n2, k)))) <= 1e-12
            assert kernel_dimension(H) == 2 * n2 + 1

    report(6, body, "residuals <= 1e-12, open kernel 1, periodic kernel 5 and 9")


def test_criterion_07_tensor_count(report):
    def body():
        for n, expected in {1: 2, 3: 10, 7: 34, 15: 98}.items():
            formula = 2 * (n + 1) * int(math.log2(n + 1)) - 2 * n
            assert formula == expected
            assert count_tensors(build_binary_height_pyramid(n)) == {"B": expected}

    report(7, body, "B-count 2, 10, 34, 98 at n = 1, 3, 7, 15")


def test_criterion_08_fredkin(report):
    def body():
        for n in range(1, 5):
            for t in T_VALUES:
                got = contract_full(wrap_fredkin(build_binary_height_pyramid(n, t)))
                assert got == ground_state_vector(2 * n, t, kind="dyck"), (2 * n, t)
            assert contract_full(wrap_fredkin(build_binary_height_pyramid(n))).nnz == catalan_number(n)
            assert catalan_number(n) == (1, 2, 5, 14)[n - 1]

    report(8, body, "wrapped pyramid == Dyck oracle, nnz 1, 2, 5, 14")


def test_criterion_09_entropy(report):
    def body():
        entropies = []
        for n in range(1, 7):
            net_spec = schmidt_spectrum(contract_full(build_binary_height_pyramid(n)), n)
            ref_spec = schmidt_spectrum(ground_state_vector(2 * n), n)
            assert net_spec.exact and net_spec.weights == ref_spec.weights
            entropies.append(entanglement_entropy(net_spec))
        assert schmidt_spectrum(ground_state_vector(4), 2).weights == [Fraction(4, 9), Fraction(4, 9), Fraction(1, 9)]
        assert entropies[0] == pytest.approx(math.log(2), abs=1e-15)
        assert all(a < b for a, b in zip(entropies, entropies[1:]))

    report(9, body, "exact Schmidt weights match, entropy strictly increasing over 2n = 2..12")


def test_criterion_10_mutation_robustness(report):
    suites = (verify_zipper_BT, verify_zipper_CS, verify_GW_equals_BT)

    def body():
        count = 0
        for name, key, ts in TensorSet().mutants(("B", "T", "C", "S", "G", "W")):
            caught = [r for r in (s(ts) for s in suites) if not r.passed and r.counterexamples]
            assert caught, f"mutant {name} without {key} was not detected"
            count += 1
        assert count == sum(TensorSet()[n].nnz for n in ("B", "T", "C", "S", "G", "W"))

    report(10, body, "every single-entry deletion from B, T, C, S, G, W is caught with a counterexample")
