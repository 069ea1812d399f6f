"""Acceptance checks, one per numbered criterion.

Each test prints a single PASS line once its assertions hold, so the
verbose run doubles as the acceptance report.  Oracles here are built
independently of the library (raw numpy, scipy.linalg.expm).
"""

from __future__ import annotations

import math

import numpy as np
import pytest
from scipy.linalg import expm

from conftest import HAD, I2, random_circuit
import hamweave as hw
from hamweave.compiler import circuit_unitary, ideal_gate_unitary
from hamweave.qcore import phase_mod_2pi
from hamweave.report import build_report
from hamweave.search import CoincidenceProblem, scan_coincidence
from hamweave.simulator import Schedule, Segment, normalize, schedule_unitary

PI = math.pi
BASES = (16, 64, 256)


def strip_phase(u):
    k = np.unravel_index(np.argmax(np.abs(u)), u.shape)
    return u * (abs(u[k]) / u[k])


def test_criterion_1_cnot_identity():
    """(I (x) H) e^{i pi Z(x)Z/4} (T^2 (x) T^2) (I (x) H) is CNOT up to phase."""
    t = np.diag([1.0, np.exp(1j * PI / 4)])
    t2 = t @ t
    signs = np.array([1.0, -1.0, -1.0, 1.0])
    zz_quarter = np.diag(np.exp(1j * PI / 4 * signs))
    outer = np.kron(I2, HAD)
    u = outer @ zz_quarter @ np.kron(t2, t2) @ outer
    cnot = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)
    dev = np.max(np.abs(strip_phase(u) - cnot))
    assert dev < 1e-12
    print(f"ACCEPTANCE 1 (gate identity): PASS  entrywise dev {dev:.3e}")


def test_criterion_2_timing_fixtures():
    """Durations pi/2, 8 pi, 128 pi put a Hadamard on qubits 1, 2, 3 in turn."""
    cfg = hw.CompilerConfig(n=3, base=16)
    spec = hw.standard_coefficients(cfg)
    for m, t in ((1, PI / 2), (2, 8 * PI), (3, 128 * PI)):
        evo = hw.evolve_h1(spec, t)
        for j, factor in enumerate(evo.singles, start=1):
            if j < m:
                assert np.max(np.abs(factor - I2)) < 1e-12
            elif j == m:
                fid = abs(np.trace(HAD.conj().T @ factor)) / 2
                assert fid == pytest.approx(1.0, abs=1e-12)
            else:
                # the weak-qubit residual is an exact dyadic product
                assert phase_mod_2pi(spec.a[j - 1], t) == spec.a[j - 1] * t
    print("ACCEPTANCE 2 (timing fixtures): PASS  residual angles exact")


def test_criterion_3_closed_form_fidelities():
    cfg = hw.CompilerConfig(n=3, base=16)
    spec = hw.standard_coefficients(cfg)
    b = 16.0

    u = schedule_unitary(spec, normalize(hw.schedule_hadamard(2, cfg)))
    fid_h = hw.fidelity_phase_invariant(u, ideal_gate_unitary("H", 2, 3))
    expect_h = math.cos(PI / 32)
    assert fid_h == pytest.approx(expect_h, abs=1e-9)

    u = schedule_unitary(spec, normalize(hw.schedule_t_gate(1, cfg)))
    fid_t = hw.fidelity_phase_invariant(u, ideal_gate_unitary("T", 1, 3))
    expect_t = math.prod(math.cos(b**-k * PI / 8) for k in (1, 2, 3, 4))
    assert fid_t == pytest.approx(expect_t, abs=1e-9)

    u = schedule_unitary(spec, normalize(hw.schedule_zz(1, cfg)))
    fid_zz = hw.fidelity_phase_invariant(u, ideal_gate_unitary("ZZ", 1, 3))
    expect_zz = math.prod(math.cos(b**-k * 3 * PI / 4) for k in (1, 2, 3))
    assert fid_zz == pytest.approx(expect_zz, abs=1e-9)

    print(
        "ACCEPTANCE 3 (closed-form fidelities): PASS  "
        f"H {fid_h:.6f}, T {fid_t:.6f}, ZZ {fid_zz:.6f}"
    )


def test_criterion_4_base_monotonicity():
    worst_ratio = math.inf
    for n in (2, 3, 4):
        rows = build_report(n, BASES)
        grouped = {}
        for row in rows:
            grouped.setdefault((row.gate, row.qubits), {})[row.base] = row
        for (gate, qubits), by_base in grouped.items():
            for lo, hi in ((16, 64), (64, 256)):
                assert by_base[hi].fidelity >= by_base[lo].fidelity - 1e-12, (
                    f"{gate} {qubits} n={n}: fidelity fell from base {lo} to {hi}"
                )
                infid_lo = 1.0 - by_base[lo].fidelity
                infid_hi = 1.0 - by_base[hi].fidelity
                if infid_hi < 1e-13:
                    continue  # exact gate, both sides at float noise
                ratio = infid_lo / infid_hi
                worst_ratio = min(worst_ratio, ratio)
                assert ratio >= 4.0, f"{gate} {qubits} n={n}: shrink only {ratio:.2f}x"
    assert worst_ratio > 4.0
    print(f"ACCEPTANCE 4 (base monotonicity): PASS  worst shrink {worst_ratio:.2f}x")


def test_criterion_5_bound_soundness():
    worst_margin = math.inf
    for n in (2, 3, 4):
        for row in build_report(n, BASES):
            assert row.distance <= row.bound + 1e-12, (
                f"{row.gate} {row.qubits} n={n} base={row.base}: "
                f"distance {row.distance:.3e} above bound {row.bound:.3e}"
            )
            worst_margin = min(worst_margin, row.bound + 1e-12 - row.distance)
    print(f"ACCEPTANCE 5 (bound soundness): PASS  min slack {worst_margin:.3e}")


def test_criterion_6_factorized_matches_dense_expm():
    rng = np.random.default_rng(2026)
    worst = 0.0
    for _ in range(50):
        spec = hw.HamiltonianSpec(
            3,
            a=tuple(rng.uniform(0.1, 2.0, 3)),
            b=tuple(rng.uniform(0.1, 2.0, 3)),
            c=tuple(rng.uniform(0.1, 2.0, 2)),
        )
        segs = tuple(
            Segment(int(rng.integers(1, 3)), float(rng.uniform(0.0, 3.0)))
            for _ in range(int(rng.integers(4, 12)))
        )
        u = schedule_unitary(spec, Schedule(segs)).entries
        h1 = hw.dense_h1(spec)
        h2 = hw.dense_h2(spec)
        v = np.eye(8, dtype=complex)
        for seg in segs:
            v = expm(-1j * (h1 if seg.h == 1 else h2) * seg.t) @ v
        worst = max(worst, float(np.max(np.abs(u - v))))
    assert worst < 1e-8
    print(f"ACCEPTANCE 6 (dense expm oracle): PASS  max dev {worst:.3e} over 50 schedules")


def test_criterion_7_random_circuits():
    cfg = hw.CompilerConfig(n=3, base=256)
    spec = hw.standard_coefficients(cfg)
    rng = np.random.default_rng(1)
    fids = []
    for _ in range(20):
        circ = random_circuit(rng, 3, 5)
        sched = hw.compile_circuit(circ, cfg)
        fid = hw.fidelity_phase_invariant(
            schedule_unitary(spec, sched), circuit_unitary(circ)
        )
        assert fid >= 0.999, f"{[g.describe() for g in circ.gates]}: fidelity {fid:.6f}"
        fids.append(fid)
    print(f"ACCEPTANCE 7 (random circuits): PASS  min fidelity {min(fids):.6f}")


def test_criterion_8_coincidence_scan():
    base = dict(
        coefficients=(1.0, math.sqrt(5), math.e),
        targets=(PI / 2, 0.0, 0.0),
        tolerance=0.02,
        resolution=1e-3,
    )
    result = scan_coincidence(CoincidenceProblem(t_max=5000.0, **base))
    assert result.met_tolerance
    assert result.error <= 0.02
    assert 0.0 <= result.time <= 5000.0
    doubled = scan_coincidence(CoincidenceProblem(t_max=10000.0, **base))
    assert doubled.error <= result.error + 1e-15
    print(
        "ACCEPTANCE 8 (coincidence scan): PASS  "
        f"t {result.time:.6f}, error {result.error:.6f}, doubled {doubled.error:.6f}"
    )


def test_criterion_9_routing():
    circ = hw.Circuit(3, (hw.Gate("CNOT", 1, q2=3),))
    routed = hw.route_circuit(circ)
    ideal_dev = hw.spectral_distance_up_to_phase(circuit_unitary(routed), circuit_unitary(circ))
    assert ideal_dev < 1e-9

    cfg = hw.CompilerConfig(n=3, base=256)
    spec = hw.standard_coefficients(cfg)
    sched = hw.compile_circuit(circ, cfg)
    fid = hw.fidelity_phase_invariant(schedule_unitary(spec, sched), circuit_unitary(circ))
    assert fid >= 0.99
    print(f"ACCEPTANCE 9 (routing): PASS  ideal dev {ideal_dev:.3e}, compiled fidelity {fid:.6f}")
