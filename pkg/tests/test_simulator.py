"""Schedules, normalization, and exact schedule execution."""

from __future__ import annotations

import math

import numpy as np
import pytest

from conftest import dense_h1_oracle, dense_h2_oracle, expm_hermitian
from hamweave.hamiltonians import HamiltonianSpec
from hamweave.qcore import DimensionError, StateVector, fidelity_phase_invariant
from hamweave.simulator import Schedule, Segment, normalize, run_schedule, schedule_unitary

PI = math.pi


def random_schedule(rng, k):
    return Schedule(
        tuple(Segment(int(rng.integers(1, 3)), float(rng.uniform(0.0, 3.0))) for _ in range(k))
    )


class TestSegment:
    def test_valid(self):
        seg = Segment(1, 2.5, label="H q1")
        assert seg.h == 1 and seg.t == 2.5

    def test_bad_hamiltonian_tag(self):
        with pytest.raises(ValueError):
            Segment(3, 1.0)

    def test_non_finite_duration(self):
        with pytest.raises(ValueError):
            Segment(1, float("inf"))

    def test_negative_allowed_until_normalize(self):
        # construction passes; normalize is the gate that rejects it
        seg = Segment(2, -1.0)
        with pytest.raises(ValueError):
            normalize(Schedule((seg,)))


class TestSchedule:
    def test_len_and_total(self):
        sched = Schedule((Segment(1, 1.0), Segment(2, 0.5)))
        assert len(sched) == 2
        assert sched.total_duration() == 1.5

    def test_dict_roundtrip(self):
        sched = Schedule((Segment(1, 1.0, label="A"), Segment(2, 0.5)))
        data = sched.to_dict()
        assert "label" not in data["segments"][1]
        again = Schedule.from_dict(data)
        assert again == sched

    def test_from_dict_missing_segments(self):
        with pytest.raises(ValueError):
            Schedule.from_dict({})

    def test_from_dict_missing_segment_field(self):
        with pytest.raises(ValueError, match="missing field"):
            Schedule.from_dict({"segments": [{"h": 1}]})


class TestNormalize:
    def test_drops_zero_duration(self):
        sched = Schedule((Segment(1, 0.0), Segment(2, 1.0)))
        assert normalize(sched) == Schedule((Segment(2, 1.0),))

    def test_merges_equal_durations(self):
        sched = Schedule((Segment(2, 0.25), Segment(2, 0.25)))
        assert normalize(sched) == Schedule((Segment(2, 0.5),))

    def test_keeps_inexact_sums_apart(self):
        # 64 pi + 12 pi = 76 pi needs 54 mantissa bits, so the sum would
        # round; the pair must survive normalization unmerged
        a, b = 64 * PI, 12 * PI
        sched = normalize(Schedule((Segment(2, a), Segment(2, b))))
        assert [seg.t for seg in sched.segments] == [a, b]

    def test_merges_across_dropped_zeros(self):
        sched = Schedule((Segment(1, 1.0), Segment(1, 0.0), Segment(1, 1.0)))
        assert normalize(sched) == Schedule((Segment(1, 2.0),))

    def test_label_joining(self):
        sched = Schedule((Segment(1, 1.0, label="A"), Segment(1, 1.0, label="B")))
        assert normalize(sched).segments[0].label == "A+B"
        same = Schedule((Segment(1, 1.0, label="A"), Segment(1, 1.0, label="A")))
        assert normalize(same).segments[0].label == "A"

    def test_idempotent(self):
        rng = np.random.default_rng(60)
        sched = random_schedule(rng, 30)
        once = normalize(sched)
        assert normalize(once) == once

    def test_preserves_unitary_on_random_schedule(self):
        rng = np.random.default_rng(61)
        spec = HamiltonianSpec(
            2,
            a=tuple(rng.uniform(0.1, 2.0, 2)),
            b=tuple(rng.uniform(0.1, 2.0, 2)),
            c=tuple(rng.uniform(0.1, 2.0, 1)),
        )
        sched = random_schedule(rng, 50)
        u = schedule_unitary(spec, sched)
        v = schedule_unitary(spec, normalize(sched))
        assert np.max(np.abs(u.entries - v.entries)) < 1e-9
        assert fidelity_phase_invariant(u, v) == pytest.approx(1.0, abs=1e-12)

    def test_empty_schedule(self):
        assert normalize(Schedule(())) == Schedule(())


def test_run_schedule_matches_expm_oracle():
    rng = np.random.default_rng(62)
    spec = HamiltonianSpec(
        3,
        a=tuple(rng.uniform(0.1, 1.5, 3)),
        b=tuple(rng.uniform(0.1, 1.5, 3)),
        c=tuple(rng.uniform(0.1, 1.5, 2)),
    )
    h1 = dense_h1_oracle(spec.a)
    h2 = dense_h2_oracle(spec.b, spec.c)
    sched = random_schedule(rng, 8)
    psi = StateVector.random(3, rng)
    expected = psi.amplitudes
    for seg in sched.segments:
        expected = expm_hermitian(h1 if seg.h == 1 else h2, seg.t) @ expected
    out = run_schedule(spec, sched, psi)
    np.testing.assert_allclose(out.amplitudes, expected, atol=1e-11)


def test_schedule_unitary_consistent_with_run_schedule():
    rng = np.random.default_rng(63)
    spec = HamiltonianSpec(
        2,
        a=(1.0, 0.0625),
        b=(1.0, 0.00390625),
        c=(0.0625,),
    )
    sched = random_schedule(rng, 6)
    psi = StateVector.random(2, rng)
    via_matrix = schedule_unitary(spec, sched).entries @ psi.amplitudes
    via_state = run_schedule(spec, sched, psi).amplitudes
    np.testing.assert_allclose(via_matrix, via_state, atol=1e-12)


def test_run_schedule_dimension_mismatch():
    spec = HamiltonianSpec(2, a=(1.0, 1.0), b=(1.0, 1.0), c=(1.0,))
    with pytest.raises(DimensionError):
        run_schedule(spec, Schedule((Segment(1, 1.0),)), StateVector.zero(3))


def test_schedule_unitary_identity_for_empty():
    spec = HamiltonianSpec(2, a=(1.0, 1.0), b=(1.0, 1.0), c=(1.0,))
    u = schedule_unitary(spec, Schedule(()))
    np.testing.assert_allclose(u.entries, np.eye(4), atol=0)
