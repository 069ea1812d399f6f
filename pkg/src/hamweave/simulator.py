"""Switching schedules and their exact execution.

A schedule is an ordered list of segments; segment k says "evolve under
Hamiltonian h (1 or 2) for duration t".  Index 0 is earliest in physical
time, so the overall unitary is U = U_K ... U_2 U_1 and states are updated
in list order.  Durations are dimensionless.

Execution never builds exp(-i H t) densely: each segment is expanded into
its commuting local factors (see hamiltonians) and those are applied one by
one, so cost per segment is O(n 2^n) on a state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .hamiltonians import FactorizedEvolution, HamiltonianSpec, evolve_h1, evolve_h2
from .qcore import (
    DenseUnitary,
    DimensionError,
    StateVector,
    _apply_pair_diagonal,
    _apply_single,
    check_dense_size,
)


@dataclass(frozen=True)
class Segment:
    """One constant-Hamiltonian stretch: which Hamiltonian, and for how long."""

    h: int
    t: float
    label: str | None = None

    def __post_init__(self):
        if self.h not in (1, 2):
            raise ValueError(f"segment Hamiltonian must be 1 or 2, got {self.h!r}")
        object.__setattr__(self, "t", float(self.t))
        if not math.isfinite(self.t):
            raise ValueError(f"segment duration must be finite, got {self.t!r}")


@dataclass(frozen=True)
class Schedule:
    """An ordered tuple of segments, earliest first."""

    segments: tuple[Segment, ...]

    def __post_init__(self):
        object.__setattr__(self, "segments", tuple(self.segments))
        for seg in self.segments:
            if not isinstance(seg, Segment):
                raise TypeError(f"expected Segment, got {type(seg).__name__}")

    def __len__(self) -> int:
        return len(self.segments)

    def total_duration(self) -> float:
        return math.fsum(seg.t for seg in self.segments)

    def to_dict(self) -> dict:
        out = []
        for seg in self.segments:
            entry: dict = {"h": seg.h, "t": seg.t}
            if seg.label is not None:
                entry["label"] = seg.label
            out.append(entry)
        return {"segments": out}

    @classmethod
    def from_dict(cls, data: dict) -> "Schedule":
        try:
            raw = data["segments"]
        except KeyError as exc:
            raise ValueError("schedule is missing field 'segments'") from exc
        segs = []
        for entry in raw:
            try:
                segs.append(Segment(h=int(entry["h"]), t=entry["t"], label=entry.get("label")))
            except KeyError as exc:
                raise ValueError(f"segment is missing field {exc.args[0]!r}") from exc
        return cls(tuple(segs))


def _exact_sum(a: float, b: float) -> float | None:
    """a + b when double addition is error-free, else None (Knuth TwoSum)."""
    s = a + b
    if math.isinf(s):
        return None
    bb = s - a
    err = (a - (s - bb)) + (b - bb)
    return s if err == 0.0 else None


def _merge_pass(segments: tuple[Segment, ...]) -> tuple[Segment, ...]:
    out: list[Segment] = []
    for seg in segments:
        if seg.t == 0.0:
            continue
        if out and out[-1].h == seg.h:
            total = _exact_sum(out[-1].t, seg.t)
            if total is not None:
                prev = out.pop()
                if seg.label is None or seg.label == prev.label:
                    label = prev.label
                elif prev.label is None:
                    label = seg.label
                else:
                    label = prev.label + "+" + seg.label
                out.append(Segment(seg.h, total, label))
                continue
        out.append(seg)
    return tuple(out)


def normalize(schedule: Schedule) -> Schedule:
    """Merge adjacent same-Hamiltonian segments and drop zero-duration ones.

    Raises ValueError on a negative duration.  A pair is merged only when
    the summed duration is exactly representable as a double: durations here
    are large multiples of pi whose phases must reduce exactly, and a merge
    that rounds the sum shifts every term's phase by coeff * ulp(total),
    which at widely split scales is far worse than keeping the segments
    apart.  Adjacent same-Hamiltonian segments therefore survive when and
    only when their sum cannot be formed without rounding; the overall
    unitary is preserved exactly either way.
    """
    for seg in schedule.segments:
        if seg.t < 0.0:
            raise ValueError(f"segment duration must be nonnegative, got {seg.t}")
    segs = schedule.segments
    while True:
        merged = _merge_pass(segs)
        if merged == segs:
            return Schedule(merged)
        segs = merged


def _evolution(spec: HamiltonianSpec, seg: Segment) -> FactorizedEvolution:
    if seg.h == 1:
        return evolve_h1(spec, seg.t)
    return evolve_h2(spec, seg.t)


def _apply_evolution(arr: np.ndarray, n: int, evo: FactorizedEvolution) -> np.ndarray:
    # all factors of one evolution commute, so application order is free
    for qubit, gate in enumerate(evo.singles, start=1):
        arr = _apply_single(arr, n, qubit, gate)
    for m, phases in enumerate(evo.pairs, start=1):
        arr = _apply_pair_diagonal(arr, n, m, m + 1, phases)
    return arr


def run_schedule(
    spec: HamiltonianSpec, schedule: Schedule, state: StateVector
) -> StateVector:
    """Evolve a state through every segment in order."""
    if state.n != spec.n:
        raise DimensionError(f"state has n={state.n} but spec has n={spec.n}")
    amps = state.amplitudes
    for seg in schedule.segments:
        amps = _apply_evolution(amps, spec.n, _evolution(spec, seg))
    out = StateVector.__new__(StateVector)
    out.n = spec.n
    out.amplitudes = amps
    return out


def schedule_unitary(spec: HamiltonianSpec, schedule: Schedule) -> DenseUnitary:
    """The full unitary of a schedule, built by evolving all basis states at once."""
    check_dense_size(spec.n)
    arr = np.eye(2**spec.n, dtype=complex)
    for seg in schedule.segments:
        arr = _apply_evolution(arr, spec.n, _evolution(spec, seg))
    return DenseUnitary(spec.n, arr)
