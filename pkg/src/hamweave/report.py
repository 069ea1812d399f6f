"""Fidelity report: one row per compiled primitive per base.

Rows carry the compiled schedule's total duration, its phase-invariant
fidelity against the ideal gate, the analytic error bound, and the measured
spectral distance (minimized over global phase).  Two properties are
checked over a finished table: the distance never exceeds the bound, and
fidelity never drops when the base grows.

The CSV schema is a header row

    gate,qubits,base,n,duration,fidelity,bound,distance

with floats printed to 17 significant digits so rows parse back losslessly.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

from .compiler import (
    CompilerConfig,
    bound_hadamard,
    bound_t_gate,
    bound_zz,
    gate_bound,
    Gate,
    ideal_gate_unitary,
    schedule_cnot,
    schedule_hadamard,
    schedule_t_gate,
    schedule_zz,
    standard_coefficients,
)
from .qcore import DimensionError, fidelity_phase_invariant, spectral_distance_up_to_phase
from .simulator import normalize, schedule_unitary

CSV_FIELDS = ("gate", "qubits", "base", "n", "duration", "fidelity", "bound", "distance")

MAX_REPORT_QUBITS = 6
_SOUNDNESS_SLACK = 1e-12
_MONOTONE_SLACK = 1e-12


@dataclass(frozen=True)
class ReportRow:
    gate: str
    qubits: str
    base: int
    n: int
    duration: float
    fidelity: float
    bound: float
    distance: float


def gate_positions(n: int) -> list[tuple[str, int, int | None, str]]:
    """Every compiled primitive on an n-qubit line: (kind, q, q2, qubits label).

    CNOT appears in both orientations per pair; ZZ is the bare quarter-turn
    the CNOT synthesis uses.
    """
    out: list[tuple[str, int, int | None, str]] = []
    for m in range(1, n + 1):
        out.append(("H", m, None, str(m)))
    for m in range(1, n + 1):
        out.append(("T", m, None, str(m)))
    for m in range(1, n):
        out.append(("ZZ", m, None, f"{m},{m + 1}"))
    for m in range(1, n):
        out.append(("CNOT", m, m + 1, f"{m}>{m + 1}"))
        out.append(("CNOT", m + 1, m, f"{m + 1}>{m}"))
    return out


def _schedule_and_bound(kind: str, q: int, q2: int | None, config: CompilerConfig):
    if kind == "H":
        return schedule_hadamard(q, config), bound_hadamard(q, config)
    if kind == "T":
        return schedule_t_gate(q, config), bound_t_gate(q, config)
    if kind == "ZZ":
        return schedule_zz(q, config), bound_zz(q, config)
    return schedule_cnot(q, q2, config), gate_bound(Gate("CNOT", q, q2), config)


def build_report(n: int, bases: tuple[int, ...]) -> list[ReportRow]:
    """Compile and measure every primitive at every base."""
    if n < 1:
        raise DimensionError(f"need at least one qubit, got n={n}")
    if n > MAX_REPORT_QUBITS:
        raise DimensionError(
            f"report builds full unitaries; n={n} exceeds the limit of {MAX_REPORT_QUBITS}"
        )
    if len(bases) == 0:
        raise ValueError("need at least one base")
    rows: list[ReportRow] = []
    for kind, q, q2, qubits in gate_positions(n):
        ideal = ideal_gate_unitary(kind, q, n, q2)
        for base in bases:
            config = CompilerConfig(n=n, base=base)
            schedule, bound = _schedule_and_bound(kind, q, q2, config)
            schedule = normalize(schedule)
            spec = standard_coefficients(config)
            compiled = schedule_unitary(spec, schedule)
            rows.append(
                ReportRow(
                    gate=kind,
                    qubits=qubits,
                    base=base,
                    n=n,
                    duration=schedule.total_duration(),
                    fidelity=fidelity_phase_invariant(compiled, ideal),
                    bound=bound,
                    distance=spectral_distance_up_to_phase(compiled, ideal),
                )
            )
    return rows


def check_report(rows: list[ReportRow]) -> list[str]:
    """Violation messages for bound-soundness and base-monotonicity (empty = pass)."""
    problems: list[str] = []
    for row in rows:
        if row.distance > row.bound + _SOUNDNESS_SLACK:
            problems.append(
                f"{row.gate} q{row.qubits} base={row.base}: distance "
                f"{row.distance:.6e} exceeds bound {row.bound:.6e}"
            )
        if not (-1e-12 <= row.fidelity <= 1.0 + 1e-12):
            problems.append(
                f"{row.gate} q{row.qubits} base={row.base}: fidelity "
                f"{row.fidelity!r} outside [0, 1]"
            )
    by_gate: dict[tuple[str, str, int], list[ReportRow]] = {}
    for row in rows:
        by_gate.setdefault((row.gate, row.qubits, row.n), []).append(row)
    for (kind, qubits, _n), group in by_gate.items():
        group = sorted(group, key=lambda r: r.base)
        for lo, hi in zip(group, group[1:]):
            if hi.fidelity < lo.fidelity - _MONOTONE_SLACK:
                problems.append(
                    f"{kind} q{qubits}: fidelity dropped from {lo.fidelity:.12f} "
                    f"(base {lo.base}) to {hi.fidelity:.12f} (base {hi.base})"
                )
    return problems


def _fmt(x: float) -> str:
    return format(x, ".17g")


def write_csv(rows: list[ReportRow], path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_FIELDS)
        for row in rows:
            writer.writerow(
                (
                    row.gate,
                    row.qubits,
                    row.base,
                    row.n,
                    _fmt(row.duration),
                    _fmt(row.fidelity),
                    _fmt(row.bound),
                    _fmt(row.distance),
                )
            )


def read_csv(path) -> list[ReportRow]:
    rows: list[ReportRow] = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if tuple(header) != CSV_FIELDS:
            raise ValueError(f"unexpected report header {header!r}")
        for rec in reader:
            rows.append(
                ReportRow(
                    gate=rec[0],
                    qubits=rec[1],
                    base=int(rec[2]),
                    n=int(rec[3]),
                    duration=float(rec[4]),
                    fidelity=float(rec[5]),
                    bound=float(rec[6]),
                    distance=float(rec[7]),
                )
            )
    return rows
