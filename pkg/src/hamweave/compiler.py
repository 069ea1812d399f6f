"""Compiles {H, T, CNOT} circuits into switching schedules.

The scheme: give every Hamiltonian term its own strength scale a_m = B^(1-m)
(and interleaved scales for the Z and ZZ terms), with B a power of two of at
least 16.  Waiting for duration B^(m-1) * angle then winds term m to `angle`
while every stronger term wraps an exact whole number of half-turns (exact
multiples of pi, i.e. identity up to phase) and every weaker term picks up a
residual of order 1/B.  Larger B buys accuracy with exponentially longer
durations; that tradeoff is the whole point and is left as is.

CNOT is synthesized as H(target) . [T(control)^2 T(target)^2 ZZ(pair)] .
H(target), where the middle block is one diagonal evolution realizing
exp(+i pi/4 ZZ) (up to phase) and T^2 = S on both qubits.  The construction
is symmetric in which neighbour is control, so both orientations compile to
the same seven raw segments with roles swapped.  Non-adjacent CNOTs are
first routed through SWAP chains (route_circuit).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .hamiltonians import HamiltonianSpec
from .qcore import (
    DenseUnitary,
    DimensionError,
    H as H_MATRIX,
    T as T_MATRIX,
    check_dense_size,
)
from .simulator import Schedule, Segment, normalize

GATE_KINDS = ("H", "T", "CNOT")

_PI_2 = math.pi / 2.0
_PI_8 = math.pi / 8.0
_3PI_4 = 3.0 * math.pi / 4.0


@dataclass(frozen=True)
class CompilerConfig:
    """Register size and the coefficient base B (a power of two, >= 16)."""

    n: int
    base: int

    def __post_init__(self):
        if self.n < 1:
            raise DimensionError(f"need at least one qubit, got n={self.n}")
        b = self.base
        if not isinstance(b, int) or b < 16 or (b & (b - 1)) != 0:
            raise ValueError(
                f"base must be a power of two >= 16, got {b!r}; smaller bases break "
                "the exact wrap-around of stronger terms"
            )


@dataclass(frozen=True)
class Gate:
    """One circuit gate: g is "H", "T", or "CNOT" (q=control, q2=target)."""

    g: str
    q: int
    q2: int | None = None

    def __post_init__(self):
        if self.g not in GATE_KINDS:
            raise ValueError(f"unknown gate {self.g!r}, expected one of {GATE_KINDS}")
        if self.g == "CNOT":
            if self.q2 is None:
                raise ValueError("CNOT needs a target qubit q2")
            if self.q2 == self.q:
                raise ValueError(f"CNOT endpoints must be distinct, got {self.q} twice")
        elif self.q2 is not None:
            raise ValueError(f"{self.g} takes a single qubit, got q2={self.q2}")

    def describe(self) -> str:
        if self.g == "CNOT":
            return f"CNOT q{self.q}>q{self.q2}"
        return f"{self.g} q{self.q}"


@dataclass(frozen=True)
class Circuit:
    """Ordered gate list on an n-qubit line; gate order is time order."""

    n: int
    gates: tuple[Gate, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.n < 1:
            raise DimensionError(f"need at least one qubit, got n={self.n}")
        object.__setattr__(self, "gates", tuple(self.gates))
        for gate in self.gates:
            if not 1 <= gate.q <= self.n:
                raise DimensionError(f"qubit {gate.q} out of range 1..{self.n}")
            if gate.q2 is not None and not 1 <= gate.q2 <= self.n:
                raise DimensionError(f"qubit {gate.q2} out of range 1..{self.n}")

    def to_dict(self) -> dict:
        gates = []
        for gate in self.gates:
            entry: dict = {"g": gate.g, "q": gate.q}
            if gate.q2 is not None:
                entry["q2"] = gate.q2
            gates.append(entry)
        return {"n": self.n, "gates": gates}

    @classmethod
    def from_dict(cls, data: dict) -> "Circuit":
        try:
            n = int(data["n"])
            raw = data["gates"]
        except KeyError as exc:
            raise ValueError(f"circuit is missing field {exc.args[0]!r}") from exc
        gates = []
        for entry in raw:
            q2 = entry.get("q2")
            try:
                gates.append(Gate(g=str(entry["g"]), q=int(entry["q"]), q2=None if q2 is None else int(q2)))
            except KeyError as exc:
                raise ValueError(f"gate is missing field {exc.args[0]!r}") from exc
        return cls(n=n, gates=tuple(gates))


@dataclass(frozen=True)
class ErrorBudget:
    """Additive spectral-norm budget: per routed gate, and their sum.

    per_gate[i] bounds the spectral distance (minimized over global phase)
    between gate i's compiled unitary and its ideal, and aligns with
    route_circuit(circuit).gates.  total bounds the whole schedule's
    distance, hence also its infidelity.
    """

    per_gate: tuple[float, ...]
    total: float

    def __post_init__(self):
        object.__setattr__(self, "per_gate", tuple(float(x) for x in self.per_gate))
        for x in self.per_gate:
            if x < 0.0:
                raise ValueError(f"per-gate bound must be nonnegative, got {x}")
        if self.total < 0.0 or self.total > math.fsum(self.per_gate) + 1e-12:
            raise ValueError("total must be nonnegative and at most the per-gate sum")


def standard_coefficients(config: CompilerConfig) -> HamiltonianSpec:
    """Coefficient ladder a_m = B^-(m-1), b_m = B^-(2m-2), c_m = B^-(2m-1).

    The b and c strengths interleave (b_1 > c_1 > b_2 > c_2 > ...) so each
    Z and ZZ term is individually selectable by a single power-of-B time.
    All values are exact powers of two, hence exact doubles.
    """
    b = float(config.base)
    n = config.n
    a = tuple(b ** (-(m - 1)) for m in range(1, n + 1))
    bz = tuple(b ** (-(2 * m - 2)) for m in range(1, n + 1))
    c = tuple(b ** (-(2 * m - 1)) for m in range(1, n))
    return HamiltonianSpec(n=n, a=a, b=bz, c=c)


def _check_index(m: int, hi: int, what: str) -> None:
    if not 1 <= m <= hi:
        raise DimensionError(f"{what} {m} out of range 1..{hi}")


def schedule_hadamard(m: int, config: CompilerConfig) -> Schedule:
    """One H1 segment of duration B^(m-1) pi/2: Hadamard on qubit m.

    Qubits stronger than m turn by exact multiples of pi (identity up to
    phase, exactly); qubit j > m picks up a residual angle B^(m-j) pi/2.
    """
    _check_index(m, config.n, "qubit")
    t = float(config.base) ** (m - 1) * _PI_2
    return Schedule((Segment(1, t, f"H q{m}"),))


def schedule_t_gate(m: int, config: CompilerConfig) -> Schedule:
    """One H2 segment of duration B^(2m-2) pi/8: T gate on qubit m."""
    _check_index(m, config.n, "qubit")
    t = float(config.base) ** (2 * m - 2) * _PI_8
    return Schedule((Segment(2, t, f"T q{m}"),))


def schedule_zz(m: int, config: CompilerConfig) -> Schedule:
    """One H2 segment of duration B^(2m-1) 3pi/4 on the link (m, m+1).

    The accumulated ZZ phase is 3pi/4, and exp(-i 3pi/4 ZZ) equals
    -exp(+i pi/4 ZZ): the sign the CNOT identity needs, up to global phase.
    A quarter-turn with the opposite sign is not directly reachable because
    the coefficients are positive.
    """
    _check_index(m, config.n - 1, "link")
    t = float(config.base) ** (2 * m - 1) * _3PI_4
    return Schedule((Segment(2, t, f"ZZ q{m},q{m + 1}"),))


def schedule_cnot(control: int, target: int, config: CompilerConfig) -> Schedule:
    """Seven raw segments realizing CNOT on an adjacent pair, either orientation.

    Time order: H(target); T(control) twice; T(target) twice; ZZ on the
    link; H(target).  The five middle segments are all H2 and merge into a
    single diagonal block under normalize.
    """
    _check_index(control, config.n, "qubit")
    _check_index(target, config.n, "qubit")
    if abs(control - target) != 1:
        raise DimensionError(
            f"CNOT needs an adjacent pair, got control={control}, target={target}; "
            "route_circuit handles longer spans"
        )
    label = f"CNOT q{control}>q{target}"
    segs = []
    segs.extend(schedule_hadamard(target, config).segments)
    segs.extend(schedule_t_gate(control, config).segments)
    segs.extend(schedule_t_gate(control, config).segments)
    segs.extend(schedule_t_gate(target, config).segments)
    segs.extend(schedule_t_gate(target, config).segments)
    segs.extend(schedule_zz(min(control, target), config).segments)
    segs.extend(schedule_hadamard(target, config).segments)
    relabeled = tuple(Segment(s.h, s.t, label) for s in segs)
    return Schedule(relabeled)


def route_circuit(circuit: Circuit) -> Circuit:
    """Rewrite non-adjacent CNOTs as SWAP-chain conjugated adjacent ones.

    The target is walked next to the control with adjacent SWAPs (each SWAP
    is three alternating CNOTs), the CNOT is applied, and the walk is
    undone.  The result computes the same unitary up to global phase
    (exactly: every primitive here is a signed permutation at the ideal
    level).
    """
    out: list[Gate] = []
    for gate in circuit.gates:
        if gate.g != "CNOT" or abs(gate.q - gate.q2) == 1:
            out.append(gate)
            continue
        control, target = gate.q, gate.q2
        step = -1 if target > control else 1
        swaps: list[tuple[int, int]] = []
        pos = target
        while abs(control - pos) > 1:
            swaps.append((pos, pos + step))
            pos += step
        for a, b in swaps:
            out.extend((Gate("CNOT", a, b), Gate("CNOT", b, a), Gate("CNOT", a, b)))
        out.append(Gate("CNOT", control, pos))
        for a, b in reversed(swaps):
            out.extend((Gate("CNOT", a, b), Gate("CNOT", b, a), Gate("CNOT", a, b)))
    return Circuit(n=circuit.n, gates=tuple(out))


def compile_circuit(circuit: Circuit, config: CompilerConfig) -> Schedule:
    """Route, schedule each gate, concatenate in circuit order, normalize."""
    if circuit.n != config.n:
        raise DimensionError(f"circuit has n={circuit.n} but config has n={config.n}")
    routed = route_circuit(circuit)
    segs: list[Segment] = []
    for gate in routed.gates:
        if gate.g == "H":
            part = schedule_hadamard(gate.q, config)
        elif gate.g == "T":
            part = schedule_t_gate(gate.q, config)
        else:
            part = schedule_cnot(gate.q, gate.q2, config)
        segs.extend(part.segments)
    return normalize(Schedule(tuple(segs)))


def _geom_sum(base: int, terms: int) -> float:
    return math.fsum(float(base) ** (-k) for k in range(1, terms + 1))


def bound_hadamard(m: int, config: CompilerConfig) -> float:
    """Residual-angle sum for a compiled H: (pi/2) sum_{k=1}^{n-m} B^-k."""
    _check_index(m, config.n, "qubit")
    return _PI_2 * _geom_sum(config.base, config.n - m)


def bound_t_gate(m: int, config: CompilerConfig) -> float:
    """Residual-angle sum for a compiled T: (pi/8) sum_{k=1}^{2(n-m)} B^-k."""
    _check_index(m, config.n, "qubit")
    return _PI_8 * _geom_sum(config.base, 2 * (config.n - m))


def bound_zz(m: int, config: CompilerConfig) -> float:
    """Residual-angle sum for a compiled ZZ quarter-turn on link (m, m+1)."""
    _check_index(m, config.n - 1, "link")
    return _3PI_4 * _geom_sum(config.base, 2 * (config.n - m) - 1)


def gate_bound(gate: Gate, config: CompilerConfig) -> float:
    """Spectral-distance bound for one adjacent gate: sum of weaker residual angles.

    Every residual rotation R satisfies ||R - I|| = 2 sin(angle/2) <= angle,
    and the exact part equals the ideal gate up to phase, so the angles sum
    to a distance bound.  The CNOT bound composes its seven segments.
    """
    if gate.g == "H":
        return bound_hadamard(gate.q, config)
    if gate.g == "T":
        return bound_t_gate(gate.q, config)
    control, target = gate.q, gate.q2
    if abs(control - target) != 1:
        raise DimensionError("gate_bound applies to adjacent CNOTs; route first")
    return math.fsum(
        (
            2.0 * bound_hadamard(target, config),
            2.0 * bound_t_gate(control, config),
            2.0 * bound_t_gate(target, config),
            bound_zz(min(control, target), config),
        )
    )


def error_bound(circuit: Circuit, config: CompilerConfig) -> ErrorBudget:
    """Per-gate and whole-schedule error budget for the routed circuit."""
    if circuit.n != config.n:
        raise DimensionError(f"circuit has n={circuit.n} but config has n={config.n}")
    routed = route_circuit(circuit)
    per_gate = tuple(gate_bound(gate, config) for gate in routed.gates)
    return ErrorBudget(per_gate=per_gate, total=math.fsum(per_gate))


def _embed_gate(gate: Gate, n: int) -> np.ndarray:
    dim = 2**n
    if gate.g == "CNOT":
        idx = np.arange(dim)
        control_bit = (idx >> (n - gate.q)) & 1
        flipped = idx ^ (control_bit << (n - gate.q2))
        mat = np.zeros((dim, dim), dtype=complex)
        mat[flipped, idx] = 1.0
        return mat
    single = H_MATRIX if gate.g == "H" else T_MATRIX
    out = np.array([[1.0 + 0j]])
    for q in range(1, n + 1):
        out = np.kron(out, single if q == gate.q else np.eye(2))
    return out


def circuit_unitary(circuit: Circuit) -> DenseUnitary:
    """The ideal (error-free) unitary of a circuit, dense, for small n."""
    check_dense_size(circuit.n)
    dim = 2**circuit.n
    acc = np.eye(dim, dtype=complex)
    for gate in circuit.gates:
        acc = _embed_gate(gate, circuit.n) @ acc
    return DenseUnitary(circuit.n, acc)


IDEAL_ZZ_PHASE = math.pi / 4.0


def ideal_gate_unitary(kind: str, m: int, n: int, q2: int | None = None) -> DenseUnitary:
    """Ideal unitary for one gate, including the bare ZZ quarter-turn.

    kind "ZZ" means exp(+i pi/4 Z Z) on the link (m, m+1); the others
    delegate to circuit_unitary.
    """
    if kind in GATE_KINDS:
        return circuit_unitary(Circuit(n=n, gates=(Gate(kind, m, q2),)))
    if kind != "ZZ":
        raise ValueError(f"unknown gate kind {kind!r}")
    check_dense_size(n)
    _check_index(m, n - 1, "link")
    dim = 2**n
    idx = np.arange(dim)
    s1 = 1.0 - 2.0 * ((idx >> (n - m)) & 1)
    s2 = 1.0 - 2.0 * ((idx >> (n - m - 1)) & 1)
    diag = np.exp(1j * IDEAL_ZZ_PHASE * s1 * s2)
    return DenseUnitary(n, np.diag(diag))
