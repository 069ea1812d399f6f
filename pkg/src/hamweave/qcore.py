"""Statevector and dense-unitary primitives.

Conventions used throughout the package:

* Qubits are numbered 1..n and qubit 1 is the most significant bit of the
  state index, so basis state |q1 q2 ... qn> lives at index
  q1*2^(n-1) + ... + qn.
* Amplitudes are numpy complex128.
* Time is dimensionless (hbar = 1).
* Dense matrices are only ever built for small registers; the cap is
  ``max_dense_qubits()`` and can be raised with HAMWEAVE_MAX_DENSE_N.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np

DEFAULT_MAX_DENSE_QUBITS = 10
_NORM_TOL = 1e-10
_UNITARY_TOL = 1e-9
_HERMITIAN_TOL = 1e-9

_S2 = 1.0 / math.sqrt(2.0)

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
H = np.array([[_S2, _S2], [_S2, -_S2]], dtype=complex)
T = np.array([[1, 0], [0, np.exp(1j * math.pi / 4)]], dtype=complex)
CNOT = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
)

for _g in (I2, X, Z, H, T, CNOT):
    _g.setflags(write=False)


class DimensionError(ValueError):
    """Raised when an operand does not fit the register it is applied to."""


def max_dense_qubits() -> int:
    """Largest register size for which dense matrices may be built."""
    raw = os.environ.get("HAMWEAVE_MAX_DENSE_N")
    if raw is None:
        return DEFAULT_MAX_DENSE_QUBITS
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(f"HAMWEAVE_MAX_DENSE_N must be an integer, got {raw!r}") from exc
    if value < 1:
        raise ValueError(f"HAMWEAVE_MAX_DENSE_N must be positive, got {value}")
    return value


def check_dense_size(n: int) -> None:
    cap = max_dense_qubits()
    if n > cap:
        raise DimensionError(
            f"dense representation for n={n} qubits exceeds the cap of {cap}; "
            "set HAMWEAVE_MAX_DENSE_N to raise it"
        )


def _qubit_count(dim: int, what: str) -> int:
    n = dim.bit_length() - 1
    if n < 1 or 2**n != dim:
        raise DimensionError(f"{what} has dimension {dim}, expected a power of two >= 2")
    return n


class StateVector:
    """Pure state of an n-qubit register."""

    __slots__ = ("n", "amplitudes")

    def __init__(self, amplitudes: np.ndarray, *, copy: bool = True):
        amps = np.array(amplitudes, dtype=complex, copy=copy).reshape(-1)
        self.n = _qubit_count(amps.shape[0], "state vector")
        nrm = float(np.linalg.norm(amps))
        if abs(nrm - 1.0) > _NORM_TOL:
            raise ValueError(f"state vector norm is {nrm!r}, expected 1 within {_NORM_TOL}")
        self.amplitudes = amps

    @classmethod
    def zero(cls, n: int) -> "StateVector":
        """The all-zeros basis state |0...0>."""
        if n < 1:
            raise DimensionError(f"register needs at least one qubit, got n={n}")
        amps = np.zeros(2**n, dtype=complex)
        amps[0] = 1.0
        return cls(amps, copy=False)

    @classmethod
    def basis(cls, n: int, index: int) -> "StateVector":
        """Computational basis state with the given index."""
        if n < 1:
            raise DimensionError(f"register needs at least one qubit, got n={n}")
        if not 0 <= index < 2**n:
            raise DimensionError(f"basis index {index} out of range for n={n}")
        amps = np.zeros(2**n, dtype=complex)
        amps[index] = 1.0
        return cls(amps, copy=False)

    @classmethod
    def random(cls, n: int, rng: np.random.Generator) -> "StateVector":
        """Haar-ish random state: complex normal amplitudes, normalized."""
        if n < 1:
            raise DimensionError(f"register needs at least one qubit, got n={n}")
        amps = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
        amps /= np.linalg.norm(amps)
        return cls(amps, copy=False)

    def copy(self) -> "StateVector":
        return StateVector(self.amplitudes, copy=True)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def __repr__(self) -> str:
        return f"StateVector(n={self.n})"


@dataclass(frozen=True, eq=False)
class DenseUnitary:
    """Unitary matrix on an n-qubit register, kept dense."""

    n: int
    entries: np.ndarray

    def __post_init__(self):
        mat = np.asarray(self.entries, dtype=complex)
        if mat.shape != (2**self.n, 2**self.n):
            raise DimensionError(
                f"matrix shape {mat.shape} does not match n={self.n} qubits"
            )
        check_dense_size(self.n)
        dev = np.max(np.abs(mat.conj().T @ mat - np.eye(2**self.n)))
        if dev > _UNITARY_TOL:
            raise ValueError(f"matrix is not unitary: deviation {dev:.3e}")
        object.__setattr__(self, "entries", mat)

    @classmethod
    def identity(cls, n: int) -> "DenseUnitary":
        return cls(n, np.eye(2**n, dtype=complex))


def _as_matrix(u) -> np.ndarray:
    if isinstance(u, DenseUnitary):
        return u.entries
    return np.asarray(u, dtype=complex)


def _check_gate_2x2(gate: np.ndarray) -> np.ndarray:
    gate = np.asarray(gate, dtype=complex)
    if gate.shape != (2, 2):
        raise DimensionError(f"single-qubit gate must be 2x2, got shape {gate.shape}")
    dev = np.max(np.abs(gate.conj().T @ gate - np.eye(2)))
    if dev > _UNITARY_TOL:
        raise ValueError(f"single-qubit gate is not unitary: deviation {dev:.3e}")
    return gate


def _check_qubit(qubit: int, n: int) -> None:
    if not 1 <= qubit <= n:
        raise DimensionError(f"qubit {qubit} out of range 1..{n}")


def _apply_single(amps: np.ndarray, n: int, qubit: int, gate: np.ndarray) -> np.ndarray:
    """Contract a 2x2 gate into axis `qubit` of an array whose leading dimension is 2^n.

    Trailing axes are carried along, which lets the same kernel act on a
    batch of columns (e.g. a whole unitary at once).
    """
    pre = 2 ** (qubit - 1)
    post = 2 ** (n - qubit)
    tail = amps.shape[1:]
    work = amps.reshape(pre, 2, post, *tail)
    out = np.einsum("ab,pbq...->paq...", gate, work)
    return out.reshape(amps.shape)

def _apply_pair_diagonal(
    amps: np.ndarray, n: int, q1: int, q2: int, phases: np.ndarray
) -> np.ndarray:
    """Multiply by a diagonal two-qubit operator given as four phase factors.

    ``phases`` is indexed by 2*bit(q1) + bit(q2) with qubit values read from
    the basis index.
    """
    idx = np.arange(2**n)
    b1 = (idx >> (n - q1)) & 1
    b2 = (idx >> (n - q2)) & 1
    diag = phases[2 * b1 + b2]
    if amps.ndim == 1:
        return amps * diag
    return amps * diag.reshape((-1,) + (1,) * (amps.ndim - 1))


def apply_single_qubit(state: StateVector, qubit: int, gate: np.ndarray) -> StateVector:
    """Apply a 2x2 unitary to one qubit of a state."""
    gate = _check_gate_2x2(gate)
    _check_qubit(qubit, state.n)
    out = _apply_single(state.amplitudes, state.n, qubit, gate)
    result = StateVector.__new__(StateVector)
    result.n = state.n
    result.amplitudes = out
    return result


def apply_two_qubit_diagonal(
    state: StateVector, q1: int, q2: int, phases: np.ndarray
) -> StateVector:
    """Apply a diagonal two-qubit unitary given as four unit-modulus factors."""
    _check_qubit(q1, state.n)
    _check_qubit(q2, state.n)
    if q1 == q2:
        raise DimensionError(f"two-qubit operator needs distinct qubits, got {q1} twice")
    phases = np.asarray(phases, dtype=complex).reshape(-1)
    if phases.shape != (4,):
        raise DimensionError(f"expected 4 diagonal phases, got {phases.shape[0]}")
    if np.max(np.abs(np.abs(phases) - 1.0)) > _UNITARY_TOL:
        raise ValueError("diagonal phases must have unit modulus")
    out = _apply_pair_diagonal(state.amplitudes, state.n, q1, q2, phases)
    result = StateVector.__new__(StateVector)
    result.n = state.n
    result.amplitudes = out
    return result


def zz_phases(psi: float) -> np.ndarray:
    """Diagonal of exp(-i psi Z(x)Z) in the order 00, 01, 10, 11."""
    e_minus = np.exp(-1j * psi)
    e_plus = np.exp(1j * psi)
    return np.array([e_minus, e_plus, e_plus, e_minus])


def zz_rotation(psi: float) -> np.ndarray:
    """exp(-i psi Z(x)Z) as a dense 4x4 matrix."""
    return np.diag(zz_phases(psi))


def fidelity_phase_invariant(u, v) -> float:
    """|tr(U^dag V)| / dim, which is 1 iff U = V up to a global phase."""
    a = _as_matrix(u)
    b = _as_matrix(v)
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch {a.shape} vs {b.shape}")
    return float(abs(np.trace(a.conj().T @ b))) / a.shape[0]


def spectral_distance_up_to_phase(u, v) -> float:
    """min over phases c of the spectral norm ||U - cV||.

    The eigenphases of U V^dag all sit on the unit circle; the optimal global
    phase bisects the largest arc that contains every eigenphase, giving
    2 sin(spread/4) where spread is the full circle minus the largest gap.
    """
    a = _as_matrix(u)
    b = _as_matrix(v)
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch {a.shape} vs {b.shape}")
    w = np.linalg.eigvals(a @ b.conj().T)
    angles = np.sort(np.angle(w))
    gaps = np.diff(angles, append=angles[0] + 2 * math.pi)
    spread = 2 * math.pi - float(np.max(gaps))
    return 2.0 * math.sin(spread / 4.0)


def dense_expm_hermitian(hmat: np.ndarray, t: float) -> DenseUnitary:
    """exp(-i H t) for a Hermitian H, via eigendecomposition."""
    hmat = np.asarray(hmat, dtype=complex)
    if hmat.ndim != 2 or hmat.shape[0] != hmat.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {hmat.shape}")
    n = _qubit_count(hmat.shape[0], "Hamiltonian")
    check_dense_size(n)
    if np.max(np.abs(hmat - hmat.conj().T)) > _HERMITIAN_TOL:
        raise ValueError("matrix is not Hermitian")
    evals, evecs = np.linalg.eigh(hmat)
    u = (evecs * np.exp(-1j * evals * t)) @ evecs.conj().T
    return DenseUnitary(n, u)


_SPLITTER = 134217729.0  # 2**27 + 1, Veltkamp split for exact double products


def _two_product(a: float, b: float) -> tuple[float, float]:
    """Exact product a*b = p + err as a pair of doubles."""
    p = a * b
    ah = a * _SPLITTER
    ah = ah - (ah - a)
    al = a - ah
    bh = b * _SPLITTER
    bh = bh - (bh - b)
    bl = b - bh
    err = ((ah * bh - p) + ah * bl + al * bh) + al * bl
    return p, err


_TWO_PI = 2.0 * math.pi


def phase_mod_2pi(coefficient: float, duration: float) -> float:
    """coefficient * duration reduced modulo 2*pi, in [0, 2*pi).

    The product is formed exactly (as a two-double expansion) before the
    reduction, so phases that are exact multiples of the floating-point
    2*pi come out as exactly 0.0 no matter how large the product is.  This
    matters: compiled schedules rely on stronger coupling terms wrapping
    around to the identity with no residual at all.
    """
    hi, lo = _two_product(coefficient, duration)
    r = math.fmod(hi, _TWO_PI) + math.fmod(lo, _TWO_PI)
    r = math.fmod(r, _TWO_PI)
    if r < 0.0:
        r += _TWO_PI
    if r >= _TWO_PI:
        r -= _TWO_PI
    return r
