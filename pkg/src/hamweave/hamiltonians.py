"""The two fixed control Hamiltonians and their exact factorized evolutions.

H1 = sum_m a_m (X_m + Z_m)/sqrt(2) acts on each qubit independently, and
(X+Z)/sqrt(2) is the Hadamard matrix, so exp(-i H1 t) factorizes into n
single-qubit rotations about the Hadamard axis.

H2 = sum_m b_m Z_m + sum_m c_m Z_m Z_{m+1} is diagonal, so exp(-i H2 t)
factorizes into n single-qubit phase factors and n-1 nearest-neighbour
two-qubit phase factors.

Both evolutions are therefore exact at any t; no dense exponential is ever
needed to run them.  Rotation angles are reduced modulo the floating-point
2*pi before any trig is evaluated (see qcore.phase_mod_2pi), which keeps
angles that should wrap to zero at exactly zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .qcore import (
    DimensionError,
    H,
    I2,
    check_dense_size,
    phase_mod_2pi,
    zz_phases,
)


def _as_coeffs(values, count: int, name: str) -> tuple[float, ...]:
    out = tuple(float(v) for v in values)
    if len(out) != count:
        raise DimensionError(f"{name} needs {count} entries, got {len(out)}")
    for v in out:
        if not math.isfinite(v):
            raise ValueError(f"{name} contains a non-finite value {v!r}")
    return out


@dataclass(frozen=True)
class HamiltonianSpec:
    """Coefficients of the two control Hamiltonians on an n-qubit chain.

    a: per-qubit strengths of the (X+Z)/sqrt(2) terms in H1.
    b: per-qubit strengths of the Z terms in H2.
    c: per-link strengths of the Z Z nearest-neighbour terms in H2
       (length n-1, empty for a single qubit).
    """

    n: int
    a: tuple[float, ...]
    b: tuple[float, ...]
    c: tuple[float, ...]

    def __post_init__(self):
        if self.n < 1:
            raise DimensionError(f"need at least one qubit, got n={self.n}")
        object.__setattr__(self, "a", _as_coeffs(self.a, self.n, "a"))
        object.__setattr__(self, "b", _as_coeffs(self.b, self.n, "b"))
        object.__setattr__(self, "c", _as_coeffs(self.c, self.n - 1, "c"))

    def to_dict(self) -> dict:
        return {"n": self.n, "a": list(self.a), "b": list(self.b), "c": list(self.c)}

    @classmethod
    def from_dict(cls, data: dict) -> "HamiltonianSpec":
        try:
            return cls(
                n=int(data["n"]),
                a=tuple(data["a"]),
                b=tuple(data["b"]),
                c=tuple(data["c"]),
            )
        except KeyError as exc:
            raise ValueError(f"spec is missing field {exc.args[0]!r}") from exc


@dataclass(frozen=True, eq=False)
class FactorizedEvolution:
    """exp(-i H t) broken into commuting local factors.

    singles holds one 2x2 unitary per qubit (index 0 acts on qubit 1).
    pairs holds one length-4 diagonal (ordered 00,01,10,11) per
    nearest-neighbour link; it is empty for H1.
    """

    n: int
    singles: tuple[np.ndarray, ...]
    pairs: tuple[np.ndarray, ...]


def evolve_h1(spec: HamiltonianSpec, t: float) -> FactorizedEvolution:
    """Factorized exp(-i H1 t): a Hadamard-axis rotation on every qubit."""
    singles = []
    for a_m in spec.a:
        theta = phase_mod_2pi(a_m, t)
        singles.append(math.cos(theta) * I2 - 1j * math.sin(theta) * H)
    return FactorizedEvolution(spec.n, tuple(singles), ())


def evolve_h2(spec: HamiltonianSpec, t: float) -> FactorizedEvolution:
    """Factorized exp(-i H2 t): Z phases per qubit plus ZZ phases per link."""
    singles = []
    for b_m in spec.b:
        theta = phase_mod_2pi(b_m, t)
        singles.append(np.diag([np.exp(-1j * theta), np.exp(1j * theta)]))
    pairs = []
    for c_m in spec.c:
        psi = phase_mod_2pi(c_m, t)
        pairs.append(zz_phases(psi))
    return FactorizedEvolution(spec.n, tuple(singles), tuple(pairs))


def _embed_single(op: np.ndarray, m: int, n: int) -> np.ndarray:
    out = np.array([[1.0 + 0j]])
    for q in range(1, n + 1):
        out = np.kron(out, op if q == m else I2)
    return out


def dense_h1(spec: HamiltonianSpec) -> np.ndarray:
    """H1 as a dense 2^n x 2^n Hermitian matrix (small n only)."""
    check_dense_size(spec.n)
    dim = 2**spec.n
    out = np.zeros((dim, dim), dtype=complex)
    for m, a_m in enumerate(spec.a, start=1):
        out += a_m * _embed_single(H, m, spec.n)
    return out


def dense_h2(spec: HamiltonianSpec) -> np.ndarray:
    """H2 as a dense 2^n x 2^n diagonal matrix (small n only)."""
    check_dense_size(spec.n)
    dim = 2**spec.n
    diag = np.zeros(dim)
    idx = np.arange(dim)
    for m, b_m in enumerate(spec.b, start=1):
        signs = 1.0 - 2.0 * ((idx >> (spec.n - m)) & 1)
        diag = diag + b_m * signs
    for m, c_m in enumerate(spec.c, start=1):
        s1 = 1.0 - 2.0 * ((idx >> (spec.n - m)) & 1)
        s2 = 1.0 - 2.0 * ((idx >> (spec.n - m - 1)) & 1)
        diag = diag + c_m * s1 * s2
    return np.diag(diag.astype(complex))


def dense_evolution(evo: FactorizedEvolution) -> np.ndarray:
    """Assemble the factorized evolution into one dense matrix (small n only)."""
    check_dense_size(evo.n)
    out = np.array([[1.0 + 0j]])
    for factor in evo.singles:
        out = np.kron(out, factor)
    dim = 2**evo.n
    idx = np.arange(dim)
    for m, phases in enumerate(evo.pairs, start=1):
        b1 = (idx >> (evo.n - m)) & 1
        b2 = (idx >> (evo.n - m - 1)) & 1
        out = out * phases[2 * b1 + b2][:, None]
    return out
