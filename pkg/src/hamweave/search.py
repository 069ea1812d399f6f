"""Numerical search for phase coincidences.

Given term coefficients w_j and per-term target phases, find a time t at
which every accumulated phase w_j t sits near its target on the circle of
circumference pi.  The pi-circle (not 2 pi) is the physical one: a half-turn
of any term here is the identity up to global phase.

The scheme's existence argument is density of the phase trajectory for
incommensurate coefficients; it comes with no algorithm, so this module
scans a uniform time grid and polishes the best grid points locally.  The
longer the horizon, the better the achievable coincidence; nothing stronger
is promised.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

_PI = math.pi

_CHUNK = 1 << 20
_MAX_CANDIDATES = 4096
_REFINE_POINTS = 65
_REFINE_ROUNDS = 4
MAX_CONVERGENT_DEPTH = 40


@dataclass(frozen=True)
class CoincidenceProblem:
    """What to search for: coefficients, targets, and scan parameters.

    targets live in [0, pi); tolerance is the acceptable max residual in
    radians; the grid runs t = 0, r, 2r, ... up to t_max with r = resolution.
    The resolution must stay below pi/(2 max coefficient) so no term can
    sweep more than a half-turn between neighbouring grid points.
    """

    coefficients: tuple[float, ...]
    targets: tuple[float, ...]
    tolerance: float
    t_max: float
    resolution: float

    def __post_init__(self):
        coeffs = tuple(float(x) for x in self.coefficients)
        targets = tuple(float(x) for x in self.targets)
        object.__setattr__(self, "coefficients", coeffs)
        object.__setattr__(self, "targets", targets)
        if len(coeffs) == 0:
            raise ValueError("need at least one coefficient")
        if len(coeffs) != len(targets):
            raise ValueError(
                f"{len(coeffs)} coefficients but {len(targets)} targets"
            )
        for w in coeffs:
            if not (math.isfinite(w) and w > 0.0):
                raise ValueError(f"coefficients must be positive, got {w!r}")
        for g in targets:
            if not (0.0 <= g < _PI):
                raise ValueError(f"targets must lie in [0, pi), got {g!r}")
        if not (0.0 < self.tolerance < _PI / 2):
            raise ValueError(f"tolerance must be in (0, pi/2), got {self.tolerance!r}")
        if not (math.isfinite(self.t_max) and self.t_max > 0.0):
            raise ValueError(f"t_max must be positive, got {self.t_max!r}")
        guard = _PI / (2.0 * max(coeffs))
        if not (0.0 < self.resolution < guard):
            raise ValueError(
                f"resolution must be in (0, {guard:.6g}) for these coefficients, "
                f"got {self.resolution!r}"
            )


@dataclass(frozen=True)
class CoincidenceResult:
    """Best time found, its max residual, and the per-term residuals."""

    time: float
    error: float
    residuals: tuple[float, ...]
    met_tolerance: bool

    def to_dict(self) -> dict:
        return {
            "time": self.time,
            "error": self.error,
            "residuals": list(self.residuals),
            "met_tolerance": self.met_tolerance,
        }


def _residual_grid(coeffs: np.ndarray, targets: np.ndarray, ts: np.ndarray) -> np.ndarray:
    """Per-term circular residuals, shape (terms, len(ts))."""
    phases = np.remainder(np.outer(coeffs, ts), _PI)
    d = np.abs(phases - targets[:, None])
    return np.minimum(d, _PI - d)


def phase_error(coefficients, targets, t: float) -> tuple[float, np.ndarray]:
    """Max and per-term circular distance (mod pi) from the target phases."""
    coeffs = np.asarray(coefficients, dtype=float)
    goals = np.asarray(targets, dtype=float)
    if coeffs.shape != goals.shape or coeffs.ndim != 1 or coeffs.size == 0:
        raise ValueError("coefficients and targets must be equal-length 1-d arrays")
    res = _residual_grid(coeffs, goals, np.array([float(t)]))[:, 0]
    return float(res.max()), res


def _refine(
    coeffs: np.ndarray, targets: np.ndarray, center: float, radius: float, t_max: float
) -> tuple[float, float]:
    """Deterministic sectioned minimization of the max residual near a grid point.

    Repeatedly samples the window densely and shrinks around the best
    sample.  The center itself is always evaluated, so the result is never
    worse than the grid value at the center.
    """
    lo = max(0.0, center - radius)
    hi = min(t_max, center + radius)
    best_t = center
    best_err = float(_residual_grid(coeffs, targets, np.array([center])).max(axis=0)[0])
    for _ in range(_REFINE_ROUNDS):
        ts = np.linspace(lo, hi, _REFINE_POINTS)
        errs = _residual_grid(coeffs, targets, ts).max(axis=0)
        i = int(np.argmin(errs))
        if errs[i] < best_err or (errs[i] == best_err and ts[i] < best_t):
            best_err = float(errs[i])
            best_t = float(ts[i])
        step = (hi - lo) / (_REFINE_POINTS - 1)
        lo = max(0.0, ts[i] - step)
        hi = min(t_max, ts[i] + step)
    return best_t, best_err


def scan_coincidence(problem: CoincidenceProblem) -> CoincidenceResult:
    """Grid scan over [0, t_max] plus local refinement of the best grid points.

    Deterministic for fixed inputs.  The returned error is never above the
    best grid value, and near-tied grid points (within one Lipschitz step
    of the best) are refined too, so growing t_max cannot make the result
    worse.  A miss is signalled through met_tolerance, not an exception.
    """
    coeffs = np.array(problem.coefficients, dtype=float)
    targets = np.array(problem.targets, dtype=float)
    r = problem.resolution
    count = int(math.floor(problem.t_max / r)) + 1

    best_err = math.inf
    best_t = 0.0
    for start in range(0, count, _CHUNK):
        ts = (start + np.arange(min(_CHUNK, count - start), dtype=float)) * r
        errs = _residual_grid(coeffs, targets, ts).max(axis=0)
        i = int(np.argmin(errs))
        if errs[i] < best_err:
            best_err = float(errs[i])
            best_t = float(ts[i])

    def _finish(t: float, err: float) -> CoincidenceResult:
        _, residuals = phase_error(coeffs, targets, t)
        return CoincidenceResult(
            time=t,
            error=err,
            residuals=tuple(float(x) for x in residuals),
            met_tolerance=bool(err <= problem.tolerance),
        )

    if best_err == 0.0:
        return _finish(best_t, 0.0)

    # any grid point this close to the best could hide a deeper local minimum
    threshold = best_err + float(coeffs.max()) * r
    cand_t: list[np.ndarray] = []
    cand_e: list[np.ndarray] = []
    for start in range(0, count, _CHUNK):
        ts = (start + np.arange(min(_CHUNK, count - start), dtype=float)) * r
        errs = _residual_grid(coeffs, targets, ts).max(axis=0)
        keep = errs <= threshold
        cand_t.append(ts[keep])
        cand_e.append(errs[keep])
    all_t = np.concatenate(cand_t)
    all_e = np.concatenate(cand_e)
    order = np.lexsort((all_t, all_e))[:_MAX_CANDIDATES]

    final_t, final_err = best_t, best_err
    for idx in order:
        t_ref, e_ref = _refine(coeffs, targets, float(all_t[idx]), r, problem.t_max)
        if e_ref < final_err or (e_ref == final_err and t_ref < final_t):
            final_t, final_err = t_ref, e_ref
    return _finish(final_t, final_err)


def continued_fraction_convergents(x: float, depth: int) -> list[tuple[int, int]]:
    """First convergents p/q of x, at most `depth` of them.

    Stops early once the expansion terminates (rational x) or the floating
    remainder is too small to trust.
    """
    if not (math.isfinite(x) and x > 0.0):
        raise ValueError(f"x must be positive and finite, got {x!r}")
    if not 0 <= depth <= MAX_CONVERGENT_DEPTH:
        raise ValueError(f"depth must be in 0..{MAX_CONVERGENT_DEPTH}, got {depth}")
    convs: list[tuple[int, int]] = []
    p_prev, p = 0, 1
    q_prev, q = 1, 0
    value = x
    for _ in range(depth):
        a = int(math.floor(value))
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
        convs.append((p, q))
        frac = value - a
        if frac < 1e-12:
            break
        value = 1.0 / frac
    return convs


def convergent_times(ratio_num: float, ratio_den: float, depth: int) -> list[float]:
    """Candidate times from continued-fraction convergents of a coefficient ratio.

    For coefficients (ratio_num, ratio_den) and a convergent p/q of their
    ratio, t = q pi / ratio_den winds the denominator term by exactly q
    half-turns (zero residual) while the numerator term lands p-ish
    half-turns away, with mismatch shrinking as the convergents improve.
    Score the candidates with phase_error.
    """
    if not (math.isfinite(ratio_num) and ratio_num > 0.0):
        raise ValueError(f"ratio_num must be positive, got {ratio_num!r}")
    if not (math.isfinite(ratio_den) and ratio_den > 0.0):
        raise ValueError(f"ratio_den must be positive, got {ratio_den!r}")
    convs = continued_fraction_convergents(ratio_num / ratio_den, depth)
    return [q * _PI / ratio_den for _, q in convs]
