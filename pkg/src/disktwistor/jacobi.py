"""Jacobi fields along boundary-issued geodesics and the simplicity classifier.

The scalar Jacobi field b solves bdot2 + K(gamma(t)) b = 0 with b(0) = 0,
bdot(0) = 1 and is co-integrated with the geodesic, so interior zeros of b
mark conjugate points. Simplicity is decided both by the sign of the
scattering-function derivative and by the absence of Jacobi zeros; the two
criteria must agree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ClassifierMismatchError, GlancingError
from .flow import (
    DEFAULT_STEPS,
    DELTA_GLANCING,
    _fan_batch_states,
    _integrate_batch,
    scattering_function_sweep,
)
from .geometry import Disk, DiskSpec

#: |b(tau)| / (2R cos a) below this counts as an endpoint (boundary) conjugate zero
ENDPOINT_ZERO_TOL = 1e-8

#: bisection tolerance in t for interior zero refinement
ZERO_T_TOL = 1e-10


@dataclass(frozen=True)
class JacobiTrace:
    """Samples of the Jacobi field along one boundary-issued geodesic."""

    alpha: float
    times: np.ndarray
    b_values: np.ndarray
    b_dot_values: np.ndarray
    b_at_exit: float
    tau: float


@dataclass
class SimplicityReport:
    """Outcome of the conjugate-point scan over incidence angles."""

    is_simple: bool
    min_sprime: float
    conjugate_pairs: list[tuple[float, float]]
    criteria_agree: bool
    tangential_suspects: list[tuple[float, float]] = field(default_factory=list)


def jacobi_field(
    disk: Disk, alpha: float, step_count: int = DEFAULT_STEPS
) -> JacobiTrace:
    """Integrate the Jacobi field along the fan-beam geodesic at incidence alpha."""
    if abs(alpha) > math.pi / 2.0 - DELTA_GLANCING:
        raise GlancingError(f"alpha={alpha} within {DELTA_GLANCING} of tangency")
    st0 = _fan_batch_states(disk, [0.0], [alpha])
    res = _integrate_batch(disk, st0, step_count, record=True)
    k = int(res.exit_step[0])
    times = np.append(res.trace_times[: k + 1], res.tau[0])
    b = np.append(res.trace[: k + 1, 4, 0], res.exit_states[4, 0])
    db = np.append(res.trace[: k + 1, 5, 0], res.exit_states[5, 0])
    return JacobiTrace(
        alpha=alpha,
        times=times,
        b_values=b,
        b_dot_values=db,
        b_at_exit=float(res.exit_states[4, 0]),
        tau=float(res.tau[0]),
    )


def sprime_closed(disk: DiskSpec, alpha: float) -> float:
    """Derivative of the closed-form scattering function: 1 - kappa R^2 cos(2 alpha)."""
    return 1.0 - disk.kappa * disk.R**2 * math.cos(2.0 * alpha)


def _sprime_values(disk: Disk, alphas: np.ndarray, step_count: int) -> np.ndarray:
    """s'(alpha) on a grid: closed form for the model family, else a central
    finite difference of the numeric scattering function."""
    if isinstance(disk, DiskSpec):
        return 1.0 - disk.kappa * disk.R**2 * np.cos(2.0 * alphas)
    h = 1e-5
    sp = scattering_function_sweep(disk, alphas + h, step_count=step_count)
    sm = scattering_function_sweep(disk, alphas - h, step_count=step_count)
    return (sp - sm) / (2.0 * h)


def sprime_identity_residual(
    disk: Disk, alpha: float, step_count: int = DEFAULT_STEPS
) -> float:
    """|s'(alpha) - b(alpha, tau) / (2 R cos alpha)|, both sides independent."""
    trace = jacobi_field(disk, alpha, step_count)
    lhs = float(_sprime_values(disk, np.array([alpha]), step_count)[0])
    rhs = trace.b_at_exit / (2.0 * disk.R * math.cos(alpha))
    return abs(lhs - rhs)


def _hermite_zero(t0, t1, b0, b1, d0, d1) -> float:
    """Zero of the cubic Hermite interpolant on [t0, t1], given b0*b1 < 0.

    Bisection on the interpolant down to ZERO_T_TOL; the interpolant matches
    the RK4 samples and derivatives, so its zero is accurate to O(h^4).
    """
    dt = t1 - t0

    def interp(t: float) -> float:
        s = (t - t0) / dt
        h00 = (1 + 2 * s) * (1 - s) ** 2
        h10 = s * (1 - s) ** 2
        h01 = s * s * (3 - 2 * s)
        h11 = s * s * (s - 1)
        return h00 * b0 + h10 * dt * d0 + h01 * b1 + h11 * dt * d1

    lo, hi = t0, t1
    flo = b0
    while hi - lo > ZERO_T_TOL:
        mid = 0.5 * (lo + hi)
        fm = interp(mid)
        if (fm < 0.0) == (flo < 0.0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _ray_zeros(times, b, db, tau, b_exit, two_r_cos) -> tuple[list[float], list[float]]:
    """Interior sign-change zeros of b on (0, tau], plus tangential suspects."""
    zeros: list[float] = []
    suspects: list[float] = []
    n = len(times)
    scale = max(1.0, float(np.max(np.abs(b))))
    for j in range(1, n - 1):
        if b[j] == 0.0:
            zeros.append(float(times[j]))
            continue
        if b[j] * b[j + 1] < 0.0:
            zeros.append(
                _hermite_zero(times[j], times[j + 1], b[j], b[j + 1], db[j], db[j + 1])
            )
        elif abs(b[j]) < 1e-10 * scale:
            # near-zero sample without a sign change: possible tangential zero
            if abs(b[j]) <= abs(b[j - 1]) and abs(b[j]) <= abs(b[j + 1]):
                suspects.append(float(times[j]))
    if abs(b_exit) / two_r_cos < ENDPOINT_ZERO_TOL and not any(
        abs(z - tau) < 1e-6 for z in zeros
    ):
        zeros.append(float(tau))
    return zeros, suspects


def conjugate_scan(
    disk: Disk,
    alpha_grid_size: int = 101,
    step_count: int = DEFAULT_STEPS,
    strict: bool = True,
) -> SimplicityReport:
    """Scan incidence angles for conjugate points and classify simplicity.

    Classifies by the sign of min s' over the grid and, independently, by
    detected zeros of the Jacobi field on (0, tau]. With strict=True a
    disagreement between the two criteria raises ClassifierMismatchError.
    """
    if alpha_grid_size < 16:
        raise ValueError("alpha grid must have at least 16 points")
    alphas = np.linspace(
        -math.pi / 2.0 + DELTA_GLANCING, math.pi / 2.0 - DELTA_GLANCING, alpha_grid_size
    )
    st0 = _fan_batch_states(disk, np.zeros_like(alphas), alphas)
    res = _integrate_batch(disk, st0, step_count, record=True)

    pairs: list[tuple[float, float]] = []
    suspects: list[tuple[float, float]] = []
    for i, alpha in enumerate(alphas):
        k = int(res.exit_step[i])
        times = np.append(res.trace_times[: k + 1], res.tau[i])
        b = np.append(res.trace[: k + 1, 4, i], res.exit_states[4, i])
        db = np.append(res.trace[: k + 1, 5, i], res.exit_states[5, i])
        zeros, susp = _ray_zeros(
            times,
            b,
            db,
            float(res.tau[i]),
            float(res.exit_states[4, i]),
            2.0 * disk.R * math.cos(alpha),
        )
        pairs.extend((float(alpha), z) for z in zeros)
        suspects.extend((float(alpha), t) for t in susp)

    sprimes = _sprime_values(disk, alphas, step_count)
    min_sprime = float(np.min(sprimes))
    simple_by_sprime = min_sprime > 0.0
    simple_by_zeros = len(pairs) == 0
    agree = simple_by_sprime == simple_by_zeros
    if strict and not agree:
        raise ClassifierMismatchError(
            f"min s'={min_sprime} vs {len(pairs)} Jacobi zero(s): "
            "criteria disagree beyond grid resolution"
        )
    return SimplicityReport(
        is_simple=simple_by_sprime,
        min_sprime=min_sprime,
        conjugate_pairs=pairs,
        criteria_agree=agree,
        tangential_suspects=suspects,
    )
