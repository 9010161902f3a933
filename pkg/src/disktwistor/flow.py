"""Geodesic flow on the disk: integration, exit times, and the scattering relation.

Geodesics are integrated in a Cartesian Hamiltonian chart with
H = (1/2) g^{ij} p_i p_j and the analytic inverse metric
g^{ij} = delta_ij - P(s) x_i x_j, s = x^2 + y^2, which is regular through the
origin (the polar chart is not). A scalar Jacobi field with b(0) = 0,
bdot(0) = 1 is co-integrated alongside every trajectory on the same grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .errors import DomainError, GlancingError, TrappingError
from .geometry import Disk, DiskSpec

#: half-width of the excluded band around tangential incidence |alpha| = pi/2
DELTA_GLANCING = 1e-3

#: default number of RK4 steps per estimated crossing time 2R * max(a)
DEFAULT_STEPS = 4096

#: number of bisection refinements for the exit event
EXIT_BISECTIONS = 60

#: geodesics not exiting within TIME_CAP_FACTOR * R raise TrappingError
TIME_CAP_FACTOR = 100.0

_SPEED_TOL = 1e-10


@dataclass(frozen=True)
class FanBeamCoord:
    """Boundary fan-beam coordinates: boundary angle theta, incidence angle alpha.

    alpha encodes the tangent vector -cos(alpha) e_r - sin(alpha) e_theta,
    inward-pointing for |alpha| < pi/2. Outgoing directions carry
    alpha in (pi/2, 3pi/2) mod 2pi.
    """

    theta: float
    alpha: float


@dataclass(frozen=True)
class PhasePoint:
    """Unit-tangent-bundle point in Cartesian components."""

    x: float
    y: float
    vx: float
    vy: float


@dataclass(frozen=True)
class Trajectory:
    """Time-sampled geodesic ending on the boundary.

    `states` has one row (x, y, vx, vy) per entry of `times`; the final row is
    the bisected exit state at t = tau. Drifts are max deviations of the
    Clairaut integral x*vy - y*vx and of g(v, v) over the whole path.
    """

    times: np.ndarray
    states: np.ndarray
    tau: float
    clairaut_drift: float
    speed_drift: float


def _wrap_angle(a):
    """Reduce angle(s) to (-pi, pi]."""
    return -((-np.asarray(a) + np.pi) % (2.0 * np.pi) - np.pi)


def _q_coeff(disk: Disk, s):
    at = disk.a_tilde(s)
    return 2.0 * at + s * at**2


def velocity_to_momentum(disk: Disk, x, y, vx, vy):
    """Lower the index: p_i = g_ij v^j."""
    s = x * x + y * y
    q = _q_coeff(disk, s)
    xv = x * vx + y * vy
    return vx + q * xv * x, vy + q * xv * y


def momentum_to_velocity(disk: Disk, x, y, px, py):
    """Raise the index: v^i = g^ij p_j."""
    s = x * x + y * y
    P, _ = disk.metric_coeffs(s)
    xp = x * px + y * py
    return px - P * xp * x, py - P * xp * y


def g_speed(disk: Disk, p: PhasePoint) -> float:
    """g(v, v) at the phase point."""
    px, py = velocity_to_momentum(disk, p.x, p.y, p.vx, p.vy)
    return float(p.vx * px + p.vy * py)


def fan_to_phase(disk: Disk, fb: FanBeamCoord) -> PhasePoint:
    """Boundary phase point for fan-beam coordinates (theta, alpha), |alpha| <= pi/2."""
    alpha = float(_wrap_angle(fb.alpha))
    if abs(alpha) > math.pi / 2.0 + 1e-12:
        raise DomainError(f"|alpha|={abs(alpha)} exceeds pi/2")
    R = disk.R
    aR = float(disk.a(R))
    ct, st = math.cos(fb.theta), math.sin(fb.theta)
    ca, sa = math.cos(alpha), math.sin(alpha)
    vx = -ca * ct / aR + sa * st
    vy = -ca * st / aR - sa * ct
    return PhasePoint(x=R * ct, y=R * st, vx=vx, vy=vy)


def interior_angles(disk: Disk, x, y, vx, vy):
    """Polar-chart coordinates (r, theta, alpha) with tangent cos(a) e_r + sin(a) e_theta.

    Vectorized; valid away from the origin, where the polar frame degenerates.
    """
    x, y, vx, vy = (np.asarray(v, dtype=float) for v in (x, y, vx, vy))
    r = np.hypot(x, y)
    a = disk.a(r)
    c_r = a * (x * vx + y * vy) / r
    c_t = (x * vy - y * vx) / r
    return r, np.arctan2(y, x), np.arctan2(c_t, c_r)


def boundary_angles(disk: Disk, p: PhasePoint) -> FanBeamCoord:
    """Fan-beam coordinates of a boundary phase point (outgoing or incoming)."""
    r = math.hypot(p.x, p.y)
    a = float(disk.a(r))
    c_r = a * (p.x * p.vx + p.y * p.vy) / r
    c_t = (p.x * p.vy - p.y * p.vx) / r
    theta = math.atan2(p.y, p.x)
    alpha = math.atan2(-c_t, -c_r)
    return FanBeamCoord(theta=theta, alpha=alpha)


# ----------------------------------------------------------------------------
# batched RK4 core


def _deriv(disk: Disk, st: np.ndarray) -> np.ndarray:
    """Hamiltonian + Jacobi right-hand side for state rows (x, y, px, py, b, db)."""
    x, y, px, py, b, db = st
    s = x * x + y * y
    P, Pp = disk.metric_coeffs(s)
    xp = x * px + y * py
    K = disk.curvature_s(s)
    return np.stack(
        [
            px - P * xp * x,
            py - P * xp * y,
            Pp * xp * xp * x + P * xp * px,
            Pp * xp * xp * y + P * xp * py,
            db,
            -K * b,
        ]
    )


def _rk4_step(disk: Disk, st: np.ndarray, h) -> np.ndarray:
    k1 = _deriv(disk, st)
    k2 = _deriv(disk, st + 0.5 * h * k1)
    k3 = _deriv(disk, st + 0.5 * h * k2)
    k4 = _deriv(disk, st + h * k3)
    return st + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def _diagnostics(disk: Disk, st: np.ndarray):
    """Clairaut integral x*vy - y*vx and squared speed g(v, v) per ray."""
    x, y, px, py = st[0], st[1], st[2], st[3]
    s = x * x + y * y
    P, _ = disk.metric_coeffs(s)
    xp = x * px + y * py
    vx = px - P * xp * x
    vy = py - P * xp * y
    return x * vy - y * vx, px * vx + py * vy


@dataclass
class _BatchResult:
    exit_states: np.ndarray  # (6, N) at the bisected exit time
    tau: np.ndarray  # (N,)
    dtheta: np.ndarray  # (N,) unwrapped boundary-to-exit angular advance
    clairaut_drift: np.ndarray  # (N,) max |C(t) - C(0)|
    speed_drift: np.ndarray  # (N,) max |g(v,v) - g(v,v)(0)|
    trace_times: np.ndarray | None = None  # (n_rec,) shared sample times
    trace: np.ndarray | None = None  # (n_rec, 6, N), rows frozen after exit
    exit_step: np.ndarray | None = None  # (N,) index of last pre-exit sample


def _integrate_batch(
    disk: Disk,
    st0: np.ndarray,
    step_count: int = DEFAULT_STEPS,
    time_cap: float | None = None,
    record: bool = False,
) -> _BatchResult:
    """Integrate a batch of rays to boundary exit with synchronized fixed steps.

    The step is h = 2R*max(a)/step_count. A ray is frozen at the last state
    inside the closed disk once a step would cross |x| = R; the exact exit is
    then located by EXIT_BISECTIONS bisections of the final partial step.
    """
    R = disk.R
    R2 = R * R
    if time_cap is None:
        time_cap = TIME_CAP_FACTOR * R
    h = 2.0 * R * disk.a_max() / step_count
    n_max = int(math.ceil(time_cap / h)) + 1

    st = np.array(st0, dtype=float)
    n = st.shape[1]
    active = np.ones(n, dtype=bool)
    pre_state = st.copy()
    pre_step = np.zeros(n, dtype=np.int64)
    dtheta = np.zeros(n)
    theta_prev = np.arctan2(st[1], st[0])
    C0, E0 = _diagnostics(disk, st)
    cdrift = np.zeros(n)
    edrift = np.zeros(n)
    traces = [st.copy()] if record else None

    for k in range(n_max):
        if not active.any():
            break
        new = _rk4_step(disk, st, h)
        out = new[0] ** 2 + new[1] ** 2 > R2
        crossed = active & out
        if crossed.any():
            pre_state[:, crossed] = st[:, crossed]
            pre_step[crossed] = k
            active &= ~out
        adv = active
        if adv.any():
            st[:, adv] = new[:, adv]
            th = np.arctan2(st[1, adv], st[0, adv])
            dtheta[adv] += _wrap_angle(th - theta_prev[adv])
            theta_prev[adv] = th
            C, E = _diagnostics(disk, st[:, adv])
            cdrift[adv] = np.maximum(cdrift[adv], np.abs(C - C0[adv]))
            edrift[adv] = np.maximum(edrift[adv], np.abs(E - E0[adv]))
        if record:
            traces.append(st.copy())
    else:
        if active.any():
            raise TrappingError(
                f"{int(active.sum())} geodesic(s) still inside after t={time_cap}"
            )

    # locate the exit inside the final step of each ray by bisection on the
    # substep length; a single RK4 substep from the pre-exit state is smooth in h
    hlo = np.zeros(n)
    hhi = np.full(n, h)
    for _ in range(EXIT_BISECTIONS):
        hm = 0.5 * (hlo + hhi)
        trial = _rk4_step(disk, pre_state, hm)
        out = trial[0] ** 2 + trial[1] ** 2 > R2
        hhi = np.where(out, hm, hhi)
        hlo = np.where(out, hlo, hm)
    h_exit = 0.5 * (hlo + hhi)
    exit_states = _rk4_step(disk, pre_state, h_exit)
    tau = pre_step * h + h_exit

    th_exit = np.arctan2(exit_states[1], exit_states[0])
    th_pre = np.arctan2(pre_state[1], pre_state[0])
    dtheta += _wrap_angle(th_exit - th_pre)

    C, E = _diagnostics(disk, exit_states)
    cdrift = np.maximum(cdrift, np.abs(C - C0))
    edrift = np.maximum(edrift, np.abs(E - E0))

    res = _BatchResult(
        exit_states=exit_states,
        tau=tau,
        dtheta=dtheta,
        clairaut_drift=cdrift,
        speed_drift=edrift,
    )
    if record:
        res.trace_times = h * np.arange(len(traces))
        res.trace = np.array(traces)
        res.exit_step = pre_step
    return res


def _fan_batch_states(disk: Disk, thetas, alphas) -> np.ndarray:
    """Initial (x, y, px, py, b, db) rows for boundary fan points."""
    thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
    alphas = np.atleast_1d(np.asarray(alphas, dtype=float))
    R = disk.R
    aR = float(disk.a(R))
    ct, stn = np.cos(thetas), np.sin(thetas)
    ca, sa = np.cos(alphas), np.sin(alphas)
    x = R * ct
    y = R * stn
    vx = -ca * ct / aR + sa * stn
    vy = -ca * stn / aR - sa * ct
    px, py = velocity_to_momentum(disk, x, y, vx, vy)
    zero = np.zeros_like(x)
    return np.stack([x, y, px, py, zero, np.ones_like(x)])


def _check_inward(disk: Disk, p: PhasePoint) -> None:
    r2 = p.x * p.x + p.y * p.y
    R2 = disk.R**2
    if r2 > R2 * (1.0 + 1e-9):
        raise DomainError("phase point outside the closed disk")
    speed = g_speed(disk, p)
    if abs(speed - 1.0) > _SPEED_TOL:
        raise DomainError(f"velocity is not g-unit: g(v,v)={speed}")
    if r2 >= R2 * (1.0 - 1e-12):
        if p.x * p.vx + p.y * p.vy > 1e-12:
            raise DomainError("boundary phase point is outward-pointing")


def integrate_geodesic(
    disk: Disk,
    p0: PhasePoint,
    step_count: int = DEFAULT_STEPS,
    time_cap: float | None = None,
) -> Trajectory:
    """Integrate one geodesic from p0 until it exits the disk.

    Raises TrappingError if the ray does not exit before the time cap
    (default 100*R), and DomainError for invalid initial data.
    """
    _check_inward(disk, p0)
    px, py = velocity_to_momentum(disk, p0.x, p0.y, p0.vx, p0.vy)
    st0 = np.array([[p0.x], [p0.y], [px], [py], [0.0], [1.0]])
    res = _integrate_batch(disk, st0, step_count, time_cap, record=True)
    k = int(res.exit_step[0])
    times = np.append(res.trace_times[: k + 1], res.tau[0])
    raw = np.vstack([res.trace[: k + 1, :, 0], res.exit_states[:, 0]])
    vx, vy = momentum_to_velocity(disk, raw[:, 0], raw[:, 1], raw[:, 2], raw[:, 3])
    states = np.column_stack([raw[:, 0], raw[:, 1], vx, vy])
    return Trajectory(
        times=times,
        states=states,
        tau=float(res.tau[0]),
        clairaut_drift=float(res.clairaut_drift[0]),
        speed_drift=float(res.speed_drift[0]),
    )


def _exit_fan(disk: Disk, res: _BatchResult, i: int) -> FanBeamCoord:
    ex = res.exit_states[:, i]
    vx, vy = momentum_to_velocity(disk, ex[0], ex[1], ex[2], ex[3])
    return boundary_angles(disk, PhasePoint(x=ex[0], y=ex[1], vx=vx, vy=vy))


def scattering_relation_numeric(
    disk: Disk, fb: FanBeamCoord, step_count: int = DEFAULT_STEPS
) -> FanBeamCoord:
    """Scattering relation on the boundary, by integrating to the exit.

    Incoming directions (|alpha| < pi/2 - delta) are flowed forward; outgoing
    ones are handled through the reversal (x, v) -> (x, -v), which maps them
    to incoming fan coordinates at the same boundary point. Directions inside
    the glancing band raise GlancingError.
    """
    alpha = float(_wrap_angle(fb.alpha))
    if abs(alpha) < math.pi / 2.0 - DELTA_GLANCING:
        st0 = _fan_batch_states(disk, [fb.theta], [alpha])
        res = _integrate_batch(disk, st0, step_count)
        out = _exit_fan(disk, res, 0)
        theta_out = float(_wrap_angle(fb.theta + res.dtheta[0]))
        return FanBeamCoord(theta=theta_out, alpha=out.alpha)
    if abs(alpha) > math.pi / 2.0 + DELTA_GLANCING:
        reversed_in = FanBeamCoord(theta=fb.theta, alpha=float(_wrap_angle(alpha + math.pi)))
        fwd = scattering_relation_numeric(disk, reversed_in, step_count)
        return FanBeamCoord(theta=fwd.theta, alpha=float(_wrap_angle(fwd.alpha + math.pi)))
    raise GlancingError(f"alpha={alpha} within {DELTA_GLANCING} of tangency")


def _s_from_dtheta(dtheta: float, alpha: float) -> float:
    # the winding sign is -sign(alpha) (Clairaut), fixing the mod-2pi branch of
    # theta' = theta + pi + 2 s(alpha); near-radial rays take either lift
    if abs(alpha) < 1e-9:
        sgn = 1.0 if dtheta >= 0.0 else -1.0
    else:
        sgn = 1.0 if alpha < 0.0 else -1.0
    return (dtheta - sgn * math.pi) / 2.0


def scattering_function_numeric(
    disk: Disk,
    alpha: float,
    theta: float = 0.0,
    step_count: int = DEFAULT_STEPS,
) -> float:
    """Scattering function s(alpha) from the integrated angular advance.

    Tangential values are supplied by the symmetry s(+-pi/2) = +-pi/2; other
    directions inside the glancing band raise GlancingError.
    """
    if abs(abs(alpha) - math.pi / 2.0) < 1e-12:
        return math.copysign(math.pi / 2.0, alpha)
    if abs(alpha) > math.pi / 2.0 - DELTA_GLANCING:
        raise GlancingError(f"alpha={alpha} within {DELTA_GLANCING} of tangency")
    st0 = _fan_batch_states(disk, [theta], [alpha])
    res = _integrate_batch(disk, st0, step_count)
    return _s_from_dtheta(float(res.dtheta[0]), alpha)


def scattering_function_sweep(
    disk: Disk,
    alphas,
    theta: float = 0.0,
    step_count: int = DEFAULT_STEPS,
) -> np.ndarray:
    """Vectorized s(alpha) over a grid of incidence angles (one shared batch)."""
    alphas = np.asarray(alphas, dtype=float)
    if np.any(np.abs(alphas) > math.pi / 2.0 - DELTA_GLANCING):
        raise GlancingError("sweep contains angles inside the glancing band")
    st0 = _fan_batch_states(disk, np.full_like(alphas, theta), alphas)
    res = _integrate_batch(disk, st0, step_count)
    return np.array(
        [_s_from_dtheta(float(d), float(a)) for d, a in zip(res.dtheta, alphas)]
    )


def scattering_relation_sweep(
    disk: Disk,
    thetas,
    alphas,
    step_count: int = DEFAULT_STEPS,
):
    """Vectorized scattering relation for incoming grids (one shared batch).

    Returns (thetas_out, alphas_out); agrees with pointwise
    scattering_relation_numeric.
    """
    thetas = np.asarray(thetas, dtype=float)
    alphas = np.asarray(alphas, dtype=float)
    if np.any(np.abs(_wrap_angle(alphas)) > math.pi / 2.0 - DELTA_GLANCING):
        raise GlancingError("sweep contains angles inside the glancing band")
    st0 = _fan_batch_states(disk, thetas, alphas)
    res = _integrate_batch(disk, st0, step_count)
    thetas_out = _wrap_angle(thetas + res.dtheta)
    alphas_out = np.array([_exit_fan(disk, res, i).alpha for i in range(len(alphas))])
    return thetas_out, alphas_out


def scattering_function_closed(disk: DiskSpec, alpha: float) -> float:
    """Closed-form scattering function alpha - (kappa R^2 / 2) sin(2 alpha)."""
    return alpha - disk.kappa * disk.R**2 / 2.0 * math.sin(2.0 * alpha)


def scattering_quadrature_oracle(disk: Disk, alpha: float) -> float:
    """Independent s(alpha) for alpha in (-pi/2, 0) by adaptive quadrature.

    Uses the vertex radius rho = -R sin(alpha) and the substitution
    u = sqrt(r^2 - rho^2), which turns the angular-advance integral into
    rho * int_0^{R cos(alpha)} a(sqrt(u^2 + rho^2)) / (u^2 + rho^2) du,
    a smooth integrand; s(alpha) is that integral minus pi/2.
    """
    if not -math.pi / 2.0 < alpha < 0.0:
        raise DomainError("quadrature oracle requires alpha in (-pi/2, 0)")
    R = disk.R
    rho = -R * math.sin(alpha)
    upper = R * math.cos(alpha)
    rho2 = rho * rho

    def integrand(u: float) -> float:
        return float(disk.a(math.sqrt(u * u + rho2))) / (u * u + rho2)

    val, err = quad(integrand, 0.0, upper, epsabs=1e-13, epsrel=1e-13, limit=200)
    if err > 1e-9:
        raise RuntimeError(f"quadrature failed to converge: err={err}")
    return rho * val - math.pi / 2.0
