"""Geodesically invariant fiberwise-holomorphic functions with prescribed bottom mode.

For a polynomial A and degree m >= 0, the function u = (xi|_SM)^m A(w|_SM) is
invariant under the geodesic flow, has vertical Fourier modes only in degrees
k >= m, and its bottom mode is (e^{ia} e^{ith} e^{kappa r^2/2})^m A(zeta) with
zeta the isothermal coordinate. The construction is backed by the hypothesis
kappa >= 0 (so A only ever gets evaluated inside its extension disk).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .flow import (
    DEFAULT_STEPS,
    _fan_batch_states,
    _integrate_batch,
    interior_angles,
    momentum_to_velocity,
)
from .geometry import DiskSpec

#: default margin kept between sampled incidence angles and tangency
ALPHA_MARGIN = 0.05


@dataclass(frozen=True)
class HoloDifferential:
    """Degree-m holomorphic differential with polynomial coefficient A.

    coeffs are (A_0, ..., A_d) in the power series around 0; polynomials make
    the smooth-extension hypothesis automatic. Evaluations beyond
    declared_radius emit a warning.
    """

    m: int
    coeffs: tuple[complex, ...]
    declared_radius: float = math.inf

    def __post_init__(self) -> None:
        if self.m < 0:
            raise DomainError("degree m must be nonnegative")
        if len(self.coeffs) == 0:
            raise DomainError("need at least one coefficient")
        object.__setattr__(self, "coeffs", tuple(complex(c) for c in self.coeffs))

    def eval_series(self, w):
        """Evaluate A(w) by Horner's rule (numpy-broadcastable)."""
        w = np.asarray(w)
        if np.max(np.abs(w)) > self.declared_radius * (1.0 + 1e-12):
            warnings.warn(
                "evaluating the coefficient series beyond its declared radius",
                stacklevel=2,
            )
        acc = np.full_like(w, self.coeffs[-1], dtype=complex)
        for c in self.coeffs[-2::-1]:
            acc = acc * w + c
        return acc


@dataclass(frozen=True)
class FourierSpectrum:
    """Vertical Fourier modes of a function on one fiber of the unit circle bundle."""

    base: tuple[float, float]
    k_max: int
    modes: np.ndarray  # index j holds mode k = j - k_max
    mean_sq: float  # fiber average of |u|^2

    def mode(self, k: int) -> complex:
        if abs(k) > self.k_max:
            raise DomainError(f"mode {k} beyond k_max={self.k_max}")
        return complex(self.modes[k + self.k_max])

    @property
    def parseval_error(self) -> float:
        return abs(float(np.sum(np.abs(self.modes) ** 2)) - self.mean_sq)


def _sm_values_raw(kappa: float, r, theta, alpha):
    """Vectorized (w, xi) on the unit-sphere stratum in the polar chart."""
    r = np.asarray(r, dtype=float)
    e2ia = np.exp(2j * np.asarray(alpha))
    eith = np.exp(1j * np.asarray(theta))
    E = np.exp(kappa * r * r * (1.0 - e2ia) / 2.0)
    w = r * eith * (1.0 - e2ia) * E
    xi = np.exp(1j * np.asarray(alpha)) * eith * E
    return w, xi


def build_invariant(disk: DiskSpec, diff: HoloDifferential):
    """Callable u(r, theta, alpha) = (xi|_SM)^m A(w|_SM), flow-invariant.

    Warns (but still evaluates) for kappa < 0, where the extension hypothesis
    behind the construction is not verified.
    """
    if disk.kappa < 0.0:
        warnings.warn(
            "construction is only backed by the hypothesis kappa >= 0; "
            "evaluating anyway",
            stacklevel=2,
        )
    kappa, m = disk.kappa, diff.m

    def u(r, theta, alpha):
        w, xi = _sm_values_raw(kappa, r, theta, alpha)
        return xi**m * diff.eval_series(w)

    return u


def fiber_fourier(u, r: float, theta: float, n_samples: int = 256) -> FourierSpectrum:
    """Vertical Fourier modes of u at base point (r, theta) by uniform sampling.

    n_samples must be a power of two >= 64; modes are reported for
    |k| <= n_samples / 4.
    """
    n = int(n_samples)
    if n < 64 or n & (n - 1) != 0:
        raise DomainError("n_samples must be a power of two >= 64")
    alphas = 2.0 * math.pi * np.arange(n) / n
    vals = np.asarray(u(r, theta, alphas), dtype=complex)
    coeff = np.fft.fft(vals) / n  # coeff[j] multiplies e^{i j alpha}
    k_max = n // 4
    ks = np.arange(-k_max, k_max + 1)
    modes = coeff[ks % n]
    return FourierSpectrum(
        base=(r, theta),
        k_max=k_max,
        modes=modes,
        mean_sq=float(np.mean(np.abs(vals) ** 2)),
    )


def bottom_mode_expected(
    disk: DiskSpec, diff: HoloDifferential, r: float, theta: float, alpha: float
) -> complex:
    """Closed form of the lowest vertical mode of the built invariant."""
    k, m = disk.kappa, diff.m
    growth = math.exp(k * r * r / 2.0)
    zeta = r * np.exp(1j * theta) * growth
    psi = np.exp(1j * alpha) * np.exp(1j * theta) * growth
    return complex(psi**m * diff.eval_series(zeta))


def transport_residual(
    disk: DiskSpec,
    u,
    n_geodesics: int = 20,
    n_samples: int = 512,
    step_count: int = DEFAULT_STEPS,
    seed: int = 0,
) -> float:
    """Max |du/dt| of u along random boundary-issued geodesics.

    u is evaluated in the (r, theta, alpha) chart at the integrator's own
    samples and differentiated by central differences in t, so the test
    exercises the actual flow rather than any chart formula for it.
    """
    rng = np.random.default_rng(seed)
    thetas = rng.uniform(0.0, 2.0 * math.pi, n_geodesics)
    alphas = rng.uniform(
        -math.pi / 2.0 + ALPHA_MARGIN, math.pi / 2.0 - ALPHA_MARGIN, n_geodesics
    )
    st0 = _fan_batch_states(disk, thetas, alphas)
    res = _integrate_batch(disk, st0, step_count, record=True)

    worst = 0.0
    for i in range(n_geodesics):
        k = int(res.exit_step[i])
        times = np.append(res.trace_times[: k + 1], res.tau[i])
        raw = np.vstack([res.trace[: k + 1, :, i], res.exit_states[:, i]])
        stride = max(1, (k + 1) // n_samples)
        times = times[::stride]
        raw = raw[::stride]
        vx, vy = momentum_to_velocity(disk, raw[:, 0], raw[:, 1], raw[:, 2], raw[:, 3])
        r, th, al = interior_angles(disk, raw[:, 0], raw[:, 1], vx, vy)
        vals = np.asarray(u(r, th, al), dtype=complex)
        if len(vals) < 3:
            continue
        dudt = (vals[2:] - vals[:-2]) / (times[2:] - times[:-2])
        worst = max(worst, float(np.max(np.abs(dudt))))
    return worst


def eta_minus_residual(
    disk: DiskSpec,
    diff: HoloDifferential,
    sample_points,
    fd_step: float = 1e-5,
) -> float:
    """Max |eta_minus u_m| over interior sample points, by finite differences.

    eta_minus = (e^{-ia}/2)(e_r + i e_theta - i/(r a) d_alpha) in the polar
    chart, singular at the origin; points with r < 1e-2 are rejected.
    """
    k, m = disk.kappa, diff.m

    def u_m(r, theta, alpha):
        growth = np.exp(k * r * r / 2.0)
        zeta = r * np.exp(1j * theta) * growth
        psi = np.exp(1j * alpha) * np.exp(1j * theta) * growth
        return psi**m * diff.eval_series(zeta)

    h = fd_step
    worst = 0.0
    for r, theta, alpha in sample_points:
        if r < 1e-2:
            raise DomainError("eta_minus residual is evaluated away from the origin")
        a = 1.0 + k * r * r
        du_dr = (u_m(r + h, theta, alpha) - u_m(r - h, theta, alpha)) / (2.0 * h)
        du_dth = (u_m(r, theta + h, alpha) - u_m(r, theta - h, alpha)) / (2.0 * h)
        du_da = (u_m(r, theta, alpha + h) - u_m(r, theta, alpha - h)) / (2.0 * h)
        eta = (
            np.exp(-1j * alpha)
            / 2.0
            * (du_dr / a + 1j * du_dth / r - 1j * du_da / (r * a))
        )
        worst = max(worst, abs(complex(eta)))
    return worst
