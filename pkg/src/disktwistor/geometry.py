"""Rotationally invariant disk metrics: curvature, frames, isothermal coordinates.

The model family has polar metric a(r)^2 dr^2 + r^2 dtheta^2 on the disk of
radius R, with a(r) = 1 + kappa r^2 in the closed-form case and
a(r) = 1 + r^2 * atilde(r^2) for a general smooth radial profile.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ._roots import monotone_root
from .errors import DomainError

#: relative slack allowed on boundary-grid inputs before raising DomainError
BOUNDARY_SLACK = 1e-9


@dataclass(frozen=True)
class DiskSpec:
    """Disk of radius R with the one-parameter metric a(r) = 1 + kappa*r^2.

    Requires R > 0 and 1 + kappa*R^2 > 0 (so a > 0 on the whole disk and the
    radial coordinate change is invertible).
    """

    R: float
    kappa: float

    def __post_init__(self) -> None:
        if not self.R > 0.0:
            raise DomainError(f"radius must be positive, got {self.R}")
        if not 1.0 + self.kappa * self.R**2 > 0.0:
            raise DomainError(
                f"need 1 + kappa*R^2 > 0, got kappa={self.kappa}, R={self.R}"
            )

    @property
    def R1(self) -> float:
        """Radius of the isothermal image disk, R * exp(kappa R^2 / 2)."""
        return self.R * math.exp(self.kappa * self.R**2 / 2.0)

    @property
    def R2(self) -> float:
        """Sup of |w| over the ball bundle for kappa >= 0: 2R * exp(kappa R^2)."""
        return 2.0 * self.R * math.exp(self.kappa * self.R**2)

    def a(self, r):
        return 1.0 + self.kappa * np.asarray(r) ** 2

    def a_tilde(self, s):
        return np.full_like(np.asarray(s, dtype=float), self.kappa)

    def a_tilde_prime(self, s):
        return np.zeros_like(np.asarray(s, dtype=float))

    def a_max(self) -> float:
        return max(1.0, 1.0 + self.kappa * self.R**2)

    def curvature_s(self, s):
        """Gaussian curvature as a function of s = r^2."""
        return 2.0 * self.kappa / (1.0 + self.kappa * np.asarray(s)) ** 3

    def metric_coeffs(self, s):
        """Coefficients (P, P') of the inverse metric g^ij = delta_ij - P(s) x_i x_j.

        P = (a^2 - 1) / (a^2 r^2) evaluated at s = r^2; smooth down to s = 0.
        """
        s = np.asarray(s)
        one = 1.0 + self.kappa * s
        P = self.kappa * (2.0 + self.kappa * s) / one**2
        Pp = -self.kappa**2 * (3.0 + self.kappa * s) / one**3
        return P, Pp

    def profile(self) -> "RadialProfile":
        """The same metric packaged as a general radial profile."""
        kappa = self.kappa
        return RadialProfile(
            R=self.R,
            a_tilde_fn=lambda s: np.full_like(np.asarray(s, dtype=float), kappa),
            a_tilde_prime_fn=lambda s: np.zeros_like(np.asarray(s, dtype=float)),
        )


@dataclass(frozen=True)
class RadialProfile:
    """General rotationally invariant metric a(r) = 1 + r^2 * atilde(r^2).

    `a_tilde_fn` and `a_tilde_prime_fn` take s = r^2 on [0, R^2] and must
    accept numpy arrays. a(0) = 1 is forced by the representation; a > 0 on
    [0, R] is checked on a sample grid.
    """

    R: float
    a_tilde_fn: Callable
    a_tilde_prime_fn: Callable
    _amax: float = field(init=False, repr=False, default=0.0)

    def __post_init__(self) -> None:
        if not self.R > 0.0:
            raise DomainError(f"radius must be positive, got {self.R}")
        r = np.linspace(0.0, self.R, 513)
        a = self.a(r)
        if np.any(a <= 0.0):
            raise DomainError("profile a(r) must be positive on [0, R]")
        object.__setattr__(self, "_amax", float(np.max(a)))

    def a(self, r):
        r = np.asarray(r)
        s = r**2
        return 1.0 + s * self.a_tilde_fn(s)

    def a_tilde(self, s):
        return self.a_tilde_fn(np.asarray(s))

    def a_tilde_prime(self, s):
        return self.a_tilde_prime_fn(np.asarray(s))

    def a_max(self) -> float:
        return self._amax

    def curvature_s(self, s):
        """K = 2(atilde + s atilde') / a^3 at s = r^2, from K = a'/(a^3 r)."""
        s = np.asarray(s)
        at = self.a_tilde_fn(s)
        atp = self.a_tilde_prime_fn(s)
        a = 1.0 + s * at
        return 2.0 * (at + s * atp) / a**3

    def metric_coeffs(self, s):
        s = np.asarray(s)
        at = self.a_tilde_fn(s)
        atp = self.a_tilde_prime_fn(s)
        a = 1.0 + s * at
        A = a**2
        q = 2.0 * at + s * at**2
        qp = 2.0 * atp + at**2 + 2.0 * s * at * atp
        Ap = 2.0 * a * (at + s * atp)
        P = q / A
        Pp = (qp * A - q * Ap) / A**2
        return P, Pp


Disk = DiskSpec | RadialProfile


@dataclass(frozen=True)
class MetricMatrix:
    """Components of the metric at a Cartesian point."""

    g11: float
    g12: float
    g22: float


def _check_in_disk(disk: Disk, s: float) -> None:
    R2 = disk.R**2
    if s < 0.0 or s > R2 * (1.0 + 2.0 * BOUNDARY_SLACK):
        raise DomainError(f"point with r^2={s} outside disk of radius {disk.R}")


def gaussian_curvature(disk: Disk, r: float) -> float:
    """Gaussian curvature at radius r; 2*kappa/(1+kappa r^2)^3 for the model family."""
    if r < 0.0 or r > disk.R * (1.0 + BOUNDARY_SLACK):
        raise DomainError(f"radius {r} outside [0, {disk.R}]")
    return float(disk.curvature_s(r * r))


def metric_cartesian(disk: Disk, x: float, y: float) -> MetricMatrix:
    """Metric components g_ij = delta_ij + (2*atilde + s*atilde^2) x_i x_j, s = x^2+y^2."""
    s = x * x + y * y
    _check_in_disk(disk, s)
    at = float(disk.a_tilde(s))
    q = 2.0 * at + s * at * at
    return MetricMatrix(g11=1.0 + q * x * x, g12=q * x * y, g22=1.0 + q * y * y)


def metric_inner(disk: Disk, x: float, y: float, u, v) -> float:
    """g-inner product of tangent vectors u, v at (x, y)."""
    s = x * x + y * y
    at = float(disk.a_tilde(s))
    q = 2.0 * at + s * at * at
    return float(u[0] * v[0] + u[1] * v[1] + q * (x * u[0] + y * u[1]) * (x * v[0] + y * v[1]))


def isothermal(disk: DiskSpec, z: complex) -> complex:
    """Holomorphic coordinate zeta = z * exp(kappa |z|^2 / 2), mapping D_R onto D_R1."""
    if abs(z) > disk.R * (1.0 + BOUNDARY_SLACK):
        raise DomainError(f"|z|={abs(z)} exceeds R={disk.R}")
    return z * math.exp(disk.kappa * abs(z) ** 2 / 2.0)


def isothermal_inverse(disk: DiskSpec, zeta: complex) -> complex:
    """Inverse of the isothermal coordinate on D_R1.

    Solves rho * exp(kappa rho^2 / 2) = |zeta| on [0, R]; the left side is
    strictly increasing since its derivative (1 + kappa rho^2) e^{kappa rho^2/2}
    is positive under the standing hypothesis. Inputs overshooting R1 by less
    than the boundary slack are clamped; larger overshoots are domain errors.
    """
    m = abs(zeta)
    R1 = disk.R1
    if m > R1 * (1.0 + BOUNDARY_SLACK):
        raise DomainError(f"|zeta|={m} exceeds R1={R1}")
    if m == 0.0:
        return 0.0 + 0.0j
    m = min(m, R1)
    kappa = disk.kappa

    def f(rho: float) -> float:
        return rho * math.exp(kappa * rho**2 / 2.0) - m

    def fp(rho: float) -> float:
        return (1.0 + kappa * rho**2) * math.exp(kappa * rho**2 / 2.0)

    rho = monotone_root(f, fp, 0.0, disk.R, tol=1e-14)
    return zeta * math.exp(-kappa * rho**2 / 2.0)


def frame_section(disk: Disk, x: float, y: float):
    """Unit section e of the circle bundle, smooth across the origin.

    Pushforward of cos(theta) e_r - sin(theta) e_theta; in Cartesian
    components e = ((a - x^2 at)/a, -x y at / a) with at = atilde(x^2+y^2).
    """
    s = x * x + y * y
    _check_in_disk(disk, s)
    at = float(disk.a_tilde(s))
    a = 1.0 + s * at
    return np.array([(a - x * x * at) / a, -x * y * at / a])


def frame_pair(disk: Disk, x: float, y: float):
    """Oriented g-orthonormal pair (e, i*e) at (x, y), both smooth at the origin."""
    s = x * x + y * y
    _check_in_disk(disk, s)
    at = float(disk.a_tilde(s))
    a = 1.0 + s * at
    e = np.array([(a - x * x * at) / a, -x * y * at / a])
    ie = np.array([-x * y * at / a, (a - y * y * at) / a])
    return e, ie
