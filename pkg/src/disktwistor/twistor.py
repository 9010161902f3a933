"""The twistor-space chart, the blow-down map, and its inversion.

Points of the ball bundle are written (z, nu) with z the Cartesian position
(|z| <= R) and nu the fiber coordinate (|nu| <= 1) relative to the global
smooth frame section; |nu| = 1 is the unit-sphere stratum where the map
collapses (but separates) geodesics. The blow-down map is

    w = (z - conj(z) nu^2) E,   xi = nu E,   E = exp(kappa (z conj(z) - conj(z)^2 nu^2) / 2).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from ._roots import monotone_root
from .errors import BoundaryDegenerateError, DomainError, NotInImageError
from .flow import PhasePoint
from .geometry import DiskSpec, frame_pair, metric_inner

#: fiber radii within this sliver of |nu| = 1 are treated as boundary-degenerate
NU_BOUNDARY_SLIVER = 1e-9

#: |xi| below this is treated as exactly zero in the inversion
XI_ZERO_TOL = 1e-13

#: maximum allowed forward-map roundtrip error in beta_inverse
ROUNDTRIP_TOL = 1e-9


@dataclass(frozen=True)
class BallPoint:
    """Chart point (z, nu) of the ball bundle."""

    z: complex
    nu: complex


@dataclass(frozen=True)
class TwistorValue:
    """Image point (w, xi) of the blow-down map."""

    w: complex
    xi: complex


@dataclass(frozen=True)
class XiCoefficients:
    """Coefficients of the chart vector field in the basis (dz, dzbar, dnu, dnubar)."""

    c_z: complex
    c_zbar: complex
    c_nu: complex
    c_nubar: complex


def _check_ball_point(disk: DiskSpec, p: BallPoint) -> None:
    if abs(p.z) > disk.R * (1.0 + 1e-12) + 1e-12:
        raise DomainError(f"|z|={abs(p.z)} exceeds R={disk.R}")
    if abs(p.nu) > 1.0 + 1e-12:
        raise DomainError(f"|nu|={abs(p.nu)} exceeds 1")


def _exponent(kappa: float, z, nu):
    return kappa * (z * np.conj(z) - np.conj(z) ** 2 * nu**2) / 2.0


def _beta_raw(kappa: float, z, nu):
    """Unvalidated closed forms, numpy-broadcastable (entire in z, zbar, nu)."""
    E = np.exp(_exponent(kappa, z, nu))
    return (z - np.conj(z) * nu**2) * E, nu * E


def beta_forward(disk: DiskSpec, p: BallPoint) -> TwistorValue:
    """Evaluate the blow-down map at a chart point."""
    _check_ball_point(disk, p)
    w, xi = _beta_raw(disk.kappa, p.z, p.nu)
    return TwistorValue(w=complex(w), xi=complex(xi))


def xi_vector(disk: DiskSpec, p: BallPoint) -> XiCoefficients:
    """Chart coefficients of the generating vector field of the distribution."""
    _check_ball_point(disk, p)
    cz, czb, cnu, cnub = _xi_coeffs_raw(disk.kappa, p.z, p.nu)
    return XiCoefficients(
        c_z=complex(cz), c_zbar=complex(czb), c_nu=complex(cnu), c_nubar=complex(cnub)
    )


def _partials_w(kappa: float, z, nu):
    """Hand-derived Wirtinger partials of w; checked against finite differences."""
    zb = np.conj(z)
    E = np.exp(_exponent(kappa, z, nu))
    d = z - zb * nu**2
    return (
        E * (1.0 + kappa * zb * d / 2.0),
        E * (-(nu**2) + kappa * d * (z - 2.0 * zb * nu**2) / 2.0),
        E * (-2.0 * zb * nu - kappa * zb**2 * nu * d),
        np.zeros_like(E),
    )


def _partials_xi(kappa: float, z, nu):
    zb = np.conj(z)
    E = np.exp(_exponent(kappa, z, nu))
    return (
        nu * kappa * zb / 2.0 * E,
        nu * kappa * (z - 2.0 * zb * nu**2) / 2.0 * E,
        E * (1.0 - kappa * zb**2 * nu**2),
        np.zeros_like(E),
    )


def holomorphicity_residual(disk: DiskSpec, p: BallPoint):
    """Analytic residuals (|Xi w|, |Xi xi|, |dnubar w|, |dnubar xi|).

    All four vanish identically for the closed forms; nonzero values isolate
    formula bugs from discretization error.
    """
    _check_ball_point(disk, p)
    co = xi_vector(disk, p)
    residuals = []
    dnubars = []
    for partials in (_partials_w, _partials_xi):
        dz, dzb, dnu, dnub = partials(disk.kappa, p.z, p.nu)
        res = co.c_z * dz + co.c_zbar * dzb + co.c_nu * dnu + co.c_nubar * dnub
        residuals.append(abs(complex(res)))
        dnubars.append(abs(complex(dnub)))
    return residuals[0], residuals[1], dnubars[0], dnubars[1]


def _fd_wirtinger(f, z, nu, h=1e-5):
    """Central-difference Wirtinger partials (dz, dzbar, dnu, dnubar) of f(z, nu)."""
    fz_re = (f(z + h, nu) - f(z - h, nu)) / (2.0 * h)
    fz_im = (f(z + 1j * h, nu) - f(z - 1j * h, nu)) / (2.0 * h)
    fn_re = (f(z, nu + h) - f(z, nu - h)) / (2.0 * h)
    fn_im = (f(z, nu + 1j * h) - f(z, nu - 1j * h)) / (2.0 * h)
    return (
        (fz_re - 1j * fz_im) / 2.0,
        (fz_re + 1j * fz_im) / 2.0,
        (fn_re - 1j * fn_im) / 2.0,
        (fn_re + 1j * fn_im) / 2.0,
    )


def holomorphicity_residual_fd(disk: DiskSpec, p: BallPoint, h: float = 1e-5):
    """Finite-difference counterpart of holomorphicity_residual.

    Uses central stencils on the raw closed forms (entire in the chart
    variables, so stencils may poke past the closed ball).
    """
    k = disk.kappa
    co = xi_vector(disk, p)
    residuals = []
    dnubars = []
    for which in (0, 1):
        def f(z, nu, _which=which):
            return _beta_raw(k, z, nu)[_which]

        dz, dzb, dnu, dnub = _fd_wirtinger(f, p.z, p.nu, h)
        res = co.c_z * dz + co.c_zbar * dzb + co.c_nu * dnu + co.c_nubar * dnub
        residuals.append(abs(res))
        dnubars.append(abs(dnub))
    return residuals[0], residuals[1], dnubars[0], dnubars[1]


def _xi_coeffs_raw(kappa: float, z, nu):
    zb = np.conj(z)
    d = z - nu**2 * zb
    return (
        (2.0 + kappa * z * zb) * nu**2 - kappa * z**2,
        2.0 + kappa * z * zb - kappa * nu**2 * zb**2,
        -kappa * nu * d,
        kappa * np.conj(nu) * d,
    )


def holomorphicity_residual_grid(disk: DiskSpec, Z, NU):
    """Vectorized analytic residuals over arrays of chart points.

    Returns (|Xi w|, |Xi xi|, |dnubar w|, |dnubar xi|) with the shape of Z*NU.
    """
    k = disk.kappa
    cz, czb, cnu, cnub = _xi_coeffs_raw(k, Z, NU)
    out = []
    for partials in (_partials_w, _partials_xi):
        dz, dzb, dnu, dnub = partials(k, Z, NU)
        out.append(np.abs(cz * dz + czb * dzb + cnu * dnu + cnub * dnub))
    dw = np.abs(_partials_w(k, Z, NU)[3])
    dxi = np.abs(_partials_xi(k, Z, NU)[3])
    return out[0], out[1], dw, dxi


def holomorphicity_residual_fd_grid(disk: DiskSpec, Z, NU, h: float = 1e-5):
    """Vectorized finite-difference residuals over arrays of chart points."""
    k = disk.kappa
    cz, czb, cnu, cnub = _xi_coeffs_raw(k, Z, NU)
    out = []
    dnubars = []
    for which in (0, 1):
        def f(z, nu, _which=which):
            return _beta_raw(k, z, nu)[_which]

        fz_re = (f(Z + h, NU) - f(Z - h, NU)) / (2.0 * h)
        fz_im = (f(Z + 1j * h, NU) - f(Z - 1j * h, NU)) / (2.0 * h)
        fn_re = (f(Z, NU + h) - f(Z, NU - h)) / (2.0 * h)
        fn_im = (f(Z, NU + 1j * h) - f(Z, NU - 1j * h)) / (2.0 * h)
        dz = (fz_re - 1j * fz_im) / 2.0
        dzb = (fz_re + 1j * fz_im) / 2.0
        dnu = (fn_re - 1j * fn_im) / 2.0
        dnub = (fn_re + 1j * fn_im) / 2.0
        out.append(np.abs(cz * dz + czb * dzb + cnu * dnu + cnub * dnub))
        dnubars.append(np.abs(dnub))
    return out[0], out[1], dnubars[0], dnubars[1]


# ----------------------------------------------------------------------------
# inversion


def h_c_profile(c: complex, kappa: float, u: float) -> tuple[float, float]:
    """Radial profile h_c(u) = u exp(kappa u (cR^2/(1-u) + cI^2/(1+u))) and h_c'(u).

    The equation h_c(|nu|^2) = |xi|^2 drives the inversion; its derivative
    changes sign at most once on [0, 1), from + to -, and only when kappa < 0.
    """
    if not 0.0 <= u < 1.0:
        raise DomainError(f"u={u} outside [0, 1)")
    cr, ci = c.real, c.imag
    expo = kappa * u * (cr**2 / (1.0 - u) + ci**2 / (1.0 + u))
    ex = math.exp(expo)
    val = u * ex
    deriv = (1.0 + kappa * u * (cr**2 / (1.0 - u) ** 2 + ci**2 / (1.0 + u) ** 2)) * ex
    return val, deriv


def _hprime_sign_factor(c: complex, kappa: float, u: float) -> float:
    """Sign factor of h_c': 1 + kappa u (cR^2/(1-u)^2 + cI^2/(1+u)^2)."""
    cr, ci = c.real, c.imag
    return 1.0 + kappa * u * (cr**2 / (1.0 - u) ** 2 + ci**2 / (1.0 + u) ** 2)


def _log_hc(c: complex, kappa: float, u: float) -> float:
    """log h_c(u), overflow-safe for u near 1."""
    cr, ci = c.real, c.imag
    return math.log(u) + kappa * u * (cr**2 / (1.0 - u) + ci**2 / (1.0 + u))


def _log_hc_prime(c: complex, kappa: float, u: float) -> float:
    cr, ci = c.real, c.imag
    return 1.0 / u + kappa * (cr**2 / (1.0 - u) ** 2 + ci**2 / (1.0 + u) ** 2)


def _monotone_upper(c: complex, kappa: float) -> float:
    """Right end of the initial interval where h_c' > 0.

    For kappa >= 0 the derivative is positive on all of [0, 1). For kappa < 0
    the sign factor is strictly decreasing, so the first sampled sign change
    brackets the unique crossing, refined by bisection.
    """
    u_max = 1.0 - NU_BOUNDARY_SLIVER
    if kappa >= 0.0 or c == 0.0:
        return u_max
    grid = np.linspace(0.0, u_max, 201)
    vals = 1.0 + kappa * grid * (
        c.real**2 / (1.0 - grid) ** 2 + c.imag**2 / (1.0 + grid) ** 2
    )
    neg = np.nonzero(vals <= 0.0)[0]
    if len(neg) == 0:
        return u_max
    lo, hi = grid[neg[0] - 1], grid[neg[0]]
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if _hprime_sign_factor(c, kappa, mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return lo


def beta_inverse(disk: DiskSpec, t: TwistorValue) -> BallPoint:
    """Invert the blow-down map on the interior of the ball bundle.

    Membership in the image is detected, not assumed: NotInImageError when no
    admissible radial root exists or the reconstructed position leaves the
    disk, BoundaryDegenerateError when the preimage would have |nu| -> 1
    (the unit-sphere stratum, where pointwise inversion is not defined).
    """
    kappa, R = disk.kappa, disk.R
    w, xi = t.w, t.xi

    if abs(xi) < XI_ZERO_TOL:
        # zero section: w = z exp(kappa |z|^2 / 2); solve u e^{kappa u} = |w|^2
        target = abs(w) ** 2
        if target == 0.0:
            return BallPoint(z=0.0 + 0.0j, nu=0.0 + 0.0j)
        u_hi = R * R
        f_hi = u_hi * math.exp(kappa * u_hi) - target
        if f_hi < -1e-9 * max(1.0, target):
            raise NotInImageError(f"|w|={abs(w)} exceeds the zero-section image radius")
        u = monotone_root(
            lambda u: u * math.exp(kappa * u) - target,
            lambda u: (1.0 + kappa * u) * math.exp(kappa * u),
            0.0,
            u_hi,
            tol=1e-15,
        )
        z = w * math.exp(-kappa * u / 2.0)
        return BallPoint(z=z, nu=0.0 + 0.0j)

    c = w / xi
    target = 2.0 * math.log(abs(xi))
    u_up = _monotone_upper(c, kappa)
    if _log_hc(c, kappa, u_up) < target:
        # no admissible root below the monotone bound; decide between the
        # boundary sliver and genuinely unreachable values
        if kappa >= 0.0 and c != 0.0:
            if _log_hc(c, kappa, 1.0 - 1e-12) >= target:
                raise BoundaryDegenerateError(
                    "preimage lies in the |nu| -> 1 boundary sliver"
                )
        raise NotInImageError("no admissible radial root: point not in the image")
    u = monotone_root(
        lambda u: _log_hc(c, kappa, u) - target,
        lambda u: _log_hc_prime(c, kappa, u),
        1e-300,
        u_up,
        tol=1e-15,
    )
    if u > 1.0 - NU_BOUNDARY_SLIVER:
        raise BoundaryDegenerateError("preimage lies in the |nu| -> 1 boundary sliver")

    nu = xi * cmath.exp(-kappa * u * (abs(c) ** 2 + u * c**2) / (2.0 * (1.0 - u**2)))
    z = nu * (c + c.conjugate() * u) / (1.0 - u**2)
    if abs(z) > R * (1.0 + 1e-9):
        raise NotInImageError(f"reconstructed |z|={abs(z)} exceeds R={R}")

    w_rt, xi_rt = _beta_raw(kappa, z, nu)
    err = max(abs(w_rt - w), abs(xi_rt - xi))
    if err > ROUNDTRIP_TOL * max(1.0, abs(w), abs(xi)):
        raise NotInImageError(f"forward roundtrip error {err} exceeds tolerance")
    return BallPoint(z=complex(z), nu=complex(nu))


# ----------------------------------------------------------------------------
# restriction to the unit-sphere stratum and boundary behavior


def sm_restriction(disk: DiskSpec, r: float, theta: float, alpha: float) -> TwistorValue:
    """Values (w, xi) on the unit-sphere stratum in the polar chart.

    alpha is the interior direction angle (tangent = cos a e_r + sin a e_theta),
    so the chart fiber coordinate is nu = exp(i(theta + alpha)).
    """
    if r < 0.0 or r > disk.R * (1.0 + 1e-12):
        raise DomainError(f"radius {r} outside [0, {disk.R}]")
    k = disk.kappa
    e2ia = cmath.exp(2j * alpha)
    E = cmath.exp(k * r * r * (1.0 - e2ia) / 2.0)
    w = r * cmath.exp(1j * theta) * (1.0 - e2ia) * E
    xi = cmath.exp(1j * alpha) * cmath.exp(1j * theta) * E
    return TwistorValue(w=w, xi=xi)


def boundary_beta(disk: DiskSpec, theta: float, alpha: float) -> TwistorValue:
    """Blow-down values on the inward boundary, nu = exp(i(theta + pi + alpha))."""
    R, k = disk.R, disk.kappa
    e2ia = cmath.exp(2j * alpha)
    E = cmath.exp(k * R * R * (1.0 - e2ia) / 2.0)
    w = (1.0 - e2ia) * R * cmath.exp(1j * theta) * E
    xi = -cmath.exp(1j * alpha) * cmath.exp(1j * theta) * E
    return TwistorValue(w=w, xi=xi)


def boundary_jacobian_rescaled(disk: DiskSpec, alpha: float, theta: float = 0.0) -> float:
    """(1/cos^2 a) |dw/dth dxi/da - dw/da dxi/dth|^2 on the inward boundary.

    Computed from hand-derived partials of the boundary parametrization. The
    determinant carries an exact cos(alpha) factor, so the quotient degrades
    like cos^-2 near tangency; evaluate inside |alpha| < pi/2.
    """
    R, k = disk.R, disk.kappa
    e2ia = cmath.exp(2j * alpha)
    E = cmath.exp(k * R * R * (1.0 - e2ia) / 2.0)
    Eprime = -1j * k * R * R * e2ia * E
    eith = cmath.exp(1j * theta)
    eia = cmath.exp(1j * alpha)
    w = (1.0 - e2ia) * R * eith * E
    xi = -eia * eith * E
    dw_dth = 1j * w
    dxi_dth = 1j * xi
    dw_da = R * eith * (-2j * e2ia * E + (1.0 - e2ia) * Eprime)
    dxi_da = -eith * (1j * eia * E + eia * Eprime)
    det = dw_dth * dxi_da - dw_da * dxi_dth
    return abs(det) ** 2 / math.cos(alpha) ** 2


def boundary_jacobian_closed(disk: DiskSpec, alpha: float) -> float:
    """Closed form of the rescaled boundary Jacobian: 4 R^2 |exp(kappa R^2 (1 - e^{2ia}))|^2.

    The determinant equals 2 R cos(a) xi^2 exactly, hence the squared modulus
    here; the unsquared variant is correct only at kappa = 0 or alpha = 0.
    """
    R, k = disk.R, disk.kappa
    return 4.0 * R * R * abs(cmath.exp(k * R * R * (1.0 - cmath.exp(2j * alpha)))) ** 2


@dataclass(frozen=True)
class BoundarySeparationReport:
    """Injectivity diagnostics of the blow-down on the inward-boundary grid."""

    min_pairwise_distance: float
    max_wxi_identity_error: float
    max_reconstruction_error: float

    @property
    def all_distinct(self) -> bool:
        return self.min_pairwise_distance > 0.0


def boundary_separation(disk: DiskSpec, grid_size: int = 64) -> BoundarySeparationReport:
    """Evaluate the map on a (theta, alpha) boundary grid and test separation.

    Checks that w/xi = 2 i R sin(alpha) (so alpha is recoverable), that theta
    is recoverable from xi once alpha is known, and that all grid images are
    pairwise distinct (minimum nearest-neighbor distance in C^2). The arcsin
    recovering alpha has infinite derivative at tangency, so the recipe
    roundtrip is scored on rows with |sin(alpha)| < 1 - 1e-9; the tangent rows
    are still covered by the identity and injectivity checks.
    """
    R, k = disk.R, disk.kappa
    thetas = np.linspace(0.0, 2.0 * math.pi, grid_size, endpoint=False)
    alphas = np.linspace(-math.pi / 2.0, math.pi / 2.0, grid_size)
    TH, AL = np.meshgrid(thetas, alphas, indexing="ij")
    e2ia = np.exp(2j * AL)
    E = np.exp(k * R * R * (1.0 - e2ia) / 2.0)
    W = (1.0 - e2ia) * R * np.exp(1j * TH) * E
    XI = -np.exp(1j * AL) * np.exp(1j * TH) * E

    ratio = W / XI
    wxi_err = float(np.max(np.abs(ratio - 2j * R * np.sin(AL))))

    alpha_rec = np.arcsin(np.clip(ratio.imag / (2.0 * R), -1.0, 1.0))
    E_rec = np.exp(k * R * R * (1.0 - np.exp(2j * alpha_rec)) / 2.0)
    eith_rec = -XI / (np.exp(1j * alpha_rec) * E_rec)
    interior = np.abs(np.sin(AL)) < 1.0 - 1e-9
    theta_err = np.abs(eith_rec - np.exp(1j * TH))[interior]
    alpha_err = np.abs(alpha_rec - AL)[interior]
    rec_err = float(max(np.max(theta_err), np.max(alpha_err)))

    pts = np.column_stack(
        [W.real.ravel(), W.imag.ravel(), XI.real.ravel(), XI.imag.ravel()]
    )
    tree = cKDTree(pts)
    dists, _ = tree.query(pts, k=2)
    min_dist = float(np.min(dists[:, 1]))
    return BoundarySeparationReport(
        min_pairwise_distance=min_dist,
        max_wxi_identity_error=wxi_err,
        max_reconstruction_error=rec_err,
    )


# ----------------------------------------------------------------------------
# Hermitian form


@dataclass(frozen=True)
class HermitianForm2:
    """Pullback Hermitian form in the adapted coframe, H = |A|^2 M^* M."""

    H11: float
    H22: float
    H12: complex
    abcd: tuple[complex, complex, complex, complex]
    A_mod2: float

    @property
    def det(self) -> float:
        return self.H11 * self.H22 - abs(self.H12) ** 2

    @property
    def tr(self) -> float:
        return self.H11 + self.H22

    @property
    def lambda_min_bound(self) -> float:
        """det/tr lower bound for the smallest eigenvalue."""
        return self.det / self.tr

    def eigenvalues(self) -> tuple[float, float]:
        """Exact eigenvalues (min, max) of the 2x2 Hermitian matrix."""
        mean = 0.5 * (self.H11 + self.H22)
        radius = math.hypot(0.5 * (self.H11 - self.H22), abs(self.H12))
        return mean - radius, mean + radius

    @property
    def ad_minus_bc(self) -> complex:
        a, b, c, d = self.abcd
        return a * d - b * c


def hermitian_H(disk: DiskSpec, p: BallPoint) -> HermitianForm2:
    """Assemble the Hermitian form of the pulled-back Euclidean metric at p.

    Requires |nu| < 1; the entries satisfy a d - b c = 2 + 2 kappa |z|^2 and
    det/tr bounds the smallest eigenvalue from below.
    """
    _check_ball_point(disk, p)
    if abs(p.nu) >= 1.0:
        raise DomainError("Hermitian form is defined on the open ball |nu| < 1")
    k, z, nu = disk.kappa, p.z, p.nu
    zb = z.conjugate()
    a = 2.0 * (1.0 + k * zb * z - k * nu**2 * zb**2)
    b = -2.0 * nu * zb - k * nu * zb**2 * z + k * nu**3 * zb**3
    c = 2.0 * k * zb * nu
    d = 1.0 - k * zb**2 * nu**2
    A_mod2 = abs(cmath.exp(_exponent(k, z, nu))) ** 2
    return HermitianForm2(
        H11=A_mod2 * (abs(a) ** 2 + abs(c) ** 2),
        H22=A_mod2 * (abs(b) ** 2 + abs(d) ** 2),
        H12=A_mod2 * (a * b.conjugate() + c * d.conjugate()),
        abcd=(a, b, c, d),
        A_mod2=A_mod2,
    )


def hermitian_entry_bounds(disk: DiskSpec) -> dict[str, float]:
    """Uniform bounds on |a|, |b|, |c|, |d| and |A|^2 over the whole ball bundle."""
    R, k = disk.R, abs(disk.kappa)
    return {
        "a": 2.0 * (1.0 + 2.0 * k * R * R),
        "b": 2.0 * R * (1.0 + k * R * R),
        "c": 2.0 * k * R,
        "d": 1.0 + k * R * R,
        "A_mod2_min": math.exp(-2.0 * k * R * R),
    }


def lambda_min_uniform_bound(disk: DiskSpec) -> float:
    """Uniform positive lower bound for the smallest eigenvalue of H.

    det(H) = |A|^4 |ad - bc|^2 with ad - bc = 2 + 2 kappa |z|^2, bounded below
    by 2 - 2|kappa|R^2 when |kappa|R^2 < 1 and by 2 when kappa R^2 >= 1;
    tr(H) is bounded above through the uniform entry bounds.
    """
    R, k = disk.R, disk.kappa
    kr2 = k * R * R
    if abs(kr2) < 1.0:
        det_min = 2.0 - 2.0 * abs(kr2)
    else:
        det_min = 2.0
    bounds = hermitian_entry_bounds(disk)
    sum_sq = bounds["a"] ** 2 + bounds["b"] ** 2 + bounds["c"] ** 2 + bounds["d"] ** 2
    return bounds["A_mod2_min"] * det_min**2 / sum_sq


# ----------------------------------------------------------------------------
# chart helpers


def phase_to_ball(disk: DiskSpec, p: PhasePoint) -> BallPoint:
    """Chart coordinates (z, nu) of a unit-tangent phase point.

    nu = g(v, e) + i g(v, ie) in the global frame pair; smooth through the
    origin, unlike the polar angles.
    """
    e, ie = frame_pair(disk, p.x, p.y)
    v = (p.vx, p.vy)
    nu = metric_inner(disk, p.x, p.y, v, e) + 1j * metric_inner(disk, p.x, p.y, v, ie)
    return BallPoint(z=complex(p.x, p.y), nu=nu)
