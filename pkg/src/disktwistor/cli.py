"""Command-line front end: fan plots, scattering tables, simplicity, blow-down, invariants.

Exit-code contract: 0 = all checks pass, 1 = a numerical check failed,
2 = usage or configuration error. Output files are byte-deterministic for
identical (flags, seed): CSV/JSON floats are formatted with 17 significant
digits.
"""

from __future__ import annotations

import argparse
import math
import sys
import warnings

import numpy as np

from .errors import (
    BoundaryDegenerateError,
    DomainError,
    NotInImageError,
)
from .flow import (
    DEFAULT_STEPS,
    _fan_batch_states,
    _integrate_batch,
    scattering_function_closed,
    scattering_function_sweep,
    scattering_quadrature_oracle,
    scattering_relation_sweep,
)
from .geometry import DiskSpec
from .invariants import (
    HoloDifferential,
    bottom_mode_expected,
    build_invariant,
    fiber_fourier,
    transport_residual,
)
from .jacobi import _ray_zeros, conjugate_scan
from .svg import render_fan_svg
from .twistor import (
    BallPoint,
    TwistorValue,
    _beta_raw,
    beta_forward,
    beta_inverse,
    boundary_jacobian_closed,
    boundary_jacobian_rescaled,
    boundary_separation,
    hermitian_H,
    holomorphicity_residual_fd_grid,
    holomorphicity_residual_grid,
    lambda_min_uniform_bound,
)

# numerical-check thresholds shared with the acceptance suite
TOL_SCATTER = 1e-6
TOL_QUADRATURE = 1e-8
TOL_ENDPOINT = 1e-6
TOL_HOLO_ANALYTIC = 1e-12
TOL_HOLO_FD = 1e-6
TOL_ROUNDTRIP = 1e-9
TOL_ADBC = 1e-12
TOL_JACOBIAN = 1e-10
TOL_WXI = 1e-12
TOL_RECONSTRUCTION = 1e-10
TOL_TRANSPORT = 1e-6
TOL_MODE_SUPPORT = 1e-8
TOL_BOTTOM_MODE = 1e-8


def _fmt(x) -> str:
    return "%.17g" % float(x)


def _json_dumps(obj, indent: int = 0) -> str:
    """JSON with floats at 17 significant digits and insertion-order keys."""
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [
            f'{pad}  "{k}": {_json_dumps(v, indent + 1)}' for k, v in obj.items()
        ]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if len(obj) == 0:
            return "[]"
        items = [f"{pad}  {_json_dumps(v, indent + 1)}" for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt(obj)
    if isinstance(obj, str):
        return '"' + obj.replace("\\", "\\\\").replace('"', '\\"') + '"'
    raise TypeError(f"cannot serialize {type(obj)}")


def _write_json(path: str | None, obj: dict) -> None:
    text = _json_dumps(obj) + "\n"
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _write_csv(path: str, header: list[str], rows) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(row) + "\n")


def _parse_complex_pair(text: str) -> complex:
    """Parse 're,im' into a complex number."""
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected 're,im', got {text!r}")
    return complex(float(parts[0]), float(parts[1]))


def _parse_coeffs(text: str) -> tuple[complex, ...]:
    """Parse coefficients: ';'-separated 're,im' pairs, or ','-separated
    're+imi' tokens (plain reals allowed)."""
    text = text.strip()
    if ";" in text:
        return tuple(_parse_complex_pair(tok) for tok in text.split(";") if tok)
    out = []
    for tok in text.split(","):
        tok = tok.strip().replace("i", "j")
        out.append(complex(tok))
    return tuple(out)


def _disk_from_args(args) -> DiskSpec:
    if not 1.0 + args.kappa * args.radius**2 > 0.0:
        raise DomainError(
            "standing hypothesis violated: need 1 + kappa*R^2 > 0 "
            f"(kappa={args.kappa}, R={args.radius})"
        )
    return DiskSpec(R=args.radius, kappa=args.kappa)


def _quadrature_any(disk: DiskSpec, alpha: float) -> float:
    """Odd extension of the proof quadrature to the full open range."""
    if alpha == 0.0:
        return 0.0
    if alpha < 0.0:
        return scattering_quadrature_oracle(disk, alpha)
    return -scattering_quadrature_oracle(disk, -alpha)


# ----------------------------------------------------------------------------
# subcommands


def cmd_geodesics(args) -> int:
    disk = _disk_from_args(args)
    n_rays = args.grid
    alphas = np.linspace(-math.pi / 2.0, math.pi / 2.0, n_rays + 2)[1:-1]
    theta0 = math.pi
    st0 = _fan_batch_states(disk, np.full_like(alphas, theta0), alphas)
    res = _integrate_batch(disk, st0, args.steps, record=True)

    rows = []
    rays_xy = []
    markers = []
    zero_count = 0
    for i, alpha in enumerate(alphas):
        k = int(res.exit_step[i])
        times = np.append(res.trace_times[: k + 1], res.tau[i])
        xs = np.append(res.trace[: k + 1, 0, i], res.exit_states[0, i])
        ys = np.append(res.trace[: k + 1, 1, i], res.exit_states[1, i])
        for t, x, y in zip(times, xs, ys):
            rows.append([str(i), _fmt(t), _fmt(x), _fmt(y)])
        rays_xy.append(np.column_stack([xs, ys]))
        b = np.append(res.trace[: k + 1, 4, i], res.exit_states[4, i])
        db = np.append(res.trace[: k + 1, 5, i], res.exit_states[5, i])
        zeros, _ = _ray_zeros(
            times, b, db, float(res.tau[i]), float(res.exit_states[4, i]),
            2.0 * disk.R * math.cos(alpha),
        )
        for t_star in zeros:
            j = int(np.searchsorted(times, t_star))
            j = min(max(j, 0), len(xs) - 1)
            markers.append((float(xs[j]), float(ys[j])))
            print(f"ray {i}: jacobi zero at t={_fmt(t_star)} (alpha={_fmt(alpha)})")
            zero_count += 1

    _write_csv(args.out, ["geodesic_id", "t", "x", "y"], rows)
    if args.svg:
        render_fan_svg(args.svg, disk.R, rays_xy, markers)

    # arc endpoints must land where the scattering relation says they do
    thetas_out, _ = scattering_relation_sweep(
        disk, np.full_like(alphas, theta0), alphas, args.steps
    )
    max_err = 0.0
    for i in range(len(alphas)):
        ex = disk.R * math.cos(thetas_out[i]), disk.R * math.sin(thetas_out[i])
        err = math.hypot(
            float(res.exit_states[0, i]) - ex[0], float(res.exit_states[1, i]) - ex[1]
        )
        max_err = max(max_err, err)
    print(f"rays={n_rays} jacobi_zeros={zero_count} endpoint_max_err={_fmt(max_err)}")
    return 0 if max_err < TOL_ENDPOINT else 1


def cmd_scatter(args) -> int:
    disk = _disk_from_args(args)
    alphas = np.linspace(-math.pi / 2.0 + 0.01, math.pi / 2.0 - 0.01, args.grid)
    s_num = scattering_function_sweep(disk, alphas, step_count=args.steps)
    s_closed = np.array([scattering_function_closed(disk, a) for a in alphas])
    s_quad = np.array([_quadrature_any(disk, float(a)) for a in alphas])
    abs_err = np.abs(s_num - s_closed)
    rows = [
        [_fmt(a), _fmt(sc), _fmt(sn), _fmt(sq), _fmt(e)]
        for a, sc, sn, sq, e in zip(alphas, s_closed, s_num, s_quad, abs_err)
    ]
    _write_csv(
        args.out, ["alpha", "s_closed", "s_numeric", "s_quadrature", "abs_err"], rows
    )
    quad_err = float(
        max(np.max(np.abs(s_quad - s_closed)), np.max(np.abs(s_quad - s_num)))
    )
    print(f"max_abs_err={_fmt(np.max(abs_err))} max_quad_err={_fmt(quad_err)}")
    return 0 if np.max(abs_err) < TOL_SCATTER and quad_err < TOL_QUADRATURE else 1


def cmd_simplicity(args) -> int:
    disk = _disk_from_args(args)
    rep = conjugate_scan(disk, args.grid, step_count=args.steps, strict=False)
    _write_json(
        args.out,
        {
            "is_simple": rep.is_simple,
            "min_sprime": rep.min_sprime,
            "conjugate_pairs": [[a, t] for a, t in rep.conjugate_pairs],
            "criteria_agree": rep.criteria_agree,
        },
    )
    return 0 if rep.criteria_agree else 1


def _spiral(n: int, rmax: float, phase: float = 0.0) -> np.ndarray:
    """Deterministic low-discrepancy complex points filling the disk of radius rmax."""
    j = np.arange(n)
    radii = rmax * np.sqrt((j + 0.5) / n)
    golden = math.pi * (3.0 - math.sqrt(5.0))
    return radii * np.exp(1j * (golden * j + phase))


def cmd_blowdown_verify(args) -> int:
    disk = _disk_from_args(args)
    rng = np.random.default_rng(args.seed)
    n = args.grid

    zs = _spiral(n, disk.R)
    nus = _spiral(n, 1.0, phase=0.7)
    Z, NU = np.meshgrid(zs, nus, indexing="ij")
    rw, rxi, rnw, rnxi = holomorphicity_residual_grid(disk, Z, NU)
    holo_max = float(max(np.max(rw), np.max(rxi), np.max(rnw), np.max(rnxi)))
    fw, fxi, fnw, fnxi = holomorphicity_residual_fd_grid(disk, Z, NU)
    holo_fd_max = float(max(np.max(fw), np.max(fxi), np.max(fnw), np.max(fnxi)))

    zs_i = _spiral(20, 0.95 * disk.R)
    nus_i = _spiral(20, 0.9, phase=1.3)
    rt_max = 0.0
    for z in zs_i:
        for nu in nus_i:
            tv = beta_forward(disk, BallPoint(z=complex(z), nu=complex(nu)))
            back = beta_inverse(disk, tv)
            rt_max = max(rt_max, abs(back.z - z), abs(back.nu - nu))

    adbc_max = 0.0
    lam_min = math.inf
    for _ in range(1000):
        z = complex(*rng.uniform(-disk.R, disk.R, 2))
        while abs(z) > disk.R:
            z = complex(*rng.uniform(-disk.R, disk.R, 2))
        nu = complex(*rng.uniform(-0.7, 0.7, 2))
        H = hermitian_H(disk, BallPoint(z=z, nu=nu))
        expected = 2.0 + 2.0 * disk.kappa * abs(z) ** 2
        adbc_max = max(adbc_max, abs(H.ad_minus_bc - expected))
        lam_min = min(lam_min, H.eigenvalues()[0])
    lam_uniform = lambda_min_uniform_bound(disk)

    jac_alphas = np.linspace(-math.pi / 2.0 + 0.01, math.pi / 2.0 - 0.01, 181)
    jac_err = max(
        abs(boundary_jacobian_rescaled(disk, float(a)) - boundary_jacobian_closed(disk, float(a)))
        for a in jac_alphas
    )

    sep = boundary_separation(disk, 64)

    w_sup = 0.0
    if disk.kappa >= 0.0:
        zd = _spiral(120, disk.R)
        nud = np.exp(2j * math.pi * np.arange(120) / 120.0)
        Zd, NUd = np.meshgrid(zd, nud, indexing="ij")
        Wd, _ = _beta_raw(disk.kappa, Zd, NUd)
        w_sup = float(np.max(np.abs(Wd)))

    checks = {
        "holo_analytic_max": (holo_max, TOL_HOLO_ANALYTIC),
        "holo_fd_max": (holo_fd_max, TOL_HOLO_FD),
        "roundtrip_max": (rt_max, TOL_ROUNDTRIP),
        "ad_minus_bc_max_err": (adbc_max, TOL_ADBC),
        "jacobian_max_err": (jac_err, TOL_JACOBIAN),
        "wxi_identity_max_err": (sep.max_wxi_identity_error, TOL_WXI),
        "reconstruction_max_err": (sep.max_reconstruction_error, TOL_RECONSTRUCTION),
    }
    ok = all(v <= tol for v, tol in checks.values())
    ok = ok and lam_min > 0.0 and lam_min >= lam_uniform
    ok = ok and sep.min_pairwise_distance > 0.0
    if disk.kappa >= 0.0:
        ok = ok and w_sup <= disk.R2 + 1e-9

    report = {k: v for k, (v, _) in checks.items()}
    report.update(
        {
            "lambda_min_exact": lam_min,
            "lambda_min_uniform_bound": lam_uniform,
            "min_pairwise_distance": sep.min_pairwise_distance,
            "w_sup": w_sup,
            "w_sup_bound": disk.R2,
            "pass": bool(ok),
        }
    )
    _write_json(args.out, report)
    return 0 if ok else 1


def cmd_blowdown_invert(args) -> int:
    disk = _disk_from_args(args)
    tv = TwistorValue(w=args.w, xi=args.xi)
    try:
        p = beta_inverse(disk, tv)
    except NotInImageError:
        _write_json(args.out, {"status": "NotInImage"})
        return 0
    except BoundaryDegenerateError:
        _write_json(args.out, {"status": "BoundaryDegenerate"})
        return 0
    _write_json(
        args.out,
        {
            "status": "ok",
            "z": [p.z.real, p.z.imag],
            "nu": [p.nu.real, p.nu.imag],
        },
    )
    return 0


def cmd_invariant(args) -> int:
    disk = _disk_from_args(args)
    diff = HoloDifferential(m=args.m, coeffs=_parse_coeffs(args.coeffs),
                            declared_radius=disk.R2)
    kappa_warning = disk.kappa < 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        u = build_invariant(disk, diff)
        t_res = transport_residual(disk, u, n_geodesics=20, step_count=args.steps,
                                   seed=args.seed)
        rng = np.random.default_rng(args.seed)
        mode_max = 0.0
        bottom_err = 0.0
        for _ in range(20):
            r = rng.uniform(0.05 * disk.R, 0.95 * disk.R)
            th = rng.uniform(0.0, 2.0 * math.pi)
            spec = fiber_fourier(u, r, th, 256)
            for k in range(-spec.k_max, diff.m):
                mode_max = max(mode_max, abs(spec.mode(k)))
            bottom_err = max(
                bottom_err,
                abs(spec.mode(diff.m) - bottom_mode_expected(disk, diff, r, th, 0.0)),
            )

    ok = t_res < TOL_TRANSPORT and mode_max < TOL_MODE_SUPPORT and bottom_err < TOL_BOTTOM_MODE
    _write_json(
        args.out,
        {
            "transport_residual": t_res,
            "mode_support_max": mode_max,
            "bottom_mode_max_err": bottom_err,
            "kappa_warning": kappa_warning,
            "pass": bool(ok),
        },
    )
    return 0 if ok else 1


# ----------------------------------------------------------------------------


def _add_common(p: argparse.ArgumentParser, grid_default: int) -> None:
    p.add_argument("--radius", type=float, default=1.0, help="disk radius R")
    p.add_argument("--kappa", type=float, default=0.0, help="curvature parameter")
    p.add_argument("--out", type=str, default=None, help="output file path")
    p.add_argument("--grid", type=int, default=grid_default, help="grid size")
    p.add_argument("--steps", type=int, default=DEFAULT_STEPS,
                   help="RK4 steps per estimated crossing time")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized grids")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="disktwistor",
        description="Geodesic flow, scattering, and twistor blow-down maps "
        "on rotationally invariant disks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("geodesics", help="fan of geodesics from one boundary point")
    _add_common(p, grid_default=25)
    p.add_argument("--svg", type=str, default=None, help="optional SVG output path")
    p.set_defaults(func=cmd_geodesics)

    p = sub.add_parser("scatter", help="scattering function table (closed/numeric/quadrature)")
    _add_common(p, grid_default=101)
    p.set_defaults(func=cmd_scatter)

    p = sub.add_parser("simplicity", help="conjugate-point scan and simplicity report")
    _add_common(p, grid_default=101)
    p.set_defaults(func=cmd_simplicity)

    p = sub.add_parser("blowdown", help="blow-down map verification and inversion")
    bsub = p.add_subparsers(dest="subcommand", required=True)
    pv = bsub.add_parser("verify", help="residual suites for the blow-down map")
    _add_common(pv, grid_default=50)
    pv.set_defaults(func=cmd_blowdown_verify)
    pi = bsub.add_parser("invert", help="invert the blow-down map at one point")
    _add_common(pi, grid_default=50)
    pi.add_argument("--w", type=_parse_complex_pair, required=True, help='"re,im"')
    pi.add_argument("--xi", type=_parse_complex_pair, required=True, help='"re,im"')
    pi.set_defaults(func=cmd_blowdown_invert)

    p = sub.add_parser("invariant", help="build an invariant function and verify it")
    _add_common(p, grid_default=20)
    p.add_argument("--m", type=int, default=0, help="bottom vertical Fourier degree")
    p.add_argument("--coeffs", type=str, default="1",
                   help='polynomial coefficients: "re+imi,..." or "re,im;re,im;..."')
    p.set_defaults(func=cmd_invariant)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    required_out = args.command in {"geodesics", "scatter"}
    if required_out and not args.out:
        parser.error(f"--out is required for '{args.command}'")
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
