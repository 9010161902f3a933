"""Bracketed bisection + Newton polish for monotone scalar equations."""

from __future__ import annotations

from typing import Callable


def monotone_root(
    f: Callable[[float], float],
    fprime: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = 1e-14,
    bisections: int = 80,
    newton_steps: int = 8,
) -> float:
    """Solve f(x) = 0 on [lo, hi] where f is increasing and f(lo) <= 0 <= f(hi).

    Bisection first (guaranteed convergence on the bracket), then a few Newton
    steps to polish; Newton iterates falling outside the bracket are rejected.
    """
    flo, fhi = f(lo), f(hi)
    if flo > 0.0 or fhi < 0.0:
        raise ValueError("root not bracketed")
    a, b = lo, hi
    for _ in range(bisections):
        mid = 0.5 * (a + b)
        if f(mid) <= 0.0:
            a = mid
        else:
            b = mid
        if b - a < tol:
            break
    x = 0.5 * (a + b)
    for _ in range(newton_steps):
        fx = f(x)
        dfx = fprime(x)
        if dfx == 0.0:
            break
        step = fx / dfx
        x_new = x - step
        if not (a <= x_new <= b):
            break
        x = x_new
        if abs(step) < tol:
            break
    return x
