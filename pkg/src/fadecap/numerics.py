"""Shared numerical kernels.

Adaptive quadrature on finite and semi-infinite intervals, bracketed
monotone root finding, unimodal 1-D maximization, and the special
functions (Gamma, log-Gamma, digamma, regularized lower incomplete
Gamma) used by the fading-gain models.

The semi-infinite case maps [a, inf) onto [0, 1) with z = a + t/(1-t),
so exponential, power-law and extreme-value tails are all handled by the
same adaptive rule. Quadrature and root finding are delegated to
QUADPACK / Brent via scipy behind the interfaces below.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy import optimize, special
from scipy.integrate import quad

EULER_MASCHERONI = 0.5772156649015329

# Absolute floor below which quadrature error is not chased further.
ABS_TOL_FLOOR = 1e-14
DEFAULT_REL_TOL = 1e-10

_INV_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
_QUAD_LIMIT = 250


@dataclass(frozen=True)
class QuadResult:
    """Value of an integral with an a-posteriori error estimate."""

    value: float
    abs_error_estimate: float
    evaluations: int

    def __post_init__(self):
        if self.abs_error_estimate < 0.0:
            raise ValueError("abs_error_estimate must be nonnegative")
        if self.evaluations < 1:
            raise ValueError("evaluations must be at least 1")


@dataclass(frozen=True)
class Bracket:
    """Interval [lo, hi] with lo < hi."""

    lo: float
    hi: float

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"invalid bracket: need lo < hi, got [{self.lo}, {self.hi}]")


class QuadratureError(RuntimeError):
    """Adaptive subdivision failed to reach the requested tolerance.

    Carries the best available estimate in ``partial``.
    """

    def __init__(self, message: str, partial: QuadResult):
        super().__init__(message)
        self.partial = partial


class BracketError(ValueError):
    """The supplied bracket does not contain a sign change."""


def _check_rel_tol(rel_tol: float):
    if not 0.0 < rel_tol < 1.0:
        raise ValueError(f"rel_tol must lie in (0, 1), got {rel_tol}")


def integrate_finite(
    f: Callable[[float], float],
    a: float,
    b: float,
    rel_tol: float = DEFAULT_REL_TOL,
    knots: Sequence[float] = (),
) -> QuadResult:
    """Integrate f over [a, b] adaptively.

    ``knots`` are interior points where the integrand may be rough
    (kinks, narrow features); subdivision is forced there. ``a == b``
    returns exactly zero.
    """
    _check_rel_tol(rel_tol)
    if a > b:
        raise ValueError(f"need a <= b, got a={a}, b={b}")
    if a == b:
        return QuadResult(0.0, 0.0, 1)
    points = sorted(k for k in knots if a < k < b) or None
    out = quad(
        f,
        a,
        b,
        epsabs=ABS_TOL_FLOOR,
        epsrel=rel_tol,
        limit=_QUAD_LIMIT,
        points=points,
        full_output=True,
    )
    value, abs_err, info = out[0], out[1], out[2]
    result = QuadResult(float(value), float(abs_err), int(info["neval"]))
    if len(out) > 3:
        # QUADPACK flagged trouble; accept the value only if the error
        # estimate is still within an order of the requested tolerance.
        tolerance = max(10.0 * rel_tol * abs(value), 1e-12)
        if abs_err > tolerance:
            raise QuadratureError(f"quadrature did not converge: {out[3]}", result)
    return result


def integrate_semi_infinite(
    f: Callable[[float], float],
    a: float,
    rel_tol: float = DEFAULT_REL_TOL,
    knots: Sequence[float] = (),
) -> QuadResult:
    """Integrate f over [a, inf) via the transform z = a + t/(1-t).

    The image interval is [0, 1); the integrand is treated as zero at
    the open endpoint, which is the correct limit for any integrable f.
    """
    _check_rel_tol(rel_tol)

    def transformed(t: float) -> float:
        u = 1.0 - t
        if u <= 0.0:
            return 0.0
        z = a + t / u
        return f(z) / (u * u)

    mapped = [(k - a) / (1.0 + (k - a)) for k in knots if k > a]
    return integrate_finite(transformed, 0.0, 1.0, rel_tol, knots=mapped)


def find_root_monotone(
    g: Callable[[float], float],
    bracket: Bracket,
    tol: float = 1e-12,
) -> float:
    """Root of a monotone g with a sign change on the bracket.

    Brent's method with bisection safeguard: convergence is guaranteed,
    and the final bracket width is at most ``tol`` (plus a few ulps of
    the root itself).
    """
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    g_lo = g(bracket.lo)
    g_hi = g(bracket.hi)
    if g_lo == 0.0:
        return bracket.lo
    if g_hi == 0.0:
        return bracket.hi
    if math.copysign(1.0, g_lo) == math.copysign(1.0, g_hi):
        raise BracketError(
            f"no sign change on [{bracket.lo}, {bracket.hi}]: g(lo)={g_lo}, g(hi)={g_hi}"
        )
    root = optimize.brentq(g, bracket.lo, bracket.hi, xtol=tol, maxiter=200)
    return float(root)


def maximize_unimodal(
    h: Callable[[float], float],
    bracket: Bracket,
    tol: float = 1e-8,
    grid_points: int = 64,
) -> tuple[float, float]:
    """Maximize a (nominally unimodal) h on the bracket.

    A grid pre-scan guards against mild non-unimodality before
    golden-section refinement around the best grid cell. The grid and
    the refinement work in log coordinates when the bracket is positive
    and spans more than a decade, so wide threshold searches get uniform
    relative resolution; ``tol`` is then a width in log space. On
    plateaus the scan and the tie-breaking both prefer the smallest
    argument.

    Returns ``(argmax, max)`` with ``max`` at least the value of h at
    both bracket ends.
    """
    lo, hi = bracket.lo, bracket.hi
    use_log = lo > 0.0 and hi / lo >= 10.0
    if use_log:
        grid = np.geomspace(lo, hi, grid_points)
    else:
        grid = np.linspace(lo, hi, grid_points)
    values = [h(float(x)) for x in grid]
    best = int(np.argmax(values))
    best_x, best_val = float(grid[best]), float(values[best])

    left = float(grid[max(best - 1, 0)])
    right = float(grid[min(best + 1, grid_points - 1)])
    if left == right:
        return best_x, best_val

    if use_log:
        to_u, from_u = math.log, math.exp
    else:
        to_u, from_u = (lambda x: x), (lambda x: x)

    ua, ub = to_u(left), to_u(right)
    u1 = ub - _INV_GOLDEN * (ub - ua)
    u2 = ua + _INV_GOLDEN * (ub - ua)
    f1 = h(from_u(u1))
    f2 = h(from_u(u2))
    for _ in range(200):
        if ub - ua <= tol:
            break
        if f1 >= f2:  # ties keep the left interval: smallest near-optimal point
            ub, u2, f2 = u2, u1, f1
            u1 = ub - _INV_GOLDEN * (ub - ua)
            f1 = h(from_u(u1))
        else:
            ua, u1, f1 = u1, u2, f2
            u2 = ua + _INV_GOLDEN * (ub - ua)
            f2 = h(from_u(u2))
    if f1 >= f2 and f1 > best_val:
        best_x, best_val = from_u(u1), f1
    elif f2 > f1 and f2 > best_val:
        best_x, best_val = from_u(u2), f2
    return float(best_x), float(best_val)


def digamma(x: float) -> float:
    """psi(x) = d log Gamma(x) / dx for x > 0."""
    if x <= 0.0:
        raise ValueError(f"digamma requires x > 0, got {x}")
    return float(special.digamma(x))


def gamma_fn(x: float) -> float:
    if x <= 0.0:
        raise ValueError(f"gamma_fn requires x > 0, got {x}")
    return float(special.gamma(x))


def log_gamma(x: float) -> float:
    if x <= 0.0:
        raise ValueError(f"log_gamma requires x > 0, got {x}")
    return float(special.gammaln(x))


def reg_lower_inc_gamma(n: float, z: float) -> float:
    """Regularized lower incomplete Gamma P(n, z) for n > 0, z >= 0."""
    if n <= 0.0:
        raise ValueError(f"reg_lower_inc_gamma requires n > 0, got {n}")
    if z < 0.0:
        raise ValueError(f"reg_lower_inc_gamma requires z >= 0, got {z}")
    return float(special.gammainc(n, z))
