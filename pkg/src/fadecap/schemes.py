"""Exact ergodic capacities of the adaptive transmission schemes.

All capacities are in nats; the noise variance is normalized to 1, so
the average SNR equals the average transmit power S in linear scale.
Thresholds for the truncated schemes are expressed in effective-gain
units (instantaneous SNR divided by S), which makes the fixed-threshold
analysis power-independent.

Schemes:

* AWGN -- non-fading reference at the same average SNR: log(1 + S E[z]).
* OA   -- optimal power and rate adaptation (water-filling above a
  cutoff set by the unit average-power constraint).
* RA   -- constant power, rate tracks the channel: E[log(1 + S z)].
* CI   -- channel inversion; constant received SNR S / E[1/z].
* TCI  -- inversion above a threshold, silence (outage) below it.
* CTCI -- inversion above a threshold, constant power below it; no
  outage, and it reduces to CI at threshold 0 and RA at threshold inf.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from .distributions import FadingDistribution
from .numerics import Bracket, find_root_monotone, maximize_unimodal

# Capacity integrals run an order looser than moment integrals: the
# acceptance targets at 1e-4 bits leave ~6 digits of headroom.
CAPACITY_REL_TOL = 1e-10


class Scheme(str, Enum):
    AWGN = "awgn"
    OA = "oa"
    RA = "ra"
    CI = "ci"
    TCI = "tci"
    CTCI = "ctci"


@dataclass(frozen=True)
class ThresholdSolution:
    """Solved cutoff with the residual of its defining power constraint."""

    z_t: float
    residual: float
    iterations: int


@dataclass(frozen=True)
class CapacityResult:
    scheme: Scheme
    avg_power_S: float
    capacity_nats: float
    threshold_z_t: Optional[float] = None
    d_max: Optional[float] = None
    power_constraint_residual: Optional[float] = None
    degenerate: bool = False


def _check_power(S: float):
    if not S > 0.0:
        raise ValueError(f"average power must be positive, got {S}")


def _clip_capacity(value: float) -> float:
    # quadrature noise may leave a tiny negative residue on a zero capacity
    return value if value > 0.0 else 0.0


def awgn_capacity(dist: FadingDistribution, S: float) -> CapacityResult:
    """Reference capacity of a non-fading link at the same average SNR."""
    _check_power(S)
    return CapacityResult(Scheme.AWGN, S, math.log1p(S * dist.mean))


def _oa_power_integral(dist: FadingDistribution, S: float, z_t: float) -> float:
    """E[D] for water-filling with cutoff z_t: the unit constraint's LHS."""
    return dist.expect(
        lambda z: (1.0 / z_t - 1.0 / z), lo=z_t, rel_tol=CAPACITY_REL_TOL
    ) / S


def oa_threshold(dist: FadingDistribution, S: float) -> ThresholdSolution:
    """Water-filling cutoff from the average power constraint.

    The constraint LHS decreases monotonically in the cutoff and the
    solution lies strictly below 1/S (and below the support top), which
    gives a rigorous bracket for safeguarded root finding.
    """
    _check_power(S)
    evals = [0]

    def g(z_t: float) -> float:
        evals[0] += 1
        return _oa_power_integral(dist, S, z_t) - 1.0

    hi = min(1.0 / S, dist.support_sup)
    g_hi = g(hi)
    if g_hi > 0.0:
        raise RuntimeError("power constraint not bracketed below its upper bound")
    lo = hi / 4.0
    while g(lo) <= 0.0:
        hi = lo
        lo /= 32.0
        if lo < 1e-300:
            raise RuntimeError("failed to bracket the water-filling cutoff")
    root = find_root_monotone(g, Bracket(lo, hi), tol=1e-15)
    return ThresholdSolution(z_t=root, residual=g(root), iterations=evals[0])


def oa_capacity(dist: FadingDistribution, S: float) -> CapacityResult:
    """Optimal adaptive capacity: E[log(z / z_t)] above the solved cutoff."""
    solution = oa_threshold(dist, S)
    z_t = solution.z_t
    cap = dist.expect(lambda z: np.log(z / z_t), lo=z_t, rel_tol=CAPACITY_REL_TOL)
    return CapacityResult(
        Scheme.OA,
        S,
        _clip_capacity(cap),
        threshold_z_t=z_t,
        power_constraint_residual=solution.residual,
    )


def ra_capacity(dist: FadingDistribution, S: float) -> CapacityResult:
    """Constant-power capacity E[log(1 + S z)]."""
    _check_power(S)
    cap = dist.expect(lambda z: np.log1p(S * z), rel_tol=CAPACITY_REL_TOL)
    return CapacityResult(Scheme.RA, S, _clip_capacity(cap))


def ci_capacity(dist: FadingDistribution, S: float) -> CapacityResult:
    """Channel inversion: log(1 + S / E[1/z]).

    Returns zero capacity with the degenerate flag when E[1/z] diverges,
    in which case inversion cannot meet the power constraint with a
    nonzero rate.
    """
    _check_power(S)
    if not dist.inverse_mean_finite:
        return CapacityResult(Scheme.CI, S, 0.0, degenerate=True)
    return CapacityResult(Scheme.CI, S, math.log1p(S / dist.inverse_mean))


def tci_dmax(dist: FadingDistribution, z_t: float) -> float:
    """Peak power ratio of truncated inversion at cutoff z_t.

    Always exceeds 1: the power saved while silent below the cutoff is
    spent above it. Independent of S.
    """
    if not 0.0 < z_t < dist.support_sup:
        raise ValueError(
            f"threshold must lie inside the support (0, {dist.support_sup}), got {z_t}"
        )
    denom = z_t * dist.tail_inverse_integral(z_t)
    if denom <= 0.0:
        raise ValueError(f"no channel mass above threshold {z_t}")
    return 1.0 / denom


def tci_capacity(dist: FadingDistribution, S: float, z_t: float) -> CapacityResult:
    """Truncated inversion: (1 - F(z_t)) log(1 + S D_max z_t)."""
    _check_power(S)
    d_max = tci_dmax(dist, z_t)
    outage = float(dist.cdf(z_t))
    cap = (1.0 - outage) * math.log1p(S * d_max * z_t)
    residual = d_max * z_t * dist.tail_inverse_integral(z_t) - 1.0
    return CapacityResult(
        Scheme.TCI,
        S,
        _clip_capacity(cap),
        threshold_z_t=z_t,
        d_max=d_max,
        power_constraint_residual=residual,
    )


def _default_threshold_bracket(dist: FadingDistribution) -> Bracket:
    """Search range covering thresholds from the near-inversion regime up
    to where virtually no channel mass survives the cut."""
    ref = dist.mean if dist.mean_finite else 1.0
    lo = 1e-9 * ref
    if math.isfinite(dist.support_sup):
        hi = dist.support_sup * (1.0 - 1e-9)
    else:
        hi = ref
        while 1.0 - float(dist.cdf(hi)) > 1e-9:
            hi *= 2.0
            if hi > 1e100:
                break
    return Bracket(lo, hi)


def tci_optimize(
    dist: FadingDistribution, S: float, bracket: Bracket = None
) -> tuple[ThresholdSolution, CapacityResult]:
    """Best fixed threshold for truncated inversion at power S.

    A log-spaced grid scan followed by golden-section refinement; on
    plateaus the smallest near-optimal threshold is returned. The
    capacity surface is not guaranteed unimodal, which is exactly what
    the grid pre-scan guards against.
    """
    _check_power(S)
    if bracket is None:
        bracket = _default_threshold_bracket(dist)
    evals = [0]

    def objective(z_t: float) -> float:
        evals[0] += 1
        return tci_capacity(dist, S, z_t).capacity_nats

    z_star, _ = maximize_unimodal(objective, bracket, tol=1e-6)
    result = tci_capacity(dist, S, z_star)
    solution = ThresholdSolution(
        z_t=z_star,
        residual=result.power_constraint_residual,
        iterations=evals[0],
    )
    return solution, result


def ctci_dmax(dist: FadingDistribution, z_t: float) -> float:
    """Power ratio of continuous truncated inversion at cutoff z_t.

    Lies in [1, inf); the threshold-0 limit is degenerate (infinite
    ratio applied to a vanishing gain, recovering plain inversion) and
    the infinite-threshold limit is 1 (constant power).
    """
    if z_t < 0.0:
        raise ValueError(f"threshold must be nonnegative, got {z_t}")
    if z_t == 0.0:
        return math.inf
    denom = float(dist.cdf(z_t)) + z_t * dist.tail_inverse_integral(z_t)
    return 1.0 / denom


def ctci_capacity(dist: FadingDistribution, S: float, z_t: float) -> CapacityResult:
    """Continuous truncated inversion capacity.

    Integrates the constant-power region below the cutoff and adds the
    constant-rate contribution above it. Thresholds 0 and above the
    support reproduce CI and RA exactly.
    """
    _check_power(S)
    if z_t < 0.0:
        raise ValueError(f"threshold must be nonnegative, got {z_t}")
    if z_t == 0.0:
        ci = ci_capacity(dist, S)
        residual = None
        if dist.inverse_mean_finite:
            residual = dist.tail_inverse_integral(0.0) / dist.inverse_mean - 1.0
        return CapacityResult(
            Scheme.CTCI,
            S,
            ci.capacity_nats,
            threshold_z_t=0.0,
            d_max=math.inf,
            power_constraint_residual=residual,
            degenerate=ci.degenerate,
        )
    d_max = ctci_dmax(dist, z_t)
    outage_cdf = float(dist.cdf(z_t))
    below = dist.expect(
        lambda z: np.log1p(S * d_max * z), hi=z_t, rel_tol=CAPACITY_REL_TOL
    )
    cap = below + (1.0 - outage_cdf) * math.log1p(S * d_max * z_t)
    residual = d_max * (outage_cdf + z_t * dist.tail_inverse_integral(z_t)) - 1.0
    return CapacityResult(
        Scheme.CTCI,
        S,
        _clip_capacity(cap),
        threshold_z_t=z_t,
        d_max=d_max,
        power_constraint_residual=residual,
    )


def capacity(
    dist: FadingDistribution,
    scheme: Scheme,
    S: float,
    z_t: float = None,
    optimize_threshold: bool = False,
) -> CapacityResult:
    """Dispatch a single capacity evaluation (CLI and sweep helper)."""
    scheme = Scheme(scheme)
    if scheme is Scheme.AWGN:
        return awgn_capacity(dist, S)
    if scheme is Scheme.OA:
        return oa_capacity(dist, S)
    if scheme is Scheme.RA:
        return ra_capacity(dist, S)
    if scheme is Scheme.CI:
        return ci_capacity(dist, S)
    if scheme is Scheme.TCI:
        if optimize_threshold:
            return tci_optimize(dist, S)[1]
        if z_t is None:
            raise ValueError("TCI needs a threshold or optimize_threshold=True")
        return tci_capacity(dist, S, z_t)
    if z_t is None:
        raise ValueError("CTCI needs a threshold")
    return ctci_capacity(dist, S, z_t)
