"""Membership in the invariant wedges L_alpha and orbit-level verification.

L_alpha = { (z, w) : Re w > Re z + alpha, Re z > 1, Re w > 1 } and
L = union of L_alpha over alpha > 1.  The checks here verify, on concrete
double-precision orbits, that L_alpha is forward invariant, that both
coordinates obey the linear growth bounds, and that the telescoping
identity for w_n - z_n holds up to rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import OrbitRecord, OverflowSignal, PlanePoint, orbit, safe_exp

# L-membership threshold on Re w - Re z.
L_THRESHOLD = 1.0

# Guaranteed per-step increase of Re w - Re z anywhere in L:
# 1 + Re e^{-2w} - Re e^{-(z+w)} >= 1 - e^{-2} - e^{-2}.
MARGIN_STEP = 1.0 - 2.0 * math.exp(-2.0)


def in_L_alpha(p: PlanePoint, alpha: float) -> bool:
    """Strict membership test for the wedge L_alpha (alpha > 0)."""
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    return p.w.real > p.z.real + alpha and p.z.real > 1.0 and p.w.real > 1.0


def sup_alpha(p: PlanePoint) -> float | None:
    """Supremum of admissible alpha for p, or None if Re z > 1, Re w > 1 fails.

    p lies in L_alpha exactly for 0 < alpha < sup_alpha(p), and p is in L
    iff the returned value exceeds 1.
    """
    if p.z.real > 1.0 and p.w.real > 1.0:
        return p.w.real - p.z.real
    return None


def in_L(p: PlanePoint, threshold: float = L_THRESHOLD) -> bool:
    """Membership in L (threshold 1), or in the looser alpha > 0 variant."""
    gap = sup_alpha(p)
    return gap is not None and gap > threshold


@dataclass(frozen=True)
class InvarianceReport:
    seed: PlanePoint
    alpha: float
    steps_checked: int
    all_inside: bool
    first_violation: int | None
    min_margin: float


def check_invariance(seed: PlanePoint, alpha: float, n: int) -> InvarianceReport:
    """Test L_alpha membership along the orbit of seed at every step up to n.

    If the orbit overflows before step n, steps_checked records the last
    finite step; by then every coordinate exceeds double range and the
    finite prefix is all that can be witnessed.
    """
    if not in_L_alpha(seed, alpha):
        raise ValueError("seed is not in L_alpha")
    rec = orbit(seed, n)
    min_margin = math.inf
    first_violation = None
    for k, p in enumerate(rec.points):
        min_margin = min(min_margin, p.w.real - p.z.real - alpha)
        if first_violation is None and not in_L_alpha(p, alpha):
            first_violation = k
    return InvarianceReport(
        seed=seed,
        alpha=alpha,
        steps_checked=len(rec.points) - 1,
        all_inside=first_violation is None,
        first_violation=first_violation,
        min_margin=min_margin,
    )


@dataclass(frozen=True)
class GrowthReport:
    seed: PlanePoint
    steps_checked: int
    w_bound_ok: bool
    z_bound_ok: bool
    min_w_slack: float
    min_z_slack: float


def check_growth(seed: PlanePoint, n: int) -> GrowthReport:
    """Verify Re w_k > 2 Re w_0 + k/2 and Re z_k > Re z_0 + k/2 for k <= n."""
    if not in_L(seed):
        raise ValueError("seed is not in L")
    rec = orbit(seed, n)
    min_w = math.inf
    min_z = math.inf
    for k in range(1, len(rec.points)):
        p = rec.points[k]
        min_w = min(min_w, p.w.real - 2.0 * seed.w.real - k / 2.0)
        min_z = min(min_z, p.z.real - seed.z.real - k / 2.0)
    return GrowthReport(
        seed=seed,
        steps_checked=len(rec.points) - 1,
        w_bound_ok=min_w > 0,
        z_bound_ok=min_z > 0,
        min_w_slack=min_w,
        min_z_slack=min_z,
    )


def telescoping_residual(seed: PlanePoint, n: int) -> float:
    """Relative defect of the identity

        w_n - z_n = w_0 - z_0 + n + sum_i e^{-2 w_i} - sum_i e^{-(z_i + w_i)}

    over the stored orbit prefix (sums over i = 0..n-1).  The identity is
    exact in real arithmetic; the returned value measures the rounding of
    the double-precision orbit, normalized by max(1, |w_n - z_n|).
    """
    rec = orbit(seed, n)
    if not rec.completed:
        raise OverflowSignal(f"orbit overflowed at step {rec.overflow_step}")
    rhs = seed.w - seed.z + n
    for i in range(n):
        p = rec.points[i]
        rhs += safe_exp(-2 * p.w) - safe_exp(-(p.z + p.w))
    lhs = rec.last.w - rec.last.z
    return abs(lhs - rhs) / max(1.0, abs(lhs))


@dataclass(frozen=True)
class RatioProfile:
    """Coordinate ratios z_k/w_k and w_k/z_k along a finite orbit prefix.

    stabilization_index is the smallest k where both consecutive ratio
    differences fall below the Cauchy tolerance, or None.  The stabilized
    ratios are reported as measured; no limit value is asserted.
    """

    entries: tuple[tuple[int, complex, complex], ...]
    stabilization_index: int | None
    stabilized_z_over_w: complex | None
    stabilized_w_over_z: complex | None


RATIO_CAUCHY_TOL = 1e-8


def ratio_profile(seed: PlanePoint, n: int) -> RatioProfile:
    if not in_L(seed):
        raise ValueError("seed is not in L")
    rec = orbit(seed, n)
    entries = []
    for k, p in enumerate(rec.points):
        entries.append((k, p.z / p.w, p.w / p.z))
    stab = None
    for k in range(len(entries) - 1):
        _, zw0, wz0 = entries[k]
        _, zw1, wz1 = entries[k + 1]
        if abs(zw1 - zw0) < RATIO_CAUCHY_TOL and abs(wz1 - wz0) < RATIO_CAUCHY_TOL:
            stab = k
            break
    return RatioProfile(
        entries=tuple(entries),
        stabilization_index=stab,
        stabilized_z_over_w=entries[stab][1] if stab is not None else None,
        stabilized_w_over_z=entries[stab][2] if stab is not None else None,
    )
