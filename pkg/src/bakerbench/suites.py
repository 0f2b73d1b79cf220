"""Randomized verification suites over the wedge claims.

Each suite draws reproducible samples from numpy's PCG64 generator and
checks one family of orbit inequalities, returning a summary that the CLI
and the acceptance tests consume directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import OverflowSignal, PlanePoint, orbit
from .domain import check_growth, check_invariance, telescoping_residual
from .psh import _u_of_point

GENERATOR_NAME = "PCG64"


@dataclass(frozen=True)
class SuiteResult:
    suite: str
    samples: int
    steps: int
    seed: int
    violations: int
    worst: float
    worst_label: str
    passed: bool
    notes: dict = field(default_factory=dict)


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def _sample_wedge_seed(rng: np.random.Generator) -> tuple[PlanePoint, float]:
    """A seed in L_alpha: alpha in (0,10], Re z in (1,50],
    Re w - Re z - alpha in (0,50], imaginary parts in [-100,100]."""
    alpha = rng.uniform(0.0, 10.0)
    rez = rng.uniform(1.0, 50.0)
    rew = rez + alpha + rng.uniform(0.0, 50.0)
    imz = rng.uniform(-100.0, 100.0)
    imw = rng.uniform(-100.0, 100.0)
    return PlanePoint(complex(rez, imz), complex(rew, imw)), alpha


def invariance_suite(samples: int, seed: int, steps: int) -> SuiteResult:
    rng = _rng(seed)
    violations = 0
    worst = np.inf
    for _ in range(samples):
        p, alpha = _sample_wedge_seed(rng)
        rep = check_invariance(p, alpha, steps)
        if not rep.all_inside:
            violations += 1
        worst = min(worst, rep.min_margin)
    return SuiteResult(
        suite="invariance", samples=samples, steps=steps, seed=seed,
        violations=violations, worst=float(worst), worst_label="min_margin",
        passed=violations == 0,
    )


def growth_suite(samples: int, seed: int, steps: int) -> SuiteResult:
    rng = _rng(seed)
    violations = 0
    worst = np.inf
    for _ in range(samples):
        p, _ = _sample_wedge_seed(rng)
        if p.w.real - p.z.real <= 1.0:
            continue  # growth bounds are stated on L proper
        rep = check_growth(p, steps)
        if not (rep.w_bound_ok and rep.z_bound_ok):
            violations += 1
        worst = min(worst, rep.min_w_slack, rep.min_z_slack)
    return SuiteResult(
        suite="growth", samples=samples, steps=steps, seed=seed,
        violations=violations, worst=float(worst), worst_label="min_slack",
        passed=violations == 0,
    )


TELESCOPING_TOL = 1e-9


def telescoping_suite(samples: int, seed: int, steps: int,
                      tol: float = TELESCOPING_TOL) -> SuiteResult:
    """Seeds in L with coordinate modulus <= 50; residual must stay below tol."""
    rng = _rng(seed)
    violations = 0
    worst = 0.0
    drawn = 0
    while drawn < samples:
        rez = rng.uniform(1.0, 30.0)
        imz = rng.uniform(-40.0, 40.0)
        rew = rez + 1.0 + rng.uniform(0.0, 15.0)
        imw = rng.uniform(-40.0, 40.0)
        z = complex(rez, imz)
        w = complex(rew, imw)
        if abs(z) > 50 or abs(w) > 50:
            continue
        drawn += 1
        res = telescoping_residual(PlanePoint(z, w), steps)
        worst = max(worst, res)
        if res > tol:
            violations += 1
    return SuiteResult(
        suite="telescoping", samples=samples, steps=steps, seed=seed,
        violations=violations, worst=worst, worst_label="max_residual",
        passed=violations == 0, notes={"tolerance": tol},
    )


def psh_range_suite(samples: int, seed: int, steps: int) -> SuiteResult:
    """u_n stays in [-2, 0] for arbitrary seeds, up to orbit overflow."""
    rng = _rng(seed)
    violations = 0
    worst = -np.inf
    for _ in range(samples):
        p = PlanePoint(
            complex(rng.uniform(-5, 5), rng.uniform(-5, 5)),
            complex(rng.uniform(-5, 5), rng.uniform(-5, 5)),
        )
        rec = orbit(p, steps)
        for pt in rec.points:
            if abs(pt.w) + abs(pt.z) == 0.0:
                continue
            u = _u_of_point(pt)
            if not (-2.0 <= u <= 0.0):
                violations += 1
            worst = max(worst, u)
    return SuiteResult(
        suite="psh-range", samples=samples, steps=steps, seed=seed,
        violations=violations, worst=float(worst), worst_label="max_u",
        passed=violations == 0,
    )


SUITES = {
    "invariance": invariance_suite,
    "growth": growth_suite,
    "telescoping": telescoping_suite,
    "psh-range": psh_range_suite,
}


def run_suite(name: str, samples: int, seed: int, steps: int) -> SuiteResult:
    try:
        fn = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}") from None
    return fn(samples, seed, steps)
