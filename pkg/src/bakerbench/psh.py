"""Plurisubharmonic diagnostics for the absorbing-domain argument.

The diagnostic sequence is

    u_n(z0, w0) = -(Re w_n - Re z_n) / (|w_n| + |z_n|) - 1

evaluated along the orbit of (z0, w0).  Its values always lie in [-2, 0];
on the wedge L they approach -1.  submean_check probes the sub-mean-value
inequality of u_n restricted to a complex line a + lambda*b, using
equal-angle trapezoidal quadrature on a circle (spectrally accurate for
smooth integrands).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

from .core import OverflowSignal, PlanePoint, orbit


class InsufficientSamples(Exception):
    """Too many circle points overflowed to trust the mean."""


def _u_of_point(p: PlanePoint) -> float:
    denom = abs(p.w) + abs(p.z)
    if denom == 0.0:
        raise ValueError("u undefined: |w| + |z| = 0")
    return -(p.w.real - p.z.real) / denom - 1.0


def u_n(seed: PlanePoint, n: int) -> float:
    """u_n at seed; raises OverflowSignal if the orbit dies before step n."""
    rec = orbit(seed, n)
    if not rec.completed:
        raise OverflowSignal(f"orbit overflowed at step {rec.overflow_step}")
    return _u_of_point(rec.last)


@dataclass(frozen=True)
class UProfile:
    seed: PlanePoint
    values: tuple[tuple[int, float], ...]
    tail_max: float
    truncated: bool


def u_profile(seed: PlanePoint, N: int) -> UProfile:
    """Tabulate u_n for n = 0..N (until overflow).

    tail_max, the maximum over the last ceil(N/4) defined values, is the
    finite-sample stand-in for the limsup of the sequence.
    """
    if N < 4:
        raise ValueError("profile length must be >= 4")
    rec = orbit(seed, N)
    values = tuple(
        (n, _u_of_point(p))
        for n, p in enumerate(rec.points)
        if abs(p.w) + abs(p.z) > 0.0
    )
    tail = math.ceil(N / 4)
    tail_max = max(v for _, v in values[-tail:])
    return UProfile(seed=seed, values=values, tail_max=tail_max,
                    truncated=not rec.completed)


@dataclass(frozen=True)
class ProbeSpec:
    """A complex line a + lambda*b with a circle |lambda| = radius on it."""

    center: PlanePoint
    direction: PlanePoint
    radius: float
    samples: int

    def __post_init__(self) -> None:
        if self.radius <= 0:
            raise ValueError("radius must be positive")
        if self.samples < 8:
            raise ValueError("need at least 8 circle samples")
        if self.direction.z == 0 and self.direction.w == 0:
            raise ValueError("direction must be nonzero")

    def at(self, lam: complex) -> PlanePoint:
        return PlanePoint(
            self.center.z + lam * self.direction.z,
            self.center.w + lam * self.direction.w,
        )


@dataclass(frozen=True)
class SubmeanReport:
    probe: ProbeSpec
    n: int
    center_value: float
    circle_mean: float
    deficit: float
    valid_samples: int


def submean_check(
    probe: ProbeSpec,
    n: int,
    func: Callable[[complex], float] | None = None,
) -> SubmeanReport:
    """Circle mean minus center value of lambda -> u_n(a + lambda*b).

    A subharmonic function has deficit >= 0 in exact arithmetic; the
    measured value is reported as-is.  Circle points whose orbit overflows
    are excluded (and reflected in valid_samples); the probe fails only
    when fewer than half the samples survive.

    ``func`` is a test seam: when given, it replaces the dynamics-backed
    evaluation with an arbitrary scalar function of lambda so the
    quadrature can be validated against analytic cases on its own.
    """
    if func is None:
        def func(lam: complex) -> float:
            return u_n(probe.at(lam), n)

    center_value = func(0j)
    total = 0.0
    valid = 0
    for k in range(probe.samples):
        theta = 2.0 * math.pi * k / probe.samples
        lam = probe.radius * cmath.exp(1j * theta)
        try:
            total += func(lam)
        except OverflowSignal:
            continue
        valid += 1
    if valid < probe.samples / 2:
        raise InsufficientSamples(
            f"only {valid} of {probe.samples} circle points usable"
        )
    mean = total / valid
    return SubmeanReport(
        probe=probe,
        n=n,
        center_value=center_value,
        circle_mean=mean,
        deficit=mean - center_value,
        valid_samples=valid,
    )
