"""Evaluation of the skew-product map and overflow-safe orbit iteration.

The map under study is

    F(z, w) = (e^{-(z+w)} + z + w,  e^{-2w} + 2w + 1)

acting on C^2.  All arithmetic is double precision; any evaluation that
would leave the representable range raises :class:`OverflowSignal` instead
of letting infinities or NaNs leak into stored state.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field

# Largest real part for which exp() stays inside double range.
EXP_MAX = 709.0


class OverflowSignal(Exception):
    """An evaluation left the finite double range."""


def _finite(c: complex) -> bool:
    return cmath.isfinite(c)


@dataclass(frozen=True)
class PlanePoint:
    """A point (z, w) in C^2."""

    z: complex
    w: complex

    def __post_init__(self) -> None:
        if not (_finite(self.z) and _finite(self.w)):
            raise ValueError(f"non-finite point ({self.z}, {self.w})")


def safe_exp(c: complex) -> complex:
    """exp(c), raising OverflowSignal instead of overflowing.

    Underflow (very negative real part) silently returns 0, which is exact
    enough for every use in this package.
    """
    if c.real > EXP_MAX:
        raise OverflowSignal(f"exp overflow: Re = {c.real}")
    return cmath.exp(c)


def apply_f(p: PlanePoint) -> PlanePoint:
    """One application of F.  Raises OverflowSignal on any non-finite result."""
    s = p.z + p.w
    if not _finite(s):
        raise OverflowSignal("z + w overflowed")
    z1 = safe_exp(-s) + s
    w1 = safe_exp(-2 * p.w) + 2 * p.w + 1
    if not (_finite(z1) and _finite(w1)):
        raise OverflowSignal("image of F is non-finite")
    return PlanePoint(z1, w1)


@dataclass(frozen=True)
class OrbitRecord:
    """Finite orbit prefix under F.

    ``points[0]`` is the seed.  If ``overflow_step`` is k, applying F to
    ``points[k]`` overflowed and ``points`` holds exactly k+1 entries (the
    last finite state); otherwise all ``requested_steps`` steps completed.
    """

    points: tuple[PlanePoint, ...]
    requested_steps: int
    overflow_step: int | None = field(default=None)

    @property
    def completed(self) -> bool:
        return self.overflow_step is None

    @property
    def last(self) -> PlanePoint:
        return self.points[-1]


def orbit(seed: PlanePoint, n: int) -> OrbitRecord:
    """Iterate F up to n times, stopping early on overflow."""
    if n < 0:
        raise ValueError("step count must be >= 0")
    pts = [seed]
    for k in range(n):
        try:
            pts.append(apply_f(pts[-1]))
        except OverflowSignal:
            return OrbitRecord(tuple(pts), n, overflow_step=k)
    return OrbitRecord(tuple(pts), n)
