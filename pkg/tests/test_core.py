import cmath
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bakerbench.core import (
    EXP_MAX,
    OverflowSignal,
    PlanePoint,
    apply_f,
    orbit,
    safe_exp,
)

# Frozen with a 60-digit mpmath evaluation, rounded to double.
F_1_1 = (2.1353352832366127, 3.1353352832366127)
F_1_2 = (3.049787068367864, 5.018315638888734)


class TestSafeExp:
    def test_zero(self):
        assert safe_exp(0j) == 1 + 0j

    def test_euler_identity(self):
        assert abs(safe_exp(1j * math.pi) - (-1 + 0j)) < 1e-15

    def test_overflow(self):
        with pytest.raises(OverflowSignal):
            safe_exp(800 + 0j)

    def test_threshold_edge(self):
        assert cmath.isfinite(safe_exp(EXP_MAX + 0j))
        with pytest.raises(OverflowSignal):
            safe_exp(EXP_MAX + 1e-8 + 0j)

    def test_underflow_is_silent_zero(self):
        assert safe_exp(-800 + 0j) == 0j


class TestApplyF:
    def test_origin(self):
        img = apply_f(PlanePoint(0j, 0j))
        assert img == PlanePoint(1 + 0j, 2 + 0j)

    def test_one_one(self):
        img = apply_f(PlanePoint(1 + 0j, 1 + 0j))
        assert abs(img.z - F_1_1[0]) < 1e-15
        assert abs(img.w - F_1_1[1]) < 1e-15

    def test_one_two(self):
        # image of (1, 2), i.e. (zeta, 2 zeta) at zeta = 1:
        # (e^-3 + 3, e^-4 + 5)
        img = apply_f(PlanePoint(1 + 0j, 2 + 0j))
        assert abs(img.z - F_1_2[0]) < 1e-15
        assert abs(img.w - F_1_2[1]) < 1e-15

    def test_overflow_signalled(self):
        with pytest.raises(OverflowSignal):
            apply_f(PlanePoint(-400 + 0j, -400 + 0j))

    def test_never_returns_nonfinite(self):
        # 2w leaves double range even though the exponentials underflow
        with pytest.raises(OverflowSignal):
            apply_f(PlanePoint(1 + 0j, 9.5e307 + 0j))


class TestOrbit:
    def test_zero_steps(self):
        rec = orbit(PlanePoint(0j, 0j), 0)
        assert rec.completed
        assert rec.points == (PlanePoint(0j, 0j),)

    def test_one_step(self):
        rec = orbit(PlanePoint(0j, 0j), 1)
        assert rec.completed
        assert rec.points[1] == PlanePoint(1 + 0j, 2 + 0j)

    def test_growth_after_forty_steps(self):
        rec = orbit(PlanePoint(2 + 0j, 4 + 0j), 40)
        assert rec.completed
        # oracle: Re w_40 ~ 5.4977e12, far above 2*4 + 20
        assert rec.last.w.real > 2 * 4 + 20

    def test_overflow_truncation(self):
        rec = orbit(PlanePoint(-400 + 0j, -400 + 0j), 5)
        assert not rec.completed
        assert rec.overflow_step == 0
        assert len(rec.points) == 1

    def test_negative_steps_rejected(self):
        with pytest.raises(ValueError):
            orbit(PlanePoint(0j, 0j), -1)

    def test_determinism(self):
        a = orbit(PlanePoint(2 + 1j, 4 - 3j), 25)
        b = orbit(PlanePoint(2 + 1j, 4 - 3j), 25)
        assert a == b

    def test_consistency(self):
        rec = orbit(PlanePoint(1.5 + 0.5j, 3 + 0j), 20)
        for k in range(len(rec.points) - 1):
            assert apply_f(rec.points[k]) == rec.points[k + 1]


seeds = st.tuples(
    st.floats(-5, 5), st.floats(-5, 5), st.floats(-5, 5), st.floats(-5, 5)
)


@settings(max_examples=200, deadline=None)
@given(seeds, st.integers(0, 15), st.integers(0, 15))
def test_orbit_prefix_property(coords, m, n):
    if m > n:
        m, n = n, m
    seed = PlanePoint(complex(coords[0], coords[1]), complex(coords[2], coords[3]))
    long = orbit(seed, n)
    short = orbit(seed, m)
    if long.completed:
        assert short.completed
    if short.completed:
        assert long.points[: m + 1] == short.points
