import cmath
import math

import mpmath as mp
import numpy as np
import pytest

from bakerbench.witness import (
    SERIES_CUTOFF,
    SolverFailure,
    find_witnesses,
    first_coord_identity_residual,
    h_eval,
    image_direction,
)

TAU = 2 * math.pi

# (e^-3 + 2)/4, frozen from a 60-digit evaluation
H_AT_ONE = 0.512446767091966


class TestHEval:
    def test_at_one(self):
        assert abs(h_eval(1 + 0j) - H_AT_ONE) < 1e-15

    def test_exact_three_quarters_point(self):
        # e^{-3 zeta} = 1 at zeta = 2 pi i / 3, so h = 3/4
        assert abs(h_eval(TAU * 1j / 3) - 0.75) < 1e-14

    def test_removable_singularity(self):
        assert h_eval(0j) == 0j

    def test_series_direct_agreement_on_cutoff_circle(self):
        for k in range(32):
            zeta = SERIES_CUTOFF * (1 - 1e-12) * cmath.exp(1j * TAU * k / 32)
            series = h_eval(zeta)
            direct = (cmath.exp(-3 * zeta) + 3 * zeta - 1) / (4 * zeta)
            assert abs(series - direct) < 1e-10

    def test_matches_high_precision_near_zero(self):
        mp.mp.dps = 40
        for r in (1e-4, 5e-4):
            zeta = complex(r, r)
            z = mp.mpc(zeta)
            exact = (mp.exp(-3 * z) + 3 * z - 1) / (4 * z)
            assert abs(h_eval(zeta) - complex(exact)) < 1e-12


class TestIdentity:
    def test_simple_points(self):
        assert first_coord_identity_residual(1 + 0j) <= 1e-13
        assert first_coord_identity_residual(5 + 2j) <= 1e-13

    def test_negative_real_axis(self):
        assert first_coord_identity_residual(-10 + 0j) <= 1e-10

    def test_random_sample(self):
        rng = np.random.Generator(np.random.PCG64(11))
        for _ in range(200):
            r = 50 * math.sqrt(rng.uniform())
            th = rng.uniform(0, TAU)
            zeta = complex(r * math.cos(th), r * math.sin(th))
            if zeta == 0:
                continue
            assert first_coord_identity_residual(zeta) <= 1e-10

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            first_coord_identity_residual(0j)


def winding_number(a: complex, center: complex, radius: float = 0.5) -> int:
    """Root count of g(z) = e^{-3z} - a z - 1 inside the circle, via the
    argument principle with high-precision quadrature.  Independent of the
    branch solver under test."""
    mp.mp.dps = 30
    a = mp.mpc(a)
    total = mp.mpc(0)
    N = 512
    for j in range(N):
        th = 2 * mp.pi * j / N
        pt = mp.mpc(center) + radius * mp.exp(1j * th)
        g = mp.exp(-3 * pt) - a * pt - 1
        gp = -3 * mp.exp(-3 * pt) - a
        total += gp / g * (radius * 1j * mp.exp(1j * th)) * (2 * mp.pi / N)
    return int(mp.nint((total / (2j * mp.pi)).real))


class TestFindWitnesses:
    def test_exact_family(self):
        seq = find_witnesses(0.75 + 0j, 3)
        expected = [TAU * 1j / 3, TAU * 2j / 3, TAU * 1j]
        for got, want in zip(seq.zetas, expected):
            assert abs(got - want) < 1e-15
        assert all(r < 1e-12 for r in seq.residuals)

    def test_exact_family_deep(self):
        seq = find_witnesses(0.75 + 0j, 20)
        assert all(r < 1e-12 for r in seq.residuals)
        assert all(b > a for a, b in zip(seq.moduli, seq.moduli[1:]))

    @pytest.mark.parametrize("target", [0j, 1 + 0j, 2 + 1j])
    def test_general_targets(self, target):
        seq = find_witnesses(target, 5)
        assert len(seq.zetas) == 5
        assert all(r < 1e-8 for r in seq.residuals)
        assert all(b > a for a, b in zip(seq.moduli, seq.moduli[1:]))

    @pytest.mark.parametrize("target", [0j, 1 + 0j])
    def test_roots_localized_independently(self, target):
        seq = find_witnesses(target, 2)
        a = 4 * target - 3
        for zeta in seq.zetas:
            assert winding_number(a, zeta) == 1

    def test_count_validation(self):
        with pytest.raises(ValueError):
            find_witnesses(1 + 0j, 0)


class TestImageDirection:
    def test_origin(self):
        d = image_direction(0j)
        assert not d.degenerate
        assert d.p == 0.5
        assert d.q == 1.0

    def test_at_one(self):
        d = image_direction(1 + 0j)
        # F(1,2) = (e^-3 + 3, e^-4 + 5); second coordinate dominates
        assert abs(d.q - 1.0) < 1e-15
        assert abs(d.p - 0.6077312165727413) < 1e-14

    def test_normalization(self):
        for zeta in (3 + 1j, -2 + 5j, 10j):
            d = image_direction(zeta)
            assert abs(max(abs(d.p), abs(d.q)) - 1.0) < 1e-12

    def test_first_coordinate_identity_point(self):
        zeta = TAU * 1j / 3
        from bakerbench.core import PlanePoint, apply_f

        img = apply_f(PlanePoint(zeta, 2 * zeta))
        assert abs(img.z - (3 * zeta + 1)) < 1e-12

    def test_degenerate_on_overflow(self):
        d = image_direction(-300 + 0j)
        assert d.degenerate
