"""Tests for profiles, the reflectivity transform, and Moebius steps."""

import cmath
import random
from fractions import Fraction

import pytest

from layerlab import (
    DomainError,
    FloatDepthWarning,
    ImpedanceNotInRightHalfPlane,
    MediumParams,
    NonIncreasingDepths,
    NotNormalized,
    PoleError,
    layer_collapse,
    mobius,
    phi_inverse,
    phi_map,
    profile_to_params,
    validate_profile,
)


class TestValidateProfile:
    def test_single_layer(self):
        prof = validate_profile([0.5, 0.5], [Fraction(1)])
        assert prof.n == 1
        assert prof.partial_sums() == [0.5 + 0j]

    def test_half_plane_violation(self):
        with pytest.raises(ImpedanceNotInRightHalfPlane):
            validate_profile([1, -2, 2], [Fraction(1), Fraction(2)])

    def test_complex_profile(self):
        prof = validate_profile(
            [0.3 + 0.1j, 0.4 - 0.1j, 0.3],
            ["1/2", "3/2"],
        )
        sums = prof.partial_sums()
        assert sums[0] == pytest.approx(0.3 + 0.1j)
        assert sums[1] == pytest.approx(0.7 + 0j)

    def test_depth_ordering(self):
        with pytest.raises(NonIncreasingDepths):
            validate_profile([0.5, 0.3, 0.2], [Fraction(2), Fraction(1)])
        with pytest.raises(NonIncreasingDepths):
            validate_profile([0.5, 0.5], [Fraction(0)])

    def test_normalization(self):
        with pytest.raises(NotNormalized):
            validate_profile([0.5, 0.6], [Fraction(1)])

    def test_length_mismatch(self):
        with pytest.raises(DomainError):
            validate_profile([0.5, 0.5, 0.5], [Fraction(1)])

    def test_float_depths_warn_but_convert(self):
        with pytest.warns(FloatDepthWarning):
            prof = validate_profile([0.5, 0.5], [0.5])
        assert prof.X[0] == Fraction(1, 2)


class TestPhiMap:
    def test_identity_medium(self):
        assert phi_map([1]) == [0]

    def test_equal_entries(self):
        a = 3.0
        w = phi_map([a, a, a, 1])
        assert w[:-1] == pytest.approx([0, 0, (a - 1) / (a + 1)])
        assert w[-1] == 0

    def test_complex_entry(self):
        w = phi_map([2, 1 + 1j])
        assert w[0] == pytest.approx((1 - 1j) / (3 - 1j))

    def test_rejects_left_half_plane(self):
        with pytest.raises(DomainError):
            phi_map([1, -0.5])
        with pytest.raises(DomainError):
            phi_map([1j])

    def test_strict_contraction(self):
        rng = random.Random(7)
        for _ in range(200):
            n = rng.randint(1, 5)
            zeta = [
                complex(rng.uniform(1e-3, 5), rng.uniform(-5, 5)) for _ in range(n)
            ]
            assert all(abs(wj) < 1 for wj in phi_map(zeta))


class TestPhiInverse:
    def test_zero_reflectivities(self):
        assert phi_inverse([0, 0, 0]) == [1, 1, 1]

    def test_single(self):
        w1 = 0.3 - 0.2j
        assert phi_inverse([w1])[0] == pytest.approx((1 + w1) / (1 - w1))

    def test_rejects_boundary(self):
        with pytest.raises(DomainError):
            phi_inverse([1.0])

    def test_round_trips(self):
        rng = random.Random(11)
        for _ in range(100):
            n = rng.randint(1, 5)
            w = [
                cmath.rect(rng.uniform(0, 0.9), rng.uniform(-cmath.pi, cmath.pi))
                for _ in range(n)
            ]
            back = phi_map(phi_inverse(w))
            assert max(abs(a - b) for a, b in zip(w, back)) < 1e-12

            zeta = [
                complex(rng.uniform(0.1, 4), rng.uniform(-3, 3)) for _ in range(n)
            ]
            back = phi_inverse(phi_map(zeta))
            assert max(abs(a - b) for a, b in zip(zeta, back)) < 1e-12


class TestProfileToParams:
    def test_one_interface(self):
        prof = validate_profile([0.5, 0.5], [Fraction(2)])
        params = profile_to_params(prof)
        assert params.w[0] == pytest.approx(-1 / 3)
        assert params.tau == (Fraction(2),)

    def test_equal_impedance_layers(self):
        prof = validate_profile([1.0, 0.0, 0.0], [Fraction(1), Fraction(2)])
        params = profile_to_params(prof)
        assert params.w[0] == 0

    def test_exact_travel_times(self):
        prof = validate_profile([0.4, 0.3, 0.3], ["1", "5/2"])
        params = profile_to_params(prof)
        assert params.tau == (Fraction(1), Fraction(3, 2))

    def test_real_profiles_give_real_reflectivities(self):
        rng = random.Random(3)
        for _ in range(50):
            n = rng.randint(1, 5)
            cuts = sorted(rng.uniform(0.05, 0.95) for _ in range(n))
            sums = [rng.uniform(0.1, 3) for _ in range(n)]
            C = [sums[0]]
            for a, b in zip(sums[1:], sums[:-1]):
                C.append(a - b)
            C.append(1 - sums[-1])
            X = [Fraction(i + 1) for i in range(n)]
            params = profile_to_params(validate_profile(C, X))
            for wj in params.w:
                assert wj.imag == 0
                assert -1 < wj.real < 1


class TestMobius:
    def test_base_of_recurrence(self):
        w = 0.3 + 0.5j
        assert mobius(w, 1, 0) == w.conjugate()

    def test_pure_delay(self):
        z = cmath.exp(0.7j)
        assert mobius(0, z, 0.2 + 0.1j) == z * (0.2 + 0.1j)

    def test_arithmetic(self):
        assert mobius(0.5, 1j, 0.25) == pytest.approx(1j * (2 / 3))

    def test_pole(self):
        with pytest.raises(PoleError):
            mobius(1.0, 1.0, -1.0)

    def test_disk_preserved(self):
        rng = random.Random(13)
        for _ in range(300):
            w = cmath.rect(rng.uniform(0, 1), rng.uniform(-3, 3))
            z = cmath.exp(1j * rng.uniform(-3, 3))
            v = cmath.rect(rng.uniform(0, 1), rng.uniform(-3, 3))
            assert abs(mobius(w, z, v)) <= 1 + 1e-12


class TestLayerCollapse:
    def test_single(self):
        w1 = 0.4 - 0.1j
        assert layer_collapse([w1]) == w1.conjugate()

    def test_two_layer_closed_form(self):
        w1, w2 = 0.3 + 0.2j, -0.5 + 0.1j
        want = (w1.conjugate() + w2.conjugate()) / (1 + w1 * w2.conjugate())
        assert layer_collapse([w1, w2]) == pytest.approx(want)

    def test_transparent(self):
        assert layer_collapse([0, 0, 0]) == 0

    def test_contractive(self):
        rng = random.Random(17)
        for _ in range(200):
            n = rng.randint(1, 6)
            w = [
                cmath.rect(rng.uniform(0, 0.99), rng.uniform(-3, 3))
                for _ in range(n)
            ]
            assert abs(layer_collapse(w)) <= 1 + 1e-12

    def test_antiholomorphic_in_deepest(self):
        # The holomorphic Wirtinger derivative with respect to w_n must
        # vanish; estimate it by central differences.
        w = [0.2 + 0.3j, -0.1 + 0.4j, 0.35 - 0.25j]
        h = 1e-5

        def ev(delta):
            return layer_collapse(w[:-1] + [w[-1] + delta])

        dx = (ev(h) - ev(-h)) / (2 * h)
        dy = (ev(1j * h) - ev(-1j * h)) / (2 * h)
        wirtinger = 0.5 * (dx - 1j * dy)
        assert abs(wirtinger) < 1e-9


class TestMediumParams:
    def test_validation(self):
        with pytest.raises(DomainError):
            MediumParams((0.5, 1.5), (Fraction(1), Fraction(1)))
        with pytest.raises(DomainError):
            MediumParams((0.5,), (Fraction(-1),))
        with pytest.raises(DomainError):
            MediumParams((0.5, 0.5), (Fraction(1),))

    def test_exact_times(self):
        params = MediumParams((0.1, 0.2), ("1/3", "2/5"))
        assert params.tau == (Fraction(1, 3), Fraction(2, 5))
