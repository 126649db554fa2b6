import cmath
import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from fracschro import (DomainError, FractionalParams, PhysicalParams, PoleError, Regime,
                       SampledField, complex_gamma, loggamma, validate_params)

# mpmath at 30 digits, frozen
GAMMA_REF = [
    (0.5 + 1.0j, 0.3006946172606558 - 0.4249678794331238j),
    (3.7 + 2.1j, -1.8598252959665196 + 1.1623401526968618j),
    (-2.3 + 0.4j, -0.37776333073497614 - 0.549515506074271j),
    (0.1 - 7.0j, 1.847258471388663e-05 + 5.625609535565905e-06j),
    (12.0 - 15.0j, -4585.642722830478 - 12097.739682031914j),
]

off_axis = st.complex_numbers(min_magnitude=0.05, max_magnitude=30, allow_nan=False, allow_infinity=False)


def test_gamma_trivial_values():
    assert complex_gamma(1.0) == pytest.approx(1.0, rel=1e-14)
    assert complex_gamma(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-14)


@pytest.mark.parametrize("z, ref", GAMMA_REF)
def test_gamma_against_frozen_reference(z, ref):
    assert abs(complex_gamma(z) - ref) <= 1e-12 * abs(ref)


@given(off_axis)
def test_gamma_twelve_digits_in_disc(z):
    assume(abs(z.imag) > 1e-3 or abs(z.real - round(z.real)) > 1e-3 or z.real > 0)
    ref = complex(mp.gamma(mp.mpc(z.real, z.imag)))
    assert abs(complex_gamma(z) - ref) <= 1e-12 * abs(ref)


@given(off_axis)
def test_reflection(z):
    assume(abs(z.imag) > 1e-2)
    lhs = complex_gamma(z) * complex_gamma(1 - z) * cmath.sin(math.pi * z) / math.pi
    assert abs(lhs - 1) < 1e-10


@given(off_axis)
def test_recurrence(z):
    assume(abs(z.imag) > 1e-2 and abs(z) < 25)
    g = complex_gamma(z)
    assert abs(complex_gamma(z + 1) - z * g) <= 1e-10 * abs(z * g)


@given(off_axis)
def test_conjugation(z):
    assume(abs(z.imag) > 1e-2)
    assert abs(complex_gamma(z.conjugate()) - complex_gamma(z).conjugate()) <= 1e-12 * abs(complex_gamma(z))


@pytest.mark.parametrize("z", [0, -1, -2, -7.0, -30])
def test_gamma_poles(z):
    with pytest.raises(PoleError):
        complex_gamma(z)


def test_gamma_array_and_real_axis():
    z = np.array([0.5, 1.5, 2.5, -0.5])
    out = complex_gamma(z)
    assert np.all(out.imag == 0)
    assert np.allclose(out.real, [math.gamma(v) for v in z], rtol=1e-14)


def test_loggamma_exponentiates_to_gamma():
    z = np.array([0.3 + 40j, -10.5 + 0.2j, 25 - 3j])
    assert np.allclose(np.exp(loggamma(z)), complex_gamma(z), rtol=1e-12)


class TestValidation:
    def test_free_particle_ok(self):
        validate_params(FractionalParams(1.5, 0.9, 0.3), Regime.FREE_PARTICLE)

    def test_free_particle_theta_too_large(self):
        with pytest.raises(DomainError, match="2-alpha"):
            validate_params(FractionalParams(1.5, 0.9, 0.6), Regime.FREE_PARTICLE)

    def test_linear_potential_airy_case(self):
        validate_params(FractionalParams(2.0, 1.0, 0.0), Regime.LINEAR_POTENTIAL)

    def test_theta_boundary_is_admitted(self):
        validate_params(FractionalParams(1.8, 0.5, 0.2), Regime.FREE_PARTICLE)
        validate_params(FractionalParams(1.8, 0.5, -0.2), Regime.LINEAR_POTENTIAL)

    @pytest.mark.parametrize("fp, pattern", [
        (FractionalParams(0.0, 0.5, 0.0), "alpha"),
        (FractionalParams(2.5, 0.5, 0.0), "alpha"),
        (FractionalParams(1.5, 0.0, 0.0), "beta"),
        (FractionalParams(1.5, 1.2, 0.0), "beta"),
        (FractionalParams(0.5, 0.5, 0.6), "theta"),
        (FractionalParams(float("nan"), 0.5, 0.0), "alpha"),
    ])
    def test_general_regime_rejects(self, fp, pattern):
        with pytest.raises(DomainError, match=pattern):
            validate_params(fp)

    def test_free_particle_excludes_alpha_two(self):
        with pytest.raises(DomainError, match="1 < alpha < 2"):
            validate_params(FractionalParams(2.0, 1.0, 0.0), Regime.FREE_PARTICLE)

    @given(st.floats(0.01, 2.0), st.floats(0.01, 1.0), st.floats(-1, 1))
    def test_general_accepts_exactly_the_constraint_set(self, a, b, th):
        ok = abs(th) <= min(a, 2 - a) + 1e-12
        try:
            validate_params(FractionalParams(a, b, th))
            assert ok
        except DomainError:
            assert not ok


class TestPhysicalParams:
    @pytest.mark.parametrize("kw", [dict(hbar=0), dict(c_alpha=-1), dict(slope_a=0), dict(energy_e=0)])
    def test_rejects(self, kw):
        with pytest.raises(DomainError):
            PhysicalParams(**kw)

    def test_defaults(self):
        pp = PhysicalParams()
        assert (pp.hbar, pp.c_alpha, pp.slope_a, pp.energy_e) == (1.0, 1.0, None, None)


class TestSampledField:
    def test_requires_increasing_points(self):
        with pytest.raises(DomainError):
            SampledField(np.array([0.0, 1.0, 1.0]), np.zeros(3))

    def test_requires_equal_lengths(self):
        with pytest.raises(DomainError):
            SampledField(np.array([0.0, 1.0]), np.zeros(3))

    def test_rejects_non_finite(self):
        with pytest.raises(DomainError):
            SampledField(np.array([0.0, 1.0]), np.array([1.0, np.nan]))

    def test_uniformity(self):
        assert SampledField(np.linspace(0, 1, 11), np.zeros(11)).is_uniform()
        assert not SampledField(np.array([0.0, 0.1, 0.5]), np.zeros(3)).is_uniform()
