import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diracstep.kinematics import (DegenerateTransmission, MediumParams, NormalFluxZero, Side, Zone,
                                  classify, critical_sine_squared, flux_ratio, nu_from_critical, refract)

from conftest import FROZEN

NU_D = 1 - math.sqrt(0.4375)
NU_K = 1 + math.sqrt(0.4375)


def test_critical_sine_examples():
    assert critical_sine_squared(MediumParams(0.0, 0.0)) == 1.0
    assert critical_sine_squared(MediumParams(0.5, NU_D)) == pytest.approx(0.25, abs=1e-12)
    assert critical_sine_squared(MediumParams(0.5, 1.0)) == pytest.approx(-1 / 3, abs=1e-15)


def test_nu_from_critical_examples():
    assert nu_from_critical(0.5, 1.0, Side.DIFFUSION) == pytest.approx(0.0, abs=1e-15)
    assert nu_from_critical(0.5, 0.5, "diffusion") == pytest.approx(0.3385621722, abs=1e-10)
    assert nu_from_critical(0.5, 0.5, "klein") == pytest.approx(1.6614378278, abs=1e-10)
    assert nu_from_critical(0.5, 0.5, "diffusion") == FROZEN["diffusion"]["nu"]


@given(mu=st.floats(0.0, 0.99), s=st.floats(0.0, 1.0), side=st.sampled_from(list(Side)))
def test_critical_round_trip(mu, s, side):
    nu = nu_from_critical(mu, s, side)
    assert critical_sine_squared(MediumParams(mu, nu)) == pytest.approx(s * s, abs=1e-12)


def test_classify_examples():
    for t in (0.0, 0.4, 1.2):
        assert classify(MediumParams(0.5, 0.0), t) is Zone.DIFFUSION_OSCILLATORY
    assert classify(MediumParams(0.5, NU_D), math.asin(0.6)) is Zone.TUNNELING_SUB
    assert classify(MediumParams(0.5, NU_K), math.asin(0.3)) is Zone.KLEIN_OSCILLATORY
    assert classify(MediumParams(0.5, NU_K), math.asin(0.6)) is Zone.TUNNELING_KLEIN
    assert classify(MediumParams(0.5, 1.0), 0.1) is Zone.TUNNELING_SUB


def test_refract_examples():
    r = refract(MediumParams(0.5, NU_D), 0.0)
    assert r.sin_theta_prime == 0
    assert r.cos_theta_prime == pytest.approx(1.0)
    r = refract(MediumParams(0.5, NU_D), math.asin(0.25))
    assert r.sin_theta_prime.real == pytest.approx(0.5, abs=1e-12)
    r = refract(MediumParams(0.5, NU_D), math.asin(0.6))
    assert r.evanescent
    assert r.sin_theta_prime.real == pytest.approx(1.2, abs=1e-12)
    assert r.cos_theta_prime == pytest.approx(1j * math.sqrt(0.44), abs=1e-12)


def test_refract_degenerate():
    with pytest.raises(DegenerateTransmission):
        refract(MediumParams(0.5, 0.5), 0.2)
    with pytest.raises(DegenerateTransmission):
        refract(MediumParams(0.0, 1.0), 0.2)


def test_angle_and_param_validation():
    with pytest.raises(ValueError):
        MediumParams(1.0, 0.0)
    with pytest.raises(ValueError):
        MediumParams(0.5, -0.1)
    with pytest.raises(ValueError):
        refract(MediumParams(0.5, 0.0), math.pi / 2 + 0.1)
    with pytest.raises(NormalFluxZero):
        flux_ratio(MediumParams(0.5, 0.0), math.pi / 2)


params = st.tuples(st.floats(0.0, 0.98), st.floats(0.0, 2.6), st.floats(0.0, 1.55))


@settings(max_examples=300)
@given(params)
def test_refraction_identities(p):
    mu, nu, theta = p
    m = MediumParams(mu, nu)
    try:
        r = refract(m, theta)
    except DegenerateTransmission:
        return
    assert abs(r.sin_theta_prime**2 + r.cos_theta_prime**2 - 1) < 1e-9 * max(1, abs(r.sin_theta_prime) ** 2)
    zone = classify(m, theta)
    if abs(critical_sine_squared(m) - math.sin(theta) ** 2) > 1e-12:
        assert zone.oscillatory == (not r.evanescent)
    if r.evanescent:
        # decaying branch
        assert r.normal_momentum.imag >= 0


@settings(max_examples=300)
@given(params)
def test_flux_sign_by_zone(p):
    mu, nu, theta = p
    m = MediumParams(mu, nu)
    zone = classify(m, theta)
    try:
        f = flux_ratio(m, theta)
    except DegenerateTransmission:
        return
    if zone is Zone.DIFFUSION_OSCILLATORY:
        assert f > 0
    elif zone is Zone.KLEIN_OSCILLATORY:
        assert f < 0
    else:
        assert f == 0.0


def test_flux_examples():
    assert flux_ratio(MediumParams(0.5, 0.0), 0.0) == pytest.approx(1.0)
    assert flux_ratio(MediumParams(0.5, NU_K), 0.0) < 0
    assert flux_ratio(MediumParams(0.5, NU_D), math.asin(0.7)) == 0.0


@given(s=st.floats(0.05, 1.0), mu=st.floats(0.0, 0.95), frac=st.floats(0.0, 1.0))
def test_diffusion_refracts_away_from_normal(s, mu, frac):
    m = MediumParams.from_critical(mu, s, Side.DIFFUSION)
    sin_t = frac * s * 0.999
    r = refract(m, math.asin(sin_t))
    assert r.sin_theta_prime.real >= sin_t - 1e-12
