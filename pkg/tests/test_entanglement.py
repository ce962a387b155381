import dataclasses
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from diracstep import StepConfig
from diracstep import entanglement as en
from diracstep.kinematics import MediumParams, Side
from diracstep.scattering import IncidentAmplitudes
from diracstep.spinor_oracle import density_matrix, partial_trace, reduced_eigenvalues, wave_state

from conftest import FROZEN, MU


def test_kappa_examples():
    assert en.kappa("incident", 0.5, 0.3).value == pytest.approx(0.5773503, abs=1e-7)
    assert en.kappa("reflected", 0.5, 1.7).value == en.kappa("incident", 0.5, 0.0).value
    assert en.kappa("transmitted", 0.3, 0.0).value == pytest.approx(en.kappa("incident", 0.3, 0.0).value)
    k = en.kappa("transmitted", 0.5, FROZEN["klein"]["nu"])
    assert k.value == pytest.approx(math.sqrt(0.161438 / 1.161438), abs=1e-6)
    assert not k.even_dominant
    with pytest.raises(en.EvanescentKappa):
        en.kappa("transmitted", 0.5, 0.8)


def test_parity_observables():
    assert en.parity_observables(en.KappaFactor(1.0, en.Wave.INCIDENT)) == pytest.approx((0.5, 0.5, 0.0))
    p_odd, p_even, avg = en.parity_observables(en.kappa("incident", 0.5, 0.0))
    assert (p_odd, p_even, avg) == pytest.approx((0.25, 0.75, 0.5))
    for nu in (0.2, FROZEN["diffusion"]["nu"], FROZEN["klein"]["nu"], 2.4):
        *_, avg_t = en.parity_observables(en.kappa("transmitted", 0.5, nu))
        assert avg_t == pytest.approx(0.5 / (1 - nu))


def test_spectrum_examples():
    k = en.kappa("reflected", 0.5, 0.0)
    assert en.reduced_spectrum(k, 0.7, 0.0) == en.ReducedSpectrum(1.0, 0.0)
    with pytest.raises(en.ZeroAmplitudes):
        en.reduced_spectrum(k, 0.0, 0.0)
    # sin(theta_0) = mu / sqrt(1 + mu^2)
    (_, _), (s0, spec) = en.extremal_points(0.5, IncidentAmplitudes(1, 0))
    assert (spec.lambda_plus, spec.lambda_minus) == pytest.approx((0.75, 0.25))


def test_spectrum_matches_partial_trace(side):
    mu, nu, theta = MU, FROZEN[side]["nu"], math.asin(0.3)
    pa = en.analyze(MediumParams(mu, nu), theta, IncidentAmplitudes(1, 0))
    rho = density_matrix(wave_state(mu, nu, theta, pa.amplitudes.reflected, "reflected"))
    lam = reduced_eigenvalues(partial_trace(rho, "parity"))
    assert lam == pytest.approx((pa.reflected.spectrum.lambda_plus, pa.reflected.spectrum.lambda_minus), abs=1e-10)


def test_entropy_examples():
    assert en.von_neumann_entropy(en.ReducedSpectrum(1.0, 0.0)) == 0.0
    assert en.von_neumann_entropy(en.ReducedSpectrum(0.5, 0.5)) == pytest.approx(1.0)
    assert en.von_neumann_entropy(en.ReducedSpectrum(0.75, 0.25)) == pytest.approx(0.8112781, abs=1e-7)


@given(k=st.floats(0.0, 5.0), w=st.floats(0.0, 1.0), phase=st.floats(-3, 3))
def test_spectrum_is_a_distribution(k, w, phase):
    a, b = math.sqrt(w), math.sqrt(1 - w) * complex(math.cos(phase), math.sin(phase))
    if abs(a) + abs(b) == 0:
        return
    spec = en.reduced_spectrum(en.KappaFactor(k, en.Wave.REFLECTED), a, b)
    assert spec.lambda_plus + spec.lambda_minus == pytest.approx(1.0, abs=1e-12)
    assert 1.0 >= spec.lambda_plus >= spec.lambda_minus >= 0.0
    assert 0.0 <= en.von_neumann_entropy(spec) <= 1.0 + 1e-12


def test_chirality_examples(side):
    assert en.chirality("incident", 0.5, 0.5, side, (1.0, 0.0)) == pytest.approx(0.8660254, abs=1e-7)
    h = 1 / math.sqrt(2)
    for wave in en.Wave:
        assert en.chirality(wave, 0.5, 0.5, side, (h, h)) == 0.0
    pa = en.analyze(MediumParams(MU, FROZEN[side]["nu"]), math.asin(0.3), IncidentAmplitudes(1, 0))
    a = pa.amplitudes
    assert pa.reflected.chirality == pytest.approx(math.sqrt(0.75) * (abs(a.r_plus) ** 2 - abs(a.r_minus) ** 2))
    diff = abs(a.t_plus) ** 2 - abs(a.t_minus) ** 2
    assert np.sign(pa.transmitted.chirality / diff) == (1 if side == "diffusion" else -1)


def test_extremal_points():
    pts = en.extremal_points(0.5, IncidentAmplitudes(1.0, 0.0))
    assert pts[1][0] == pytest.approx(0.4472136, abs=1e-7)
    assert en.von_neumann_entropy(pts[0][1]) == 0.0
    h = 1 / math.sqrt(2)
    inc = IncidentAmplitudes(0.6, 0.8)
    zero_mass = en.extremal_points(0.0, inc)
    assert zero_mass[0][1] == zero_mass[1][1]
    incident = en.reduced_spectrum(en.kappa("incident", 0.0, 0.0), *inc.pair)
    assert zero_mass[0][1].lambda_plus == pytest.approx(incident.lambda_plus)
    with pytest.raises(en.PreconditionPhase):
        en.extremal_points(0.5, IncidentAmplitudes.polar(h, h, 0.3))


def _cfg(**kw):
    base = dict(mu=0.5, sin_theta_c=0.5, zone_side="diffusion", theta_samples=60)
    base.update(kw)
    return StepConfig(**base)


def test_scan_marks_evanescent_points():
    pts = en.entropy_scan(_cfg())
    assert all((p.s_t is None) == (not p.zone.oscillatory) for p in pts)
    assert all(p.s_r is not None for p in pts)


def test_scan_records_failures():
    pts = en.entropy_scan(_cfg(mu=0.0, sin_theta_c=0.5, zone_side="klein"), [0.0, 0.3])
    assert pts[0].error and "SingularDenominator" in pts[0].error
    assert pts[1].error is None


def test_scan_parallel_matches_serial():
    cfg = _cfg(zone_side="klein", i_plus_mag=0.6, i_minus_mag=0.8, delta_omega=1.0)
    assert en.entropy_scan(cfg, threads=4) == en.entropy_scan(cfg)


def test_scan_limits():
    h = 1 / math.sqrt(2)
    for side in Side:
        nr = en.entropy_scan(_cfg(mu=1 - 1e-9, zone_side=side, i_plus_mag=0.6, i_minus_mag=0.8))
        assert max(max(p.s_r, p.s_t or 0) for p in nr) < 1e-6
        ur = en.entropy_scan(_cfg(mu=1e-6, zone_side=side, i_plus_mag=h, i_minus_mag=h))
        s_inc = 1.0
        assert all(abs(p.s_r - s_inc) < 1e-5 for p in ur)


def test_phase_zero():
    h = 1 / math.sqrt(2)
    f = en.reflected_entropy(_cfg(i_plus_mag=h, i_minus_mag=h, delta_omega=math.pi / 2))
    assert f(0.5 / math.sqrt(1.25)) < 1e-8


def test_antiparticle():
    cfg = _cfg(i_plus_mag=0.6, i_minus_mag=0.8, delta_omega=math.pi / 3)
    anti = en.antiparticle_transform(cfg)
    assert anti.mu == -0.5
    assert en.antiparticle_transform(anti) == cfg
    mirrored = dataclasses.replace(cfg, delta_omega=-math.pi / 3)
    for a, b in zip(en.entropy_scan(anti), en.entropy_scan(mirrored)):
        assert a.s_r == pytest.approx(b.s_r, abs=1e-10)
    still = _cfg(i_plus_mag=0.6, i_minus_mag=0.8)
    for a, b in zip(en.entropy_scan(en.antiparticle_transform(still)), en.entropy_scan(still)):
        assert a.s_r == pytest.approx(b.s_r, abs=1e-10)


def test_transmitted_extremum_numeric():
    cfg = _cfg(zone_side="klein")
    f = en.transmitted_entropy(cfg)
    x, v = en.locate_extremum(f, (0.2, 0.45), "max")
    assert 0.2 < x < 0.45
    assert v >= max(f(s) for s in np.linspace(0.2, 0.45, 50)) - 1e-9
    with pytest.raises(en.EvanescentKappa):
        f(0.6)
