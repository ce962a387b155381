import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diracstep import spinor_oracle as so
from diracstep.scattering import IncidentAmplitudes

from conftest import FROZEN, MU


def test_massless_normal_incidence_state():
    psi = so.build_state(0.0, 0.0, 0.0, +1)
    assert np.allclose(psi, 0.5 * np.array([1, 1, 1, 1]))
    odd, even = np.sum(abs(psi[:2]) ** 2), np.sum(abs(psi[2:]) ** 2)
    assert odd == pytest.approx(even)


@pytest.mark.parametrize("h", [1, -1])
def test_helicity_and_energy_eigenstate(h):
    mu, theta = 0.5, 0.2
    psi = so.build_state(mu, 0.0, theta, h)
    p = math.sqrt(1 - mu**2)
    sigma_p = math.cos(theta) * so.SIGMA_X + math.sin(theta) * so.SIGMA_Y
    helicity = np.kron(so.IDENTITY_2, sigma_p)
    assert np.allclose(helicity @ psi, h * psi, atol=1e-12)
    H = so.dirac_hamiltonian(mu, p * math.cos(theta), p * math.sin(theta))
    assert np.allclose(H @ psi, psi, atol=1e-12)


def test_block_norms():
    mu = 0.5
    psi = so.build_state(mu, 0.0, 0.2, -1)
    assert np.sum(abs(psi[:2]) ** 2) == pytest.approx((1 - mu) / 2)
    assert np.sum(abs(psi[2:]) ** 2) == pytest.approx((1 + mu) / 2)


def test_negative_energy_states_are_eigenstates():
    mu, nu = 0.5, FROZEN["klein"]["nu"]
    bases = so.region_bases(mu, nu, math.asin(0.3))
    e = 1 - nu
    for psi in bases["transmitted"]:
        q = math.sqrt(e * e - mu * mu)
        py = math.sqrt(1 - mu * mu) * 0.3
        H = so.dirac_hamiltonian(mu, math.sqrt(q * q - py * py), py)
        assert np.allclose(H @ psi, e * psi, atol=1e-12)


@given(x=st.floats(-math.pi, math.pi), sign=st.sampled_from([1, -1]))
def test_projectors_idempotent(x, sign):
    P = so.helicity_projector(complex(math.cos(x), math.sin(x)), sign)
    assert np.allclose(P @ P, P, atol=1e-12)


def test_boundary_solve_no_step():
    inc = IncidentAmplitudes.polar(0.6, 0.8, 0.3)
    amps = so.boundary_solve(0.5, 0.0, 0.4, inc)
    assert abs(amps.r_plus) < 1e-14 and abs(amps.r_minus) < 1e-14
    assert amps.t_plus == pytest.approx(inc.i_plus) and amps.t_minus == pytest.approx(inc.i_minus)


@pytest.mark.parametrize("side", ["diffusion", "klein"])
def test_boundary_solve_frozen(side):
    h = 1 / math.sqrt(2)
    amps = so.boundary_solve(MU, FROZEN[side]["nu"], math.asin(0.3), IncidentAmplitudes(h, h))
    assert np.abs(amps.as_array() - np.array(FROZEN[side]["quad"])).max() < 1e-10


def test_klein_point_over_reflects():
    amps = so.boundary_solve(MU, FROZEN["klein"]["nu"], math.asin(0.3), IncidentAmplitudes(1, 0))
    assert amps.reflection > 1


def test_singular_system_is_reported(monkeypatch):
    monkeypatch.setattr(so, "MAX_CONDITION", 1.0)
    with pytest.raises(so.SingularSystem, match="mu=0.5"):
        so.boundary_solve(0.5, 0.2, 0.3, IncidentAmplitudes(1, 0))


def test_density_matrix_basics():
    e1 = np.array([1, 0, 0, 0], dtype=complex)
    assert np.allclose(so.density_matrix(e1), np.diag([1, 0, 0, 0]))
    with pytest.raises(so.ZeroState):
        so.density_matrix(np.zeros(4))
    psi = so.wave_state(MU, FROZEN["diffusion"]["nu"], math.asin(0.3),
                        (FROZEN["diffusion"]["quad"][0], FROZEN["diffusion"]["quad"][1]), "reflected")
    rho = so.density_matrix(psi)
    assert np.trace(rho).real == pytest.approx(1.0)
    assert np.allclose(rho @ rho, rho, atol=1e-12)
    assert np.allclose(rho, rho.conj().T, atol=1e-12)


def test_partial_trace_bell_and_product():
    bell = np.array([1, 0, 0, 1], dtype=complex) / math.sqrt(2)
    for keep in so.Subsystem:
        assert np.allclose(so.partial_trace(so.density_matrix(bell), keep), np.eye(2) / 2)
    product = np.kron([0.6, 0.8j], [1 / math.sqrt(2), -1 / math.sqrt(2)])
    red = so.partial_trace(so.density_matrix(product), "parity")
    assert np.allclose(red, np.outer([0.6, 0.8j], np.conj([0.6, 0.8j])))
    assert so.reduced_eigenvalues(red)[1] == pytest.approx(0.0, abs=1e-12)


def test_gamma5_expectation():
    psi = so.wave_state(0.5, 0.0, 0.3, (1.0, 0.0), "incident")
    assert so.gamma5_expectation(psi) == pytest.approx(math.sqrt(0.75))
    h = 1 / math.sqrt(2)
    psi = so.wave_state(0.5, 0.0, 0.3, (h, h), "incident")
    assert so.gamma5_expectation(psi) == pytest.approx(0.0, abs=1e-15)


@settings(max_examples=100)
@given(mu=st.floats(0.0, 0.95), nu=st.floats(0.0, 2.5), theta=st.floats(0.0, 1.5),
       a=st.complex_numbers(max_magnitude=1.0), b=st.complex_numbers(max_magnitude=1.0))
def test_purity(mu, nu, theta, a, b):
    if abs(1 - nu) < 1e-6 or abs((1 - nu) ** 2 - mu**2) < 1e-6 or abs(a) + abs(b) < 1e-3:
        return
    for wave in ("incident", "reflected", "transmitted"):
        rho = so.density_matrix(so.wave_state(mu, nu, theta, (a, b), wave))
        assert np.trace(rho @ rho).real == pytest.approx(1.0, abs=1e-12)
