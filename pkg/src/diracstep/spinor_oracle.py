"""Brute-force bi-spinor path: explicit 4-component states and direct matching.

Component order is parity (x) spin:

    (odd, up), (odd, down), (even, up), (even, down)

The even block is the beta = +1 (large, for particles) component, so
beta = diag(-1, -1, +1, +1) and gamma5 = sigma_x (x) 1 swaps the blocks.
Nothing here uses the closed-form amplitudes; the module only needs the Dirac
Hamiltonian, plane waves and a 4x4 linear solve.
"""
from __future__ import annotations

import cmath
import enum
import math

import numpy as np

from .scattering import IncidentAmplitudes, ScatteredAmplitudes

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY_2 = np.eye(2, dtype=complex)

BETA = np.kron(np.diag([-1.0, 1.0]), IDENTITY_2).astype(complex)
PARITY = BETA
GAMMA5 = np.kron(SIGMA_X, IDENTITY_2)

MAX_CONDITION = 1e12


class Subsystem(str, enum.Enum):
    PARITY = "parity"
    HELICITY = "helicity"


class SingularSystem(np.linalg.LinAlgError):
    pass


class ZeroState(ValueError):
    pass


def _branch_sqrt(x: complex) -> complex:
    # real non-negative root, or +i times one for negative reals
    x = complex(x)
    if x.imag == 0.0:
        return complex(math.sqrt(x.real), 0.0) if x.real >= 0 else complex(0.0, math.sqrt(-x.real))
    return cmath.sqrt(x)


def dirac_hamiltonian(mass: float, kx: complex, ky: complex) -> np.ndarray:
    """H = sigma_x (x) (sigma . k) + mass * beta in the parity (x) spin basis."""
    sigma_k = kx * SIGMA_X + ky * SIGMA_Y
    return np.kron(SIGMA_X, sigma_k) + mass * BETA


def helicity_projector(direction: complex, sign: int) -> np.ndarray:
    """(1 + sign * sigma . n) / 2 for the in-plane unit direction n = e^{i phi}."""
    sigma_n = np.array([[0, 1 / direction], [direction, 0]], dtype=complex)
    return (IDENTITY_2 + sign * sigma_n) / 2


def dirac_spinor(energy: float, mass: float, kx: complex, ky: complex, k: complex, helicity: int) -> np.ndarray:
    """Plane-wave spinor of helicity +/-1 with momentum (kx, ky) and |k| = ``k``.

    Positive energies reproduce the textbook form

        sqrt((E-m)/4E) [ |1>(x)(+/-|+> + e^{i phi}|->) + K |0>(x)(|+> +/- e^{i phi}|->) ]

    with K = (E+m)/k.  K carries the sign of E+m, so negative energies give
    true eigenstates instead of a formal E -> E - V substitution.  Complex
    momenta (evanescent waves) are continued through the same expression.
    """
    if energy == 0.0:
        raise ZeroState("spinor normalisation is singular at zero energy")
    direction = (kx + 1j * ky) / k
    norm = cmath.sqrt((energy - mass) / (4.0 * energy))
    big = (energy + mass) / k
    h = 1 if helicity > 0 else -1
    return norm * np.array([h, direction, big, h * big * direction], dtype=complex)


def build_state(mu: float, nu: float, theta: float, helicity: int) -> np.ndarray:
    """Free helicity eigenstate with energy E - V0 moving at angle ``theta`` (units of E)."""
    energy = 1.0 - nu
    k2 = energy**2 - mu**2
    if k2 <= 0.0:
        raise ValueError(f"no propagating state at energy {energy} and mass {mu}")
    k = math.sqrt(k2)
    return dirac_spinor(energy, mu, k * math.cos(theta), k * math.sin(theta), k, helicity)


def region_bases(mu: float, nu: float, theta: float) -> dict[str, list[np.ndarray]]:
    """Helicity bases of the incident, reflected and transmitted waves at x = 0.

    Reflected states carry the phase +/- e^{i theta} so that their amplitudes
    follow the same convention as the closed-form reflection coefficients.
    """
    p = math.sqrt(1.0 - mu**2)
    py = p * math.sin(theta)
    px = p * math.cos(theta)

    energy = 1.0 - nu
    q = _branch_sqrt(energy**2 - mu**2)
    qx = _branch_sqrt(q * q - py * py)

    phase = cmath.exp(1j * theta)
    return {
        "incident": [dirac_spinor(1.0, mu, px, py, p, h) for h in (1, -1)],
        "reflected": [h * phase * dirac_spinor(1.0, mu, -px, py, p, h) for h in (1, -1)],
        "transmitted": [dirac_spinor(energy, mu, qx, py, q, h) for h in (1, -1)],
    }


def boundary_solve(mu: float, nu: float, theta: float, inc: IncidentAmplitudes) -> ScatteredAmplitudes:
    """Solve psi_I(0) + psi_R(0) = psi_T(0) component by component."""
    bases = region_bases(mu, nu, theta)
    ip, im = inc.pair
    incoming = ip * bases["incident"][0] + im * bases["incident"][1]
    matrix = np.column_stack([
        bases["reflected"][0], bases["reflected"][1],
        -bases["transmitted"][0], -bases["transmitted"][1],
    ])
    cond = np.linalg.cond(matrix)
    if not cond < MAX_CONDITION:
        raise SingularSystem(f"matching system is singular (cond={cond:.3g}) at mu={mu}, nu={nu}, theta={theta}")
    r_plus, r_minus, t_plus, t_minus = np.linalg.solve(matrix, -incoming)
    return ScatteredAmplitudes(complex(r_plus), complex(r_minus), complex(t_plus), complex(t_minus))


def interface_mismatch(mu: float, nu: float, theta: float, inc: IncidentAmplitudes,
                       amps: ScatteredAmplitudes) -> float:
    """Norm of psi_A(0) - psi_B(0) for a candidate amplitude set."""
    return float(np.linalg.norm(
        wave_state(mu, nu, theta, inc.pair, "incident")
        + wave_state(mu, nu, theta, amps.reflected, "reflected")
        - wave_state(mu, nu, theta, amps.transmitted, "transmitted")
    ))


def wave_state(mu: float, nu: float, theta: float, amplitudes: tuple[complex, complex], wave: str) -> np.ndarray:
    basis = region_bases(mu, nu, theta)[wave]
    return amplitudes[0] * basis[0] + amplitudes[1] * basis[1]


def density_matrix(state: np.ndarray) -> np.ndarray:
    state = np.asarray(state, dtype=complex)
    norm2 = np.vdot(state, state).real
    if norm2 == 0.0:
        raise ZeroState("cannot build a density matrix from the zero vector")
    return np.outer(state, state.conj()) / norm2


def partial_trace(rho: np.ndarray, keep: Subsystem | str) -> np.ndarray:
    blocks = np.asarray(rho).reshape(2, 2, 2, 2)
    if Subsystem(keep) is Subsystem.PARITY:
        return np.einsum("asbs->ab", blocks)
    return np.einsum("sasb->ab", blocks)


def reduced_eigenvalues(reduced: np.ndarray) -> tuple[float, float]:
    """Eigenvalues of a 2x2 Hermitian matrix, largest first."""
    low, high = np.linalg.eigvalsh(reduced)
    return float(high), float(low)


def gamma5_expectation(state: np.ndarray) -> float:
    """<psi|gamma5|psi>; the chirality when ``state`` is normalised."""
    state = np.asarray(state, dtype=complex)
    return float(np.vdot(state, GAMMA5 @ state).real)


def parity_expectation(state: np.ndarray) -> float:
    state = np.asarray(state, dtype=complex)
    return float(np.vdot(state, PARITY @ state).real / np.vdot(state, state).real)
