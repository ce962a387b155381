"""Dirac bi-spinor scattering on a 2D electrostatic step and its parity-spin entanglement."""
from .config import StepConfig
from .entanglement import (EntanglementReport, KappaFactor, ReducedSpectrum, Wave, analyze,
                           antiparticle_transform, chirality, entropy_scan, extremal_points, kappa,
                           parity_observables, reduced_spectrum, von_neumann_entropy)
from .kinematics import (MediumParams, RefractionResult, Side, Zone, classify, critical_sine_squared,
                         flux_ratio, nu_from_critical, refract)
from .scattering import (AParam, IncidentAmplitudes, ScatteredAmplitudes, compute_A,
                         conservation_residual, reflected_product_with_phase, scatter)

__version__ = "0.1.0"
