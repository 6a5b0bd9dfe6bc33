"""Grid-based simulator of continuous-variable QAOA.

N-dimensional wavefunctions on a position lattice evolve under alternating
cost-phase and mixer gates; outputs are sampled from |psi|^2. Includes
penalty and binary (PUBO) encodings, projector-based amplitude
amplification, invariant check suites, and a CLI.
"""

from .engine import (Guards, RunRecord, Schedule, decayed_schedule,
                     heisenberg_residual, run, scan_t, uniform_schedule)
from .errors import (AliasingError, ConfigError, LeakageError,
                     PhaseOverflowError, SimulationError)
from .grid import (AxisSpec, GaussianParams, GridSpec, Wavefunction,
                   boundary_mass, gaussian_state, make_grid, marginal,
                   observables, self_dual_half_extent)
from .grover import (GroverSpec, GroverTrace, grover_run, indicator_state,
                     momentum_sharp_state, optimal_iterations,
                     two_level_prediction)
from .potentials import (CostSpec, DoubleWell, EqualityPenalty,
                         InequalityPenalty, Polynomial, PolynomialTerm,
                         PuboPlateau, binary_cost, brute_force_minimum,
                         decode_bits, equality_penalty, inequality_penalty,
                         polynomial_cost, pubo_encode, styblinski_tang,
                         swish, validate_on_grid)
from .propagators import (apply_cost_phase, apply_kinetic_mixer,
                          apply_number_mixer, apply_projector_phase,
                          fit_fourier_angle, fourier_transform,
                          lattice_fidelity)
from .sampling import SampleSet, decode_samples, sample, samples_to_csv, statistics

__all__ = [
    "AliasingError", "AxisSpec", "ConfigError", "CostSpec", "DoubleWell",
    "EqualityPenalty", "GaussianParams", "GridSpec", "GroverSpec",
    "GroverTrace", "Guards", "InequalityPenalty", "LeakageError",
    "PhaseOverflowError", "Polynomial", "PolynomialTerm", "PuboPlateau",
    "RunRecord", "SampleSet", "Schedule", "SimulationError", "Wavefunction",
    "apply_cost_phase", "apply_kinetic_mixer", "apply_number_mixer",
    "apply_projector_phase", "binary_cost", "boundary_mass",
    "brute_force_minimum", "decayed_schedule", "decode_bits",
    "decode_samples", "equality_penalty", "fit_fourier_angle",
    "fourier_transform", "gaussian_state", "grover_run",
    "heisenberg_residual", "indicator_state", "inequality_penalty",
    "lattice_fidelity", "make_grid", "marginal", "momentum_sharp_state",
    "observables", "optimal_iterations", "polynomial_cost", "pubo_encode",
    "run", "sample", "samples_to_csv", "scan_t", "self_dual_half_extent",
    "statistics", "styblinski_tang", "swish", "two_level_prediction",
    "uniform_schedule", "validate_on_grid",
]

__version__ = "0.1.0"
