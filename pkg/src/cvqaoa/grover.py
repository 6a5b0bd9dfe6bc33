"""Amplitude amplification over the continuum with indicator-state projectors.

The oracle is a narrow displaced Gaussian standing in for a delta spike; the
mixer projects onto a momentum-sharp state. Phase-pi iterations rotate the
state inside the two-dimensional span of the initial and target states.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import LeakageError
from .grid import GridSpec, Wavefunction, boundary_mass
from .propagators import apply_projector_phase
from .spectral import momentum_to_position


@dataclass(frozen=True)
class GroverSpec:
    target: tuple[float, ...]
    epsilon: float
    momentum_center: tuple[float, ...]
    iterations: int

    def __post_init__(self):
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")
        if self.iterations < 0:
            raise ValueError("iterations must be >= 0")
        if len(self.target) != len(self.momentum_center):
            raise ValueError("target and momentum_center dimensions differ")


def indicator_state(grid: GridSpec, center, epsilon: float,
                    leakage_threshold: float = 1e-6) -> Wavefunction:
    """Normalized Gaussian of position standard deviation epsilon at center."""
    center = [float(c) for c in center]
    if len(center) != grid.ndim:
        raise ValueError("center dimension does not match grid")
    for c, axis in zip(center, grid.axes):
        if axis.half_extent - abs(c) < 4.0 * epsilon:
            raise LeakageError(mass=float("nan"), threshold=leakage_threshold)
    mesh = grid.position_mesh()
    exponent = np.zeros(grid.shape)
    for x, c in zip(mesh, center):
        exponent = exponent - (x - c) ** 2 / (4.0 * epsilon ** 2)
    psi = Wavefunction(grid, np.exp(exponent).astype(np.complex128)).normalize()
    mass = boundary_mass(psi)
    if mass > leakage_threshold:
        raise LeakageError(mass=mass, threshold=leakage_threshold)
    return psi


def momentum_sharp_state(grid: GridSpec, center, epsilon: float) -> Wavefunction:
    """Inverse transform of an indicator built on the momentum lattice: the
    state is Gaussian-sharp in momentum (std epsilon around center)."""
    center = [float(c) for c in center]
    kmesh = grid.momentum_mesh()
    exponent = np.zeros(grid.shape)
    for k, c in zip(kmesh, center):
        exponent = exponent - (k - c) ** 2 / (4.0 * epsilon ** 2)
    psi = Wavefunction(grid, np.exp(exponent).astype(np.complex128),
                       representation="momentum").normalize()
    psi.amplitudes = momentum_to_position(psi.amplitudes, grid)
    psi.representation = "position"
    return psi.normalize()


@dataclass
class GroverTrace:
    """Success probabilities per iteration and the two-level-model prediction."""

    success: np.ndarray
    predicted: np.ndarray
    initial_overlap: float


def two_level_prediction(a: float, k: int) -> float:
    """sin^2((2k+1) arcsin a): rotation model of amplitude amplification."""
    if not 0.0 < a <= 1.0:
        raise ValueError("initial overlap must be in (0, 1]")
    return float(np.sin((2 * k + 1) * np.arcsin(a)) ** 2)


def optimal_iterations(a: float) -> int:
    """Iteration count at which the two-level success first peaks."""
    return max(0, int(round(np.pi / (4.0 * np.arcsin(a)) - 0.5)))


def grover_run(spec: GroverSpec, grid: GridSpec,
               min_overlap: float = 1e-12) -> GroverTrace:
    """Alternate phase-pi projector gates on target and initial states.

    The mixer projector is onto the initial state itself (a state sharp in
    momentum around spec.momentum_center). Records |<target|psi>|^2 before
    the first and after every iteration.
    """
    target = indicator_state(grid, spec.target, spec.epsilon)
    psi0 = momentum_sharp_state(grid, spec.momentum_center, spec.epsilon)
    mixer_state = psi0.copy()
    psi = psi0.copy()

    a = abs(target.inner(psi))
    if a < min_overlap:
        raise ValueError(
            f"initial overlap {a:.3e} with target is numerically zero")
    success = [a ** 2]
    for _ in range(spec.iterations):
        apply_projector_phase(psi, target, np.pi)
        apply_projector_phase(psi, mixer_state, np.pi)
        success.append(abs(target.inner(psi)) ** 2)
    predicted = np.array([two_level_prediction(a, k)
                          for k in range(spec.iterations + 1)])
    return GroverTrace(success=np.array(success), predicted=predicted,
                       initial_overlap=a)
