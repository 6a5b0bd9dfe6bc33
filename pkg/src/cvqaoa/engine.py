"""P-step alternating evolution, schedules and the outer parameter scan."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import AliasingError, LeakageError
from .grid import (DEFAULT_BAND_FRACTION, Wavefunction, boundary_mass,
                   observables)
from .potentials import CostSpec, validate_on_grid
from .propagators import (apply_kinetic_mixer, apply_number_mixer,
                          apply_phase_array)
from .spectral import position_to_momentum

KINETIC = "kinetic"
NUMBER = "number"


@dataclass(frozen=True)
class Schedule:
    """Per-step cost angles eta_j and mixer angles gamma_j."""

    eta: tuple[float, ...]
    gamma: tuple[float, ...]
    mixer: str = KINETIC

    def __post_init__(self):
        if len(self.eta) != len(self.gamma):
            raise ValueError("eta and gamma must have the same length")
        if not all(np.isfinite(self.eta)) or not all(np.isfinite(self.gamma)):
            raise ValueError("schedule entries must be finite")
        if self.mixer not in (KINETIC, NUMBER):
            raise ValueError(f"unknown mixer {self.mixer!r}")

    @property
    def steps(self) -> int:
        return len(self.eta)


def uniform_schedule(steps: int, t: float, mixer: str = KINETIC) -> Schedule:
    """eta_j = gamma_j = t for all steps."""
    if steps < 1:
        raise ValueError("steps must be >= 1")
    return Schedule((float(t),) * steps, (float(t),) * steps, mixer)


def decayed_schedule(steps: int, eta0: float, gamma0: float, decay: float,
                     mixer: str = KINETIC) -> Schedule:
    """eta_j = eta0 / (1 + decay*(j-1)), same law for gamma."""
    if steps < 1:
        raise ValueError("steps must be >= 1")
    if decay < 0:
        raise ValueError("decay must be >= 0")
    j = np.arange(steps)
    scale = 1.0 / (1.0 + decay * j)
    return Schedule(tuple(eta0 * scale), tuple(gamma0 * scale), mixer)


@dataclass
class Guards:
    """Numerical guard thresholds enforced after every step."""

    leakage_threshold: float = 1e-3
    band_fraction: float = DEFAULT_BAND_FRACTION
    aliasing_mass: float = 1e-3
    check_aliasing: bool = True


@dataclass
class RunRecord:
    """Per-step summary of an evolution; snapshot 0 is the initial state."""

    schedule: Schedule
    snapshots: list[dict] = field(default_factory=list)
    final_state: Wavefunction | None = None
    states: list[Wavefunction] | None = None


def _snapshot(psi: Wavefunction, cost: CostSpec, step: int,
              band_fraction: float) -> dict:
    obs = observables(psi, cost)
    return {
        "step": step,
        "norm": obs["norm"],
        "mean_position": obs["mean_position"],
        "mean_cost": obs["mean_cost"],
        "boundary_mass": boundary_mass(psi, band_fraction),
    }


def _aliased_mass(phase: np.ndarray, density: np.ndarray,
                  measure: float) -> float:
    """Probability mass sitting where the phase jumps by more than pi per cell."""
    mask = np.zeros(phase.shape, dtype=bool)
    for axis in range(phase.ndim):
        jump = np.abs(np.diff(phase, axis=axis)) > np.pi
        pad = [(0, 1) if a == axis else (0, 0) for a in range(phase.ndim)]
        mask |= np.pad(jump, pad)
    return float(np.sum(density[mask]) * measure)


def _mixer_phase(grid, gamma: float) -> np.ndarray:
    kmesh = grid.momentum_mesh()
    k2 = np.zeros(grid.shape)
    for k in kmesh:
        k2 = k2 + k ** 2
    return 0.5 * gamma * k2


def run(psi0: Wavefunction, cost: CostSpec, schedule: Schedule,
        guards: Guards | None = None, store_states: bool = False,
        copy: bool = True) -> RunRecord:
    """Apply, for each step j, the cost phase with eta_j then the mixer with
    gamma_j, recording summary snapshots (and full states if requested).

    Raises LeakageError / AliasingError with the offending step index when a
    guard trips.
    """
    if guards is None:
        guards = Guards()
    eta_max = max((abs(e) for e in schedule.eta), default=1.0)
    validate_on_grid(cost, psi0.grid, eta_max=max(eta_max, 1e-30))
    psi = psi0.copy() if copy else psi0
    cost_values = np.broadcast_to(
        np.asarray(cost.evaluate(psi.grid.position_mesh()), dtype=float),
        psi.grid.shape)
    record = RunRecord(schedule)
    record.snapshots.append(_snapshot(psi, cost, 0, guards.band_fraction))
    if store_states:
        record.states = [psi.copy()]

    for j in range(schedule.steps):
        eta_j, gamma_j = schedule.eta[j], schedule.gamma[j]
        if guards.check_aliasing:
            mass = _aliased_mass(eta_j * cost_values, psi.density(),
                                 psi.measure)
            if mass > guards.aliasing_mass:
                raise AliasingError(mass, guards.aliasing_mass, step=j + 1,
                                    context="cost phase")
        apply_phase_array(psi, eta_j * cost_values)
        if schedule.mixer == KINETIC:
            if guards.check_aliasing:
                mom = position_to_momentum(psi.amplitudes, psi.grid)
                mass = _aliased_mass(_mixer_phase(psi.grid, gamma_j),
                                     np.abs(mom) ** 2,
                                     psi.grid.momentum_cell_volume)
                if mass > guards.aliasing_mass:
                    raise AliasingError(mass, guards.aliasing_mass, step=j + 1,
                                        context="kinetic phase")
            apply_kinetic_mixer(psi, gamma_j)
        else:
            apply_number_mixer(psi, gamma_j)
        snap = _snapshot(psi, cost, j + 1, guards.band_fraction)
        if snap["boundary_mass"] > guards.leakage_threshold:
            raise LeakageError(snap["boundary_mass"],
                               guards.leakage_threshold, step=j + 1)
        record.snapshots.append(snap)
        if store_states:
            record.states.append(psi.copy())

    record.final_state = psi
    return record


def heisenberg_residual(psi0: Wavefunction, cost: CostSpec, eta: float,
                        gamma: float, mixer: str = KINETIC,
                        guards: Guards | None = None) -> np.ndarray:
    """Deviation of <x> after one step from x0 + gamma*p0 - eta*gamma*<grad f>0.

    Exact (up to grid error) for the kinetic mixer and any analytic cost;
    O(gamma^2) for the number mixer.
    """
    obs0 = observables(psi0, cost)
    mesh = psi0.grid.position_mesh()
    dens = psi0.density()
    vol = psi0.grid.cell_volume
    grad = cost.gradient(mesh)
    mean_grad = np.array([float(np.sum(g * dens) * vol) for g in grad])
    predicted = (obs0["mean_position"] + gamma * obs0["mean_momentum"]
                 - eta * gamma * mean_grad)
    record = run(psi0, cost, Schedule((eta,), (gamma,), mixer), guards=guards)
    return record.snapshots[-1]["mean_position"] - predicted


def scan_t(psi0: Wavefunction, cost: CostSpec, steps: int, t_values,
           samples_per_t: int, seed: int, mixer: str = KINETIC,
           guards: Guards | None = None) -> list[dict]:
    """Run a uniform schedule per T, sample the output, and rank by mean cost.

    Returns rows {"T", "mean_cost", "best_sample_cost"} sorted ascending by
    mean_cost; deterministic given the seed.
    """
    from .sampling import sample, statistics

    t_values = list(t_values)
    if not t_values:
        raise ValueError("T list must be non-empty")
    rows = []
    for t in t_values:
        record = run(psi0, cost, uniform_schedule(steps, t, mixer),
                     guards=guards)
        samples = sample(record.final_state, samples_per_t, seed=seed,
                         cost=cost)
        stats = statistics(samples, threshold=float("-inf"))
        rows.append({
            "T": float(t),
            "mean_cost": record.snapshots[-1]["mean_cost"],
            "best_sample_cost": stats["best_cost"],
        })
    return sorted(rows, key=lambda r: r["mean_cost"])


def record_csv_rows(record: RunRecord) -> list[list]:
    """Flatten snapshots to CSV rows: step, norm, mean_cost, mean position
    components, boundary_mass."""
    rows = []
    for snap in record.snapshots:
        rows.append([snap["step"], snap["norm"], snap["mean_cost"],
                     *snap["mean_position"].tolist(), snap["boundary_mass"]])
    return rows
