"""Position grids, wavefunctions and Gaussian initial states.

Conventions: hbar = 1, vacuum variance 1/2. Position lattice per axis is
x_m = -L + m*dx with dx = 2L/M; the conjugate momentum lattice is
k_j = (2*pi/(M*dx))*j for j in [-M/2, M/2).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import LeakageError
from .spectral import position_to_momentum

DEFAULT_BAND_FRACTION = 0.05
DEFAULT_LEAKAGE_THRESHOLD = 1e-3


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class AxisSpec:
    """One axis of the position lattice: half extent L and point count M."""

    half_extent: float
    points: int

    def __post_init__(self):
        if self.half_extent <= 0:
            raise ValueError(f"half_extent must be positive, got {self.half_extent}")
        if self.points < 8 or not _is_power_of_two(self.points):
            raise ValueError(
                f"points must be a power of two >= 8, got {self.points}"
            )

    @property
    def spacing(self) -> float:
        return 2.0 * self.half_extent / self.points

    def positions(self) -> np.ndarray:
        m = np.arange(self.points)
        return -self.half_extent + m * self.spacing

    def momenta(self) -> np.ndarray:
        """Centered momentum lattice, ascending, spanning [-pi/dx, pi/dx)."""
        j = np.arange(self.points) - self.points // 2
        return (2.0 * np.pi / (self.points * self.spacing)) * j


@dataclass(frozen=True)
class GridSpec:
    axes: tuple[AxisSpec, ...]

    @property
    def ndim(self) -> int:
        return len(self.axes)

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(a.points for a in self.axes)

    @property
    def cell_volume(self) -> float:
        return float(np.prod([a.spacing for a in self.axes]))

    @property
    def momentum_cell_volume(self) -> float:
        return float(np.prod(
            [2.0 * np.pi / (a.points * a.spacing) for a in self.axes]))

    def position_mesh(self) -> list[np.ndarray]:
        """Sparse (broadcastable) meshgrid of positions, indexing='ij'."""
        return list(np.meshgrid(*[a.positions() for a in self.axes],
                                indexing="ij", sparse=True))

    def momentum_mesh(self) -> list[np.ndarray]:
        return list(np.meshgrid(*[a.momenta() for a in self.axes],
                                indexing="ij", sparse=True))


def make_grid(axes) -> GridSpec:
    """Build a GridSpec from an iterable of (half_extent, points) pairs."""
    specs = tuple(AxisSpec(float(L), int(M)) for L, M in axes)
    if not specs:
        raise ValueError("grid needs at least one axis")
    return GridSpec(specs)


def self_dual_half_extent(points: int) -> float:
    """Half extent for which the momentum lattice coincides with the
    position lattice (dx = dk), so spectral self-duality is exact."""
    return float(np.sqrt(0.5 * np.pi * points))


@dataclass
class Wavefunction:
    """Complex amplitudes over the grid, in position or momentum representation."""

    grid: GridSpec
    amplitudes: np.ndarray
    representation: str = "position"

    def __post_init__(self):
        if self.amplitudes.shape != self.grid.shape:
            raise ValueError(
                f"amplitude shape {self.amplitudes.shape} does not match "
                f"grid shape {self.grid.shape}"
            )
        if self.representation not in ("position", "momentum"):
            raise ValueError(f"unknown representation {self.representation!r}")
        if not np.iscomplexobj(self.amplitudes):
            self.amplitudes = self.amplitudes.astype(np.complex128)

    @property
    def measure(self) -> float:
        """Cell measure of the active lattice (dx^N or dk^N)."""
        if self.representation == "position":
            return self.grid.cell_volume
        return self.grid.momentum_cell_volume

    def norm(self) -> float:
        return float(np.sqrt(
            np.sum(np.abs(self.amplitudes) ** 2) * self.measure))

    def normalize(self) -> "Wavefunction":
        self.amplitudes /= self.norm()
        return self

    def density(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def copy(self) -> "Wavefunction":
        return Wavefunction(self.grid, self.amplitudes.copy(),
                            self.representation)

    def inner(self, other: "Wavefunction") -> complex:
        """<self|other> with the lattice measure."""
        if other.representation != self.representation:
            raise ValueError("states are in different representations")
        return complex(
            np.sum(np.conj(self.amplitudes) * other.amplitudes)
            * self.measure)

    def fidelity(self, other: "Wavefunction") -> float:
        return abs(self.inner(other))


@dataclass(frozen=True)
class GaussianParams:
    """Displaced squeezed Gaussian: sigma_x^2 = exp(2r)/2 per axis."""

    center_position: tuple[float, ...]
    center_momentum: tuple[float, ...]
    squeezing: tuple[float, ...]

    @staticmethod
    def of(center_position, center_momentum, squeezing) -> "GaussianParams":
        return GaussianParams(tuple(float(v) for v in center_position),
                              tuple(float(v) for v in center_momentum),
                              tuple(float(v) for v in squeezing))


def gaussian_state(grid: GridSpec, params: GaussianParams,
                   leakage_threshold: float = DEFAULT_LEAKAGE_THRESHOLD,
                   ) -> Wavefunction:
    """Normalized displaced squeezed Gaussian on the grid.

    psi(x) propto exp(-sum_i (x_i - x0_i)^2 / (4 sigma_i^2) + i p0.x),
    sigma_i^2 = exp(2 r_i)/2. Raises LeakageError if the state does not fit
    the grid (4 sigma margin or boundary mass above threshold).
    """
    if not (len(params.center_position) == len(params.center_momentum)
            == len(params.squeezing) == grid.ndim):
        raise ValueError("Gaussian parameter dimensions do not match grid")
    mesh = grid.position_mesh()
    exponent = np.zeros(grid.shape, dtype=np.complex128)
    for i, axis in enumerate(grid.axes):
        sigma2 = np.exp(2.0 * params.squeezing[i]) / 2.0
        x0 = params.center_position[i]
        if axis.half_extent - abs(x0) < 4.0 * np.sqrt(sigma2):
            raise LeakageError(mass=float("nan"), threshold=leakage_threshold)
        exponent = exponent - (mesh[i] - x0) ** 2 / (4.0 * sigma2)
        exponent = exponent + 1j * params.center_momentum[i] * mesh[i]
    psi = Wavefunction(grid, np.exp(exponent)).normalize()
    mass = boundary_mass(psi)
    if mass > leakage_threshold:
        raise LeakageError(mass=mass, threshold=leakage_threshold)
    return psi


def observables(psi: Wavefunction, cost=None) -> dict:
    """Norm, first/second position moments, momentum mean, optional <f>.

    Momentum moments come from the spectral (momentum) representation.
    """
    dens = psi.density()
    vol = psi.grid.cell_volume
    total = np.sum(dens) * vol
    mean_x = np.empty(psi.grid.ndim)
    var_x = np.empty(psi.grid.ndim)
    mesh = psi.grid.position_mesh()
    for i in range(psi.grid.ndim):
        mean_x[i] = np.sum(mesh[i] * dens) * vol / total
        var_x[i] = np.sum((mesh[i] - mean_x[i]) ** 2 * dens) * vol / total

    mom_amps = position_to_momentum(psi.amplitudes, psi.grid)
    mom_dens = np.abs(mom_amps) ** 2
    kvol = float(np.prod([a.momenta()[1] - a.momenta()[0] for a in psi.grid.axes]))
    mom_total = np.sum(mom_dens) * kvol
    kmesh = psi.grid.momentum_mesh()
    mean_p = np.array([np.sum(kmesh[i] * mom_dens) * kvol / mom_total
                       for i in range(psi.grid.ndim)])

    out = {
        "norm": float(np.sqrt(total)),
        "mean_position": mean_x,
        "mean_momentum": mean_p,
        "position_variance": var_x,
        "mean_cost": None,
    }
    if cost is not None:
        values = cost.evaluate(mesh)
        if not np.all(np.isfinite(values)):
            raise OverflowError("cost function is not finite on the grid")
        out["mean_cost"] = float(np.sum(values * dens) * vol / total)
    return out


def marginal(psi: Wavefunction, axes) -> np.ndarray:
    """Probability density marginalized onto the given (kept) axes."""
    if isinstance(axes, int):
        axes = (axes,)
    axes = tuple(axes)
    if not axes:
        raise ValueError("axis subset must be non-empty")
    for a in axes:
        if not 0 <= a < psi.grid.ndim:
            raise ValueError(f"invalid axis {a} for {psi.grid.ndim}-D grid")
    if len(set(axes)) != len(axes):
        raise ValueError("duplicate axes in subset")
    dropped = tuple(i for i in range(psi.grid.ndim) if i not in axes)
    dens = psi.density()
    if dropped:
        weight = float(np.prod([psi.grid.axes[i].spacing for i in dropped]))
        dens = np.sum(dens, axis=dropped) * weight
    # reorder to the requested axis order
    kept_sorted = tuple(i for i in range(psi.grid.ndim) if i in axes)
    perm = [kept_sorted.index(a) for a in axes]
    return np.transpose(dens, perm)


def boundary_mass(psi: Wavefunction,
                  band_fraction: float = DEFAULT_BAND_FRACTION) -> float:
    """Probability in the union of per-axis outer bands of width 2L*band_fraction."""
    if not 0.0 < band_fraction < 0.5:
        raise ValueError(f"band_fraction must be in (0, 0.5), got {band_fraction}")
    dens = psi.density()
    mask = np.zeros(psi.grid.shape, dtype=bool)
    for i, axis in enumerate(psi.grid.axes):
        edge = axis.half_extent * (1.0 - 2.0 * band_fraction)
        x = axis.positions()
        band = np.abs(x) > edge
        shape = [1] * psi.grid.ndim
        shape[i] = axis.points
        mask |= band.reshape(shape)
    return float(np.sum(dens[mask]) * psi.grid.cell_volume)
