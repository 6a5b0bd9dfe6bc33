"""Unitary gates acting in place on a Wavefunction.

All gates are exactly norm-preserving on the grid: diagonal phases in the
position or momentum representation, plus rank-one projector phases applied
in closed form.
"""

from __future__ import annotations

import numpy as np

from .grid import Wavefunction
from .spectral import momentum_to_position, position_to_momentum

NUMBER_MIXER_MAX_SUBANGLE = np.pi / 4.0


def _require_position(psi: Wavefunction, gate: str) -> None:
    if psi.representation != "position":
        raise ValueError(f"{gate} expects a position-representation state")


def apply_phase_array(psi: Wavefunction, phase: np.ndarray) -> Wavefunction:
    """psi(x) <- exp(-i * phase(x)) * psi(x). Low-level diagonal gate."""
    psi.amplitudes *= np.exp(-1j * phase)
    return psi


def apply_cost_phase(psi: Wavefunction, cost, eta: float) -> Wavefunction:
    """Diagonal gate exp(-i eta f(x)); leaves |psi(x)|^2 untouched."""
    _require_position(psi, "cost phase")
    if cost.dimension != psi.grid.ndim:
        raise ValueError("cost dimension does not match grid")
    if eta == 0.0:
        return psi
    values = cost.evaluate(psi.grid.position_mesh())
    return apply_phase_array(psi, eta * np.asarray(values))


def _k_squared(grid) -> np.ndarray:
    kmesh = grid.momentum_mesh()
    out = np.zeros(grid.shape)
    for k in kmesh:
        out = out + k ** 2
    return out


def _x_squared(grid) -> np.ndarray:
    mesh = grid.position_mesh()
    out = np.zeros(grid.shape)
    for x in mesh:
        out = out + x ** 2
    return out


def apply_kinetic_mixer(psi: Wavefunction, gamma: float) -> Wavefunction:
    """exp(-i gamma p^2 / 2): free drift, momentum distribution unchanged."""
    _require_position(psi, "kinetic mixer")
    if gamma == 0.0:
        return psi
    mom = position_to_momentum(psi.amplitudes, psi.grid)
    mom *= np.exp(-0.5j * gamma * _k_squared(psi.grid))
    psi.amplitudes = momentum_to_position(mom, psi.grid)
    return psi


def apply_number_mixer(psi: Wavefunction, gamma: float) -> Wavefunction:
    """exp(-i gamma n) with n = (x^2 + p^2 - N)/2: phase-space rotation.

    Uses the exact shear decomposition of the rotation,
        chirp(tan(g/2)) . spectral-chirp(sin g) . chirp(tan(g/2)),
    with |g| <= pi/4 enforced by splitting into equal sub-rotations, plus the
    global phase exp(+i g N / 2) from the -N/2 offset.
    """
    _require_position(psi, "number mixer")
    if gamma == 0.0:
        return psi
    n_sub = max(1, int(np.ceil(abs(gamma) / NUMBER_MIXER_MAX_SUBANGLE)))
    g = gamma / n_sub
    x2 = _x_squared(psi.grid)
    k2 = _k_squared(psi.grid)
    chirp = np.exp(-0.5j * np.tan(0.5 * g) * x2)
    kphase = np.exp(-0.5j * np.sin(g) * k2)
    global_phase = np.exp(0.5j * g * psi.grid.ndim)
    for _ in range(n_sub):
        psi.amplitudes *= chirp
        mom = position_to_momentum(psi.amplitudes, psi.grid)
        mom *= kphase
        psi.amplitudes = momentum_to_position(mom, psi.grid)
        psi.amplitudes *= chirp * global_phase
    return psi


def fourier_transform(psi: Wavefunction, inverse: bool = False) -> Wavefunction:
    """Centered unitary Fourier transform mapping positions to momenta in place."""
    if inverse:
        if psi.representation != "momentum":
            raise ValueError("inverse transform expects a momentum-representation state")
        psi.amplitudes = momentum_to_position(psi.amplitudes, psi.grid)
        psi.representation = "position"
    else:
        _require_position(psi, "fourier transform")
        psi.amplitudes = position_to_momentum(psi.amplitudes, psi.grid)
        psi.representation = "momentum"
    return psi


def apply_projector_phase(psi: Wavefunction, phi: Wavefunction,
                          theta: float) -> Wavefunction:
    """exp(-i theta |phi><phi|) applied in closed form:
    psi <- psi + (exp(-i theta) - 1) <phi|psi> phi.
    """
    if phi.grid.shape != psi.grid.shape:
        raise ValueError("projector state lives on a different grid")
    overlap = phi.inner(psi)
    psi.amplitudes += (np.exp(-1j * theta) - 1.0) * overlap * phi.amplitudes
    return psi


def lattice_fidelity(a: Wavefunction, b: Wavefunction) -> float:
    """|<a|b>| comparing raw lattices, valid when the two lattices coincide
    (self-dual grid, dx = dk); representations may differ."""
    if a.grid.shape != b.grid.shape:
        raise ValueError("states live on different grids")
    if not np.isclose(a.measure, b.measure, rtol=1e-12):
        raise ValueError(
            "lattice measures differ; use a self-dual grid for this comparison")
    return abs(np.sum(np.conj(a.amplitudes) * b.amplitudes) * a.measure)


def fit_fourier_angle(grid, tol: float = 1e-10) -> float:
    """Rotation angle for which the number mixer best matches fourier_transform.

    Determined numerically on a test Gaussian by golden-section search around
    the analytic candidate pi/2 (the matching angle in this sign convention).
    Requires a self-dual grid (dx = dk) so the two outputs share a lattice.
    """
    from .grid import GaussianParams, gaussian_state

    x0 = [0.3 * a.half_extent for a in grid.axes]
    probe = gaussian_state(
        grid, GaussianParams.of(x0, [0.0] * grid.ndim, [0.0] * grid.ndim))
    target = fourier_transform(probe.copy())

    def infidelity(angle):
        rotated = apply_number_mixer(probe.copy(), angle)
        return 1.0 - lattice_fidelity(target, rotated)

    lo, hi = 0.5 * np.pi - 0.2, 0.5 * np.pi + 0.2
    inv_phi = (np.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    fc, fd = infidelity(c), infidelity(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - inv_phi * (b - a)
            fc = infidelity(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv_phi * (b - a)
            fd = infidelity(d)
    return 0.5 * (a + b)
