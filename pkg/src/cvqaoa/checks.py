"""Named invariant suites, runnable from the CLI and from the test suite.

Each suite runs at fixed seeds and grids, returns (passed, report lines),
and prints residuals rather than bare verdicts so drifts are visible.
"""

from __future__ import annotations

import numpy as np

from .engine import Guards, heisenberg_residual
from .grid import (GaussianParams, Wavefunction, gaussian_state, make_grid,
                   self_dual_half_extent)
from .grover import GroverSpec, grover_run
from .potentials import (CostSpec, DoubleWell, EqualityPenalty,
                         InequalityPenalty, Polynomial, PolynomialTerm,
                         PuboPlateau, pubo_encode, styblinski_tang)
from .propagators import (apply_cost_phase, apply_kinetic_mixer,
                          apply_number_mixer, apply_projector_phase,
                          fit_fourier_angle, fourier_transform,
                          lattice_fidelity)


def check_heisenberg() -> tuple[bool, list[str]]:
    """One-step <x> update identity for quadratic and quartic costs."""
    grid = make_grid([(10, 512)])
    quad = CostSpec(1, (PolynomialTerm(0.5, (2,)),))
    quart = styblinski_tang(1)
    lines, worst = [], 0.0
    for label, cost in (("quadratic", quad), ("quartic", quart)):
        psi = gaussian_state(grid, GaussianParams.of([1.0], [0.5], [0.3]))
        res = heisenberg_residual(psi, cost, eta=0.05, gamma=0.05)
        worst = max(worst, float(np.max(np.abs(res))))
        lines.append(f"{label}: residual {float(np.max(np.abs(res))):.3e}")
    ok = worst < 1e-6
    lines.append(f"max residual {worst:.3e} (tolerance 1e-06)")
    return ok, lines


def check_parseval() -> tuple[bool, list[str]]:
    """Norm preservation of every gate over 100 random applications."""
    rng = np.random.default_rng(11)
    grid = make_grid([(8, 128)])
    cost = styblinski_tang(1)
    worst = 0.0
    for i in range(100):
        amps = (rng.normal(size=grid.shape)
                + 1j * rng.normal(size=grid.shape))
        psi = Wavefunction(grid, amps).normalize()
        gate = i % 4
        if gate == 0:
            apply_cost_phase(psi, cost, rng.uniform(-0.5, 0.5))
        elif gate == 1:
            apply_kinetic_mixer(psi, rng.uniform(-1, 1))
        elif gate == 2:
            apply_number_mixer(psi, rng.uniform(-3, 3))
        else:
            phi = gaussian_state(grid, GaussianParams.of(
                [rng.uniform(-1, 1)], [0.0], [0.0]))
            apply_projector_phase(psi, phi, rng.uniform(0, 2 * np.pi))
        worst = max(worst, abs(psi.norm() - 1.0))
    ok = worst < 1e-10
    return ok, [f"max |norm - 1| over 100 gates: {worst:.3e} (tolerance 1e-10)"]


def check_grover_model() -> tuple[bool, list[str]]:
    """Success trace against the two-level rotation model."""
    grid = make_grid([(10, 512)])
    spec = GroverSpec(target=(5.1,), epsilon=0.25,
                      momentum_center=(0.0,), iterations=10)
    trace = grover_run(spec, grid)
    dev = float(np.max(np.abs(trace.success - trace.predicted)))
    peak = float(np.max(trace.success))
    ok = dev < 0.05 and peak >= 0.9
    return ok, [
        f"initial overlap a = {trace.initial_overlap:.4f}",
        f"max |trace - model| = {dev:.3e} (tolerance 0.05)",
        f"peak success = {peak:.4f} (needs >= 0.9)",
    ]


def check_pubo_oracle() -> tuple[bool, list[str]]:
    """Plateau values at well centers against the exact binary polynomial."""
    inst = [(1.0, (1, 1, 0)), (-1.0, (0, 1, 1)), (0.5, (1, 0, 1))]
    cost = pubo_encode(inst, 3)
    lam_w, beta = 1.5, 2.0
    t = np.tanh(beta * lam_w)
    bound = 3 * (1 - t) * sum(abs(a) for a, _ in inst)
    worst = 0.0
    import itertools
    for bits in itertools.product((0, 1), repeat=3):
        x = [-lam_w if b else lam_w for b in bits]
        plateau = cost.evaluate_point(x)  # well term is exactly 0 at centers
        exact = sum(a * np.prod([(1 - 2 * bits[j]) for j in range(3)
                                 if s[j]]) for a, s in inst)
        worst = max(worst, abs(plateau - exact * t ** 2))
        worst_vs_exact = abs(plateau - exact)
        if worst_vs_exact > bound:
            return False, [f"plateau deviates {worst_vs_exact:.3e} > bound {bound:.3e}"]
    return True, [
        f"all 8 well centers within bound {bound:.3e} of the exact binary cost",
        f"max deviation from tanh-scaled value {worst:.3e}",
    ]


def check_gradient_fd(n_points: int = 1000) -> tuple[bool, list[str]]:
    """Analytic gradients vs central finite differences at random points."""
    rng = np.random.default_rng(3)
    g_poly = Polynomial((PolynomialTerm(1.0, (1, 0)),
                         PolynomialTerm(1.0, (0, 1))))
    h_poly = Polynomial((PolynomialTerm(1.0, (2, 0)),
                         PolynomialTerm(-1.0, (0, 1))))
    cost = CostSpec(2, (
        PolynomialTerm(0.5, (4, 0)),
        PolynomialTerm(-8.0, (0, 2)),
        PolynomialTerm(2.5, (1, 1)),
        EqualityPenalty(g_poly, 1.0, 10.0),
        InequalityPenalty(h_poly, 0.5, 5.0),
        PuboPlateau(1.2, (1, 1), 2.0),
        DoubleWell(1.0, 1.5),
    ))
    h = 1e-5
    worst = 0.0
    for _ in range(n_points):
        x = rng.uniform(-3, 3, size=2)
        grad = cost.gradient_point(x)
        for j in range(2):
            xp, xm = x.copy(), x.copy()
            xp[j] += h
            xm[j] -= h
            fd = (cost.evaluate_point(xp) - cost.evaluate_point(xm)) / (2 * h)
            scale = max(abs(fd), abs(grad[j]))
            err = (abs(grad[j] - fd) / scale if scale > 1e-3
                   else abs(grad[j] - fd))
            worst = max(worst, err)
    ok = worst < 1e-5
    return ok, [f"max gradient mismatch {worst:.3e} over {n_points} points "
                "(tolerance 1e-05 relative)"]


def check_iqp() -> tuple[bool, list[str]]:
    """One number-mixer step vs Fourier-after-cost-phase on a squeezed input."""
    m = 256
    grid = make_grid([(self_dual_half_extent(m), m)])
    angle = fit_fourier_angle(grid)
    # gentle quartic so the phased state stays band-limited on the lattice
    cost = CostSpec(1, (PolynomialTerm(0.01, (4,)),
                        PolynomialTerm(-0.1, (2,)),
                        PolynomialTerm(0.05, (1,))))
    psi = gaussian_state(grid, GaussianParams.of([0.0], [0.0], [0.6]))
    via_fourier = fourier_transform(
        apply_cost_phase(psi.copy(), cost, 1.0))
    via_mixer = apply_number_mixer(
        apply_cost_phase(psi.copy(), cost, 1.0), angle)
    fid = lattice_fidelity(via_fourier, via_mixer)
    ok = fid >= 1.0 - 1e-6
    return ok, [
        f"fitted rotation angle {angle:.9f} (pi/2 = {np.pi / 2:.9f})",
        f"fidelity {fid:.12f} (needs >= 1 - 1e-6)",
    ]


SUITES = {
    "heisenberg": check_heisenberg,
    "parseval": check_parseval,
    "grover-model": check_grover_model,
    "pubo-oracle": check_pubo_oracle,
    "gradient-fd": check_gradient_fd,
    "iqp": check_iqp,
}


def run_suite(name: str) -> tuple[bool, list[str]]:
    if name not in SUITES:
        raise KeyError(f"unknown check suite {name!r}; "
                       f"known: {', '.join(sorted(SUITES))}")
    return SUITES[name]()
