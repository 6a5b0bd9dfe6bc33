"""Position-basis sampling from |psi|^2 and sample statistics."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from .grid import Wavefunction
from .potentials import binary_cost, decode_bits

RNG_ALGORITHM = "pcg64"


@dataclass
class SampleSet:
    """Positions drawn from |psi|^2 with seed provenance and per-sample costs."""

    points: np.ndarray          # shape (n, N)
    costs: np.ndarray | None    # shape (n,) when a cost was supplied
    seed: int
    jitter: bool
    algorithm: str = RNG_ALGORITHM

    def __len__(self) -> int:
        return self.points.shape[0]


def sample(psi: Wavefunction, n: int, seed: int = 0, jitter: bool = False,
           cost=None) -> SampleSet:
    """Inverse-CDF sampling over the flattened grid pmf |psi|^2 * cell volume.

    One uniform draw per sample; with jitter, a uniform offset within the
    cell (+- dx/2 per axis) is added. Bitwise reproducible given
    (psi, n, seed, jitter).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if psi.representation != "position":
        raise ValueError("sampling expects a position-representation state")
    pmf = psi.density().ravel() * psi.grid.cell_volume
    pmf = pmf / pmf.sum()
    cdf = np.cumsum(pmf)
    cdf[-1] = 1.0
    rng = np.random.default_rng(seed)
    u = rng.random(n)
    flat_idx = np.searchsorted(cdf, u, side="right")
    flat_idx = np.minimum(flat_idx, pmf.size - 1)
    multi = np.unravel_index(flat_idx, psi.grid.shape)
    spacings = np.array([a.spacing for a in psi.grid.axes])
    points = np.stack(
        [psi.grid.axes[i].positions()[multi[i]]
         for i in range(psi.grid.ndim)], axis=1)
    if jitter:
        points = points + rng.uniform(-0.5, 0.5,
                                      size=points.shape) * spacings
    costs = None
    if cost is not None:
        costs = np.array([cost.evaluate_point(p) for p in points])
    return SampleSet(points=points, costs=costs, seed=int(seed),
                     jitter=bool(jitter))


def statistics(samples: SampleSet, threshold: float) -> dict:
    """Best cost/point, count below the threshold, and the mean cost."""
    if len(samples) == 0:
        raise ValueError("sample set is empty")
    if samples.costs is None:
        raise ValueError("sample set carries no cost values")
    best_idx = int(np.argmin(samples.costs))
    return {
        "best_cost": float(samples.costs[best_idx]),
        "best_point": samples.points[best_idx].copy(),
        "count_below_threshold": int(np.sum(samples.costs < threshold)),
        "mean_cost": float(np.mean(samples.costs)),
    }


def decode_samples(samples: SampleSet, binary_terms) -> dict:
    """Decode each sample to a bitstring via the sign rule and score exactly.

    Returns bitstring frequencies (summing to n), the most frequent
    bitstring, and the best bitstring by exact binary cost.
    """
    frequencies = Counter(decode_bits(p) for p in samples.points)
    best_bits = min(frequencies,
                    key=lambda b: (binary_cost(binary_terms, b), b))
    mode_bits = max(frequencies, key=lambda b: (frequencies[b], b))
    return {
        "frequencies": frequencies,
        "mode_bitstring": mode_bits,
        "best_bitstring": best_bits,
        "best_cost": binary_cost(binary_terms, best_bits),
    }


def samples_to_csv(samples: SampleSet, path, comments=()) -> None:
    """Write one row per sample (x_1..x_N, cost) with comment-line metadata."""
    n_axes = samples.points.shape[1]
    with open(path, "w") as fh:
        for line in comments:
            fh.write(f"# {line}\n")
        fh.write(f"# seed={samples.seed} jitter={samples.jitter} "
                 f"rng={samples.algorithm}\n")
        fh.write(",".join([f"x_{i + 1}" for i in range(n_axes)] + ["cost"])
                 + "\n")
        for i in range(len(samples)):
            cells = [f"{v:.17g}" for v in samples.points[i]]
            cost = "" if samples.costs is None else f"{samples.costs[i]:.17g}"
            fh.write(",".join(cells + [cost]) + "\n")
