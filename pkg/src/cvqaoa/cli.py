"""Command-line front end: run, scan, grover, check.

Experiments are described by flat key=value config files with section
headers (INI style). Every artifact embeds the full config as comment
lines for provenance. Exit codes: 0 success, 1 usage/config error,
2 numerical guard tripped.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import checks
from .engine import Guards, RunRecord, run, uniform_schedule, decayed_schedule, scan_t, Schedule
from .errors import ConfigError, SimulationError
from .grid import GaussianParams, GridSpec, gaussian_state, make_grid, marginal
from .grover import GroverSpec, grover_run
from .potentials import CostSpec, polynomial_cost, pubo_encode, styblinski_tang
from .sampling import sample, statistics, decode_samples, samples_to_csv

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_GUARD = 2

PROBLEM_KINDS = ("styblinski-tang", "polynomial-file", "pubo-file", "grover")


@dataclass
class ExperimentConfig:
    problem_kind: str
    dimension: int
    grid: GridSpec
    initial: GaussianParams
    schedule: Schedule | None
    n_samples: int
    seed: int
    jitter: bool
    threshold: float
    guards: Guards
    cost: CostSpec | None
    binary_terms: list | None
    grover: GroverSpec | None
    out_dir: Path
    raw_lines: list[str] = field(default_factory=list)


def _floats(text: str) -> list[float]:
    return [float(v) for v in text.replace(",", " ").split()]


def _per_axis(values: list[float], n: int, what: str) -> list[float]:
    if len(values) == 1:
        return values * n
    if len(values) != n:
        raise ConfigError(f"{what} needs 1 or {n} values, got {len(values)}")
    return values


def _read_problem_file(path: Path, n_fields: int | None = None):
    """Lines of whitespace-separated numbers; '#' starts a comment."""
    rows = []
    if not path.exists():
        raise ConfigError(f"problem file not found: {path}")
    for lineno, line in enumerate(path.read_text().splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        fields = body.split()
        if n_fields is not None and len(fields) != n_fields:
            raise ConfigError(
                f"{path}:{lineno}: expected {n_fields} fields, got {len(fields)}")
        try:
            rows.append([float(v) for v in fields])
        except ValueError as exc:
            raise ConfigError(f"{path}:{lineno}: {exc}") from exc
    if not rows:
        raise ConfigError(f"{path}: no terms found")
    return rows


def load_config(path: str, seed_override: int | None = None,
                out_override: str | None = None) -> ExperimentConfig:
    cfg_path = Path(path)
    if not cfg_path.exists():
        raise ConfigError(f"config file not found: {path}")
    parser = configparser.ConfigParser(inline_comment_prefixes=("#",))
    try:
        parser.read(cfg_path)
    except configparser.Error as exc:
        raise ConfigError(f"{path}: {exc}") from exc

    try:
        kind = parser.get("problem", "kind")
        if kind not in PROBLEM_KINDS:
            raise ConfigError(f"unknown problem kind {kind!r}")
        n = parser.getint("problem", "dimension")

        half_extent = _per_axis(_floats(parser.get("grid", "half_extent")), n,
                                "grid.half_extent")
        points = [int(v) for v in
                  _per_axis(_floats(parser.get("grid", "points")), n,
                            "grid.points")]
        grid = make_grid(zip(half_extent, points))

        center = _per_axis(_floats(parser.get("initial", "center",
                                              fallback="0")), n, "initial.center")
        momentum = _per_axis(_floats(parser.get("initial", "momentum",
                                                fallback="0")), n,
                             "initial.momentum")
        squeezing = _per_axis(_floats(parser.get("initial", "squeezing",
                                                 fallback="0")), n,
                              "initial.squeezing")
        initial = GaussianParams.of(center, momentum, squeezing)

        guards = Guards(
            leakage_threshold=parser.getfloat("guards", "leakage_threshold",
                                              fallback=1e-3),
            aliasing_mass=parser.getfloat("guards", "aliasing_mass",
                                          fallback=1e-3),
            check_aliasing=parser.getboolean("guards", "check_aliasing",
                                             fallback=True),
        )

        schedule = None
        grover = None
        if kind == "grover":
            target = _per_axis(_floats(parser.get("grover", "target")), n,
                               "grover.target")
            grover = GroverSpec(
                target=tuple(target),
                epsilon=parser.getfloat("grover", "epsilon"),
                momentum_center=tuple(_per_axis(
                    _floats(parser.get("grover", "momentum_center",
                                       fallback="0")), n,
                    "grover.momentum_center")),
                iterations=parser.getint("grover", "iterations"),
            )
        else:
            steps = parser.getint("schedule", "steps")
            mixer = parser.get("schedule", "mixer", fallback="kinetic")
            if parser.has_option("schedule", "eta"):
                eta = _floats(parser.get("schedule", "eta"))
                gamma = _floats(parser.get("schedule", "gamma"))
                if len(eta) != steps or len(gamma) != steps:
                    raise ConfigError("eta/gamma length must equal steps")
                schedule = Schedule(tuple(eta), tuple(gamma), mixer)
            elif steps == 0:
                schedule = Schedule((), (), mixer)
            else:
                t = parser.getfloat("schedule", "T")
                decay = parser.getfloat("schedule", "decay", fallback=0.0)
                schedule = (uniform_schedule(steps, t, mixer) if decay == 0.0
                            else decayed_schedule(steps, t, t, decay, mixer))

        cost = None
        binary_terms = None
        if kind == "styblinski-tang":
            cost = styblinski_tang(n)
        elif kind == "polynomial-file":
            fpath = cfg_path.parent / parser.get("problem", "file")
            rows = _read_problem_file(fpath, n_fields=n + 1)
            cost = polynomial_cost(
                [(row[0], [int(e) for e in row[1:]]) for row in rows], n)
        elif kind == "pubo-file":
            fpath = cfg_path.parent / parser.get("problem", "file")
            rows = _read_problem_file(fpath, n_fields=n + 1)
            binary_terms = [(row[0], tuple(int(b) for b in row[1:]))
                            for row in rows]
            cost = pubo_encode(
                binary_terms, n,
                beta=parser.getfloat("problem", "beta", fallback=2.0),
                omega=parser.getfloat("problem", "omega", fallback=1.0),
                lam_w=parser.getfloat("problem", "lambda", fallback=1.5))

        n_samples = parser.getint("sampling", "samples", fallback=1000)
        seed = parser.getint("sampling", "seed", fallback=0)
        if seed_override is not None:
            seed = seed_override
        jitter = parser.getboolean("sampling", "jitter", fallback=False)
        threshold = parser.getfloat("sampling", "threshold",
                                    fallback=float("inf"))
        out_dir = Path(out_override if out_override is not None
                       else parser.get("output", "directory", fallback="."))
    except (configparser.Error, ValueError) as exc:
        raise ConfigError(f"{path}: {exc}") from exc

    raw_lines = [ln.rstrip() for ln in cfg_path.read_text().splitlines()]
    return ExperimentConfig(
        problem_kind=kind, dimension=n, grid=grid, initial=initial,
        schedule=schedule, n_samples=n_samples, seed=seed, jitter=jitter,
        threshold=threshold, guards=guards, cost=cost,
        binary_terms=binary_terms, grover=grover, out_dir=out_dir,
        raw_lines=raw_lines)


def _write_steps_csv(path: Path, record: RunRecord, config: ExperimentConfig):
    with open(path, "w", newline="") as fh:
        for line in config.raw_lines:
            fh.write(f"# {line}\n")
        writer = csv.writer(fh)
        n = config.dimension
        writer.writerow(["step", "norm", "mean_cost"]
                        + [f"mean_x_{i + 1}" for i in range(n)]
                        + ["boundary_mass"])
        for snap in record.snapshots:
            writer.writerow(
                [snap["step"], f"{snap['norm']:.17g}",
                 f"{snap['mean_cost']:.17g}"]
                + [f"{v:.17g}" for v in snap["mean_position"]]
                + [f"{snap['boundary_mass']:.17g}"])


def _write_heatmap(path: Path, psi, config: ExperimentConfig):
    """2D marginal over the first two axes (or the 1D marginal) as a
    plain-text matrix, row-major, 17 significant digits."""
    axes = (0, 1) if config.dimension >= 2 else (0,)
    matrix = marginal(psi, axes)
    if matrix.ndim == 1:
        matrix = matrix[None, :]
    with open(path, "w") as fh:
        for line in config.raw_lines:
            fh.write(f"# {line}\n")
        meta = " ".join(
            f"axis{i}:L={config.grid.axes[i].half_extent:g},"
            f"M={config.grid.axes[i].points}" for i in axes)
        fh.write(f"# heatmap rows={matrix.shape[0]} cols={matrix.shape[1]} "
                 f"{meta}\n")
        for row in matrix:
            fh.write(" ".join(f"{v:.17g}" for v in row) + "\n")


def cmd_run(args) -> int:
    config = load_config(args.config, args.seed, args.out)
    if config.problem_kind == "grover":
        print("error: use the 'grover' command for grover configs",
              file=sys.stderr)
        return EXIT_USAGE
    config.out_dir.mkdir(parents=True, exist_ok=True)
    psi0 = gaussian_state(config.grid, config.initial,
                          leakage_threshold=config.guards.leakage_threshold)
    record = run(psi0, config.cost, config.schedule, guards=config.guards)
    samples = sample(record.final_state, config.n_samples, seed=config.seed,
                     jitter=config.jitter, cost=config.cost)
    stats = statistics(samples, config.threshold)

    _write_steps_csv(config.out_dir / "steps.csv", record, config)
    _write_heatmap(config.out_dir / "heatmap.txt", record.final_state, config)
    samples_to_csv(samples, config.out_dir / "samples.csv",
                   comments=config.raw_lines)

    best = ", ".join(f"{v:.6f}" for v in stats["best_point"])
    print(f"best_cost {stats['best_cost']:.6f} at ({best})")
    print(f"mean_cost {stats['mean_cost']:.6f}")
    print(f"count_below_threshold({config.threshold:g}) "
          f"{stats['count_below_threshold']}")
    if config.binary_terms is not None:
        decoded = decode_samples(samples, config.binary_terms)
        bits = "".join(map(str, decoded["mode_bitstring"]))
        print(f"mode_bitstring {bits} "
              f"(frequency {decoded['frequencies'][decoded['mode_bitstring']]})")
        print(f"best_bitstring {''.join(map(str, decoded['best_bitstring']))} "
              f"binary_cost {decoded['best_cost']:g}")
    return EXIT_OK


def cmd_scan(args) -> int:
    config = load_config(args.config, args.seed, args.out)
    t_values = [float(v) for v in args.T]
    if not t_values:
        print("error: scan needs at least one T value", file=sys.stderr)
        return EXIT_USAGE
    psi0 = gaussian_state(config.grid, config.initial,
                          leakage_threshold=config.guards.leakage_threshold)
    rows = scan_t(psi0, config.cost, config.schedule.steps, t_values,
                  config.n_samples, config.seed,
                  mixer=config.schedule.mixer, guards=config.guards)
    config.out_dir.mkdir(parents=True, exist_ok=True)
    with open(config.out_dir / "scan.csv", "w", newline="") as fh:
        for line in config.raw_lines:
            fh.write(f"# {line}\n")
        writer = csv.writer(fh)
        writer.writerow(["T", "mean_cost", "best_sample_cost"])
        for row in rows:
            writer.writerow([f"{row['T']:.17g}", f"{row['mean_cost']:.17g}",
                             f"{row['best_sample_cost']:.17g}"])
    print(f"{'T':>8} {'mean_cost':>14} {'best_sample':>14}")
    for row in rows:
        print(f"{row['T']:8.4f} {row['mean_cost']:14.6f} "
              f"{row['best_sample_cost']:14.6f}")
    return EXIT_OK


def cmd_grover(args) -> int:
    config = load_config(args.config, args.seed, args.out)
    if config.grover is None:
        print("error: config has no [grover] section", file=sys.stderr)
        return EXIT_USAGE
    trace = grover_run(config.grover, config.grid)
    config.out_dir.mkdir(parents=True, exist_ok=True)
    with open(config.out_dir / "grover.csv", "w", newline="") as fh:
        for line in config.raw_lines:
            fh.write(f"# {line}\n")
        writer = csv.writer(fh)
        writer.writerow(["iteration", "success_probability",
                         "predicted_probability"])
        for k, (s, p) in enumerate(zip(trace.success, trace.predicted)):
            writer.writerow([k, f"{s:.17g}", f"{p:.17g}"])
    print(f"initial_overlap {trace.initial_overlap:.6f}")
    print(f"peak_success {trace.success.max():.6f} "
          f"at iteration {int(trace.success.argmax())}")
    return EXIT_OK


def cmd_check(args) -> int:
    try:
        ok, lines = checks.run_suite(args.suite)
    except KeyError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return EXIT_USAGE
    print(f"[{'PASS' if ok else 'FAIL'}] {args.suite}")
    for line in lines:
        print(f"  {line}")
    return EXIT_OK if ok else EXIT_GUARD


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cvqaoa",
        description="Grid-based continuous-variable QAOA simulator")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run an experiment config")
    p_scan = sub.add_parser("scan", help="scan uniform-schedule T values")
    p_grover = sub.add_parser("grover", help="run amplitude amplification")
    for p in (p_run, p_scan, p_grover):
        p.add_argument("--config", required=True)
        p.add_argument("--seed", type=int, default=None,
                       help="override the config's sampling seed")
        p.add_argument("--out", default=None, help="output directory")
    p_scan.add_argument("T", nargs="*", help="T values to scan")

    p_check = sub.add_parser("check", help="run a named invariant suite")
    p_check.add_argument("suite",
                         help="one of: " + ", ".join(sorted(checks.SUITES)))
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {"run": cmd_run, "scan": cmd_scan,
                "grover": cmd_grover, "check": cmd_check}
    try:
        return handlers[args.command](args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SimulationError as exc:
        print(f"numerical guard: {exc}", file=sys.stderr)
        return EXIT_GUARD


if __name__ == "__main__":
    sys.exit(main())
