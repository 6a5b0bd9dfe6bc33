import numpy as np

from cvqaoa.cli import main

BASE_CFG = """\
[problem]
kind = styblinski-tang
dimension = 1

[grid]
half_extent = 8
points = 128

[initial]
squeezing = 0.8

[schedule]
steps = 2
T = 0.05

[sampling]
samples = 50
seed = 3
threshold = -39.0

[guards]
"""


def _write(tmp_path, text, name="exp.cfg"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_run_produces_artifacts(tmp_path, capsys):
    cfg = _write(tmp_path, BASE_CFG)
    out = tmp_path / "out"
    assert main(["run", "--config", cfg, "--out", str(out)]) == 0
    stdout = capsys.readouterr().out
    assert "best_cost" in stdout and "mean_cost" in stdout
    for name in ("steps.csv", "heatmap.txt", "samples.csv"):
        assert (out / name).exists()
    # steps.csv has a header row plus 3 snapshots after the comment block
    rows = [ln for ln in (out / "steps.csv").read_text().splitlines()
            if not ln.startswith("#")]
    assert rows[0].startswith("step,")
    assert len(rows) == 1 + 3
    # the heatmap is a parseable numeric matrix
    heat = [ln for ln in (out / "heatmap.txt").read_text().splitlines()
            if not ln.startswith("#")]
    matrix = np.array([[float(v) for v in ln.split()] for ln in heat])
    assert matrix.shape[1] == 128 and np.all(matrix >= 0)


def test_seed_override_changes_samples(tmp_path):
    cfg = _write(tmp_path, BASE_CFG)
    for seed, sub in ((None, "a"), (99, "b")):
        args = ["run", "--config", cfg, "--out", str(tmp_path / sub)]
        if seed is not None:
            args += ["--seed", str(seed)]
        assert main(args) == 0
    a = (tmp_path / "a" / "samples.csv").read_text()
    b = (tmp_path / "b" / "samples.csv").read_text()
    assert a != b
    assert "seed=99" in b


def test_scan_subcommand(tmp_path, capsys):
    cfg = _write(tmp_path, BASE_CFG)
    out = tmp_path / "scan"
    assert main(["scan", "--config", cfg, "--out", str(out),
                 "0.02", "0.05"]) == 0
    rows = [ln for ln in (out / "scan.csv").read_text().splitlines()
            if not ln.startswith("#")]
    assert rows[0] == "T,mean_cost,best_sample_cost"
    assert len(rows) == 3


def test_polynomial_file_problem(tmp_path):
    (tmp_path / "poly.txt").write_text(
        "# simple quadratic well\n0.5 2\n-1.0 1\n")
    cfg = BASE_CFG.replace("kind = styblinski-tang",
                           "kind = polynomial-file\nfile = poly.txt")
    path = _write(tmp_path, cfg)
    assert main(["run", "--config", path, "--out", str(tmp_path / "o")]) == 0


def test_pubo_file_problem(tmp_path, capsys):
    (tmp_path / "qubo.txt").write_text("1.0 1 0\n1.0 0 1\n-1.0 1 1\n")
    cfg = """\
[problem]
kind = pubo-file
file = qubo.txt
dimension = 2

[grid]
half_extent = 6
points = 64

[initial]
squeezing = 0.5

[schedule]
steps = 6
T = 0.15

[sampling]
samples = 200
seed = 7

[guards]
aliasing_mass = 1e-2
leakage_threshold = 5e-3
"""
    path = _write(tmp_path, cfg)
    assert main(["run", "--config", path, "--out", str(tmp_path / "o")]) == 0
    stdout = capsys.readouterr().out
    assert "mode_bitstring 11" in stdout


def test_grover_subcommand(tmp_path, capsys):
    cfg = """\
[problem]
kind = grover
dimension = 1

[grid]
half_extent = 10
points = 512

[initial]

[grover]
target = 5.1
epsilon = 0.25
momentum_center = 0
iterations = 10

[guards]
"""
    path = _write(tmp_path, cfg)
    out = tmp_path / "g"
    assert main(["grover", "--config", path, "--out", str(out)]) == 0
    assert "peak_success" in capsys.readouterr().out
    rows = [ln for ln in (out / "grover.csv").read_text().splitlines()
            if not ln.startswith("#")]
    assert len(rows) == 1 + 11


def test_missing_config_is_usage_error(tmp_path, capsys):
    assert main(["run", "--config", str(tmp_path / "nope.cfg")]) == 1


def test_missing_problem_file_leaves_no_artifacts(tmp_path):
    cfg = BASE_CFG.replace("kind = styblinski-tang",
                           "kind = polynomial-file\nfile = absent.txt")
    path = _write(tmp_path, cfg)
    out = tmp_path / "o"
    assert main(["run", "--config", path, "--out", str(out)]) == 1
    assert not out.exists()


def test_bad_config_values(tmp_path):
    cfg = BASE_CFG.replace("kind = styblinski-tang", "kind = mystery")
    assert main(["run", "--config", _write(tmp_path, cfg)]) == 1
    cfg = BASE_CFG.replace("points = 128", "points = 100")
    assert main(["run", "--config", _write(tmp_path, cfg)]) == 1


def test_guard_trip_exits_2(tmp_path):
    cfg = BASE_CFG.replace("T = 0.05", "T = 5.0")
    path = _write(tmp_path, cfg)
    assert main(["run", "--config", path, "--out", str(tmp_path / "o")]) == 2


def test_check_subcommand(capsys):
    assert main(["check", "parseval"]) == 0
    assert "[PASS] parseval" in capsys.readouterr().out
    assert main(["check", "nonsense"]) == 1
