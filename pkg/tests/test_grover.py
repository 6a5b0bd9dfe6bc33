import numpy as np
import pytest

from cvqaoa import (GroverSpec, LeakageError, grover_run, indicator_state,
                    make_grid, momentum_sharp_state, observables,
                    optimal_iterations, two_level_prediction)


def test_spec_validation():
    with pytest.raises(ValueError):
        GroverSpec(target=(1.0,), epsilon=-0.1, momentum_center=(0.0,),
                   iterations=3)
    with pytest.raises(ValueError):
        GroverSpec(target=(1.0,), epsilon=0.2, momentum_center=(0.0, 0.0),
                   iterations=3)
    with pytest.raises(ValueError):
        GroverSpec(target=(1.0,), epsilon=0.2, momentum_center=(0.0,),
                   iterations=-1)


def test_indicator_state_shape():
    grid = make_grid([(10, 256)])
    psi = indicator_state(grid, (2.0,), 0.3)
    obs = observables(psi)
    assert obs["norm"] == pytest.approx(1.0, abs=1e-12)
    assert obs["mean_position"][0] == pytest.approx(2.0, abs=1e-10)
    assert obs["position_variance"][0] == pytest.approx(0.09, rel=1e-6)
    with pytest.raises(LeakageError):
        indicator_state(grid, (9.9,), 0.3)


def test_momentum_sharp_state_is_sharp_in_momentum():
    grid = make_grid([(10, 256)])
    psi = momentum_sharp_state(grid, (1.0,), 0.25)
    obs = observables(psi)
    assert obs["norm"] == pytest.approx(1.0, abs=1e-10)
    assert obs["mean_momentum"][0] == pytest.approx(1.0, abs=1e-3)
    # momentum std eps means a broad position profile ~ 1/(2 eps)
    assert obs["position_variance"][0] > 1.0


def test_two_level_model():
    a = 0.1
    assert two_level_prediction(a, 0) == pytest.approx(a ** 2)
    k = optimal_iterations(a)
    assert k == 7
    assert two_level_prediction(a, k) > 0.99
    with pytest.raises(ValueError):
        two_level_prediction(0.0, 1)


def test_grover_run_follows_the_rotation_model():
    grid = make_grid([(10, 512)])
    spec = GroverSpec(target=(5.1,), epsilon=0.25, momentum_center=(0.0,),
                      iterations=10)
    trace = grover_run(spec, grid)
    assert 0.05 <= trace.initial_overlap <= 0.2
    assert len(trace.success) == 11
    assert np.max(np.abs(trace.success - trace.predicted)) < 1e-8
    assert np.max(trace.success) >= 0.9
    assert trace.success[0] == pytest.approx(trace.initial_overlap ** 2)


def test_grover_run_rejects_overlap_below_floor():
    grid = make_grid([(10, 512)])
    spec = GroverSpec(target=(5.1,), epsilon=0.25, momentum_center=(0.0,),
                      iterations=1)
    with pytest.raises(ValueError):
        grover_run(spec, grid, min_overlap=0.5)
