import numpy as np
import pytest

from qverify.optimizers import KINDS, OptimizerSpec, minimize


def _bowl(x):
    return float(np.sum((np.asarray(x) - 1.3) ** 2))


@pytest.mark.parametrize("kind", KINDS)
def test_minimizes_quadratic_bowl(kind):
    spec = OptimizerSpec(kind=kind, max_iterations=200)
    result = minimize(_bowl, np.zeros(3), spec, seed=4)
    assert result.best_value < 0.05
    assert np.allclose(result.best_params, 1.3, atol=0.3)


@pytest.mark.parametrize("kind", KINDS)
def test_trace_shape_and_best_value(kind):
    spec = OptimizerSpec(kind=kind, max_iterations=60)
    result = minimize(_bowl, np.full(2, 3.0), spec, seed=1)
    trace = result.trace
    assert 0 < len(trace) <= 60
    assert [k for k, _ in trace] == list(range(len(trace)))
    # best_value tracks the minimum of everything evaluated at the center
    assert result.best_value <= min(v for _, v in trace) + 1e-15
    running = np.minimum.accumulate([v for _, v in trace])
    assert all(b <= a for a, b in zip(running, running[1:]))


@pytest.mark.parametrize("kind", KINDS)
def test_deterministic_given_seed(kind):
    spec = OptimizerSpec(kind=kind, max_iterations=40)
    a = minimize(_bowl, np.zeros(2), spec, seed=7)
    b = minimize(_bowl, np.zeros(2), spec, seed=7)
    assert a.best_value == b.best_value
    assert np.array_equal(a.best_params, b.best_params)
    assert a.trace == b.trace
    assert a.evaluations == b.evaluations


def test_spec_validation():
    with pytest.raises(ValueError, match="kind"):
        OptimizerSpec(kind="nelder-mead")
    with pytest.raises(ValueError, match="iterations"):
        OptimizerSpec(max_iterations=0)


def test_handles_noisy_objective():
    rng = np.random.default_rng(0)

    def noisy(x):
        return _bowl(x) + 0.01 * rng.normal()

    spec = OptimizerSpec(kind="simultaneous-perturbation", max_iterations=300)
    result = minimize(noisy, np.zeros(2), spec, seed=2)
    assert result.best_value < 0.5
