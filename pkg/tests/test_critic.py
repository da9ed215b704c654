import numpy as np
import pytest

from acsim.critic import Critic
from acsim.critic import ScoredDesign
from acsim.critic import critic_gradient
from acsim.critic import critic_input_gradient
from acsim.critic import critic_loss
from acsim.critic import critic_update
from acsim.critic import encode_design
from acsim.critic import make_critic
from acsim.critic import predict
from acsim.critic import predict_batch
from acsim.critic import scored_designs
from acsim.exceptions import DimensionMismatch
from acsim.exceptions import EmptyBatch
from acsim.exceptions import NonFiniteValue
from acsim.nn import AdamState
from acsim.nn import NetworkSpec
from acsim.nn import ParamVector
from acsim.nn import forward
from acsim.objectives import GmmObjective

from test_nn import numeric_gradient


def constant_critic(value, input_dim=2):
    spec = NetworkSpec.from_widths((input_dim, 1))
    values = np.zeros(spec.parameter_count)
    values[-1] = value
    return Critic(ParamVector(values, spec), input_dim)


def random_batch(rng, n, d):
    return scored_designs(rng.uniform(-1, 1, size=(n, d)), rng.normal(size=n))


def test_critic_has_one_output(rng):
    spec = NetworkSpec.from_widths((2, 4, 2))
    with pytest.raises(DimensionMismatch):
        Critic(ParamVector.zeros(spec), 2)


def test_scored_design_rejects_nan():
    with pytest.raises(NonFiniteValue):
        ScoredDesign(np.zeros(2), np.nan)


def test_zero_output_layer_predicts_zero(rng):
    critic = make_critic(3, rng, hidden=(5,))
    values = critic.params.values.copy()
    values[-(5 + 1):] = 0.0
    critic = critic.with_params(critic.params.with_values(values))
    assert predict(critic, rng.uniform(-1, 1, size=3)) == 0.0


def test_index_design_is_one_hot(rng):
    critic = make_critic(5, rng, hidden=(4,))
    np.testing.assert_array_equal(encode_design(2, 5), [0, 0, 1, 0, 0])
    assert predict(critic, 2) == forward(critic.params, np.array([0.0, 0.0, 1.0, 0.0, 0.0]))[0]


def test_predict_rejects_wrong_dimension(rng):
    critic = make_critic(3, rng, hidden=(4,))
    with pytest.raises(DimensionMismatch):
        predict(critic, np.zeros(2))
    with pytest.raises(DimensionMismatch):
        predict(critic, 3 + 4)


def test_fit_single_point(rng):
    critic = make_critic(2, rng, hidden=(16,))
    opt = AdamState.for_params(critic.params)
    x0 = np.array([0.3, -0.4])
    batch = [ScoredDesign(x0, 3.0)]
    for _ in range(3000):
        critic, opt = critic_update(critic, batch, opt, 1e-3)
    assert abs(predict(critic, x0) - 3.0) < 1e-3


def test_loss_examples(rng):
    one = constant_critic(1.0)
    assert critic_loss(one, [ScoredDesign(np.zeros(2), 0.0)]) == 0.5
    assert critic_loss(one, [ScoredDesign(rng.normal(size=2), 1.0)]) == 0.0


def test_loss_matches_direct_evaluation(rng):
    critic = make_critic(3, rng, hidden=(6, 6))
    batch = random_batch(rng, 4, 3)
    expected = np.mean([0.5 * (predict(critic, e.design) - e.score) ** 2 for e in batch])
    assert np.isclose(critic_loss(critic, batch), expected, rtol=1e-12)


def test_loss_is_permutation_invariant(rng):
    critic = make_critic(3, rng, hidden=(6,))
    batch = random_batch(rng, 10, 3)
    shuffled = [batch[i] for i in rng.permutation(10)]
    assert np.isclose(critic_loss(critic, batch), critic_loss(critic, shuffled), rtol=1e-12)


def test_empty_batch(rng):
    critic = make_critic(2, rng, hidden=(3,))
    with pytest.raises(EmptyBatch):
        critic_loss(critic, [])


def test_zero_residual_update_keeps_params(rng):
    critic = make_critic(2, rng, hidden=(5,))
    designs = list(rng.uniform(-1, 1, size=(6, 2)))
    batch = scored_designs(designs, predict_batch(critic, designs))
    updated, _ = critic_update(critic, batch, AdamState.for_params(critic.params), 1e-2)
    np.testing.assert_array_equal(updated.params.values, critic.params.values)


@pytest.mark.parametrize('seed', range(100))
def test_gradient_finite_differences(seed):
    rng = np.random.default_rng(seed)
    critic = make_critic(3, rng, hidden=(5, 4))
    batch = random_batch(rng, 6, 3)

    def loss(values):
        return critic_loss(critic.with_params(critic.params.with_values(values)), batch)

    np.testing.assert_allclose(critic_gradient(critic, batch), numeric_gradient(loss, critic.params.values), rtol=1e-4, atol=1e-8)


def test_input_gradient_finite_differences(rng):
    critic = make_critic(3, rng, hidden=(5,))
    X = rng.uniform(-1, 1, size=(4, 3))
    grads = critic_input_gradient(critic, X)
    for x, g in zip(X, grads):
        np.testing.assert_allclose(g, numeric_gradient(lambda v: predict(critic, v), x), rtol=1e-4, atol=1e-8)


def test_loss_decreases_on_fixed_batch(rng):
    critic = make_critic(2, rng, hidden=(8,))
    opt = AdamState.for_params(critic.params)
    batch = random_batch(rng, 8, 2)
    losses = []
    for _ in range(1000):
        losses.append(critic_loss(critic, batch))
        critic, opt = critic_update(critic, batch, opt, 1e-3)
    losses = np.array(losses)
    assert np.all(losses[1:] <= 1.01 * np.minimum.accumulate(losses)[:-1])
    assert losses[-1] < 0.5 * losses[0]


@pytest.mark.slow
def test_regression_on_mixture_grid():
    rng = np.random.default_rng(0)
    objective = GmmObjective()
    grid = np.linspace(-0.99, 0.99, 100).reshape((-1, 1))
    batch = scored_designs(grid, [objective(x) for x in grid])
    critic = make_critic(1, rng)
    opt = AdamState.for_params(critic.params)
    for _ in range(20000):
        critic, opt = critic_update(critic, batch, opt, 1e-3)
    errors = np.abs(predict_batch(critic, grid) - [e.score for e in batch])
    assert errors.mean() <= 0.02
