from __future__ import annotations

import numpy as np
import pytest

from dna_ensembles.core import Tensor, gradcheck
from dna_ensembles.decor import (
    DecorConfig,
    FeatureBatch,
    FeatureCache,
    correlation_r2,
    decor_loss,
    draw_branch,
    draw_projection,
    ensemble_decor_loss,
    loss_terms,
    pair_loss,
    total_loss,
)


def _cache(model_id, features):
    return FeatureCache(model_id, features, tuple(f"r{i}" for i in range(features.shape[0])))


def _trainable(rng, n=40, dim=6, indices=None):
    indices = np.arange(n) if indices is None else np.asarray(indices)
    return FeatureBatch(Tensor(rng.normal(size=(indices.size, dim)), requires_grad=True), indices)


def test_r2_of_an_exact_affine_relation_is_one():
    x = np.linspace(-1.0, 1.0, 30).reshape(-1, 1)
    assert correlation_r2(x, 2.0 * x + 1.0) == pytest.approx(1.0, abs=1e-12)


def test_r2_of_an_all_zero_target_is_one():
    rng = np.random.default_rng(3)
    assert correlation_r2(rng.normal(size=(20, 3)), np.zeros((20, 2))) == 1.0
    assert correlation_r2(np.zeros((20, 3)), np.zeros((20, 2))) == 1.0


def test_r2_of_independent_features_is_small():
    rng = np.random.default_rng(0)
    r2 = correlation_r2(rng.normal(size=(2000, 3)), rng.normal(size=(2000, 4)))
    assert 0.0 <= r2 < 0.01


def test_r2_matches_a_least_squares_oracle():
    rng = np.random.default_rng(1)
    regressor = rng.normal(size=(50, 2))
    target = rng.normal(size=(50, 1))
    residual_fraction = 1.0 - correlation_r2(regressor, target)
    assert residual_fraction == pytest.approx(
        _residual_energy(regressor, target) / np.sum(target**2), rel=1e-10
    )


def _residual_energy(regressor, target):
    augmented = np.hstack([regressor, np.ones((regressor.shape[0], 1))])
    coef, *_ = np.linalg.lstsq(augmented, target, rcond=None)
    return float(np.sum((target - augmented @ coef) ** 2))


def test_perfect_fit_loss_is_bounded_by_the_stabilizer():
    x = np.linspace(-1.0, 1.0, 25).reshape(-1, 1)
    target = x / np.linalg.norm(x)
    loss = decor_loss(x, target, eps_stab=1e-5)
    assert loss.item() == pytest.approx(np.log(1.0 + 1e-5) - np.log(1e-5), rel=1e-6)
    assert loss.item() == pytest.approx(11.513, abs=1e-3)


def test_uncorrelated_loss_is_near_zero():
    rng = np.random.default_rng(2)
    loss = decor_loss(rng.normal(size=(3000, 2)), rng.normal(size=(3000, 3)))
    assert 0.0 <= loss.item() < 0.01


def test_decor_loss_gradient_matches_finite_differences():
    rng = np.random.default_rng(3)
    error = gradcheck(
        lambda a, b: decor_loss(a, b), [rng.normal(size=(20, 3)), rng.normal(size=(20, 2))]
    )
    assert error < 1e-5


def test_projection_shape_scale_and_seed():
    projection = draw_projection(64, 50, seed=[0, 1, 2])
    assert projection.shape == (64, 50)
    assert projection.std() == pytest.approx(64**-0.5, rel=0.05)
    np.testing.assert_array_equal(projection, draw_projection(64, 50, seed=[0, 1, 2]))
    assert not np.array_equal(projection, draw_projection(64, 50, seed=[0, 1, 3]))


@pytest.mark.parametrize("r", [0, 9])
def test_projection_dimension_bounds(r):
    with pytest.raises(ValueError, match="0 < r <= 8"):
        draw_projection(8, r, seed=0)


def test_branch_is_a_fair_coin():
    draws = [draw_branch((0, 1, step)) for step in range(10_000)]
    assert set(draws) == {0, 1}
    assert np.mean(draws) == pytest.approx(0.5, abs=0.02)


def test_pair_loss_is_deterministic_per_step_seed():
    seed = (4, 1, 7)
    assert draw_branch(seed) == draw_branch(seed)
    first = pair_loss(*_pair(), DecorConfig(r=3), seed)
    second = pair_loss(*_pair(), DecorConfig(r=3), seed)
    assert first.item() == second.item()


def _pair(seed=5):
    rng = np.random.default_rng(seed)
    trainable = Tensor(rng.normal(size=(30, 4)), requires_grad=True)
    frozen = rng.normal(size=(30, 4))
    return trainable, frozen


def test_identity_projection_reduces_to_the_plain_loss():
    trainable, frozen = _pair()
    cfg = DecorConfig(r=4)
    eye = np.eye(4)

    regress_on_trainable = pair_loss(trainable, frozen, cfg, 0, projection=eye, branch=0)
    assert regress_on_trainable.item() == pytest.approx(decor_loss(trainable, frozen).item(), rel=1e-12)

    regress_on_frozen = pair_loss(trainable, frozen, cfg, 0, projection=eye, branch=1)
    assert regress_on_frozen.item() == pytest.approx(decor_loss(frozen, trainable).item(), rel=1e-12)


def test_frozen_features_receive_no_gradient():
    trainable, frozen = _pair()
    frozen_tensor = Tensor(frozen, requires_grad=True)
    for branch in (0, 1):
        pair_loss(trainable, frozen_tensor, DecorConfig(r=2), 3, branch=branch).backward()
        assert trainable.grad is not None and np.any(trainable.grad != 0)
        assert frozen_tensor.grad is None


def test_pair_batches_must_align():
    rng = np.random.default_rng(6)
    with pytest.raises(ValueError, match="differ in size"):
        pair_loss(Tensor(rng.normal(size=(10, 3))), rng.normal(size=(9, 3)), DecorConfig(r=2), 0)


def test_single_previous_model_equals_its_pair_loss():
    rng = np.random.default_rng(7)
    cache = _cache("arm0", rng.normal(size=(60, 6)))
    trainable = _trainable(rng, indices=rng.permutation(60)[:40])
    cfg = DecorConfig(r=4)

    ensemble = ensemble_decor_loss(trainable, [cache], cfg, (0, 1, 3))
    pair = pair_loss(trainable, cache.rows(trainable.sample_indices), cfg, (0, 1, 3))
    assert ensemble.item() == pytest.approx(pair.item(), rel=1e-12)


def test_two_previous_models_are_averaged():
    rng = np.random.default_rng(8)
    caches = [_cache("arm0", rng.normal(size=(40, 6))), _cache("arm1", rng.normal(size=(40, 6)))]
    trainable = _trainable(rng)
    cfg = DecorConfig(r=5)

    ensemble = ensemble_decor_loss(trainable, caches, cfg, (0, 2, 0))
    pairs = [pair_loss(trainable, cache.rows(trainable.sample_indices), cfg, (0, 2, 0)) for cache in caches]
    assert ensemble.item() == pytest.approx(np.mean([p.item() for p in pairs]), rel=1e-12)


def test_ensemble_loss_needs_previous_models():
    with pytest.raises(ValueError, match="at least one"):
        ensemble_decor_loss(_trainable(np.random.default_rng(9)), [], DecorConfig(r=2), 0)


def test_ensemble_loss_follows_the_batch_rows():
    rng = np.random.default_rng(10)
    features = rng.normal(size=(50, 6))
    cache = _cache("arm0", features)
    rows = [3, 7, 11, *range(20, 40)]
    trainable = FeatureBatch(Tensor(features[rows]), rows)
    cfg = DecorConfig(r=6)
    # regressing a batch on itself is a perfect fit whichever way the coin lands
    loss = ensemble_decor_loss(trainable, [cache], cfg, 0)
    assert loss.item() > 5.0


def test_zero_weight_is_pure_cross_entropy():
    rng = np.random.default_rng(11)
    logits = Tensor(rng.normal(size=(40, 3)), requires_grad=True)
    labels = rng.integers(0, 3, size=40)
    caches = [_cache("arm0", rng.normal(size=(40, 6)))]
    trainable = _trainable(rng)

    terms = loss_terms(logits, labels, trainable, caches, DecorConfig(r=4, lam=0.0), 0)
    assert terms.correlation is None
    assert terms.total is terms.cross_entropy

    no_caches = loss_terms(logits, labels, trainable, [], DecorConfig(r=4, lam=0.2), 0)
    assert no_caches.correlation is None


def test_total_loss_adds_the_weighted_correlation_term():
    rng = np.random.default_rng(12)
    logits = Tensor(rng.normal(size=(40, 3)))
    labels = rng.integers(0, 3, size=40)
    caches = [_cache("arm0", rng.normal(size=(40, 6)))]
    trainable = _trainable(rng)
    cfg = DecorConfig(r=4, lam=0.2)

    terms = loss_terms(logits, labels, trainable, caches, cfg, (0, 1, 0))
    assert terms.total.item() == pytest.approx(
        terms.cross_entropy.item() + 0.2 * terms.correlation.item(), rel=1e-12
    )
    assert total_loss(logits, labels, trainable, caches, cfg, (0, 1, 0)).item() == terms.total.item()


@pytest.mark.parametrize(
    ("kwargs", "match"),
    [({"r": 0}, "at least 1"), ({"lam": -0.1}, "non-negative"), ({"eps_stab": 0.0}, "positive")],
)
def test_decor_config_validation(kwargs, match):
    with pytest.raises(ValueError, match=match):
        DecorConfig(**kwargs)
