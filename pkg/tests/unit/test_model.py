"""Unit tests for the linear GNN model: forward pass, gradients, Adam and training."""

import numpy as np
import pytest

from spectral_filter_lab.bases.scalar import basis_values
from spectral_filter_lab.errors import NumericError, ValidationError
from spectral_filter_lab.graph.core import normalized_adjacency, normalized_laplacian
from spectral_filter_lab.graph.generators import grid_graph, random_connected_graph
from spectral_filter_lab.model.core import (
    LinearGnnModel,
    forward,
    init_model,
    predict,
    sample_dropout,
)
from spectral_filter_lab.model.loss import compute_loss, loss_and_grads
from spectral_filter_lab.model.optim import AdamState, adam_step
from spectral_filter_lab.model.training import TrainTask, accuracy, train
from spectral_filter_lab.spectral.eigen import eigendecompose, gft
from spectral_filter_lab.types import BasisSpec, TrainConfig

FD_STEP = 1e-5


def _numeric_grad(m, A_hat, X, target, index, loss, dropout=None):
    """Central finite differences of the loss for every learnable parameter."""
    grads = {}
    for name, value in m.parameters().items():
        grad = np.zeros_like(value)
        for pos in np.ndindex(value.shape):
            shifted = []
            for sign in (1.0, -1.0):
                trial = value.copy()
                trial[pos] += sign * FD_STEP
                probe = m.with_parameters({name: trial})
                shifted.append(loss_and_grads(probe, A_hat, X, target, index, loss, dropout)[0])
            grad[pos] = (shifted[0] - shifted[1]) / (2.0 * FD_STEP)
        grads[name] = grad
    return grads


def _random_instance(seed, pcd=False, bias=True, unifilter=False, d_out=2):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(8, 20))
    g = random_connected_graph(n, 0.3, seed=seed)
    A_hat = normalized_adjacency(g)
    spec = BasisSpec(
        family="jacobi", K=3, a=float(rng.uniform(-0.5, 2.0)), b=float(rng.uniform(-0.5, 2.0))
    )
    m = init_model(
        3, d_out, spec, pcd=pcd, unifilter=unifilter, seed=seed, gamma_prime=1.5, bias=bias
    )
    params = {name: rng.normal(scale=0.5, size=v.shape) for name, v in m.parameters().items()}
    m = m.with_parameters(params)
    X = rng.standard_normal((n, 3))
    return m, A_hat, X, rng


# ============================================================================
# Initialization and forward pass
# ============================================================================


class TestInitModel:
    """Identity-filter start and parameter layout."""

    def test_identity_start(self, path6_operators, rng):
        A_hat, _, _ = path6_operators
        m = init_model(3, 2, BasisSpec(family="chebyshev", K=4), seed=3)
        X = rng.standard_normal((6, 3))
        np.testing.assert_allclose(predict(m, A_hat, X), X @ m.W, atol=1e-12)

    def test_same_seed_same_parameters(self):
        a = init_model(5, 3, BasisSpec(K=2), pcd=True, seed=42)
        b = init_model(5, 3, BasisSpec(K=2), pcd=True, seed=42)
        for name in a.parameters():
            np.testing.assert_array_equal(a.parameters()[name], b.parameters()[name])

    def test_weight_range(self):
        m = init_model(4, 6, BasisSpec(K=1), seed=0)
        assert np.all(np.abs(m.W) <= 0.5)

    def test_unifilter_stores_one_column(self):
        m = init_model(3, 4, BasisSpec(K=2), unifilter=True)
        assert m.coeffs.shape == (3, 1)
        assert m.effective_coeffs().shape == (3, 4)

    def test_pcd_init(self):
        m = init_model(2, 2, BasisSpec(K=3), pcd=True, gamma_prime=2.0)
        np.testing.assert_allclose(m.gammas(), [1.0, 1.0, 1.0])
        capped = init_model(2, 2, BasisSpec(K=3), pcd=True, gamma_prime=1.0)
        np.testing.assert_allclose(capped.gammas(), [0.9, 0.9, 0.9])

    def test_fixed_filter_is_not_learnable(self):
        m = init_model(2, 2, BasisSpec(family="fixed_sgc", K=2))
        assert "coeffs" not in m.parameters()
        np.testing.assert_array_equal(m.coeffs[:, 0], [0.0, 0.0, 1.0])

    def test_invalid_dims(self):
        with pytest.raises(ValidationError) as exc:
            init_model(0, 2, BasisSpec())
        assert exc.value.error_code == "INVALID_MODEL_DIMS"

    def test_pcd_requires_jacobi(self):
        with pytest.raises(ValidationError) as exc:
            init_model(2, 2, BasisSpec(family="bernstein", K=2), pcd=True)
        assert exc.value.error_code == "UNSUPPORTED_BASIS_COMBINATION"


class TestForward:
    """Forward pass against closed forms and the spectral oracle."""

    def test_monomial_first_order_is_adjacency(self, path6_operators, rng):
        A_hat, _, _ = path6_operators
        m = LinearGnnModel(
            W=np.eye(2),
            bias=None,
            coeffs=np.array([[0.0, 0.0], [1.0, 1.0]]),
            spec=BasisSpec(family="monomial", K=1),
        )
        X = rng.standard_normal((6, 2))
        np.testing.assert_allclose(predict(m, A_hat, X), A_hat.matvec(X), atol=1e-12)

    def test_p2_high_pass(self, p2):
        m = LinearGnnModel(
            W=np.ones((1, 1)),
            bias=None,
            coeffs=np.array([[1.0], [-1.0]]),
            spec=BasisSpec(family="monomial", K=1),
        )
        Z = predict(m, normalized_adjacency(p2), np.array([[1.0], [0.0]]))
        np.testing.assert_allclose(Z[:, 0], [1.0, -1.0], atol=1e-12)

    def test_unit_gammas_match_plain_model(self, path6_operators, rng):
        A_hat, _, _ = path6_operators
        spec = BasisSpec(family="jacobi", K=4, a=0.5, b=1.5)
        plain = init_model(3, 2, spec, seed=1)
        plain = plain.with_parameters({"coeffs": rng.standard_normal((5, 2))})
        pcd = init_model(3, 2, spec, pcd=True, gamma_prime=2.0, seed=1)
        pcd = pcd.with_parameters({"coeffs": plain.coeffs})
        X = rng.standard_normal((6, 3))
        np.testing.assert_allclose(predict(pcd, A_hat, X), predict(plain, A_hat, X), atol=1e-12)

    @pytest.mark.parametrize("seed", range(3))
    def test_spectral_consistency(self, seed):
        m, A_hat, X, _ = _random_instance(seed, pcd=True)
        g = random_connected_graph(A_hat.n, 0.3, seed=seed)
        s = eigendecompose(normalized_laplacian(g))
        Z, cache = forward(m, A_hat, X)
        response = basis_values(m.spec, s.eigenvalues) @ m.effective_coeffs()
        np.testing.assert_allclose(gft(s, Z), response * gft(s, cache.X_hat), atol=1e-8)

    def test_bias_is_added_before_filtering(self, path6_operators):
        A_hat, _, _ = path6_operators
        m = init_model(1, 1, BasisSpec(K=2), seed=0)
        m = m.with_parameters({"W": np.zeros((1, 1)), "bias": np.array([2.0])})
        np.testing.assert_allclose(predict(m, A_hat, np.ones((6, 1)))[:, 0], 2.0)

    def test_feature_dimension_mismatch(self, path6_operators):
        A_hat, _, _ = path6_operators
        m = init_model(3, 2, BasisSpec(K=2))
        with pytest.raises(ValidationError) as exc:
            predict(m, A_hat, np.ones((6, 4)))
        assert exc.value.error_code == "DIMENSION_MISMATCH"
        with pytest.raises(ValidationError):
            predict(m, A_hat, np.ones((5, 3)))


# ============================================================================
# Losses and gradients
# ============================================================================


class TestLosses:
    """Loss values and masks."""

    def test_squared_is_half_sum(self):
        Z = np.array([[1.0, 2.0], [3.0, 4.0]])
        value, grad = compute_loss("squared", Z, np.zeros((2, 2)), np.array([1]))
        assert value == 12.5
        np.testing.assert_array_equal(grad, [[0.0, 0.0], [3.0, 4.0]])

    def test_cross_entropy_is_mean(self):
        Z = np.zeros((4, 2))
        value, _ = compute_loss("softmax_ce", Z, np.array([0, 1, 0, 1]), np.arange(4))
        assert value == pytest.approx(np.log(2.0))

    def test_unknown_loss(self, path6_operators):
        A_hat, _, _ = path6_operators
        m = init_model(1, 1, BasisSpec(K=1))
        with pytest.raises(ValidationError):
            loss_and_grads(m, A_hat, np.ones((6, 1)), np.ones((6, 1)), np.arange(6), "hinge")

    def test_empty_mask(self, path6_operators):
        A_hat, _, _ = path6_operators
        m = init_model(1, 1, BasisSpec(K=1))
        with pytest.raises(ValidationError) as exc:
            loss_and_grads(m, A_hat, np.ones((6, 1)), np.ones((6, 1)), np.zeros(6, dtype=bool))
        assert exc.value.error_code == "EMPTY_MASK"

    def test_zero_residual_gives_zero_gradients(self):
        m, A_hat, X, _ = _random_instance(0, pcd=True)
        target = predict(m, A_hat, X)
        value, grads = loss_and_grads(m, A_hat, X, target, np.arange(A_hat.n))
        assert value == pytest.approx(0.0, abs=1e-20)
        for grad in grads.values():
            np.testing.assert_allclose(grad, 0.0, atol=1e-12)


class TestGradients:
    """Analytic gradients against central finite differences."""

    @pytest.mark.parametrize("seed", range(10))
    @pytest.mark.parametrize("pcd", [False, True], ids=["plain", "pcd"])
    def test_squared_loss(self, seed, pcd):
        m, A_hat, X, rng = _random_instance(seed, pcd=pcd)
        target = rng.standard_normal((A_hat.n, 2))
        index = np.flatnonzero(rng.random(A_hat.n) < 0.7)
        _, analytic = loss_and_grads(m, A_hat, X, target, index)
        numeric = _numeric_grad(m, A_hat, X, target, index, "squared")
        for name in analytic:
            scale = max(1.0, float(np.abs(numeric[name]).max()))
            np.testing.assert_allclose(
                analytic[name], numeric[name], rtol=1e-5, atol=1e-6 * scale, err_msg=name
            )

    @pytest.mark.parametrize("seed", range(10))
    @pytest.mark.parametrize("pcd", [False, True], ids=["plain", "pcd"])
    def test_cross_entropy(self, seed, pcd):
        m, A_hat, X, rng = _random_instance(seed, pcd=pcd, d_out=3)
        labels = rng.integers(0, 3, size=A_hat.n)
        index = np.arange(A_hat.n)
        _, analytic = loss_and_grads(m, A_hat, X, labels, index, "softmax_ce")
        numeric = _numeric_grad(m, A_hat, X, labels, index, "softmax_ce")
        for name in analytic:
            scale = max(1.0, float(np.abs(numeric[name]).max()))
            np.testing.assert_allclose(
                analytic[name], numeric[name], rtol=1e-4, atol=1e-6 * scale, err_msg=name
            )

    def test_unifilter_and_no_bias(self):
        m, A_hat, X, rng = _random_instance(7, pcd=True, bias=False, unifilter=True)
        target = rng.standard_normal((A_hat.n, 2))
        index = np.arange(A_hat.n)
        _, analytic = loss_and_grads(m, A_hat, X, target, index)
        assert "bias" not in analytic
        assert analytic["coeffs"].shape == (4, 1)
        numeric = _numeric_grad(m, A_hat, X, target, index, "squared")
        for name in analytic:
            np.testing.assert_allclose(analytic[name], numeric[name], rtol=1e-5, atol=1e-6)

    def test_with_fixed_dropout_masks(self):
        m, A_hat, X, rng = _random_instance(3)
        dropout = sample_dropout(3, 1, X.shape, (A_hat.n, 2), 0.3, 0.2)
        target = rng.standard_normal((A_hat.n, 2))
        index = np.arange(A_hat.n)
        _, analytic = loss_and_grads(m, A_hat, X, target, index, "squared", dropout)
        numeric = _numeric_grad(m, A_hat, X, target, index, "squared", dropout)
        for name in analytic:
            np.testing.assert_allclose(analytic[name], numeric[name], rtol=1e-5, atol=1e-6)


class TestDropout:
    """Seeded inverted-dropout masks."""

    def test_disabled(self):
        assert sample_dropout(0, 1, (4, 2), (4, 2), 0.0, 0.0) is None

    def test_seeded_per_epoch(self):
        a = sample_dropout(5, 3, (50, 4), (50, 2), 0.5, 0.5)
        b = sample_dropout(5, 3, (50, 4), (50, 2), 0.5, 0.5)
        c = sample_dropout(5, 4, (50, 4), (50, 2), 0.5, 0.5)
        np.testing.assert_array_equal(a.mask_x, b.mask_x)
        assert not np.array_equal(a.mask_x, c.mask_x)

    def test_inverted_scaling(self):
        state = sample_dropout(0, 1, (10, 10), (10, 1), 0.5, 0.0)
        assert set(np.unique(state.scale_x())) <= {0.0, 2.0}
        np.testing.assert_array_equal(state.scale_h(), 1.0)


# ============================================================================
# Adam
# ============================================================================


class TestAdam:
    """Adam update with parameter groups."""

    def test_zero_gradient_keeps_parameters(self):
        params = {"W": np.array([[0.3, -0.2]]), "coeffs": np.array([[1.0], [0.5]])}
        grads = {name: np.zeros_like(v) for name, v in params.items()}
        updated = adam_step(AdamState(), params, grads, TrainConfig())
        for name in params:
            np.testing.assert_array_equal(updated[name], params[name])

    def test_first_step_has_learning_rate_magnitude(self):
        params = {"coeffs": np.array([2.0])}
        grads = {"coeffs": np.array([-7.0])}
        updated = adam_step(AdamState(), params, grads, TrainConfig(lr_coeffs=0.05))
        assert updated["coeffs"][0] == pytest.approx(2.05, abs=1e-8)

    def test_weight_decay_only_on_linear_group(self):
        params = {"W": np.array([1.0]), "coeffs": np.array([1.0])}
        grads = {"W": np.zeros(1), "coeffs": np.zeros(1)}
        updated = adam_step(AdamState(), params, grads, TrainConfig(wd_linear=0.1))
        assert updated["W"][0] < 1.0
        assert updated["coeffs"][0] == 1.0

    def test_group_learning_rates(self):
        params = {"W": np.zeros(1), "eta": np.zeros(1)}
        grads = {"W": np.ones(1), "eta": np.ones(1)}
        updated = adam_step(AdamState(), params, grads, TrainConfig(lr_linear=0.1, lr_pcd=0.01))
        assert updated["W"][0] == pytest.approx(-0.1, abs=1e-8)
        assert updated["eta"][0] == pytest.approx(-0.01, abs=1e-8)

    def test_state_counts_steps(self):
        state = AdamState()
        params = {"W": np.zeros(2)}
        for _ in range(3):
            params = adam_step(state, params, {"W": np.ones(2)}, TrainConfig())
        assert state.step == 3


# ============================================================================
# Training
# ============================================================================


def _grid_task(seed=0):
    g = grid_graph(3, 4)
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((g.n, 2))
    reference = init_model(2, 2, BasisSpec(family="chebyshev", K=3), seed=seed + 1)
    reference = reference.with_parameters({"coeffs": rng.standard_normal((4, 2))})
    A_hat = normalized_adjacency(g)
    return TrainTask(
        A_hat=A_hat, X=X, target=predict(reference, A_hat, X), train_index=np.arange(g.n)
    )


class TestTrain:
    """Adam training loop with early stopping."""

    def test_overlapping_splits(self, path6_operators):
        A_hat, _, _ = path6_operators
        with pytest.raises(ValidationError) as exc:
            TrainTask(
                A_hat=A_hat,
                X=np.ones((6, 1)),
                target=np.ones((6, 1)),
                train_index=np.array([0, 1]),
                val_index=np.array([1, 2]),
            )
        assert exc.value.error_code == "OVERLAPPING_SPLITS"

    def test_representable_target_is_fitted(self):
        task = _grid_task()
        m = init_model(2, 2, BasisSpec(family="chebyshev", K=3), seed=0, bias=False)
        cfg = TrainConfig(lr_linear=0.05, lr_coeffs=0.05, max_epochs=1000, patience=1000)
        best, history = train(m, task, cfg)
        first = history.records[0].train_loss
        assert history.epochs_run <= 1000
        assert min(r.train_loss for r in history.records) <= 1e-3 * first
        # best-validation parameters are restored
        Z = predict(best, task.A_hat, task.X)
        final, _ = compute_loss("squared", Z, task.target, task.train_index)
        assert final == pytest.approx(history.best_val_metric)

    def test_patience_zero_stops_at_first_non_improving_epoch(self):
        task = _grid_task(1)
        m = init_model(2, 2, BasisSpec(family="chebyshev", K=3), seed=0)
        cfg = TrainConfig(lr_linear=1.0, lr_coeffs=1.0, max_epochs=300, patience=0)
        _, history = train(m, task, cfg)
        assert history.stopped_early
        metrics = [r.val_metric for r in history.records]
        first_stale = next(
            i for i in range(1, len(metrics)) if metrics[i] >= min(metrics[:i])
        )
        assert history.epochs_run == first_stale + 1

    def test_history_frame(self):
        task = _grid_task()
        m = init_model(2, 2, BasisSpec(K=2), seed=0)
        _, history = train(m, task, TrainConfig(max_epochs=7, patience=100))
        frame = history.to_frame()
        assert len(frame) == 7
        assert list(frame["epoch"]) == list(range(1, 8))

    def test_deterministic(self):
        task = _grid_task()
        m = init_model(2, 2, BasisSpec(K=2), pcd=True, seed=0)
        cfg = TrainConfig(max_epochs=20, dropout_x=0.2, dropout_h=0.2, seed=9)
        a, ha = train(m, task, cfg)
        b, hb = train(m, task, cfg)
        np.testing.assert_array_equal(a.W, b.W)
        assert [r.train_loss for r in ha.records] == [r.train_loss for r in hb.records]

    def test_divergence(self, path6_operators):
        A_hat, _, _ = path6_operators
        X = np.ones((6, 1))
        X[0, 0] = np.inf
        task = TrainTask(A_hat=A_hat, X=X, target=np.zeros((6, 1)), train_index=np.arange(6))
        with pytest.raises(NumericError) as exc, np.errstate(all="ignore"):
            train(init_model(1, 1, BasisSpec(K=1)), task, TrainConfig(max_epochs=5))
        assert exc.value.error_code == "TRAINING_DIVERGED"
        assert exc.value.details["epoch"] == 1

    def test_pcd_with_unit_gammas_follows_plain_trajectory(self):
        task = _grid_task(2)
        spec = BasisSpec(family="jacobi", K=3, a=1.0, b=1.0)
        plain = init_model(2, 2, spec, seed=4)
        pcd = init_model(2, 2, spec, pcd=True, gamma_prime=2.0, seed=4)
        cfg = TrainConfig(max_epochs=5, patience=10, lr_pcd=0.0)
        _, plain_history = train(plain, task, cfg)
        _, pcd_history = train(pcd, task, cfg)
        np.testing.assert_allclose(
            [r.train_loss for r in pcd_history.records],
            [r.train_loss for r in plain_history.records],
            atol=1e-10,
        )

    def test_accuracy(self):
        Z = np.array([[1.0, 0.0], [0.0, 1.0], [1.0, 0.0]])
        assert accuracy(Z, np.array([0, 1, 1]), np.arange(3)) == pytest.approx(2 / 3)
