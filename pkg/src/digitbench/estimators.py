"""Scikit-learn style wrappers so the trainer and the 2D projection plug
into pipelines, grid search, and the rest of the ecosystem."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.exceptions import NotFittedError
from sklearn.utils.validation import check_array, check_X_y

from .network import (
    NetworkTopology,
    TrainConfig,
    forward_batch,
    init_network,
    softmax,
    train,
)
from .projection import principal_axes


class DigitClassifier(ClassifierMixin, BaseEstimator):
    """Three-layer sigmoid network with momentum backpropagation.

    Parameters mirror the training configuration: ``hidden_size`` sets the
    hidden layer width, ``n_classes`` the number of output nodes (digits
    0-9 by default), and ``random_state`` seeds the weight initialization.
    Labels in ``y`` must be integers in ``[0, n_classes)``.

    After ``fit``, ``network_`` holds the trained network and ``report_``
    the training outcome (epochs, final MSE, accuracy, wall time).
    """

    def __init__(self, hidden_size=48, n_classes=10, learning_rate=0.2,
                 momentum=0.8, mse_threshold=0.05, max_epochs=10_000,
                 random_state=0):
        self.hidden_size = hidden_size
        self.n_classes = n_classes
        self.learning_rate = learning_rate
        self.momentum = momentum
        self.mse_threshold = mse_threshold
        self.max_epochs = max_epochs
        self.random_state = random_state

    def fit(self, X, y):
        X, y = check_X_y(X, y, dtype=np.float64)
        y = y.astype(np.int64)
        if y.size and (y.min() < 0 or y.max() >= self.n_classes):
            raise ValueError(f"labels must lie in [0, {self.n_classes})")
        config = TrainConfig(
            learning_rate=self.learning_rate,
            momentum=self.momentum,
            mse_threshold=self.mse_threshold,
            max_epochs=self.max_epochs,
            rng_seed=self.random_state,
        )
        topology = NetworkTopology(X.shape[1], self.hidden_size, self.n_classes)
        net = init_network(topology, seed=config.rng_seed)
        self.report_ = train(net, list(zip(X, y)), config)
        self.network_ = net
        self.classes_ = np.arange(self.n_classes)
        self.n_features_in_ = X.shape[1]
        return self

    def _check_fitted_inputs(self, X):
        if not hasattr(self, "network_"):
            raise NotFittedError("fit this classifier before predicting")
        X = check_array(X, dtype=np.float64)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"expected {self.n_features_in_} features, got {X.shape[1]}")
        return X

    def decision_function(self, X):
        X = self._check_fitted_inputs(X)
        _, outputs = forward_batch(self.network_, X)
        return outputs

    def predict_proba(self, X):
        outputs = self.decision_function(X)
        return np.apply_along_axis(softmax, 1, outputs)

    def predict(self, X):
        return self.decision_function(X).argmax(axis=1)


class PlanarPCA(TransformerMixin, BaseEstimator):
    """Projection onto the first two principal components.

    ``fit`` learns the mean and the two sign-normalized axes;
    ``transform`` maps rows to (x, y). Exposes ``components_`` and
    ``explained_variance_ratio_`` like the stock decompositions, plus a
    ``degenerate_`` flag when the fit data had rank < 2.
    """

    def fit(self, X, y=None):
        X = check_array(X, dtype=np.float64, ensure_min_samples=2, ensure_min_features=2)
        mean, axes, fractions, degenerate = principal_axes(X)
        self.mean_ = mean
        self.components_ = axes
        self.explained_variance_ratio_ = np.array(fractions)
        self.degenerate_ = degenerate
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X):
        if not hasattr(self, "components_"):
            raise NotFittedError("fit this transformer before transforming")
        X = check_array(X, dtype=np.float64)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"expected {self.n_features_in_} features, got {X.shape[1]}")
        return (X - self.mean_) @ self.components_.T
