import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import Pipeline

from digitbench.estimators import DigitClassifier, PlanarPCA
from digitbench.projection import FeatureMatrix, pca_project


@pytest.fixture(scope="module")
def digits_xy():
    from digitbench.synth import pattern_corpus

    return pattern_corpus(per_digit=3, seed=21).to_arrays()


class TestDigitClassifier:
    def test_get_set_params_round_trip(self):
        clf = DigitClassifier(learning_rate=0.3, momentum=0.5)
        params = clf.get_params()
        assert params["learning_rate"] == 0.3
        restored = DigitClassifier().set_params(**params)
        assert restored.get_params() == params

    def test_clone(self):
        clf = DigitClassifier(hidden_size=12, random_state=5)
        cloned = clone(clf)
        assert cloned.get_params() == clf.get_params()

    def test_fit_predict_separable(self, digits_xy):
        X, y = digits_xy
        clf = DigitClassifier(random_state=0).fit(X, y)
        assert clf.report_.converged
        assert clf.score(X, y) == 1.0

    def test_predict_proba_rows_normalized(self, digits_xy):
        X, y = digits_xy
        clf = DigitClassifier(random_state=0).fit(X, y)
        probs = clf.predict_proba(X)
        assert probs.shape == (len(X), 10)
        assert np.allclose(probs.sum(axis=1), 1.0, atol=1e-9)
        assert np.array_equal(probs.argmax(axis=1), clf.predict(X))

    def test_not_fitted_error(self):
        with pytest.raises(NotFittedError):
            DigitClassifier().predict(np.zeros((1, 96)))

    def test_label_range_checked(self, digits_xy):
        X, y = digits_xy
        with pytest.raises(ValueError):
            DigitClassifier(n_classes=5).fit(X, y + 5)

    def test_deterministic_for_fixed_state(self, digits_xy):
        X, y = digits_xy
        a = DigitClassifier(random_state=3).fit(X, y)
        b = DigitClassifier(random_state=3).fit(X, y)
        assert np.array_equal(a.network_.w_ih, b.network_.w_ih)

    def test_feature_count_checked(self, digits_xy):
        X, y = digits_xy
        clf = DigitClassifier(random_state=0).fit(X, y)
        with pytest.raises(ValueError):
            clf.predict(X[:, :90])


class TestPlanarPCA:
    def test_fit_transform_matches_pca_project(self):
        rng = np.random.default_rng(0)
        X = rng.normal(size=(15, 6))
        points = PlanarPCA().fit_transform(X)
        expected = pca_project(FeatureMatrix(X, (None,) * 15)).points
        assert np.allclose(points, expected, atol=1e-12)

    def test_attributes(self):
        rng = np.random.default_rng(1)
        pca = PlanarPCA().fit(rng.normal(size=(20, 5)))
        assert pca.components_.shape == (2, 5)
        assert pca.explained_variance_ratio_[0] >= pca.explained_variance_ratio_[1]
        assert not pca.degenerate_

    def test_transform_new_data_uses_fit_mean(self):
        rng = np.random.default_rng(2)
        X = rng.normal(size=(10, 4))
        pca = PlanarPCA().fit(X)
        # transforming a subset must agree with the corresponding fit rows
        assert np.allclose(pca.transform(X[:3]), pca.fit_transform(X)[:3])

    def test_not_fitted(self):
        with pytest.raises(NotFittedError):
            PlanarPCA().transform(np.zeros((2, 2)))

    def test_pipeline_composition(self, digits_xy):
        X, y = digits_xy
        pipe = Pipeline([("pca", PlanarPCA())])
        coords = pipe.fit_transform(X)
        assert coords.shape == (len(X), 2)
