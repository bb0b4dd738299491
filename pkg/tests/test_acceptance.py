"""Acceptance suite: one test per release criterion, each printing a
PASS/FAIL line (run with ``pytest tests/test_acceptance.py -v -s``).

The two dataset-scale criteria prefer the real handwritten-digit IDX
files when present (searched in $MNIST_DIR, ./data, ./tests/data); in
their absence a seeded synthetic 28x28 grayscale corpus is generated and
pushed through the identical IDX -> two-tone -> train pipeline.
"""

import os
import time
from contextlib import contextmanager
from pathlib import Path

import numpy as np
import pytest

from digitbench.ingest import ConversionConfig, convert_dataset, read_idx_dataset
from digitbench.evaluator import evaluate
from digitbench.network import (
    NetworkTopology,
    TrainConfig,
    classify,
    dumps_model,
    init_network,
    loads_model,
    loss_gradients,
    softmax,
    train,
)
from digitbench.patterns import (
    DigitPattern,
    PatternSet,
    dedup,
    dumps_patterns,
    loads_patterns,
    preprocess,
)
from digitbench.projection import FeatureMatrix, pca_project
from digitbench.synth import idx_corpus, pattern_corpus

from handdrawn import FEW_SHOT_TRAINING, PROBE_TWO
from test_network import finite_difference_gradients, relative_error
from test_projection import eig_oracle


@contextmanager
def criterion(name):
    started = time.perf_counter()
    try:
        yield
    except BaseException:
        print(f"[FAIL] {name} ({time.perf_counter() - started:.2f}s)")
        raise
    print(f"[PASS] {name} ({time.perf_counter() - started:.2f}s)")


def locate_idx_pair(images_name, labels_name):
    """Find a real IDX pair by its conventional file names, or None."""
    roots = [Path(p) for p in (os.environ.get("MNIST_DIR", ""), "data", "tests/data") if p]
    for root in roots:
        for suffix in ("", ".gz"):
            images = root / (images_name + suffix)
            labels = root / (labels_name + suffix)
            if images.exists() and labels.exists():
                return images, labels
    return None


def load_or_synthesize(images_name, labels_name, count, seed):
    located = locate_idx_pair(images_name, labels_name)
    if located:
        images, labels = read_idx_dataset(*located)
        print(f"  using real dataset {located[0]}")
        return images, labels
    return idx_corpus(count, seed=seed)


def warm_kernel():
    net = init_network(NetworkTopology(2, 2, 2), seed=0)
    train(net, [(np.zeros(2), 0)], TrainConfig(max_epochs=1))


def test_gradient_correctness():
    """Analytic gradients match central finite differences on 100 random
    small networks, within relative error 1e-5, in under 5 seconds."""
    with criterion("gradient correctness (100 nets, rel err < 1e-5, < 5s)"):
        started = time.perf_counter()
        rng = np.random.default_rng(2024)
        for trial in range(100):
            topology = NetworkTopology(
                int(rng.integers(1, 7)), int(rng.integers(1, 5)), int(rng.integers(1, 4))
            )
            net = init_network(topology, seed=trial)
            x = rng.uniform(-1, 1, topology.input_size)
            target = rng.uniform(0, 1, topology.output_size)
            analytic = loss_gradients(net, x, target)
            numeric = finite_difference_gradients(net, x, target, step=1e-6)
            for a, f in zip(analytic, numeric):
                worst = float(np.max(relative_error(a, f))) if a.size else 0.0
                assert worst < 1e-5, f"trial {trial}: relative error {worst}"
        assert time.perf_counter() - started < 5.0


def test_few_shot_recognition():
    """Trained on two '1'-like and two '2'-like hand-authored patterns, a
    novel '2'-like probe lands on class 2 for at least 95 of 100 seeds."""
    with criterion("few-shot recognition (>= 95/100 seeds, < 10s)"):
        warm_kernel()
        started = time.perf_counter()
        samples = [(preprocess(p).to_array(), p.label) for p in FEW_SHOT_TRAINING]
        probe = preprocess(PROBE_TWO).to_array()
        hits = 0
        for seed in range(100):
            net = init_network(seed=seed)
            train(net, samples, TrainConfig())
            label, _ = classify(net, probe)
            hits += label == PROBE_TWO.label
        assert hits >= 95, f"only {hits}/100 seeds recognized the probe"
        assert time.perf_counter() - started < 10.0


def test_training_accuracy_desk_scale():
    """On a generated 1000-pattern corpus (100 per digit), training reaches
    MSE < 0.05 with accuracy >= 0.95 on every seed and >= 0.97 on the
    median of 5 seeds."""
    with criterion("desk-scale accuracy (1000 patterns, median >= 0.97)"):
        corpus = pattern_corpus(per_digit=100, seed=11)
        assert len(corpus) == 1000
        X, y = corpus.to_arrays()
        samples = list(zip(X, y))
        accuracies = []
        for seed in range(5):
            report = train(init_network(seed=seed), samples, TrainConfig())
            assert report.converged, f"seed {seed}: did not reach MSE < 0.05"
            assert report.training_accuracy >= 0.95, (
                f"seed {seed}: accuracy {report.training_accuracy:.4f} < 0.95"
            )
            accuracies.append(report.training_accuracy)
        median = float(np.median(accuracies))
        assert median >= 0.97, f"median accuracy {median:.4f} < 0.97"
        print(f"  accuracies: {['%.4f' % a for a in accuracies]}, median {median:.4f}")


def test_two_tone_dataset_accuracy():
    """The 10,000-image test file, converted at threshold 85, trains to
    accuracy >= 0.96 (tolerance -0.01)."""
    with criterion("two-tone dataset accuracy (10k images, acc >= 0.96 - 0.01)"):
        images, labels = load_or_synthesize(
            "t10k-images-idx3-ubyte", "t10k-labels-idx1-ubyte", count=10_000, seed=5
        )
        assert len(images) == 10_000
        pattern_set = convert_dataset(images, labels, ConversionConfig(threshold=85))
        X, y = pattern_set.to_arrays()
        report = train(init_network(seed=0), list(zip(X, y)), TrainConfig())
        assert report.converged
        print(f"  {len(pattern_set)} unique patterns, accuracy "
              f"{report.training_accuracy:.4f}, {report.epochs_run} epochs, "
              f"{report.wall_time_seconds:.2f}s")
        assert report.training_accuracy >= 0.96 - 0.01


def test_training_speed_10k():
    """10,000 converted patterns train to MSE < 0.05 in at most 10 seconds
    (5x headroom over the original hardware claim)."""
    with criterion("training speed (10,000 patterns to MSE < 0.05 in <= 10s)"):
        located = locate_idx_pair("train-images-idx3-ubyte", "train-labels-idx1-ubyte")
        if located:
            images, labels = read_idx_dataset(*located)
        else:
            # oversample so that 10,000 unique patterns survive dedup
            images, labels = idx_corpus(16_000, seed=6)
        pattern_set = convert_dataset(images, labels, ConversionConfig(threshold=85))
        assert len(pattern_set) >= 10_000, "not enough unique patterns for the speed run"
        subset = pattern_set.patterns[:10_000]
        samples = [(p.to_array(), p.label) for p in subset]
        warm_kernel()
        net = init_network(seed=0)
        report = train(net, samples, TrainConfig())
        print(f"  {report.wall_time_seconds:.2f}s, {report.epochs_run} epochs, "
              f"accuracy {report.training_accuracy:.4f}")
        assert report.converged, "did not reach MSE < 0.05"
        assert report.wall_time_seconds <= 10.0


@pytest.mark.skipif(os.environ.get("RUN_SLOW_ACCEPTANCE") != "1",
                    reason="informational 60k run; set RUN_SLOW_ACCEPTANCE=1")
def test_training_speed_60k_informational():
    """Informational: a 60,000-image corpus converts and trains in under 5
    minutes."""
    with criterion("training speed, informational (60k images, <= 5 min)"):
        images, labels = load_or_synthesize(
            "train-images-idx3-ubyte", "train-labels-idx1-ubyte", count=60_000, seed=7
        )
        pattern_set = convert_dataset(images, labels, ConversionConfig(threshold=85))
        X, y = pattern_set.to_arrays()
        warm_kernel()
        report = train(init_network(seed=0), list(zip(X, y)), TrainConfig())
        print(f"  {len(pattern_set)} unique patterns, {report.wall_time_seconds:.1f}s, "
              f"{report.epochs_run} epochs, accuracy {report.training_accuracy:.4f}")
        assert report.wall_time_seconds <= 300.0


def test_pca_oracle_equivalence():
    """500 random matrices up to 20x10: projected coordinates match the
    covariance-eigendecomposition oracle within 1e-8 after sign
    alignment, and explained variance is ordered on every case."""
    with criterion("PCA oracle equivalence (500 matrices, <= 1e-8)"):
        rng = np.random.default_rng(77)
        for trial in range(500):
            n = int(rng.integers(3, 21))
            d = int(rng.integers(2, 11))
            rows = rng.normal(scale=float(rng.uniform(0.5, 3.0)), size=(n, d))
            projection = pca_project(FeatureMatrix(rows, (None,) * n))
            oracle_points, _, oracle_fracs = eig_oracle(rows)
            assert np.allclose(projection.points, oracle_points, atol=1e-8), f"trial {trial}"
            ev = projection.explained_variance
            assert ev[0] >= ev[1] >= 0.0
            assert abs(ev[0] - oracle_fracs[0]) < 1e-8
            assert abs(ev[1] - oracle_fracs[1]) < 1e-8


def test_pipeline_invariants():
    """Property bundle: preprocess idempotence on 1000 random patterns,
    dedup idempotence, bit-exact pattern and model file round-trips,
    softmax normalization under extreme activations, and binarization
    monotonicity in the threshold."""
    with criterion("pipeline invariants bundle"):
        rng = np.random.default_rng(123)

        for _ in range(1000):
            cells = (rng.random(96) < rng.uniform(0.05, 0.8)).astype(np.uint8)
            if not cells.any():
                cells[0] = 1
            p = DigitPattern.from_cells(cells.tolist(), int(rng.integers(0, 10)))
            once = preprocess(p)
            assert preprocess(once) == once

        corpus = pattern_corpus(per_digit=20, seed=9)
        doubled = PatternSet(corpus.patterns + corpus.patterns)
        assert tuple(dedup(doubled)) == tuple(corpus)
        assert tuple(dedup(dedup(doubled))) == tuple(dedup(doubled))

        text = dumps_patterns(corpus)
        assert dumps_patterns(loads_patterns(text)) == text

        X, y = corpus.to_arrays()
        net = init_network(seed=3)
        train(net, list(zip(X, y)), TrainConfig(max_epochs=30))
        model_text = dumps_model(net)
        assert dumps_model(loads_model(model_text)) == model_text

        for activations in ([700.0, -700.0], [700.0] * 10, [-700.0] * 10,
                            list(rng.uniform(-700, 700, 10))):
            probs = softmax(np.array(activations))
            assert abs(float(probs.sum()) - 1.0) < 1e-9
            assert np.all(probs >= 0.0)

        from digitbench.ingest import GrayImage, to_two_tone

        img = GrayImage(28, 28, rng.integers(0, 256, (28, 28)).astype(np.uint8))
        previous = to_two_tone(img, ConversionConfig(threshold=0)).to_array()
        for delta in (0, 40, 85, 128, 200, 255):
            current = to_two_tone(img, ConversionConfig(threshold=delta)).to_array()
            assert np.all(current <= previous), f"threshold {delta} set new cells"
            previous = current


def test_multi_model_report_mechanism():
    """Three models trained on 29/40/13 synthetic patterns, evaluated on a
    2400-pattern synthetic set: the report is well-formed and accuracies
    obey the weighted-mean invariant. No numeric accuracy is asserted;
    the original participant-drawn patterns are not available."""
    with criterion("multi-model tester mechanism (29/40/13 vs 2400)"):
        test_set = pattern_corpus(per_digit=240, seed=31)
        assert len(test_set) == 2400
        pool = pattern_corpus(per_digit=10, seed=32)
        models = []
        for name, count in (("group1", 29), ("group2", 40), ("group3", 13)):
            subset = pool.patterns[:count]
            samples = [(p.to_array(), p.label) for p in subset]
            net = init_network(seed=len(models))
            train(net, samples, TrainConfig())
            models.append((name, net))

        report = evaluate(models, test_set)
        assert len(report.per_model) == 3
        rows_by_model = {}
        for row in report.per_pattern:
            rows_by_model.setdefault(row.model, []).append(row)
        for name, accuracy in report.per_model:
            rows = rows_by_model[name]
            assert len(rows) == 2400
            assert accuracy == pytest.approx(np.mean([r.correct for r in rows]))
            for row in rows[:50]:
                assert abs(float(row.probabilities.sum()) - 1.0) < 1e-9
                assert row.predicted == int(np.argmax(row.probabilities))
        print("  accuracies:", {name: round(acc, 4) for name, acc in report.per_model})
