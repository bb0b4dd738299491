import numpy as np

from digitbench.patterns import GRID_CELLS
from digitbench.synth import DIGIT_TEMPLATES, idx_corpus, pattern_corpus


def test_templates_cover_all_digits():
    assert sorted(DIGIT_TEMPLATES) == list(range(10))
    for digit, pattern in DIGIT_TEMPLATES.items():
        assert pattern.label == digit
        assert 0 < pattern.count_set() < GRID_CELLS


def test_pattern_corpus_counts_and_determinism():
    a = pattern_corpus(per_digit=7, seed=4)
    b = pattern_corpus(per_digit=7, seed=4)
    assert tuple(a) == tuple(b)
    assert len(a) == 70
    assert a.per_digit_counts == [7] * 10


def test_pattern_corpus_distinct_within_digit():
    corpus = pattern_corpus(per_digit=10, seed=2)
    keys = {(p.cells, p.label) for p in corpus}
    assert len(keys) == len(corpus)


def test_idx_corpus_determinism_and_labels():
    images_a, labels_a = idx_corpus(20, seed=9)
    images_b, labels_b = idx_corpus(20, seed=9)
    assert labels_a == labels_b == [i % 10 for i in range(20)]
    assert all(np.array_equal(x.pixels, y.pixels) for x, y in zip(images_a, images_b))
    assert images_a[0].pixels.shape == (28, 28)
