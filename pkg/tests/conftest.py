import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from digitbench.network import TrainConfig, init_network, train
from digitbench.synth import pattern_corpus


@pytest.fixture(scope="session")
def tiny_corpus():
    """One clean pattern per digit: separable, converges in a blink."""
    return pattern_corpus(per_digit=1, seed=3, max_flips=0)


@pytest.fixture(scope="session")
def small_corpus():
    """50 perturbed patterns (5 per digit)."""
    return pattern_corpus(per_digit=5, seed=3)


@pytest.fixture(scope="session")
def trained_tiny_net(tiny_corpus):
    X, y = tiny_corpus.to_arrays()
    net = init_network(seed=1)
    report = train(net, list(zip(X, y)), TrainConfig())
    assert report.converged
    return net


def random_pattern_cells(rng: np.random.Generator, density=0.35) -> bytes:
    cells = (rng.random(96) < density).astype(np.uint8)
    if not cells.any():
        cells[int(rng.integers(0, 96))] = 1
    return bytes(cells.tolist())
