"""Project pattern sets into 2D with PCA, optionally augmenting the raw
cells with a trained network's hidden-layer activations.

Principal components are only defined up to sign, which would make
repeated projections flip arbitrarily; each component is therefore
normalized so its largest-magnitude entry is positive (first such entry
on ties). Flips can still happen across *different* datasets, which is
inherent to PCA and left alone.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError
from .network import Network, forward_batch
from .patterns import GRID_CELLS, PatternSet


@dataclass(frozen=True, eq=False)
class FeatureMatrix:
    """Per-pattern feature rows plus the labels aligned to them."""

    rows: np.ndarray
    labels: tuple[int | None, ...]

    def __post_init__(self):
        if self.rows.ndim != 2:
            raise InvalidInputError("feature rows must form a 2D matrix")
        if len(self.labels) != self.rows.shape[0]:
            raise InvalidInputError("labels must align one-to-one with rows")

    @property
    def dim(self) -> int:
        return self.rows.shape[1]


@dataclass(frozen=True, eq=False)
class Projection:
    """2D PCA projection: one (x, y) point per pattern, the two principal
    axes, and the fraction of variance each explains."""

    points: np.ndarray
    labels: tuple[int | None, ...]
    explained_variance: tuple[float, float]
    component_vectors: np.ndarray
    degenerate: bool = False


def build_features(pattern_set: PatternSet, net: Network | None = None) -> FeatureMatrix:
    """Rows are flattened cells (0/1 reals); with a network, each row is
    extended by the 48 hidden activations for that pattern. Cells are 0/1
    and sigmoid activations live in (0, 1), so the two blocks are on
    commensurate scales and are concatenated unstandardized."""
    labels = tuple(p.label for p in pattern_set)
    if len(pattern_set) == 0:
        dim = GRID_CELLS if net is None else GRID_CELLS + net.topology.hidden_size
        return FeatureMatrix(np.zeros((0, dim)), labels)
    X = np.stack([p.to_array() for p in pattern_set])
    if net is not None:
        if net.topology.input_size != GRID_CELLS:
            raise InvalidInputError(
                f"network expects {net.topology.input_size} inputs, patterns have {GRID_CELLS}"
            )
        hidden, _ = forward_batch(net, X)
        X = np.hstack([X, hidden])
    return FeatureMatrix(X, labels)


def _fix_sign(v: np.ndarray) -> np.ndarray:
    anchor = int(np.argmax(np.abs(v)))
    return -v if v[anchor] < 0 else v


def _orthogonal_unit(v: np.ndarray) -> np.ndarray:
    # Any unit vector orthogonal to v: Gram-Schmidt on the basis vector
    # least aligned with it.
    basis = np.zeros_like(v)
    basis[int(np.argmin(np.abs(v)))] = 1.0
    w = basis - np.dot(basis, v) * v
    return w / np.linalg.norm(w)


def principal_axes(X: np.ndarray) -> tuple[np.ndarray, np.ndarray, tuple[float, float], bool]:
    """Mean vector, the top-2 sign-fixed principal axes (rows), explained
    variance fractions, and a degeneracy flag for rank < 2 input.

    Components come from an SVD of the centered matrix; the covariance
    normalization is 1/(n-1).
    """
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[0] < 2:
        raise InvalidInputError("PCA needs at least 2 rows")
    if X.shape[1] < 2:
        raise InvalidInputError("PCA needs at least 2 columns")
    if not np.isfinite(X).all():
        raise InvalidInputError("PCA input contains non-finite values")

    mean = X.mean(axis=0)
    centered = X - mean
    _, singular, vt = np.linalg.svd(centered, full_matrices=False)
    variances = singular**2  # proportional to eigenvalues; 1/(n-1) cancels in fractions
    total = variances.sum()
    tol = singular[0] * max(X.shape) * np.finfo(np.float64).eps if singular.size else 0.0
    rank = int(np.sum(singular > tol))

    if rank == 0:
        axes = np.zeros((2, X.shape[1]))
        axes[0, 0] = 1.0
        axes[1, 1] = 1.0
        return mean, axes, (0.0, 0.0), True

    first = _fix_sign(vt[0])
    if rank >= 2:
        second = _fix_sign(vt[1])
        fractions = (float(variances[0] / total), float(variances[1] / total))
        degenerate = False
    else:
        second = _fix_sign(_orthogonal_unit(first))
        fractions = (float(variances[0] / total), 0.0)
        degenerate = True
    return mean, np.vstack([first, second]), fractions, degenerate


def pca_project(features: FeatureMatrix) -> Projection:
    """Center the feature columns, extract the top two principal axes, and
    drop every row onto them."""
    mean, axes, fractions, degenerate = principal_axes(features.rows)
    points = (features.rows - mean) @ axes.T
    return Projection(
        points=points,
        labels=features.labels,
        explained_variance=fractions,
        component_vectors=axes,
        degenerate=degenerate,
    )


def projection_to_csv(projection: Projection) -> str:
    """CSV export: header ``x,y,label``, reals at 17 significant digits."""
    lines = ["x,y,label"]
    for (x, y), label in zip(projection.points, projection.labels):
        lines.append(f"{x:.17g},{y:.17g},{'' if label is None else label}")
    return "\n".join(lines) + "\n"


def save_projection_csv(projection: Projection, destination: str | os.PathLike) -> None:
    with open(destination, "w", encoding="ascii", newline="\n") as fh:
        fh.write(projection_to_csv(projection))
