"""Deterministic synthetic digit corpora.

Two generators: perturbed 12x8 binary patterns (stand-ins for hand-drawn
collections when none are on disk) and 28x28 grayscale digit images packed
as IDX files (stand-ins for the standard handwritten-digit distribution,
exercising the same ingest pipeline). Both are seeded and reproducible.
"""

from __future__ import annotations

import os

import numpy as np

from .errors import InvalidInputError
from .ingest import GrayImage, write_idx_images, write_idx_labels
from .patterns import DigitPattern, PatternSet, dedup, preprocess

_TEMPLATE_ROWS = {
    0: [
        ".######.",
        ".#....#.",
        "#......#",
        "#......#",
        "#......#",
        "#......#",
        "#......#",
        "#......#",
        "#......#",
        "#......#",
        ".#....#.",
        ".######.",
    ],
    1: [
        "...##...",
        "..###...",
        ".####...",
        "...##...",
        "...##...",
        "...##...",
        "...##...",
        "...##...",
        "...##...",
        "...##...",
        "...##...",
        ".######.",
    ],
    2: [
        ".#####..",
        "#.....#.",
        "......#.",
        "......#.",
        ".....#..",
        "....#...",
        "...#....",
        "..#.....",
        ".#......",
        "#.......",
        "#.......",
        "#######.",
    ],
    3: [
        ".#####..",
        "#.....#.",
        "......#.",
        "......#.",
        "...###..",
        "...###..",
        "......#.",
        "......#.",
        "......#.",
        "#.....#.",
        "#.....#.",
        ".#####..",
    ],
    4: [
        "....##..",
        "...###..",
        "..#.##..",
        "..#.##..",
        ".#..##..",
        ".#..##..",
        "#...##..",
        "########",
        "....##..",
        "....##..",
        "....##..",
        "....##..",
    ],
    5: [
        "#######.",
        "#.......",
        "#.......",
        "#.......",
        "######..",
        "......#.",
        "......#.",
        "......#.",
        "......#.",
        "......#.",
        "#.....#.",
        ".#####..",
    ],
    6: [
        "..####..",
        ".#......",
        "#.......",
        "#.......",
        "#.......",
        "######..",
        "#.....#.",
        "#.....#.",
        "#.....#.",
        "#.....#.",
        "#.....#.",
        ".#####..",
    ],
    7: [
        "########",
        ".......#",
        "......#.",
        "......#.",
        ".....#..",
        ".....#..",
        "....#...",
        "....#...",
        "...#....",
        "...#....",
        "..#.....",
        "..#.....",
    ],
    8: [
        ".#####..",
        "#.....#.",
        "#.....#.",
        "#.....#.",
        ".#####..",
        "#.....#.",
        "#.....#.",
        "#.....#.",
        "#.....#.",
        "#.....#.",
        "#.....#.",
        ".#####..",
    ],
    9: [
        ".#####..",
        "#.....#.",
        "#.....#.",
        "#.....#.",
        "#.....#.",
        ".######.",
        "......#.",
        "......#.",
        "......#.",
        "......#.",
        ".....#..",
        ".####...",
    ],
}

DIGIT_TEMPLATES: dict[int, DigitPattern] = {
    digit: DigitPattern.from_rows(rows, label=digit) for digit, rows in _TEMPLATE_ROWS.items()
}


def _jitter_grid(grid: np.ndarray, rng: np.random.Generator, max_flips: int) -> np.ndarray:
    rows, cols = grid.shape
    shifted = np.zeros_like(grid)
    dr = int(rng.integers(-1, 2))
    dc = int(rng.integers(-1, 2))
    src_r = slice(max(0, -dr), rows - max(0, dr))
    src_c = slice(max(0, -dc), cols - max(0, dc))
    dst_r = slice(max(0, dr), rows - max(0, -dr))
    dst_c = slice(max(0, dc), cols - max(0, -dc))
    shifted[dst_r, dst_c] = grid[src_r, src_c]

    for _ in range(int(rng.integers(0, max_flips + 1))):
        r = int(rng.integers(0, rows))
        c = int(rng.integers(0, cols))
        shifted[r, c] ^= 1
    if not shifted.any():  # jitter must not erase the digit entirely
        return grid.copy()
    return shifted


def perturbed_pattern(digit: int, rng: np.random.Generator, max_flips: int = 4) -> DigitPattern:
    """One randomly shifted and speckled variant of a digit template,
    normalized the same way hand-drawn patterns are when added."""
    if digit not in DIGIT_TEMPLATES:
        raise InvalidInputError(f"no template for digit {digit}")
    grid = _jitter_grid(DIGIT_TEMPLATES[digit].grid(), rng, max_flips)
    raw = DigitPattern.from_cells(grid.ravel().tolist(), label=digit)
    return preprocess(raw)


def pattern_corpus(per_digit: int = 100, seed: int = 0, max_flips: int = 4) -> PatternSet:
    """A deduplicated corpus with exactly ``per_digit`` distinct patterns
    per digit, interleaved by digit."""
    rng = np.random.default_rng(seed)
    chosen: dict[int, list[DigitPattern]] = {d: [] for d in range(10)}
    seen: set[tuple[bytes, int]] = set()
    attempts = 0
    while any(len(v) < per_digit for v in chosen.values()):
        attempts += 1
        if attempts > per_digit * 1000:
            raise InvalidInputError("could not generate enough distinct patterns")
        for digit in range(10):
            if len(chosen[digit]) >= per_digit:
                continue
            p = perturbed_pattern(digit, rng, max_flips)
            key = (p.cells, digit)
            if key not in seen:
                seen.add(key)
                chosen[digit].append(p)
    ordered = [chosen[d][i] for i in range(per_digit) for d in range(10)]
    return dedup(PatternSet(tuple(ordered)))


def gray_digit_image(digit: int, rng: np.random.Generator, size: int = 28) -> GrayImage:
    """A grayscale rendering of a perturbed digit: the 12x8 pattern scaled
    up into a jittered box, with varied stroke intensity, background
    noise, and a box blur for soft edges."""
    grid = _jitter_grid(DIGIT_TEMPLATES[digit].grid(), rng, max_flips=3)

    scale_r = int(rng.integers(2, 3))  # 24 rows tall
    scale_c = int(rng.integers(2, 4))  # 16 or 24 wide
    block = np.kron(grid, np.ones((scale_r, scale_c), dtype=np.uint8))
    h, w = block.shape
    if h > size or w > size:
        block = block[:size, :size]
        h, w = block.shape

    # like the standard corpus, digits sit centered with only slight jitter
    canvas = np.zeros((size, size), dtype=np.float64)
    top = np.clip((size - h) // 2 + int(rng.integers(-1, 2)), 0, size - h)
    left = np.clip((size - w) // 2 + int(rng.integers(-1, 2)), 0, size - w)
    stroke = float(rng.uniform(150, 255))
    canvas[top : top + h, left : left + w] = block * stroke

    # 3x3 box blur for soft, handwriting-like edges
    padded = np.pad(canvas, 1, mode="edge")
    blurred = sum(
        padded[dr : dr + size, dc : dc + size] for dr in range(3) for dc in range(3)
    ) / 9.0
    noise = rng.uniform(0, 45, (size, size))
    pixels = np.clip(np.maximum(blurred, noise), 0, 255).astype(np.uint8)
    return GrayImage(width=size, height=size, pixels=pixels)


def idx_corpus(count: int, seed: int = 0) -> tuple[list[GrayImage], list[int]]:
    """``count`` grayscale digit images with labels cycling 0-9."""
    rng = np.random.default_rng(seed)
    images = []
    labels = []
    for i in range(count):
        digit = i % 10
        images.append(gray_digit_image(digit, rng))
        labels.append(digit)
    return images, labels


def write_idx_corpus(count: int, images_path: str | os.PathLike,
                     labels_path: str | os.PathLike, seed: int = 0) -> None:
    images, labels = idx_corpus(count, seed)
    write_idx_images(images, images_path)
    write_idx_labels(labels, labels_path)
