"""Digit patterns: 12x8 binary grids, preprocessing, dedup, and the
``NNPAT v1`` file format.

A pattern's 96 cells are stored row-major (row 0 left to right first);
that flattening order is fixed everywhere in the package. Patterns and
pattern sets are immutable values: every operation returns a new object.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import InvalidInputError, PatternFormatError

GRID_ROWS = 12
GRID_COLS = 8
GRID_CELLS = GRID_ROWS * GRID_COLS

PATTERN_FILE_HEADER = "NNPAT v1"


@dataclass(frozen=True)
class DigitPattern:
    """One 12x8 binary digit pattern with an optional label 0-9."""

    cells: bytes
    label: int | None = None

    def __post_init__(self):
        if len(self.cells) != GRID_CELLS:
            raise InvalidInputError(
                f"pattern needs exactly {GRID_CELLS} cells, got {len(self.cells)}"
            )
        if any(c not in (0, 1) for c in self.cells):
            raise InvalidInputError("pattern cells must be 0 or 1")
        if self.label is not None and not 0 <= self.label <= 9:
            raise InvalidInputError(f"label must be 0-9, got {self.label}")

    @classmethod
    def from_cells(cls, cells: Iterable[int], label: int | None = None) -> "DigitPattern":
        return cls(bytes(int(c) for c in cells), label)

    @classmethod
    def from_string(cls, text: str, label: int | None = None) -> "DigitPattern":
        """Build from a 96-character string of '0'/'1' characters."""
        if len(text) != GRID_CELLS or set(text) - {"0", "1"}:
            raise InvalidInputError("cell string must be 96 characters of 0/1")
        return cls(bytes(1 if ch == "1" else 0 for ch in text), label)

    @classmethod
    def from_rows(cls, rows: Sequence[str], label: int | None = None) -> "DigitPattern":
        """Build from 12 strings of 8 characters; any non-space, non-'0',
        non-'.' character marks a set cell. Convenient for literals in code."""
        if len(rows) != GRID_ROWS or any(len(r) != GRID_COLS for r in rows):
            raise InvalidInputError("expected 12 rows of 8 characters")
        bits = bytes(0 if ch in " .0" else 1 for row in rows for ch in row)
        return cls(bits, label)

    def to_string(self) -> str:
        return "".join("1" if c else "0" for c in self.cells)

    def to_array(self) -> np.ndarray:
        """Cells as a float64 vector of length 96, row-major."""
        return np.frombuffer(self.cells, dtype=np.uint8).astype(np.float64)

    def grid(self) -> np.ndarray:
        """Cells as a 12x8 uint8 array."""
        return np.frombuffer(self.cells, dtype=np.uint8).reshape(GRID_ROWS, GRID_COLS).copy()

    def cell(self, row: int, col: int) -> int:
        _check_index(row, col)
        return self.cells[row * GRID_COLS + col]

    def count_set(self) -> int:
        return sum(self.cells)

    def with_label(self, label: int | None) -> "DigitPattern":
        return DigitPattern(self.cells, label)


@dataclass(frozen=True)
class BoundingBox:
    """Tight box around the set cells; edges each touch at least one set cell."""

    row_min: int
    row_max: int
    col_min: int
    col_max: int

    @property
    def height(self) -> int:
        return self.row_max - self.row_min + 1

    @property
    def width(self) -> int:
        return self.col_max - self.col_min + 1


@dataclass(frozen=True)
class PatternSet:
    """An ordered, immutable collection of digit patterns."""

    patterns: tuple[DigitPattern, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "patterns", tuple(self.patterns))

    @property
    def per_digit_counts(self) -> list[int]:
        """Number of patterns per label 0-9 (unlabeled patterns not counted)."""
        counts = [0] * 10
        for p in self.patterns:
            if p.label is not None:
                counts[p.label] += 1
        return counts

    def __len__(self) -> int:
        return len(self.patterns)

    def __iter__(self) -> Iterator[DigitPattern]:
        return iter(self.patterns)

    def __getitem__(self, index: int) -> DigitPattern:
        return self.patterns[index]

    def add(self, pattern: DigitPattern) -> "PatternSet":
        return PatternSet(self.patterns + (pattern,))

    def remove(self, index: int) -> "PatternSet":
        if not 0 <= index < len(self.patterns):
            raise InvalidInputError(f"pattern index {index} out of range")
        return PatternSet(self.patterns[:index] + self.patterns[index + 1 :])

    def labels(self) -> list[int | None]:
        return [p.label for p in self.patterns]

    def to_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """Stack into (X, y) float64/int64 arrays. Requires all labels set."""
        if any(p.label is None for p in self.patterns):
            raise InvalidInputError("pattern set contains unlabeled patterns")
        if not self.patterns:
            return np.zeros((0, GRID_CELLS)), np.zeros(0, dtype=np.int64)
        X = np.stack([p.to_array() for p in self.patterns])
        y = np.array([p.label for p in self.patterns], dtype=np.int64)
        return X, y


def _check_index(row: int, col: int) -> None:
    if not (0 <= row < GRID_ROWS and 0 <= col < GRID_COLS):
        raise InvalidInputError(f"cell index ({row}, {col}) outside the 12x8 grid")


def toggle_cell(pattern: DigitPattern, row: int, col: int) -> DigitPattern:
    """Flip one cell, returning a new pattern."""
    _check_index(row, col)
    cells = bytearray(pattern.cells)
    idx = row * GRID_COLS + col
    cells[idx] ^= 1
    return DigitPattern(bytes(cells), pattern.label)


def bounding_box(pattern: DigitPattern) -> BoundingBox:
    """Tight bounding box of the set cells; empty patterns are rejected."""
    grid = pattern.grid()
    rows = np.flatnonzero(grid.any(axis=1))
    cols = np.flatnonzero(grid.any(axis=0))
    if rows.size == 0:
        raise InvalidInputError("empty pattern has no bounding box")
    return BoundingBox(int(rows[0]), int(rows[-1]), int(cols[0]), int(cols[-1]))


def nearest_resample(values: np.ndarray, out_rows: int, out_cols: int) -> np.ndarray:
    """Resize a 2D array by nearest-neighbor center sampling.

    Destination cell (r, c) takes the source value at
    (floor((r+0.5)*H/out_rows), floor((c+0.5)*W/out_cols)). The index math
    is done in integers so boundary cases don't depend on float rounding.
    """
    h, w = values.shape
    rows = ((2 * np.arange(out_rows) + 1) * h) // (2 * out_rows)
    cols = ((2 * np.arange(out_cols) + 1) * w) // (2 * out_cols)
    return values[np.ix_(rows, cols)]


def preprocess(pattern: DigitPattern) -> DigitPattern:
    """Normalize a pattern: find its bounding box, move it to the top-left
    corner, and stretch it (nearest-neighbor) to fill the whole 12x8 grid.

    The stretch is non-uniform, so the output's bounding box is always the
    full grid and preprocessing is idempotent. A destination cell is set
    when its sampled value exceeds 0.5; for binary sources the sample is
    already exactly 0 or 1, but the same rule serves grayscale callers.
    """
    box = bounding_box(pattern)
    window = pattern.grid()[box.row_min : box.row_max + 1, box.col_min : box.col_max + 1]
    sampled = nearest_resample(window.astype(np.float64), GRID_ROWS, GRID_COLS)
    cells = bytes(np.where(sampled > 0.5, 1, 0).astype(np.uint8).ravel().tolist())
    return DigitPattern(cells, pattern.label)


def dedup(pattern_set: PatternSet) -> PatternSet:
    """Drop later exact duplicates of (cells, label), keeping first
    occurrences in order. Identical cells under different labels are kept:
    two users may legitimately mean different digits by the same shape."""
    seen: set[tuple[bytes, int | None]] = set()
    kept = []
    for p in pattern_set:
        key = (p.cells, p.label)
        if key not in seen:
            seen.add(key)
            kept.append(p)
    return PatternSet(tuple(kept))


def dumps_patterns(pattern_set: PatternSet) -> str:
    """Serialize to the NNPAT v1 text format: a header line, then one
    pattern per line as ``<label> <96 chars of 0/1>``. Labels are required
    in files."""
    lines = [PATTERN_FILE_HEADER]
    for p in pattern_set:
        if p.label is None:
            raise InvalidInputError("cannot save unlabeled patterns to NNPAT files")
        lines.append(f"{p.label} {p.to_string()}")
    return "\n".join(lines) + "\n"


def loads_patterns(text: str) -> PatternSet:
    """Parse NNPAT v1 text. Duplicates are removed on load."""
    lines = text.splitlines()
    if not lines or lines[0].strip() != PATTERN_FILE_HEADER:
        raise PatternFormatError(f"expected header '{PATTERN_FILE_HEADER}'", line=1)
    patterns = []
    for lineno, raw in enumerate(lines[1:], start=2):
        line = raw.strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise PatternFormatError("expected '<label> <cells>'", line=lineno)
        label_text, cell_text = parts
        try:
            label = int(label_text)
        except ValueError:
            raise PatternFormatError(f"bad label {label_text!r}", line=lineno) from None
        if not 0 <= label <= 9:
            raise PatternFormatError(f"label {label} out of range 0-9", line=lineno)
        if len(cell_text) != GRID_CELLS:
            raise PatternFormatError(
                f"expected {GRID_CELLS} cells, got {len(cell_text)}", line=lineno
            )
        if set(cell_text) - {"0", "1"}:
            raise PatternFormatError("cells must be 0/1 characters", line=lineno)
        patterns.append(DigitPattern.from_string(cell_text, label))
    return dedup(PatternSet(tuple(patterns)))


def save_patterns(pattern_set: PatternSet, destination: str | os.PathLike) -> None:
    with open(destination, "w", encoding="ascii", newline="\n") as fh:
        fh.write(dumps_patterns(pattern_set))


def load_patterns(source: str | os.PathLike) -> PatternSet:
    with open(source, "r", encoding="ascii") as fh:
        return loads_patterns(fh.read())
