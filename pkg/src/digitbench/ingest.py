"""Read IDX-packed handwritten-digit files and convert them to two-tone
12x8 patterns.

IDX is the big-endian binary container the standard digit datasets ship
in: a magic number, dimension fields, then the payload. Gzipped files are
detected and decompressed transparently; byte offsets in errors refer to
the decompressed stream.
"""

from __future__ import annotations

import gzip
import logging
import os
import struct
from dataclasses import dataclass

import numpy as np

from .errors import IdxFormatError, InvalidInputError
from .patterns import GRID_COLS, GRID_ROWS, DigitPattern, PatternSet, dedup, nearest_resample

IDX_IMAGES_MAGIC = 0x00000803
IDX_LABELS_MAGIC = 0x00000801

log = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class GrayImage:
    """A grayscale image; ``pixels`` is a (height, width) uint8 array."""

    width: int
    height: int
    pixels: np.ndarray

    def __post_init__(self):
        if self.pixels.shape != (self.height, self.width):
            raise InvalidInputError(
                f"pixel array shape {self.pixels.shape} != ({self.height}, {self.width})"
            )


@dataclass(frozen=True)
class ConversionConfig:
    """Two-tone conversion settings; intensity >= threshold marks a cell."""

    threshold: int = 85
    rows: int = GRID_ROWS
    cols: int = GRID_COLS

    def __post_init__(self):
        if not 0 <= self.threshold <= 255:
            raise InvalidInputError("threshold must be in 0..255")
        if self.rows < 1 or self.cols < 1:
            raise InvalidInputError("target grid must be at least 1x1")


def _read_stream(source) -> bytes:
    if isinstance(source, (str, os.PathLike)):
        with open(source, "rb") as fh:
            data = fh.read()
    elif isinstance(source, (bytes, bytearray)):
        data = bytes(source)
    else:
        data = source.read()
    if data[:2] == b"\x1f\x8b":
        data = gzip.decompress(data)
    return data


def read_idx_images(source) -> list[GrayImage]:
    """Parse an IDX image file (path, bytes, or binary file object)."""
    data = _read_stream(source)
    if len(data) < 16:
        raise IdxFormatError("image header truncated", offset=len(data))
    magic, count, rows, cols = struct.unpack(">IIII", data[:16])
    if magic != IDX_IMAGES_MAGIC:
        raise IdxFormatError(
            f"bad image magic 0x{magic:08x}, expected 0x{IDX_IMAGES_MAGIC:08x}", offset=0
        )
    expected = 16 + count * rows * cols
    if len(data) < expected:
        raise IdxFormatError(
            f"image payload truncated: need {expected} bytes, have {len(data)}",
            offset=len(data),
        )
    pixels = np.frombuffer(data, dtype=np.uint8, count=count * rows * cols, offset=16)
    pixels = pixels.reshape(count, rows, cols)
    return [GrayImage(width=cols, height=rows, pixels=pixels[i]) for i in range(count)]


def read_idx_labels(source) -> list[int]:
    """Parse an IDX label file (path, bytes, or binary file object)."""
    data = _read_stream(source)
    if len(data) < 8:
        raise IdxFormatError("label header truncated", offset=len(data))
    magic, count = struct.unpack(">II", data[:8])
    if magic != IDX_LABELS_MAGIC:
        raise IdxFormatError(
            f"bad label magic 0x{magic:08x}, expected 0x{IDX_LABELS_MAGIC:08x}", offset=0
        )
    if len(data) < 8 + count:
        raise IdxFormatError(
            f"label payload truncated: need {8 + count} bytes, have {len(data)}",
            offset=len(data),
        )
    return list(data[8 : 8 + count])


def read_idx_dataset(images_source, labels_source) -> tuple[list[GrayImage], list[int]]:
    """Load a paired image/label file set; counts must agree."""
    images = read_idx_images(images_source)
    labels = read_idx_labels(labels_source)
    if len(images) != len(labels):
        raise IdxFormatError(
            f"image count {len(images)} != label count {len(labels)}", offset=4
        )
    return images, labels


def write_idx_images(images: list[GrayImage], destination: str | os.PathLike) -> None:
    """Write images back out in IDX form (all images must share one size)."""
    if not images:
        raise InvalidInputError("nothing to write")
    rows, cols = images[0].height, images[0].width
    with open(destination, "wb") as fh:
        fh.write(struct.pack(">IIII", IDX_IMAGES_MAGIC, len(images), rows, cols))
        for img in images:
            if (img.height, img.width) != (rows, cols):
                raise InvalidInputError("mixed image sizes in one IDX file")
            fh.write(img.pixels.tobytes())


def write_idx_labels(labels: list[int], destination: str | os.PathLike) -> None:
    with open(destination, "wb") as fh:
        fh.write(struct.pack(">II", IDX_LABELS_MAGIC, len(labels)))
        fh.write(bytes(labels))


def to_two_tone(image: GrayImage, config: ConversionConfig = ConversionConfig()) -> DigitPattern:
    """Downscale by nearest-neighbor center sampling, then binarize: the
    sampled intensity maps to 1 when >= threshold, else 0. Sampling picks
    original intensities, so thresholding before or after scaling gives
    the same result; scaling first touches fewer pixels."""
    if image.pixels.size == 0:
        raise InvalidInputError("empty image")
    sampled = nearest_resample(image.pixels, config.rows, config.cols)
    bits = (sampled >= config.threshold).astype(np.uint8)
    return DigitPattern(bytes(bits.ravel().tolist()))


def convert_dataset(images: list[GrayImage], labels: list[int],
                    config: ConversionConfig = ConversionConfig()) -> PatternSet:
    """Convert every image, attach labels, and dedup. The number of removed
    duplicates is len(images) - len(result); it is also logged."""
    if len(images) != len(labels):
        raise InvalidInputError(f"{len(images)} images but {len(labels)} labels")
    patterns = tuple(
        to_two_tone(img, config).with_label(int(lab)) for img, lab in zip(images, labels)
    )
    result = dedup(PatternSet(patterns))
    removed = len(patterns) - len(result)
    if removed:
        log.info("removed %d duplicate patterns during conversion", removed)
    return result
