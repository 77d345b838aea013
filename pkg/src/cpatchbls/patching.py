"""Channel splitting and fixed-length, non-overlapping patch tiling.

A series of length n is tiled into consecutive patches of length
``patch_size``; when the length is not divisible, the series is right-padded
by replicating its last value. Timestep t lives in cell
(t // patch_size, t % patch_size) of the grid, which is the mapping score
realignment relies on. ``unpatchify`` drops the padded tail, so round trips
are exact.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import PatchTooLarge, ShapeMismatch


@dataclass(frozen=True)
class PatchGrid:
    """One channel tiled into non-overlapping patches plus padding metadata."""

    patches: np.ndarray  # (n_patches, patch_size)
    original_len: int
    pad_len: int
    patch_size: int


def split_channels(values: np.ndarray) -> list[np.ndarray]:
    """Split an (n, channels) matrix into per-channel 1-D series, in column order."""
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 2:
        raise ShapeMismatch(f"expected a 2-D matrix, got shape {arr.shape}")
    return [np.ascontiguousarray(arr[:, c]) for c in range(arr.shape[1])]


def patchify(series: np.ndarray, patch_size: int) -> PatchGrid:
    """Tile a 1-D series into patches, right-padding with the last value."""
    arr = np.asarray(series, dtype=np.float64).ravel()
    n = arr.shape[0]
    if n < 1:
        raise ShapeMismatch("cannot patchify an empty series")
    if patch_size < 2:
        raise ShapeMismatch(f"patch_size must be >= 2, got {patch_size}")
    if patch_size > 2 * n:
        raise PatchTooLarge(
            f"patch_size {patch_size} exceeds twice the series length {n}; "
            "this scale is misconfigured for the data"
        )
    pad_len = (-n) % patch_size
    if pad_len:
        arr = np.concatenate([arr, np.full(pad_len, arr[-1])])
    patches = arr.reshape(-1, patch_size)
    return PatchGrid(
        patches=patches, original_len=n, pad_len=pad_len, patch_size=patch_size
    )


def unpatchify(grid: PatchGrid) -> np.ndarray:
    """Concatenate patch rows and trim the padded tail, restoring the series."""
    flat = np.asarray(grid.patches).reshape(-1)
    return flat[: grid.original_len].copy()
