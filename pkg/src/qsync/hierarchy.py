"""Bounded multi-index bookkeeping for the HEOM hierarchy.

Indices are vectors (n_0, ..., n_K) of non-negative integers with
|n| = sum n_k <= L, enumerated in graded lexicographic order with the
physical index (0, ..., 0) first.  Up/down neighbor lookups are
precomputed tables with -1 as the out-of-range sentinel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

BYTES_PER_ADO = 4 * 16  # one complex128 2x2 matrix


@dataclass(frozen=True)
class Hierarchy:
    """Precomputed index set for a (K, L) hierarchy."""

    n_modes: int  # K + 1 exponential modes
    depth: int  # L
    indices: np.ndarray  # (n_ado, n_modes) int
    up: np.ndarray  # (n_ado, n_modes) position of n + e_k, or -1
    down: np.ndarray  # (n_ado, n_modes) position of n - e_k, or -1
    _position: dict = field(repr=False, default_factory=dict)

    @property
    def n_ado(self) -> int:
        return self.indices.shape[0]

    def index_of(self, multi_index) -> int:
        """Position of a multi-index tuple, or -1 if out of range."""
        return self._position.get(tuple(multi_index), -1)


def _compositions_of(total: int, parts: int):
    # All tuples of `parts` non-negative ints summing to `total`, lex order.
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions_of(total - first, parts - 1):
            yield (first,) + rest


def build_hierarchy(n_matsubara: int, depth: int, max_bytes: int = 1 << 30) -> Hierarchy:
    """Enumerate all ADO indices for K Matsubara terms and hierarchy depth L.

    The count is binomial(L + K + 1, K + 1); configurations whose ADO
    storage would exceed ``max_bytes`` are rejected up front.
    """
    if n_matsubara < 0:
        raise ValueError("n_matsubara must be >= 0")
    if depth < 1:
        raise ValueError("depth must be >= 1")
    n_modes = n_matsubara + 1
    count = math.comb(depth + n_modes, n_modes)
    if count * BYTES_PER_ADO > max_bytes:
        raise ValueError(
            f"hierarchy K={n_matsubara}, L={depth} needs {count} ADOs "
            f"({count * BYTES_PER_ADO / 2**20:.1f} MiB) exceeding the "
            f"{max_bytes / 2**20:.1f} MiB budget"
        )
    rows = []
    for d in range(depth + 1):
        rows.extend(_compositions_of(d, n_modes))
    # lex order within each depth: _compositions_of yields first-part
    # descending, so sort each graded block explicitly.
    ordered = []
    pos = 0
    for d in range(depth + 1):
        block_len = math.comb(d + n_modes - 1, n_modes - 1)
        ordered.extend(sorted(rows[pos : pos + block_len]))
        pos += block_len
    indices = np.array(ordered, dtype=np.int64)
    position = {tuple(row): i for i, row in enumerate(ordered)}

    up = np.full((count, n_modes), -1, dtype=np.int64)
    down = np.full((count, n_modes), -1, dtype=np.int64)
    for i, row in enumerate(ordered):
        for k in range(n_modes):
            up_row = list(row)
            up_row[k] += 1
            up[i, k] = position.get(tuple(up_row), -1)
            if row[k] > 0:
                down_row = list(row)
                down_row[k] -= 1
                down[i, k] = position[tuple(down_row)]
    return Hierarchy(
        n_modes=n_modes, depth=depth, indices=indices, up=up, down=down,
        _position=position,
    )
