"""Loaders for the bundled reference tables.

The stationary step table is displayed with each block's vertices reordered;
its loader undoes that reordering so the matrix matches the engine's vertex
numbering.
"""
from __future__ import annotations

import json
from importlib import resources

from .linalg import IntMatrix


def _load(name: str) -> dict:
    path = resources.files(__package__) / "fixtures" / name
    return json.loads(path.read_text())


def rotation_k0_matrices() -> tuple[IntMatrix, ...]:
    """Twelve receiving-restricted K0 matrices of the cube rotations."""
    data = _load("rotation_k0.json")
    return tuple(IntMatrix.from_rows(m, 4) for m in data["matrices"])


def rotation_h1_matrices(as_printed: bool = False) -> tuple[IntMatrix, ...]:
    """Twelve induced H1 matrices of the cube rotations, reference basis.

    The printed list repeats its seventh entry as the eighth; pass
    as_printed=True to get that verbatim list instead of the corrected one.
    """
    data = _load("rotation_h1.json")
    key = "as_printed" if as_printed else "consistent"
    return tuple(IntMatrix.from_rows(m, 5) for m in data[key])


def rotation_system() -> IntMatrix:
    """41x12 joint coefficient table over the rotations (16 K0 + 25 H1 rows)."""
    data = _load("rotation_system.json")
    return IntMatrix.from_rows(data["matrix"], 12)


def full_system() -> IntMatrix:
    """41x24 joint coefficient table over all cube automorphisms."""
    data = _load("full_system.json")
    return IntMatrix.from_rows(data["matrix"], 24)


def stationary_step() -> dict[str, IntMatrix]:
    """Reference stationary system tables: K0 pattern t plus s, x, y.

    The stored pattern lists each block's rows and columns in the display
    vertex order; the returned t is permuted back to vertex order 1..n.
    """
    data = _load("stationary_step.json")
    order = data["vertex_order"]
    n = len(order)
    shown = data["t_displayed"]
    blocks = len(shown) // n
    size = blocks * n
    entries = [[0] * size for _ in range(size)]
    for bi in range(blocks):
        for bj in range(blocks):
            for p in range(n):
                for q in range(n):
                    entries[bi * n + order[p] - 1][bj * n + order[q] - 1] = \
                        shown[bi * n + p][bj * n + q]
    return {"t": IntMatrix.from_rows(entries, size),
            "s": IntMatrix.from_rows(data["s"], 2),
            "x": IntMatrix.from_rows(data["x"], 2),
            "y": IntMatrix.from_rows(data["y"], 2)}
