"""Clique (flag) complexes of digraphs, chain complexes, and chain maps.

A t-simplex is a (t+1)-clique of the underlying undirected graph, stored as a
strictly increasing vertex tuple; each dimension's simplices are kept in
ascending lexicographic order, which fixes the basis of every chain group.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Mapping, Sequence

from .digraphs import Digraph, VertexPermutation
from .linalg import IntMatrix


@dataclass(frozen=True)
class SimplicialComplex:
    """Finite simplicial complex with fixed, ordered simplex bases."""

    vertex_count: int
    max_dim: int
    simplices: tuple[tuple[tuple[int, ...], ...], ...]

    def __post_init__(self) -> None:
        if self.max_dim < 0:
            raise ValueError("max_dim must be nonnegative")
        if len(self.simplices) != self.max_dim + 1:
            raise ValueError("need one simplex list per dimension 0..max_dim")
        below: set[tuple[int, ...]] = set()
        for t, level in enumerate(self.simplices):
            seen: set[tuple[int, ...]] = set()
            for s in level:
                if len(s) != t + 1:
                    raise ValueError(f"{s} is not a {t}-simplex")
                if any(not 1 <= v <= self.vertex_count for v in s):
                    raise ValueError(f"vertex out of range in {s}")
                if any(a >= b for a, b in zip(s, s[1:])):
                    raise ValueError(f"simplex {s} is not strictly increasing")
                if t > 0:
                    for i in range(t + 1):
                        if s[:i] + s[i + 1:] not in below:
                            raise ValueError(f"face of {s} missing from dimension {t - 1}")
                seen.add(s)
            if list(level) != sorted(seen) or len(seen) != len(level):
                raise ValueError(f"dimension {t} simplices must be sorted and distinct")
            below = seen

    def size(self, t: int) -> int:
        return len(self.simplices[t]) if 0 <= t <= self.max_dim else 0

    def contains(self, other: "SimplicialComplex") -> bool:
        if other.max_dim > self.max_dim:
            if any(other.simplices[t] for t in range(self.max_dim + 1, other.max_dim + 1)):
                return False
        return all(set(other.simplices[t]) <= set(self.simplices[t])
                   for t in range(min(self.max_dim, other.max_dim) + 1))


@functools.lru_cache(maxsize=None)
def simplex_index(kx: SimplicialComplex, t: int) -> Mapping[tuple[int, ...], int]:
    return {s: i for i, s in enumerate(kx.simplices[t])}


def clique_complex(g: Digraph, max_dim: int = 3) -> SimplicialComplex:
    """Flag complex of the underlying undirected graph, built up to max_dim."""
    if max_dim < 0:
        raise ValueError("max_dim must be nonnegative")
    adj = g.adjacency()
    levels: list[tuple[tuple[int, ...], ...]] = []
    current: list[tuple[tuple[int, ...], set[int]]] = [
        ((v,), {w for w in adj[v] if w > v}) for v in range(1, g.vertex_count + 1)]
    levels.append(tuple(s for s, _ in current))
    for _ in range(max_dim):
        nxt: list[tuple[tuple[int, ...], set[int]]] = []
        for simplex, cands in current:
            for v in sorted(cands):
                nxt.append((simplex + (v,), {w for w in cands if w > v and w in adj[v]}))
        nxt.sort(key=lambda item: item[0])
        levels.append(tuple(s for s, _ in nxt))
        current = nxt
    return SimplicialComplex(g.vertex_count, max_dim, tuple(levels))


def induced_subcomplex(kx: SimplicialComplex, vertices: Sequence[int]) -> SimplicialComplex:
    """Full subcomplex on a vertex subset (same max_dim, same global numbering)."""
    keep = set(vertices)
    if any(not 1 <= v <= kx.vertex_count for v in keep):
        raise ValueError("vertex subset out of range")
    levels = tuple(tuple(s for s in level if set(s) <= keep) for level in kx.simplices)
    return SimplicialComplex(kx.vertex_count, kx.max_dim, levels)


def boundary_matrix(kx: SimplicialComplex, t: int) -> IntMatrix:
    """Alternating-sign boundary C_t -> C_{t-1}; dimension 0 maps to rank zero."""
    if not 0 <= t <= kx.max_dim:
        raise ValueError(f"dimension {t} not built (complex has max_dim {kx.max_dim})")
    if t == 0:
        return IntMatrix.zeros(0, kx.size(0))
    index = simplex_index(kx, t - 1)
    rows = [[0] * kx.size(t) for _ in range(kx.size(t - 1))]
    for col, s in enumerate(kx.simplices[t]):
        for i in range(t + 1):
            face = s[:i] + s[i + 1:]
            rows[index[face]][col] = 1 if i % 2 == 0 else -1
    return IntMatrix.from_rows(rows, kx.size(t))


@dataclass(frozen=True)
class ChainComplexData:
    """Bare chain complex: ranks and boundary matrices, basis already chosen."""

    sizes: tuple[int, ...]
    boundaries: tuple[IntMatrix, ...]

    def __post_init__(self) -> None:
        if len(self.boundaries) != len(self.sizes):
            raise ValueError("need one boundary matrix per dimension")
        for t, b in enumerate(self.boundaries):
            if b.cols != self.sizes[t]:
                raise ValueError(f"boundary {t} column count mismatch")
            if t > 0 and b.rows != self.sizes[t - 1]:
                raise ValueError(f"boundary {t} row count mismatch")
        for t in range(1, len(self.sizes)):
            if self.boundaries[t - 1].rows and not (
                    self.boundaries[t - 1] @ self.boundaries[t]).is_zero():
                raise ValueError(f"boundary squared is nonzero at dimension {t}")

    @property
    def top_dim(self) -> int:
        return len(self.sizes) - 1

    def boundary_into(self, t: int) -> IntMatrix:
        """Boundary C_{t+1} -> C_t, a zero-width matrix above the top dimension."""
        if t + 1 <= self.top_dim:
            return self.boundaries[t + 1]
        return IntMatrix.zeros(self.sizes[t], 0)


@functools.lru_cache(maxsize=None)
def chain_data(kx: SimplicialComplex) -> ChainComplexData:
    sizes = tuple(kx.size(t) for t in range(kx.max_dim + 1))
    bounds = tuple(boundary_matrix(kx, t) for t in range(kx.max_dim + 1))
    return ChainComplexData(sizes, bounds)


def augmented_chain_data(kx: SimplicialComplex) -> ChainComplexData:
    """Chain data whose degree-0 boundary is the augmentation row."""
    base = chain_data(kx)
    aug = IntMatrix.from_rows([[1] * kx.size(0)], kx.size(0))
    return ChainComplexData(base.sizes, (aug,) + base.boundaries[1:])


def quotient_chain_data(kx: SimplicialComplex, sub: SimplicialComplex) -> ChainComplexData:
    """Chain complex of the pair: simplices of kx not in sub, boundaries projected."""
    if not kx.contains(sub):
        raise ValueError("second complex is not a subcomplex of the first")
    kept: list[list[int]] = []
    for t in range(kx.max_dim + 1):
        inside = set(sub.simplices[t]) if t <= sub.max_dim else set()
        kept.append([i for i, s in enumerate(kx.simplices[t]) if s not in inside])
    sizes = tuple(len(k) for k in kept)
    bounds = [IntMatrix.zeros(0, sizes[0])]
    for t in range(1, kx.max_dim + 1):
        full = boundary_matrix(kx, t)
        bounds.append(full.submatrix(kept[t - 1], kept[t]))
    return ChainComplexData(sizes, tuple(bounds))


@dataclass(frozen=True)
class ChainMap:
    """Simplicial chain map induced by a vertex map, one matrix per dimension."""

    source: SimplicialComplex
    target: SimplicialComplex
    vertex_map: tuple[int, ...]
    matrices: tuple[IntMatrix, ...]

    def matrix(self, t: int) -> IntMatrix:
        if not 0 <= t < len(self.matrices):
            raise ValueError(f"dimension {t} not covered by this chain map")
        return self.matrices[t]

    def compose(self, other: "ChainMap") -> "ChainMap":
        """self after other (other.target must be self.source)."""
        if other.target != self.source:
            raise ValueError("chain maps are not composable")
        vmap = tuple(self.vertex_map[w - 1] for w in other.vertex_map)
        depth = min(len(self.matrices), len(other.matrices))
        mats = tuple(self.matrices[t] @ other.matrices[t] for t in range(depth))
        return ChainMap(other.source, self.target, vmap, mats)


def _sort_sign(values: tuple[int, ...]) -> int:
    sign = 1
    for i in range(len(values)):
        for j in range(i + 1, len(values)):
            if values[i] > values[j]:
                sign = -sign
    return sign


def chain_map(f: VertexPermutation | Sequence[int] | Mapping[int, int],
              source: SimplicialComplex, target: SimplicialComplex) -> ChainMap:
    """Chain map of a simplicial vertex map, with orientation signs.

    A simplex whose image has a repeated vertex maps to zero; an image that is
    not a simplex of the target makes the vertex map non-simplicial (an error).
    """
    if isinstance(f, VertexPermutation):
        images = f.image
    elif isinstance(f, Mapping):
        images = tuple(f[v] for v in range(1, source.vertex_count + 1))
    else:
        images = tuple(f)
    if len(images) != source.vertex_count:
        raise ValueError("vertex map length does not match source vertex count")
    if any(not 1 <= w <= target.vertex_count for w in images):
        raise ValueError("vertex map image out of target range")

    depth = min(source.max_dim, target.max_dim) + 1
    mats = []
    for t in range(depth):
        index = simplex_index(target, t)
        rows = [[0] * source.size(t) for _ in range(target.size(t))]
        for col, s in enumerate(source.simplices[t]):
            image = tuple(images[v - 1] for v in s)
            if len(set(image)) < len(image):
                continue
            key = tuple(sorted(image))
            if key not in index:
                raise ValueError(f"image of simplex {s} is not a simplex of the target")
            rows[index[key]][col] = _sort_sign(image)
        mats.append(IntMatrix.from_rows(rows, source.size(t)) if rows
                    else IntMatrix.zeros(0, source.size(t)))
    return ChainMap(source, target, images, tuple(mats))


def identity_chain_map(kx: SimplicialComplex) -> ChainMap:
    return chain_map(VertexPermutation.identity(kx.vertex_count), kx, kx)
