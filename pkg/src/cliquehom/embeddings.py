"""Rigid embeddings between digraph-algebra blocks, as labelled block diagrams.

A rigid embedding is recorded as a multiset of (automorphism, multiplicity)
pairs per (target block, source block) cell.  The induced matrix on vertex
spaces (degree "K0") and on each homology degree, plus the tensor, direct sum,
and composition calculus, are all computed from that data.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Iterable, Mapping, Sequence

from .cliques import chain_map, clique_complex
from .digraphs import (Digraph, VertexPermutation, cycle_automorphism_family,
                       cycle_digraph, is_automorphism, named_cycle_automorphism,
                       parse_graph_shorthand, product)
from .homology import homology, induced_map
from .linalg import IntMatrix, RatMatrix

if TYPE_CHECKING:
    from .limits import SupernaturalNumber

BlockEntries = tuple[tuple[VertexPermutation, int], ...]


@dataclass(frozen=True)
class RigidEmbeddingSpec:
    """Canonical block diagram of a rigid embedding.

    blocks holds ((i, j), entries) cells sorted by key, i the target block and
    j the source block, both 1-based; entries are (automorphism, multiplicity)
    pairs sorted by the automorphism's image tuple, with multiplicities merged.
    Structural equality of two specs is equality of inner-conjugacy classes.
    """

    digraph: Digraph
    target_blocks: int
    source_blocks: int
    blocks: tuple[tuple[tuple[int, int], BlockEntries], ...]

    def __post_init__(self) -> None:
        if self.target_blocks < 1 or self.source_blocks < 1:
            raise ValueError("block counts must be positive")
        keys = [key for key, _ in self.blocks]
        if keys != sorted(set(keys)):
            raise ValueError("block cells must be sorted and distinct")
        for (i, j), entries in self.blocks:
            if not (1 <= i <= self.target_blocks and 1 <= j <= self.source_blocks):
                raise ValueError(f"block ({i},{j}) outside the diagram")
            if not entries:
                raise ValueError("empty cells must be omitted")
            images = [p.image for p, _ in entries]
            if images != sorted(set(images)):
                raise ValueError("cell entries must be merged and sorted")
            for perm, mult in entries:
                if mult < 1:
                    raise ValueError("multiplicities must be positive")
                if not is_automorphism(self.digraph, perm):
                    raise ValueError(f"{perm.image} is not an automorphism")

    def block(self, i: int, j: int) -> BlockEntries:
        for key, entries in self.blocks:
            if key == (i, j):
                return entries
        return ()


def embedding_spec(digraph: Digraph, target_blocks: int, source_blocks: int,
                   blocks: Mapping[tuple[int, int],
                                   Iterable[tuple[VertexPermutation, int]]],
                   ) -> RigidEmbeddingSpec:
    """Build a spec, merging duplicate automorphisms and sorting everything."""
    cells = []
    for key in sorted(blocks):
        merged: dict[VertexPermutation, int] = {}
        for perm, mult in blocks[key]:
            merged[perm] = merged.get(perm, 0) + mult
        entries = tuple(sorted(((p, m) for p, m in merged.items() if m),
                               key=lambda e: e[0].image))
        if entries:
            cells.append((tuple(key), entries))
    return RigidEmbeddingSpec(digraph, target_blocks, source_blocks, tuple(cells))


def single_block(digraph: Digraph,
                 entries: Iterable[tuple[VertexPermutation, int]],
                 ) -> RigidEmbeddingSpec:
    return embedding_spec(digraph, 1, 1, {(1, 1): tuple(entries)})


def _assemble(cells: Mapping[tuple[int, int], IntMatrix], t: int, s: int,
              rows_per: int, cols_per: int) -> IntMatrix:
    grid = [[0] * (s * cols_per) for _ in range(t * rows_per)]
    for (i, j), m in cells.items():
        for r in range(rows_per):
            for c in range(cols_per):
                grid[(i - 1) * rows_per + r][(j - 1) * cols_per + c] = m.entries[r][c]
    return IntMatrix.from_rows(grid, s * cols_per)


def k0_map(spec: RigidEmbeddingSpec, restrict_receiving: bool = False) -> IntMatrix:
    """Vertex-indexed block matrix: cell (i,j) = sum of mult * permutation matrix."""
    vertices = spec.digraph.receiving_vertices() if restrict_receiving else None
    size = len(vertices) if vertices is not None else spec.digraph.vertex_count
    cells = {}
    for key, entries in spec.blocks:
        total = IntMatrix.zeros(size, size)
        for perm, mult in entries:
            p = (perm.restricted_matrix(vertices) if vertices is not None
                 else perm.matrix())
            total = total + p * mult
        cells[key] = total
    return _assemble(cells, spec.target_blocks, spec.source_blocks, size, size)


@functools.lru_cache(maxsize=None)
def _induced_matrix(g: Digraph, perm: VertexPermutation, degree: int) -> IntMatrix:
    kx = clique_complex(g)
    return induced_map(chain_map(perm, kx, kx), degree).matrix


def h_map(spec: RigidEmbeddingSpec, degree: int) -> IntMatrix:
    """Block matrix of induced homology maps, cell (i,j) summed over entries.

    Entries are written in the generator coordinates of H_degree of the clique
    complex (plain integer sums; the graphs studied here have free homology).
    """
    size = homology(clique_complex(spec.digraph), degree).group.generator_count
    cells = {}
    for key, entries in spec.blocks:
        total = IntMatrix.zeros(size, size)
        for perm, mult in entries:
            total = total + _induced_matrix(spec.digraph, perm, degree) * mult
        cells[key] = total
    return _assemble(cells, spec.target_blocks, spec.source_blocks, size, size)


def multiplicity(spec: RigidEmbeddingSpec) -> int:
    """Common column sum of the unrestricted K0 matrix."""
    m = k0_map(spec)
    sums = {sum(m.entries[r][c] for r in range(m.rows)) for c in range(m.cols)}
    if len(sums) != 1:
        raise ValueError("embedding multiplicity is not uniform across columns")
    return sums.pop()


def _product_permutation(p: VertexPermutation, q: VertexPermutation,
                         n2: int) -> VertexPermutation:
    image = []
    for u in range(1, len(p.image) + 1):
        for v in range(1, n2 + 1):
            image.append((p(u) - 1) * n2 + q(v))
    return VertexPermutation(tuple(image))


def tensor(s1: RigidEmbeddingSpec, s2: RigidEmbeddingSpec) -> RigidEmbeddingSpec:
    """Coordinatewise pairing on the product digraph; multiplicities multiply."""
    g = product(s1.digraph, s2.digraph)
    n2 = s2.digraph.vertex_count
    blocks: dict[tuple[int, int], list[tuple[VertexPermutation, int]]] = {}
    for (i1, j1), e1 in s1.blocks:
        for (i2, j2), e2 in s2.blocks:
            key = ((i1 - 1) * s2.target_blocks + i2,
                   (j1 - 1) * s2.source_blocks + j2)
            cell = blocks.setdefault(key, [])
            for p, m1 in e1:
                for q, m2 in e2:
                    cell.append((_product_permutation(p, q, n2), m1 * m2))
    return embedding_spec(g, s1.target_blocks * s2.target_blocks,
                          s1.source_blocks * s2.source_blocks, blocks)


def direct_sum(s1: RigidEmbeddingSpec, s2: RigidEmbeddingSpec) -> RigidEmbeddingSpec:
    """Cellwise union of two diagrams of the same shape over the same digraph."""
    if s1.digraph != s2.digraph:
        raise ValueError("direct sum needs a common digraph")
    if (s1.target_blocks, s1.source_blocks) != (s2.target_blocks, s2.source_blocks):
        raise ValueError("direct sum needs matching block shapes")
    blocks: dict[tuple[int, int], list[tuple[VertexPermutation, int]]] = {}
    for spec in (s1, s2):
        for key, entries in spec.blocks:
            blocks.setdefault(key, []).extend(entries)
    return embedding_spec(s1.digraph, s1.target_blocks, s1.source_blocks, blocks)


def compose(s1: RigidEmbeddingSpec, s2: RigidEmbeddingSpec) -> RigidEmbeddingSpec:
    """s1 followed by s2; cells convolve, automorphisms compose."""
    if s1.digraph != s2.digraph:
        raise ValueError("composition needs a common digraph")
    if s2.source_blocks != s1.target_blocks:
        raise ValueError("block shapes do not compose")
    blocks: dict[tuple[int, int], list[tuple[VertexPermutation, int]]] = {}
    for (i, j), outer in s2.blocks:
        for (jj, k), inner in s1.blocks:
            if jj != j:
                continue
            cell = blocks.setdefault((i, k), [])
            for sigma, m2 in outer:
                for theta, m1 in inner:
                    cell.append((sigma.compose(theta), m1 * m2))
    return embedding_spec(s1.digraph, s2.target_blocks, s1.source_blocks, blocks)


def laurent_matrix(coefficients: Sequence[int], m: int) -> IntMatrix:
    """Sum of coefficient * rotation matrix over the 2m-cycle's rotations."""
    from .digraphs import cycle_rotation
    total = IntMatrix.zeros(2 * m, 2 * m)
    for a, coeff in enumerate(coefficients):
        total = total + cycle_rotation(m, a).matrix() * coeff
    return total


def flip_matrix(m: int) -> IntMatrix:
    """Permutation matrix of the reflection fixing vertex 1 of the 2m-cycle."""
    from .digraphs import cycle_reflection
    return cycle_reflection(m, 0).matrix()


def recover_cycle_multiplicities(k0: IntMatrix, h1: IntMatrix,
                                 m: int) -> tuple[int, ...]:
    """Multiplicities (r_1,...,r_2m) of a 2m-cycle rigid embedding from (K0, H1).

    Order alternates rotations and reflections: r_{2a+1} is the rotation by 2a,
    r_{2a+2} the reflection v -> 2-v-2a.  Raises ValueError when no nonnegative
    vector reproduces the data.
    """
    n = 2 * m
    if k0.rows != n or k0.cols != n:
        raise ValueError(f"K0 matrix must be {n}x{n}")
    if h1.rows != 1 or h1.cols != 1:
        raise ValueError("H1 matrix must be 1x1")

    def bad(reason: str) -> ValueError:
        return ValueError(f"inconsistent invariant data: {reason}")

    seen: dict[tuple[int, int], int] = {}
    for col in range(1, n + 1):
        for row in range(1, n + 1):
            val = k0.entries[row - 1][col - 1]
            if (row - col) % 2:
                if val:
                    raise bad("odd-diagonal entry is nonzero")
                continue
            a = ((row - col) // 2) % m
            b = ((2 - row - col) // 2) % m
            if seen.setdefault((a, b), val) != val:
                raise bad("matrix is not a rotation-plus-flipped-rotation sum")
    x_offset = [seen[(a, 0)] - seen[(0, 0)] for a in range(m)]
    y_with_x0 = [seen[(0, b)] for b in range(m)]
    delta = h1.entries[0][0]
    numerator = delta - sum(x_offset) + sum(y_with_x0)
    if numerator % n:
        raise bad("H1 value does not split the multiplicities integrally")
    x0 = numerator // n
    x = [c + x0 for c in x_offset]
    y = [c - x0 for c in y_with_x0]
    r = []
    for a in range(m):
        r.extend((x[a], y[a]))
    if any(v < 0 for v in r):
        raise bad("recovered multiplicities are negative")

    family = cycle_automorphism_family(m)
    spec = single_block(cycle_digraph(m),
                        [(family[i], v) for i, v in enumerate(r) if v])
    if k0_map(spec) != k0 or h_map(spec, 1) != h1:
        raise bad("recovered vector fails to reproduce the invariants")
    return tuple(r)


def scaled_invariants(spec: RigidEmbeddingSpec,
                      source_supernatural: "SupernaturalNumber",
                      target_supernatural: "SupernaturalNumber",
                      ) -> tuple[int, RatMatrix, RatMatrix]:
    """(multiplicity, K0/multiplicity, H1/multiplicity) for scaled-group equality."""
    mult = multiplicity(spec)
    if mult == 0:
        raise ValueError("zero embedding has no scaled invariants")
    if not source_supernatural.times_integer(mult).divides(target_supernatural):
        raise ValueError("incompatible supernatural numbers")
    q = Fraction(1, mult)
    k0 = RatMatrix.from_int_matrix(k0_map(spec)).scale(q)
    h1 = RatMatrix.from_int_matrix(h_map(spec, 1)).scale(q)
    return (mult, k0, h1)


def _parse_permutation(g: Digraph, value) -> VertexPermutation:
    if isinstance(value, str):
        if g.vertex_count % 2 or g != cycle_digraph(g.vertex_count // 2):
            raise ValueError("named automorphisms only apply to cycle digraphs")
        return named_cycle_automorphism(g.vertex_count // 2, value)
    return VertexPermutation(tuple(int(v) for v in value))


def spec_from_json_dict(data: Mapping) -> RigidEmbeddingSpec:
    graph = data["graph"]
    if isinstance(graph, str):
        g = parse_graph_shorthand(graph)
    else:
        g = Digraph.from_json_dict(graph)
    blocks: dict[tuple[int, int], list[tuple[VertexPermutation, int]]] = {}
    max_i = max_j = 1
    for key, entries in data.get("blocks", {}).items():
        i_text, j_text = key.split(",")
        i, j = int(i_text), int(j_text)
        max_i, max_j = max(max_i, i), max(max_j, j)
        blocks[(i, j)] = [(_parse_permutation(g, e["perm"]), int(e.get("mult", 1)))
                          for e in entries]
    target = int(data.get("target_blocks", max_i))
    source = int(data.get("source_blocks", max_j))
    return embedding_spec(g, target, source, blocks)


def spec_to_json_dict(spec: RigidEmbeddingSpec) -> dict:
    blocks = {}
    for (i, j), entries in spec.blocks:
        blocks[f"{i},{j}"] = [{"perm": list(p.image), "mult": m}
                              for p, m in entries]
    return {"graph": spec.digraph.to_json_dict(),
            "target_blocks": spec.target_blocks,
            "source_blocks": spec.source_blocks,
            "blocks": blocks}
