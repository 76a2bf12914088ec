"""Transitive digraphs, their standard constructions, and automorphisms.

Vertices are numbered 1..n. Digraphs are loop-free and transitively closed
(i -> j and j -> k with i != k forces i -> k); these are exactly the digraphs
whose edge relation, together with equality, is reflexive and transitive.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .linalg import IntMatrix


@dataclass(frozen=True, order=True)
class VertexPermutation:
    """Permutation of 1..n given by its image tuple: image[i-1] = theta(i)."""

    image: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.image)
        if sorted(self.image) != list(range(1, n + 1)):
            raise ValueError("image is not a permutation of 1..n")

    @classmethod
    def identity(cls, n: int) -> "VertexPermutation":
        return cls(tuple(range(1, n + 1)))

    @property
    def degree(self) -> int:
        return len(self.image)

    def __call__(self, v: int) -> int:
        return self.image[v - 1]

    def compose(self, other: "VertexPermutation") -> "VertexPermutation":
        """self after other: (self.compose(other))(v) = self(other(v))."""
        if self.degree != other.degree:
            raise ValueError("permutation degrees differ")
        return VertexPermutation(tuple(self.image[w - 1] for w in other.image))

    def inverse(self) -> "VertexPermutation":
        inv = [0] * self.degree
        for v, w in enumerate(self.image, start=1):
            inv[w - 1] = v
        return VertexPermutation(tuple(inv))

    def matrix(self) -> IntMatrix:
        """Permutation matrix P with P e_v = e_theta(v)."""
        n = self.degree
        rows = [[0] * n for _ in range(n)]
        for v in range(1, n + 1):
            rows[self.image[v - 1] - 1][v - 1] = 1
        return IntMatrix.from_rows(rows, n)

    def restricted_matrix(self, vertices: tuple[int, ...]) -> IntMatrix:
        """Permutation matrix of the action restricted to an invariant vertex set."""
        index = {v: i for i, v in enumerate(vertices)}
        k = len(vertices)
        rows = [[0] * k for _ in range(k)]
        for v in vertices:
            w = self.image[v - 1]
            if w not in index:
                raise ValueError("vertex set is not invariant under the permutation")
            rows[index[w]][index[v]] = 1
        return IntMatrix.from_rows(rows, k)

    def restriction_is_even(self, vertices: tuple[int, ...]) -> bool:
        index = {v: i for i, v in enumerate(vertices)}
        seen = [False] * len(vertices)
        sign = 1
        for start in range(len(vertices)):
            if seen[start]:
                continue
            length = 0
            cur = start
            while not seen[cur]:
                seen[cur] = True
                cur = index[self.image[vertices[cur] - 1]]
                length += 1
            if length % 2 == 0:
                sign = -sign
        return sign == 1


@dataclass(frozen=True)
class Digraph:
    """Loop-free transitive digraph on vertices 1..vertex_count."""

    vertex_count: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        n = self.vertex_count
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        succ: dict[int, set[int]] = {}
        for (i, j) in self.edges:
            if not (1 <= i <= n and 1 <= j <= n):
                raise ValueError(f"edge ({i},{j}) out of range 1..{n}")
            if i == j:
                raise ValueError("loops are not allowed")
            succ.setdefault(i, set()).add(j)
        for (i, j) in self.edges:
            for k in succ.get(j, ()):
                if k != i and (i, k) not in self.edges:
                    raise ValueError(f"not transitive: {i}->{j}->{k} without {i}->{k}")

    @classmethod
    def from_edges(cls, vertex_count: int, edges: Iterable[tuple[int, int]]) -> "Digraph":
        return cls(vertex_count, frozenset((int(i), int(j)) for i, j in edges))

    def sorted_edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(self.edges))

    def underlying_edges(self) -> frozenset[frozenset[int]]:
        return frozenset(frozenset(e) for e in self.edges)

    def adjacency(self) -> dict[int, set[int]]:
        """Undirected neighbor sets."""
        adj: dict[int, set[int]] = {v: set() for v in range(1, self.vertex_count + 1)}
        for (i, j) in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        return adj

    def receiving_vertices(self) -> tuple[int, ...]:
        """Vertices with incoming edges and no outgoing ones."""
        has_in = {j for (_, j) in self.edges}
        has_out = {i for (i, _) in self.edges}
        return tuple(sorted(has_in - has_out))

    def to_json_dict(self) -> dict:
        return {"vertices": self.vertex_count, "edges": [list(e) for e in self.sorted_edges()]}

    @classmethod
    def from_json_dict(cls, data: dict) -> "Digraph":
        return cls.from_edges(int(data["vertices"]),
                              [(e[0], e[1]) for e in data["edges"]])


def cycle_digraph(m: int) -> Digraph:
    """2m-cycle digraph: odd vertices receive, even vertices emit.

    Vertex 2k emits to its cyclic neighbors 2k-1 and 2k+1 (mod 2m).
    """
    if m < 2:
        raise ValueError("cycle digraph needs m >= 2")
    n = 2 * m
    edges = []
    for k in range(1, m + 1):
        e = 2 * k
        edges.append((e, e - 1))
        edges.append((e, e % n + 1))
    return Digraph.from_edges(n, edges)


def cube_digraph() -> Digraph:
    """Crown digraph on 8 vertices: 5..8 emit to all of 1..4 except their partner.

    The underlying graph is the complete bipartite graph K_{4,4} minus the
    perfect matching {i, i+4}; each face of the combinatorial cube is a
    4-cycle.
    """
    edges = [(e, r) for e in range(5, 9) for r in range(1, 5) if r != e - 4]
    return Digraph.from_edges(8, edges)


def product(g1: Digraph, g2: Digraph) -> Digraph:
    """Product digraph: (u,v) -> (u',v') iff each coordinate steps or stays.

    Vertex (u, v) is numbered (u-1) * g2.vertex_count + v.
    """
    n2 = g2.vertex_count
    n = g1.vertex_count * n2

    def num(u: int, v: int) -> int:
        return (u - 1) * n2 + v

    step1 = {(u, u) for u in range(1, g1.vertex_count + 1)} | set(g1.edges)
    step2 = {(v, v) for v in range(1, n2 + 1)} | set(g2.edges)
    edges = [(num(u, v), num(u2, v2))
             for (u, u2) in step1 for (v, v2) in step2
             if (u, v) != (u2, v2)]
    return Digraph.from_edges(n, edges)


def suspension(g: Digraph, n: int) -> Digraph:
    """Two n-vertex complete digraphs, each emitting into every vertex of g.

    Pole vertices come first (1..n and n+1..2n); g is shifted up by 2n.
    """
    if n < 1:
        raise ValueError("suspension needs at least one vertex per pole")
    shift = 2 * n
    edges: list[tuple[int, int]] = []
    for base in (0, n):
        edges.extend((base + i, base + j)
                     for i in range(1, n + 1) for j in range(1, n + 1) if i != j)
    edges.extend((p, shift + v)
                 for p in range(1, 2 * n + 1) for v in range(1, g.vertex_count + 1))
    edges.extend((shift + i, shift + j) for (i, j) in g.edges)
    return Digraph.from_edges(shift + g.vertex_count, edges)


def is_automorphism(g: Digraph, perm: VertexPermutation) -> bool:
    if perm.degree != g.vertex_count:
        return False
    return all((perm(i), perm(j)) in g.edges for (i, j) in g.edges)


def _search_maps(g1: Digraph, g2: Digraph, limit: int | None = None) -> list[VertexPermutation]:
    """Backtracking search for edge-preserving bijections g1 -> g2."""
    n = g1.vertex_count
    if g2.vertex_count != n or len(g1.edges) != len(g2.edges):
        return []
    out1 = {v: set() for v in range(1, n + 1)}
    in1 = {v: set() for v in range(1, n + 1)}
    for (i, j) in g1.edges:
        out1[i].add(j)
        in1[j].add(i)
    out2 = {v: set() for v in range(1, n + 1)}
    in2 = {v: set() for v in range(1, n + 1)}
    for (i, j) in g2.edges:
        out2[i].add(j)
        in2[j].add(i)
    degree2 = {}
    for v in range(1, n + 1):
        degree2.setdefault((len(out2[v]), len(in2[v])), []).append(v)

    found: list[VertexPermutation] = []
    image = [0] * (n + 1)
    used = [False] * (n + 1)

    def ok(v: int, w: int) -> bool:
        for u in range(1, v):
            if (u in out1[v]) != (image[u] in out2[w]):
                return False
            if (u in in1[v]) != (image[u] in in2[w]):
                return False
        return True

    def descend(v: int) -> bool:
        if v > n:
            found.append(VertexPermutation(tuple(image[1:])))
            return limit is not None and len(found) >= limit
        for w in degree2.get((len(out1[v]), len(in1[v])), ()):
            if not used[w] and ok(v, w):
                image[v] = w
                used[w] = True
                if descend(v + 1):
                    return True
                used[w] = False
        image[v] = 0
        return False

    descend(1)
    return found


def automorphisms(g: Digraph) -> tuple[VertexPermutation, ...]:
    """All digraph automorphisms, sorted by image tuple."""
    return tuple(sorted(_search_maps(g, g)))


def find_isomorphism(g1: Digraph, g2: Digraph) -> VertexPermutation | None:
    maps = _search_maps(g1, g2, limit=1)
    return maps[0] if maps else None


def cycle_rotation(m: int, j: int) -> VertexPermutation:
    """Rotation v -> v + 2j of the 2m-cycle digraph."""
    n = 2 * m
    return VertexPermutation(tuple((v - 1 + 2 * j) % n + 1 for v in range(1, n + 1)))


def cycle_reflection(m: int, j: int) -> VertexPermutation:
    """Rotation by 2j followed by the reflection fixing vertex 1 (v -> 2 - v)."""
    n = 2 * m
    return VertexPermutation(tuple((2 - (v + 2 * j) - 1) % n + 1 for v in range(1, n + 1)))


def cycle_automorphism_family(m: int) -> tuple[VertexPermutation, ...]:
    """The 2m automorphisms of the 2m-cycle in alternating rotation/reflection order.

    Position 2j+1 (1-based) is the rotation by 2j; position 2j+2 is that
    rotation followed by the reflection fixing vertex 1.
    """
    family: list[VertexPermutation] = []
    for j in range(m):
        family.append(cycle_rotation(m, j))
        family.append(cycle_reflection(m, j))
    return tuple(family)


def rotations(g: Digraph) -> tuple[VertexPermutation, ...]:
    """Orientation-preserving automorphisms of a cycle or the cube digraph.

    For the 2m-cycle these are the m rotations; for the cube digraph, the 12
    automorphisms whose restriction to the receiving vertices is an even
    permutation. Raises ValueError for any other digraph.
    """
    if g == cube_digraph():
        receiving = g.receiving_vertices()
        return tuple(t for t in automorphisms(g) if t.restriction_is_even(receiving))
    n = g.vertex_count
    if n % 2 == 0 and n >= 4 and g == cycle_digraph(n // 2):
        return tuple(sorted(cycle_rotation(n // 2, j) for j in range(n // 2)))
    raise ValueError("rotations are defined for cycle digraphs and the cube digraph")


def named_cycle_automorphism(m: int, name: str) -> VertexPermutation:
    """Resolve "rot:j" / "refl:j" names for the 2m-cycle."""
    kind, _, idx = name.partition(":")
    if kind not in ("rot", "refl") or not idx.lstrip("-").isdigit():
        raise ValueError(f"bad automorphism name {name!r}; use rot:j or refl:j")
    j = int(idx)
    if not 0 <= j < m:
        raise ValueError(f"automorphism index {j} out of range 0..{m - 1}")
    return cycle_rotation(m, j) if kind == "rot" else cycle_reflection(m, j)


def parse_graph_shorthand(text: str) -> Digraph:
    """Parse constructor shorthands: cycle:2m, cube, prod(a,b), susp(g,n)."""
    text = text.strip()
    if text == "cube":
        return cube_digraph()
    if text.startswith("cycle:"):
        n = int(text.split(":", 1)[1])
        if n % 2 != 0:
            raise ValueError("cycle:<n> needs an even vertex count")
        return cycle_digraph(n // 2)
    if text.startswith("prod(") and text.endswith(")"):
        left, right = _split_args(text[5:-1], 2)
        return product(parse_graph_shorthand(left), parse_graph_shorthand(right))
    if text.startswith("susp(") and text.endswith(")"):
        left, right = _split_args(text[5:-1], 2)
        return suspension(parse_graph_shorthand(left), int(right))
    raise ValueError(f"unrecognized graph shorthand {text!r}")


def _split_args(body: str, count: int) -> list[str]:
    parts: list[str] = []
    depth = 0
    current = []
    for ch in body:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(ch)
    parts.append("".join(current))
    if len(parts) != count:
        raise ValueError(f"expected {count} arguments, got {len(parts)}")
    return [p.strip() for p in parts]
