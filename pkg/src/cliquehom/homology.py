"""Integral homology of chain complexes, with explicit generators and maps.

Groups are reported in invariant-factor form.  Each computed homology group
keeps enough lifting data to express any cycle in the chosen generators, which
is what makes induced maps and canonical bases reproducible run to run.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass

from .cliques import (ChainComplexData, ChainMap, SimplicialComplex,
                      augmented_chain_data, chain_data, quotient_chain_data)
from .linalg import (IntMatrix, NoIntegerSolution, det, rank,
                     kernel_basis, smith_normal_form, unimodular_inverse)


@dataclass(frozen=True)
class AbelianGroup:
    """Finitely generated abelian group: invariant factors plus free rank."""

    torsion: tuple[int, ...]
    rank: int

    def __post_init__(self) -> None:
        if self.rank < 0:
            raise ValueError("rank must be nonnegative")
        for d in self.torsion:
            if d <= 1:
                raise ValueError("torsion invariant factors must exceed 1")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a != 0:
                raise ValueError("invariant factors must form a divisibility chain")

    @property
    def generator_count(self) -> int:
        return len(self.torsion) + self.rank

    def generator_order(self, i: int) -> int:
        """Order of the i-th generator, 0 meaning infinite."""
        return self.torsion[i] if i < len(self.torsion) else 0

    def is_trivial(self) -> bool:
        return self.generator_count == 0

    def render(self) -> str:
        parts = [f"Z/{d}" for d in self.torsion]
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        return " + ".join(parts) if parts else "0"

    def __str__(self) -> str:
        return self.render()


def free_group(rank: int) -> AbelianGroup:
    return AbelianGroup((), rank)


def _column_solver(k: IntMatrix):
    """Exact solver x -> K x = b for a matrix K with independent columns."""
    dec = smith_normal_form(k)
    diag = dec.invariant_factors()
    if len(diag) < k.cols:
        raise ValueError("matrix columns are not independent")

    def solve(b: tuple[int, ...]) -> tuple[int, ...]:
        c = dec.u.apply(b)
        y = []
        for i in range(k.cols):
            if c[i] % diag[i] != 0:
                raise NoIntegerSolution("no integral solution")
            y.append(c[i] // diag[i])
        if any(c[i] != 0 for i in range(k.cols, k.rows)):
            raise NoIntegerSolution("inconsistent system")
        return dec.v.apply(tuple(y))

    return solve


@functools.lru_cache(maxsize=None)
def _cached_solver(k: IntMatrix):
    return _column_solver(k)


@dataclass(frozen=True)
class HomologyData:
    """One homology group of a chain complex, with generator lifting data.

    Generators are ordered torsion first (orders nondecreasing), then free.
    """

    data: ChainComplexData
    degree: int
    group: AbelianGroup
    cycle_matrix: IntMatrix
    transform: IntMatrix
    transform_inverse: IntMatrix
    orders: tuple[int, ...]
    positions: tuple[int, ...]

    def class_of(self, chain: tuple[int, ...]) -> tuple[int, ...]:
        """Coordinates of a cycle in the generators; torsion coordinates reduced."""
        if len(chain) != self.data.sizes[self.degree]:
            raise ValueError("chain length does not match the chain group")
        below = self.data.boundaries[self.degree]
        if below.rows and any(x != 0 for x in below.apply(chain)):
            raise ValueError("chain is not a cycle")
        try:
            x = _cached_solver(self.cycle_matrix)(chain)
        except NoIntegerSolution as exc:
            raise ValueError("chain is not a cycle") from exc
        y = self.transform.apply(x)
        coords = []
        for i, j in enumerate(self.positions):
            d = self.group.generator_order(i)
            coords.append(y[j] % d if d else y[j])
        return tuple(coords)

    def generator_cycle(self, i: int) -> tuple[int, ...]:
        """A cycle representing the i-th generator."""
        return self.cycle_matrix.apply(self.transform_inverse.column(self.positions[i]))

    def generator_cycles(self) -> tuple[tuple[int, ...], ...]:
        return tuple(self.generator_cycle(i) for i in range(self.group.generator_count))


@functools.lru_cache(maxsize=None)
def homology_of_data(data: ChainComplexData, t: int) -> HomologyData:
    if not 0 <= t <= data.top_dim:
        raise ValueError(f"degree {t} outside the chain complex")
    below = data.boundaries[t]
    above = data.boundary_into(t)
    k = kernel_basis(below) if below.rows else IntMatrix.identity(data.sizes[t])
    z = k.cols
    if above.cols:
        solve = _cached_solver(k)
        cols = [solve(above.column(j)) for j in range(above.cols)]
        rel = IntMatrix.from_rows([[cols[j][i] for j in range(above.cols)]
                                   for i in range(z)], above.cols)
    else:
        rel = IntMatrix.zeros(z, 0)
    dec = smith_normal_form(rel)
    diag = dec.invariant_factors()
    r = len(diag)
    torsion = tuple(d for d in diag if d > 1)
    group = AbelianGroup(torsion, z - r)
    positions = tuple([j for j in range(r) if diag[j] > 1] + list(range(r, z)))
    orders = torsion + (0,) * (z - r)
    return HomologyData(data, t, group, k, dec.u, unimodular_inverse(dec.u),
                        orders, positions)


def betti_by_rank(data: ChainComplexData, t: int) -> int:
    """Free rank of homology from rational ranks alone (independent of SNF)."""
    if not 0 <= t <= data.top_dim:
        raise ValueError(f"degree {t} outside the chain complex")
    below = data.boundaries[t]
    above = data.boundary_into(t)
    cycles = data.sizes[t] - (rank(below) if below.rows else 0)
    return cycles - (rank(above) if above.cols else 0)


def _check_degree(kx: SimplicialComplex, t: int) -> None:
    if t < 0:
        raise ValueError("degree must be nonnegative")
    if t + 1 > kx.max_dim:
        raise ValueError(
            f"degree {t} needs simplices of dimension {t + 1}; "
            f"rebuild the complex with max_dim >= {t + 1}")


def homology(kx: SimplicialComplex, t: int) -> HomologyData:
    """H_t of the complex; requires dimension t+1 to have been built."""
    _check_degree(kx, t)
    return homology_of_data(chain_data(kx), t)


def betti(kx: SimplicialComplex, t: int) -> int:
    return homology(kx, t).group.rank


def reduced_homology(kx: SimplicialComplex, t: int) -> HomologyData:
    """Homology with the augmentation included at degree zero."""
    _check_degree(kx, t)
    return homology_of_data(augmented_chain_data(kx), t)


def relative_homology(kx: SimplicialComplex, sub: SimplicialComplex,
                      t: int) -> HomologyData:
    """Homology of the pair (kx, sub)."""
    _check_degree(kx, t)
    return homology_of_data(quotient_chain_data(kx, sub), t)


@dataclass(frozen=True)
class GroupMorphism:
    """Morphism of abelian groups in generator coordinates.

    Column j holds the image of the j-th source generator; rows follow the
    target's generator order (torsion first, then free).  Torsion-row entries
    are stored reduced.
    """

    source: AbelianGroup
    target: AbelianGroup
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.target.generator_count:
            raise ValueError("row count does not match target generators")
        for row in self.entries:
            if len(row) != self.source.generator_count:
                raise ValueError("column count does not match source generators")
        for i, row in enumerate(self.entries):
            d = self.target.generator_order(i)
            if d and any(not 0 <= e < d for e in row):
                raise ValueError("torsion rows must be reduced")
        for j in range(self.source.generator_count):
            dj = self.source.generator_order(j)
            if not dj:
                continue
            for i in range(len(self.entries)):
                di = self.target.generator_order(i)
                e = self.entries[i][j] * dj
                if (e % di != 0) if di else (e != 0):
                    raise ValueError("matrix does not define a morphism on torsion")

    @property
    def matrix(self) -> IntMatrix:
        return IntMatrix.from_rows([list(r) for r in self.entries],
                                   self.source.generator_count)

    def free_matrix(self) -> IntMatrix:
        ts, tt = len(self.source.torsion), len(self.target.torsion)
        rows = [list(row[ts:]) for row in self.entries[tt:]]
        return IntMatrix.from_rows(rows, self.source.rank)

    def apply(self, coords: tuple[int, ...]) -> tuple[int, ...]:
        if len(coords) != self.source.generator_count:
            raise ValueError("coordinate length mismatch")
        out = []
        for i, row in enumerate(self.entries):
            v = sum(e * c for e, c in zip(row, coords))
            d = self.target.generator_order(i)
            out.append(v % d if d else v)
        return tuple(out)

    def compose(self, other: "GroupMorphism") -> "GroupMorphism":
        """self after other."""
        if other.target != self.source:
            raise ValueError("morphisms are not composable")
        prod = self.matrix @ other.matrix
        return group_morphism(other.source, self.target,
                              [list(prod.entries[i]) for i in range(prod.rows)])

    def determinant(self) -> int:
        if self.source.torsion or self.target.torsion:
            raise ValueError("determinant needs torsion-free groups")
        if self.source.rank != self.target.rank:
            raise ValueError("determinant needs equal ranks")
        return det(self.free_matrix())

    def is_zero(self) -> bool:
        return all(e == 0 for row in self.entries for e in row)

    def is_identity(self) -> bool:
        if self.source != self.target:
            return False
        n = self.source.generator_count
        return all(self.entries[i][j] == (1 if i == j else 0)
                   for i in range(n) for j in range(n))

    @staticmethod
    def of_free(m: IntMatrix) -> "GroupMorphism":
        return GroupMorphism(free_group(m.cols), free_group(m.rows), m.entries)

    @staticmethod
    def zero(source: AbelianGroup, target: AbelianGroup) -> "GroupMorphism":
        rows = [[0] * source.generator_count for _ in range(target.generator_count)]
        return GroupMorphism(source, target, tuple(tuple(r) for r in rows))

    @staticmethod
    def identity(group: AbelianGroup) -> "GroupMorphism":
        n = group.generator_count
        rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        return GroupMorphism(group, group, tuple(tuple(r) for r in rows))


def group_morphism(source: AbelianGroup, target: AbelianGroup,
                   rows: list[list[int]]) -> GroupMorphism:
    """Build a morphism, reducing torsion rows before validation."""
    reduced = []
    for i, row in enumerate(rows):
        d = target.generator_order(i)
        reduced.append(tuple(e % d for e in row) if d else tuple(row))
    return GroupMorphism(source, target, tuple(reduced))


def induced_map(f: ChainMap, t: int) -> GroupMorphism:
    """Morphism induced on degree-t homology by a chain map."""
    _check_degree(f.source, t)
    _check_degree(f.target, t)
    hs = homology_of_data(chain_data(f.source), t)
    ht = homology_of_data(chain_data(f.target), t)
    m = f.matrix(t)
    cols = []
    for j in range(hs.group.generator_count):
        image = m.apply(hs.generator_cycle(j))
        coords = ht.class_of(image)
        dj = hs.group.generator_order(j)
        if dj:
            for i, c in enumerate(coords):
                di = ht.group.generator_order(i)
                bad = (c * dj % di != 0) if di else (c * dj != 0)
                if bad:
                    raise ValueError("chain map does not induce a morphism "
                                     f"in degree {t}")
        cols.append(coords)
    rows = [[cols[j][i] for j in range(len(cols))]
            for i in range(ht.group.generator_count)]
    return group_morphism(hs.group, ht.group, rows)
