"""Does invariant data pin down a rigid embedding?  Rank tests and ranges.

The multiplicities of a single-block embedding enter every invariant linearly,
so uniqueness of recovery is a rank question about one integer matrix whose
columns are the vectorized invariants of the candidate automorphisms.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .digraphs import Digraph, VertexPermutation
from .embeddings import _induced_matrix, h_map, k0_map, single_block
from .linalg import IntMatrix, kernel_basis, nonneg_integer_solutions, rank


def _k0_column(g: Digraph, theta: VertexPermutation,
               restrict_receiving: bool) -> tuple[int, ...]:
    if restrict_receiving:
        return theta.restricted_matrix(g.receiving_vertices()).vec()
    return theta.matrix().vec()


def coefficient_matrix(g: Digraph, thetas: Sequence[VertexPermutation],
                       degrees: Sequence[int] = (1,),
                       restrict_receiving: bool = False) -> IntMatrix:
    """One column per automorphism: vectorized K0 block, then each H_degree.

    Vectorization is row-major; homology degrees appear in the order given.
    """
    columns = []
    for theta in thetas:
        col = list(_k0_column(g, theta, restrict_receiving))
        for degree in degrees:
            col.extend(_induced_matrix(g, theta, degree).vec())
        columns.append(col)
    height = len(columns[0]) if columns else 0
    rows = [[col[i] for col in columns] for i in range(height)]
    return IntMatrix.from_rows(rows, len(columns))


def k0_only_rank(g: Digraph, thetas: Sequence[VertexPermutation],
                 restrict_receiving: bool = False) -> int:
    return rank(coefficient_matrix(g, thetas, degrees=(), restrict_receiving=restrict_receiving))


@dataclass(frozen=True)
class UniquenessReport:
    """Outcome of the rank test, with a verified counterexample when it fails."""

    matrix: IntMatrix
    rank: int
    unknowns: int
    holds: bool
    counterexample: tuple[tuple[int, ...], tuple[int, ...]] | None

    def to_json_dict(self) -> dict:
        out = {"rank": self.rank, "unknowns": self.unknowns, "holds": self.holds}
        if self.counterexample is not None:
            out["counterexample"] = {"plus": list(self.counterexample[0]),
                                     "minus": list(self.counterexample[1])}
        return out


def decide_uniqueness(g: Digraph, thetas: Sequence[VertexPermutation],
                      degrees: Sequence[int] = (1,),
                      restrict_receiving: bool = False) -> UniquenessReport:
    """Rank test for unique recovery of multiplicities from the invariants.

    On failure the smallest kernel vector (by entry sum of absolute values)
    splits into nonnegative parts v+ and v-; the two embeddings they define
    carry identical invariant data, and that equality is re-verified here.
    """
    m = coefficient_matrix(g, thetas, degrees, restrict_receiving)
    r = rank(m)
    holds = r == len(thetas)
    counterexample = None
    if not holds:
        kern = kernel_basis(m)
        vectors = [kern.column(j) for j in range(kern.cols)]
        best = min(vectors, key=lambda v: sum(abs(x) for x in v))
        plus = tuple(max(x, 0) for x in best)
        minus = tuple(max(-x, 0) for x in best)
        spec_plus = single_block(g, [(t, v) for t, v in zip(thetas, plus) if v])
        spec_minus = single_block(g, [(t, v) for t, v in zip(thetas, minus) if v])
        same = k0_map(spec_plus, restrict_receiving) == k0_map(spec_minus, restrict_receiving)
        for degree in degrees:
            same = same and h_map(spec_plus, degree) == h_map(spec_minus, degree)
        if not same:
            raise AssertionError("kernel vector failed invariant re-verification")
        counterexample = (plus, minus)
    return UniquenessReport(m, r, len(thetas), holds, counterexample)


def homology_range(g: Digraph, thetas: Sequence[VertexPermutation],
                   k0_target: IntMatrix, degree: int = 1,
                   restrict_receiving: bool = False) -> tuple[IntMatrix, ...]:
    """All H_degree matrices of embeddings over thetas with the given K0 block.

    Enumerates every nonnegative multiplicity vector reproducing k0_target
    (each multiplicity is bounded by the column sums) and collects the induced
    homology matrices, sorted.  Unrealizable targets give an empty tuple.
    """
    a = coefficient_matrix(g, thetas, degrees=(), restrict_receiving=restrict_receiving)
    side = g.vertex_count if not restrict_receiving else len(g.receiving_vertices())
    if (k0_target.rows, k0_target.cols) != (side, side):
        raise ValueError(f"K0 target must be {side}x{side}")
    bound = max(sum(k0_target.entries[r][c] for r in range(side)) for c in range(side))
    if bound < 0:
        return ()
    solutions = nonneg_integer_solutions(a, k0_target.vec(), bound=bound)
    induced = [_induced_matrix(g, t, degree) for t in thetas]
    size = induced[0].rows if induced else 0
    values = set()
    for r in solutions:
        total = IntMatrix.zeros(size, size)
        for i, m in enumerate(induced):
            total = total + m * r[i]
        values.add(total)
    return tuple(sorted(values))
