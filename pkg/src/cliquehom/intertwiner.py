"""Deciding isomorphism of stationary systems by intertwiner ladders.

A stationary system repeats one rigid embedding of a block algebra into
itself; its data is the K0 block pattern plus the induced matrices on H0 and
H1.  Two systems are isomorphic when a ladder of realizable intertwiner
matrices telescopes between their H1 powers.  The search below alternates
sides, pairing each rung with the corresponding power of the K0 pattern.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .cliques import clique_complex
from .digraphs import Digraph, automorphisms
from .homology import homology
from .limits import LimitGroup, isomorphic, stationary_limit
from .linalg import IntMatrix, RatMatrix, nonneg_integer_solutions
from .uniqueness import coefficient_matrix, homology_range


def _is_cycle_digraph(g: Digraph) -> bool:
    from .digraphs import cycle_digraph
    n = g.vertex_count
    return n % 2 == 0 and n >= 4 and g == cycle_digraph(n // 2)


@dataclass(frozen=True)
class StationarySystem:
    """Self-embedding data: K0 block pattern with its H1 and H0 matrices.

    k0_block_pattern is (block_count * n) square for an n-vertex digraph; h1
    and h0 are block_count square.  Consistency is enforced on construction:
    every h0 entry must equal its block's uniform column sum, and every h1
    entry must be attainable by some embedding with that K0 block.
    """

    graph: Digraph
    block_count: int
    k0_block_pattern: IntMatrix
    h1: IntMatrix
    h0: IntMatrix

    def __post_init__(self) -> None:
        n = self.graph.vertex_count
        b = self.block_count
        if b < 1:
            raise ValueError("block count must be positive")
        if (self.k0_block_pattern.rows, self.k0_block_pattern.cols) != (b * n, b * n):
            raise ValueError(f"K0 pattern must be {b * n}x{b * n}")
        for name, m in (("h1", self.h1), ("h0", self.h0)):
            if (m.rows, m.cols) != (b, b):
                raise ValueError(f"{name} must be {b}x{b}")
        if homology(clique_complex(self.graph), 1).group.generator_count != 1:
            raise ValueError("stationary systems need one-dimensional H1")
        thetas = automorphisms(self.graph)
        for i in range(1, b + 1):
            for j in range(1, b + 1):
                blk = self.block(i, j)
                sums = {sum(blk.entries[r][c] for r in range(n)) for c in range(n)}
                if sums != {self.h0.entries[i - 1][j - 1]}:
                    raise ValueError(f"h0[{i}][{j}] does not match the block column sums")
                value = IntMatrix.from_rows([[self.h1.entries[i - 1][j - 1]]], 1)
                if value not in homology_range(self.graph, thetas, blk):
                    raise ValueError(f"h1[{i}][{j}] is not attainable over this block")

    def block(self, i: int, j: int) -> IntMatrix:
        n = self.graph.vertex_count
        rows = range((i - 1) * n, i * n)
        cols = range((j - 1) * n, j * n)
        return self.k0_block_pattern.submatrix(list(rows), list(cols))


def realizable(k0_target: IntMatrix, h1_target: IntMatrix,
               system: StationarySystem) -> bool:
    """Is some embedding of the system's shape behind (k0_target, h1_target)?

    Checked block by block: each block needs one nonnegative multiplicity
    vector over the digraph's automorphisms producing both the K0 block and
    the H1 entry.
    """
    n = system.graph.vertex_count
    b = system.block_count
    if (k0_target.rows, k0_target.cols) != (b * n, b * n):
        return False
    if (h1_target.rows, h1_target.cols) != (b, b):
        return False
    thetas = automorphisms(system.graph)
    a = coefficient_matrix(system.graph, thetas, degrees=(1,))
    is_cycle = _is_cycle_digraph(system.graph)
    for i in range(b):
        for j in range(b):
            blk = k0_target.submatrix(list(range(i * n, (i + 1) * n)),
                                      list(range(j * n, (j + 1) * n)))
            sums = {sum(blk.entries[r][c] for r in range(n)) for c in range(n)}
            if len(sums) != 1:
                return False
            mult = sums.pop()
            if mult < 0:
                return False
            h = h1_target.entries[i][j]
            if is_cycle and (abs(h) > mult or (h - mult) % 2):
                return False
            target = list(blk.vec()) + [h]
            if not nonneg_integer_solutions(a, target, bound=mult, max_count=1):
                return False
    return True


def find_step(power_source: IntMatrix, inverse_of: IntMatrix,
              system: StationarySystem, max_exp: int = 12,
              power_offset: int = 0) -> tuple[int, IntMatrix] | None:
    """Smallest e >= 1 with power_source^(e+power_offset) / inverse_of integral
    and realizable against the system's K0 pattern to the e-th power.

    inverse_of must be invertible over the rationals.  Returns (e, matrix) or
    None when the exponent budget runs out.
    """
    inv = RatMatrix.from_int_matrix(inverse_of).inverse()
    for e in range(1, max_exp + 1):
        candidate = RatMatrix.from_int_matrix(power_source.power(e + power_offset)) @ inv
        if not candidate.is_integral():
            continue
        mat = candidate.to_int_matrix()
        if realizable(system.k0_block_pattern.power(e), mat, system):
            return (e, mat)
    return None


@dataclass(frozen=True)
class IntertwinerCertificate:
    """Alternating ladder rungs (exponent, matrix), first rung on the Y side."""

    steps: tuple[tuple[int, IntMatrix], ...]

    def to_json_dict(self) -> dict:
        return {"steps": [{"exponent": e, "matrix": [list(r) for r in m.entries]}
                          for e, m in self.steps]}


def verify_certificate(certificate: IntertwinerCertificate,
                       system_x: StationarySystem,
                       system_y: StationarySystem) -> bool:
    """Re-check the telescoping identities and per-rung realizability.

    Rung 2i (0-based) lands on the Y side, rung 2i+1 on the X side.  The first
    rung composes with the implicit start X, so its power carries offset 1:
    V1 X = Y^(1+e1), then U2 V1 = X^(e2), V3 U2 = Y^(e3), and so on.
    """
    if not certificate.steps:
        return False
    previous = system_x.h1
    for idx, (e, mat) in enumerate(certificate.steps):
        if e < 1:
            return False
        side = system_y if idx % 2 == 0 else system_x
        offset = 1 if idx == 0 else 0
        if mat @ previous != side.h1.power(e + offset):
            return False
        if not realizable(side.k0_block_pattern.power(e), mat, side):
            return False
        previous = mat
    return True


@dataclass(frozen=True)
class IsomorphismDecision:
    """Verdict plus the evidence: limit groups always, a ladder when found."""

    verdict: str
    certificate: IntertwinerCertificate | None
    limit_x: LimitGroup
    limit_y: LimitGroup

    def to_json_dict(self) -> dict:
        out = {"verdict": self.verdict,
               "limits": {"x": self.limit_x.render(), "y": self.limit_y.render()}}
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json_dict()
        return out


def decide_isomorphic(system_x: StationarySystem, system_y: StationarySystem,
                      depth: int = 8, max_exp: int = 12) -> IsomorphismDecision:
    """Three-valued isomorphism test between two stationary systems.

    Distinct resolved limit groups settle non-isomorphism; a full ladder of
    depth alternating realizable rungs settles isomorphism; anything else is
    unknown.
    """
    if system_x.graph != system_y.graph or system_x.block_count != system_y.block_count:
        raise ValueError("systems must share a digraph and block shape")
    b = system_x.block_count
    limit_x = stationary_limit(b, system_x.h1)
    limit_y = stationary_limit(b, system_y.h1)
    if isomorphic(limit_x, limit_y) is False:
        return IsomorphismDecision("not_isomorphic", None, limit_x, limit_y)
    steps = []
    previous = system_x.h1
    for idx in range(depth):
        side = system_y if idx % 2 == 0 else system_x
        offset = 1 if idx == 0 else 0
        try:
            found = find_step(side.h1, previous, side, max_exp=max_exp,
                              power_offset=offset)
        except ValueError:
            # singular rung: no ladder can pass through it
            found = None
        if found is None:
            return IsomorphismDecision("unknown", None, limit_x, limit_y)
        steps.append(found)
        previous = found[1]
    certificate = IntertwinerCertificate(tuple(steps))
    if not verify_certificate(certificate, system_x, system_y):
        raise AssertionError("constructed ladder failed its own verification")
    return IsomorphismDecision("isomorphic", certificate, limit_x, limit_y)


@dataclass(frozen=True)
class FamilyClassification:
    """Limit-group classes over a family of 2x2 step matrices."""

    classes: tuple[tuple[LimitGroup, tuple[IntMatrix, ...]], ...]
    unresolved: tuple[IntMatrix, ...]

    def to_json_dict(self) -> dict:
        return {"classes": [{"group": g.render(),
                             "matrices": [[list(r) for r in m.entries] for m in mats]}
                            for g, mats in self.classes],
                "unresolved": [[list(r) for r in m.entries] for m in self.unresolved]}


def classify_family(entries: Iterable[int],
                    symmetric_only: bool = True) -> FamilyClassification:
    """Group the 2x2 matrices over the entry set by their stationary limit."""
    values = sorted(set(entries))
    mats = []
    if symmetric_only:
        for a in values:
            for b in values:
                mats.append(IntMatrix.from_rows([[a, b], [b, a]], 2))
    else:
        for a in values:
            for b in values:
                for c in values:
                    for d in values:
                        mats.append(IntMatrix.from_rows([[a, b], [c, d]], 2))
    buckets: dict[LimitGroup, list[IntMatrix]] = {}
    unresolved = []
    for m in mats:
        g = stationary_limit(2, m)
        if g.is_resolved:
            buckets.setdefault(g, []).append(m)
        else:
            unresolved.append(m)
    classes = tuple(sorted(((g, tuple(sorted(ms))) for g, ms in buckets.items()),
                           key=lambda pair: pair[0].render()))
    return FamilyClassification(classes, tuple(sorted(unresolved)))
