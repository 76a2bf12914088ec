"""Stationary limits of integer step matrices, as explicit group summands.

A stationary system iterates one integer matrix a on Z^k.  When a is
diagonalizable over Q with integer eigenvalues, the limit of the system is a
direct sum of copies of Z (eigenvalue of absolute value 1) and of the
localizations Q(|lambda|^inf); eigenvalue 0 contributes nothing.  Systems
outside that regime are reported unresolved rather than guessed at.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable

from .homology import AbelianGroup
from .linalg import IntMatrix, charpoly, det, hstack, kernel_basis

if TYPE_CHECKING:
    from .embeddings import RigidEmbeddingSpec


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True, order=True)
class SupernaturalNumber:
    """Formal product of prime powers, exponents either finite or infinite.

    finite holds (prime, exponent) pairs; infinite holds the primes with
    unbounded exponent.  The empty number is 1.
    """

    finite: tuple[tuple[int, int], ...] = ()
    infinite: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        fp = [p for p, _ in self.finite]
        if fp != sorted(set(fp)) or list(self.infinite) != sorted(set(self.infinite)):
            raise ValueError("primes must be sorted and distinct")
        if set(fp) & set(self.infinite):
            raise ValueError("a prime cannot have both finite and infinite exponent")
        for p, e in self.finite:
            if not _is_prime(p) or e < 1:
                raise ValueError(f"bad factor {p}^{e}")
        for p in self.infinite:
            if not _is_prime(p):
                raise ValueError(f"{p} is not prime")

    @classmethod
    def from_integer(cls, n: int) -> "SupernaturalNumber":
        if n < 1:
            raise ValueError("supernatural numbers come from positive integers")
        return cls(tuple(sorted(_factorize(n).items())), ())

    @classmethod
    def infinite_power(cls, n: int) -> "SupernaturalNumber":
        """All primes of n with infinite exponent; n = 1 gives the unit."""
        if n < 1:
            raise ValueError("base must be a positive integer")
        return cls((), tuple(sorted(_factorize(n))))

    def is_trivial(self) -> bool:
        return not self.finite and not self.infinite

    def times(self, other: "SupernaturalNumber") -> "SupernaturalNumber":
        exps: dict[int, int | None] = {p: e for p, e in self.finite}
        exps.update({p: None for p in self.infinite})
        for p, e in other.finite:
            if exps.get(p, 0) is not None:
                exps[p] = exps.get(p, 0) + e
        for p in other.infinite:
            exps[p] = None
        finite = tuple(sorted((p, e) for p, e in exps.items() if e is not None))
        infinite = tuple(sorted(p for p, e in exps.items() if e is None))
        return SupernaturalNumber(finite, infinite)

    def times_integer(self, k: int) -> "SupernaturalNumber":
        return self.times(SupernaturalNumber.from_integer(k))

    def divides(self, other: "SupernaturalNumber") -> bool:
        other_fin = dict(other.finite)
        for p, e in self.finite:
            if p not in other.infinite and other_fin.get(p, 0) < e:
                return False
        return all(p in other.infinite for p in self.infinite)

    def render(self) -> str:
        if self.is_trivial():
            return "1"
        parts = [f"{p}^{e}" for p, e in self.finite]
        parts += [f"{p}^inf" for p in self.infinite]
        return "*".join(parts)


def _summand_render(sn: SupernaturalNumber) -> str:
    if sn.is_trivial():
        return "Z"
    if not sn.finite:
        base = math.prod(sn.infinite)
        return f"Q({base}^inf)"
    return f"Q({sn.render()})"


@dataclass(frozen=True)
class LimitGroup:
    """Limit of a stationary system: explicit summands, or an unresolved tag.

    free_summands lists one SupernaturalNumber per summand (the trivial number
    denotes Z, otherwise Q(s)); torsion_summands lists finite cyclic orders.
    An unresolved group instead carries its defining (rank, matrix) pair.
    """

    free_summands: tuple[SupernaturalNumber, ...] | None
    torsion_summands: tuple[int, ...] = ()
    presentation: tuple[int, IntMatrix] | None = None

    def __post_init__(self) -> None:
        if (self.free_summands is None) == (self.presentation is None):
            raise ValueError("exactly one of summands and presentation is required")
        if self.free_summands is not None:
            if list(self.free_summands) != sorted(self.free_summands):
                raise ValueError("summands must be sorted")
            if list(self.torsion_summands) != sorted(self.torsion_summands):
                raise ValueError("torsion summands must be sorted")
            if any(d < 2 for d in self.torsion_summands):
                raise ValueError("torsion orders must be at least 2")

    @classmethod
    def resolved(cls, summands: Iterable[SupernaturalNumber],
                 torsion: Iterable[int] = ()) -> "LimitGroup":
        return cls(tuple(sorted(summands)), tuple(sorted(torsion)), None)

    @classmethod
    def unresolved(cls, k: int, a: IntMatrix) -> "LimitGroup":
        return cls(None, (), (k, a))

    @property
    def is_resolved(self) -> bool:
        return self.free_summands is not None

    def render(self) -> str:
        if self.free_summands is None:
            k, a = self.presentation
            return f"unresolved({k}, {[list(r) for r in a.entries]})"
        parts = []
        z_count = sum(1 for s in self.free_summands if s.is_trivial())
        if z_count == 1:
            parts.append("Z")
        elif z_count > 1:
            parts.append(f"Z^{z_count}")
        parts += [_summand_render(s) for s in self.free_summands if not s.is_trivial()]
        parts += [f"Z/{d}" for d in self.torsion_summands]
        return " + ".join(parts) if parts else "0"


def _synthetic_division(poly: list[int], r: int) -> tuple[list[int], int]:
    out = [poly[0]]
    for c in poly[1:]:
        out.append(c + r * out[-1])
    return out[:-1], out[-1]


def _integer_roots(coeffs: tuple[int, ...]) -> dict[int, int]:
    """Integer roots with algebraic multiplicity, from leading-first coefficients."""
    poly = list(coeffs)
    roots: dict[int, int] = {}
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
        roots[0] = roots.get(0, 0) + 1
    if len(poly) <= 1:
        return roots
    const = abs(poly[-1])
    candidates = set()
    for d in range(1, math.isqrt(const) + 1):
        if const % d == 0:
            candidates.update((d, const // d))
    for base in sorted(candidates):
        for cand in (base, -base):
            while len(poly) > 1:
                quotient, remainder = _synthetic_division(poly, cand)
                if remainder != 0:
                    break
                poly = quotient
                roots[cand] = roots.get(cand, 0) + 1
    return roots


def stationary_limit(k: int, a: IntMatrix) -> LimitGroup:
    """Limit group of the system Z^k -> Z^k -> ... with step matrix a.

    Resolution rule: |det a| = 1 gives Z^k.  Otherwise a must be
    diagonalizable over Q with integer eigenvalues; the eigenbasis lattice
    index d must be 1, or have all its primes inverted by every nonzero
    eigenvalue while no eigenvalue has absolute value 1.  Each eigenvalue
    lambda then contributes (with geometric multiplicity) a summand Z when
    |lambda| = 1, nothing when lambda = 0, and Q(|lambda|^inf) otherwise.
    """
    if a.rows != k or a.cols != k:
        raise ValueError(f"step matrix must be {k}x{k}")
    if k == 0:
        return LimitGroup.resolved(())
    if abs(det(a)) == 1:
        return LimitGroup.resolved([SupernaturalNumber()] * k)
    roots = _integer_roots(charpoly(a))
    if sum(roots.values()) < k:
        return LimitGroup.unresolved(k, a)
    bases = {}
    for lam in roots:
        shifted = a - IntMatrix.identity(k) * lam
        bases[lam] = kernel_basis(shifted)
    if sum(b.cols for b in bases.values()) < k:
        return LimitGroup.unresolved(k, a)
    index = abs(det(hstack(*(bases[lam] for lam in sorted(bases)))))
    nonzero = [lam for lam in bases if lam != 0]
    if index > 1:
        if any(abs(lam) == 1 for lam in nonzero) or not nonzero:
            return LimitGroup.unresolved(k, a)
        index_primes = set(_factorize(index))
        for lam in nonzero:
            if not index_primes <= set(_factorize(abs(lam))):
                return LimitGroup.unresolved(k, a)
    summands = []
    for lam, basis in bases.items():
        if lam == 0:
            continue
        kind = (SupernaturalNumber() if abs(lam) == 1
                else SupernaturalNumber.infinite_power(abs(lam)))
        summands.extend([kind] * basis.cols)
    return LimitGroup.resolved(summands)


def isomorphic(g1: LimitGroup, g2: LimitGroup) -> bool | None:
    """True / False when decidable, None when either side is unresolved."""
    if g1.is_resolved and g2.is_resolved:
        return (g1.free_summands == g2.free_summands
                and g1.torsion_summands == g2.torsion_summands)
    if not g1.is_resolved and not g2.is_resolved and g1.presentation == g2.presentation:
        return True
    return None


def tensor_with_K0(h: AbelianGroup, g: LimitGroup) -> LimitGroup:
    """Tensor product of a finitely generated group with a resolved limit group."""
    if not g.is_resolved:
        raise ValueError("cannot tensor with an unresolved limit group")
    free: list[SupernaturalNumber] = []
    torsion: list[int] = []
    for _ in range(h.rank):
        free.extend(g.free_summands)
        torsion.extend(g.torsion_summands)
    for d in h.torsion:
        for s in g.free_summands:
            if s.finite:
                raise ValueError("mixed finite/infinite summands are not supported")
            reduced = d
            for p in s.infinite:
                while reduced % p == 0:
                    reduced //= p
            if reduced > 1:
                torsion.append(reduced)
        for e in g.torsion_summands:
            common = math.gcd(d, e)
            if common > 1:
                torsion.append(common)
    return LimitGroup.resolved(free, torsion)


def limit_homology(spec: "RigidEmbeddingSpec", degree: int) -> LimitGroup:
    """Limit of the homology system iterated along a square block diagram."""
    from .cliques import clique_complex
    from .embeddings import h_map
    from .homology import homology
    if spec.target_blocks != spec.source_blocks:
        raise ValueError("limits need a stationary (square) block shape")
    group = homology(clique_complex(spec.digraph), degree).group
    if group.torsion:
        raise ValueError("limits over torsion homology are not supported")
    step = h_map(spec, degree)
    return stationary_limit(step.rows, step)
