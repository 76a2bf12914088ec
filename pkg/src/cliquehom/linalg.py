"""Exact integer and rational matrix arithmetic.

Everything here runs on unbounded Python integers and ``fractions.Fraction``;
no floating point, no modular shortcuts. Decompositions fix explicit pivoting
and reduction rules so that every basis produced is deterministic: the same
input always yields byte-identical output.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class NoRationalSolution(ValueError):
    """The linear system has no solution even over the rationals."""


class NoIntegerSolution(ValueError):
    """The system is rationally solvable but has no integer solution."""


@dataclass(frozen=True, order=True)
class IntMatrix:
    """Immutable integer matrix stored as a row-major tuple of tuples."""

    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(self.entries) != self.rows:
            raise ValueError("row count does not match entries")
        for row in self.entries:
            if len(row) != self.cols:
                raise ValueError("ragged rows in matrix")
            for x in row:
                if not isinstance(x, int) or isinstance(x, bool):
                    raise ValueError("matrix entries must be integers")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]], cols: int | None = None) -> "IntMatrix":
        entries = tuple(tuple(int(x) for x in row) for row in rows)
        if cols is None:
            if not entries:
                raise ValueError("cannot infer column count of an empty matrix")
            cols = len(entries[0])
        return cls(len(entries), cols, entries)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, tuple(tuple(0 for _ in range(cols)) for _ in range(rows)))

    @classmethod
    def from_column(cls, column: Sequence[int]) -> "IntMatrix":
        return cls(len(column), 1, tuple((int(x),) for x in column))

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.entries)

    def vec(self) -> tuple[int, ...]:
        """Row-major flattening."""
        return tuple(x for row in self.entries for x in row)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows,
                         tuple(tuple(self.entries[i][j] for i in range(self.rows))
                               for j in range(self.cols)))

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "IntMatrix":
        return IntMatrix(len(row_idx), len(col_idx),
                         tuple(tuple(self.entries[i][j] for j in col_idx) for i in row_idx))

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        _same_shape(self, other)
        return IntMatrix(self.rows, self.cols,
                         tuple(tuple(a + b for a, b in zip(ra, rb))
                               for ra, rb in zip(self.entries, other.entries)))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        _same_shape(self, other)
        return IntMatrix(self.rows, self.cols,
                         tuple(tuple(a - b for a, b in zip(ra, rb))
                               for ra, rb in zip(self.entries, other.entries)))

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols,
                         tuple(tuple(-a for a in row) for row in self.entries))

    def __mul__(self, scalar: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols,
                         tuple(tuple(scalar * a for a in row) for row in self.entries))

    __rmul__ = __mul__

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        cols_t = other.transpose().entries
        return IntMatrix(self.rows, other.cols,
                         tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols_t)
                               for row in self.entries))

    def power(self, k: int) -> "IntMatrix":
        if not self.is_square():
            raise ValueError("power requires a square matrix")
        if k < 0:
            raise ValueError("negative powers are not integral in general")
        result = IntMatrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def apply(self, vector: Sequence[int]) -> tuple[int, ...]:
        if len(vector) != self.cols:
            raise ValueError("vector length does not match column count")
        return tuple(sum(a * x for a, x in zip(row, vector)) for row in self.entries)

    def to_json_dict(self) -> dict:
        return {"rows": self.rows, "cols": self.cols,
                "entries": [list(row) for row in self.entries]}

    @classmethod
    def from_json_dict(cls, data: dict) -> "IntMatrix":
        return cls(int(data["rows"]), int(data["cols"]),
                   tuple(tuple(int(x) for x in row) for row in data["entries"]))


def _same_shape(a: IntMatrix, b: IntMatrix) -> None:
    if a.rows != b.rows or a.cols != b.cols:
        raise ValueError(f"shape mismatch: {a.rows}x{a.cols} vs {b.rows}x{b.cols}")


@dataclass(frozen=True)
class RatMatrix:
    """Immutable matrix over the rationals (entries are ``Fraction``)."""

    rows: int
    cols: int
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entry shape does not match declared dimensions")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[Fraction | int]]) -> "RatMatrix":
        entries = tuple(tuple(Fraction(x) for x in row) for row in rows)
        if not entries:
            raise ValueError("cannot infer shape of an empty matrix")
        return cls(len(entries), len(entries[0]), entries)

    @classmethod
    def from_int_matrix(cls, a: IntMatrix) -> "RatMatrix":
        return cls(a.rows, a.cols,
                   tuple(tuple(Fraction(x) for x in row) for row in a.entries))

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in product")
        cols_t = list(zip(*other.entries))
        return RatMatrix(self.rows, other.cols,
                         tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols_t)
                               for row in self.entries))

    def scale(self, q: Fraction) -> "RatMatrix":
        return RatMatrix(self.rows, self.cols,
                         tuple(tuple(q * x for x in row) for row in self.entries))

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for row in self.entries for x in row)

    def to_int_matrix(self) -> IntMatrix:
        if not self.is_integral():
            raise ValueError("matrix has non-integer entries")
        return IntMatrix(self.rows, self.cols,
                         tuple(tuple(int(x) for x in row) for row in self.entries))

    def inverse(self) -> "RatMatrix":
        if self.rows != self.cols:
            raise ValueError("only square matrices can be inverted")
        n = self.rows
        work = [list(row) + [Fraction(int(i == j)) for j in range(n)]
                for i, row in enumerate(self.entries)]
        for c in range(n):
            pivot = next((r for r in range(c, n) if work[r][c] != 0), None)
            if pivot is None:
                raise ValueError("matrix is singular")
            work[c], work[pivot] = work[pivot], work[c]
            inv = 1 / work[c][c]
            work[c] = [x * inv for x in work[c]]
            for r in range(n):
                if r != c and work[r][c] != 0:
                    f = work[r][c]
                    work[r] = [x - f * y for x, y in zip(work[r], work[c])]
        return RatMatrix(n, n, tuple(tuple(row[n:]) for row in work))

    def to_json_dict(self) -> dict:
        return {"rows": self.rows, "cols": self.cols,
                "entries": [[_fraction_str(x) for x in row] for row in self.entries]}

    @classmethod
    def from_json_dict(cls, data: dict) -> "RatMatrix":
        return cls(int(data["rows"]), int(data["cols"]),
                   tuple(tuple(Fraction(str(x)) for x in row) for row in data["entries"]))


def _fraction_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def hstack(*mats: IntMatrix) -> IntMatrix:
    rows = mats[0].rows
    if any(m.rows != rows for m in mats):
        raise ValueError("row counts differ")
    return IntMatrix(rows, sum(m.cols for m in mats),
                     tuple(tuple(itertools.chain.from_iterable(m.entries[i] for m in mats))
                           for i in range(rows)))


def vstack(*mats: IntMatrix) -> IntMatrix:
    cols = mats[0].cols
    if any(m.cols != cols for m in mats):
        raise ValueError("column counts differ")
    return IntMatrix(sum(m.rows for m in mats), cols,
                     tuple(itertools.chain.from_iterable(m.entries for m in mats)))


@dataclass(frozen=True)
class SmithDecomposition:
    """u @ a @ v == s with u, v unimodular and s in Smith normal form."""

    u: IntMatrix
    s: IntMatrix
    v: IntMatrix

    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.s.entries[i][i] for i in range(min(self.s.rows, self.s.cols)))

    def rank(self) -> int:
        return sum(1 for d in self.diagonal() if d != 0)

    def invariant_factors(self) -> tuple[int, ...]:
        return tuple(d for d in self.diagonal() if d != 0)


def smith_normal_form(a: IntMatrix) -> SmithDecomposition:
    """Smith normal form with a pinned pivot rule.

    At each stage the pivot is the nonzero entry of the working block with the
    smallest absolute value, ties broken by smallest (row, column). Diagonal
    entries come out nonnegative and form a divisibility chain d1 | d2 | ...
    """
    m, n = a.rows, a.cols
    s = [list(row) for row in a.entries]
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    v = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def row_sub(i: int, j: int, q: int) -> None:  # row_i -= q * row_j
        s[i] = [x - q * y for x, y in zip(s[i], s[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    def col_sub(j: int, i: int, q: int) -> None:  # col_j -= q * col_i
        for row in s:
            row[j] -= q * row[i]
        for row in v:
            row[j] -= q * row[i]

    def row_swap(i: int, j: int) -> None:
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]

    def col_swap(i: int, j: int) -> None:
        for row in s:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def row_negate(i: int) -> None:
        s[i] = [-x for x in s[i]]
        u[i] = [-x for x in u[i]]

    k = 0
    limit = min(m, n)
    while k < limit:
        pivot = None
        best = None
        for i in range(k, m):
            for j in range(k, n):
                x = s[i][j]
                if x != 0 and (best is None or abs(x) < best):
                    best = abs(x)
                    pivot = (i, j)
        if pivot is None:
            break
        row_swap(k, pivot[0])
        col_swap(k, pivot[1])

        while True:
            for i in range(k + 1, m):
                while s[i][k] != 0:
                    q = s[i][k] // s[k][k]
                    row_sub(i, k, q)
                    if s[i][k] != 0:
                        row_swap(i, k)
            for j in range(k + 1, n):
                while s[k][j] != 0:
                    q = s[k][j] // s[k][k]
                    col_sub(j, k, q)
                    if s[k][j] != 0:
                        col_swap(j, k)
            if all(s[i][k] == 0 for i in range(k + 1, m)):
                d = s[k][k]
                offender = next(((i, j) for i in range(k + 1, m) for j in range(k + 1, n)
                                 if s[i][j] % d != 0), None)
                if offender is None:
                    break
                # pull the offending row up so the gcd can shrink the pivot
                s[k] = [x + y for x, y in zip(s[k], s[offender[0]])]
                u[k] = [x + y for x, y in zip(u[k], u[offender[0]])]
        if s[k][k] < 0:
            row_negate(k)
        k += 1

    return SmithDecomposition(
        IntMatrix.from_rows(u, m), IntMatrix.from_rows(s, n), IntMatrix.from_rows(v, n))


def rank(a: IntMatrix) -> int:
    """Exact rank over the rationals."""
    m = [[Fraction(x) for x in row] for row in a.entries]
    r = 0
    for c in range(a.cols):
        pivot = next((i for i in range(r, a.rows) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(a.rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
        if r == a.rows:
            break
    return r


def det(a: IntMatrix) -> int:
    """Fraction-free (Bareiss) determinant."""
    if not a.is_square():
        raise ValueError("determinant requires a square matrix")
    n = a.rows
    if n == 0:
        return 1
    m = [list(row) for row in a.entries]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if pivot is None:
                return 0
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def unimodular_inverse(a: IntMatrix) -> IntMatrix:
    """Inverse of a matrix with determinant +-1; result is integral."""
    inv = RatMatrix.from_int_matrix(a).inverse()
    if not inv.is_integral():
        raise ValueError("matrix is not unimodular")
    return inv.to_int_matrix()


def hermite_row_basis(a: IntMatrix) -> IntMatrix:
    """Canonical basis of the row lattice of ``a`` (row-style Hermite form).

    Pivots are positive, entries above each pivot are reduced into [0, pivot),
    pivot columns strictly increase, zero rows are dropped.
    """
    nrows, ncols = a.rows, a.cols
    rows = [list(r) for r in a.entries]
    r = 0
    for c in range(ncols):
        while True:
            nz = sorted((i for i in range(r, nrows) if rows[i][c] != 0),
                        key=lambda i: (abs(rows[i][c]), i))
            if len(nz) <= 1:
                break
            i0, i1 = nz[0], nz[1]
            q = rows[i1][c] // rows[i0][c]
            rows[i1] = [x - q * y for x, y in zip(rows[i1], rows[i0])]
        nz = [i for i in range(r, nrows) if rows[i][c] != 0]
        if not nz:
            continue
        rows[r], rows[nz[0]] = rows[nz[0]], rows[r]
        if rows[r][c] < 0:
            rows[r] = [-x for x in rows[r]]
        for i in range(r):
            q = rows[i][c] // rows[r][c]
            if q:
                rows[i] = [x - q * y for x, y in zip(rows[i], rows[r])]
        r += 1
    return IntMatrix.from_rows(rows[:r], ncols) if r else IntMatrix.zeros(0, ncols)


def kernel_basis(a: IntMatrix) -> IntMatrix:
    """Basis of the integer kernel lattice {x : a @ x = 0}, as matrix columns.

    The integer kernel of a matrix is automatically saturated, and the basis is
    canonicalized through the Hermite form, so equal kernels give equal output.
    """
    snf = smith_normal_form(a)
    r = snf.rank()
    cols = [snf.v.column(j) for j in range(r, a.cols)]
    if not cols:
        return IntMatrix.zeros(a.cols, 0)
    reduced = hermite_row_basis(IntMatrix.from_rows(cols, a.cols))
    return reduced.transpose()


def solve_integer(a: IntMatrix, b: Sequence[int]) -> tuple[tuple[int, ...], IntMatrix]:
    """Particular integer solution of a @ x = b plus a kernel basis.

    Raises NoRationalSolution or NoIntegerSolution when the system cannot be
    solved over Q or over Z respectively.
    """
    if len(b) != a.rows:
        raise ValueError("right-hand side length does not match row count")
    snf = smith_normal_form(a)
    c = snf.u.apply(tuple(b))
    diag = snf.diagonal()
    r = snf.rank()
    for i in range(r, a.rows):
        if c[i] != 0:
            raise NoRationalSolution("system is inconsistent over the rationals")
    y = [0] * a.cols
    for i in range(r):
        if c[i] % diag[i] != 0:
            raise NoIntegerSolution("system has rational but no integer solutions")
        y[i] = c[i] // diag[i]
    x0 = snf.v.apply(tuple(y))
    return x0, kernel_basis(a)


def nonneg_integer_solutions(a: IntMatrix, b: Sequence[int],
                             bound: int | None = None,
                             max_count: int | None = None) -> list[tuple[int, ...]]:
    """All x >= 0 with a @ x = b, in ascending lexicographic order.

    When the integer solution set is a single point the answer is immediate.
    Otherwise a depth-first search with unit propagation runs over the box
    0 <= x_j <= ub_j, where ub_j is either ``bound`` or inferred from rows of
    ``a`` that have only nonnegative coefficients. ``max_count`` truncates the
    enumeration (useful for existence checks).
    """
    try:
        x0, kern = solve_integer(a, list(b))
    except (NoRationalSolution, NoIntegerSolution):
        return []
    if kern.cols == 0:
        ok = all(x >= 0 for x in x0) and (bound is None or all(x <= bound for x in x0))
        return [tuple(x0)] if ok else []

    n = a.cols
    ubs = [bound] * n
    if bound is None:
        for j in range(n):
            best = None
            for i in range(a.rows):
                row = a.entries[i]
                if row[j] > 0 and all(x >= 0 for x in row):
                    if b[i] < 0:
                        return []
                    cap = b[i] // row[j]
                    best = cap if best is None else min(best, cap)
            if best is None:
                raise ValueError(f"variable {j} is unbounded; pass an explicit bound")
            ubs[j] = best

    results: list[tuple[int, ...]] = []
    assignment = [0] * n

    def dfs(j: int, res: list[int]) -> bool:
        if max_count is not None and len(results) >= max_count:
            return True
        if j == n:
            if all(x == 0 for x in res):
                results.append(tuple(assignment))
                return max_count is not None and len(results) >= max_count
            return False
        lo, hi = 0, ubs[j]
        for i in range(a.rows):
            row = a.entries[i]
            coeff = row[j]
            rest = row[j + 1:]
            if coeff > 0 and all(x >= 0 for x in rest):
                if res[i] < 0:
                    return False
                hi = min(hi, res[i] // coeff)
            if coeff == 0 and all(x == 0 for x in rest) and res[i] != 0:
                return False
            if coeff != 0 and all(x == 0 for x in rest):
                # j is the last variable in this equation: value forced
                if res[i] % coeff != 0:
                    return False
                forced = res[i] // coeff
                lo, hi = max(lo, forced), min(hi, forced)
        for val in range(lo, hi + 1):
            assignment[j] = val
            nxt = [res[i] - a.entries[i][j] * val for i in range(a.rows)]
            if dfs(j + 1, nxt):
                assignment[j] = 0
                return True
            assignment[j] = 0
        return False

    dfs(0, list(b))
    return sorted(results)


def charpoly(a: IntMatrix) -> tuple[int, ...]:
    """Characteristic polynomial coefficients, leading first (monic).

    Faddeev-LeVerrier over Fraction; the result is provably integral.
    """
    if not a.is_square():
        raise ValueError("characteristic polynomial requires a square matrix")
    n = a.rows
    ra = RatMatrix.from_int_matrix(a)
    coeffs = [Fraction(1)]
    mk = RatMatrix(n, n, tuple(tuple(Fraction(0) for _ in range(n)) for _ in range(n)))
    ident = RatMatrix.from_int_matrix(IntMatrix.identity(n))
    for k in range(1, n + 1):
        shifted = RatMatrix(n, n, tuple(
            tuple(mk.entries[i][j] + (coeffs[k - 1] if i == j else 0) for j in range(n))
            for i in range(n)))
        mk = ra @ shifted
        trace = sum(mk.entries[i][i] for i in range(n))
        coeffs.append(-trace / k)
    out = []
    for c in coeffs:
        if c.denominator != 1:
            raise AssertionError("characteristic polynomial came out non-integral")
        out.append(int(c))
    return tuple(out)
