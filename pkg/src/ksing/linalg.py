"""Exact integer matrix arithmetic.

Dense matrices over Python's arbitrary-precision integers: products,
transposes, unipotent-triangular inverses, determinants, Pfaffians, and
Smith normal form with unimodular transformation certificates.  There is
no floating point and no fixed-width fast path anywhere; entry growth is
handled by arbitrary precision from the start.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass
from fractions import Fraction


class NotUnipotent(ValueError):
    """Matrix is not square lower-triangular with unit diagonal."""


class NotSkewSymmetric(ValueError):
    """Matrix does not satisfy m^T = -m."""


class OddSize(ValueError):
    """Pfaffian requested for an odd-sized matrix."""


class IntMatrix:
    """Immutable dense integer matrix stored row-major as nested tuples."""

    __slots__ = ("entries",)

    def __init__(self, rows):
        entries = tuple(
            tuple(operator.index(x) for x in row) for row in rows
        )
        if not entries or not entries[0]:
            raise ValueError("matrix needs at least one row and one column")
        width = len(entries[0])
        if any(len(row) != width for row in entries):
            raise ValueError("matrix rows have unequal lengths")
        self.entries = entries

    @classmethod
    def identity(cls, k: int) -> "IntMatrix":
        return cls([[1 if i == j else 0 for j in range(k)] for i in range(k)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls([[0] * cols for _ in range(rows)])

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, key):
        i, j = key
        return self.entries[i][j]

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"IntMatrix({self.to_lists()!r})"

    def to_lists(self) -> list[list[int]]:
        return [list(row) for row in self.entries]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(list(zip(*self.entries)))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if not isinstance(other, IntMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError(
                f"cannot multiply {self.rows}x{self.cols} by"
                f" {other.rows}x{other.cols}"
            )
        cols = list(zip(*other.entries))
        return IntMatrix(
            [
                [sum(a * b for a, b in zip(row, col)) for col in cols]
                for row in self.entries
            ]
        )

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if not isinstance(other, IntMatrix):
            return NotImplemented
        self._require_same_shape(other)
        return IntMatrix(
            [
                [a + b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.entries, other.entries)
            ]
        )

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        if not isinstance(other, IntMatrix):
            return NotImplemented
        self._require_same_shape(other)
        return IntMatrix(
            [
                [a - b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.entries, other.entries)
            ]
        )

    def __neg__(self) -> "IntMatrix":
        return IntMatrix([[-x for x in row] for row in self.entries])

    def __mul__(self, scalar) -> "IntMatrix":
        scalar = operator.index(scalar)
        return IntMatrix([[scalar * x for x in row] for row in self.entries])

    __rmul__ = __mul__

    def _require_same_shape(self, other: "IntMatrix") -> None:
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError(
                f"shape mismatch: {self.rows}x{self.cols} vs"
                f" {other.rows}x{other.cols}"
            )


@dataclass(frozen=True)
class SnfDecomposition:
    """Certificate triple with U @ M @ V == D.

    U and V are unimodular (|det| = 1), D is diagonal, its nonzero
    diagonal entries are nonnegative and each divides the next, and zeros
    trail.  ``divisors`` lists the full diagonal of D.
    """

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    divisors: tuple[int, ...]


def unipotent_inverse(m: IntMatrix) -> IntMatrix:
    """Exact integer inverse of a lower-triangular unit-diagonal matrix.

    Forward substitution; the result is again lower unipotent and
    m @ result == identity holds exactly.
    """
    if not m.is_square:
        raise NotUnipotent(f"matrix is {m.rows}x{m.cols}, not square")
    k = m.rows
    e = m.entries
    for i in range(k):
        if e[i][i] != 1:
            raise NotUnipotent(f"diagonal entry ({i}, {i}) is {e[i][i]}, not 1")
        for j in range(i + 1, k):
            if e[i][j] != 0:
                raise NotUnipotent(
                    f"entry ({i}, {j}) above the diagonal is {e[i][j]}"
                )
    inv = [[0] * k for _ in range(k)]
    for i in range(k):
        inv[i][i] = 1
        for j in range(i - 1, -1, -1):
            inv[i][j] = -sum(e[i][t] * inv[t][j] for t in range(j, i))
    return IntMatrix(inv)


def theorem_matrix(c: IntMatrix, d: int) -> IntMatrix:
    """The matrix (-1)**(d-1) * C @ (C^-1)^T - Id for a unipotent C."""
    d = operator.index(d)
    if d < 2:
        raise ValueError(f"dimension d must be at least 2, got {d}")
    sign = 1 if d % 2 == 1 else -1
    inv_t = unipotent_inverse(c).transpose()
    return sign * (c @ inv_t) - IntMatrix.identity(c.rows)


def determinant(m: IntMatrix) -> int:
    """Exact determinant via fraction-free (Bareiss) elimination."""
    if not m.is_square:
        raise ValueError(f"determinant needs a square matrix, got {m.rows}x{m.cols}")
    a = m.to_lists()
    n = m.rows
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # Sylvester's identity makes this division exact.
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def pfaffian(m: IntMatrix) -> int:
    """Exact Pfaffian of an even-sized skew-symmetric integer matrix.

    Parlett-Reid style elimination over exact rationals; the sign
    convention is Pf([[0, a], [-a, 0]]) = a.  Satisfies pfaffian(m)**2 ==
    determinant(m).
    """
    if not m.is_square:
        raise NotSkewSymmetric(f"matrix is {m.rows}x{m.cols}, not square")
    n = m.rows
    e = m.entries
    for i in range(n):
        for j in range(i, n):
            if e[i][j] != -e[j][i]:
                raise NotSkewSymmetric(
                    f"entries ({i}, {j}) and ({j}, {i}) are {e[i][j]} and"
                    f" {e[j][i]}"
                )
    if n % 2 == 1:
        raise OddSize(f"Pfaffian needs even size, got {n}")
    a = [[Fraction(x) for x in row] for row in e]
    pf = Fraction(1)
    for k in range(0, n - 1, 2):
        piv = None
        for j in range(k + 1, n):
            if a[k][j] != 0:
                piv = j
                break
        if piv is None:
            return 0
        if piv != k + 1:
            # Swap the row and the matching column; Pf changes sign.
            a[k + 1], a[piv] = a[piv], a[k + 1]
            for row in a:
                row[k + 1], row[piv] = row[piv], row[k + 1]
            pf = -pf
        p = a[k][k + 1]
        pf *= p
        for i in range(k + 2, n):
            for j in range(i + 1, n):
                a[i][j] -= (a[k][i] * a[k + 1][j] - a[k][j] * a[k + 1][i]) / p
                a[j][i] = -a[i][j]
    assert pf.denominator == 1
    return int(pf)


def smith_normal_form(m: IntMatrix) -> SnfDecomposition:
    """Smith normal form with unimodular certificates U, V.

    Elementary row/column reduction pivoting on the entry of minimal
    nonzero absolute value.  Row operations are mirrored on U, column
    operations on V, so U @ m @ V == D at every step.
    """
    nrows, ncols = m.rows, m.cols
    a = m.to_lists()
    u = IntMatrix.identity(nrows).to_lists()
    v = IntMatrix.identity(ncols).to_lists()

    def row_addmul(mat, dst, src, f):
        rd, rs = mat[dst], mat[src]
        for t in range(len(rd)):
            rd[t] += f * rs[t]

    def col_addmul(mat, dst, src, f):
        for row in mat:
            row[dst] += f * row[src]

    def row_swap(mat, i, k):
        mat[i], mat[k] = mat[k], mat[i]

    def col_swap(mat, j, k):
        for row in mat:
            row[j], row[k] = row[k], row[j]

    for t in range(min(nrows, ncols)):
        # Minimal-|entry| pivot in the trailing submatrix.
        best = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                x = a[i][j]
                if x != 0 and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        _, bi, bj = best
        if bi != t:
            row_swap(a, bi, t)
            row_swap(u, bi, t)
        if bj != t:
            col_swap(a, bj, t)
            col_swap(v, bj, t)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]

        while True:
            restart = False
            # Clear column t below the pivot.  A nonzero remainder is a
            # strictly smaller pivot candidate; swap it up and restart.
            for i in range(t + 1, nrows):
                if a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    if q:
                        row_addmul(a, i, t, -q)
                        row_addmul(u, i, t, -q)
                    if a[i][t] != 0:
                        row_swap(a, i, t)
                        row_swap(u, i, t)
                        restart = True
                        break
            if restart:
                continue
            # Clear row t right of the pivot.
            for j in range(t + 1, ncols):
                if a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    if q:
                        col_addmul(a, j, t, -q)
                        col_addmul(v, j, t, -q)
                    if a[t][j] != 0:
                        col_swap(a, j, t)
                        col_swap(v, j, t)
                        restart = True
                        break
            if restart:
                continue
            # The pivot must divide every remaining entry to make the
            # divisor chain; fold an offending row into row t and redo.
            p = a[t][t]
            offender = None
            for i in range(t + 1, nrows):
                if any(x % p for x in a[i][t + 1:]):
                    offender = i
                    break
            if offender is None:
                break
            row_addmul(a, t, offender, 1)
            row_addmul(u, t, offender, 1)

    k = min(nrows, ncols)
    divisors = tuple(a[i][i] for i in range(k))
    return SnfDecomposition(
        U=IntMatrix(u), D=IntMatrix(a), V=IntMatrix(v), divisors=divisors
    )
