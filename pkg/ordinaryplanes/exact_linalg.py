"""
Exact linear algebra over the rationals

Rationals are Python Fractions (always reduced, positive denominator). Rank,
nullspace and determinant use fraction-free Bareiss elimination on rows scaled
to integers, so no precision is ever lost and intermediate entries stay small.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, List, Sequence, Tuple, Union
import logging

from .errors import DimensionMismatchError, RankDeficientError

logger = logging.getLogger('ordinaryplanes')

Rational = Fraction
Scalar = Union[int, Fraction]


def to_rational(value: Union[Scalar, str]) -> Fraction:
    """Coerce an int, Fraction or "p/q" string to a Fraction"""
    if isinstance(value, str):
        return parse_rational(value)
    return Fraction(value)


def parse_rational(text: str) -> Fraction:
    """
    Parse the "p/q" (or "p") string format

    Raises:
        ValueError: If the text is not a rational literal
    """
    text = text.strip()
    if not text:
        raise ValueError("Empty rational literal")
    return Fraction(text)


def format_rational(value: Scalar) -> str:
    """Format a rational as "p/q", or "p" when the denominator is 1"""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class Matrix:
    """
    Dense row-major matrix of Fractions

    Immutable; entries.length == rows * cols.
    """
    rows: int
    cols: int
    entries: Tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatchError(
                f"Matrix {self.rows}x{self.cols} needs {self.rows * self.cols} entries, "
                f"got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[Union[Scalar, str]]]) -> 'Matrix':
        """Build a matrix from a sequence of equal-length rows"""
        row_list = [tuple(to_rational(x) for x in row) for row in rows]
        if not row_list:
            return cls(0, 0, ())
        width = len(row_list[0])
        for row in row_list:
            if len(row) != width:
                raise DimensionMismatchError(f"Ragged rows: expected {width} columns, got {len(row)}")
        return cls(len(row_list), width, tuple(x for row in row_list for x in row))

    @classmethod
    def identity(cls, size: int) -> 'Matrix':
        return cls.from_rows([[1 if i == j else 0 for j in range(size)] for i in range(size)])

    def row(self, i: int) -> Tuple[Fraction, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> List[Tuple[Fraction, ...]]:
        return [self.row(i) for i in range(self.rows)]

    def __getitem__(self, index: Tuple[int, int]) -> Fraction:
        i, j = index
        return self.entries[i * self.cols + j]

    def transpose(self) -> 'Matrix':
        return Matrix(
            self.cols,
            self.rows,
            tuple(self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)),
        )

    def multiply(self, other: 'Matrix') -> 'Matrix':
        """Matrix product self * other"""
        if self.cols != other.rows:
            raise DimensionMismatchError(
                f"Cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        out = []
        for i in range(self.rows):
            row = self.row(i)
            for j in range(other.cols):
                out.append(sum((row[k] * other.entries[k * other.cols + j] for k in range(self.cols)), Fraction(0)))
        return Matrix(self.rows, other.cols, tuple(out))

    def apply(self, vector: Sequence[Scalar]) -> Tuple[Fraction, ...]:
        """Matrix-vector product with a column vector"""
        if len(vector) != self.cols:
            raise DimensionMismatchError(f"Vector of length {len(vector)} against {self.cols} columns")
        return tuple(
            sum((self.entries[i * self.cols + k] * vector[k] for k in range(self.cols)), Fraction(0))
            for i in range(self.rows)
        )


def integer_rows(rows: Iterable[Sequence[Scalar]]) -> List[List[int]]:
    """Scale every row by the lcm of its denominators; row space is unchanged"""
    out = []
    for row in rows:
        fracs = [Fraction(x) for x in row]
        scale = lcm(*(f.denominator for f in fracs)) if fracs else 1
        out.append([int(f * scale) for f in fracs])
    return out


def bareiss_echelon(rows: List[List[int]]) -> Tuple[List[List[int]], List[int], int]:
    """
    Fraction-free row echelon form

    Works in place on a copy of integer rows. Every entry stays an integer because
    each division by the previous pivot is exact.

    Returns:
        Tuple of (echelon rows, pivot columns, number of row swaps)
    """
    a = [list(r) for r in rows]
    n_rows = len(a)
    n_cols = len(a[0]) if a else 0
    pivots: List[int] = []
    swaps = 0
    prev = 1
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        pivot_row = next((i for i in range(r, n_rows) if a[i][c] != 0), None)
        if pivot_row is None:
            continue
        if pivot_row != r:
            a[r], a[pivot_row] = a[pivot_row], a[r]
            swaps += 1
        p = a[r][c]
        for i in range(r + 1, n_rows):
            f = a[i][c]
            row_i = a[i]
            row_r = a[r]
            for j in range(c + 1, n_cols):
                row_i[j] = (p * row_i[j] - f * row_r[j]) // prev
            row_i[c] = 0
        prev = p
        pivots.append(c)
        r += 1
    return a, pivots, swaps


def rank_of_rows(rows: Sequence[Sequence[Scalar]]) -> int:
    """Exact rank of a list of rows"""
    if not rows:
        return 0
    _, pivots, _ = bareiss_echelon(integer_rows(rows))
    return len(pivots)


def rank(m: Matrix) -> int:
    """
    Exact rank of a nonempty matrix over the rationals

    Args:
        m: Matrix with at least one row and one column

    Returns:
        Rank as an integer
    """
    if m.rows == 0 or m.cols == 0:
        raise ValueError("rank of an empty matrix is undefined")
    return rank_of_rows(m.to_rows())


def nullspace_of_rows(rows: Sequence[Sequence[Scalar]]) -> Tuple[Fraction, ...]:
    """
    Nonzero kernel vector of k rows in k+1 columns of rank k

    Raises:
        RankDeficientError: If the rows have rank below k
    """
    k = len(rows)
    width = len(rows[0]) if rows else 0
    if width != k + 1:
        raise DimensionMismatchError(f"Expected {k + 1} columns for {k} rows, got {width}")
    echelon, pivots, _ = bareiss_echelon(integer_rows(rows))
    if len(pivots) < k:
        raise RankDeficientError(f"Rows have rank {len(pivots)} < {k}")
    free = next(c for c in range(width) if c not in pivots)
    x = [Fraction(0)] * width
    x[free] = Fraction(1)
    for r in range(k - 1, -1, -1):
        pc = pivots[r]
        row = echelon[r]
        s = sum((row[j] * x[j] for j in range(pc + 1, width)), Fraction(0))
        x[pc] = -s / row[pc]
    return tuple(x)


def nullspace_vector(m: Matrix) -> Tuple[Fraction, ...]:
    """
    Kernel vector of a d x (d+1) matrix of rank d

    The vector is returned unnormalized; canonical forms are the geometry
    module's job.

    Raises:
        RankDeficientError: If rank(m) < d
    """
    return nullspace_of_rows(m.to_rows())


def determinant(m: Matrix) -> Fraction:
    """Exact determinant of a square matrix by Bareiss elimination"""
    if m.rows != m.cols:
        raise DimensionMismatchError(f"Determinant needs a square matrix, got {m.rows}x{m.cols}")
    if m.rows == 0:
        return Fraction(1)
    rows = m.to_rows()
    scales = [lcm(*(x.denominator for x in row)) for row in rows]
    echelon, pivots, swaps = bareiss_echelon(integer_rows(rows))
    if len(pivots) < m.rows:
        return Fraction(0)
    det = Fraction(echelon[-1][-1])
    for s in scales:
        det /= s
    return -det if swaps % 2 else det
