"""Small exact linear algebra kit over a FieldSpec.

Deterministic throughout: elimination always picks the smallest-index
nonzero pivot, so bases computed here are reproducible across runs.
Shapes with zero rows or columns are legal everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .fields import FieldSpec


@dataclass(frozen=True)
class Matrix:
    field: FieldSpec
    rows: int
    cols: int
    entries: tuple  # tuple of row tuples

    def __post_init__(self):
        if len(self.entries) != self.rows:
            raise ValueError("row count mismatch")
        for r in self.entries:
            if len(r) != self.cols:
                raise ValueError("column count mismatch")

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def col(self, j: int) -> tuple:
        return tuple(self.entries[i][j] for i in range(self.rows))

    def is_zero(self) -> bool:
        return all(not x for r in self.entries for x in r)

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self.cols, self.rows,
                      tuple(self.col(j) for j in range(self.cols)))

    def __add__(self, other: "Matrix") -> "Matrix":
        _check_same_shape(self, other)
        return Matrix(self.field, self.rows, self.cols, tuple(
            tuple(a + b for a, b in zip(ra, rb))
            for ra, rb in zip(self.entries, other.entries)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        _check_same_shape(self, other)
        return Matrix(self.field, self.rows, self.cols, tuple(
            tuple(a - b for a, b in zip(ra, rb))
            for ra, rb in zip(self.entries, other.entries)))

    def __neg__(self) -> "Matrix":
        return Matrix(self.field, self.rows, self.cols, tuple(
            tuple(-a for a in r) for r in self.entries))

    def __mul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} * "
                             f"{other.rows}x{other.cols}")
        z = self.field.zero()
        out = []
        for i in range(self.rows):
            ri = self.entries[i]
            row = []
            for j in range(other.cols):
                acc = z
                for k in range(self.cols):
                    if ri[k]:
                        acc = acc + ri[k] * other.entries[k][j]
                row.append(acc)
            out.append(tuple(row))
        return Matrix(self.field, self.rows, other.cols, tuple(out))

    def scale(self, c) -> "Matrix":
        return Matrix(self.field, self.rows, self.cols, tuple(
            tuple(c * a for a in r) for r in self.entries))

    def to_lists(self) -> list:
        return [list(r) for r in self.entries]


def _check_same_shape(a: Matrix, b: Matrix):
    if a.rows != b.rows or a.cols != b.cols:
        raise ValueError(f"shape mismatch {a.rows}x{a.cols} vs {b.rows}x{b.cols}")


def from_rows(field: FieldSpec, rows: Sequence[Sequence], cols: int | None = None) -> Matrix:
    rows = [tuple(r) for r in rows]
    if cols is None:
        if not rows:
            raise ValueError("column count required for a matrix with no rows")
        cols = len(rows[0])
    return Matrix(field, len(rows), cols, tuple(rows))


def zeros(field: FieldSpec, rows: int, cols: int) -> Matrix:
    z = field.zero()
    return Matrix(field, rows, cols, tuple(tuple(z for _ in range(cols))
                                           for _ in range(rows)))


def identity(field: FieldSpec, n: int) -> Matrix:
    z, o = field.zero(), field.one()
    return Matrix(field, n, n, tuple(
        tuple(o if i == j else z for j in range(n)) for i in range(n)))


def from_cols(field: FieldSpec, cols_list: Sequence[Sequence], rows: int) -> Matrix:
    if cols_list:
        for c in cols_list:
            if len(c) != rows:
                raise ValueError("column length mismatch")
    return Matrix(field, rows, len(cols_list), tuple(
        tuple(c[i] for c in cols_list) for i in range(rows)))


def hstack(field: FieldSpec, mats: Sequence[Matrix], rows: int | None = None) -> Matrix:
    if not mats:
        if rows is None:
            raise ValueError("row count required for empty hstack")
        return zeros(field, rows, 0)
    r = mats[0].rows
    for m in mats:
        if m.rows != r:
            raise ValueError("hstack row mismatch")
    return Matrix(field, r, sum(m.cols for m in mats), tuple(
        tuple(x for m in mats for x in m.entries[i]) for i in range(r)))


def vstack(field: FieldSpec, mats: Sequence[Matrix], cols: int | None = None) -> Matrix:
    if not mats:
        if cols is None:
            raise ValueError("column count required for empty vstack")
        return zeros(field, 0, cols)
    c = mats[0].cols
    for m in mats:
        if m.cols != c:
            raise ValueError("vstack column mismatch")
    return Matrix(mats[0].field, sum(m.rows for m in mats), c,
                  tuple(r for m in mats for r in m.entries))


def block(field: FieldSpec, grid: Sequence[Sequence[Matrix]]) -> Matrix:
    return vstack(field, [hstack(field, list(row)) for row in grid])


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form; returns (R, pivot column indices).

    Pivot choice: for each column left to right, the first row (smallest
    index) with a nonzero entry among the unused rows.
    """
    rows = [list(r) for r in m.entries]
    pivots: list[int] = []
    pr = 0
    for c in range(m.cols):
        sel = None
        for r in range(pr, m.rows):
            if rows[r][c]:
                sel = r
                break
        if sel is None:
            continue
        rows[pr], rows[sel] = rows[sel], rows[pr]
        inv = m.field.one() / rows[pr][c]
        rows[pr] = [inv * x for x in rows[pr]]
        for r in range(m.rows):
            if r != pr and rows[r][c]:
                f = rows[r][c]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[pr])]
        pivots.append(c)
        pr += 1
        if pr == m.rows:
            break
    return Matrix(m.field, m.rows, m.cols, tuple(tuple(r) for r in rows)), pivots


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def nullspace(m: Matrix) -> Matrix:
    """Columns form a basis of {x : m @ x = 0}; deterministic echelon basis."""
    r, pivots = rref(m)
    pivset = set(pivots)
    free = [c for c in range(m.cols) if c not in pivset]
    z, o = m.field.zero(), m.field.one()
    cols = []
    for fc in free:
        v = [z] * m.cols
        v[fc] = o
        for pi, pc in enumerate(pivots):
            v[pc] = -r.entries[pi][fc]
        cols.append(v)
    return from_cols(m.field, cols, m.cols)


def column_space(m: Matrix) -> Matrix:
    """Columns form a basis of the column space: the pivot columns of m."""
    _, pivots = rref(m)
    return from_cols(m.field, [m.col(c) for c in pivots], m.rows)


def solve(a: Matrix, b: Matrix) -> Matrix | None:
    """Solve a @ x = b column-wise; None if inconsistent.

    When the system is underdetermined, free variables are set to zero,
    so the solution is the deterministic echelon one.
    """
    if a.rows != b.rows:
        raise ValueError("solve shape mismatch")
    aug = hstack(a.field, [a, b])
    r, pivots = rref(aug)
    for pi, pc in enumerate(pivots):
        if pc >= a.cols:
            return None
    z = a.field.zero()
    cols = []
    for j in range(b.cols):
        x = [z] * a.cols
        for pi, pc in enumerate(pivots):
            x[pc] = r.entries[pi][a.cols + j]
        cols.append(x)
    return from_cols(a.field, cols, a.cols)


def inverse(m: Matrix) -> Matrix | None:
    if m.rows != m.cols:
        return None
    x = solve(m, identity(m.field, m.rows))
    if x is None:
        return None
    # solve() checked consistency; verify rank by round trip
    if (m * x).entries != identity(m.field, m.rows).entries:
        return None
    return x


def extend_basis(inside: Matrix, ambient: Matrix) -> Matrix:
    """Extend the columns of `inside` to a basis of the column span of `ambient`.

    Returns the added columns (chosen greedily from `ambient`'s columns,
    smallest index first).  `inside` columns must be independent and lie
    in the span of `ambient`.
    """
    field = inside.field
    current = [list(inside.col(j)) for j in range(inside.cols)]
    added = []
    target = rank(ambient)
    have = rank(inside)
    if have != inside.cols:
        raise ValueError("extend_basis: 'inside' columns are dependent")
    for j in range(ambient.cols):
        if have == target:
            break
        cand = list(ambient.col(j))
        test = from_cols(field, current + added + [cand], ambient.rows)
        if rank(test) > have + len(added):
            added.append(cand)
    if have + len(added) != target:
        raise ValueError("extend_basis failed to reach target rank")
    return from_cols(field, added, ambient.rows)


def det(m: Matrix):
    """Determinant by fraction-free-ish elimination (fields, so plain gauss)."""
    if m.rows != m.cols:
        raise ValueError("det of non-square matrix")
    n = m.rows
    if n == 0:
        return m.field.one()
    rows = [list(r) for r in m.entries]
    sign = 1
    acc = m.field.one()
    for c in range(n):
        sel = None
        for r in range(c, n):
            if rows[r][c]:
                sel = r
                break
        if sel is None:
            return m.field.zero()
        if sel != c:
            rows[c], rows[sel] = rows[sel], rows[c]
            sign = -sign
        acc = acc * rows[c][c]
        inv = m.field.one() / rows[c][c]
        for r in range(c + 1, n):
            if rows[r][c]:
                f = rows[r][c] * inv
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[c])]
    return acc if sign == 1 else -acc


def map_entries(m: Matrix, f: Callable) -> Matrix:
    return Matrix(m.field, m.rows, m.cols, tuple(
        tuple(f(x) for x in r) for r in m.entries))
