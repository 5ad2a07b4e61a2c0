"""Dense exact matrices over a coefficient domain.

Entries are stored row-major as plain lists.  Columns are images of basis
vectors: ``M[r][c]`` is the coefficient of basis vector ``r`` in the image
of basis vector ``c``.  Products skip zero entries, which matters for the
sparse generator matrices used throughout.
"""

from __future__ import annotations

from typing import Sequence

from .coeff import Domain, NotInvertible

Vector = list


class Matrix:
    __slots__ = ("domain", "rows", "nrows", "ncols")

    def __init__(self, domain: Domain, rows: Sequence[Sequence], ncols: int | None = None):
        self.domain = domain
        self.rows = [list(r) for r in rows]
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else (ncols or 0)
        for r in self.rows:
            if len(r) != self.ncols:
                raise ValueError("ragged matrix")

    # -- constructors ---------------------------------------------------
    @classmethod
    def zeros(cls, domain: Domain, nrows: int, ncols: int | None = None) -> Matrix:
        ncols = nrows if ncols is None else ncols
        z = domain.zero
        return cls(domain, [[z] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, domain: Domain, n: int) -> Matrix:
        m = cls.zeros(domain, n)
        one = domain.one
        for i in range(n):
            m.rows[i][i] = one
        return m

    @classmethod
    def from_columns(cls, domain: Domain, columns: Sequence[Sequence]) -> Matrix:
        if not columns:
            return cls(domain, [])
        return cls(domain, [list(r) for r in zip(*columns)])

    # -- access ---------------------------------------------------------
    def __getitem__(self, idx):
        r, c = idx
        return self.rows[r][c]

    def __setitem__(self, idx, value):
        r, c = idx
        self.rows[r][c] = value

    def column(self, j: int) -> Vector:
        return [row[j] for row in self.rows]

    def columns(self) -> list[Vector]:
        return [list(c) for c in zip(*self.rows)]

    def set_column(self, j: int, vec: Sequence) -> None:
        for row, x in zip(self.rows, vec):
            row[j] = x

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> Matrix:
        return Matrix(self.domain, [[self.rows[r][c] for c in cols] for r in rows], len(cols))

    def copy(self) -> Matrix:
        return Matrix(self.domain, self.rows, self.ncols)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other: Matrix) -> Matrix:
        self._same_shape(other)
        return Matrix(self.domain, [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def __sub__(self, other: Matrix) -> Matrix:
        self._same_shape(other)
        return Matrix(self.domain, [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def __neg__(self) -> Matrix:
        return Matrix(self.domain, [[-a for a in r] for r in self.rows], self.ncols)

    def scale(self, c) -> Matrix:
        if not c:
            return Matrix.zeros(self.domain, self.nrows, self.ncols)
        return Matrix(self.domain, [[c * a if a else a for a in r] for r in self.rows], self.ncols)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            return self._matmul(other)
        return self.apply(other)

    def apply(self, vec: Sequence) -> Vector:
        if len(vec) != self.ncols:
            raise ValueError("dimension mismatch")
        zero = self.domain.zero
        support = [(j, x) for j, x in enumerate(vec) if x]
        out = []
        for row in self.rows:
            acc = zero
            for j, x in support:
                a = row[j]
                if a:
                    acc = acc + a * x
            out.append(acc)
        return out

    def _matmul(self, other: Matrix) -> Matrix:
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        if self.domain is not other.domain and self.domain != other.domain:
            raise ValueError("matrices over different domains")
        fast = self.domain.matmul_rows(self.rows, other.rows)
        if fast is not None:
            return Matrix(self.domain, fast, other.ncols)
        zero = self.domain.zero
        n = other.ncols
        other_nz = [[(j, b) for j, b in enumerate(row) if b] for row in other.rows]
        out = []
        for row in self.rows:
            acc: dict[int, object] = {}
            for l, a in enumerate(row):
                if not a:
                    continue
                for j, b in other_nz[l]:
                    prev = acc.get(j)
                    acc[j] = a * b if prev is None else prev + a * b
            out.append([acc.get(j, zero) for j in range(n)])
        return Matrix(self.domain, out, n)

    def __pow__(self, n: int) -> Matrix:
        if n < 0:
            return self.inverse() ** (-n)
        result = Matrix.identity(self.domain, self.nrows)
        base = self
        while n:
            if n & 1:
                result = result @ base
            n >>= 1
            if n:
                base = base @ base
        return result

    def kron(self, other: Matrix) -> Matrix:
        rows = []
        for ra in self.rows:
            for rb in other.rows:
                rows.append([a * b if a and b else self.domain.zero for a in ra for b in rb])
        return Matrix(self.domain, rows, self.ncols * other.ncols)

    def transpose(self) -> Matrix:
        return Matrix(self.domain, [list(c) for c in zip(*self.rows)], self.nrows)

    # -- predicates -----------------------------------------------------
    def is_zero(self) -> bool:
        return not any(x for row in self.rows for x in row)

    def is_identity(self) -> bool:
        return self == Matrix.identity(self.domain, self.nrows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix) or self.shape != other.shape:
            return False
        # elements are kept in canonical form, so == is exact equality
        return all(a == b for r, s in zip(self.rows, other.rows) for a, b in zip(r, s))

    __hash__ = None

    def _same_shape(self, other: Matrix) -> None:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    # -- elimination ----------------------------------------------------
    def solve(self, rhs: Sequence) -> Vector:
        """Solve ``self @ x = rhs`` for square invertible ``self``."""
        aug = Matrix(self.domain, [r + [b] for r, b in zip(self.rows, rhs)])
        _gauss_jordan(aug, self.ncols)
        return [aug.rows[i][self.ncols] for i in range(self.nrows)]

    def inverse(self) -> Matrix:
        n = self.nrows
        if n != self.ncols:
            raise ValueError("not square")
        ident = Matrix.identity(self.domain, n)
        aug = Matrix(self.domain, [r + s for r, s in zip(self.rows, ident.rows)])
        _gauss_jordan(aug, n)
        return aug.submatrix(range(n), range(n, 2 * n))

    def rank(self) -> int:
        m = self.copy()
        return _row_reduce(m, m.ncols)

    def to_strings(self) -> list[list[str]]:
        s = self.domain.to_str
        return [[s(x) for x in row] for row in self.rows]

    def __repr__(self):
        return f"Matrix({self.domain!r}, {self.to_strings()!r})"


def _row_reduce(m: Matrix, ncols: int) -> int:
    rows = m.rows
    inv = m.domain.inv
    rank = 0
    for c in range(ncols):
        pivot = next((r for r in range(rank, m.nrows) if rows[r][c]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        p_inv = inv(rows[rank][c])
        rows[rank] = [x * p_inv if x else x for x in rows[rank]]
        prow = rows[rank]
        for r in range(m.nrows):
            if r != rank and rows[r][c]:
                f = rows[r][c]
                rows[r] = [x - f * y if y else x for x, y in zip(rows[r], prow)]
        rank += 1
    return rank


def _gauss_jordan(aug: Matrix, n: int) -> None:
    if _row_reduce(aug, n) < n:
        raise NotInvertible("singular matrix")


# -- vector helpers -----------------------------------------------------------

def unit_vector(domain: Domain, n: int, i: int) -> Vector:
    v = [domain.zero] * n
    v[i] = domain.one
    return v


def vec_add(a: Sequence, b: Sequence) -> Vector:
    return [x + y for x, y in zip(a, b)]


def vec_sub(a: Sequence, b: Sequence) -> Vector:
    return [x - y for x, y in zip(a, b)]


def vec_scale(c, a: Sequence) -> Vector:
    return [c * x if x else x for x in a]


def vec_is_zero(a: Sequence) -> bool:
    return not any(a)


def vec_equal(domain: Domain, a: Sequence, b: Sequence) -> bool:
    return len(a) == len(b) and all(domain.equal(x, y) for x, y in zip(a, b))


def lincomb(domain: Domain, terms, n: int) -> Vector:
    """Sum of ``c * vec`` over ``(c, vec)`` pairs."""
    out = [domain.zero] * n
    for c, vec in terms:
        if not c:
            continue
        for i, x in enumerate(vec):
            if x:
                out[i] = out[i] + c * x
    return out
