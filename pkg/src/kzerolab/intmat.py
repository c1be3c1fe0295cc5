"""Exact dense integer matrices and Smith normal form.

Everything here runs on Python's arbitrary-precision integers; intermediate
entries of a Smith reduction routinely exceed 64 bits even for small inputs,
so no fixed-width arithmetic is used anywhere.  Matrices are immutable and
hashable, rows are stored densely in row-major order.

The Smith normal form returned by :func:`smith_normal_form` is canonical:
diagonal entries are non-negative, form a divisibility chain d1 | d2 | ...,
and zeros trail.  The transforms U, V are unimodular and satisfy U*A*V = D
exactly; their inverses are tracked during the reduction and returned as
well, since cokernel/kernel coordinate computations need them.
"""

from __future__ import annotations

from dataclasses import dataclass


class IntMatrix:
    """An immutable rows x cols matrix of Python ints."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows, cols, entries):
        entries = tuple(tuple(int(x) for x in row) for row in entries)
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise ValueError(
                f"entry table is not {rows}x{cols}: got "
                f"{len(entries)} rows {[len(r) for r in entries]}"
            )
        self.rows = rows
        self.cols = cols
        self._data = entries

    @classmethod
    def from_rows(cls, entries):
        entries = [list(r) for r in entries]
        rows = len(entries)
        cols = len(entries[0]) if entries else 0
        return cls(rows, cols, entries)

    @classmethod
    def zeros(cls, rows, cols):
        return cls(rows, cols, [[0] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n):
        return cls(n, n, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def row(self, i):
        return self._data[i]

    def column(self, j):
        return tuple(self._data[i][j] for i in range(self.rows))

    def tolists(self):
        return [list(r) for r in self._data]

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return (self.rows, self.cols, self._data) == (other.rows, other.cols, other._data)

    def __hash__(self):
        return hash((self.rows, self.cols, self._data))

    def __repr__(self):
        return f"IntMatrix({self.rows}x{self.cols}, {self.tolists()})"

    @property
    def shape(self):
        return (self.rows, self.cols)

    def is_zero(self):
        return all(x == 0 for row in self._data for x in row)

    def transpose(self):
        return IntMatrix(
            self.cols, self.rows,
            [[self._data[i][j] for i in range(self.rows)] for j in range(self.cols)],
        )

    def __neg__(self):
        return IntMatrix(self.rows, self.cols, [[-x for x in row] for row in self._data])

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return IntMatrix(
            self.rows, self.cols,
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self._data, other._data)],
        )

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntMatrix(self.rows, self.cols,
                             [[other * x for x in row] for row in self._data])
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        bt = other.transpose()._data
        return IntMatrix(
            self.rows, other.cols,
            [[sum(a * b for a, b in zip(row, col)) for col in bt] for row in self._data],
        )

    __rmul__ = __mul__

    def apply_to_vector(self, vec):
        """Matrix times column vector, as a tuple of ints."""
        if len(vec) != self.cols:
            raise ValueError(f"vector length {len(vec)} != cols {self.cols}")
        return tuple(sum(a * b for a, b in zip(row, vec)) for row in self._data)

    def hstack(self, other):
        if self.rows != other.rows:
            raise ValueError("row mismatch in hstack")
        return IntMatrix(self.rows, self.cols + other.cols,
                         [ra + rb for ra, rb in zip(self._data, other._data)])

    def submatrix(self, row_idx, col_idx):
        return IntMatrix(len(row_idx), len(col_idx),
                         [[self._data[i][j] for j in col_idx] for i in row_idx])

    def det(self):
        """Exact determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        m = [list(r) for r in self._data]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for i in range(k + 1, n):
                    if m[i][k] != 0:
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
                m[i][k] = 0
            prev = m[k][k]
        return sign * m[n - 1][n - 1]


@dataclass(frozen=True)
class SmithForm:
    """U * A * V = D with U, V unimodular and D canonical diagonal.

    ``diag`` lists the invariant factors d1 | d2 | ... (non-negative, zeros
    trailing, length min(rows, cols)).  ``u_inv`` and ``v_inv`` are the exact
    inverses of ``U`` and ``V``.
    """

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    u_inv: IntMatrix
    v_inv: IntMatrix
    diag: tuple

    @property
    def rank(self):
        """Number of non-zero invariant factors."""
        return sum(1 for d in self.diag if d != 0)


class _Reduction:
    """Mutable worker carrying A together with U, V and their inverses."""

    def __init__(self, a: IntMatrix):
        self.m = [list(r) for r in a.tolists()]
        self.rows = a.rows
        self.cols = a.cols
        self.u = [[1 if i == j else 0 for j in range(self.rows)] for i in range(self.rows)]
        self.ui = [row[:] for row in self.u]
        self.v = [[1 if i == j else 0 for j in range(self.cols)] for i in range(self.cols)]
        self.vi = [row[:] for row in self.v]

    # Row operations act on m and u on the left; the inverse operation is
    # applied to ui on the right (columns of ui).
    def swap_rows(self, i, j):
        if i == j:
            return
        self.m[i], self.m[j] = self.m[j], self.m[i]
        self.u[i], self.u[j] = self.u[j], self.u[i]
        for row in self.ui:
            row[i], row[j] = row[j], row[i]

    def negate_row(self, i):
        self.m[i] = [-x for x in self.m[i]]
        self.u[i] = [-x for x in self.u[i]]
        for row in self.ui:
            row[i] = -row[i]

    def addmul_row(self, i, j, c):
        """row_i += c * row_j"""
        if c == 0:
            return
        self.m[i] = [a + c * b for a, b in zip(self.m[i], self.m[j])]
        self.u[i] = [a + c * b for a, b in zip(self.u[i], self.u[j])]
        for row in self.ui:
            row[j] -= c * row[i]

    def swap_cols(self, i, j):
        if i == j:
            return
        for row in self.m:
            row[i], row[j] = row[j], row[i]
        for row in self.v:
            row[i], row[j] = row[j], row[i]
        self.vi[i], self.vi[j] = self.vi[j], self.vi[i]

    def addmul_col(self, i, j, c):
        """col_i += c * col_j"""
        if c == 0:
            return
        for row in self.m:
            row[i] += c * row[j]
        for row in self.v:
            row[i] += c * row[j]
        self.vi[j] = [a - c * b for a, b in zip(self.vi[j], self.vi[i])]

    def negate_col(self, i):
        for row in self.m:
            row[i] = -row[i]
        for row in self.v:
            row[i] = -row[i]
        self.vi[i] = [-x for x in self.vi[i]]


def _pivot_position(red, t):
    """Smallest non-zero |entry| in the t-submatrix, row-major tie break."""
    best = None
    best_val = None
    for i in range(t, red.rows):
        for j in range(t, red.cols):
            x = red.m[i][j]
            if x != 0 and (best_val is None or abs(x) < best_val):
                best = (i, j)
                best_val = abs(x)
    return best


def _clear_position(red, t):
    """Make column t and row t zero except at (t, t)."""
    while True:
        pos = _pivot_position(red, t)
        if pos is None:
            return False
        red.swap_rows(t, pos[0])
        red.swap_cols(t, pos[1])
        dirty = False
        for i in range(t + 1, red.rows):
            if red.m[i][t] != 0:
                q = red.m[i][t] // red.m[t][t]
                red.addmul_row(i, t, -q)
                if red.m[i][t] != 0:
                    dirty = True
        for j in range(t + 1, red.cols):
            if red.m[t][j] != 0:
                q = red.m[t][j] // red.m[t][t]
                red.addmul_col(j, t, -q)
                if red.m[t][j] != 0:
                    dirty = True
        if dirty:
            continue
        if all(red.m[i][t] == 0 for i in range(t + 1, red.rows)) and \
           all(red.m[t][j] == 0 for j in range(t + 1, red.cols)):
            return True


def smith_normal_form(a: IntMatrix) -> SmithForm:
    """Canonical Smith normal form of any rectangular integer matrix.

    >>> sf = smith_normal_form(IntMatrix.from_rows([[2, 4], [6, 8]]))
    >>> sf.diag
    (2, 4)
    """
    red = _Reduction(a)
    n = min(red.rows, red.cols)
    rank = 0
    for t in range(n):
        if not _clear_position(red, t):
            break
        rank += 1

    # Divisibility fixup: whenever d_t does not divide d_{t+1}, fold the next
    # diagonal entry into column t and re-eliminate.  Each pass strictly
    # reduces the product of violating pairs' gcd defects, so this terminates.
    changed = True
    while changed:
        changed = False
        for t in range(rank - 1):
            dt, dn = red.m[t][t], red.m[t + 1][t + 1]
            if dt != 0 and dn % dt != 0:
                red.addmul_col(t, t + 1, 1)
                _clear_position(red, t)
                changed = True

    for t in range(n):
        if red.m[t][t] < 0:
            red.negate_row(t)

    diag = tuple(red.m[t][t] for t in range(n))
    return SmithForm(
        U=IntMatrix.from_rows(red.u) if red.rows else IntMatrix(0, 0, []),
        D=IntMatrix(red.rows, red.cols, red.m),
        V=IntMatrix.from_rows(red.v) if red.cols else IntMatrix(0, 0, []),
        u_inv=IntMatrix.from_rows(red.ui) if red.rows else IntMatrix(0, 0, []),
        v_inv=IntMatrix.from_rows(red.vi) if red.cols else IntMatrix(0, 0, []),
        diag=diag,
    )


def kernel_basis(a: IntMatrix) -> IntMatrix:
    """Columns form a basis of the integer kernel {x : a x = 0}.

    The basis is primitive (it extends to a basis of Z^cols), which makes it
    safe to express kernel elements in these coordinates via v_inv.
    """
    sf = smith_normal_form(a)
    r = sf.rank
    idx = list(range(r, a.cols))
    return sf.V.submatrix(range(a.cols), idx)


def solve(a: IntMatrix, b) -> tuple | None:
    """One integer solution x of a x = b, or None if none exists."""
    sf = smith_normal_form(a)
    ub = sf.U.apply_to_vector(tuple(b))
    z = [0] * a.cols
    for i in range(min(a.rows, a.cols)):
        d = sf.diag[i]
        if d == 0:
            if ub[i] != 0:
                return None
        else:
            if ub[i] % d != 0:
                return None
            z[i] = ub[i] // d
    for i in range(min(a.rows, a.cols), a.rows):
        if ub[i] != 0:
            return None
    return sf.V.apply_to_vector(z)
