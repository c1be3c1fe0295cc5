"""Exact linear algebra over Q and prime fields.

Internal helper behind field-coefficient homology.  Vectors are tuples of
field elements, matrices lists of row tuples.  Rationals use
:class:`fractions.Fraction`; F_p uses ints in [0, p).
"""

from __future__ import annotations

from fractions import Fraction


class Rationals:
    name = "Q"

    @staticmethod
    def of_int(n):
        return Fraction(n)

    zero = Fraction(0)
    one = Fraction(1)

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def inv(a):
        return 1 / a


class PrimeField:
    def __init__(self, p):
        self.p = p
        self.name = f"F{p}"
        self.zero = 0
        self.one = 1 % p

    def of_int(self, n):
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        return pow(a, -1, self.p)


def matrix_of_ints(field, int_rows):
    return [tuple(field.of_int(x) for x in row) for row in int_rows]


def rref(field, rows):
    """Reduced row echelon form; returns (rows, pivot column list)."""
    rows = [list(r) for r in rows]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, nrows):
            if rows[i][c] != field.zero:
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = field.inv(rows[r][c])
        rows[r] = [field.mul(inv, x) for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != field.zero:
                f = rows[i][c]
                rows[i] = [field.sub(x, field.mul(f, y))
                           for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return [tuple(row) for row in rows[:r]], pivots


def rank(field, rows):
    return len(rref(field, rows)[1])


def kernel_basis(field, rows, ncols):
    """Basis of {x : M x = 0} for M given by ``rows`` with ``ncols`` columns."""
    red, pivots = rref(field, rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [field.zero] * ncols
        v[fcol] = field.one
        for row, p in zip(red, pivots):
            v[p] = field.sub(field.zero, row[fcol])
        basis.append(tuple(v))
    return basis


def solve(field, rows, ncols, b):
    """One solution of M x = b, or None."""
    aug = [tuple(row) + (bb,) for row, bb in zip(rows, b)]
    red, pivots = rref(field, aug) if aug else ([], [])
    if ncols in pivots:
        return None
    x = [field.zero] * ncols
    for row, p in zip(red, pivots):
        x[p] = row[-1]
    return tuple(x)


class QuotientPresentation:
    """F^n modulo the span of given vectors, with canonical coordinates."""

    def __init__(self, field, n, spanning):
        self.field = field
        self.n = n
        self._red, self._pivots = rref(field, list(spanning)) if spanning else ([], [])
        self._free = [c for c in range(n) if c not in self._pivots]
        self.dim = len(self._free)

    def coords(self, vec):
        v = list(vec)
        for row, p in zip(self._red, self._pivots):
            f = v[p]
            if f != self.field.zero:
                v = [self.field.sub(x, self.field.mul(f, y))
                     for x, y in zip(v, row)]
        return tuple(v[c] for c in self._free)

    def representative(self, k):
        v = [self.field.zero] * self.n
        v[self._free[k]] = self.field.one
        return tuple(v)
