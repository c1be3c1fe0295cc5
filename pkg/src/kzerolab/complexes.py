"""Bounded and n-periodic chain complexes of finite-rank free modules.

Homological conventions throughout: the differential in degree i is a map
d_i : C_i -> C_{i-1}; in the periodic case degrees are residues mod n and
d_0 lands in C_{n-1}.  Differential matrices always have integer entries;
over F_p they are read mod p, over Q as integer-entried rational matrices.

Homology is returned in invariant-factor canonical form; over a field the
convention is torsion-free with free_rank equal to the dimension.  The
class map ``psi_class`` of an even-periodic complex is the alternating sum
of free ranks over one period, matching the integer image in K0 of the
ground ring; odd periods are rejected rather than silently computed.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import fieldlin
from .abgroup import CokernelPresentation, FinAbGroup
from .errors import ChainMapError, GradingError, InputError, PeriodError
from .intmat import IntMatrix, smith_normal_form


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class GroundRing:
    """Z, Q, or F_p."""

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind not in ("Z", "Q", "Fp"):
            raise InputError(f"unknown ground ring kind {self.kind!r}")
        if self.kind == "Fp":
            if self.p is None or not _is_prime(self.p):
                raise InputError(f"{self.p} is not prime")
        elif self.p is not None:
            raise InputError("p only makes sense for prime fields")

    @classmethod
    def Z(cls):
        return cls("Z")

    @classmethod
    def Q(cls):
        return cls("Q")

    @classmethod
    def Fp(cls, p):
        return cls("Fp", p)

    @property
    def is_field(self):
        return self.kind != "Z"

    def field(self):
        if self.kind == "Q":
            return fieldlin.Rationals
        if self.kind == "Fp":
            return fieldlin.PrimeField(self.p)
        return None

    def matrix_is_zero(self, m: IntMatrix) -> bool:
        if self.kind == "Fp":
            return all(x % self.p == 0 for row in m.tolists() for x in row)
        return m.is_zero()

    def __str__(self):
        return "Z" if self.kind == "Z" else ("Q" if self.kind == "Q" else f"F{self.p}")


@dataclass(frozen=True)
class Bounded:
    lo: int
    hi: int  # hi = lo - 1 encodes an empty complex

    def __post_init__(self):
        if self.hi < self.lo - 1:
            raise InputError(f"bad degree range [{self.lo}, {self.hi}]")


@dataclass(frozen=True)
class Periodic:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise InputError(f"period {self.n} < 1")


class Complex:
    """A chain complex with explicit finite support or periodic grading."""

    def __init__(self, ring: GroundRing, grading, ranks: dict, differentials: dict,
                 _skip_validation=False):
        self.ring = ring
        self.grading = grading
        if isinstance(grading, Bounded):
            for i in ranks:
                if not grading.lo <= i <= grading.hi:
                    raise InputError(f"rank given in degree {i} outside range")
        elif isinstance(grading, Periodic):
            for i in ranks:
                if not 0 <= i < grading.n:
                    raise InputError(f"periodic degree {i} outside 0..{grading.n - 1}")
        else:
            raise InputError("grading must be Bounded or Periodic")
        if any(r < 0 for r in ranks.values()):
            raise InputError("negative rank")
        self._ranks = {i: r for i, r in ranks.items() if r > 0}
        self._diffs = {}
        for i, m in differentials.items():
            want = (self.rank(i - 1), self.rank(i))
            if m.shape != want:
                raise InputError(
                    f"differential in degree {i} has shape {m.shape}, expected {want}")
            if not m.is_zero():
                self._diffs[self._key(i)] = m
        if not _skip_validation:
            self._check_d_squared()

    def _key(self, i):
        if isinstance(self.grading, Periodic):
            return i % self.grading.n
        return i

    def rank(self, i) -> int:
        return self._ranks.get(self._key(i), 0)

    def differential(self, i) -> IntMatrix:
        m = self._diffs.get(self._key(i))
        if m is None:
            return IntMatrix.zeros(self.rank(i - 1), self.rank(i))
        return m

    @property
    def is_periodic(self):
        return isinstance(self.grading, Periodic)

    def degrees(self):
        """Degrees to iterate over: the support range, or one full period."""
        if self.is_periodic:
            return range(self.grading.n)
        return range(self.grading.lo, self.grading.hi + 1)

    def _check_d_squared(self):
        for i in self.degrees():
            d0 = self.differential(i)
            d1 = self.differential(i + 1)
            if d0.cols and d1.cols:
                if not self.ring.matrix_is_zero(d0 * d1):
                    raise InputError(f"d_{i} o d_{i + 1} != 0")

    def total_rank(self):
        return sum(self._ranks.values())

    def __eq__(self, other):
        if not isinstance(other, Complex):
            return NotImplemented
        return (self.ring, self.grading, self._ranks, self._diffs) == \
            (other.ring, other.grading, other._ranks, other._diffs)

    def __repr__(self):
        g = self.grading
        return f"Complex({self.ring}, {g}, ranks={self._ranks})"


def bounded_complex(ring, ranks: dict, differentials: dict) -> Complex:
    """Bounded complex with the degree range inferred from the rank support."""
    if ranks:
        lo, hi = min(ranks), max(ranks)
    else:
        lo, hi = 0, -1
    return Complex(ring, Bounded(lo, hi), ranks, differentials)


def periodic_complex(ring, n, ranks: dict, differentials: dict) -> Complex:
    return Complex(ring, Periodic(n), ranks, differentials)


class HomologyData:
    """Homology of one degree together with the projection to coordinates.

    ``group`` is canonical; ``orders`` gives, per generator, its order in
    the group (0 meaning infinite; over a field every generator has "order
    0" and coordinates are field elements).  ``project`` maps a cycle in
    C_i to canonical coordinates; ``rep`` lifts a generator back to C_i.
    """

    def __init__(self, ring, d_out: IntMatrix, d_in: IntMatrix):
        self.ring = ring
        if ring.is_field:
            self._init_field(ring.field(), d_out, d_in)
        else:
            self._init_z(d_out, d_in)

    def _init_z(self, d_out, d_in):
        sf = smith_normal_form(d_out)
        r = sf.rank
        m = d_out.cols
        self._r = r
        self._m = m
        self._K = sf.V.submatrix(range(m), range(r, m))
        self._v_inv = sf.v_inv
        y = sf.v_inv * d_in
        for i in range(r):
            for j in range(d_in.cols):
                if y[i, j] != 0:
                    raise InputError("image of incoming differential is not in the kernel")
        w = y.submatrix(range(r, m), range(d_in.cols))
        self._pres = CokernelPresentation(m - r, w)
        self.group = self._pres.group
        self.orders = self._pres.orders
        self.ngens = self._pres.ngens
        self._field = None

    def _init_field(self, field, d_out, d_in):
        self._field = field
        m = d_out.cols
        self._m = m
        rows_out = fieldlin.matrix_of_ints(field, d_out.tolists())
        kbasis = fieldlin.kernel_basis(field, rows_out, m)
        self._kmat_rows = [tuple(kb[i] for kb in kbasis) for i in range(m)]
        k = len(kbasis)
        span = []
        for j in range(d_in.cols):
            col = [field.of_int(x) for x in d_in.column(j)]
            w = fieldlin.solve(field, self._kmat_rows, k, col)
            if w is None:
                raise InputError("image of incoming differential is not in the kernel")
            span.append(w)
        self._kbasis = kbasis
        self._pres = fieldlin.QuotientPresentation(field, k, span)
        self.group = FinAbGroup.free(self._pres.dim)
        self.orders = (0,) * self._pres.dim
        self.ngens = self._pres.dim

    def kernel_coords(self, vec):
        if self._field is None:
            y = self._v_inv.apply_to_vector(tuple(vec))
            if any(y[i] != 0 for i in range(self._r)):
                raise InputError("vector is not a cycle")
            return y[self._r:]
        f = self._field
        v = tuple(x if not isinstance(x, int) else f.of_int(x) for x in vec)
        w = fieldlin.solve(f, self._kmat_rows, len(self._kbasis), v)
        if w is None:
            raise InputError("vector is not a cycle")
        return w

    def project(self, vec):
        """Canonical coordinates of the homology class of a cycle."""
        return self._pres.coords(self.kernel_coords(vec))

    def reduce(self, coords):
        if self._field is None:
            return self._pres.reduce(coords)
        return tuple(coords)

    def rep(self, k):
        """A cycle in C_i representing the k-th generator."""
        if self._field is None:
            return self._K.apply_to_vector(self._pres.representative(k))
        rc = self._pres.representative(k)
        f = self._field
        out = [f.zero] * self._m
        for t, c in enumerate(rc):
            if c != f.zero:
                kb = self._kbasis[t]
                out = [f.add(a, f.mul(c, b)) for a, b in zip(out, kb)]
        return tuple(out)


def homology_data(c: Complex, i) -> HomologyData:
    return HomologyData(c.ring, c.differential(i), c.differential(i + 1))


def homology(c: Complex, i) -> FinAbGroup:
    """H_i = ker d_i / im d_{i+1} in canonical form.

    >>> cx = bounded_complex(GroundRing.Z(), {0: 1, 1: 1},
    ...                      {1: IntMatrix.from_rows([[2]])})
    >>> str(homology(cx, 0)), str(homology(cx, 1))
    ('Z/2', '0')
    """
    if c.rank(i) == 0:
        return FinAbGroup.zero()
    return homology_data(c, i).group


def euler_characteristic(c: Complex) -> int:
    if c.is_periodic:
        raise GradingError("Euler characteristic needs a bounded complex")
    return sum((-1) ** i * c.rank(i) for i in c.degrees())


def psi_class(c: Complex) -> int:
    """Alternating sum of homology free ranks over one even period."""
    if not c.is_periodic:
        raise GradingError("psi is defined on periodic complexes; fold first")
    n = c.grading.n
    if n % 2 != 0:
        raise PeriodError(f"period must be even, got {n}")
    return sum((-1) ** i * homology(c, i).free_rank for i in range(n))


def fold(c: Complex, n: int) -> Complex:
    """Collapse a bounded complex to period n, summing degrees mod n.

    Summands of each residue class are ordered by increasing degree and the
    folded differential is block diagonal in that ordering.
    """
    if c.is_periodic:
        raise GradingError("fold takes a bounded complex")
    if n < 1 or n % 2 != 0:
        raise PeriodError(f"period must be even and positive, got {n}")
    support = [i for i in c.degrees() if c.rank(i) > 0]
    classes = {j: [i for i in support if i % n == j] for j in range(n)}
    ranks = {j: sum(c.rank(i) for i in classes[j]) for j in range(n)}
    diffs = {}
    for j in range(n):
        rows_cls = classes[(j - 1) % n]
        cols_cls = classes[j]
        if not rows_cls or not cols_cls:
            continue
        row_offsets = {}
        off = 0
        for i in rows_cls:
            row_offsets[i] = off
            off += c.rank(i)
        total_rows = off
        col_off = 0
        block = [[0] * sum(c.rank(i) for i in cols_cls) for _ in range(total_rows)]
        for i in cols_cls:
            if i - 1 in row_offsets:
                d = c.differential(i)
                r0 = row_offsets[i - 1]
                for a in range(d.rows):
                    for b in range(d.cols):
                        block[r0 + a][col_off + b] = d[a, b]
            col_off += c.rank(i)
        m = IntMatrix(total_rows, col_off, block)
        if not m.is_zero():
            diffs[j] = m
    return Complex(c.ring, Periodic(n), ranks, diffs)


def shift(c: Complex, s: int) -> Complex:
    """Translate degrees by s; differentials pick up a uniform (-1)^s."""
    sign = -1 if s % 2 else 1
    if c.is_periodic:
        n = c.grading.n
        ranks = {(i + s) % n: c.rank(i) for i in range(n)}
        diffs = {}
        for i in range(n):
            d = c.differential(i)
            if not d.is_zero():
                diffs[(i + s) % n] = sign * d
        return Complex(c.ring, Periodic(n), ranks, diffs)
    ranks = {i + s: r for i, r in c._ranks.items()}
    diffs = {}
    for i in c.degrees():
        d = c.differential(i)
        if not d.is_zero():
            diffs[i + s] = sign * d
    if not ranks:
        return Complex(c.ring, c.grading, {}, {})
    return Complex(c.ring, Bounded(min(ranks), max(ranks)), ranks, diffs)


class ChainMap:
    """Degreewise matrices f_i : A_i -> B_i commuting with the differentials."""

    def __init__(self, source: Complex, target: Complex, components: dict):
        if source.ring != target.ring:
            raise InputError("chain map between complexes over different rings")
        if source.is_periodic != target.is_periodic:
            raise InputError("cannot mix bounded and periodic complexes")
        if source.is_periodic and source.grading.n != target.grading.n:
            raise InputError("period mismatch")
        self.source = source
        self.target = target
        self._comps = {}
        for i, m in components.items():
            want = (target.rank(i), source.rank(i))
            if m.shape != want:
                raise InputError(f"component {i} has shape {m.shape}, expected {want}")
            if not m.is_zero():
                self._comps[source._key(i)] = m
        self._check_commutes()

    def component(self, i) -> IntMatrix:
        m = self._comps.get(self.source._key(i))
        if m is None:
            return IntMatrix.zeros(self.target.rank(i), self.source.rank(i))
        return m

    def _degrees(self):
        if self.source.is_periodic:
            return range(self.source.grading.n)
        degs = set(self.source.degrees()) | set(self.target.degrees())
        return sorted(degs) if degs else []

    def _check_commutes(self):
        ring = self.source.ring
        for i in self._degrees():
            lhs = self.target.differential(i) * self.component(i)
            rhs = self.component(i - 1) * self.source.differential(i)
            if not ring.matrix_is_zero(lhs - rhs):
                raise ChainMapError(
                    f"not a chain map: fails to commute in degree {i}",
                    witness_degree=i)


def mapping_cone(f: ChainMap) -> Complex:
    """cone(f)_i = B_i + A_{i-1}, differential [[d_B, f], [0, -d_A]]."""
    a, b = f.source, f.target
    ring = a.ring
    if a.is_periodic:
        n = a.grading.n
        degrees = range(n)
        grading = Periodic(n)
    else:
        lo = min([b.grading.lo, a.grading.lo + 1])
        hi = max([b.grading.hi, a.grading.hi + 1])
        if a.total_rank() == 0 and b.total_rank() == 0:
            return Complex(ring, Bounded(0, -1), {}, {})
        degrees = range(lo, hi + 1)
        grading = Bounded(lo, hi)
    ranks = {}
    for i in degrees:
        r = b.rank(i) + a.rank(i - 1)
        if r:
            ranks[i] = r
    diffs = {}
    for i in degrees:
        rows = b.rank(i - 1) + a.rank(i - 2)
        cols = b.rank(i) + a.rank(i - 1)
        if rows == 0 or cols == 0:
            continue
        block = [[0] * cols for _ in range(rows)]
        db = b.differential(i)
        for r in range(db.rows):
            for c in range(db.cols):
                block[r][c] = db[r, c]
        fc = f.component(i - 1)
        for r in range(fc.rows):
            for c in range(fc.cols):
                block[r][b.rank(i) + c] = fc[r, c]
        da = a.differential(i - 1)
        for r in range(da.rows):
            for c in range(da.cols):
                block[b.rank(i - 1) + r][b.rank(i) + c] = -da[r, c]
        m = IntMatrix(rows, cols, block)
        if not m.is_zero():
            diffs[i] = m
    return Complex(ring, grading, ranks, diffs)
