"""Finitely generated abelian groups in invariant-factor canonical form.

A group is stored as its free rank plus the torsion invariant factors
t1 | t2 | ... (each >= 2, ascending divisibility).  Two groups are
isomorphic exactly when these fields coincide, so isomorphism testing is
field equality.

:class:`CokernelPresentation` carries, besides the abstract group, enough of
the Smith transform to reduce arbitrary integer vectors to canonical
coordinates of their class in the quotient.  That is what lets homotopy
categories, K0 class maps and localizations compute with actual group
elements instead of just isomorphism types.
"""

from __future__ import annotations

from dataclasses import dataclass

from .intmat import IntMatrix, kernel_basis, smith_normal_form


@dataclass(frozen=True)
class FinAbGroup:
    """Z^free_rank + Z/t1 + Z/t2 + ... with t1 | t2 | ..., all ti >= 2."""

    free_rank: int
    torsion: tuple

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        prev = None
        for t in self.torsion:
            if t < 2:
                raise ValueError(f"torsion factor {t} < 2")
            if prev is not None and t % prev != 0:
                raise ValueError(f"torsion {self.torsion} is not a divisibility chain")
            prev = t

    @classmethod
    def free(cls, rank):
        return cls(rank, ())

    @classmethod
    def zero(cls):
        return cls(0, ())

    @classmethod
    def from_invariant_factors(cls, factors):
        """Canonicalize a SNF diagonal: drop 1s, count 0s as free rank."""
        torsion = tuple(d for d in factors if d >= 2)
        rank = sum(1 for d in factors if d == 0)
        return cls(rank, torsion)

    def is_zero(self):
        return self.free_rank == 0 and not self.torsion

    def direct_sum(self, other):
        """Canonical form of the direct sum (via SNF of a diagonal matrix)."""
        diag = [t for t in self.torsion] + [t for t in other.torsion]
        n = len(diag)
        rel = IntMatrix(n, n, [[diag[i] if i == j else 0 for j in range(n)]
                               for i in range(n)])
        sf = smith_normal_form(rel)
        torsion = tuple(d for d in sf.diag if d >= 2)
        return FinAbGroup(self.free_rank + other.free_rank, torsion)

    def order(self):
        """Group order, or None when infinite."""
        if self.free_rank:
            return None
        n = 1
        for t in self.torsion:
            n *= t
        return n

    def __str__(self):
        parts = ["Z"] * self.free_rank + [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"


def abelian_group_from_relations(generators: int, relations: IntMatrix) -> FinAbGroup:
    """Canonical form of Z^generators modulo the rows of ``relations``.

    >>> abelian_group_from_relations(1, IntMatrix.from_rows([[2]]))
    FinAbGroup(free_rank=0, torsion=(2,))
    """
    if relations.cols != generators:
        raise ValueError(
            f"relation matrix has {relations.cols} columns for {generators} generators"
        )
    sf = smith_normal_form(relations.transpose())
    torsion = tuple(d for d in sf.diag if d >= 2)
    rank = generators - sf.rank
    return FinAbGroup(rank, torsion)


def groups_isomorphic(g: FinAbGroup, h: FinAbGroup) -> bool:
    return g == h


class CokernelPresentation:
    """Z^n modulo the column span of an integer matrix, with coordinates.

    ``group`` is the canonical quotient; ``orders`` lists, per kept
    generator, its order in the quotient (0 for infinite).  ``coords``
    reduces any vector of Z^n to the canonical coordinate tuple of its
    class; ``representative`` lifts a generator index back to Z^n.
    """

    def __init__(self, n: int, relations: IntMatrix):
        if relations.rows != n:
            raise ValueError("relation columns must live in Z^n")
        self.n = n
        sf = smith_normal_form(relations)
        m = min(relations.rows, relations.cols)
        full_orders = [sf.diag[i] if i < m else 0 for i in range(n)]
        self._kept = [i for i in range(n) if full_orders[i] != 1]
        self.orders = tuple(full_orders[i] for i in self._kept)
        self._u = sf.U
        self._u_inv = sf.u_inv
        torsion = tuple(d for d in self.orders if d >= 2)
        rank = sum(1 for d in self.orders if d == 0)
        self.group = FinAbGroup(rank, torsion)

    def coords(self, vec) -> tuple:
        """Canonical coordinates of the class of ``vec``."""
        y = self._u.apply_to_vector(tuple(vec))
        out = []
        for i, d in zip(self._kept, self.orders):
            out.append(y[i] % d if d else y[i])
        return tuple(out)

    def reduce(self, coords) -> tuple:
        """Reduce raw generator coordinates to the canonical range."""
        if len(coords) != len(self.orders):
            raise ValueError("coordinate length mismatch")
        return tuple(c % d if d else c for c, d in zip(coords, self.orders))

    def representative(self, k) -> tuple:
        """A vector of Z^n representing the k-th canonical generator."""
        i = self._kept[k]
        return self._u_inv.column(i)

    def vector_from_coords(self, coords) -> tuple:
        """Some representative vector in Z^n of the given class."""
        vec = [0] * self.n
        for c, k in zip(coords, range(len(self.orders))):
            rep = self.representative(k)
            vec = [a + c * b for a, b in zip(vec, rep)]
        return tuple(vec)

    def is_zero(self, vec) -> bool:
        return all(c == 0 for c in self.coords(vec))

    @property
    def ngens(self):
        return len(self.orders)


def _relation_columns(orders):
    """Columns spanning the relation lattice of a canonical presentation."""
    n = len(orders)
    cols = [i for i, d in enumerate(orders) if d != 0]
    data = [[0] * len(cols) for _ in range(n)]
    for j, i in enumerate(cols):
        data[i][j] = orders[i]
    return IntMatrix(n, len(cols), data)


def is_group_isomorphism(src_orders, tgt_orders, phi: IntMatrix) -> bool:
    """Whether the map sending source generator j to the column phi[:, j]
    (coordinates in the target presentation) is a group isomorphism.

    ``src_orders`` / ``tgt_orders`` list each generator's order, 0 meaning
    infinite.  The map is assumed well defined (it must kill the source
    relation lattice); this is rechecked here for safety.
    """
    s, t = len(src_orders), len(tgt_orders)
    if phi.shape != (t, s):
        raise ValueError(f"matrix shape {phi.shape} does not match ({t}, {s})")
    rel_t = _relation_columns(tgt_orders)

    def zero_in_target(vec):
        red = tuple(v % d if d else v for v, d in zip(vec, tgt_orders))
        return all(x == 0 for x in red)

    # well-definedness: order_j * phi(e_j) must die in the target
    for j, d in enumerate(src_orders):
        if d:
            if not zero_in_target(tuple(d * phi[i, j] for i in range(t))):
                raise ValueError("map does not kill the source relations")

    # surjectivity: coker of [phi | target relations] is trivial
    aug = phi.hstack(rel_t) if rel_t.cols else phi
    sf = smith_normal_form(aug)
    if sf.rank < t or any(d != 1 for d in sf.diag[:t]):
        return False

    # injectivity: everything phi maps into the target lattice must already
    # be zero in the source
    if rel_t.cols:
        stacked = phi.hstack(rel_t)
    else:
        stacked = phi
    ker = kernel_basis(stacked)
    for j in range(ker.cols):
        x = ker.column(j)[:s]
        red = tuple(v % d if d else v for v, d in zip(x, src_orders))
        if any(v != 0 for v in red):
            return False
    return True
