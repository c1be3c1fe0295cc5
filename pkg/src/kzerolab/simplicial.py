"""Finite simplicial sets, simplex categories, nerves, and a desk-scale
Waldhausen S-construction.

Simplicial sets are truncated at an explicit dimension bound; face and
degeneracy tables are validated against the simplicial identities on
construction.  The simplex category of X has one object per simplex (a
simplicial map from a standard simplex, by Yoneda) and one morphism per
monotone map making the triangle over X commute.

The S-construction stops at level 2: S_1 lists the objects, S_2 the
cofibrations with their chosen quotients, which is exactly the
generators-and-relations shadow K0 needs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError
from .kgroup import K0Presentation, K0Result, grothendieck_group


class SimplicialSet:
    """Truncated simplicial set with explicit face/degeneracy tables.

    ``simplices[n]`` is an ordered list of labels; ``face[(n, i)]`` maps a
    dim-n simplex index to its i-th face's index in dimension n-1;
    ``degeneracy[(n, i)]`` maps dimension n to n+1 (present for n < bound).
    """

    def __init__(self, dim_bound, simplices, face, degeneracy):
        self.dim_bound = dim_bound
        self.simplices = {n: list(simplices.get(n, [])) for n in range(dim_bound + 1)}
        self.face = dict(face)
        self.degeneracy = dict(degeneracy)
        self._validate()

    def n_simplices(self, n):
        return self.simplices.get(n, [])

    def _validate(self):
        for n in range(1, self.dim_bound + 1):
            cnt = len(self.simplices[n])
            for i in range(n + 1):
                tab = self.face.get((n, i))
                if tab is None or len(tab) != cnt:
                    raise InputError(f"missing or ragged face table d_{i} in dim {n}")
                if any(not 0 <= v < len(self.simplices[n - 1]) for v in tab):
                    raise InputError(f"face d_{i} out of range in dim {n}")
        for n in range(0, self.dim_bound):
            cnt = len(self.simplices[n])
            for i in range(n + 1):
                tab = self.degeneracy.get((n, i))
                if tab is None or len(tab) != cnt:
                    raise InputError(f"missing degeneracy s_{i} in dim {n}")
                if any(not 0 <= v < len(self.simplices[n + 1]) for v in tab):
                    raise InputError(f"degeneracy s_{i} out of range in dim {n}")
        # simplicial identities, where both sides stay within the bound
        for n in range(2, self.dim_bound + 1):
            for j in range(n + 1):
                for i in range(j):
                    for x in range(len(self.simplices[n])):
                        lhs = self.face[(n - 1, i)][self.face[(n, j)][x]]
                        rhs = self.face[(n - 1, j - 1)][self.face[(n, i)][x]]
                        if lhs != rhs:
                            raise InputError(
                                f"d_{i} d_{j} identity fails in dim {n} at {x}")
        for n in range(0, self.dim_bound - 1):
            for i in range(n + 1):
                for j in range(i, n + 1):
                    for x in range(len(self.simplices[n])):
                        lhs = self.degeneracy[(n + 1, i)][self.degeneracy[(n, j)][x]]
                        rhs = self.degeneracy[(n + 1, j + 1)][self.degeneracy[(n, i)][x]]
                        if lhs != rhs:
                            raise InputError(
                                f"s_i s_j identity fails in dim {n} at {x}")
        for n in range(0, self.dim_bound):
            for j in range(n + 1):
                for i in range(n + 2):
                    for x in range(len(self.simplices[n])):
                        sx = self.degeneracy[(n, j)][x]
                        v = self.face[(n + 1, i)][sx]
                        if i == j or i == j + 1:
                            if v != x:
                                raise InputError(
                                    f"d_{i} s_{j} != id in dim {n} at {x}")
                        elif i < j:
                            if n >= 1:
                                want = self.degeneracy[(n - 1, j - 1)][
                                    self.face[(n, i)][x]]
                                if v != want:
                                    raise InputError(
                                        f"d_{i} s_{j} identity fails in dim {n}")
                        else:
                            if n >= 1:
                                want = self.degeneracy[(n - 1, j)][
                                    self.face[(n, i - 1)][x]]
                                if v != want:
                                    raise InputError(
                                        f"d_{i} s_{j} identity fails in dim {n}")

    def act(self, phi, n_src, n_tgt, idx):
        """Contravariant action: the simplex phi^*(x) for monotone phi.

        ``phi`` is a tuple (phi(0), ..., phi(n_src)) of values in [0, n_tgt].
        """
        if len(phi) != n_src + 1 or any(b < a for a, b in zip(phi, phi[1:])):
            raise InputError(f"{phi} is not a monotone map")
        if phi and (phi[0] < 0 or phi[-1] > n_tgt):
            raise InputError(f"{phi} does not land in [0, {n_tgt}]")
        missing = [j for j in range(n_tgt + 1) if j not in set(phi)]
        if missing:
            j = max(missing)
            idx = self.face[(n_tgt, j)][idx]
            phi2 = tuple(v if v < j else v - 1 for v in phi)
            return self.act(phi2, n_src, n_tgt - 1, idx)
        for i in range(n_src):
            if phi[i] == phi[i + 1]:
                phi2 = phi[:i] + phi[i + 2:]
                inner = self.act(phi2, n_src - 1, n_tgt, idx)
                return self.degeneracy[(n_src - 1, i)][inner]
        return idx


def monotone_maps(n, m):
    """All non-decreasing maps [n] -> [m] as tuples, lexicographic order."""
    out = []

    def bld(prefix, lo):
        if len(prefix) == n + 1:
            out.append(tuple(prefix))
            return
        for v in range(lo, m + 1):
            prefix.append(v)
            bld(prefix, v)
            prefix.pop()

    bld([], 0)
    return out


def standard_simplex(d, dim_bound=None) -> SimplicialSet:
    """The representable d-simplex: n-simplices are monotone maps [n] -> [d].

    >>> [len(standard_simplex(1, 2).n_simplices(n)) for n in range(3)]
    [2, 3, 4]
    """
    if d < 0:
        raise InputError("simplex dimension must be >= 0")
    if dim_bound is None:
        dim_bound = d
    simplices = {n: monotone_maps(n, d) for n in range(dim_bound + 1)}
    index = {n: {s: i for i, s in enumerate(simplices[n])} for n in simplices}
    face = {}
    degeneracy = {}
    for n in range(1, dim_bound + 1):
        for i in range(n + 1):
            face[(n, i)] = [index[n - 1][s[:i] + s[i + 1:]] for s in simplices[n]]
    for n in range(0, dim_bound):
        for i in range(n + 1):
            degeneracy[(n, i)] = [index[n + 1][s[:i] + (s[i],) + s[i:]]
                                  for s in simplices[n]]
    return SimplicialSet(dim_bound, simplices, face, degeneracy)


def product_simplicial_set(x: SimplicialSet, y: SimplicialSet,
                           dim_bound=None) -> SimplicialSet:
    """Degreewise product with componentwise faces and degeneracies."""
    if dim_bound is None:
        dim_bound = min(x.dim_bound, y.dim_bound)
    simplices = {}
    index = {}
    for n in range(dim_bound + 1):
        simplices[n] = [(a, b) for a in range(len(x.n_simplices(n)))
                        for b in range(len(y.n_simplices(n)))]
        index[n] = {s: i for i, s in enumerate(simplices[n])}
    face = {}
    degeneracy = {}
    for n in range(1, dim_bound + 1):
        for i in range(n + 1):
            face[(n, i)] = [index[n - 1][(x.face[(n, i)][a], y.face[(n, i)][b])]
                            for (a, b) in simplices[n]]
    for n in range(0, dim_bound):
        for i in range(n + 1):
            degeneracy[(n, i)] = [
                index[n + 1][(x.degeneracy[(n, i)][a], y.degeneracy[(n, i)][b])]
                for (a, b) in simplices[n]]
    labels = {n: [(x.n_simplices(n)[a], y.n_simplices(n)[b])
                  for (a, b) in simplices[n]] for n in simplices}
    return SimplicialSet(dim_bound, labels, face, degeneracy)


@dataclass(frozen=True)
class SimplexObject:
    dim: int
    index: int


class SimplexCategory:
    """Objects: simplices of X up to the bound; morphisms: monotone maps
    over X (commuting triangles of simplicial maps)."""

    def __init__(self, x: SimplicialSet, dim_bound):
        if dim_bound > x.dim_bound:
            raise InputError("simplex category bound exceeds the set's bound")
        self.space = x
        self.dim_bound = dim_bound
        self.objects = [SimplexObject(n, i)
                        for n in range(dim_bound + 1)
                        for i in range(len(x.n_simplices(n)))]

    def morphisms(self, a: SimplexObject, b: SimplexObject):
        """Monotone maps phi with b pulled back along phi equal to a."""
        out = []
        for phi in monotone_maps(a.dim, b.dim):
            if self.space.act(phi, a.dim, b.dim, b.index) == a.index:
                out.append(phi)
        return out

    def compose(self, phi, psi):
        """phi : a -> b then psi : b -> c is psi o phi pointwise."""
        return tuple(psi[v] for v in phi)

    def object_count(self):
        return len(self.objects)

    def morphism_count(self):
        return sum(len(self.morphisms(a, b))
                   for a in self.objects for b in self.objects)


def simplex_category(x: SimplicialSet, dim_bound) -> SimplexCategory:
    return SimplexCategory(x, dim_bound)


class FiniteCategory:
    """A small category given by explicit hom sets and composition."""

    def __init__(self, objects, homs, compose, identities):
        self.objects = list(objects)
        self.homs = {k: list(v) for k, v in homs.items()}
        self._compose = dict(compose)
        self.identities = dict(identities)
        self._validate()

    def hom(self, a, b):
        return self.homs.get((a, b), [])

    def compose(self, a, b, c, m1, m2):
        """m1 : a -> b followed by m2 : b -> c."""
        try:
            return self._compose[(a, b, c, m1, m2)]
        except KeyError:
            raise InputError(f"composition not tabulated for {m1!r};{m2!r}")

    def _validate(self):
        for a in self.objects:
            if a not in self.identities or \
               self.identities[a] not in self.hom(a, a):
                raise InputError(f"missing identity for {a!r}")
        for (a, b, c, m1, m2), m in self._compose.items():
            if m1 not in self.hom(a, b) or m2 not in self.hom(b, c) or \
               m not in self.hom(a, c):
                raise InputError("composition table out of range")
        for a in self.objects:
            for b in self.objects:
                for m in self.hom(a, b):
                    if self.compose(a, a, b, self.identities[a], m) != m or \
                       self.compose(a, b, b, m, self.identities[b]) != m:
                        raise InputError("identity law fails")
        for a in self.objects:
            for b in self.objects:
                for c in self.objects:
                    for d in self.objects:
                        for m1 in self.hom(a, b):
                            for m2 in self.hom(b, c):
                                for m3 in self.hom(c, d):
                                    lhs = self.compose(
                                        a, c, d, self.compose(a, b, c, m1, m2), m3)
                                    rhs = self.compose(
                                        a, b, d, m1, self.compose(b, c, d, m2, m3))
                                    if lhs != rhs:
                                        raise InputError("associativity fails")


def nerve(cat: FiniteCategory, dim_bound) -> SimplicialSet:
    """n-simplices are composable n-chains of morphisms.

    >>> c = FiniteCategory(["*"], {("*", "*"): ["id"]},
    ...                    {("*", "*", "*", "id", "id"): "id"}, {"*": "id"})
    >>> [len(nerve(c, 2).n_simplices(n)) for n in range(3)]
    [1, 1, 1]
    """
    chains = {0: [(o,) for o in cat.objects]}
    for n in range(1, dim_bound + 1):
        nxt = []
        if n == 1:
            for a in cat.objects:
                for b in cat.objects:
                    for m in cat.hom(a, b):
                        nxt.append(((a, b, m),))
        else:
            for ch in chains[n - 1]:
                tail = ch[-1][1]
                for b in cat.objects:
                    for m in cat.hom(tail, b):
                        nxt.append(ch + ((tail, b, m),))
        chains[n] = nxt
    index = {n: {s: i for i, s in enumerate(chains[n])} for n in chains}

    face = {}
    degeneracy = {}
    for n in range(1, dim_bound + 1):
        for i in range(n + 1):
            tab = []
            for ch in chains[n]:
                if n == 1:
                    (a, b, m) = ch[0]
                    # vertex i is removed: d_0 keeps the target, d_1 the source
                    tab.append(index[0][(b,)] if i == 0 else index[0][(a,)])
                elif i == 0:
                    tab.append(index[n - 1][ch[1:]])
                elif i == n:
                    tab.append(index[n - 1][ch[:-1]])
                else:
                    (a, b, m1) = ch[i - 1]
                    (_, c, m2) = ch[i]
                    comp = cat.compose(a, b, c, m1, m2)
                    tab.append(index[n - 1][ch[:i - 1] + ((a, c, comp),) + ch[i + 1:]])
            face[(n, i)] = tab
    for n in range(0, dim_bound):
        for i in range(n + 1):
            tab = []
            for ch in chains[n]:
                if n == 0:
                    (o,) = ch
                    tab.append(index[1][((o, o, cat.identities[o]),)])
                else:
                    if i == 0:
                        a = ch[0][0]
                        ins = (a, a, cat.identities[a])
                        tab.append(index[n + 1][(ins,) + ch])
                    else:
                        b = ch[i - 1][1]
                        ins = (b, b, cat.identities[b])
                        tab.append(index[n + 1][ch[:i] + (ins,) + ch[i:]])
            degeneracy[(n, i)] = tab
    return SimplicialSet(dim_bound, chains, face, degeneracy)


# -- Waldhausen toys -----------------------------------------------------------

class WaldhausenToy:
    """A finite pointed category with cofibrations, weak equivalences and
    chosen quotients, given by callables so hom sets can stay implicit."""

    def __init__(self, objects, zero, hom, compose, identity,
                 is_cofibration, is_weak_equivalence, quotient):
        self.objects = list(objects)
        self.zero = zero
        self.hom = hom
        self.compose = compose
        self.identity = identity
        self.is_cofibration = is_cofibration
        self.is_weak_equivalence = is_weak_equivalence
        self.quotient = quotient

    def verify_axioms(self):
        """Items (1)-(4) of the Waldhausen lemma, on the tabulated data."""
        problems = []
        if self.zero not in self.objects:
            problems.append("zero object is not an object")
        else:
            for x in self.objects:
                if len(self.hom(self.zero, x)) != 1 or len(self.hom(x, self.zero)) != 1:
                    problems.append(f"hom sets through 0 and {x!r} are not singletons")
        for x in self.objects:
            (m,) = self.hom(self.zero, x) or (None,)
            if m is None or not self.is_cofibration(self.zero, x, m):
                problems.append(f"0 -> {x!r} is not a cofibration")
        # isomorphisms are weak equivalences; weak equivalences are cofibrations
        for a in self.objects:
            for b in self.objects:
                for m in self.hom(a, b):
                    if self._is_iso(a, b, m) and not self.is_weak_equivalence(a, b, m):
                        problems.append(f"iso {m!r} : {a!r} -> {b!r} is not a weq")
                    if self.is_weak_equivalence(a, b, m) and \
                       not self.is_cofibration(a, b, m):
                        problems.append(f"weq {m!r} is not a cofibration")
        # weak equivalences closed under composition
        for a in self.objects:
            for b in self.objects:
                for c in self.objects:
                    for m1 in self.hom(a, b):
                        if not self.is_weak_equivalence(a, b, m1):
                            continue
                        for m2 in self.hom(b, c):
                            if not self.is_weak_equivalence(b, c, m2):
                                continue
                            m = self.compose(a, b, c, m1, m2)
                            if not self.is_weak_equivalence(a, c, m):
                                problems.append(
                                    f"weqs {m1!r};{m2!r} compose to a non-weq")
        # every cofibration has a chosen quotient
        for a in self.objects:
            for b in self.objects:
                for m in self.hom(a, b):
                    if self.is_cofibration(a, b, m):
                        q = self.quotient(a, b, m)
                        if q not in self.objects:
                            problems.append(f"cofibration {m!r} lacks a quotient")
        return problems

    def _is_iso(self, a, b, m):
        for minv in self.hom(b, a):
            if self.compose(a, b, a, m, minv) == self.identity(a) and \
               self.compose(b, a, b, minv, m) == self.identity(b):
                return True
        return False


def s_construction(w: WaldhausenToy, d: int = 2):
    """S_0, S_1, S_2 of the toy: the K0-relevant levels.

    S_2 objects are cofibrations with their chosen quotients.
    """
    if d > 2:
        raise InputError("the desk-scale S-construction stops at level 2")
    problems = w.verify_axioms()
    if problems:
        raise InputError("not a Waldhausen toy: " + "; ".join(problems[:3]))
    levels = {0: [w.zero]}
    if d >= 1:
        levels[1] = list(w.objects)
    if d >= 2:
        seqs = []
        for a in w.objects:
            for b in w.objects:
                for m in w.hom(a, b):
                    if w.is_cofibration(a, b, m):
                        seqs.append((a, b, m, w.quotient(a, b, m)))
        levels[2] = seqs
    return levels


def k0_from_s_construction(w: WaldhausenToy) -> K0Result:
    """Generators from S_1, relations [B] = [A] + [B/A] from S_2."""
    levels = s_construction(w, 2)
    gens = tuple(levels[1])
    rels = tuple((a, b, q) for (a, b, m, q) in levels[2])
    return grothendieck_group(K0Presentation(gens, rels))


# -- concordance ---------------------------------------------------------------

@dataclass
class FunctorData:
    """A functor from a simplex category to a finite category, as tables."""

    on_objects: dict      # SimplexObject -> object of C
    on_morphisms: dict    # (SimplexObject, SimplexObject, phi) -> morphism of C


def _end_inclusion(y: SimplicialSet, interval: SimplicialSet, end: int,
                   dim_bound):
    """Indices of Y x {end} inside the product Y x I, per dimension."""
    out = {}
    for n in range(dim_bound + 1):
        const = tuple([end] * (n + 1))
        iidx = interval.n_simplices(n).index(const)
        out[n] = {a: y_prod_index(y, interval, n, a, iidx)
                  for a in range(len(y.n_simplices(n)))}
    return out


def y_prod_index(y, interval, n, a, b):
    ni = len(interval.n_simplices(n))
    return a * ni + b


def concordance_check(y: SimplicialSet, dim_bound, f0: FunctorData,
                      f1: FunctorData, ftilde: FunctorData):
    """Verify that ftilde on the simplex category of Y x I restricts to f0
    and f1 on the two ends, object by object and morphism by morphism.

    Returns (True, None) or (False, witness message).
    """
    interval = standard_simplex(1, dim_bound)
    prod = product_simplicial_set(y, interval, dim_bound)  # validates Y x I
    cat_y = simplex_category(y, dim_bound)
    for end, f in ((0, f0), (1, f1)):
        incl = _end_inclusion(y, interval, end, dim_bound)
        for obj in cat_y.objects:
            pidx = incl[obj.dim][obj.index]
            pobj = SimplexObject(obj.dim, pidx)
            if ftilde.on_objects.get(pobj) != f.on_objects.get(obj):
                return False, (f"object mismatch at end {end}: simplex "
                               f"dim {obj.dim} #{obj.index}")
        for a in cat_y.objects:
            for b in cat_y.objects:
                for phi in cat_y.morphisms(a, b):
                    pa = SimplexObject(a.dim, incl[a.dim][a.index])
                    pb = SimplexObject(b.dim, incl[b.dim][b.index])
                    got = ftilde.on_morphisms.get((pa, pb, phi))
                    want = f.on_morphisms.get((a, b, phi))
                    if got != want:
                        return False, (f"morphism mismatch at end {end}: "
                                       f"{phi} from dim {a.dim} #{a.index}")
    assert prod.n_simplices(0)
    return True, None
