"""Shipped model algebras, Waldhausen toys and spans.

The catalog is stable and sorted; the CLI exposes it verbatim.  The
flagship ``equator`` preset is the quantum-cohomology realization of the
equator Floer algebra: Z[h]/(h^2 = w) with everything in degree zero and
the disc-count unit w defaulting to 1.  The odd Clifford model
``equator-clifford`` (x odd, x^2 = w) is kept alongside it: over Z its
periodic Hochschild homology piles up 2-torsion forever, so the class
computation honestly refuses to stabilize; see the README's paper map.
"""

from __future__ import annotations

from .ainf import AInfCategory, AInfFunctor, associative_algebra, identity_functor
from .complexes import GroundRing
from .errors import InputError
from .simplicial import WaldhausenToy

Z = GroundRing.Z()


def ground_ring_algebra(ring=Z):
    return associative_algebra(ring, None, [("1", 0)], "1", {})


def dual_numbers_algebra(ring=Z):
    return associative_algebra(ring, None, [("1", 0), ("e", 0)], "1",
                               {("e", "e"): {}})


def two_points_algebra(ring=Z):
    """k x k in the basis {1, e} with e idempotent."""
    return associative_algebra(ring, None, [("1", 0), ("e", 0)], "1",
                               {("e", "e"): {"e": 1}})


def equator_algebra(w=1, ring=Z):
    """Z[h]/(h^2 = w.1): the equator algebra seen through its idempotents."""
    if w == 0:
        raise InputError("the disc-count parameter w must be a unit")
    return associative_algebra(ring, None, [("1", 0), ("h", 0)], "1",
                               {("h", "h"): {"1": w}})


def equator_clifford_algebra(w=1, ring=Z):
    """Z_2-graded Z<x>/(x^2 = w.1) with |x| odd: the naive Floer model."""
    if w == 0:
        raise InputError("the disc-count parameter w must be a unit")
    return associative_algebra(ring, 2, [("1", 0), ("x", 1)], "1",
                               {("x", "x"): {"1": w}})


def exterior_odd_algebra(ring=Z):
    return associative_algebra(ring, None, [("1", 0), ("x", 1)], "1",
                               {("x", "x"): {}})


def graded_sphere_algebra(ring=Z):
    """Z[h]/h^2 with |h| = 2: cohomology of the sphere, no quantum term."""
    return associative_algebra(ring, None, [("1", 0), ("h", 2)], "1",
                               {("h", "h"): {}})


def direct_sum_algebras(a: AInfCategory, b: AInfCategory,
                        prefixes=("a.", "b.")) -> AInfCategory:
    """Product algebra A x B with the new unit as a basis element.

    The old unit of A survives as the idempotent ``e``; the old unit of B
    becomes 1 - e.  All structure maps are assembled from the projections,
    so strict unitality of the factors carries over.
    """
    if a.ring != b.ring or a.period != b.period:
        raise InputError("direct sum needs matching ring and grading")
    if len(a.objects) != 1 or len(b.objects) != 1:
        raise InputError("direct sum of single-object algebras only")
    ua = a.units[a.objects[0]]
    ub = b.units[b.objects[0]]
    if ua is None or ub is None:
        raise InputError("factors must be unital")

    pa, pb = prefixes
    labels = [("1", 0), (pa + a.basis[ua].name, 0)]
    a_nonunit = [i for i in range(len(a.basis)) if i != ua]
    b_nonunit = [i for i in range(len(b.basis)) if i != ub]
    for i in a_nonunit:
        labels.append((pa + a.basis[i].name, a.basis[i].degree))
    for i in b_nonunit:
        labels.append((pb + b.basis[i].name, b.basis[i].degree))
    e_label = pa + a.basis[ua].name
    a_lookup = {"1": ua, e_label: ua}
    for i in a_nonunit:
        a_lookup[pa + a.basis[i].name] = i
    b_lookup = {"1": ub}
    for i in b_nonunit:
        b_lookup[pb + b.basis[i].name] = i

    def proj_a(lab):
        return a_lookup.get(lab)

    def proj_b(lab):
        return b_lookup.get(lab)

    def lift_a(out):
        res = {}
        for o, c in out.items():
            lab = e_label if o == ua else pa + a.basis[o].name
            res[lab] = res.get(lab, 0) + c
        return res

    def lift_b(out):
        res = {}
        for o, c in out.items():
            if o == ub:
                res["1"] = res.get("1", 0) + c
                res[e_label] = res.get(e_label, 0) - c
            else:
                lab = pb + b.basis[o].name
                res[lab] = res.get(lab, 0) + c
        return res

    arities = sorted(set(a.mu) | set(b.mu))
    names = [lab for lab, _ in labels]
    mu = {}
    for k in arities:
        table = {}
        for key in _tuples(names, k):
            out = {}
            ka = tuple(proj_a(x) for x in key)
            if all(v is not None for v in ka):
                for o, c in a.mu_apply(ka).items():
                    for lab, cc in lift_a({o: c}).items():
                        out[lab] = out.get(lab, 0) + cc
            kb = tuple(proj_b(x) for x in key)
            if all(v is not None for v in kb):
                for o, c in b.mu_apply(kb).items():
                    for lab, cc in lift_b({o: c}).items():
                        out[lab] = out.get(lab, 0) + cc
            out = {lab: c for lab, c in out.items() if c != 0}
            if out:
                table[key] = out
        if table:
            mu[k] = table

    from .ainf import single_object_algebra
    return single_object_algebra(a.ring, a.period, labels, "1", mu)


def _tuples(names, k):
    if k == 0:
        return [()]
    out = [()]
    for _ in range(k):
        out = [t + (n,) for t in out for n in names]
    return out


# -- F2 free-module Waldhausen toy ---------------------------------------------

def _f2_matrices(rows, cols):
    """All rows x cols matrices over F_2, as tuples of row tuples."""
    cells = rows * cols
    out = []
    for bits in range(1 << cells):
        m = tuple(tuple((bits >> (r * cols + c)) & 1 for c in range(cols))
                  for r in range(rows))
        out.append(m)
    return out


def _f2_rank(m):
    rows = [list(r) for r in m]
    ncols = len(rows[0]) if rows else 0
    rank = 0
    for c in range(ncols):
        piv = None
        for r in range(rank, len(rows)):
            if rows[r][c] % 2:
                piv = r
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][c] % 2:
                rows[r] = [(x + y) % 2 for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def _f2_mul(m2, m1):
    """Composite matrix of m1 : a -> b then m2 : b -> c."""
    rows = len(m2)
    mid = len(m1)
    cols = len(m1[0]) if m1 else 0
    return tuple(tuple(sum(m2[r][k] * m1[k][c] for k in range(mid)) % 2
                       for c in range(cols)) for r in range(rows))


def f2_free_module_toy(max_rank=2) -> WaldhausenToy:
    """Finite-rank free F_2-modules with split injections as cofibrations.

    Objects F0..Fn; morphisms are all matrices; weak equivalences are the
    isomorphisms; the chosen quotient of a rank-a into rank-b injection is
    F_{b-a}.
    """
    objects = [f"F{r}" for r in range(max_rank + 1)]
    rank_of = {f"F{r}": r for r in range(max_rank + 1)}
    hom_cache = {}

    def hom(x, y):
        key = (x, y)
        if key not in hom_cache:
            hom_cache[key] = _f2_matrices(rank_of[y], rank_of[x])
        return hom_cache[key]

    def compose(x, y, z, m1, m2):
        if rank_of[x] == 0 or rank_of[z] == 0:
            return hom(x, z)[0]
        if rank_of[y] == 0:
            return tuple(tuple(0 for _ in range(rank_of[x]))
                         for _ in range(rank_of[z]))
        return _f2_mul(m2, m1)

    def identity(x):
        r = rank_of[x]
        return tuple(tuple(1 if i == j else 0 for j in range(r)) for i in range(r))

    def is_cofibration(x, y, m):
        return rank_of[x] <= rank_of[y] and _f2_rank(m) == rank_of[x] \
            if rank_of[x] else True

    def is_weak_equivalence(x, y, m):
        return rank_of[x] == rank_of[y] and _f2_rank(m) == rank_of[x]

    def quotient(x, y, m):
        return f"F{rank_of[y] - rank_of[x]}"

    return WaldhausenToy(objects, "F0", hom, compose, identity,
                         is_cofibration, is_weak_equivalence, quotient)


def zero_waldhausen_toy() -> WaldhausenToy:
    """The zero category as a Waldhausen toy: all S_d levels are singletons."""
    return WaldhausenToy(
        ["0"], "0",
        lambda a, b: ["z"],
        lambda a, b, c, m1, m2: "z",
        lambda a: "z",
        lambda a, b, m: True,
        lambda a, b, m: True,
        lambda a, b, m: "0",
    )


# -- spans ----------------------------------------------------------------------

def identity_span():
    """A = B = C the one-object ground-ring algebra, identity functors."""
    a = ground_ring_algebra()
    return identity_functor(a), identity_functor(a)


def zero_source_span():
    """A the zero category mapping into two different algebras."""
    from .ainf import zero_category
    zc = zero_category(Z)
    b = ground_ring_algebra()
    c = two_points_algebra()
    f = AInfFunctor(zc, b, {"0": "*"}, {})
    g = AInfFunctor(zc, c, {"0": "*"}, {})
    return f, g


# -- catalog --------------------------------------------------------------------

def catalog():
    """Stable, sorted preset catalog: name -> (kind, description)."""
    entries = {
        "dual-numbers": ("algebra", "Z[e]/e^2 in degree 0; the HH oracle "
                                    "example with an unstable class"),
        "equator": ("algebra", "Z[h]/(h^2 = w.1), degree 0, w = 1: the "
                               "equator Floer algebra via its quantum "
                               "idempotents; class 2"),
        "equator-clifford": ("algebra", "Z_2-graded Z<x>/(x^2 = w.1), |x| "
                                        "odd: the naive model whose class "
                                        "never stabilizes over Z"),
        "exterior-odd": ("algebra", "Z-graded exterior algebra on one odd "
                                    "generator; HH = Z in every degree"),
        "f2-toy": ("waldhausen", "free F_2-modules of rank <= 2, split "
                                 "injections as cofibrations"),
        "f2-toy-rank3": ("waldhausen", "free F_2-modules of rank <= 3"),
        "graded-sphere": ("algebra", "Z[h]/h^2 with |h| = 2: sphere "
                                     "cohomology without quantum terms"),
        "ground-ring": ("algebra", "Z itself; Hochschild class 1"),
        "span-identity": ("span", "identity span on the one-object "
                                  "ground-ring algebra"),
        "span-zero-source": ("span", "zero category mapping to two "
                                     "different algebras: disjoint union"),
        "two-points": ("algebra", "Z x Z in the idempotent basis; "
                                  "Hochschild class 2"),
    }
    return dict(sorted(entries.items()))


def build_algebra_preset(name, w=1):
    builders = {
        "dual-numbers": lambda: dual_numbers_algebra(),
        "equator": lambda: equator_algebra(w),
        "equator-clifford": lambda: equator_clifford_algebra(w),
        "exterior-odd": lambda: exterior_odd_algebra(),
        "graded-sphere": lambda: graded_sphere_algebra(),
        "ground-ring": lambda: ground_ring_algebra(),
        "two-points": lambda: two_points_algebra(),
    }
    if name not in builders:
        raise KeyError(name)
    return builders[name]()


def build_toy_preset(name):
    builders = {
        "f2-toy": lambda: f2_free_module_toy(2),
        "f2-toy-rank3": lambda: f2_free_module_toy(3),
    }
    if name not in builders:
        raise KeyError(name)
    return builders[name]()


def build_span_preset(name):
    builders = {
        "span-identity": identity_span,
        "span-zero-source": zero_source_span,
    }
    if name not in builders:
        raise KeyError(name)
    return builders[name]()
