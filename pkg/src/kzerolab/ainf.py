"""Finite-basis strictly unital A-infinity categories and functors.

Conventions (pinned once, used everywhere):

* homological grading; mu_k has degree k - 2, functor components F_k have
  degree k - 1;
* arguments are composable left to right: mu_2(x, y) is "x then y" for
  x : a -> b, y : b -> c;
* the A-infinity relations are checked in the Getzler-Jones form
  sum_{r+s+t=k} (-1)^{r+st} mu_{r+1+t} (1^r (x) mu_s (x) 1^t) = 0, where a
  tensor product of operators picks up the Koszul sign (-1)^{|op| * |x|}
  when an operator of odd degree moves past arguments;
* internally every bar-type computation is done with *shifted* degrees
  ||x|| = |x| + 1 and the conjugated operators
  b_k = s o mu_k o (s^-1)^{(x) k}, which makes all higher coherence sums
  sign-free except for the Koszul signs of the odd operators b_k.  The two
  formulations agree; the test suite cross-checks them on random tables.

Categories may be Z-graded (period None) or Z_n-graded with n even; odd n
is rejected because parity of degrees, hence every Koszul sign, would be
ill-defined.

A unit must be a degree-0 basis element of its endomorphism complex, with
one exception: ``units[obj] = None`` declares a zero object (the identity
is the zero morphism), in which case every hom touching the object must be
the zero module.  That is the "zero category" of the Waldhausen structure.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import fieldlin
from .abgroup import is_group_isomorphism
from .complexes import GroundRing, HomologyData
from .errors import InputError
from .intmat import IntMatrix, solve as int_solve


@dataclass(frozen=True)
class BasisElement:
    name: str
    source: str
    target: str
    degree: int


class AInfCategory:
    """Objects, a graded hom basis, and multiplication tables mu_k.

    ``mu`` maps arity k >= 1 to a table {tuple of basis indices:
    {output index: integer coefficient}}; mu[1] is the differential of the
    hom complexes.  Absent entries mean zero.
    """

    def __init__(self, ring: GroundRing, period, objects, basis, mu, units,
                 arity_bound=4):
        if period is not None and (period < 2 or period % 2 != 0):
            raise InputError("grading period must be even (or None for Z)")
        self.ring = ring
        self.period = period
        self.objects = tuple(objects)
        obj_set = set(self.objects)
        if len(obj_set) != len(self.objects):
            raise InputError("duplicate object labels")
        norm_basis = []
        for b in basis:
            if b.source not in obj_set or b.target not in obj_set:
                raise InputError(f"basis element {b.name} has unknown endpoints")
            deg = b.degree % period if period else b.degree
            norm_basis.append(BasisElement(b.name, b.source, b.target, deg))
        self.basis = tuple(norm_basis)
        names = [b.name for b in self.basis]
        if len(set(names)) != len(names):
            raise InputError("duplicate basis element names")
        self.units = dict(units)
        for obj in self.objects:
            if obj not in self.units:
                raise InputError(f"no unit declared for object {obj!r}")
            u = self.units[obj]
            if u is None:
                for b in self.basis:
                    if b.source == obj or b.target == obj:
                        raise InputError(
                            f"zero object {obj!r} must have zero hom modules")
                continue
            ub = self.basis[u]
            if ub.source != obj or ub.target != obj or self._deg_ne_zero(ub.degree):
                raise InputError(f"unit of {obj!r} must be a degree-0 endomorphism")
        self.arity_bound = arity_bound
        self.mu = {}
        for k, table in mu.items():
            if k < 1:
                raise InputError("mu arity must be >= 1")
            clean = {}
            for key, out in table.items():
                key = tuple(key)
                if len(key) != k:
                    raise InputError(f"mu_{k} key of length {len(key)}")
                self._check_composable(key)
                want = self._reduce_degree(
                    sum(self.basis[i].degree for i in key) + k - 2)
                outs = {}
                for o, c in out.items():
                    if c == 0:
                        continue
                    ob = self.basis[o]
                    if ob.source != self.basis[key[0]].source or \
                       ob.target != self.basis[key[-1]].target:
                        raise InputError(
                            f"mu_{k}{key} output {ob.name} has wrong endpoints")
                    if self._reduce_degree(ob.degree) != want:
                        raise InputError(
                            f"mu_{k}{key} output {ob.name} has degree "
                            f"{ob.degree}, expected {want}")
                    outs[o] = c
                if outs:
                    clean[key] = outs
            if clean:
                self.mu[k] = clean

    def _reduce_degree(self, d):
        return d % self.period if self.period else d

    def _deg_ne_zero(self, d):
        return self._reduce_degree(d) != 0

    def _check_composable(self, key):
        for x, y in zip(key, key[1:]):
            if self.basis[x].target != self.basis[y].source:
                raise InputError(
                    f"tuple {key} is not composable at {self.basis[x].name}")

    # -- basic accessors ---------------------------------------------------

    def hom_basis(self, a, b):
        return [i for i, e in enumerate(self.basis) if e.source == a and e.target == b]

    def basis_by_source(self):
        out = {}
        for i, e in enumerate(self.basis):
            out.setdefault(e.source, []).append(i)
        return out

    def mu_apply(self, args) -> dict:
        """Raw table lookup: mu_{len(args)} on a tuple of basis indices."""
        return self.mu.get(len(args), {}).get(tuple(args), {})

    def is_unit(self, idx):
        return any(u == idx for u in self.units.values() if u is not None)

    def composable_tuples(self, k):
        by_source = self.basis_by_source()
        out = []

        def extend(chain):
            if len(chain) == k:
                out.append(tuple(chain))
                return
            tail_target = self.basis[chain[-1]].target
            for nxt in by_source.get(tail_target, []):
                chain.append(nxt)
                extend(chain)
                chain.pop()

        for i in range(len(self.basis)):
            extend([i])
        return out

    # -- shifted structure maps --------------------------------------------

    def sdeg(self, idx):
        """Shifted degree ||x|| = |x| + 1 (parity is what matters)."""
        return self.basis[idx].degree + 1

    def shifted_mu(self, args) -> dict:
        """b_k = s o mu_k o (s^-1)^k with Koszul conjugation signs."""
        conj = 0
        run = 0
        for m, idx in enumerate(args):
            if m > 0:
                conj += run
            run += self.sdeg(idx)
        sign = -1 if conj % 2 else 1
        raw = self.mu_apply(args)
        return {o: sign * c for o, c in raw.items()}


# -- construction helpers ----------------------------------------------------

def single_object_algebra(ring, period, elements, unit, mu, name="*"):
    """Algebra as a one-object category.

    ``elements`` is a list of (label, degree); ``mu`` maps arity to
    {tuple of labels: {label: coeff}}.
    """
    labels = [lab for lab, _ in elements]
    index = {lab: i for i, lab in enumerate(labels)}
    basis = [BasisElement(lab, name, name, deg) for lab, deg in elements]
    mu_idx = {}
    for k, table in mu.items():
        mu_idx[k] = {
            tuple(index[x] for x in key): {index[o]: c for o, c in out.items()}
            for key, out in table.items()
        }
    return AInfCategory(ring, period, [name], basis, mu_idx, {name: index[unit]})


def associative_algebra(ring, period, elements, unit, products):
    """Strictly unital associative algebra from a non-unit product table.

    ``products`` maps (x, y) label pairs to {label: coeff}; products with
    the unit are filled in automatically.
    """
    labels = [lab for lab, _ in elements]
    mu2 = {}
    for x in labels:
        mu2[(unit, x)] = {x: 1}
        if x != unit:
            mu2[(x, unit)] = {x: 1}
    for (x, y), out in products.items():
        if x == unit or y == unit:
            raise InputError("unit products are implicit")
        mu2[(x, y)] = dict(out)
    return single_object_algebra(ring, period, elements, unit, {2: mu2})


def zero_category(ring, period=None, name="0"):
    return AInfCategory(ring, period, [name], [], {}, {name: None})


# -- relation checking -------------------------------------------------------

@dataclass
class CheckResult:
    passed: bool
    arity: int | None = None
    witness: tuple | None = None
    residue: dict | None = None
    message: str = ""

    def __bool__(self):
        return self.passed


def _residue_nonzero(ring, residue):
    if ring.kind == "Fp":
        return any(c % ring.p != 0 for c in residue.values())
    return any(c != 0 for c in residue.values())


def strict_unitality_failures(cat: AInfCategory):
    """Violations of strict unitality, as human-readable strings."""
    bad = []
    units = {u for u in cat.units.values() if u is not None}
    for u in units:
        if cat.mu_apply((u,)):
            bad.append(f"mu_1 does not vanish on unit {cat.basis[u].name}")
    for k, table in cat.mu.items():
        if k < 2:
            continue
        for key in table:
            hits = [i for i in key if i in units]
            if not hits:
                continue
            if k >= 3:
                bad.append(f"mu_{k} does not vanish on unit-containing {key}")
    # mu_2 with units must be the identity on both sides
    for i, b in enumerate(cat.basis):
        ua = cat.units.get(b.source)
        ub = cat.units.get(b.target)
        if ua is not None:
            out = cat.mu_apply((ua, i))
            if out != {i: 1} and not (ua == i and out == {i: 1}):
                bad.append(f"mu_2(unit, {b.name}) != {b.name}")
        if ub is not None:
            out = cat.mu_apply((i, ub))
            if out != {i: 1}:
                bad.append(f"mu_2({b.name}, unit) != {b.name}")
    return bad


def check_ainf_relations(cat: AInfCategory, max_arity: int) -> CheckResult:
    """Getzler-Jones relations on every composable tuple up to max_arity.

    Total: returns a failure witness (arity, tuple, residue) instead of
    raising.
    """
    if max_arity > cat.arity_bound:
        raise InputError(
            f"max_arity {max_arity} exceeds declared bound {cat.arity_bound}")
    for k in range(1, max_arity + 1):
        for tup in cat.composable_tuples(k):
            residue = {}
            for r in range(k):
                for s in range(1, k - r + 1):
                    t = k - r - s
                    sign = -1 if (r + s * t) % 2 else 1
                    # Koszul: mu_s (degree s - 2) moves past the first r args
                    if (s % 2) and sum(cat.basis[i].degree for i in tup[:r]) % 2:
                        sign = -sign
                    inner = cat.mu_apply(tup[r:r + s])
                    for mid, c1 in inner.items():
                        outer_key = tup[:r] + (mid,) + tup[r + s:]
                        for out, c2 in cat.mu_apply(outer_key).items():
                            residue[out] = residue.get(out, 0) + sign * c1 * c2
            if _residue_nonzero(cat.ring, residue):
                names = tuple(cat.basis[i].name for i in tup)
                return CheckResult(False, k, tup, residue,
                                   f"A-infinity relation fails at arity {k} on {names}")
    return CheckResult(True)


def shifted_relation_residue(cat: AInfCategory, tup) -> dict:
    """Same coherence sum computed in the shifted, sign-free formulation.

    Used to cross-check the two conventions; must vanish exactly when the
    Getzler-Jones sum does (they differ by one global sign per tuple).
    """
    k = len(tup)
    residue = {}
    for r in range(k):
        for s in range(1, k - r + 1):
            sign = 1
            if sum(cat.sdeg(i) for i in tup[:r]) % 2:
                sign = -1  # b_s is odd
            inner = cat.shifted_mu(tup[r:r + s])
            for mid, c1 in inner.items():
                outer_key = tup[:r] + (mid,) + tup[r + s:]
                for out, c2 in cat.shifted_mu(outer_key).items():
                    residue[out] = residue.get(out, 0) + sign * c1 * c2
    return residue


# -- homotopy category -------------------------------------------------------

class LinearCategory:
    """Hom groups with distinguished generators and exact composition tables.

    Coordinates are canonical: integers reduced mod the generator orders
    over Z, field elements over Q / F_p.
    """

    def __init__(self, ring, objects):
        self.ring = ring
        self.objects = tuple(objects)
        self.hom_orders = {}     # (a, b) -> tuple of generator orders
        self.hom_group = {}      # (a, b) -> FinAbGroup
        self.comp = {}           # (a, b, c) -> {(i, j): coords in hom(a, c)}
        self.ident = {}          # a -> coords in hom(a, a)
        self._field = ring.field()

    # scalar helpers
    def _add(self, x, y):
        return self._field.add(x, y) if self._field else x + y

    def _mul(self, x, y):
        return self._field.mul(x, y) if self._field else x * y

    def _of_int(self, n):
        return self._field.of_int(n) if self._field else n

    def zero_coords(self, a, b):
        return tuple(self._of_int(0) for _ in self.hom_orders[(a, b)])

    def reduce(self, pair, coords):
        if self._field:
            return tuple(coords)
        return tuple(c % d if d else c for c, d in zip(coords, self.hom_orders[pair]))

    def add_coords(self, pair, x, y):
        return self.reduce(pair, tuple(self._add(a, b) for a, b in zip(x, y)))

    def scale_coords(self, pair, s, x):
        return self.reduce(pair, tuple(self._mul(s, a) for a in x))

    def compose(self, a, b, c, x, y):
        """x : a -> b followed by y : b -> c, bilinear in coordinates."""
        table = self.comp[(a, b, c)]
        out = list(self.zero_coords(a, c))
        for i, xi in enumerate(x):
            if xi == self._of_int(0):
                continue
            for j, yj in enumerate(y):
                if yj == self._of_int(0):
                    continue
                cell = table.get((i, j))
                if cell is None:
                    continue
                f = self._mul(xi, yj)
                for t, v in enumerate(cell):
                    out[t] = self._add(out[t], self._mul(f, v))
        return self.reduce((a, c), tuple(out))

    def is_zero_coords(self, pair, x):
        zero = self._of_int(0)
        return all(c == zero for c in self.reduce(pair, x))

    def gen_coords(self, pair, k):
        n = len(self.hom_orders[pair])
        return tuple(self._of_int(1 if i == k else 0) for i in range(n))

    def check_associativity_and_units(self):
        """Exact associativity/unit laws on all generator tuples."""
        for a in self.objects:
            for b in self.objects:
                x_gens = range(len(self.hom_orders[(a, b)]))
                for i in x_gens:
                    x = self.gen_coords((a, b), i)
                    lx = self.compose(a, a, b, self.ident[a], x)
                    rx = self.compose(a, b, b, x, self.ident[b])
                    if lx != self.reduce((a, b), x) or rx != self.reduce((a, b), x):
                        return False
                for c in self.objects:
                    for d in self.objects:
                        for i in range(len(self.hom_orders[(a, b)])):
                            for j in range(len(self.hom_orders[(b, c)])):
                                for k in range(len(self.hom_orders[(c, d)])):
                                    x = self.gen_coords((a, b), i)
                                    y = self.gen_coords((b, c), j)
                                    z = self.gen_coords((c, d), k)
                                    xy = self.compose(a, b, c, x, y)
                                    yz = self.compose(b, c, d, y, z)
                                    lhs = self.compose(a, c, d, xy, z)
                                    rhs = self.compose(a, b, d, x, yz)
                                    if lhs != rhs:
                                        return False
        return True

    # -- isomorphism search ------------------------------------------------

    def _candidate_scalars(self, order, bound):
        if self._field:
            if isinstance(self._field, fieldlin.PrimeField):
                return [self._field.of_int(v) for v in range(self._field.p)], True
            return [self._field.of_int(v) for v in range(-bound, bound + 1)], False
        if order:
            return list(range(order)), True
        return list(range(-bound, bound + 1)), False

    def _solve_left_inverse(self, x, y, f):
        """g with (f then g) = id_x, or None."""
        ngens = len(self.hom_orders[(y, x)])
        cols = []
        for l in range(ngens):
            g = self.gen_coords((y, x), l)
            cols.append(self.compose(x, y, x, f, g))
        idx = self.ident[x]
        n = len(self.hom_orders[(x, x)])
        if self._field:
            rows = [tuple(cols[l][i] for l in range(ngens)) for i in range(n)]
            return fieldlin.solve(self._field, rows, ngens, list(idx))
        orders = self.hom_orders[(x, x)]
        rel = [i for i, d in enumerate(orders) if d]
        mat = [[cols[l][i] for l in range(ngens)] +
               [orders[r] if i == r else 0 for r in rel]
               for i in range(n)]
        sol = int_solve(IntMatrix(n, ngens + len(rel), mat), idx)
        if sol is None:
            return None
        return self.reduce((y, x), sol[:ngens])

    def h_isomorphic(self, x, y, bound=2):
        """'yes' / 'no' / 'unknown' (search bound exhausted over Z or Q)."""
        pair = (x, y)
        scalar_sets = []
        exhaustive = True
        for d in self.hom_orders[pair]:
            vals, exh = self._candidate_scalars(d, bound)
            scalar_sets.append(vals)
            exhaustive = exhaustive and exh

        def candidates(i, acc):
            if i == len(scalar_sets):
                yield tuple(acc)
                return
            for v in scalar_sets[i]:
                acc.append(v)
                yield from candidates(i + 1, acc)
                acc.pop()

        for f in candidates(0, []):
            g = self._solve_left_inverse(x, y, f)
            if g is None:
                continue
            if self.compose(y, x, y, g, f) == self.reduce((y, y), self.ident[y]):
                return "yes"
        return "no" if exhaustive else "unknown"


def _hom_degree_indices(cat, a, b, cls):
    """Basis indices of hom(a, b) whose degree lies in the given class."""
    out = []
    for i in cat.hom_basis(a, b):
        d = cat.basis[i].degree
        if cat.period:
            hit = d % cat.period == cls % cat.period
        else:
            hit = d == cls
        if hit:
            out.append(i)
    return out


def _mu1_matrix(cat, rows_idx, cols_idx):
    pos = {i: r for r, i in enumerate(rows_idx)}
    data = [[0] * len(cols_idx) for _ in rows_idx]
    for c, i in enumerate(cols_idx):
        for o, v in cat.mu_apply((i,)).items():
            if o in pos:
                data[pos[o]][c] = v
    return IntMatrix(len(rows_idx), len(cols_idx), data)


class _H0Data:
    """Degree-0 homology of one hom complex, with projection."""

    def __init__(self, cat, a, b):
        self.deg0 = _hom_degree_indices(cat, a, b, 0)
        degm = _hom_degree_indices(cat, a, b, -1)
        degp = _hom_degree_indices(cat, a, b, 1)
        d_out = _mu1_matrix(cat, degm, self.deg0)
        d_in = _mu1_matrix(cat, self.deg0, degp)
        self.h = HomologyData(cat.ring, d_out, d_in)
        self._pos = {i: r for r, i in enumerate(self.deg0)}

    def project_basis_combination(self, combo: dict):
        """Project a linear combination {basis index: coeff} of cycles."""
        vec = [0] * len(self.deg0)
        for i, c in combo.items():
            vec[self._pos[i]] += c
        return self.h.project(vec)

    def rep_combination(self, k) -> dict:
        """Generator representative as {basis index: scalar}."""
        v = self.h.rep(k)
        return {i: c for i, c in zip(self.deg0, v)
                if c != 0 and c != fieldlin.Rationals.zero}


def homotopy_category(cat: AInfCategory) -> LinearCategory:
    """hC: hom_{hC}(a,b) = H_0(hom_C(a,b)) with mu_2-induced composition."""
    res = check_ainf_relations(cat, min(3, cat.arity_bound))
    if not res:
        raise InputError(f"not an A-infinity category: {res.message}")
    bad = strict_unitality_failures(cat)
    if bad:
        raise InputError("not strictly unital: " + "; ".join(bad))
    lin = LinearCategory(cat.ring, cat.objects)
    h0 = {}
    for a in cat.objects:
        for b in cat.objects:
            h = _H0Data(cat, a, b)
            h0[(a, b)] = h
            lin.hom_orders[(a, b)] = h.h.orders
            lin.hom_group[(a, b)] = h.h.group
    lin._h0 = h0
    for a in cat.objects:
        for b in cat.objects:
            for c in cat.objects:
                table = {}
                ha, hb, hc = h0[(a, b)], h0[(b, c)], h0[(a, c)]
                for i in range(ha.h.ngens):
                    xi = ha.rep_combination(i)
                    for j in range(hb.h.ngens):
                        yj = hb.rep_combination(j)
                        out = {}
                        for bi, ci in xi.items():
                            for bj, cj in yj.items():
                                for o, v in cat.mu_apply((bi, bj)).items():
                                    key_c = _scalar_mul(cat.ring, _scalar_mul(
                                        cat.ring, ci, cj), v)
                                    out[o] = _scalar_add(cat.ring, out.get(o), key_c)
                        coords = hc.project_basis_combination(
                            _combo_to_ints(cat.ring, out))
                        if any(v != lin._of_int(0) for v in coords):
                            table[(i, j)] = coords
                lin.comp[(a, b, c)] = table
    for a in cat.objects:
        u = cat.units[a]
        if u is None:
            lin.ident[a] = lin.zero_coords(a, a)
        else:
            lin.ident[a] = h0[(a, a)].project_basis_combination({u: 1})
    return lin


def _scalar_mul(ring, x, y):
    f = ring.field()
    if f:
        if isinstance(x, int):
            x = f.of_int(x)
        if isinstance(y, int):
            y = f.of_int(y)
        return f.mul(x, y)
    return x * y


def _scalar_add(ring, x, y):
    f = ring.field()
    if x is None:
        return y
    if f:
        return f.add(x, y)
    return x + y


def _combo_to_ints(ring, combo):
    # HomologyData.project over Z expects integer vectors; over a field the
    # scalars are already field elements and pass through unchanged.
    return combo


# -- functors ----------------------------------------------------------------

class AInfFunctor:
    """Object map plus multilinear components F_k of degree k - 1."""

    def __init__(self, source: AInfCategory, target: AInfCategory,
                 object_map: dict, comps: dict, arity_bound=4):
        if source.ring != target.ring:
            raise InputError("functor between categories over different rings")
        if source.period != target.period:
            raise InputError("functor must preserve the grading period")
        self.source = source
        self.target = target
        self.object_map = dict(object_map)
        for o in source.objects:
            if o not in self.object_map or self.object_map[o] not in target.objects:
                raise InputError(f"object map misses {o!r}")
        self.arity_bound = arity_bound
        self.comps = {}
        for k, table in comps.items():
            if k < 1:
                raise InputError("functor components start at F_1")
            clean = {}
            for key, out in table.items():
                key = tuple(key)
                if len(key) != k:
                    raise InputError(f"F_{k} key of wrong length")
                source._check_composable(key)
                want = source._reduce_degree(
                    sum(source.basis[i].degree for i in key) + k - 1)
                outs = {}
                for o, c in out.items():
                    if c == 0:
                        continue
                    ob = target.basis[o]
                    if ob.source != self.object_map[source.basis[key[0]].source] or \
                       ob.target != self.object_map[source.basis[key[-1]].target]:
                        raise InputError(f"F_{k}{key} output endpoints wrong")
                    if target._reduce_degree(ob.degree) != want:
                        raise InputError(f"F_{k}{key} output degree wrong")
                    outs[o] = c
                if outs:
                    clean[key] = outs
            if clean:
                self.comps[k] = clean

    def component(self, args) -> dict:
        return self.comps.get(len(args), {}).get(tuple(args), {})

    def shifted_component(self, args) -> dict:
        """F-hat_k = s o F_k o (s^-1)^k; F-hat has even degree."""
        conj = 0
        run = 0
        for m, idx in enumerate(args):
            if m > 0:
                conj += run
            run += self.source.sdeg(idx)
        sign = -1 if conj % 2 else 1
        return {o: sign * c for o, c in self.component(args).items()}

    def is_strict(self):
        return all(k == 1 for k in self.comps)


def identity_functor(cat: AInfCategory) -> AInfFunctor:
    return AInfFunctor(cat, cat, {o: o for o in cat.objects},
                       {1: {(i,): {i: 1} for i in range(len(cat.basis))}},
                       arity_bound=cat.arity_bound)


def functor_unitality_failures(f: AInfFunctor):
    bad = []
    for obj, u in f.source.units.items():
        if u is None:
            continue
        tu = f.target.units[f.object_map[obj]]
        if f.component((u,)) != {tu: 1}:
            bad.append(f"F_1 does not send the unit of {obj!r} to a unit")
    units = {u for u in f.source.units.values() if u is not None}
    for k, table in f.comps.items():
        if k < 2:
            continue
        for key in table:
            if any(i in units for i in key):
                bad.append(f"F_{k} does not vanish on unit-containing {key}")
    return bad


def _compositions(k, max_parts=None):
    """All ordered tuples of positive ints summing to k."""
    if k == 0:
        yield ()
        return
    for first in range(1, k + 1):
        for rest in _compositions(k - first):
            yield (first,) + rest


def check_functor_relations(f: AInfFunctor, max_arity: int) -> CheckResult:
    """Coherence of F with both A-infinity structures, in shifted form.

    LHS = sum F-hat (1 (x) b (x) 1), RHS = sum b^target (F-hat (x) ... (x)
    F-hat); the shifted components F-hat are even, so the only Koszul signs
    come from moving the odd b past shifted arguments on the left side.
    """
    if max_arity > f.arity_bound:
        raise InputError("max_arity exceeds the declared functor bound")
    src, tgt = f.source, f.target
    for k in range(1, max_arity + 1):
        for tup in src.composable_tuples(k):
            residue = {}
            for r in range(k):
                for s in range(1, k - r + 1):
                    sign = -1 if sum(src.sdeg(i) for i in tup[:r]) % 2 else 1
                    inner = src.shifted_mu(tup[r:r + s])
                    for mid, c1 in inner.items():
                        key = tup[:r] + (mid,) + tup[r + s:]
                        for out, c2 in f.shifted_component(key).items():
                            residue[out] = residue.get(out, 0) + sign * c1 * c2
            for parts in _compositions(k):
                blocks = []
                pos = 0
                for p in parts:
                    blocks.append(tup[pos:pos + p])
                    pos += p
                terms = [{(): 1}]
                images = [f.shifted_component(b) for b in blocks]
                combined = [((), 1)]
                for img in images:
                    nxt = []
                    for (prefix, c) in combined:
                        for o, v in img.items():
                            nxt.append((prefix + (o,), c * v))
                    combined = nxt
                del terms
                for (tgt_tup, c) in combined:
                    for out, v in tgt.shifted_mu(tgt_tup).items():
                        residue[out] = residue.get(out, 0) - c * v
            if _residue_nonzero(src.ring, residue):
                names = tuple(src.basis[i].name for i in tup)
                return CheckResult(False, k, tup, residue,
                                   f"functor relation fails at arity {k} on {names}")
    return CheckResult(True)


def compose_functors(g: AInfFunctor, f: AInfFunctor) -> AInfFunctor:
    """g o f, assembled through the shifted (sign-free) composition formula."""
    if f.target is not g.source and f.target.basis != g.source.basis:
        raise InputError("functors are not composable")
    src = f.source
    obj = {o: g.object_map[f.object_map[o]] for o in src.objects}
    bound = min(f.arity_bound, g.arity_bound)
    comps = {}
    max_k = max([k for k in f.comps] + [k for k in g.comps] + [1])
    for k in range(1, max_k + 1):
        table = {}
        for tup in src.composable_tuples(k):
            acc = {}
            for parts in _compositions(k):
                blocks = []
                pos = 0
                for p in parts:
                    blocks.append(tup[pos:pos + p])
                    pos += p
                combined = [((), 1)]
                for b in blocks:
                    img = f.shifted_component(b)
                    nxt = []
                    for (prefix, c) in combined:
                        for o, v in img.items():
                            nxt.append((prefix + (o,), c * v))
                    combined = nxt
                for (mid_tup, c) in combined:
                    for out, v in g.shifted_component(mid_tup).items():
                        acc[out] = acc.get(out, 0) + c * v
            # unconjugate: table entry = conj(tup) * shifted value
            conj = 0
            run = 0
            for m, idx in enumerate(tup):
                if m > 0:
                    conj += run
                run += src.sdeg(idx)
            sign = -1 if conj % 2 else 1
            acc = {o: sign * c for o, c in acc.items() if c != 0}
            if acc:
                table[tup] = acc
        if table:
            comps[k] = table
    return AInfFunctor(src, g.target, obj, comps, arity_bound=bound)


# -- quasi properties ---------------------------------------------------------

def induced_h0_matrices(f: AInfFunctor):
    """Per source pair (a, b): generator matrix of H0 hom(a,b) -> H0 hom(Fa,Fb)."""
    hs = {}
    ht = {}
    out = {}
    for a in f.source.objects:
        for b in f.source.objects:
            sa, sb = f.object_map[a], f.object_map[b]
            if (a, b) not in hs:
                hs[(a, b)] = _H0Data(f.source, a, b)
            if (sa, sb) not in ht:
                ht[(sa, sb)] = _H0Data(f.target, sa, sb)
            src_h = hs[(a, b)]
            tgt_h = ht[(sa, sb)]
            cols = []
            for k in range(src_h.h.ngens):
                combo = src_h.rep_combination(k)
                image = {}
                for i, c in combo.items():
                    for o, v in f.component((i,)).items():
                        image[o] = _scalar_add(f.source.ring, image.get(o),
                                               _scalar_mul(f.source.ring, c, v))
                cols.append(tgt_h.project_basis_combination(image))
            out[(a, b)] = (src_h, tgt_h, cols)
    return out


def is_quasi_fully_faithful(f: AInfFunctor) -> bool:
    """True iff H0 hom(a,b) -> H0 hom(Fa,Fb) is bijective for all pairs."""
    ring = f.source.ring
    for (a, b), (src_h, tgt_h, cols) in induced_h0_matrices(f).items():
        s = src_h.h.ngens
        t = tgt_h.h.ngens
        if ring.is_field:
            if s != t:
                return False
            field = ring.field()
            rows = [tuple(cols[j][i] for j in range(s)) for i in range(t)]
            if fieldlin.rank(field, rows) != s:
                return False
        else:
            phi = IntMatrix(t, s, [[cols[j][i] for j in range(s)] for i in range(t)])
            if not is_group_isomorphism(src_h.h.orders, tgt_h.h.orders, phi):
                return False
    return True


def is_quasi_equivalence(f: AInfFunctor, bound=2) -> bool:
    """Quasi-fully-faithful and essentially surjective on homotopy categories.

    The h-level isomorphism search is exhaustive over prime fields and over
    finite hom groups; otherwise it is a bounded search and a miss counts
    as failure (sound for "yes", incomplete for "no").
    """
    if not is_quasi_fully_faithful(f):
        return False
    report = essential_surjectivity_report(f, bound)
    return all(status == "yes" for status in report.values())


def essential_surjectivity_report(f: AInfFunctor, bound=2) -> dict:
    """Per target object: 'yes' / 'no' / 'unknown' for h-isomorphism to an image."""
    lin = homotopy_category(f.target)
    images = {f.object_map[a] for a in f.source.objects}
    report = {}
    for y in f.target.objects:
        if y in images:
            report[y] = "yes"
            continue
        statuses = [lin.h_isomorphic(x, y, bound) for x in sorted(images)]
        if "yes" in statuses:
            report[y] = "yes"
        elif "unknown" in statuses:
            report[y] = "unknown"
        else:
            report[y] = "no"
    return report
