"""Homology, Euler characteristics, psi, fold, shift, cones."""

import random

import pytest

from kzerolab.abgroup import FinAbGroup
from kzerolab.complexes import (
    Bounded,
    ChainMap,
    Complex,
    GroundRing,
    Periodic,
    bounded_complex,
    euler_characteristic,
    fold,
    homology,
    mapping_cone,
    periodic_complex,
    psi_class,
    shift,
)
from kzerolab.errors import ChainMapError, GradingError, InputError, PeriodError
from kzerolab.intmat import IntMatrix

Z = GroundRing.Z()


def M(rows):
    return IntMatrix.from_rows(rows)


def two_term(m):
    """0 -> Z --m--> Z -> 0 in degrees 1, 0."""
    return bounded_complex(Z, {0: 1, 1: 1}, {1: M([[m]])})


def test_homology_two_term():
    c = two_term(2)
    assert homology(c, 0) == FinAbGroup(0, (2,))
    assert homology(c, 1) == FinAbGroup.zero()
    assert homology(c, 5) == FinAbGroup.zero()


def test_homology_zero_differentials():
    c = bounded_complex(Z, {0: 2, 1: 3}, {})
    assert homology(c, 0) == FinAbGroup.free(2)
    assert homology(c, 1) == FinAbGroup.free(3)


def test_homology_periodic():
    c = periodic_complex(Z, 2, {0: 1}, {})
    assert homology(c, 0) == FinAbGroup.free(1)
    assert homology(c, 1) == FinAbGroup.zero()
    assert homology(c, 2) == FinAbGroup.free(1)  # degrees wrap mod n


def test_homology_over_fields():
    q = GroundRing.Q()
    f2 = GroundRing.Fp(2)
    c = bounded_complex(q, {0: 1, 1: 1}, {1: M([[2]])})
    # over Q multiplication by 2 is an isomorphism
    assert homology(c, 0) == FinAbGroup.zero()
    assert homology(c, 1) == FinAbGroup.zero()
    c = bounded_complex(f2, {0: 1, 1: 1}, {1: M([[2]])})
    # over F_2 it is the zero map
    assert homology(c, 0) == FinAbGroup.free(1)
    assert homology(c, 1) == FinAbGroup.free(1)


def test_d_squared_validated():
    with pytest.raises(InputError):
        bounded_complex(Z, {0: 1, 1: 1, 2: 1},
                        {1: M([[1]]), 2: M([[1]])})
    # but fine mod 2
    bounded_complex(GroundRing.Fp(2), {0: 1, 1: 1, 2: 1},
                    {1: M([[2]]), 2: M([[1]])})


def test_euler_characteristic():
    assert euler_characteristic(two_term(2)) == 0
    assert euler_characteristic(bounded_complex(Z, {0: 1}, {})) == 1
    assert euler_characteristic(bounded_complex(Z, {0: 2, 1: 1, 2: 3}, {})) == 4
    with pytest.raises(GradingError):
        euler_characteristic(periodic_complex(Z, 2, {0: 1}, {}))


def test_psi_class():
    c = periodic_complex(Z, 2, {0: 1}, {})
    assert psi_class(c) == 1
    assert psi_class(shift(c, 1)) == -1
    with pytest.raises(PeriodError):
        psi_class(periodic_complex(Z, 3, {0: 1}, {}))
    with pytest.raises(GradingError):
        psi_class(bounded_complex(Z, {0: 1}, {}))


def test_fold():
    c = bounded_complex(Z, {0: 1, 2: 1}, {})
    f = fold(c, 2)
    assert f.grading == Periodic(2)
    assert homology(f, 0) == FinAbGroup.free(2)
    assert homology(f, 1) == FinAbGroup.zero()

    f = fold(two_term(2), 2)
    assert homology(f, 0) == FinAbGroup(0, (2,))
    assert homology(f, 1) == FinAbGroup.zero()

    empty = bounded_complex(Z, {}, {})
    fe = fold(empty, 2)
    assert fe.total_rank() == 0 and fe.is_periodic

    with pytest.raises(PeriodError):
        fold(c, 3)
    with pytest.raises(GradingError):
        fold(periodic_complex(Z, 2, {0: 1}, {}), 2)


def test_fold_three_degree_block_structure():
    # degrees 0,1,2 with d1, d2; folding mod 2 merges degrees 0 and 2
    c = bounded_complex(Z, {0: 1, 1: 2, 2: 1},
                        {1: M([[1, 1]]), 2: M([[1], [-1]])})
    f = fold(c, 2)
    assert f.rank(0) == 2 and f.rank(1) == 2
    for i in (0, 1):
        assert homology(f, i).free_rank == \
            sum(homology(c, j).free_rank for j in range(0, 3) if j % 2 == i)


def test_shift():
    c = two_term(2)
    assert shift(c, 0) == c
    s = shift(c, 1)
    assert s.rank(1) == 1 and s.rank(2) == 1
    assert s.differential(2) == M([[-2]])
    p = periodic_complex(Z, 2, {0: 1, 1: 1}, {1: M([[3]])})
    assert shift(p, 2) == p
    assert shift(shift(p, 1), 1) == p


def test_mapping_cone_identity_acyclic():
    c = two_term(2)
    f = ChainMap(c, c, {0: M([[1]]), 1: M([[1]])})
    cone = mapping_cone(f)
    for i in cone.degrees():
        assert homology(cone, i).is_zero()


def test_mapping_cone_zero_and_times2():
    pt = bounded_complex(Z, {0: 1}, {})
    zero_map = ChainMap(pt, pt, {})
    cone = mapping_cone(zero_map)
    assert homology(cone, 0) == FinAbGroup.free(1)
    assert homology(cone, 1) == FinAbGroup.free(1)

    times2 = ChainMap(pt, pt, {0: M([[2]])})
    cone = mapping_cone(times2)
    assert homology(cone, 0) == FinAbGroup(0, (2,))
    assert homology(cone, 1) == FinAbGroup.zero()


def test_chain_map_validation():
    c = two_term(2)
    d = two_term(4)
    # f_0 = 2, f_1 = 1 commutes: 2*2 == 4*1
    ChainMap(c, d, {0: M([[2]]), 1: M([[1]])})
    with pytest.raises(ChainMapError) as ei:
        ChainMap(c, d, {0: M([[1]]), 1: M([[1]])})
    assert ei.value.witness_degree == 1


# -- randomized periodic corpus ------------------------------------------------

def random_unimodular(rng, n):
    m = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(2 * n):
        i, j = rng.randrange(n), rng.randrange(n)
        if i != j:
            c = rng.randint(-2, 2)
            for k in range(n):
                m[i][k] += c * m[j][k]
    return IntMatrix.from_rows(m)


def random_period2_clean(rng, max_pieces=4):
    """Random period-2 complex: block pieces conjugated by unimodular base change."""
    r0 = r1 = 0
    entries01 = []
    entries10 = []
    for _ in range(rng.randint(1, max_pieces)):
        kind = rng.choice(["s0", "s1", "disc01", "disc10"])
        if kind == "s0":
            r0 += 1
        elif kind == "s1":
            r1 += 1
        elif kind == "disc01":
            r0 += 1
            r1 += 1
            entries01.append((r0 - 1, r1 - 1, rng.randint(-4, 4)))
        else:
            r0 += 1
            r1 += 1
            entries10.append((r1 - 1, r0 - 1, rng.randint(-4, 4)))
    d1 = [[0] * r1 for _ in range(r0)]
    for (r, c, m) in entries01:
        d1[r][c] = m
    d0 = [[0] * r0 for _ in range(r1)]
    for (r, c, m) in entries10:
        d0[r][c] = m
    # change of basis x_i = P_i y_i turns the differentials into
    # P0^-1 d1 P1 and P1^-1 d0 P0, which keeps d o d = 0 exactly
    p0 = random_unimodular(rng, r0)
    p1 = random_unimodular(rng, r1)
    p0_inv = _unimodular_inverse(p0)
    p1_inv = _unimodular_inverse(p1)
    nd1 = p0_inv * IntMatrix(r0, r1, d1) * p1
    nd0 = p1_inv * IntMatrix(r1, r0, d0) * p0
    return periodic_complex(Z, 2, {0: r0, 1: r1}, {1: nd1, 0: nd0})


def _unimodular_inverse(p):
    from kzerolab.intmat import smith_normal_form
    sf = smith_normal_form(p)
    assert all(d == 1 for d in sf.diag)
    # U P V = I  =>  P^-1 = V U
    return sf.V * sf.U


def random_chain_map(rng, a, b):
    """d_B h + h d_A for random degreewise h, always a chain map."""
    n = a.grading.n
    h = {}
    for i in range(n):
        rows, cols = b.rank(i + 1), a.rank(i)
        h[i] = IntMatrix(rows, cols,
                         [[rng.randint(-2, 2) for _ in range(cols)] for _ in range(rows)])
    comps = {}
    for i in range(n):
        m = b.differential(i + 1) * h[i] + h[(i - 1) % n] * a.differential(i)
        comps[i] = m
    return ChainMap(a, b, comps)


def test_psi_additivity_over_cones():
    rng = random.Random(1234)
    for _ in range(60):
        a = random_period2_clean(rng)
        b = random_period2_clean(rng)
        f = random_chain_map(rng, a, b)
        cone = mapping_cone(f)
        assert psi_class(cone) == psi_class(b) - psi_class(a)


def test_psi_shift_sign_and_double_shift():
    rng = random.Random(99)
    for _ in range(40):
        c = random_period2_clean(rng)
        assert psi_class(shift(c, 1)) == -psi_class(c)
        assert psi_class(shift(c, 2)) == psi_class(c)


def test_fold_compatibility():
    rng = random.Random(31)
    for _ in range(40):
        # random bounded complex from shifted two-term pieces
        deg = 0
        pieces = []
        for _ in range(rng.randint(1, 3)):
            m = rng.randint(-3, 3)
            pieces.append((deg, m))
            deg += 2 + rng.randint(0, 1)
        c = _assemble_two_term_sum(pieces)
        folded = fold(c, 2)
        expected = sum((-1) ** (i % 2) * homology(c, i).free_rank
                       for i in c.degrees())
        assert psi_class(folded) == expected


def _assemble_two_term_sum(pieces):
    """Direct sum of two-term complexes Z --m--> Z placed at given degrees."""
    ranks = {}
    positions = []
    for (d0, m) in pieces:
        i0 = ranks.get(d0, 0)
        i1 = ranks.get(d0 + 1, 0)
        ranks[d0] = i0 + 1
        ranks[d0 + 1] = i1 + 1
        positions.append((d0, i0, i1, m))
    diffs = {}
    for deg in list(ranks):
        rows, cols = ranks.get(deg - 1, 0), ranks[deg]
        if rows and cols:
            diffs[deg] = [[0] * cols for _ in range(rows)]
    for (d0, i0, i1, m) in positions:
        diffs[d0 + 1][i0][i1] = m
    return bounded_complex(
        Z, ranks, {d: IntMatrix.from_rows(m) for d, m in diffs.items()})


def test_quasi_isomorphism_invariance():
    rng = random.Random(7)
    for _ in range(30):
        a = random_period2_clean(rng)
        # b = a + elementary acyclic disc, inclusion map
        r0, r1 = a.rank(0), a.rank(1)
        d1 = a.differential(1)
        d0 = a.differential(0)
        nd1 = [row + [0] for row in d1.tolists()] + [[0] * r1 + [1]]
        nd0 = [row + [0] for row in d0.tolists()] + [[0] * r0 + [0]]
        b = periodic_complex(Z, 2, {0: r0 + 1, 1: r1 + 1},
                             {1: IntMatrix.from_rows(nd1),
                              0: IntMatrix.from_rows(nd0)})
        inc0 = IntMatrix(r0 + 1, r0, [[1 if i == j else 0 for j in range(r0)]
                                      for i in range(r0 + 1)])
        inc1 = IntMatrix(r1 + 1, r1, [[1 if i == j else 0 for j in range(r1)]
                                      for i in range(r1 + 1)])
        f = ChainMap(a, b, {0: inc0, 1: inc1})
        cone = mapping_cone(f)
        if all(homology(cone, i).is_zero() for i in range(2)):
            assert psi_class(a) == psi_class(b)
