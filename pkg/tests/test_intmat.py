"""Smith normal form against the gcd-of-minors oracle, plus transform checks."""

import random
from itertools import combinations
from math import gcd

import pytest

from kzerolab.intmat import IntMatrix, kernel_basis, smith_normal_form, solve


def minor_gcd_invariant_factors(m: IntMatrix):
    """Independent oracle: d_k = gcd(k-minors) / gcd((k-1)-minors).

    Brute-force enumeration of all k x k minors; completely independent of
    the elimination code under test.
    """
    n = min(m.rows, m.cols)
    g_prev = 1
    out = []
    for k in range(1, n + 1):
        g = 0
        for ri in combinations(range(m.rows), k):
            for ci in combinations(range(m.cols), k):
                g = gcd(g, m.submatrix(ri, ci).det())
        if g == 0:
            out.extend([0] * (n - k + 1))
            break
        out.append(g // g_prev)
        g_prev = g
    return tuple(out)


def check_form(a):
    sf = smith_normal_form(a)
    assert sf.U * a * sf.V == sf.D
    assert sf.U * sf.u_inv == IntMatrix.identity(a.rows)
    assert sf.V * sf.v_inv == IntMatrix.identity(a.cols)
    assert sf.U.det() in (1, -1)
    assert sf.V.det() in (1, -1)
    # canonical shape: non-negative divisibility chain on the diagonal
    for i in range(a.rows):
        for j in range(a.cols):
            if i != j:
                assert sf.D[i, j] == 0
    prev = None
    for d in sf.diag:
        assert d >= 0
        if prev is not None and prev != 0:
            assert d % prev == 0
        if prev == 0:
            assert d == 0
        prev = d
    return sf


def test_spec_example_2x2():
    sf = check_form(IntMatrix.from_rows([[2, 4], [6, 8]]))
    assert sf.diag == (2, 4)


def test_identity_and_zero():
    sf = check_form(IntMatrix.identity(2))
    assert sf.diag == (1, 1)
    sf = check_form(IntMatrix.zeros(3, 2))
    assert sf.diag == (0, 0)


def test_empty_matrices():
    for shape in [(0, 0), (0, 3), (3, 0)]:
        sf = check_form(IntMatrix.zeros(*shape))
        assert sf.diag == ()


def test_known_3x3():
    # sympy docs example: diag(1, 10, 30)
    sf = check_form(IntMatrix.from_rows([[12, 6, 4], [3, 9, 6], [2, 16, 14]]))
    assert sf.diag == (1, 10, 30)


def test_oracle_equivalence_sampled():
    rng = random.Random(20240611)
    for _ in range(400):
        r = rng.randint(1, 4)
        c = rng.randint(1, 4)
        a = IntMatrix(r, c, [[rng.randint(-3, 3) for _ in range(c)] for _ in range(r)])
        sf = check_form(a)
        assert sf.diag == minor_gcd_invariant_factors(a), a


def test_round_trip_random_larger_entries():
    rng = random.Random(777)
    for _ in range(120):
        r = rng.randint(0, 6)
        c = rng.randint(0, 6)
        a = IntMatrix(r, c, [[rng.randint(-10, 10) for _ in range(c)] for _ in range(r)])
        check_form(a)


def test_kernel_basis():
    a = IntMatrix.from_rows([[1, 2, 3], [2, 4, 6]])
    k = kernel_basis(a)
    assert k.cols == 2
    assert (a * k).is_zero()
    # kernel columns are primitive: content 1
    for j in range(k.cols):
        col = k.column(j)
        g = 0
        for x in col:
            g = gcd(g, x)
        assert g == 1


def test_solve():
    a = IntMatrix.from_rows([[2, 0], [0, 3]])
    assert solve(a, (4, 9)) == (2, 3)
    assert solve(a, (1, 0)) is None
    a = IntMatrix.from_rows([[1, 2], [2, 4]])
    assert solve(a, (3, 6)) is not None
    assert solve(a, (3, 5)) is None


def test_det():
    assert IntMatrix.identity(3).det() == 1
    assert IntMatrix.from_rows([[2, 4], [6, 8]]).det() == -8
    assert IntMatrix(0, 0, []).det() == 1
    rng = random.Random(5)
    # multiplicativity spot check
    for _ in range(25):
        a = IntMatrix(3, 3, [[rng.randint(-4, 4) for _ in range(3)] for _ in range(3)])
        b = IntMatrix(3, 3, [[rng.randint(-4, 4) for _ in range(3)] for _ in range(3)])
        assert (a * b).det() == a.det() * b.det()


def test_shape_errors():
    with pytest.raises(ValueError):
        IntMatrix(2, 2, [[1, 2], [3]])
    with pytest.raises(ValueError):
        IntMatrix.from_rows([[1]]) * IntMatrix.from_rows([[1, 2], [3, 4]])
