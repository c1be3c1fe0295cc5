"""Canonical forms of finitely generated abelian groups."""

import random

import pytest

from kzerolab.abgroup import (
    CokernelPresentation,
    FinAbGroup,
    abelian_group_from_relations,
    groups_isomorphic,
)
from kzerolab.intmat import IntMatrix


def test_spec_examples():
    assert abelian_group_from_relations(1, IntMatrix.from_rows([[2]])) == \
        FinAbGroup(0, (2,))
    assert abelian_group_from_relations(3, IntMatrix(0, 3, [])) == FinAbGroup.free(3)
    # diag(2, 3) presents Z/6: SNF oracle gives diag(1, 6)
    assert abelian_group_from_relations(2, IntMatrix.from_rows([[2, 0], [0, 3]])) == \
        FinAbGroup(0, (6,))


def test_isomorphism():
    assert groups_isomorphic(FinAbGroup.free(1), FinAbGroup.free(1))
    # CRT: Z/2 + Z/3 canonicalizes to Z/6
    g = abelian_group_from_relations(2, IntMatrix.from_rows([[2, 0], [0, 3]]))
    assert groups_isomorphic(g, FinAbGroup(0, (6,)))
    assert not groups_isomorphic(FinAbGroup.free(1), FinAbGroup(0, (2,)))


def test_canonical_form_validation():
    with pytest.raises(ValueError):
        FinAbGroup(0, (1,))
    with pytest.raises(ValueError):
        FinAbGroup(0, (4, 2))  # not a divisibility chain in ascending order
    FinAbGroup(0, (2, 4, 8))


def test_invariance_under_row_col_permutation_and_signs():
    rng = random.Random(99)
    for _ in range(60):
        g = rng.randint(1, 4)
        r = rng.randint(0, 4)
        rel = [[rng.randint(-3, 3) for _ in range(g)] for _ in range(r)]
        base = abelian_group_from_relations(g, IntMatrix(r, g, rel))
        rows = rel[:]
        rng.shuffle(rows)
        cols = list(range(g))
        rng.shuffle(cols)
        scrambled = [[row[c] * rng.choice((1, -1)) for c in cols] for row in rows]
        # sign flips of whole rows/cols and permutations preserve the group
        perm = [[row[c] for c in cols] for row in rows]
        assert abelian_group_from_relations(g, IntMatrix(r, g, perm)) == base
        flipped = [[-x for x in row] for row in rel]
        assert abelian_group_from_relations(g, IntMatrix(r, g, flipped)) == base
        del scrambled


def test_canonical_idempotence():
    rng = random.Random(3)
    for _ in range(40):
        g = rng.randint(1, 4)
        r = rng.randint(0, 4)
        rel = IntMatrix(r, g, [[rng.randint(-4, 4) for _ in range(g)] for _ in range(r)])
        grp = abelian_group_from_relations(g, rel)
        # re-present the canonical form: generators = rank + torsion count,
        # relations t_i * e_i
        n = grp.free_rank + len(grp.torsion)
        rows = []
        for i, t in enumerate(grp.torsion):
            row = [0] * n
            row[grp.free_rank + i] = t
            rows.append(row)
        again = abelian_group_from_relations(n, IntMatrix(len(rows), n, rows))
        assert again == grp


def test_direct_sum():
    a = FinAbGroup(1, (2,))
    b = FinAbGroup(0, (3,))
    assert a.direct_sum(b) == FinAbGroup(1, (6,))
    assert FinAbGroup(0, (2,)).direct_sum(FinAbGroup(0, (2,))) == FinAbGroup(0, (2, 2))


def test_cokernel_presentation_coordinates():
    # Z^2 / <(2, 0), (0, 3)> = Z/6 after canonicalization
    rel = IntMatrix.from_rows([[2, 0], [0, 3]])
    pres = CokernelPresentation(2, rel)
    assert pres.group == FinAbGroup(0, (6,))
    assert pres.ngens == 1
    # the class map is a homomorphism onto Z/6
    seen = set()
    for x in range(-6, 7):
        for y in range(-6, 7):
            c = pres.coords((x, y))
            seen.add(c)
            c2 = pres.coords((x + 2, y))
            assert c == c2  # adding a relation column does not move the class
    assert len(seen) == 6
    # generator representative really has the right class
    rep = pres.representative(0)
    assert pres.coords(rep) == pres.reduce((1,))


def test_cokernel_presentation_mixed():
    # Z^3 / <(0,0,4)> = Z^2 + Z/4
    rel = IntMatrix.from_rows([[0], [0], [4]])
    pres = CokernelPresentation(3, rel)
    assert pres.group == FinAbGroup(2, (4,))
    v = (1, 2, 3)
    c = pres.coords(v)
    back = pres.vector_from_coords(c)
    assert pres.coords(back) == c
    assert pres.is_zero((0, 0, 4))
    assert not pres.is_zero((0, 0, 1))
