from __future__ import annotations

import random
from math import comb

import pytest

from _util import XI_ZETA, oracle_wedge, random_invertible, random_symbolic
from wedgelevel.indexing import WedgeSpec
from wedgelevel.matrices import ExactMatrix, transvection, torus
from wedgelevel.rings import Ring
from wedgelevel.terms import Realizer, Transvection, realize
from wedgelevel.wedge import (
    det_check,
    det_exponent,
    wedge2_transvection_formula,
    wedge_diag,
    wedge_matrix,
    wedge_transvection_formula,
)

P = XI_ZETA
XI = P.gens()[0]
Z9 = Ring.modular(9)


def _factors(word):
    return [(f.I, f.J, f.arg) for f in word]


def test_identity_maps_to_identity():
    spec = WedgeSpec(5, 2)
    assert wedge_matrix(spec, ExactMatrix.identity(P, 5)).is_identity()


def test_bivector_transvection_example():
    # the minors give t_{14,34} and t_{15,35}; t_{14,24} and t_{15,25} would
    # disagree with the oracle
    spec = WedgeSpec(5, 2)
    word = wedge_transvection_formula(spec, 1, 3, XI)
    assert _factors(word) == [((1, 2), (2, 3), -XI), ((1, 4), (3, 4), XI), ((1, 5), (3, 5), XI)]
    assert realize(word, spec) == wedge_matrix(spec, transvection(P, 5, 1, 3, XI.payload))


def test_trivector_transvection_example():
    spec = WedgeSpec(5, 3)
    word = wedge_transvection_formula(spec, 1, 3, XI)
    assert _factors(word) == [((1, 2, 4), (2, 3, 4), -XI), ((1, 2, 5), (2, 3, 5), -XI), ((1, 4, 5), (3, 4, 5), XI)]
    assert realize(word, spec) == wedge_matrix(spec, transvection(P, 5, 1, 3, XI.payload))


def test_realize_single_and_empty():
    spec = WedgeSpec(5, 2)
    m = realize(Transvection((1, 2), (1, 3), XI), spec)
    assert m.off_diagonal() == [(0, 1, XI.payload)]
    assert Realizer(spec, P)(wedge_transvection_formula(spec, 1, 3, XI) * wedge_transvection_formula(spec, 1, 3, -XI)).is_identity()


@pytest.mark.parametrize("n,m", [(3, 1), (4, 2), (5, 2), (5, 3), (6, 3)])
def test_wedge_matrix_matches_leibniz_oracle(n, m):
    spec = WedgeSpec(n, m)
    rnd = random.Random(n * 10 + m)
    for _ in range(3):
        g = random_invertible(Z9, n, rnd)
        assert wedge_matrix(spec, g) == oracle_wedge(spec, g)
    g = random_symbolic(n, rnd, length=3)
    assert wedge_matrix(spec, g) == oracle_wedge(spec, g)


@pytest.mark.parametrize("n,m", [(4, 2), (5, 2), (6, 2), (5, 3), (6, 3)])
def test_homomorphism_small(n, m):
    spec = WedgeSpec(n, m)
    rnd = random.Random(n + m)
    for _ in range(10):
        g, h = random_invertible(Z9, n, rnd), random_invertible(Z9, n, rnd)
        assert wedge_matrix(spec, g * h) == wedge_matrix(spec, g) * wedge_matrix(spec, h)
    g, h = random_symbolic(n, rnd), random_symbolic(n, rnd)
    assert wedge_matrix(spec, g * h) == wedge_matrix(spec, g) * wedge_matrix(spec, h)


@pytest.mark.parametrize("n,m", [(4, 2), (5, 2), (5, 3), (6, 3)])
def test_general_formula_all_pairs(n, m):
    spec = WedgeSpec(n, m)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                continue
            word = wedge_transvection_formula(spec, i, j, XI)
            assert len(word) == comb(n - 2, m - 1)
            assert realize(word, spec) == wedge_matrix(spec, transvection(P, n, i, j, XI.payload))


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_bivector_block_formula_all_pairs(n):
    spec = WedgeSpec(n, 2)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j:
                word = wedge2_transvection_formula(n, i, j, XI)
                assert len(word) == n - 2
                assert realize(word, spec) == wedge_matrix(spec, transvection(P, n, i, j, XI.payload))


def test_bivector_formula_reverse_pair():
    spec = WedgeSpec(5, 2)
    word = wedge2_transvection_formula(5, 2, 1, XI)
    assert realize(word, spec) == wedge_matrix(spec, transvection(P, 5, 2, 1, XI.payload))


def test_factor_count_large():
    assert len(wedge_transvection_formula(WedgeSpec(12, 4), 1, 2, XI)) == 120


def test_formula_rejects_equal_indices():
    with pytest.raises(ValueError):
        wedge_transvection_formula(WedgeSpec(4, 2), 2, 2, XI)


def test_wedge_diag_examples():
    spec = WedgeSpec(5, 4)
    d = wedge_diag(spec, 2, XI)
    assert [d.entry(k, k) for k in range(5)] == [XI.payload] * 3 + [P.one, XI.payload]
    assert wedge_diag(spec, 2, P(1)).is_identity()
    spec = WedgeSpec(4, 2)
    d = wedge_diag(spec, 1, XI)
    assert [d.entry(k, k) for k in range(6)] == [XI.payload] * 3 + [P.one] * 3
    assert d == wedge_matrix(spec, torus(P, 4, 1, XI.payload))


@pytest.mark.parametrize("n,m,e", [(5, 2, 4), (6, 3, 10)])
def test_det_exponent(n, m, e):
    assert det_exponent(WedgeSpec(n, m)) == e


@pytest.mark.parametrize("ring", [Z9, Ring.modular(5)])
def test_det_relation(ring):
    rnd = random.Random(11)
    for n, m in [(4, 2), (5, 2), (5, 3)]:
        spec = WedgeSpec(n, m)
        for _ in range(5):
            assert det_check(spec, random_invertible(ring, n, rnd))


def test_det_relation_symbolic():
    spec = WedgeSpec(4, 2)
    g = ExactMatrix.diagonal(P, [XI.payload, P.one, P.gens()[1].payload, P.one]) * random_symbolic(4, random.Random(12))
    assert det_check(spec, g)


def test_wrong_size_rejected():
    with pytest.raises(ValueError):
        wedge_matrix(WedgeSpec(5, 2), ExactMatrix.identity(P, 4))
