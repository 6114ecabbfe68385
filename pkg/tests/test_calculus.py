from __future__ import annotations

import pytest

from _util import XI_ZETA
from wedgelevel.calculus import (
    DegenerateCommutator,
    Tag,
    class_counts,
    classify_commutator,
    commutator_eval,
    expected_class_counts,
    matrix_commutator_class,
    z_generator,
)
from wedgelevel.indexing import WedgeSpec
from wedgelevel.matrices import commutator, conj_left
from wedgelevel.terms import Product, Realizer, Transvection, WedgeTransvection

P = XI_ZETA
XI, ZETA, ZETA1 = P.gens()


def _terms(word):
    return [(f.I, f.J, f.arg) for f in word]


def test_tutorial_vanishes():
    assert classify_commutator((1, 4), (1, 5), 2, 3).tag is Tag.VANISHES


def test_tutorial_single_shift():
    cls = classify_commutator((1, 3), (3, 5), 2, 3)
    assert cls.tag is Tag.SINGLE_SHIFT
    assert _terms(cls.instantiate(XI, ZETA)) == [((1, 2), (3, 5), -XI * ZETA)]


def test_tutorial_triple_product():
    cls = classify_commutator((1, 3), (2, 4), 2, 3)
    assert cls.tag is Tag.TRIPLE_PRODUCT
    spec = WedgeSpec(5, 2)
    got = Realizer(spec, P)(cls.instantiate(XI, ZETA))
    want = Realizer(spec, P)(
        Product((Transvection((1, 2), (2, 4), -XI * ZETA), Transvection((1, 2), (3, 4), XI * ZETA**2), Transvection((1, 3), (3, 4), ZETA * XI)))
    )
    assert got == want


def test_eval_shift_in_trivectors():
    spec = WedgeSpec(7, 3)
    word = commutator_eval(Transvection((1, 2, 3), (4, 5, 6), XI), 6, 7, ZETA, spec, checked=True)
    assert _terms(word) == [((1, 2, 3), (4, 5, 7), XI * ZETA)]


def test_eval_bivector_triple():
    spec = WedgeSpec(6, 2)
    word = commutator_eval(Transvection((1, 2), (3, 4), XI), 4, 2, ZETA, spec, checked=True)
    want = Product((Transvection((1, 4), (2, 3), -XI * ZETA**2), Transvection((1, 4), (3, 4), -ZETA * XI), Transvection((1, 2), (2, 3), -XI * ZETA)))
    assert Realizer(spec, P)(word) == Realizer(spec, P)(want)


def test_eval_vanishing_is_empty():
    word = commutator_eval(Transvection((1, 4), (1, 5), XI), 2, 3, ZETA, WedgeSpec(5, 2), checked=True)
    assert len(word) == 0


def test_degenerate_raises():
    with pytest.raises(DegenerateCommutator):
        commutator_eval(Transvection((1, 2), (1, 3), XI), 3, 2, ZETA, WedgeSpec(4, 2))


@pytest.mark.parametrize("n,m", [(4, 2), (5, 2), (5, 3)])
def test_classifier_matches_matrices_exhaustively(n, m):
    spec = WedgeSpec(n, m)
    real = Realizer(spec, P)
    for j in range(1, n + 1):
        for i in range(1, n + 1):
            if i == j:
                continue
            for I, J in spec.pairs():
                cls = classify_commutator(I, J, j, i)
                assert matrix_commutator_class(spec, I, J, j, i, real) == cls.tag.value
                if cls.tag is not Tag.DEGENERATE:
                    lhs = real(commutator(Transvection(I, J, XI), WedgeTransvection(j, i, ZETA)))
                    assert lhs == real(cls.instantiate(XI, ZETA))


@pytest.mark.parametrize("n,m", [(4, 2), (5, 2), (6, 2), (5, 3), (6, 3), (7, 3), (8, 4)])
def test_class_tallies(n, m):
    spec = WedgeSpec(n, m)
    want = expected_class_counts(spec)
    for j, i in [(1, 2), (2, 1), (n, 1), (2, n)]:
        assert class_counts(spec, j, i) == want


def test_diagonal_and_equal_roots_rejected():
    with pytest.raises(ValueError):
        classify_commutator((1, 2), (1, 2), 3, 1)
    with pytest.raises(ValueError):
        classify_commutator((1, 2), (1, 3), 2, 2)


def test_z_generator():
    spec = WedgeSpec(4, 2)
    real = Realizer(spec, P)
    I, J = (1, 2), (3, 4)
    assert real(z_generator(I, J, XI, P(0))) == real(Transvection(I, J, XI))
    assert real(z_generator(I, J, P(0), ZETA)).is_identity()
    direct = conj_left(real(Transvection(J, I, ZETA)), real(Transvection(I, J, XI)))
    assert real(z_generator(I, J, XI, ZETA)) == direct
