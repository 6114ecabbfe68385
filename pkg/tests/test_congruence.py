from __future__ import annotations

import random
from itertools import permutations, product

import pytest

from _util import random_invertible
from wedgelevel.congruence import (
    IN_SET_IMAGE,
    NOT_FOUND,
    SCALAR_TWIST,
    NotDecomposable,
    brute_force_decomposable,
    congruence_predicates,
    congruence_wedge_membership,
    factor_decomposable,
    in_wedge_image,
    intersect_mod,
    is_decomposable,
    nullspace_mod,
    reduce_matrix,
)
from wedgelevel.indexing import WedgeSpec
from wedgelevel.matrices import ExactMatrix, transvection
from wedgelevel.rings import FiniteIdeal, Ring, RingError
from wedgelevel.wedge import wedge_matrix, wedge_vectors

Z9, F3, F5 = Ring.modular(9), Ring.modular(3), Ring.modular(5)
A3 = FiniteIdeal(Z9, 3)
S42 = WedgeSpec(4, 2)


def vec(spec, coords):
    w = [0] * spec.N
    for I, v in coords.items():
        w[spec.rank(I)] = v
    return w


def test_reduce_examples():
    assert reduce_matrix(transvection(Z9, 3, 1, 2, 3), A3).is_identity()
    assert reduce_matrix(ExactMatrix.identity(Z9, 3), A3) == ExactMatrix.identity(F3, 3)
    r = reduce_matrix(ExactMatrix.diagonal(Z9, [4, 1, 1]), A3)
    assert r.ring == F3 and r.is_identity()


def test_reduce_rejects_whole_ideal_and_wrong_ring():
    with pytest.raises(RingError):
        reduce_matrix(ExactMatrix.identity(Z9, 2), FiniteIdeal.whole(Z9))
    with pytest.raises(RingError):
        reduce_matrix(ExactMatrix.identity(F5, 2), A3)


def test_reduce_is_a_homomorphism():
    rnd = random.Random(0)
    for _ in range(30):
        g, h = random_invertible(Z9, 4, rnd), random_invertible(Z9, 4, rnd)
        assert reduce_matrix(g * h, A3) == reduce_matrix(g, A3) * reduce_matrix(h, A3)


@pytest.mark.parametrize(
    "g,principal,full",
    [
        (ExactMatrix.unit(Z9, 3, 0, 1, 3), True, True),
        # 4 = 1 mod 3, so 4e reduces to e and is principal-congruent as well
        (ExactMatrix.diagonal(Z9, [4, 4, 4]), True, True),
        (ExactMatrix.diagonal(Z9, [2, 2, 2]), False, True),
        (transvection(Z9, 3, 1, 2, 1), False, False),
    ],
)
def test_congruence_predicates(g, principal, full):
    flags = congruence_predicates(g, A3)
    assert (flags.principal_congruence, flags.full_congruence) == (principal, full)


def test_nullspace_and_intersection():
    basis = nullspace_mod([[1, 1, 0], [0, 1, 1]], 3, 5)
    assert basis == [[1, 4, 1]]
    assert intersect_mod([[[1, 0, 0], [0, 1, 0]], [[0, 1, 0], [0, 0, 1]]], 3, 5) == [[0, 1, 0]]


def test_factor_examples():
    w = vec(S42, {(1, 2): 1})
    v1, v2 = factor_decomposable(w, S42, F3)
    assert (v1, v2) == ([1, 0, 0, 0], [0, 1, 0, 0])
    w = vec(S42, {(1, 2): 1, (1, 3): 1})
    vs = factor_decomposable(w, S42, F3)
    assert vs == [[1, 0, 0, 0], [0, 1, 1, 0]]


def test_e12_plus_e34_is_not_decomposable():
    w = vec(S42, {(1, 2): 1, (3, 4): 1})
    assert not brute_force_decomposable(w, S42, F3)
    with pytest.raises(NotDecomposable) as exc:
        factor_decomposable(w, S42, F3)
    assert exc.value.witness == (3, 4)


def test_decomposability_matches_brute_force():
    rnd = random.Random(1)
    for _ in range(25):
        w = [rnd.randrange(3) for _ in range(6)]
        if not any(w):
            continue
        assert is_decomposable(w, S42, F3) == brute_force_decomposable(w, S42, F3)


@pytest.mark.parametrize("n,m", [(4, 2), (5, 2), (5, 3), (6, 3)])
def test_factor_random_decomposables(n, m):
    spec = WedgeSpec(n, m)
    rnd = random.Random(n * m)
    for _ in range(20):
        vs = [{r: rnd.randrange(5) for r in range(n)} for _ in range(m)]
        w = wedge_vectors(F5, [{r: x for r, x in v.items() if x} for v in vs])
        w = {I: x for I, x in w.items() if x % 5}
        if not w:
            continue
        got = factor_decomposable(w, spec, F5)
        back = wedge_vectors(F5, [{r: x for r, x in enumerate(v) if x} for v in got])
        assert {I: x % 5 for I, x in back.items() if x % 5} == w


def test_recognize_round_trip_gl4_f3():
    rnd = random.Random(2)
    for _ in range(25):
        h = wedge_matrix(S42, random_invertible(F3, 4, rnd))
        v = in_wedge_image(h, S42)
        assert v.tag == IN_SET_IMAGE
        assert wedge_matrix(S42, v.witness) == h


def test_recognize_identity():
    v = in_wedge_image(ExactMatrix.identity(F5, 6), S42)
    assert v.tag == IN_SET_IMAGE and wedge_matrix(S42, v.witness).is_identity()


def test_scalar_twist():
    # 2 is not a square mod 5, so 2 * W(g) is not W of anything for m = 2
    g = random_invertible(F5, 4, random.Random(3))
    v = in_wedge_image(wedge_matrix(S42, g).scale(2), S42)
    assert v.tag == SCALAR_TWIST
    assert wedge_matrix(S42, v.witness) == wedge_matrix(S42, g).scale(2 * v.lam)


def test_swap_matrix_is_not_recognized():
    h_rows = [[int(r == c) for c in range(6)] for r in range(6)]
    a, b = S42.rank((1, 2)), S42.rank((3, 4))
    h_rows[a][a] = h_rows[b][b] = 0
    h_rows[a][b] = h_rows[b][a] = 1
    h = ExactMatrix.from_rows(F3, h_rows)
    assert in_wedge_image(h, S42).tag == NOT_FOUND
    # independent search over monomial candidates g = permutation * diagonal
    for perm in permutations(range(4)):
        for diag in product((1, 2), repeat=4):
            g = ExactMatrix.from_rows(F3, [[diag[c] if perm[c] == r else 0 for c in range(4)] for r in range(4)])
            img = wedge_matrix(S42, g)
            assert img != h and img != h.scale(2)


def test_membership():
    g = random_invertible(Z9, 4, random.Random(4))
    P = ExactMatrix.unit(Z9, 6, S42.rank((1, 2)), S42.rank((3, 4)), 3)
    assert congruence_wedge_membership(wedge_matrix(S42, g) * P, A3, S42)
    Q = ExactMatrix.unit(Z9, 6, S42.rank((1, 2)), S42.rank((3, 4)), 1)
    assert not congruence_wedge_membership(Q, A3, S42)
    assert congruence_wedge_membership(ExactMatrix.identity(Z9, 6), A3, S42)


def test_membership_needs_prime_quotient():
    Z27 = Ring.modular(27)
    with pytest.raises(RingError):
        congruence_wedge_membership(ExactMatrix.identity(Z27, 6), FiniteIdeal(Z27, 9), S42)


def test_recognizer_needs_prime_field():
    with pytest.raises(RingError):
        in_wedge_image(ExactMatrix.identity(Z9, 6), S42)


def test_verdict_json():
    v = in_wedge_image(ExactMatrix.identity(F3, 6), S42)
    doc = v.to_json()
    assert doc["tag"] == IN_SET_IMAGE and doc["witness"]["dim"] == 4
