from __future__ import annotations

import json
import random

import pytest

from _util import leibniz_det, random_invertible, random_matrix, random_symbolic
from wedgelevel.indexing import WedgeSpec
from wedgelevel.matrices import (
    ExactMatrix,
    MatrixError,
    abcd_decompose,
    determinant,
    group_commutator,
    hall_witt_check,
    mat_inverse,
    mat_mul,
    minor,
    transvection,
)
from wedgelevel.rings import Ring
from wedgelevel.wedge import wedge_diag

P = Ring.poly("xi", "zeta", "zeta1")
XI, ZETA, ZETA1 = P.gens()
Z9 = Ring.modular(9)
ZZ = Ring.integers()


def tv(n, i, j, x, ring=P):
    return transvection(ring, n, i, j, x.payload if hasattr(x, "payload") else x)


def test_identity_is_neutral():
    a = random_matrix(Z9, 4, random.Random(0))
    e = ExactMatrix.identity(Z9, 4)
    assert mat_mul(e, a) == a and mat_mul(a, e) == a


def test_transvection_additivity():
    assert tv(3, 1, 2, XI) * tv(3, 1, 2, ZETA) == tv(3, 1, 2, XI + ZETA)


def test_chevalley_commutator():
    lhs = tv(3, 1, 2, XI) * tv(3, 2, 3, ZETA) * tv(3, 1, 2, -XI) * tv(3, 2, 3, -ZETA)
    assert lhs == tv(3, 1, 3, XI * ZETA)
    assert group_commutator(tv(3, 1, 2, XI), tv(3, 2, 3, ZETA)) == tv(3, 1, 3, XI * ZETA)


def test_disjoint_transvections_commute():
    assert group_commutator(tv(4, 1, 2, XI), tv(4, 3, 4, ZETA)).is_identity()


def test_commutator_with_identity():
    a = random_invertible(Z9, 4, random.Random(1))
    assert group_commutator(a, ExactMatrix.identity(Z9, 4)).is_identity()


def test_inverse_of_transvection():
    assert mat_inverse(tv(4, 1, 3, XI)) == tv(4, 1, 3, -XI)
    assert mat_inverse(ExactMatrix.identity(P, 3)).is_identity()


def test_inverse_of_exterior_diagonal():
    spec = WedgeSpec(5, 4)
    d = wedge_diag(spec, 2, Z9(2))
    inv = mat_inverse(d)
    assert inv.to_rows() == [[5 if (r == c and 2 in I) else int(r == c) for c, _ in enumerate(spec.indices)] for r, I in enumerate(spec.indices)]


def test_inverse_random_over_z9():
    rnd = random.Random(2)
    for _ in range(20):
        g = random_invertible(Z9, 4, rnd)
        assert (g * g.inverse()).is_identity()


def test_inverse_symbolic_unipotent():
    g = random_symbolic(4, random.Random(3), length=6)
    assert (g * g.inverse()).is_identity()


def test_singular_inverse_rejected():
    g = ExactMatrix.from_rows(Z9, [[3, 0], [0, 1]])
    with pytest.raises(MatrixError):
        g.inverse()


def test_minor_examples():
    g = tv(4, 1, 2, XI)
    assert minor(g, (1, 3), (2, 3)) == XI.payload
    e = ExactMatrix.identity(P, 4)
    assert minor(e, (1, 2), (1, 2)) == P.one
    assert minor(e, (1, 2), (1, 3)) == P.zero
    assert minor(ExactMatrix.from_rows(ZZ, [[1, 2], [3, 4]]), (1, 2), (1, 2)) == -2


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_determinant_matches_leibniz(n):
    rnd = random.Random(n)
    for ring in (Z9, Ring.modular(25), ZZ):
        for _ in range(10):
            rows = [[rnd.randrange(-20, 20) for _ in range(n)] for _ in range(n)]
            rows = [[ring.normalize(x) for x in r] for r in rows]
            assert determinant(ring, rows) == leibniz_det(ring, rows)


def test_symbolic_determinant_matches_leibniz():
    g = random_symbolic(4, random.Random(9), length=5)
    g = g * ExactMatrix.diagonal(P, [XI.payload, P.one, ZETA.payload, P.one])
    assert determinant(P, g.to_rows()) == leibniz_det(P, g.to_rows())


def test_hall_witt():
    rnd = random.Random(4)
    for _ in range(10):
        x, y, z = (random_invertible(Z9, 4, rnd) for _ in range(3))
        assert hall_witt_check(x, y, z)
    e = ExactMatrix.identity(Z9, 4)
    assert hall_witt_check(e, e, e)
    assert hall_witt_check(tv(3, 1, 2, XI), tv(3, 2, 3, ZETA), tv(3, 3, 1, ZETA1))


def test_abcd_decomposition():
    rnd = random.Random(5)
    for _ in range(10):
        a, b, c, d = (random_invertible(Z9, 4, rnd) for _ in range(4))
        f = abcd_decompose(a, b, c, d)
        assert f[0] * f[1] * f[2] * f[3] == group_commutator(a * b, c * d)
    e = ExactMatrix.identity(Z9, 3)
    assert all(x.is_identity() for x in abcd_decompose(e, e, e, e))


def test_json_round_trip():
    g = random_symbolic(3, random.Random(6))
    obj = json.loads(json.dumps(g.to_json()))
    assert ExactMatrix.from_json(obj) == g
    h = random_matrix(Z9, 3, random.Random(7))
    assert ExactMatrix.from_json(h.to_json(with_ring=False), Z9) == h


def test_shape_errors():
    with pytest.raises(MatrixError):
        ExactMatrix.from_rows(Z9, [[1, 2], [3]])
    with pytest.raises(MatrixError):
        transvection(Z9, 3, 1, 1, 1)
    with pytest.raises(MatrixError):
        ExactMatrix.identity(Z9, 2) * ExactMatrix.identity(Z9, 3)
    with pytest.raises(MatrixError):
        ExactMatrix.identity(Z9, 2) * ExactMatrix.identity(P, 2)


def test_diff_reports_first_entry():
    a = ExactMatrix.identity(Z9, 3)
    b = transvection(Z9, 3, 2, 3, 4)
    assert a.diff(b) == (1, 2, 0, 4)
    assert a.diff(a) is None
