from __future__ import annotations

from itertools import combinations, permutations
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wedgelevel.indexing import (
    WedgeSpec,
    format_index,
    height,
    insert_sign,
    lex_rank,
    parse_index,
    perm_sign,
    replace,
    unrank,
)


@pytest.mark.parametrize("I,n,rank", [((1, 2), 5, 0), ((1, 3), 5, 1), ((4, 5, 6), 6, 19)])
def test_lex_rank_examples(I, n, rank):
    assert lex_rank(I, n) == rank


@pytest.mark.parametrize("n,m", [(4, 2), (6, 3), (7, 3), (9, 4), (12, 4)])
def test_lex_rank_matches_enumeration(n, m):
    for r, I in enumerate(combinations(range(1, n + 1), m)):
        assert lex_rank(I, n) == r
        assert unrank(r, n, m) == I


@pytest.mark.parametrize("seq,sign", [((1, 2, 3, 4), 1), ((1, 3, 4, 2), 1), ((1, 3, 2, 4), -1), ((4, 1, 2, 3), -1)])
def test_perm_sign_examples(seq, sign):
    assert perm_sign(seq) == sign


def test_perm_sign_is_a_homomorphism():
    for p in permutations(range(5)):
        for q in permutations(range(5)):
            composed = tuple(p[q[k]] for k in range(5))
            assert perm_sign(composed) == perm_sign(p) * perm_sign(q)


@pytest.mark.parametrize("L,i,sign", [((2, 4), 1, 1), ((2, 4), 3, -1), ((), 7, 1)])
def test_insert_sign_examples(L, i, sign):
    assert insert_sign(L, i) == sign


@settings(max_examples=100, deadline=None)
@given(st.sets(st.integers(1, 9), max_size=5), st.integers(1, 9))
def test_insert_sign_matches_perm_sign(L, i):
    if i in L:
        with pytest.raises(ValueError):
            insert_sign(sorted(L), i)
        return
    L = tuple(sorted(L))
    assert insert_sign(L, i) == perm_sign((i,) + L)


@pytest.mark.parametrize("I,J,h", [((1, 2), (3, 4), 0), ((1, 3), (2, 4), 0), ((1, 3), (3, 5), 1), ((1, 2, 3), (1, 2, 3), 3)])
def test_height(I, J, h):
    assert height(I, J) == h


def test_replace_keeps_order():
    assert replace((1, 3, 5), 5, 2) == (1, 2, 3)


def test_parse_and_format():
    assert parse_index("135", 6) == (1, 3, 5)
    assert parse_index([5, 1], 6) == (1, 5)
    assert parse_index("1,10,12", 12) == (1, 10, 12)
    assert format_index((1, 3, 5), 6) == "135"
    assert format_index((1, 10, 12), 12) == "1,10,12"
    with pytest.raises(ValueError):
        parse_index("123", 12)
    with pytest.raises(ValueError):
        parse_index("113", 5)
    with pytest.raises(ValueError):
        parse_index("17", 5)


@pytest.mark.parametrize("n,m", [(4, 2), (5, 3), (6, 3), (12, 4)])
def test_spec_shape(n, m):
    spec = WedgeSpec(n, m)
    assert spec.N == comb(n, m) == len(spec.indices)
    assert spec.residue == comb(n - 2, m - 1)
    assert all(spec.rank(I) == k for k, I in enumerate(spec.indices))
    assert sum(1 for _ in spec.pairs()) == spec.N * (spec.N - 1)


def test_spec_rejects_bad_shapes():
    with pytest.raises(ValueError):
        WedgeSpec(3, 3)
    with pytest.raises(ValueError):
        WedgeSpec(3, 0)
