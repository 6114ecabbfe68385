"""The exterior power homomorphism GL_n -> GL_N and closed forms for the
images of transvections and torus generators."""

from __future__ import annotations

import bisect
from math import comb

from .indexing import Index, WedgeSpec, insert_sign, subsets
from .matrices import ExactMatrix, MatrixError, determinant
from .rings import RingElement
from .terms import Product, Transvection

__all__ = [
    "WedgeSpec",
    "wedge_matrix",
    "wedge_vectors",
    "wedge_transvection_formula",
    "wedge2_transvection_formula",
    "wedge_diag",
    "det_exponent",
    "det_check",
]


def wedge_vectors(ring, vectors) -> dict[Index, object]:
    """Coordinates of v1 ^ v2 ^ ... ^ vk in the basis e_S (S sorted, 1-based).

    Each vector is a ``{position: payload}`` dict with 0-based positions.
    """
    state: dict[tuple, object] = {(): ring.one}
    for v in vectors:
        state = _extend(ring, state, v)
    return state


def wedge_matrix(spec: WedgeSpec, g: ExactMatrix) -> ExactMatrix:
    """The N x N matrix of m x m minors of g, rows and columns in lex order.

    Column J is g e_{j1} ^ ... ^ g e_{jm}; prefixes of consecutive (lex-sorted)
    J are shared, so a dense 7x7 input costs a few thousand ring operations.
    """
    if g.dim != spec.n:
        raise MatrixError(f"expected a {spec.n}x{spec.n} matrix, got {g.dim}x{g.dim}")
    ring = g.ring
    cols: list[dict] = [{} for _ in range(spec.n)]
    for r in range(g.dim):
        for c, v in g.row(r).items():
            cols[c][r] = v
    rows: list[dict] = [{} for _ in range(spec.N)]
    prefix_cache: dict[tuple, dict] = {(): {(): ring.one}}

    def prefix_state(prefix: tuple) -> dict:
        st = prefix_cache.get(prefix)
        if st is None:
            base = prefix_state(prefix[:-1])
            st = _extend(ring, base, cols[prefix[-1] - 1])
            prefix_cache[prefix] = st
        return st

    for J in spec.indices:
        cj = spec.rank(J)
        state = prefix_state(J)
        for S, v in state.items():
            rows[spec.rank(S)][cj] = v
        if len(prefix_cache) > 4096:
            prefix_cache = {(): {(): ring.one}}
    return ExactMatrix(ring, spec.N, rows)


def _extend(ring, state: dict, v: dict) -> dict:
    add, mul, neg = ring.add, ring.mul, ring.neg
    nxt: dict = {}
    for S, c in state.items():
        for r, a in v.items():
            r1 = r + 1
            p = bisect.bisect_left(S, r1)
            if p < len(S) and S[p] == r1:
                continue
            T = S[:p] + (r1,) + S[p:]
            term = mul(c, a)
            if (len(S) - p) % 2:
                term = neg(term)
            nxt[T] = add(nxt[T], term) if T in nxt else term
    return {S: c for S, c in nxt.items() if c}


def _check_pair(spec: WedgeSpec, i: int, j: int):
    if i == j:
        raise ValueError("exterior transvection needs i != j")
    if not (1 <= i <= spec.n and 1 <= j <= spec.n):
        raise ValueError(f"({i},{j}) outside [1..{spec.n}]")


def wedge_transvection_formula(spec: WedgeSpec, i: int, j: int, xi: RingElement) -> Product:
    """Closed form: product over L in (m-1)-subsets of [n] minus {i, j} of
    t_{L+i, L+j}(s * xi), s = insert_sign(L, i) * insert_sign(L, j).

    Factors come in ascending lex order of L; they pairwise commute.
    """
    _check_pair(spec, i, j)
    rest = [x for x in range(1, spec.n + 1) if x not in (i, j)]
    factors = []
    for L in subsets(len(rest), spec.m - 1):
        L = tuple(rest[k - 1] for k in L)
        s = insert_sign(L, i) * insert_sign(L, j)
        factors.append(Transvection(tuple(sorted(L + (i,))), tuple(sorted(L + (j,))), xi if s > 0 else -xi))
    return Product(tuple(factors))


def wedge2_transvection_formula(n: int, i: int, j: int, xi: RingElement) -> Product:
    """The m = 2 closed forms, written as three blocks (k < ..., between, > ...)."""
    if i == j:
        raise ValueError("exterior transvection needs i != j")

    def pair(a, b):
        return tuple(sorted((a, b)))

    lo, hi = min(i, j), max(i, j)
    factors = [Transvection(pair(k, i), pair(k, j), xi) for k in range(1, lo)]
    for l in range(lo + 1, hi):
        if i < j:
            factors.append(Transvection(pair(i, l), pair(l, j), -xi))
        else:
            factors.append(Transvection(pair(l, i), pair(j, l), -xi))
    factors += [Transvection(pair(i, k), pair(j, k), xi) for k in range(hi + 1, n + 1)]
    return Product(tuple(factors))


def wedge_diag(spec: WedgeSpec, i: int, xi) -> ExactMatrix:
    """Image of d_i(xi): xi at (I, I) when i is in I, 1 elsewhere on the diagonal."""
    if not 1 <= i <= spec.n:
        raise ValueError(f"{i} outside [1..{spec.n}]")
    ring = xi.ring
    return ExactMatrix.diagonal(ring, [xi.payload if i in I else ring.one for I in spec.indices])


def det_exponent(spec: WedgeSpec) -> int:
    return comb(spec.n - 1, spec.m - 1)


def det_check(spec: WedgeSpec, g: ExactMatrix, image: ExactMatrix | None = None) -> bool:
    """det of the exterior power equals det(g) ** C(n-1, m-1)."""
    ring = g.ring
    if image is None:
        image = wedge_matrix(spec, g)
    lhs = determinant(ring, image.to_rows())
    rhs = ring.pow(determinant(ring, g.to_rows()), det_exponent(spec))
    return lhs == rhs
