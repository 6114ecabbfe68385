"""Reduction modulo an ideal, congruence predicates, and recognition of
exterior powers over a finite prime field.

The recognizer targets the set image W(GL_n(K)) together with its K*
scalar multiples.  A ``NotFound`` verdict means "not recognized"; it is not
a proof of non-membership in the scheme-theoretic image.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iproduct
from typing import Sequence

from .indexing import WedgeSpec, perm_sign
from .matrices import ExactMatrix, MatrixError
from .rings import MODULAR, FiniteIdeal, Ring, RingError
from .wedge import wedge_matrix, wedge_vectors

IN_SET_IMAGE = "InSetImage"
SCALAR_TWIST = "ScalarTwist"
NOT_FOUND = "NotFound"


class NotDecomposable(ValueError):
    """Raised (or returned) when a vector is not v1 ^ ... ^ vm; carries a witness."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


def _require_field(ring: Ring):
    if ring.kind != MODULAR or not is_prime(ring.q):
        raise RingError(f"expected a prime field F_p, got {ring}")
    if ring.q == 2:
        raise RingError("characteristic 2 is out of scope")


# --- reduction --------------------------------------------------------------


def quotient_ring(A: FiniteIdeal) -> Ring:
    if A.is_whole:
        raise RingError("the quotient by the whole ring is the zero ring")
    return Ring.modular(A.gen)


def reduce_matrix(g: ExactMatrix, A: FiniteIdeal) -> ExactMatrix:
    """Entry-wise projection Z/q -> Z/d for A = (d)."""
    if g.ring != A.ring:
        raise RingError(f"matrix over {g.ring}, ideal in {A.ring}")
    target = quotient_ring(A)
    d = A.gen
    return g.map_entries(lambda a: a % d, target)


@dataclass(frozen=True)
class CongruenceFlags:
    principal_congruence: bool
    full_congruence: bool

    def to_json(self) -> dict:
        return {"principal_congruence": self.principal_congruence, "full_congruence": self.full_congruence}


def congruence_predicates(g: ExactMatrix, A: FiniteIdeal) -> CongruenceFlags:
    """principal: g = e mod A; full: g is scalar mod A."""
    r = reduce_matrix(g, A)
    return CongruenceFlags(r.is_identity(), r.scalar_value() is not None)


# --- linear algebra over F_p ------------------------------------------------


def rref_mod(rows: Sequence[Sequence[int]], p: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form over F_p; returns (nonzero rows, pivot columns)."""
    M = [[x % p for x in r] for r in rows]
    pivots: list[int] = []
    r = 0
    ncols = len(M[0]) if M else 0
    for c in range(ncols):
        piv = next((k for k in range(r, len(M)) if M[k][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = pow(M[r][c], -1, p)
        M[r] = [x * inv % p for x in M[r]]
        for k in range(len(M)):
            if k != r and M[k][c]:
                f = M[k][c]
                M[k] = [(x - f * y) % p for x, y in zip(M[k], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def nullspace_mod(rows: Sequence[Sequence[int]], ncols: int, p: int) -> list[list[int]]:
    """Basis of {x : rows . x = 0} over F_p."""
    if not rows:
        return [[int(i == k) for i in range(ncols)] for k in range(ncols)]
    R, pivots = rref_mod(rows, p)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, pc in zip(R, pivots):
            v[pc] = (-row[f]) % p
        basis.append(v)
    return basis


def intersect_mod(spaces: Sequence[Sequence[Sequence[int]]], n: int, p: int) -> list[list[int]]:
    """Intersection of subspaces of F_p^n, each given by spanning vectors."""
    complements: list[list[int]] = []
    for basis in spaces:
        complements.extend(nullspace_mod(basis, n, p))
    return nullspace_mod(complements, n, p)


# --- decomposable vectors ---------------------------------------------------


def _coords(w, spec: WedgeSpec) -> dict:
    if isinstance(w, dict):
        return {tuple(k): v for k, v in w.items() if v}
    if len(w) != spec.N:
        raise ValueError(f"expected {spec.N} coordinates, got {len(w)}")
    return {I: v for I, v in zip(spec.indices, w) if v}


def factor_decomposable(w, spec: WedgeSpec, ring: Ring) -> list[list[int]]:
    """Return v_1..v_m (lists of length n) with v_1 ^ ... ^ v_m = w.

    ``w`` is a length-N list in lex order or an {index: value} dict.  Raises
    :class:`NotDecomposable` with the first coordinate where the candidate
    wedge and w disagree (a violated Pluecker relation).
    """
    _require_field(ring)
    p = ring.q
    coords = {I: v % p for I, v in _coords(w, spec).items() if v % p}
    if not coords:
        raise ValueError("the zero vector has no factorization")
    I0 = min(coords)
    w0 = coords[I0]
    inv0 = pow(w0, -1, p)
    vectors = []
    for k, ik in enumerate(I0):
        u = [0] * spec.n
        for j in range(1, spec.n + 1):
            if j in I0 and j != ik:
                continue
            seq = I0[:k] + (j,) + I0[k + 1:]
            S = tuple(sorted(seq))
            u[j - 1] = coords.get(S, 0) * perm_sign(seq) * inv0 % p
        vectors.append(u)
    vectors[0] = [x * w0 % p for x in vectors[0]]
    got = wedge_vectors(ring, [{r: x for r, x in enumerate(v) if x} for v in vectors])
    for I in spec.indices:
        if got.get(I, 0) % p != coords.get(I, 0):
            raise NotDecomposable(
                f"not decomposable: coordinate {spec.label(I)} should be {got.get(I, 0)}, is {coords.get(I, 0)}",
                witness=I,
            )
    return vectors


def is_decomposable(w, spec: WedgeSpec, ring: Ring) -> bool:
    try:
        factor_decomposable(w, spec, ring)
    except NotDecomposable:
        return False
    return True


# --- recognition of exterior powers -----------------------------------------


@dataclass
class MembershipVerdict:
    tag: str
    witness: ExactMatrix | None = None
    lam: int | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def recognized(self) -> bool:
        return self.tag in (IN_SET_IMAGE, SCALAR_TWIST)

    def to_json(self) -> dict:
        out: dict = {"tag": self.tag}
        if self.witness is not None:
            out["witness"] = self.witness.to_json(with_ring=False)
        if self.lam is not None:
            out["lambda"] = self.lam
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def _column(h: ExactMatrix, c: int) -> dict:
    return {r: v for r in range(h.dim) if (v := h.row(r).get(c))}


def _reconstruct(h: ExactMatrix, spec: WedgeSpec) -> tuple[ExactMatrix | None, str]:
    """Candidate g with W g = h, or (None, reason)."""
    ring = h.ring
    p = ring.q
    n, m = spec.n, spec.m
    spans: dict = {}
    for c, J in enumerate(spec.indices):
        col = _column(h, c)
        if not col:
            return None, f"column {spec.label(J)} is zero"
        try:
            spans[J] = factor_decomposable({spec.indices[r]: v for r, v in col.items()}, spec, ring)
        except NotDecomposable as exc:
            return None, f"column {spec.label(J)}: {exc}"
    lines = []
    for k in range(1, n + 1):
        inter = intersect_mod([spans[J] for J in spec.indices if k in J], n, p)
        if len(inter) != 1:
            return None, f"the images of columns through {k} meet in dimension {len(inter)}"
        lines.append(inter[0])
    # ratios rho_J with h e_J = rho_J * (l_{j1} ^ ... ^ l_{jm})
    rho: dict = {}
    for c, J in enumerate(spec.indices):
        wv = wedge_vectors(ring, [{r: x for r, x in enumerate(lines[j - 1]) if x} for j in J])
        col = {spec.indices[r]: v for r, v in _column(h, c).items()}
        S0 = next(iter(col))
        base = wv.get(S0, 0) % p
        if not base:
            return None, f"column {spec.label(J)} is not on the expected line"
        r_J = col[S0] * pow(base, -1, p) % p
        if any((wv.get(S, 0) * r_J - col.get(S, 0)) % p for S in set(wv) | set(col)):
            return None, f"column {spec.label(J)} is not a multiple of the line wedge"
        rho[J] = r_J
    # c_k / c_1 from two columns that differ only in 1 <-> k
    ratio = [1] * (n + 1)
    for k in range(2, n + 1):
        others = [x for x in range(1, n + 1) if x not in (1, k)]
        K = tuple(others[: m - 1])
        a = rho[tuple(sorted(K + (1,)))]
        b = rho[tuple(sorted(K + (k,)))]
        ratio[k] = b * pow(a, -1, p) % p
    J0 = spec.indices[0]
    prod_r = 1
    for k in J0:
        prod_r = prod_r * ratio[k] % p
    target = rho[J0] * pow(prod_r, -1, p) % p
    roots = [c for c in range(1, p) if pow(c, m, p) == target]
    if not roots:
        return None, f"no m-th root of {target} in F_{p}"
    c1 = roots[0]
    rows = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        ck = c1 * ratio[k] % p
        for r in range(n):
            rows[r][k - 1] = lines[k - 1][r] * ck % p
    return ExactMatrix.from_rows(ring, rows), ""


def in_wedge_image(h: ExactMatrix, spec: WedgeSpec) -> MembershipVerdict:
    """Recognize h as W g (InSetImage) or lambda h as W g (ScalarTwist)."""
    ring = h.ring
    _require_field(ring)
    if h.dim != spec.N:
        raise MatrixError(f"expected an {spec.N}x{spec.N} matrix")
    p = ring.q
    first = _column(h, 0)
    if not first or not is_decomposable({spec.indices[r]: v for r, v in first.items()}, spec, ring):
        return MembershipVerdict(NOT_FOUND, notes=["first basis image is not decomposable"])
    notes = []
    for lam in range(1, p):
        hl = h if lam == 1 else h.scale(lam)
        g, why = _reconstruct(hl, spec)
        if g is None:
            notes.append(f"lambda={lam}: {why}")
            continue
        if wedge_matrix(spec, g) == hl:
            if lam == 1:
                return MembershipVerdict(IN_SET_IMAGE, g)
            return MembershipVerdict(SCALAR_TWIST, g, lam)
        notes.append(f"lambda={lam}: candidate fails the exact check")
    return MembershipVerdict(NOT_FOUND, notes=notes[:4])


def congruence_wedge_membership(h: ExactMatrix, A: FiniteIdeal, spec: WedgeSpec) -> bool:
    """h lies in the preimage of the recognized image under reduction mod A."""
    if not is_prime(A.gen):
        raise RingError(f"Z/{A.ring.q} modulo ({A.gen}) is not a field")
    return in_wedge_image(reduce_matrix(h, A), spec).recognized


def brute_force_decomposable(w, spec: WedgeSpec, ring: Ring) -> bool:
    """Exhaustive search over m-tuples of vectors in F_p^n (tiny cases only)."""
    _require_field(ring)
    p = ring.q
    target = {I: v % p for I, v in _coords(w, spec).items() if v % p}
    vecs = [v for v in iproduct(range(p), repeat=spec.n) if any(v)]
    def rec(chosen):
        if len(chosen) == spec.m:
            got = wedge_vectors(ring, [{r: x for r, x in enumerate(v) if x} for v in chosen])
            return {I: x % p for I, x in got.items() if x % p} == target
        return any(rec(chosen + [v]) for v in vecs)
    return rec([])
