"""Exact square matrices over a :class:`~wedgelevel.rings.Ring`.

Storage is one ``{column: payload}`` dict per row holding only nonzero
entries.  The matrices met here (products of transvections, exterior powers
of them) sit close to the identity, so sparse rows keep N = 495 cheap;
dense input is accepted everywhere.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .rings import INT, MODULAR, POLY, Ring, RingElement, RingError


class MatrixError(ValueError):
    pass


class ExactMatrix:
    __slots__ = ("ring", "dim", "_rows", "_inv")

    def __init__(self, ring: Ring, dim: int, rows: Sequence[dict]):
        if len(rows) != dim:
            raise MatrixError(f"expected {dim} rows, got {len(rows)}")
        self.ring = ring
        self.dim = dim
        self._rows = tuple(rows)
        self._inv = None

    # constructors

    @classmethod
    def identity(cls, ring: Ring, dim: int) -> ExactMatrix:
        one = ring.one
        return cls(ring, dim, [{k: one} for k in range(dim)])

    @classmethod
    def from_rows(cls, ring: Ring, rows: Sequence[Sequence]) -> ExactMatrix:
        dim = len(rows)
        out = []
        for r, row in enumerate(rows):
            if len(row) != dim:
                raise MatrixError(f"row {r} has {len(row)} entries, expected {dim}")
            d = {}
            for c, x in enumerate(row):
                x = ring.normalize(x)
                if x:
                    d[c] = x
            out.append(d)
        return cls(ring, dim, out)

    @classmethod
    def diagonal(cls, ring: Ring, diag: Sequence) -> ExactMatrix:
        rows = []
        for k, x in enumerate(diag):
            x = ring.normalize(x)
            rows.append({k: x} if x else {})
        return cls(ring, len(diag), rows)

    @classmethod
    def unit(cls, ring: Ring, dim: int, r: int, c: int, x=1) -> ExactMatrix:
        """e + x * e_{r,c} with 0-based positions (r == c allowed)."""
        x = ring.normalize(x)
        rows = [{k: ring.one} for k in range(dim)]
        if r == c:
            v = ring.add(ring.one, x)
            rows[r] = {r: v} if v else {}
        elif x:
            rows[r][c] = x
        return cls(ring, dim, rows)

    # access

    def entry(self, r: int, c: int):
        return self._rows[r].get(c, self.ring.zero)

    def element(self, r: int, c: int) -> RingElement:
        return self.ring.wrap(self.entry(r, c))

    def row(self, r: int) -> dict:
        return self._rows[r]

    def to_rows(self) -> list[list]:
        zero = self.ring.zero
        return [[row.get(c, zero) for c in range(self.dim)] for row in self._rows]

    def nonzero(self) -> Iterable[tuple[int, int, object]]:
        for r, row in enumerate(self._rows):
            for c in sorted(row):
                yield r, c, row[c]

    def off_diagonal(self) -> list[tuple[int, int, object]]:
        """Nonzero entries of self - e."""
        one = self.ring.one
        out = []
        for r, row in enumerate(self._rows):
            if row.get(r) != one:
                out.append((r, r, self.ring.sub(row.get(r, self.ring.zero), one)))
            for c in sorted(row):
                if c != r:
                    out.append((r, c, row[c]))
        return sorted(out)

    def is_identity(self) -> bool:
        one = self.ring.one
        return all(len(row) == 1 and row.get(r) == one for r, row in enumerate(self._rows))

    def scalar_value(self):
        """Payload λ if self == λ·e, else None."""
        lam = self._rows[0].get(0) if self.dim else None
        if lam is None:
            return None
        for r, row in enumerate(self._rows):
            if len(row) != 1 or row.get(r) != lam:
                return None
        return lam

    # arithmetic

    def _check(self, other: ExactMatrix):
        if not isinstance(other, ExactMatrix):
            raise MatrixError(f"cannot combine a matrix with {type(other).__name__}")
        if other.ring != self.ring:
            raise MatrixError(f"ring mismatch: {self.ring} vs {other.ring}")
        if other.dim != self.dim:
            raise MatrixError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __mul__(self, other: ExactMatrix) -> ExactMatrix:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        self._check(other)
        ring = self.ring
        add, mul = ring.add, ring.mul
        orows = other._rows
        out = []
        for row in self._rows:
            acc: dict = {}
            for k, a in row.items():
                for j, b in orows[k].items():
                    p = mul(a, b)
                    if j in acc:
                        acc[j] = add(acc[j], p)
                    else:
                        acc[j] = p
            out.append({j: v for j, v in acc.items() if v})
        return ExactMatrix(ring, self.dim, out)

    __matmul__ = __mul__

    def __add__(self, other: ExactMatrix) -> ExactMatrix:
        self._check(other)
        add = self.ring.add
        out = []
        for a, b in zip(self._rows, other._rows):
            d = dict(a)
            for c, v in b.items():
                d[c] = add(d[c], v) if c in d else v
            out.append({c: v for c, v in d.items() if v})
        return ExactMatrix(self.ring, self.dim, out)

    def __neg__(self) -> ExactMatrix:
        neg = self.ring.neg
        return ExactMatrix(self.ring, self.dim, [{c: neg(v) for c, v in row.items()} for row in self._rows])

    def __sub__(self, other: ExactMatrix) -> ExactMatrix:
        return self + (-other)

    def scale(self, x) -> ExactMatrix:
        x = self.ring.normalize(x)
        mul = self.ring.mul
        rows = []
        for row in self._rows:
            rows.append({c: p for c, v in row.items() if (p := mul(x, v))})
        return ExactMatrix(self.ring, self.dim, rows)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.ring == other.ring and self.dim == other.dim and self._rows == other._rows

    __hash__ = None

    def diff(self, other: ExactMatrix):
        """First entry (r, c, mine, theirs) where the matrices differ, or None."""
        self._check(other)
        zero = self.ring.zero
        for r, (a, b) in enumerate(zip(self._rows, other._rows)):
            if a != b:
                for c in sorted(set(a) | set(b)):
                    x, y = a.get(c, zero), b.get(c, zero)
                    if x != y:
                        return r, c, x, y
        return None

    def transpose(self) -> ExactMatrix:
        rows: list[dict] = [{} for _ in range(self.dim)]
        for r, row in enumerate(self._rows):
            for c, v in row.items():
                rows[c][r] = v
        return ExactMatrix(self.ring, self.dim, rows)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> list[list]:
        zero = self.ring.zero
        return [[self._rows[r].get(c, zero) for c in cols] for r in rows]

    def map_entries(self, fn, ring: Ring) -> ExactMatrix:
        rows = []
        for row in self._rows:
            rows.append({c: p for c, v in row.items() if (p := fn(v))})
        return ExactMatrix(ring, self.dim, rows)

    def det(self):
        return determinant(self.ring, self.to_rows())

    def inverse(self) -> ExactMatrix:
        if self._inv is None:
            inv = mat_inverse(self)
            self._inv = inv
            inv._inv = self
        return self._inv

    def power(self, k: int) -> ExactMatrix:
        if k < 0:
            return self.inverse().power(-k)
        out = ExactMatrix.identity(self.ring, self.dim)
        for _ in range(k):
            out = out * self
        return out

    def format(self) -> str:
        cells = [[self.ring.format(x) for x in row] for row in self.to_rows()]
        width = max((len(x) for row in cells for x in row), default=1)
        return "\n".join("[" + "  ".join(x.rjust(width) for x in row) + "]" for row in cells)

    def __repr__(self):
        return f"ExactMatrix({self.ring}, dim={self.dim}, nnz={sum(map(len, self._rows))})"

    # JSON

    def to_json(self, with_ring: bool = True) -> dict:
        enc = self.ring.element_to_json
        obj = {"dim": self.dim, "entries": [[enc(x) for x in row] for row in self.to_rows()]}
        if with_ring:
            obj["ring"] = self.ring.to_json()
        return obj

    @classmethod
    def from_json(cls, obj: dict, ring: Ring | None = None) -> ExactMatrix:
        if ring is None:
            if "ring" not in obj:
                raise MatrixError("matrix JSON has no ring; pass one explicitly")
            ring = Ring.from_json(obj["ring"])
        entries = obj["entries"]
        dim = int(obj.get("dim", len(entries)))
        if len(entries) != dim:
            raise MatrixError(f"dim={dim} but {len(entries)} rows given")
        dec = ring.element_from_json
        return cls.from_rows(ring, [[dec(x) for x in row] for row in entries])


def transvection(ring: Ring, n: int, i: int, j: int, x) -> ExactMatrix:
    """t_{i,j}(x) in GL_n with 1-based i != j."""
    if i == j:
        raise MatrixError("a transvection needs i != j")
    if not (1 <= i <= n and 1 <= j <= n):
        raise MatrixError(f"({i},{j}) outside [1..{n}]")
    return ExactMatrix.unit(ring, n, i - 1, j - 1, x)


def torus(ring: Ring, n: int, i: int, x) -> ExactMatrix:
    """d_i(x) = e + (x - 1) e_{i,i}."""
    x = ring.normalize(x)
    diag = [ring.one] * n
    diag[i - 1] = x
    return ExactMatrix.diagonal(ring, diag)


def mat_mul(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    return a * b


# determinants


def _bareiss(rows: list[list[int]]) -> int:
    a = [list(r) for r in rows]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        piv = a[k][k]
        for r in range(k + 1, n):
            ar = a[r]
            ark = ar[k]
            ak = a[k]
            for c in range(k + 1, n):
                ar[c] = (ar[c] * piv - ark * ak[c]) // prev
            ar[k] = 0
        prev = piv
    return sign * a[n - 1][n - 1] if n else 1


def _laplace(ring: Ring, rows: list[list]) -> object:
    """Division-free expansion memoized on the set of used columns."""
    n = len(rows)
    if n == 0:
        return ring.one
    add, mul, neg = ring.add, ring.mul, ring.neg
    memo: dict[int, object] = {}

    def rec(r: int, used: int):
        if r == n:
            return ring.one
        if used in memo:
            return memo[used]
        total = ring.zero
        free_before = 0
        for c in range(n):
            if used >> c & 1:
                continue
            x = rows[r][c]
            if x:
                sub = rec(r + 1, used | (1 << c))
                if sub:
                    term = mul(x, sub)
                    total = add(total, neg(term) if free_before % 2 else term)
            free_before += 1
        memo[used] = total
        return total

    return rec(0, 0)


def determinant(ring: Ring, rows: list[list]):
    """Exact determinant of a square payload array.

    Integers and residues go through fraction-free elimination on the integer
    lift (the determinant is an integer polynomial in the entries, so reducing
    afterwards is exact even with zero divisors); polynomial entries use the
    memoized Laplace expansion.
    """
    if ring.kind == POLY:
        return _laplace(ring, rows)
    d = _bareiss(rows)
    return d % ring.q if ring.kind == MODULAR else d


def minor(g: ExactMatrix, I: Sequence[int], J: Sequence[int]):
    """Determinant of the rows I, columns J submatrix (1-based index sets)."""
    if len(I) != len(J):
        raise MatrixError(f"index sets {tuple(I)} and {tuple(J)} differ in size")
    for x in (*I, *J):
        if not 1 <= x <= g.dim:
            raise MatrixError(f"index {x} outside [1..{g.dim}]")
    sub = g.submatrix([i - 1 for i in I], [j - 1 for j in J])
    return determinant(g.ring, sub)


# inverses


def _nilpotent_inverse(a: ExactMatrix) -> ExactMatrix | None:
    """(e + u)^-1 = e - u + u^2 - ... when u = a - e is nilpotent."""
    e = ExactMatrix.identity(a.ring, a.dim)
    u = a - e
    out = e
    term = e
    for k in range(1, a.dim + 1):
        term = term * u
        if not any(term._rows):
            return out
        out = out - term if k % 2 else out + term
    return None


def _rational_inverse(rows: list[list[int]]) -> list[list[Fraction]]:
    n = len(rows)
    a = [[Fraction(x) for x in row] + [Fraction(int(r == c)) for c in range(n)] for r, row in enumerate(rows)]
    for k in range(n):
        piv = next((r for r in range(k, n) if a[r][k]), None)
        if piv is None:
            raise MatrixError("singular matrix")
        a[k], a[piv] = a[piv], a[k]
        p = a[k][k]
        a[k] = [x / p for x in a[k]]
        for r in range(n):
            if r != k and a[r][k]:
                f = a[r][k]
                a[r] = [x - f * y for x, y in zip(a[r], a[k])]
    return [row[n:] for row in a]


def mat_inverse(a: ExactMatrix) -> ExactMatrix:
    ring = a.ring
    if a.is_identity():
        return a
    inv = _nilpotent_inverse(a) if a.dim <= 64 or ring.kind == POLY else None
    if inv is not None:
        return inv
    rows = a.to_rows()
    det = determinant(ring, rows)
    det_inv = ring.unit_inverse(det)
    if det_inv is None:
        raise MatrixError(f"determinant {ring.format(det)} is not a unit in {ring}")
    if ring.kind in (INT, MODULAR):
        # adjugate = det_Z * A^-1 over Q is integral
        lift_det = _bareiss(rows)
        rat = _rational_inverse(rows)
        adj = [[int(x * lift_det) for x in row] for row in rat]
        out = [[ring.mul(det_inv, ring.from_int(x)) for x in row] for row in adj]
        return ExactMatrix.from_rows(ring, out)
    n = a.dim
    if n > 12:
        raise MatrixError(f"no inversion route for a non-unipotent {n}x{n} polynomial matrix")
    cof = [[None] * n for _ in range(n)]
    for r in range(n):
        for c in range(n):
            sub = [[rows[i][j] for j in range(n) if j != c] for i in range(n) if i != r]
            d = determinant(ring, sub)
            cof[c][r] = ring.neg(d) if (r + c) % 2 else d
    return ExactMatrix.from_rows(ring, [[ring.mul(det_inv, x) for x in row] for row in cof])


# group-theoretic helpers; these work on anything with * and .inverse()


def commutator(x, y):
    """Left-normed [x, y] = x y x^-1 y^-1."""
    return x * y * x.inverse() * y.inverse()


def iterated_commutator(*xs):
    """[x1, x2, ..., xk] = [[x1, x2], ..., xk]."""
    out = xs[0]
    for x in xs[1:]:
        out = commutator(out, x)
    return out


def conj_left(x, y):
    """^x y = x y x^-1."""
    return x * y * x.inverse()


def conj_right(x, y):
    """y^x = x^-1 y x."""
    return x.inverse() * y * x


def group_commutator(x: ExactMatrix, y: ExactMatrix) -> ExactMatrix:
    return commutator(x, y)


def hall_witt_product(x, y, z):
    """[x,y^-1,z^-1]^x [z,x^-1,y^-1]^z [y,z^-1,x^-1]^y, identically e."""
    xi, yi, zi = x.inverse(), y.inverse(), z.inverse()
    a = conj_right(x, iterated_commutator(x, yi, zi))
    b = conj_right(z, iterated_commutator(z, xi, yi))
    c = conj_right(y, iterated_commutator(y, zi, xi))
    return a * b * c


def hall_witt_check(x: ExactMatrix, y: ExactMatrix, z: ExactMatrix) -> bool:
    return hall_witt_product(x, y, z).is_identity()


def abcd_decompose(a, b, c, d):
    """Factors of [ab, cd] = ^a[b,c] . ^(ac)[b,d] . [a,c] . ^c[a,d]."""
    return (
        conj_left(a, commutator(b, c)),
        conj_left(a * c, commutator(b, d)),
        commutator(a, c),
        conj_left(c, commutator(a, d)),
    )
