"""Symbolic words in GL_N: elementary transvections t_{I,J}(x), exterior
transvections W t_{i,j}(x), explicit matrices, and ordered products of these.

Words support ``*`` and ``.inverse()`` (structurally, by reversal), so the
generic commutator helpers in :mod:`wedgelevel.matrices` build them without
ever inverting a matrix.  :func:`realize` turns a word into an ExactMatrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .indexing import Index, WedgeSpec, format_index
from .matrices import ExactMatrix, MatrixError
from .rings import Ring, RingElement


class _Word:
    def __mul__(self, other):
        if not isinstance(other, _Word):
            return NotImplemented
        return Product(_factors(self) + _factors(other))


def _factors(w) -> tuple:
    return w.factors if isinstance(w, Product) else (w,)


@dataclass(frozen=True, eq=False)
class Transvection(_Word):
    """t_{I,J}(arg) = e + arg * e_{I,J} in GL_N."""

    I: Index
    J: Index
    arg: RingElement

    def __post_init__(self):
        if self.I == self.J:
            raise ValueError(f"diagonal pair {self.I} is not a transvection")

    def inverse(self) -> Transvection:
        return Transvection(self.I, self.J, -self.arg)

    def describe(self, n: int) -> str:
        return f"t_{{{format_index(self.I, n)},{format_index(self.J, n)}}}({self.arg})"


@dataclass(frozen=True, eq=False)
class WedgeTransvection(_Word):
    """The exterior power of t_{i,j}(arg) in GL_n."""

    i: int
    j: int
    arg: RingElement

    def __post_init__(self):
        if self.i == self.j:
            raise ValueError("an exterior transvection needs i != j")

    def inverse(self) -> WedgeTransvection:
        return WedgeTransvection(self.i, self.j, -self.arg)

    def describe(self, n: int) -> str:
        return f"W t_{{{self.i},{self.j}}}({self.arg})"


@dataclass(frozen=True, eq=False)
class MatrixFactor(_Word):
    """An explicit N x N matrix inside a word (inverse computed on demand)."""

    matrix: ExactMatrix
    name: str = "g"

    def inverse(self) -> MatrixFactor:
        name = self.name[:-3] if self.name.endswith("^-1") else self.name + "^-1"
        return MatrixFactor(self.matrix.inverse(), name)

    def describe(self, n: int) -> str:
        return self.name


@dataclass(frozen=True, eq=False)
class Product(_Word):
    factors: tuple = ()

    def __post_init__(self):
        flat = []
        for f in self.factors:
            if isinstance(f, Product):
                flat.extend(f.factors)
            else:
                flat.append(f)
        object.__setattr__(self, "factors", tuple(flat))

    def inverse(self) -> Product:
        return Product(tuple(f.inverse() for f in reversed(self.factors)))

    def __len__(self):
        return len(self.factors)

    def __iter__(self):
        return iter(self.factors)

    def describe(self, n: int) -> str:
        if not self.factors:
            return "e"
        return " ".join(f.describe(n) for f in self.factors)


Word = Union[Transvection, WedgeTransvection, MatrixFactor, Product]


def t(I, J, arg) -> Transvection:
    return Transvection(tuple(I), tuple(J), arg)


def wt(i: int, j: int, arg) -> WedgeTransvection:
    return WedgeTransvection(i, j, arg)


def product(*factors) -> Product:
    return Product(tuple(factors))


IDENTITY = Product(())


def _ring_of(w) -> Ring | None:
    if isinstance(w, (Transvection, WedgeTransvection)):
        return w.arg.ring
    if isinstance(w, MatrixFactor):
        return w.matrix.ring
    for f in w.factors:
        r = _ring_of(f)
        if r is not None:
            return r
    return None


class Realizer:
    """Evaluates words in GL_N; exterior transvections go through the minor
    route (``wedge_matrix``) unless ``use_formula`` selects the closed form."""

    def __init__(self, spec: WedgeSpec, ring: Ring, use_formula: bool = False):
        self.spec = spec
        self.ring = ring
        self.use_formula = use_formula
        self._cache: dict = {}

    def wedge_image(self, w: WedgeTransvection) -> ExactMatrix:
        key = (w.i, w.j, w.arg.payload)
        m = self._cache.get(key)
        if m is None:
            from .wedge import wedge_matrix, wedge_transvection_formula
            from .matrices import transvection

            if self.use_formula:
                m = self(wedge_transvection_formula(self.spec, w.i, w.j, w.arg))
            else:
                m = wedge_matrix(self.spec, transvection(self.ring, self.spec.n, w.i, w.j, w.arg.payload))
            self._cache[key] = m
        return m

    def __call__(self, w) -> ExactMatrix:
        ring = self.ring
        N = self.spec.N
        rows = [{k: ring.one} for k in range(N)]
        self._apply(rows, w)
        return ExactMatrix(ring, N, [{c: v for c, v in row.items() if v} for row in rows])

    def _apply(self, rows: list[dict], w):
        """rows <- rows * w, in place."""
        if isinstance(w, Product):
            for f in w.factors:
                self._apply(rows, f)
            return
        if isinstance(w, Transvection):
            if w.arg.ring != self.ring:
                raise MatrixError(f"ring mismatch: {w.arg.ring} vs {self.ring}")
            # right multiplication by t_{I,J}(x): column J += x * column I
            src = self.spec.rank(w.I)
            dst = self.spec.rank(w.J)
            x = w.arg.payload
            if not x:
                return
            add, mul = self.ring.add, self.ring.mul
            for row in rows:
                a = row.get(src)
                if a:
                    v = add(row.get(dst, self.ring.zero), mul(a, x))
                    if v:
                        row[dst] = v
                    else:
                        row.pop(dst, None)
            return
        if isinstance(w, WedgeTransvection):
            if w.arg.ring != self.ring:
                raise MatrixError(f"ring mismatch: {w.arg.ring} vs {self.ring}")
            other = self.wedge_image(w)
        elif isinstance(w, MatrixFactor):
            other = w.matrix
            if other.dim != self.spec.N or other.ring != self.ring:
                raise MatrixError("matrix factor does not live in GL_N over the working ring")
        else:
            raise TypeError(f"cannot realize {type(w).__name__}")
        add, mul = self.ring.add, self.ring.mul
        orows = [other.row(k) for k in range(other.dim)]
        for r, row in enumerate(rows):
            acc: dict = {}
            for k, a in row.items():
                for j, b in orows[k].items():
                    p = mul(a, b)
                    acc[j] = add(acc[j], p) if j in acc else p
            rows[r] = {j: v for j, v in acc.items() if v}


def realize(w, spec: WedgeSpec, ring: Ring | None = None, use_formula: bool = False) -> ExactMatrix:
    if ring is None:
        ring = _ring_of(w)
        if ring is None:
            raise ValueError("cannot infer the ring of an empty word; pass ring=")
    return Realizer(spec, ring, use_formula)(w)
