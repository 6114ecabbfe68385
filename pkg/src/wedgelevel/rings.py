"""Exact commutative rings: the integers, residue rings Z/q and Z[x1..xk].

Elements are stored as canonical payloads owned by a :class:`Ring`:

* integers and residues are plain ``int`` (residues live in ``[0, q)``);
* polynomials are tuples of ``(exponent_vector, coefficient)`` pairs sorted
  by descending graded-lexicographic order, with no zero coefficients.

Matrix code works on payloads directly through the ring's methods;
:class:`RingElement` is the user-facing wrapper with operator overloading.
"""

from __future__ import annotations

import ast
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

INT = "int"
MODULAR = "modular"
POLY = "poly"


class RingError(ValueError):
    pass


def _grlex(term):
    exp = term[0]
    return (sum(exp), exp)


def _poly_from_dict(d: dict) -> tuple:
    return tuple(sorted(((e, c) for e, c in d.items() if c), key=_grlex, reverse=True))


@dataclass(frozen=True)
class Ring:
    kind: str
    q: int | None = None
    vars: tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind == MODULAR:
            if self.q is None or self.q < 2:
                raise RingError(f"modulus must be >= 2, got {self.q}")
        elif self.kind == POLY:
            if len(set(self.vars)) != len(self.vars):
                raise RingError(f"repeated variable names in {self.vars}")
        elif self.kind != INT:
            raise RingError(f"unknown ring kind {self.kind!r}")

    # construction helpers

    @classmethod
    def integers(cls) -> Ring:
        return cls(INT)

    @classmethod
    def modular(cls, q: int) -> Ring:
        return cls(MODULAR, q=q)

    @classmethod
    def poly(cls, *names: str) -> Ring:
        if len(names) == 1 and not isinstance(names[0], str):
            names = tuple(names[0])
        return cls(POLY, vars=tuple(names))

    @property
    def is_finite(self) -> bool:
        return self.kind == MODULAR

    @cached_property
    def two_invertible(self) -> bool:
        return self.kind == MODULAR and math.gcd(2, self.q) == 1

    @property
    def arity(self) -> int:
        return len(self.vars)

    def __str__(self):
        if self.kind == INT:
            return "Z"
        if self.kind == MODULAR:
            return f"Z/{self.q}"
        return "Z[" + ",".join(self.vars) + "]"

    # payload arithmetic

    @cached_property
    def zero(self):
        return () if self.kind == POLY else 0

    @cached_property
    def one(self):
        if self.kind == POLY:
            return (((0,) * self.arity, 1),)
        return 1 % self.q if self.kind == MODULAR else 1

    def from_int(self, k: int):
        if self.kind == MODULAR:
            return k % self.q
        if self.kind == POLY:
            return (((0,) * self.arity, k),) if k else ()
        return k

    def var(self, name: str):
        if self.kind != POLY:
            raise RingError(f"{self} has no variables")
        try:
            pos = self.vars.index(name)
        except ValueError:
            raise RingError(f"unknown variable {name!r} in {self}") from None
        exp = tuple(1 if t == pos else 0 for t in range(self.arity))
        return ((exp, 1),)

    def is_zero(self, a) -> bool:
        return not a

    def add(self, a, b):
        if self.kind == MODULAR:
            return (a + b) % self.q
        if self.kind == INT:
            return a + b
        if not a:
            return b
        if not b:
            return a
        d = dict(a)
        for e, c in b:
            d[e] = d.get(e, 0) + c
        return _poly_from_dict(d)

    def neg(self, a):
        if self.kind == MODULAR:
            return -a % self.q
        if self.kind == INT:
            return -a
        return tuple((e, -c) for e, c in a)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.kind == MODULAR:
            return a * b % self.q
        if self.kind == INT:
            return a * b
        if not a or not b:
            return ()
        if len(b) == 1 and not any(b[0][0]):
            k = b[0][1]
            return a if k == 1 else tuple((e, c * k) for e, c in a)
        d: dict = {}
        for e1, c1 in a:
            for e2, c2 in b:
                e = tuple(x + y for x, y in zip(e1, e2))
                d[e] = d.get(e, 0) + c1 * c2
        return _poly_from_dict(d)

    def scale(self, k: int, a):
        return self.mul(self.from_int(k), a)

    def pow(self, a, k: int):
        if k < 0:
            raise RingError("negative exponent")
        out = self.one
        for _ in range(k):
            out = self.mul(out, a)
        return out

    def normalize(self, a):
        """Bring a raw payload (or an int) to canonical form."""
        if isinstance(a, RingElement):
            if a.ring != self:
                raise RingError(f"element of {a.ring} used in {self}")
            return a.payload
        if isinstance(a, int):
            return self.from_int(a)
        if self.kind == POLY:
            d: dict = {}
            for e, c in a:
                e = tuple(e)
                if len(e) != self.arity:
                    raise RingError(f"exponent {e} has wrong arity for {self}")
                d[e] = d.get(e, 0) + c
            return _poly_from_dict(d)
        raise RingError(f"cannot normalize {a!r} in {self}")

    def unit_inverse(self, a):
        """Inverse payload of ``a`` if it is a unit, else ``None``."""
        if self.kind == MODULAR:
            if math.gcd(a, self.q) != 1:
                return None
            return pow(a, -1, self.q)
        if self.kind == INT:
            return a if a in (1, -1) else None
        if len(a) == 1 and not any(a[0][0]) and a[0][1] in (1, -1):
            return a
        return None

    def lift(self, a) -> int:
        """Integer representative of a constant payload."""
        if self.kind == POLY:
            if not a:
                return 0
            if len(a) == 1 and not any(a[0][0]):
                return a[0][1]
            raise RingError(f"{self.format(a)} is not a constant")
        return a

    def format(self, a) -> str:
        if self.kind != POLY:
            return str(a)
        if not a:
            return "0"
        parts = []
        for exp, c in a:
            mono = "*".join(
                name if k == 1 else f"{name}^{k}" for name, k in zip(self.vars, exp) if k
            )
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            parts.append(("-" if c < 0 else "+", body))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    # wrapping

    def __call__(self, value) -> RingElement:
        if isinstance(value, str):
            return self.parse(value)
        return RingElement(self, self.normalize(value))

    def wrap(self, payload) -> RingElement:
        return RingElement(self, payload)

    def gen(self, name: str) -> RingElement:
        return RingElement(self, self.var(name))

    def gens(self) -> tuple[RingElement, ...]:
        return tuple(self.gen(v) for v in self.vars)

    def parse(self, text: str) -> RingElement:
        """Parse an arithmetic expression such as ``-2*xi*zeta^2 + 3``."""
        try:
            tree = ast.parse(text.replace("^", "**"), mode="eval")
        except SyntaxError as exc:
            raise RingError(f"cannot parse {text!r}") from exc
        return self._eval(tree.body, text)

    def _eval(self, node, text):
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return self(node.value)
        if isinstance(node, ast.Name):
            return self.gen(node.id)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            val = self._eval(node.operand, text)
            return -val if isinstance(node.op, ast.USub) else val
        if isinstance(node, ast.BinOp):
            left = self._eval(node.left, text)
            if isinstance(node.op, ast.Pow):
                if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)):
                    raise RingError(f"exponent must be an integer literal in {text!r}")
                return left ** node.right.value
            right = self._eval(node.right, text)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
        raise RingError(f"unsupported syntax in {text!r}")

    # JSON

    def to_json(self) -> dict:
        if self.kind == MODULAR:
            return {"kind": "modular", "q": self.q}
        if self.kind == POLY:
            return {"kind": "poly", "vars": list(self.vars)}
        return {"kind": "int"}

    @classmethod
    def from_json(cls, obj: dict) -> Ring:
        kind = obj.get("kind")
        if kind == "modular":
            return cls.modular(int(obj["q"]))
        if kind == "poly":
            return cls.poly(*obj["vars"])
        if kind == "int":
            return cls.integers()
        raise RingError(f"unknown ring spec {obj!r}")

    def element_to_json(self, a):
        if self.kind != POLY:
            return a
        return {"monomials": [{"exp": list(e), "coef": c} for e, c in a]}

    def element_from_json(self, obj):
        if isinstance(obj, int):
            return self.from_int(obj)
        if isinstance(obj, str):
            return self.parse(obj).payload
        if isinstance(obj, dict) and "monomials" in obj:
            return self.normalize([(tuple(t["exp"]), int(t["coef"])) for t in obj["monomials"]])
        raise RingError(f"cannot decode element {obj!r} in {self}")


def parse_ring(text: str) -> Ring:
    """Parse the CLI ring forms ``z``, ``int``, ``z/9``, ``f5``, ``poly:xi,zeta``."""
    t = text.strip().lower()
    if t in ("z", "int", "integers"):
        return Ring.integers()
    if t.startswith("z/"):
        return Ring.modular(int(t[2:]))
    if t.startswith("f") and t[1:].isdigit():
        return Ring.modular(int(t[1:]))
    if t.startswith("poly:"):
        return Ring.poly(*[v.strip() for v in text.strip()[5:].split(",") if v.strip()])
    raise RingError(f"unknown ring {text!r}")


@dataclass(frozen=True)
class RingElement:
    ring: Ring
    payload: object

    def _coerce(self, other) -> object:
        if isinstance(other, RingElement):
            if other.ring != self.ring:
                raise RingError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other.payload
        if isinstance(other, int):
            return self.ring.from_int(other)
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return RingElement(self.ring, self.ring.add(self.payload, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return RingElement(self.ring, self.ring.sub(self.payload, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return RingElement(self.ring, self.ring.sub(b, self.payload))

    def __mul__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return RingElement(self.ring, self.ring.mul(self.payload, b))

    __rmul__ = __mul__

    def __neg__(self):
        return RingElement(self.ring, self.ring.neg(self.payload))

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        return RingElement(self.ring, self.ring.pow(self.payload, k))

    def __eq__(self, other):
        if isinstance(other, int):
            return self.payload == self.ring.from_int(other)
        if isinstance(other, RingElement):
            return self.ring == other.ring and self.payload == other.payload
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, self.payload))

    def __bool__(self):
        return bool(self.payload)

    def is_unit(self) -> tuple[bool, RingElement | None]:
        inv = self.ring.unit_inverse(self.payload)
        if inv is None:
            return False, None
        return True, RingElement(self.ring, inv)

    def inverse(self) -> RingElement:
        ok, inv = self.is_unit()
        if not ok:
            raise RingError(f"{self} is not a unit in {self.ring}")
        return inv

    def to_json(self):
        return self.ring.element_to_json(self.payload)

    def __str__(self):
        return self.ring.format(self.payload)

    def __repr__(self):
        return f"RingElement({self.ring}, {self})"


def elem_arith(op: str, a: RingElement, b: RingElement | None = None) -> RingElement:
    if op == "neg":
        return -a
    if b is None:
        raise RingError(f"{op} needs two operands")
    if a.ring != b.ring:
        raise RingError(f"ring mismatch: {a.ring} vs {b.ring}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise RingError(f"unknown operation {op!r}")


def is_unit(a: RingElement) -> tuple[bool, RingElement | None]:
    return a.is_unit()


@dataclass(frozen=True)
class FiniteIdeal:
    """An ideal of Z/q, stored by its canonical generator ``gen`` (a divisor of q).

    ``gen == q`` is the zero ideal and ``gen == 1`` the whole ring.
    """

    ring: Ring
    gen: int
    witnesses: tuple[int, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.ring.kind != MODULAR:
            raise RingError(f"ideals are only enumerated in Z/q, not {self.ring}")
        if self.gen < 1 or self.ring.q % self.gen:
            raise RingError(f"{self.gen} does not divide {self.ring.q}")

    @classmethod
    def zero(cls, ring: Ring) -> FiniteIdeal:
        return cls(ring, ring.q)

    @classmethod
    def whole(cls, ring: Ring) -> FiniteIdeal:
        return cls(ring, 1)

    @property
    def elements(self) -> frozenset[int]:
        return frozenset(range(0, self.ring.q, self.gen))

    def sorted_elements(self) -> list[int]:
        return list(range(0, self.ring.q, self.gen))

    @property
    def is_zero(self) -> bool:
        return self.gen == self.ring.q

    @property
    def is_whole(self) -> bool:
        return self.gen == 1

    def __contains__(self, x) -> bool:
        if isinstance(x, RingElement):
            x = x.payload
        return x % self.gen == 0

    def __le__(self, other: FiniteIdeal) -> bool:
        return self.gen % other.gen == 0

    def __lt__(self, other: FiniteIdeal) -> bool:
        return self <= other and self != other

    def __add__(self, other: FiniteIdeal) -> FiniteIdeal:
        return FiniteIdeal(self.ring, math.gcd(self.gen, other.gen))

    def __mul__(self, other: FiniteIdeal) -> FiniteIdeal:
        return FiniteIdeal(self.ring, math.gcd(self.gen * other.gen, self.ring.q))

    def scaled(self, k: int) -> FiniteIdeal:
        """The ideal k*A."""
        return FiniteIdeal(self.ring, math.gcd(k * self.gen, self.ring.q))

    def __str__(self):
        if self.is_zero:
            return "(0)"
        return f"({self.gen})"


def ideal_closure(ring: Ring, gens: Iterable) -> FiniteIdeal:
    if ring.kind != MODULAR:
        raise RingError(f"ideal closure needs a finite residue ring, got {ring}")
    payloads = tuple(ring.normalize(g) for g in gens)
    d = math.gcd(ring.q, *payloads)
    return FiniteIdeal(ring, d, witnesses=payloads)
