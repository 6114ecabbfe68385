"""Registry of named identity checks.

Each case builds one or more (label, lhs, rhs) pairs of words and passes iff
every pair realizes to the same matrix.  Symbolic cases live over Z[xi,
zeta, zeta1], so a pass holds after any specialization to a commutative
ring.  Random cases (LR.1, NORM.*) run over Z/9 with a fixed seed.

Where a printed sign or argument disagrees with the matrices, the case
asserts the value the matrices give; the label says so.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

from .calculus import z_generator
from .indexing import WedgeSpec
from .matrices import ExactMatrix, commutator, conj_left, determinant
from .rings import Ring
from .terms import MatrixFactor, Product, Realizer, t, wt
from .wedge import wedge2_transvection_formula, wedge_matrix, wedge_transvection_formula

SYMBOLIC = Ring.poly("xi", "zeta", "zeta1")
Z9 = Ring.modular(9)

Identity = tuple  # (label, lhs word, rhs word)


class UnknownCheck(KeyError):
    pass


@dataclass(frozen=True)
class CheckCase:
    id: str
    anchor: str
    n: int
    m: int
    build: Callable[[Ring], list]
    ring: Ring = SYMBOLIC

    @property
    def spec(self) -> WedgeSpec:
        return WedgeSpec(self.n, self.m)


@dataclass
class CheckReport:
    id: str
    anchor: str
    passed: bool
    ms: float
    identities: int
    diff: str | None = None

    def to_json(self) -> dict:
        out = {"id": self.id, "anchor": self.anchor, "pass": self.passed, "ms": round(self.ms, 2)}
        if self.diff is not None:
            out["diff"] = self.diff
        return out


@dataclass
class SuiteReport:
    reports: list[CheckReport] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports)

    @property
    def failures(self) -> list[CheckReport]:
        return [r for r in self.reports if not r.passed]

    def __len__(self):
        return len(self.reports)

    def to_json(self) -> dict:
        return {
            "count": len(self.reports),
            "passed": sum(r.passed for r in self.reports),
            "failed": len(self.failures),
            "checks": [r.to_json() for r in self.reports],
        }


REGISTRY: dict[str, CheckCase] = {}


def register(id: str, anchor: str, n: int, m: int, ring: Ring = SYMBOLIC):
    def deco(fn):
        if id in REGISTRY:
            raise ValueError(f"duplicate check id {id}")
        REGISTRY[id] = CheckCase(id, anchor, n, m, fn, ring)
        return fn

    return deco


def _ix(text: str) -> tuple:
    # compact labels; a, b, g stand for 10, 11, 12
    return tuple(sorted({"a": 10, "b": 11, "g": 12}.get(c, None) or int(c) for c in text))


def T(I: str, J: str, arg):
    return t(_ix(I), _ix(J), arg)


def _gens(R):
    return R.gens()


def _pair(*v):
    return tuple(sorted(v))


# --- exterior images of single transvections -------------------------------


@register("WF.1", "W2 t_{1,3}(xi) = t_{12,23}(-xi) t_{14,34}(xi) t_{15,35}(xi)", 5, 2)
def _wf1(R):
    x, _, _ = _gens(R)
    return [
        ("minors", wt(1, 3, x), Product((T("12", "23", -x), T("14", "34", x), T("15", "35", x)))),
        ("block form", wt(1, 3, x), wedge2_transvection_formula(5, 1, 3, x)),
    ]


@register("WF.2", "W3 t_{1,3}(xi) = t_{124,234}(-xi) t_{125,235}(-xi) t_{145,345}(xi)", 5, 3)
def _wf2(R):
    x, _, _ = _gens(R)
    spec = WedgeSpec(5, 3)
    rhs = Product((T("124", "234", -x), T("125", "235", -x), T("145", "345", x)))
    return [("minors", wt(1, 3, x), rhs), ("product formula", wedge_transvection_formula(spec, 1, 3, x), rhs)]


# --- commutator types on the (A4, w2) diagram -------------------------------


@register("TUT.1", "[t_{14,15}(xi), W2 t_{2,3}(zeta)] = e", 5, 2)
def _tut1(R):
    x, z, _ = _gens(R)
    return [("vanishes", commutator(T("14", "15", x), wt(2, 3, z)), Product(()))]


@register("TUT.2", "[t_{13,35}(xi), W2 t_{2,3}(zeta)] = t_{12,35}(-xi zeta)", 5, 2)
def _tut2(R):
    x, z, _ = _gens(R)
    return [("single shift", commutator(T("13", "35", x), wt(2, 3, z)), T("12", "35", -x * z))]


@register("TUT.3", "[t_{13,24}(xi), W2 t_{2,3}(zeta)] = t_{12,24}(-xi zeta) t_{12,34}(xi zeta^2) t_{13,34}(zeta xi)", 5, 2)
def _tut3(R):
    x, z, _ = _gens(R)
    rhs = Product((T("12", "24", -x * z), T("12", "34", x * z * z), T("13", "34", z * x)))
    return [("triple product", commutator(T("13", "24", x), wt(2, 3, z)), rhs)]


# --- ideal coincidence for bivectors (n = 6) --------------------------------


@register("L4.1", "[t_{12,34}(xi), W2 t_{4,2}(zeta)] = t_{14,23}(-xi zeta^2) t_{14,34}(-zeta xi) t_{12,23}(-xi zeta)", 6, 2)
def _l41(R):
    x, z, _ = _gens(R)
    rhs = Product((T("14", "23", -x * z * z), T("14", "34", -z * x), T("12", "23", -x * z)))
    paired = commutator(T("12", "34", x), wt(4, 2, z)) * commutator(T("12", "34", x), wt(4, 2, -z))
    return [
        ("commutator", commutator(T("12", "34", x), wt(4, 2, z)), rhs),
        ("+zeta times -zeta", paired, T("14", "23", -2 * x * z * z)),
    ]


@register("L4.2", "[t_{12,34}(xi), W2 t_{4,5}(zeta)] = t_{12,35}(xi zeta)", 6, 2)
def _l42(R):
    x, z, _ = _gens(R)
    return [("shift", commutator(T("12", "34", x), wt(4, 5, z)), T("12", "35", x * z))]


@register("L4.3", "[t_{12,13}(xi), W2 t_{1,4}(zeta)] = t_{12,34}(-xi zeta), then W2 t_{4,1}(+-zeta1)", 6, 2)
def _l43(R):
    x, z, z1 = _gens(R)
    X = T("12", "34", -x * z)
    minus = commutator(X, wt(4, 1, -z1))
    plus = commutator(X, wt(4, 1, z1))
    return [
        ("first shift", commutator(T("12", "13", x), wt(1, 4, z)), X),
        (
            "-zeta1 commutator",
            minus,
            Product((T("12", "13", -x * z * z1), T("24", "13", -x * z * z1 * z1), T("24", "34", z1 * x * z))),
        ),
        # printed as t_{24,13}(+zeta1^2 xi zeta); the matrices give -2 xi zeta zeta1^2
        ("paired zeta1^2 term (sign corrected)", plus * minus, T("24", "13", -2 * x * z * z1 * z1)),
        ("remaining pair", minus * T("24", "13", x * z * z1 * z1), Product((T("12", "13", -x * z * z1), T("24", "34", z1 * x * z)))),
    ]


@register("L4.4", "[t_{12,23}(xi), W2 t_{4,2}(zeta)] = t_{14,23}(-zeta xi)", 6, 2)
def _l44(R):
    x, z, _ = _gens(R)
    return [("height 1 to 0", commutator(T("12", "23", x), wt(4, 2, z)), T("14", "23", -z * x))]


@register("L4.5", "[t_{14,34}(-zeta xi) t_{12,23}(-xi zeta), t_{45,14}(xi zeta1) t_{56,16}(zeta1 xi)] = t_{45,34}(xi^2 zeta1 zeta)", 6, 2)
def _l45(R):
    x, z, z1 = _gens(R)
    P1 = Product((T("14", "34", -z * x), T("12", "23", -x * z)))
    P2 = Product((T("45", "14", x * z1), T("56", "16", z1 * x)))
    return [
        ("first product", commutator(T("12", "34", x), wt(4, 2, z)), P1 * T("14", "23", -x * z * z)),
        ("second product", commutator(T("45", "16", x), wt(6, 4, z1)), P2 * T("56", "14", -x * z1 * z1)),
        ("paired second", commutator(T("45", "16", x), wt(6, 4, z1)) * commutator(T("45", "16", x), wt(6, 4, -z1)), T("56", "14", -2 * z1 * z1 * x)),
        # printed with a minus sign; the matrices give +xi^2 zeta zeta1
        ("final commutator (sign corrected)", commutator(P1, P2), T("45", "34", x * x * z1 * z)),
    ]


# --- relative elementary generators for bivectors ---------------------------
# (i, j, h, k) = (1, 3, 2, 4): c is a factor of W2 t_{h,i}(-zeta), d of W2 t_{j,k}(1)

_I, _J, _H, _K = 1, 3, 2, 4


def _l5_abcd(R):
    x, z, _ = _gens(R)
    ij, jh, hk = _pair(_I, _J), _pair(_J, _H), _pair(_H, _K)
    a = t(ij, jh, x)
    b = t(hk, jh, z * x)
    c = t(jh, ij, -z)
    d = t(jh, hk, R(1))
    return a, b, c, d


@register("L5.0", "z_{ij,hi}(xi,zeta) = ^{t_{hi,ij}(zeta)} t_{ij,hi}(xi) = ^{W2 t_{h,j}(zeta)} t_{ij,hi}(xi)", 6, 2)
def _l50(R):
    x, z, _ = _gens(R)
    i, j, h = _I, _J, _H
    tij = t(_pair(i, j), _pair(h, i), x)
    return [
        ("z as conjugate", z_generator(_pair(i, j), _pair(h, i), x, z), conj_left(t(_pair(h, i), _pair(i, j), z), tij)),
        ("exterior conjugate", z_generator(_pair(i, j), _pair(h, i), x, z), conj_left(wt(h, j, z), tij)),
    ]


@register("L5.z", "z_{ij,hk}(xi,zeta) = ^{t_{hk,ij}(zeta)}[t_{ij,jh}(xi), t_{jh,hk}(1)] = [ab, cd]", 6, 2)
def _l5z(R):
    x, z, _ = _gens(R)
    a, b, c, d = _l5_abcd(R)
    ij, jh, hk = _pair(_I, _J), _pair(_J, _H), _pair(_H, _K)
    zz = z_generator(ij, hk, x, z)
    return [
        ("commutator form", zz, conj_left(t(hk, ij, z), commutator(t(ij, jh, x), t(jh, hk, R(1))))),
        ("[ab,cd]", zz, commutator(a * b, c * d)),
        ("four factors", commutator(a * b, c * d), Product(tuple(_flatten(_abcd(a, b, c, d))))),
    ]


def _abcd(a, b, c, d):
    return (
        conj_left(a, commutator(b, c)),
        conj_left(a * c, commutator(b, d)),
        commutator(a, c),
        conj_left(c, commutator(a, d)),
    )


def _flatten(ws):
    for w in ws:
        yield from (w.factors if isinstance(w, Product) else (w,))


@register("L5.a", "[b,c] = [t_{hk,jh}(zeta xi), t_{jh,ij}(-zeta)] = t_{hk,ij}(-zeta^2 xi)", 6, 2)
def _l5a(R):
    x, z, _ = _gens(R)
    _, b, c, _ = _l5_abcd(R)
    return [("[b,c]", commutator(b, c), t(_pair(_H, _K), _pair(_I, _J), -z * z * x))]


@register("L5.b", "^c[b,d] = t_{hk,ik}(-xi zeta^2 (1 + xi zeta)) t_{jh,ik}(-xi zeta^2) ^{W2 t_{h,i}(-zeta)}[t_{hk,jh}(xi zeta), W2 t_{j,k}(1)]", 6, 2)
def _l5b(R):
    x, z, _ = _gens(R)
    _, b, c, d = _l5_abcd(R)
    i, j, h, k = _I, _J, _H, _K
    rhs = Product((
        t(_pair(h, k), _pair(i, k), -x * z * z * (1 + x * z)),
        t(_pair(j, h), _pair(i, k), -x * z * z),
        conj_left(wt(h, i, -z), commutator(t(_pair(h, k), _pair(j, h), x * z), wt(j, k, R(1)))),
    ))
    # printed with W2 t_{h,i}(zeta) and W2 t_{j,k}(-1)
    return [("^c[b,d] (exterior arguments sign corrected)", conj_left(c, commutator(b, d)), rhs)]


@register("L5.c", "[a,c] = [t_{ij,jh}(xi), t_{jh,ij}(-zeta)] = [t_{ij,jh}(xi), W2 t_{h,i}(-zeta)]", 6, 2)
def _l5c(R):
    x, z, _ = _gens(R)
    a, _, c, _ = _l5_abcd(R)
    return [("[a,c]", commutator(a, c), commutator(a, wt(_H, _I, -z)))]


@register("L5.d", "^c[a,d] = t_{jh,ik}(xi zeta^2) t_{ij,ik}(-xi zeta) ^{W2 t_{h,i}(-zeta)}[t_{ij,jh}(xi), W2 t_{j,k}(1)]", 6, 2)
def _l5d(R):
    x, z, _ = _gens(R)
    a, _, c, d = _l5_abcd(R)
    i, j, h, k = _I, _J, _H, _K
    rhs = Product((
        t(_pair(j, h), _pair(i, k), x * z * z),
        t(_pair(i, j), _pair(i, k), -x * z),
        conj_left(wt(h, i, -z), commutator(a, wt(j, k, R(1)))),
    ))
    return [("^c[a,d] (exterior arguments sign corrected)", conj_left(c, commutator(a, d)), rhs)]


# --- equal-height coincidence (general m) -----------------------------------


@register("LEQ0.1", "[t_{123,456}(xi), W3 t_{4,3}(zeta)] [t_{123,456}(xi), W3 t_{4,3}(-zeta)] = t_{124,356}(2 zeta^2 xi)", 7, 3)
def _leq01(R):
    x, z, _ = _gens(R)
    T0 = T("123", "456", x)
    plus = commutator(T0, wt(4, 3, z))
    minus = commutator(T0, wt(4, 3, -z))
    return [
        ("+zeta", plus, Product((T("123", "356", x * z), T("124", "356", x * z * z), T("124", "456", -x * z)))),
        ("-zeta", minus, Product((T("123", "356", -x * z), T("124", "356", x * z * z), T("124", "456", x * z)))),
        ("product", plus * minus, T("124", "356", 2 * z * z * x)),
    ]


@register("LEQ0.2", "[t_{123,456}(xi), W3 t_{6,7}(zeta)] = t_{123,457}(xi zeta)", 7, 3)
def _leq02(R):
    x, z, _ = _gens(R)
    return [("support change", commutator(T("123", "456", x), wt(6, 7, z)), T("123", "457", x * z))]


@register("PLG.1", "[t_{123,124}(xi), W3 t_{2,5}(zeta)] = t_{123,145}(-xi zeta), then W3 t_{5,2}(zeta1)", 6, 3)
def _plg1(R):
    x, z, z1 = _gens(R)
    X = T("123", "145", -x * z)
    return [
        ("shift", commutator(T("123", "124", x), wt(2, 5, z)), X),
        (
            "triple",
            commutator(X, wt(5, 2, z1)),
            Product((T("123", "124", x * z * z1), T("135", "124", -z1 * z1 * x * z), T("135", "145", -z1 * x * z))),
        ),
    ]


@register("PLG.2", "t_{I,J}(xi zeta) = [t_{I,J}(xi), W t_{j,i}(zeta), W t_{i,j}(1)]", 6, 2)
def _plg2(R):
    x, z, _ = _gens(R)
    inner = commutator(T("12", "34", x), wt(4, 5, z))
    return [
        ("ideal absorption", commutator(inner, wt(5, 4, R(1))), T("12", "34", x * z)),
        ("opposite unit", commutator(inner, wt(5, 4, R(-1))), T("12", "34", -x * z)),
    ]


# --- height raising, m = 4, n = 12 ------------------------------------------


def _pie(R, first, second, p1, p2, extra1, extra2, result):
    x, z, z1 = _gens(R)
    (I1, J1, j1, i1), (I2, J2, j2, i2) = first, second
    c1 = commutator(T(I1, J1, x), wt(j1, i1, z))
    c2 = commutator(T(I2, J2, x), wt(j2, i2, z1))
    P1 = Product((T(p1[0], p1[1], p1[2] * x * z), T(p1[3], p1[4], p1[5] * z * x)))
    P2 = Product((T(p2[0], p2[1], p2[2] * x * z1), T(p2[3], p2[4], p2[5] * z1 * x)))
    return [
        ("first triple", c1, P1 * T(extra1[0], extra1[1], extra1[2] * x * z * z)),
        ("second triple", c2, P2 * T(extra2[0], extra2[1], extra2[2] * x * z1 * z1)),
        ("commutator of products", commutator(P1, P2), T(result[0], result[1], result[2] * x * x * z1 * z)),
    ]


@register("P-IE.1", "[t_{1234,4567}(-xi zeta) t_{1238,5678}(-zeta xi), t_{49ab,1234}(xi zeta1) t_{9abg,123g}(zeta1 xi)] = t_{49ab,4567}(xi^2 zeta1 zeta)", 12, 4)
def _pie1(R):
    return _pie(
        R,
        ("1234", "5678", 8, 4), ("49ab", "123g", 12, 4),
        ("1234", "4567", -1, "1238", "5678", -1), ("49ab", "1234", 1, "9abg", "123g", 1),
        ("1238", "4567", -1), ("9abg", "1234", -1),
        ("49ab", "4567", 1),
    )


@register("P-IE.2", "[t_{1234,1456}(xi zeta) t_{1237,1567}(-zeta xi), t_{1489,1234}(xi zeta1) t_{189a,123a}(-zeta1 xi)] = t_{1489,1456}(-xi^2 zeta1 zeta)", 12, 4)
def _pie2(R):
    return _pie(
        R,
        ("1234", "1567", 7, 4), ("1489", "123a", 10, 4),
        ("1234", "1456", 1, "1237", "1567", -1), ("1489", "1234", 1, "189a", "123a", -1),
        ("1237", "1456", 1), ("189a", "1234", 1),
        ("1489", "1456", -1),
    )


@register("P-IE.3", "[t_{1234,1245}(-xi zeta) t_{1236,1256}(-zeta xi), t_{1248,1234}(xi zeta1) t_{1278,1237}(-zeta1 xi)] = t_{1248,1245}(xi^2 zeta1 zeta)", 12, 4)
def _pie3(R):
    return _pie(
        R,
        ("1234", "1256", 6, 4), ("1248", "1237", 7, 4),
        ("1234", "1245", -1, "1236", "1256", -1), ("1248", "1234", 1, "1278", "1237", -1),
        ("1236", "1245", -1), ("1278", "1234", 1),
        ("1248", "1245", 1),
    )


# --- residue relation, n = 5, m = 3 -----------------------------------------


@register("P-REL.1", "W3 t_{1,2}(xi zeta) z1 z2 = t_{145,245}(3 xi zeta)", 5, 3)
def _prel1(R):
    x, z, _ = _gens(R)
    xz = x * z
    z1 = Product((T("134", "234", -xz), T("145", "245", xz)))
    z2 = Product((T("145", "245", xz), T("135", "235", -xz)))
    return [
        ("exterior factors", wt(1, 2, xz), Product((T("134", "234", xz), T("135", "235", xz), T("145", "245", xz)))),
        ("z1 from a triple", commutator(T("134", "245", x), wt(5, 3, z)), z1 * T("145", "234", x * z * z)),
        ("z2 from a triple", commutator(T("135", "245", x), wt(4, 3, -z)), z2 * T("145", "235", x * z * z)),
        ("after z1", wt(1, 2, xz) * z1, Product((T("135", "235", xz), T("145", "245", 2 * xz)))),
        ("after z2", wt(1, 2, xz) * z1 * z2, T("145", "245", 3 * xz)),
    ]


# --- relative elementary generators, general m ------------------------------
# I = 123, J = 145, i_q = 3, j_q = 4, V = 124, W = 135

_AI, _AJ, _AV, _AW, _IQ, _JQ = (1, 2, 3), (1, 4, 5), (1, 2, 4), (1, 3, 5), 3, 4


def _arf_abcd(R):
    x, z, _ = _gens(R)
    return t(_AJ, _AV, z * x), t(_AI, _AV, x), t(_AV, _AI, -z), t(_AV, _AJ, R(1))


@register("L-ARF.z", "z_{I,J}(xi,zeta) = ^{t_{J,I}(zeta)}[t_{I,V}(xi), t_{V,J}(1)] = [ab, cd]", 6, 3)
def _arfz(R):
    x, z, _ = _gens(R)
    a, b, c, d = _arf_abcd(R)
    zz = z_generator(_AI, _AJ, x, z)
    base_I, base_J = (1, 2, 3), (1, 2, 4)
    return [
        ("commutator form", zz, conj_left(t(_AJ, _AI, z), commutator(t(_AI, _AV, x), t(_AV, _AJ, R(1))))),
        ("[ab,cd]", zz, commutator(a * b, c * d)),
        ("four factors", commutator(a * b, c * d), Product(tuple(_flatten(_abcd(a, b, c, d))))),
        (
            "height m-1 base",
            z_generator(base_I, base_J, x, z) * t(base_I, base_J, -x),
            commutator(wt(4, 3, z), t(base_I, base_J, x)),
        ),
    ]


@register("L-ARF.a", "[b,c] = [t_{I,V}(xi), t_{V,I}(-zeta)] = [t_{I,V}(xi), W t_{j_q,i_q}(-zeta)]", 6, 3)
def _arfa(R):
    x, z, _ = _gens(R)
    _, b, c, _ = _arf_abcd(R)
    return [("[b,c]", commutator(b, c), commutator(b, wt(_JQ, _IQ, -z)))]


@register("L-ARF.b", "^c[b,d] = t_{V,W}(xi zeta^2) t_{I,W}(-xi zeta) ^{W t_{j_q,i_q}(-zeta)} t_{I,J}(xi)", 6, 3)
def _arfb(R):
    x, z, _ = _gens(R)
    _, b, c, d = _arf_abcd(R)
    rhs = Product((t(_AV, _AW, x * z * z), t(_AI, _AW, -x * z), conj_left(wt(_JQ, _IQ, -z), t(_AI, _AJ, x))))
    return [("^c[b,d]", conj_left(c, commutator(b, d)), rhs)]


@register("L-ARF.c", "[a,c] = [t_{J,V}(zeta xi), t_{V,I}(-zeta)] = t_{J,I}(-zeta^2 xi)", 6, 3)
def _arfc(R):
    x, z, _ = _gens(R)
    a, _, c, _ = _arf_abcd(R)
    return [("[a,c]", commutator(a, c), t(_AJ, _AI, -z * z * x))]


@register("L-ARF.d", "^c[a,d] = t_{J,W}(-xi zeta^2 (1 + xi zeta)) t_{V,W}(-xi zeta^2) ^{W t_{j_q,i_q}(-zeta)} t_{J,V}(xi zeta) ^{W t_{j_q,i_q}(-zeta)} z_{J,V}(-zeta xi, 1)", 6, 3)
def _arfd(R):
    x, z, _ = _gens(R)
    a, _, c, d = _arf_abcd(R)
    E = wt(_JQ, _IQ, -z)
    rhs = Product((
        t(_AJ, _AW, -x * z * z * (1 + x * z)),
        t(_AV, _AW, -x * z * z),
        conj_left(E, t(_AJ, _AV, x * z)),
        conj_left(E, z_generator(_AJ, _AV, -z * x, R(1))),
    ))
    return [("^c[a,d]", conj_left(c, commutator(a, d)), rhs)]


# --- perfectness generators -------------------------------------------------


@register("PF.1", "W t_{i,j}(zeta) = [W t_{i,h}(zeta), W t_{h,j}(1)]", 4, 2)
def _pf1(R):
    _, z, _ = _gens(R)
    return [("exterior Chevalley", wt(1, 3, z), commutator(wt(1, 2, z), wt(2, 3, R(1))))]


@register("PF.2", "t_{I,J}(xi) = [t_{I,V}(xi), t_{V,J}(1)] = [t_{I,V}(xi), W t_{i_q,j_q}(+-1)]", 4, 2)
def _pf2(R):
    x, _, _ = _gens(R)
    return [
        ("elementary", T("12", "34", x), commutator(T("12", "23", x), T("23", "34", R(1)))),
        ("exterior unit", T("12", "34", x), commutator(T("12", "23", x), wt(2, 4, R(-1)))),
    ]


# --- random universal identities over Z/9 -----------------------------------


def _random_invertible(R: Ring, n: int, rng: random.Random) -> ExactMatrix:
    while True:
        rows = [[rng.randrange(R.q) for _ in range(n)] for _ in range(n)]
        ok, _ = R.wrap(determinant(R, rows)).is_unit()
        if ok:
            return ExactMatrix.from_rows(R, rows)


def _random_congruence(R: Ring, N: int, level: int, rng: random.Random) -> ExactMatrix:
    # e + level*M has determinant 1 mod level, hence a unit when level | q
    rows = [[(int(r == c) + level * rng.randrange(R.q)) % R.q for c in range(N)] for r in range(N)]
    return ExactMatrix.from_rows(R, rows)


def _random_wedge_elementary(spec: WedgeSpec, R: Ring, rng: random.Random, k: int = 3) -> Product:
    out = []
    for _ in range(k):
        i, j = rng.sample(range(1, spec.n + 1), 2)
        out.append(wt(i, j, R(rng.randrange(1, R.q))))
    return Product(tuple(out))


def _random_relative(spec: WedgeSpec, R: Ring, level: int, rng: random.Random, k: int = 2) -> Product:
    out = []
    for _ in range(k):
        I, J = rng.sample(spec.indices, 2)
        out.append(z_generator(I, J, R(level * rng.randrange(1, R.q)), R(rng.randrange(R.q))))
    return Product(tuple(out))


LR_INSTANCES = 100


@register("LR.1", "[xy, hg] = ^x[y,h] [x,h] ^h[xy,g]", 4, 2, Z9)
def _lr1(R):
    spec = WedgeSpec(4, 2)
    rng = random.Random(20240917)
    out = []
    for k in range(LR_INSTANCES):
        x = MatrixFactor(wedge_matrix(spec, _random_invertible(R, spec.n, rng)), "x")
        y = MatrixFactor(_random_congruence(R, spec.N, 3, rng), "y")
        h = _random_wedge_elementary(spec, R, rng)
        g = _random_relative(spec, R, 3, rng)
        lhs = commutator(x * y, h * g)
        rhs = conj_left(x, commutator(y, h)) * commutator(x, h) * conj_left(h, commutator(x * y, g))
        out.append((f"instance {k}", lhs, rhs))
    return out


def _random_triples(R, N, count, seed):
    rng = random.Random(seed)
    for _ in range(count):
        yield tuple(MatrixFactor(_random_invertible(R, N, rng), name) for name in "xyz")


@register("NORM.1", "[uv, w] = ^u[v, w] [u, w]", 4, 2, Z9)
def _norm1(R):
    return [
        (f"instance {k}", commutator(u * v, w), conj_left(u, commutator(v, w)) * commutator(u, w))
        for k, (u, v, w) in enumerate(_random_triples(R, 6, 20, 11))
    ]


@register("NORM.2", "[z, [x, y]] = ^{xz}[[z^-1, x^-1], y] ^{xy}[[y^-1, z], x^-1]", 4, 2, Z9)
def _norm2(R):
    out = []
    for k, (x, y, z) in enumerate(_random_triples(R, 6, 20, 12)):
        rhs = conj_left(x * z, commutator(commutator(z.inverse(), x.inverse()), y)) * conj_left(
            x * y, commutator(commutator(y.inverse(), z), x.inverse())
        )
        out.append((f"instance {k}", commutator(z, commutator(x, y)), rhs))
    return out


@register("NORM.3", "[a, bc] = [a, b] ^b[a, c]", 4, 2, Z9)
def _norm3(R):
    out = []
    for k, (x, y, z) in enumerate(_random_triples(R, 6, 20, 13)):
        a = commutator(x.inverse(), z)
        b, c = commutator(z, y), y
        out.append((f"instance {k}", commutator(a, b * c), commutator(a, b) * conj_left(b, commutator(a, c))))
    return out


# --- running ----------------------------------------------------------------


def case_ids(filter: str | None = None) -> list[str]:
    ids = list(REGISTRY)
    if filter:
        ids = [i for i in ids if i.startswith(filter)]
    return ids


def _describe_diff(spec: WedgeSpec, ring: Ring, lhs: ExactMatrix, rhs: ExactMatrix) -> str | None:
    d = lhs.diff(rhs)
    if d is None:
        return None
    r, c, a, b = d
    I, J = spec.indices[r], spec.indices[c]
    return f"entry ({spec.label(I)},{spec.label(J)}): lhs={ring.format(a)} rhs={ring.format(b)}"


def run_check(id: str) -> CheckReport:
    try:
        case = REGISTRY[id]
    except KeyError:
        raise UnknownCheck(id) from None
    start = time.perf_counter()
    spec = case.spec
    realizer = Realizer(spec, case.ring)
    identities = case.build(case.ring)
    diff = None
    for label, lhs, rhs in identities:
        d = _describe_diff(spec, case.ring, realizer(lhs), realizer(rhs))
        if d is not None:
            diff = f"{label}: {d}"
            break
    ms = (time.perf_counter() - start) * 1000
    return CheckReport(case.id, case.anchor, diff is None, ms, len(identities), diff)


def run_all(filter: str | None = None, jobs: int = 1) -> SuiteReport:
    ids = case_ids(filter)
    if jobs > 1 and len(ids) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(run_check, ids))
    else:
        reports = [run_check(i) for i in ids]
    return SuiteReport(reports)
