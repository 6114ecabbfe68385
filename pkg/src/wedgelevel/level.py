"""Nets of ideals A_{I,J} over Z/q and their saturation under derivation rules.

A cell holds the ideal of arguments xi for which t_{I,J}(xi) is known to lie
in the overgroup.  Ideals of Z/q are principal, so a cell is a divisor d of q
(d = q is the zero ideal).  Rules only ever enlarge cells, so saturation is
a monotone climb in a finite lattice and terminates.

Rules, applied round-robin in this order:

Type2Shift          [t_{I,J}(xi), W t_{j,i}(zeta)] = t_{I',J'}(+-xi zeta)
Type3DoubleHalve    the +-zeta pair of triple products leaves t_{I~,J~}(2 zeta^2 xi)
HeightRaiseLiteral  double triple commutators give xi xi' zeta zeta1 one height up
HeightRaiseClaimed  A_k into every height k+1 cell
ResidueRule         res * A_{m-2} into every height m-1 cell, res = C(n-2, m-1)
DNetClosure         A_{I,J} A_{J,K} into A_{I,K}

The two height-raising rules are gated on n >= 3m - 2k.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from itertools import combinations

from .calculus import Tag, classify_commutator
from .indexing import Index, WedgeSpec, height, parse_index
from .rings import MODULAR, FiniteIdeal, Ring, RingError, ideal_closure

log = logging.getLogger(__name__)

TYPE2 = "Type2Shift"
TYPE3 = "Type3DoubleHalve"
RAISE_LITERAL = "HeightRaiseLiteral"
RAISE_CLAIMED = "HeightRaiseClaimed"
RESIDUE = "ResidueRule"
DNET = "DNetClosure"
RULE_ORDER = (TYPE2, TYPE3, RAISE_LITERAL, RAISE_CLAIMED, RESIDUE, DNET)

SINGLE_LEVEL = "SingleLevel"
GRADED_CHAIN = "GradedChain"
INCONSISTENT = "Inconsistent"


class NotSaturated(RuntimeError):
    pass


@dataclass(frozen=True)
class RuleSet:
    rules: frozenset = frozenset(RULE_ORDER)

    def __post_init__(self):
        unknown = set(self.rules) - set(RULE_ORDER)
        if unknown:
            raise ValueError(f"unknown rules: {sorted(unknown)}")
        object.__setattr__(self, "rules", frozenset(self.rules))

    @classmethod
    def of(cls, *names: str) -> RuleSet:
        return cls(frozenset(names))

    @classmethod
    def full(cls) -> RuleSet:
        return cls()

    @classmethod
    def claimed(cls) -> RuleSet:
        """Default profile: statement-level height raising."""
        return cls(frozenset(RULE_ORDER) - {RAISE_LITERAL})

    @classmethod
    def literal(cls) -> RuleSet:
        return cls(frozenset(RULE_ORDER) - {RAISE_CLAIMED})

    @classmethod
    def parse(cls, text: str) -> RuleSet:
        aliases = {"full": cls.full(), "claimed": cls.claimed(), "literal": cls.literal()}
        if text in aliases:
            return aliases[text]
        return cls(frozenset(s.strip() for s in text.split(",") if s.strip()))

    def __contains__(self, name: str) -> bool:
        return name in self.rules

    def ordered(self) -> list[str]:
        return [r for r in RULE_ORDER if r in self.rules]


@dataclass(frozen=True)
class TraceEntry:
    rule: str
    source: str
    target: tuple[Index, Index]
    before: int
    after: int
    witness: int
    origin: tuple | None = None

    def to_json(self, spec: WedgeSpec) -> dict:
        I, J = self.target
        return {
            "rule": self.rule,
            "source": self.source,
            "target": [spec.label(I), spec.label(J)],
            "before": self.before,
            "after": self.after,
            "witness": self.witness,
        }


class _Edges:
    """Per-(n, m) tables of where each cell propagates under the exterior roots."""

    _cache: dict = {}

    def __init__(self, spec: WedgeSpec):
        N = spec.N
        idx = spec.indices
        shift: list[list[tuple[int, int, int, int]]] = [[] for _ in range(N * N)]
        triple: list[list[tuple[int, int, int, int]]] = [[] for _ in range(N * N)]
        roots = [(j, i) for j in range(1, spec.n + 1) for i in range(1, spec.n + 1) if i != j]
        for a in range(N):
            for b in range(N):
                if a == b:
                    continue
                I, J = idx[a], idx[b]
                for j, i in roots:
                    cls = classify_commutator(I, J, j, i)
                    if cls.tag is Tag.SINGLE_SHIFT:
                        term = cls.template[0]
                        shift[a * N + b].append((spec.rank(term.I), spec.rank(term.J), j, i))
                    elif cls.tag is Tag.TRIPLE_PRODUCT:
                        term = cls.template[1]  # the zeta^2 factor at (I~, J~)
                        triple[a * N + b].append((spec.rank(term.I), spec.rank(term.J), j, i))
        self.shift = [sorted(set((c, d) for c, d, _, _ in s)) for s in shift]
        self.triple = [sorted(set((c, d) for c, d, _, _ in s)) for s in triple]
        self.shift_roots = {(k, e[0], e[1]): (e[2], e[3]) for k, s in enumerate(shift) for e in s}
        self.triple_roots = {(k, e[0], e[1]): (e[2], e[3]) for k, s in enumerate(triple) for e in s}
        self.height = [height(idx[a], idx[b]) for a in range(N) for b in range(N)]

    @classmethod
    def get(cls, spec: WedgeSpec) -> _Edges:
        key = (spec.n, spec.m)
        if key not in cls._cache:
            cls._cache[key] = cls(spec)
        return cls._cache[key]


class IdealNet:
    """Off-diagonal cells A_{I,J} of a net over Z/q, q odd.

    Cells are stored as generators (divisors of q) in a flat N*N list indexed
    by lex ranks; the diagonal is implicitly the whole ring.
    """

    def __init__(self, spec: WedgeSpec, ring: Ring, gens: list[int] | None = None):
        _check_ring(ring)
        self.spec = spec
        self.ring = ring
        N = spec.N
        self._gen = list(gens) if gens is not None else [ring.q] * (N * N)
        for k in range(N):
            self._gen[k * N + k] = 1
        self.trace: list[TraceEntry] = []
        self.rules: RuleSet | None = None

    def copy(self) -> IdealNet:
        out = IdealNet(self.spec, self.ring, self._gen)
        out.trace = list(self.trace)
        out.rules = self.rules
        return out

    def cell(self, I, J) -> FiniteIdeal:
        N = self.spec.N
        return FiniteIdeal(self.ring, self._gen[self.spec.rank(tuple(I)) * N + self.spec.rank(tuple(J))])

    def cells(self) -> dict[tuple[Index, Index], FiniteIdeal]:
        idx, N = self.spec.indices, self.spec.N
        return {
            (idx[a], idx[b]): FiniteIdeal(self.ring, self._gen[a * N + b])
            for a in range(N)
            for b in range(N)
            if a != b
        }

    def off_diagonal_gens(self) -> list[int]:
        N = self.spec.N
        return [self._gen[a * N + b] for a in range(N) for b in range(N) if a != b]

    def height_cells(self, k: int) -> list[FiniteIdeal]:
        N, h = self.spec.N, _Edges.get(self.spec).height
        return [FiniteIdeal(self.ring, self._gen[p]) for p in range(N * N) if h[p] == k and p // N != p % N]

    @property
    def heights(self) -> range:
        """Heights that occur off the diagonal: max(0, 2m - n) .. m - 1."""
        return range(max(0, 2 * self.spec.m - self.spec.n), self.spec.m)

    def height_ideal(self, k: int) -> FiniteIdeal:
        """A_k: the intersection of all height-k cells (the largest ideal inside each)."""
        cells = self.height_cells(k)
        if not cells:
            raise ValueError(f"no cells of height {k} for n={self.spec.n}, m={self.spec.m}")
        gen = 1
        for c in cells:
            gen = math.lcm(gen, c.gen)
        return FiniteIdeal(self.ring, gen)

    def __eq__(self, other):
        return isinstance(other, IdealNet) and self.spec == other.spec and self.ring == other.ring and self._gen == other._gen

    def _join(self, p: int, gen: int, rule: str, source: str, witness: int, origin=None) -> bool:
        old = self._gen[p]
        new = math.gcd(old, gen)
        if new == old:
            return False
        self._gen[p] = new
        N, idx = self.spec.N, self.spec.indices
        self.trace.append(TraceEntry(rule, source, (idx[p // N], idx[p % N]), old, new, witness, origin))
        return True


def _check_ring(ring: Ring):
    if ring.kind != MODULAR:
        raise RingError(f"the level engine needs a finite ring Z/q, got {ring}")
    if ring.q % 2 == 0:
        raise RingError(f"2 must be invertible; Z/{ring.q} has even modulus")


def net_init(spec: WedgeSpec, ring: Ring, gens) -> IdealNet:
    """gens: iterable of ((I, J), value) with I != J."""
    _check_ring(ring)
    if spec.n < 3 * spec.m:
        log.info("n=%d < 3m=%d: cells may settle into a graded chain", spec.n, 3 * spec.m)
    net = IdealNet(spec, ring)
    per_cell: dict[int, list] = {}
    N = spec.N
    for (I, J), value in gens:
        I, J = tuple(I), tuple(J)
        if I == J:
            raise ValueError(f"diagonal generator pair ({spec.label(I)},{spec.label(J)})")
        per_cell.setdefault(spec.rank(I) * N + spec.rank(J), []).append(value)
    for p, vals in per_cell.items():
        ideal = ideal_closure(ring, vals)
        net._gen[p] = ideal.gen
    return net


def parse_generator(text: str, spec: WedgeSpec, ring: Ring):
    """'12,34:3' -> ((1,2), (3,4)), 3.  For n > 9 use '1-2-3,4-5-6:3'."""
    pair, _, value = text.partition(":")
    if not value:
        raise ValueError(f"generator {text!r} needs the form I,J:value")
    if "-" in pair:
        I_text, J_text = pair.split(",")
        I = parse_index(I_text.replace("-", ","), spec.n)
        J = parse_index(J_text.replace("-", ","), spec.n)
    else:
        I_text, J_text = pair.split(",")
        I, J = parse_index(I_text, spec.n), parse_index(J_text, spec.n)
    if len(I) != spec.m or len(J) != spec.m:
        raise ValueError(f"indices in {text!r} must have size {spec.m}")
    return (I, J), ring(value).payload


# --- rules ----------------------------------------------------------------


def _apply_type2(net: IdealNet) -> bool:
    edges = _Edges.get(net.spec)
    changed = False
    N, idx = net.spec.N, net.spec.indices
    for p, targets in enumerate(edges.shift):
        g = net._gen[p]
        if g == net.ring.q:
            continue
        src = f"{net.spec.label(idx[p // N])},{net.spec.label(idx[p % N])}"
        for c, d in targets:
            changed |= net._join(c * N + d, g, TYPE2, src, g, (idx[p // N], idx[p % N]))
    return changed


def _apply_type3(net: IdealNet) -> bool:
    edges = _Edges.get(net.spec)
    changed = False
    N, idx, q = net.spec.N, net.spec.indices, net.ring.q
    for p, targets in enumerate(edges.triple):
        g = net._gen[p]
        if g == q:
            continue
        halved = math.gcd(2 * g, q)  # ideal generated by 2 zeta^2 xi, zeta = 1
        src = f"{net.spec.label(idx[p // N])},{net.spec.label(idx[p % N])}"
        for c, d in targets:
            changed |= net._join(c * N + d, halved, TYPE3, src, 2 * g % q, (idx[p // N], idx[p % N]))
    return changed


def _raise_gate(spec: WedgeSpec, k: int) -> bool:
    return spec.n >= 3 * spec.m - 2 * k


def _apply_raise(net: IdealNet, literal: bool) -> bool:
    spec, q = net.spec, net.ring.q
    edges = _Edges.get(spec)
    N = spec.N
    changed = False
    for k in net.heights[:-1]:
        if not _raise_gate(spec, k):
            continue
        Ak = net.height_ideal(k).gen
        gen = math.gcd(Ak * Ak, q) if literal else Ak
        if gen == q:
            continue
        rule = RAISE_LITERAL if literal else RAISE_CLAIMED
        for p in range(N * N):
            if edges.height[p] == k + 1 and p // N != p % N:
                changed |= net._join(p, gen, rule, f"A_{k}", gen)
    return changed


def _apply_residue(net: IdealNet) -> bool:
    spec, q = net.spec, net.ring.q
    if spec.m - 2 not in net.heights:
        return False
    edges = _Edges.get(spec)
    N = spec.N
    res = spec.residue
    base = net.height_ideal(spec.m - 2).gen
    gen = math.gcd(res * base, q)
    if gen == q:
        return False
    changed = False
    for p in range(N * N):
        if edges.height[p] == spec.m - 1 and p // N != p % N:
            changed |= net._join(p, gen, RESIDUE, f"{res}*A_{spec.m - 2}", gen)
    return changed


def _apply_dnet(net: IdealNet) -> bool:
    N, q, g = net.spec.N, net.ring.q, net._gen
    idx = net.spec.indices
    changed = False
    live = [[b for b in range(N) if b != a and g[a * N + b] != q] for a in range(N)]
    for a in range(N):
        for b in live[a]:
            gab = g[a * N + b]
            for c in live[b]:
                if c == a:
                    continue
                prod = math.gcd(gab * g[b * N + c], q)
                if prod != q:
                    src = f"{net.spec.label(idx[a])},{net.spec.label(idx[b])}*{net.spec.label(idx[c])}"
                    changed |= net._join(a * N + c, prod, DNET, src, prod)
    return changed


_APPLY = {
    TYPE2: _apply_type2,
    TYPE3: _apply_type3,
    RAISE_LITERAL: lambda net: _apply_raise(net, literal=True),
    RAISE_CLAIMED: lambda net: _apply_raise(net, literal=False),
    RESIDUE: _apply_residue,
    DNET: _apply_dnet,
}


def _one_pass(net: IdealNet, rules: RuleSet) -> bool:
    changed = False
    for name in rules.ordered():
        changed |= _APPLY[name](net)
    return changed


def saturate(net: IdealNet, rules: RuleSet | None = None) -> IdealNet:
    """Least fixpoint above ``net`` under ``rules``; the input is not modified."""
    rules = rules or RuleSet.full()
    out = net.copy()
    while _one_pass(out, rules):
        pass
    out.rules = rules
    return out


# --- verdicts -------------------------------------------------------------


@dataclass(frozen=True)
class AuditItem:
    name: str
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "pass": self.passed, "detail": self.detail}


@dataclass
class LevelVerdict:
    mode: str
    ideal: FiniteIdeal | None = None
    chain: list[FiniteIdeal] = field(default_factory=list)
    audit: list[AuditItem] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    heights: list[int] = field(default_factory=list)

    @property
    def audit_passed(self) -> bool:
        return all(a.passed for a in self.audit)

    def to_json(self) -> dict:
        out: dict = {"mode": self.mode}
        if self.ideal is not None:
            out["ideal"] = self.ideal.sorted_elements()
        out["heights"] = list(self.heights)
        out["chain"] = [c.sorted_elements() for c in self.chain]
        out["audit"] = [a.to_json() for a in self.audit]
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def relation_audit(net: IdealNet) -> list[AuditItem]:
    """The three families of height relations plus the D-net law."""
    spec = net.spec
    m = spec.m
    hs = net.heights
    chain = {k: net.height_ideal(k) for k in hs}
    items = []
    for k in hs:
        cells = net.height_cells(k)
        uniform = all(c == cells[0] for c in cells)
        items.append(AuditItem(f"equal height {k}", uniform, "" if uniform else "cells of this height differ"))
    mono = all(chain[k + 1] <= chain[k] for k in hs[:-1])
    items.append(AuditItem("chain A_0 >= ... >= A_{m-1}", mono, " ".join(str(chain[k]) for k in hs)))
    for k in hs[:-1]:
        if _raise_gate(spec, k):
            ok = chain[k] <= chain[k + 1]
            items.append(AuditItem(f"A_{k} <= A_{k + 1} (n >= 3m-2k)", ok, f"{chain[k]} vs {chain[k + 1]}"))
    if m - 2 in hs:
        res = spec.residue
        ok = chain[m - 2].scaled(res) <= chain[m - 1]
        items.append(AuditItem("res*A_{m-2} <= A_{m-1}", ok, f"res={res}"))
    items.append(AuditItem("D-net law", not _dnet_violation(net), _dnet_violation(net) or ""))
    return items


def _dnet_violation(net: IdealNet) -> str | None:
    N, q, g = net.spec.N, net.ring.q, net._gen
    for a, b, c in ((a, b, c) for a in range(N) for b in range(N) for c in range(N)):
        if a == b or b == c or a == c:
            continue
        prod = math.gcd(g[a * N + b] * g[b * N + c], q)
        if prod % g[a * N + c]:
            idx = net.spec.indices
            return f"A({net.spec.label(idx[a])},{net.spec.label(idx[b])})*A(.,{net.spec.label(idx[c])}) not inside"
    return None


def level_of(net: IdealNet) -> LevelVerdict:
    if net.rules is None:
        raise NotSaturated("call saturate() first")
    probe = net.copy()
    if _one_pass(probe, net.rules):
        raise NotSaturated("one more pass of the rules still changes the net")
    spec = net.spec
    gens = set(net.off_diagonal_gens())
    chain = [net.height_ideal(k) for k in net.heights]
    audit = relation_audit(net)
    by_name = {a.name: a for a in audit}
    uniform = all(by_name[f"equal height {k}"].passed for k in net.heights)
    if not uniform or not by_name["chain A_0 >= ... >= A_{m-1}"].passed:
        return LevelVerdict(INCONSISTENT, chain=chain, audit=audit, notes=["height classes are not uniform or not nested"], heights=list(net.heights))
    if len(gens) == 1:
        return LevelVerdict(SINGLE_LEVEL, FiniteIdeal(net.ring, gens.pop()), chain, audit, heights=list(net.heights))
    return LevelVerdict(GRADED_CHAIN, None, chain, audit, heights=list(net.heights))


@dataclass
class LevelRun:
    net: IdealNet
    verdict: LevelVerdict
    literal_verdict: LevelVerdict | None = None

    @property
    def literal_suffices(self) -> bool | None:
        if self.literal_verdict is None:
            return None
        a, b = self.verdict, self.literal_verdict
        return a.mode == b.mode and [c.gen for c in a.chain] == [c.gen for c in b.chain]

    def to_json(self, with_trace: bool = False) -> dict:
        out = self.verdict.to_json()
        out["rules"] = self.net.rules.ordered() if self.net.rules else []
        if self.literal_verdict is not None:
            out["literal_suffices"] = self.literal_suffices
        if with_trace:
            out["trace"] = [e.to_json(self.net.spec) for e in self.net.trace]
        return out


def compute_level(spec: WedgeSpec, ring: Ring, gens, rules: RuleSet | None = None, compare_literal: bool = True) -> LevelRun:
    """Saturate from generators; with the default (claimed) profile also
    report whether the literal reading reaches the same chain."""
    rules = rules or RuleSet.claimed()
    net = saturate(net_init(spec, ring, gens), rules)
    run = LevelRun(net, level_of(net))
    if compare_literal and RAISE_CLAIMED in rules:
        lit_rules = RuleSet((rules.rules - {RAISE_CLAIMED}) | {RAISE_LITERAL})
        lit = saturate(net_init(spec, ring, gens), lit_rules)
        run.literal_verdict = level_of(lit)
    return run


def rule_witness(spec: WedgeSpec, entry: TraceEntry) -> tuple[Index, Index, int, int] | None:
    """For a Type2/Type3 trace entry, one (I, J, j, i) whose commutator produces
    the target; used to spot-check the rule against matrices."""
    if entry.rule not in (TYPE2, TYPE3) or entry.origin is None:
        return None
    I, J = entry.origin
    edges = _Edges.get(spec)
    N = spec.N
    key = (spec.rank(I) * N + spec.rank(J), spec.rank(entry.target[0]), spec.rank(entry.target[1]))
    table = edges.shift_roots if entry.rule == TYPE2 else edges.triple_roots
    j, i = table[key]
    return I, J, j, i


def height_classes(spec: WedgeSpec) -> dict[int, list[tuple[Index, Index]]]:
    out: dict[int, list] = {}
    for I, J in combinations(spec.indices, 2):
        out.setdefault(height(I, J), []).append((I, J))
    return out
