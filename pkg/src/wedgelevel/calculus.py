"""Commutators of an elementary transvection t_{I,J}(xi) with an exterior
transvection W t_{j,i}(zeta).

Only the factor t_{L+j, L+i} of W t_{j,i} with L + i = I (a "row hit":
i in I, j not in I) or L + j = J (a "column hit": j in J, i not in J) fails
to commute with t_{I,J}.  That gives the classes:

* neither hit            -> Vanishes
* exactly one hit        -> SingleShift, one transvection with argument +-xi*zeta
* both hits, I-i != J-j  -> TripleProduct (+-xi*zeta twice, +-xi*zeta^2 once)
* both hits, I-i == J-j  -> Degenerate, [t_{I,J}(xi), t_{J,I}(+-zeta)]

Signs come from ``insert_sign``; ``checked=True`` re-derives every result
from matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .indexing import Index, WedgeSpec, insert_sign, replace
from .matrices import ExactMatrix, commutator
from .rings import RingElement
from .terms import Product, Realizer, Transvection, WedgeTransvection


class Tag(str, Enum):
    VANISHES = "Vanishes"
    SINGLE_SHIFT = "SingleShift"
    TRIPLE_PRODUCT = "TripleProduct"
    DEGENERATE = "Degenerate"


class DegenerateCommutator(ValueError):
    """The commutator is [t_{I,J}, t_{J,I}] and has no shorter form."""


class OracleMismatch(AssertionError):
    pass


@dataclass(frozen=True)
class TemplateTerm:
    """sign * xi * zeta**zeta_power at position (I, J)."""

    I: Index
    J: Index
    sign: int
    zeta_power: int

    def instantiate(self, xi: RingElement, zeta: RingElement) -> Transvection:
        arg = xi * zeta ** self.zeta_power
        return Transvection(self.I, self.J, arg if self.sign > 0 else -arg)


@dataclass(frozen=True)
class CommutatorClass:
    tag: Tag
    template: tuple[TemplateTerm, ...] = ()
    row_hit: bool = False
    col_hit: bool = False

    def instantiate(self, xi: RingElement, zeta: RingElement) -> Product:
        if self.tag is Tag.DEGENERATE:
            raise DegenerateCommutator("degenerate commutator has no template")
        return Product(tuple(term.instantiate(xi, zeta) for term in self.template))


def _factor_sign(L: Index, j: int, i: int) -> int:
    # sign of t_{L+j, L+i} inside W t_{j,i}
    return insert_sign(L, j) * insert_sign(L, i)


def classify_commutator(I: Index, J: Index, j: int, i: int) -> CommutatorClass:
    """Class and template of [t_{I,J}(xi), W t_{j,i}(zeta)]."""
    I, J = tuple(I), tuple(J)
    if I == J:
        raise ValueError(f"diagonal pair ({I}, {J})")
    if i == j:
        raise ValueError("exterior transvection needs i != j")
    row_hit = i in I and j not in I
    col_hit = j in J and i not in J
    if not row_hit and not col_hit:
        return CommutatorClass(Tag.VANISHES)
    if row_hit:
        L0 = tuple(x for x in I if x != i)
        I_new = replace(I, i, j)
        s0 = _factor_sign(L0, j, i)
    if col_hit:
        L1 = tuple(x for x in J if x != j)
        J_new = replace(J, j, i)
        s1 = _factor_sign(L1, j, i)
    if row_hit and col_hit:
        if L0 == L1:
            return CommutatorClass(Tag.DEGENERATE, row_hit=True, col_hit=True)
        template = (
            TemplateTerm(I_new, J, -s0, 1),
            TemplateTerm(I_new, J_new, s0 * s1, 2),
            TemplateTerm(I, J_new, s1, 1),
        )
        return CommutatorClass(Tag.TRIPLE_PRODUCT, template, True, True)
    if row_hit:
        return CommutatorClass(Tag.SINGLE_SHIFT, (TemplateTerm(I_new, J, -s0, 1),), row_hit=True)
    return CommutatorClass(Tag.SINGLE_SHIFT, (TemplateTerm(I, J_new, s1, 1),), col_hit=True)


def commutator_eval(
    t: Transvection,
    j: int,
    i: int,
    zeta: RingElement,
    spec: WedgeSpec,
    checked: bool = False,
    realizer: Realizer | None = None,
) -> Product:
    """[t, W t_{j,i}(zeta)] as a product of elementary transvections.

    With ``checked`` the result is compared against the matrix commutator
    built from minors; a disagreement raises :class:`OracleMismatch`.
    """
    cls = classify_commutator(t.I, t.J, j, i)
    if cls.tag is Tag.DEGENERATE:
        raise DegenerateCommutator(
            f"[t_{{{spec.label(t.I)},{spec.label(t.J)}}}, W t_{{{j},{i}}}] has no short form"
        )
    result = cls.instantiate(t.arg, zeta)
    if checked:
        realizer = realizer or Realizer(spec, t.arg.ring)
        lhs = realizer(commutator(t, WedgeTransvection(j, i, zeta)))
        rhs = realizer(result)
        if lhs != rhs:
            raise OracleMismatch(f"template disagrees with matrices at {lhs.diff(rhs)}")
    return result


def z_generator(I: Index, J: Index, xi: RingElement, zeta: RingElement) -> Product:
    """z_{I,J}(xi, zeta) = t_{J,I}(zeta) t_{I,J}(xi) t_{J,I}(-zeta)."""
    if tuple(I) == tuple(J):
        raise ValueError(f"diagonal pair ({I}, {J})")
    back = Transvection(tuple(J), tuple(I), zeta)
    return Product((back, Transvection(tuple(I), tuple(J), xi), back.inverse()))


def matrix_commutator_class(spec: WedgeSpec, I: Index, J: Index, j: int, i: int, realizer: Realizer) -> str:
    """Brute-force class: count nonzero off-diagonal entries of the matrix commutator."""
    ring = realizer.ring
    xi, zeta = ring.gens()[:2]
    m: ExactMatrix = realizer(commutator(Transvection(I, J, xi), WedgeTransvection(j, i, zeta)))
    k = len(m.off_diagonal())
    return {0: Tag.VANISHES, 1: Tag.SINGLE_SHIFT, 3: Tag.TRIPLE_PRODUCT}.get(k, Tag.DEGENERATE).value


def class_counts(spec: WedgeSpec, j: int, i: int) -> dict[str, int]:
    counts = {tag.value: 0 for tag in Tag}
    for I, J in spec.pairs():
        counts[classify_commutator(I, J, j, i).tag.value] += 1
    return counts


def expected_class_counts(spec: WedgeSpec) -> dict[str, int]:
    """Closed-form tallies over ordered pairs for one exterior root.

    r = C(n-2, m-1) indices see a row hit and r see a column hit, giving
    2r(N-r-1) single shifts, r(r-1) triple products and r degenerate pairs.
    """
    N, r = spec.N, spec.residue
    single = 2 * r * (N - r - 1)
    triple = r * (r - 1)
    degenerate = r
    return {
        Tag.VANISHES.value: N * (N - 1) - single - triple - degenerate,
        Tag.SINGLE_SHIFT.value: single,
        Tag.TRIPLE_PRODUCT.value: triple,
        Tag.DEGENERATE.value: degenerate,
    }
