"""Weight indices: m-subsets of [n] = {1..n}, their lexicographic ranks and signs.

Indices are plain sorted tuples of 1-based integers; ranks are 0-based.
"""

from __future__ import annotations

import bisect
import logging
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

Index = tuple[int, ...]

log = logging.getLogger(__name__)


def weight_index(elems: Iterable[int], n: int, m: int | None = None) -> Index:
    """Validate and sort an index; raises ``ValueError`` on repeats or range errors."""
    t = tuple(sorted(elems))
    if len(set(t)) != len(t):
        raise ValueError(f"repeated entry in index {t}")
    if t and (t[0] < 1 or t[-1] > n):
        raise ValueError(f"index {t} not inside [1..{n}]")
    if m is not None and len(t) != m:
        raise ValueError(f"index {t} should have {m} entries")
    return t


def subsets(n: int, m: int) -> list[Index]:
    """All m-subsets of [n] in lexicographic order."""
    return list(combinations(range(1, n + 1), m))


def lex_rank(index: Sequence[int], n: int) -> int:
    m = len(index)
    rank = 0
    prev = 0
    for pos, v in enumerate(index):
        for skipped in range(prev + 1, v):
            rank += comb(n - skipped, m - pos - 1)
        prev = v
    return rank


def unrank(rank: int, n: int, m: int) -> Index:
    if not 0 <= rank < comb(n, m):
        raise ValueError(f"rank {rank} out of range for C({n},{m})")
    out = []
    v = 1
    for pos in range(m):
        while True:
            block = comb(n - v, m - pos - 1)
            if rank < block:
                break
            rank -= block
            v += 1
        out.append(v)
        v += 1
    return tuple(out)


def perm_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation that sorts ``seq`` ascending."""
    if len(set(seq)) != len(seq):
        raise ValueError(f"repeated entry in {tuple(seq)}")
    inversions = sum(1 for a, b in combinations(seq, 2) if a > b)
    return -1 if inversions % 2 else 1


def insert_sign(L: Sequence[int], i: int) -> int:
    """(-1)^#{l in L : l < i}: the sign picked up by moving e_i to the front of e_L.

    Equivalently e_i ^ e_L = insert_sign(L, i) * e_{L u i}.  The product
    insert_sign(L, i) * insert_sign(L, j) is the coefficient sign of the
    factor t_{L+i, L+j} in the exterior power of t_{i,j}.
    """
    if i in L:
        raise ValueError(f"{i} already in {tuple(L)}")
    return -1 if sum(1 for l in L if l < i) % 2 else 1


def height(I: Sequence[int], J: Sequence[int]) -> int:
    if len(I) != len(J):
        raise ValueError(f"indices {tuple(I)} and {tuple(J)} have different sizes")
    return len(set(I) & set(J))


def replace(I: Index, old: int, new: int) -> Index:
    """I minus old plus new, sorted."""
    out = [x for x in I if x != old]
    bisect.insort(out, new)
    return tuple(out)


def parse_index(text, n: int | None = None) -> Index:
    """Accept ``[1,3,5]``, ``"1,3,5"`` or the compact digit form ``"135"``."""
    if isinstance(text, (list, tuple)):
        elems = [int(x) for x in text]
    else:
        s = str(text).strip().strip("[]")
        if "," in s or " " in s:
            elems = [int(x) for x in s.replace(",", " ").split()]
        else:
            if n is not None and n > 9:
                raise ValueError(f"compact index {s!r} is ambiguous for n={n}; use commas")
            elems = [int(c) for c in s]
    if n is None:
        return weight_index(elems, max(elems) if elems else 0)
    return weight_index(elems, n)


def format_index(I: Sequence[int], n: int) -> str:
    if n <= 9:
        return "".join(str(x) for x in I)
    return ",".join(str(x) for x in I)


@dataclass(frozen=True)
class WedgeSpec:
    """Shape data for the m-th exterior power of GL_n (N = C(n, m))."""

    n: int
    m: int

    def __post_init__(self):
        if self.n < 3:
            raise ValueError(f"n must be at least 3, got {self.n}")
        if not 1 <= self.m <= self.n - 1:
            raise ValueError(f"m must lie in [1, n-1], got m={self.m}, n={self.n}")
        if self.n < 2 * self.m:
            log.info("n=%d < 2m=%d: the dual power is the natural model", self.n, 2 * self.m)

    @property
    def N(self) -> int:
        return comb(self.n, self.m)

    @property
    def level_ready(self) -> bool:
        return self.n >= 3 * self.m

    @property
    def residue(self) -> int:
        return comb(self.n - 2, self.m - 1)

    @cached_property
    def indices(self) -> tuple[Index, ...]:
        return tuple(subsets(self.n, self.m))

    @cached_property
    def _ranks(self) -> dict[Index, int]:
        return {I: k for k, I in enumerate(self.indices)}

    def rank(self, I: Sequence[int]) -> int:
        try:
            return self._ranks[tuple(I)]
        except KeyError:
            raise ValueError(f"{tuple(I)} is not an index of {self.m}-subsets of [{self.n}]") from None

    def index(self, text) -> Index:
        return weight_index(parse_index(text, self.n), self.n, self.m)

    def label(self, I: Sequence[int]) -> str:
        return format_index(I, self.n)

    def pairs(self) -> Iterable[tuple[Index, Index]]:
        """Ordered off-diagonal pairs (I, J), I != J, in lexicographic order."""
        for I in self.indices:
            for J in self.indices:
                if I != J:
                    yield I, J
