"""Depth-first traversal of the semigroup tree and independent count oracles.

The tree has the full semigroup at its root; children remove one effective
generator, so depth equals genus.  This module holds the pure-Python
reference traversal, per-genus counters (n_g, t_g and the three-way partition
by nearest strongly descended ancestor), weak-descendant counts, the
(genus, efficacy) table, brute-force enumeration of strongly descended
semigroups with fixed (m, f), and a gap-subset counting oracle that shares no
tree logic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable, Optional

from .errors import LimitExceeded
from .semigroup import NATURALS, Descent, NumericalSemigroup

ORACLE_GENUS_LIMIT = 14
STRONG_ENUM_FM_LIMIT = 20
FRONTIER_DEPTH_DEFAULT = 14


@dataclass
class GenusCounters:
    """Per-genus aggregates for 0 <= g <= max_genus."""

    max_genus: int
    n: list[int]
    t: list[int]
    n1: list[int]
    n2: list[int]
    n3: list[int]
    partition: bool = False

    @classmethod
    def zeros(cls, max_genus: int, partition: bool = False) -> "GenusCounters":
        size = max_genus + 1
        return cls(
            max_genus,
            [0] * size,
            [0] * size,
            [0] * size,
            [0] * size,
            [0] * size,
            partition,
        )


@dataclass(frozen=True)
class StrongDescentRecord:
    """Shape data (m, f, d, g, h) of a strongly descended semigroup."""

    m: int
    f: int
    d: int
    g: int
    h: int


def strong_descent_record(s: NumericalSemigroup) -> StrongDescentRecord:
    if s.f < 0:
        raise ValueError("record undefined for the genus-0 root")
    second = s.m + 1
    while second not in s:
        second += 1
    return StrongDescentRecord(
        s.m, s.f, second - s.m, s.g, s.generators().h
    )


# ---------------------------------------------------------------------------
# Traversal
# ---------------------------------------------------------------------------

Visitor = Callable[[NumericalSemigroup, int, Optional[Descent]], None]


def enumerate_tree(max_genus: int, visitor: Optional[Visitor] = None) -> dict:
    """Visit every semigroup of genus <= max_genus exactly once (DFS).

    Children are generated in increasing effective-generator order; the
    visitor receives (semigroup, depth, descent type from parent), with None
    for the root.  Returns {"visited": total, "per_depth": [counts]}.
    """
    if max_genus < 0:
        raise ValueError("max_genus must be non-negative")
    per_depth = [0] * (max_genus + 1)
    per_depth[0] = 1
    if visitor is not None:
        visitor(NATURALS, 0, None)
    if max_genus > 0:
        # frame: [node, effective set of node, children, cursor]
        root_kids = NATURALS.children()
        stack = [[NATURALS, set(NATURALS.generators().effective), root_kids, 0]]
        while stack:
            frame = stack[-1]
            node, parent_eff, kids, i = frame
            if i >= len(kids):
                stack.pop()
                continue
            frame[3] += 1
            _, child = kids[i]
            depth = len(stack)
            per_depth[depth] += 1
            if visitor is not None:
                child_eff = child.generators().effective
                descent = (
                    Descent.STRONG
                    if any(e not in parent_eff for e in child_eff)
                    else Descent.WEAK
                )
                visitor(child, depth, descent)
            if depth < max_genus:
                stack.append(
                    [
                        child,
                        set(child.generators().effective),
                        child.children(),
                        0,
                    ]
                )
    return {"visited": sum(per_depth), "per_depth": per_depth}


def count_ng(
    max_genus: int,
    *,
    partition: bool = False,
    threads: int = 1,
    engine: str = "auto",
    frontier_depth: int = FRONTIER_DEPTH_DEFAULT,
) -> GenusCounters:
    """Count n_g (tree size per depth) and t_g (f < 3m) up to max_genus.

    With `partition`, each semigroup is classified by its nearest strongly
    descended ancestor A: class 1 when h(A)+g(A) < g, class 2 when
    h(A)+g(A) >= g and 3(g(A)-h(A)) < g, class 3 otherwise.

    `engine` is "python", "numba" or "auto" (numba for deep runs when
    available).  Counts are exact and independent of thread count.
    """
    if max_genus < 0:
        raise ValueError("max_genus must be non-negative")
    if engine not in ("auto", "python", "numba"):
        raise ValueError(f"unknown engine {engine!r}")
    use_numba = False
    if engine == "numba":
        use_numba = True
    elif engine == "auto" and max_genus > 20:
        from . import fastcount

        use_numba = fastcount.HAVE_NUMBA
    if use_numba:
        from . import fastcount

        return fastcount.count_ng_fast(
            max_genus,
            partition=partition,
            threads=threads,
            frontier_depth=frontier_depth,
        )
    return _count_ng_python(max_genus, partition=partition)


def _count_ng_python(max_genus: int, *, partition: bool) -> GenusCounters:
    counters = GenusCounters.zeros(max_genus, partition)

    def record(node: NumericalSemigroup, depth: int, anc_g: int, anc_h: int):
        counters.n[depth] += 1
        if node.f < 3 * node.m:
            counters.t[depth] += 1
        if partition:
            if anc_h + anc_g < depth:
                counters.n1[depth] += 1
            elif 3 * (anc_g - anc_h) < depth:
                counters.n2[depth] += 1
            else:
                counters.n3[depth] += 1

    record(NATURALS, 0, 0, 1)
    if max_genus == 0:
        return counters
    # frame: [node, children, cursor, anc_g, anc_h]
    stack = [[NATURALS, NATURALS.children(), 0, 0, 1]]
    while stack:
        frame = stack[-1]
        node, kids, i, anc_g, anc_h = frame
        if i >= len(kids):
            stack.pop()
            continue
        frame[2] += 1
        _, child = kids[i]
        depth = len(stack)
        if child.is_strongly_descended():
            c_anc_g, c_anc_h = depth, child.generators().h
        else:
            c_anc_g, c_anc_h = anc_g, anc_h
        record(child, depth, c_anc_g, c_anc_h)
        if depth < max_genus:
            stack.append([child, child.children(), 0, c_anc_g, c_anc_h])
    return counters


def weak_descendant_counts(
    s: NumericalSemigroup, max_genus: int
) -> list[int]:
    """counts[g] = number of weak descendants of s having genus g.

    A semigroup is a weak descendant of itself; descents recurse only through
    children that are not strongly descended.
    """
    if max_genus < s.g:
        raise ValueError("max_genus below the genus of the starting semigroup")
    counts = [0] * (max_genus + 1)
    stack = [s]
    while stack:
        node = stack.pop()
        counts[node.g] += 1
        if node.g < max_genus:
            for _, child in node.children():
                if not child.is_strongly_descended():
                    stack.append(child)
    return counts


def weak_descendant_count(s: NumericalSemigroup, genus: int) -> int:
    """N_genus(s): weak descendants of s with the given genus."""
    return weak_descendant_counts(s, genus)[genus]


def m_table(max_genus: int) -> dict[tuple[int, int], int]:
    """|M(g, h)|: strongly descended semigroups by (genus, efficacy)."""
    table: dict[tuple[int, int], int] = {}

    def visit(node: NumericalSemigroup, depth: int, descent):
        if node.is_strongly_descended():
            key = (depth, node.generators().h)
            table[key] = table.get(key, 0) + 1

    enumerate_tree(max_genus, visit)
    return table


def strongly_descended_semigroups(max_genus: int) -> list[NumericalSemigroup]:
    out: list[NumericalSemigroup] = []

    def visit(node, depth, descent):
        if node.is_strongly_descended():
            out.append(node)

    enumerate_tree(max_genus, visit)
    return out


# ---------------------------------------------------------------------------
# Brute-force enumerations (independent of the tree)
# ---------------------------------------------------------------------------


def strongly_descended_with(
    m: int, f: int, *, fm_limit: int = STRONG_ENUM_FM_LIMIT
) -> list[NumericalSemigroup]:
    """All strongly descended semigroups with multiplicity m, Frobenius f.

    Enumerates membership of (m, f) directly, filters additive closure and
    the f+m minimal-generator condition.  The degenerate pair f = m-1 yields
    the single semigroup {0, m, m+1, ...}.
    """
    if m < 1 or f < 0:
        return []
    if f - m > fm_limit:
        raise LimitExceeded(f"f-m={f - m} exceeds limit {fm_limit}")
    if f == m or (m == 1 and f >= 0):
        return []
    if f == m - 1:
        dense = NumericalSemigroup.from_gaps(range(1, m), _trusted=True)
        return [dense] if m >= 2 else []
    if f < m - 1:
        return []
    free = list(range(m + 1, f))  # membership of these is unconstrained
    out = []
    base = 1 | (1 << m)  # 0 and m
    for bits in range(1 << len(free)):
        members_low = base
        for i, pos in enumerate(free):
            if bits >> i & 1:
                members_low |= 1 << pos
        if _closed_and_strong(members_low, m, f):
            gap_list = [
                x for x in range(1, f + 1) if not members_low >> x & 1
            ]
            out.append(NumericalSemigroup.from_gaps(gap_list, _trusted=True))
    out.sort(key=lambda s: s.gaps())
    return out


def _closed_and_strong(members_low: int, m: int, f: int) -> bool:
    """members_low holds membership of [0, f] with f itself absent."""
    window = (1 << (f + 1)) - 1
    gap_mask = window & ~members_low
    positive = members_low & ~1
    rest = positive >> m
    a = m
    sums = 0
    while rest:
        if rest & 1:
            if (positive << a) & gap_mask:
                return False
            sums |= positive << a
        a += 1
        rest >>= 1
    # strong: f+m must not be a sum of two positive members
    return not sums >> (f + m) & 1


def oracle_count_ng(max_genus: int) -> GenusCounters:
    """Count n_g and t_g by direct gap-subset enumeration (no tree logic).

    Every genus-g semigroup has all gaps in [1, 2g-1] and, for g >= 1,
    includes the gap 1; candidates are the g-element subsets of that interval
    whose complement is additively closed.
    """
    if max_genus < 0:
        raise ValueError("max_genus must be non-negative")
    if max_genus > ORACLE_GENUS_LIMIT:
        raise LimitExceeded(
            f"oracle limited to genus {ORACLE_GENUS_LIMIT} (cost ~ C(2g-1, g))"
        )
    counters = GenusCounters.zeros(max_genus, False)
    counters.n[0] = 1
    counters.t[0] = 1  # full semigroup: f=-1 < 3
    for g in range(1, max_genus + 1):
        n_count = 0
        t_count = 0
        for rest in combinations(range(2, 2 * g), g - 1):
            gap_mask = 2  # gap 1
            for x in rest:
                gap_mask |= 1 << x
            f = gap_mask.bit_length() - 1
            window = (1 << (f + 1)) - 1
            members = window & ~gap_mask
            if _is_closed(members, f):
                n_count += 1
                m = 2
                while gap_mask >> m & 1:
                    m += 1
                if f < 3 * m:
                    t_count += 1
        counters.n[g] = n_count
        counters.t[g] = t_count
    return counters


def _is_closed(members_low: int, f: int) -> bool:
    window = (1 << (f + 1)) - 1
    gap_mask = window & ~members_low
    positive = members_low & ~1
    rest = positive >> 1
    x = 1
    while rest:
        if rest & 1:
            if (positive << x) & gap_mask:
                return False
        x += 1
        rest >>= 1
    return True


# ---------------------------------------------------------------------------
# Small exact combinatorics
# ---------------------------------------------------------------------------


def fibonacci(n: int) -> int:
    """F_1 = F_2 = 1 indexing, so that C(a, b) <= F_{a+b} for a+b >= 1."""
    if n < 0:
        raise ValueError("n must be non-negative")
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def binomial(a: int, b: int) -> int:
    if a < 0 or b < 0:
        raise ValueError("arguments must be non-negative")
    return math.comb(a, b)
