"""Admissible-subset weight calculus over residue classes mod m.

For positive integers (m, f, d) with d < f, a subset U of a finite ground set
S is admissible when no two of its elements (with repetition) sum to f+m and
it is upward closed along +m chains inside S.  The weight of S is the exact
sum of phi**(-s(U)) over admissible U, with s(U) = |E(U)| - |E'(U)|:

    E(U)  = {x in S : x not in U, x+m not in U, x-d in U}
    E'(U) = {x in U : x+m in U}

The module also builds the residue-class sets S(r), their chained unions
T(r), the signature coding of admissible subsets, and the signature-indexed
transfer matrices whose powers bound w(T(r)).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .errors import LimitExceeded
from .golden import (
    ONE,
    PHI,
    ExactMatrix,
    QuadraticNumber,
    mat_vec,
    phi_pow,
)

ADMISSIBLE_SET_LIMIT = 22
NAIVE_SET_LIMIT = 16

GroundSet = tuple[int, ...]


@dataclass(frozen=True)
class WeightContext:
    """The (m, f, d) triple governing admissibility; requires d < f."""

    m: int
    f: int
    d: int

    def __post_init__(self):
        if self.m < 1 or self.f < 1 or self.d < 1:
            raise ValueError("m, f, d must be positive")
        if self.d >= self.f:
            raise ValueError(f"d={self.d} must be smaller than f={self.f}")

    @property
    def forbidden_sum(self) -> int:
        return self.f + self.m


def as_ground_set(values: Iterable[int]) -> GroundSet:
    out = tuple(sorted(set(values)))
    if any(v < 1 for v in out):
        raise ValueError("ground sets hold positive integers")
    return out


# ---------------------------------------------------------------------------
# Admissible subsets and the weight
# ---------------------------------------------------------------------------


def _chains(s: GroundSet, m: int) -> list[list[int]]:
    """Maximal runs x, x+m, x+2m, ... inside s, in sorted order."""
    present = set(s)
    chains = []
    for x in s:
        if x - m not in present:
            run = [x]
            y = x + m
            while y in present:
                run.append(y)
                y += m
            chains.append(run)
    return chains


def admissible_subsets(
    s: Iterable[int], ctx: WeightContext, *, limit: int = ADMISSIBLE_SET_LIMIT
) -> Iterator[frozenset[int]]:
    """All admissible subsets of s (the empty set always qualifies).

    Enumerates by choosing an upward-closed suffix of each +m chain, pruning
    forbidden pairs (x + y == f + m, including x == y) as choices are made.
    """
    s = as_ground_set(s)
    if len(s) > limit:
        raise LimitExceeded(f"|S|={len(s)} exceeds admissible-subset limit {limit}")
    chains = _chains(s, ctx.m)
    target = ctx.forbidden_sum
    chosen: list[int] = []
    chosen_set: set[int] = set()

    def rec(idx: int) -> Iterator[frozenset[int]]:
        if idx == len(chains):
            yield frozenset(chosen)
            return
        run = chains[idx]
        # suffix starting at position t; t == len(run) is the empty choice
        for t in range(len(run), -1, -1):
            picked = run[t:]
            ok = True
            for x in picked:
                if target - x in chosen_set or 2 * x == target:
                    ok = False
                    break
                if target - x in picked and target - x != x:
                    # both endpoints inside this same suffix
                    ok = False
                    break
            if not ok:
                continue
            chosen.extend(picked)
            chosen_set.update(picked)
            yield from rec(idx + 1)
            for x in picked:
                chosen_set.discard(x)
            del chosen[len(chosen) - len(picked) :]

    yield from rec(0)


def _admissible_subsets_naive(
    s: GroundSet, ctx: WeightContext
) -> list[frozenset[int]]:
    """Power-set filter used to cross-check the chain enumerator."""
    if len(s) > NAIVE_SET_LIMIT:
        raise LimitExceeded(f"naive check limited to |S|<={NAIVE_SET_LIMIT}")
    present = set(s)
    target = ctx.forbidden_sum
    out = []
    for k in range(len(s) + 1):
        for combo in combinations(s, k):
            u = set(combo)
            if any(target - x in u for x in u):
                continue
            if any(x + ctx.m in present and x + ctx.m not in u for x in u):
                continue
            out.append(frozenset(u))
    return out


def e_set(u: Iterable[int], s: Iterable[int], ctx: WeightContext) -> frozenset[int]:
    u = frozenset(u)
    return frozenset(
        x
        for x in as_ground_set(s)
        if x not in u and x + ctx.m not in u and x - ctx.d in u
    )


def e_prime_set(
    u: Iterable[int], s: Iterable[int], ctx: WeightContext
) -> frozenset[int]:
    u = frozenset(u)
    return frozenset(x for x in u if x + ctx.m in u)


def s_stat(u: Iterable[int], s: Iterable[int], ctx: WeightContext) -> int:
    u = frozenset(u)
    return len(e_set(u, s, ctx)) - len(e_prime_set(u, s, ctx))


def weight(
    s: Iterable[int], ctx: WeightContext, *, limit: int = ADMISSIBLE_SET_LIMIT
) -> QuadraticNumber:
    """w(S): exact sum of phi**(-s(U)) over admissible subsets U of S."""
    s = as_ground_set(s)
    if not s:
        return ONE
    total = QuadraticNumber(0)
    for u in admissible_subsets(s, ctx, limit=limit):
        total = total + phi_pow(-s_stat(u, s, ctx))
    return total


def truncate(s: Iterable[int], k: int) -> GroundSet:
    """V_k(S): the elements strictly greater than k."""
    return tuple(x for x in as_ground_set(s) if x > k)


# ---------------------------------------------------------------------------
# Residue classes S(r) and chained unions T(r)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ResidueClass:
    """S(r): integers in [m, f] congruent to r or f-r mod m, plus metadata."""

    r: int
    elements: GroundSet
    big_i: int
    ell: int
    symmetric: bool  # r == f-r mod m


def residue_set(r: int, ctx: WeightContext) -> ResidueClass:
    m, f = ctx.m, ctx.f
    if not 0 <= r <= m - 1:
        raise ValueError(f"r={r} out of range [0, {m - 1}]")
    big_i = max(0, (f - r) // m)
    ell = (f - r) % m
    up = [r + k * m for k in range(1, big_i + 1)]
    down = [f - r - k * m for k in range(big_i)]
    symmetric = (2 * r) % m == f % m
    elements = tuple(sorted(set(up) | set(down)))
    return ResidueClass(r, elements, big_i, ell, symmetric)


def n_of_r(r: int, ctx: WeightContext) -> int:
    """Least n >= 0 with r + n*d >= ell - n*d, for ell = (f - r) mod m."""
    ell = (f_minus_r_residue(r, ctx))
    if r >= ell:
        return 0
    return -((r - ell) // (2 * ctx.d))


def f_minus_r_residue(r: int, ctx: WeightContext) -> int:
    return (ctx.f - r) % ctx.m


def t_of_r(r: int, ctx: WeightContext) -> GroundSet:
    """T(r): union of S(r + i*d) for i < N(r); empty when N(r) = 0."""
    n = n_of_r(r, ctx)
    elems: set[int] = set()
    for i in range(n):
        q = r + i * ctx.d
        # within N(r) steps the shifted residue stays below m
        if q > ctx.m - 1:
            raise ValueError(f"chained residue {q} escapes [0, m-1]")
        elems.update(residue_set(q, ctx).elements)
    return tuple(sorted(elems))


# ---------------------------------------------------------------------------
# Signatures
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Signature:
    """(i, j, I): i trailing r-class elements skipped, j mirror elements taken."""

    i: int
    j: int
    big_i: int

    def __post_init__(self):
        ok = (
            0 <= self.i <= self.big_i
            and 0 <= self.j <= self.big_i
            and (self.i == self.big_i or self.j == 0 or self.i >= self.j)
        )
        if not ok:
            raise ValueError(f"invalid signature ({self.i}, {self.j}, {self.big_i})")


def signatures_for(big_i: int) -> tuple[Signature, ...]:
    """Valid signatures; the orders for I=1 and I=2 are pinned (they index
    the transfer matrices)."""
    if big_i == 1:
        pairs = [(1, 0), (1, 1), (0, 0)]
    elif big_i == 2:
        pairs = [(2, 0), (2, 1), (1, 0), (1, 1), (0, 0), (2, 2)]
    else:
        pairs = [
            (i, j)
            for i in range(big_i, -1, -1)
            for j in range(0, big_i + 1)
            if i == big_i or j == 0 or i >= j
        ]
    return tuple(Signature(i, j, big_i) for i, j in pairs)


def signature_of(u: Iterable[int], r: int, ctx: WeightContext) -> Signature:
    """Signature of an admissible subset of S(r); requires r != f-r mod m.

    The subset must consist of the top I-i elements of the ascending r-class
    run and the top j elements of the descending (f-r)-class run.
    """
    rc = residue_set(r, ctx)
    if rc.symmetric:
        raise ValueError("signatures need distinct r and f-r classes")
    u = frozenset(u)
    if not u <= set(rc.elements):
        raise ValueError("subset escapes S(r)")
    big_i = rc.big_i
    up = [r + k * ctx.m for k in range(1, big_i + 1)]
    down = [ctx.f - r - k * ctx.m for k in range(big_i)]
    take_up = [x for x in up if x in u]
    take_down = [x for x in down if x in u]
    i = big_i - len(take_up)
    j = len(take_down)
    if take_up != up[i:]:
        raise ValueError(f"{sorted(u)} is not a suffix run of the r class")
    if take_down != down[:j]:
        raise ValueError(f"{sorted(u)} is not a top run of the f-r class")
    return Signature(i, j, big_i)


def e_prime_from_signature(sig: Signature) -> int:
    """|E'(U, S(r))| from the signature alone (four cases)."""
    i, j, big_i = sig.i, sig.j, sig.big_i
    if i == big_i and j == 0:
        return 0
    if i == big_i:
        return j - 1
    if j == 0:
        return big_i - i - 1
    return big_i - i + j - 2


def e_between_from_signatures(u: Signature, v: Signature) -> int:
    """Count of E elements tied to consecutive chained classes.

    u is the signature of U cut to S(r + i*d), v the signature one step later;
    the count depends only on (b_i > 0) and (a_{i+1} == I).
    """
    if u.big_i != v.big_i:
        raise ValueError("signatures of different class sizes")
    big_i = u.big_i
    a_i, b_i = u.i, u.j
    a_n, b_n = v.i, v.j
    if a_n == big_i:
        part_a = big_i - a_i
    else:
        part_a = max(a_n - a_i - 1, 0)
    if b_i == 0:
        part_b = b_n
    else:
        part_b = max(b_n - b_i - 1, 0)
    return part_a + part_b


def g_exponent(u: Signature, v: Signature) -> int:
    """G(u, v) = e(u, v) - |E'| of the earlier signature."""
    return e_between_from_signatures(u, v) - e_prime_from_signature(u)


# ---------------------------------------------------------------------------
# Transfer matrices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TransferMatrix:
    signatures: tuple[Signature, ...]
    matrix: ExactMatrix
    boundary: tuple[QuadraticNumber, ...]


def exponent_matrix(big_i: int) -> ExactMatrix:
    """The matrix [phi**(-G(s_i, s_j))] generated from the exponent formula."""
    sigs = signatures_for(big_i)
    entries = [phi_pow(-g_exponent(u, v)) for u in sigs for v in sigs]
    return ExactMatrix(len(sigs), entries)


def _pinned_3x3() -> ExactMatrix:
    a1 = phi_pow(-1)
    a2 = phi_pow(-2)
    return ExactMatrix.from_rows(
        [
            [ONE, ONE, ONE],
            [a1, ONE, ONE],
            [a2, ONE, a1],
        ]
    )


def transfer_matrix(big_i: int) -> TransferMatrix:
    """Signature-indexed bound matrix with its boundary vector.

    Supported for I in {1, 2}.  The 6x6 case comes straight from the exponent
    formula.  The 3x3 case uses pinned entries: the formula produces a variant
    with two entries moved, but every downstream W_n value, recurrence
    coefficient and growth constant is calibrated against the pinned matrix,
    and the weight bound is re-verified against brute force either way.
    """
    if big_i not in (1, 2):
        raise ValueError(f"transfer matrix defined for I in {{1, 2}}, got {big_i}")
    sigs = signatures_for(big_i)
    boundary = tuple(phi_pow(e_prime_from_signature(s)) for s in sigs)
    matrix = _pinned_3x3() if big_i == 1 else exponent_matrix(big_i)
    return TransferMatrix(sigs, matrix, boundary)


def w_sequence(big_i: int, n_max: int) -> list[QuadraticNumber]:
    """[W_1, ..., W_n_max] with W_n = 1^T M^(n-1) v for the I-class matrix."""
    tm = transfer_matrix(big_i)
    vec = list(tm.boundary)
    out = []
    for _ in range(n_max):
        total = QuadraticNumber(0)
        for entry in vec:
            total = total + entry
        out.append(total)
        vec = list(mat_vec(tm.matrix, vec))
    return out


def matrix_bound_weight(r: int, ctx: WeightContext) -> QuadraticNumber:
    """Exact value of the transfer-matrix bound 1^T M^(N(r)-1) v for T(r)."""
    n = n_of_r(r, ctx)
    if n < 1:
        raise ValueError("bound needs N(r) >= 1")
    big_i = residue_set(r, ctx).big_i
    return w_sequence(big_i, n)[-1]


# ---------------------------------------------------------------------------
# Closed-form bounds
# ---------------------------------------------------------------------------


def closed_form_diagonal_weight_bound(big_i: int) -> QuadraticNumber:
    """Upper bound 1 + phi**(ceil((I-1)/2) + 1) - phi for w(S(r)) when the
    r and f-r classes coincide."""
    if big_i < 0:
        raise ValueError("I must be non-negative")
    return ONE + phi_pow(big_i // 2 + 1) - PHI


def w_big_formula(big_i: int) -> QuadraticNumber:
    """1 + 2*phi**(I-1) + sum_{k=0}^{I-2} (k+3) phi**k (the W_I envelope for
    a full class pair)."""
    if big_i < 1:
        raise ValueError("I must be positive")
    total = ONE + QuadraticNumber(2) * phi_pow(big_i - 1)
    for k in range(big_i - 1):
        total = total + QuadraticNumber(k + 3) * phi_pow(k)
    return total
