"""JIT-compiled semigroup-tree counting for deep genus runs.

The tree is split at a frontier depth; each frontier subtree is an
independent work unit executed by a numba kernel over uint64 membership
bitmasks, with per-unit counter rows merged by addition afterwards.  Counts
are therefore identical for any thread count.  Counters are 64-bit; the
kernel refuses max_genus > 60, well before they could overflow.
"""

from __future__ import annotations

import os

import numpy as np

from .semigroup import NATURALS, NumericalSemigroup
from .tree import FRONTIER_DEPTH_DEFAULT, GenusCounters

# allow requesting more workers than cores (results are thread-count
# independent either way); must be set before numba is first imported
os.environ.setdefault("NUMBA_NUM_THREADS", str(max(4, os.cpu_count() or 1)))

try:
    import numba
    from numba import njit, prange, set_num_threads

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

NUMBA_GENUS_LIMIT = 60

if HAVE_NUMBA:
    _U1 = np.uint64(1)
    _U0 = np.uint64(0)

    @njit(cache=True)
    def _effective_generators(mask, m, f, words, out_gens):
        """Effective generators of the node into out_gens; returns
        (count, strongly_descended)."""
        sums = np.zeros(words, dtype=np.uint64)
        for a in range(m, f + 1):
            if (mask[a >> 6] >> np.uint64(a & 63)) & _U1:
                off = a >> 6
                sh = a & 63
                if sh == 0:
                    for k in range(words - off):
                        sums[k + off] |= mask[k]
                else:
                    ush = np.uint64(sh)
                    dsh = np.uint64(64 - sh)
                    for k in range(words - off):
                        v = mask[k]
                        sums[k + off] |= v << ush
                        if k + off + 1 < words:
                            sums[k + off + 1] |= v >> dsh
        # member 0 shifted by a marks a itself; only bits above f are read,
        # and those sums always use two positive members
        cnt = 0
        for x in range(f + 1, f + m + 1):
            if ((sums[x >> 6] >> np.uint64(x & 63)) & _U1) == _U0:
                out_gens[cnt] = x
                cnt += 1
        strong = cnt > 0 and out_gens[cnt - 1] == f + m
        return cnt, strong

    @njit(cache=True, parallel=True)
    def _count_kernel(
        front_masks,
        front_m,
        front_f,
        front_ancg,
        front_anch,
        d0,
        max_genus,
        words,
        partition,
        out,
    ):
        ntasks = front_masks.shape[0]
        for ti in prange(ntasks):
            G = max_genus
            W = words
            masks = np.zeros((G + 2, W), dtype=np.uint64)
            ms = np.zeros(G + 2, dtype=np.int64)
            fs = np.zeros(G + 2, dtype=np.int64)
            ancg = np.zeros(G + 2, dtype=np.int64)
            anch = np.zeros(G + 2, dtype=np.int64)
            gens = np.zeros((G + 2, G + 3), dtype=np.int64)
            gcount = np.zeros(G + 2, dtype=np.int64)
            cursor = np.zeros(G + 2, dtype=np.int64)

            for k in range(W):
                masks[d0, k] = front_masks[ti, k]
            ms[d0] = front_m[ti]
            fs[d0] = front_f[ti]
            ancg[d0] = front_ancg[ti]
            anch[d0] = front_anch[ti]

            # visit the task root
            out[ti, 0, d0] += 1
            if fs[d0] < 3 * ms[d0]:
                out[ti, 1, d0] += 1
            if partition:
                if anch[d0] + ancg[d0] < d0:
                    out[ti, 2, d0] += 1
                elif 3 * (ancg[d0] - anch[d0]) < d0:
                    out[ti, 3, d0] += 1
                else:
                    out[ti, 4, d0] += 1
            if d0 < G:
                cnt, _ = _effective_generators(
                    masks[d0], ms[d0], fs[d0], W, gens[d0]
                )
                gcount[d0] = cnt
            else:
                gcount[d0] = 0
            cursor[d0] = 0

            level = d0
            while level >= d0:
                if level >= G or cursor[level] >= gcount[level]:
                    level -= 1
                    continue
                lam = gens[level, cursor[level]]
                cursor[level] += 1
                nl = level + 1
                # build the child: copy, extend the window, drop the generator
                mc = ms[level] + 1 if lam == ms[level] else ms[level]
                for k in range(W):
                    masks[nl, k] = masks[level, k]
                for p in range(fs[level] + ms[level] + 1, lam + mc + 1):
                    masks[nl, p >> 6] |= _U1 << np.uint64(p & 63)
                masks[nl, lam >> 6] &= ~(_U1 << np.uint64(lam & 63))
                ms[nl] = mc
                fs[nl] = lam

                need_expand = nl < G or partition
                strong = False
                if need_expand:
                    cnt, strong = _effective_generators(
                        masks[nl], mc, lam, W, gens[nl]
                    )
                    gcount[nl] = cnt
                else:
                    gcount[nl] = 0
                if partition:
                    if strong:
                        ancg[nl] = nl
                        anch[nl] = gcount[nl]
                    else:
                        ancg[nl] = ancg[level]
                        anch[nl] = anch[level]

                out[ti, 0, nl] += 1
                if lam < 3 * mc:
                    out[ti, 1, nl] += 1
                if partition:
                    if anch[nl] + ancg[nl] < nl:
                        out[ti, 2, nl] += 1
                    elif 3 * (ancg[nl] - anch[nl]) < nl:
                        out[ti, 3, nl] += 1
                    else:
                        out[ti, 4, nl] += 1
                cursor[nl] = 0
                level = nl


def _mask_words(s: NumericalSemigroup, words: int) -> np.ndarray:
    out = np.zeros(words, dtype=np.uint64)
    mask = s._mask
    for k in range(words):
        out[k] = (mask >> (64 * k)) & 0xFFFFFFFFFFFFFFFF
    return out


def count_ng_fast(
    max_genus: int,
    *,
    partition: bool = False,
    threads: int = 1,
    frontier_depth: int = FRONTIER_DEPTH_DEFAULT,
) -> GenusCounters:
    """Numba-backed count_ng; falls back to the Python counter when numba is
    unavailable."""
    from .tree import _count_ng_python  # local import avoids a cycle

    if not HAVE_NUMBA:
        return _count_ng_python(max_genus, partition=partition)
    if max_genus > NUMBA_GENUS_LIMIT:
        raise OverflowError(
            f"64-bit counters are only guarded up to genus {NUMBA_GENUS_LIMIT}"
        )
    d0 = min(frontier_depth, max_genus)
    if d0 < 1:
        return _count_ng_python(max_genus, partition=partition)

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

    # Python traversal down to the frontier; kernel tasks take over below it.
    frontier: list[tuple[NumericalSemigroup, int, int]] = []
    record(NATURALS, 0, 0, 1)
    stack = [[NATURALS, NATURALS.children(), 0, 0, 1]]
    if d0 == 0:
        stack = []
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
        if depth == d0:
            frontier.append((child, c_anc_g, c_anc_h))
            continue
        record(child, depth, c_anc_g, c_anc_h)
        if depth < max_genus:
            stack.append([child, child.children(), 0, c_anc_g, c_anc_h])
    if not frontier:
        return counters

    words = (3 * max_genus + 4 + 63) // 64
    ntasks = len(frontier)
    front_masks = np.zeros((ntasks, words), dtype=np.uint64)
    front_m = np.zeros(ntasks, dtype=np.int64)
    front_f = np.zeros(ntasks, dtype=np.int64)
    front_ancg = np.zeros(ntasks, dtype=np.int64)
    front_anch = np.zeros(ntasks, dtype=np.int64)
    for idx, (node, anc_g, anc_h) in enumerate(frontier):
        front_masks[idx] = _mask_words(node, words)
        front_m[idx] = node.m
        front_f[idx] = node.f
        front_ancg[idx] = anc_g
        front_anch[idx] = anc_h

    out = np.zeros((ntasks, 5, max_genus + 1), dtype=np.int64)
    set_num_threads(min(max(1, threads), numba.config.NUMBA_NUM_THREADS))
    _count_kernel(
        front_masks,
        front_m,
        front_f,
        front_ancg,
        front_anch,
        d0,
        max_genus,
        words,
        partition,
        out,
    )
    merged = out.sum(axis=0)
    for g in range(max_genus + 1):
        counters.n[g] += int(merged[0, g])
        counters.t[g] += int(merged[1, g])
        counters.n1[g] += int(merged[2, g])
        counters.n2[g] += int(merged[3, g])
        counters.n3[g] += int(merged[4, g])
    return counters
