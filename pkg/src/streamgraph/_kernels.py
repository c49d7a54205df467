"""Compiled single-pass loops over the flat item layout of an AL stream.

Each function processes exactly one pass worth of items ``(verts, offsets,
nbrs)``; the callers in the solver modules do the pass metering and bit
accounting.  ``xslot``/``slot`` arrays map a vertex id to its index among the
stored tracked ids (or -1); they are lookup tables over ids the algorithm
already stores and are charged as those ids.

Set ``NUMBA_DISABLE_JIT=1`` to run the same code as plain Python.
"""

from __future__ import annotations

import numpy as np
from numba import njit

INF = np.inf

# status codes returned by the clique kernels
OK = 0
TOO_MANY_CLIQUES = 1
INCONSISTENT = 2


@njit(cache=True)
def vc_round(verts, offsets, nbrs, slot, d):
    """One relaxation pass; tracked items offer d+1, others offer min(d)+2."""
    for i in range(verts.shape[0]):
        w = verts[i]
        s = slot[w]
        lo = offsets[i]
        hi = offsets[i + 1]
        if s >= 0:
            dw = d[s]
            if dw == INF:
                continue
            for p in range(lo, hi):
                t = slot[nbrs[p]]
                if t >= 0 and dw + 1 < d[t]:
                    d[t] = dw + 1
        else:
            best = INF
            for p in range(lo, hi):
                t = slot[nbrs[p]]
                if t >= 0 and d[t] < best:
                    best = d[t]
            if best == INF:
                continue
            for p in range(lo, hi):
                t = slot[nbrs[p]]
                if t >= 0 and best + 2 < d[t]:
                    d[t] = best + 2


@njit(cache=True)
def vc_extract(verts, offsets, nbrs, slot, d, out):
    """Eccentricity over one pass; fills ``out[w]`` when ``out`` is non-empty."""
    ecc = 0.0
    fill = out.shape[0] > 0
    for i in range(verts.shape[0]):
        w = verts[i]
        s = slot[w]
        if s >= 0:
            dw = d[s]
        else:
            best = INF
            for p in range(offsets[i], offsets[i + 1]):
                t = slot[nbrs[p]]
                if t >= 0 and d[t] < best:
                    best = d[t]
            dw = best + 1
        if dw > ecc:
            ecc = dw
        if fill:
            out[w] = dw
    return ecc


@njit(cache=True)
def item_mask(offsets, nbrs, xslot, i):
    mask = 0
    for p in range(offsets[i], offsets[i + 1]):
        t = xslot[nbrs[p]]
        if t >= 0:
            mask |= 1 << t
    return mask


@njit(cache=True)
def find_rep(verts, offsets, nbrs, xslot, mask):
    """Lowest id outside X whose neighbourhood in X is exactly ``mask`` (0 if none)."""
    best = 0
    for i in range(verts.shape[0]):
        w = verts[i]
        if xslot[w] >= 0:
            continue
        if item_mask(offsets, nbrs, xslot, i) == mask and (best == 0 or w < best):
            best = w
    return best


@njit(cache=True)
def find_all_reps(verts, offsets, nbrs, xslot, reps):
    """Batched variant of :func:`find_rep` filling ``reps[mask]`` for every mask."""
    for i in range(verts.shape[0]):
        w = verts[i]
        if xslot[w] >= 0:
            continue
        mask = item_mask(offsets, nbrs, xslot, i)
        if reps[mask] == 0 or w < reps[mask]:
            reps[mask] = w


@njit(cache=True)
def twin_table(verts, offsets, nbrs, xslot, cls, xadj):
    """Capped class sizes per mask plus the X-neighbourhood mask of each X member."""
    for i in range(verts.shape[0]):
        w = verts[i]
        mask = item_mask(offsets, nbrs, xslot, i)
        s = xslot[w]
        if s >= 0:
            xadj[s] = mask
        elif cls[mask] < 2:
            cls[mask] += 1


@njit(cache=True)
def cover_violation(verts, offsets, nbrs, xslot):
    """First edge with no endpoint in X as ``(w, u)``; ``(0, 0)`` if X covers the pass."""
    for i in range(verts.shape[0]):
        w = verts[i]
        if xslot[w] >= 0:
            continue
        for p in range(offsets[i], offsets[i + 1]):
            if xslot[nbrs[p]] < 0:
                return w, nbrs[p]
    return 0, 0


@njit(cache=True)
def closed_clique(offsets, nbrs, xslot, w, i):
    """(min id, size, id sum) of the closed neighbourhood of ``w`` outside X."""
    cid = w
    size = 1
    total = w
    for p in range(offsets[i], offsets[i + 1]):
        u = nbrs[p]
        if xslot[u] < 0:
            size += 1
            total += u
            if u < cid:
                cid = u
    return cid, size, total


@njit(cache=True)
def clique_slot(cid, size, total, w, cslot, cids, stats, ell, register):
    """Slot of clique ``cid``; allocates it and checks consistency while ``register`` is set.

    ``stats[s]`` holds (declared size, declared id sum, members seen, member id sum).
    Returns a negative status code on failure.
    """
    s = cslot[cid]
    if s < 0:
        if not register:
            return -INCONSISTENT
        s = 0
        while s < ell and cids[s] != 0:
            s += 1
        if s == ell:
            return -TOO_MANY_CLIQUES
        cids[s] = cid
        cslot[cid] = s
        stats[s, 0] = size
        stats[s, 1] = total
    if register:
        if stats[s, 0] != size or stats[s, 1] != total:
            return -INCONSISTENT
        stats[s, 2] += 1
        stats[s, 3] += w
    return s


@njit(cache=True)
def clique_stats_ok(cids, stats):
    for s in range(cids.shape[0]):
        if cids[s] != 0 and (stats[s, 2] != stats[s, 0] or stats[s, 3] != stats[s, 1]):
            return cids[s]
    return 0


@njit(cache=True)
def clique_round(verts, offsets, nbrs, xslot, k, v, cslot, cids, stats, d, d0, register):
    """One pass of the clique relaxation.

    Offers are computed from the start-of-pass snapshot ``d0``; improvements
    land in ``d`` immediately.  Returns ``(status, vertex)``.
    """
    ell = cids.shape[0]
    for i in range(verts.shape[0]):
        w = verts[i]
        lo = offsets[i]
        hi = offsets[i + 1]
        t = xslot[w]
        if t >= 0:
            dw = d0[t]
            if dw == INF:
                continue
            for p in range(lo, hi):
                r = xslot[nbrs[p]]
                if r >= 0 and dw + 1 < d[r]:
                    d[r] = dw + 1
            continue
        cid, size, total = closed_clique(offsets, nbrs, xslot, w, i)
        s = clique_slot(cid, size, total, w, cslot, cids, stats, ell, register)
        if s < 0:
            return -s, w
        if w == v:
            best = 0.0
        else:
            best = INF
            for p in range(lo, hi):
                r = xslot[nbrs[p]]
                if r >= 0 and d0[r] + 1 < best:
                    best = d0[r] + 1
        if best <= d[k + s]:
            d[k + s] = best
        offer = min(best, d0[k + s] + 1) + 1
        if offer == INF:
            continue
        for p in range(lo, hi):
            r = xslot[nbrs[p]]
            if r >= 0 and offer < d[r]:
                d[r] = offer
    return OK, 0


@njit(cache=True)
def clique_extract(verts, offsets, nbrs, xslot, k, v, cslot, d, out):
    ecc = 0.0
    fill = out.shape[0] > 0
    for i in range(verts.shape[0]):
        w = verts[i]
        t = xslot[w]
        if t >= 0:
            dw = d[t]
        elif w == v:
            dw = 0.0
        else:
            cid, size, total = closed_clique(offsets, nbrs, xslot, w, i)
            best = d[k + cslot[cid]] + 1
            for p in range(offsets[i], offsets[i + 1]):
                r = xslot[nbrs[p]]
                if r >= 0 and d[r] + 1 < best:
                    best = d[r] + 1
            dw = best
        if dw > ecc:
            ecc = dw
        if fill:
            out[w] = dw
    return ecc


@njit(cache=True)
def clique_reps(verts, offsets, nbrs, xslot, mask, rep_ids, rep_cids):
    """Lowest-id vertex per clique among those with X-neighbourhood ``mask``.

    Returns the number of representatives, or -1 if more cliques than slots.
    """
    count = 0
    for i in range(verts.shape[0]):
        w = verts[i]
        if xslot[w] >= 0 or item_mask(offsets, nbrs, xslot, i) != mask:
            continue
        cid, size, total = closed_clique(offsets, nbrs, xslot, w, i)
        j = 0
        while j < count and rep_cids[j] != cid:
            j += 1
        if j == count:
            if count == rep_ids.shape[0]:
                return -1
            rep_ids[j] = w
            rep_cids[j] = cid
            count += 1
        elif w < rep_ids[j]:
            rep_ids[j] = w
    return count


@njit(cache=True)
def clique_table(verts, offsets, nbrs, xslot, cslot, cids, stats, cls, xadj):
    """Capped class sizes per (mask, clique slot) in one pass; returns ``(status, vertex)``."""
    ell = cids.shape[0]
    for i in range(verts.shape[0]):
        w = verts[i]
        mask = item_mask(offsets, nbrs, xslot, i)
        t = xslot[w]
        if t >= 0:
            xadj[t] = mask
            continue
        cid, size, total = closed_clique(offsets, nbrs, xslot, w, i)
        s = clique_slot(cid, size, total, w, cslot, cids, stats, ell, True)
        if s < 0:
            return -s, w
        if cls[mask, s] < 2:
            cls[mask, s] += 1
    return OK, 0


def empty_out() -> np.ndarray:
    return np.empty(0, dtype=np.float64)
