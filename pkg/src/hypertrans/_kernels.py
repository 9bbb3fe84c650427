"""Compiled graph-level kernels for HyperTrans with the built-in score functions.

Everything here works on the CSR arrays of :meth:`Hypergraph.csr` and mirrors
the pure-Python path in ``measures`` (which stays the reference).  Scratch
membership arrays are reset with per-wedge stamps instead of clearing.
"""

from __future__ import annotations

import numpy as np
from numba import njit

SCORE_COVERAGE = 0
SCORE_PENALIZED = 1
COUNT_ONLY = 2

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)


@njit(cache=True, nogil=True)
def _mix64(x):
    x = x + _GOLDEN
    x = (x ^ (x >> np.uint64(30))) * _M1
    x = (x ^ (x >> np.uint64(27))) * _M2
    return x ^ (x >> np.uint64(31))


@njit(cache=True, nogil=True)
def _selected(a, b, threshold, seed_mix):
    x = _mix64(seed_mix ^ np.uint64(a))
    x = _mix64(x ^ np.uint64(b))
    return x < threshold


@njit(cache=True, nogil=True)
def _grow(arr, size):
    out = np.empty(max(2 * arr.shape[0], size), dtype=arr.dtype)
    out[: arr.shape[0]] = arr
    return out


@njit(cache=True, nogil=True)
def wedge_scores(
    edge_ptr,
    edge_nodes,
    node_ptr,
    node_edges,
    n_nodes,
    a_start,
    a_end,
    kind,
    sampled,
    threshold,
    seed_mix,
):
    """Enumerate the wedges anchored at edges ``a_start .. a_end-1`` and score them.

    Returns (edge_a, edge_b, body_size, score, node_sum, node_cnt, edge_sum,
    edge_cnt). With ``kind == COUNT_ONLY`` scores are left at zero and the
    candidate scan is skipped.
    """
    m = edge_ptr.shape[0] - 1
    max_size = 1
    for e in range(m):
        s = edge_ptr[e + 1] - edge_ptr[e]
        if s > max_size:
            max_size = s

    in_a = np.full(n_nodes, -1, dtype=np.int64)
    in_b = np.full(n_nodes, -1, dtype=np.int64)
    lstamp = np.full(n_nodes, -1, dtype=np.int64)
    rstamp = np.full(n_nodes, -1, dtype=np.int64)
    rank = np.zeros(n_nodes, dtype=np.int64)
    paired = np.full(m, -1, dtype=np.int64)
    cstamp = np.full(m, -1, dtype=np.int64)
    table = np.zeros(max_size * max_size, dtype=np.float64)
    li = np.empty(max_size, dtype=np.int64)
    ri = np.empty(max_size, dtype=np.int64)

    cap = 1024
    out_a = np.empty(cap, dtype=np.int64)
    out_b = np.empty(cap, dtype=np.int64)
    out_body = np.empty(cap, dtype=np.int64)
    out_score = np.empty(cap, dtype=np.float64)
    node_sum = np.zeros(n_nodes, dtype=np.float64)
    node_cnt = np.zeros(n_nodes, dtype=np.int64)
    edge_sum = np.zeros(m, dtype=np.float64)
    edge_cnt = np.zeros(m, dtype=np.int64)

    g = 0
    for a in range(a_start, a_end):
        sa = edge_ptr[a]
        ea_end = edge_ptr[a + 1]
        na = ea_end - sa
        for k in range(sa, ea_end):
            in_a[edge_nodes[k]] = a
        for k in range(sa, ea_end):
            v = edge_nodes[k]
            for t in range(node_ptr[v], node_ptr[v + 1]):
                b = node_edges[t]
                if b <= a or paired[b] == a:
                    continue
                paired[b] = a
                sb = edge_ptr[b]
                eb_end = edge_ptr[b + 1]
                nb = eb_end - sb
                inter = 0
                for q in range(sb, eb_end):
                    if in_a[edge_nodes[q]] == a:
                        inter += 1
                if inter >= na or inter >= nb:
                    continue
                if sampled and not _selected(a, b, threshold, seed_mix):
                    continue

                score = 0.0
                if kind != COUNT_ONLY:
                    for q in range(sb, eb_end):
                        in_b[edge_nodes[q]] = g
                    nl = 0
                    for q in range(sa, ea_end):
                        u = edge_nodes[q]
                        if in_b[u] != g:
                            lstamp[u] = g
                            rank[u] = nl
                            nl += 1
                    nr = 0
                    for q in range(sb, eb_end):
                        u = edge_nodes[q]
                        if in_a[u] != a:
                            rstamp[u] = g
                            rank[u] = nr
                            nr += 1
                    npairs = nl * nr
                    for i in range(npairs):
                        table[i] = 0.0
                    # candidates touching the left wing; those missing the right wing drop out
                    for q in range(sa, ea_end):
                        u = edge_nodes[q]
                        if lstamp[u] != g:
                            continue
                        for t2 in range(node_ptr[u], node_ptr[u + 1]):
                            e = node_edges[t2]
                            if cstamp[e] == g:
                                continue
                            cstamp[e] = g
                            cl = 0
                            cr = 0
                            for q2 in range(edge_ptr[e], edge_ptr[e + 1]):
                                x = edge_nodes[q2]
                                if lstamp[x] == g:
                                    li[cl] = rank[x]
                                    cl += 1
                                elif rstamp[x] == g:
                                    ri[cr] = rank[x]
                                    cr += 1
                            if cr == 0:
                                continue
                            if kind == SCORE_COVERAGE:
                                s = (cl * cr) / npairs
                            else:
                                outside = (edge_ptr[e + 1] - edge_ptr[e]) - cl - cr
                                s = (cl * cr) / ((nl + outside) * (nr + outside))
                            for i in range(cl):
                                base = li[i] * nr
                                for j in range(cr):
                                    idx = base + ri[j]
                                    if s > table[idx]:
                                        table[idx] = s
                    total = 0.0
                    for i in range(npairs):
                        total += table[i]
                    score = total / npairs
                    for q in range(sa, ea_end):
                        u = edge_nodes[q]
                        if in_b[u] == g:
                            node_sum[u] += score
                            node_cnt[u] += 1

                if g >= out_a.shape[0]:
                    out_a = _grow(out_a, g + 1)
                    out_b = _grow(out_b, g + 1)
                    out_body = _grow(out_body, g + 1)
                    out_score = _grow(out_score, g + 1)
                out_a[g] = a
                out_b[g] = b
                out_body[g] = inter
                out_score[g] = score
                edge_sum[a] += score
                edge_sum[b] += score
                edge_cnt[a] += 1
                edge_cnt[b] += 1
                g += 1

    return (
        out_a[:g].copy(),
        out_b[:g].copy(),
        out_body[:g].copy(),
        out_score[:g].copy(),
        node_sum,
        node_cnt,
        edge_sum,
        edge_cnt,
    )
