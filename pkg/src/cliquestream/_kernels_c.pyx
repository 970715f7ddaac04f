# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled clique-partition kernels.

Same contracts as `_kernels_py` (see its docstring) for components of at most
64 vertices, with adjacency packed into uint64 masks.  The search runs without
the GIL so verification suites can fan out across threads.
"""

from libc.stdint cimport uint64_t, int64_t
from libc.string cimport memcpy

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil

BACKEND_NAME = "cython"

cdef enum:
    MAXN = 64


cdef struct SearchState:
    int n
    uint64_t adj[MAXN]
    int assign[MAXN]
    uint64_t cluster_mask[MAXN]
    int cluster_size[MAXN]
    int64_t nodes
    int64_t node_limit
    int best
    int best_assign[MAXN]
    bint truncated


cdef void _exh_descend(SearchState* st, int v, int k, int profit) noexcept nogil:
    cdef int c
    cdef uint64_t av, bit
    if v == st.n:
        if profit > st.best:
            st.best = profit
            memcpy(st.best_assign, st.assign, st.n * sizeof(int))
        return
    av = st.adj[v]
    bit = (<uint64_t>1) << v
    for c in range(k):
        if st.cluster_mask[c] & ~av:
            continue
        st.assign[v] = c
        st.cluster_mask[c] |= bit
        st.cluster_size[c] += 1
        _exh_descend(st, v + 1, k, profit + st.cluster_size[c] - 1)
        st.cluster_size[c] -= 1
        st.cluster_mask[c] &= ~bit
    st.assign[v] = k
    st.cluster_mask[k] = bit
    st.cluster_size[k] = 1
    _exh_descend(st, v + 1, k + 1, profit)
    st.cluster_mask[k] = 0
    st.cluster_size[k] = 0


cdef int _bound(SearchState* st, int v, int k) noexcept nogil:
    cdef uint64_t rem, au
    cdef int u, c, join, ub = 0, half = 0
    if v >= 64:
        rem = 0
    else:
        rem = ((<uint64_t>0) - 1) >> v << v
        if st.n < 64:
            rem &= ((<uint64_t>1) << st.n) - 1
    for u in range(v, st.n):
        au = st.adj[u]
        half += __builtin_popcountll(au & rem)
        join = 0
        for c in range(k):
            if st.cluster_size[c] > join and not (st.cluster_mask[c] & ~au):
                join = st.cluster_size[c]
        ub += join
    return ub + half // 2


cdef void _bb_descend(SearchState* st, int v, int k, int profit) noexcept nogil:
    cdef int c
    cdef uint64_t av, bit
    if st.truncated:
        return
    st.nodes += 1
    if st.nodes > st.node_limit:
        st.truncated = True
        return
    if v == st.n:
        if profit > st.best:
            st.best = profit
            memcpy(st.best_assign, st.assign, st.n * sizeof(int))
        return
    if profit + _bound(st, v, k) <= st.best:
        return
    av = st.adj[v]
    bit = (<uint64_t>1) << v
    for c in range(k):
        if st.cluster_mask[c] & ~av:
            continue
        st.assign[v] = c
        st.cluster_mask[c] |= bit
        st.cluster_size[c] += 1
        _bb_descend(st, v + 1, k, profit + st.cluster_size[c] - 1)
        st.cluster_size[c] -= 1
        st.cluster_mask[c] &= ~bit
    st.assign[v] = k
    st.cluster_mask[k] = bit
    st.cluster_size[k] = 1
    _bb_descend(st, v + 1, k + 1, profit)
    st.cluster_mask[k] = 0
    st.cluster_size[k] = 0


cdef void _load(SearchState* st, list adj) except *:
    cdef int n = len(adj)
    if n > MAXN:
        raise ValueError(f"compiled kernel limited to {MAXN} vertices, got {n}")
    st.n = n
    for i in range(n):
        st.adj[i] = <uint64_t>adj[i]
        st.cluster_mask[i] = 0
        st.cluster_size[i] = 0
    st.nodes = 0
    st.best = -1
    st.truncated = False


def exhaustive_max_partition(list adj):
    """Enumerate all clique partitions; return (profit, lex-first optimum)."""
    cdef SearchState st
    _load(&st, adj)
    if st.n == 0:
        return 0, []
    with nogil:
        _exh_descend(&st, 0, 0, 0)
    return st.best, [st.best_assign[i] for i in range(st.n)]


def branch_bound_max_partition(list adj, node_limit):
    """Branch and bound; return (profit, assignment, nodes, proven)."""
    cdef SearchState st
    _load(&st, adj)
    if st.n == 0:
        return 0, [], 0, True
    st.node_limit = <int64_t>node_limit
    with nogil:
        _bb_descend(&st, 0, 0, 0)
    if st.best < 0:
        return 0, list(range(st.n)), int(st.nodes), False
    return st.best, [st.best_assign[i] for i in range(st.n)], int(st.nodes), not st.truncated
