"""Pure-Python clique-partition kernels (fallback backend).

Both kernels take adjacency as a list of per-vertex bitmasks over local ids
0..n-1 and return a max-profit clique partition as an assignment vector in
restricted-growth form (vertex 0 in cluster 0, each new cluster takes the next
index).  Profit of a partition is the number of intra-cluster edges.

`exhaustive_max_partition` enumerates every clique-feasible set partition and
never prunes on profit; it is the oracle side of the dual-route check and must
stay independent of the branch-and-bound side.
"""

from __future__ import annotations

BACKEND_NAME = "python"


def exhaustive_max_partition(adj: list[int]) -> tuple[int, list[int]]:
    """Enumerate all clique partitions in lexicographic assignment order.

    Returns (best profit, first assignment attaining it), i.e. the
    lexicographically smallest optimum.
    """
    n = len(adj)
    if n == 0:
        return 0, []
    assign = [0] * n
    cluster_mask = [0] * n
    cluster_size = [0] * n
    best = [-1, None]

    def descend(v: int, k: int, profit: int) -> None:
        if v == n:
            if profit > best[0]:
                best[0] = profit
                best[1] = assign.copy()
            return
        av = adj[v]
        bit = 1 << v
        for c in range(k):
            if cluster_mask[c] & ~av:
                continue  # some member not adjacent to v: not a clique
            assign[v] = c
            cluster_mask[c] |= bit
            cluster_size[c] += 1
            descend(v + 1, k, profit + cluster_size[c] - 1)
            cluster_size[c] -= 1
            cluster_mask[c] &= ~bit
        assign[v] = k
        cluster_mask[k] = bit
        cluster_size[k] = 1
        descend(v + 1, k + 1, profit)
        cluster_mask[k] = 0
        cluster_size[k] = 0

    descend(0, 0, 0)
    return best[0], best[1]


def branch_bound_max_partition(adj: list[int], node_limit: int) -> tuple[int, list[int], int, bool]:
    """Branch and bound over the same branching tree, pruned by a profit bound.

    Branches on the lowest unassigned vertex: join each compatible existing
    cluster (in creation order) or open a new one.  The bound adds, for every
    unassigned u, half its remaining-degree (future intra-cluster edges among
    unassigned vertices) plus the size of the largest existing cluster u could
    still join (future edges into already-built clusters).

    Returns (profit, assignment, nodes explored, proven optimal).  When the
    node limit is hit the best partition found so far is returned with
    proven=False.
    """
    n = len(adj)
    if n == 0:
        return 0, [], 0, True
    assign = [0] * n
    cluster_mask = [0] * n
    cluster_size = [0] * n
    all_mask = (1 << n) - 1
    state = {"nodes": 0, "best": -1, "best_assign": None, "truncated": False}

    def bound(v: int, k: int) -> int:
        rem = all_mask >> v << v
        ub = 0
        half = 0
        for u in range(v, n):
            au = adj[u]
            half += (au & rem).bit_count()
            join = 0
            for c in range(k):
                if cluster_size[c] > join and not cluster_mask[c] & ~au:
                    join = cluster_size[c]
            ub += join
        return ub + half // 2

    def descend(v: int, k: int, profit: int) -> None:
        if state["truncated"]:
            return
        state["nodes"] += 1
        if state["nodes"] > node_limit:
            state["truncated"] = True
            return
        if v == n:
            if profit > state["best"]:
                state["best"] = profit
                state["best_assign"] = assign.copy()
            return
        if profit + bound(v, k) <= state["best"]:
            return
        av = adj[v]
        bit = 1 << v
        for c in range(k):
            if cluster_mask[c] & ~av:
                continue
            assign[v] = c
            cluster_mask[c] |= bit
            cluster_size[c] += 1
            descend(v + 1, k, profit + cluster_size[c] - 1)
            cluster_size[c] -= 1
            cluster_mask[c] &= ~bit
        assign[v] = k
        cluster_mask[k] = bit
        cluster_size[k] = 1
        descend(v + 1, k + 1, profit)
        cluster_mask[k] = 0
        cluster_size[k] = 0

    descend(0, 0, 0)
    if state["best_assign"] is None:
        # node limit hit before any leaf: fall back to all-singletons
        state["best"] = 0
        state["best_assign"] = list(range(n))
    return state["best"], state["best_assign"], state["nodes"], not state["truncated"]
