"""Exact offline optimum for clique clustering.

`max_clique_partition` decomposes the graph (or an induced subgraph) into
connected components and solves each with branch and bound; profit is additive
across components and isolated vertices/edges are resolved directly.
`brute_force_partition` is the independent testing oracle: it enumerates every
clique-feasible set partition of the whole (sub)graph without any
profit-based pruning.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import kernels
from .graph import Clustering, OrderedGraph, bits


class ComponentTooLargeError(ValueError):
    """A connected component exceeds the solve budget."""


@dataclass(frozen=True)
class SolveBudget:
    max_component_size: int = 20
    node_limit: int = 10**7

    def __post_init__(self):
        if self.max_component_size <= 0 or self.node_limit <= 0:
            raise ValueError("budget fields must be positive")


DEFAULT_BUDGET = SolveBudget()


@dataclass(frozen=True)
class OptimalResult:
    """A max-profit clique partition; `proven_optimal` is False only when the
    branch-and-bound node limit was exhausted (best-found returned)."""

    clusters: tuple[frozenset[int], ...]
    value: int
    proven_optimal: bool = True
    nodes_explored: int = 0

    def as_clustering(self, graph: OrderedGraph) -> Clustering:
        return Clustering.from_sets(graph, self.clusters)


def _induced_adjacency(graph: OrderedGraph, vertices: list[int]) -> list[int]:
    """Adjacency masks of the induced subgraph, remapped to local ids."""
    index = {v: i for i, v in enumerate(vertices)}
    sub_mask = 0
    for v in vertices:
        sub_mask |= 1 << v
    adj = []
    for v in vertices:
        m = graph.adjacency_mask(v) & sub_mask
        local = 0
        for u in bits(m):
            local |= 1 << index[u]
        adj.append(local)
    return adj


def _components(graph: OrderedGraph, vertices: list[int]) -> list[list[int]]:
    sub_mask = 0
    for v in vertices:
        sub_mask |= 1 << v
    remaining = sub_mask
    comps = []
    for start in vertices:  # ascending, so components come out in min-vertex order
        if not remaining >> start & 1:
            continue
        comp_mask = 0
        frontier = 1 << start
        while frontier:
            comp_mask |= frontier
            remaining &= ~frontier
            grow = 0
            for v in bits(frontier):
                grow |= graph.adjacency_mask(v)
            frontier = grow & remaining
        comps.append(bits(comp_mask))
    return comps


def _clusters_from_assignment(vertices: list[int], assignment: list[int]) -> list[frozenset[int]]:
    groups: dict[int, list[int]] = {}
    for v, c in zip(vertices, assignment):
        groups.setdefault(c, []).append(v)
    return [frozenset(groups[c]) for c in sorted(groups)]


def max_clique_partition(
    graph: OrderedGraph,
    budget: SolveBudget = DEFAULT_BUDGET,
    vertices: list[int] | None = None,
) -> OptimalResult:
    """Maximum total intra-cluster edges over clique partitions.

    Solves the subgraph induced by `vertices` (default: all revealed vertices).
    Raises ComponentTooLargeError when a connected component exceeds the
    budget; a hit node limit degrades to best-found with proven_optimal=False.
    """
    if vertices is None:
        vertices = list(range(graph.n))
    else:
        vertices = sorted(vertices)
    clusters: list[frozenset[int]] = []
    value = 0
    nodes_total = 0
    remaining_nodes = budget.node_limit
    proven = True
    for comp in _components(graph, vertices):
        if len(comp) > budget.max_component_size:
            raise ComponentTooLargeError(
                f"component of size {len(comp)} exceeds budget {budget.max_component_size}"
            )
        if len(comp) == 1:
            clusters.append(frozenset(comp))
            continue
        if len(comp) == 2:
            clusters.append(frozenset(comp))  # a size-2 component is an edge
            value += 1
            continue
        adj = _induced_adjacency(graph, comp)
        profit, assignment, nodes, comp_proven = kernels.branch_bound_max_partition(
            adj, max(1, remaining_nodes)
        )
        nodes_total += nodes
        remaining_nodes -= nodes
        proven = proven and comp_proven
        value += profit
        clusters.extend(_clusters_from_assignment(comp, assignment))
    clusters.sort(key=min)
    return OptimalResult(tuple(clusters), value, proven, nodes_total)


def brute_force_partition(graph: OrderedGraph, vertices: list[int] | None = None) -> OptimalResult:
    """Testing oracle: full enumeration of clique-feasible set partitions (n <= 10)."""
    if vertices is None:
        vertices = list(range(graph.n))
    else:
        vertices = sorted(vertices)
    if len(vertices) > 10:
        raise ValueError(f"brute force limited to 10 vertices, got {len(vertices)}")
    adj = _induced_adjacency(graph, vertices)
    profit, assignment = kernels.exhaustive_max_partition(adj)
    clusters = _clusters_from_assignment(vertices, assignment)
    clusters.sort(key=min)
    return OptimalResult(tuple(clusters), profit, True, 0)


def min_cost_partition(
    graph: OrderedGraph,
    budget: SolveBudget = DEFAULT_BUDGET,
    vertices: list[int] | None = None,
) -> OptimalResult:
    """Minimum number of non-cluster edges; offline this is |E| minus max profit."""
    res = max_clique_partition(graph, budget, vertices)
    if vertices is None:
        edges = graph.edge_count
    else:
        vs = set(vertices)
        edges = sum(
            1
            for v in vertices
            for u in bits(graph.adjacency_mask(v))
            if u < v and u in vs
        )
    return OptimalResult(res.clusters, edges - res.value, res.proven_optimal, res.nodes_explored)
