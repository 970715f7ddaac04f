"""Adaptive adversary driven by a skeleton tree.

The adversary maintains a rooted binary tree with a full core down to depth D
and unary "tentacles" below.  Every tree node u corresponds to a pair of graph
vertices joined by a *cross* edge; vertices also connect to one vertex of each
ancestor (*upward* edges, side chosen by which subtree they hang from), and
extended tentacle nodes get a pendant *whisker* vertex.

The strategy only ever profits by clustering cross-edge endpoints of current
leaves ("collecting" them).  Each collected leaf is answered by growing the
tree: two children inside the core, a single left child (plus whisker) once
depth D is reached.  The adversary's reference partition C* packs one clique
along every maximal descending path, which yields at least 6 times the
strategy's profit up to a 2*(depth) additive slack.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import ArrivalEvent, Clustering, OrderedGraph, mask_of
from .strategies import OnlineRun
from .trace import ExactRatio


class LemmaViolationError(AssertionError):
    """A subtree broke its profit inequality: implementation bug, not an input error."""


class AdversaryProtocolError(ValueError):
    """Extension requested at a node that is not an unextended leaf."""


@dataclass
class SkeletonNode:
    id: int
    parent: int | None
    depth: int
    left: int | None = None
    right: int | None = None


class SkeletonTree:
    """Core-plus-tentacles rooted binary tree; node ids follow creation order."""

    def __init__(self, core_depth: int):
        if core_depth < 0:
            raise ValueError("core depth must be non-negative")
        self.D = core_depth
        self.nodes: list[SkeletonNode] = [SkeletonNode(0, None, 0)]

    def __len__(self) -> int:
        return len(self.nodes)

    def is_leaf(self, u: int) -> bool:
        n = self.nodes[u]
        return n.left is None and n.right is None

    def in_tentacle(self, u: int) -> bool:
        return self.nodes[u].depth >= self.D

    def has_whisker(self, u: int) -> bool:
        # whiskers appear when a tentacle node is extended
        return self.in_tentacle(u) and self.nodes[u].left is not None

    def add_left(self, u: int) -> int:
        if self.nodes[u].left is not None:
            raise AdversaryProtocolError(f"node {u} already has a left child")
        node = SkeletonNode(len(self.nodes), u, self.nodes[u].depth + 1)
        self.nodes.append(node)
        self.nodes[u].left = node.id
        return node.id

    def add_right(self, u: int) -> int:
        if self.nodes[u].right is not None:
            raise AdversaryProtocolError(f"node {u} already has a right child")
        if self.in_tentacle(u):
            raise AdversaryProtocolError("tentacle nodes only take left children")
        node = SkeletonNode(len(self.nodes), u, self.nodes[u].depth + 1)
        self.nodes.append(node)
        self.nodes[u].right = node.id
        return node.id

    def extend(self, u: int) -> list[int]:
        """The adversary's move at a just-collected leaf: two children inside
        the core, one left child once at depth D or deeper."""
        if not self.is_leaf(u):
            raise AdversaryProtocolError(f"node {u} is not a leaf")
        if self.nodes[u].depth < self.D:
            return [self.add_left(u), self.add_right(u)]
        return [self.add_left(u)]

    def ancestors(self, u: int):
        """Yield (ancestor id, side) walking up; side is which child arm u hangs from."""
        node = self.nodes[u]
        while node.parent is not None:
            parent = self.nodes[node.parent]
            yield parent.id, ("L" if parent.left == node.id else "R")
            node = parent

    def leaves(self) -> list[int]:
        return [n.id for n in self.nodes if n.left is None and n.right is None]

    def heights(self) -> list[int]:
        h = [0] * len(self.nodes)
        for n in reversed(self.nodes):  # children have larger ids than parents
            for c in (n.left, n.right):
                if c is not None:
                    h[n.id] = max(h[n.id], h[c] + 1)
        return h

    def deepest_below(self) -> list[int]:
        d = [n.depth for n in self.nodes]
        for n in reversed(self.nodes):
            for c in (n.left, n.right):
                if c is not None:
                    d[n.id] = max(d[n.id], d[c])
        return d


# ---------------------------------------------------------------------------
# Tree -> graph
# ---------------------------------------------------------------------------


@dataclass
class SkeletonGraphView:
    graph: OrderedGraph
    events: list[ArrivalEvent]
    left_vertex: list[int]
    right_vertex: list[int]
    whisker_vertex: list[int | None]

    def cross_pair(self, u: int) -> tuple[int, int]:
        return self.left_vertex[u], self.right_vertex[u]


def _node_events(tree: SkeletonTree, u: int, left_vertex, right_vertex, next_id: int):
    """Arrival events for node u's vertex pair: upward edges plus the cross edge."""
    up = []
    for a, side in tree.ancestors(u):
        up.append(left_vertex[a] if side == "L" else right_vertex[a])
    lv, rv = next_id, next_id + 1
    up_mask = mask_of(up)
    return lv, rv, [ArrivalEvent(lv, up_mask), ArrivalEvent(rv, up_mask | (1 << lv))]


def skeleton_to_graph(tree: SkeletonTree) -> SkeletonGraphView:
    """Materialize the graph of a grown tree, arrivals in growth order."""
    n = len(tree.nodes)
    left_vertex = [-1] * n
    right_vertex = [-1] * n
    whisker_vertex: list[int | None] = [None] * n
    events: list[ArrivalEvent] = []
    for node in tree.nodes:
        u = node.id
        lv, rv, evs = _node_events(tree, u, left_vertex, right_vertex, len(events))
        left_vertex[u], right_vertex[u] = lv, rv
        events.extend(evs)
        parent = node.parent
        if parent is not None and tree.in_tentacle(parent) and whisker_vertex[parent] is None:
            wv = len(events)
            whisker_vertex[parent] = wv
            events.append(ArrivalEvent(wv, 1 << right_vertex[parent]))
    graph = OrderedGraph.from_events(events)
    return SkeletonGraphView(graph, events, left_vertex, right_vertex, whisker_vertex)


# ---------------------------------------------------------------------------
# The adversary's reference partition C*
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CStarPath:
    """One clique of C*: a descending node path; the terminal leaf contributes
    both of its vertices, every other node the vertex on its `sides` arm."""

    nodes: tuple[int, ...]
    sides: tuple[str, ...]  # parallel to nodes[:-1]

    @property
    def clique_size(self) -> int:
        return len(self.nodes) + 1


def cstar_paths(tree: SkeletonTree) -> tuple[list[CStarPath], list[int]]:
    """Path decomposition of C*: descending paths plus whisker 2-cliques.

    From each entry side we follow the longest descent (ties to the left);
    every interior node's opposite arm spawns a further clique, and extended
    tentacle nodes pair their right vertex with their whisker.
    """
    heights = tree.heights()
    paths: list[CStarPath] = []
    whiskers: list[int] = []
    if tree.is_leaf(0):
        return [CStarPath((0,), ())], []
    stack: list[tuple[int, str]] = [(0, "R"), (0, "L")]
    while stack:
        v, side = stack.pop()
        node = tree.nodes[v]
        if side == "R" and node.right is None:
            if not tree.in_tentacle(v):
                raise ValueError(f"malformed tree: core node {v} has a single child")
            # extended tentacle node: its right vertex pairs with the whisker
            whiskers.append(v)
            continue
        nodes = [v]
        sides = [side]
        cur = node.left if side == "L" else node.right
        while not tree.is_leaf(cur):
            c = tree.nodes[cur]
            if c.right is None or (c.left is not None and heights[c.left] >= heights[c.right]):
                nxt, s = c.left, "L"
            else:
                nxt, s = c.right, "R"
            nodes.append(cur)
            sides.append(s)
            stack.append((cur, "L" if s == "R" else "R"))
            cur = nxt
        nodes.append(cur)
        paths.append(CStarPath(tuple(nodes), tuple(sides)))
    return paths, whiskers


def cstar_partition(tree: SkeletonTree, view: SkeletonGraphView | None = None):
    """C* as vertex cliques; always a valid partition of the skeleton graph."""
    if view is None:
        view = skeleton_to_graph(tree)
    paths, whiskers = cstar_paths(tree)
    cliques = []
    for p in paths:
        members = []
        for u, side in zip(p.nodes[:-1], p.sides):
            members.append(view.left_vertex[u] if side == "L" else view.right_vertex[u])
        leaf = p.nodes[-1]
        members.extend(view.cross_pair(leaf))
        cliques.append(frozenset(members))
    for u in whiskers:
        cliques.append(frozenset({view.right_vertex[u], view.whisker_vertex[u]}))
    return cliques


def cstar_profit(tree: SkeletonTree) -> int:
    paths, whiskers = cstar_paths(tree)
    return sum(k.clique_size * (k.clique_size - 1) // 2 for k in paths) + len(whiskers)


# ---------------------------------------------------------------------------
# Subtree accounting and the profit lemmas
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SubtreeStats:
    node: int
    profit: int          # O_v: profit of C* restricted to the subtree's graph
    collected: int       # S_v: collected cross edges inside the subtree
    core_depth: int      # h
    tentacle_length: int  # s (0 when the subtree is shallow)
    shallow: bool

    @property
    def slack(self) -> int:
        return 0 if self.shallow else 2 * (self.core_depth + self.tentacle_length)


def subtree_report(tree: SkeletonTree, collected: set[int], check: bool = True) -> list[SubtreeStats]:
    """Per-subtree profit accounting.

    Restricting C* to a subtree equals rebuilding it with the subtree's root,
    so each path clique contributes a full clique to every ancestor of its
    head and a suffix clique to every node it passes through.  With `check`,
    every subtree must satisfy its lemma inequality: profit >= 6*collected for
    shallow subtrees, profit + 2*(h+s) >= 6*collected for deep ones.
    """
    n = len(tree.nodes)
    O = [0] * n
    S = [0] * n
    paths, whiskers = cstar_paths(tree)
    for p in paths:
        m = len(p.nodes)
        for i, w in enumerate(p.nodes):
            size = m - i + 1
            O[w] += size * (size - 1) // 2
        full = m * (m + 1) // 2  # C(m+1, 2)
        for a, _ in tree.ancestors(p.nodes[0]):
            O[a] += full
    for w in whiskers:
        O[w] += 1
        for a, _ in tree.ancestors(w):
            O[a] += 1
    for u in collected:
        S[u] += 1
        for a, _ in tree.ancestors(u):
            S[a] += 1
    deepest = tree.deepest_below()
    out = []
    for node in tree.nodes:
        v = node.id
        shallow = deepest[v] <= tree.D
        h = max(0, tree.D - node.depth)
        s = 0 if shallow else deepest[v] - max(tree.D, node.depth)
        stats = SubtreeStats(v, O[v], S[v], h, s, shallow)
        if check and stats.profit + stats.slack < 6 * stats.collected:
            raise LemmaViolationError(
                f"subtree at node {v}: O={stats.profit} S={stats.collected} "
                f"h={h} s={s} shallow={shallow}"
            )
        out.append(stats)
    return out


# ---------------------------------------------------------------------------
# The interactive game
# ---------------------------------------------------------------------------


@dataclass
class AdversaryReport:
    core_depth: int
    rounds: int
    stopped_because: str  # "idle" or "budget"
    nodes: int
    vertices: int
    adversary_profit: int      # O_r
    collected: int             # S_r
    strategy_profit: int       # the strategy's actual clustering profit
    max_tentacle: int
    ratio: ExactRatio
    epsilon: float | None
    subtrees: list[SubtreeStats] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "core_depth": self.core_depth,
            "rounds": self.rounds,
            "stopped_because": self.stopped_because,
            "nodes": self.nodes,
            "vertices": self.vertices,
            "adversary_profit": self.adversary_profit,
            "collected": self.collected,
            "strategy_profit": self.strategy_profit,
            "max_tentacle": self.max_tentacle,
            "ratio_num": self.ratio.num,
            "ratio_den": self.ratio.den,
            "ratio": self.ratio.decimal(3),
            "epsilon": self.epsilon,
            "subtrees": [
                {
                    "node": s.node,
                    "O": s.profit,
                    "S": s.collected,
                    "h": s.core_depth,
                    "s": s.tentacle_length,
                    "shallow": s.shallow,
                }
                for s in self.subtrees
            ],
        }


def default_round_budget(core_depth: int) -> int:
    # the analysis only needs the tail cap "large enough"
    return 2 ** (core_depth + 1) + 8 * 2**core_depth


class AlwaysCollectStrategy:
    """Reference opponent: merges each arrival with the oldest compatible
    singleton cluster, which on adversary graphs collects every cross edge as
    soon as its second endpoint appears."""

    name = "always-collect"

    def respond(self, run: OnlineRun, ev) -> None:
        cl = run.clustering
        while True:
            own = cl.cluster_of(ev.vertex)
            mask = cl.members_mask(own)
            common = -1
            for u in cl.members(own):
                common &= run.graph.adjacency_mask(u)
            partner = None
            for u in run.graph.neighbors(ev.vertex):
                cid = cl.cluster_of(u)
                if cid == own or cl.size(cid) != 1:
                    continue
                if not cl.members_mask(cid) & ~common:
                    partner = cid if partner is None else min(partner, cid)
            if partner is None:
                return
            run.merge(own, partner)


class SkeletonGame:
    """Runs a strategy against the adaptive adversary.

    Per round: deliver all pending arrivals (the strategy reacts to each),
    detect which leaf cross edges became co-clustered, answer each with the
    matching tree extension, then check every subtree's lemma inequality.
    """

    def __init__(self, strategy, core_depth: int, max_rounds: int | None = None,
                 check_lemmas: bool = True):
        self.tree = SkeletonTree(core_depth)
        self.run = OnlineRun(strategy)
        self.max_rounds = default_round_budget(core_depth) if max_rounds is None else max_rounds
        self.check_lemmas = check_lemmas
        self.responded: set[int] = set()
        self.left_vertex = [-1]
        self.right_vertex = [-1]
        self.whisker_vertex: list[int | None] = [None]
        self.rounds = 0
        self.stopped_because = ""
        self._pending: list[ArrivalEvent] = []
        self._queue_node_pair(0)

    def _queue_node_pair(self, u: int) -> None:
        while len(self.left_vertex) < len(self.tree.nodes):
            self.left_vertex.append(-1)
            self.right_vertex.append(-1)
            self.whisker_vertex.append(None)
        next_id = self.run.graph.n + len(self._pending)
        lv, rv, evs = _node_events(self.tree, u, self.left_vertex, self.right_vertex, next_id)
        self.left_vertex[u], self.right_vertex[u] = lv, rv
        self._pending.extend(evs)

    def _queue_whisker(self, u: int) -> None:
        wv = self.run.graph.n + len(self._pending)
        self.whisker_vertex[u] = wv
        self._pending.append(ArrivalEvent(wv, 1 << self.right_vertex[u]))

    def _deliver(self) -> None:
        pending, self._pending = self._pending, []
        for ev in pending:
            self.run.step(ev)

    def _new_collections(self) -> list[int]:
        out = []
        for u in self.tree.leaves():
            if u in self.responded:
                continue
            if self.run.clustering.co_clustered(self.left_vertex[u], self.right_vertex[u]):
                out.append(u)
        return out

    def _respond(self, u: int) -> None:
        if u in self.responded:
            raise AdversaryProtocolError(f"node {u} was already extended")
        self.responded.add(u)
        was_tentacle = self.tree.in_tentacle(u)
        children = self.tree.extend(u)
        for c in children:
            self._queue_node_pair(c)
        if was_tentacle:
            self._queue_whisker(u)

    def play(self) -> AdversaryReport:
        while True:
            self._deliver()
            fresh = self._new_collections()
            if not fresh:
                self.stopped_because = "idle"
                break
            if self.rounds >= self.max_rounds:
                self.stopped_because = "budget"
                break
            for u in fresh:
                self._respond(u)
            self.rounds += 1
            if self.check_lemmas:
                subtree_report(self.tree, self.responded, check=True)
        return self.report()

    def report(self) -> AdversaryReport:
        stats = subtree_report(self.tree, self.responded, check=self.check_lemmas)
        root = stats[0]
        deepest = self.tree.deepest_below()[0]
        s_max = max(0, deepest - self.tree.D)
        ratio = ExactRatio.of(root.profit, root.collected)
        eps = (2 * (self.tree.D + s_max) / root.collected) if root.collected else None
        return AdversaryReport(
            core_depth=self.tree.D,
            rounds=self.rounds,
            stopped_because=self.stopped_because,
            nodes=len(self.tree.nodes),
            vertices=self.run.graph.n,
            adversary_profit=root.profit,
            collected=root.collected,
            strategy_profit=self.run.clustering.profit(),
            max_tentacle=s_max,
            ratio=ratio,
            epsilon=eps,
            subtrees=stats,
        )


def run_skeleton_game(strategy, core_depth: int, max_rounds: int | None = None,
                      check_lemmas: bool = True) -> AdversaryReport:
    return SkeletonGame(strategy, core_depth, max_rounds, check_lemmas).play()


def validate_cstar(tree: SkeletonTree) -> None:
    """Check that C* is a clique partition covering the whole skeleton graph."""
    view = skeleton_to_graph(tree)
    cliques = cstar_partition(tree, view)
    cl = Clustering.from_sets(view.graph, cliques)  # validates disjoint cliques
    if cl.covered_mask() != (1 << view.graph.n) - 1:
        raise AssertionError("C* does not cover every vertex")
    if cl.profit() != cstar_profit(tree):
        raise AssertionError("C* profit bookkeeping mismatch")
