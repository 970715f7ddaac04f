"""Online graph model and merge-only clustering state.

Vertices are identified by their 0-based arrival position.  Adjacency is kept
as one bitmask per vertex, which makes clique checks (the hot precondition of
every merge) a couple of integer ops.  Human-facing output (instance files,
reports) renders vertex ids 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass


class GraphError(ValueError):
    """Malformed arrival: out-of-order vertex id or bad back-neighbor."""


class ClusteringError(ValueError):
    """Illegal clustering operation (duplicate singleton, non-clique merge, ...)."""


class InstanceFormatError(ValueError):
    """Instance file does not follow the `v <id> : <neighbors>` format."""


@dataclass(frozen=True)
class ArrivalEvent:
    """One online step: vertex `vertex` arrives with edges to earlier vertices.

    Back neighbors are stored as a bitmask so that dense generated instances
    (complete bipartite cross edges between batches) stay compact.
    """

    vertex: int
    back_mask: int

    def __post_init__(self):
        if self.back_mask < 0 or self.back_mask >> self.vertex:
            raise GraphError(f"vertex {self.vertex}: back neighbors must be earlier arrivals")

    @property
    def back_neighbors(self) -> frozenset[int]:
        return frozenset(bits(self.back_mask))


def mask_of(ids) -> int:
    """Bitmask with the given (non-negative) indices set."""
    ids = list(ids)
    if not ids:
        return 0
    buf = bytearray(max(ids) // 8 + 1)
    for u in ids:
        buf[u >> 3] |= 1 << (u & 7)
    return int.from_bytes(buf, "little")


def event(vertex: int, *back_neighbors: int) -> ArrivalEvent:
    return ArrivalEvent(vertex, mask_of(back_neighbors))


class OrderedGraph:
    """Undirected graph over vertices 0..n-1 in arrival order."""

    __slots__ = ("_adj", "_m")

    def __init__(self):
        self._adj: list[int] = []
        self._m = 0

    @property
    def n(self) -> int:
        return len(self._adj)

    @property
    def edge_count(self) -> int:
        return self._m

    def add_vertex(self, ev: ArrivalEvent) -> None:
        if ev.vertex != self.n:
            raise GraphError(f"expected arrival of vertex {self.n}, got {ev.vertex}")
        bit = 1 << ev.vertex
        for u in bits(ev.back_mask):
            self._adj[u] |= bit
        self._adj.append(ev.back_mask)
        self._m += ev.back_mask.bit_count()

    def adjacency_mask(self, v: int) -> int:
        return self._adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self._adj[v].bit_count()

    def neighbors(self, v: int) -> list[int]:
        return bits(self._adj[v])

    def is_clique(self, vertices) -> bool:
        """True iff all pairs among `vertices` are adjacent (singletons vacuously)."""
        vs = list(vertices)
        for v in vs:
            if v >= self.n:
                raise GraphError(f"unknown vertex {v}")
        mask = 0
        for v in vs:
            mask |= 1 << v
        for v in vs:
            rest = mask & ~(1 << v)
            if rest & ~self._adj[v]:
                return False
        return True

    def is_clique_mask(self, mask: int) -> bool:
        for v in bits(mask):
            if mask & ~self._adj[v] & ~(1 << v):
                return False
        return True

    @classmethod
    def from_events(cls, events) -> "OrderedGraph":
        g = cls()
        for ev in events:
            g.add_vertex(ev)
        return g

    def events(self) -> list[ArrivalEvent]:
        """Reconstruct the arrival sequence (edges attributed to the later endpoint)."""
        return [ArrivalEvent(v, self._adj[v] & ((1 << v) - 1)) for v in range(self.n)]


def bits(mask: int) -> list[int]:
    """Indices of set bits, ascending."""
    out = []
    while mask:
        b = mask & -mask
        out.append(b.bit_length() - 1)
        mask ^= b
    return out


class Clustering:
    """Partition of revealed vertices into cliques; only singleton/merge allowed.

    Cluster ids double as creation order: they are assigned 0, 1, 2, ... and a
    merge keeps the smaller (older) id.  The co-cluster relation can therefore
    only coarsen over a run.
    """

    __slots__ = ("_members", "_cluster_of", "_next_id", "_profit")

    def __init__(self):
        self._members: dict[int, int] = {}     # cluster id -> vertex bitmask
        self._cluster_of: dict[int, int] = {}  # vertex -> cluster id
        self._next_id = 0
        self._profit = 0

    @property
    def next_cluster_id(self) -> int:
        return self._next_id

    def singleton(self, v: int) -> int:
        if v in self._cluster_of:
            raise ClusteringError(f"vertex {v} already clustered")
        cid = self._next_id
        self._next_id += 1
        self._members[cid] = 1 << v
        self._cluster_of[v] = cid
        return cid

    def merge(self, graph: OrderedGraph, c1: int, c2: int) -> int:
        if c1 == c2:
            raise ClusteringError("cannot merge a cluster with itself")
        try:
            m1, m2 = self._members[c1], self._members[c2]
        except KeyError as exc:
            raise ClusteringError(f"unknown cluster id {exc.args[0]}") from None
        small, large = (m1, m2) if m1.bit_count() <= m2.bit_count() else (m2, m1)
        for v in bits(small):
            if large & ~graph.adjacency_mask(v):
                raise ClusteringError(f"merge of clusters {c1},{c2} does not induce a clique")
        keep, drop = (c1, c2) if c1 < c2 else (c2, c1)
        self._profit += m1.bit_count() * m2.bit_count()
        self._members[keep] = m1 | m2
        del self._members[drop]
        for v in bits(self._members[keep]):
            self._cluster_of[v] = keep
        return keep

    def cluster_of(self, v: int) -> int | None:
        return self._cluster_of.get(v)

    def co_clustered(self, u: int, v: int) -> bool:
        cu = self._cluster_of.get(u)
        return cu is not None and cu == self._cluster_of.get(v)

    def members_mask(self, cid: int) -> int:
        return self._members[cid]

    def members(self, cid: int) -> list[int]:
        return bits(self._members[cid])

    def size(self, cid: int) -> int:
        return self._members[cid].bit_count()

    def cluster_ids(self) -> list[int]:
        """Cluster ids in creation order."""
        return sorted(self._members)

    def as_sets(self) -> list[frozenset[int]]:
        return [frozenset(bits(self._members[cid])) for cid in self.cluster_ids()]

    def covered_mask(self) -> int:
        mask = 0
        for m in self._members.values():
            mask |= m
        return mask

    @property
    def num_clusters(self) -> int:
        return len(self._members)

    def profit(self) -> int:
        """Total number of intra-cluster edges: sum of |C|*(|C|-1)/2."""
        return self._profit

    def cost(self, graph: OrderedGraph) -> int:
        """Edges outside the clusters.  Requires the clustering to cover the graph."""
        if self.covered_mask() != (1 << graph.n) - 1:
            raise ClusteringError("cost undefined: clustering does not cover all revealed vertices")
        return graph.edge_count - self._profit

    @classmethod
    def from_sets(cls, graph: OrderedGraph, sets, validate: bool = True) -> "Clustering":
        """Bulk-build a clustering (used for reference clusterings), then validate once."""
        c = cls()
        for s in sets:
            vs = sorted(s)
            if not vs:
                raise ClusteringError("empty cluster")
            cid = c.singleton(vs[0])
            for v in vs[1:]:
                nid = c.singleton(v)
                # bypass merge's pair checks; validated below
                c._profit += c._members[cid].bit_count()
                c._members[cid] |= c._members.pop(nid)
                c._cluster_of[v] = cid
        if validate:
            validate_clustering(graph, c)
        return c


def validate_clustering(graph: OrderedGraph, clustering: Clustering, require_cover: bool = False) -> None:
    """Debug validator: disjoint cliques, consistent vertex map, exact profit."""
    seen = 0
    profit = 0
    for cid in clustering.cluster_ids():
        mask = clustering.members_mask(cid)
        if mask == 0:
            raise ClusteringError(f"cluster {cid} is empty")
        if seen & mask:
            raise ClusteringError(f"cluster {cid} overlaps another cluster")
        seen |= mask
        if not graph.is_clique_mask(mask):
            raise ClusteringError(f"cluster {cid} does not induce a clique")
        for v in bits(mask):
            if clustering.cluster_of(v) != cid:
                raise ClusteringError(f"vertex map inconsistent at {v}")
        k = mask.bit_count()
        profit += k * (k - 1) // 2
    if profit != clustering.profit():
        raise ClusteringError(f"profit drifted: cached {clustering.profit()}, actual {profit}")
    if require_cover and seen != (1 << graph.n) - 1:
        raise ClusteringError("clustering does not cover all revealed vertices")


# ---------------------------------------------------------------------------
# Instance file format: one arrival per line, `v <id> : <earlier neighbors>`,
# ids 1-based, neighbor lists sorted ascending in canonical form.
# ---------------------------------------------------------------------------

def format_instance(events) -> str:
    lines = []
    for ev in events:
        ns = " ".join(str(u + 1) for u in bits(ev.back_mask))
        lines.append(f"v {ev.vertex + 1} :" + (f" {ns}" if ns else ""))
    return "\n".join(lines) + ("\n" if lines else "")


def parse_instance(text: str) -> list[ArrivalEvent]:
    events = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) < 3 or tokens[0] != "v" or tokens[2] != ":":
            raise InstanceFormatError(f"line {lineno}: expected `v <id> : <neighbors>`")
        try:
            vid = int(tokens[1])
            back = [int(t) for t in tokens[3:]]
        except ValueError:
            raise InstanceFormatError(f"line {lineno}: non-integer id") from None
        if vid != len(events) + 1:
            raise InstanceFormatError(f"line {lineno}: vertex ids must be 1..n in order, got {vid}")
        for u in back:
            if not 1 <= u < vid:
                raise InstanceFormatError(f"line {lineno}: neighbor {u} not an earlier vertex")
        if len(set(back)) != len(back):
            raise InstanceFormatError(f"line {lineno}: duplicate neighbor")
        events.append(ArrivalEvent(vid - 1, mask_of(u - 1 for u in back)))
    return events


def write_instance(path, events) -> None:
    with open(path, "w") as fh:
        fh.write(format_instance(events))


def read_instance(path) -> list[ArrivalEvent]:
    with open(path) as fh:
        return parse_instance(fh.read())
