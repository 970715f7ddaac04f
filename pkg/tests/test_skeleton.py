import pytest

from cliquestream.skeleton import (
    AdversaryProtocolError,
    AlwaysCollectStrategy,
    LemmaViolationError,
    SkeletonGame,
    SkeletonTree,
    cstar_partition,
    cstar_paths,
    cstar_profit,
    run_skeleton_game,
    skeleton_to_graph,
    subtree_report,
    validate_cstar,
)
from cliquestream.strategies import GreedyStrategy


def tentacle_tree(length: int, core_depth: int = 0) -> SkeletonTree:
    t = SkeletonTree(core_depth)
    node = 0
    for _ in range(length):
        node = t.add_left(node)
    return t


def test_single_root_graph():
    view = skeleton_to_graph(SkeletonTree(2))
    assert view.graph.n == 2 and view.graph.edge_count == 1
    assert view.cross_pair(0) == (0, 1)


def test_one_core_extension_appends_two_triangles():
    t = SkeletonTree(2)
    t.extend(0)
    view = skeleton_to_graph(t)
    g = view.graph
    # 6 vertices; 3 cross edges + 4 upward edges
    assert g.n == 6 and g.edge_count == 7
    rl, rr = view.cross_pair(0)
    for child, anchor in ((1, rl), (2, rr)):
        cl, cr = view.cross_pair(child)
        assert g.is_clique([anchor, cl, cr])  # the appended triangle
        other = rr if anchor == rl else rl
        assert not g.has_edge(cl, other) and not g.has_edge(cr, other)


def test_tentacle_extension_appends_triangle_and_whisker():
    t = SkeletonTree(0)
    t.extend(0)
    view = skeleton_to_graph(t)
    g = view.graph
    rl, rr = view.cross_pair(0)
    cl, cr = view.cross_pair(1)
    w = view.whisker_vertex[0]
    assert g.is_clique([rl, cl, cr])
    assert g.has_edge(w, rr) and g.degree(w) == 1
    assert g.n == 5 and g.edge_count == 5


def test_cstar_examples():
    assert cstar_profit(SkeletonTree(1)) == 1  # single cross edge
    t = SkeletonTree(2)
    t.extend(0)
    assert cstar_profit(t) == 6  # two triangles
    paths, whiskers = cstar_paths(t)
    assert sorted(p.clique_size for p in paths) == [3, 3] and not whiskers
    t = tentacle_tree(2)
    assert cstar_profit(t) == 8  # one 4-clique plus two whisker pairs
    sizes = sorted(len(c) for c in cstar_partition(t))
    assert sizes == [2, 2, 4]
    validate_cstar(t)


def test_cstar_covers_every_vertex():
    t = SkeletonTree(2)
    t.extend(0)
    t.extend(1)
    t.extend(4)  # grow one grandchild deeper
    t.extend(5)  # depth 3 >= D: tentacle move
    validate_cstar(t)


def test_tentacle_bases_are_tight():
    for s in (1, 2):
        t = tentacle_tree(s)
        collected = set(range(s))  # all but the final leaf
        stats = {r.node: r for r in subtree_report(t, collected)}
        root = stats[0]
        assert (root.profit, root.collected) == ((s * s + 5 * s + 2) // 2, s)
        assert root.profit + 2 * s == 6 * root.collected  # tight exactly at s=1,2
    t = tentacle_tree(3)
    root = subtree_report(t, {0, 1, 2})[0]
    assert root.profit + 2 * 3 > 6 * root.collected  # slack reopens at s=3


def test_subtree_report_flags_inconsistent_history():
    with pytest.raises(LemmaViolationError):
        subtree_report(SkeletonTree(2), {0})  # collected but never extended


def test_restriction_equals_reconstruction():
    # profit of C* restricted to a subtree equals C* rebuilt from that subtree
    game = SkeletonGame(AlwaysCollectStrategy(), 2, max_rounds=9)
    game.play()
    tree = game.tree
    stats = {r.node: r for r in subtree_report(tree, game.responded, check=False)}

    def clone(v):
        sub = SkeletonTree(max(0, tree.D - tree.nodes[v].depth))
        mapping = {v: 0}
        stack = [v]
        while stack:
            u = stack.pop()
            node = tree.nodes[u]
            if node.left is not None:
                mapping[node.left] = sub.add_left(mapping[u])
                stack.append(node.left)
            if node.right is not None:
                mapping[node.right] = sub.add_right(mapping[u])
                stack.append(node.right)
        return sub

    for v in range(0, len(tree.nodes), 7):
        assert cstar_profit(clone(v)) == stats[v].profit


def test_game_against_always_collect_shallow():
    report = run_skeleton_game(AlwaysCollectStrategy(), 2, max_rounds=2)
    # only the core's first two levels exist: every subtree is shallow
    assert all(s.shallow for s in report.subtrees)
    assert report.adversary_profit >= 6 * report.collected
    report_greedy = run_skeleton_game(GreedyStrategy(), 2, max_rounds=2)
    assert report_greedy.adversary_profit == report.adversary_profit


def test_game_first_move():
    report = run_skeleton_game(AlwaysCollectStrategy(), 3, max_rounds=1)
    assert (report.adversary_profit, report.collected) == (6, 1)
    assert report.ratio.as_fraction() == 6


def test_game_idle_strategy_stops_immediately():
    class Idle:
        name = "idle"

        def respond(self, run, ev):
            pass

    report = run_skeleton_game(Idle(), 3)
    assert report.stopped_because == "idle"
    assert report.collected == 0 and report.ratio.is_infinite
    assert report.epsilon is None


def test_game_budget_and_ratio_floor():
    for depth in (2, 3):
        game = SkeletonGame(AlwaysCollectStrategy(), depth, max_rounds=depth + 8)
        report = game.play()
        assert report.stopped_because == "budget"
        assert report.epsilon is not None
        assert report.ratio.as_float() >= 6 - report.epsilon - 1e-9
        validate_cstar(game.tree)
        # the game's incremental graph equals the static reconstruction
        view = skeleton_to_graph(game.tree)
        assert view.events == game.run.graph.events()
        assert view.left_vertex == game.left_vertex
        assert view.whisker_vertex == game.whisker_vertex


def test_game_report_serializes():
    report = run_skeleton_game(AlwaysCollectStrategy(), 2, max_rounds=4)
    doc = report.to_dict()
    assert doc["collected"] == report.collected
    assert len(doc["subtrees"]) == report.nodes


def test_tree_protocol_errors():
    t = SkeletonTree(1)
    t.extend(0)
    with pytest.raises(AdversaryProtocolError):
        t.extend(0)  # not a leaf anymore
    with pytest.raises(AdversaryProtocolError):
        t.add_left(0)
    with pytest.raises(AdversaryProtocolError):
        t.add_right(1)  # depth 1 >= D: tentacle nodes take left children only
    with pytest.raises(ValueError):
        SkeletonTree(-1)


def test_malformed_core_node_rejected():
    t = SkeletonTree(2)
    t.add_left(0)  # core node left dangling without its right child
    with pytest.raises(ValueError):
        cstar_profit(t)
