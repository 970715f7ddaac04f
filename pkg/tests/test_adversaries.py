from fractions import Fraction

import pytest

from cliquestream.adversaries import (
    greedy_nemesis,
    mincc_nemesis,
    occ_nemesis,
    run_mincc_game,
)
from cliquestream.analysis import occ_lb_formula
from cliquestream.graph import parse_instance, format_instance
from cliquestream.solver import max_clique_partition
from cliquestream.strategies import GAMMA_STAR, GreedyStrategy, OCCStrategy, OnlineRun, run_online
from cliquestream.trace import MIN


def test_greedy_nemesis_shape():
    inst = greedy_nemesis(8)
    g = inst.graph()
    assert g.n == 8 and g.edge_count == 15  # k^2 - 1 at k = 4
    inst.check_reference()
    assert inst.final_opt() == 12
    assert greedy_nemesis(7).final_opt() == 9
    assert greedy_nemesis(9).final_opt() == 16
    with pytest.raises(ValueError):
        greedy_nemesis(3)


def test_greedy_nemesis_analytic_matches_exact():
    for n in range(4, 13):
        inst = greedy_nemesis(n)
        assert inst.final_opt() == max_clique_partition(inst.graph()).value


def test_greedy_nemesis_ratios():
    for n in range(4, 13):
        trace = run_online(GreedyStrategy(), greedy_nemesis(n).events)
        assert trace.final_ratio().as_fraction() == Fraction(n // 2)


def test_occ_nemesis_batches():
    inst = occ_nemesis(3.303, 3)
    assert inst.meta["batch_edges"] == [1, 4, 11, 37]
    inst.check_reference()
    inst = occ_nemesis(GAMMA_STAR, 4)
    assert inst.meta["batch_edges"] == [1, 4, 11, 37, 119]
    inst.check_reference()


def test_occ_nemesis_trigger_timing():
    inst = occ_nemesis(GAMMA_STAR, 4)
    occ = OCCStrategy()
    run = OnlineRun(occ)
    for ev in inst.events:
        run.step(ev)
    assert [p.step for p in occ.phase_log] == inst.meta["batch_ends"]
    assert [p.delta for p in occ.phase_log] == inst.meta["batch_edges"]
    # profit after phase j is the sum of batch edge counts so far
    assert run.clustering.profit() == sum(inst.meta["batch_edges"])


def test_occ_nemesis_plain_ratio_tracks_formula():
    inst = occ_nemesis(GAMMA_STAR, 5)
    trace = run_online(
        OCCStrategy(), inst.events, opt_mode="analytic", analytic_opt=inst.analytic_opt
    )
    target = GAMMA_STAR * (GAMMA_STAR + 3) / (GAMMA_STAR - 1)
    assert abs(trace.worst().ratio.as_float() - target) <= 0.1 * target


def test_occ_nemesis_triangle_variant():
    gamma = 2.7  # middle regime of the lower-bound formula
    inst = occ_nemesis(gamma, 6, variant="triangle")
    inst.check_reference()
    m = inst.meta["batch_edges"]
    occ = OCCStrategy(gamma=gamma)
    trace = run_online(
        occ, inst.events, opt_mode="analytic", analytic_opt=inst.analytic_opt
    )
    # leftover edges keep the final batch's internal profit at exactly m_j
    assert [p.delta for p in occ.phase_log] == m
    assert [p.step for p in occ.phase_log] == inst.meta["batch_ends"]
    target = occ_lb_formula(gamma)
    assert abs(trace.worst().ratio.as_float() - target) <= 0.1 * target


def test_occ_nemesis_validation():
    with pytest.raises(ValueError):
        occ_nemesis(1.0, 3)
    with pytest.raises(ValueError):
        occ_nemesis(2.0, 0)
    with pytest.raises(ValueError):
        occ_nemesis(2.0, 3, variant="hexagon")


def test_mincc_nemesis_against_eager_greedy():
    inst, trace = run_mincc_game(lambda: GreedyStrategy(nonprocrastinate=True), 0, 10)
    assert inst.meta["collected_pair"] == 1
    last = trace.steps[-1]
    assert (last.strategy_value, last.opt_value) == (8, 1)  # exactly (n-2, 1)
    assert trace.final_ratio().as_fraction() == 8
    inst.check_reference()


def test_mincc_nemesis_beta1():
    inst, trace = run_mincc_game(lambda: GreedyStrategy(nonprocrastinate=True), 1, 20)
    assert trace.objective == MIN
    last = trace.steps[-1]
    assert last.opt_value == 1
    assert last.strategy_value >= 20 - 2 * 1 - 2  # n - 2*beta - 2


def test_mincc_nemesis_early_stop():
    class NeverMerge:
        name = "never"

        def respond(self, run, ev):
            pass

    inst, trace = run_mincc_game(lambda: NeverMerge(), 0, 10)
    assert inst.meta["collected_pair"] is None
    assert inst.n == 2  # stops right after the matching prefix
    assert trace.worst().ratio.is_infinite


def test_mincc_analytic_matches_exact_for_small_n():
    inst = mincc_nemesis(0, 9, 1)
    exact = run_online(
        GreedyStrategy(nonprocrastinate=True), inst.events, objective=MIN, opt_mode="exact"
    )
    analytic = run_online(
        GreedyStrategy(nonprocrastinate=True), inst.events, objective=MIN,
        opt_mode="analytic", analytic_opt=inst.analytic_opt,
    )
    assert [s.opt_value for s in exact.steps] == [s.opt_value for s in analytic.steps]
    assert [s.ratio for s in exact.steps] == [s.ratio for s in analytic.steps]


def test_mincc_nemesis_validation():
    with pytest.raises(ValueError):
        mincc_nemesis(-1, 10, 1)
    with pytest.raises(ValueError):
        mincc_nemesis(2, 8, 1)  # needs n > 3*beta + 2
    with pytest.raises(ValueError):
        mincc_nemesis(0, 10, 5)


def test_instances_round_trip_through_files():
    for inst in (greedy_nemesis(9), occ_nemesis(GAMMA_STAR, 2), mincc_nemesis(1, 12, 2)):
        text = format_instance(inst.events)
        assert parse_instance(text) == inst.events
