import json

import pytest

from cliquestream.trace import MAX, MIN, ExactRatio, RatioTrace, TraceStep, step_ratio, trace_from_json


def test_ratio_conventions_max():
    assert step_ratio(3, 12, MAX) == ExactRatio(4, 1)
    assert step_ratio(0, 0, MAX) == ExactRatio(1, 1)
    assert step_ratio(0, 2, MAX).is_infinite
    assert step_ratio(4, 2, MAX) == ExactRatio(1, 2)  # better than optimal prefix value


def test_ratio_conventions_min():
    assert step_ratio(8, 1, MIN) == ExactRatio(8, 1)
    assert step_ratio(0, 0, MIN) == ExactRatio(1, 1)
    assert step_ratio(3, 0, MIN).is_infinite
    with pytest.raises(ValueError):
        step_ratio(1, 1, "sideways")


def test_ratio_normalization_and_order():
    assert ExactRatio.of(6, 4) == ExactRatio(3, 2)
    assert ExactRatio.of(0, 5) == ExactRatio(0, 1)
    inf = ExactRatio.infinite()
    assert ExactRatio(3, 2) < ExactRatio(2, 1) < inf
    assert not inf < inf
    assert ExactRatio(3, 2) <= ExactRatio(3, 2)
    assert inf.as_float() == float("inf")
    with pytest.raises(ZeroDivisionError):
        inf.as_fraction()


def test_ratio_rendering():
    assert ExactRatio(4, 1).decimal() == "4.000"
    assert ExactRatio(1, 3).decimal(6) == "0.333333"
    assert ExactRatio.infinite().decimal() == "inf"


def _toy_trace():
    steps = [
        TraceStep(1, 0, 0, step_ratio(0, 0, MAX)),
        TraceStep(2, 1, 3, step_ratio(1, 3, MAX)),
        TraceStep(3, 2, 6, step_ratio(2, 6, MAX)),
    ]
    return RatioTrace(MAX, steps)


def test_worst_picks_first_maximum():
    trace = _toy_trace()
    assert trace.worst().t == 2  # 3/1 == 6/2, earliest wins


def test_json_round_trip_recomputes_ratios():
    trace = _toy_trace()
    text = trace.to_json({"strategy": "toy", "objective": MAX, "params": {}, "instance": "t", "seed": None})
    again = trace_from_json(text)
    for step in again.steps:
        assert step.ratio == step_ratio(step.strategy_value, step.opt_value, again.objective)
    doc = json.loads(text)
    assert doc["worst"]["ratio"] == "3.000"
    assert text == trace.to_json(json.loads(text)["meta"])  # stable serialization


def test_csv_layout():
    lines = _toy_trace().to_csv().splitlines()
    assert lines[0] == "t,strategy_value,opt_value,ratio"
    assert lines[2] == "2,1,3,3.000000"
