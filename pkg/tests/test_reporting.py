"""Canonical JSON rendering and the trace CSV round trip."""

import json
import math

import numpy as np
import pytest

from ddchaos.reporting import (
    DENSITY_HEADER,
    TRACE_HEADER,
    canonical_json,
    format_trace_csv,
    parse_trace_csv,
    plot_tables,
)
from ddchaos.scenarios import TraceBundle, mask_condition_verdicts


def test_canonical_json_key_order_is_insertion_order():
    a = canonical_json({"b": 1, "a": 2})
    assert a == '{"b":1,"a":2}'


def test_canonical_json_floats_use_twelve_digits():
    assert canonical_json(1.0 / 3.0) == "0.333333333333"
    assert canonical_json(2.0) == "2"
    assert canonical_json(-0.0) == "0"
    assert canonical_json(1.5e-17) == "1.5e-17"


def test_canonical_json_is_deterministic():
    payload = {"x": [1, 2.5, True, None, "s"], "y": {"k": 0.1}}
    assert canonical_json(payload) == canonical_json(payload)
    # stays valid JSON
    assert json.loads(canonical_json(payload)) == {
        "x": [1, 2.5, True, None, "s"],
        "y": {"k": 0.1},
    }


def test_canonical_json_numpy_scalars():
    assert canonical_json(np.bool_(True)) == "true"
    assert canonical_json(np.int64(7)) == "7"
    assert canonical_json(np.float64(0.25)) == "0.25"


def test_canonical_json_bool_is_not_an_int():
    assert canonical_json(True) == "true"
    assert canonical_json([False, 0]) == "[false,0]"


def test_canonical_json_rejects_nonfinite():
    with pytest.raises(ValueError):
        canonical_json(math.nan)
    with pytest.raises(ValueError):
        canonical_json({"v": math.inf})


def test_canonical_json_rejects_nonstring_keys():
    with pytest.raises(TypeError):
        canonical_json({1: "x"})


def _bundle():
    rng = np.random.default_rng(2)
    values = rng.uniform(0.0, 2.0, size=(2, 40))
    return TraceBundle(
        values=values, sigma=1.0, eps_min=0.5, checkpoints=(10, 40)
    )


def test_trace_csv_roundtrip():
    b = _bundle()
    text = format_trace_csv(b)
    lines = text.splitlines()
    assert lines[0] == TRACE_HEADER
    assert text.endswith("\n")
    parsed = parse_trace_csv(text)
    assert np.allclose(parsed["values"], b.values)
    assert tuple(parsed["checkpoints"]) == tuple(b.checkpoints)
    ups, lows = b.upper_masks(), b.lower_masks()
    assert [m.tolist() for m in parsed["upper"]] == [m.tolist() for m in ups]
    assert [m.tolist() for m in parsed["lower"]] == [m.tolist() for m in lows]


def test_trace_csv_reimport_reproduces_verdicts():
    b = _bundle()
    parsed = parse_trace_csv(format_trace_csv(b))
    fresh = mask_condition_verdicts(
        b.upper_masks(), b.lower_masks(), b.checkpoints, 0.25
    )
    reimported = mask_condition_verdicts(
        parsed["upper"], parsed["lower"], parsed["checkpoints"], 0.25
    )
    assert fresh == reimported


def test_trace_csv_has_density_table():
    text = format_trace_csv(_bundle())
    blocks = text.split("\n\n")
    assert len(blocks) == 2
    assert blocks[1].splitlines()[0] == DENSITY_HEADER


def test_parse_rejects_wrong_header():
    with pytest.raises(ValueError):
        parse_trace_csv("a,b,c\n1,2,3\n")


def test_plot_tables_columns():
    b = _bundle()
    text = plot_tables(b)
    lines = text.splitlines()
    assert lines[0] == (
        "k,upper_density_1,upper_density_2,log_height_1,log_height_2"
    )
    assert len(lines) == 1 + b.values.shape[1]


def test_bundle_validates_inputs():
    with pytest.raises(ValueError):
        TraceBundle(
            values=np.array([[np.nan, 1.0]]),
            sigma=1.0,
            eps_min=0.5,
            checkpoints=(2,),
        )
    with pytest.raises(ValueError):
        TraceBundle(
            values=np.ones((1, 4)), sigma=1.0, eps_min=0.5, checkpoints=(9,)
        )
