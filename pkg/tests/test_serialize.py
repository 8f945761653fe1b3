import json

import numpy as np
import pytest
from hypothesis import given

from qsb import Frame, HoloSeries, ParseError, SliceSeries
from qsb.serialize import (
    dumps_report,
    format_float,
    frame_from_json,
    frame_to_json,
    holo_from_json,
    holo_to_json,
    load_series,
    parse_frame_spec,
    parse_quaternion,
    slice_from_json,
    slice_to_json,
)
from strategies import frames, holo_series, slice_series


@pytest.mark.parametrize("spec, i", [("i=e1", [1, 0, 0]), ("i=e3", [0, 0, 1]), ("i=-e2", [0, -1, 0]), ("i = 0,3,4", [0, 0.6, 0.8])])
def test_frame_specs(spec, i):
    f = parse_frame_spec(spec)
    assert np.allclose(f.i.vector, i, atol=1e-15)
    M = np.array([f.i.vector, f.j.vector, f.k.vector])
    assert np.allclose(M @ M.T, np.eye(3), atol=1e-14)


@pytest.mark.parametrize("spec", ["", "j=e1", "i=e4", "i=1,2", "i=0,0,0", "i=a,b,c"])
def test_bad_frame_specs(spec):
    with pytest.raises(ParseError):
        parse_frame_spec(spec)


def test_parse_quaternion():
    assert parse_quaternion("1,2,3,4").isclose([1, 2, 3, 4], 0)
    for bad in ("1,2,3", "1,x,3,4"):
        with pytest.raises(ParseError):
            parse_quaternion(bad)


@given(frames())
def test_frame_round_trip(frame):
    back = frame_from_json(json.loads(json.dumps(frame_to_json(frame))))
    assert np.allclose(np.asarray(back.basis), np.asarray(frame.basis), atol=0)


@given(holo_series(6))
def test_holo_round_trip(f):
    g = holo_from_json(json.loads(dumps_report(holo_to_json(f))))
    assert np.array_equal(g.coeffs, f.coeffs) and g.radius == f.radius


@given(slice_series(6))
def test_slice_round_trip(F):
    G = slice_from_json(json.loads(dumps_report(slice_to_json(F))))
    assert np.array_equal(G.coeffs, F.coeffs)


def test_load_series_dispatch(tmp_path):
    p = tmp_path / "a.json"
    p.write_text(json.dumps({"coeffs": [[1, 0, 0, 0]]}))
    assert isinstance(load_series(p), SliceSeries)
    p.write_text(json.dumps({"frame": frame_to_json(Frame.standard()), "coeffs": [[0, 0, 0, 0], [1, 0, 0, 0]]}))
    assert isinstance(load_series(p), HoloSeries)
    for text in ("[1, 2]", "{", '{"coeffs": [[1, 2]]}', '{"coeffs": []}'):
        p.write_text(text)
        with pytest.raises(ParseError):
            load_series(p)
    with pytest.raises(ParseError):
        load_series(tmp_path / "missing.json")


def test_format_float():
    assert format_float(0.1) == "0.10000000000000001"
    assert format_float(float("nan")) == "null"
    assert float(format_float(np.pi)) == np.pi


def test_dumps_report_is_deterministic_json():
    obj = {"b": 1, "a": [0.1, {"x": True, "y": None}], "c": np.float64(2.5), "d": {}, "e": []}
    text = dumps_report(obj)
    assert text.endswith("\n")
    assert list(json.loads(text)) == ["b", "a", "c", "d", "e"]
    assert json.loads(text)["a"][0] == 0.1
    assert dumps_report(obj) == text
