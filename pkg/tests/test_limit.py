import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fullmdim import Certificate, Construction, Window, canonical_point, emit_certificate, load_certificate, point_enclosure, window_pattern
from fullmdim.dyadic import UNIT, DyadicInterval, box_contains
from fullmdim.errors import CertificateError, CertificateInvariantError, VersionMismatchError, WindowCapError
from fullmdim.limit import interval_from_json

F = Fraction
P = (UNIT,)
LOW, HIGH = (DyadicInterval(0, 1, 1),), (DyadicInterval(1, 2, 1),)


def test_canonical_point_examples(paper2):
    assert all(canonical_point(0, k, paper2) == (0,) for k in range(3))
    assert canonical_point(7, 1, paper2) == (F(1, 2),)
    assert canonical_point(9961472, 2, paper2) == (0,)
    assert canonical_point(9961472 + 7, 2, paper2) == (F(1, 2),)


_CTX = Construction("paper", 2)


@given(st.integers(-(2**200), 2**200))
def test_canonical_point_inside_box(g):
    for k in range(3):
        assert box_contains(_CTX.resolve(g, k), canonical_point(g, k, _CTX))


def test_point_enclosure(paper2):
    # inside [0, N_2) the value is exact; outside only the box is known
    assert point_enclosure(7, paper2) == (F(1, 2),)
    assert point_enclosure(10485760 + 7, paper2) == HIGH


def test_window_pattern_examples(paper2):
    block = [P] * 6 + [LOW, HIGH]
    assert window_pattern(Window((0,), (8,)), 1, paper2) == block
    assert window_pattern(Window((0,), (8,)), 2, paper2) == block
    assert window_pattern(Window((8,), (16,)), 1, paper2) == block


def test_window_pattern_translation(paper2):
    W = Window((9961470,), (9961490,))
    for v in (1, -3, 2**100 + 1):
        shifted = W.translate((10485760 * v,))
        assert window_pattern(shifted, 2, paper2) == window_pattern(W, 2, paper2)


def test_window_cap(paper2):
    with pytest.raises(WindowCapError):
        window_pattern(Window((0,), (2_000_000_000,)), 1, paper2)
    with pytest.raises(WindowCapError):
        window_pattern(Window((0,), (9,)), 1, paper2, cap=8)


def test_interval_json_round_trip():
    iv = DyadicInterval(3, 5, 7)
    assert interval_from_json(iv.to_json()) == iv


# --- certificates -----------------------------------------------------------------


def test_round_trip(tmp_path, paper2):
    cert = Certificate.from_construction(paper2, {"note": {"passed": True}})
    path = emit_certificate(tmp_path / "c.json", cert)
    back = load_certificate(path)
    assert back == cert
    assert back.dumps() == path.read_text()
    data = json.loads(path.read_text())
    assert data["hierarchy"]["sides"] == ["1", "8", "10485760"]
    assert data["schedule"]["r"] == {"1": "1245184"}
    assert data["schedule"]["eta"]["2,2"] == "19/20"
    assert sorted(data) == ["group", "hierarchy", "placement", "results", "schedule", "version"]


def test_round_trip_toy_and_2d(tmp_path):
    for ctx in (Construction("toy", 3), Construction("paper", 2, d=2, d_P=2)):
        cert = Certificate.from_construction(ctx)
        assert load_certificate(emit_certificate(tmp_path / "c.json", cert)) == cert


def _tampered(tmp_path, paper2, edit):
    data = Certificate.from_construction(paper2).to_json()
    edit(data)
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data))
    return path


def test_reject_indivisible_sides(tmp_path, paper2):
    def edit(d):
        d["hierarchy"]["sides"][2] = "10485761"

    with pytest.raises(CertificateInvariantError, match="multiple"):
        load_certificate(_tampered(tmp_path, paper2, edit))


def test_reject_r_below_minimum(tmp_path, paper2):
    def edit(d):
        d["schedule"]["r"]["1"] = "1245183"
        d["schedule"]["l"]["2"] = str(1245183 + 65536)
        d["hierarchy"]["sides"][2] = str(8 * (1245183 + 65536))

    with pytest.raises(CertificateInvariantError, match="proportion"):
        load_certificate(_tampered(tmp_path, paper2, edit))


def test_reject_r_only(tmp_path, paper2):
    def edit(d):
        d["schedule"]["r"]["1"] = "1245183"

    with pytest.raises(CertificateInvariantError, match="proportion"):
        load_certificate(_tampered(tmp_path, paper2, edit))


@pytest.mark.parametrize(
    "path, value, match",
    [
        (("schedule", "l", "1"), "9", "l_1"),
        (("schedule", "V", "2"), "65537", "V_2"),
        (("schedule", "eta", "0,1"), "1/2", "eta"),
        (("placement", "phi"), "gray", "placement"),
        (("schedule", "mode"), "fancy", "mode"),
    ],
)
def test_reject_other_tampering(tmp_path, paper2, path, value, match):
    def edit(d):
        node = d
        for key in path[:-1]:
            node = node[key]
        node[path[-1]] = value

    with pytest.raises(CertificateInvariantError, match=match):
        load_certificate(_tampered(tmp_path, paper2, edit))


def test_version_mismatch(tmp_path, paper2):
    def edit(d):
        d["version"] = 2

    with pytest.raises(VersionMismatchError):
        load_certificate(_tampered(tmp_path, paper2, edit))


def test_malformed(tmp_path, paper2):
    bad = tmp_path / "x.json"
    bad.write_text("{not json")
    with pytest.raises(CertificateError):
        load_certificate(bad)
    with pytest.raises(CertificateError):
        load_certificate(tmp_path / "missing.json")

    def edit(d):
        del d["schedule"]["r"]

    with pytest.raises(CertificateError):
        load_certificate(_tampered(tmp_path, paper2, edit))
