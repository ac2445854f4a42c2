import math

import pytest
from hypothesis import given, strategies as st

from histcoords.codec import loads_geometry, parse_canonical
from histcoords.errors import EmptyRegionSetError, UnsupportedMeridianError
from histcoords.geodesy import (
    DEFAULT_TABLE,
    FERRO_OFFSET,
    MeridianOffsetTable,
    Region,
    attach_regions,
    convert_geometry,
    convert_point,
    haversine_km,
    regions_from_geojson,
    unwrap_historical,
    wrap,
)
from histcoords.model import CanonicalPoint, DmsAngle, MeridianRef, ModernPoint, PolyChain

from .conftest import ANNOTATIONS, geometries, points, seconds

FERRO = MeridianRef("Ferro")


def test_ferro_offset_identity():
    paris_greenwich = 2 + 20 / 60 + 14.025 / 3600
    assert abs(FERRO_OFFSET - (20 - paris_greenwich)) <= 1e-9
    assert abs(FERRO_OFFSET - 17.6627708333) <= 1e-9
    assert MeridianOffsetTable.rounded().offset(FERRO) == 17.66


def test_aahus():
    p = convert_point(parse_canonical("52 10' N 24 36' E"))
    assert abs(p.longitude - 6.9372291667) <= 1e-6
    assert p.latitude == DmsAngle(52, 10, None, "N").to_decimal()
    rounded = convert_point(parse_canonical("52 10' N 24 36' E"), FERRO, MeridianOffsetTable.rounded())
    assert abs(rounded.longitude - 6.94) <= 5e-3


def test_wraps_past_180():
    p = convert_point(CanonicalPoint(None, DmsAngle(200, hemisphere="E")))
    assert abs(p.longitude - -177.6627708) <= 1e-6


def test_latitude_only():
    p = convert_point(parse_canonical("19 40' N"))
    assert p.longitude is None
    assert abs(p.latitude - 19.6666667) <= 1e-6


def test_paris_reference():
    p = convert_point(CanonicalPoint(None, DmsAngle(0, hemisphere="E")), MeridianRef("Paris"))
    assert abs(p.longitude - 2.3372291667) <= 1e-9


def test_rectangle():
    g = convert_geometry(loads_geometry(ANNOTATIONS["abissinie"]))
    (lo, hi), = g.parts
    assert (lo.latitude, hi.latitude) == (6, 20)
    assert abs(lo.longitude - 30.3372292) <= 1e-6
    assert abs(hi.longitude - 47.3372292) <= 1e-6
    assert not g.crosses_antimeridian


def test_chain_structure():
    g = convert_geometry(loads_geometry(ANNOTATIONS["amur"]))
    assert g.kind == "pchain" and len(g.parts) == 2
    assert g.parts[0][0].latitude is None


def test_unsupported_meridians():
    g = loads_geometry("""[["26 33' N 4 0' E"]]""")
    for name in ("Pékin", "Londres", "Lund", "équateur"):
        with pytest.raises(UnsupportedMeridianError):
            convert_geometry(g, [MeridianRef.parse(name)])
    with pytest.raises(UnsupportedMeridianError):
        convert_point(parse_canonical("26 33' N"), MeridianRef("Pékin"))
    with pytest.raises(UnsupportedMeridianError):
        convert_geometry(g, [MeridianRef("Paris"), FERRO])


def test_overrides():
    table = DEFAULT_TABLE.with_overrides({"Pekin": -116.4})
    p = convert_point(parse_canonical("26 33' N 4 0' E"), MeridianRef("Pékin"), table)
    assert abs(p.longitude - 120.4) <= 1e-9


def test_antimeridian_flag():
    g = convert_geometry(loads_geometry("[['10 N 180 E', '20 N 190 E']]"))
    assert not g.crosses_antimeridian
    g = convert_geometry(loads_geometry("[['10 N 190 E', '20 N 200 E']]"))
    assert g.crosses_antimeridian


@given(st.floats(-1e6, 1e6, allow_nan=False))
def test_wrap_properties(x):
    w = wrap(x)
    assert -180 < w <= 180
    assert wrap(w) == w
    assert abs(wrap(x + 360) - w) <= 1e-9 or abs(abs(wrap(x + 360) - w) - 360) <= 1e-9


@pytest.mark.parametrize("x, w", [(180, 180), (-180, 180), (540, 180), (0, 0), (360, 0), (181, -179), (-181, 179)])
def test_wrap_examples(x, w):
    assert wrap(x) == w


@given(st.integers(0, 359), st.integers(0, 59), seconds)
def test_round_trip(deg, minutes, sec):
    angle = DmsAngle(deg, minutes, sec, "E")
    converted = convert_point(CanonicalPoint(None, angle)).longitude
    back = unwrap_historical(converted)
    lam = angle.to_decimal()
    assert min(abs(back - lam), abs(abs(back - lam) - 360)) <= 1e-9


@given(points())
def test_latitude_preserved(p):
    m = convert_point(p)
    if p.latitude is None:
        assert m.latitude is None
    else:
        assert m.latitude == p.latitude.to_decimal()
    assert (m.longitude is None) == (p.longitude is None)


@given(geometries)
def test_structure_preserved(g):
    from histcoords.codec import encode_geometry

    m = convert_geometry(g)
    assert m.kind == g.kind
    nested = encode_geometry(g)
    body = nested[1:] if m.kind in ("pchain", "subart", "multsrc", "misc") else nested
    assert [len(x) for x in body] == [len(x) for x in m.parts]


# -- regions -------------------------------------------------------------------


def box(label, lat0, lat1, lon0, lon1):
    ring = [[lon0, lat0], [lon1, lat0], [lon1, lat1], [lon0, lat1], [lon0, lat0]]
    return {"type": "Feature", "properties": {"name": label}, "geometry": {"type": "Polygon", "coordinates": [ring]}}


TOY = {"type": "FeatureCollection", "features": [
    box("Europe", 35, 70, -10, 40),
    box("Africa", -35, 35, -20, 50),
]}


def test_attach_toy():
    regions = regions_from_geojson(TOY)
    pts = [ModernPoint(52.17, 6.94), ModernPoint(0, 20), ModernPoint(80, 0), ModernPoint(52.0)]
    labels = [label for _, label in attach_regions(pts, regions)]
    assert labels == ["Europe", "Africa", "Europe", None]


def test_attach_tie_break():
    regions = [
        Region("b", (([(10.0, 0.0), (11.0, 0.0), (11.0, 1.0)],),)),
        Region("a", (([(-10.0, 0.0), (-11.0, 0.0), (-11.0, 1.0)],),)),
    ]
    (_, label), = attach_regions([ModernPoint(0.0, 0.0)], regions)
    assert label == "a"


def test_attach_boundary_and_holes():
    outer = [(0.0, 0.0), (10.0, 0.0), (10.0, 10.0), (0.0, 10.0)]
    hole = [(4.0, 4.0), (6.0, 4.0), (6.0, 6.0), (4.0, 6.0)]
    donut = Region("donut", ((outer, hole),))
    assert donut.contains(0.0, 5.0)
    assert not donut.contains(5.0, 5.0)
    assert donut.contains(2.0, 2.0)


def test_attach_empty():
    with pytest.raises(EmptyRegionSetError):
        attach_regions([ModernPoint(0, 0)], [])


def test_multipolygon():
    data = {"type": "FeatureCollection", "features": [{
        "type": "Feature", "properties": {"iso": "X"},
        "geometry": {"type": "MultiPolygon", "coordinates": [
            [[[0, 0], [1, 0], [1, 1], [0, 1], [0, 0]]],
            [[[5, 5], [6, 5], [6, 6], [5, 6], [5, 5]]],
        ]}}]}
    region, = regions_from_geojson(data, "iso")
    assert region.contains(5.5, 5.5) and region.contains(0.5, 0.5) and not region.contains(3, 3)


def test_haversine():
    # a quarter of a great circle
    assert abs(haversine_km(0, 0, 0, 90) - math.pi / 2 * 6371.0088) <= 1e-9
    assert haversine_km(52, 7, 52, 7) == 0
