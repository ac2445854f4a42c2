from __future__ import annotations

import json
from pathlib import Path

import pytest
from hypothesis import strategies as st

from histcoords.model import (
    CanonicalPoint,
    DmsAngle,
    Misc,
    MultiSource,
    Point,
    PolyChain,
    Rectangle,
    SubEntries,
)

DATA = Path(__file__).parent / "data"

# annotations for the seven worked examples plus FALSTER and HEGETMATIA, as printed
ANNOTATIONS = {
    "aahus": """[["52 10' N 24 36' E"]]""",
    "agrignon": """[["19 40' N"]]""",
    "abissinie": """[['6 N 48 E', '20 N 65 E']]""",
    "falster": """[["55 50' N 28 50' E", "56 50' N 29 26' E"]]""",
    "amur": """[['pchain'], ['117 E'], ['55 N 152 E']]""",
    "ava": """[['subart'], ['21 N 114 E'], ["33 N 151 10' E"], ["35 20' N 159 E"]]""",
    "hegetmatia": """[['multsrc'], ['50 N 39 40\\' 11" E'], ["51 55' N 33 50' E"]]""",
}


@pytest.fixture(scope="session")
def worked_entries():
    from histcoords.model import Entry

    with open(DATA / "worked_examples.json", encoding="utf-8") as fh:
        return {r["id"]: Entry(r["id"], r["head"], r["text"]) for r in json.load(fh)}


# -- hypothesis strategies ----------------------------------------------------

seconds = st.one_of(
    st.integers(0, 59),
    st.decimals(min_value=0, max_value="59.999", places=3, allow_nan=False).map(float),
)


@st.composite
def angles(draw, hemispheres="NSEW"):
    hemi = draw(st.sampled_from(hemispheres))
    limit = 90 if hemi in "NS" else 360
    deg = draw(st.integers(0, limit))
    if deg == limit:
        return DmsAngle(deg, draw(st.sampled_from([None, 0])), None, hemi)
    minutes = draw(st.one_of(st.none(), st.integers(0, 59)))
    sec = draw(seconds) if minutes is not None and draw(st.booleans()) else None
    return DmsAngle(deg, minutes, sec, hemi)


@st.composite
def points(draw, complete=False):
    lat = draw(angles("NS"))
    lon = draw(angles("EW"))
    if complete:
        return CanonicalPoint(lat, lon)
    which = draw(st.sampled_from(["both", "lat", "lon"]))
    return CanonicalPoint(lat if which != "lon" else None, lon if which != "lat" else None)


@st.composite
def rectangles(draw):
    return Rectangle.from_corners(draw(points(complete=True)), draw(points(complete=True)))[0]


items = st.one_of(points().map(Point), rectangles())

geometries = st.one_of(
    points().map(Point),
    rectangles(),
    st.lists(points(), min_size=2, max_size=5).map(lambda ps: PolyChain(tuple(ps))),
    st.lists(items, min_size=2, max_size=4).map(lambda xs: SubEntries(tuple(xs))),
    st.lists(items, min_size=2, max_size=4).map(lambda xs: MultiSource(tuple(xs))),
    st.lists(st.lists(points(), min_size=1, max_size=3).map(tuple), min_size=1, max_size=3)
      .map(lambda gs: Misc(tuple(gs))),
)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep
