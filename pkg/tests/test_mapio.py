import pytest

from mapbij.enumerate import GenSpec, gen_mobiles, gen_rooted_maps
from mapbij.flags import SURFACES, canonical_code, single_edge
from mapbij.mapio import ParseError, format_map, format_mobile, parse_map, parse_mobile

GOOD_MAP = format_map(single_edge(), point=2)


@pytest.mark.parametrize("name", sorted(SURFACES))
def test_map_round_trip(name):
    for fs in gen_rooted_maps(GenSpec(SURFACES[name], 2, "all")):
        for v in sorted(set(fs.vertex_ids())):
            back, point = parse_map(format_map(fs, v))
            assert back == fs and point == v


@pytest.mark.parametrize("name", sorted(SURFACES))
def test_mobile_round_trip(name):
    for mob in gen_mobiles(GenSpec(SURFACES[name], 2, "mobile"), generalized=True):
        for eps in ("+", None):
            back, e2 = parse_mobile(format_mobile(mob, eps))
            assert back.code() == mob.code() and back.edge_rooted == mob.edge_rooted and e2 == eps


def test_comments_and_blank_lines():
    text = "# a single edge\n\n" + GOOD_MAP.replace("root: 1", "root: 1   ")
    assert canonical_code(parse_map(text)[0]) == canonical_code(single_edge())


@pytest.mark.parametrize("text,line,fragment", [
    (GOOD_MAP.replace("t1: 2 1 4 3", "t1: 2 1 4"), 3, "lists 3 images"),
    (GOOD_MAP.replace("t1: 2 1 4 3", "t1: 2 1 3 4"), 3, "fixes flag 3"),
    (GOOD_MAP.replace("t2: 2 1 4 3", "t2: 2 3 4 1"), 4, "not an involution"),
    (GOOD_MAP.replace("t0: 3 4 1 2", "t0: 3 4 1 9"), 2, "outside 1..4"),
    (GOOD_MAP.replace("root: 1", "root: x"), 5, "expected integers"),
    (GOOD_MAP + "colour: red\n", 7, "unknown key"),
    (GOOD_MAP + "root: 2\n", 7, "duplicate key"),
    (GOOD_MAP.replace("nflags: 4\n", ""), 0, "missing line 'nflags'"),
])
def test_map_parse_errors(text, line, fragment):
    with pytest.raises(ParseError) as err:
        parse_map(text)
    assert err.value.line == line and fragment in str(err.value)


MOBILE = format_map(single_edge()) + "white: 1\ngreen: 3\nlabels: 1=1\nrooting: corner 1\n"


def test_mobile_parse():
    mob, eps = parse_mobile(MOBILE)
    assert mob.labels == {0: 1} and eps is None and not mob.edge_rooted


@pytest.mark.parametrize("change,fragment", [
    (("green: 3\n", ""), "uncoloured vertices: 3"),
    (("labels: 1=1", "labels: 1=1 3=2"), "is green and cannot carry a label"),
    (("labels: 1=1", "labels:"), "white vertices without label: 1"),
    (("green: 3", "green:\nwhite: 3"), "duplicate key"),
    (("white: 1", "white: 1 3"), "coloured twice"),
    (("rooting: corner 1", "rooting: corner 2"), "rooting names flag 2"),
    (("rooting: corner 1", "rooting: edge 1 side 0 dir 0"), "needs a flagged edge"),
    (("rooting: corner 1", "rooting: sideways"), "rooting must be"),
    (("rooting: corner 1", "rooting: corner 1\nepsilon: 0"), "epsilon must be"),
])
def test_mobile_parse_errors(change, fragment):
    with pytest.raises(ParseError, match=fragment):
        parse_mobile(MOBILE.replace(*change))


def test_white_white_edge_refused():
    text = format_map(single_edge()) + "white: 1 3\nlabels: 1=1 3=2\n"
    with pytest.raises(ParseError, match="white-white"):
        parse_mobile(text)
