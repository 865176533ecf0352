import random

import pytest
from hypothesis import assume, given, settings, strategies as st

from mapbij.enumerate import GenSpec, gen_unicellular_maps
from mapbij.flags import (SURFACES, FlagSystem, InvalidMap, PolygonPairing, canonical_code, check,
                          classify_surface, decode, distance_labels, euler_characteristic, glue_polygons,
                          is_bipartite, is_isomorphic, is_orientable, plane_loop, pointed_code,
                          polygon_representation, relabel, single_edge, subdivide_equilabeled,
                          twisted_loop, validate)


@st.composite
def glued_maps(draw, max_sides=10, polygons=3):
    degrees = draw(st.lists(st.integers(1, 4), min_size=1, max_size=polygons))
    total = sum(degrees)
    assume(total % 2 == 0 and total <= max_sides)
    sides = draw(st.permutations(range(total)))
    pairs = [(sides[2 * k], sides[2 * k + 1], draw(st.booleans())) for k in range(total // 2)]
    fs = glue_polygons(degrees, pairs, root=draw(st.integers(0, 2 * total - 1)))
    assume(validate(fs).valid)
    return fs


def shuffled(fs: FlagSystem, seed: int) -> FlagSystem:
    order = list(range(fs.nflags))
    random.Random(seed).shuffle(order)
    return relabel(fs, order)


def test_small_maps():
    assert classify_surface(single_edge()) == SURFACES["sphere"]
    assert classify_surface(plane_loop()) == SURFACES["sphere"]
    assert classify_surface(twisted_loop()) == SURFACES["projective"]
    assert is_bipartite(single_edge()) and not is_bipartite(plane_loop())
    assert not is_orientable(twisted_loop())


def test_validate_reports_each_problem():
    rep = validate(FlagSystem([1, 0, 3, 2], [1, 1, 3, 2], [2, 3, 0, 1]))
    assert not rep.valid and "t1 not fixed-point-free" in str(rep)
    two = FlagSystem([2, 3, 0, 1, 6, 7, 4, 5], [1, 0, 3, 2, 5, 4, 7, 6], [1, 0, 3, 2, 5, 4, 7, 6])
    assert "not transitive" in str(validate(two))
    with pytest.raises(InvalidMap):
        check(two)


@settings(max_examples=150)
@given(glued_maps(), st.integers(0, 10 ** 6))
def test_code_is_an_invariant(fs, seed):
    other = shuffled(fs, seed)
    assert canonical_code(other) == canonical_code(fs)
    assert is_isomorphic(decode(canonical_code(fs)), fs)
    assert classify_surface(other) == classify_surface(fs)


@settings(max_examples=150)
@given(glued_maps())
def test_euler_relation(fs):
    chi = euler_characteristic(fs)
    assert chi <= 2
    assert chi % 2 == 0 or not is_orientable(fs)
    assert sum(fs.face_degree(f) for f in fs.faces()) == 2 * fs.nedges
    assert sum(fs.vertex_degree(v) for v in fs.vertices()) == 2 * fs.nedges


@settings(max_examples=100)
@given(glued_maps(), st.data())
def test_distance_labels(fs, data):
    v = data.draw(st.sampled_from(sorted(set(fs.vertex_ids()))))
    pm = distance_labels(fs, v)
    assert pm.labels[v] == 0
    lab = pm.flag_labels()
    assert all(abs(lab[x] - lab[fs.t0[x]]) <= 1 for x in range(fs.nflags))
    sub, added = subdivide_equilabeled(pm)
    slab = sub.flag_labels()
    assert all(slab[x] != slab[sub.map.t0[x]] for x in range(sub.map.nflags))
    assert is_bipartite(sub.map)


@settings(max_examples=100)
@given(glued_maps(), st.integers(0, 10 ** 6))
def test_pointed_code_ignores_numbering(fs, seed):
    order = list(range(fs.nflags))
    random.Random(seed).shuffle(order)
    other = relabel(fs, order)
    x = fs.vertices()[-1]
    new_x = order.index(x)
    assert pointed_code(distance_labels(fs, fs.vertex_ids()[x])) == \
        pointed_code(distance_labels(other, other.vertex_ids()[new_x]))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_polygon_rebuild_is_identity(n):
    for fs in gen_unicellular_maps(GenSpec(None, n, "unicellular")):
        pairing = polygon_representation(fs)
        assert pairing.sides == 2 * n
        assert canonical_code(pairing.rebuild()) == canonical_code(fs)


def test_polygon_text():
    assert polygon_representation(single_edge()).to_text() == "polygon: 2\npair: 1 2 straight\n"
    assert PolygonPairing(2, ((0, 1, True),)).rebuild() == glue_polygons([2], [(0, 1, True)])
    with pytest.raises(ValueError):
        polygon_representation(plane_loop())


def test_sphere_unicellular_are_catalan():
    counts = [len(gen_unicellular_maps(GenSpec(SURFACES["sphere"], n, "unicellular"))) for n in (1, 2, 3, 4)]
    assert counts == [1, 2, 5, 14]
