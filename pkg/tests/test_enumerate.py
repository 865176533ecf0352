import pytest

from mapbij.enumerate import (GenSpec, SizeCapExceeded, check_cap, count_class, gen_maps_by_insertion,
                              gen_mobiles, gen_rooted_maps, gen_unicellular_maps, matchings, partitions)
from mapbij.flags import SURFACES, classify_surface, is_bipartite


def test_sphere_counts_two_generators():
    for n, want in ((1, 2), (2, 9), (3, 54)):
        assert len(gen_rooted_maps(GenSpec(SURFACES["sphere"], n))) == want
        assert len(gen_maps_by_insertion(SURFACES["sphere"], n)) == want


def test_generators_agree_off_the_sphere():
    for name in ("projective", "torus", "klein"):
        for n in (1, 2):
            a = gen_rooted_maps(GenSpec(SURFACES[name], n))
            b = gen_maps_by_insertion(SURFACES[name], n)
            assert len(a) == len(b)


def test_generated_maps_have_their_class():
    for fs in gen_rooted_maps(GenSpec(SURFACES["torus"], 3, "bipartite")):
        assert classify_surface(fs) == SURFACES["torus"] and is_bipartite(fs)
    for fs in gen_rooted_maps(GenSpec(SURFACES["projective"], 4, "quadrangulation")):
        assert all(fs.face_degree(f) == 4 for f in fs.faces())


def test_small_combinatorics():
    assert sorted(partitions(4, 2)) == [(2, 2), (4,)]
    assert sum(1 for _ in matchings(range(6))) == 15


def test_rooted_one_face_maps_with_two_edges():
    # two on the sphere, one on the torus, and the rest nonorientable
    by_surface = {}
    for fs in gen_unicellular_maps(GenSpec(None, 2, "unicellular")):
        s = classify_surface(fs).name
        by_surface[s] = by_surface.get(s, 0) + 1
    assert (by_surface["sphere"], by_surface["torus"]) == (2, 1)


@pytest.mark.parametrize("name", sorted(SURFACES))
def test_bijective_counts(name):
    for cls in ("all", "bipartite", "triangulation"):
        for n in (1, 2, 3):
            assert count_class(GenSpec(SURFACES[name], n, cls))["holds"]


def test_mobile_counts():
    sphere = SURFACES["sphere"]
    pointed = [sum(len(set(fs.vertex_ids())) for fs in gen_rooted_maps(GenSpec(sphere, n, "bipartite")))
               for n in (1, 2, 3)]
    assert pointed == [2, 8, 40]
    assert [len(gen_mobiles(GenSpec(sphere, n, "mobile"))) for n in (1, 2, 3)] == [1, 4, 20]


def test_size_cap(monkeypatch):
    with pytest.raises(SizeCapExceeded):
        check_cap("all", 5)
    monkeypatch.setenv("MAPBIJ_MAX_EDGES", "9")
    check_cap("all", 9)
    with pytest.raises(ValueError):
        GenSpec(None, 0)
