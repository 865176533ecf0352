import pytest
from hypothesis import given, settings, strategies as st

from mapbij.enumerate import GenSpec, gen_mobiles, gen_rooted_maps
from mapbij.flags import SURFACES, distance_labels, is_bipartite, pointed_code, single_edge
from mapbij.general import (classify_triangulation_mobile, face_property_violations, generalized_well_labeled,
                            phi_general, psi_general)
from mapbij.loops import OrientationPolicy
from mapbij.mobile import GREEN, WHITE, Mobile
from mapbij.phi import NotBipartite, phi_bipartite
from mapbij.psi import (EDGE_ROOTED_MINUS, NotWellLabeled, arc_conditions, arcs_nested, arcs_of_labels,
                        check_well_labeled, has_next_label, inner_range_contiguous, neighbours_step_down,
                        psi_bipartite, well_labeled_reason)
from mapbij.quad import LabeledUnicellular, quad_collapse, quad_expand
from test_flags import glued_maps

POLICIES = [OrientationPolicy(), OrientationPolicy.parse("-"), OrientationPolicy.parse("+-")]


@settings(max_examples=120, deadline=None)
@given(glued_maps(), st.data(), st.sampled_from(POLICIES))
def test_general_round_trip(fs, data, policy):
    v = data.draw(st.sampled_from(sorted(set(fs.vertex_ids()))))
    pm = distance_labels(fs, v)
    mob, eps = phi_general(pm, policy)
    assert generalized_well_labeled(mob, policy)
    assert pointed_code(psi_general(mob, eps, policy)) == pointed_code(pm)
    assert face_property_violations(pm, mob) == []
    root_lab = pm.flag_labels()
    assert mob.edge_rooted == (root_lab[fs.root] == root_lab[fs.t0[fs.root]])
    if mob.edge_rooted:
        assert eps == "+"


@settings(max_examples=80, deadline=None)
@given(glued_maps(), st.data())
def test_bipartite_round_trip(fs, data):
    v = data.draw(st.sampled_from(sorted(set(fs.vertex_ids()))))
    pm = distance_labels(fs, v)
    if not is_bipartite(fs):
        with pytest.raises(NotBipartite):
            phi_bipartite(pm)
        return
    mob, eps = phi_bipartite(pm)
    assert not mob.flag_labels and check_well_labeled(mob)
    assert pointed_code(psi_bipartite(mob, eps)) == pointed_code(pm)
    # bipartite maps take the same route either way
    gmob, geps = phi_general(pm)
    assert (gmob.code(), geps) == (mob.code(), eps)


@pytest.mark.parametrize("name", sorted(SURFACES))
def test_mobiles_to_maps_and_back(name):
    for mob in gen_mobiles(GenSpec(SURFACES[name], 2, "mobile"), generalized=True):
        for eps in ("+",) if mob.edge_rooted else ("+", "-"):
            back, e2 = phi_general(psi_general(mob, eps))
            assert (back.code(), e2) == (mob.code(), eps)


def test_edge_rooted_minus_is_refused():
    mob = next(m for m in gen_mobiles(GenSpec(SURFACES["sphere"], 1, "mobile"), generalized=True)
               if m.edge_rooted)
    with pytest.raises(NotWellLabeled, match=EDGE_ROOTED_MINUS):
        psi_general(mob, "-")


def test_not_well_labeled_reasons():
    star = Mobile(single_edge(), {0: WHITE, 2: GREEN}, {0: 2})
    assert well_labeled_reason(star) == "labels must have minimum 1"
    with pytest.raises(NotWellLabeled):
        psi_bipartite(star)
    rooted_green = Mobile(single_edge().rerooted(2), {0: WHITE, 2: GREEN}, {0: 1})
    assert well_labeled_reason(rooted_green) == "the root corner must be white"


def test_triangulation_shapes_cover_all_triangulations():
    for name in SURFACES:
        for fs in gen_rooted_maps(GenSpec(SURFACES[name], 3, "triangulation")):
            for v in sorted(set(fs.vertex_ids())):
                assert classify_triangulation_mobile(phi_general(distance_labels(fs, v))[0])


labels = st.lists(st.integers(1, 5), min_size=1, max_size=12).filter(lambda s: 1 in s)


@settings(max_examples=400)
@given(labels)
def test_arc_clauses_agree(seq):
    arcs = arcs_of_labels(seq)
    a = has_next_label(seq, arcs)
    assert a == inner_range_contiguous(seq, arcs) == neighbours_step_down(seq)
    assert arcs_nested(arcs, len(seq))
    assert (arc_conditions(seq) is None) == a


def test_arc_examples():
    assert neighbours_step_down([1, 2, 3, 2])
    assert not neighbours_step_down([1, 3])
    assert arc_conditions([2, 3]) == "labels must have minimum 1"


@pytest.mark.parametrize("name", sorted(SURFACES))
def test_quadrangulation_collapse(name):
    for q in gen_rooted_maps(GenSpec(SURFACES[name], 4, "quadrangulation")):
        for v in sorted(set(q.vertex_ids())):
            mob, eps = phi_bipartite(distance_labels(q, v))
            lu = quad_collapse(mob)
            assert isinstance(lu, LabeledUnicellular) and lu.is_well_labeled()
            assert quad_expand(lu).code() == mob.code()
