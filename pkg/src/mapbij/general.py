"""
Pointed maps that need not be bipartite.

Edges whose two ends share a label are split by a new vertex, the result is
encoded as an ordinary mobile, and the new vertices (white, of degree two in
the mobile) are folded back into *flagged* green-green edges that keep
their label.  When the root of the map lies on such an edge the mobile is
rooted on the flagged edge instead of at a white corner.
"""

from __future__ import annotations

from .flags import FlagSystem, PointedMap, distance_labels, subdivide_equilabeled
from .loops import DEFAULT_POLICY, OrientationPolicy
from .mobile import GREEN, WHITE, Mobile
from .phi import phi_trace
from .psi import EDGE_ROOTED_MINUS, NotWellLabeled, psi_trace


def _fold(fs: FlagSystem, dead_vertices: set[int]) -> tuple[FlagSystem, dict[int, int]]:
    """Erase degree-two vertices, joining their two edges into one.

    Returns the new map and the old-to-new numbering of surviving flags.  A
    root lying at an erased vertex moves along its edge to the far end.
    """
    vid = fs.vertex_ids()
    keep = [x for x in range(fs.nflags) if vid[x] not in dead_vertices]
    new = {x: k for k, x in enumerate(keep)}

    def across(x: int) -> int:
        y = fs.t0[x]
        while vid[y] in dead_vertices:
            y = fs.t0[fs.t1[y]]
        return y

    t0 = [new[across(x)] for x in keep]
    t1 = [new[fs.t1[x]] for x in keep]
    t2 = [new[fs.t2[x]] for x in keep]
    root = fs.root if vid[fs.root] not in dead_vertices else fs.t0[fs.root]
    return FlagSystem(t0, t1, t2, new[root]), new


def _unfold(fs: FlagSystem, edges: list[int], root_at_middle: bool) -> tuple[FlagSystem, list[int]]:
    """Put a new vertex in the middle of each listed edge (given by one flag).

    Returns the map and, per edge, a flag of its new vertex.  With
    ``root_at_middle`` the root moves from its flag to the new vertex on the
    same half-edge.
    """
    t0, t1, t2 = list(fs.t0), list(fs.t1), list(fs.t2)
    middles = []
    root = fs.root
    for y in edges:
        y1, y2 = y, fs.t0[y]
        z1, z2 = fs.t2[y1], fs.t0[fs.t2[y1]]
        base = len(t0)
        x1, w1, x2, w2 = base, base + 1, base + 2, base + 3
        # x1, w1 sit next to y1, z1; x2, w2 next to y2, z2
        t0 += [y1, z1, y2, z2]
        t2 += [w1, x1, w2, x2]
        t1 += [x2, w2, x1, w1]
        t0[y1], t0[z1], t0[y2], t0[z2] = x1, w1, x2, w2
        middles.append(x1)
        if root_at_middle and root in (y1, z1, y2, z2):
            root = t0[root]
    return FlagSystem(t0, t1, t2, root), middles


def suppress_flagged(mob: Mobile, whites: set[int]) -> Mobile:
    """Fold the given degree-two white vertices into flagged edges."""
    fs = mob.map
    vid = fs.vertex_ids()
    for v in whites:
        if sum(1 for x in range(fs.nflags) if vid[x] == v) != 4:
            raise ValueError("only white vertices of degree 2 can be folded")
    out, new = _fold(fs, whites)
    out_vid, out_eid = out.vertex_ids(), out.edge_ids()
    colour, labels = {}, {}
    for x in range(fs.nflags):
        if x in new and vid[x] not in whites:
            colour[out_vid[new[x]]] = mob.colour[vid[x]]
            if mob.colour[vid[x]] == WHITE:
                labels[out_vid[new[x]]] = mob.labels[vid[x]]
    flag_labels = dict()
    for x in range(fs.nflags):
        if vid[x] in whites:
            flag_labels[out_eid[new[fs.t0[x]]]] = mob.labels[vid[x]]
    rooted_on_edge = vid[fs.root] in whites
    return Mobile(out, colour, labels, flag_labels, edge_rooted=rooted_on_edge)


def split_flagged(mob: Mobile) -> tuple[Mobile, set[int]]:
    """Inverse of :func:`suppress_flagged`: one white vertex per flagged edge."""
    fs = mob.map
    firsts = sorted(mob.flag_labels)
    out, middles = _unfold(fs, firsts, mob.edge_rooted)
    vid = out.vertex_ids()
    old_vid = fs.vertex_ids()
    colour, labels = {}, {}
    for x in range(fs.nflags):
        colour[vid[x]] = mob.colour[old_vid[x]]
        if mob.colour[old_vid[x]] == WHITE:
            labels[vid[x]] = mob.labels[old_vid[x]]
    added = set()
    for e, x in zip(firsts, middles):
        colour[vid[x]] = WHITE
        labels[vid[x]] = mob.flag_labels[e]
        added.add(vid[x])
    return Mobile(out, colour, labels), added


def phi_general(pm: PointedMap, policy: OrientationPolicy = DEFAULT_POLICY) -> tuple[Mobile, str]:
    r"""Encode any pointed map as a generalized mobile and a sign.

    >>> from mapbij.flags import plane_loop
    >>> mob, eps = phi_general(distance_labels(plane_loop(), 0))
    >>> eps, mob.edge_rooted, sorted(mob.flag_labels.values())
    ('+', True, [1])
    """
    sub, added = subdivide_equilabeled(pm)
    tr = phi_trace(sub, policy)
    vid = sub.map.vertex_ids()
    added_vertices = {vid[x] for x in added}
    fold = {v for v, o in tr.origin.items() if o in added_vertices}
    return suppress_flagged(tr.mobile, fold), tr.sign


def psi_general(mob: Mobile, eps: str = "+", policy: OrientationPolicy = DEFAULT_POLICY) -> PointedMap:
    """Rebuild the pointed map encoded by a generalized mobile."""
    if mob.edge_rooted and eps == "-":
        raise NotWellLabeled(EDGE_ROOTED_MINUS)
    split, added = split_flagged(mob)
    pm, where = psi_trace(split, eps, policy)
    fs = pm.map
    vid = fs.vertex_ids()
    middles = {where[v] for v in added}
    for v in middles:
        if sum(1 for x in range(fs.nflags) if vid[x] == v) != 4:
            raise NotWellLabeled("a split flagged edge receives other edges")
    if vid[fs.root] in middles:
        raise NotWellLabeled("the root cannot sit in the middle of a flagged edge")
    out, new = _fold(fs, middles)
    point = new[next(x for x in range(fs.nflags) if vid[x] == pm.point)]
    return distance_labels(out, point)


def generalized_well_labeled(mob: Mobile, policy: OrientationPolicy = DEFAULT_POLICY) -> bool:
    try:
        psi_general(mob, "+", policy)
    except NotWellLabeled:
        return False
    return True


def _green_surroundings(mob: Mobile) -> dict[int, tuple[list[int], list[int]]]:
    """Per green vertex: labels of its flagged half-edges and of its white neighbours."""
    fs = mob.map
    vid, eid = fs.vertex_ids(), fs.edge_ids()
    out = {v: ([], []) for v, c in mob.colour.items() if c == GREEN}
    for x in range(fs.nflags):
        if x > fs.t2[x] or mob.colour[vid[x]] != GREEN:
            continue
        flagged, whites = out[vid[x]]
        if eid[x] in mob.flag_labels:
            flagged.append(mob.flag_labels[eid[x]])
        else:
            whites.append(mob.labels[vid[fs.t0[x]]])
    return out


def classify_triangulation_mobile(mob: Mobile, policy: OrientationPolicy = DEFAULT_POLICY) -> bool:
    r"""Whether every green vertex has the shape coming from a triangular face.

    Three shapes are possible: three flagged half-edges with one common
    label, or one flagged half-edge labeled ``i`` or ``i + 1`` beside one
    white neighbour labeled ``i``.  Such mobiles are always well labeled,
    which is asserted.

    >>> from mapbij.flags import plane_loop
    >>> mob, _ = phi_general(distance_labels(plane_loop(), 0))
    >>> classify_triangulation_mobile(mob)
    False
    """
    for flagged, whites in _green_surroundings(mob).values():
        if len(flagged) == 3 and not whites:
            if len(set(flagged)) != 1:
                return False
        elif len(flagged) == 1 and len(whites) == 1:
            if flagged[0] - whites[0] not in (0, 1):
                return False
        else:
            return False
    assert generalized_well_labeled(mob, policy), "triangular shapes must be well labeled"
    return True


def face_property_violations(pm: PointedMap, mob: Mobile) -> list[str]:
    """Compare a pointed map with its mobile: labels, face degrees and edge counts.

    Whites stand for the vertices other than the point, with their distance
    as label; a green vertex has half the degree of its face once flagged
    half-edges count one half.
    """
    out = []
    fs = pm.map
    vid = fs.vertex_ids()
    dist = distance_labels(fs, next(x for x in range(fs.nflags) if vid[x] == pm.point)).labels
    if sorted(d for v, d in dist.items() if v != pm.point) != sorted(mob.labels.values()):
        out.append("white labels differ from the distances to the point")
    if any(pm.labels[v] != d for v, d in dist.items()):
        out.append("map labels are not the distances to the point")
    faces = sorted(fs.face_degree(f) for f in fs.faces())
    doubled = sorted(2 * a + b for a, b in mob.generalized_degrees().values())
    if faces != doubled:
        out.append("face degrees differ from twice the green degrees")
    if fs.nedges != mob.map.nedges:
        out.append("edge counts differ")
    return out
