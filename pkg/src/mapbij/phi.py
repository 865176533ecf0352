"""
From a pointed bipartite map to a well-labeled unicellular mobile.

Every corner selected by a level loop is joined to a new green vertex placed
inside its face; the original edges are then erased.  The sign records
whether the root had to be flipped so that it points from a smaller label to
a larger one.
"""

from __future__ import annotations

from dataclasses import dataclass

from .flags import FlagSystem, PointedMap, distance_labels, is_bipartite, root_flip
from .loops import DEFAULT_POLICY, LevelLoop, OrientationPolicy, build_level_loops, orient_and_order, selected_flags
from .mobile import GREEN, WHITE, Mobile
from .surgery import delete_edges, insert_stars


class NotBipartite(ValueError):
    pass


def sign_and_orient(pm: PointedMap) -> tuple[PointedMap, str]:
    fs = pm.map
    lab = pm.flag_labels()
    if lab[fs.root] < lab[fs.t0[fs.root]]:
        return pm, "+"
    return PointedMap(root_flip(fs), pm.point, pm.labels), "-"


def face_stars(fs: FlagSystem, chosen: set[int]) -> list[list[int]]:
    """Group selected corners by face, in face-walk order."""
    corner_of = {}
    for y in chosen:
        corner_of[y] = y
        corner_of[fs.t1[y]] = y
    stars = []
    seen: set[int] = set()
    for x in range(fs.nflags):
        if x in seen:
            continue
        walk = fs.face_walk(x)
        seen.update(walk)
        seen.update(fs.t1[y] for y in walk)
        star = [y for y in walk if y in corner_of]
        if star:
            stars.append(star)
    return stars


@dataclass
class PhiTrace:
    """Intermediate objects of one run of the encoding, kept for inspection."""

    pointed: PointedMap
    sign: str
    loops: list[LevelLoop]
    order: list[LevelLoop]
    overlay: FlagSystem
    renumber: dict[int, int]
    mobile: Mobile
    origin: dict[int, int]   # white vertex of the mobile -> vertex of the map


def phi_trace(pm: PointedMap, policy: OrientationPolicy = DEFAULT_POLICY) -> PhiTrace:
    if not is_bipartite(pm.map):
        raise NotBipartite("map is not bipartite")
    pm, eps = sign_and_orient(pm)
    fs = pm.map
    lab = pm.flag_labels()
    loops = build_level_loops(fs, lab)
    order = orient_and_order(fs, lab, loops, policy)
    chosen = selected_flags(fs, lab, loops)
    big, _ = insert_stars(fs, face_stars(fs, chosen))

    n = fs.nflags
    z = big.t1[fs.t0[fs.root]]
    while z < n:
        z = big.t1[big.t2[z]]
    u, renum = delete_edges(big, range(n), z)

    old_of = {v: k for k, v in renum.items()}
    vid_old = fs.vertex_ids()
    colour, labels, origin = {}, {}, {}
    for v in set(u.vertex_ids()):
        x = old_of[v]
        # star edges are added as blocks of four flags, the first two at the white end
        if (x - n) % 4 < 2:
            colour[v] = WHITE
            origin[v] = vid_old[big.t1[x]]
            labels[v] = pm.labels[origin[v]]
        else:
            colour[v] = GREEN
    return PhiTrace(pm, eps, loops, order, big, renum, Mobile(u, colour, labels), origin)


def phi_bipartite(pm: PointedMap, policy: OrientationPolicy = DEFAULT_POLICY) -> tuple[Mobile, str]:
    r"""Encode a pointed bipartite map as a mobile and a sign.

    >>> from mapbij.flags import single_edge, distance_labels
    >>> mob, eps = phi_bipartite(distance_labels(single_edge(), 0))
    >>> eps, mob.map.nedges, sorted(mob.labels.values())
    ('+', 1, [1])
    """
    tr = phi_trace(pm, policy)
    return tr.mobile, tr.sign


def phi_rooted(fs: FlagSystem, point_flag: int, policy: OrientationPolicy = DEFAULT_POLICY):
    return phi_bipartite(distance_labels(fs, point_flag), policy)
