"""
Quadrangulations and labeled unicellular maps.

A face of degree four gives a green vertex of degree two in its mobile.
Removing such green vertices, merging their two edges, turns the mobile into
a unicellular map with labels on every vertex; labels of neighbours then
differ by at most one.  Every such labeled map comes back to a well-labeled
mobile by putting a green vertex in the middle of each edge.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .flags import FlagSystem, canonical_form, traversal_order
from .mobile import GREEN, WHITE, Mobile


class NotCollapsible(ValueError):
    pass


@dataclass(frozen=True)
class LabeledUnicellular:
    """A one-face map with positive integer labels on its vertices (keyed by vertex id)."""

    map: FlagSystem
    labels: dict[int, int] = field(hash=False)

    def code(self) -> tuple:
        order = traversal_order(self.map)
        fs = canonical_form(self.map)
        vid = self.map.vertex_ids()
        return (fs.t0, fs.t1, fs.t2, tuple(self.labels[vid[x]] for x in order))

    def is_well_labeled(self) -> bool:
        vid = self.map.vertex_ids()
        fs = self.map
        if min(self.labels.values()) != 1:
            return False
        return all(abs(self.labels[vid[x]] - self.labels[vid[fs.t0[x]]]) <= 1
                   for x in range(fs.nflags))


def quad_collapse(mob: Mobile) -> LabeledUnicellular:
    r"""Remove the degree-two green vertices of a mobile.

    >>> from mapbij.flags import FlagSystem
    >>> path = quad_expand(LabeledUnicellular(FlagSystem([2, 3, 0, 1], [1, 0, 3, 2], [1, 0, 3, 2]), {0: 1, 2: 2}))
    >>> sorted(quad_collapse(path).labels.values())
    [1, 2]
    """
    fs = mob.map
    vid = fs.vertex_ids()
    if mob.flagged_edges():
        raise NotCollapsible("flagged edges have no collapsed form")
    for v, c in mob.colour.items():
        if c == GREEN and sum(1 for x in range(fs.nflags) if vid[x] == v) != 4:
            raise NotCollapsible("every green vertex must have degree 2")
    keep = [x for x in range(fs.nflags) if mob.colour[vid[x]] == WHITE]
    new = {x: k for k, x in enumerate(keep)}
    # across a green vertex: to its side, around it, and out the other edge
    t0 = [new[fs.t0[fs.t1[fs.t0[x]]]] for x in keep]
    t1 = [new[fs.t1[x]] for x in keep]
    t2 = [new[fs.t2[x]] for x in keep]
    out = FlagSystem(t0, t1, t2, new[fs.root])
    out_vid = out.vertex_ids()
    labels = {out_vid[new[x]]: mob.labels[vid[x]] for x in keep}
    return LabeledUnicellular(out, labels)


def quad_expand(lu: LabeledUnicellular) -> Mobile:
    """Put a green vertex in the middle of every edge."""
    fs = lu.map
    n = fs.nflags
    t0 = list(fs.t0) + [0] * n
    t1 = list(fs.t1) + [0] * n
    t2 = list(fs.t2) + [0] * n
    # flag x keeps its place at the white end; n + x is its twin at the green end
    for x in range(n):
        t0[x] = n + x
        t0[n + x] = x
        t2[n + x] = n + fs.t2[x]
        t1[n + x] = n + fs.t0[x]
    out = FlagSystem(t0, t1, t2, fs.root)
    vid = out.vertex_ids()
    old_vid = fs.vertex_ids()
    colour, labels = {}, {}
    for x in range(2 * n):
        if x < n:
            colour[vid[x]] = WHITE
            labels[vid[x]] = lu.labels[old_vid[x]]
        else:
            colour[vid[x]] = GREEN
    return Mobile(out, colour, labels)
