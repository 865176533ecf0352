"""Local edits of flag systems: adding stars inside faces, deleting edges."""

from __future__ import annotations

from typing import Iterable, Sequence

from .flags import FlagSystem


def insert_stars(fs: FlagSystem, stars: Sequence[Sequence[int]]) -> tuple[FlagSystem, list[list[int]]]:
    """Add one new vertex per star, joined to the given corners of a face.

    Each star is a list of flags ``x`` listed in the order of a walk along one
    face; the corner ``{x, t1(x)}`` receives an edge to the new vertex.  The
    new edge is drawn between the arrival flag ``t1(x)`` and ``x``.  Returns
    the new system and, per star, the flags of the new edges at the old
    corners (the ones on the side of ``x``), which head along the new edges.
    """
    t0, t1, t2 = list(fs.t0), list(fs.t1), list(fs.t2)
    heads = []
    for corners in stars:
        centre_sides = []
        star_heads = []
        for x in corners:
            a = t1[x]
            base = len(t0)
            wa, wb, ca, cb = base, base + 1, base + 2, base + 3
            t0 += [ca, cb, wa, wb]
            t2 += [wb, wa, cb, ca]
            t1 += [a, x, 0, 0]
            t1[a], t1[x] = wa, wb
            centre_sides.append((ca, cb))
            star_heads.append(wb)
        k = len(centre_sides)
        for j in range(k):
            cb = centre_sides[j][1]
            ca_next = centre_sides[(j + 1) % k][0]
            t1[cb], t1[ca_next] = ca_next, cb
        heads.append(star_heads)
    return FlagSystem(t0, t1, t2, fs.root), heads


def delete_edges(fs: FlagSystem, dead: Iterable[int], root: int) -> tuple[FlagSystem, dict[int, int]]:
    """Remove every edge having a flag in ``dead`` and renumber what is left.

    ``dead`` must be a union of whole edges.  Vertices losing all their
    edges disappear.  Returns the new system rooted at ``root`` (an old flag
    that survives) and the old-to-new flag numbering.
    """
    dead = set(dead)
    keep = [x for x in range(fs.nflags) if x not in dead]
    new = {old: k for k, old in enumerate(keep)}
    t1 = []
    for y in keep:
        z = fs.t1[y]
        while z in dead:
            z = fs.t1[fs.t2[z]]
        t1.append(new[z])
    t0 = [new[fs.t0[y]] for y in keep]
    t2 = [new[fs.t2[y]] for y in keep]
    return FlagSystem(t0, t1, t2, new[root]), new


def edge_flags(fs: FlagSystem, x: int) -> tuple[int, int, int, int]:
    return x, fs.t2[x], fs.t0[x], fs.t0[fs.t2[x]]
