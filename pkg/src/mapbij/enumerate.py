"""
Exhaustive generation of small rooted maps, unicellular maps and mobiles.

Rooted maps are produced by gluing the sides of face polygons in pairs (with
a twist bit per pair), then rooting at every flag and keeping one copy per
canonical code.  A second generator inserts edges one at a time and is used
as an independent check of the first.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterator, Sequence

from .flags import (
    FlagSystem, SurfaceClass, SURFACES, canonical_code, canonical_form, decode,
    distance_labels, euler_characteristic, glue_polygons, is_bipartite, is_orientable, orbit_ids,
)
from .loops import DEFAULT_POLICY, OrientationPolicy
from .mobile import GREEN, WHITE, Mobile
from .psi import check_well_labeled
from .general import classify_triangulation_mobile, generalized_well_labeled

DEFAULT_CAPS = {"all": 4, "bipartite": 4, "quadrangulation": 8, "triangulation": 6,
                "unicellular": 6, "mobile": 6}

CLASSES = ("all", "bipartite", "quadrangulation", "triangulation", "unicellular", "mobile")


class SizeCapExceeded(ValueError):
    pass


def size_cap(cls: str) -> int:
    env = os.environ.get("MAPBIJ_MAX_EDGES")
    if env:
        return int(env)
    return DEFAULT_CAPS[cls]


def check_cap(cls: str, n_edges: int) -> None:
    cap = size_cap(cls)
    if n_edges > cap:
        raise SizeCapExceeded(
            f"{n_edges} edges exceeds the cap {cap} for class {cls!r} "
            "(set MAPBIJ_MAX_EDGES to raise it)")


@dataclass(frozen=True)
class GenSpec:
    surface: SurfaceClass | None
    n_edges: int
    cls: str = "all"
    pointed: bool = False

    def __post_init__(self):
        if self.cls not in CLASSES:
            raise ValueError(f"unknown class {self.cls!r}")
        if self.n_edges < 1:
            raise ValueError("n_edges must be positive")


def surface_from_name(name: str | None) -> SurfaceClass | None:
    if name in (None, "any", "all"):
        return None
    return SURFACES[name]


def matches_surface(fs: FlagSystem, surface: SurfaceClass | None) -> bool:
    if surface is None:
        return True
    return (euler_characteristic(fs) == surface.euler_char
            and is_orientable(fs) == surface.orientable)


def partitions(total: int, smallest: int = 1) -> Iterator[tuple[int, ...]]:
    """Partitions of ``total`` into parts ``>= smallest``, parts non-decreasing."""
    if total == 0:
        yield ()
        return
    for first in range(smallest, total + 1):
        for rest in partitions(total - first, first):
            yield (first,) + rest


def matchings(items: Sequence[int]) -> Iterator[list[tuple[int, int]]]:
    if not items:
        yield []
        return
    a = items[0]
    for k in range(1, len(items)):
        rest = list(items[1:k]) + list(items[k + 1:])
        for m in matchings(rest):
            yield [(a, items[k])] + m


def twisted_gluings(degrees: Sequence[int], twists: bool) -> Iterator[FlagSystem]:
    sides = list(range(sum(degrees)))
    for m in matchings(sides):
        if not twists:
            yield glue_polygons(degrees, [(a, b, False) for a, b in m])
            continue
        for bits in range(1 << len(m)):
            pairs = [(a, b, bool(bits >> k & 1)) for k, (a, b) in enumerate(m)]
            yield glue_polygons(degrees, pairs)


def is_connected(fs: FlagSystem) -> bool:
    return len(set(orbit_ids(fs.nflags, (fs.t0, fs.t1, fs.t2)))) == 1


def rooted_codes(fs: FlagSystem) -> set[bytes]:
    return {canonical_code(fs, r) for r in range(fs.nflags)}


def face_degree_partitions(n_edges: int, cls: str) -> list[tuple[int, ...]]:
    total = 2 * n_edges
    if cls == "quadrangulation":
        return [(4,) * (total // 4)] if total % 4 == 0 else []
    if cls == "triangulation":
        return [(3,) * (total // 3)] if total % 3 == 0 else []
    if cls in ("unicellular", "mobile"):
        return [(total,)]
    if cls == "bipartite":
        return [p for p in partitions(total) if all(d % 2 == 0 for d in p)]
    return list(partitions(total))


def _class_filter(fs: FlagSystem, cls: str) -> bool:
    if cls in ("bipartite", "quadrangulation"):
        return is_bipartite(fs)
    return True


@lru_cache(maxsize=None)
def _rooted_map_codes(surface: SurfaceClass | None, n_edges: int, cls: str) -> tuple[bytes, ...]:
    twists = surface is None or not surface.orientable
    codes: set[bytes] = set()
    for degrees in face_degree_partitions(n_edges, cls):
        for fs in twisted_gluings(degrees, twists):
            if not is_connected(fs) or not matches_surface(fs, surface):
                continue
            if not _class_filter(fs, cls):
                continue
            codes |= rooted_codes(fs)
    return tuple(sorted(codes))


def gen_rooted_maps(spec: GenSpec) -> list[FlagSystem]:
    """All rooted maps of the spec, one per isomorphism class, in code order.

    Orientable targets only need untwisted gluings: every orientable map can
    be cut along its edges into consistently oriented polygons.
    """
    cls = spec.cls if spec.cls != "mobile" else "unicellular"
    check_cap(cls, spec.n_edges)
    return [decode(c) for c in _rooted_map_codes(spec.surface, spec.n_edges, cls)]


def gen_unicellular_maps(spec: GenSpec) -> list[FlagSystem]:
    check_cap("unicellular", spec.n_edges)
    codes = _rooted_map_codes(spec.surface, spec.n_edges, "unicellular")
    return [decode(c) for c in codes]


# second generator: edge insertion -----------------------------------------

def _insert_edge(fs: FlagSystem, slot1: int, slot2: int | None, flip: bool) -> FlagSystem:
    """Add an edge with one end in the corner after ``slot1``.

    With ``slot2 = None`` the other end is a new vertex of degree one;
    otherwise it sits in the corner after ``slot2`` of the intermediate map
    (which may be one of the two new flags).  ``flip`` chooses which side of
    the new edge faces ``slot2``.
    """
    n = fs.nflags
    t0, t1, t2 = list(fs.t0), list(fs.t1), list(fs.t2)
    p, q, pp, qq = n, n + 1, n + 2, n + 3
    t0 += [pp, qq, p, q]
    t2 += [q, p, qq, pp]
    t1 += [0, 0, 0, 0]
    y1 = t1[slot1]
    t1[slot1], t1[p] = p, slot1
    t1[q], t1[y1] = y1, q
    if slot2 is None:
        t1[pp], t1[qq] = qq, pp
    else:
        a, b = (qq, pp) if flip else (pp, qq)
        y2 = t1[slot2]
        t1[slot2], t1[a] = a, slot2
        t1[b], t1[y2] = y2, b
    return FlagSystem(t0, t1, t2, fs.root)


def _insertion_children(fs: FlagSystem) -> Iterator[FlagSystem]:
    for s1 in range(fs.nflags):
        yield _insert_edge(fs, s1, None, False)
        for s2 in range(fs.nflags + 2):
            for flip in (False, True):
                yield _insert_edge(fs, s1, s2, flip)


def gen_maps_by_insertion(surface: SurfaceClass, n_edges: int) -> list[FlagSystem]:
    """Rooted maps grown edge by edge from the one-edge maps.

    Deleting an edge never increases the type of the surface nor creates
    orientation reversal, so every map of ``surface`` with ``n`` edges is
    obtained from a map with ``n - 1`` edges of type at most that of
    ``surface`` (orientable when ``surface`` is).
    """
    check_cap("all", n_edges)

    def admissible(fs: FlagSystem) -> bool:
        if surface.orientable and not is_orientable(fs):
            return False
        return euler_characteristic(fs) >= surface.euler_char

    # the three one-edge maps, grown from a single vertex by hand
    base = [FlagSystem([2, 3, 0, 1], [1, 0, 3, 2], [1, 0, 3, 2]),
            FlagSystem([2, 3, 0, 1], [2, 3, 0, 1], [1, 0, 3, 2]),
            FlagSystem([2, 3, 0, 1], [3, 2, 1, 0], [1, 0, 3, 2])]
    reps = [m for m in base if admissible(m)]
    seen = set().union(*(rooted_codes(m) for m in reps))
    for _ in range(n_edges - 1):
        nxt: list[FlagSystem] = []
        seen = set()
        for m in reps:
            for child in _insertion_children(m):
                if canonical_code(child, 0) in seen or not admissible(child):
                    continue
                seen |= rooted_codes(child)
                nxt.append(child)
        reps = nxt
    return [decode(c) for c in sorted(seen)
            if matches_surface(decode(c), surface)]


# mobiles ------------------------------------------------------------------

def two_colouring(fs: FlagSystem) -> dict[int, str] | None:
    """Proper white/green colouring with a white root vertex, if any."""
    vid = fs.vertex_ids()
    colour = {vid[fs.root]: WHITE}
    stack = [vid[fs.root]]
    ends: dict[int, list[int]] = {}
    for x in range(fs.nflags):
        ends.setdefault(vid[x], []).append(vid[fs.t0[x]])
    while stack:
        v = stack.pop()
        other = GREEN if colour[v] == WHITE else WHITE
        for w in ends[v]:
            if w not in colour:
                colour[w] = other
                stack.append(w)
            elif colour[w] != other:
                return None
    return colour


def labelings(whites: Sequence[int]) -> Iterator[dict[int, int]]:
    """Label assignments with values in ``1..len(whites)`` reaching 1."""
    top = len(whites)
    for values in product(range(1, top + 1), repeat=top):
        if 1 in values:
            yield dict(zip(whites, values))


def gen_mobiles(spec: GenSpec, policy: OrientationPolicy = DEFAULT_POLICY,
                generalized: bool = False) -> list[Mobile]:
    r"""Well-labeled mobiles with ``spec.n_edges`` edges.

    Labels never exceed the number of labeled items (white vertices, plus
    flagged edges in the generalized case): they are distances in a map
    whose other vertices are exactly those items.  With ``generalized``,
    green-green edges are allowed; they are flagged, carry a label, and may
    hold the root.

    >>> len(gen_mobiles(GenSpec(SURFACES["sphere"], 1, "mobile")))
    1
    >>> len(gen_mobiles(GenSpec(SURFACES["sphere"], 1, "mobile"), generalized=True))
    2
    """
    check_cap("mobile", spec.n_edges)
    out = []
    for fs in gen_unicellular_maps(GenSpec(spec.surface, spec.n_edges, "unicellular")):
        colourings = _all_colourings(fs) if generalized else [two_colouring(fs)]
        for colour in colourings:
            if colour is None:
                continue
            for mob in _labeled_mobiles(fs, colour):
                ok = generalized_well_labeled(mob, policy) if generalized else check_well_labeled(mob, policy)
                if ok:
                    out.append(mob)
    return out


def _all_colourings(fs: FlagSystem) -> Iterator[dict[int, str]]:
    """Colourings without white-white edges, rooted at a white vertex or a green-green edge."""
    vid = fs.vertex_ids()
    vertices = sorted(set(vid))
    for bits in product((WHITE, GREEN), repeat=len(vertices)):
        colour = dict(zip(vertices, bits))
        if any(colour[vid[x]] == WHITE and colour[vid[fs.t0[x]]] == WHITE for x in range(fs.nflags)):
            continue
        if colour[vid[fs.root]] == GREEN and colour[vid[fs.t0[fs.root]]] == WHITE:
            continue
        yield colour


def _labeled_mobiles(fs: FlagSystem, colour: dict[int, str]) -> Iterator[Mobile]:
    vid, eid = fs.vertex_ids(), fs.edge_ids()
    whites = sorted(v for v, c in colour.items() if c == WHITE)
    flagged = sorted({eid[x] for x in range(fs.nflags)
                      if colour[vid[x]] == GREEN and colour[vid[fs.t0[x]]] == GREEN})
    edge_rooted = colour[vid[fs.root]] == GREEN
    top = len(whites) + len(flagged)
    for values in product(range(1, top + 1), repeat=top):
        if 1 in values:
            yield Mobile(fs, colour, dict(zip(whites, values)),
                         dict(zip(flagged, values[len(whites):])), edge_rooted)


def _pointed(fs: FlagSystem):
    return [distance_labels(fs, v) for v in sorted(set(fs.vertex_ids()))]


def count_class(spec: GenSpec, policy: OrientationPolicy = DEFAULT_POLICY) -> dict[str, int | bool]:
    r"""Counts on both sides of the bijection, and whether they agree.

    For ``bipartite`` the pointed maps are twice the mobiles.  For ``all``
    the pointed maps whose root edge has equal labels match the edge-rooted
    generalized mobiles, and the others are twice the corner-rooted ones.
    For ``triangulation`` the mobiles are those of triangular shape.

    >>> t = count_class(GenSpec(SURFACES["sphere"], 3, "triangulation"))
    >>> t["pointed_maps"], t["holds"]
    (12, True)
    """
    cls = spec.cls
    if cls not in ("all", "bipartite", "triangulation"):
        raise ValueError(f"no bijective count for class {cls!r}")
    mobile_spec = GenSpec(spec.surface, spec.n_edges, "mobile")
    table: dict[str, int | bool] = {}
    maps = gen_rooted_maps(spec)
    table["rooted_maps"] = len(maps)
    if cls == "bipartite":
        table["pointed_maps"] = sum(len(_pointed(fs)) for fs in maps)
        table["mobiles"] = len(gen_mobiles(mobile_spec, policy))
        table["holds"] = table["pointed_maps"] == 2 * table["mobiles"]
        return table
    eq = neq = 0
    for fs in maps:
        for pm in _pointed(fs):
            lab = pm.flag_labels()
            if lab[fs.root] == lab[fs.t0[fs.root]]:
                eq += 1
            else:
                neq += 1
    mobs = gen_mobiles(mobile_spec, policy, generalized=True)
    if cls == "triangulation":
        mobs = [m for m in mobs if classify_triangulation_mobile(m, policy)]
    er = sum(1 for m in mobs if m.edge_rooted)
    table.update(pointed_maps=eq + neq, pointed_equilabeled=eq, pointed_other=neq,
                 mobiles_edge_rooted=er, mobiles_corner_rooted=len(mobs) - er)
    table["holds"] = eq == er and neq == 2 * (len(mobs) - er)
    return table
