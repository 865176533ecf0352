r"""
Maps on compact surfaces encoded as flag systems.

A flag is an incidence (vertex, edge, side of edge).  Three fixed-point-free
involutions act on flags:

- ``t0`` moves to the other endpoint of the edge, staying on the same side;
- ``t1`` moves to the other edge of the same corner;
- ``t2`` moves to the other side of the same edge, at the same endpoint.

Vertices, edges and faces are the orbits of ``<t1,t2>``, ``<t0,t2>`` and
``<t0,t1>``.  A corner is a ``t1`` orbit and an oriented corner is a single
flag: the flag ``x`` stands for the corner of ``x`` oriented towards the edge
of ``x``.  The root of a map is such a flag, and its edge is the root edge.

Walking along a face boundary is the map ``x -> t1(t0(x))`` and turning around
a vertex is ``x -> t1(t2(x))``.

EXAMPLES::

    >>> from mapbij.flags import single_edge, classify_surface
    >>> m = single_edge()
    >>> classify_surface(m).euler_char
    2
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence


@dataclass(frozen=True)
class FlagSystem:
    """Three involutions on ``range(n)`` together with a root flag."""

    t0: tuple[int, ...]
    t1: tuple[int, ...]
    t2: tuple[int, ...]
    root: int = 0

    def __post_init__(self):
        object.__setattr__(self, "t0", tuple(self.t0))
        object.__setattr__(self, "t1", tuple(self.t1))
        object.__setattr__(self, "t2", tuple(self.t2))

    @property
    def nflags(self) -> int:
        return len(self.t0)

    @property
    def nedges(self) -> int:
        return len(self.t0) // 4

    def rerooted(self, root: int) -> "FlagSystem":
        return FlagSystem(self.t0, self.t1, self.t2, root)

    # orbit structure ---------------------------------------------------

    def vertex_ids(self) -> list[int]:
        return orbit_ids(self.nflags, (self.t1, self.t2))

    def edge_ids(self) -> list[int]:
        return orbit_ids(self.nflags, (self.t0, self.t2))

    def face_ids(self) -> list[int]:
        return orbit_ids(self.nflags, (self.t0, self.t1))

    def vertices(self) -> list[int]:
        return sorted(set(self.vertex_ids()))

    def faces(self) -> list[int]:
        return sorted(set(self.face_ids()))

    def face_step(self, x: int) -> int:
        return self.t1[self.t0[x]]

    def turn_step(self, x: int) -> int:
        return self.t1[self.t2[x]]

    def face_walk(self, x: int) -> list[int]:
        """Flags met when walking the boundary of the face of ``x`` from ``x``."""
        walk = [x]
        y = self.face_step(x)
        while y != x:
            walk.append(y)
            y = self.face_step(y)
        return walk

    def face_degree(self, x: int) -> int:
        return len(self.face_walk(x))

    def vertex_degree(self, x: int) -> int:
        """Number of half-edges at the vertex of ``x`` (loops count twice)."""
        n = 1
        y = self.turn_step(x)
        while y != x:
            n += 1
            y = self.turn_step(y)
        return n

    def neighbors(self) -> dict[int, list[int]]:
        """Vertex adjacency lists, one entry per half-edge."""
        vid = self.vertex_ids()
        adj: dict[int, list[int]] = {v: [] for v in set(vid)}
        for x in range(self.nflags):
            # each half-edge has two flags; keep one of them
            if x < self.t2[x]:
                adj[vid[x]].append(vid[self.t0[x]])
        return adj


def orbit_ids(n: int, perms: Sequence[Sequence[int]]) -> list[int]:
    """Label each point by the smallest point of its orbit under ``perms``."""
    ids = [-1] * n
    for start in range(n):
        if ids[start] != -1:
            continue
        ids[start] = start
        stack = [start]
        while stack:
            x = stack.pop()
            for p in perms:
                y = p[x]
                if ids[y] == -1:
                    ids[y] = start
                    stack.append(y)
    return ids


@dataclass(frozen=True)
class SurfaceClass:
    euler_char: int
    orientable: bool

    @property
    def type_h(self) -> Fraction:
        return Fraction(2 - self.euler_char, 2)

    @property
    def name(self) -> str:
        known = {(2, True): "sphere", (1, False): "projective",
                 (0, True): "torus", (0, False): "klein"}
        key = (self.euler_char, self.orientable)
        if key in known:
            return known[key]
        kind = "orientable" if self.orientable else "nonorientable"
        return f"{kind}(h={self.type_h})"


SURFACES = {
    "sphere": SurfaceClass(2, True),
    "projective": SurfaceClass(1, False),
    "torus": SurfaceClass(0, True),
    "klein": SurfaceClass(0, False),
}


@dataclass
class ValidationReport:
    failures: list[str] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.failures

    def __str__(self):
        return "valid" if self.valid else "; ".join(self.failures)


class InvalidMap(ValueError):
    pass


def validate(fs: FlagSystem) -> ValidationReport:
    """Report every violated flag-system invariant."""
    rep = ValidationReport()
    n = fs.nflags
    if n == 0:
        rep.failures.append("empty flag set")
        return rep
    for name, p in (("t0", fs.t0), ("t1", fs.t1), ("t2", fs.t2)):
        if len(p) != n:
            rep.failures.append(f"{name} has length {len(p)}, expected {n}")
            return rep
        if any(not 0 <= y < n for y in p):
            rep.failures.append(f"{name} has an image out of range")
            return rep
    if n % 4:
        rep.failures.append("number of flags is not a multiple of 4")
    for name, p in (("t0", fs.t0), ("t1", fs.t1), ("t2", fs.t2)):
        if any(p[x] == x for x in range(n)):
            rep.failures.append(f"{name} not fixed-point-free")
        if any(p[p[x]] != x for x in range(n)):
            rep.failures.append(f"{name} not an involution")
    if rep.failures:
        return rep
    t0, t2 = fs.t0, fs.t2
    if any(t0[t2[x]] != t2[t0[x]] for x in range(n)):
        rep.failures.append("t0 and t2 do not commute")
    elif any(t0[t2[x]] == x for x in range(n)):
        rep.failures.append("t0*t2 not fixed-point-free")
    if not 0 <= fs.root < n:
        rep.failures.append("root out of range")
    if len(set(orbit_ids(n, (fs.t0, fs.t1, fs.t2)))) != 1:
        rep.failures.append("not transitive")
    return rep


def check(fs: FlagSystem) -> FlagSystem:
    rep = validate(fs)
    if not rep.valid:
        raise InvalidMap(str(rep))
    return fs


def is_orientable(fs: FlagSystem) -> bool:
    """Two-colour the flag graph so that every involution swaps colours."""
    colour = [-1] * fs.nflags
    colour[0] = 0
    stack = [0]
    while stack:
        x = stack.pop()
        for p in (fs.t0, fs.t1, fs.t2):
            y = p[x]
            if colour[y] == -1:
                colour[y] = 1 - colour[x]
                stack.append(y)
            elif colour[y] == colour[x]:
                return False
    return True


def euler_characteristic(fs: FlagSystem) -> int:
    return len(set(fs.vertex_ids())) - fs.nedges + len(set(fs.face_ids()))


def classify_surface(fs: FlagSystem) -> SurfaceClass:
    check(fs)
    return SurfaceClass(euler_characteristic(fs), is_orientable(fs))


def root_flip(fs: FlagSystem) -> FlagSystem:
    """Reroot at the oriented corner at the far end of the root edge, same side."""
    return fs.rerooted(fs.t0[fs.root])


def is_bipartite(fs: FlagSystem) -> bool:
    adj = fs.neighbors()
    colour: dict[int, int] = {}
    for s in adj:
        if s in colour:
            continue
        colour[s] = 0
        stack = [s]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in colour:
                    colour[w] = 1 - colour[v]
                    stack.append(w)
                elif colour[w] == colour[v]:
                    return False
    return True


@dataclass(frozen=True)
class PointedMap:
    map: FlagSystem
    point: int
    labels: dict[int, int] = field(compare=False, hash=False)

    def label(self, x: int) -> int:
        """Label of the vertex of flag ``x``."""
        return self.labels[self.map.vertex_ids()[x]]

    def flag_labels(self) -> list[int]:
        vid = self.map.vertex_ids()
        return [self.labels[v] for v in vid]


def bfs_distances(adj: dict[int, list[int]], source: int) -> dict[int, int]:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def distance_labels(fs: FlagSystem, point: int) -> PointedMap:
    """Point ``fs`` at the vertex containing flag ``point``; label by distance."""
    vid = fs.vertex_ids()
    if not 0 <= point < fs.nflags:
        raise ValueError(f"{point} is not a vertex of the map")
    v = vid[point]
    return PointedMap(fs, v, bfs_distances(fs.neighbors(), v))


def pointed_at_vertex(fs: FlagSystem, vertex: int) -> PointedMap:
    if vertex not in set(fs.vertex_ids()):
        raise ValueError(f"{vertex} is not a vertex id of the map")
    return distance_labels(fs, vertex)


def subdivide_equilabeled(pm: PointedMap) -> tuple[PointedMap, frozenset[int]]:
    """Split each edge whose endpoints share a label by a new vertex.

    The new vertex gets the common label plus one.  New flags are appended
    after the old ones, so old vertex ids are unchanged.
    """
    fs = pm.map
    vid = fs.vertex_ids()
    t0, t1, t2 = list(fs.t0), list(fs.t1), list(fs.t2)
    labels = dict(pm.labels)
    added = []
    seen = set()
    for a in range(fs.nflags):
        if a in seen or labels[vid[a]] != labels[vid[fs.t0[a]]]:
            continue
        b, c = fs.t2[a], fs.t0[a]
        d = fs.t0[b]
        seen.update((a, b, c, d))
        base = len(t0)
        na, nb, nc, nd = base, base + 1, base + 2, base + 3
        t0.extend([a, b, c, d])
        t1.extend([nc, nd, na, nb])
        t2.extend([nb, na, nd, nc])
        t0[a], t0[b], t0[c], t0[d] = na, nb, nc, nd
        labels[na] = labels[vid[a]] + 1
        added.append(na)
    out = FlagSystem(t0, t1, t2, fs.root)
    return PointedMap(out, pm.point, labels), frozenset(added)


def relabel(fs: FlagSystem, order: Sequence[int]) -> FlagSystem:
    """Renumber flags so that old flag ``order[k]`` becomes ``k``."""
    new = {old: k for k, old in enumerate(order)}
    perm = lambda p: [new[p[old]] for old in order]
    return FlagSystem(perm(fs.t0), perm(fs.t1), perm(fs.t2), new[fs.root])


def pointed_code(pm: PointedMap) -> tuple[bytes, int]:
    """Isomorphism invariant of a rooted map together with its point."""
    order = traversal_order(pm.map)
    vid = pm.map.vertex_ids()
    return canonical_code(pm.map), min(k for k, x in enumerate(order) if vid[x] == pm.point)


def traversal_order(fs: FlagSystem, root: int | None = None) -> list[int]:
    start = fs.root if root is None else root
    order = [start]
    seen = {start}
    k = 0
    while k < len(order):
        x = order[k]
        k += 1
        for p in (fs.t0, fs.t1, fs.t2):
            y = p[x]
            if y not in seen:
                seen.add(y)
                order.append(y)
    return order


def canonical_form(fs: FlagSystem, root: int | None = None) -> FlagSystem:
    return relabel(fs, traversal_order(fs, root))


def canonical_code(fs: FlagSystem, root: int | None = None) -> bytes:
    """Isomorphism invariant of the rooted map, computed by BFS from the root."""
    c = canonical_form(fs, root)
    n = c.nflags
    width = 1 if n < 256 else 2
    out = bytearray(n.to_bytes(2, "big"))
    for p in (c.t0, c.t1, c.t2):
        for y in p:
            out += y.to_bytes(width, "big")
    return bytes(out)


def decode(code: bytes) -> FlagSystem:
    n = int.from_bytes(code[:2], "big")
    width = 1 if n < 256 else 2
    vals = [int.from_bytes(code[2 + k * width:2 + (k + 1) * width], "big")
            for k in range(3 * n)]
    return FlagSystem(vals[:n], vals[n:2 * n], vals[2 * n:], 0)


def is_isomorphic(a: FlagSystem, b: FlagSystem) -> bool:
    return a.nflags == b.nflags and canonical_code(a) == canonical_code(b)


# small explicit maps ---------------------------------------------------------

def single_edge() -> FlagSystem:
    # flags 0,1 at one end, 2,3 at the other; 0 and 2 on the same side
    return FlagSystem([2, 3, 0, 1], [1, 0, 3, 2], [1, 0, 3, 2], 0)


def plane_loop() -> FlagSystem:
    # one vertex, one untwisted loop: two faces of degree 1
    return FlagSystem([2, 3, 0, 1], [2, 3, 0, 1], [1, 0, 3, 2], 0)


def twisted_loop() -> FlagSystem:
    # one vertex, one twisted loop in the projective plane: one face
    return FlagSystem([2, 3, 0, 1], [3, 2, 1, 0], [1, 0, 3, 2], 0)


# polygon gluings -------------------------------------------------------------

def glue_polygons(degrees: Sequence[int], pairs: Iterable[tuple[int, int, bool]],
                  root: int = 0) -> FlagSystem:
    """Build a map from polygons whose sides are glued in pairs.

    Sides are numbered consecutively polygon after polygon.  A pair
    ``(k, l, twisted)`` glues side ``k`` to side ``l``; an untwisted pair
    identifies the sides with opposite boundary directions, which is the
    orientable gluing.  Side ``k`` carries flags ``2k`` (at its start,
    heading along it) and ``2k+1`` (at its end).
    """
    total = sum(degrees)
    n = 2 * total
    t0 = [0] * n
    t1 = [0] * n
    t2 = [-1] * n
    base = 0
    for d in degrees:
        for j in range(d):
            k = base + j
            nxt = base + (j + 1) % d
            t0[2 * k], t0[2 * k + 1] = 2 * k + 1, 2 * k
            t1[2 * k + 1], t1[2 * nxt] = 2 * nxt, 2 * k + 1
        base += d
    for k, l, twisted in pairs:
        if twisted:
            a, b = (2 * k, 2 * l), (2 * k + 1, 2 * l + 1)
        else:
            a, b = (2 * k, 2 * l + 1), (2 * k + 1, 2 * l)
        for x, y in (a, b):
            t2[x], t2[y] = y, x
    if -1 in t2:
        raise ValueError("sides not perfectly paired")
    return FlagSystem(t0, t1, t2, root)


@dataclass(frozen=True)
class PolygonPairing:
    """A ``2E``-gon whose sides (numbered from the root) are glued in pairs ``(k, l, twisted)``."""

    sides: int
    pairs: tuple[tuple[int, int, bool], ...]

    def rebuild(self) -> FlagSystem:
        return glue_polygons([self.sides], self.pairs, root=0)

    def to_text(self) -> str:
        lines = [f"polygon: {self.sides}"]
        for k, l, twisted in self.pairs:
            lines.append(f"pair: {k + 1} {l + 1} {'twisted' if twisted else 'straight'}")
        return "\n".join(lines) + "\n"


def polygon_representation(fs: FlagSystem) -> PolygonPairing:
    r"""Cut a one-face map along its edges into a polygon with paired sides.

    Side ``k`` is the ``k``-th side met walking around the face from the root.

    >>> polygon_representation(twisted_loop()).pairs
    ((0, 1, True),)
    """
    if len(fs.faces()) != 1:
        raise ValueError("polygon representation needs a map with exactly one face")
    walk = fs.face_walk(fs.root)
    where = {}
    for k, x in enumerate(walk):
        where[x] = (k, True)            # start of side k
        where[fs.t0[x]] = (k, False)    # end of side k
    pairs = []
    for k, x in enumerate(walk):
        l, at_start = where[fs.t2[x]]
        if k < l:
            pairs.append((k, l, at_start))
    return PolygonPairing(len(walk), tuple(pairs))
