"""
From a well-labeled unicellular mobile back to a pointed bipartite map.

Everything happens inside the unique face of the mobile, seen as a polygon
whose boundary lists the corners in the order given by the root.  Only white
corners matter; they are numbered ``0 .. N-1`` along this contour, position
``0`` being the root corner.

A level loop at level ``i`` is followed as a sequence of *portions*.  A
portion leaves a white corner ``s`` along the edge of its flag, runs inside
the face past every corner labeled more than ``i`` and stops at the next
white corner ``y`` labeled at most ``i``; it then crosses the edge by which
it reached ``y`` and the next portion starts on the other side of that edge.
A portion passing at least one white corner is nontrivial; the corners it
passes form the arc it delimits.

Loops are discovered from a first loop fixed by the root, each loop seeing
its neighbours at shared *places*: an edge crossed by both, or an arc
delimited by one and split off by the other.  When a loop is oriented each
nontrivial arc it delimits hangs its corners of label ``level + 1`` on the
extremity the portion visits first; that extremity must carry the label of
the loop, otherwise the mobile is not well labeled.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .flags import FlagSystem, PointedMap, distance_labels, root_flip
from .loops import DEFAULT_POLICY, OrientationPolicy
from .mobile import WHITE, Mobile
from .surgery import delete_edges


class NotWellLabeled(ValueError):
    pass


EDGE_ROOTED_MINUS = "epsilon=- forbidden for edge-rooted"


# arcs -------------------------------------------------------------------

@dataclass(frozen=True)
class Arc:
    r"""A run of contour positions whose ends are labeled below every inner one.

    ``start`` and ``end`` are contour positions and the arc runs forward from
    ``start`` to ``end``; ``start == end`` means the arc goes once around.

    >>> [a for a in arcs_of_labels([1, 2, 1]) if not a.trivial]
    [Arc(start=0, end=2, level=1, trivial=False)]
    """

    start: int
    end: int
    level: int
    internal: tuple[int, ...] = field(default=(), repr=False)
    trivial: bool = True

    @property
    def key(self) -> tuple[int, int]:
        return self.start, self.end


def arcs_of_labels(labels: Sequence[int]) -> list[Arc]:
    """All arcs of a cyclic label sequence.

    >>> [(a.start, a.end, a.level) for a in arcs_of_labels([1, 1])]
    [(0, 1, 1), (1, 0, 1)]
    """
    n = len(labels)
    out = []
    for a in range(n):
        inner_min = None
        for length in range(1, n + 1):
            b = (a + length) % n
            top = max(labels[a], labels[b])
            if inner_min is None or inner_min > top:
                inner = tuple((a + j) % n for j in range(1, length))
                out.append(Arc(a, b, top, inner, trivial=not inner))
            lb = labels[b]
            inner_min = lb if inner_min is None else min(inner_min, lb)
            if inner_min <= labels[a]:
                break
    return out


def arcs_of_contour(mob: Mobile) -> list[Arc]:
    return arcs_of_labels(contour_labels(mob))


def contour_flags(mob: Mobile) -> list[int]:
    """Flags of the white corners along the root contour."""
    return mob.white_contour()


def contour_labels(mob: Mobile) -> list[int]:
    return mob.contour_labels()


def arcs_nested(arcs: Sequence[Arc], n: int) -> bool:
    """Two nontrivial arcs sharing an inner corner are nested, the outer one lower."""
    big = [a for a in arcs if not a.trivial]
    span = {a: set(a.internal) | {a.start, a.end} for a in big}
    for a in big:
        for b in big:
            if a is b or not (span[a] & set(b.internal) or span[b] & set(a.internal)):
                continue
            if span[a] <= span[b] and b.level < a.level:
                continue
            if span[b] <= span[a] and a.level < b.level:
                continue
            return False
    return True


def has_next_label(labels: Sequence[int], arcs: Sequence[Arc]) -> bool:
    """Every nontrivial arc at level ``i`` has an inner corner labeled ``i + 1``."""
    return all(any(labels[k] == a.level + 1 for k in a.internal)
               for a in arcs if not a.trivial)


def inner_range_contiguous(labels: Sequence[int], arcs: Sequence[Arc]) -> bool:
    """Inner labels of a nontrivial arc at level ``i`` are exactly ``i+1 .. m``."""
    for a in arcs:
        if a.trivial:
            continue
        seen = {labels[k] for k in a.internal}
        if seen != set(range(a.level + 1, max(seen) + 1)):
            return False
    return True


def _nearest_below(labels: Sequence[int], k: int, step: int) -> int:
    n = len(labels)
    j = (k + step) % n
    for _ in range(n):
        if labels[j] < labels[k]:
            return j
        j = (j + step) % n
    return -1


def neighbours_step_down(labels: Sequence[int]) -> bool:
    """Each corner labeled ``i >= 2`` sees ``i - 1`` first, forward or backward."""
    for k, lab in enumerate(labels):
        if lab < 2:
            continue
        after = _nearest_below(labels, k, 1)
        before = _nearest_below(labels, k, -1)
        if lab - 1 not in (labels[after], labels[before]):
            return False
    return True


def arc_conditions(labels: Sequence[int]) -> str | None:
    """Reason why the arc conditions fail, or ``None``."""
    if not labels or min(labels) != 1:
        return "labels must have minimum 1"
    arcs = arcs_of_labels(labels)
    if not has_next_label(labels, arcs):
        return "a nontrivial arc lacks a corner one above its level"
    return None


# loops seen from the mobile ---------------------------------------------------

@dataclass
class Portion:
    start: int          # flag at the first corner
    stop: int           # flag at the last corner
    inner: tuple[int, ...]
    direction: int      # +1 along the root contour, -1 against it


@dataclass
class MobileLoop:
    level: int
    cycles: tuple[tuple[int, ...], tuple[int, ...]]
    maximal: bool = False
    events: list[list[list[tuple]]] = field(default_factory=lambda: [[], []])
    choice: int | None = None
    origin: int | None = None
    rank: int | None = None


def _meets(moment: Sequence[tuple], place: tuple) -> bool:
    return any(p[:3] == place[:3] for p in moment)


class LoopSystem:
    """Level loops of a labeled mobile and their meeting places."""

    def __init__(self, mob: Mobile):
        self.mob = mob
        u = self.u = mob.map
        vid = u.vertex_ids()
        self.eid = u.edge_ids()
        self.white = [mob.colour[vid[x]] == WHITE for x in range(u.nflags)]
        self.lab = [mob.labels.get(vid[x], 0) for x in range(u.nflags)]
        self.flags = mob.white_contour()
        self.labels = [self.lab[x] for x in self.flags]
        self.n = len(self.flags)
        self.pos: dict[int, int] = {}
        self.dir: dict[int, int] = {}
        for k, x in enumerate(self.flags):
            self.pos[x], self.dir[x] = k, 1
            self.pos[u.t1[x]], self.dir[u.t1[x]] = k, -1
        self.owner: dict[tuple[int, int], tuple[MobileLoop, int]] = {}
        self.loops = self._build()

    # portions and cycles

    def portion(self, level: int, s: int) -> Portion:
        u = self.u
        y = u.face_step(s)
        inner = []
        while not (self.white[y] and self.lab[y] <= level):
            if self.white[y]:
                inner.append(y)
            y = u.face_step(y)
        return Portion(s, y, tuple(inner), self.dir[s])

    def step(self, level: int, s: int) -> int:
        y = self.portion(level, s).stop
        return self.u.t2[self.u.t1[y]]

    def _cycles(self, level: int) -> list[tuple[int, ...]]:
        seen: set[int] = set()
        out = []
        for s in range(self.u.nflags):
            if s in seen or not self.white[s] or self.lab[s] > level:
                continue
            c = [s]
            x = self.step(level, s)
            while x != s:
                c.append(x)
                x = self.step(level, x)
            seen.update(c)
            out.append(tuple(c))
        return out

    def _build(self) -> list[MobileLoop]:
        loops = []
        for level in range(1, max(self.labels) + 1):
            cycles = self._cycles(level)
            where = {s: k for k, c in enumerate(cycles) for s in c}
            done: set[int] = set()
            for k, c in enumerate(cycles):
                if k in done or not any(self.lab[s] == level for s in c):
                    continue
                back = where[self.u.t2[c[0]]]
                done.update((k, back))
                maximal = not any(self.portion(level, s).inner for s in c)
                loop = MobileLoop(level, (c, cycles[back]), maximal)
                for side in (0, 1):
                    for st in loop.cycles[side]:
                        self.owner[(level, st)] = (loop, side)
                if not maximal:
                    loop.events = [self._events(level, c), self._events(level, cycles[back])]
                loops.append(loop)
        ones = [k for k, lab in enumerate(self.labels) if lab == 1]
        pairs = [(ones[j], ones[(j + 1) % len(ones)]) for j in range(len(ones))]
        ground = MobileLoop(0, ((), ()))
        ground.events = [[[("arc", p, 1, "corner")] for p in pairs],
                         [[("arc", p, -1, "corner")] for p in reversed(pairs)]]
        return [ground] + loops

    def arc_key(self, s: int, y: int) -> tuple[int, int]:
        a, b = self.pos[s], self.pos[y]
        return (a, b) if self.dir[s] == 1 else (b, a)

    def _events(self, level: int, cycle: Sequence[int]) -> list[list[tuple]]:
        """Places met along an oriented loop; one list of places per moment."""
        u, eid = self.u, self.eid
        moments: list[list[tuple]] = []
        for s in cycle:
            p = self.portion(level, s)
            d = p.direction
            first = [("edge", eid[s], s)]
            if p.inner:
                hooks = [x for x in p.inner if self.lab[x] == level + 1]
                pts = [s] + hooks + [p.stop]
                first.append(("arc", self.arc_key(s, pts[1]), d, "corner"))
                moments.append(first)
                for a, b in zip(pts[1:-1], pts[2:]):
                    moments.append([("arc", self.arc_key(a, b), d, "corner")])
            else:
                moments.append(first)
            moments.append([("arc", self.arc_key(s, p.stop), d)])
            back = u.t2[u.t1[p.stop]]
            moments.append([("edge", eid[back], back)])
        # the crossing ending a portion is the one starting the next
        merged: list[list[tuple]] = []
        for m in moments:
            if merged and len(merged[-1]) == 1 and merged[-1][0][0] == "edge" and merged[-1][0] == m[0]:
                merged[-1] = m
            else:
                merged.append(m)
        if len(merged) > 1 and len(merged[-1]) == 1 and merged[-1][0] in merged[0]:
            merged.pop()
        return merged

    # ordering

    def first_loop(self) -> tuple[MobileLoop, int, int]:
        """The loop above the root corner, its orientation and its origin."""
        root_label = self.labels[0]
        q = next(k % self.n for k in range(1, self.n + 1) if self.labels[k % self.n] <= root_label)
        target = ("arc", (0, q), -1)
        if root_label == 1:
            # the corner of the pointed vertex just before the root
            p = next((self.n - k) % self.n for k in range(1, self.n + 1) if self.labels[(self.n - k) % self.n] == 1)
            loop = self.loops[0]
            return loop, 1, next(k for k, m in enumerate(loop.events[1]) if _meets(m, ("arc", (p, 0), -1)))
        for loop in self.loops:
            if loop.level != root_label - 1 or loop.maximal:
                continue
            for c in (0, 1):
                for k, m in enumerate(loop.events[c]):
                    if _meets(m, target):
                        return loop, c, k
        raise NotWellLabeled("no loop passes above the root corner")

    def _nested(self, place: tuple):
        """The sub-arc one level deeper seen from a corner below ``place``.

        Corners hang from one end of an arc; the other end is the side left
        open, so the nested arc is the one touching it.  Returns ``("wait",)``
        while the loop deciding that end is not oriented yet.
        """
        a, b = place[1]
        n = self.n
        inner = [(a + k) % n for k in range(1, (b - a) % n or n)]
        if not inner:
            return None
        m = min(self.labels[k] for k in inner)
        loop, c = self.owner[(m - 1, self.flags[a])]
        if loop.choice is None:
            return ("wait",)
        hooks = [k for k in inner if self.labels[k] == m]
        sub = (hooks[-1], b) if loop.choice == c else (a, hooks[0])
        return ("arc", sub, place[2], "corner")

    def _root_loops(self, first: MobileLoop, active: Sequence[MobileLoop]) -> list[MobileLoop]:
        """Loops above the first one at the root corner, oriented and given an origin."""
        out = []
        n = self.n
        for loop in sorted(active, key=lambda l: l.level):
            if loop is first or loop.level < self.labels[0]:
                continue
            # only the arc right after the root position, run backward, reaches the map
            # root; the arc before it may belong to another loop through the same vertex
            q = next(k % n for k in range(1, n + 1) if self.labels[k % n] <= loop.level)
            place = ("arc", (0, q), -1)
            hits = [(c, k) for c in (0, 1) for k, m in enumerate(loop.events[c]) if _meets(m, place)]
            if hits:
                loop.choice, loop.origin = hits[0]
                out.append(loop)
        return out

    def order(self, policy: OrientationPolicy = DEFAULT_POLICY) -> list[MobileLoop]:
        active = [l for l in self.loops if not l.maximal]
        index: dict[tuple, list[tuple[MobileLoop, int, int, tuple]]] = {}
        for loop in active:
            for c in (0, 1):
                for k, moment in enumerate(loop.events[c]):
                    for place in moment:
                        index.setdefault(place[:2], []).append((loop, c, k, place))
        first, c0, k0 = self.first_loop()
        first.choice, first.origin = c0, k0
        order = [first]
        for loop in self._root_loops(first, active):
            order.append(loop)
        discovered = 0
        q = 0
        while q < len(order):
            loop = order[q]
            q += 1
            moments = loop.events[loop.choice]
            for j in range(len(moments)):
                moment = moments[(loop.origin + j) % len(moments)]
                places = list(moment)
                expanded: set[int] = set()
                while True:
                    # corners passed here also lie under nested sub-arcs
                    for t, place in enumerate(places):
                        if t in expanded or len(place) < 4:
                            continue
                        sub = self._nested(place)
                        if sub is not None and sub[0] == "wait":
                            continue
                        expanded.add(t)
                        if sub is not None:
                            places.append(sub)
                    fresh = []
                    for place in places:
                        for other, c, k, there in index.get(place[:2], ()):
                            if other.choice is None and there[2] == place[2]:
                                fresh.append((other.level, other, c, k, place))
                    if not fresh:
                        break
                    _, other, c, k, place = min(fresh, key=lambda t: t[0])
                    if policy.rule(discovered) == "-":
                        c = 1 - c
                        k = next(kk for kk, m in enumerate(other.events[c])
                                 if any(p[:2] == place[:2] for p in m))
                    discovered += 1
                    other.choice, other.origin = c, k
                    order.append(other)
        missing = [l for l in active if l.choice is None]
        if missing:
            raise NotWellLabeled(f"{len(missing)} loops are never reached")
        for rank, loop in enumerate(order):
            loop.rank = rank
        return order

    # identifications

    def hangings(self, order: Sequence[MobileLoop]) -> dict[tuple[int, int], str]:
        """For each nontrivial arc, the end (``"start"`` or ``"end"``) carrying its corners."""
        out = {}
        for loop in order:
            if loop.level == 0:
                continue
            for s in loop.cycles[loop.choice]:
                p = self.portion(loop.level, s)
                if not p.inner:
                    continue
                if self.lab[s] != loop.level:
                    raise NotWellLabeled(
                        f"loop at level {loop.level} enters an arc from a corner labeled {self.lab[s]}")
                out[self.arc_key(s, p.stop)] = "start" if p.direction == 1 else "end"
        return out


# the inverse map ------------------------------------------------------------

def _parent_arc(labels: Sequence[int], k: int) -> tuple[int, int]:
    return _nearest_below(labels, k, -1), _nearest_below(labels, k, 1)


def check_well_labeled(mob: Mobile, policy: OrientationPolicy = DEFAULT_POLICY) -> bool:
    r"""Whether the mobile is the image of a pointed bipartite map.

    >>> from mapbij.flags import single_edge
    >>> check_well_labeled(Mobile(single_edge(), {0: "white", 2: "green"}, {0: 1}))
    True
    """
    return well_labeled_reason(mob, policy) is None


def well_labeled_reason(mob: Mobile, policy: OrientationPolicy = DEFAULT_POLICY) -> str | None:
    try:
        _plan(mob, policy)
    except NotWellLabeled as exc:
        return str(exc)
    return None


def _plan(mob: Mobile, policy: OrientationPolicy):
    if len(set(mob.map.face_ids())) != 1:
        raise NotWellLabeled("a mobile has exactly one face")
    vid = mob.map.vertex_ids()
    if mob.colour[vid[mob.root]] != WHITE:
        raise NotWellLabeled("the root corner must be white")
    labels = contour_labels(mob)
    why = arc_conditions(labels)
    if why:
        raise NotWellLabeled(why)
    system = LoopSystem(mob)
    order = system.order(policy)
    return system, system.hangings(order)


def psi_bipartite(mob: Mobile, eps: str = "+", policy: OrientationPolicy = DEFAULT_POLICY) -> PointedMap:
    r"""Rebuild the pointed bipartite map encoded by a well-labeled mobile.

    >>> from mapbij.flags import single_edge
    >>> pm = psi_bipartite(Mobile(single_edge(), {0: "white", 2: "green"}, {0: 1}))
    >>> pm.map.nedges, sorted(pm.labels.values())
    (1, [0, 1])
    """
    return psi_trace(mob, eps, policy)[0]


def psi_trace(mob: Mobile, eps: str = "+", policy: OrientationPolicy = DEFAULT_POLICY):
    """Like :func:`psi_bipartite`, also returning white vertex -> vertex of the map."""
    if eps not in "+-" or len(eps) != 1:
        raise ValueError("epsilon must be '+' or '-'")
    if mob.edge_rooted and eps == "-":
        raise NotWellLabeled(EDGE_ROOTED_MINUS)
    system, hang = _plan(mob, policy)
    fs, apex, at_corner = _black_map(system, hang)
    if eps == "-":
        fs = root_flip(fs)
    vid_mob = mob.map.vertex_ids()
    vid = fs.vertex_ids()
    where = {vid_mob[x]: vid[at_corner[k]] for k, x in enumerate(system.flags)}
    return distance_labels(fs, apex), where


def _black_map(system: LoopSystem, hang: dict[tuple[int, int], str]):
    """Draw the black edges inside the face, then erase the mobile."""
    u, labels, n = system.u, system.labels, system.n
    # ports[k]: black edges at corner k, from the side before it to the side after it
    before: list[list[int]] = [[] for _ in range(n)]
    after: list[list[int]] = [[] for _ in range(n)]
    parent_slot: list[int] = [0] * n
    edges: list[tuple[int, int | None]] = []   # (child corner, parent corner or None for the apex)
    for k in range(n):
        if labels[k] == 1:
            edges.append((k, None))
            continue
        a, b = _parent_arc(labels, k)
        side = hang.get((a, b))
        if side is None:
            raise NotWellLabeled("an arc was never oriented")
        edges.append((k, a if side == "start" else b))
    for e, (k, p) in enumerate(edges):
        parent_slot[k] = e
        if p is None:
            continue
        (after if hang[_parent_arc(labels, k)] == "start" else before)[p].append(e)
    for k in range(n):
        before[k].sort(key=lambda e: (k - edges[e][0]) % n)
        after[k].sort(key=lambda e: (k - edges[e][0]) % n)

    t0, t1, t2 = list(u.t0), list(u.t1), list(u.t2)
    base = u.nflags
    # flags of black edge e: child end (4e, 4e+1), parent end (4e+2, 4e+3);
    # the first of each pair faces the contour before its corner
    flag = lambda e, j: base + 4 * e + j
    for e in range(len(edges)):
        t0 += [flag(e, 3), flag(e, 2), flag(e, 1), flag(e, 0)]
        t2 += [flag(e, 1), flag(e, 0), flag(e, 3), flag(e, 2)]
        t1 += [0, 0, 0, 0]
    for e, (k, p) in enumerate(edges):
        if p is None:
            # towards the apex: the child end faces match the apex end faces
            t0[flag(e, 0)], t0[flag(e, 2)] = flag(e, 2), flag(e, 0)
            t0[flag(e, 1)], t0[flag(e, 3)] = flag(e, 3), flag(e, 1)
    for k in range(n):
        x = system.flags[k]
        prev = u.t1[x]
        ports = [(e, 2) for e in before[k]] + [(parent_slot[k], 0)] + [(e, 2) for e in after[k]]
        chain = [prev]
        for e, j in ports:
            chain += [flag(e, j), flag(e, j + 1)]
        chain.append(x)
        for a, b in zip(chain[0::2], chain[1::2]):
            t1[a], t1[b] = b, a
    apex = [e for e, (k, p) in enumerate(edges) if p is None]
    for j, e in enumerate(apex):
        nxt = apex[(j + 1) % len(apex)]
        t1[flag(e, 3)], t1[flag(nxt, 2)] = flag(nxt, 2), flag(e, 3)
    big = FlagSystem(t0, t1, t2, u.root)
    r = big.t0[big.t1[system.flags[0]]]
    fs, renum = delete_edges(big, range(base), r)
    at_corner = [renum[flag(parent_slot[k], 0)] for k in range(n)]
    return fs, renum[flag(apex[0], 2)], at_corner
