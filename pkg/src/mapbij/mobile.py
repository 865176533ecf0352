"""
Labeled unicellular mobiles.

A mobile is a one-face map whose vertices are coloured white or green.  White
vertices carry positive labels.  In the generalized setting, green-green edges
are *flagged* and carry a label too.  A mobile is rooted at an oriented corner
of a white vertex, or (generalized case) at a flag of a flagged edge; the
latter is called edge-rooted.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .flags import FlagSystem, canonical_form, classify_surface, SurfaceClass, traversal_order

WHITE = "white"
GREEN = "green"


@dataclass(frozen=True)
class Mobile:
    map: FlagSystem
    colour: dict[int, str] = field(hash=False)
    labels: dict[int, int] = field(hash=False)
    flag_labels: dict[int, int] = field(default_factory=dict, hash=False)
    edge_rooted: bool = False

    # ``colour`` and ``labels`` are keyed by vertex id, ``flag_labels`` by edge id

    @property
    def root(self) -> int:
        return self.map.root

    def vertex_of(self) -> list[int]:
        return self.map.vertex_ids()

    def is_white(self, x: int, vid: list[int] | None = None) -> bool:
        vid = vid or self.map.vertex_ids()
        return self.colour[vid[x]] == WHITE

    def flagged_edges(self) -> set[int]:
        return set(self.flag_labels)

    def surface(self) -> SurfaceClass:
        return classify_surface(self.map)

    def code(self) -> tuple:
        """Isomorphism invariant of the rooted labeled mobile."""
        order = traversal_order(self.map)
        fs = canonical_form(self.map)
        vid = self.map.vertex_ids()
        eid = self.map.edge_ids()
        per_flag = []
        for x in order:
            v = vid[x]
            if self.colour[v] == WHITE:
                per_flag.append(self.labels[v])
            else:
                per_flag.append(-1 - self.flag_labels.get(eid[x], -1))
        return (fs.t0, fs.t1, fs.t2, tuple(per_flag), self.edge_rooted)

    def contour(self) -> list[int]:
        """Flags of the face walk from the root, one per corner."""
        return self.map.face_walk(self.root)

    def white_contour(self) -> list[int]:
        vid = self.map.vertex_ids()
        return [x for x in self.contour() if self.colour[vid[x]] == WHITE]

    def contour_labels(self) -> list[int]:
        vid = self.map.vertex_ids()
        return [self.labels[vid[x]] for x in self.white_contour()]

    def green_degree(self, v: int) -> int:
        return sum(1 for x in range(self.map.nflags)
                   if self.map.vertex_ids()[x] == v and x < self.map.t1[x])

    def generalized_degrees(self) -> dict[int, tuple[int, int]]:
        """Per green vertex: (nonflagged half-edges, flagged half-edges)."""
        vid = self.map.vertex_ids()
        eid = self.map.edge_ids()
        out = {v: [0, 0] for v, c in self.colour.items() if c == GREEN}
        for x in range(self.map.nflags):
            if x < self.map.t2[x] and self.colour[vid[x]] == GREEN:
                out[vid[x]][1 if eid[x] in self.flag_labels else 0] += 1
        return {v: (a, b) for v, (a, b) in out.items()}
