"""
Level loops of a pointed bipartite map.

For a level ``i`` the loop walk acts on flags whose vertex label is at most
``i``.  A flag at a vertex labeled ``i`` heading to a vertex labeled ``i+1``
turns around its vertex (``t1 t2``); every other flag walks along its face
(``t1 t0``).  This is a permutation, its cycles are oriented walks, and the
cycle through ``t1(x)`` is the reverse of the cycle through ``x``.

A cycle is a level loop when it runs along an edge whose endpoints are
labeled ``i-1`` and ``i``.  A loop that never turns stays inside one face; it
is the loop at the maximal level of that face and is left out of the
ordering.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .flags import FlagSystem


@dataclass(frozen=True)
class OrientationPolicy:
    """Signs applied, in order, to the loops oriented during discovery.

    After the listed signs the last one repeats.  ``"+"`` keeps the induced
    orientation and ``"-"`` reverses it.  Loops through the root corner are
    always oriented by the root.
    """

    rule_sequence: tuple[str, ...] = ("+",)

    def __post_init__(self):
        if not self.rule_sequence or any(s not in "+-" for s in self.rule_sequence):
            raise ValueError("rule sequence must be a nonempty string over '+-'")
        object.__setattr__(self, "rule_sequence", tuple(self.rule_sequence))

    def rule(self, k: int) -> str:
        seq = self.rule_sequence
        return seq[k] if k < len(seq) else seq[-1]

    @classmethod
    def parse(cls, text: str) -> "OrientationPolicy":
        return cls(tuple(text.strip()))


DEFAULT_POLICY = OrientationPolicy()


@dataclass
class LevelLoop:
    level: int
    cycles: tuple[tuple[int, ...], tuple[int, ...]]
    maximal: bool = False
    walk: tuple[int, ...] = ()
    origin: int = 0
    rank: int | None = None

    @property
    def oriented(self) -> bool:
        return bool(self.walk)

    def flags(self) -> set[int]:
        return set(self.cycles[0]) | set(self.cycles[1])

    def orient(self, x: int) -> None:
        """Orient so that the walk passes through flag ``x``; origin at ``x``."""
        for c in self.cycles:
            if x in c:
                k = c.index(x)
                self.walk = c[k:] + c[:k]
                self.origin = 0
                return
        raise ValueError("flag not on loop")

    def corners(self) -> frozenset[frozenset[int]]:
        return frozenset(frozenset(c) for c in self.cycles)


def level_step(fs: FlagSystem, lab: Sequence[int], level: int, x: int) -> int:
    if lab[x] == level and lab[fs.t0[x]] == level + 1:
        return fs.t1[fs.t2[x]]
    return fs.t1[fs.t0[x]]


def _cycle(fs: FlagSystem, lab: Sequence[int], level: int, x: int) -> tuple[int, ...]:
    out = [x]
    y = level_step(fs, lab, level, x)
    while y != x:
        out.append(y)
        y = level_step(fs, lab, level, y)
    return tuple(out)


def build_level_loops(fs: FlagSystem, lab: Sequence[int]) -> list[LevelLoop]:
    """All unoriented level loops, including the level-0 loop and the maximal ones.

    ``lab`` gives the label of the vertex of each flag.
    """
    loops: list[LevelLoop] = []
    top = max(lab)
    for level in range(0, top + 1):
        done: set[int] = set()
        for x in range(fs.nflags):
            if x in done or lab[x] > level:
                continue
            c = _cycle(fs, lab, level, x)
            r = _cycle(fs, lab, level, fs.t1[x])
            done.update(c)
            done.update(r)
            if level == 0:
                genuine = True
            else:
                genuine = any({lab[y], lab[fs.t0[y]]} == {level - 1, level} for y in c)
            if not genuine:
                continue
            turns = any(lab[y] == level and lab[fs.t0[y]] == level + 1 for y in c)
            loops.append(LevelLoop(level, (c, r), maximal=(level > 0 and not turns)))
    return loops


def orient_and_order(fs: FlagSystem, lab: Sequence[int], loops: list[LevelLoop],
                     policy: OrientationPolicy = DEFAULT_POLICY) -> list[LevelLoop]:
    """Orient, give an origin to and rank the non-maximal loops.

    Returns them in rank order.  Maximal loops are oriented along the face
    walk of their first flag and get no rank.
    """
    at_flag: dict[int, list[LevelLoop]] = {}
    for loop in loops:
        if loop.maximal:
            loop.orient(loop.cycles[0][0])
            continue
        for y in loop.flags():
            at_flag.setdefault(y, []).append(loop)

    def at_corner(y: int) -> list[LevelLoop]:
        return at_flag.get(y, [])

    root = fs.root
    order = sorted(at_corner(root), key=lambda l: l.level)
    for loop in order:
        loop.orient(root)
    discovered = 0
    k = 0
    while k < len(order):
        current = order[k]
        k += 1
        for y in current.walk:
            fresh = sorted((l for l in at_corner(y) if not l.oriented), key=lambda l: l.level)
            for loop in fresh:
                start = y if policy.rule(discovered) == "+" else fs.t1[y]
                discovered += 1
                loop.orient(start)
                order.append(loop)
    missing = [l for l in loops if not l.maximal and not l.oriented]
    if missing:
        raise RuntimeError(f"{len(missing)} level loops were never reached")
    for rank, loop in enumerate(order):
        loop.rank = rank
    return order


def selected_flags(fs: FlagSystem, lab: Sequence[int], loops: Sequence[LevelLoop]) -> set[int]:
    """Flags ``x`` whose corner is selected, ``x`` being the flag the loop uses there."""
    chosen: set[int] = set()
    for loop in loops:
        w = loop.walk
        if loop.level == 0:
            continue
        if loop.maximal:
            top = max(lab[y] for y in w)
            chosen.update(y for y in w if lab[y] == top)
            continue
        i = loop.level
        for k, y in enumerate(w):
            if lab[y] == i and lab[w[k - 1]] == i - 1:
                chosen.add(y)
    return chosen
orient_and_order_loops = orient_and_order
