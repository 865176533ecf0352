r"""
Line-oriented text formats for maps and mobiles.

A map file lists the three involutions as 1-indexed image lists::

    nflags: 4
    t0: 2 1 4 3
    t1: 2 1 4 3
    t2: 3 4 1 2
    root: 1
    point: 1

Vertices and edges are named by any of their flags (1-indexed); output
always uses the smallest one.  A mobile file adds ``white:``, ``green:``,
``labels: v=k ...``, ``flagged: e=k ...``, ``rooting: corner k`` or
``rooting: edge e side s dir d``, and optionally ``epsilon: +``.  Blank
lines and lines starting with ``#`` are ignored.

>>> from mapbij.flags import single_edge
>>> fs, point = parse_map(format_map(single_edge(), point=0))
>>> fs == single_edge(), point
(True, 0)
"""

from __future__ import annotations

from dataclasses import dataclass

from .flags import FlagSystem
from .mobile import GREEN, WHITE, Mobile

MAP_KEYS = ("nflags", "t0", "t1", "t2", "root", "point")
MOBILE_KEYS = MAP_KEYS + ("white", "green", "labels", "flagged", "rooting", "epsilon")


class ParseError(ValueError):
    """A malformed file; ``line`` is 1-based, or 0 when no single line is at fault."""

    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


@dataclass
class _Fields:
    values: dict[str, str]
    lines: dict[str, int]

    def line(self, key: str) -> int:
        return self.lines.get(key, 0)

    def ints(self, key: str) -> list[int]:
        try:
            return [int(w) for w in self.values[key].split()]
        except ValueError:
            raise ParseError(self.line(key), f"{key}: expected integers") from None

    def pairs(self, key: str) -> list[tuple[int, int]]:
        out = []
        for word in self.values.get(key, "").split():
            a, eq, b = word.partition("=")
            try:
                if not eq:
                    raise ValueError
                out.append((int(a), int(b)))
            except ValueError:
                raise ParseError(self.line(key), f"{key}: expected item=value, got {word!r}") from None
        return out


def _fields(text: str, allowed: tuple[str, ...]) -> _Fields:
    values, lines = {}, {}
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, colon, rest = line.partition(":")
        key = key.strip()
        if not colon:
            raise ParseError(no, f"expected 'key: value', got {line!r}")
        if key not in allowed:
            raise ParseError(no, f"unknown key {key!r}")
        if key in values:
            raise ParseError(no, f"duplicate key {key!r}")
        values[key] = rest.strip()
        lines[key] = no
    return _Fields(values, lines)


def _flag_block(f: _Fields) -> FlagSystem:
    for key in ("nflags", "t0", "t1", "t2", "root"):
        if key not in f.values:
            raise ParseError(0, f"missing line {key!r}")
    n_list = f.ints("nflags")
    if len(n_list) != 1 or n_list[0] <= 0:
        raise ParseError(f.line("nflags"), "nflags must be one positive integer")
    n = n_list[0]
    perms = []
    for key in ("t0", "t1", "t2"):
        images = f.ints(key)
        no = f.line(key)
        if len(images) != n:
            raise ParseError(no, f"{key} lists {len(images)} images, expected {n}")
        if any(not 1 <= y <= n for y in images):
            raise ParseError(no, f"{key} has an image outside 1..{n}")
        p = [y - 1 for y in images]
        for x in range(n):
            if p[x] == x:
                raise ParseError(no, f"{key} fixes flag {x + 1}")
            if p[p[x]] != x:
                raise ParseError(no, f"{key} is not an involution: {x + 1} -> {p[x] + 1} -> {p[p[x]] + 1}")
        perms.append(p)
    root = _one_flag(f, "root", n)
    return FlagSystem(perms[0], perms[1], perms[2], root)


def _one_flag(f: _Fields, key: str, n: int) -> int:
    vals = f.ints(key)
    if len(vals) != 1 or not 1 <= vals[0] <= n:
        raise ParseError(f.line(key), f"{key} must be one flag in 1..{n}")
    return vals[0] - 1


def parse_map(text: str) -> tuple[FlagSystem, int | None]:
    """A map and its point (a vertex id), if the file names one."""
    f = _fields(text, MAP_KEYS)
    fs = _flag_block(f)
    point = None
    if "point" in f.values:
        point = fs.vertex_ids()[_one_flag(f, "point", fs.nflags)]
    return fs, point


def format_map(fs: FlagSystem, point: int | None = None) -> str:
    lines = [f"nflags: {fs.nflags}"]
    for name, p in (("t0", fs.t0), ("t1", fs.t1), ("t2", fs.t2)):
        lines.append(f"{name}: " + " ".join(str(y + 1) for y in p))
    lines.append(f"root: {fs.root + 1}")
    if point is not None:
        lines.append(f"point: {point + 1}")
    return "\n".join(lines) + "\n"


def _edge_flags(fs: FlagSystem, e: int) -> list[int]:
    return [e, fs.t0[e], fs.t2[e], fs.t0[fs.t2[e]]]


def parse_mobile(text: str) -> tuple[Mobile, str | None]:
    r"""A mobile and the sign given in the file, if any.

    >>> from mapbij.flags import single_edge
    >>> mob = Mobile(single_edge(), {0: WHITE, 2: GREEN}, {0: 1})
    >>> back, eps = parse_mobile(format_mobile(mob, "+"))
    >>> back.code() == mob.code(), eps
    (True, '+')
    """
    f = _fields(text, MOBILE_KEYS)
    fs = _flag_block(f)
    n = fs.nflags
    vid, eid = fs.vertex_ids(), fs.edge_ids()

    def vertex(key: str, k: int) -> int:
        if not 1 <= k <= n:
            raise ParseError(f.line(key), f"{key}: flag {k} outside 1..{n}")
        return vid[k - 1]

    colour: dict[int, str] = {}
    for key, c in (("white", WHITE), ("green", GREEN)):
        for k in f.ints(key) if key in f.values else []:
            v = vertex(key, k)
            if v in colour:
                raise ParseError(f.line(key), f"vertex {v + 1} coloured twice")
            colour[v] = c
    missing = sorted(set(vid) - set(colour))
    if missing:
        raise ParseError(0, "uncoloured vertices: " + " ".join(str(v + 1) for v in missing))

    labels = {}
    for k, lab in f.pairs("labels"):
        v = vertex("labels", k)
        if colour[v] != WHITE:
            raise ParseError(f.line("labels"), f"vertex {v + 1} is green and cannot carry a label")
        labels[v] = lab
    unlabeled = sorted(v for v, c in colour.items() if c == WHITE and v not in labels)
    if unlabeled:
        raise ParseError(f.line("labels"), "white vertices without label: " + " ".join(str(v + 1) for v in unlabeled))

    flag_labels = {}
    for k, lab in f.pairs("flagged"):
        if not 1 <= k <= n:
            raise ParseError(f.line("flagged"), f"flagged: flag {k} outside 1..{n}")
        e = eid[k - 1]
        if colour[vid[e]] != GREEN or colour[vid[fs.t0[e]]] != GREEN:
            raise ParseError(f.line("flagged"), f"edge {e + 1} is not green-green")
        flag_labels[e] = lab
    for x in range(n):
        if colour[vid[x]] == colour[vid[fs.t0[x]]] and eid[x] not in flag_labels:
            kind = "white-white" if colour[vid[x]] == WHITE else "unflagged green-green"
            raise ParseError(0, f"edge {eid[x] + 1} is {kind}")

    edge_rooted = False
    if "rooting" in f.values:
        words = f.values["rooting"].split()
        no = f.line("rooting")
        try:
            if words[0] == "corner" and len(words) == 2:
                root = int(words[1]) - 1
            elif words[0] == "edge" and len(words) == 6 and words[2] == "side" and words[4] == "dir":
                e, s, d = int(words[1]) - 1, int(words[3]), int(words[5])
                if not 0 <= e < n or s not in (0, 1) or d not in (0, 1):
                    raise ValueError
                root = _edge_flags(fs, eid[e])[2 * s + d]
                edge_rooted = True
            else:
                raise ValueError
        except (ValueError, IndexError):
            raise ParseError(no, "rooting must be 'corner k' or 'edge e side s dir d'") from None
        if root != fs.root:
            raise ParseError(no, f"rooting names flag {root + 1} but root is {fs.root + 1}")
        if edge_rooted and eid[root] not in flag_labels:
            raise ParseError(no, "an edge rooting needs a flagged edge")
        if not edge_rooted and colour[vid[root]] != WHITE:
            raise ParseError(no, "a corner rooting needs a white corner")

    eps = None
    if "epsilon" in f.values:
        eps = f.values["epsilon"]
        if eps not in ("+", "-"):
            raise ParseError(f.line("epsilon"), "epsilon must be + or -")
    return Mobile(fs, colour, labels, flag_labels, edge_rooted), eps


def format_mobile(mob: Mobile, eps: str | None = None) -> str:
    fs = mob.map
    out = [format_map(fs).rstrip("\n")]
    for name, c in (("white", WHITE), ("green", GREEN)):
        out.append(f"{name}: " + " ".join(str(v + 1) for v in sorted(mob.colour) if mob.colour[v] == c))
    out.append("labels: " + " ".join(f"{v + 1}={mob.labels[v]}" for v in sorted(mob.labels)))
    if mob.flag_labels:
        out.append("flagged: " + " ".join(f"{e + 1}={mob.flag_labels[e]}" for e in sorted(mob.flag_labels)))
    if mob.edge_rooted:
        e = fs.edge_ids()[fs.root]
        k = _edge_flags(fs, e).index(fs.root)
        out.append(f"rooting: edge {e + 1} side {k // 2} dir {k % 2}")
    else:
        out.append(f"rooting: corner {fs.root + 1}")
    if eps is not None:
        out.append(f"epsilon: {eps}")
    return "\n".join(line.rstrip() for line in out) + "\n"
