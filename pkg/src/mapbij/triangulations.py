r"""
Generating functions of triangulations, through their mobiles.

Mobiles of pointed triangulations break into small pieces.  ``F`` and ``N``
count the two kinds of dangling pieces with weight ``t`` per edge; chains
between two marked points are counted with the help of Motzkin words, whose
series ``U`` and ``B`` are in ``Z = N^3``.  Everything is expressed in
``x = t^3``, where it becomes algebraic in the series ``sigma = tF``.

Inside this module the labels of flagged edges are shifted down by one
half, so that they sit half-way between the labels of their neighbours.

>>> solve_FN(3).sigma
RationalSeries('x', [0, 2, 12, 128])
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .flags import SURFACES, FlagSystem, SurfaceClass
from .series import RationalSeries, SeriesError, fixed_point

HALF = Fraction(1, 2)


class UnsupportedSurface(ValueError):
    pass


# the F/N system ---------------------------------------------------------------

@dataclass(frozen=True)
class FNSolution:
    F: RationalSeries       # in t
    N: RationalSeries       # in t
    sigma: RationalSeries   # tF, in x = t^3


def solve_FN(order: int) -> FNSolution:
    """Solve ``F = tF^2 + 2tN`` and ``N = t + 2tNF`` in ``t``, with ``sigma`` to ``x^order``."""
    if order < 1:
        raise SeriesError("order must be at least 1")
    top = 3 * order + 1
    t = RationalSeries.variable("t", top)
    F = N = RationalSeries.constant(0, "t", top)
    for _ in range(top + 2):
        F2, N2 = t * F * F + 2 * t * N, t + 2 * t * N * F
        if (F2, N2) == (F, N):
            break
        F, N = F2, N2
    s = (t * F).coeffs
    if any(c for k, c in enumerate(s) if k % 3):
        raise SeriesError("tF is not a series in t^3")
    return FNSolution(F, N, RationalSeries("x", s[0:3 * order + 1:3]))


@lru_cache(maxsize=None)
def sigma_of_x(order: int) -> RationalSeries:
    """``sigma`` from ``x = sigma (1 - sigma) (1 - 2 sigma) / 2`` by reversion."""
    coeffs = [0, HALF, Fraction(-3, 2), 1] + [0] * order
    return RationalSeries("x", coeffs[:order + 1]).reverse()


def motzkin_UB(order: int, var: str = "Z") -> tuple[RationalSeries, RationalSeries]:
    r"""``U = Z (1 + U)^2`` and ``B = (1 + U) / (1 - U)``.

    >>> U, B = motzkin_UB(3)
    >>> U.coeffs, B.coeffs
    ((Fraction(0, 1), Fraction(1, 1), Fraction(2, 1), Fraction(5, 1)), (Fraction(1, 1), Fraction(2, 1), Fraction(6, 1), Fraction(20, 1)))
    """
    z = RationalSeries.variable(var, order)
    U = fixed_point(lambda u: z * (1 + u) ** 2, RationalSeries.constant(0, var, order))
    return U, (1 + U) / (1 - U)


@lru_cache(maxsize=None)
def _x_context(order: int) -> dict[str, RationalSeries]:
    """``sigma``, ``n = N/t``, ``Z``, ``U`` and ``B`` as series in ``x``."""
    sigma = sigma_of_x(order)
    n = 1 / (1 - 2 * sigma)
    Z = RationalSeries.variable("x", order) * n ** 3
    U = fixed_point(lambda u: Z * (1 + u) ** 2, RationalSeries.constant(0, "x", order))
    return {"sigma": sigma, "n": n, "Z": Z, "U": U, "B": (1 + U) / (1 - U)}


def u_of_x(order: int) -> RationalSeries:
    return _x_context(order)["U"]


# chains between two points -------------------------------------------------------

def _is_half(v: Fraction) -> bool:
    return v.denominator == 2


@dataclass(frozen=True)
class ArcGF:
    """A chain series ``N^n_power * z_part(Z)``."""

    n_power: int
    z_part: RationalSeries

    def in_t(self, order: int) -> RationalSeries:
        """Expand in ``t``, with ``Z = N^3``."""
        N = solve_FN(order).N.truncate(order)
        return self.z_part.compose(N ** 3) * N ** self.n_power


def c_arc(i: Fraction, j: Fraction, order: int) -> ArcGF:
    r"""Chains joining two points labeled ``i`` and ``j`` (integers or half-integers).

    When exactly one end is a half-integer the closed form carries a factor
    ``sqrt(N) U^(1/2)``; since ``N^3 (1 + U)^2 = U`` this is ``N^2 (1 + U)``,
    which keeps everything a power series.

    >>> c = c_arc(Fraction(1, 2), Fraction(1, 2), 2)
    >>> c.n_power, c.z_part.coeffs
    (1, (Fraction(1, 1), Fraction(2, 1), Fraction(6, 1)))
    >>> c_arc(0, 0, 2).z_part.coeffs
    (Fraction(0, 1), Fraction(2, 1), Fraction(6, 1))
    """
    i, j = Fraction(i), Fraction(j)
    if (2 * i).denominator != 1 or (2 * j).denominator != 1:
        raise ValueError("labels must be integers or half-integers")
    U, B = motzkin_UB(order)
    gap = abs(j - i)
    if _is_half(i) != _is_half(j):
        return ArcGF(2, B * U ** int(gap - HALF) * (1 + U))
    z = B * U ** int(gap)
    if i == j and not _is_half(i):
        z = z - 1
    return ArcGF(1 if _is_half(i) else 0, z)


# normalized schemes ------------------------------------------------------------

@dataclass(frozen=True)
class NormalizedScheme:
    """A unicellular map with vertex degrees at least 3 and normalized half-integer labels."""

    scheme: FlagSystem
    labels: dict[int, Fraction] = field(hash=False)

    def values(self) -> list[Fraction]:
        return sorted(set(self.labels.values()))

    def edge_ends(self) -> list[tuple[Fraction, Fraction]]:
        fs = self.scheme
        vid, eid = fs.vertex_ids(), fs.edge_ids()
        ends = {}
        for x in range(fs.nflags):
            if eid[x] == x:
                a, b = self.labels[vid[x]], self.labels[vid[fs.t0[x]]]
                ends[x] = (min(a, b), max(a, b))
        return [ends[e] for e in sorted(ends)]

    @property
    def n_edges(self) -> int:
        return self.scheme.nedges

    @property
    def equal_integer(self) -> int:
        return sum(1 for a, b in self.edge_ends() if a == b and not _is_half(a))

    @property
    def equal_half(self) -> int:
        return sum(1 for a, b in self.edge_ends() if a == b and _is_half(a))

    @property
    def unequal(self) -> int:
        return sum(1 for a, b in self.edge_ends() if a != b)

    @property
    def half_vertices(self) -> int:
        return sum(1 for v in self.labels.values() if _is_half(v))

    def d(self) -> list[int]:
        """Per gap between consecutive label values, the unequal edges spanning it."""
        vals = self.values()
        return [sum(1 for a, b in self.edge_ends() if a <= lo and hi <= b)
                for lo, hi in zip(vals, vals[1:])]

    def is_cubic(self) -> bool:
        return all(d == 3 for d in _degrees(self.scheme).values())

    def is_injective(self) -> bool:
        return len(set(self.labels.values())) == len(self.labels)


def _degrees(fs: FlagSystem) -> dict[int, int]:
    out: dict[int, int] = {}
    for v in fs.vertex_ids():
        out[v] = out.get(v, 0) + 1
    return {v: k // 2 for v, k in out.items()}


def surface_type(surface: SurfaceClass) -> Fraction:
    """``h`` with Euler characteristic ``2 - 2h``."""
    return Fraction(2 - surface.euler_char, 2)


def normalized_labelings(vertices: list[int], degree: dict[int, int],
                         max_label_values: int | None = None):
    """Labelings with smallest value 0 or 1/2 and gaps 1/2 or 1; half labels only on degree 3."""
    top = len(vertices) if max_label_values is None else min(max_label_values, len(vertices))
    for k in range(1, top + 1):
        for start in (Fraction(0), HALF):
            for gaps in product((HALF, Fraction(1)), repeat=k - 1):
                vals = [start]
                for g in gaps:
                    vals.append(vals[-1] + g)
                for pick in product(range(k), repeat=len(vertices)):
                    if len(set(pick)) != k:
                        continue
                    lab = {v: vals[p] for v, p in zip(vertices, pick)}
                    if all(degree[v] == 3 for v, l in lab.items() if _is_half(l)):
                        yield lab


def enumerate_normalized_schemes(surface: SurfaceClass, max_label_values: int | None = None
                                 ) -> list[NormalizedScheme]:
    r"""All rooted schemes of the surface with all their normalized labelings.

    A vertex with a half-integer label comes from a green vertex, which has
    degree 3 in the scheme.

    >>> len(enumerate_normalized_schemes(SURFACES["torus"]))
    11
    """
    from .enumerate import GenSpec, gen_unicellular_maps
    h = surface_type(surface)
    if h < 1:
        raise UnsupportedSurface("schemes exist only for surfaces of type at least 1")
    out = []
    for n_edges in range(int(2 * h), int(6 * h - 3) + 1):
        for fs in gen_unicellular_maps(GenSpec(surface, n_edges, "unicellular")):
            deg = _degrees(fs)
            if min(deg.values()) < 3:
                continue
            for lab in normalized_labelings(sorted(deg), deg, max_label_values):
                out.append(NormalizedScheme(fs, lab))
    return out


def scheme_core(ns: NormalizedScheme, order: int) -> RationalSeries:
    """The rational function of ``U`` attached to a normalized scheme, before its prefactor."""
    u = RationalSeries.variable("U", order)
    e, eq = ns.n_edges, ns.equal_integer
    vals, d = ns.values(), ns.d()
    power = eq + Fraction(ns.half_vertices, 2)
    out = (1 + u) ** (e - eq - ns.half_vertices) / (1 - u) ** e
    for dj, lo, hi in zip(d, vals, vals[1:]):
        power += dj * (hi - lo)
        out = out / (1 - u ** dj)
    if power.denominator != 1:
        raise SeriesError("the power of U must be an integer")
    return out * u ** int(power)


def scheme_gf_contribution(ns: NormalizedScheme, order: int) -> RationalSeries:
    r"""Contribution of a normalized scheme, in ``U``.

    On surfaces of type 1 this is its share of the generating function of
    triangulations with weight ``x`` per vertex.

    >>> theta = [s for s in enumerate_normalized_schemes(SURFACES["torus"]) if s.n_edges == 3]
    >>> zero = next(s for s in theta if set(s.labels.values()) == {0})
    >>> scheme_gf_contribution(zero, 5).coeffs
    (Fraction(0, 1), Fraction(0, 1), Fraction(0, 1), Fraction(8, 1), Fraction(24, 1), Fraction(48, 1))
    """
    return scheme_core(ns, order) * Fraction(3 * 2 ** ns.equal_integer, ns.n_edges)


def scheme_pointed_gf(ns: NormalizedScheme, order: int) -> RationalSeries:
    """Pointed triangulations whose mobile has this normalized scheme, in ``x``."""
    U = u_of_x(order)
    return scheme_gf_contribution(ns, order).compose(U).theta()


def _normalize(values: set[Fraction]) -> dict[Fraction, Fraction]:
    vals = sorted(values)
    out = {vals[0]: vals[0] - math.floor(vals[0])}
    for lo, hi in zip(vals, vals[1:]):
        out[hi] = out[lo] + (1 if (hi - lo).denominator == 1 else HALF)
    return out


def scheme_key(ns: NormalizedScheme) -> tuple:
    """Edge count, labels and edge ends of a normalized scheme, forgetting the rooting."""
    return (ns.n_edges, tuple(sorted(ns.labels.values())), tuple(sorted(ns.edge_ends())))


def mobile_scheme_key(mob) -> tuple:
    r"""The :func:`scheme_key` of the normalized scheme of a triangulation mobile.

    Flagged labels are shifted down by one half on entry.  Leaves are pruned
    repeatedly, then chains through degree-two vertices become single
    edges; a green vertex of the core takes the label of its flagged edges.
    """
    from .mobile import WHITE
    fs = mob.map
    vid, eid = fs.vertex_ids(), fs.edge_ids()
    ends: dict[int, tuple[int, int]] = {}
    for x in range(fs.nflags):
        ends.setdefault(eid[x], (vid[x], vid[fs.t0[x]]))
    flag_label = {e: Fraction(l) - HALF for e, l in mob.flag_labels.items()}
    alive = set(ends)

    def degree(v: int) -> int:
        return sum((a == v) + (b == v) for e in alive for a, b in [ends[e]])

    pruned = True
    while pruned:
        pruned = False
        for e in sorted(alive):
            a, b = ends[e]
            if a != b and (degree(a) == 1 or degree(b) == 1):
                alive.discard(e)
                pruned = True
    core = {v for e in alive for v in ends[e] if degree(v) >= 3}
    if not core:
        raise ValueError("the mobile has no vertex of degree 3 or more in its core")

    def label(v: int) -> Fraction:
        if mob.colour[v] == WHITE:
            return Fraction(mob.labels[v])
        return next(flag_label[e] for e in alive if v in ends[e])

    chains, used = [], set()
    for start in sorted(core):
        for e0 in sorted(alive):
            if e0 in used or start not in ends[e0]:
                continue
            path, v, e = [e0], start, e0
            while True:
                a, b = ends[e]
                w = b if a == v else a
                if w in core:
                    break
                e = next(f for f in alive if f != e and w in ends[f])
                path.append(e)
                v = w
            used.update(path)
            chains.append((start, w))
    norm = _normalize({label(v) for v in core})
    labels = tuple(sorted(norm[label(v)] for v in core))
    edge_ends = tuple(sorted(tuple(sorted((norm[label(a)], norm[label(b)]))) for a, b in chains))
    return (len(chains), labels, edge_ends)


# surfaces -----------------------------------------------------------------------

SIGMA_FORMS = ("sphere", "projective", "torus", "klein")


def _surface_name(surface: SurfaceClass) -> str:
    for name in SIGMA_FORMS:
        if SURFACES[name] == surface:
            return name
    return ""


def _closed_form(name: str, order: int, pointed: bool) -> RationalSeries:
    ctx = _x_context(order + 2)
    s = ctx["sigma"]
    disc = 1 - 6 * s + 6 * s * s
    if name == "sphere":
        if pointed:
            return s.shift(-1) - 2
        return s ** 3 * (1 - s) * (1 - 4 * s + 2 * s * s) / 2
    if name == "projective":
        if pointed:
            return 3 / disc * ((1 - 2 * s) / disc.sqrt() - 1 + 2 * s - 2 * s * s)
        return (1 - 2 * s) * (1 - s + s * s) / 2 - disc.sqrt() / 2
    if name == "torus":
        g = s * (1 - s) / (2 * disc ** 2)
    else:
        g = 3 * s * (1 - s) * (7 - 30 * s + 30 * s * s - 6 * (1 - 2 * s) * disc.sqrt()) / disc ** 2
    return g.theta() if pointed else g


def _u_form(name: str, order: int, pointed: bool) -> RationalSeries:
    U = _x_context(order + 2)["U"]
    if name == "torus":
        g = U * (U * U + 10 * U + 1) / (1 - U) ** 4
    elif name == "klein":
        g = 6 * U * (13 * U * U + 10 * U + 1) / (1 - U) ** 4
    else:
        raise UnsupportedSurface(f"no closed form in U for the {name}")
    return g.theta() if pointed else g


def _chain_form(name: str, order: int, pointed: bool) -> RationalSeries:
    """Sphere and projective plane from the F/N and chain series directly."""
    ctx = _x_context(order + 2)
    s, n, B = ctx["sigma"], ctx["n"], ctx["B"]
    if name == "sphere":
        # edge-rooted mobiles F^2/t plus twice the corner-rooted ones N/t - 1
        p = (s * s).shift(-1) + 2 * (n - 1)
    elif name == "projective":
        c00 = B - 1                 # C_{0,0}
        chain = B * n               # C_{1/2,1/2} / t
        first_white = 2 * (1 + 3 * n.theta() / n) * c00   # t N'/N = 1 + 3x n'/n
        first_flagged = 2 * chain * (3 * s.theta() - s) + chain - 1
        p = first_white + first_flagged
    else:
        raise UnsupportedSurface(f"no chain decomposition for the {name}")
    return p if pointed else _per_vertex(p, surface_type(SURFACES[name]))


def _per_vertex(pointed: RationalSeries, h: Fraction) -> RationalSeries:
    """Divide the pointed series by its number of vertices ``n + 2 - 2h``."""
    return pointed.shift(int(1 - 2 * h)).integral()


def _scheme_form(surface: SurfaceClass, order: int, pointed: bool) -> RationalSeries:
    total = RationalSeries.constant(0, "x", order + 2)
    for ns in enumerate_normalized_schemes(surface):
        total = total + scheme_pointed_gf(ns, order + 2)
    return total if pointed else _per_vertex(total, surface_type(surface))


METHODS = ("auto", "closed", "u", "chains", "schemes")


def surface_triangulation_gf(surface: SurfaceClass, order: int, pointed: bool = False,
                             method: str = "auto") -> RationalSeries:
    r"""Triangulations of a surface, in ``x``, exact up to ``x^order``.

    With ``pointed`` the coefficient of ``x^n`` counts pointed triangulations
    with ``2n`` faces; otherwise each triangulation has weight ``x`` per
    vertex.  ``method`` picks the route: the closed form in ``sigma``, the
    closed form in ``U``, the chain decomposition (sphere and projective
    plane) or the sum over normalized schemes (type at least 1).  ``auto``
    takes the closed form on the sphere and projective plane and the scheme
    sum elsewhere.

    On the Klein bottle the two closed forms agree with each other but leave
    out ``6U^2/(1-U)^2``, the share of one of the four one-vertex schemes;
    the scheme sum, which matches exhaustive counts, equals
    ``6U(1+U)(U^2+10U+1)/(1-U)^4``.

    >>> surface_triangulation_gf(SURFACES["sphere"], 3, pointed=True)
    RationalSeries('x', [0, 12, 128, 1680])
    >>> surface_triangulation_gf(SURFACES["torus"], 2, method="schemes")
    RationalSeries('x', [0, 1, 28])
    """
    name = _surface_name(surface)
    if method == "auto":
        method = "closed" if name in ("sphere", "projective") else "schemes"
    if method == "closed":
        if not name:
            raise UnsupportedSurface("closed forms exist for the sphere, projective plane, torus and Klein bottle")
        g = _closed_form(name, order, pointed)
    elif method == "u":
        g = _u_form(name, order, pointed)
    elif method == "chains":
        g = _chain_form(name, order, pointed)
    elif method == "schemes":
        g = _scheme_form(surface, order, pointed)
    else:
        raise ValueError(f"unknown method {method!r}")
    return g.truncate(order)


# asymptotics ---------------------------------------------------------------------

@dataclass(frozen=True)
class AsymptoticConstant:
    """The constant in front of ``n^(5(h-1)/2) (12 sqrt 3)^n``; exact when rational."""

    expression: str
    exact: Fraction | None
    numeric: float


def scheme_constant_sum(surface: SurfaceClass) -> Fraction:
    """Sum over cubic, injectively labeled normalized schemes of ``2^-|half vertices| / prod d(j)``."""
    total = Fraction(0)
    for ns in enumerate_normalized_schemes(surface):
        if ns.is_cubic() and ns.is_injective():
            term = Fraction(1, 2 ** ns.half_vertices)
            for dj in ns.d():
                term /= dj
            total += term
    return total


def asymptotic_constant(surface: SurfaceClass) -> AsymptoticConstant:
    r"""The constant of the asymptotic number of triangulations with ``2n`` faces.

    >>> asymptotic_constant(SURFACES["torus"]).exact
    Fraction(1, 8)
    """
    name = _surface_name(surface)
    if name == "sphere":
        return AsymptoticConstant("sqrt(6)/sqrt(pi)", None, math.sqrt(6 / math.pi))
    if name == "projective":
        return AsymptoticConstant("2^(-3/4)*3^(5/4)/Gamma(3/4)", None,
                                  2 ** -0.75 * 3 ** 1.25 / math.gamma(0.75))
    h = surface_type(surface)
    if h != 1:
        raise UnsupportedSurface("the constant is only evaluated for surfaces of type at most 1")
    # prefactor 2^-(13h-9)/2 3^-5(h-1)/2 / ((6h-3) Gamma((5h-3)/2)) is 1/12 at h = 1
    c = scheme_constant_sum(surface) / 12
    return AsymptoticConstant(str(c), c, float(c))
