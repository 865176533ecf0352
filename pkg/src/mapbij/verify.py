r"""
Exhaustive verification suites.

Every check returns a :class:`CheckResult`; ``details`` counts what was
examined so that a pass is never vacuous by accident.  The same checks back
the ``verify`` command and the acceptance tests.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .enumerate import GenSpec, count_class, gen_maps_by_insertion, gen_mobiles, gen_rooted_maps, gen_unicellular_maps
from .flags import SURFACES, SurfaceClass, distance_labels, pointed_code
from .general import face_property_violations, phi_general, psi_general
from .loops import DEFAULT_POLICY, OrientationPolicy
from .phi import phi_bipartite
from .psi import (arcs_nested, arcs_of_labels, has_next_label, inner_range_contiguous,
                  neighbours_step_down, check_well_labeled, psi_bipartite)
from .quad import LabeledUnicellular, quad_collapse, quad_expand
from .series import RationalSeries
from .triangulations import (asymptotic_constant, enumerate_normalized_schemes, motzkin_UB,
                             solve_FN, surface_triangulation_gf)

SURFACE_NAMES = ("sphere", "projective", "torus", "klein")


@dataclass
class CheckResult:
    name: str
    passed: bool
    details: str

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'}\t{self.name}\t{self.details}"


def _same(compute, expected) -> bool:
    """``compute() == expected``, where a refusal counts as a mismatch."""
    try:
        return compute() == expected
    except ValueError:
        return False


def _code(encoded):
    mob, eps = encoded
    return mob.code(), eps


def _pointed(fs):
    return [distance_labels(fs, v) for v in sorted(set(fs.vertex_ids()))]


# bijection ---------------------------------------------------------------------

def check_bipartite_roundtrip(surface: SurfaceClass, max_edges: int,
                              policy: OrientationPolicy = DEFAULT_POLICY) -> CheckResult:
    maps = mobiles = bad = 0
    for n in range(1, max_edges + 1):
        for fs in gen_rooted_maps(GenSpec(surface, n, "bipartite")):
            for pm in _pointed(fs):
                maps += 1
                mob, eps = phi_bipartite(pm, policy)
                if not _same(lambda: pointed_code(psi_bipartite(mob, eps, policy)), pointed_code(pm)):
                    bad += 1
        for mob in gen_mobiles(GenSpec(surface, n, "mobile"), policy):
            for eps in "+-":
                mobiles += 1
                if not _same(lambda: _code(phi_bipartite(psi_bipartite(mob, eps, policy), policy)),
                             (mob.code(), eps)):
                    bad += 1
    return CheckResult("bipartite round trip", bad == 0 and maps == mobiles,
                       f"{maps} pointed maps, {mobiles} (mobile, sign) pairs, {bad} failures")


def check_general_roundtrip(surface: SurfaceClass, max_edges: int,
                            policy: OrientationPolicy = DEFAULT_POLICY) -> CheckResult:
    maps = mobiles = bad = 0
    split_ok = True
    for n in range(1, max_edges + 1):
        for fs in gen_rooted_maps(GenSpec(surface, n, "all")):
            for pm in _pointed(fs):
                maps += 1
                mob, eps = phi_general(pm, policy)
                if not _same(lambda: pointed_code(psi_general(mob, eps, policy)), pointed_code(pm)):
                    bad += 1
        for mob in gen_mobiles(GenSpec(surface, n, "mobile"), policy, generalized=True):
            for eps in ("+",) if mob.edge_rooted else "+-":
                mobiles += 1
                if not _same(lambda: _code(phi_general(psi_general(mob, eps, policy), policy)),
                             (mob.code(), eps)):
                    bad += 1
        split_ok &= bool(count_class(GenSpec(surface, n, "all"), policy)["holds"])
    return CheckResult("general round trip and split", bad == 0 and split_ok,
                       f"{maps} pointed maps, {mobiles} (mobile, sign) pairs, {bad} failures, "
                       f"split identity {'holds' if split_ok else 'FAILS'}")


def check_face_properties(surface: SurfaceClass, max_edges: int,
                          policy: OrientationPolicy = DEFAULT_POLICY) -> CheckResult:
    seen = bad = 0
    for n in range(1, max_edges + 1):
        for fs in gen_rooted_maps(GenSpec(surface, n, "all")):
            for pm in _pointed(fs):
                seen += 1
                if face_property_violations(pm, phi_general(pm, policy)[0]):
                    bad += 1
    return CheckResult("labels, face degrees, edge counts", bad == 0, f"{seen} encodings, {bad} violations")


def check_quadrangulations(surface: SurfaceClass, max_faces: int) -> CheckResult:
    """Pointed quadrangulations against well-labeled one-face maps, in both directions."""
    seen = bad = 0
    images, labeled = set(), 0
    for f in range(1, max_faces + 1):
        for q in gen_rooted_maps(GenSpec(surface, 2 * f, "quadrangulation")):
            for pm in _pointed(q):
                seen += 1
                mob, eps = phi_bipartite(pm)
                lu = quad_collapse(mob)
                images.add((lu.code(), eps))
                if not lu.is_well_labeled() or quad_expand(lu).code() != mob.code():
                    bad += 1
                elif not _same(lambda: pointed_code(psi_bipartite(quad_expand(lu), eps)), pointed_code(pm)):
                    bad += 1
        for u in gen_unicellular_maps(GenSpec(surface, f, "unicellular")):
            vs = sorted(set(u.vertex_ids()))
            for values in itertools.product(range(1, len(vs) + 1), repeat=len(vs)):
                lu = LabeledUnicellular(u, dict(zip(vs, values)))
                if not lu.is_well_labeled():
                    continue
                labeled += 1
                m = quad_expand(lu)
                if not check_well_labeled(m) or quad_collapse(m).code() != lu.code():
                    bad += 1
    ok = bad == 0 and seen == len(images) == 2 * labeled
    return CheckResult("quadrangulations", ok,
                       f"{seen} pointed quadrangulations, {len(images)} distinct images, "
                       f"{labeled} labeled one-face maps, {bad} failures")


def label_sequences(max_len: int = 8, small_values: int = 4, full_len: int = 6):
    """Cyclic label sequences with minimum 1: values up to ``small_values``, or up to the length when short."""
    for n in range(1, max_len + 1):
        top = n if n <= full_len else small_values
        for seq in itertools.product(range(1, top + 1), repeat=n):
            if 1 in seq:
                yield seq


def check_arc_lemma(max_len: int = 8) -> CheckResult:
    seen = disagree = unnested = 0
    for seq in label_sequences(max_len):
        seen += 1
        arcs = arcs_of_labels(seq)
        a, b, c = has_next_label(seq, arcs), inner_range_contiguous(seq, arcs), neighbours_step_down(seq)
        if not a == b == c:
            disagree += 1
        if not arcs_nested(arcs, len(seq)):
            unnested += 1
    return CheckResult("arc conditions and nesting", disagree == 0 and unnested == 0,
                       f"{seen} sequences, {disagree} disagreements, {unnested} nesting failures")


# series ----------------------------------------------------------------------------

def motzkin_brute(max_len: int, increment: int) -> list[int]:
    """Weighted counts by length of words over -1, 0, +1 (0 weighs 2) with a given sum."""
    out = [0] * (max_len + 1)
    for n in range(max_len + 1):
        for w in itertools.product((-1, 0, 1), repeat=n):
            if sum(w) == increment:
                out[n] += 2 ** w.count(0)
    return out


def check_series_identities(order: int = 12) -> CheckResult:
    fails = []
    fn = solve_FN(order)
    t = RationalSeries.variable("t", fn.F.order)
    if not (fn.F - t * fn.F ** 2 - 2 * t * fn.N).is_zero():
        fails.append("F")
    if not (fn.N - t - 2 * t * fn.N * fn.F).is_zero():
        fails.append("N")
    s = fn.sigma
    x = RationalSeries.variable("x", order)
    if not (x - s * (1 - s) * (1 - 2 * s) / 2).is_zero():
        fails.append("sigma")
    U, B = motzkin_UB(order)
    z = RationalSeries.variable("Z", order)
    if not (U - z * (1 + U) ** 2).is_zero() or not (B * (1 - U) - (1 + U)).is_zero():
        fails.append("U, B")
    if not (fn.N.truncate(3 * order) * (1 - 2 * s.truncate(order)).compose(t ** 3)
            - t).truncate(3 * order).is_zero():
        fails.append("N/t = 1/(1-2 sigma)")
    for name in ("torus", "klein"):
        for pointed in (False, True):
            a = surface_triangulation_gf(SURFACES[name], order, pointed, "u")
            b = surface_triangulation_gf(SURFACES[name], order, pointed, "closed")
            if a != b:
                fails.append(f"{name} U-form vs sigma-form")
    for name in ("torus", "klein"):
        a = surface_triangulation_gf(SURFACES[name], order, False, "schemes")
        if name == "torus" and a != surface_triangulation_gf(SURFACES[name], order, False, "u"):
            fails.append("torus scheme sum")
    for name in ("sphere", "projective"):
        for pointed in (False, True):
            if (surface_triangulation_gf(SURFACES[name], order, pointed, "closed")
                    != surface_triangulation_gf(SURFACES[name], order, pointed, "chains")):
                fails.append(f"{name} closed form vs chains")
    Um, Bm = motzkin_UB(6)
    for ell in range(-3, 4):
        want = motzkin_brute(6, ell)
        got = (Bm * Um ** abs(ell)).coeffs
        if [int(c) for c in got] != want:
            fails.append(f"Motzkin increment {ell}")
    return CheckResult("series identities", not fails,
                       f"order {order}; " + ("all residuals vanish" if not fails else "failing: " + ", ".join(fails)))


def check_constants() -> CheckResult:
    torus = asymptotic_constant(SURFACES["torus"]).exact
    klein = asymptotic_constant(SURFACES["klein"]).exact
    n_torus = len(enumerate_normalized_schemes(SURFACES["torus"]))
    ok = torus == Fraction(1, 8) and klein == Fraction(3, 2) and n_torus == 11
    return CheckResult("asymptotic constants", ok, f"torus {torus}, Klein bottle {klein}, {n_torus} torus schemes")


def _pointed_triangulations(surface: SurfaceClass, faces: int) -> tuple[int, int]:
    maps = gen_rooted_maps(GenSpec(surface, 3 * faces // 2, "triangulation"))
    return len(maps), sum(len(set(fs.vertex_ids())) for fs in maps)


def check_coefficients() -> CheckResult:
    sphere_p = surface_triangulation_gf(SURFACES["sphere"], 2, pointed=True)
    sphere_v = surface_triangulation_gf(SURFACES["sphere"], 4)
    rooted2, pointed2 = _pointed_triangulations(SURFACES["sphere"], 2)
    rooted4, pointed4 = _pointed_triangulations(SURFACES["sphere"], 4)
    proj = surface_triangulation_gf(SURFACES["projective"], 1, pointed=True)
    _, proj2 = _pointed_triangulations(SURFACES["projective"], 2)
    ok = (sphere_p[1], sphere_p[2]) == (12, 128) == (pointed2, pointed4)
    ok &= (sphere_v[3], sphere_v[4]) == (4, 32) == (rooted2, rooted4)
    ok &= proj[1] == proj2
    return CheckResult("triangulation coefficients", ok,
                       f"sphere pointed {sphere_p[1]}, {sphere_p[2]} vs {pointed2}, {pointed4}; "
                       f"rooted {sphere_v[3]}, {sphere_v[4]} vs {rooted2}, {rooted4}; "
                       f"projective pointed {proj[1]} vs {proj2}")


def check_generators() -> CheckResult:
    sphere = SURFACES["sphere"]
    a = [len(gen_rooted_maps(GenSpec(sphere, n, "all"))) for n in (1, 2, 3)]
    b = [len(gen_maps_by_insertion(sphere, n)) for n in (1, 2, 3)]
    return CheckResult("rooted sphere maps", a == b == [2, 9, 54], f"gluing {a}, insertion {b}")


SURFACE_CHECKS = ("bipartite", "general", "faces", "quadrangulations")


def surface_suite(surface: SurfaceClass, max_edges: int,
                  policy: OrientationPolicy = DEFAULT_POLICY) -> list[CheckResult]:
    out = [check_bipartite_roundtrip(surface, max_edges, policy),
           check_general_roundtrip(surface, max_edges, policy),
           check_face_properties(surface, max_edges, policy),
           check_quadrangulations(surface, max_edges)]
    return out


def global_suite() -> list[CheckResult]:
    return [check_arc_lemma(), check_series_identities(), check_constants(),
            check_coefficients(), check_generators()]
