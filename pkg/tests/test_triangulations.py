import itertools
from collections import Counter
from fractions import Fraction
from math import factorial

import pytest

from mapbij.enumerate import GenSpec, gen_rooted_maps
from mapbij.flags import SURFACES, SurfaceClass, distance_labels
from mapbij.general import phi_general
from mapbij.series import RationalSeries
from mapbij.triangulations import (METHODS, UnsupportedSurface, asymptotic_constant, c_arc,
                                   enumerate_normalized_schemes, mobile_scheme_key, motzkin_UB,
                                   scheme_gf_contribution, scheme_key, scheme_pointed_gf, sigma_of_x,
                                   solve_FN, surface_triangulation_gf, u_of_x)
from mapbij.verify import motzkin_brute


def ints(s):
    return [int(c) for c in s.coeffs]


def double_factorial(n):
    return 1 if n <= 0 else n * double_factorial(n - 2)


def rooted_sphere_triangulations(n):
    """Closed formula for rooted sphere triangulations with 2n faces."""
    return 2 ** (2 * n + 1) * double_factorial(3 * n) // (factorial(n + 2) * double_factorial(n))


# frozen from the exhaustive generator (first entries) and the agreeing series routes
POINTED = {
    "sphere": [0, 12, 128, 1680, 24576, 384384],
    "projective": [0, 18, 354, 7092, 143250, 2907468],
    "torus": [0, 1, 56, 1992, 59648, 1632480],
    "klein": [0, 6, 348, 12708, 388536, 10818180],
}
PER_VERTEX = {
    "sphere": [0, 0, 0, 4, 32, 336],
    "projective": [0, 0, 9, 118, 1773, 28650],
    "torus": [0, 1, 28, 664, 14912, 326496],
    "klein": [0, 6, 174, 4236, 97134, 2163636],
}


def test_sigma_two_routes():
    assert solve_FN(8).sigma == sigma_of_x(8)
    assert ints(sigma_of_x(5)) == [0, 2, 12, 128, 1680, 24576]


def test_sphere_against_formula():
    pointed = surface_triangulation_gf(SURFACES["sphere"], 9, pointed=True)
    rooted = surface_triangulation_gf(SURFACES["sphere"], 11)
    for n in range(1, 10):
        assert pointed[n] == (n + 2) * rooted_sphere_triangulations(n)
        assert rooted[n + 2] == rooted_sphere_triangulations(n)


@pytest.mark.parametrize("name", sorted(POINTED))
def test_frozen_coefficients(name):
    assert ints(surface_triangulation_gf(SURFACES[name], 5, pointed=True)) == POINTED[name]
    assert ints(surface_triangulation_gf(SURFACES[name], 5)) == PER_VERTEX[name]


@pytest.mark.parametrize("name,faces", [("sphere", 2), ("sphere", 4), ("projective", 2),
                                        ("torus", 2), ("torus", 4), ("klein", 2)])
def test_exhaustive_pointed_counts(name, faces):
    maps = gen_rooted_maps(GenSpec(SURFACES[name], 3 * faces // 2, "triangulation"))
    assert sum(len(set(fs.vertex_ids())) for fs in maps) == POINTED[name][faces // 2]


@pytest.mark.slow
def test_exhaustive_klein_four_faces():
    maps = gen_rooted_maps(GenSpec(SURFACES["klein"], 6, "triangulation"))
    assert (len(maps), sum(len(set(fs.vertex_ids())) for fs in maps)) == (174, 348)


@pytest.mark.parametrize("name,methods", [("sphere", ("closed", "chains")),
                                          ("projective", ("closed", "chains")),
                                          ("torus", ("closed", "u", "schemes")),
                                          ("klein", ("closed", "u"))])
@pytest.mark.parametrize("pointed", [False, True])
def test_routes_agree(name, methods, pointed):
    results = {m: surface_triangulation_gf(SURFACES[name], 10, pointed, m) for m in methods}
    assert len(set(results.values())) == 1


def test_klein_closed_forms_miss_one_scheme():
    order = 10
    U = u_of_x(order)
    u = RationalSeries.variable("U", order)
    missing = (6 * u ** 2 / (1 - u) ** 2).compose(U)
    gap = (surface_triangulation_gf(SURFACES["klein"], order, method="schemes")
           - surface_triangulation_gf(SURFACES["klein"], order, method="closed"))
    assert gap == missing.truncate(gap.order)
    corrected = 6 * u * (1 + u) * (u ** 2 + 10 * u + 1) / (1 - u) ** 4
    assert surface_triangulation_gf(SURFACES["klein"], order) == corrected.compose(U).truncate(order)


def test_one_vertex_schemes():
    klein = [s for s in enumerate_normalized_schemes(SURFACES["klein"]) if len(s.labels) == 1]
    torus = [s for s in enumerate_normalized_schemes(SURFACES["torus"]) if len(s.labels) == 1]
    assert (len(klein), len(torus)) == (4, 1)
    u = RationalSeries.variable("U", 6)
    share = 6 * u ** 2 / (1 - u) ** 2
    assert all(scheme_gf_contribution(s, 6) == share for s in klein + torus)


def test_torus_schemes_and_constants():
    assert len(enumerate_normalized_schemes(SURFACES["torus"])) == 11
    assert asymptotic_constant(SURFACES["torus"]).exact == Fraction(1, 8)
    assert asymptotic_constant(SURFACES["klein"]).exact == Fraction(3, 2)
    sphere = asymptotic_constant(SURFACES["sphere"])
    assert sphere.exact is None and sphere.expression == "sqrt(6)/sqrt(pi)"
    assert asymptotic_constant(SURFACES["projective"]).exact is None
    with pytest.raises(UnsupportedSurface):
        asymptotic_constant(SurfaceClass(-2, True))


def test_scheme_shares_match_mobiles():
    torus = SURFACES["torus"]
    predicted = Counter()
    for ns in enumerate_normalized_schemes(torus):
        predicted[scheme_key(ns)] += scheme_pointed_gf(ns, 3)[2]
    seen = Counter()
    for fs in gen_rooted_maps(GenSpec(torus, 6, "triangulation")):
        for v in sorted(set(fs.vertex_ids())):
            seen[mobile_scheme_key(phi_general(distance_labels(fs, v))[0])] += 1
    assert +predicted == +seen
    assert sum(seen.values()) == 56


@pytest.mark.parametrize("ell", range(-3, 4))
def test_motzkin_brute_force(ell):
    U, B = motzkin_UB(6)
    assert ints(B * U ** abs(ell)) == motzkin_brute(6, ell)


def test_arc_series_symmetric_and_integral():
    for i, j in itertools.product([Fraction(0), Fraction(1, 2), Fraction(1)], repeat=2):
        a, b = c_arc(i, j, 4).in_t(9), c_arc(j, i, 4).in_t(9)
        assert a == b and a.integral_coefficients()


def test_methods_listed():
    assert set(METHODS) == {"auto", "closed", "u", "chains", "schemes"}
    with pytest.raises(ValueError):
        surface_triangulation_gf(SURFACES["torus"], 3, method="nope")
