r"""
The nine acceptance criteria, one test each.

Every test records a one-line verdict, printed in the ``acceptance
criteria`` section at the end of the pytest run (and on stdout when the
file is run as a script).
"""

import time

import pytest

from conftest import ACCEPTANCE_LINES
from mapbij.flags import SURFACES
from mapbij.verify import (SURFACE_NAMES, CheckResult, check_arc_lemma, check_bipartite_roundtrip,
                           check_coefficients, check_constants, check_face_properties,
                           check_general_roundtrip, check_generators, check_quadrangulations,
                           check_series_identities)

MAX_EDGES = 3


def per_surface(check, *args) -> CheckResult:
    results = [check(SURFACES[name], *args) for name in SURFACE_NAMES]
    return CheckResult(results[0].name, all(r.passed for r in results),
                       "; ".join(f"{n}: {r.details}" for n, r in zip(SURFACE_NAMES, results)))


CRITERIA = {
    1: ("bipartite round trip", lambda: per_surface(check_bipartite_roundtrip, MAX_EDGES)),
    2: ("general round trip and partition", lambda: per_surface(check_general_roundtrip, MAX_EDGES)),
    3: ("labels, face degrees, edge counts", lambda: per_surface(check_face_properties, MAX_EDGES)),
    4: ("arc conditions", check_arc_lemma),
    5: ("quadrangulations", lambda: per_surface(check_quadrangulations, MAX_EDGES)),
    6: ("series identities", check_series_identities),
    7: ("asymptotic constants", check_constants),
    8: ("coefficient cross-checks", check_coefficients),
    9: ("generator sanity", check_generators),
}


def evaluate(k: int) -> CheckResult:
    title, run = CRITERIA[k]
    t = time.perf_counter()
    r = run()
    line = f"criterion {k} ({title}): {'PASS' if r.passed else 'FAIL'} [{time.perf_counter() - t:.1f}s] {r.details}"
    ACCEPTANCE_LINES[k] = line
    print(line)
    return r


@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_criterion(k):
    r = evaluate(k)
    assert r.passed, r.details


if __name__ == "__main__":
    failed = [k for k in sorted(CRITERIA) if not evaluate(k).passed]
    raise SystemExit(1 if failed else 0)
