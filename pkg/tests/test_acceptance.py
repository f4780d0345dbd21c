"""The nine acceptance criteria, each at its own time limit.

Every test records PASS or FAIL for the terminal summary before asserting.
"""

import pytest

from expanse.goldens import dimension_example, gb_example, polymatroid_example
from expanse.semigroup import NotNormal, is_normal_up_to
from expanse.sweeps import run_suite

pytestmark = pytest.mark.acceptance


def _suite(name, minimum=None, **kw):
    r = run_suite(name, **kw)
    enough = minimum is None or r.checked >= minimum
    ok = enough and not r.violations and (minimum is not None or not r.skipped)
    detail = f"{r.checked} checked, {len(r.skipped)} skipped, {len(r.violations)} violations"
    return ok, detail, r


def test_golden_groebner_basis(criterion):
    c = criterion(1, "golden Groebner basis and its expansion", 5)
    r = gb_example()
    assert c.finish(r["reproduced"], f"G_A {r['base_basis']}, G0 {r['G0']}, G1 {r['G1']}, union {r['union']}")


def test_polymatroid_example(criterion):
    c = criterion(2, "expanded singleton base set, its quadric, White check", 1)
    r = polymatroid_example()
    assert c.finish(r["reproduced"], ", ".join(f"{k} {v}" for k, v in sorted(r.items()) if k not in ("name", "reproduced")))


def test_dimension_example(criterion):
    c = criterion(3, "Krull dimensions 2 and 4", 1)
    r = dimension_example()
    assert c.finish(r["reproduced"], f"values {r['values']}")


def test_transfer_suites(criterion):
    c = criterion(4, "polymatroidal, weakly polymatroidal, linear quotients transfer", 120)
    ok, detail, _ = _suite("transfer", 100, count=100)
    assert c.finish(ok, detail)


def test_groebner_contraction(criterion):
    c = criterion(5, "contraction of expanded Groebner bases", 300)
    ok, detail, _ = _suite("contraction", 25, count=25)
    assert c.finish(ok, detail)


def test_white_cross_validation(criterion):
    c = criterion(6, "White check against the fiber oracle, and under expansion", 600)
    ok, detail, r = _suite("white")
    assert c.finish(ok, f"{detail}, {r.stats.get('white_true', 0)} generated by swaps")


def test_sortability(criterion):
    c = criterion(7, "sortability under expansion and sorting-relation generation", 120)
    ok, detail, r = _suite("sort")
    assert c.finish(ok, f"{detail}, {r.stats.get('sortable_true', 0)} sortable")


def test_normality(criterion):
    c = criterion(8, "bounded normality witness and transfer", 300)
    golden = is_normal_up_to([(3, 0), (2, 1), (0, 3)], 9) == NotNormal((1, 2))
    ok, detail, _ = _suite("normal", 20, count=20)
    assert c.finish(golden and ok, f"witness (1,2) {golden}; {detail}")


def test_structural_properties(criterion):
    c = criterion(9, "counting, contraction, relabelling and basis-order identities", 120)
    ok, detail, _ = _suite("structural", 41, count=20)
    assert c.finish(ok, detail)
