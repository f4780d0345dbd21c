"""The three worked examples, reproduced as regression checks.

Binomials are compared as unordered pairs of sorted monomial multisets, so
the check does not depend on which side a term order makes leading.
"""

from __future__ import annotations

from .document import parse_monomial
from .expansion import ExpansionShape, expand_set
from .polymatroid import BaseSet, check_white, expand_bases
from .semigroup import krull_dimension
from .toric import expand_gb, expand_gb_single_split, toric_gb

GB_CONFIG = ("x1^2*x2", "x1*x2*x4", "x1*x3", "x2*x3^2", "x2*x4^2")
GB_ALPHA = (1, 1, 1, 2)
GB_BASE = [(("x1^2*x2", "x2*x4^2"), ("x1*x2*x4", "x1*x2*x4"))]
GB_G0 = [
    (("x1*x2*x4_1", "x2*x4_1*x4_2"), ("x1*x2*x4_2", "x2*x4_1^2")),
    (("x2*x4_1^2", "x2*x4_2^2"), ("x2*x4_1*x4_2", "x2*x4_1*x4_2")),
    (("x1*x2*x4_1", "x2*x4_2^2"), ("x1*x2*x4_2", "x2*x4_1*x4_2")),
]
GB_G1 = [
    (("x1^2*x2", "x2*x4_1^2"), ("x1*x2*x4_1", "x1*x2*x4_1")),
    (("x1^2*x2", "x2*x4_2^2"), ("x1*x2*x4_2", "x1*x2*x4_2")),
    (("x1^2*x2", "x2*x4_1*x4_2"), ("x1*x2*x4_1", "x1*x2*x4_2")),
]

POLY_BASES = ((1, 1),)
POLY_ALPHA = (2, 2)
# u1..u4 in the order they are listed for the expanded base set
POLY_EXPANDED = ((1, 0, 1, 0), (1, 0, 0, 1), (0, 1, 1, 0), (0, 1, 0, 1))

DIM_CONFIG = ((3, 0), (2, 1), (0, 3))
DIM_ALPHA = (2, 2)
DIM_VALUES = (2, 4)


def _norm(plus, minus) -> frozenset:
    return frozenset((tuple(sorted(plus)), tuple(sorted(minus))))


def _golden(pairs, n, shape=None) -> set:
    return {
        _norm([parse_monomial(m, n, shape) for m in p], [parse_monomial(m, n, shape) for m in q])
        for p, q in pairs
    }


def _computed(binomials, config) -> set:
    return {_norm(*b.labelled(config)) for b in binomials}


def gb_example() -> dict:
    shape = ExpansionShape(GB_ALPHA)
    A = [parse_monomial(m, 4) for m in GB_CONFIG]
    GA = toric_gb(A)
    split = GB_ALPHA.index(2)
    G0, G1 = expand_gb_single_split(A, GA, split)
    config = expand_set(A, shape).vectors.members
    G = expand_gb(A, GA, shape)
    base_ok = _computed(GA, GA.configuration) == _golden(GB_BASE, 4)
    g0_ok = _computed(G0, config) == _golden(GB_G0, 4, shape)
    g1_ok = _computed(G1, config) == _golden(GB_G1, 4, shape)
    union_ok = _computed(G, G.configuration) == _golden(GB_G0 + GB_G1, 4, shape)
    return {
        "name": "groebner-expansion",
        "base_basis": base_ok,
        "G0": g0_ok,
        "G1": g1_ok,
        "union": union_ok,
        "reproduced": base_ok and g0_ok and g1_ok and union_ok,
    }


def polymatroid_example() -> dict:
    B = BaseSet.of(POLY_BASES)
    E = expand_bases(B, ExpansionShape(POLY_ALPHA))
    bases_ok = set(E.bases) == set(POLY_EXPANDED)
    u1, u2, u3, u4 = POLY_EXPANDED
    G = toric_gb(E.bases)
    quadric_ok = _computed(G, G.configuration) == {_norm([u1, u4], [u2, u3])}
    white_ok = check_white(E)
    return {
        "name": "polymatroid-expansion",
        "bases": bases_ok,
        "toric_ideal": quadric_ok,
        "white": white_ok,
        "reproduced": bases_ok and quadric_ok and white_ok,
    }


def dimension_example() -> dict:
    base = krull_dimension(DIM_CONFIG)
    expanded = krull_dimension(expand_set(DIM_CONFIG, ExpansionShape(DIM_ALPHA)).vectors)
    return {
        "name": "dimension",
        "values": [base, expanded],
        "reproduced": (base, expanded) == DIM_VALUES,
    }


def run_goldens() -> list:
    return [gb_example(), polymatroid_example(), dimension_example()]
