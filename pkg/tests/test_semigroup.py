import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from expanse.errors import DimensionMismatch, PreconditionError
from expanse.expansion import ExpansionShape, expand_set
from expanse.semigroup import (
    NormalUpTo,
    NotNormal,
    check_containments,
    compare_normality,
    cone_contains,
    hermite_basis,
    is_hole,
    is_normal_up_to,
    krull_dimension,
    lattice_contains,
    semigroup_contains,
    verify_theorem_normal,
)

CM = [(3, 0), (2, 1), (0, 3)]
VERONESE = [(2, 0), (1, 1), (0, 2)]


def rank(rows):
    # oracle: Gaussian elimination over the rationals
    M = [[Fraction(a) for a in r] for r in rows]
    r = 0
    for c in range(len(M[0])):
        p = next((i for i in range(r, len(M)) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c] / M[r][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        r += 1
    return r


def semigroup_points(A, max_count):
    # oracle: all sums of at most max_count generators
    pts = {tuple([0] * len(A[0]))}
    frontier = set(pts)
    for _ in range(max_count):
        frontier = {tuple(a + b for a, b in zip(p, g)) for p in frontier for g in A}
        pts |= frontier
    return pts


def test_lattice_examples():
    assert lattice_contains((1, 2), CM)
    assert not lattice_contains((1, 0), CM)
    assert all(lattice_contains(u, CM) for u in CM)
    with pytest.raises(DimensionMismatch):
        lattice_contains((1, 2, 3), CM)


def test_cone_examples():
    assert cone_contains((1, 2), [(1, 0), (0, 1)])
    assert not cone_contains((-1, 2), [(1, 0), (0, 1)])
    assert not cone_contains((1, 0), [(2, 1), (1, 2)])
    assert cone_contains((1, 1), [(2, 1), (1, 2)])
    assert cone_contains((0, 0), [(2, 1)])


def test_semigroup_examples():
    assert semigroup_contains((5, 1), CM)
    assert not semigroup_contains((1, 2), CM)
    assert semigroup_contains((0, 0), CM)
    with pytest.raises(PreconditionError):
        semigroup_contains((1, 1), [(1, 0), (1, 1)])


def test_normality_examples():
    assert is_normal_up_to(CM, 9) == NotNormal((1, 2))
    assert is_hole((1, 2), CM)
    assert is_normal_up_to([(1, 0), (0, 1)], 7) == NormalUpTo(7)
    assert is_normal_up_to(VERONESE, 10) == NormalUpTo(10)
    with pytest.raises(PreconditionError):
        is_normal_up_to(CM, 2)


def test_theorem_normal_examples():
    c = compare_normality(CM, ExpansionShape((2, 2)), 9)
    assert not c.base.normal and not c.expanded.normal
    assert c.lifted == (1, 0, 2, 0)
    assert c.agree
    assert verify_theorem_normal(VERONESE, ExpansionShape((2, 1)), 10)
    same = compare_normality(CM, ExpansionShape((1, 1)), 9)
    assert same.base == same.expanded


def test_dimension_examples():
    assert krull_dimension(CM) == 2
    assert krull_dimension(expand_set(CM, ExpansionShape((2, 2))).vectors) == 4
    assert krull_dimension([(1, 0)]) == 1


def test_hermite_basis_spans_generators():
    basis = hermite_basis(CM)
    assert len(basis) == 2
    assert all(lattice_contains(b, CM) for b in basis)


configs = st.integers(2, 3).flatmap(
    lambda n: st.integers(1, 3).flatmap(
        lambda d: st.lists(
            st.sampled_from([v for v in itertools.product(range(d + 1), repeat=n) if sum(v) == d]),
            min_size=1, max_size=4, unique=True,
        )
    )
)


@settings(max_examples=40, deadline=None)
@given(configs)
def test_rank_matches_oracle(A):
    assert krull_dimension(A) == rank(A)


@settings(max_examples=40, deadline=None)
@given(configs, st.data())
def test_memberships_against_enumeration(A, data):
    pts = semigroup_points(A, 3)
    d = sum(A[0])
    for u in itertools.product(range(3 * d + 1), repeat=len(A[0])):
        if sum(u) <= 3 * d:
            assert semigroup_contains(u, A) == (u in pts)
    coeffs = data.draw(st.lists(st.integers(-3, 3), min_size=len(A), max_size=len(A)))
    u = tuple(sum(c * a[p] for c, a in zip(coeffs, A)) for p in range(len(A[0])))
    assert lattice_contains(u, A)
    if min(coeffs) >= 0:
        assert cone_contains(u, A)
        check_containments(u, A)


@settings(max_examples=20, deadline=None)
@given(configs)
def test_normality_monotone_and_witness_is_hole(A):
    d = sum(A[0])
    small = is_normal_up_to(A, 2 * d)
    large = is_normal_up_to(A, 4 * d)
    if isinstance(small, NotNormal):
        assert large == small
        assert is_hole(small.witness, A)
    if isinstance(large, NotNormal):
        assert is_hole(large.witness, A)
        # some multiple of a hole lands in the semigroup
        assert any(semigroup_contains(tuple(t * e for e in large.witness), A) for t in range(1, 13))
