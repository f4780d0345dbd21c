import itertools
from math import comb, prod

import pytest
from hypothesis import given, settings, strategies as st

from expanse.core import MonomialIdeal, MonomialSet, divides
from expanse.errors import DimensionMismatch, PreconditionError
from expanse.expansion import (
    ExpansionShape,
    contract_vector,
    expand_ideal,
    expand_set,
    expand_vector,
    expansion_count,
    relabel_iterated,
)


def brute_lifts(u, alpha):
    # independent oracle: scan every vector in the box and keep matching block sums
    total = sum(alpha)
    shape = ExpansionShape(alpha)
    out = []
    for w in itertools.product(range(max(u) + 1), repeat=total):
        if contract_vector(w, shape) == tuple(u):
            out.append(w)
    return sorted(out, reverse=True)


def test_shape_indexing():
    s = ExpansionShape((1, 1, 1, 2))
    assert s.total == 5
    assert s.flat(3, 1) == 4
    assert s.label(4) == (3, 1)
    assert [s.label(s.flat(i, j)) for i in range(4) for j in range(s.alpha[i])] == [
        (0, 0), (1, 0), (2, 0), (3, 0), (3, 1)
    ]


def test_shape_rejects_bad_alpha():
    with pytest.raises(ValueError):
        ExpansionShape((1, 0))
    with pytest.raises(ValueError):
        ExpansionShape(())


def test_expand_vector_small():
    got = expand_vector((1, 2, 0), ExpansionShape((2, 2, 2)))
    assert set(got) == {
        (1, 0, 2, 0, 0, 0), (1, 0, 1, 1, 0, 0), (1, 0, 0, 2, 0, 0),
        (0, 1, 2, 0, 0, 0), (0, 1, 1, 1, 0, 0), (0, 1, 0, 2, 0, 0),
    }
    assert got == sorted(got, reverse=True)


def test_expand_vector_four_bases():
    assert expand_vector((1, 1), ExpansionShape((2, 2))) == [(1, 0, 1, 0), (1, 0, 0, 1), (0, 1, 1, 0), (0, 1, 0, 1)]


def test_identity_shape():
    assert expand_vector((3, 0, 2), ExpansionShape.ones(3)) == [(3, 0, 2)]


def test_expand_set_worked_configuration():
    A = [(2, 1, 0, 0), (1, 1, 0, 1), (1, 0, 1, 0), (0, 1, 2, 0), (0, 1, 0, 2)]
    E = expand_set(A, ExpansionShape((1, 1, 1, 2)))
    assert set(E.vectors) == {
        (2, 1, 0, 0, 0), (1, 0, 1, 0, 0), (0, 1, 2, 0, 0),
        (1, 1, 0, 1, 0), (1, 1, 0, 0, 1),
        (0, 1, 0, 2, 0), (0, 1, 0, 1, 1), (0, 1, 0, 0, 2),
    }
    assert E.lifts((1, 1, 0, 1)) == [(1, 1, 0, 1, 0), (1, 1, 0, 0, 1)]


def test_expand_zero_vector():
    E = expand_set([(0, 0)], ExpansionShape((2, 3)))
    assert E.vectors.members == ((0,) * 5,)


def test_expand_set_needs_antichain():
    with pytest.raises(PreconditionError):
        expand_set([(1, 0), (2, 0)], ExpansionShape((2, 1)))


def test_expand_set_dimension_check():
    with pytest.raises(DimensionMismatch):
        expand_set([(1, 0)], ExpansionShape((2, 1, 1)))


def test_expand_ideal():
    assert set(expand_ideal(MonomialIdeal([(1, 1)]), ExpansionShape((2, 1))).generators) == {(1, 0, 1), (0, 1, 1)}
    I = MonomialIdeal([(2, 0), (0, 2)])
    assert expand_ideal(I, ExpansionShape((1, 1))) == I
    J = expand_ideal(MonomialIdeal([(1, 0), (0, 2)]), ExpansionShape((1, 2)))
    assert set(J.generators) == {(1, 0, 0), (0, 2, 0), (0, 1, 1), (0, 0, 2)}


def test_contract():
    assert contract_vector((1, 0, 1, 1, 0, 0), ExpansionShape((2, 2, 2))) == (1, 2, 0)
    assert contract_vector((0, 0, 0, 0), ExpansionShape((2, 2))) == (0, 0)
    with pytest.raises(DimensionMismatch):
        contract_vector((1, 0), ExpansionShape((2, 2)))


def test_first_copy_lift():
    s = ExpansionShape((2, 1, 3))
    assert s.first_copy_lift((4, 5, 6)) == (4, 0, 5, 6, 0, 0)


def test_relabel_second_copy():
    # alpha=(1,1), split x2: x111, x211, x212 -> x11, x21, x22
    sigma = relabel_iterated(ExpansionShape((1, 1)), 1)
    assert sigma.beta.alpha == (1, 2)
    assert sigma.labels == {(1, 1, 1): (1, 1), (2, 1, 1): (2, 1), (2, 1, 2): (2, 2)}


def test_relabel_first_split():
    sigma = relabel_iterated(ExpansionShape((1,)), 0)
    A = [(3,)]
    twice = expand_set(expand_set(A, ExpansionShape((1,))).vectors, sigma.gamma).vectors
    assert {sigma.apply(w) for w in twice} == set(expand_set(A, ExpansionShape((2,))).vectors)


def test_relabel_composition_on_product():
    sigma = relabel_iterated(ExpansionShape((1, 1)), 0)
    twice = expand_set(expand_set([(1, 1)], ExpansionShape((1, 1))).vectors, sigma.gamma).vectors
    assert {sigma.apply(w) for w in twice} == set(expand_set([(1, 1)], ExpansionShape((2, 1))).vectors)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 3), min_size=1, max_size=3), st.data())
def test_expand_vector_matches_brute_force(u, data):
    alpha = tuple(data.draw(st.lists(st.integers(1, 3), min_size=len(u), max_size=len(u))))
    got = expand_vector(u, ExpansionShape(alpha))
    assert got == brute_lifts(u, alpha)
    assert len(got) == prod(comb(e + k - 1, k - 1) for e, k in zip(u, alpha)) == expansion_count(u, ExpansionShape(alpha))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3)), min_size=1, max_size=4),
       st.tuples(st.integers(1, 3), st.integers(1, 3)))
def test_expansion_preserves_minimality(vs, alpha):
    S = MonomialSet.of(vs)
    if not S.divis_minimal:
        return
    E = expand_set(S, ExpansionShape(alpha))
    members = E.vectors.members
    assert all(a == b or not divides(a, b) for a in members for b in members)
    assert sum(len(E.lifts(u)) for u in S) == len(members)


@settings(max_examples=40, deadline=None)
@given(st.tuples(st.integers(1, 2), st.integers(1, 2)), st.integers(0, 1), st.tuples(st.integers(0, 3), st.integers(0, 3)))
def test_relabelling_composition(alpha, i, u):
    if not any(u):
        return
    shape = ExpansionShape(alpha)
    sigma = relabel_iterated(shape, i)
    twice = expand_set(expand_set([u], shape).vectors, sigma.gamma).vectors
    image = [sigma.apply(w) for w in twice]
    assert len(set(image)) == len(image)
    assert set(image) == set(expand_set([u], sigma.beta).vectors)
