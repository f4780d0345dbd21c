import itertools

import pytest
from hypothesis import given, settings, strategies as st

from expanse.errors import PreconditionError
from expanse.expansion import ExpansionShape, contract_vector, expand_set
from expanse.sortable import (
    degree_monomials,
    is_sortable,
    sort_pair,
    sorting_relations,
    verify_sorting_generation,
    verify_theorem_sort,
)
from expanse.toric import toric_gb, verify_gb


def word(u):
    return [i for i, e in enumerate(u) for _ in range(e)]


def test_sort_pair_examples():
    assert sort_pair((1, 2, 0), (0, 1, 2)) == ((1, 1, 1), (0, 2, 1))
    assert sort_pair((2, 0), (0, 2)) == ((1, 1), (1, 1))


def test_sort_pair_rejects_unequal_degree():
    with pytest.raises(PreconditionError):
        sort_pair((1, 0), (1, 1))


def test_sortable_examples():
    assert is_sortable(degree_monomials(2, 2)) == (True, None)
    ok, witness = is_sortable([(2, 0), (0, 2)])
    assert not ok
    assert witness == ((0, 2), (2, 0), (1, 1), (1, 1))


def test_sortable_needs_equal_degree():
    with pytest.raises(PreconditionError):
        is_sortable([(1, 0), (1, 1)])


def test_sorting_relations():
    (q,) = sorting_relations(degree_monomials(2, 2))
    assert q.labelled(((2, 0), (1, 1), (0, 2))) == (((0, 2), (2, 0)), ((1, 1), (1, 1)))
    assert len(sorting_relations(degree_monomials(3, 2))) == 6
    with pytest.raises(PreconditionError):
        sorting_relations([(2, 0), (0, 2)])


def test_sorting_generation_examples():
    assert verify_sorting_generation(degree_monomials(2, 2))
    assert verify_sorting_generation(degree_monomials(3, 2))
    E = expand_set(degree_monomials(2, 2), ExpansionShape((2, 1))).vectors
    assert verify_sorting_generation(E)


def test_sorting_relations_of_veronese_are_a_basis_here():
    # observed, not claimed in general: under the induced lex order
    A = degree_monomials(3, 2)
    assert verify_gb(sorting_relations(A), A)
    assert len(toric_gb(A)) == 6


def test_theorem_sort_examples():
    assert verify_theorem_sort(degree_monomials(2, 2), ExpansionShape((2, 1)))
    assert verify_theorem_sort([(2, 0), (0, 2)], ExpansionShape((2, 2)))
    E = expand_set([(2, 0), (0, 2)], ExpansionShape((2, 2))).vectors
    assert not is_sortable(E)[0]


def test_degree_monomials():
    assert degree_monomials(2, 2) == [(2, 0), (1, 1), (0, 2)]
    assert len(degree_monomials(3, 3)) == 10


pairs = st.integers(1, 3).flatmap(
    lambda n: st.integers(1, 3).flatmap(
        lambda d: st.tuples(st.sampled_from(degree_monomials(n, d)), st.sampled_from(degree_monomials(n, d)))
    )
)


@given(pairs)
def test_sort_pair_properties(uv):
    u, v = uv
    a, b = sort_pair(u, v)
    assert tuple(x + y for x, y in zip(a, b)) == tuple(x + y for x, y in zip(u, v))
    assert sort_pair(a, b) == (a, b)
    assert set(sort_pair(v, u)) == {a, b}
    # a sorted pair interleaves: a's word is pointwise at most b's word
    assert all(x <= y for x, y in zip(word(a), word(b)))


@settings(max_examples=60)
@given(pairs, st.data())
def test_sort_commutes_with_contraction(uv, data):
    u, v = uv
    alpha = tuple(data.draw(st.lists(st.integers(1, 2), min_size=len(u), max_size=len(u))))
    shape = ExpansionShape(alpha)
    lifts_u = expand_set([u], shape).vectors.members
    lifts_v = expand_set([v], shape).vectors.members
    w1 = data.draw(st.sampled_from(lifts_u))
    w2 = data.draw(st.sampled_from(lifts_v))
    a, b = sort_pair(w1, w2)
    assert (contract_vector(a, shape), contract_vector(b, shape)) == sort_pair(u, v)


def test_small_family_exhaustive():
    pool = degree_monomials(2, 2)
    for k in range(1, len(pool) + 1):
        for S in itertools.combinations(pool, k):
            assert verify_theorem_sort(S, ExpansionShape((2, 2)))
