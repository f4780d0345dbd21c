import itertools
from collections import defaultdict

import pytest
from hypothesis import given, settings, strategies as st

from expanse.core import Lex, divides, vmax
from expanse.errors import BudgetExhausted, PreconditionError
from expanse.expansion import ExpansionShape, contract_vector, expand_set
from expanse.goldens import GB_ALPHA, GB_CONFIG
from expanse.document import parse_monomial
from expanse.toric import (
    GroebnerBasis,
    YBinomial,
    _Packed,
    contract_gb,
    expand_gb,
    expand_gb_single_split,
    generates,
    ideal_gb,
    kernel_test,
    normal_form,
    toric_gb,
    verify_gb,
)

A_WORKED = [parse_monomial(m, 4) for m in GB_CONFIG]
FOUR_BASES = [(1, 0, 1, 0), (1, 0, 0, 1), (0, 1, 1, 0), (0, 1, 0, 1)]


def binomial(config, plus, minus):
    idx = {u: k for k, u in enumerate(config)}
    return YBinomial.from_indices([idx[u] for u in plus], [idx[u] for u in minus], len(config))


def fiber_oracle(G, max_degree):
    """Every fiber up to ``max_degree`` holds exactly one standard monomial.

    Independent of Buchberger: only enumeration and divisibility.
    """
    config = G.configuration
    m = len(config)
    leads = [g.plus for g in G.elements]
    fibers = defaultdict(int)
    for d in range(max_degree + 1):
        for ms in itertools.combinations_with_replacement(range(m), d):
            e = [0] * m
            for k in ms:
                e[k] += 1
            if any(divides(l, tuple(e)) for l in leads):
                continue
            image = tuple(sum(config[k][p] for k in ms) for p in range(len(config[0])))
            fibers[(d, image)] += 1
    return all(c == 1 for c in fibers.values())


def test_worked_example_base_basis():
    G = toric_gb(A_WORKED)
    assert G.labelled() == {
        (((0, 1, 0, 2), (2, 1, 0, 0)), ((1, 1, 0, 1), (1, 1, 0, 1))),
    }


def test_independent_variables():
    assert toric_gb([(1, 0), (0, 1)]).elements == ()


def test_four_bases_single_quadric():
    G = toric_gb(FOUR_BASES)
    u1, u2, u3, u4 = FOUR_BASES
    assert G.labelled() == {(tuple(sorted((u1, u4))), tuple(sorted((u2, u3))))}


def test_kernel_test():
    u1, u2, u3, u4 = FOUR_BASES
    assert kernel_test(binomial(FOUR_BASES, [u1, u4], [u2, u3]), FOUR_BASES)
    assert not kernel_test(binomial(FOUR_BASES, [u1], [u2]), FOUR_BASES)
    a, b, c = (2, 1, 0, 0), (0, 1, 0, 2), (1, 1, 0, 1)
    assert kernel_test(binomial(A_WORKED, [a, b], [c, c]), A_WORKED)


def test_normal_form():
    G = toric_gb(FOUR_BASES)
    u1, u2, u3, u4 = FOUR_BASES
    assert normal_form(G.elements[0], G) is None
    lifted = binomial(FOUR_BASES, [u1, u1, u4, u4], [u2, u2, u3, u3])
    assert normal_form(lifted, G) is None
    free = toric_gb([(1, 0), (0, 1)])
    b = YBinomial((1, 0), (0, 1))
    assert normal_form(b, free) == b


def test_generates():
    G = toric_gb(FOUR_BASES)
    assert generates(G.elements, FOUR_BASES)
    assert not generates([], FOUR_BASES)
    assert generates([], [(1, 0), (0, 1)])
    Gw = toric_gb(A_WORKED)
    assert generates(Gw.elements, A_WORKED)


def test_generates_rejects_foreign_binomial():
    with pytest.raises(PreconditionError):
        generates([YBinomial((1, 0), (0, 1))], [(1, 0), (0, 1)])


def test_reduced_basis_is_unique_and_fibers_check():
    for config in (A_WORKED, FOUR_BASES, [(3, 0), (2, 1), (1, 2), (0, 3)], [(2, 0, 0), (1, 1, 0), (0, 1, 1), (0, 0, 2)]):
        G = toric_gb(config)
        assert fiber_oracle(G, 4)


def test_verify_gb():
    config = [(3, 0), (2, 1), (1, 2), (0, 3)]
    G = toric_gb(config)
    assert len(G) >= 2
    assert verify_gb(G.elements, config)
    assert not verify_gb(G.elements[1:], config)
    partial = GroebnerBasis(G.configuration, G.order, G.elements[1:])
    # the oracle agrees that dropping an element breaks the basis
    assert not fiber_oracle(partial, 4)


def test_contract_worked_example():
    shape = ExpansionShape(GB_ALPHA)
    E = expand_set(A_WORKED, shape).vectors
    G = toric_gb(E)
    T = [shape.flat(i, 0) for i in range(4)]
    H = contract_gb(G, T)
    x1x2x41 = (1, 1, 0, 1, 0)
    assert H.labelled() == {(((0, 1, 0, 2, 0), (2, 1, 0, 0, 0)), (x1x2x41, x1x2x41))}
    assert H.relabelled(lambda w: contract_vector(w, shape)) == toric_gb(A_WORKED).labelled()


def test_contract_edge_cases():
    G = toric_gb(FOUR_BASES)
    assert contract_gb(G, range(4)).labelled() == G.labelled()
    with pytest.raises(PreconditionError):
        contract_gb(G, [0])


def test_single_split_trivial():
    G = toric_gb([(1,)])
    g0, g1 = expand_gb_single_split([(1,)], G, 0)
    assert g0 == () and g1 == ()
    G = toric_gb([(1, 1)])
    g0, g1 = expand_gb_single_split([(1, 1)], G, 0)
    assert g0 == () and g1 == ()


def test_expand_gb_product_gives_quadric():
    G = expand_gb([(1, 1)], toric_gb([(1, 1)]), ExpansionShape((2, 2)))
    assert G.labelled() == toric_gb(FOUR_BASES).labelled()


def test_expand_gb_worked_example():
    G = expand_gb(A_WORKED, toric_gb(A_WORKED), ExpansionShape(GB_ALPHA))
    assert len(G) == 6
    assert verify_gb(G.elements, G.configuration)


def test_raw_split_union_is_a_basis():
    shape = ExpansionShape(GB_ALPHA)
    g0, g1 = expand_gb_single_split(A_WORKED, toric_gb(A_WORKED), 3)
    config = expand_set(A_WORKED, shape).vectors.members
    assert len(g0) == len(g1) == 3
    assert verify_gb(g0 + g1, config)
    assert not verify_gb(g0, config)


def test_budget(monkeypatch):
    monkeypatch.setenv("EXPANSIO_BUDGET", "1")
    with pytest.raises(BudgetExhausted):
        toric_gb([(3, 0), (2, 1), (1, 2), (0, 3)])


def test_listing_order_does_not_matter():
    config = [(3, 0), (2, 1), (1, 2), (0, 3)]
    assert toric_gb(config).labelled() == toric_gb(config[::-1]).labelled()


def test_other_lex_order():
    config = [(2, 0), (1, 1), (0, 2)]
    G = toric_gb(config, Lex((2, 1, 0)))
    assert len(G) == 1
    assert fiber_oracle(G, 4)


small_vectors = st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2))


@settings(max_examples=40, deadline=None)
@given(st.lists(small_vectors, min_size=1, max_size=5, unique=True))
def test_random_configurations_pass_fiber_oracle(config):
    config = [u for u in config if any(u)]
    if not config:
        return
    G = toric_gb(config)
    assert all(kernel_test(g, config) for g in G.elements)
    assert fiber_oracle(G, 3)
    # reduced: no leading term divides another term of the basis
    for g in G.elements:
        for h in G.elements:
            assert g == h or not divides(h.plus, g.plus)
            assert not divides(h.plus, g.minus)


@settings(max_examples=40, deadline=None)
@given(st.lists(small_vectors, min_size=2, max_size=5, unique=True), st.randoms())
def test_ideal_gb_of_toric_basis_is_itself(config, rnd):
    config = [u for u in config if any(u)]
    if len(config) < 2:
        return
    G = toric_gb(config)
    elements = list(G.elements)
    rnd.shuffle(elements)
    pairs = ideal_gb(elements, G.order)
    assert {YBinomial(a, b) for a, b in pairs} == set(G.elements)


@given(st.lists(st.integers(0, 300), min_size=5, max_size=5), st.lists(st.integers(0, 300), min_size=5, max_size=5))
def test_packed_arithmetic(u, v):
    P = _Packed(5)
    a, b = P.pack(u), P.pack(v)
    assert P.unpack(P.lcm(a, b)) == vmax(tuple(u), tuple(v))
    assert P.divides(a, b) == divides(tuple(u), tuple(v))
    assert P.degree(a) == sum(u)
