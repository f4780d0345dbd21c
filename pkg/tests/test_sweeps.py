import itertools

import pytest
from hypothesis import given, strategies as st

from expanse.core import divides
from expanse.sweeps import (
    SUITES,
    canonical_base_sets,
    counting_identity,
    instance_rng,
    random_configuration,
    random_equigenerated,
    random_ideal,
    run_suite,
)

seeds = st.integers(0, 10**6)


@given(seeds)
def test_random_ideal_ranges(seed):
    I = random_ideal(instance_rng("t", seed, 0))
    assert 1 <= I.dim <= 4
    assert 1 <= len(I.generators) <= 6
    assert all(0 <= e <= 3 for g in I.generators for e in g)


@given(seeds)
def test_random_configuration_is_antichain(seed):
    A = random_configuration(instance_rng("t", seed, 0))
    assert 1 <= len(A) <= 6 and 1 <= len(A[0]) <= 4
    assert all(0 < sum(u) <= 4 for u in A)
    assert all(u == v or not divides(u, v) for u in A for v in A)


@given(seeds)
def test_random_equigenerated(seed):
    A = random_equigenerated(instance_rng("t", seed, 0))
    assert len({sum(u) for u in A}) == 1
    assert len(set(A)) == len(A)


def test_instance_rng_is_reproducible():
    assert instance_rng("a", 1, 2).random() == instance_rng("a", 1, 2).random()
    assert instance_rng("a", 1, 2).random() != instance_rng("a", 1, 3).random()


def test_counting_identity_small():
    assert counting_identity(max_n=2, max_entry=3, max_copies=3) == []


def exchange_ok(S):
    S = set(S)
    for u in S:
        for v in S:
            for i in range(len(u)):
                if u[i] > v[i] and not any(
                    u[j] < v[j] and tuple(e - (p == i) + (p == j) for p, e in enumerate(u)) in S
                    for j in range(len(u))
                ):
                    return False
    return True


def test_canonical_family_matches_orbit_count():
    # oracle: collect each valid set's whole permutation orbit, count orbits
    for n in (1, 2, 3):
        orbits = set()
        for d in range(3):
            pool = [v for v in itertools.product(range(d + 1), repeat=n) if sum(v) == d]
            for k in range(1, 5):
                for S in itertools.combinations(pool, k):
                    if exchange_ok(S):
                        orbits.add(frozenset(
                            frozenset(tuple(v[p] for p in perm) for v in S)
                            for perm in itertools.permutations(range(n))
                        ))
        got = [B for B in canonical_base_sets(max_n=n, max_modulus=2, max_size=4) if len(B[0]) == n]
        assert len(got) == len(orbits)


def test_canonical_family_size():
    # regression value for the full criterion family
    assert len(canonical_base_sets()) == 111


# structural always runs the full counting identity; the acceptance module covers it
@pytest.mark.parametrize("name", [s for s in SUITES if s != "structural"])
def test_each_suite_runs_clean_on_a_slice(name):
    r = run_suite(name, seed=7, count=3)
    assert r.violations == []
    assert r.checked + len(r.skipped) == r.params["count"]
    assert r.params["seed"] == 7 and "generator" in r.params


def test_threads_do_not_change_results():
    a = run_suite("kdecomp", seed=5, count=8).to_json()
    b = run_suite("kdecomp", seed=5, count=8, workers=4).to_json()
    assert a == b


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("nope")
