"""Randomized and exhaustive property suites.

Every instance draws from its own ``random.Random`` seeded by the suite name,
the sweep seed and the instance index, so a report does not depend on how
instances are spread over worker threads.  Results are aggregated by index.
"""

from __future__ import annotations

import itertools
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import comb, prod

from .core import MonomialIdeal, divides, minimal_elements
from .errors import BudgetExhausted, SearchTooLarge
from .expansion import (
    ExpansionShape,
    contract_vector,
    expand_ideal,
    expand_set,
    expand_vector,
    expansion_count,
    relabel_iterated,
)
from .ideal_props import (
    check_certificate,
    find_linear_quotients_order,
    find_weakly_polymatroidal_order,
    is_k_decomposable,
    is_polymatroidal,
)
from .polymatroid import BaseSet, check_white, expand_bases, fiber_connected_oracle, validate_base_set
from .semigroup import compare_normality, krull_dimension
from .sortable import degree_monomials, is_sortable, subsets_of, verify_sorting_generation
from .toric import contract_gb, toric_gb

GENERATOR = "random.Random (Mersenne Twister), string seed '<suite>/<seed>/<index>'"


@dataclass
class SuiteResult:
    name: str
    params: dict
    checked: int = 0
    skipped: list = field(default_factory=list)
    violations: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "params": self.params,
            "checked": self.checked,
            "skipped": self.skipped,
            "violations": self.violations,
            "stats": self.stats,
        }


def instance_rng(suite: str, seed: int, index: int) -> random.Random:
    return random.Random(f"{suite}/{seed}/{index}")


def _rows(vs) -> list:
    return [list(v) for v in vs]


# ------------------------------------------------------------------ samplers


def random_alpha(rng, n, top) -> ExpansionShape:
    return ExpansionShape(tuple(rng.randint(1, top) for _ in range(n)))


def random_ideal(rng, max_n=4, max_gens=6, max_exp=3) -> MonomialIdeal:
    """A mix of three families so that positive verdicts are common too.

    'random': arbitrary nonzero exponent vectors.  'equigenerated': one
    common degree.  'product': a product of ideals generated by variable
    subsets, which is polymatroidal.
    """
    n = rng.randint(1, max_n)
    family = rng.choice(("random", "equigenerated", "product"))
    while True:
        if family == "random":
            gens = [tuple(rng.randint(0, max_exp) for _ in range(n)) for _ in range(rng.randint(1, max_gens))]
        elif family == "equigenerated":
            d = rng.randint(1, max_exp)
            pool = [v for v in itertools.product(range(d + 1), repeat=n) if sum(v) == d]
            gens = rng.sample(pool, min(len(pool), rng.randint(1, max_gens)))
        else:
            gens = [(0,) * n]
            for _ in range(rng.randint(1, max_exp)):
                S = rng.sample(range(n), rng.randint(1, n))
                gens = [tuple(g[p] + (p == s) for p in range(n)) for g in gens for s in S]
        gens = [g for g in gens if any(g)]
        if not gens:
            continue
        mins = minimal_elements(gens)
        if len(mins) <= max_gens and max(max(g) for g in mins) <= max_exp:
            return MonomialIdeal(mins, n)


def random_configuration(rng, max_n=4, max_size=6, max_degree=4) -> tuple:
    """A divisibility antichain of nonzero vectors of degree at most ``max_degree``.

    Vectors are drawn one by one and dropped when comparable with one kept.
    """
    n = rng.randint(1, max_n)
    pool = [v for v in itertools.product(range(max_degree + 1), repeat=n) if 0 < sum(v) <= max_degree]
    want = rng.randint(1, max_size)
    kept: list = []
    for v in rng.sample(pool, len(pool)):
        if not any(divides(v, w) or divides(w, v) for w in kept):
            kept.append(v)
            if len(kept) == want:
                break
    return tuple(kept)


def random_equigenerated(rng, max_n=3, max_size=5, max_degree=4) -> tuple:
    """Distinct monomials of one degree d >= 2.

    Half the draws keep every pure power x_i^d and add a few mixed
    monomials; gaps inside a full cone are where normality tends to fail.
    """
    n = rng.randint(2, max_n)
    d = rng.randint(2, max_degree)
    pool = [v for v in itertools.product(range(d + 1), repeat=n) if sum(v) == d]
    if rng.random() < 0.5:
        corners = [tuple(d * (p == i) for p in range(n)) for i in range(n)]
        rest = [v for v in pool if v not in corners]
        return tuple(corners + rng.sample(rest, min(len(rest), rng.randint(1, max_size - n))))
    return tuple(rng.sample(pool, min(len(pool), rng.randint(2, max_size))))


def canonical_base_sets(max_n=4, max_modulus=3, max_size=6) -> list:
    """Every valid base set up to permutation of coordinates.

    All properties checked on base sets are invariant under permuting the
    variables (together with alpha), so one representative per orbit is kept.
    The zero modulus is included.
    """
    out = []
    for n in range(1, max_n + 1):
        perms = list(itertools.permutations(range(n)))
        seen = set()
        for d in range(max_modulus + 1):
            pool = [v for v in itertools.product(range(d + 1), repeat=n) if sum(v) == d]
            for k in range(1, max_size + 1):
                for S in itertools.combinations(pool, k):
                    canon = min(tuple(sorted(tuple(v[p] for p in perm) for v in S)) for perm in perms)
                    if canon in seen:
                        continue
                    seen.add(canon)
                    if validate_base_set(canon)[0]:
                        out.append(canon)
    return out


# -------------------------------------------------------------------- suites


def _transfer(rng) -> dict:
    I = random_ideal(rng)
    shape = random_alpha(rng, I.dim, 3)
    J = expand_ideal(I, shape)
    base = {
        "poly": is_polymatroidal(I),
        "wp": find_weakly_polymatroidal_order(I, search_limit=I.dim) is not None,
        "lq": find_linear_quotients_order(I, limit=len(I)) is not None,
    }
    expanded = {
        "poly": is_polymatroidal(J),
        "wp": find_weakly_polymatroidal_order(J, search_limit=J.dim) is not None,
        "lq": find_linear_quotients_order(J, limit=len(J)) is not None,
    }
    return {
        "input": {"generators": _rows(I.generators), "alpha": list(shape.alpha)},
        "base": base,
        "expanded": expanded,
        "ok": base == expanded,
    }


def _kdecomp(rng) -> dict:
    I = random_ideal(rng)
    k = max(I.dim - 1, 0)
    lq = find_linear_quotients_order(I, limit=len(I)) is not None
    cert = is_k_decomposable(I, k, limit=len(I))
    certified = cert is None or check_certificate(cert, k)
    return {
        "input": {"generators": _rows(I.generators), "k": k},
        "base": {"lq": lq, "k_decomposable": cert is not None},
        "ok": lq == (cert is not None) and certified,
    }


def _contraction(rng) -> dict:
    A = random_configuration(rng)
    n = len(A[0])
    shape = random_alpha(rng, n, 2)
    E = expand_set(A, shape).vectors
    firsts = [shape.flat(i, 0) for i in range(n)]
    H = contract_gb(toric_gb(E), firsts)
    lhs = H.relabelled(lambda w: contract_vector(w, shape))
    rhs = toric_gb(A).labelled()
    return {
        "input": {"configuration": _rows(A), "alpha": list(shape.alpha)},
        "sizes": {"base": len(A), "expanded": len(E), "gb": len(rhs)},
        "ok": lhs == rhs,
    }


def _white(B_vectors) -> dict:
    B = BaseSet.of(B_vectors)
    white = check_white(B)
    oracle, _ = fiber_connected_oracle(B)
    failures = []
    alphas = 0
    if white:
        # the implication is vacuous otherwise
        for alpha in itertools.product((1, 2), repeat=B.n):
            if max(alpha) == 1:
                continue
            alphas += 1
            if not check_white(expand_bases(B, ExpansionShape(alpha))):
                failures.append(list(alpha))
    return {
        "input": {"bases": _rows(B.bases)},
        "white": white,
        "oracle": oracle,
        "matroid": all(e <= 1 for v in B.bases for e in v),
        "alphas": alphas,
        "failed_alphas": failures,
        "ok": white == oracle and not failures,
    }


def _sort(A) -> dict:
    n = len(A[0])
    base = is_sortable(A)[0]
    mismatched = []
    for alpha in itertools.product((1, 2), repeat=n):
        E = expand_set(A, ExpansionShape(alpha)).vectors
        if is_sortable(E)[0] != base:
            mismatched.append(list(alpha))
    generation = verify_sorting_generation(A) if base else None
    return {
        "input": {"configuration": _rows(A)},
        "sortable": base,
        "mismatched_alphas": mismatched,
        "generation": generation,
        "ok": not mismatched and generation is not False,
    }


def _normal(rng, bound=12) -> dict:
    A = random_equigenerated(rng)
    shape = random_alpha(rng, len(A[0]), 2)
    cmp = compare_normality(A, shape, bound)
    dims = (krull_dimension(A), krull_dimension(expand_set(A, shape).vectors))
    return {
        "input": {"configuration": _rows(A), "alpha": list(shape.alpha), "bound": bound},
        "base_normal": cmp.base.normal,
        "expanded_normal": cmp.expanded.normal,
        "dimensions": list(dims),
        "ok": cmp.agree and dims[0] <= dims[1],
    }


def counting_identity(max_n=4, max_entry=4, max_copies=3) -> list:
    """(u, alpha) pairs where enumeration, the binomial product or contraction disagree."""
    bad = []
    for n in range(1, max_n + 1):
        for alpha in itertools.product(range(1, max_copies + 1), repeat=n):
            shape = ExpansionShape(alpha)
            for u in itertools.product(range(max_entry + 1), repeat=n):
                lifts = expand_vector(u, shape)
                formula = prod(comb(u[i] + alpha[i] - 1, alpha[i] - 1) for i in range(n))
                if not (
                    len(lifts) == len(set(lifts)) == formula == expansion_count(u, shape)
                    and all(contract_vector(w, shape) == u for w in lifts)
                ):
                    bad.append((u, alpha))
    return bad


def _labelling(rng) -> dict:
    """Expanding by alpha then by gamma, relabelled, equals expanding by beta."""
    A = random_configuration(rng, max_n=3, max_size=4, max_degree=3)
    n = len(A[0])
    shape = random_alpha(rng, n, 2)
    i = rng.randrange(n)
    sigma = relabel_iterated(shape, i)
    twice = expand_set(expand_set(A, shape).vectors, sigma.gamma).vectors
    once = expand_set(A, sigma.beta).vectors
    image = {sigma.apply(w) for w in twice}
    return {
        "input": {"configuration": _rows(A), "alpha": list(shape.alpha), "split": i + 1},
        "ok": image == set(once) and len(image) == len(twice),
    }


def _gb_invariance(rng) -> dict:
    """The reduced basis does not depend on how the configuration is listed."""
    A = list(random_configuration(rng, max_n=3, max_size=5, max_degree=3))
    reference = toric_gb(A).labelled()
    shuffled = A[:]
    rng.shuffle(shuffled)
    return {
        "input": {"configuration": _rows(A), "shuffled": _rows(shuffled)},
        "ok": toric_gb(shuffled).labelled() == reference,
    }


@dataclass(frozen=True)
class Suite:
    name: str
    default_count: int | None  # None: exhaustive
    params: dict
    build: object  # (seed, count) -> list of zero-argument checks


def _random_suite(name, fn, count, params):
    def build(seed, n):
        return [lambda k=k: fn(instance_rng(name, seed, k)) for k in range(n)]

    return Suite(name, count, params, build)


def _white_build(seed, count):
    family = canonical_base_sets()
    if count is not None:
        family = family[:count]
    return [lambda B=B: _white(B) for B in family]


def _sort_build(seed, count):
    family = [A for n in (1, 2, 3) for A in subsets_of(degree_monomials(n, 2))]
    if count is not None:
        family = family[:count]
    return [lambda A=A: _sort(A) for A in family]


def _counting() -> dict:
    bad = counting_identity()
    return {"input": {"counting": "n<=4, entries<=4, alpha<=3"}, "bad": _rows_pairs(bad), "ok": not bad}


def _structural_build(seed, count):
    checks = [_counting]
    checks += [lambda k=k: _labelling(instance_rng("structural-labelling", seed, k)) for k in range(count)]
    checks += [lambda k=k: _gb_invariance(instance_rng("structural-gb", seed, k)) for k in range(count)]
    return checks


def _rows_pairs(pairs) -> list:
    return [[list(u), list(a)] for u, a in pairs]


_SUITES = {
    s.name: s
    for s in (
        _random_suite(
            "transfer", _transfer, 100,
            {"n": "1..4", "generators": "<=6", "exponents": "<=3", "alpha": "<=3", "properties": ["poly", "wp", "lq"]},
        ),
        _random_suite("kdecomp", _kdecomp, 100, {"n": "1..4", "generators": "<=6", "exponents": "<=3", "k": "n-1"}),
        _random_suite(
            "contraction", _contraction, 25, {"n": "1..4", "monomials": "<=6", "degree": "1..4", "alpha": "<=2"}
        ),
        Suite("white", None, {"n": "1..4", "modulus": "0..3", "bases": "<=6", "alpha": "all in {1,2}^n"}, _white_build),
        Suite("sort", None, {"family": "subsets of degree-2 monomials, n<=3", "alpha": "all in {1,2}^n"}, _sort_build),
        _random_suite(
            "normal", _normal, 20, {"n": "2..3", "monomials": "2..5", "degree": "2..4", "alpha": "<=2", "bound": 12}
        ),
        Suite("structural", 20, {"labelling": "random", "gb_invariance": "random"}, _structural_build),
    )
}

SUITES = tuple(_SUITES)


def run_suite(name: str, seed: int = 0, count: int | None = None, workers: int = 1) -> SuiteResult:
    """Run one suite; ``count`` defaults to the suite's size, None means exhaustive."""
    suite = _SUITES[name]
    if count is None:
        count = suite.default_count
    checks = suite.build(seed, count)
    params = dict(suite.params, generator=GENERATOR, seed=seed, count=len(checks))
    result = SuiteResult(name, params)

    def guarded(check):
        try:
            return check()
        except (SearchTooLarge, BudgetExhausted) as e:
            return {"skipped": str(e) or type(e).__name__}

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(guarded, checks))
    else:
        outcomes = [guarded(c) for c in checks]
    for index, out in enumerate(outcomes):
        if "skipped" in out:
            result.skipped.append({"index": index, "reason": out["skipped"]})
            continue
        result.checked += 1
        for key in ("base", "white", "sortable", "base_normal"):
            val = out.get(key)
            if isinstance(val, dict):
                for prop, flag in val.items():
                    result.stats[f"{prop}_true"] = result.stats.get(f"{prop}_true", 0) + bool(flag)
            elif isinstance(val, bool):
                result.stats[f"{key}_true"] = result.stats.get(f"{key}_true", 0) + val
        if not out["ok"]:
            result.violations.append(dict(out, index=index))
    return result
