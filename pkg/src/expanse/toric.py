"""Toric ideals of monomial configurations and their Groebner bases.

All polynomials are binomials ``x^a - x^b`` with +1/-1 coefficients, stored as
pairs of exponent tuples.  Groebner bases are computed by a binomial Buchberger
algorithm; toric ideals are obtained by eliminating x from (y_i - x^{u_i}).
"""

from __future__ import annotations

import heapq
import itertools
import os
import sys
from array import array
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import (
    Elimination,
    InducedSharp,
    Lex,
    MonomialSet,
    TermOrder,
    Vector,
    add,
    check_dims,
    support,
    vmax,
    vmin,
)
from .errors import BudgetExhausted, DimensionMismatch, InvariantViolation, PreconditionError
from .expansion import ExpansionShape, expand_set, relabel_iterated

DEFAULT_BUDGET = 10**6


def spair_budget() -> int:
    """S-pair cap; the EXPANSIO_BUDGET environment variable overrides the default."""
    raw = os.environ.get("EXPANSIO_BUDGET")
    return int(raw) if raw else DEFAULT_BUDGET


# ------------------------------------------------------------------ binomials


@dataclass(frozen=True)
class YBinomial:
    """y^plus - y^minus over the variables y_0..y_{m-1} of a configuration.

    ``plus`` and ``minus`` are exponent tuples, i.e. multisets of configuration
    indices.  Builders in this module always put the leading term in ``plus``.
    """

    plus: tuple
    minus: tuple

    def __post_init__(self):
        if len(self.plus) != len(self.minus):
            raise DimensionMismatch("binomial sides have different numbers of variables")
        if self.plus == self.minus:
            raise ValueError("zero binomial")

    @classmethod
    def from_indices(cls, plus: Iterable[int], minus: Iterable[int], m: int) -> "YBinomial":
        return cls(_indices_to_exponents(plus, m), _indices_to_exponents(minus, m))

    @property
    def nvars(self) -> int:
        return len(self.plus)

    @property
    def degree(self) -> int:
        return max(sum(self.plus), sum(self.minus))

    def plus_indices(self) -> list:
        return _exponents_to_indices(self.plus)

    def minus_indices(self) -> list:
        return _exponents_to_indices(self.minus)

    def oriented(self, order: TermOrder) -> "YBinomial":
        k = order.key
        return self if k(self.plus) >= k(self.minus) else YBinomial(self.minus, self.plus)

    def labelled(self, configuration: Sequence[Vector]) -> tuple:
        """(plus, minus) as sorted tuples of the configuration vectors involved."""
        return (
            tuple(sorted(configuration[i] for i in self.plus_indices())),
            tuple(sorted(configuration[i] for i in self.minus_indices())),
        )

    def __repr__(self):
        return f"YBinomial(+{self.plus_indices()} -{self.minus_indices()})"


def _indices_to_exponents(indices, m):
    e = [0] * m
    for i in indices:
        if not 0 <= i < m:
            raise IndexError(f"configuration index {i} outside [0, {m})")
        e[i] += 1
    return tuple(e)


def _exponents_to_indices(e):
    return [i for i, k in enumerate(e) for _ in range(k)]


def kernel_test(b: YBinomial, A) -> bool:
    """True iff the two sides of ``b`` map to the same monomial under y_i -> x^{u_i}."""
    config = _configuration(A)
    if b.nvars != len(config):
        raise IndexError(f"binomial over {b.nvars} variables, configuration has {len(config)}")
    return _in_kernel(b, config)


def _in_kernel(b: YBinomial, config: tuple) -> bool:
    """kernel_test for a configuration already validated."""
    return _image(b.plus, config) == _image(b.minus, config)


def _image(e, config):
    out = [0] * len(config[0])
    for i, k in enumerate(e):
        if k:
            for p, a in enumerate(config[i]):
                out[p] += k * a
    return tuple(out)


# ------------------------------------------------------------ Buchberger core


class _Basis:
    """Growing list of oriented binomials with fast monomial reduction.

    Elements whose leading term became redundant are kept (pending pairs may
    refer to them) but no longer used as reducers.  Reducers are bucketed by
    the support of their leading term; a monomial with small support only
    looks into the buckets of its sub-supports.
    """

    def __init__(self, kf, saturate):
        self.kf = kf
        self.saturate = saturate
        self.leads = []
        self.trails = []
        self.active = []
        self._reducers = []
        self._buckets: dict = {}

    def __len__(self):
        return len(self.leads)

    def add(self, lead, trail):
        self.leads.append(lead)
        self.trails.append(trail)
        self.active.append(True)
        nz = tuple((p, e) for p, e in enumerate(lead) if e)
        r = (_mask(lead), nz, lead, trail, len(self.leads) - 1)
        self._reducers.append(r)
        self._buckets.setdefault(r[0], []).append(r)

    def deactivate(self, idx):
        self.active[idx] = False
        self._reducers = [r for r in self._reducers if r[4] != idx]
        rm = _mask(self.leads[idx])
        bucket = [r for r in self._buckets[rm] if r[4] != idx]
        if bucket:
            self._buckets[rm] = bucket
        else:
            del self._buckets[rm]

    def _find(self, m, skip):
        mm = _mask(m)
        buckets = self._buckets
        if 1 << bin(mm).count("1") < len(buckets):
            sub = mm
            while sub:
                for r in buckets.get(sub, ()):
                    if r[4] != skip and all(m[p] >= e for p, e in r[1]):
                        return r
                sub = (sub - 1) & mm
            return None
        for r in self._reducers:
            if r[0] & ~mm == 0 and r[4] != skip and all(m[p] >= e for p, e in r[1]):
                return r
        return None

    def reduce_monomial(self, m, skip=-1):
        while True:
            r = self._find(m, skip)
            if r is None:
                return m
            m = tuple([a - l + t for a, l, t in zip(m, r[2], r[3])])

    def normalize(self, a, b):
        """Reduce both terms; return the oriented (lead, trail) or None for zero."""
        a = self.reduce_monomial(a)
        b = self.reduce_monomial(b)
        if self.saturate:
            g = vmin(a, b)
            if any(g):
                a = tuple([x - y for x, y in zip(a, g)])
                b = tuple([x - y for x, y in zip(b, g)])
        if a == b:
            return None
        kf = self.kf
        return (a, b) if kf(a) > kf(b) else (b, a)


def _weighted_degree(m, weights):
    if weights is None:
        return sum(m)
    return sum(a * w for a, w in zip(m, weights))


def _mask(v) -> int:
    """Support of v as an integer, one byte per variable."""
    return int.from_bytes(bytes(map(bool, v)), "little")


class _Packed:
    """Exponent vectors packed into one int, 16 bits per variable.

    Each field keeps its top bit free as a guard, so lcm and divisibility
    are a handful of big-int operations instead of tuple loops.
    """

    WIDTH = 16

    def __init__(self, nv):
        self.nv = nv
        w = self.WIDTH
        self.guard = sum(1 << (w * k + w - 1) for k in range(nv))
        self.field = (1 << w) - 1
        self.ones = sum(1 << (w * k) for k in range(nv))
        self.top = w * (nv - 1)

    def pack(self, v) -> int:
        if v and max(v) >= 1 << (self.WIDTH - 1):
            raise BudgetExhausted("exponent too large for the packed Buchberger representation")
        return int.from_bytes(array("H", v).tobytes(), sys.byteorder)

    def unpack(self, x) -> tuple:
        a = array("H")
        a.frombytes(x.to_bytes(2 * self.nv, sys.byteorder))
        return tuple(a)

    def lcm(self, a, b) -> int:
        ge = (((a | self.guard) - b) & self.guard) >> (self.WIDTH - 1)
        m = ge * self.field
        return (a & m) | (b & ~m)

    def divides(self, a, b) -> bool:
        """a divides b."""
        return ((b | self.guard) - a) & self.guard == self.guard

    def degree(self, x) -> int:
        return ((x * self.ones) >> self.top) & self.field


def buchberger(
    binomials: Iterable[tuple],
    kf,
    *,
    saturate: bool = False,
    budget: int | None = None,
    degree_bound: int | None = None,
    weights: Sequence[int] | None = None,
) -> list:
    """Reduced Groebner basis of the ideal spanned by ``binomials``.

    Each input is a pair (a, b) of exponent tuples meaning x^a - x^b; ``kf`` is
    the key of the term order.  With ``saturate`` common factors are cancelled,
    which is only valid for prime ideals containing no monomial (toric ideals
    and their elimination presentations).  ``degree_bound`` truncates the
    computation at that (weighted) degree and requires homogeneous input.
    Pairs are treated lowest degree first, ties broken by the term order;
    new pairs are filtered with the Gebauer-Moeller criteria M and F and the
    product criterion.  Pruning old pairs (criterion B) was measured to cost
    more than it saves here, so it is left out.
    """
    if budget is None:
        budget = spair_budget()
    inputs = [(tuple(a), tuple(b)) for a, b in binomials]
    if degree_bound is not None:
        for a, b in inputs:
            if _weighted_degree(a, weights) != _weighted_degree(b, weights):
                raise PreconditionError("degree truncation needs homogeneous binomials")
    basis = _Basis(kf, saturate)
    leads = basis.leads
    heap: list = []
    pairs: dict = {}  # (i, j) -> packed lcm of leading terms, for live pairs
    if not inputs:
        return []
    P = _Packed(len(inputs[0][0]))
    lcm, pdiv, guard = P.lcm, P.divides, P.guard
    packed: list = []  # packed leading term of every element

    def insert(lead, trail):
        t = len(leads)
        lp = P.pack(lead)
        groups: dict = {}
        active = basis.active
        for i in range(t):
            if active[i]:
                L = lcm(packed[i], lp)
                g = groups.get(L)
                if g is None:
                    groups[L] = g = []
                g.append(i)
        minimal: list = []
        for L in sorted(groups, key=P.degree):
            Lg = L | guard
            for M in minimal:
                if (Lg - M) & guard == guard:
                    break
            else:
                minimal.append(L)
        basis.add(lead, trail)
        packed.append(lp)
        for L in minimal:
            members = groups[L]
            # product criterion: lcm equal to the product means coprime leads
            if any(packed[i] + lp == L for i in members):
                continue
            Lv = P.unpack(L)
            deg = _weighted_degree(Lv, weights)
            if degree_bound is not None and deg > degree_bound:
                continue
            i = min(members)
            pairs[(i, t)] = L
            heapq.heappush(heap, (deg, kf(Lv), i, t))
        for i in range(t):
            if active[i] and pdiv(lp, packed[i]):
                basis.deactivate(i)

    # inputs are inserted in increasing order so early reductions are cheap
    def input_key(ab):
        top = max(ab, key=kf)
        return (_weighted_degree(top, weights), kf(top))

    for a, b in sorted(inputs, key=input_key):
        nb = basis.normalize(a, b)
        if nb is not None:
            insert(*nb)

    spent = 0
    while heap:
        _, _, i, j = heapq.heappop(heap)
        L = pairs.pop((i, j), None)
        if L is None:
            continue
        spent += 1
        if spent > budget:
            raise BudgetExhausted(f"Buchberger exceeded the budget of {budget} S-pairs")
        L = P.unpack(L)
        li, lj = leads[i], leads[j]
        ti, tj = basis.trails[i], basis.trails[j]
        a = tuple([x - y + z for x, y, z in zip(L, li, ti)])
        b = tuple([x - y + z for x, y, z in zip(L, lj, tj)])
        nb = basis.normalize(a, b)
        if nb is not None:
            insert(*nb)

    live = [(leads[k], basis.trails[k]) for k in range(len(basis)) if basis.active[k]]
    return reduce_basis(live, kf)


def reduce_basis(pairs: Sequence[tuple], kf) -> list:
    """Interreduce a Groebner basis given as oriented (lead, trail) pairs."""
    # a divisor of a leading term is smaller, so it is seen first
    ordered = sorted(pairs, key=lambda lt: kf(lt[0]))
    minimal: list = []
    helper = _Basis(kf, saturate=False)
    for lead, trail in ordered:
        if helper._find(lead, -1) is None:
            minimal.append((lead, trail))
            helper.add(lead, trail)
    out = []
    for idx, (lead, trail) in enumerate(minimal):
        t = helper.reduce_monomial(trail, skip=idx)
        if t == lead:
            raise InvariantViolation("interreduction produced a zero element from a minimal basis")
        out.append((lead, t))
    out.sort(key=lambda lt: (kf(lt[0]), kf(lt[1])), reverse=True)
    return out


def _spair_reduces_to_zero(p, q, basis: _Basis) -> bool:
    (li, ti), (lj, tj) = p, q
    L = vmax(li, lj)
    a = tuple(x - y + z for x, y, z in zip(L, li, ti))
    b = tuple(x - y + z for x, y, z in zip(L, lj, tj))
    return basis.reduce_monomial(a) == basis.reduce_monomial(b)


# ---------------------------------------------------------- Groebner bases


def _configuration(A) -> tuple:
    if isinstance(A, MonomialSet):
        config = A.members
    else:
        config = tuple(tuple(int(e) for e in u) for u in A)
    if not config:
        raise PreconditionError("configuration must be nonempty")
    check_dims(*config)
    if len(set(config)) != len(config):
        raise PreconditionError("configuration members must be pairwise distinct")
    return config


def induced_lex(configuration: Sequence[Vector]) -> InducedSharp:
    """The order on y-monomials induced by lex x1 > ... > xn."""
    return InducedSharp(Lex(), tuple(configuration))


def _y_order(order: TermOrder | None, config: tuple) -> TermOrder:
    if order is None:
        return induced_lex(config)
    if isinstance(order, InducedSharp):
        if order.configuration != config:
            return InducedSharp(order.base, config)
        return order
    if isinstance(order, Lex):
        if order.perm is not None and sorted(order.perm) != list(range(len(config))):
            raise DimensionMismatch("lex order on y-variables must list every configuration index")
        return order
    raise PreconditionError(f"unsupported order on y-variables: {order!r}")


@dataclass(frozen=True)
class GroebnerBasis:
    configuration: tuple
    order: TermOrder
    elements: tuple

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @property
    def max_degree(self) -> int:
        return max((g.degree for g in self.elements), default=0)

    def labelled(self) -> frozenset:
        """Elements as (plus, minus) pairs of vector multisets; independent of indexing."""
        return frozenset(g.labelled(self.configuration) for g in self.elements)

    def relabelled(self, fn) -> frozenset:
        """:meth:`labelled` after applying ``fn`` to every configuration vector."""
        return frozenset(
            (tuple(sorted(fn(v) for v in p)), tuple(sorted(fn(v) for v in q))) for p, q in self.labelled()
        )


def _to_pairs(elements: Iterable[YBinomial], kf) -> list:
    out = []
    for g in elements:
        a, b = g.plus, g.minus
        out.append((a, b) if kf(a) > kf(b) else (b, a))
    return out


def _from_pairs(pairs, m=None) -> tuple:
    return tuple(YBinomial(a[:m] if m else a, b[:m] if m else b) for a, b in pairs)


def toric_gb(A, order: TermOrder | None = None, *, budget: int | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of the toric ideal I_A.

    Buchberger on {y_i - x^{u_i}} under an elimination order (x-block first),
    then intersect with the y-subring.  ``order`` is the order on y-monomials;
    by default the order induced by lex on the configuration.
    """
    config = _configuration(A)
    m, n = len(config), len(config[0])
    y_order = _y_order(order, config)
    elim = Elimination(m, y_order, Lex())
    kf = elim.keyfunc()
    zero_y = (0,) * m
    gens = []
    for i, u in enumerate(config):
        y = list(zero_y)
        y[i] = 1
        gens.append((tuple(y) + (0,) * n, zero_y + tuple(u)))
    # y_i - x^{u_i} is homogeneous once y_i weighs |u_i|, so pairs go degree by degree
    weights = [sum(u) for u in config] + [1] * n
    full = buchberger(gens, kf, saturate=True, budget=budget, weights=weights)
    ykf = y_order.keyfunc()
    pure = [(a[:m], b[:m]) for a, b in full if not any(a[m:]) and not any(b[m:])]
    elements = _from_pairs(reduce_basis(pure, ykf))
    for g in elements:
        if any(x and y for x, y in zip(g.plus, g.minus)):
            raise InvariantViolation(f"reduced toric Groebner basis element {g} has a common factor")
    return GroebnerBasis(config, y_order, elements)


def _basis_of(elements: Iterable[YBinomial], kf) -> _Basis:
    b = _Basis(kf, saturate=False)
    for lead, trail in _to_pairs(elements, kf):
        b.add(lead, trail)
    return b


def normal_form(b: YBinomial, G: GroebnerBasis) -> YBinomial | None:
    """Remainder of ``b`` on division by ``G``; None when it reduces to zero."""
    if b.nvars != len(G.configuration):
        raise DimensionMismatch("binomial and Groebner basis live over different configurations")
    kf = G.order.keyfunc()
    basis = _basis_of(G.elements, kf)
    p = basis.reduce_monomial(b.plus)
    q = basis.reduce_monomial(b.minus)
    if p == q:
        return None
    return YBinomial(p, q)


def _is_homogeneous(elements) -> bool:
    return all(sum(g.plus) == sum(g.minus) for g in elements)


def ideal_gb(Q: Iterable[YBinomial], order: TermOrder, *, budget=None, degree_bound=None) -> list:
    """Reduced Groebner basis (oriented pairs) of the ideal generated by ``Q``."""
    kf = order.keyfunc()
    Q = list(Q)
    if degree_bound is not None and not _is_homogeneous(Q):
        degree_bound = None
    return buchberger(_to_pairs(Q, kf), kf, saturate=False, budget=budget, degree_bound=degree_bound)


def generates(Q: Iterable[YBinomial], A, order: TermOrder | None = None, *, budget=None) -> bool:
    """True iff the binomials ``Q`` generate the toric ideal I_A."""
    config = _configuration(A)
    Q = list(Q)
    for q in Q:
        if q.nvars != len(config) or not _in_kernel(q, config):
            raise PreconditionError(f"{q} is not in the toric ideal")
    G = toric_gb(config, order, budget=budget)
    if not G.elements:
        return True
    if not Q:
        return False
    kf = G.order.keyfunc()
    # toric ideals of equigenerated configurations are homogeneous, so a
    # truncated basis up to the top degree of G decides membership
    bound = G.max_degree if _is_homogeneous(G.elements) else None
    GQ = ideal_gb(Q, G.order, budget=budget, degree_bound=bound)
    basis = _Basis(kf, saturate=False)
    for lead, trail in GQ:
        basis.add(lead, trail)
    return all(basis.reduce_monomial(g.plus) == basis.reduce_monomial(g.minus) for g in G.elements)


def verify_gb(candidate: Iterable[YBinomial], A, order: TermOrder | None = None, *, budget=None) -> bool:
    """Check that ``candidate`` is a Groebner basis of I_A.

    (a) every element lies in I_A, (b) every S-pair reduces to zero,
    (c) every element of the reduced basis reduces to zero.
    """
    config = _configuration(A)
    y_order = _y_order(order, config)
    kf = y_order.keyfunc()
    cand = list(candidate)
    if not all(g.nvars == len(config) and _in_kernel(g, config) for g in cand):
        return False
    pairs = _to_pairs(cand, kf)
    basis = _Basis(kf, saturate=False)
    for lead, trail in pairs:
        basis.add(lead, trail)
    for p, q in itertools.combinations(pairs, 2):
        if not _spair_reduces_to_zero(p, q, basis):
            return False
    G = toric_gb(config, y_order, budget=budget)
    return all(basis.reduce_monomial(g.plus) == basis.reduce_monomial(g.minus) for g in G.elements)


def contract_gb(G: GroebnerBasis, T: Iterable[int]) -> GroebnerBasis:
    """Restrict ``G`` to the combinatorial pure subring on the x-variables ``T``.

    Keeps the configuration members supported inside ``T`` and the elements of
    ``G`` involving only their y-variables.
    """
    T = set(T)
    if not T:
        raise PreconditionError("variable subset must be nonempty")
    config = G.configuration
    keep = [i for i, u in enumerate(config) if set(support(u)) <= T]
    if not keep:
        raise PreconditionError("empty subconfiguration")
    position = {i: k for k, i in enumerate(keep)}
    sub_config = tuple(config[i] for i in keep)
    elements = []
    for g in G.elements:
        idx = set(g.plus_indices()) | set(g.minus_indices())
        if idx <= position.keys():
            elements.append(
                YBinomial(tuple(g.plus[i] for i in keep), tuple(g.minus[i] for i in keep))
            )
    if isinstance(G.order, InducedSharp):
        order = InducedSharp(G.order.base, sub_config)
    elif isinstance(G.order, Lex) and G.order.perm is not None:
        order = Lex(tuple(position[i] for i in G.order.perm if i in position))
    else:
        order = G.order
    kf = order.keyfunc()
    elements = _from_pairs(sorted(_to_pairs(elements, kf), key=lambda lt: (kf(lt[0]), kf(lt[1])), reverse=True))
    return GroebnerBasis(sub_config, order, elements)


# ------------------------------------------------------ Groebner basis lifting


def _lift_multisets(indices: Sequence[int], config, lifts_of) -> dict:
    """All ways to lift a multiset of configuration indices, grouped by exponent sum."""
    counts = Counter(indices)
    per_index = []
    for i in sorted(counts):
        per_index.append(list(itertools.combinations_with_replacement(lifts_of[config[i]], counts[i])))
    by_sum: dict = {}
    for choice in itertools.product(*per_index):
        chosen = [w for group in choice for w in group]
        total = chosen[0]
        for w in chosen[1:]:
            total = add(total, w)
        by_sum.setdefault(total, []).append(chosen)
    return by_sum


def expand_gb_single_split(A, G_A: GroebnerBasis, i: int, *, check: bool = True):
    """The two sets G0, G1 whose union is a Groebner basis of I_{A^alpha}, alpha = 1 + e_i.

    ``G_A`` must be a Groebner basis of I_A under the order induced by lex.
    Both sets are returned as tuples of YBinomial over the configuration
    ``expand_set(A, alpha).vectors.members``, oriented and deduplicated, with
    identically zero binomials dropped.
    """
    config = _configuration(A)
    n = len(config[0])
    if not 0 <= i < n:
        raise IndexError(f"split variable {i} outside [0, {n})")
    if check:
        if tuple(G_A.configuration) != config and set(G_A.configuration) != set(config):
            raise PreconditionError("Groebner basis belongs to a different configuration")
        if not verify_gb(_reindex(G_A, config), config, induced_lex(config)):
            raise PreconditionError("G_A is not a Groebner basis of I_A under the induced lex order")
    shape = ExpansionShape.single_split(n, i)
    E = expand_set(MonomialSet(n, config), shape)
    ex_config = E.vectors.members
    index = {w: k for k, w in enumerate(ex_config)}
    order = induced_lex(ex_config)
    m = len(ex_config)
    first, second = shape.flat(i, 0), shape.flat(i, 1)

    def binomial(plus_vectors, minus_vectors):
        p = _indices_to_exponents((index[w] for w in plus_vectors), m)
        q = _indices_to_exponents((index[w] for w in minus_vectors), m)
        if p == q:
            return None
        return YBinomial(p, q).oriented(order)

    g0 = {}
    for u in ex_config:
        if not u[first]:
            continue
        for v in ex_config:
            if not v[second]:
                continue
            u2 = list(u)
            u2[first] -= 1
            u2[second] += 1
            v2 = list(v)
            v2[second] -= 1
            v2[first] += 1
            b = binomial((u, v), (tuple(u2), tuple(v2)))
            if b is not None:
                g0[b] = None

    lifts_of = {u: [] for u in config}
    for w in ex_config:
        lifts_of[E.provenance[w]].append(w)
    ga_config = G_A.configuration
    g1 = {}
    for g in G_A.elements:
        plus = _lift_multisets(g.plus_indices(), ga_config, lifts_of)
        minus = _lift_multisets(g.minus_indices(), ga_config, lifts_of)
        for total, plus_choices in plus.items():
            for pc in plus_choices:
                for mc in minus.get(total, ()):
                    b = binomial(pc, mc)
                    if b is not None:
                        g1[b] = None
    kf = order.keyfunc()
    sort_key = lambda b: (kf(b.plus), kf(b.minus))
    return tuple(sorted(g0, key=sort_key, reverse=True)), tuple(sorted(g1, key=sort_key, reverse=True))


def _reindex(G: GroebnerBasis, config: tuple) -> list:
    """Elements of ``G`` rewritten over the index set of ``config``."""
    if tuple(G.configuration) == tuple(config):
        return list(G.elements)
    pos = {u: k for k, u in enumerate(config)}
    m = len(config)
    out = []
    for g in G.elements:
        p = _indices_to_exponents((pos[G.configuration[k]] for k in g.plus_indices()), m)
        q = _indices_to_exponents((pos[G.configuration[k]] for k in g.minus_indices()), m)
        out.append(YBinomial(p, q))
    return out


def expand_gb(A, G_A: GroebnerBasis, shape: ExpansionShape, *, verify: bool = True, trace: list | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of I_{A^alpha} built from one of I_A by single splits.

    Variables are split one copy at a time in canonical order; each step
    applies :func:`expand_gb_single_split` to the last copy of the current
    block and relabels the result to the next shape.  ``trace`` collects the
    (G0, G1) pair of every step, indexed over that step's configuration.
    """
    config = _configuration(A)
    n = len(config[0])
    if shape.n != n:
        raise DimensionMismatch(f"shape with {shape.n} blocks for configuration in dimension {n}")
    current = ExpansionShape.ones(n)
    cur_config = config
    elements = _reindex(G_A, config)
    for i in range(n):
        for _ in range(shape.alpha[i] - 1):
            last = current.flat(i, current.alpha[i] - 1)
            cur_gb = GroebnerBasis(cur_config, induced_lex(cur_config), tuple(elements))
            g0, g1 = expand_gb_single_split(cur_config, cur_gb, last, check=False)
            split_config = expand_set(MonomialSet(len(cur_config[0]), cur_config), ExpansionShape.single_split(current.total, last)).vectors.members
            if trace is not None:
                trace.append((split_config, g0, g1))
            relabel = relabel_iterated(current, i)
            new_config = tuple(relabel.apply(w) for w in split_config)
            current = current.incremented(i)
            expected = set(expand_set(MonomialSet(n, config), current).vectors.members)
            if set(new_config) != expected:
                raise InvariantViolation("relabelled double expansion differs from the single expansion")
            order = induced_lex(new_config)
            kf = order.keyfunc()
            pairs = reduce_basis(_to_pairs(g0 + g1, kf), kf)
            elements = list(_from_pairs(pairs))
            cur_config = new_config
    order = induced_lex(cur_config)
    result = GroebnerBasis(cur_config, order, tuple(elements))
    if verify:
        direct = toric_gb(cur_config, order)
        if result.labelled() != direct.labelled():
            raise InvariantViolation("lifted Groebner basis differs from the directly computed reduced basis")
    return result
