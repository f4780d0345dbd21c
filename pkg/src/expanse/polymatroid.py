"""Discrete polymatroids through their base sets, double swaps and White's conjecture."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Iterable, Sequence

from .core import InducedSharp, MonomialSet, TermOrder, check_dims
from .errors import BudgetExhausted, InvariantViolation, PreconditionError
from .expansion import ExpansionShape, expand_set
from .ideal_props import exchange_violation
from .toric import YBinomial, _y_order, generates, _in_kernel, toric_gb


@dataclass(frozen=True)
class BaseSet:
    """The bases of a discrete polymatroid, stored as a configuration."""

    n: int
    bases: tuple

    @classmethod
    def of(cls, vectors: Iterable[Sequence[int]]) -> "BaseSet":
        vs = [tuple(int(e) for e in v) for v in vectors]
        ok, witness = validate_base_set(vs)
        if not ok:
            raise PreconditionError(f"not a base set: {witness}")
        members = MonomialSet.of(vs).members
        return cls(len(members[0]), members)

    @property
    def modulus(self) -> int:
        return sum(self.bases[0])

    def configuration(self) -> MonomialSet:
        return MonomialSet(self.n, self.bases, True)

    def __len__(self):
        return len(self.bases)

    def __iter__(self):
        return iter(self.bases)


def validate_base_set(candidate: Iterable[Sequence[int]]):
    """(True, None) or (False, witness).

    The witness is a string for structural failures and the violating
    triple (u, v, i) when the exchange axiom fails.
    """
    vs = [tuple(int(e) for e in v) for v in candidate]
    if not vs:
        return False, "empty"
    check_dims(*vs)
    if any(e < 0 for v in vs for e in v):
        return False, "negative entry"
    if len({sum(v) for v in vs}) > 1:
        return False, "unequal moduli"
    uniq = sorted(set(vs), reverse=True)
    bad = exchange_violation(uniq)
    if bad is not None:
        return False, bad
    return True, None


def expand_bases(B: BaseSet, shape: ExpansionShape) -> BaseSet:
    E = expand_set(B.configuration(), shape).vectors
    ok, witness = validate_base_set(E.members)
    if not ok:
        raise InvariantViolation(f"expanded bases fail the exchange axiom: {witness}")
    return BaseSet(shape.total, E.members)


@dataclass(frozen=True)
class SwapMove:
    """(u1, u2) -> (v1, v2) = (u1 - e_i + e_j, u2 + e_i - e_j)."""

    u1: tuple
    u2: tuple
    v1: tuple
    v2: tuple
    i: int
    j: int


def swap_moves(B: BaseSet) -> list:
    members = set(B.bases)
    out = []
    for u1 in B.bases:
        for u2 in B.bases:
            for i in range(B.n):
                if u1[i] <= u2[i]:
                    continue
                for j in range(B.n):
                    if u2[j] <= u1[j]:
                        continue
                    v1 = list(u1)
                    v1[i] -= 1
                    v1[j] += 1
                    v2 = list(u2)
                    v2[i] += 1
                    v2[j] -= 1
                    v1, v2 = tuple(v1), tuple(v2)
                    if v1 in members and v2 in members:
                        out.append(SwapMove(u1, u2, v1, v2, i, j))
    return out


def swap_quadrics(B: BaseSet, order: TermOrder | None = None) -> tuple:
    """The nonzero quadrics y_{u1} y_{u2} - y_{v1} y_{v2} of all double swaps."""
    config = B.bases
    order = _y_order(order, config)
    index = {u: k for k, u in enumerate(config)}
    m = len(config)
    seen = set()
    for mv in swap_moves(B):
        lhs = sorted((index[mv.u1], index[mv.u2]))
        rhs = sorted((index[mv.v1], index[mv.v2]))
        if lhs == rhs:
            continue
        q = YBinomial.from_indices(lhs, rhs, m).oriented(order)
        if not _in_kernel(q, config):
            raise InvariantViolation(f"swap quadric {q} is not in the toric ideal")
        seen.add(q)
    key = order.keyfunc()
    return tuple(sorted(seen, key=lambda q: (key(q.plus), key(q.minus)), reverse=True))


def check_white(B: BaseSet, order: TermOrder | None = None, *, budget=None) -> bool:
    """True iff the double-swap quadrics generate the toric ideal of the base ring."""
    return generates(swap_quadrics(B, order), B.bases, order, budget=budget)


@dataclass(frozen=True)
class FiberWitness:
    """A disconnected fiber: all multisets with the given sum, and one component."""

    degree: int
    multidegree: tuple
    fiber: tuple
    component: tuple


def fiber_connected_oracle(B: BaseSet, degree_bound: int | None = None, *, max_multisets: int = 2_000_000):
    """Decide quadric generation by connectivity of fibers under double swaps.

    Returns (True, None) or (False, FiberWitness).  With no ``degree_bound``,
    the top degree of the reduced toric Groebner basis is used: a generating
    set lives in those degrees, so connected fibers there suffice.
    """
    if degree_bound is None:
        degree_bound = toric_gb(B.bases).max_degree
    config = B.bases
    m = len(config)
    # a swap is directed, but its quadric moves a fiber both ways
    moves = defaultdict(set)
    for mv in swap_moves(B):
        a = tuple(sorted((config.index(mv.u1), config.index(mv.u2))))
        b = tuple(sorted((config.index(mv.v1), config.index(mv.v2))))
        if a != b:
            moves[a].add(b)
            moves[b].add(a)
    # fibers are keyed by multidegree alone; sizes only mix when the modulus is 0
    fibers = defaultdict(list)
    total = 0
    for D in range(0, degree_bound + 1):
        for ms in combinations_with_replacement(range(m), D):
            total += 1
            if total > max_multisets:
                raise BudgetExhausted(f"fiber enumeration passed {max_multisets} multisets")
            s = [0] * B.n
            for k in ms:
                for p, e in enumerate(config[k]):
                    s[p] += e
            fibers[tuple(s)].append(ms)
    for b, fiber in sorted(fibers.items(), key=lambda kv: (len(kv[1][0]), kv[0])):
        if len(fiber) == 1:
            continue
        comp = _component(fiber[0], moves)
        if len(comp) != len(fiber):
            return False, FiberWitness(len(fiber[-1]), b, tuple(fiber), tuple(sorted(comp)))
    return True, None


def _neighbours(ms: tuple, moves) -> Iterable[tuple]:
    for x in range(len(ms)):
        for y in range(x + 1, len(ms)):
            pair = (ms[x], ms[y])
            for a, b in moves.get(pair, ()):
                rest = list(ms[:x] + ms[x + 1:y] + ms[y + 1:])
                yield tuple(sorted(rest + [a, b]))


def _component(start: tuple, moves) -> set:
    seen = {start}
    stack = [start]
    while stack:
        cur = stack.pop()
        for nxt in _neighbours(cur, moves):
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return seen


def verify_theorem_main(B: BaseSet, shape: ExpansionShape, order: TermOrder | None = None, *, budget=None) -> bool:
    """White-type generation for B implies it for every expansion of B.

    Vacuously true when B itself fails.
    """
    if not check_white(B, order, budget=budget):
        return True
    # an induced order carries over to the expanded configuration
    lifted = order if isinstance(order, InducedSharp) else None
    return check_white(expand_bases(B, shape), lifted, budget=budget)
