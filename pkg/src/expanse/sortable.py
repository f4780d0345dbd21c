"""The sorting operator on pairs of monomials and sortable sets."""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Sequence

from .core import MonomialSet, TermOrder
from .errors import DimensionMismatch, InvariantViolation, PreconditionError
from .expansion import ExpansionShape, expand_set
from .toric import YBinomial, _y_order, generates, _in_kernel


def sort_pair(u: Sequence[int], v: Sequence[int]) -> tuple:
    """Merge the variable occurrences of uv and deal them out alternately.

    Odd positions of the weakly increasing merge go to u', even ones to v'.
    """
    u, v = tuple(u), tuple(v)
    if len(u) != len(v):
        raise DimensionMismatch("sort_pair needs vectors of equal dimension")
    if sum(u) != sum(v):
        raise PreconditionError(f"moduli differ: {sum(u)} != {sum(v)}")
    merged = [i for i, e in enumerate(map(sum, zip(u, v))) for _ in range(e)]
    a = [0] * len(u)
    b = [0] * len(u)
    for pos, i in enumerate(merged):
        if pos % 2 == 0:
            a[i] += 1
        else:
            b[i] += 1
    return tuple(a), tuple(b)


def _equigenerated(A) -> MonomialSet:
    S = A if isinstance(A, MonomialSet) else MonomialSet.of(A)
    if not S.is_equigenerated():
        raise PreconditionError("sortability needs all monomials of the same degree")
    return S


def is_sortable(A):
    """(True, None), or (False, (u, v, u', v')) for the lex-least bad pair."""
    S = _equigenerated(A)
    members = set(S.members)
    ordered = sorted(members)
    for u in ordered:
        for v in ordered:
            a, b = sort_pair(u, v)
            if a not in members or b not in members:
                return False, (u, v, a, b)
    return True, None


def sorting_relations(A, order: TermOrder | None = None) -> tuple:
    """y_u y_v - y_u' y_v' over unordered pairs that sorting changes."""
    S = _equigenerated(A)
    ok, witness = is_sortable(S)
    if not ok:
        raise PreconditionError(f"set is not sortable: {witness}")
    config = S.members
    order = _y_order(order, config)
    index = {u: k for k, u in enumerate(config)}
    m = len(config)
    out = set()
    for x in range(m):
        for y in range(x, m):
            a, b = sort_pair(config[x], config[y])
            if sorted((index[a], index[b])) == [x, y]:
                continue
            q = YBinomial.from_indices((x, y), (index[a], index[b]), m).oriented(order)
            if not _in_kernel(q, config):
                raise InvariantViolation(f"sorting relation {q} is not in the toric ideal")
            out.add(q)
    key = order.keyfunc()
    return tuple(sorted(out, key=lambda q: (key(q.plus), key(q.minus)), reverse=True))


def verify_theorem_sort(A, shape: ExpansionShape) -> bool:
    """A and its expansion are sortable together or not at all."""
    S = _equigenerated(A)
    E = expand_set(S, shape).vectors
    return is_sortable(S)[0] == is_sortable(E)[0]


def verify_sorting_generation(A, order: TermOrder | None = None, *, budget=None) -> bool:
    """The sorting relations of a sortable set generate its toric ideal."""
    S = _equigenerated(A)
    return generates(sorting_relations(S, order), S.members, order, budget=budget)


def degree_monomials(n: int, d: int) -> list:
    """All exponent vectors of degree d in n variables, lex decreasing."""
    if n == 1:
        return [(d,)]
    return [(a,) + rest for a in range(d, -1, -1) for rest in degree_monomials(n - 1, d - a)]


def subsets_of(vectors: Sequence[tuple]) -> Iterable[tuple]:
    """Every nonempty subset, smallest first."""
    for k in range(1, len(vectors) + 1):
        yield from combinations(vectors, k)
