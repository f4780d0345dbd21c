"""The expansion functor on exponent vectors, monomial sets and ideals.

Each variable x_i is split into k_i copies x_i1..x_ik_i.  Copies are stored at
flat positions ``k_1 + ... + k_{i-1} + (j - 1)``; all indices here are 0-based,
so block ``i`` copy ``j`` lives at ``shape.flat(i, j)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb, prod
from typing import Iterable, Sequence

from .core import MonomialIdeal, MonomialSet, Vector, divides
from .errors import DimensionMismatch, InvariantViolation, PreconditionError


@dataclass(frozen=True)
class ExpansionShape:
    """The tuple alpha = (k_1, ..., k_n) together with its block index map."""

    alpha: tuple

    def __post_init__(self):
        alpha = tuple(int(k) for k in self.alpha)
        if not alpha:
            raise ValueError("expansion shape needs at least one variable")
        if any(k < 1 for k in alpha):
            raise ValueError(f"expansion entries must be positive, got {alpha}")
        object.__setattr__(self, "alpha", alpha)

    @classmethod
    def ones(cls, n: int) -> "ExpansionShape":
        return cls((1,) * n)

    @classmethod
    def single_split(cls, n: int, i: int) -> "ExpansionShape":
        """The shape 1 + e_i."""
        return cls(tuple(2 if k == i else 1 for k in range(n)))

    @property
    def n(self) -> int:
        return len(self.alpha)

    @property
    def total(self) -> int:
        return sum(self.alpha)

    @property
    def offsets(self) -> tuple:
        return tuple(itertools.accumulate((0,) + self.alpha[:-1]))

    def flat(self, i: int, j: int) -> int:
        if not (0 <= i < self.n and 0 <= j < self.alpha[i]):
            raise IndexError(f"no variable ({i}, {j}) in shape {self.alpha}")
        return self.offsets[i] + j

    def label(self, p: int) -> tuple:
        """Inverse of :meth:`flat`."""
        if not 0 <= p < self.total:
            raise IndexError(f"flat index {p} outside [0, {self.total})")
        for i, off in enumerate(self.offsets):
            if p < off + self.alpha[i]:
                return i, p - off
        raise AssertionError("unreachable")

    def block_of(self) -> tuple:
        """Block index of every flat position."""
        return tuple(i for i, k in enumerate(self.alpha) for _ in range(k))

    def incremented(self, i: int) -> "ExpansionShape":
        """alpha + e_i."""
        return ExpansionShape(tuple(k + (1 if t == i else 0) for t, k in enumerate(self.alpha)))

    def is_identity(self) -> bool:
        return all(k == 1 for k in self.alpha)

    def first_copy_lift(self, u: Sequence[int]) -> Vector:
        """Place u(i) on the first copy x_i1 of each block."""
        self._check_source(u)
        out = [0] * self.total
        for i, off in enumerate(self.offsets):
            out[off] = u[i]
        return tuple(out)

    def _check_source(self, u):
        if len(u) != self.n:
            raise DimensionMismatch(f"vector of dimension {len(u)} for shape with {self.n} blocks")

    def _check_target(self, w):
        if len(w) != self.total:
            raise DimensionMismatch(f"vector of dimension {len(w)} for shape of total {self.total}")


def _compositions(total: int, parts: int):
    """Compositions of ``total`` into ``parts`` nonnegative parts, lex decreasing."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def expand_vector(u: Sequence[int], shape: ExpansionShape) -> list:
    """All w whose i-th block sums to u(i), in lexicographically decreasing order."""
    u = tuple(u)
    shape._check_source(u)
    blocks = [list(_compositions(e, k)) for e, k in zip(u, shape.alpha)]
    return [sum(parts, ()) for parts in itertools.product(*blocks)]


def expansion_count(u: Sequence[int], shape: ExpansionShape) -> int:
    return prod(comb(e + k - 1, k - 1) for e, k in zip(u, shape.alpha))


def contract_vector(w: Sequence[int], shape: ExpansionShape) -> Vector:
    """Block sums of w (the map pi_0, and pi on monomials)."""
    w = tuple(w)
    shape._check_target(w)
    return tuple(sum(w[off:off + k]) for off, k in zip(shape.offsets, shape.alpha))


@dataclass(frozen=True)
class ExpandedVectorSet:
    """An expanded set A^alpha remembering which source vector each member came from."""

    shape: ExpansionShape
    source: MonomialSet
    vectors: MonomialSet
    provenance: dict

    def lifts(self, u: Vector) -> list:
        return [w for w in self.vectors if self.provenance[w] == tuple(u)]


def _as_minimal_set(A) -> MonomialSet:
    if isinstance(A, MonomialSet):
        S = A
    else:
        S = MonomialSet.of(A)
    if not S.divis_minimal:
        # a set flagged non-minimal may still be minimal
        S = MonomialSet.of(S.members, S.dim)
        if not S.divis_minimal:
            raise PreconditionError("expansion of a set requires it to be minimal w.r.t. divisibility")
    return S


def expand_set(A: MonomialSet | Iterable[Sequence[int]], shape: ExpansionShape) -> ExpandedVectorSet:
    """A^alpha, the union of u^alpha over u in A."""
    A = _as_minimal_set(A)
    if A.dim != shape.n:
        raise DimensionMismatch(f"set in dimension {A.dim} expanded by shape with {shape.n} blocks")
    provenance = {}
    for u in A:
        for w in expand_vector(u, shape):
            provenance[w] = u
    members = tuple(provenance)
    # full pairwise check only at small sizes; minimality follows from the source
    # being minimal once every member contracts to its recorded source
    if len(members) <= 300:
        for a in members:
            for b in members:
                if a != b and divides(a, b):
                    raise InvariantViolation(f"expanded set not minimal: {a} divides {b}")
    for w, u in provenance.items():
        if contract_vector(w, shape) != u:
            raise InvariantViolation(f"{w} does not contract to its source {u}")
    vectors = MonomialSet(shape.total, members, True)
    return ExpandedVectorSet(shape, A, vectors, provenance)


def expand_ideal(I: MonomialIdeal, shape: ExpansionShape) -> MonomialIdeal:
    """The ideal I^alpha, generated by G(I)^alpha."""
    E = expand_set(I.gens, shape)
    return MonomialIdeal(E.vectors, shape.total)


@dataclass(frozen=True)
class Relabeling:
    """Variable bijection between ([n]^alpha)^gamma and [n]^beta.

    ``labels`` maps the 1-based triple (r, s, t) of the double expansion to the
    1-based pair (r, s) of the single expansion; ``perm[p]`` gives the flat
    index in beta of flat index ``p`` in the double expansion.
    """

    alpha: ExpansionShape
    gamma: ExpansionShape
    beta: ExpansionShape
    labels: dict
    perm: tuple

    def apply(self, w: Sequence[int]) -> Vector:
        out = [0] * len(self.perm)
        for p, e in enumerate(w):
            out[self.perm[p]] = e
        return tuple(out)


def relabel_iterated(shape: ExpansionShape, i: int) -> Relabeling:
    """The relabeling sigma for one more copy of variable ``i`` (0-based).

    gamma = 1 + e_{(i, k_i)} splits the last copy of block i; sigma sends
    x_rs1 to x_rs and x_{i k_i 2} to x_{i (k_i + 1)}.
    """
    if not 0 <= i < shape.n:
        raise IndexError(f"split variable {i} outside [0, {shape.n})")
    last = shape.flat(i, shape.alpha[i] - 1)
    gamma = ExpansionShape.single_split(shape.total, last)
    beta = shape.incremented(i)
    labels = {}
    perm = [0] * gamma.total
    for p in range(gamma.total):
        q, t = gamma.label(p)
        r, s = shape.label(q)
        if t == 0:
            target = (r, s)
        else:
            target = (i, shape.alpha[i])
        labels[(r + 1, s + 1, t + 1)] = (target[0] + 1, target[1] + 1)
        perm[p] = beta.flat(*target)
    if sorted(perm) != list(range(beta.total)):
        raise InvariantViolation("relabeling is not a bijection")
    return Relabeling(shape, gamma, beta, labels, tuple(perm))
