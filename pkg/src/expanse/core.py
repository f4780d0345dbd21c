"""Exponent vectors, monomial sets and ideals, and term orders.

Exponent vectors are plain tuples of nonnegative ints.  The coefficient field
never appears: every polynomial handled by the package is a monomial or a
+1/-1 binomial, so all arithmetic is on exponents.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from operator import le
from typing import Callable, Iterable, Sequence

from .errors import DimensionMismatch, PreconditionError

Vector = tuple  # tuple[int, ...]


def vec(entries: Iterable[int]) -> Vector:
    v = tuple(int(e) for e in entries)
    if any(e < 0 for e in v):
        raise ValueError(f"negative exponent in {v}")
    return v


def zero(n: int) -> Vector:
    return (0,) * n


def unit(n: int, i: int) -> Vector:
    """The canonical basis vector with a 1 at position ``i`` (0-based)."""
    if not 0 <= i < n:
        raise IndexError(f"unit index {i} outside dimension {n}")
    return tuple(1 if k == i else 0 for k in range(n))


def modulus(u: Vector) -> int:
    return sum(u)


def support(u: Vector) -> tuple:
    return tuple(i for i, e in enumerate(u) if e)


def check_dims(*vectors: Vector) -> int:
    dims = {len(v) for v in vectors}
    if len(dims) > 1:
        raise DimensionMismatch(f"vectors of differing dimensions {sorted(dims)}")
    return dims.pop() if dims else 0


def divides(u: Vector, v: Vector) -> bool:
    """u ⪯ v entrywise, i.e. x^u divides x^v."""
    return all(map(le, u, v))


def add(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vmax(u: Vector, v: Vector) -> Vector:
    return tuple(map(max, u, v))


def vmin(u: Vector, v: Vector) -> Vector:
    return tuple(map(min, u, v))


def quotient_by_gcd(u: Vector, v: Vector) -> Vector:
    """Exponent of u / gcd(u, v): entrywise max(u - v, 0)."""
    check_dims(u, v)
    return tuple(a - b if a > b else 0 for a, b in zip(u, v))


def minimal_elements(vectors: Iterable[Vector]) -> list:
    """The ⪯-minimal elements of ``vectors``, deduplicated, sorted by degree then lex."""
    uniq = sorted(set(vectors), key=lambda w: (sum(w), w))
    out: list = []
    for w in uniq:
        if not any(divides(g, w) for g in out):
            out.append(w)
    return out


@dataclass(frozen=True)
class MonomialSet:
    """A finite set of exponent vectors of a common dimension.

    ``members`` is kept in decreasing lexicographic order so that iteration,
    configuration indices and printed output are deterministic.
    """

    dim: int
    members: tuple
    divis_minimal: bool = False

    def __post_init__(self):
        members = tuple(sorted(set(self.members), reverse=True))
        for m in members:
            if len(m) != self.dim:
                raise DimensionMismatch(f"member {m} does not have dimension {self.dim}")
            if any(e < 0 for e in m):
                raise ValueError(f"negative exponent in {m}")
        object.__setattr__(self, "members", members)
        # large sets only arise from expansion, which checks minimality itself
        if self.divis_minimal and len(members) <= 300:
            for a in members:
                for b in members:
                    if a != b and divides(a, b):
                        raise PreconditionError(f"{a} divides {b}; set is not divisibility-minimal")

    @classmethod
    def of(cls, vectors: Iterable[Sequence[int]], dim: int | None = None) -> "MonomialSet":
        vs = [tuple(int(e) for e in v) for v in vectors]
        if dim is None:
            if not vs:
                raise ValueError("cannot infer the dimension of an empty set")
            dim = check_dims(*vs)
        minimal = len(minimal_elements(vs)) == len(set(vs))
        return cls(dim, tuple(vs), minimal)

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def __contains__(self, u):
        return tuple(u) in set(self.members)

    def index(self, u: Vector) -> int:
        return self.members.index(tuple(u))

    def is_equigenerated(self) -> bool:
        return len({sum(m) for m in self.members}) <= 1


def minimalize(vectors: Iterable[Sequence[int]], dim: int | None = None) -> MonomialSet:
    """The ⪯-minimal elements of ``vectors`` as a divisibility-minimal set."""
    vs = [tuple(int(e) for e in v) for v in vectors]
    if vs:
        d = check_dims(*vs)
        if dim is not None and d != dim:
            raise DimensionMismatch(f"expected dimension {dim}, got {d}")
        dim = d
    elif dim is None:
        raise ValueError("cannot infer the dimension of an empty set")
    return MonomialSet(dim, tuple(minimal_elements(vs)), True)


class MonomialIdeal:
    """A monomial ideal, stored through its unique minimal generating set G(I)."""

    __slots__ = ("dim", "gens")

    def __init__(self, generators: Iterable[Sequence[int]], dim: int | None = None):
        gens = generators if isinstance(generators, MonomialSet) else minimalize(generators, dim)
        if isinstance(generators, MonomialSet) and not gens.divis_minimal:
            gens = minimalize(gens.members, gens.dim)
        self.dim = gens.dim
        self.gens = gens

    @property
    def generators(self) -> tuple:
        return self.gens.members

    def __len__(self):
        return len(self.gens)

    def __eq__(self, other):
        return isinstance(other, MonomialIdeal) and self.gens == other.gens

    def __hash__(self):
        return hash(self.gens)

    def __repr__(self):
        return f"MonomialIdeal({list(self.generators)})"

    def is_equigenerated(self) -> bool:
        return self.gens.is_equigenerated()


def ideal_contains(I: MonomialIdeal, u: Sequence[int]) -> bool:
    u = tuple(u)
    if len(u) != I.dim:
        raise DimensionMismatch(f"vector of dimension {len(u)} tested against ideal in dimension {I.dim}")
    return any(divides(g, u) for g in I.generators)


# ---------------------------------------------------------------- term orders


class TermOrder:
    """A total monomial order given by a sort key: larger key, larger monomial."""

    def key(self, m: Vector):
        raise NotImplementedError

    def keyfunc(self) -> Callable[[Vector], object]:
        return self.key


@dataclass(frozen=True)
class Lex(TermOrder):
    """Lexicographic order; ``perm`` lists variables from most to least significant.

    ``perm=None`` means the natural order x1 > x2 > ... > xn.
    """

    perm: tuple | None = None

    def key(self, m):
        if self.perm is None:
            return m
        return tuple(m[p] for p in self.perm)

    def keyfunc(self):
        perm = self.perm
        if perm is None:
            return tuple
        return lambda m: tuple([m[p] for p in perm])


@dataclass(frozen=True)
class Elimination(TermOrder):
    """Block order on y-variables followed by x-variables, x-block compared first.

    A monomial is a vector of length ``n_y + n_x`` with the y-exponents first.
    Any monomial involving an x-variable beats every pure y-monomial.
    """

    n_y: int
    inner_y: TermOrder = field(default_factory=Lex)
    inner_x: TermOrder = field(default_factory=Lex)

    def key(self, m):
        return (self.inner_x.key(m[self.n_y:]), self.inner_y.key(m[: self.n_y]))

    def keyfunc(self):
        n_y = self.n_y
        kx = self.inner_x.keyfunc()
        ky = self.inner_y.keyfunc()
        return lambda m: (kx(m[n_y:]), ky(m[:n_y]))


@dataclass(frozen=True)
class InducedSharp(TermOrder):
    """Order on y-monomials induced by an order on the underlying x-monomials.

    The y-variable attached to ``configuration[i]`` is larger than the one
    attached to ``configuration[j]`` iff the first monomial is larger under
    ``base``; y-monomials are then compared lexicographically.
    """

    base: TermOrder
    configuration: tuple
    _lex: Lex = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        config = tuple(tuple(c) for c in self.configuration)
        if len(set(config)) != len(config):
            raise PreconditionError("induced order needs pairwise distinct configuration members")
        object.__setattr__(self, "configuration", config)
        k = self.base.key
        perm = tuple(sorted(range(len(config)), key=lambda i: k(config[i]), reverse=True))
        object.__setattr__(self, "_lex", Lex(perm))

    @property
    def variable_order(self) -> tuple:
        """y-variable indices sorted from largest to smallest."""
        return self._lex.perm

    def as_lex(self) -> Lex:
        return self._lex

    def key(self, m):
        return self._lex.key(m)

    def keyfunc(self):
        return self._lex.keyfunc()


def compare(m1: Sequence[int], m2: Sequence[int], order: TermOrder) -> int:
    """-1, 0 or 1 as m1 is smaller than, equal to or larger than m2."""
    m1, m2 = tuple(m1), tuple(m2)
    check_dims(m1, m2)
    if isinstance(order, Lex) and order.perm is not None and sorted(order.perm) != list(range(len(m1))):
        raise DimensionMismatch(f"lex order over {len(order.perm)} variables applied to dimension {len(m1)}")
    if isinstance(order, InducedSharp) and len(order.configuration) != len(m1):
        raise DimensionMismatch("y-monomial length differs from configuration size")
    k1, k2 = order.key(m1), order.key(m2)
    return (k1 > k2) - (k1 < k2)
