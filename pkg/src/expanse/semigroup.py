"""Affine semigroups of configurations: lattice, cone, membership, normality, rank.

Everything is exact: integer row reduction for the lattice, Fractions for the
cone.  Normality is only ever decided up to a degree bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .core import MonomialSet, Vector, divides, sub
from .errors import DimensionMismatch, InvariantViolation, PreconditionError
from .expansion import ExpansionShape, contract_vector, expand_set


def _rows(A) -> tuple:
    rows = A.members if isinstance(A, MonomialSet) else tuple(tuple(int(e) for e in u) for u in A)
    if not rows:
        raise PreconditionError("configuration must be nonempty")
    if len({len(r) for r in rows}) > 1:
        raise DimensionMismatch("configuration rows differ in length")
    return rows


def _check(u, rows) -> Vector:
    u = tuple(int(e) for e in u)
    if len(u) != len(rows[0]):
        raise DimensionMismatch(f"vector of dimension {len(u)} against configuration in dimension {len(rows[0])}")
    return u


# -------------------------------------------------------------------- lattice


def hermite_basis(rows: Sequence[Sequence[int]]) -> list:
    """Row echelon basis of the integer row lattice, pivots positive.

    Columns are cleared one at a time by repeated Euclidean steps between
    rows, so only unimodular operations are used.
    """
    work = [list(r) for r in rows if any(r)]
    if not work:
        return []
    n = len(work[0])
    basis = []
    for c in range(n):
        live = [r for r in work if r[c]]
        rest = [r for r in work if not r[c]]
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[c]))
            p = live[0]
            nxt = [p]
            for r in live[1:]:
                q = r[c] // p[c]
                r = [a - q * b for a, b in zip(r, p)]
                if r[c]:
                    nxt.append(r)
                elif any(r):
                    rest.append(r)
            live = nxt
        if live:
            p = live[0]
            if p[c] < 0:
                p = [-a for a in p]
            basis.append(p)
        work = rest
    return basis


def lattice_contains(u: Sequence[int], A) -> bool:
    """u in the group generated by the configuration."""
    rows = _rows(A)
    u = list(_check(u, rows))
    for row in hermite_basis(rows):
        c = next(k for k, a in enumerate(row) if a)
        if u[c] % row[c]:
            return False
        q = u[c] // row[c]
        u = [a - q * b for a, b in zip(u, row)]
    return not any(u)


def krull_dimension(A) -> int:
    """Rank of the exponent matrix."""
    return len(hermite_basis(_rows(A)))


# ----------------------------------------------------------------------- cone


def _feasible(M: list, b: list) -> bool:
    return _phase_one(M, b)[0]


def _phase_one(M: list, b: list):
    """Is there x >= 0 with M x = b?  Phase-one simplex with Bland's rule.

    Returns (True, None) or (False, y) where y is a Farkas certificate:
    y . M_k <= 0 for every column and y . b > 0.
    """
    rows = len(M)
    cols = len(M[0]) if M else 0
    # make the right-hand side nonnegative, then append one artificial per row
    T = []
    signs = []
    for i in range(rows):
        sign = -1 if b[i] < 0 else 1
        signs.append(sign)
        T.append([Fraction(sign * a) for a in M[i]] + [Fraction(int(k == i)) for k in range(rows)] + [Fraction(sign * b[i])])
    basis = [cols + i for i in range(rows)]
    width = cols + rows
    # objective: minimize the sum of artificials, written as reduced costs
    obj = [Fraction(0)] * (width + 1)
    for i in range(rows):
        for k in range(width + 1):
            obj[k] -= T[i][k]
    for i in range(rows):
        obj[cols + i] += 1
    while True:
        enter = next((k for k in range(width) if obj[k] < 0), None)
        if enter is None:
            break
        leave, best = None, None
        for i in range(rows):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    leave, best = i, ratio
        if leave is None:
            break  # unbounded cannot happen in phase one; stay safe
        piv = T[leave][enter]
        T[leave] = [a / piv for a in T[leave]]
        for i in range(rows):
            if i != leave and T[i][enter]:
                f = T[i][enter]
                T[i] = [a - f * b for a, b in zip(T[i], T[leave])]
        f = obj[enter]
        obj = [a - f * b for a, b in zip(obj, T[leave])]
        basis[leave] = enter
    if obj[-1] == 0:
        return True, None
    # duals of the sign-adjusted rows, read off the artificial reduced costs
    y = [signs[i] * (1 - obj[cols + i]) for i in range(rows)]
    if any(sum(y[i] * M[i][k] for i in range(rows)) > 0 for k in range(cols)) or sum(
        yi * bi for yi, bi in zip(y, b)
    ) <= 0:
        raise InvariantViolation("phase-one simplex produced an invalid Farkas certificate")
    return False, y


def cone_contains(u: Sequence[int], A) -> bool:
    """u is a nonnegative rational combination of the configuration."""
    rows = _rows(A)
    u = _check(u, rows)
    if any(e < 0 for e in u):
        return False
    if not any(u):
        return True
    n = len(u)
    M = [[r[p] for r in rows] for p in range(n)]
    return _feasible(M, list(u))


# ------------------------------------------------------------------ semigroup


def _degree(rows) -> int:
    degs = {sum(r) for r in rows}
    if len(degs) > 1:
        raise PreconditionError("semigroup membership needs an equigenerated configuration")
    return degs.pop()


def _member_test(rows):
    d = _degree(rows)

    @lru_cache(maxsize=None)
    def member(u):
        if not any(u):
            return True
        return any(divides(g, u) and member(sub(u, g)) for g in rows)

    def contains(u):
        if d == 0:
            return not any(u)
        if sum(u) % d:
            return False
        return member(u)

    return contains


def semigroup_contains(u: Sequence[int], A) -> bool:
    """u is a sum of members of the configuration (with repetition)."""
    rows = _rows(A)
    return _member_test(rows)(_check(u, rows))


@dataclass(frozen=True)
class NormalUpTo:
    bound: int

    @property
    def normal(self) -> bool:
        return True


@dataclass(frozen=True)
class NotNormal:
    """``witness`` lies in the lattice and the cone but not in the semigroup."""

    witness: tuple

    @property
    def normal(self) -> bool:
        return False


def _vectors_of_degree(n: int, d: int, allowed: tuple):
    """Vectors of total degree d supported on ``allowed``, lex increasing."""
    out = []

    def rec(k, left, acc):
        if k == n:
            if left == 0:
                out.append(tuple(acc))
            return
        if k not in allowed:
            acc.append(0)
            rec(k + 1, left, acc)
            acc.pop()
            return
        for e in range(left + 1):
            acc.append(e)
            rec(k + 1, left - e, acc)
            acc.pop()

    rec(0, d, [])
    return out


def is_normal_up_to(A, bound: int):
    """NotNormal(u) for the first hole by (degree, lex), else NormalUpTo(bound).

    A hole is a point of lattice ∩ cone outside the semigroup.  Lattice points
    have degree divisible by the common degree d, so only those degrees are
    scanned, and only on the joint support of the configuration.
    """
    rows = _rows(A)
    d = _degree(rows)
    if bound < d:
        raise PreconditionError(f"bound {bound} is below the generator degree {d}")
    if d == 0:
        return NormalUpTo(bound)
    n = len(rows[0])
    allowed = tuple(p for p in range(n) if any(r[p] for r in rows))
    member = _member_test(rows)
    basis = hermite_basis(rows)
    M = [[r[p] for r in rows] for p in range(n)]

    def in_lattice(u):
        u = list(u)
        for row in basis:
            c = next(k for k, a in enumerate(row) if a)
            if u[c] % row[c]:
                return False
            q = u[c] // row[c]
            u = [a - q * b for a, b in zip(u, row)]
        return not any(u)

    # Farkas certificates found so far; each one rules out many later points
    separators: list = []

    def in_cone(u):
        for y in separators:
            if sum(a * b for a, b in zip(y, u)) > 0:
                return False
        ok, y = _phase_one(M, list(u))
        if not ok:
            separators.append(y)
        return ok

    for deg in range(d, bound + 1, d):
        for u in _vectors_of_degree(n, deg, allowed):
            if member(u):
                continue
            if in_lattice(u) and in_cone(u):
                return NotNormal(u)
    return NormalUpTo(bound)


def is_hole(u: Sequence[int], A) -> bool:
    rows = _rows(A)
    u = _check(u, rows)
    return lattice_contains(u, rows) and cone_contains(u, rows) and not semigroup_contains(u, rows)


@dataclass(frozen=True)
class NormalityComparison:
    base: object
    expanded: object
    lifted: tuple | None  # base witness carried to the expansion
    contracted: tuple | None  # expanded witness carried back
    agree: bool


def compare_normality(A, shape: ExpansionShape, bound: int) -> NormalityComparison:
    """Bounded normality of A and A^alpha, with witnesses transported both ways.

    A hole u of A lifts to the hole placing u(i) on the first copy of each
    block; a hole w of A^alpha contracts to the hole of block sums.
    """
    rows = _rows(A)
    S = MonomialSet.of(rows)
    E = expand_set(S, shape).vectors
    vb = is_normal_up_to(S, bound)
    ve = is_normal_up_to(E, bound)
    lifted = contracted = None
    agree = vb.normal == ve.normal
    if isinstance(vb, NotNormal):
        lifted = shape.first_copy_lift(vb.witness)
        agree = agree and is_hole(lifted, E)
    if isinstance(ve, NotNormal):
        contracted = contract_vector(ve.witness, shape)
        agree = agree and is_hole(contracted, S)
    return NormalityComparison(vb, ve, lifted, contracted, agree)


def verify_theorem_normal(A, shape: ExpansionShape, bound: int) -> bool:
    return compare_normality(A, shape, bound).agree


def check_containments(u: Sequence[int], A) -> None:
    """Semigroup membership must imply lattice and cone membership."""
    if semigroup_contains(u, A) and not (lattice_contains(u, A) and cone_contains(u, A)):
        raise InvariantViolation(f"{u} is in the semigroup but not in lattice ∩ cone")
