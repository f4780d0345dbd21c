"""Polymatroidal, weakly polymatroidal, linear quotients and k-decomposability.

All searches are exhaustive.  Instances above a search limit raise
:class:`SearchTooLarge` instead of returning a guess.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Sequence

from .core import MonomialIdeal, ideal_contains, quotient_by_gcd
from .errors import PreconditionError, SearchTooLarge


def _bump(v, minus, plus):
    """v - e_minus + e_plus, or None if that leaves the orthant."""
    if v[minus] == 0 and minus != plus:
        return None
    w = list(v)
    w[minus] -= 1
    w[plus] += 1
    return tuple(w)


# ------------------------------------------------------------- polymatroidal


def exchange_violation(gens: Sequence[tuple]):
    """First (u, v, i) breaking the exchange axiom inside ``gens``, or None."""
    members = set(gens)
    for u in gens:
        for v in gens:
            for i, (a, b) in enumerate(zip(u, v)):
                if a <= b:
                    continue
                if not any(
                    u[j] < v[j] and _bump(u, i, j) in members for j in range(len(u))
                ):
                    return u, v, i
    return None


def is_polymatroidal(I: MonomialIdeal) -> bool:
    gens = I.generators
    if not I.is_equigenerated():
        return False
    return exchange_violation(gens) is None


# ------------------------------------------------------ weakly polymatroidal


def _check_var_order(order, n):
    order = tuple(order)
    if sorted(order) != list(range(n)):
        raise PreconditionError(f"{order} is not a permutation of the {n} variables")
    return order


def is_weakly_polymatroidal_wrt(I: MonomialIdeal, var_order: Sequence[int]) -> bool:
    """``var_order`` lists 0-based variables from largest to smallest."""
    order = _check_var_order(var_order, I.dim)
    rank = {x: r for r, x in enumerate(order)}
    gens = I.generators
    for u in gens:
        for v in gens:
            t = next((x for x in order if u[x] != v[x]), None)
            if t is None or u[t] < v[t]:
                continue
            # v / x_j must be a monomial, and the trade lands in I, not G(I)
            if not any(
                rank[j] > rank[t] and v[j] > 0 and ideal_contains(I, _bump(v, j, t))
                for j in range(I.dim)
            ):
                return False
    return True


def _wp_obstacles(I: MonomialIdeal) -> list:
    """Per variable t, the (agree, repair) masks of pairs with u(t) > v(t).

    Choosing t right after the prefix set P fails iff some pair agrees on P
    (``P ⊆ agree``) and every repair variable lies in P ∪ {t}.
    """
    n = I.dim
    gens = I.generators
    out = [set() for _ in range(n)]
    repair_cache: dict = {}
    for u in gens:
        for v in gens:
            if u == v:
                continue
            agree = 0
            for x in range(n):
                if u[x] == v[x]:
                    agree |= 1 << x
            for t in range(n):
                if u[t] <= v[t]:
                    continue
                key = (v, t)
                J = repair_cache.get(key)
                if J is None:
                    J = 0
                    for j in range(n):
                        if j != t and v[j] > 0 and ideal_contains(I, _bump(v, j, t)):
                            J |= 1 << j
                    repair_cache[key] = J
                out[t].add((agree, J))
    return [tuple(s) for s in out]


def find_weakly_polymatroidal_order(I: MonomialIdeal, search_limit: int = 8):
    """A variable order witnessing weak polymatroidality, or None.

    The test for putting t next depends only on the set of variables already
    placed, so the search runs over subsets rather than permutations.
    """
    n = I.dim
    if n > search_limit:
        raise SearchTooLarge(f"{n} variables exceed the order search limit {search_limit}")
    obstacles = _wp_obstacles(I)
    full = (1 << n) - 1
    dead: set = set()

    def ok(P, t):
        Pt = P | (1 << t)
        for agree, J in obstacles[t]:
            if P & ~agree == 0 and J & ~Pt == 0:
                return False
        return True

    def dfs(P, prefix):
        if P == full:
            return prefix
        if P in dead:
            return None
        for t in range(n):
            if not P >> t & 1 and ok(P, t):
                found = dfs(P | (1 << t), prefix + (t,))
                if found is not None:
                    return found
        dead.add(P)
        return None

    return dfs(0, ())


# ---------------------------------------------------------- linear quotients


def _ordering_vectors(I: MonomialIdeal, ordering) -> list:
    gens = I.generators
    items = list(ordering)
    if items and all(isinstance(x, int) for x in items):
        if sorted(items) != list(range(len(gens))):
            raise PreconditionError(f"{items} is not a permutation of {len(gens)} generator indices")
        return [gens[k] for k in items]
    vs = [tuple(x) for x in items]
    if sorted(vs) != sorted(gens):
        raise PreconditionError("ordering does not cover exactly the minimal generators")
    return vs


def _colon_is_linear(prefix: Sequence[tuple], u: tuple) -> bool:
    """(prefix) : u is generated by variables."""
    letters = set()
    for w in prefix:
        q = quotient_by_gcd(w, u)
        if sum(q) == 1:
            letters.add(q.index(1))
    for w in prefix:
        q = quotient_by_gcd(w, u)
        if not any(q[l] for l in letters):
            return False
    return True


def has_linear_quotients_wrt(I: MonomialIdeal, ordering) -> bool:
    """``ordering`` is a permutation of generator indices, or of the generators."""
    us = _ordering_vectors(I, ordering)
    return all(_colon_is_linear(us[:i], us[i]) for i in range(1, len(us)))


class _ColonTable:
    """Bitmask form of the colon condition for every pair of generators."""

    def __init__(self, gens):
        r = len(gens)
        # letter[j][i]: l when u_i / gcd(u_i, u_j) = x_l, else -1
        # needs[j][i]: variables l with x_l dividing u_i / gcd(u_i, u_j)
        self.letter = []
        self.needs = []
        for uj in gens:
            letter = [-1] * r
            needs = [0] * r
            for i, ui in enumerate(gens):
                if ui == uj:
                    continue
                q = quotient_by_gcd(ui, uj)
                if sum(q) == 1:
                    letter[i] = q.index(1)
                m = 0
                for l, e in enumerate(q):
                    if e:
                        m |= 1 << l
                needs[i] = m
            self.letter.append(letter)
            self.needs.append(needs)

    def extend(self, letters: list, i: int) -> list:
        """Available letters of every generator once u_i joins the prefix."""
        out = letters[:]
        for j, row in enumerate(self.letter):
            l = row[i]
            if l >= 0:
                out[j] |= 1 << l
        return out

    def addable(self, placed: list, letters: list, i: int) -> bool:
        have = letters[i]
        needs = self.needs[i]
        return all(needs[j] & have for j in placed)

    def precedence(self) -> list | None:
        """before[k]: generators that must precede u_k, or None if cyclic.

        If no generator allowed before u_j can supply a letter dividing
        u_k / gcd(u_k, u_j), then u_k cannot precede u_j.  Iterated to a
        fixed point since each forced pair shrinks the letters on offer.
        """
        r = len(self.letter)
        after = [0] * r  # after[j]: generators forced after u_j
        changed = True
        while changed:
            changed = False
            for j in range(r):
                row = self.letter[j]
                reach = 0
                for i in range(r):
                    if row[i] >= 0 and not after[j] >> i & 1:
                        reach |= 1 << row[i]
                needs = self.needs[j]
                for k in range(r):
                    if k != j and not after[j] >> k & 1 and not needs[k] & reach:
                        after[j] |= 1 << k
                        changed = True
        before = [0] * r
        for j in range(r):
            for k in range(r):
                if after[j] >> k & 1:
                    before[k] |= 1 << j
        # a cycle shows up as some generator forced after itself transitively
        closure = before[:]
        for m in range(r):
            for k in range(r):
                if closure[k] >> m & 1:
                    closure[k] |= closure[m]
        if any(closure[k] >> k & 1 for k in range(r)):
            return None
        return before

    def harmless(self, unplaced, letters: list, i: int) -> bool:
        """u_i already satisfies the colon condition of every later generator."""
        return all(self.needs[j][i] & letters[j] for j in unplaced if j != i)


def find_linear_quotients_order(I: MonomialIdeal, limit: int = 10, node_budget: int | None = None):
    """Generator indices in a linear-quotients order, or None.

    Whether a generator may come next depends only on the set already placed,
    so failed sets are remembered and never re-explored.  Letters only grow
    along a prefix, so a generator that is addable and harmless to all later
    ones can be placed at once: moving it forward in any completion keeps the
    completion valid.  Such moves are taken without branching.
    """
    gens = I.generators
    r = len(gens)
    if r > limit:
        raise SearchTooLarge(f"{r} generators exceed the ordering search limit {limit}")
    if r <= 1:
        return tuple(range(r))
    table = _ColonTable(gens)
    before = table.precedence()
    if before is None:
        return None
    # low degree first, a common shape for linear-quotient orders
    candidates = sorted(range(r), key=lambda k: (sum(gens[k]), tuple(-e for e in gens[k])))
    full = (1 << r) - 1
    dead: set = set()
    visits = 0

    def dfs(S, letters, prefix):
        nonlocal visits
        if S == full:
            return prefix
        if S in dead:
            return None
        visits += 1
        if node_budget is not None and visits > node_budget:
            raise SearchTooLarge(f"ordering search exceeded {node_budget} states")
        unplaced = [i for i in candidates if not S >> i & 1]
        moves = [
            i for i in unplaced
            if before[i] & ~S == 0 and table.addable(prefix, letters, i)
        ]
        for i in moves:
            after = table.extend(letters, i)
            if table.harmless(unplaced, after, i):
                found = dfs(S | (1 << i), after, prefix + (i,))
                if found is None:
                    dead.add(S)
                return found
        for i in moves:
            found = dfs(S | (1 << i), table.extend(letters, i), prefix + (i,))
            if found is not None:
                return found
        dead.add(S)
        return None

    return dfs(0, [0] * r, ())


# ----------------------------------------------------------- k-decomposable


@dataclass(frozen=True)
class SheddingCertificate:
    """A recursive shedding decomposition.

    A leaf (single generator) has ``u`` None.  Otherwise ``upper`` certifies
    I^u and ``lower`` certifies I_u.
    """

    gens: tuple
    u: tuple | None = None
    upper: "SheddingCertificate | None" = None
    lower: "SheddingCertificate | None" = None

    def max_support(self) -> int:
        if self.u is None:
            return 0
        own = sum(1 for e in self.u if e)
        return max(own, self.upper.max_support(), self.lower.max_support())


def bracket_is_one(u: Sequence[int], M: Sequence[int]) -> bool:
    """[u, M] = 1: no x_i^{u(i)} with i in supp(u) divides M."""
    return all(M[i] < a for i, a in enumerate(u) if a)


def split_by(u, gens):
    """(I^u, I_u) as generator tuples."""
    upper = tuple(M for M in gens if not bracket_is_one(u, M))
    lower = tuple(M for M in gens if bracket_is_one(u, M))
    return upper, lower


def is_shedding(u, gens) -> bool:
    upper, lower = split_by(u, gens)
    if not lower or not upper:
        return False
    for Mi in lower:
        for l, a in enumerate(u):
            if not a:
                continue
            target = tuple(1 if p == l else 0 for p in range(len(u)))
            if not any(quotient_by_gcd(Mj, Mi) == target for Mj in upper):
                return False
    return True


def _shedding_candidates(gens, k):
    """Monomials u dividing lcm(gens) with |supp u| <= k + 1, up to equivalence.

    [u, M] only compares u(i) with the exponents M(i), so u(i) may be taken
    from the positive exponents that actually occur.
    """
    n = len(gens[0])
    levels = [sorted({M[i] for M in gens if M[i] > 0}) for i in range(n)]
    out = []
    for choice in product(*[[0] + lv for lv in levels]):
        s = sum(1 for e in choice if e)
        if 1 <= s <= k + 1:
            out.append(choice)
    out.sort(key=lambda c: (sum(1 for e in c if e), sum(c), tuple(-e for e in c)))
    return out


def is_k_decomposable(I: MonomialIdeal, k: int, limit: int = 10):
    """A shedding certificate showing I is k-decomposable, or None."""
    gens = I.generators
    if len(gens) > limit:
        raise SearchTooLarge(f"{len(gens)} generators exceed the shedding search limit {limit}")
    if k < 0:
        raise PreconditionError("k must be nonnegative")
    memo: dict = {}

    def solve(gs):
        if gs in memo:
            return memo[gs]
        if len(gs) == 1:
            memo[gs] = cert = SheddingCertificate(gs)
            return cert
        memo[gs] = None  # guards against cycles; a split always shrinks gs anyway
        for u in _shedding_candidates(gs, k):
            if not is_shedding(u, gs):
                continue
            upper, lower = split_by(u, gs)
            cu = solve(upper)
            if cu is None:
                continue
            cl = solve(lower)
            if cl is None:
                continue
            memo[gs] = cert = SheddingCertificate(gs, u, cu, cl)
            return cert
        return None

    return solve(tuple(gens))


def check_certificate(cert: SheddingCertificate, k: int) -> bool:
    """Re-verify a certificate node by node."""
    if cert.u is None:
        return len(cert.gens) == 1
    if sum(1 for e in cert.u if e) > k + 1 or not is_shedding(cert.u, cert.gens):
        return False
    upper, lower = split_by(cert.u, cert.gens)
    return (
        cert.upper.gens == upper
        and cert.lower.gens == lower
        and check_certificate(cert.upper, k)
        and check_certificate(cert.lower, k)
    )

