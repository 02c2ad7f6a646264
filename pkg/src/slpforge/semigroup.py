"""Finite semigroups as validated Cayley tables.

The table is an n x n numpy array; entry ``table[a, b]`` is the index of the
product a*b.  Everything downstream (closures, word search, ideals,
decompositions) reads this one array, so validation happens here, once.

Associativity checking is O(n^3) in general.  Up to ``_FULL_CHECK_MAX``
elements we scan all triples (vectorised row by row).  Above that we switch to
Light's test relative to a generating set: it suffices to check
``(a*g)*b == a*(g*b)`` for every generator g, provided the generators reach
every element under repeated (non-associative) pairwise products.  Closed-form
constructors that know a small generating set pass it as a hint.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import (
    BudgetExceededError,
    EmptyGeneratorsError,
    NotAnIdealError,
    NotAssociativeError,
    OutOfRangeError,
)
from .sets import ElementSet

_FULL_CHECK_MAX = 512
DIRECT_PRODUCT_MAX = 20_000


def _min_dtype(n: int):
    if n <= 0x100:
        return np.uint8
    if n <= 0x10000:
        return np.uint16
    return np.int32


class Semigroup:
    """Immutable finite semigroup on elements 0..n-1."""

    def __init__(self, table: np.ndarray, name: str = "", _trusted: bool = False):
        table = np.asarray(table)
        if table.ndim != 2 or table.shape[0] != table.shape[1]:
            raise OutOfRangeError("table must be square")
        n = table.shape[0]
        if n == 0:
            raise OutOfRangeError("empty table")
        if table.size and (table.min() < 0 or table.max() >= n):
            bad = np.argwhere((table < 0) | (table >= n))[0]
            raise OutOfRangeError(
                f"entry at ({bad[0]}, {bad[1]}) = {table[bad[0], bad[1]]} outside [0, {n})"
            )
        self.n = n
        self.table = np.ascontiguousarray(table.astype(_min_dtype(n), copy=True))
        self.table.setflags(write=False)
        self.name = name
        self._omega = None
        self._omega_exp = None
        self._period = None
        self._j_down_cache: dict[int, ElementSet] = {}
        if not _trusted:
            self._check_associativity()

    # -- construction ------------------------------------------------------

    @classmethod
    def trusted(cls, table: np.ndarray, name: str = "") -> "Semigroup":
        """Wrap a table whose associativity is guaranteed structurally.

        Used for subsemigroups, quotients, and direct products of validated
        semigroups, where re-scanning all triples would be wasted work.
        """
        return cls(table, name=name, _trusted=True)

    def _check_associativity(self, gens_hint: Optional[Sequence[int]] = None) -> None:
        n, table = self.n, self.table
        if n <= _FULL_CHECK_MAX and gens_hint is None:
            for a in range(n):
                row = table[a]
                lhs = table[row]          # (b, c) -> (a*b)*c
                rhs = row[table]          # (b, c) -> a*(b*c)
                if not np.array_equal(lhs, rhs):
                    b, c = np.argwhere(lhs != rhs)[0]
                    raise NotAssociativeError(a, int(b), int(c))
            return
        gens = list(gens_hint) if gens_hint is not None else self._greedy_generators()
        # magma closure: no associativity assumed while closing
        if not self._magma_closure_mask(gens).all():
            # hint did not generate; fall back to a greedy set
            gens = self._greedy_generators()
        tableT = np.ascontiguousarray(table.T)
        for g in gens:
            lhs = table[table[:, g].astype(np.int64), :]       # (a*g)*b
            rhs = tableT[table[g, :].astype(np.int64), :].T    # a*(g*b)
            if not np.array_equal(lhs, rhs):
                a, b = np.argwhere(lhs != rhs)[0]
                raise NotAssociativeError(int(a), g, int(b))

    def _magma_closure_mask(self, seed: Sequence[int]) -> np.ndarray:
        table = self.table
        in_set = np.zeros(self.n, dtype=bool)
        seed_arr = np.unique(np.asarray(list(seed), dtype=np.int64))
        in_set[seed_arr] = True
        frontier = seed_arr
        while frontier.size:
            cur = np.flatnonzero(in_set)
            prods = np.concatenate(
                [
                    table[np.ix_(frontier, cur)].ravel(),
                    table[np.ix_(cur, frontier)].ravel(),
                ]
            ).astype(np.int64)
            cand = np.unique(prods)
            new = cand[~in_set[cand]]
            in_set[new] = True
            frontier = new
        return in_set

    def _greedy_generators(self) -> list[int]:
        in_set = np.zeros(self.n, dtype=bool)
        gens: list[int] = []
        while not in_set.all():
            g = int(np.flatnonzero(~in_set)[0])
            gens.append(g)
            in_set |= self._magma_closure_mask(np.flatnonzero(in_set).tolist() + [g])
        return gens

    # -- basic product queries ---------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def word_value(self, word: Sequence[int]) -> int:
        """Left-to-right product of a nonempty element sequence."""
        it = iter(word)
        acc = next(it)
        for x in it:
            acc = int(self.table[acc, x])
        return acc

    def power(self, s: int, e: int) -> int:
        if e < 1:
            raise ValueError("exponent must be >= 1")
        acc = s
        for _ in range(e - 1):
            acc = int(self.table[acc, s])
        return acc

    # -- omega caches --------------------------------------------------------

    def _build_power_caches(self) -> None:
        n, table = self.n, self.table
        base = np.arange(n, dtype=np.int64)
        pw = base.copy()
        omega = np.full(n, -1, dtype=np.int64)
        omega_exp = np.zeros(n, dtype=np.int64)
        e = 1
        pending = np.ones(n, dtype=bool)
        while pending.any():
            idem = table[pw, pw] == pw
            found = pending & idem
            omega[found] = pw[found]
            omega_exp[found] = e
            pending &= ~idem
            if not pending.any():
                break
            pw = table[pw, base].astype(np.int64)
            e += 1
            if e > 2 * n + 2:
                raise AssertionError("omega iteration overran; table corrupt")
        period = np.zeros(n, dtype=np.int64)
        cur = table[omega, base].astype(np.int64)
        p = 1
        pending = np.ones(n, dtype=bool)
        while pending.any():
            done = pending & (cur == omega)
            period[done] = p
            pending &= ~done
            cur = table[cur, base].astype(np.int64)
            p += 1
            if p > n + 1:
                raise AssertionError("period iteration overran; table corrupt")
        self._omega = omega
        self._omega_exp = omega_exp
        self._period = period

    @property
    def omega_powers(self) -> np.ndarray:
        if self._omega is None:
            self._build_power_caches()
        return self._omega

    @property
    def omega_exponents(self) -> np.ndarray:
        """Least e >= 1 with s^e idempotent, per element."""
        if self._omega_exp is None:
            self._build_power_caches()
        return self._omega_exp

    @property
    def periods(self) -> np.ndarray:
        """Cycle length of the power sequence of each element."""
        if self._period is None:
            self._build_power_caches()
        return self._period

    def omega_power(self, s: int) -> int:
        return int(self.omega_powers[s])

    def omega_plus_one(self, s: int) -> int:
        return int(self.table[self.omega_powers[s], s])

    # -- structural queries --------------------------------------------------

    def zero_element(self) -> Optional[int]:
        table = self.table
        for z in range(self.n):
            if (table[z, :] == z).all() and (table[:, z] == z).all():
                return z
        return None

    def identity_element(self) -> Optional[int]:
        table = self.table
        idx = np.arange(self.n)
        for e in range(self.n):
            if (table[e, :] == idx).all() and (table[:, e] == idx).all():
                return e
        return None

    def is_completely_regular(self) -> bool:
        om = self.omega_powers
        base = np.arange(self.n, dtype=np.int64)
        return bool((self.table[om, base] == base).all())

    def completely_regular_elements(self) -> ElementSet:
        om = self.omega_powers
        base = np.arange(self.n, dtype=np.int64)
        mask = self.table[om, base] == base
        return ElementSet.from_indices(self.n, np.flatnonzero(mask).tolist())

    def j_downset(self, a: int) -> ElementSet:
        """All x with x <=_J a, that is x in S^1 a S^1.  Cached per element."""
        cached = self._j_down_cache.get(a)
        if cached is not None:
            return cached
        table = self.table
        in_set = np.zeros(self.n, dtype=bool)
        in_set[a] = True
        frontier = [a]
        while frontier:
            f = np.asarray(frontier, dtype=np.int64)
            cand = np.unique(
                np.concatenate([table[:, f].ravel(), table[f, :].ravel()])
            ).astype(np.int64)
            new = cand[~in_set[cand]]
            in_set[new] = True
            frontier = new.tolist()
        result = ElementSet.from_indices(self.n, np.flatnonzero(in_set).tolist())
        self._j_down_cache[a] = result
        return result

    def j_leq(self, x: int, a: int) -> bool:
        return x in self.j_downset(a)

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return f"Semigroup(n={self.n}{label})"


def validate_table(raw, name: str = "", gens_hint: Optional[Sequence[int]] = None) -> Semigroup:
    """Validate a raw square table of indices and wrap it as a Semigroup.

    Raises OutOfRangeError for bad entries and NotAssociativeError (with a
    witness triple) when associativity fails.
    """
    sg = Semigroup(np.asarray(raw), name=name, _trusted=True)
    sg._check_associativity(gens_hint=gens_hint)
    return sg


def closure(S: Semigroup, gens: Iterable[int]) -> ElementSet:
    """Subsemigroup generated by ``gens`` (worklist fixpoint)."""
    seed = sorted(set(int(g) for g in gens))
    if not seed:
        raise EmptyGeneratorsError("closure of the empty set")
    for g in seed:
        if not 0 <= g < S.n:
            raise OutOfRangeError(f"generator {g} outside [0, {S.n})")
    mask = S._magma_closure_mask(seed)
    return ElementSet.from_indices(S.n, np.flatnonzero(mask).tolist())


def shortest_word(S: Semigroup, gens: Sequence[int], t: int) -> Optional[list[int]]:
    """Minimum-length word over ``gens`` whose left-to-right product is t.

    Returns generator *positions* into ``gens``; ties broken by the
    lexicographically smallest index sequence.  None when t is unreachable.
    BFS levels are kept in lexicographic order of the witness word, so the
    first discovery of an element is its lex-minimal shortest word.
    """
    if not gens:
        raise EmptyGeneratorsError("no generators")
    gens = [int(g) for g in gens]
    gen_vals = np.asarray(gens, dtype=np.int64)
    m = len(gens)
    n = S.n
    parent = np.full(n, -1, dtype=np.int64)
    via = np.full(n, -1, dtype=np.int64)
    seen = np.zeros(n, dtype=bool)

    level: list[int] = []
    for i, g in enumerate(gens):
        if not seen[g]:
            seen[g] = True
            via[g] = i
            level.append(g)
            if g == t:
                return [i]
    table = S.table
    while level:
        lvl = np.asarray(level, dtype=np.int64)
        prods = table[np.ix_(lvl, gen_vals)].astype(np.int64)
        flat = prods.ravel()
        uniq, first = np.unique(flat, return_index=True)
        fresh = ~seen[uniq]
        uniq, first = uniq[fresh], first[fresh]
        if uniq.size == 0:
            return None
        order = np.argsort(first, kind="stable")
        uniq, first = uniq[order], first[order]
        seen[uniq] = True
        parent[uniq] = lvl[first // m]
        via[uniq] = first % m
        level = uniq.tolist()
        if seen[t]:
            break
    if not seen[t]:
        return None
    word: list[int] = []
    x = t
    while x != -1:
        word.append(int(via[x]))
        x = int(parent[x])
    word.reverse()
    return word


def ideal_power(S: Semigroup, k: int) -> ElementSet:
    """S^k: values of all products of exactly k elements."""
    if k < 1:
        raise ValueError("k must be >= 1")
    cur = np.ones(S.n, dtype=bool)
    table = S.table
    all_idx = np.arange(S.n, dtype=np.int64)
    for _ in range(k - 1):
        members = np.flatnonzero(cur)
        nxt = np.zeros(S.n, dtype=bool)
        prods = table[np.ix_(members, all_idx)].astype(np.int64)
        nxt[np.unique(prods)] = True
        if np.array_equal(nxt, cur):
            break
        cur = nxt
    return ElementSet.from_indices(S.n, np.flatnonzero(cur).tolist())


def is_ideal(S: Semigroup, I: ElementSet) -> bool:
    if not I:
        return False
    members = I.to_array()
    table = S.table
    prods_l = np.unique(table[:, members].astype(np.int64))
    prods_r = np.unique(table[members, :].astype(np.int64))
    return all(int(x) in I for x in prods_l) and all(int(x) in I for x in prods_r)


def rees_quotient(S: Semigroup, I: ElementSet) -> tuple[Semigroup, np.ndarray]:
    """Collapse the two-sided ideal I to a single zero element.

    Returns (quotient, projection) where projection maps each element of S to
    its class index.  Surviving elements keep their relative order; the zero
    class takes the last index.
    """
    if not is_ideal(S, I):
        raise NotAnIdealError("given set is not a two-sided ideal")
    keep = [x for x in range(S.n) if x not in I]
    m = len(keep)
    proj = np.full(S.n, m, dtype=np.int64)
    for i, x in enumerate(keep):
        proj[x] = i
    qtable = np.full((m + 1, m + 1), m, dtype=np.int64)
    keep_arr = np.asarray(keep, dtype=np.int64)
    if m:
        qtable[:m, :m] = proj[S.table[np.ix_(keep_arr, keep_arr)].astype(np.int64)]
    name = f"{S.name}/I" if S.name else ""
    return Semigroup.trusted(qtable, name=name), proj


def direct_product(S: Semigroup, T: Semigroup, budget: int = DIRECT_PRODUCT_MAX) -> Semigroup:
    """Componentwise product; element (a, b) gets index a*|T| + b."""
    n = S.n * T.n
    if n > budget:
        raise BudgetExceededError(f"product size {n} exceeds budget {budget}")
    sa = np.repeat(np.arange(S.n, dtype=np.int64), T.n)
    tb = np.tile(np.arange(T.n, dtype=np.int64), S.n)
    st = S.table.astype(np.int64)[np.ix_(sa, sa)]
    tt = T.table.astype(np.int64)[np.ix_(tb, tb)]
    name = ""
    if S.name and T.name:
        name = f"{S.name}x{T.name}"
    return Semigroup.trusted(st * T.n + tt, name=name)


def sub_semigroup(S: Semigroup, members: ElementSet, name: str = "") -> tuple[Semigroup, np.ndarray, np.ndarray]:
    """Restrict S to a product-closed subset.

    Returns (sub, to_sub, to_parent): ``to_sub[x]`` is the sub-index of parent
    element x (or -1), ``to_parent[i]`` the parent index of sub-element i.
    """
    mem = members.to_array()
    prods = np.unique(S.table[np.ix_(mem, mem)].astype(np.int64))
    if not all(int(x) in members for x in prods):
        raise ValueError("subset is not product-closed")
    to_sub = np.full(S.n, -1, dtype=np.int64)
    to_sub[mem] = np.arange(mem.size)
    sub_table = to_sub[S.table[np.ix_(mem, mem)].astype(np.int64)]
    return Semigroup.trusted(sub_table, name=name), to_sub, mem
