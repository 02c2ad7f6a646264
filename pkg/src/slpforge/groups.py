"""Group structure on top of Cayley tables.

A GroupView pins down a product-closed carrier inside an ambient semigroup
that happens to be a group: identity, inverse table, exponent.  The functions
here are the group-theoretic workhorses for the compressors: minimal
generating subsets, normal closures with conjugation provenance, derived
series, and quotient groups with liftable sections.

Everything is deterministic: scans run in ascending element order and greedy
loops restart from the smallest candidate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import NotAGroupError, NotNormalError
from .semigroup import Semigroup, closure, sub_semigroup
from .sets import ElementSet


@dataclass(frozen=True)
class GroupView:
    """A subset of a semigroup verified to be a group."""

    base: Semigroup
    carrier: ElementSet
    identity: int
    inverse: dict[int, int]

    @property
    def order(self) -> int:
        return self.carrier.cardinality

    def inv(self, g: int) -> int:
        return self.inverse[g]

    def conjugate(self, g: int, h: int) -> int:
        t = self.base.table
        return int(t[t[self.inverse[h], g], h])

    def commutator(self, g: int, h: int) -> int:
        t = self.base.table
        return int(t[t[t[self.inverse[g], self.inverse[h]], g], h])

    def element_order(self, g: int) -> int:
        return int(self.base.periods[g])

    def exponent(self) -> int:
        e = 1
        for g in self.carrier:
            e = math.lcm(e, self.element_order(g))
        return e


def group_view(S: Semigroup, carrier: Optional[ElementSet] = None) -> GroupView:
    """Verify that the carrier is a group and return its view.

    Checks: product closure, a unique idempotent acting neutrally, and a
    two-sided inverse for every element.  Raises NotAGroupError with a witness
    element otherwise.
    """
    if carrier is None:
        carrier = ElementSet.full(S.n)
    mem = carrier.to_array()
    table = S.table
    prods = np.unique(table[np.ix_(mem, mem)].astype(np.int64))
    for p in prods:
        if int(p) not in carrier:
            raise NotAGroupError(f"carrier not product-closed at {int(p)}", witness=int(p))
    idems = [int(e) for e in mem if table[e, e] == e]
    neutral = None
    for e in idems:
        if (table[e, mem] == mem).all() and (table[mem, e] == mem).all():
            if neutral is not None:
                raise NotAGroupError(
                    f"two neutral idempotents {neutral} and {e}", witness=e
                )
            neutral = e
    if neutral is None:
        witness = idems[0] if idems else int(mem[0])
        raise NotAGroupError("no neutral element in carrier", witness=witness)
    for e in idems:
        if e != neutral:
            raise NotAGroupError(f"extra idempotent {e}", witness=e)
    inverse: dict[int, int] = {}
    for g in mem:
        row = table[g, mem]
        hits = mem[row == neutral]
        inv = None
        for h in hits:
            if table[h, g] == neutral:
                inv = int(h)
                break
        if inv is None:
            raise NotAGroupError(f"element {int(g)} has no inverse", witness=int(g))
        inverse[int(g)] = inv
    return GroupView(S, carrier, neutral, inverse)


def extract_group(
    S: Semigroup, carrier: ElementSet, name: str = ""
) -> tuple[Semigroup, GroupView, np.ndarray, np.ndarray]:
    """Carve the carrier out as a standalone semigroup with its group view."""
    sub, to_sub, to_parent = sub_semigroup(S, carrier, name=name)
    view = group_view(sub)
    return sub, view, to_sub, to_parent


def subgroup_closure(G: GroupView, gens: Sequence[int]) -> ElementSet:
    """Subgroup generated by ``gens`` (= subsemigroup closure, finite group)."""
    if not gens:
        return ElementSet.from_indices(G.base.n, [G.identity])
    return closure(G.base, gens)


def minimal_generating_subset(G: GroupView, sigma: Sequence[int]) -> ElementSet:
    """Scan generators in ascending order, keeping those that grow the span.

    Every kept generator at least doubles the subgroup built so far, so the
    result has at most log2 of the generated subgroup many elements; dropped
    generators lie in the span of smaller-index ones.
    """
    sigma = sorted(set(int(g) for g in sigma))
    target = subgroup_closure(G, sigma)
    keep: list[int] = []
    span = ElementSet.from_indices(G.base.n, [G.identity])
    for g in sigma:
        if g in span:
            continue
        keep.append(g)
        span = subgroup_closure(G, keep)
        if span == target:
            break
    if not keep:
        keep = [sigma[0]]
    return ElementSet.from_indices(G.base.n, keep)


@dataclass
class ConjugationStep:
    """One element added by the normal-closure loop: value = g conjugated by h."""

    g: int
    h: int
    value: int


def normal_closure_set(
    G: GroupView,
    delta: Sequence[int],
    sigma: Sequence[int],
    membership_quotient=None,
) -> tuple[ElementSet, list[ConjugationStep]]:
    """Grow <delta> to its normal closure under <sigma>-conjugation.

    Returns (xi, log) where every step logs (g, h, g^h) so the element can be
    re-derived by a straight-line program (5 instructions per step).  When
    ``membership_quotient`` is given (a callable mapping elements to a
    quotient key), closure growth is measured modulo that map instead of in G
    itself; the logged values remain genuine G-elements.
    """
    delta = sorted(set(int(g) for g in delta))
    sigma_l = sorted(set(int(h) for h in sigma))
    xi: list[int] = []
    log: list[ConjugationStep] = []
    if not delta:
        return ElementSet(G.base.n, 0), log

    def span(extra: list[int]) -> ElementSet:
        members = subgroup_closure(G, delta + extra)
        return members

    def key_set(es: ElementSet) -> frozenset:
        if membership_quotient is None:
            return frozenset(es)
        return frozenset(membership_quotient(x) for x in es)

    cur = span(xi)
    cur_keys = key_set(cur)
    changed = True
    while changed:
        changed = False
        for g in delta + xi:
            for h in sigma_l:
                c = G.conjugate(g, h)
                key = c if membership_quotient is None else membership_quotient(c)
                if key not in cur_keys:
                    xi.append(c)
                    log.append(ConjugationStep(g, h, c))
                    cur = span(xi)
                    cur_keys = key_set(cur)
                    changed = True
                    break
            if changed:
                break
    return ElementSet.from_indices(G.base.n, sorted(set(xi))), log


@dataclass
class SeriesChain:
    """Descending chain of subgroups given as element sets of the ambient group."""

    terms: list[ElementSet]
    step_generators: list[int] = field(default_factory=list)

    @property
    def length(self) -> int:
        return len(self.terms) - 1

    @property
    def is_trivial_terminal(self) -> bool:
        return self.terms[-1].cardinality == 1

    def quotient_sizes(self) -> list[int]:
        return [
            self.terms[i].cardinality // self.terms[i + 1].cardinality
            for i in range(len(self.terms) - 1)
        ]


def derived_series(G: GroupView) -> SeriesChain:
    """G >= G' >= G'' >= ... until stabilisation (all commutator pairs, no sampling)."""
    terms = [G.carrier]
    cur = G.carrier
    table = G.base.table
    while True:
        mem = cur.to_array()
        inv_mem = np.asarray([G.inverse[int(h)] for h in mem], dtype=np.int64)
        comms: set[int] = set()
        for g, ginv in zip(mem, inv_mem):
            left = table[ginv, inv_mem].astype(np.int64)       # g^-1 h^-1
            mid = table[left, int(g)].astype(np.int64)         # g^-1 h^-1 g
            vals = table[mid, mem]                             # g^-1 h^-1 g h
            comms.update(int(c) for c in np.unique(vals))
        nxt = closure(G.base, sorted(comms))
        if nxt == cur:
            break
        terms.append(nxt)
        cur = nxt
        if cur.cardinality == 1:
            break
    return SeriesChain(terms)


def is_solvable(G: GroupView) -> bool:
    return derived_series(G).is_trivial_terminal


@dataclass
class QuotientGroup:
    """Quotient of a group by a normal subgroup, with a liftable section."""

    semigroup: Semigroup
    group: GroupView
    projection: dict[int, int]
    section: list[int]

    def project(self, g: int) -> int:
        return self.projection[g]

    def lift(self, q: int) -> int:
        return self.section[q]


def quotient_group(G: GroupView, N: ElementSet) -> QuotientGroup:
    """Quotient by a normal subgroup; cosets indexed by minimum representative.

    Raises NotNormalError with a conjugation witness when N is not normal.
    """
    if G.identity not in N:
        raise NotAGroupError("subgroup does not contain the identity", witness=G.identity)
    nm = N.to_array()
    table = G.base.table
    prods = np.unique(table[np.ix_(nm, nm)].astype(np.int64))
    for p in prods:
        if int(p) not in N:
            raise NotAGroupError("subgroup set not product-closed", witness=int(p))
    for h in G.carrier:
        hi = G.inverse[h]
        conj = table[table[hi, nm].astype(np.int64), h].astype(np.int64)
        for g, c in zip(nm, conj):
            if int(c) not in N:
                raise NotNormalError(int(g), int(h))
    carrier = sorted(G.carrier)
    coset_rep: dict[int, int] = {}
    for x in carrier:
        if x in coset_rep:
            continue
        coset = sorted(int(table[x, g]) for g in nm)
        rep = coset[0]
        for y in coset:
            coset_rep[y] = rep
    reps = sorted(set(coset_rep.values()))
    rep_index = {r: i for i, r in enumerate(reps)}
    projection = {x: rep_index[coset_rep[x]] for x in carrier}
    m = len(reps)
    qtable = np.zeros((m, m), dtype=np.int64)
    for i, a in enumerate(reps):
        for j, b in enumerate(reps):
            qtable[i, j] = rep_index[coset_rep[int(table[a, b])]]
    name = f"{G.base.name}/N" if G.base.name else ""
    qsg = Semigroup.trusted(qtable, name=name)
    qview = group_view(qsg)
    return QuotientGroup(qsg, qview, projection, list(reps))


def is_adapted(G: GroupView, sigma: Sequence[int], chain: SeriesChain) -> bool:
    """Does sigma intersect every chain term in a generating set of that term?"""
    sig = set(int(s) for s in sigma)
    for term in chain.terms:
        if term.cardinality == 1:
            continue
        part = [g for g in term if g in sig]
        if not part:
            return False
        if subgroup_closure(G, part) != term:
            return False
    return True
