"""Solvable-group compression: adapted series, derived-series generating
sets, and polycyclic sets with width-3 provenance programs.

Three layers:

* ``adapt_subnormal`` lifts per-quotient programs along a subnormal series
  with an adapted generating set, accumulating the target left to right in
  one extra register.

* ``compress_group_solvable`` builds a generating set adapted to the derived
  series out of conjugates and commutators (each rederivable in at most 7
  group instructions), then runs the adapted-series construction with the
  abelian quotient compressor and eliminates inverses.  Length O(log |G|),
  width unbounded.

* ``compress_group_solvable_bounded`` builds a polycyclic generating set by
  layered conjugate-commutator closure.  Every record is a value
  u^-1 g^-1 v^-1 g^-1 v g v^-1 g v u  over the previous layer; holding either
  the running prefix or its inverse lets three registers evaluate it with a
  constant number of omega-minus-one exponentiations, so the whole program
  fits in width 4 and length O(log^3 |G|), with no inverse instructions at
  all.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from ..classify import Config
from ..errors import (
    ChainVerificationFailedError,
    NotAdaptedError,
    NotSolvableError,
    SlpforgeError,
)
from ..groups import (
    GroupView,
    QuotientGroup,
    SeriesChain,
    derived_series,
    extract_group,
    is_adapted,
    normal_closure_set,
    quotient_group,
)
from ..semigroup import closure
from ..sets import ElementSet
from ..slp import Slp, SlpBuilder, append_compose, eliminate_inverses, fast_exp
from .permutative import compress_permutative


# -- adapted subnormal series ------------------------------------------------


def adapt_subnormal(
    G: GroupView,
    sigma: Sequence[int],
    chain: SeriesChain,
    t: int,
    quotient_strategy: str = "abelian",
) -> Slp:
    """Accumulate t level by level through the chain's quotients.

    Per level the residual target is projected into G_{i-1}/G_i, compressed
    there (permutative with k = 0 for abelian quotients; a single discrete
    logarithm for cyclic ones), and lifted by loading the generator instead of
    its image.  One dedicated register accumulates the product of the lifts.
    """
    sigma = list(dict.fromkeys(int(s) for s in sigma))
    if not is_adapted(G, sigma, chain):
        raise NotAdaptedError("generating set is not adapted to the chain")
    level_programs: list[Slp] = []
    t_prime = t
    table = G.base.table
    for i in range(1, len(chain.terms)):
        prev_term, cur_term = chain.terms[i - 1], chain.terms[i]
        if prev_term == cur_term:
            continue
        sub, sub_view, to_sub, to_parent = extract_group(G.base, prev_term)
        n_sub = ElementSet.from_indices(sub.n, [int(to_sub[x]) for x in cur_term])
        Q = quotient_group(sub_view, n_sub)
        if t_prime not in prev_term:
            raise SlpforgeError("residual target escaped its chain term")
        x = Q.projection[int(to_sub[t_prime])]
        if x == Q.group.identity:
            continue
        sigma_i = [s for s in sigma if s in prev_term]
        rep: dict[int, int] = {}
        qgens: list[int] = []
        for s in sigma_i:
            q = Q.projection[int(to_sub[s])]
            if q not in rep:
                rep[q] = s
                qgens.append(q)
        if quotient_strategy == "cyclic":
            gval = chain.step_generators[i - 1]
            qg = Q.projection[int(to_sub[gval])]
            a, p = 0, Q.group.identity
            qt = Q.semigroup.table
            while p != x:
                p = int(qt[p, qg])
                a += 1
                if a > Q.semigroup.n:
                    raise SlpforgeError("cyclic quotient misses the residual target")
            qprog = fast_exp(qg, a)
            rep.setdefault(qg, gval)
        else:
            qprog = compress_permutative(Q.semigroup, qgens, x, kstar=0)
        lifted = Slp(
            tuple(rep[qv] for qv in qprog.alphabet),
            qprog.instructions,
            qprog.output,
        )
        t_i = _eval_plain(G, lifted)
        level_programs.append(lifted)
        t_prime = int(table[G.inverse[t_i], t_prime])
    if t_prime != G.identity:
        raise SlpforgeError("chain walk did not exhaust the target")
    if not level_programs:
        g = sigma[0]
        order = G.element_order(g)
        if order == 1:
            return fast_exp(g, 1)
        return fast_exp(g, order if t == G.identity else 1)
    return _accumulate(level_programs)


def _eval_plain(G: GroupView, prog: Slp) -> int:
    from ..slp import evaluate

    return evaluate(G.base, prog, group=G).output_value


def _accumulate(programs: list[Slp]) -> Slp:
    """Concatenate level programs over a shared block plus one accumulator."""
    block = max(len(p.registers()) for p in programs)
    acc = block
    out = SlpBuilder()
    first = True
    for prog in programs:
        ren: dict[int, int] = {}
        order = prog.registers()
        if first:
            ren[prog.output] = acc
        nxt = 0
        for r in order:
            if r not in ren:
                ren[r] = nxt
                nxt += 1
        for ins in prog.instructions:
            if ins[0] == "L":
                out.load(ren[ins[1]], prog.alphabet[ins[2]])
            elif ins[0] == "M":
                out.mul(ren[ins[1]], ren[ins[2]], ren[ins[3]])
            else:
                raise SlpforgeError("level programs must be inverse-free")
        if not first:
            out.mul(acc, acc, ren[prog.output])
        first = False
    return out.finish(acc)


# -- derived-series generating set (unbounded width) -------------------------


@dataclass
class DeltaRecord:
    value: int
    kind: str                     # "gen" | "conj" | "comm"
    g: Optional[int] = None       # referenced value (conj/comm)
    h: Optional[int] = None       # generator for conj, second value for comm


@dataclass
class DeltaSet:
    records: list[DeltaRecord]
    per_level: list[list[int]]    # values per derived-series level

    @property
    def values(self) -> list[int]:
        return [r.value for r in self.records]


def _quotient_proj(G: GroupView, term: ElementSet) -> tuple[QuotientGroup, dict]:
    Q = quotient_group(G, term)
    return Q, Q.projection


def build_derived_adapted_set(G: GroupView, sigma: Sequence[int], chain: SeriesChain) -> DeltaSet:
    """Generators adapted to the derived series, from conjugates/commutators."""
    sigma = list(dict.fromkeys(int(s) for s in sigma))
    registry: dict[int, int] = {}
    records: list[DeltaRecord] = []

    def register(rec: DeltaRecord) -> None:
        if rec.value not in registry:
            registry[rec.value] = len(records)
            records.append(rec)

    # level 0: a minimal subset of sigma generating G modulo G'
    Qg, proj1 = _quotient_proj(G, chain.terms[1] if len(chain.terms) > 1 else _trivial(G))
    full = _proj_span(Qg, [proj1[s] for s in sigma])
    if len(full) != Qg.semigroup.n:
        raise SlpforgeError("sigma does not generate G modulo G'")
    delta0 = list(sigma)
    for s in sigma:
        if len(delta0) == 1:
            break
        trial = [x for x in delta0 if x != s]
        if trial and len(_proj_span(Qg, [proj1[x] for x in trial])) == Qg.semigroup.n:
            delta0 = trial
    for s in delta0:
        register(DeltaRecord(s, "gen"))
    per_level = [list(delta0)]

    prev_vals = list(delta0)
    for i in range(1, len(chain.terms) - 1):
        term_next = chain.terms[i + 1] if i + 1 < len(chain.terms) else _trivial(G)
        Q, proj = _quotient_proj(G, term_next)
        pget = proj.get

        xi_set, xi_log = normal_closure_set(G, prev_vals, sigma, membership_quotient=pget)
        for step in xi_log:
            register(DeltaRecord(step.value, "conj", g=step.g, h=step.h))
        d1 = prev_vals + [s.value for s in xi_log]

        comms: list[tuple[int, int, int]] = []
        seen_c: set[int] = set()
        for g in d1:
            for h in d1:
                c = G.commutator(g, h)
                if c not in seen_c:
                    seen_c.add(c)
                    comms.append((c, g, h))
        target = _proj_span(Q, [proj[c] for c, _, _ in comms])
        theta: list[int] = []
        cur: set[int] = {proj[G.identity]}
        for c, g, h in comms:
            if proj[c] not in cur:
                theta.append(c)
                register(DeltaRecord(c, "comm", g=g, h=h))
                cur = _proj_span(Q, [proj[x] for x in theta])
                if cur == target:
                    break
        if not theta:
            per_level.append([])
            prev_vals = []
            continue
        xi2_set, xi2_log = normal_closure_set(G, theta, sigma, membership_quotient=pget)
        for step in xi2_log:
            register(DeltaRecord(step.value, "conj", g=step.g, h=step.h))
        delta_i = theta + [s.value for s in xi2_log]
        span = _proj_span(Q, [proj[v] for v in delta_i])
        expect = {proj[x] for x in chain.terms[i]}
        if span != expect:
            raise SlpforgeError(f"level {i} generators miss their derived term")
        per_level.append(delta_i)
        prev_vals = delta_i
    return DeltaSet(records, per_level)


def _trivial(G: GroupView) -> ElementSet:
    return ElementSet.from_indices(G.base.n, [G.identity])


def _proj_span(Q: QuotientGroup, images: Sequence[int]) -> set[int]:
    imgs = sorted(set(int(x) for x in images))
    if not imgs:
        return {Q.group.identity}
    return set(closure(Q.semigroup, imgs))


def emit_delta_program(G: GroupView, delta: DeltaSet) -> Slp:
    """Group SLP computing every record value into its own register.

    Conjugates cost 5 instructions, commutators 5; both reuse one shared
    scratch register for loads and inversions.
    """
    if not delta.records:
        raise SlpforgeError("empty generating set")
    b = SlpBuilder(is_group=True)
    reg: dict[int, int] = {}
    u = b.fresh()
    for rec in delta.records:
        r = b.fresh()
        if rec.kind == "gen":
            b.load(r, rec.value)
        elif rec.kind == "conj":
            b.load(u, rec.h)
            b.inv(u, u)
            b.mul(r, u, reg[rec.g])
            b.load(u, rec.h)
            b.mul(r, r, u)
        else:
            b.inv(u, reg[rec.g])
            b.inv(r, reg[rec.h])
            b.mul(r, u, r)
            b.mul(r, r, reg[rec.g])
            b.mul(r, r, reg[rec.h])
        reg[rec.value] = r
    return Slp(tuple(b.alphabet), tuple(b.instructions), reg[delta.records[-1].value], is_group=True)


def solvable_plan(G: GroupView, sigma: Sequence[int]) -> tuple[DeltaSet, SeriesChain, Slp]:
    """Target-independent part of the unbounded-width construction."""
    chain = derived_series(G)
    if not chain.is_trivial_terminal:
        raise NotSolvableError("derived series does not reach the trivial group")
    delta = build_derived_adapted_set(G, sigma, chain)
    if not is_adapted(G, delta.values, chain):
        raise SlpforgeError("derived-adapted set failed the adaptedness check")
    return delta, chain, emit_delta_program(G, delta)


def compress_group_solvable(
    G: GroupView,
    sigma: Sequence[int],
    t: int,
    config: Optional[Config] = None,
    plan: Optional[tuple[DeltaSet, SeriesChain, Slp]] = None,
) -> tuple[Slp, DeltaSet, SeriesChain]:
    """O(log |G|)-length ordinary SLP for solvable G, width unbounded."""
    delta, chain, dprog = plan if plan is not None else solvable_plan(G, sigma)
    aprog = adapt_subnormal(G, delta.values, chain, t, "abelian")
    composed = append_compose(G.base, aprog, dprog, group=G)
    plain = eliminate_inverses(G, composed)
    return plain, delta, chain


# -- polycyclic generating set (bounded width) --------------------------------


@dataclass
class PolyRecord:
    value: int
    layer: int
    base: Optional[int] = None          # sigma value (layer 0)
    parent: Optional[int] = None        # record index of g (layer >= 1)
    v_word: Optional[list[int]] = None  # conjugator making g~ = g^v
    u_word: list[int] = field(default_factory=list)


@dataclass
class PolycyclicGenSet:
    records: list[PolyRecord]
    chain_indices: list[int]
    chain: SeriesChain

    def chain_records(self) -> list[PolyRecord]:
        return [self.records[i] for i in self.chain_indices]


def _conjugator_words(G: GroupView, sigma: Sequence[int], k: int) -> list[tuple[int, list[int]]]:
    """Values of sigma-words of length <= k with lex-least shortest words,
    starting with the empty conjugator."""
    out: list[tuple[int, list[int]]] = [(G.identity, [])]
    seen = {G.identity}
    level: list[tuple[int, list[int]]] = []
    for g in sigma:
        if g not in seen:
            seen.add(g)
            level.append((g, [g]))
    out.extend(level)
    table = G.base.table
    for _ in range(k - 1):
        nxt: list[tuple[int, list[int]]] = []
        for val, w in level:
            for g in sigma:
                p = int(table[val, g])
                if p not in seen:
                    seen.add(p)
                    nxt.append((p, w + [g]))
        out.extend(nxt)
        level = nxt
    return out


def build_polycyclic_set(
    G: GroupView, sigma: Sequence[int], config: Optional[Config] = None
) -> PolycyclicGenSet:
    """Layered conjugate/commutator records inducing a verified cyclic chain."""
    dchain = derived_series(G)
    if not dchain.is_trivial_terminal:
        raise NotSolvableError("polycyclic sets need a solvable group")
    sigma = list(dict.fromkeys(int(s) for s in sigma))
    k = max(1, math.ceil(math.log2(max(2, G.order))))
    conj = _conjugator_words(G, sigma, k)
    records: list[PolyRecord] = []
    seen: set[int] = set()

    def register(rec: PolyRecord) -> None:
        if rec.value != G.identity and rec.value not in seen:
            seen.add(rec.value)
            records.append(rec)

    layer_members: list[tuple[int, int]] = []  # (record index, value)
    for g in sigma:
        for hval, hword in conj:
            val = G.conjugate(g, hval)
            before = len(records)
            register(PolyRecord(val, 0, base=g, u_word=list(hword)))
            if len(records) > before:
                layer_members.append((len(records) - 1, val))

    layer = 0
    while layer_members:
        layer += 1
        if layer >= len(dchain.terms):
            break
        comms: list[tuple[int, int, list[int]]] = []  # value, parent index, v_word
        seen_c: set[int] = set()
        for ridx, gval in layer_members:
            for vval, vword in conj:
                if not vword:
                    continue
                gt = G.conjugate(gval, vval)
                c = _commutator(G, gval, gt)
                if c == G.identity or c in seen_c:
                    continue
                seen_c.add(c)
                comms.append((c, ridx, list(vword)))
        next_members: list[tuple[int, int]] = []
        for cval, ridx, vword in comms:
            for uval, uword in conj:
                val = G.conjugate(cval, uval)
                before = len(records)
                register(
                    PolyRecord(val, layer, parent=ridx, v_word=vword, u_word=list(uword))
                )
                if len(records) > before:
                    next_members.append((len(records) - 1, val))
        for _, val in next_members:
            if layer < len(dchain.terms) and val not in dchain.terms[layer]:
                raise ChainVerificationFailedError(
                    f"layer {layer} value {val} escapes the derived term"
                )
        layer_members = next_members

    # prune right to left, keeping records that grow the suffix subgroup
    kept: list[int] = []
    cur = ElementSet.from_indices(G.base.n, [G.identity])
    for idx in range(len(records) - 1, -1, -1):
        val = records[idx].value
        if val not in cur:
            kept.append(idx)
            cur = closure(G.base, [val] + list(cur))
    kept.reverse()
    if cur != G.carrier:
        raise ChainVerificationFailedError("records do not generate the group")

    terms = [G.carrier]
    for pos in range(len(kept)):
        suffix_vals = [records[i].value for i in kept[pos + 1 :]]
        term = (
            closure(G.base, suffix_vals + [G.identity])
            if suffix_vals
            else ElementSet.from_indices(G.base.n, [G.identity])
        )
        terms.append(term)
    for j in range(1, len(terms)):
        sub = terms[j]
        r = records[kept[j - 1]].value
        for gv in sub:
            if G.conjugate(gv, r) not in sub:
                raise ChainVerificationFailedError(
                    f"suffix subgroup at step {j} is not normalised by its record"
                )
        if terms[j - 1].cardinality % sub.cardinality:
            raise ChainVerificationFailedError("non-Lagrangian chain step")
    chain = SeriesChain(terms, step_generators=[records[i].value for i in kept])
    return PolycyclicGenSet(records, kept, chain)


def _commutator(G: GroupView, g: int, h: int) -> int:
    t = G.base.table
    return int(t[t[t[G.inverse[g], G.inverse[h]], g], h])


class _BoundedEmitter:
    """Width-4 emission: accumulator + three working registers."""

    def __init__(self, G: GroupView, pcs: PolycyclicGenSet, inv_exp: int):
        self.G = G
        self.pcs = pcs
        self.inv_exp = inv_exp
        self.b = SlpBuilder()
        self.acc = self.b.fresh()
        self.work = [self.b.fresh(), self.b.fresh(), self.b.fresh()]

    def _invert(self, src: int, dst: int) -> None:
        self.b.fast_exp_into(dst, src, self.inv_exp)

    def _word_right(self, reg: int, load_reg: int, word: Sequence[int]) -> None:
        for letter in word:
            self.b.load(load_reg, letter)
            self.b.mul(reg, reg, load_reg)

    def emit_record(self, rec: PolyRecord, allowed: list[int]) -> tuple[int, list[int]]:
        """Compute the record value; returns (holding register, free registers)."""
        b = self.b
        if rec.layer == 0:
            A, B, C = allowed
            if not rec.u_word:
                b.load(A, rec.base)
                return A, [B, C]
            # value = u^-1 sigma u
            b.word_product(rec.u_word, A, B)
            self._invert(A, B)
            b.load(A, rec.base)
            b.mul(B, B, A)
            self._word_right(B, A, rec.u_word)
            return B, [A, C]
        rg, free = self.emit_record(self.pcs.records[rec.parent], allowed)
        A, B = free
        v = rec.v_word or []
        u = rec.u_word
        # W1 = g v g u; the record value is W1^-1 * (v g) * v^-1 * (g v u)
        if v:
            b.load(B, v[0])
            b.mul(A, rg, B)
            self._word_right(A, B, v[1:])
        else:
            b.mul(A, rg, rg)
        b.mul(A, A, rg)
        self._word_right(A, B, u)
        self._invert(A, B)          # B = u^-1 g^-1 v^-1 g^-1
        self._word_right(B, A, v)   # ... v
        b.mul(B, B, rg)             # ... g
        self._invert(B, A)          # A = (prefix)^-1
        for letter in reversed(v):  # left-multiply by v: prefix gains v^-1
            b.load(B, letter)
            b.mul(A, B, A)
        self._invert(A, B)          # B = prefix (= u^-1 g^-1 v^-1 g^-1 v g v^-1)
        b.mul(B, B, rg)             # ... g
        self._word_right(B, A, v)   # ... v
        self._word_right(B, A, u)   # ... u
        return B, [A, rg]


def compress_group_solvable_bounded(
    G: GroupView,
    sigma: Sequence[int],
    t: int,
    config: Optional[Config] = None,
    pcs: Optional[PolycyclicGenSet] = None,
) -> tuple[Slp, PolycyclicGenSet]:
    """Width <= 4 ordinary SLP of length O(log^3 |G|) for solvable G."""
    sigma = list(dict.fromkeys(int(s) for s in sigma))
    if pcs is None:
        pcs = build_polycyclic_set(G, sigma, config)
    exponent = 1
    for g in G.carrier:
        exponent = math.lcm(exponent, G.element_order(g))
    inv_exp = exponent - 1 if exponent - 1 >= 2 else 2 * exponent - 1

    # pass 1: discrete logarithms along the chain
    table = G.base.table
    t_prime = t
    exps: list[int] = []
    for j, rec in enumerate(pcs.chain_records()):
        term_next = pcs.chain.terms[j + 1]
        a, p = 0, G.identity
        limit = G.element_order(rec.value) + 1
        while True:
            if int(table[G.inverse[p], t_prime]) in term_next:
                break
            p = int(table[p, rec.value])
            a += 1
            if a > limit:
                raise SlpforgeError("chain step misses its residual target")
        exps.append(a)
        t_prime = int(table[G.inverse[p], t_prime])
    if t_prime != G.identity:
        raise SlpforgeError("polycyclic walk did not exhaust the target")

    contributions = [
        (j, a) for j, a in enumerate(exps) if a > 0
    ]
    if not contributions:
        g = sigma[0]
        order = G.element_order(g)
        return fast_exp(g, order if order >= 1 else 1), pcs

    em = _BoundedEmitter(G, pcs, inv_exp)
    b = em.b
    first = True
    chain_recs = pcs.chain_records()
    for j, a in contributions:
        rreg, free = em.emit_record(chain_recs[j], em.work)
        if first:
            e_use = a if a >= 2 else a + exponent
            b.fast_exp_into(em.acc, rreg, e_use)
            first = False
        else:
            if a == 1:
                b.mul(em.acc, em.acc, rreg)
            else:
                b.fast_exp_into(free[0], rreg, a)
                b.mul(em.acc, em.acc, free[0])
    return b.finish(em.acc), pcs
