"""Cube-doubling reachability compression for groups.

Maintains elements h_1 .. h_m whose subset products form the cube K.  While
the target is outside K^-1 K, the first element a*sigma escaping it (a scanned
in element-index order, sigma in generator order) is appended; every append
provably doubles |K|, so there are at most log2 |G| rounds.  The emitted group
program keeps each h_i in its own register and assembles values as b^-1 c
from two subset chains, giving width rounds + 3 and length O(log^2 |G|).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from ..errors import NotInSubgroupError
from ..groups import GroupView
from ..slp import Slp, SlpBuilder


@dataclass
class HRecord:
    value: int
    bmask: int
    cmask: int
    sigma: int


@dataclass
class CubeState:
    """Cube elements with their subset masks and the K^-1 K pair table."""

    values: dict[int, int] = field(default_factory=dict)   # value -> h-mask
    order: list[int] = field(default_factory=list)
    h_records: list[HRecord] = field(default_factory=list)
    kk: dict[int, tuple[int, int]] = field(default_factory=dict)
    doubling_log: list[int] = field(default_factory=list)

    @property
    def rounds(self) -> int:
        return len(self.h_records)

    def rebuild_kk(self, G: GroupView) -> None:
        import numpy as np

        table = G.base.table
        vals = np.asarray(self.order, dtype=np.int64)
        binv = np.asarray([G.inverse[b] for b in self.order], dtype=np.int64)
        prods = table[np.ix_(binv, vals)].astype(np.int64)
        flat = prods.ravel()
        uniq, first = np.unique(flat, return_index=True)
        m = vals.size
        kk: dict[int, tuple[int, int]] = {}
        for v, idx in zip(uniq, first):
            bi, ci = int(idx) // m, int(idx) % m
            kk[int(v)] = (self.values[self.order[bi]], self.values[self.order[ci]])
        self.kk = kk


def _grow_cube(
    G: GroupView, gens: Sequence[int], state: CubeState, target: Optional[int]
) -> bool:
    """Extend until the target lies in K^-1 K; target None means saturate."""
    table = G.base.table
    while True:
        if target is not None and target in state.kk:
            return True
        escape = None
        for a in sorted(state.kk):
            for g in gens:
                cand = int(table[a, g])
                if cand not in state.kk:
                    escape = (a, g, cand)
                    break
            if escape:
                break
        if escape is None:
            return target is not None and target in state.kk
        a, g, zval = escape
        bmask, cmask = state.kk[a]
        bit = 1 << len(state.h_records)
        state.h_records.append(HRecord(zval, bmask, cmask, g))
        before = len(state.order)
        for v in list(state.order):
            nv = int(table[v, zval])
            if nv in state.values:
                raise AssertionError("cube append failed to double; not an escape")
            state.values[nv] = state.values[v] | bit
            state.order.append(nv)
        if len(state.order) != 2 * before:
            raise AssertionError("cube size did not double")
        state.doubling_log.append(len(state.order))
        state.rebuild_kk(G)


def _emit_chain(b: SlpBuilder, regs: list[int], mask: int, scratch: int) -> int:
    """Product of the masked h-registers in index order; single factors alias."""
    idxs = [i for i in range(mask.bit_length()) if (mask >> i) & 1]
    if len(idxs) == 1:
        return regs[idxs[0]]
    b.mul(scratch, regs[idxs[0]], regs[idxs[1]])
    for i in idxs[2:]:
        b.mul(scratch, scratch, regs[i])
    return scratch


def _emit_pair(
    b: SlpBuilder,
    regs: list[int],
    bmask: int,
    cmask: int,
    sigma: Optional[int],
    dst: int,
    u1: int,
    u2: int,
) -> Optional[int]:
    """Emit (chain bmask)^-1 * (chain cmask) * sigma into dst.

    Returns the register actually holding the value (an alias when the whole
    expression is a single existing register and no instruction is needed).
    """
    if bmask == 0 and cmask == 0:
        if sigma is None:
            return None  # identity: caller handles
        b.load(dst, sigma)
        return dst
    if bmask == 0:
        creg = _emit_chain(b, regs, cmask, u2)
        if sigma is None:
            return creg
        b.load(u1, sigma)
        b.mul(dst, creg, u1)
        return dst
    breg = _emit_chain(b, regs, bmask, u1)
    if cmask == 0 and sigma is None:
        b.inv(dst, breg)
        return dst
    b.inv(u1, breg)
    if cmask and sigma is None:
        creg = _emit_chain(b, regs, cmask, u2)
        b.mul(dst, u1, creg)
        return dst
    if cmask:
        creg = _emit_chain(b, regs, cmask, u2)
        b.mul(dst, u1, creg)
        b.load(u1, sigma)
        b.mul(dst, dst, u1)
        return dst
    b.load(u2, sigma)
    b.mul(dst, u1, u2)
    return dst


def build_cube(G: GroupView, gens: Sequence[int], target: Optional[int]) -> CubeState:
    gens = [int(g) for g in gens]
    state = CubeState()
    state.values[G.identity] = 0
    state.order.append(G.identity)
    state.rebuild_kk(G)
    found = _grow_cube(G, gens, state, target)
    if target is not None and not found:
        raise NotInSubgroupError(f"target {target} is outside the generated subgroup")
    return state


def emit_from_cube(G: GroupView, gens: Sequence[int], state: CubeState, t: int) -> Slp:
    """Assemble the group SLP for a target already inside K^-1 K."""
    if t not in state.kk:
        raise NotInSubgroupError(f"target {t} is not covered by the cube")
    b = SlpBuilder(is_group=True)
    regs = [b.fresh() for _ in state.h_records]
    u1, u2, out = b.fresh(), b.fresh(), b.fresh()
    for i, rec in enumerate(state.h_records):
        _emit_pair(b, regs, rec.bmask, rec.cmask, rec.sigma, regs[i], u1, u2)
    bmask, cmask = state.kk[t]
    if bmask == 0 and cmask == 0:
        # t is the identity
        if regs:
            b.inv(u1, regs[0])
            b.mul(out, u1, regs[0])
            return b.finish(out)
        g = int(gens[0])
        order = G.element_order(g)
        b.load(u1, g)
        if order == 1:
            return b.finish(u1)
        b.fast_exp_into(out, u1, order)
        return b.finish(out)
    holder = _emit_pair(b, regs, bmask, cmask, None, out, u1, u2)
    return b.finish(holder)


def compress_group_reachability(
    G: GroupView, gens: Sequence[int], t: int
) -> tuple[Slp, CubeState]:
    """Group SLP for t over gens; width <= rounds + 3, strict cube doubling."""
    state = build_cube(G, gens, t)
    return emit_from_cube(G, gens, state, t), state
