"""Straight-line programs over semigroup generators.

A program is a sequence of instructions over registers:

    ("L", dst, k)      load alphabet symbol k into dst
    ("M", dst, a, b)   dst <- a * b
    ("I", dst, a)      dst <- a^-1         (group programs only)

Length is the instruction count, width the number of distinct registers
referenced.  Programs are immutable values; composition operators return new
programs.  Register numbering is canonicalised to first-assignment order so
that metrics and file round-trips are reproducible bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import (
    InvalidProgramError,
    InverseOutsideGroupError,
    MissingSubprogramError,
    MissingSubvalueError,
)
from .groups import GroupView, minimal_generating_subset
from .semigroup import Semigroup, closure, shortest_word


@dataclass(frozen=True)
class Slp:
    alphabet: tuple[int, ...]
    instructions: tuple[tuple, ...]
    output: int
    is_group: bool = False

    def __post_init__(self):
        assigned: set[int] = set()
        for ins in self.instructions:
            op = ins[0]
            if op == "L":
                _, dst, k = ins
                if not 0 <= k < len(self.alphabet):
                    raise InvalidProgramError(f"load of unknown symbol {k}")
            elif op == "M":
                _, dst, a, b = ins
                if a not in assigned or b not in assigned:
                    raise InvalidProgramError(f"read of unassigned register in {ins}")
            elif op == "I":
                if not self.is_group:
                    raise InvalidProgramError("INV instruction in a non-group program")
                _, dst, a = ins
                if a not in assigned:
                    raise InvalidProgramError(f"read of unassigned register in {ins}")
            else:
                raise InvalidProgramError(f"unknown opcode {op!r}")
            assigned.add(dst)
        if self.output not in assigned:
            raise InvalidProgramError("output register never assigned")

    @property
    def length(self) -> int:
        return len(self.instructions)

    @property
    def width(self) -> int:
        regs: set[int] = set()
        for ins in self.instructions:
            regs.update(ins[1:2])
            if ins[0] == "M":
                regs.update(ins[2:4])
            elif ins[0] == "I":
                regs.add(ins[2])
        return len(regs)

    def registers(self) -> list[int]:
        """Registers in first-assignment order."""
        seen: list[int] = []
        have: set[int] = set()
        for ins in self.instructions:
            if ins[1] not in have:
                have.add(ins[1])
                seen.append(ins[1])
        return seen

    def canonical(self) -> "Slp":
        """Renumber registers in first-assignment order (0, 1, 2, ...)."""
        ren = {r: i for i, r in enumerate(self.registers())}
        out = []
        for ins in self.instructions:
            if ins[0] == "L":
                out.append(("L", ren[ins[1]], ins[2]))
            elif ins[0] == "M":
                out.append(("M", ren[ins[1]], ren[ins[2]], ren[ins[3]]))
            else:
                out.append(("I", ren[ins[1]], ren[ins[2]]))
        return Slp(self.alphabet, tuple(out), ren[self.output], self.is_group)


@dataclass
class EvalTrace:
    registers: dict[int, int]
    value_set: set[int]
    output_value: int
    values_log: Optional[list[int]] = None


@dataclass
class CostReport:
    length: int
    width: int
    strategy: str = ""
    verified: bool = False

    def matches(self, prog: Slp) -> bool:
        return self.length == prog.length and self.width == prog.width


def evaluate(
    S: Semigroup,
    prog: Slp,
    group: Optional[GroupView] = None,
    log_values: bool = False,
) -> EvalTrace:
    """Execute the program over S.  INV needs a group view for the carrier."""
    for v in prog.alphabet:
        if not 0 <= v < S.n:
            raise InvalidProgramError(f"alphabet value {v} outside semigroup")
    table = S.table
    regs: dict[int, int] = {}
    values: set[int] = set()
    log: Optional[list[int]] = [] if log_values else None
    for ins in prog.instructions:
        if ins[0] == "L":
            val = prog.alphabet[ins[2]]
        elif ins[0] == "M":
            val = int(table[regs[ins[2]], regs[ins[3]]])
        else:
            if group is None:
                raise InverseOutsideGroupError("INV without a group carrier")
            src = regs[ins[2]]
            if src not in group.carrier:
                raise InverseOutsideGroupError(f"value {src} outside the group carrier")
            val = group.inverse[src]
        regs[ins[1]] = val
        values.add(val)
        if log is not None:
            log.append(val)
    return EvalTrace(regs, values, regs[prog.output], log)


def verify(S: Semigroup, prog: Slp, t: int, strategy: str = "", group=None) -> CostReport:
    """Evaluate and compare against the target; metrics from static analysis."""
    trace = evaluate(S, prog, group=group)
    return CostReport(
        length=prog.length,
        width=prog.width,
        strategy=strategy,
        verified=trace.output_value == t,
    )


class SlpBuilder:
    """Mutable instruction buffer with symbol interning."""

    def __init__(self, is_group: bool = False):
        self.instructions: list[tuple] = []
        self.alphabet: list[int] = []
        self._sym_index: dict[int, int] = {}
        self._next_reg = 0
        self.is_group = is_group

    def fresh(self) -> int:
        r = self._next_reg
        self._next_reg = r + 1
        return r

    def reserve(self, count: int) -> list[int]:
        return [self.fresh() for _ in range(count)]

    def symbol(self, value: int) -> int:
        k = self._sym_index.get(value)
        if k is None:
            k = len(self.alphabet)
            self.alphabet.append(value)
            self._sym_index[value] = k
        return k

    def load(self, dst: int, value: int) -> None:
        self.instructions.append(("L", dst, self.symbol(value)))

    def mul(self, dst: int, a: int, b: int) -> None:
        self.instructions.append(("M", dst, a, b))

    def inv(self, dst: int, a: int) -> None:
        self.instructions.append(("I", dst, a))

    def word_product(self, values: Sequence[int], acc: int, scratch: int) -> None:
        """acc <- left-to-right product of the given element values."""
        self.load(acc, values[0])
        for v in values[1:]:
            self.load(scratch, v)
            self.mul(acc, acc, scratch)

    def fast_exp_into(self, acc: int, base: int, e: int) -> None:
        """acc <- (value of base)^e by MSB-first square and multiply; e >= 2.

        The base register is read but never written, so its value survives.
        """
        if e < 2:
            raise ValueError("fast_exp_into needs exponent >= 2")
        bits = bin(e)[2:]
        self.mul(acc, base, base)
        if bits[1] == "1":
            self.mul(acc, acc, base)
        for b in bits[2:]:
            self.mul(acc, acc, acc)
            if b == "1":
                self.mul(acc, acc, base)
        return

    def finish(self, output: int) -> Slp:
        return Slp(
            tuple(self.alphabet), tuple(self.instructions), output, self.is_group
        ).canonical()


def fast_exp(symbol: int, n: int) -> Slp:
    """Width-2 square-and-multiply program for symbol^n, length <= 2*floor(log2 n) + 1."""
    if n < 1:
        raise ValueError("exponent must be >= 1")
    b = SlpBuilder()
    base = b.fresh()
    b.load(base, symbol)
    if n == 1:
        return b.finish(base)
    acc = b.fresh()
    b.fast_exp_into(acc, base, n)
    return b.finish(acc)


def _final_value_registers(S: Semigroup, prog: Slp, group=None) -> dict[int, int]:
    """Value -> smallest register holding it after the program ran."""
    trace = evaluate(S, prog, group=group)
    out: dict[int, int] = {}
    for reg in sorted(trace.registers):
        val = trace.registers[reg]
        out.setdefault(val, reg)
    return out


def append_compose(
    S: Semigroup,
    prog_a: Slp,
    prog_b: Slp,
    outsource: Optional[Sequence[int]] = None,
    group=None,
) -> Slp:
    """Run prog_b first, then prog_a with outsourced loads wired to b's registers.

    ``outsource`` lists symbol indices of prog_a whose loads are replaced by
    references to the register of prog_b holding that value at the end of its
    run (no copy is emitted).  Default: every a-symbol whose value prog_b
    ends up holding.  Length <= len(a) + len(b); width <= width(a) + width(b).
    """
    holding = _final_value_registers(S, prog_b, group=group)
    if outsource is None:
        outsource_set = {
            k for k, v in enumerate(prog_a.alphabet) if v in holding
        }
    else:
        outsource_set = set(outsource)
        for k in outsource_set:
            if prog_a.alphabet[k] not in holding:
                raise MissingSubvalueError(
                    f"prog_b does not hold value {prog_a.alphabet[k]} for symbol {k}"
                )
    base = max((ins[1] for ins in prog_b.instructions), default=-1) + 1
    out = SlpBuilder(is_group=prog_a.is_group or prog_b.is_group)
    for ins in prog_b.instructions:
        if ins[0] == "L":
            out.load(ins[1], prog_b.alphabet[ins[2]])
        elif ins[0] == "M":
            out.mul(*ins[1:])
        else:
            out.inv(*ins[1:])
    cur: dict[int, int] = {}
    for ins in prog_a.instructions:
        if ins[0] == "L":
            k = ins[2]
            if k in outsource_set:
                cur[ins[1]] = holding[prog_a.alphabet[k]]
            else:
                cur[ins[1]] = base + ins[1]
                out.load(base + ins[1], prog_a.alphabet[k])
        elif ins[0] == "M":
            a, b_ = cur[ins[2]], cur[ins[3]]
            cur[ins[1]] = base + ins[1]
            out.mul(base + ins[1], a, b_)
        else:
            a = cur[ins[2]]
            cur[ins[1]] = base + ins[1]
            out.inv(base + ins[1], a)
    return out.finish(cur[prog_a.output])


def inline_subroutine(
    prog_a: Slp,
    subprograms: dict[int, Slp],
    delta: Optional[Sequence[int]] = None,
) -> Slp:
    """Replace loads of the given symbols by re-emitted subprograms.

    Each subprogram's output register is retargeted to the load destination;
    its scratch registers map into one shared pool, so the composite width is
    width(a) + max(sub width - 1).
    """
    if delta is None:
        delta = sorted(subprograms)
    for k in delta:
        if k not in subprograms:
            raise MissingSubprogramError(f"no subprogram for symbol {k}")
        if subprograms[k].is_group and not prog_a.is_group:
            raise InvalidProgramError("group subprogram inside a plain program")
    delta_set = set(delta)
    a_regs = {ins[1] for ins in prog_a.instructions}
    for ins in prog_a.instructions:
        if ins[0] == "M":
            a_regs.update(ins[2:4])
        elif ins[0] == "I":
            a_regs.add(ins[2])
    pool_base = max(a_regs) + 1
    out = SlpBuilder(is_group=prog_a.is_group)
    for ins in prog_a.instructions:
        if ins[0] == "L" and ins[2] in delta_set:
            sub = subprograms[ins[2]]
            ren: dict[int, int] = {sub.output: ins[1]}
            next_scratch = 0
            for sreg in sub.registers():
                if sreg not in ren:
                    ren[sreg] = pool_base + next_scratch
                    next_scratch += 1
            for sins in sub.instructions:
                if sins[0] == "L":
                    out.load(ren[sins[1]], sub.alphabet[sins[2]])
                elif sins[0] == "M":
                    out.mul(ren[sins[1]], ren[sins[2]], ren[sins[3]])
                else:
                    out.inv(ren[sins[1]], ren[sins[2]])
        elif ins[0] == "L":
            out.load(ins[1], prog_a.alphabet[ins[2]])
        elif ins[0] == "M":
            out.mul(*ins[1:])
        else:
            out.inv(*ins[1:])
    return out.finish(prog_a.output)


class _MirrorState:
    """Physical register allocation for the inverse-elimination mirror pass.

    Each original register owns a (pos, neg) slot pair.  INV re-binds a pair
    with flipped orientation instead of emitting instructions, so a later
    write must allocate fresh physical registers when the old ones are shared.
    """

    def __init__(self, first_free: int):
        self.pos: dict[int, int] = {}
        self.neg: dict[int, int] = {}
        self.next_reg = first_free
        self.free: list[int] = []
        self.pinned: set[int] = set()

    def _refs(self, phys: int) -> int:
        return sum(1 for m in (self.pos, self.neg) for v in m.values() if v == phys)

    def _reusable(self, dst: int) -> list[int]:
        out = []
        for m in (self.pos, self.neg):
            old = m.get(dst)
            if old is not None and old not in self.pinned and self._refs(old) == 1:
                out.append(old)
        return out

    def writable_pair(self, dst: int) -> tuple[int, int]:
        """Physical (pos, neg) registers safe to overwrite for dst."""
        out = self._reusable(dst)
        while len(out) < 2:
            out.append(self.free.pop() if self.free else self._alloc())
        return out[0], out[1]

    def writable_one(self, dst: int) -> int:
        out = self._reusable(dst)
        if out:
            return out[0]
        return self.free.pop() if self.free else self._alloc()

    def _alloc(self) -> int:
        r = self.next_reg
        self.next_reg += 1
        return r

    def rebind(self, dst: int, p: int, n: int) -> None:
        for m, new in ((self.pos, p), (self.neg, n)):
            old = m.get(dst)
            m[dst] = new
            if (
                old is not None
                and old not in (p, n)
                and old not in self.pinned
                and self._refs(old) == 0
                and old not in self.free
            ):
                self.free.append(old)


def eliminate_inverses(G: GroupView, prog: Slp) -> Slp:
    """Rewrite a group SLP into an ordinary SLP over the same generators.

    Strategy: shrink the alphabet to a minimal generating subset, compute all
    its inverses once via the prefix/suffix-product trick plus a single
    omega-minus-one exponentiation, then mirror the program so each original
    register is paired with one holding the inverse value.  INV becomes a
    role swap realised by renaming; no copies are emitted.
    """
    if not prog.is_group:
        return prog
    if not any(ins[0] == "I" for ins in prog.instructions):
        return Slp(prog.alphabet, prog.instructions, prog.output, is_group=False)

    sigma = sorted(set(prog.alphabet))
    sub = closure(G.base, sigma)
    sub_view = GroupView(
        G.base,
        sub,
        G.identity if G.identity in sub else _sub_identity(G, sub),
        G.inverse,
    )
    sigma_min = sorted(minimal_generating_subset(sub_view, sigma))
    s = len(sigma_min)
    exponent = 1
    for g in sub:
        exponent = math.lcm(exponent, int(G.base.periods[g]))
    inv_exp = exponent - 1 if exponent - 1 >= 2 else 2 * exponent - 1

    b = SlpBuilder(is_group=False)
    inv_reg = {g: b.fresh() for g in sigma_min}   # later holds g^-1
    kreg = b.fresh()
    gbar = b.fresh()
    scratch = b.fresh()
    regs = [inv_reg[g] for g in sigma_min]

    # prefixes h_i = g_1 ... g_i parked in the future inverse slots
    b.load(regs[0], sigma_min[0])
    for i in range(1, s):
        b.load(scratch, sigma_min[i])
        b.mul(regs[i], regs[i - 1], scratch)
    # gbar = (g_1 ... g_s)^-1 via the group exponent
    b.fast_exp_into(gbar, regs[s - 1], inv_exp)
    # extract inverses, sweeping a suffix product from the right
    for i in range(s - 1, -1, -1):
        if i == s - 1:
            if s >= 2:
                b.mul(regs[i], gbar, regs[i - 1])
            else:
                inv_reg[sigma_min[0]] = gbar
        else:
            if i >= 1:
                b.mul(scratch, kreg, gbar)
                b.mul(regs[i], scratch, regs[i - 1])
            else:
                b.mul(regs[0], kreg, gbar)
        if i >= 1:
            if i == s - 1:
                b.load(kreg, sigma_min[i])
            else:
                b.load(scratch, sigma_min[i])
                b.mul(kreg, scratch, kreg)

    sigma_min_set = set(sigma_min)
    word_cache: dict[int, list[int]] = {}

    def word_over_min(g: int) -> list[int]:
        w = word_cache.get(g)
        if w is None:
            positions = shortest_word(G.base, sigma_min, g)
            if positions is None:
                raise InvalidProgramError(
                    f"generator {g} not expressible over the minimal subset"
                )
            w = [sigma_min[p] for p in positions]
            word_cache[g] = w
        return w

    state = _MirrorState(first_free=b._next_reg)
    state.pinned.update(inv_reg.values())

    for ins in prog.instructions:
        if ins[0] == "L":
            dst, g = ins[1], prog.alphabet[ins[2]]
            if g in sigma_min_set:
                p = state.writable_one(dst)
                b.load(p, g)
                state.rebind(dst, p, inv_reg[g])
            else:
                w = word_over_min(g)
                p, nreg = state.writable_pair(dst)
                b.load(p, w[0])
                for letter in w[1:]:
                    b.load(nreg, letter)
                    b.mul(p, p, nreg)
                rev = list(reversed(w))
                b.mul(nreg, inv_reg[rev[0]], inv_reg[rev[1]])
                for letter in rev[2:]:
                    b.mul(nreg, nreg, inv_reg[letter])
                state.rebind(dst, p, nreg)
        elif ins[0] == "M":
            dst, x, y = ins[1], ins[2], ins[3]
            px, nx = state.pos[x], state.neg[x]
            py, ny = state.pos[y], state.neg[y]
            p, nreg = state.writable_pair(dst)
            # INV aliasing can make the reused slot an operand of the twin
            # instruction; order the writes so no operand is clobbered first
            pos_hazard = p in (nx, ny)
            neg_hazard = nreg in (px, py)
            if pos_hazard and neg_hazard:
                p = state.free.pop() if state.free else state._alloc()
                pos_hazard = False
            if pos_hazard:
                b.mul(nreg, ny, nx)
                b.mul(p, px, py)
            else:
                b.mul(p, px, py)
                b.mul(nreg, ny, nx)
            state.rebind(dst, p, nreg)
        else:
            dst, x = ins[1], ins[2]
            state.rebind(dst, state.neg[x], state.pos[x])
    return b.finish(state.pos[prog.output])


def _sub_identity(G: GroupView, sub) -> int:
    for g in sub:
        if G.base.table[g, g] == g:
            ok = all(int(G.base.table[g, x]) == x for x in sub)
            if ok:
                return g
    raise InvalidProgramError("alphabet closure has no identity; not a subgroup")
