"""Reduction from an extension-by-nilpotent to its ideal.

If the target misses the ideal S^k it is a short product.  Otherwise the
ideal is generated by the values of generator words of length at most 2k - 1,
the inner strategy compresses inside the ideal over those values, and every
inner load is inlined with its witness word through one shared scratch
register (one extra register, factor 4k - 3 in length).
"""

from __future__ import annotations

from typing import Callable, Sequence

from ..errors import SlpforgeError, UnreachableError
from ..semigroup import Semigroup, closure, ideal_power, shortest_word, sub_semigroup
from ..slp import Slp, inline_subroutine
from .base import word_program

InnerStrategy = Callable[[Semigroup, list[int], int], Slp]


def ideal_generators(
    S: Semigroup, gens: Sequence[int], k: int
) -> list[tuple[int, list[int]]]:
    """Values of generator words of length <= 2k - 1 inside S^k, with their
    shortest (lex-least) witness words; their closure is all of S^k."""
    sk = ideal_power(S, k)
    discovered: dict[int, list[int]] = {}
    level: list[tuple[int, list[int]]] = []
    for g in gens:
        if g not in discovered:
            discovered[g] = [g]
            level.append((g, [g]))
    delta: list[tuple[int, list[int]]] = [
        (v, w) for v, w in level if v in sk
    ]
    table = S.table
    for _ in range(2 * k - 2):
        nxt: list[tuple[int, list[int]]] = []
        seen_this_level: set[int] = set()
        for val, w in level:
            for g in gens:
                p = int(table[val, g])
                if p in seen_this_level:
                    continue
                seen_this_level.add(p)
                pw = w + [g]
                nxt.append((p, pw))
                if p not in discovered:
                    discovered[p] = pw
                    if p in sk:
                        delta.append((p, pw))
        level = nxt
    vals = [v for v, _ in delta]
    if vals and closure(S, vals) != sk:
        raise SlpforgeError("short-word values do not generate the ideal")
    return delta


def nilpotent_peel(
    S: Semigroup,
    gens: Sequence[int],
    t: int,
    k: int,
    inner: InnerStrategy,
) -> Slp:
    """Peel the k-nilpotent layer off and defer to ``inner`` on the ideal."""
    sk = ideal_power(S, k)
    if t not in sk:
        word = shortest_word(S, gens, t)
        if word is None:
            raise UnreachableError(f"target {t} is not generated")
        if len(word) >= k:
            raise SlpforgeError("word of length >= k evaluated outside the ideal")
        return word_program([gens[i] for i in word])
    delta = ideal_generators(S, gens, k)
    sub, to_sub, to_parent = sub_semigroup(S, sk, name=f"{S.name}^({k})" if S.name else "")
    delta_sub = [int(to_sub[v]) for v, _ in delta]
    inner_prog = inner(sub, delta_sub, int(to_sub[t]))
    parent_alphabet = tuple(int(to_parent[v]) for v in inner_prog.alphabet)
    lifted = Slp(parent_alphabet, inner_prog.instructions, inner_prog.output)
    subs = {}
    by_value = {v: w for v, w in delta}
    for idx, val in enumerate(lifted.alphabet):
        word = by_value.get(val)
        if word is None:
            raise SlpforgeError(f"inner program loads a value {val} outside delta")
        if len(word) > 1:
            subs[idx] = word_program(word)
    if not subs:
        return lifted.canonical()
    return inline_subroutine(lifted, subs)
