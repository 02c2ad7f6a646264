"""Compression through a normal band-of-groups decomposition.

The class idempotent e_a is produced by lifting a width-2 program for the
class index in the quotient band (a normal band is permutative) and raising
the lift to its idempotent power.  The group part runs over the generators
e_a s e_a with s a product of at most two input generators lying J-above e_a.
Wide mode pins e_a in a register and expands each group load with one helper
register; narrow mode spends only one extra register and recomputes e_a by
exponentiating a live group value whenever it had to be overwritten.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from ..classify import Config
from ..decomposition import BandDecomposition, band_of_groups_decomposition
from ..errors import DecompositionFailedError, SlpforgeError
from ..groups import extract_group
from ..semigroup import Semigroup, closure
from ..slp import Slp, SlpBuilder, evaluate
from .groupdispatch import group_compress
from .permutative import compress_permutative


@dataclass
class BandCompression:
    slp: Slp
    alpha: int
    group_width: int
    group_length: int
    sigma_alpha: list[int]
    decomposition: BandDecomposition


def class_generators(
    S: Semigroup, decomp: BandDecomposition, gens: Sequence[int], alpha: int
) -> tuple[list[int], list[tuple[int, ...]]]:
    """Values e_a s e_a for s in Sigma^(<=2) with s J-above e_a, plus witnesses."""
    e = decomp.idempotents[alpha]
    table = S.table
    out_vals: list[int] = []
    witnesses: list[tuple[int, ...]] = []
    seen: set[int] = set()
    candidates: list[tuple[tuple[int, ...], int]] = []
    for g in gens:
        candidates.append(((g,), g))
    for g1 in gens:
        for g2 in gens:
            candidates.append(((g1, g2), int(table[g1, g2])))
    for wit, val in candidates:
        if e not in S.j_downset(val):
            continue
        sval = int(table[int(table[e, val]), e])
        if sval in seen:
            continue
        seen.add(sval)
        if sval not in decomp.carriers[alpha]:
            raise SlpforgeError("e_a s e_a escaped its class; decomposition bug")
        out_vals.append(sval)
        witnesses.append(wit)
    return out_vals, witnesses


def compress_normal_band(
    S: Semigroup,
    gens: Sequence[int],
    t: int,
    group_strategy: str = "auto",
    mode: str = "wide",
    config: Optional[Config] = None,
) -> BandCompression:
    if mode not in ("wide", "narrow"):
        raise ValueError("mode must be 'wide' or 'narrow'")
    gens = [int(g) for g in gens]
    decomp = band_of_groups_decomposition(S)
    alpha = decomp.class_of(t)
    B = decomp.band

    rep: dict[int, int] = {}
    bgens: list[int] = []
    for g in gens:
        bv = decomp.class_of(g)
        if bv not in rep:
            rep[bv] = g
            bgens.append(bv)
    kstar_b = 0 if np.array_equal(B.table, B.table.T) else 1
    bprog = compress_permutative(B, bgens, alpha, kstar=kstar_b)
    lift = Slp(tuple(rep[bv] for bv in bprog.alphabet), bprog.instructions, bprog.output)
    t_alpha = evaluate(S, lift).output_value
    e_alpha = S.omega_power(t_alpha)
    if e_alpha != decomp.idempotents[alpha]:
        raise SlpforgeError("lifted band program landed in the wrong class")

    sigma_alpha, witnesses = class_generators(S, decomp, gens, alpha)
    carrier = decomp.carriers[alpha]
    if closure(S, sigma_alpha) != carrier:
        raise SlpforgeError("class generators do not generate the class group")

    sub, view, to_sub, to_parent = extract_group(S, carrier, name="S_alpha")
    gsub = [int(to_sub[v]) for v in sigma_alpha]
    gprog = group_compress(view, gsub, int(to_sub[t]), group_strategy, config)
    gparent = Slp(
        tuple(int(to_parent[v]) for v in gprog.alphabet),
        gprog.instructions,
        gprog.output,
        is_group=False,
    )
    witness_of = {v: w for v, w in zip(sigma_alpha, witnesses)}

    b = SlpBuilder()
    r_e = b.fresh()
    aux = b.fresh() if mode == "wide" else None
    base = b._next_reg

    lift_ren = {r: base + i for i, r in enumerate(lift.registers())}
    for ins in lift.instructions:
        if ins[0] == "L":
            b.load(lift_ren[ins[1]], lift.alphabet[ins[2]])
        else:
            b.mul(lift_ren[ins[1]], lift_ren[ins[2]], lift_ren[ins[3]])
    om_exp = int(S.omega_exponents[t_alpha])
    if om_exp >= 2:
        b.fast_exp_into(r_e, lift_ren[lift.output], om_exp)
    else:
        b.mul(r_e, lift_ren[lift.output], lift_ren[lift.output])

    gren = {r: base + i for i, r in enumerate(gparent.registers())}
    live_vals: dict[int, int] = {}
    table = S.table
    for ins in gparent.instructions:
        if ins[0] == "M":
            dst, a_, b_ = gren[ins[1]], gren[ins[2]], gren[ins[3]]
            b.mul(dst, a_, b_)
            live_vals[dst] = int(table[live_vals[a_], live_vals[b_]])
            continue
        dst = gren[ins[1]]
        sval = gparent.alphabet[ins[2]]
        wit = witness_of[sval]
        if mode == "wide":
            b.load(dst, wit[0])
            b.mul(dst, r_e, dst)
            if len(wit) == 2:
                b.load(aux, wit[1])
                b.mul(dst, dst, aux)
            b.mul(dst, dst, r_e)
        else:
            if len(wit) == 1:
                b.load(dst, wit[0])
                b.mul(dst, r_e, dst)
                b.mul(dst, dst, r_e)
            else:
                helper = None
                for r in gren.values():
                    if r != dst and r not in live_vals:
                        helper = r
                        break
                if helper is not None:
                    b.load(dst, wit[0])
                    b.mul(dst, r_e, dst)
                    b.load(helper, wit[1])
                    b.mul(dst, dst, helper)
                    b.mul(dst, dst, r_e)
                else:
                    b.load(dst, wit[0])
                    b.mul(dst, r_e, dst)
                    b.load(r_e, wit[1])
                    b.mul(dst, dst, r_e)
                    donor = min(r for r in live_vals if r != dst)
                    d_exp = int(S.omega_exponents[live_vals[donor]])
                    if d_exp >= 2:
                        b.fast_exp_into(r_e, donor, d_exp)
                    else:
                        b.mul(r_e, donor, donor)
                    b.mul(dst, dst, r_e)
        live_vals[dst] = sval
    out = gren[gparent.output]
    slp = b.finish(out)
    trace = evaluate(S, slp)
    if trace.output_value != t:
        raise DecompositionFailedError("band splice produced a wrong value")
    return BandCompression(
        slp, alpha, gprog.width, gprog.length, sigma_alpha, decomp
    )
