"""End-to-end pipeline for extensions of almost-completely-regular ideals.

Eligibility: some ideal power S^k satisfies the sandwich identity
xyz = x y^(w+1) z and has a product-closed set of completely regular
elements.  The nilpotent layer is peeled off; inside the ideal the witness
word u s_1 .. s_m v is compressed by mapping the middle letters to their
omega-plus-one powers (landing in a normal band of groups), compressing
there, and rewriting every leaf load back to the original letter, which the
sandwich identity proves harmless once u and v are re-attached.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from ..classify import Config, sandwich_ideal_level
from ..errors import NotEligibleError, UnreachableError
from ..semigroup import Semigroup, closure, shortest_word, sub_semigroup
from ..slp import Slp, SlpBuilder, evaluate
from .base import word_program
from .bands import BandCompression, compress_normal_band
from .peel import nilpotent_peel


@dataclass
class GeneralCompression:
    slp: Slp
    peel_level: int
    group_width: Optional[int]
    band: Optional[BandCompression]
    # three-way split diagnostics (None when the word was too short to split)
    left: Optional[int] = None
    right: Optional[int] = None
    tilde_value: Optional[int] = None


def compress_general(
    S: Semigroup,
    gens: Sequence[int],
    t: int,
    config: Optional[Config] = None,
    group_strategy: str = "auto",
    mode: str = "wide",
) -> GeneralCompression:
    cfg = config or Config()
    k = sandwich_ideal_level(S, cfg.kmax, cfg.scan_budget)
    if k is None:
        raise NotEligibleError(
            f"no ideal power up to {cfg.kmax} satisfies the sandwich identity"
        )
    info: dict = {}

    def inner(sub: Semigroup, delta: list[int], t_sub: int) -> Slp:
        prog, band, split = _compress_sandwich(sub, delta, t_sub, group_strategy, mode, cfg)
        info["band"] = band
        info["split"] = split
        return prog

    slp = nilpotent_peel(S, gens, t, k, inner)
    band = info.get("band")
    split = info.get("split") or (None, None, None)
    return GeneralCompression(
        slp,
        k,
        band.group_width if band is not None else None,
        band,
        left=split[0],
        right=split[1],
        tilde_value=split[2],
    )


def _compress_sandwich(
    S: Semigroup,
    gens: Sequence[int],
    t: int,
    group_strategy: str,
    mode: str,
    cfg: Config,
) -> tuple[Slp, Optional[BandCompression], Optional[tuple]]:
    """Inside the sandwich-identity ideal: three-way split and leaf rewrite."""
    word = shortest_word(S, gens, t)
    if word is None:
        raise UnreachableError(f"target {t} is not generated inside the ideal")
    letters = [gens[i] for i in word]
    if len(letters) <= 2:
        return word_program(letters), None, None
    u, mid, v = letters[0], letters[1:-1], letters[-1]

    tilde = [S.omega_plus_one(s) for s in mid]
    tilde_gens: list[int] = []
    preimage: dict[int, int] = {}
    for s, ts in zip(mid, tilde):
        if ts not in preimage:
            preimage[ts] = s
            tilde_gens.append(ts)
    t_tilde = S.word_value(tilde)

    members = closure(S, tilde_gens)
    sub, to_sub, to_parent = sub_semigroup(S, members, name="S~")
    band = compress_normal_band(
        sub,
        [int(to_sub[g]) for g in tilde_gens],
        int(to_sub[t_tilde]),
        group_strategy=group_strategy,
        mode=mode,
        config=cfg,
    )
    tilde_prog = band.slp
    rewritten_alphabet = tuple(
        preimage[int(to_parent[a])] for a in tilde_prog.alphabet
    )
    rewritten = Slp(rewritten_alphabet, tilde_prog.instructions, tilde_prog.output)

    b = SlpBuilder()
    ren = {r: i for i, r in enumerate(rewritten.registers())}
    for ins in rewritten.instructions:
        if ins[0] == "L":
            b.load(ren[ins[1]], rewritten.alphabet[ins[2]])
        else:
            b.mul(ren[ins[1]], ren[ins[2]], ren[ins[3]])
    out = ren[rewritten.output]
    aux = next((r for r in ren.values() if r != out), len(ren))
    b.load(aux, u)
    b.mul(out, aux, out)
    b.load(aux, v)
    b.mul(out, out, aux)
    slp = b.finish(out)
    if evaluate(S, slp).output_value != t:
        raise NotEligibleError("leaf substitution changed the target value")
    return slp, band, (u, v, t_tilde)
