"""Strategy registry and the classify-then-dispatch entry point."""

from __future__ import annotations

from typing import Optional, Sequence

from ..classify import Config, classify
from ..errors import SlpforgeError, UnreachableError
from ..groups import group_view
from ..semigroup import Semigroup, closure, sub_semigroup
from ..slp import Slp, eliminate_inverses, verify
from .base import CompressionReport
from .bands import compress_normal_band
from .diameter import compress_bounded_diameter
from .general import compress_general
from .permutative import compress_permutative
from .reachability import compress_group_reachability
from .solvable import compress_group_solvable, compress_group_solvable_bounded

STRATEGIES = (
    "bounded-diameter",
    "permutative",
    "group-bsz",
    "group-solvable",
    "group-solvable-bw",
    "normal-band",
    "general",
    "auto",
)


def _run_strategy(
    S: Semigroup, gens: list[int], t: int, strategy: str, cfg: Config
) -> tuple[Slp, dict]:
    if strategy == "bounded-diameter":
        return compress_bounded_diameter(S, gens, t, D=cfg.diameter), {}
    if strategy == "permutative":
        return compress_permutative(S, gens, t, None, cfg), {}
    if strategy == "group-bsz":
        view = group_view(S)
        prog, state = compress_group_reachability(view, gens, t)
        extras = {
            "rounds": state.rounds,
            "group_slp_width": prog.width,
            "group_slp_length": prog.length,
            "doubling_log": list(state.doubling_log),
        }
        return eliminate_inverses(view, prog), extras
    if strategy == "group-solvable":
        view = group_view(S)
        prog, delta, chain = compress_group_solvable(view, gens, t, cfg)
        return prog, {"delta_size": len(delta.records), "derived_length": chain.length}
    if strategy == "group-solvable-bw":
        view = group_view(S)
        prog, pcs = compress_group_solvable_bounded(view, gens, t, cfg)
        return prog, {"chain_length": len(pcs.chain_indices)}
    if strategy == "normal-band":
        bc = compress_normal_band(S, gens, t, cfg.group_strategy, cfg.band_mode, cfg)
        return bc.slp, {
            "group_width": bc.group_width,
            "group_length": bc.group_length,
            "alpha": bc.alpha,
        }
    if strategy == "general":
        gc = compress_general(S, gens, t, cfg, cfg.group_strategy, cfg.band_mode)
        extras = {"peel_level": gc.peel_level}
        if gc.group_width is not None:
            extras["group_width"] = gc.group_width
        return gc.slp, extras
    raise ValueError(f"unknown strategy {strategy!r}")


def compress(
    S: Semigroup,
    gens: Sequence[int],
    t: int,
    strategy: str = "auto",
    config: Optional[Config] = None,
) -> CompressionReport:
    """Compress t over gens with the named strategy; 'auto' dispatches.

    Work happens inside the generated subsemigroup, so identities verified by
    the classifier hold exactly where the program lives.
    """
    cfg = config or Config()
    gens = [int(g) for g in gens]
    members = closure(S, gens)
    if t not in members:
        raise UnreachableError(f"target {t} is outside the generated subsemigroup")
    if members.cardinality != S.n:
        sub, to_sub, to_parent = sub_semigroup(S, members, name="<gens>")
        inner = compress(
            sub, [int(to_sub[g]) for g in gens], int(to_sub[t]), strategy, cfg
        )
        prog = Slp(
            tuple(int(to_parent[v]) for v in inner.slp.alphabet),
            inner.slp.instructions,
            inner.slp.output,
        )
        report = verify(S, prog, t, inner.strategy)
        if not report.verified:
            raise SlpforgeError("lifted program failed verification")
        return CompressionReport(
            inner.strategy, prog, prog.length, prog.width, True, t, inner.extras
        )

    extras: dict = {}
    if strategy == "auto":
        cls = classify(S, gens, cfg)
        chosen = cls.recommended
        try:
            slp, extras = _run_strategy(S, gens, t, chosen, cfg)
        except SlpforgeError:
            if chosen == "bounded-diameter":
                raise
            chosen = "bounded-diameter"
            slp, extras = _run_strategy(S, gens, t, chosen, cfg)
            extras["fallback"] = True
        extras["classified"] = cls.recommended
    else:
        chosen = strategy
        slp, extras = _run_strategy(S, gens, t, strategy, cfg)
    report = verify(S, slp, t, chosen)
    return CompressionReport(
        chosen, slp, report.length, report.width, report.verified, t, extras
    )
