"""Uniform entry point for the group strategies, returning ordinary SLPs."""

from __future__ import annotations

from typing import Optional, Sequence

from ..classify import Config
from ..groups import GroupView, derived_series
from ..slp import Slp, eliminate_inverses
from .reachability import compress_group_reachability
from .solvable import compress_group_solvable, compress_group_solvable_bounded

GROUP_STRATEGIES = ("auto", "bsz", "solvable", "solvable-bw")


def group_compress(
    view: GroupView,
    gens: Sequence[int],
    t: int,
    strategy: str = "auto",
    config: Optional[Config] = None,
) -> Slp:
    """Compress t over gens inside the given group, without INV instructions."""
    if strategy == "auto":
        strategy = (
            "solvable-bw" if derived_series(view).is_trivial_terminal else "bsz"
        )
    if strategy == "bsz":
        prog, _ = compress_group_reachability(view, gens, t)
        return eliminate_inverses(view, prog)
    if strategy == "solvable":
        prog, _, _ = compress_group_solvable(view, gens, t, config)
        return prog
    if strategy == "solvable-bw":
        prog, _ = compress_group_solvable_bounded(view, gens, t, config)
        return prog
    raise ValueError(f"unknown group strategy {strategy!r}")
