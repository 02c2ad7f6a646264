"""Width-2 compression for structures of bounded diameter."""

from __future__ import annotations

from typing import Optional, Sequence

from ..errors import DiameterExceededError
from ..semigroup import Semigroup, shortest_word
from ..slp import Slp
from .base import word_program


def compress_bounded_diameter(
    S: Semigroup, gens: Sequence[int], t: int, D: Optional[int] = None
) -> Slp:
    """Left-to-right product of the shortest generator word, capped at D."""
    if D is None:
        D = S.n
    word = shortest_word(S, gens, t)
    if word is None:
        raise DiameterExceededError(f"target {t} not generated by the given set")
    if len(word) > D:
        raise DiameterExceededError(
            f"shortest word has length {len(word)} > diameter bound {D}"
        )
    return word_program([gens[i] for i in word])
