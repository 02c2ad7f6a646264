"""Decomposition of a completely regular semigroup into a band of groups.

H-classes are computed from mutual left/right divisibility, verified to be
groups, and the class partition is verified to be a congruence.  The quotient
band must satisfy x^2 = x and uxyv = uyxv; anything else is reported as the
corresponding structural failure.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    BandNotNormalError,
    HNotCongruenceError,
    NotCompletelyRegularError,
)
from .groups import GroupView, group_view
from .identities import IDENTITY_BAND, IDENTITY_NORMAL_BAND, satisfies_identity
from .semigroup import Semigroup
from .sets import ElementSet


@dataclass(frozen=True)
class BandDecomposition:
    """S partitioned into disjoint subgroups indexed by a normal band."""

    semigroup: Semigroup
    band: Semigroup
    projection: np.ndarray
    idempotents: list[int]
    carriers: list[ElementSet]
    views: list[GroupView]

    @property
    def class_count(self) -> int:
        return self.band.n

    def class_of(self, x: int) -> int:
        return int(self.projection[x])


def _pack_rows(mat: np.ndarray) -> np.ndarray:
    return np.packbits(mat, axis=1)


def band_of_groups_decomposition(S: Semigroup, identity_budget: int = 10**8) -> BandDecomposition:
    """Split a completely regular S into subgroups over its H-class band."""
    if not S.is_completely_regular():
        base = np.arange(S.n, dtype=np.int64)
        bad = np.flatnonzero(S.table[S.omega_powers, base] != base)[0]
        raise NotCompletelyRegularError(
            f"element {int(bad)} has s^(w+1) != s; not a union of groups"
        )
    n, table = S.n, S.table
    lmat = np.zeros((n, n), dtype=bool)
    rmat = np.zeros((n, n), dtype=bool)
    rows = np.repeat(np.arange(n), n)
    lmat[rows, np.ascontiguousarray(table.T).ravel()] = True
    rmat[rows, table.ravel()] = True
    lmat[np.arange(n), np.arange(n)] = True
    rmat[np.arange(n), np.arange(n)] = True
    _, l_id = np.unique(_pack_rows(lmat), axis=0, return_inverse=True)
    _, r_id = np.unique(_pack_rows(rmat), axis=0, return_inverse=True)
    pair = l_id.astype(np.int64) * (r_id.max() + 1) + r_id
    _, h_id = np.unique(pair, return_inverse=True)

    # order classes by their minimum element
    reps_by_class: dict[int, int] = {}
    for x in range(n):
        c = int(h_id[x])
        if c not in reps_by_class:
            reps_by_class[c] = x
    order = sorted(reps_by_class, key=lambda c: reps_by_class[c])
    relabel = {old: new for new, old in enumerate(order)}
    cls = np.asarray([relabel[int(c)] for c in h_id], dtype=np.int64)
    m = len(order)
    reps = np.asarray([reps_by_class[c] for c in order], dtype=np.int64)

    carriers = [
        ElementSet.from_indices(n, np.flatnonzero(cls == i).tolist()) for i in range(m)
    ]
    views = []
    for i, carrier in enumerate(carriers):
        try:
            views.append(group_view(S, carrier))
        except Exception as exc:
            raise HNotCongruenceError(
                f"H-class of element {reps[i]} is not a group: {exc}"
            ) from exc

    prod_cls = cls[table.astype(np.int64)]
    repmap = reps[cls]
    collapsed = prod_cls[np.ix_(repmap, repmap)]
    if not np.array_equal(prod_cls, collapsed):
        a, b = np.argwhere(prod_cls != collapsed)[0]
        raise HNotCongruenceError(
            f"H is not a congruence: witness pair ({int(a)}, {int(b)})"
        )

    btable = cls[table[np.ix_(reps, reps)].astype(np.int64)]
    band = Semigroup.trusted(btable, name=f"{S.name}/H" if S.name else "")
    if not satisfies_identity(band, *IDENTITY_BAND, budget=identity_budget):
        raise BandNotNormalError("quotient is not idempotent")
    if not satisfies_identity(band, *IDENTITY_NORMAL_BAND, budget=identity_budget):
        raise BandNotNormalError("quotient band fails uxyv = uyxv")

    idempotents = [v.identity for v in views]
    return BandDecomposition(S, band, cls, idempotents, carriers, views)
