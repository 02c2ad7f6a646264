"""Omega-terms and exhaustive identity checking.

A term is a sequence of factors over variables x0..x(m-1); a factor is either
a variable or a parenthesised subterm raised to omega or omega+1.  The
distinguished constant ZERO may stand as a whole identity side: ``w ~ 0``
holds iff the semigroup has a zero element and every substitution of w
evaluates to it.

Checking substitutes all n^m assignments (vectorised in chunks), guarded by a
budget so a 4-variable identity on a large table fails loudly instead of
running for hours.
"""

from __future__ import annotations

from typing import Optional, Union

import numpy as np

from .errors import BudgetExceededError
from .semigroup import Semigroup

OMEGA = "w"
OMEGA_PLUS_ONE = "w+1"

DEFAULT_BUDGET = 10**8
_CHUNK = 1 << 20


class OmegaTerm:
    """Formal product of variables and omega-powered subterms."""

    __slots__ = ("factors",)

    def __init__(self, factors: tuple):
        if not factors:
            raise ValueError("a term must have at least one factor")
        self.factors = factors

    @classmethod
    def var(cls, i: int) -> "OmegaTerm":
        return cls((("var", i),))

    @classmethod
    def word(cls, *indices: int) -> "OmegaTerm":
        return cls(tuple(("var", i) for i in indices))

    def __mul__(self, other: "OmegaTerm") -> "OmegaTerm":
        return OmegaTerm(self.factors + other.factors)

    def omega(self) -> "OmegaTerm":
        return OmegaTerm((("pow", self, OMEGA),))

    def omega_plus_one(self) -> "OmegaTerm":
        return OmegaTerm((("pow", self, OMEGA_PLUS_ONE),))

    def variables(self) -> set[int]:
        out: set[int] = set()
        for f in self.factors:
            if f[0] == "var":
                out.add(f[1])
            else:
                out |= f[1].variables()
        return out

    def evaluate(self, S: Semigroup, assignment) -> int:
        """Value under a concrete assignment (sequence indexed by variable)."""
        arr = self._eval_vec(S, {i: np.array([assignment[i]]) for i in self.variables()})
        return int(arr[0])

    def _eval_vec(self, S: Semigroup, cols: dict[int, np.ndarray]) -> np.ndarray:
        table = S.table
        acc: Optional[np.ndarray] = None
        for f in self.factors:
            if f[0] == "var":
                val = cols[f[1]]
            else:
                sub = f[1]._eval_vec(S, cols)
                om = S.omega_powers[sub]
                val = om if f[2] == OMEGA else table[om, sub].astype(np.int64)
            acc = val if acc is None else table[acc, val].astype(np.int64)
        return acc

    def __repr__(self) -> str:
        parts = []
        for f in self.factors:
            if f[0] == "var":
                parts.append(f"x{f[1]}")
            else:
                suffix = "^w" if f[2] == OMEGA else "^(w+1)"
                parts.append(f"({f[1]!r}){suffix}")
        return " ".join(parts)


class _Zero:
    def __repr__(self):
        return "ZERO"


ZERO = _Zero()

Side = Union[OmegaTerm, _Zero]


def satisfies_identity(
    S: Semigroup,
    lhs: Side,
    rhs: Side,
    budget: int = DEFAULT_BUDGET,
) -> bool:
    """Exhaustively check lhs ~ rhs on S.

    Variables must be indexed contiguously from 0.  Raises
    BudgetExceededError when n^m substitutions exceed the budget.
    """
    if isinstance(lhs, _Zero) and isinstance(rhs, _Zero):
        return S.zero_element() is not None
    if isinstance(lhs, _Zero):
        lhs, rhs = rhs, lhs
    vars_used = lhs.variables() | (rhs.variables() if isinstance(rhs, OmegaTerm) else set())
    m = max(vars_used) + 1 if vars_used else 0
    if vars_used != set(range(m)):
        raise ValueError("variables must be indexed contiguously from 0")
    n = S.n
    total = n**m
    if total > budget:
        raise BudgetExceededError(f"{total} substitutions exceed budget {budget}")
    zero = S.zero_element() if isinstance(rhs, _Zero) else None
    if isinstance(rhs, _Zero) and zero is None:
        return False
    for start in range(0, total, _CHUNK):
        stop = min(start + _CHUNK, total)
        flat = np.arange(start, stop, dtype=np.int64)
        cols: dict[int, np.ndarray] = {}
        rem = flat
        for v in range(m - 1, -1, -1):
            cols[v] = rem % n
            rem = rem // n
        lv = lhs._eval_vec(S, cols)
        if isinstance(rhs, _Zero):
            if not (lv == zero).all():
                return False
        else:
            rv = rhs._eval_vec(S, cols)
            if not np.array_equal(lv, rv):
                return False
    return True


# Canned identities used throughout the zoo and the classifier.
_x, _y, _z = OmegaTerm.var(0), OmegaTerm.var(1), OmegaTerm.var(2)
_a, _p, _q, _b = (OmegaTerm.var(i) for i in range(4))

IDENTITY_BAND = (_x * _x, _x)
IDENTITY_COMMUTATIVE = (_x * _y, _y * _x)
IDENTITY_LRB = (_x * _y * _x, _x * _y)
IDENTITY_RRB = (_x * _y * _x, _y * _x)
IDENTITY_RECTANGULAR = (_x * _y * _z, _x * _z)
IDENTITY_NORMAL_BAND = (_a * _p * _q * _b, _a * _q * _p * _b)
IDENTITY_COMPLETELY_REGULAR = (_x.omega_plus_one(), _x)
IDENTITY_SANDWICH = (_x * _y * _z, _x * _y.omega_plus_one() * _z)
