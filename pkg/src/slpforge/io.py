"""Text formats: .cay Cayley tables (with generator/target sidecars) and
.slp straight-line programs.  Writers emit one canonical layout so that a
write/read/write cycle is byte-identical.
"""

from __future__ import annotations

import io
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np

from .errors import FormatError
from .semigroup import Semigroup, validate_table
from .slp import Slp

PathLike = Union[str, Path]


def dump_cay(
    S: Semigroup,
    gens: Optional[Sequence[int]] = None,
    target: Optional[int] = None,
) -> str:
    out = io.StringIO()
    out.write(f"CAYLEY {S.n}\n")
    if S.name:
        out.write(f"# NAME {S.name}\n")
    if gens is not None:
        out.write("# GENS " + " ".join(str(int(g)) for g in gens) + "\n")
    if target is not None:
        out.write(f"# TARGET {int(target)}\n")
    for row in S.table:
        out.write(" ".join(str(int(x)) for x in row) + "\n")
    return out.getvalue()


def write_cay(
    path: PathLike,
    S: Semigroup,
    gens: Optional[Sequence[int]] = None,
    target: Optional[int] = None,
) -> None:
    Path(path).write_text(dump_cay(S, gens, target))


def parse_cay(text: str) -> tuple[Semigroup, Optional[list[int]], Optional[int]]:
    gens: Optional[list[int]] = None
    target: Optional[int] = None
    name = ""
    rows: list[list[int]] = []
    n: Optional[int] = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("GENS"):
                gens = [int(x) for x in body.split()[1:]]
            elif body.startswith("TARGET"):
                target = int(body.split()[1])
            elif body.startswith("NAME"):
                name = body[4:].strip()
            continue
        if n is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "CAYLEY":
                raise FormatError(f"line {lineno}: expected 'CAYLEY <n>'")
            n = int(parts[1])
            continue
        try:
            row = [int(x) for x in line.split()]
        except ValueError as exc:
            raise FormatError(f"line {lineno}: bad table row") from exc
        if len(row) != n:
            raise FormatError(f"line {lineno}: row has {len(row)} entries, expected {n}")
        rows.append(row)
    if n is None:
        raise FormatError("missing CAYLEY header")
    if len(rows) != n:
        raise FormatError(f"expected {n} rows, found {len(rows)}")
    S = validate_table(np.asarray(rows, dtype=np.int64), name=name, gens_hint=gens)
    return S, gens, target


def read_cay(path: PathLike) -> tuple[Semigroup, Optional[list[int]], Optional[int]]:
    return parse_cay(Path(path).read_text())


def dump_slp(prog: Slp) -> str:
    prog = prog.canonical()
    out = io.StringIO()
    out.write("SLP\n")
    out.write("A " + " ".join(str(int(v)) for v in prog.alphabet) + "\n")
    for ins in prog.instructions:
        if ins[0] == "L":
            out.write(f"L {ins[1]} {ins[2]}\n")
        elif ins[0] == "M":
            out.write(f"M {ins[1]} {ins[2]} {ins[3]}\n")
        else:
            out.write(f"I {ins[1]} {ins[2]}\n")
    out.write(f"O {prog.output}\n")
    return out.getvalue()


def write_slp(path: PathLike, prog: Slp) -> None:
    Path(path).write_text(dump_slp(prog))


def parse_slp(text: str) -> Slp:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    if not lines or lines[0] != "SLP":
        raise FormatError("missing SLP header")
    if len(lines) < 3 or not lines[1].startswith("A"):
        raise FormatError("missing alphabet line")
    alphabet = tuple(int(x) for x in lines[1].split()[1:])
    instrs: list[tuple] = []
    output: Optional[int] = None
    has_inv = False
    for ln in lines[2:]:
        parts = ln.split()
        try:
            if parts[0] == "L" and len(parts) == 3:
                instrs.append(("L", int(parts[1]), int(parts[2])))
            elif parts[0] == "M" and len(parts) == 4:
                instrs.append(("M", int(parts[1]), int(parts[2]), int(parts[3])))
            elif parts[0] == "I" and len(parts) == 3:
                instrs.append(("I", int(parts[1]), int(parts[2])))
                has_inv = True
            elif parts[0] == "O" and len(parts) == 2:
                output = int(parts[1])
            else:
                raise FormatError(f"bad instruction line: {ln!r}")
        except ValueError as exc:
            raise FormatError(f"bad instruction line: {ln!r}") from exc
    if output is None:
        raise FormatError("missing output line")
    return Slp(alphabet, tuple(instrs), output, is_group=has_inv)


def read_slp(path: PathLike) -> Slp:
    return parse_slp(Path(path).read_text())
