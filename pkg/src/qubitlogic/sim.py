"""Levelized simulation by address: M(out) = Q[M(in_1) * ... * M(in_k)].

The modeling vector M holds one state per line.  Before a pattern every line
is undefined; inputs are loaded from the pattern, then levels are processed
in ascending order and each primitive costs exactly one Q-vector read.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Sequence

from .circuit import Circuit
from .errors import InternalInvariantViolation, InvalidPattern, ParseError, SemanticError
from .qcore import AccessCounter, bits_of

U = None  # undefined line state


@dataclass(frozen=True)
class PatternSet:
    inputs: tuple[str, ...]
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "inputs", tuple(self.inputs))
        rows = tuple(tuple(r) for r in self.rows)
        for n, r in enumerate(rows):
            if len(r) != len(self.inputs):
                raise InvalidPattern(
                    f"pattern {n} has {len(r)} bits, header names {len(self.inputs)} inputs"
                )
        object.__setattr__(self, "rows", rows)

    def __len__(self):
        return len(self.rows)


def exhaustive_patterns(c: Circuit) -> PatternSet:
    n = len(c.inputs)
    return PatternSet(c.inputs, tuple(bits_of(a, n) for a in range(1 << n)))


def parse_patterns(text: str, source: str | None = None) -> PatternSet:
    header = None
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if header is None:
            toks = line.split()
            if toks[0] != "patterns":
                raise ParseError("expected 'patterns <in1> <in2> ...'", lineno, 1, source)
            header = toks[1:]
            continue
        m = re.search(r"[^01]", line)
        if m:
            raise ParseError(
                f"pattern rows are 0/1 characters, got {m.group()!r}",
                lineno, raw.index(line) + m.start() + 1, source,
            )
        if len(line) != len(header):
            raise InvalidPattern(
                f"pattern has {len(line)} bits, header names {len(header)} inputs",
                lineno, None, source,
            )
        rows.append(tuple(int(ch) for ch in line))
    if header is None:
        raise ParseError("missing 'patterns' header", source=source)
    return PatternSet(tuple(header), tuple(rows))


def format_patterns(p: PatternSet) -> str:
    return "".join(
        ["patterns " + " ".join(p.inputs) + "\n"] + ["".join(map(str, r)) + "\n" for r in p.rows]
    )


def align_patterns(inputs: Sequence[str], p: PatternSet) -> list[tuple[int, ...]]:
    """Rows of ``p`` reordered to match ``inputs``; the header may be any permutation."""
    inputs = tuple(inputs)
    known = set(inputs)
    for x in p.inputs:
        if x not in known:
            raise SemanticError(f"pattern header names unknown input {x}")
    if len(set(p.inputs)) != len(p.inputs):
        raise SemanticError("pattern header repeats an input")
    missing = [x for x in inputs if x not in set(p.inputs)]
    if missing:
        raise SemanticError(f"pattern header lacks input {missing[0]}")
    if p.inputs == inputs:
        return list(p.rows)
    pos = [p.inputs.index(x) for x in inputs]
    return [tuple(r[i] for i in pos) for r in p.rows]


@dataclass(frozen=True)
class OutputTable:
    outputs: tuple[str, ...]
    rows: tuple[tuple[str, tuple[int, ...]], ...]

    def __len__(self):
        return len(self.rows)

    def format(self) -> str:
        return "".join(
            f"{pat} : " + " ".join(f"{o}={b}" for o, b in zip(self.outputs, bits)) + "\n"
            for pat, bits in self.rows
        )


@dataclass(frozen=True)
class _Compiled:
    names: tuple[str, ...]
    n_inputs: int
    ops: tuple  # (primitive index, q, input slots, output slot) in level order
    levels: tuple  # slices of ops per level


def compile_circuit(c: Circuit) -> _Compiled:
    order = c.level_order()
    names = c.inputs + tuple(c.primitives[i].output for i in order)
    slot = {x: k for k, x in enumerate(names)}
    ops = tuple(
        (i, c.primitives[i].q, tuple(slot[x] for x in c.primitives[i].inputs), slot[c.primitives[i].output])
        for i in order
    )
    levels, start = [], 0
    for lvl in c.levels:
        levels.append((start, start + len(lvl)))
        start += len(lvl)
    return _Compiled(names, len(c.inputs), ops, tuple(levels))


def _run(cc: _Compiled, pattern, counter, rng):
    m = [U] * len(cc.names)
    m[: cc.n_inputs] = pattern
    for lo, hi in cc.levels:
        ops = cc.ops[lo:hi]
        if rng is not None:
            ops = list(ops)
            rng.shuffle(ops)
        for i, q, ins, out in ops:
            a = 0
            for s in ins:
                v = m[s]
                if v is U:
                    raise InternalInvariantViolation(
                        f"primitive {cc.names[out]} read undefined line {cc.names[s]}"
                    )
                a = (a << 1) | v
            m[out] = q.read(a, counter)
    return m


def simulate_pattern(
    c: Circuit,
    inputs: Sequence[int],
    counter: AccessCounter | None = None,
    shuffle: random.Random | None = None,
) -> dict[str, int]:
    """The modeling vector for one input pattern, keyed by line name.

    ``shuffle`` permutes evaluation order inside each level; results must not
    depend on it.
    """
    if len(inputs) != len(c.inputs):
        raise InvalidPattern(f"circuit has {len(c.inputs)} inputs, pattern has {len(inputs)} bits")
    cc = compile_circuit(c)
    m = _run(cc, tuple(inputs), counter, shuffle)
    return dict(zip(cc.names, m))


def simulate_batch(
    c: Circuit,
    p: PatternSet,
    counter: AccessCounter | None = None,
    modeling: list | None = None,
) -> OutputTable:
    """One output row per pattern; M is reset between patterns.

    When ``modeling`` is a list, each pattern's full modeling vector is
    appended to it.
    """
    rows = align_patterns(c.inputs, p)
    cc = compile_circuit(c)
    slot = {x: k for k, x in enumerate(cc.names)}
    outs = c.output_lines
    out_slots = [slot[x] for x in outs]
    table = []
    for given, row in zip(p.rows, rows):
        m = _run(cc, row, counter, None)
        if modeling is not None:
            modeling.append(dict(zip(cc.names, m)))
        table.append(("".join(map(str, given)), tuple(m[s] for s in out_slots)))
    return OutputTable(outs, tuple(table))


def format_modeling(m: dict[str, int]) -> str:
    return " ".join(f"{x}={v}" for x, v in m.items())
