"""Netlists of Q-vector primitives.

Text format, one statement per line, ``#`` comments to end of line::

    inputs 1 2 3 4 5 6
    gate A 1      1 2      # output A, AND (decimal id 1), inputs 1 and 2
    gate 8 0b0111 A 7      # OR written as a binary literal
    outputs B C

``gate <out> <q-literal> <in>...``.  A bare decimal literal takes its arity
from the number of inputs.  ``inputs`` must come first and ``outputs``, when
present, last.  Without an ``outputs`` line every line that drives no
primitive is an output.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, replace
from typing import Sequence

from .errors import CyclicCircuit, InvalidArity, InvalidFunctionNumber, ParseError, SemanticError
from .qcore import QVector, format_qliteral, parse_qliteral

_NAME_RE = re.compile(r"[A-Za-z0-9_]+$")


@dataclass(frozen=True)
class Primitive:
    output: str
    inputs: tuple[str, ...]
    q: QVector

    def __post_init__(self):
        object.__setattr__(self, "inputs", tuple(self.inputs))


@dataclass(frozen=True)
class Diagnostic:
    kind: str
    line: str
    message: str

    def __str__(self):
        return self.message


@dataclass(frozen=True)
class Circuit:
    inputs: tuple[str, ...]
    primitives: tuple[Primitive, ...]
    outputs: tuple[str, ...] | None = None
    levels: tuple[tuple[int, ...], ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "inputs", tuple(self.inputs))
        object.__setattr__(self, "primitives", tuple(self.primitives))
        if self.outputs is not None:
            object.__setattr__(self, "outputs", tuple(self.outputs))

    @property
    def output_lines(self) -> tuple[str, ...]:
        if self.outputs is not None:
            return self.outputs
        used = {x for p in self.primitives for x in p.inputs}
        return tuple(n for n in self.lines if n not in used)

    @property
    def lines(self) -> tuple[str, ...]:
        """Inputs in declaration order, then primitive outputs in declaration order."""
        return self.inputs + tuple(p.output for p in self.primitives)

    def driver(self, line: str) -> int | None:
        for i, p in enumerate(self.primitives):
            if p.output == line:
                return i
        return None

    def level_order(self) -> list[int]:
        if self.levels is None:
            raise SemanticError("circuit is not levelized")
        return [i for lvl in self.levels for i in lvl]

    def ranks(self) -> dict[str, int]:
        """Rank of every line: 0 for inputs, level number (1-based) for primitive outputs."""
        r = {x: 0 for x in self.inputs}
        for n, lvl in enumerate(self.levels or (), 1):
            for i in lvl:
                r[self.primitives[i].output] = n
        return r


def validate(c: Circuit) -> list[Diagnostic]:
    """Every semantic violation in ``c``; an empty list means valid.

    Cycles are reported once, with the lines of one cycle.
    """
    diags = []
    seen = set()
    for x in c.inputs:
        if not _NAME_RE.match(x):
            diags.append(Diagnostic("bad-name", x, f"invalid line name {x!r}"))
        if x in seen:
            diags.append(Diagnostic("duplicate-line", x, f"input {x} declared twice"))
        seen.add(x)
    inputs = set(c.inputs)
    drivers: dict[str, int] = {}
    for p in c.primitives:
        if not _NAME_RE.match(p.output):
            diags.append(Diagnostic("bad-name", p.output, f"invalid line name {p.output!r}"))
        if p.output in inputs:
            diags.append(
                Diagnostic("driven-input", p.output, f"external input {p.output} is driven by a gate")
            )
        elif p.output in drivers:
            diags.append(
                Diagnostic("duplicate-driver", p.output, f"line {p.output} has more than one driver")
            )
        drivers.setdefault(p.output, 0)
        drivers[p.output] += 1
    declared = inputs | set(drivers)
    for p in c.primitives:
        if len(p.inputs) != p.q.arity:
            diags.append(
                Diagnostic(
                    "arity-mismatch",
                    p.output,
                    f"gate {p.output} has {len(p.inputs)} inputs but a Q-vector of arity {p.q.arity}",
                )
            )
        for x in p.inputs:
            if x not in declared:
                diags.append(
                    Diagnostic("undeclared-line", x, f"gate {p.output} reads undeclared line {x}")
                )
    for x in c.outputs or ():
        if x not in declared:
            diags.append(Diagnostic("undeclared-line", x, f"output {x} is not a declared line"))
    if not any(d.kind == "duplicate-driver" for d in diags):
        cycle = find_cycle(c)
        if cycle:
            diags.append(
                Diagnostic("cycle", cycle[0], "combinational cycle through lines " + " -> ".join(cycle))
            )
    return diags


def find_cycle(c: Circuit) -> list[str] | None:
    """Lines of one combinational cycle (first line repeated at the end), or None."""
    driver = {p.output: p for p in c.primitives}
    WHITE, GREY, BLACK = 0, 1, 2
    color = {}
    for start in driver:
        if color.get(start, WHITE) != WHITE:
            continue
        stack = [(start, iter(driver[start].inputs))]
        path = [start]
        color[start] = GREY
        while stack:
            line, it = stack[-1]
            for x in it:
                if x not in driver:
                    continue
                state = color.get(x, WHITE)
                if state == GREY:
                    return path[path.index(x):] + [x]
                if state == WHITE:
                    color[x] = GREY
                    stack.append((x, iter(driver[x].inputs)))
                    path.append(x)
                    break
            else:
                color[line] = BLACK
                stack.pop()
                path.pop()
    return None


def levelize(c: Circuit) -> Circuit:
    """Group primitives by rank = 1 + max rank of their drivers (inputs rank 0).

    Within a level primitives keep declaration order.
    """
    cycle = find_cycle(c)
    if cycle:
        raise CyclicCircuit(cycle)
    driver = {p.output: i for i, p in enumerate(c.primitives)}
    rank: dict[int, int] = {}

    def rank_of(i):
        # iterative post-order; the circuit is known to be acyclic here
        todo = [i]
        while todo:
            j = todo[-1]
            if j in rank:
                todo.pop()
                continue
            pending = [driver[x] for x in c.primitives[j].inputs if x in driver and driver[x] not in rank]
            if pending:
                todo.extend(pending)
                continue
            rank[j] = 1 + max(
                (rank[driver[x]] for x in c.primitives[j].inputs if x in driver), default=0
            )
            todo.pop()
        return rank[i]

    for i in range(len(c.primitives)):
        rank_of(i)
    depth = max(rank.values(), default=0)
    levels = tuple(
        tuple(i for i in range(len(c.primitives)) if rank[i] == r) for r in range(1, depth + 1)
    )
    return replace(c, levels=levels)


def build_circuit(
    inputs: Sequence[str],
    primitives: Sequence[Primitive],
    outputs: Sequence[str] | None = None,
) -> Circuit:
    """Validate and levelize; raises :class:`SemanticError` on the first problem."""
    c = Circuit(tuple(inputs), tuple(primitives), None if outputs is None else tuple(outputs))
    diags = validate(c)
    for d in diags:
        if d.kind == "cycle":
            raise CyclicCircuit(find_cycle(c))
    if diags:
        raise SemanticError(diags[0].message)
    return levelize(c)


def parse_netlist(text: str, source: str | None = None) -> Circuit:
    inputs = None
    outputs = None
    prims = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        toks = [(m.group(), m.start() + 1) for m in re.finditer(r"\S+", line)]
        if not toks:
            continue

        def err(msg, col=1):
            return ParseError(msg, lineno, col, source)

        kw, kcol = toks[0]
        if outputs is not None:
            raise err("nothing may follow the outputs line", kcol)
        names = toks[1:2] + toks[3:] if kw == "gate" else toks[1:]
        for tok, col in names:
            if not _NAME_RE.match(tok):
                raise err(f"invalid line name {tok!r}", col)
        if kw == "inputs":
            if inputs is not None:
                raise err("duplicate inputs line", kcol)
            if len(toks) < 2:
                raise err("inputs line declares no inputs", kcol)
            inputs = [t for t, _ in toks[1:]]
        elif kw == "gate":
            if inputs is None:
                raise err("gate before the inputs line", kcol)
            if len(toks) < 4:
                raise err("expected 'gate <out> <q-literal> <in>...'", kcol)
            out = toks[1][0]
            ins = [t for t, _ in toks[3:]]
            lit, lcol = toks[2]
            try:
                q = parse_qliteral(lit, len(ins))
            except (InvalidArity, InvalidFunctionNumber) as e:
                raise SemanticError(f"line {lineno}: gate {out}: {e}")
            except ParseError as e:
                raise err(str(e), lcol)
            prims.append(Primitive(out, tuple(ins), q))
        elif kw == "outputs":
            if inputs is None:
                raise err("outputs before the inputs line", kcol)
            if len(toks) < 2:
                raise err("outputs line declares no outputs", kcol)
            outputs = [t for t, _ in toks[1:]]
        else:
            raise err(f"unknown statement {kw!r}", kcol)
    if inputs is None:
        raise ParseError("missing inputs line", source=source)
    return build_circuit(inputs, prims, outputs)


def print_netlist(c: Circuit) -> str:
    out = ["inputs " + " ".join(c.inputs)]
    for p in c.primitives:
        out.append(f"gate {p.output} {format_qliteral(p.q)} " + " ".join(p.inputs))
    if c.outputs is not None:
        out.append("outputs " + " ".join(c.outputs))
    return "\n".join(out) + "\n"


def table_view(c: Circuit, m: dict[str, int] | None = None) -> str:
    """Line / state / input-lines / Q-vector table of a levelized circuit."""
    order = c.level_order()
    lines = c.inputs + tuple(c.primitives[i].output for i in order)
    xs = [",".join(c.primitives[i].inputs) for i in order]
    qs = [str(c.primitives[i].q) for i in order]
    w = max(len(s) for s in (*lines, *xs, *qs)) + 1
    pad = " " * (w * len(c.inputs))
    rows = ["L " + "".join(x.rjust(w) for x in lines)]
    if m is not None:
        rows.append("M " + "".join(str(m[x]).rjust(w) for x in lines))
    rows.append("X " + pad + "".join(x.rjust(w) for x in xs))
    rows.append("Q " + pad + "".join(q.rjust(w) for q in qs))
    return "\n".join(rows) + "\n"


def random_circuit(
    rng: random.Random,
    n_inputs: int,
    n_primitives: int,
    max_arity: int = 3,
    n_outputs: int | None = None,
) -> Circuit:
    """A random acyclic circuit; every primitive reads earlier lines only.

    Primitives are declared in a shuffled order so declaration order and
    level order differ.
    """
    inputs = [f"i{k}" for k in range(n_inputs)]
    avail = list(inputs)
    prims = []
    for k in range(n_primitives):
        arity = rng.randint(1, max_arity)
        ins = tuple(rng.choice(avail) for _ in range(arity))
        q = QVector(arity, tuple(rng.randint(0, 1) for _ in range(1 << arity)))
        name = f"g{k}"
        prims.append(Primitive(name, ins, q))
        avail.append(name)
    rng.shuffle(prims)
    outputs = None
    if n_outputs is not None:
        driven = [p.output for p in prims]
        outputs = rng.sample(driven, min(n_outputs, len(driven)))
    return build_circuit(inputs, prims, outputs)
