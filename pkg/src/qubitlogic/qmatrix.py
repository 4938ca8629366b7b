"""The layered primitive matrix: columns are levels, rows are slots.

Each cell holds a quantum (input lines, Q-vector, output line).  The last
``spares`` rows of every column start out as unconfigured spares.  A faulty
quantum is repaired by copying its configuration into a free spare of the
same column; the faulty cell stays in place, inert, as a record.  Rows and
columns are 1-based in the public API.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum

from .circuit import Circuit
from .errors import (
    FaultEncountered,
    InternalInvariantViolation,
    InvalidCell,
    RepairExhausted,
)
from .qcore import AccessCounter, QVector, format_qliteral
from .sim import OutputTable, PatternSet, U, align_patterns


class Status(str, Enum):
    ACTIVE = "active"
    FAULTY = "faulty"
    INERT = "inert"  # faulty and already replaced by a spare
    SPARE_FREE = "spare-free"
    SPARE_USED = "spare-used"

    def __str__(self):
        return self.value


_EVALUATED = (Status.ACTIVE, Status.SPARE_USED)


@dataclass(frozen=True)
class Quantum:
    x: tuple[str, ...]
    q: QVector | None
    y: str | None
    status: Status

    @property
    def evaluated(self) -> bool:
        return self.status in _EVALUATED

    def __str__(self):
        if self.q is None:
            return str(self.status)
        return f"{self.status} {self.y} {format_qliteral(self.q)} " + " ".join(self.x)


SPARE = Quantum((), None, None, Status.SPARE_FREE)


@dataclass(frozen=True)
class QMatrix:
    inputs: tuple[str, ...]
    outputs: tuple[str, ...]
    cells: tuple[tuple[Quantum | None, ...], ...]  # cells[row][col], 0-based
    spares: int
    repairs: tuple[tuple[tuple[int, int], tuple[int, int]], ...] = ()

    @property
    def n_rows(self) -> int:
        return len(self.cells)

    @property
    def n_cols(self) -> int:
        return len(self.cells[0]) if self.cells else 0

    def cell(self, row: int, col: int) -> Quantum | None:
        self._check(row, col)
        return self.cells[row - 1][col - 1]

    def column(self, col: int) -> list[tuple[int, Quantum | None]]:
        return [(r + 1, self.cells[r][col - 1]) for r in range(self.n_rows)]

    def count(self, *statuses: Status) -> int:
        return sum(1 for row in self.cells for q in row if q is not None and q.status in statuses)

    def _check(self, row, col):
        if not (1 <= row <= self.n_rows and 1 <= col <= self.n_cols):
            raise InvalidCell(f"cell ({row},{col}) outside {self.n_rows}x{self.n_cols} matrix")

    def _with(self, updates: dict[tuple[int, int], Quantum]) -> tuple:
        return tuple(
            tuple(updates.get((r + 1, c + 1), q) for c, q in enumerate(row))
            for r, row in enumerate(self.cells)
        )


def matrix_from_circuit(c: Circuit, spares: int = 1) -> QMatrix:
    if spares < 0:
        raise ValueError("spares must be >= 0")
    width = max((len(lvl) for lvl in c.levels), default=0)
    rows = []
    for r in range(width):
        row = []
        for lvl in c.levels:
            if r < len(lvl):
                p = c.primitives[lvl[r]]
                row.append(Quantum(p.inputs, p.q, p.output, Status.ACTIVE))
            else:
                row.append(None)
        rows.append(tuple(row))
    rows.extend(tuple(SPARE for _ in c.levels) for _ in range(spares))
    return QMatrix(c.inputs, c.output_lines, tuple(rows), spares)


def inject_fault(m: QMatrix, row: int, col: int) -> QMatrix:
    q = m.cell(row, col)
    if q is None or not q.evaluated:
        what = "empty" if q is None else str(q.status)
        raise InvalidCell(f"cell ({row},{col}) is {what}, only configured quanta can fail")
    return replace(m, cells=m._with({(row, col): replace(q, status=Status.FAULTY)}))


def repair(m: QMatrix) -> QMatrix:
    """Readdress every faulty quantum onto a free spare of its own column.

    Faults are taken in row order and receive the lowest-numbered free spares.
    """
    updates = {}
    log = list(m.repairs)
    plan = []
    for col in range(1, m.n_cols + 1):
        cells = m.column(col)
        faulty = [(r, q) for r, q in cells if q is not None and q.status is Status.FAULTY]
        free = [r for r, q in cells if q is not None and q.status is Status.SPARE_FREE]
        if len(faulty) > len(free):
            raise RepairExhausted(col, len(faulty), len(free))
        plan.append((col, faulty, free))
    for col, faulty, free in plan:
        for (r, q), s in zip(faulty, free):
            updates[(s, col)] = replace(q, status=Status.SPARE_USED)
            updates[(r, col)] = replace(q, status=Status.INERT)
            log.append(((r, col), (s, col)))
    out = replace(m, cells=m._with(updates), repairs=tuple(log))
    check_matrix(out)
    return out


def check_matrix(m: QMatrix) -> None:
    """Column discipline and single-driver checks over evaluated quanta."""
    known = set(m.inputs)
    for col in range(1, m.n_cols + 1):
        written = set()
        for r, q in m.column(col):
            if q is None or not q.evaluated:
                continue
            for x in q.x:
                if x not in known:
                    raise InternalInvariantViolation(
                        f"quantum ({r},{col}) reads {x}, not produced in an earlier column"
                    )
            if q.y in known or q.y in written:
                raise InternalInvariantViolation(f"line {q.y} has more than one active driver")
            written.add(q.y)
        known |= written


def run_automaton(
    m: QMatrix, p: PatternSet, counter: AccessCounter | None = None
) -> OutputTable:
    """Per pattern: load inputs, process columns left to right, then advance.

    All quanta of a column read M before any of them writes, as a parallel
    column would, so a quantum can never see a value produced in its own
    column.
    """
    rows = align_patterns(m.inputs, p)
    columns = []
    for col in range(1, m.n_cols + 1):
        cells = []
        for r, q in m.column(col):
            if q is None:
                continue
            if q.status is Status.FAULTY:
                cells.append((r, col, None))
            elif q.evaluated:
                cells.append((r, col, q))
        columns.append(cells)
    table = []
    for t, (given, row) in enumerate(zip(p.rows, rows)):
        # step 1: next input action
        mv = dict(zip(m.inputs, row))
        # step 2/3: one column at a time
        for cells in columns:
            results = []
            for r, col, q in cells:
                if q is None:
                    raise FaultEncountered(r, col, t)
                a = 0
                for x in q.x:
                    v = mv.get(x, U)
                    if v is U:
                        raise InternalInvariantViolation(
                            f"quantum ({r},{col}) read undefined line {x}"
                        )
                    a = (a << 1) | v
                results.append((q.y, q.q.read(a, counter)))
            mv.update(results)
        try:
            outs = tuple(mv[x] for x in m.outputs)
        except KeyError as e:
            raise InternalInvariantViolation(f"output line {e.args[0]} never computed")
        table.append(("".join(map(str, given)), outs))
    return OutputTable(m.outputs, tuple(table))


def repair_report(m: QMatrix) -> str:
    n = len(m.repairs)
    used = m.count(Status.SPARE_USED)
    return (
        f"{n} fault{'s' if n != 1 else ''} repaired, "
        f"{used} spare{'s' if used != 1 else ''} used"
    )


def dump_matrix(m: QMatrix) -> str:
    lines = [f"matrix {m.n_rows}x{m.n_cols} spares={m.spares}"]
    for r in range(1, m.n_rows + 1):
        for c in range(1, m.n_cols + 1):
            q = m.cell(r, c)
            lines.append(f"({r},{c}) " + ("empty" if q is None else str(q)))
    return "\n".join(lines) + "\n"
