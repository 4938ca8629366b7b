"""Superposition: collapse a circuit into one Q-vector over its external inputs.

The composite vector is built by simulating every input assignment, so it is
correct by construction and doubles as the reference for the other modules.
Evaluating it afterwards needs a single table read per pattern instead of one
per primitive.
"""

from __future__ import annotations

from typing import NamedTuple

from .circuit import Circuit
from .errors import InvalidArity, SemanticError, SuperpositionTooLarge
from .qcore import MAX_ARITY, QVector, bits_of
from .sim import _run, compile_circuit


def superpose(c: Circuit, out: str) -> QVector:
    return superpose_all(c, [out])[out]


def superpose_all(c: Circuit, outs=None) -> dict[str, QVector]:
    """One Q-vector per requested line (default: the circuit outputs)."""
    outs = list(c.output_lines if outs is None else outs)
    n = len(c.inputs)
    if n > MAX_ARITY:
        raise SuperpositionTooLarge(f"circuit has {n} inputs, superposition is limited to {MAX_ARITY}")
    cc = compile_circuit(c)
    slot = {x: k for k, x in enumerate(cc.names)}
    for x in outs:
        if x not in slot:
            raise SemanticError(f"unknown line {x}")
    cols = {x: [] for x in outs}
    for a in range(1 << n):
        m = _run(cc, bits_of(a, n), None, None)
        for x in outs:
            cols[x].append(m[slot[x]])
    return {x: QVector(n, tuple(bits)) for x, bits in cols.items()}


class Equivalence(NamedTuple):
    equal: bool
    address: int | None  # lowest differing address when not equal

    def __bool__(self):
        return self.equal


def qvector_equal(a: QVector, b: QVector) -> Equivalence:
    if a.arity != b.arity:
        raise InvalidArity(f"cannot compare arity {a.arity} with arity {b.arity}")
    for addr, (x, y) in enumerate(zip(a.bits, b.bits)):
        if x != y:
            return Equivalence(False, addr)
    return Equivalence(True, None)
