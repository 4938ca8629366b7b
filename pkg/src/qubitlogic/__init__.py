"""Truth tables as addressable bit vectors ("Q-vectors") and the tools built on them.

Every combinational primitive is stored as the output column of its truth table,
read at the address formed by concatenating its input values.  On top of that
representation the package provides cube-alphabet minimization, levelized
simulation, whole-circuit superposition, a repairable primitive matrix with
spare rows, and a cycle-level emulator of a RAM-based evaluation datapath.
"""

from .errors import QubitLogicError
from .qcore import (
    FunctionSet,
    QVector,
    address_of,
    decimal_id,
    enumerate_functions,
    evaluate,
    qvector_from_id,
    qvector_from_truth_table,
)
from .circuit import Circuit, Primitive, parse_netlist, print_netlist
from .sim import PatternSet, simulate_batch, simulate_pattern
from .synth import superpose

__all__ = [
    "QubitLogicError",
    "FunctionSet",
    "QVector",
    "address_of",
    "decimal_id",
    "enumerate_functions",
    "evaluate",
    "qvector_from_id",
    "qvector_from_truth_table",
    "Circuit",
    "Primitive",
    "parse_netlist",
    "print_netlist",
    "PatternSet",
    "simulate_batch",
    "simulate_pattern",
    "superpose",
]
