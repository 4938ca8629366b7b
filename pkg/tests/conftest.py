import os
import random

import pytest

from qubitlogic.circuit import Primitive, build_circuit, parse_netlist, random_circuit
from qubitlogic.qcore import QVector

DATA = os.path.join(os.path.dirname(__file__), os.pardir, "data")

SIX_GATE_NETLIST = """\
inputs 1 2 3 4 5 6
gate A 1      1 2      # AND
gate 7 1      3 4
gate 8 7      A 7      # OR
gate 9 7      7 5
gate B 14     8 6      # NAND
gate C 14     6 9
outputs B C
"""

THREE_GATE_NETLIST = """\
inputs a b d e
gate c 0b0001 a b
gate f 0b1110 d e
gate g 0b1110 c f
outputs g
"""


@pytest.fixture
def six_gate():
    return parse_netlist(SIX_GATE_NETLIST)


@pytest.fixture
def three_gate():
    return parse_netlist(THREE_GATE_NETLIST)


def random_circuits(seed, count, max_inputs, max_prims, max_arity=3, n_outputs=None):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(1, max_inputs)
        k = rng.randint(1, max_prims)
        out.append(random_circuit(rng, n, k, max_arity, n_outputs))
    return out


def random_two_input(rng, max_inputs=6, max_prims=9):
    c = random_circuit(rng, rng.randint(2, max_inputs), rng.randint(1, max_prims), max_arity=2)
    # widen 1-input gates to 2 inputs by duplicating the input line
    prims = []
    for p in c.primitives:
        if p.q.arity == 1:
            b0, b1 = p.q.bits
            p = Primitive(p.output, p.inputs * 2, QVector(2, (b0, b0, b1, b1)))
        prims.append(p)
    return build_circuit(c.inputs, prims, c.outputs)


_acceptance = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.failed:
        _acceptance[name] = "FAIL"
    elif report.when == "call":
        _acceptance.setdefault(name, "PASS")


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, verdict in sorted(_acceptance.items()):
        terminalreporter.write_line(f"{verdict}  {name}")
