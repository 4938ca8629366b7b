from itertools import product

import pytest

from qubitlogic.circuit import parse_netlist
from qubitlogic.errors import InvalidArity, SemanticError, SuperpositionTooLarge
from qubitlogic.qcore import AccessCounter, evaluate, qvector_from_id
from qubitlogic.sim import simulate_pattern
from qubitlogic.synth import qvector_equal, superpose, superpose_all

from conftest import random_circuits
from oracles import SIX_GATE_B, recursive_eval


def brute_force_three_gate():
    bits = []
    for a, b, d, e in product((0, 1), repeat=4):
        c = a & b
        f = 1 - (d & e)
        bits.append(1 - (c & f))
    return "".join(map(str, bits))


def test_three_gate(three_gate):
    q = superpose(three_gate, "g")
    assert brute_force_three_gate() == "1111111111110001"
    assert str(q) == brute_force_three_gate()
    assert q.id == 65521
    assert q.arity == 4
    # 16 bits against 4 + 4 + 4 for the separate primitives
    assert len(q) > sum(len(p.q) for p in three_gate.primitives)


def test_single_gate_identity():
    c = parse_netlist("inputs a b\ngate y 6 a b\n")
    assert superpose(c, "y") == qvector_from_id(2, 6)


def test_six_gate_output_b(six_gate):
    q = superpose(six_gate, "B")
    assert len(q) == 64
    assert str(q) == SIX_GATE_B
    for a, x in enumerate(product((0, 1), repeat=6)):
        assert q.bits[a] == simulate_pattern(six_gate, x)["B"]


def test_superpose_internal_line(six_gate):
    q = superpose(six_gate, "8")
    for x in product((0, 1), repeat=6):
        assert evaluate(q, x) == recursive_eval(six_gate, x)["8"]


def test_superpose_errors(six_gate):
    with pytest.raises(SemanticError):
        superpose(six_gate, "Z")
    wide = "inputs " + " ".join(f"i{k}" for k in range(17)) + "\ngate y 1 i0 i1\n"
    with pytest.raises(SuperpositionTooLarge):
        superpose(parse_netlist(wide), "y")


def test_superpose_all_defaults_to_outputs(six_gate):
    qs = superpose_all(six_gate)
    assert list(qs) == ["B", "C"]


def test_qvector_equal():
    a, b = qvector_from_id(2, 14), qvector_from_id(2, 15)
    assert qvector_equal(a, a)
    assert qvector_equal(a, a).address is None
    r = qvector_equal(a, b)
    assert not r
    assert r.address == 3
    with pytest.raises(InvalidArity):
        qvector_equal(a, qvector_from_id(1, 1))


def test_deterministic(six_gate):
    assert qvector_equal(superpose(six_gate, "B"), superpose(six_gate, "B"))


def test_superposition_matches_simulation():
    for c in random_circuits(17, 100, 8, 20, n_outputs=2):
        qs = superpose_all(c, c.lines)
        for x in product((0, 1), repeat=len(c.inputs)):
            m = simulate_pattern(c, x)
            for line, q in qs.items():
                assert evaluate(q, x) == m[line]


def test_superposed_vector_single_access(three_gate):
    q = superpose(three_gate, "g")
    n = AccessCounter()
    for x in product((0, 1), repeat=4):
        before = n.reads
        evaluate(q, x, n)
        assert n.reads - before == 1
