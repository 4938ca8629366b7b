import random

import pytest
from hypothesis import given, settings, strategies as st

from qubitlogic.circuit import (
    Circuit,
    Primitive,
    build_circuit,
    levelize,
    parse_netlist,
    print_netlist,
    random_circuit,
    table_view,
    validate,
)
from qubitlogic.errors import CyclicCircuit, ParseError, SemanticError
from qubitlogic.qcore import qvector_from_id
from qubitlogic.sim import simulate_pattern

from conftest import SIX_GATE_NETLIST

AND = qvector_from_id(2, 1)
NOT = qvector_from_id(1, 2)


def level_names(c):
    return [[c.primitives[i].output for i in lvl] for lvl in c.levels]


def test_six_gate_shape(six_gate):
    assert len(six_gate.inputs) == 6
    assert len(six_gate.primitives) == 6
    assert len(six_gate.levels) == 3
    assert level_names(six_gate) == [["A", "7"], ["8", "9"], ["B", "C"]]
    assert six_gate.output_lines == ("B", "C")
    assert validate(six_gate) == []


def test_six_gate_triples(six_gate):
    triples = [
        [(",".join(six_gate.primitives[i].inputs), six_gate.primitives[i].q.id, six_gate.primitives[i].output) for i in lvl]
        for lvl in six_gate.levels
    ]
    assert triples == [
        [("1,2", 1, "A"), ("3,4", 1, "7")],
        [("A,7", 7, "8"), ("7,5", 7, "9")],
        [("8,6", 14, "B"), ("6,9", 14, "C")],
    ]


def test_single_gate():
    c = parse_netlist("inputs a b\ngate y 0b0001 a b\n")
    assert len(c.levels) == 1
    assert c.output_lines == ("y",)


def test_repeated_input_line():
    c = parse_netlist("inputs a\ngate y 0b0001 a a\n")
    for a in (0, 1):
        assert simulate_pattern(c, [a])["y"] == a


def test_chain_levels():
    text = "inputs a\n" + "".join(f"gate n{k} 2 {'a' if k == 0 else f'n{k - 1}'}\n" for k in range(4))
    c = parse_netlist(text)
    assert level_names(c) == [["n0"], ["n1"], ["n2"], ["n3"]]


def test_declaration_order_within_level():
    c = parse_netlist("inputs a b\ngate z 1 y x\ngate y 1 a b\ngate x 7 a b\n")
    assert level_names(c) == [["y", "x"], ["z"]]


def test_forward_references_levelize():
    shuffled = "\n".join(
        ["inputs 1 2 3 4 5 6"] + [l for l in reversed(SIX_GATE_NETLIST.splitlines()) if l.startswith("gate")]
        + ["outputs B C"]
    )
    c = parse_netlist(shuffled)
    assert level_names(c) == [["7", "A"], ["9", "8"], ["C", "B"]]


def test_validate_duplicate_driver():
    c = Circuit(("a", "b"), (Primitive("y", ("a", "b"), AND), Primitive("y", ("a", "a"), AND)))
    d = validate(c)
    assert [x.kind for x in d] == ["duplicate-driver"]
    assert d[0].line == "y"


def test_validate_undeclared():
    c = Circuit(("a",), (Primitive("y", ("a", "z"), AND),))
    d = validate(c)
    assert [(x.kind, x.line) for x in d] == [("undeclared-line", "z")]


def test_validate_collects_everything():
    c = Circuit(
        ("a", "a"),
        (Primitive("a", ("b", "b"), AND), Primitive("y", ("q",), AND)),
        outputs=("nope",),
    )
    kinds = {x.kind for x in validate(c)}
    assert kinds == {"duplicate-line", "driven-input", "undeclared-line", "arity-mismatch"}


def test_cycle_detection():
    with pytest.raises(CyclicCircuit) as e:
        parse_netlist("inputs a\ngate x 1 a y\ngate y 1 a x\n")
    assert set(e.value.cycle) == {"x", "y"}
    assert e.value.cycle[0] == e.value.cycle[-1]
    c = Circuit(("a",), (Primitive("x", ("a", "y"), AND), Primitive("y", ("x", "a"), AND)))
    assert [d.kind for d in validate(c)] == ["cycle"]
    with pytest.raises(CyclicCircuit):
        levelize(c)


def test_self_loop():
    with pytest.raises(CyclicCircuit) as e:
        parse_netlist("inputs a\ngate x 1 a x\n")
    assert e.value.cycle == ["x", "x"]


@pytest.mark.parametrize(
    "text,line,col",
    [
        ("gate y 1 a b\n", 1, 1),
        ("inputs a b\ngate y 1\n", 2, 1),
        ("inputs a b\ngate y 0x1 a b\n", 2, 8),
        ("inputs a b\nwire y\n", 2, 1),
        ("inputs a b\ngate y 1 a b-\n", 2, 12),
        ("inputs a b\noutputs y\ngate y 1 a b\n", 3, 1),
        ("inputs a\ninputs b\n", 2, 1),
        ("# nothing\n", None, None),
    ],
)
def test_parse_errors(text, line, col):
    with pytest.raises(ParseError) as e:
        parse_netlist(text)
    assert (e.value.line, e.value.column) == (line, col)


@pytest.mark.parametrize(
    "text",
    [
        "inputs a b\ngate y 0b0001 a\n",  # arity mismatch
        "inputs a b\ngate y 16 a b\n",  # id out of range for 2 inputs
        "inputs a b\ngate y 1 a z\n",  # undeclared
        "inputs a b\ngate y 1 a b\ngate y 7 a b\n",  # duplicate driver
        "inputs a b\ngate a 1 a b\n",  # drives an input
        "inputs a b\ngate y 1 a b\noutputs z\n",  # undeclared output
    ],
)
def test_semantic_errors(text):
    with pytest.raises(SemanticError):
        parse_netlist(text)


def test_decimal_and_binary_literals_agree():
    a = parse_netlist("inputs a b\ngate y 14 a b\n")
    b = parse_netlist("inputs a b\ngate y 0b1110 a b\n")
    c = parse_netlist("inputs a b\ngate y 14:2 a b\n")
    assert a == b == c


def test_print_round_trip(six_gate):
    assert parse_netlist(print_netlist(six_gate)) == six_gate


def test_default_outputs():
    c = parse_netlist("inputs a b\ngate x 1 a b\ngate y 7 x b\n")
    assert c.outputs is None
    assert c.output_lines == ("y",)
    assert parse_netlist(print_netlist(c)) == c


@settings(deadline=None)
@given(st.integers(0, 10 ** 6))
def test_levelization_correct(seed):
    rng = random.Random(seed)
    c = random_circuit(rng, rng.randint(1, 10), rng.randint(1, 25), 4)
    rank = c.ranks()
    for lvl_no, lvl in enumerate(c.levels, 1):
        for i in lvl:
            p = c.primitives[i]
            assert all(rank[x] < lvl_no for x in p.inputs)
            assert lvl_no == 1 + max(rank[x] for x in p.inputs)
    assert sorted(i for lvl in c.levels for i in lvl) == list(range(len(c.primitives)))
    assert parse_netlist(print_netlist(c)) == c


def test_build_circuit_raises_first_diagnostic():
    with pytest.raises(SemanticError, match="undeclared line z"):
        build_circuit(["a"], [Primitive("y", ("z",), NOT)])


def test_table_view(six_gate):
    m = simulate_pattern(six_gate, [1, 1, 1, 1, 1, 0])
    view = table_view(six_gate, m).splitlines()
    assert view[0].split() == ["L", "1", "2", "3", "4", "5", "6", "A", "7", "8", "9", "B", "C"]
    assert view[1].split() == ["M"] + ["1"] * 5 + ["0"] + ["1"] * 6
    assert view[2].split() == ["X", "1,2", "3,4", "A,7", "7,5", "8,6", "6,9"]
    assert view[3].split() == ["Q", "0001", "0001", "0111", "0111", "1110", "1110"]
