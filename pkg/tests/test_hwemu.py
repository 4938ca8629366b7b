import random

import pytest
from hypothesis import given, settings, strategies as st

from qubitlogic.circuit import parse_netlist
from qubitlogic.errors import (
    CapacityExceeded,
    EmuSequenceError,
    ImageFormatError,
    UnsupportedArity,
)
from qubitlogic.hwemu import (
    Emulator,
    Memory,
    MemoryImages,
    Phase,
    assemble_images,
    dump_images,
    load_images,
    run_emulator,
)
from qubitlogic.sim import PatternSet, exhaustive_patterns, simulate_batch

from conftest import random_two_input
from oracles import recursive_table


def test_six_gate_images(six_gate):
    img = assemble_images(six_gate)
    assert img.q.words[0:4] == [0, 0, 0, 1]
    assert img.q.words[4:8] == [0, 0, 0, 1]
    assert img.q.words[8:12] == [0, 1, 1, 1]
    assert img.q.words[16:20] == [1, 1, 1, 0]
    assert img.n_elements == 6
    assert [m.shape for m in img.memories.values()] == ["8x4", "8x4", "8x4", "32x1"]
    assert img.m_shape == "16x1"
    assert img.line_names == ["1", "2", "3", "4", "5", "6", "A", "7", "8", "9", "B", "C"]
    assert img.x1.words[:6] == [0, 2, 6, 7, 8, 5]
    assert img.x2.words[:6] == [1, 3, 7, 4, 5, 9]
    assert img.out.words[:6] == [6, 7, 8, 9, 10, 11]


def test_single_gate_out_ram():
    img = assemble_images(parse_netlist("inputs a b\ngate y 6 a b\n"))
    assert img.out.words[0] == 2


def test_assemble_errors(six_gate):
    with pytest.raises(UnsupportedArity):
        assemble_images(parse_netlist("inputs a b c\ngate y 1:3 a b c\n"))
    with pytest.raises(UnsupportedArity):
        assemble_images(parse_netlist("inputs a\ngate y 2 a\n"))
    with pytest.raises(CapacityExceeded):
        assemble_images(six_gate, elements=4)
    with pytest.raises(CapacityExceeded):
        assemble_images(six_gate, lines=8)


def test_six_gate_emulation(six_gate):
    p = exhaustive_patterns(six_gate)
    table, cycles = run_emulator(assemble_images(six_gate), p)
    assert table == simulate_batch(six_gate, p)
    assert cycles == 64 * (6 + 3 * 6)


def test_one_pattern_cycles(six_gate):
    p = PatternSet(six_gate.inputs, ((1, 1, 1, 1, 1, 0),))
    table, cycles = run_emulator(assemble_images(six_gate), p)
    assert cycles == 24
    assert table.format() == "111110 : B=1 C=1\n"


def test_empty_patterns(six_gate):
    table, cycles = run_emulator(assemble_images(six_gate), PatternSet(six_gate.inputs, ()))
    assert (len(table), cycles) == (0, 0)


def test_step_schedule(six_gate):
    emu = Emulator(assemble_images(six_gate))
    emu.start((1, 1, 0, 0, 0, 0))
    phases = []
    while emu.state.phase is not Phase.DONE:
        phases.append(emu.state.phase)
        emu.step()
    assert phases == [Phase.LOAD] * 6 + [Phase.READ1, Phase.READ2, Phase.EXEC] * 6
    assert emu.m[6] == 1  # A = AND(1, 1)
    with pytest.raises(EmuSequenceError):
        emu.step()


def _and_images():
    return MemoryImages(
        x1=Memory("x1", 1, 2, [0]),
        x2=Memory("x2", 1, 2, [1]),
        out=Memory("out", 1, 2, [2]),
        q=Memory("q", 4, 1, [0, 0, 0, 1]),
        m_depth=4,
        n_inputs=2,
        n_elements=1,
        line_names=["a", "b", "y"],
        outputs=["y"],
    )


def test_hand_written_and(tmp_path):
    d = tmp_path / "and"
    d.mkdir()
    (d / "x1.mem").write_text("memory x1 1x2\n00\n")
    (d / "x2.mem").write_text("memory x2 1x2\n01\n")
    (d / "out.mem").write_text("memory out 1x2\n10\n")
    (d / "q.mem").write_text("memory q 4x1\n0\n0\n0\n1\n")
    (d / "meta.txt").write_text("inputs 2\nelements 1\nm 4x1\noutputs y\nline 0 a\nline 1 b\nline 2 y\n")
    img = load_images(d)
    assert img == _and_images()
    p = PatternSet(("a", "b"), ((0, 0), (0, 1), (1, 0), (1, 1)))
    table, cycles = run_emulator(img, p)
    assert [bits for _, bits in table.rows] == [(0,), (0,), (0,), (1,)]
    assert cycles == 4 * (2 + 3)


def test_reading_unwritten_line():
    img = _and_images()
    img.x2.words[0] = 3  # nothing ever writes M[3]
    with pytest.raises(EmuSequenceError):
        run_emulator(img, PatternSet(("a", "b"), ((1, 1),)))


def test_uninitialized_element_slot():
    img = _and_images()
    img.n_elements = 2  # memories only hold one element
    with pytest.raises(EmuSequenceError):
        run_emulator(img, PatternSet(("a", "b"), ((1, 1),)))


def test_dump_load_round_trip(six_gate, tmp_path):
    img = assemble_images(six_gate)
    dump_images(img, tmp_path)
    assert sorted(p.name for p in tmp_path.iterdir()) == [
        "meta.txt", "out.mem", "q.mem", "x1.mem", "x2.mem"
    ]
    assert (tmp_path / "x1.mem").read_text().splitlines()[:3] == ["memory x1 8x4", "0000", "0010"]
    assert load_images(tmp_path) == img


@pytest.mark.parametrize(
    "name,text",
    [
        ("q.mem", "memory q 32x1\n0\n0\n"),  # truncated
        ("q.mem", "memory q 32x1\n" + "2\n" * 32),
        ("x1.mem", "memory x2 8x4\n" + "0000\n" * 8),
        ("x1.mem", "memory x1 8x4\n" + "000\n" * 8),
        ("x1.mem", "memory x1 eightx4\n"),
        ("x1.mem", ""),
        ("meta.txt", "inputs six\n"),
        ("meta.txt", "inputs 6\n"),
        ("x2.mem", "memory x2 4x4\n" + "0000\n" * 4),
    ],
)
def test_corrupted_images(six_gate, tmp_path, name, text):
    dump_images(assemble_images(six_gate), tmp_path)
    (tmp_path / name).write_text(text)
    with pytest.raises(ImageFormatError):
        load_images(tmp_path)


def test_missing_image_file(six_gate, tmp_path):
    dump_images(assemble_images(six_gate), tmp_path)
    (tmp_path / "q.mem").unlink()
    with pytest.raises(ImageFormatError):
        load_images(tmp_path)


def test_emulator_matches_simulator_random():
    rng = random.Random(31)
    for _ in range(25):
        c = random_two_input(rng)
        p = exhaustive_patterns(c)
        img = assemble_images(c, elements=16, lines=16)
        table, cycles = run_emulator(img, p)
        assert table == simulate_batch(c, p)
        assert table.rows == recursive_table(c)
        assert cycles == len(p) * (len(c.inputs) + 3 * len(c.primitives))


@settings(deadline=None, max_examples=50)
@given(st.integers(0, 10 ** 6))
def test_image_round_trip_random(tmp_path_factory, seed):
    c = random_two_input(random.Random(seed))
    img = assemble_images(c, elements=16, lines=32)
    d = tmp_path_factory.mktemp("img")
    dump_images(img, d)
    assert load_images(d) == img
