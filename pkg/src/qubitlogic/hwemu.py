"""Cycle-level emulation of a RAM-based evaluator for 2-input primitives.

Five memories make up the machine:

* ``x1`` / ``x2`` - line number of each element's first / second input
* ``out``         - line number each element writes
* ``q``           - the Q-vector bits, address = element * 4 + input pair
* ``m``           - the modeling vector, one bit per line (dual-port, read
  through two ports in two separate cycles)

Lines are numbered inputs first, then element outputs in level order, and
elements are stored in level order.  Per pattern the machine spends one cycle
per input bit loaded into ``m`` and three cycles per element: read the first
input, read the second input, then read ``q`` and write the result.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from enum import Enum

from .circuit import Circuit
from .errors import (
    CapacityExceeded,
    EmuSequenceError,
    ImageFormatError,
    UnsupportedArity,
)
from .sim import OutputTable, PatternSet, align_patterns

DEFAULT_ELEMENTS = 8
DEFAULT_LINES = 16

MEMORY_FILES = ("x1", "x2", "out", "q")


def _log2(n, what):
    if n < 1 or n & (n - 1):
        raise ValueError(f"{what} must be a power of two, got {n}")
    return n.bit_length() - 1


@dataclass
class Memory:
    name: str
    depth: int
    width: int
    words: list[int]

    def __post_init__(self):
        if len(self.words) != self.depth:
            raise ValueError(f"memory {self.name} needs {self.depth} words, got {len(self.words)}")
        limit = 1 << self.width
        for w in self.words:
            if not 0 <= w < limit:
                raise ValueError(f"word {w} does not fit memory {self.name} of width {self.width}")

    @property
    def shape(self) -> str:
        return f"{self.depth}x{self.width}"


@dataclass
class MemoryImages:
    x1: Memory
    x2: Memory
    out: Memory
    q: Memory
    m_depth: int
    n_inputs: int
    n_elements: int
    line_names: list[str]
    outputs: list[str]

    @property
    def memories(self) -> dict[str, Memory]:
        return {"x1": self.x1, "x2": self.x2, "out": self.out, "q": self.q}

    @property
    def m_shape(self) -> str:
        return f"{self.m_depth}x1"


def assemble_images(
    c: Circuit, elements: int = DEFAULT_ELEMENTS, lines: int = DEFAULT_LINES
) -> MemoryImages:
    width = max(_log2(lines, "line capacity"), 1)
    _log2(elements, "element capacity")
    for p in c.primitives:
        if p.q.arity != 2:
            raise UnsupportedArity(
                f"gate {p.output} has {p.q.arity} inputs; the emulator takes 2-input primitives only"
            )
    order = c.level_order()
    if len(order) > elements:
        raise CapacityExceeded(f"{len(order)} primitives exceed element capacity {elements}")
    names = list(c.inputs) + [c.primitives[i].output for i in order]
    if len(names) > lines:
        raise CapacityExceeded(f"{len(names)} lines exceed line capacity {lines}")
    index = {x: k for k, x in enumerate(names)}
    x1 = [0] * elements
    x2 = [0] * elements
    out = [0] * elements
    q = [0] * (elements * 4)
    for e, i in enumerate(order):
        p = c.primitives[i]
        x1[e] = index[p.inputs[0]]
        x2[e] = index[p.inputs[1]]
        out[e] = index[p.output]
        q[e * 4:e * 4 + 4] = p.q.bits
    return MemoryImages(
        x1=Memory("x1", elements, width, x1),
        x2=Memory("x2", elements, width, x2),
        out=Memory("out", elements, width, out),
        q=Memory("q", elements * 4, 1, q),
        m_depth=lines,
        n_inputs=len(c.inputs),
        n_elements=len(order),
        line_names=names,
        outputs=list(c.output_lines),
    )


class Phase(Enum):
    LOAD = "load"
    READ1 = "read1"
    READ2 = "read2"
    EXEC = "exec"
    DONE = "done"


@dataclass
class EmuState:
    element: int = 0
    input: int = 0
    pattern: int = 0
    cycles: int = 0
    write: bool = False  # False while reading operands, True on the result cycle
    phase: Phase = Phase.DONE
    a: int = 0
    b: int = 0


@dataclass
class Emulator:
    img: MemoryImages
    state: EmuState = field(default_factory=EmuState)

    def __post_init__(self):
        self.m = [0] * self.img.m_depth
        self.valid = [False] * self.img.m_depth
        if self.img.n_inputs > self.img.m_depth:
            raise EmuSequenceError(f"{self.img.n_inputs} inputs do not fit M of depth {self.img.m_depth}")

    def start(self, pattern) -> None:
        self.pattern_bits = tuple(pattern)
        self.valid = [False] * self.img.m_depth
        s = self.state
        s.element = 0
        s.input = 0
        s.write = False
        s.phase = Phase.LOAD if self.img.n_inputs else self._first_element_phase()

    def _first_element_phase(self):
        return Phase.READ1 if self.img.n_elements else Phase.DONE

    def _read_m(self, line):
        if line >= self.img.m_depth or not self.valid[line]:
            raise EmuSequenceError(
                f"element {self.state.element} reads M[{line}] before it is written"
            )
        return self.m[line]

    def step(self) -> None:
        """Advance one clock cycle."""
        s, img = self.state, self.img
        if s.phase is Phase.DONE:
            raise EmuSequenceError("step after the pattern finished")
        s.cycles += 1
        if s.phase is Phase.LOAD:
            s.write = True
            self.m[s.input] = self.pattern_bits[s.input]
            self.valid[s.input] = True
            s.input += 1
            if s.input == img.n_inputs:
                s.phase = self._first_element_phase()
            return
        e = s.element
        if e >= img.x1.depth:
            raise EmuSequenceError(f"element counter {e} beyond element memory depth {img.x1.depth}")
        if s.phase is Phase.READ1:
            s.write = False
            s.a = self._read_m(img.x1.words[e])
            s.phase = Phase.READ2
        elif s.phase is Phase.READ2:
            s.b = self._read_m(img.x2.words[e])
            s.phase = Phase.EXEC
        else:
            s.write = True
            target = img.out.words[e]
            if target >= img.m_depth:
                raise EmuSequenceError(f"element {e} writes M[{target}] beyond depth {img.m_depth}")
            self.m[target] = img.q.words[e * 4 + 2 * s.a + s.b]
            self.valid[target] = True
            s.element += 1
            s.phase = Phase.READ1 if s.element < img.n_elements else Phase.DONE

    def run_pattern(self, pattern) -> tuple[int, ...]:
        self.start(pattern)
        while self.state.phase is not Phase.DONE:
            self.step()
        self.state.pattern += 1
        index = {x: k for k, x in enumerate(self.img.line_names)}
        outs = []
        for x in self.img.outputs:
            k = index[x]
            if k >= self.img.m_depth or not self.valid[k]:
                raise EmuSequenceError(f"output line {x} was never written")
            outs.append(self.m[k])
        return tuple(outs)


def run_emulator(img: MemoryImages, p: PatternSet) -> tuple[OutputTable, int]:
    rows = align_patterns(img.line_names[: img.n_inputs], p)
    emu = Emulator(img)
    table = []
    for given, row in zip(p.rows, rows):
        table.append(("".join(map(str, given)), emu.run_pattern(row)))
    return OutputTable(tuple(img.outputs), tuple(table)), emu.state.cycles


def format_memory(mem: Memory) -> str:
    return f"memory {mem.name} {mem.shape}\n" + "".join(
        format(w, f"0{mem.width}b") + "\n" for w in mem.words
    )


def format_meta(img: MemoryImages) -> str:
    lines = [
        f"inputs {img.n_inputs}",
        f"elements {img.n_elements}",
        f"m {img.m_shape}",
        "outputs " + " ".join(img.outputs),
    ]
    lines += [f"line {k} {x}" for k, x in enumerate(img.line_names)]
    return "\n".join(lines) + "\n"


def dump_images(img: MemoryImages, directory) -> None:
    os.makedirs(directory, exist_ok=True)
    for name, mem in img.memories.items():
        with open(os.path.join(directory, f"{name}.mem"), "w") as f:
            f.write(format_memory(mem))
    with open(os.path.join(directory, "meta.txt"), "w") as f:
        f.write(format_meta(img))


def parse_memory(text: str, name: str, source: str | None = None) -> Memory:
    lines = text.splitlines()
    if not lines:
        raise ImageFormatError("empty memory file", source=source)
    head = lines[0].split()
    if len(head) != 3 or head[0] != "memory" or head[1] != name:
        raise ImageFormatError(f"expected header 'memory {name} <depth>x<width>'", 1, 1, source)
    try:
        depth, width = (int(v) for v in head[2].split("x"))
    except ValueError:
        raise ImageFormatError(f"bad shape {head[2]!r}", 1, len("memory ") + len(name) + 2, source)
    if depth < 1 or width < 1:
        raise ImageFormatError(f"bad shape {head[2]!r}", 1, None, source)
    body = lines[1:]
    if len(body) != depth:
        raise ImageFormatError(f"memory {name} declares {depth} words, file has {len(body)}", source=source)
    words = []
    for n, word in enumerate(body, 2):
        if len(word) != width or set(word) - {"0", "1"}:
            raise ImageFormatError(f"expected a {width}-bit binary word, got {word!r}", n, 1, source)
        words.append(int(word, 2))
    return Memory(name, depth, width, words)


def parse_meta(text: str, source: str | None = None) -> dict:
    meta = {"line_names": []}
    for n, raw in enumerate(text.splitlines(), 1):
        toks = raw.split()
        if not toks:
            continue
        key = toks[0]
        try:
            if key in ("inputs", "elements") and len(toks) == 2:
                meta[key] = int(toks[1])
            elif key == "m" and len(toks) == 2:
                depth, width = (int(v) for v in toks[1].split("x"))
                if width != 1:
                    raise ValueError
                meta["m_depth"] = depth
            elif key == "outputs":
                meta["outputs"] = toks[1:]
            elif key == "line" and len(toks) == 3:
                if int(toks[1]) != len(meta["line_names"]):
                    raise ImageFormatError("line table out of order", n, 1, source)
                meta["line_names"].append(toks[2])
            else:
                raise ValueError
        except ValueError:
            raise ImageFormatError(f"malformed meta entry {raw.strip()!r}", n, 1, source)
    for key in ("inputs", "elements", "m_depth", "outputs"):
        if key not in meta:
            raise ImageFormatError(f"meta lacks {key!r}", source=source)
    return meta


def load_images(directory) -> MemoryImages:
    mems = {}
    for name in MEMORY_FILES:
        path = os.path.join(directory, f"{name}.mem")
        try:
            with open(path) as f:
                mems[name] = parse_memory(f.read(), name, path)
        except FileNotFoundError:
            raise ImageFormatError(f"missing memory file {path}")
    path = os.path.join(directory, "meta.txt")
    try:
        with open(path) as f:
            meta = parse_meta(f.read(), path)
    except FileNotFoundError:
        raise ImageFormatError(f"missing {path}")
    depth = mems["x1"].depth
    if mems["x2"].depth != depth or mems["out"].depth != depth:
        raise ImageFormatError("x1, x2 and out memories differ in depth", source=directory)
    if mems["q"].depth != 4 * depth or mems["q"].width != 1:
        raise ImageFormatError(f"q memory must be {4 * depth}x1", source=directory)
    if meta["elements"] > depth:
        raise ImageFormatError(f"{meta['elements']} elements exceed depth {depth}", source=directory)
    names = meta["line_names"]
    if len(set(names)) != len(names) or meta["inputs"] > len(names):
        raise ImageFormatError("bad line table", source=path)
    for x in meta["outputs"]:
        if x not in names:
            raise ImageFormatError(f"output {x} missing from line table", source=path)
    return MemoryImages(
        x1=mems["x1"],
        x2=mems["x2"],
        out=mems["out"],
        q=mems["q"],
        m_depth=meta["m_depth"],
        n_inputs=meta["inputs"],
        n_elements=meta["elements"],
        line_names=names,
        outputs=meta["outputs"],
    )
