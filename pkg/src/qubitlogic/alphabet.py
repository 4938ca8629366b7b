"""The 16-symbol two-stroke alphabet, cube coverages and co-edge minimization.

A :class:`Symbol2` names a subset of the four values an input pair can take.
Its 4-bit code is written with the bit for pair value ``00`` leftmost, so
``Q = 1000`` is {00} and ``V = 1110`` is {00, 01, 10}.  Union, intersection
and complement of value sets are the bitwise operations on codes.

Inputs are grouped into consecutive pairs in declaration order.  When the input
count is odd, the last input is described by a :class:`Symbol1`, a 2-bit code
over {0, 1}.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

from .errors import (
    IncompleteCoverage,
    IncompleteTable,
    InconsistentCoverage,
    InvalidArity,
    ParseError,
)
from .qcore import MAX_ARITY, QVector, address_of, bits_of, qvector_from_truth_table

# name -> 4-bit code, leftmost bit = pair value 00
SYMBOL2_CODES = {
    "∅": 0b0000,
    "Q": 0b1000,
    "E": 0b0100,
    "H": 0b0010,
    "J": 0b0001,
    "A": 0b1100,
    "B": 0b0011,
    "O": 0b1010,
    "I": 0b0101,
    "S": 0b1001,
    "P": 0b0110,
    "C": 0b0111,
    "F": 0b1011,
    "L": 0b1101,
    "V": 0b1110,
    "Y": 0b1111,
}
_SYMBOL2_NAMES = {code: name for name, code in SYMBOL2_CODES.items()}

# 2-bit code, leftmost bit = value 0; "-" is the empty set
SYMBOL1_CODES = {"-": 0b00, "0": 0b10, "1": 0b01, "X": 0b11}
_SYMBOL1_NAMES = {code: name for name, code in SYMBOL1_CODES.items()}


@dataclass(frozen=True)
class Symbol2:
    code: int

    def __post_init__(self):
        if not 0 <= self.code <= 0b1111:
            raise ValueError(f"Symbol2 code out of range: {self.code}")

    @classmethod
    def named(cls, name: str) -> Symbol2:
        return cls(SYMBOL2_CODES[name])

    @classmethod
    def of_pair(cls, a: int, b: int) -> Symbol2:
        return cls(1 << (3 - (2 * a + b)))

    @property
    def name(self) -> str:
        return _SYMBOL2_NAMES[self.code]

    def values(self) -> frozenset[tuple[int, int]]:
        return frozenset(bits_of(v, 2) for v in range(4) if self.covers(v))

    def covers(self, value: int) -> bool:
        return bool((self.code >> (3 - value)) & 1)

    def __or__(self, other):
        return Symbol2(self.code | other.code)

    def __and__(self, other):
        return Symbol2(self.code & other.code)

    def __invert__(self):
        return Symbol2(~self.code & 0b1111)

    def __str__(self):
        return self.name

    def __repr__(self):
        return f"Symbol2({self.name}={self.code:04b})"


@dataclass(frozen=True)
class Symbol1:
    code: int

    def __post_init__(self):
        if not 0 <= self.code <= 0b11:
            raise ValueError(f"Symbol1 code out of range: {self.code}")

    @classmethod
    def named(cls, name: str) -> Symbol1:
        return cls(SYMBOL1_CODES[name])

    @classmethod
    def of_value(cls, v: int) -> Symbol1:
        return cls(1 << (1 - v))

    @property
    def name(self) -> str:
        return _SYMBOL1_NAMES[self.code]

    def values(self) -> frozenset[tuple[int]]:
        return frozenset((v,) for v in range(2) if self.covers(v))

    def covers(self, value: int) -> bool:
        return bool((self.code >> (1 - value)) & 1)

    def __or__(self, other):
        return Symbol1(self.code | other.code)

    def __and__(self, other):
        return Symbol1(self.code & other.code)

    def __invert__(self):
        return Symbol1(~self.code & 0b11)

    def __str__(self):
        return self.name

    def __repr__(self):
        return f"Symbol1({self.name}={self.code:02b})"


def symbol_union(*symbols):
    out = symbols[0]
    for s in symbols[1:]:
        out = out | s
    return out


def symbol_intersect(*symbols):
    out = symbols[0]
    for s in symbols[1:]:
        out = out & s
    return out


def symbol_complement(symbol):
    return ~symbol


def _shape(arity):
    return (Symbol2,) * (arity // 2) + ((Symbol1,) if arity % 2 else ())


@dataclass(frozen=True)
class Cube:
    symbols: tuple
    out: int

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple(self.symbols))
        if self.out not in (0, 1):
            raise ValueError(f"cube output must be a bit, got {self.out!r}")
        for i, s in enumerate(self.symbols):
            if isinstance(s, Symbol1) and i != len(self.symbols) - 1:
                raise InvalidArity("a single-variable symbol may only end a cube")

    @property
    def arity(self) -> int:
        return sum(2 if isinstance(s, Symbol2) else 1 for s in self.symbols)

    def is_empty(self) -> bool:
        return any(s.code == 0 for s in self.symbols)

    def covered(self) -> set[tuple[int, ...]]:
        """All input assignments in the cube, as bit tuples."""
        return {sum(parts, ()) for parts in product(*(s.values() for s in self.symbols))}

    def __str__(self):
        return " ".join(s.name for s in self.symbols) + f" -> {self.out}"


@dataclass(frozen=True)
class Coverage:
    cubes: tuple[Cube, ...]
    arity: int

    def __post_init__(self):
        object.__setattr__(self, "cubes", tuple(self.cubes))
        shape = _shape(self.arity)
        for c in self.cubes:
            if tuple(type(s) for s in c.symbols) != shape:
                raise InvalidArity(f"cube '{c}' does not match arity {self.arity}")

    def __len__(self):
        return len(self.cubes)

    def __iter__(self):
        return iter(self.cubes)


def cube_covers(cube: Cube, inputs: Sequence[int]) -> bool:
    if len(inputs) != cube.arity:
        raise InvalidArity(f"cube has arity {cube.arity}, got {len(inputs)} inputs")
    pos = 0
    for s in cube.symbols:
        if isinstance(s, Symbol2):
            if not s.covers(2 * inputs[pos] + inputs[pos + 1]):
                return False
            pos += 2
        else:
            if not s.covers(inputs[pos]):
                return False
            pos += 1
    return True


def encode_inputs(inputs: Sequence[int]) -> tuple:
    syms = [Symbol2.of_pair(inputs[i], inputs[i + 1]) for i in range(0, len(inputs) - 1, 2)]
    if len(inputs) % 2:
        syms.append(Symbol1.of_value(inputs[-1]))
    return tuple(syms)


def encode_coverage(rows: Iterable[tuple[Sequence[int], int]]) -> Coverage:
    rows = list(rows)
    # reuse the table checks (arity, duplicates, completeness)
    q = qvector_from_truth_table(rows)
    return Coverage(tuple(Cube(encode_inputs(tuple(i)), o) for i, o in rows), q.arity)


def _merge(a: Cube, b: Cube) -> Cube | None:
    if a.out != b.out:
        return None
    diff = [i for i, (x, y) in enumerate(zip(a.symbols, b.symbols)) if x != y]
    if len(diff) > 1:
        return None
    syms = list(a.symbols)
    for i in diff:
        syms[i] = a.symbols[i] | b.symbols[i]
    return Cube(tuple(syms), a.out)


def _overlap(a: Cube, b: Cube) -> bool:
    return all((x & y).code for x, y in zip(a.symbols, b.symbols))


def check_consistent(c: Coverage) -> None:
    cubes = c.cubes
    for i in range(len(cubes)):
        for j in range(i + 1, len(cubes)):
            if cubes[i].out != cubes[j].out and _overlap(cubes[i], cubes[j]):
                raise InconsistentCoverage(
                    f"cubes '{cubes[i]}' and '{cubes[j]}' overlap with different outputs"
                )


def minimize_coverage(c: Coverage) -> Coverage:
    """Merge cubes differing in one symbol position until no merge applies.

    Pairs are scanned in index order; the first mergeable pair (i, j) is
    replaced by the merged cube at position i, and the scan restarts.
    Cubes with different outputs never merge.
    """
    check_consistent(c)
    cubes = list(c.cubes)
    while True:
        for i in range(len(cubes)):
            for j in range(i + 1, len(cubes)):
                merged = _merge(cubes[i], cubes[j])
                if merged is not None:
                    cubes[i] = merged
                    del cubes[j]
                    break
            else:
                continue
            break
        else:
            return Coverage(tuple(cubes), c.arity)


def coverage_to_qvector(c: Coverage) -> QVector:
    k = c.arity
    if not 1 <= k <= MAX_ARITY:
        raise InvalidArity(f"coverage arity must be in 1..{MAX_ARITY}")
    bits: list[int | None] = [None] * (1 << k)
    for cube in c.cubes:
        for x in cube.covered():
            a = address_of(x)
            if bits[a] is not None and bits[a] != cube.out:
                raise InconsistentCoverage(
                    f"input {''.join(map(str, x))} covered with both outputs"
                )
            bits[a] = cube.out
    for a, b in enumerate(bits):
        if b is None:
            raise IncompleteCoverage(f"input {''.join(map(str, bits_of(a, k)))} not covered")
    return QVector(k, tuple(bits))


def format_coverage(c: Coverage) -> str:
    return "".join(f"{cube}\n" for cube in c.cubes)


def _parse_symbol(tok):
    if tok in SYMBOL2_CODES:
        return Symbol2.named(tok)
    if tok in SYMBOL1_CODES:
        return Symbol1.named(tok)
    raise KeyError(tok)


def parse_coverage(text: str, arity: int | None = None, source: str | None = None) -> Coverage:
    """Parse ``V -> 1`` style lines; ``#`` starts a comment.

    Without ``arity`` the shape of the first cube decides it; an empty text
    then has no defined arity and is rejected.
    """
    cubes = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "->" not in line:
            raise ParseError("expected '<symbols> -> <0|1>'", lineno, 1, source)
        lhs, rhs = line.split("->", 1)
        rhs = rhs.strip()
        if rhs not in ("0", "1"):
            col = raw.index("->") + 3
            raise ParseError(f"cube output must be 0 or 1, got {rhs!r}", lineno, col, source)
        toks = lhs.split()
        if not toks:
            raise ParseError("cube has no symbols", lineno, 1, source)
        syms = []
        for tok in toks:
            try:
                syms.append(_parse_symbol(tok))
            except KeyError:
                raise ParseError(f"unknown symbol {tok!r}", lineno, raw.index(tok) + 1, source)
        try:
            cube = Cube(tuple(syms), int(rhs))
        except InvalidArity as e:
            raise ParseError(str(e), lineno, 1, source)
        if arity is None:
            arity = cube.arity
        elif cube.arity != arity:
            raise ParseError(f"cube has arity {cube.arity}, expected {arity}", lineno, 1, source)
        cubes.append(cube)
    if arity is None:
        raise ParseError("empty coverage has no arity", source=source)
    return Coverage(tuple(cubes), arity)
