"""Q-vectors: Boolean functions stored as the output column of their truth table.

A k-input function is a sequence of 2**k bits.  The bit at address ``a`` is the
output for the input assignment whose concatenated values spell ``a`` in
binary, first input most significant.  The decimal id of a Q-vector reads the
bits as a binary numeral with address 0 as the most significant digit, so AND
is ``0001`` = 1, OR is ``0111`` = 7 and NAND is ``1110`` = 14.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import (
    EnumerationTooLarge,
    IncompleteTable,
    InvalidArity,
    InvalidFunctionNumber,
    InvalidFunctionSet,
    ParseError,
)

MAX_ARITY = 16
MAX_ENUM_ARITY = 4


def _check_bits(bits):
    for b in bits:
        if b not in (0, 1):
            raise ValueError(f"not a bit: {b!r}")


def address_of(inputs: Sequence[int]) -> int:
    """Concatenate input values into an address, first input most significant."""
    if not 1 <= len(inputs) <= MAX_ARITY:
        raise InvalidArity(f"address needs 1..{MAX_ARITY} input bits, got {len(inputs)}")
    a = 0
    for b in inputs:
        if b not in (0, 1):
            raise ValueError(f"not a bit: {b!r}")
        a = (a << 1) | b
    return a


def bits_of(address: int, width: int) -> tuple[int, ...]:
    """Inverse of :func:`address_of` for a fixed width."""
    return tuple((address >> (width - 1 - i)) & 1 for i in range(width))


@dataclass
class AccessCounter:
    """Counts single-cell reads of Q-vectors."""

    reads: int = 0


@dataclass(frozen=True)
class QVector:
    arity: int
    bits: tuple[int, ...] = field(repr=False)

    def __post_init__(self):
        if not 1 <= self.arity <= MAX_ARITY:
            raise InvalidArity(f"Q-vector arity must be in 1..{MAX_ARITY}, got {self.arity}")
        bits = tuple(self.bits)
        if len(bits) != 1 << self.arity:
            raise InvalidArity(
                f"arity {self.arity} needs {1 << self.arity} bits, got {len(bits)}"
            )
        _check_bits(bits)
        object.__setattr__(self, "bits", bits)

    def read(self, address: int, counter: AccessCounter | None = None) -> int:
        if counter is not None:
            counter.reads += 1
        return self.bits[address]

    def __call__(self, *inputs: int) -> int:
        return evaluate(self, inputs)

    @property
    def id(self) -> int:
        return decimal_id(self)

    def __len__(self):
        return len(self.bits)

    def __str__(self):
        return "".join(map(str, self.bits))

    def __repr__(self):
        return f"QVector(arity={self.arity}, bits=0b{self})"


def qvector_from_truth_table(rows: Iterable[tuple[Sequence[int], int]]) -> QVector:
    rows = list(rows)
    if not rows:
        raise IncompleteTable("empty truth table")
    k = len(rows[0][0])
    if k < 1:
        raise InvalidArity("truth table rows need at least one input")
    bits: list[int | None] = [None] * (1 << min(k, MAX_ARITY))
    for inputs, out in rows:
        if len(inputs) != k:
            raise InvalidArity(f"mixed arity in truth table: {k} and {len(inputs)}")
        a = address_of(inputs)
        if bits[a] is not None:
            raise IncompleteTable(f"duplicate row for input {''.join(map(str, inputs))}")
        if out not in (0, 1):
            raise ValueError(f"not a bit: {out!r}")
        bits[a] = out
    missing = [a for a, b in enumerate(bits) if b is None]
    if missing:
        raise IncompleteTable(
            f"{len(missing)} input combinations missing, first is "
            + "".join(map(str, bits_of(missing[0], k)))
        )
    return QVector(k, tuple(bits))


def evaluate(q: QVector, inputs: Sequence[int], counter: AccessCounter | None = None) -> int:
    if len(inputs) != q.arity:
        raise InvalidArity(f"Q-vector has arity {q.arity}, got {len(inputs)} inputs")
    return q.read(address_of(inputs), counter)


def decimal_id(q: QVector) -> int:
    return int(str(q), 2)


def qvector_from_id(arity: int, id: int) -> QVector:
    if not 1 <= arity <= MAX_ARITY:
        raise InvalidArity(f"arity must be in 1..{MAX_ARITY}, got {arity}")
    n = 1 << arity
    if not 0 <= id < (1 << n):
        raise InvalidFunctionNumber(
            f"function number {id} outside [0, 2^{n}) for arity {arity}"
        )
    return QVector(arity, tuple(int(c) for c in format(id, f"0{n}b")))


def enumerate_functions(arity: int) -> list[QVector]:
    """All 2**(2**arity) functions of ``arity`` inputs in increasing id order."""
    if arity > MAX_ENUM_ARITY:
        raise EnumerationTooLarge(f"refusing to enumerate functions of {arity} inputs")
    if arity < 1:
        raise InvalidArity(f"arity must be at least 1, got {arity}")
    return [qvector_from_id(arity, i) for i in range(1 << (1 << arity))]


_BIN_RE = re.compile(r"0b([01]+)$")
_ID_ARITY_RE = re.compile(r"(\d+):(\d+)$")
_ID_RE = re.compile(r"\d+$")


def parse_qliteral(text: str, arity: int | None = None) -> QVector:
    """Parse ``0b1110``, ``14:2`` or, when ``arity`` is known, a bare ``14``.

    When ``arity`` is given the literal must agree with it.
    """
    text = text.strip()
    m = _BIN_RE.match(text)
    if m:
        digits = m.group(1)
        n = len(digits)
        k = n.bit_length() - 1
        if n != 1 << k or k < 1:
            raise InvalidArity(f"binary literal {text} has {n} bits, not a power of two >= 2")
        q = QVector(k, tuple(int(c) for c in digits))
    elif _ID_ARITY_RE.match(text):
        m = _ID_ARITY_RE.match(text)
        q = qvector_from_id(int(m.group(2)), int(m.group(1)))
    elif _ID_RE.match(text):
        if arity is None:
            raise ParseError(f"decimal literal {text} needs an explicit arity (e.g. {text}:2)")
        q = qvector_from_id(arity, int(text))
    else:
        raise ParseError(f"not a Q-vector literal: {text!r}")
    if arity is not None and q.arity != arity:
        raise InvalidArity(f"literal {text} has arity {q.arity}, expected {arity}")
    return q


def format_qvector(q: QVector, group: int = 0) -> str:
    s = str(q)
    if group:
        s = " ".join(s[i:i + group] for i in range(0, len(s), group))
    return s


def format_qliteral(q: QVector) -> str:
    return "0b" + str(q)


@dataclass(frozen=True)
class FunctionSet:
    """A set of k-input functions, bit ``f`` set iff function number ``f`` is a member."""

    arity: int
    members: tuple[int, ...] = field(repr=False)

    def __post_init__(self):
        if not 1 <= self.arity <= MAX_ENUM_ARITY:
            raise InvalidFunctionSet(f"function-set arity must be in 1..{MAX_ENUM_ARITY}")
        members = tuple(self.members)
        if len(members) != 1 << (1 << self.arity):
            raise InvalidFunctionSet(
                f"arity {self.arity} needs {1 << (1 << self.arity)} member bits, got {len(members)}"
            )
        _check_bits(members)
        object.__setattr__(self, "members", members)

    def ids(self) -> list[int]:
        return [f for f, b in enumerate(self.members) if b]

    def functions(self) -> list[QVector]:
        return [qvector_from_id(self.arity, f) for f in self.ids()]

    def __contains__(self, id):
        return function_set_contains(self, id)

    def __or__(self, other):
        return function_set_union(self, other)

    def __and__(self, other):
        return function_set_intersect(self, other)

    def __invert__(self):
        return function_set_complement(self)

    def __str__(self):
        return "".join(map(str, self.members))


def function_set_from_bits(arity: int, bits: Sequence[int] | str) -> FunctionSet:
    if isinstance(bits, str):
        if set(bits) - {"0", "1"}:
            raise InvalidFunctionSet(f"bad member string {bits!r}")
        bits = [int(c) for c in bits]
    return FunctionSet(arity, tuple(bits))


def function_set_from_ids(arity: int, ids: Iterable[int]) -> FunctionSet:
    members = [0] * (1 << (1 << arity))
    for f in ids:
        if not 0 <= f < len(members):
            raise InvalidFunctionNumber(f"function number {f} out of range for arity {arity}")
        members[f] = 1
    return FunctionSet(arity, tuple(members))


def function_set_contains(s: FunctionSet, id: int) -> bool:
    if not 0 <= id < len(s.members):
        raise InvalidFunctionNumber(f"function number {id} out of range for arity {s.arity}")
    return s.members[id] == 1


def _same_arity(a, b):
    if a.arity != b.arity:
        raise InvalidFunctionSet(f"function sets of arity {a.arity} and {b.arity}")


def function_set_union(a: FunctionSet, b: FunctionSet) -> FunctionSet:
    _same_arity(a, b)
    return FunctionSet(a.arity, tuple(x | y for x, y in zip(a.members, b.members)))


def function_set_intersect(a: FunctionSet, b: FunctionSet) -> FunctionSet:
    _same_arity(a, b)
    return FunctionSet(a.arity, tuple(x & y for x, y in zip(a.members, b.members)))


def function_set_complement(s: FunctionSet) -> FunctionSet:
    return FunctionSet(s.arity, tuple(1 - x for x in s.members))


def parse_truth_table(text: str, source: str | None = None) -> list[tuple[tuple[int, ...], int]]:
    """Rows of ``<input bits> <output bit>``, e.g. ``01 1``; ``#`` starts a comment."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        toks = line.split()
        if not toks:
            continue
        if len(toks) != 2:
            raise ParseError("expected '<input bits> <output bit>'", lineno, 1, source)
        ins, out = toks
        if set(ins) - {"0", "1"}:
            raise ParseError(f"input bits must be 0/1, got {ins!r}", lineno, line.index(ins) + 1, source)
        if out not in ("0", "1"):
            col = line.index(out, line.index(ins) + len(ins)) + 1
            raise ParseError(f"output must be 0 or 1, got {out!r}", lineno, col, source)
        rows.append((tuple(int(c) for c in ins), int(out)))
    return rows


def format_truth_table(q: QVector) -> str:
    return "".join(
        "".join(map(str, bits_of(a, q.arity))) + f" {b}\n" for a, b in enumerate(q.bits)
    )
