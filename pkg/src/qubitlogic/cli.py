"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 malformed input file, 3 semantic
error, 4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import sys

from . import alphabet, hwemu, qmatrix, sim, synth
from .circuit import parse_netlist
from .errors import QubitLogicError
from .qcore import (
    format_qvector,
    parse_truth_table,
    qvector_from_id,
    qvector_from_truth_table,
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read(path):
    try:
        with open(path, encoding="utf-8") as f:
            return f.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}")


def _qline(q):
    return f"{format_qvector(q, 4)} (id {q.id})\n"


def _cell(text):
    try:
        r, c = (int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected ROW,COL, got {text!r}")
    return r, c


def _pow2(text):
    n = int(text)
    if n < 1 or n & (n - 1):
        raise argparse.ArgumentTypeError(f"must be a power of two, got {n}")
    return n


def _netlist(args):
    return parse_netlist(_read(args.netlist), args.netlist)


def _patterns(args):
    return sim.parse_patterns(_read(args.patterns), args.patterns)


def cmd_encode(args):
    if args.table is not None:
        q = qvector_from_truth_table(parse_truth_table(_read(args.table), args.table))
        if q.arity != args.arity:
            raise UsageError(f"table {args.table} has {q.arity} inputs, --arity says {args.arity}")
    else:
        q = qvector_from_id(args.arity, args.id)
    return _qline(q)


def cmd_min(args):
    rows = parse_truth_table(_read(args.table), args.table)
    return alphabet.format_coverage(alphabet.minimize_coverage(alphabet.encode_coverage(rows)))


def cmd_sim(args):
    c = _netlist(args)
    p = _patterns(args)
    ms = [] if args.dump_m else None
    table = sim.simulate_batch(c, p, modeling=ms)
    if not args.dump_m:
        return table.format()
    lines = table.format().splitlines()
    return "".join(f"{row}\n  M {sim.format_modeling(m)}\n" for row, m in zip(lines, ms))


def cmd_synth(args):
    return _qline(synth.superpose(_netlist(args), args.out))


def cmd_matrix(args):
    c = _netlist(args)
    p = _patterns(args)
    m = qmatrix.matrix_from_circuit(c, args.spares)
    for r, col in args.fault:
        m = qmatrix.inject_fault(m, r, col)
    if args.repair:
        m = qmatrix.repair(m)
    out = ""
    if args.dump_matrix:
        out += qmatrix.dump_matrix(m)
    out += qmatrix.run_automaton(m, p).format()
    if args.repair:
        out += qmatrix.repair_report(m) + "\n"
    return out


def cmd_emu(args):
    c = _netlist(args)
    p = _patterns(args)
    img = hwemu.assemble_images(c, args.elements, args.lines)
    if args.dump_images:
        hwemu.dump_images(img, args.dump_images)
    table, cycles = hwemu.run_emulator(img, p)
    return table.format() + f"cycles {cycles}\n"


def build_parser():
    ap = _Parser(prog="qubitlogic", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("encode", help="Q-vector of a truth table or function number")
    sp.add_argument("--arity", type=int, required=True)
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--table")
    g.add_argument("--id", type=int)
    sp.set_defaults(func=cmd_encode)

    sp = sub.add_parser("min", help="co-edge minimized cube coverage of a truth table")
    sp.add_argument("--table", required=True)
    sp.set_defaults(func=cmd_min)

    sp = sub.add_parser("sim", help="levelized simulation of a netlist")
    sp.add_argument("--netlist", required=True)
    sp.add_argument("--patterns", required=True)
    sp.add_argument("--dump-m", action="store_true", help="print the modeling vector per pattern")
    sp.set_defaults(func=cmd_sim)

    sp = sub.add_parser("synth", help="superpose a netlist into one Q-vector")
    sp.add_argument("--netlist", required=True)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_synth)

    sp = sub.add_parser("matrix", help="run the primitive matrix, with faults and repair")
    sp.add_argument("--netlist", required=True)
    sp.add_argument("--patterns", required=True)
    sp.add_argument("--spares", type=int, default=1)
    sp.add_argument("--fault", type=_cell, action="append", default=[], metavar="R,C")
    sp.add_argument("--repair", action="store_true")
    sp.add_argument("--dump-matrix", action="store_true")
    sp.set_defaults(func=cmd_matrix)

    sp = sub.add_parser("emu", help="cycle-level emulation of the RAM datapath")
    sp.add_argument("--netlist", required=True)
    sp.add_argument("--patterns", required=True)
    sp.add_argument("--dump-images", metavar="DIR")
    sp.add_argument("--elements", type=_pow2, default=hwemu.DEFAULT_ELEMENTS)
    sp.add_argument("--lines", type=_pow2, default=hwemu.DEFAULT_LINES)
    sp.set_defaults(func=cmd_emu)
    return ap


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "spares", 0) < 0:
            raise UsageError("--spares must be >= 0")
        out = args.func(args)
    except UsageError as e:
        print(f"usage error: {e}", file=stderr)
        return 1
    except QubitLogicError as e:
        print(f"error: {e}", file=stderr)
        return e.exit_code
    stdout.write(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
