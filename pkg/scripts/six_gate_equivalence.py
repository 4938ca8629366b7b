"""Run the six-gate example through the simulator, matrix automaton and emulator.

Prints the output table once, then one line per engine with its read or
cycle count and whether it agrees with the simulator.
"""

import argparse
from dataclasses import dataclass
from pathlib import Path

from qubitlogic.circuit import parse_netlist
from qubitlogic.hwemu import assemble_images, run_emulator
from qubitlogic.qcore import AccessCounter
from qubitlogic.qmatrix import matrix_from_circuit, run_automaton
from qubitlogic.sim import exhaustive_patterns, simulate_batch

DATA = Path(__file__).resolve().parent.parent / "data"


@dataclass
class Config:
    netlist: Path = DATA / "six_gate.net"
    spares: int = 1


def run(cfg: Config) -> None:
    c = parse_netlist(cfg.netlist.read_text(), str(cfg.netlist))
    p = exhaustive_patterns(c)

    sim_reads = AccessCounter()
    ref = simulate_batch(c, p, sim_reads)
    mat_reads = AccessCounter()
    by_matrix = run_automaton(matrix_from_circuit(c, cfg.spares), p, mat_reads)
    by_emu, cycles = run_emulator(assemble_images(c), p)

    print(ref.format(), end="")
    print(f"simulator  reads={sim_reads.reads}")
    print(f"automaton  reads={mat_reads.reads}  agrees={by_matrix == ref}")
    print(f"emulator   cycles={cycles}  agrees={by_emu == ref}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--netlist", type=Path, default=Config.netlist)
    ap.add_argument("--spares", type=int, default=Config.spares)
    run(Config(**vars(ap.parse_args())))


if __name__ == "__main__":
    main()
