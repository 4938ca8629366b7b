"""Inject every fault set of a given size into a matrix and count what repair recovers.

For each fault count k the script tries all k-subsets of active cells and
reports how many were repaired, how many raised RepairExhausted, and whether
every repaired matrix reproduced the fault-free output table.
"""

import argparse
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path

from qubitlogic.circuit import parse_netlist
from qubitlogic.errors import RepairExhausted
from qubitlogic.qmatrix import Status, inject_fault, matrix_from_circuit, repair, run_automaton
from qubitlogic.sim import exhaustive_patterns, simulate_batch

DATA = Path(__file__).resolve().parent.parent / "data"


@dataclass
class Config:
    netlist: Path = DATA / "six_gate.net"
    spares: int = 1
    max_faults: int = 4


def run(cfg: Config) -> None:
    c = parse_netlist(cfg.netlist.read_text(), str(cfg.netlist))
    p = exhaustive_patterns(c)
    good = simulate_batch(c, p)
    base = matrix_from_circuit(c, cfg.spares)
    cells = [
        (r, k)
        for r in range(1, base.n_rows + 1)
        for k in range(1, base.n_cols + 1)
        if base.cell(r, k) is not None and base.cell(r, k).status is Status.ACTIVE
    ]
    print(f"spares={cfg.spares} active cells={len(cells)}")
    print("faults  sets  repaired  exhausted  all_correct")
    for k in range(1, cfg.max_faults + 1):
        repaired = exhausted = 0
        correct = True
        for chosen in combinations(cells, k):
            m = base
            for cell in chosen:
                m = inject_fault(m, *cell)
            try:
                fixed = repair(m)
            except RepairExhausted:
                exhausted += 1
                continue
            repaired += 1
            correct &= run_automaton(fixed, p) == good
        print(f"{k:6d}  {repaired + exhausted:4d}  {repaired:8d}  {exhausted:9d}  {correct}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--netlist", type=Path, default=Config.netlist)
    ap.add_argument("--spares", type=int, default=Config.spares)
    ap.add_argument("--max-faults", type=int, default=Config.max_faults)
    run(Config(**vars(ap.parse_args())))


if __name__ == "__main__":
    main()
