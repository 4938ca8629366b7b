"""Compare per-pattern cost of gate-by-gate simulation against one superposed Q-vector.

For random circuits of increasing input count, reports the Q-vector bits
stored by the primitives, the bits of the superposed vector for each output,
reads per pattern for both, and wall time over all patterns.
"""

import argparse
import random
import time
from dataclasses import dataclass
from itertools import product

from qubitlogic.circuit import random_circuit
from qubitlogic.qcore import AccessCounter, evaluate
from qubitlogic.sim import simulate_pattern
from qubitlogic.synth import superpose_all


@dataclass
class Config:
    min_inputs: int = 2
    max_inputs: int = 12
    primitives: int = 20
    max_arity: int = 3
    seed: int = 1


def run(cfg: Config) -> None:
    rng = random.Random(cfg.seed)
    print("inputs  prim_bits  super_bits  sim_reads  super_reads  sim_s  super_s")
    for n in range(cfg.min_inputs, cfg.max_inputs + 1):
        c = random_circuit(rng, n, cfg.primitives, cfg.max_arity, n_outputs=1)
        out = c.output_lines[0]
        q = superpose_all(c, [out])[out]
        patterns = list(product((0, 1), repeat=n))

        sim, t0 = AccessCounter(), time.perf_counter()
        for x in patterns:
            simulate_pattern(c, x, sim)
        t_sim = time.perf_counter() - t0

        sup, t0 = AccessCounter(), time.perf_counter()
        for x in patterns:
            evaluate(q, x, sup)
        t_sup = time.perf_counter() - t0

        prim_bits = sum(len(p.q) for p in c.primitives)
        print(
            f"{n:6d}  {prim_bits:9d}  {len(q):10d}  "
            f"{sim.reads // len(patterns):9d}  {sup.reads // len(patterns):11d}  "
            f"{t_sim:5.3f}  {t_sup:7.3f}"
        )


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    for name, default in vars(Config()).items():
        ap.add_argument("--" + name.replace("_", "-"), type=int, default=default)
    run(Config(**vars(ap.parse_args())))


if __name__ == "__main__":
    main()
