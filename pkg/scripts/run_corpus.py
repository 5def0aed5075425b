"""Run the full verification report over a seeded random corpus.

    python3 scripts/run_corpus.py --count 50 --seed 1 --kmax 2

Prints one line per instance and a final tally; exit status 1 if any
check failed.
"""

import argparse
import sys
import time
from dataclasses import dataclass

from tuauction.corpus import random_corpus
from tuauction.report import verify_instance


@dataclass
class Config:
    count: int = 50
    seed: int = 0
    kmax: int = 2
    max_nodes: int = 8
    max_edges: int = 14
    cost_bound: int = 10
    tu_limit: int = 3


def parse_args(argv=None):
    d = Config()
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in vars(d).items():
        p.add_argument("--" + name.replace("_", "-"), type=int, default=default)
    return Config(**vars(p.parse_args(argv)))


def main(argv=None):
    cfg = parse_args(argv)
    corpus = random_corpus(cfg.count, cfg.seed, cfg.max_nodes, cfg.max_edges, cfg.cost_bound)
    start = time.perf_counter()
    bad = 0
    for i, inst in enumerate(corpus):
        tree, failed = verify_instance(inst, cfg.kmax, tu_limit=cfg.tu_limit)
        bad += bool(failed)
        print(f"#{i:03d} m={inst.m:2d} n={inst.n:2d} failed={failed}")
    print(f"{len(corpus)} instances, {bad} with failures, {time.perf_counter() - start:.1f}s")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
