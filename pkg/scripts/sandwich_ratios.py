"""How loose is the pruning sandwich in practice?

For each random instance and level k with P(k+1) feasible, print mu, mu~
and the ratio mu/mu~ (which must lie in [1, k+1]), then a histogram of
ratios per k.
"""

import argparse
from collections import Counter, defaultdict
from fractions import Fraction

from tuauction.benchmark_max import mu_tilde, solve_bmax
from tuauction.corpus import random_corpus
from tuauction.parametric import compute_phi, feasible_range


def main(argv=None):
    p = argparse.ArgumentParser(description="mu / mu~ ratios on a random corpus")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--kmax", type=int, default=3)
    args = p.parse_args(argv)

    ratios = defaultdict(Counter)
    for i, inst in enumerate(random_corpus(args.count, args.seed)):
        top = feasible_range(compute_phi(inst))[1]
        for k in range(1, min(args.kmax, top - 1) + 1):
            mu, mt = solve_bmax(inst, k).mu, mu_tilde(inst, k)
            r = Fraction(mu, mt) if mt else None
            ratios[k][r] += 1
            print(f"#{i:03d} k={k} mu={mu} mu~={mt} ratio={r if r is not None else 'n/a'}")
    for k in sorted(ratios):
        print(f"k={k}:")
        # zero-cost cases (mu~ = 0) have no ratio
        for r, count in sorted(ratios[k].items(), key=lambda kv: (kv[0] is None, kv[0] or 0)):
            print(f"  {str(r) if r is not None else 'n/a':>8}  {count}")


if __name__ == "__main__":
    main()
