"""Random-corpus sweep of the transform: equivalence, reversibility and growth.

    python scripts/corollary_sweep.py --size 500 --seed 20181 [--mode induced]
"""

import argparse
import time
from collections import Counter

from praaf import PrAAF, check_equivalence, from_normal_form, to_normal_form
from praaf.corpus import random_corpus

SEMANTICS = ["conflict-free", "admissible", "complete", "grounded", "preferred", "stable"]


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--size", type=int, default=500)
    parser.add_argument("--seed", type=int, default=20181)
    parser.add_argument("--max-args", type=int, default=4)
    parser.add_argument("--max-atts", type=int, default=5)
    parser.add_argument("--mode", default="raw", choices=["raw", "induced"])
    parser.add_argument("--tol", type=float, default=1e-9)
    args = parser.parse_args()

    corpus = random_corpus(args.size, args.seed, max_args=args.max_args, max_atts=args.max_atts)
    passed, worst = Counter(), Counter()
    reversible = 0
    start = time.perf_counter()
    for p in corpus:
        cert = to_normal_form(p)
        target = cert.transformed if cert.mapping else PrAAF({**p.p_args, "eta": 1}, p.p_atts)
        reversible += (from_normal_form(target) if cert.mapping else cert.transformed) == p
        for sigma in SEMANTICS:
            report = check_equivalence(p, target, sigma=sigma, tol=args.tol, mode=args.mode)
            passed[sigma] += report.passed
            gap = max((abs(a - b) for a, b in
                       ((report.left[k], report.right[k]) for k in report.left.entries)), default=0)
            worst[sigma] = max(worst[sigma], gap)
    elapsed = time.perf_counter() - start

    print(f"{len(corpus)} PrAAFs, seed {args.seed}, mode {args.mode}, {elapsed:.1f}s")
    for sigma in SEMANTICS:
        print(f"  {sigma:14} {passed[sigma]:>5}/{len(corpus)} pass   max |diff| {worst[sigma]:.2e}")
    print(f"  reversible     {reversible:>5}/{len(corpus)}")


if __name__ == "__main__":
    main()
