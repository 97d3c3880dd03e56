#!/usr/bin/env python3
"""Measure the pipeline against the exhaustive optimum on small instances.

Prints the achieved/optimum ratio per instance and a summary histogram;
everything is exhaustively verifiable at these sizes (n <= 16 by default).
"""

from __future__ import annotations

import argparse
from collections import Counter

from dicut.generators import random_min_outdeg
from dicut.oracle import exact_judicious
from dicut.pipeline import PipelineConfig, run


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--instances", type=int, default=60)
    parser.add_argument("--max-n", type=int, default=16)
    parser.add_argument("--epsilon", type=float, default=0.05)
    args = parser.parse_args()

    buckets: Counter[str] = Counter()
    for i in range(args.instances):
        d = 2 if i % 2 == 0 else 3
        n = args.max_n - (i % 5)
        graph = random_min_outdeg(n, d, extra=0.5, seed=i)
        res = run(graph, PipelineConfig(d=d, epsilon=args.epsilon, seed=i))
        optimum = exact_judicious(graph).optimum
        ratio = res.stats.min_cut / optimum if optimum else 1.0
        assert res.stats.min_cut <= optimum
        bucket = "=1.0" if ratio == 1.0 else ">=0.9" if ratio >= 0.9 else "<0.9"
        buckets[bucket] += 1
        print(
            f"n={graph.n:<3} m={graph.m:<4} d={d} "
            f"pipeline={res.stats.min_cut:<3} optimum={optimum:<3} "
            f"ratio={ratio:.3f}"
        )
    print("\nsummary:", dict(buckets))


if __name__ == "__main__":
    main()
