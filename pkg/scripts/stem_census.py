"""Run stem reduction over every pair of small Leibniz algebras and compare with brute force.

The brute-force minimum enumerates every ideal inside the Lie-center that
meets the Lie-commutator trivially.  Output is one line per (field, dimension)
with pair counts and a histogram of how many dimensions reduction removes.
"""

import argparse
import random
import time
from collections import Counter
from dataclasses import dataclass

from leibniz_pairs.census import all_pairs, enumerate_leibniz, ideals, random_leibniz
from leibniz_pairs.exactla import GF, subspace_intersect
from leibniz_pairs.isoclinism import verify_certificate
from leibniz_pairs.pairs import is_stem, stem_reduce


@dataclass
class Config:
    prime: int = 2
    max_dim: int = 3
    sample: int = 0  # 0 enumerates every algebra; otherwise draw this many per dimension
    seed: int = 0


def brute_force_minimum(p) -> int:
    z, k = p.z_lie, p.k_lie.space
    best = max(s.dim for s in ideals(p.q) if z.contains_subspace(s) and subspace_intersect(s, k).is_zero())
    return p.q.dim - best


def algebras(cfg: Config, n: int):
    f = GF(cfg.prime)
    if not cfg.sample:
        return enumerate_leibniz(f, n)
    rng = random.Random(cfg.seed + n)
    return (random_leibniz(f, n, rng) for _ in range(cfg.sample))


def main(cfg: Config) -> int:
    failures = 0
    for n in range(1, cfg.max_dim + 1):
        t = time.perf_counter()
        count, removed = 0, Counter()
        for alg in algebras(cfg, n):
            for p in all_pairs(alg):
                red = stem_reduce(p)
                ok = (
                    is_stem(red.pair)
                    and verify_certificate(p, red.pair, red.cert) is None
                    and red.pair.q.dim == brute_force_minimum(p)
                )
                if not ok:
                    failures += 1
                    print(f"  mismatch: {p}")
                count += 1
                removed[red.s.space.dim] += 1
        hist = ", ".join(f"{k}:{v}" for k, v in sorted(removed.items()))
        print(f"GF({cfg.prime}) dim {n}: {count} pairs, removed dims {{{hist}}} ({time.perf_counter() - t:.1f}s)")
    print("all pairs reach the minimum" if not failures else f"{failures} mismatches")
    return 1 if failures else 0


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--prime", type=int, default=2)
    parser.add_argument("--max-dim", type=int, default=3)
    parser.add_argument("--sample", type=int, default=0)
    parser.add_argument("--seed", type=int, default=0)
    a = parser.parse_args()
    raise SystemExit(main(Config(a.prime, a.max_dim, a.sample, a.seed)))
