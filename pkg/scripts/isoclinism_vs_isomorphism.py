"""Search for an isoclinism and for an isomorphism between A1 and A7 over small fields.

Over GF(p) both searches range over the whole field, so a negative answer is
a proof for that field.  Over Q the isomorphism question is not decided here.
"""

import argparse
import time
from dataclasses import dataclass, field

from leibniz_pairs.catalog import catalog
from leibniz_pairs.fileformat import parse_algebra
from leibniz_pairs.isoclinism import Found, search_isoclinism, search_pair_isomorphism, verify_certificate
from leibniz_pairs.pairs import Pair


@dataclass
class Config:
    primes: list[int] = field(default_factory=lambda: [2, 3])
    first: str = "A1"
    second: str = "A7"
    budget: int = 5_000_000


def pair_over(name: str, p: int | None) -> Pair:
    text = catalog()[name].text
    if p is not None:
        text = text.replace("field Q", f"field GF {p}")
    af = parse_algebra(text)
    alg = af.to_algebra().validated()
    return Pair.full(alg) if af.ideal is None else Pair.of(alg, af.ideal)


def main(cfg: Config):
    for p in [*cfg.primes, None]:
        label = "Q" if p is None else f"GF({p})"
        p1, p2 = pair_over(cfg.first, p), pair_over(cfg.second, p)
        t = time.perf_counter()
        iso = search_isoclinism(p1, p2)
        ok = isinstance(iso, Found) and verify_certificate(p1, p2, iso.cert) is None
        print(f"{label}: isoclinism {'found and verified' if ok else iso} ({time.perf_counter() - t:.2f}s)")
        if p is None:
            print(f"{label}: non-isomorphism is cited from the published classification, not proven by this tool")
            continue
        t = time.perf_counter()
        res = search_pair_isomorphism(p1, p2, budget=cfg.budget, use_fingerprint=False)
        print(f"{label}: isomorphism search: {res} ({time.perf_counter() - t:.2f}s)")


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--primes", type=int, nargs="+", default=[2, 3])
    parser.add_argument("--first", default="A1")
    parser.add_argument("--second", default="A7")
    parser.add_argument("--budget", type=int, default=5_000_000)
    args = parser.parse_args()
    main(Config(args.primes, args.first, args.second, args.budget))
