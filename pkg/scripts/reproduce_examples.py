"""Print the invariants, certificates and checks for every catalog example."""

import argparse
from dataclasses import dataclass

from leibniz_pairs.algebra import check_leibniz, format_vector
from leibniz_pairs.catalog import catalog, certificate_text, format_subspace
from leibniz_pairs.exactla import QQ
from leibniz_pairs.extension import lemma2_reconstruct
from leibniz_pairs.fileformat import parse_certificate
from leibniz_pairs.isoclinism import STRICT, corollary2_check, theorem3_construct, verify_certificate
from leibniz_pairs.pairs import ALL_ELEMENTS, BASIS_PAIRS, epsilon_condition, is_stem, stem_reduce

CERTIFICATES = [("2d", "2e", "2d_2e"), ("A1", "A7", "A1_A7"), ("L26", "L40", "L26_L40")]


@dataclass
class Config:
    names: tuple[str, ...] = ()


def report_entry(name, entry):
    print(f"== {name}: {entry.description}")
    alg = entry.file.to_algebra()
    bad = check_leibniz(alg)
    if bad is not None:
        names, f = alg.names, alg.field
        triple = ", ".join(names[t] for t in (bad.i, bad.j, bad.k))
        print(f"   not a Leibniz algebra: identity fails at ({triple}), "
              f"{format_vector(f, bad.lhs, names)} != {format_vector(f, bad.rhs, names)}")
        basis = epsilon_condition(alg, mode=BASIS_PAIRS)
        shown = ", ".join(f"({names[i]},{names[j]}): {f.fmt(e)}" for (i, j), e in sorted(basis.epsilons.items()))
        print(f"   epsilon on basis pairs: {shown}")
        full = epsilon_condition(alg, mode=ALL_ELEMENTS)
        if not full.passed:
            x, y = (format_vector(f, v, names) for v in full.witness)
            print(f"   epsilon on all elements fails at x={x}, y={y}")
        return
    p = entry.pair
    names = p.q.names
    print(f"   Z_Lie = {format_subspace(p.z_lie, names)}")
    print(f"   [m,q]_Lie = {format_subspace(p.k_lie.space, names)}")
    print(f"   stem: {'yes' if is_stem(p) else 'no'}")
    if not is_stem(p):
        red = stem_reduce(p)
        print(f"   stem reduction removes {format_subspace(red.s.space, names)}, dim {red.pair.q.dim}")
    rec = lemma2_reconstruct(p.q, p.m)
    print(f"   extension rebuilt from its factor set: {'ok' if rec.iso.is_bijective() else 'FAILED'}")
    for d in entry.disputes:
        print(f"   disputed {d.key}: claimed {d.claimed}, computed {d.computed}")


def report_certificate(entries, a, b, cert_name):
    p1, p2 = entries[a].pair, entries[b].pair
    c = parse_certificate(certificate_text(cert_name), QQ)
    bad = verify_certificate(p1, p2, c)
    print(f"== certificate {a} -> {b} ({c.mode}): {'verified' if bad is None else bad}")
    if c.mode != STRICT:
        print(f"   strict mode: {verify_certificate(p1, p2, c.with_mode(STRICT))}")
    if bad is None and is_stem(p1) and is_stem(p2):
        rows = corollary2_check(p1, p2, c).matrix.rows
        print(f"   beta on the Lie-centers: {[[p1.field.fmt(x) for x in r] for r in rows]}")
        res = theorem3_construct(p1, p2, c)
        print(f"   isomorphism construction: {type(res).__name__} {getattr(res, 'which', '')}".rstrip())


def main(cfg: Config):
    entries = catalog()
    for name in cfg.names or entries:
        report_entry(name, entries[name])
    for a, b, cert_name in CERTIFICATES:
        if not cfg.names or {a, b} <= set(cfg.names):
            report_certificate(entries, a, b, cert_name)


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("names", nargs="*")
    main(Config(tuple(parser.parse_args().names)))
