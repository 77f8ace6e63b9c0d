"""Command line interface.

Every command reads catalog names or files and prints plain text.  Exit
codes: 0 success, 1 mathematical negative (violation, not stem, not found,
input that is not a Leibniz algebra), 2 unreadable or malformed input.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence


from .algebra import LeibnizAlgebra, check_leibniz, format_vector
from .catalog import catalog as builtin_catalog, format_subspace
from .errors import (
    AmbientMismatch,
    CenterNotPreserved,
    CertificateInvalid,
    DimensionMismatch,
    FactorIdentityViolated,
    FieldMismatch,
    LeibnizCheckFailed,
    LeibnizError,
    NotAnIsomorphism,
    NotContained,
    NotAnIdeal,
    NotLeibniz,
    NotStem,
    ParseError,
    VerificationFailed,
)
from .exactla import Matrix, Subspace
from .extension import build_extension, check_factor_identity, factor_set_from_pair, induced_maps_and_d, lemma2_reconstruct
from .fileformat import (
    AlgebraFile,
    algebra_file_from,
    parse_algebra,
    parse_blocks,
    parse_certificate,
    parse_factor_set,
    parse_vector_list,
    serialize_algebra,
    serialize_blocks,
    serialize_certificate,
    serialize_factor_set,
)
from .isoclinism import (
    LINEAR,
    STRICT,
    ConditionFailed,
    Found,
    NotIsoclinic,
    fingerprint,
    search_isoclinism,
    theorem3_construct,
    verify_certificate,
)
from .pairs import ALL_ELEMENTS, BASIS_PAIRS, Pair, epsilon_condition, is_stem, stem_reduce

OK, NEGATIVE, INPUT_ERROR = 0, 1, 2


class InputError(Exception):
    pass


class Negative(Exception):
    """A mathematical negative detected while loading input."""


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def load_file(spec: str) -> AlgebraFile:
    """A catalog name or the path of an algebra file."""
    entries = builtin_catalog()
    if spec in entries:
        return entries[spec].file
    if not Path(spec).exists():
        raise InputError(f"{spec}: no such catalog entry or file")
    return parse_algebra(_read(spec))


def _validated(af: AlgebraFile) -> LeibnizAlgebra:
    alg = af.to_algebra()
    bad = check_leibniz(alg)
    if bad is not None:
        raise Negative(f"NOT LEIBNIZ: {bad.describe(alg.names, alg.field)}")
    return alg.validated()


def _ideal_from_option(af: AlgebraFile, text: str | None):
    if text is None:
        return af.ideal_space()
    return Subspace.span(af.field, af.dim, parse_vector_list(af.field, af.names, text))


def load_pair(spec: str, ideal: str | None = None) -> Pair:
    af = load_file(spec)
    alg = _validated(af)
    space = _ideal_from_option(af, ideal)
    if space is None:
        return Pair.full(alg)
    return Pair.of(alg, space.basis)


def _names_of_space(p: Pair, s: Subspace) -> str:
    return format_subspace(s, p.q.names)


def _matrix_text(label: str, m: Matrix) -> str:
    return serialize_blocks({label: m}).rstrip("\n")


# ---------------------------------------------------------------- commands


def cmd_validate(args, out) -> int:
    af = load_file(args.alg)
    alg = af.to_algebra()
    bad = check_leibniz(alg)
    if bad is None:
        print("OK", file=out)
        return OK
    print(f"FAIL {bad.describe(alg.names, alg.field)}", file=out)
    return NEGATIVE


def cmd_invariants(args, out) -> int:
    p = load_pair(args.alg, args.ideal)
    fp = fingerprint(p)
    print(f"field: {p.field}", file=out)
    print(f"dim q: {p.q.dim}", file=out)
    print(f"m: {_names_of_space(p, p.m.space)}", file=out)
    print(f"Z_Lie(m,q): {_names_of_space(p, p.z_lie)}", file=out)
    print(f"[m,q]_Lie: {_names_of_space(p, p.k_lie.space)}", file=out)
    print(f"stem: {'yes' if is_stem(p) else 'no'}", file=out)
    for name in fp.__dataclass_fields__:
        value = getattr(fp, name)
        if isinstance(value, tuple):
            value = " ".join(str(v) for v in value)
        print(f"fingerprint.{name}: {value}", file=out)
    return OK


def cmd_stem(args, out) -> int:
    p = load_pair(args.pair, args.ideal)
    stem = is_stem(p)
    print(f"stem: {'yes' if stem else 'no'}", file=out)
    red = stem_reduce(p)
    print(f"removed ideal: {_names_of_space(p, red.s.space)}", file=out)
    print("reduced pair:", file=out)
    print(serialize_algebra(algebra_file_from(red.pair.q, red.pair.m.space)).rstrip("\n"), file=out)
    print("certificate (input -> reduced):", file=out)
    print(serialize_certificate(red.cert).rstrip("\n"), file=out)
    return OK if stem else NEGATIVE


def _load_cert(path: str, p1: Pair):
    return parse_certificate(_read(path), p1.field)


def cmd_isoclinic_verify(args, out) -> int:
    p1, p2 = load_pair(args.p1), load_pair(args.p2)
    cert = _load_cert(args.cert, p1)
    if args.mode:
        cert = cert.with_mode(args.mode)
    bad = verify_certificate(p1, p2, cert)
    if bad is None:
        print(f"OK ({cert.mode})", file=out)
        return OK
    print(f"FAIL ({cert.mode}) {bad}", file=out)
    return NEGATIVE


def cmd_isoclinic_search(args, out) -> int:
    p1, p2 = load_pair(args.p1), load_pair(args.p2)
    res = search_isoclinism(p1, p2, budget=args.budget, mode=args.mode)
    if isinstance(res, Found):
        print(f"FOUND ({res.cert.mode})", file=out)
        print(serialize_certificate(res.cert).rstrip("\n"), file=out)
        return OK
    label = "NOT ISOCLINIC" if isinstance(res, NotIsoclinic) else "INCONCLUSIVE"
    print(f"{label}: {res.reason}", file=out)
    return NEGATIVE


def cmd_factorset(args, out) -> int:
    p = load_pair(args.pair, args.ideal)
    kernel = p.m if args.kernel == "m" else None
    if kernel is None:
        from .algebra import IdealHandle

        kernel = IdealHandle(p.q, p.z_lie)
    d = factor_set_from_pair(p.q, kernel)
    print(serialize_factor_set(d).rstrip("\n"), file=out)
    bad = check_factor_identity(d)
    if bad is None:
        print("# factor-set identity: OK", file=out)
        return OK
    print(f"# factor-set identity: FAIL {bad}", file=out)
    return NEGATIVE


def cmd_extend(args, out) -> int:
    d = parse_factor_set(_read(args.factorset))
    try:
        ext = build_extension(d)
    except FactorIdentityViolated as exc:
        print(f"FAIL {exc.violation}", file=out)
        return NEGATIVE
    except LeibnizCheckFailed as exc:
        c = exc.counterexample
        print(f"FAIL extension is not Leibniz at basis triple ({c.i + 1},{c.j + 1},{c.k + 1})", file=out)
        return NEGATIVE
    print(serialize_algebra(algebra_file_from(ext.algebra)).rstrip("\n"), file=out)
    print("# OK extension satisfies the Leibniz identity", file=out)
    return OK


def cmd_lemma2(args, out) -> int:
    p = load_pair(args.pair, args.ideal)
    rec = lemma2_reconstruct(p.q, p.m)
    print("extension:", file=out)
    print(serialize_algebra(algebra_file_from(rec.ext.algebra)).rstrip("\n"), file=out)
    print(_matrix_text("isomorphism", rec.iso.matrix), file=out)
    print("OK isomorphism onto q verified", file=out)
    return OK


def cmd_prop4(args, out) -> int:
    d1 = parse_factor_set(_read(args.ext1))
    d2 = parse_factor_set(_read(args.ext2))
    e1, e2 = build_extension(d1), build_extension(d2)
    blocks = parse_blocks(_read(args.eta), d1.field)
    if "eta" not in blocks:
        raise ParseError("eta file needs an 'eta:' block")
    res = induced_maps_and_d(blocks["eta"], e1, e2)
    print(_matrix_text("eta1", res.eta1), file=out)
    print(_matrix_text("eta2", res.eta2), file=out)
    print(_matrix_text("d", res.d), file=out)
    if res.violation is None:
        print("OK factor-set relation holds", file=out)
        return OK
    i, j = res.violation
    print(f"FAIL factor-set relation at basis pair ({i + 1},{j + 1})", file=out)
    return NEGATIVE


def cmd_theorem3(args, out) -> int:
    p1, p2 = load_pair(args.p1), load_pair(args.p2)
    cert = _load_cert(args.cert, p1)
    res = theorem3_construct(p1, p2, cert, epsilon_mode=args.epsilon_mode)
    if isinstance(res, ConditionFailed):
        print(f"CONDITION FAILED ({res.which}): {res.detail}", file=out)
        return NEGATIVE
    print(_matrix_text("lambda", res.lam.matrix), file=out)
    print(_matrix_text("d", res.d), file=out)
    print(_matrix_text("lambda_on_m", res.lam_on_m.matrix), file=out)
    print("OK isomorphism m1 -> m2 verified", file=out)
    return OK


def cmd_epsilon(args, out) -> int:
    af = load_file(args.alg)
    alg = af.to_algebra()
    space = _ideal_from_option(af, args.ideal)
    rep = epsilon_condition(alg, space, args.mode)
    names, f = alg.names, alg.field
    basis = space.basis if space is not None else [alg.basis(i) for i in range(alg.dim)]
    if rep.passed:
        print("OK", file=out)
        for (i, j), e in sorted(rep.epsilons.items()):
            print(f"eps({format_vector(f, basis[i], names)},{format_vector(f, basis[j], names)}) = {f.fmt(e)}", file=out)
        return OK
    if rep.witness is not None:
        x, y = rep.witness
        print(f"FAIL witness x={format_vector(f, x, names)} y={format_vector(f, y, names)}", file=out)
        bxy, byx = rep.values
        print(f"[x,y] = {format_vector(f, bxy, names)}, [y,x] = {format_vector(f, byx, names)}", file=out)
    else:
        print("FAIL (no small witness found; a 2x2 minor is a nonzero polynomial)", file=out)
    return NEGATIVE


def cmd_catalog(args, out) -> int:
    entries = builtin_catalog()
    if args.name is None:
        for name, e in entries.items():
            flag = " disputed" if e.disputed else ""
            print(f"{name}: {e.file.field} dim {e.file.dim}{flag} - {e.description}", file=out)
        return OK
    if args.name not in entries:
        raise InputError(f"{args.name}: no such catalog entry")
    e = entries[args.name]
    print(serialize_algebra(e.file).rstrip("\n"), file=out)
    if e.disputes:
        for d in e.disputes:
            print(f"disputed {d.key}: claimed {d.claimed}, computed {d.computed}", file=out)
    else:
        print("all claims reproduced", file=out)
    return OK


# ---------------------------------------------------------------- entry point


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="leibniz-pairs", description="Exact computations with pairs of Leibniz algebras.")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check the Leibniz identity")
    s.add_argument("alg")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("invariants", help="Lie-center, Lie-commutator and fingerprint")
    s.add_argument("alg")
    s.add_argument("--ideal", help="generators of m, e.g. 'a1; a2+a3'")
    s.set_defaults(func=cmd_invariants)

    s = sub.add_parser("stem", help="stem test and stem reduction")
    s.add_argument("pair")
    s.add_argument("--ideal")
    s.set_defaults(func=cmd_stem)

    iso = sub.add_parser("isoclinic", help="verify or search isoclinism certificates")
    isub = iso.add_subparsers(dest="action", required=True)
    s = isub.add_parser("verify")
    s.add_argument("p1")
    s.add_argument("p2")
    s.add_argument("--cert", required=True)
    s.add_argument("--mode", choices=[STRICT, LINEAR])
    s.set_defaults(func=cmd_isoclinic_verify)
    s = isub.add_parser("search")
    s.add_argument("p1")
    s.add_argument("p2")
    s.add_argument("--budget", type=int, default=200_000)
    s.add_argument("--mode", choices=[STRICT, LINEAR], default=STRICT)
    s.set_defaults(func=cmd_isoclinic_search)

    s = sub.add_parser("factorset", help="factor set of a pair")
    s.add_argument("pair")
    s.add_argument("--ideal")
    s.add_argument("--kernel", choices=["m", "center"], default="m", help="extension kernel: m or the Lie-center")
    s.set_defaults(func=cmd_factorset)

    s = sub.add_parser("extend", help="build the extension of a factor-set file")
    s.add_argument("factorset")
    s.set_defaults(func=cmd_extend)

    s = sub.add_parser("lemma2", help="rebuild q from the factor set of (m, q)")
    s.add_argument("pair")
    s.add_argument("--ideal")
    s.set_defaults(func=cmd_lemma2)

    s = sub.add_parser("prop4", help="split an isomorphism of extensions into eta1, eta2 and d")
    s.add_argument("ext1")
    s.add_argument("ext2")
    s.add_argument("--eta", required=True)
    s.set_defaults(func=cmd_prop4)

    s = sub.add_parser("theorem3", help="isomorphism m1 -> m2 from an isoclinism")
    s.add_argument("p1")
    s.add_argument("p2")
    s.add_argument("--cert", required=True)
    s.add_argument("--epsilon-mode", choices=[BASIS_PAIRS, ALL_ELEMENTS], default=ALL_ELEMENTS)
    s.set_defaults(func=cmd_theorem3)

    s = sub.add_parser("epsilon", help="test whether [x,y] and [y,x] are always parallel")
    s.add_argument("alg")
    s.add_argument("--mode", choices=[BASIS_PAIRS, ALL_ELEMENTS], default=ALL_ELEMENTS)
    s.add_argument("--ideal", help="restrict to this subspace")
    s.set_defaults(func=cmd_epsilon)

    s = sub.add_parser("catalog", help="list built-in examples or show one")
    s.add_argument("name", nargs="?")
    s.set_defaults(func=cmd_catalog)
    return ap


_INPUT_ERRORS = (ParseError, DimensionMismatch, AmbientMismatch, FieldMismatch, NotAnIdeal, NotContained)
_NEGATIVES = (NotLeibniz, NotStem, CertificateInvalid, VerificationFailed, NotAnIsomorphism, CenterNotPreserved)


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return INPUT_ERROR if exc.code else OK
    try:
        return args.func(args, out)
    except Negative as exc:
        print(str(exc), file=out)
        return NEGATIVE
    except _NEGATIVES as exc:
        detail = getattr(exc, "violation", None) or exc
        print(f"FAIL {type(exc).__name__}: {detail}", file=out)
        return NEGATIVE
    except (InputError, *_INPUT_ERRORS) as exc:
        print(f"error: {exc}", file=err)
        return INPUT_ERROR
    except LeibnizError as exc:
        print(f"FAIL {type(exc).__name__}: {exc}", file=out)
        return NEGATIVE


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    main_entry()
