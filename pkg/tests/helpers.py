"""Shared fixtures data and hypothesis strategies for the test suite."""

from __future__ import annotations

import io
from functools import lru_cache
from importlib import resources

from hypothesis import strategies as st

from leibniz_pairs.algebra import IdealHandle, transport
from leibniz_pairs.catalog import catalog, certificate_text
from leibniz_pairs.census import all_pairs, enumerate_leibniz
from leibniz_pairs.cli import main
from leibniz_pairs.exactla import GF, QQ, Field, Matrix
from leibniz_pairs.extension import factor_set_from_pair
from leibniz_pairs.fileformat import (
    AlgebraFile,
    algebra_file_from,
    parse_algebra,
    parse_certificate,
    serialize_algebra,
    serialize_blocks,
    serialize_certificate,
    serialize_factor_set,
)
from leibniz_pairs.isoclinism import certificate_from_isomorphism
from leibniz_pairs.pairs import Pair

CATALOG = catalog()
LEIBNIZ_NAMES = [n for n, e in CATALOG.items() if e.is_leibniz]


def pair(name):
    return CATALOG[name].pair


def cert(name, field: Field = QQ):
    return parse_certificate(certificate_text(name), field)


@lru_cache(maxsize=None)
def reduced_entry(name: str, p: int):
    """A catalog file read over GF(p) instead of Q (all catalog data is integral)."""
    text = CATALOG[name].text.replace("field Q", f"field GF {p}")
    return parse_algebra(text)


def reduced_pair(name: str, p: int):
    af = reduced_entry(name, p)
    alg = af.to_algebra().validated()
    return Pair.full(alg) if af.ideal is None else Pair.of(alg, af.ideal)


@lru_cache(maxsize=None)
def small_algebras(p: int, n: int) -> tuple:
    return tuple(enumerate_leibniz(GF(p), n))


@lru_cache(maxsize=None)
def small_pairs(p: int, max_dim: int) -> tuple:
    out = []
    for n in range(1, max_dim + 1):
        for alg in small_algebras(p, n):
            out.extend(all_pairs(alg))
    return tuple(out)


def field_elements(field: Field, bound: int = 3):
    if field.is_finite:
        return st.integers(0, field.p - 1).map(field)
    return st.fractions(-bound, bound, max_denominator=3).map(field)


def vectors(field: Field, n: int):
    return st.tuples(*[field_elements(field)] * n) if n else st.just(())


def matrices(field: Field, rows: int, cols: int):
    return st.lists(vectors(field, cols), min_size=rows, max_size=rows).map(
        lambda rs: Matrix.from_rows(field, rs, cols)
    )


def invertible_matrices(field: Field, n: int):
    return matrices(field, n, n).filter(lambda m: m.is_invertible())


FILE_FIELDS = [QQ, GF(2), GF(3), GF(5), GF(7)]
NAME = st.from_regex(r"[a-z][a-z0-9_]{0,3}", fullmatch=True)
META_KEY = st.from_regex(r"[a-z][a-z.]{0,8}", fullmatch=True).filter(lambda k: k != "convention")
WORD = st.from_regex(r"[A-Za-z0-9_.,:;=()+\-]{1,8}", fullmatch=True)


def coefficients(f):
    if f.is_finite:
        return st.integers(0, f.p - 1).map(f)
    return st.fractions(-5, 5, max_denominator=4).map(f)


@st.composite
def algebra_files(draw):
    """Random algebra files; the tables need not satisfy any identity."""
    f = draw(st.sampled_from(FILE_FIELDS))
    n = draw(st.integers(0, 4))
    names = tuple(draw(st.lists(NAME, min_size=n, max_size=n, unique=True)))
    vec = st.tuples(*[coefficients(f)] * n) if n else st.just(())
    relations = {}
    if n:
        keys = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))
        relations = draw(st.dictionaries(keys, vec, max_size=6))
    ideal = draw(st.none() | st.lists(vec, max_size=3))
    meta = draw(
        st.lists(
            st.tuples(META_KEY, st.lists(WORD, max_size=3).map(" ".join)),
            max_size=3,
        )
    )
    if draw(st.booleans()):
        meta.insert(0, ("convention", draw(st.sampled_from(["right", "left"]))))
    return AlgebraFile(f, n, names, relations, ideal, meta)


# ---------------------------------------------------------------- command line

def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


def cert_path(name):
    return str(resources.files("leibniz_pairs").joinpath("data", "certs", f"{name}.cert"))


def write_cli_files(tmp_path):
    """Factor-set, eta and certificate files used by the file-driven commands."""
    a1 = pair("A1")
    d = factor_set_from_pair(a1.q, IdealHandle(a1.q, a1.z_lie))
    good = tmp_path / "a1.fs"
    good.write_text(serialize_factor_set(d))
    bad = tmp_path / "bad.fs"
    bad.write_text(serialize_factor_set(d) + "f [3,1] = 1*1\n")
    eta_id = tmp_path / "id.eta"
    eta_id.write_text(serialize_blocks({"eta": Matrix.identity(QQ, 5)}))
    swap = Matrix.from_columns(QQ, [Matrix.identity(QQ, 5).column(k) for k in (2, 1, 0, 3, 4)])
    eta_swap = tmp_path / "swap.eta"
    eta_swap.write_text(serialize_blocks({"eta": swap}))

    lam = pair("lambda")
    g = Matrix.from_rows(QQ, [(1, 1), (0, 1)])
    copy = Pair.full(transport(lam.q, g, ("b1", "b2")))
    copy_file = tmp_path / "lambda_copy.alg"
    copy_file.write_text(serialize_algebra(algebra_file_from(copy.q)))
    lam_cert = tmp_path / "lambda.cert"
    lam_cert.write_text(serialize_certificate(certificate_from_isomorphism(lam, copy, g)))

    broken = tmp_path / "broken.alg"
    broken.write_text("field Q\ndim 2\n[1,5] = 1*1\n")
    return {
        "fs": good,
        "bad_fs": bad,
        "eta_id": eta_id,
        "eta_swap": eta_swap,
        "lambda_copy": copy_file,
        "lambda_cert": lam_cert,
        "broken": broken,
        "missing": tmp_path / "nope.alg",
    }
