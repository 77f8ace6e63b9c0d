"""End-to-end acceptance checks, grouped by criterion.

Every test carries a ``criterion`` marker; the conftest hook prints one
PASS/FAIL line per criterion at the end of the run.
"""

import os
import random
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from helpers import (
    CATALOG,
    algebra_files,
    cert,
    cert_path,
    pair,
    reduced_pair,
    run,
    small_algebras,
)
from leibniz_pairs.algebra import LeibnizAlgebra, check_leibniz, hom_check, leibniz_defects, transport
from leibniz_pairs.census import all_pairs, enumerate_leibniz, random_leibniz
from leibniz_pairs.cli import INPUT_ERROR, NEGATIVE, OK
from leibniz_pairs.exactla import GF, QQ, Matrix, Subspace
from leibniz_pairs.extension import build_extension, check_factor_identity, factor_set_from_pair, lemma2_reconstruct
from leibniz_pairs.fileformat import parse_algebra, parse_vector_list, serialize_algebra
from leibniz_pairs.isoclinism import (
    LINEAR,
    STRICT,
    ConditionFailed,
    Found,
    Iso,
    NoIsomorphism,
    certificate_from_isomorphism,
    corollary2_check,
    search_isoclinism,
    search_pair_isomorphism,
    theorem3_construct,
    verify_certificate,
)
from leibniz_pairs.pairs import ALL_ELEMENTS, BASIS_PAIRS, Pair, epsilon_condition, is_stem, stem_reduce

EXAMPLES = ["2d", "2e", "3a", "A1", "A7", "L26", "L40", "lambda", "L16"]


def criterion(n, title):
    return pytest.mark.criterion(n, title)


def space(name, text):
    f = CATALOG[name].file
    return Subspace.span(f.field, f.dim, parse_vector_list(f.field, f.names, text))


def transported(p: Pair, g: Matrix) -> Pair:
    return Pair.of(transport(p.q, g), [g.apply(v) for v in p.m.space.basis])


def random_invertible(field, n, rng):
    while True:
        rows = [tuple(field(rng.randrange(field.p)) for _ in range(n)) for _ in range(n)]
        m = Matrix.from_rows(field, rows, n)
        if m.is_invertible():
            return m


# ---------------------------------------------------------------- 1. Leibniz validation

C1 = criterion(1, "Leibniz validation of the example algebras and the mutated control")


@C1
@pytest.mark.parametrize("name", EXAMPLES)
def test_c1_example_satisfies_leibniz_identity(name):
    assert check_leibniz(CATALOG[name].file.to_algebra()) is None


@C1
def test_c1_mutated_a1_fails_at_documented_triple():
    a1 = CATALOG["A1"].algebra
    rel = {(0, 0): {2: 1}, (1, 0): {3: 1}, (0, 2): {4: 1}, (2, 0): {0: 1}}
    bad = LeibnizAlgebra.from_brackets(QQ, 5, rel, a1.names, convention=a1.convention)
    assert check_leibniz(bad) is not None
    defects = {(d.i, d.j, d.k): d for d in leibniz_defects(bad)}
    # (a1, a3, a1): lhs [a1,[a3,a1]] = a3, rhs [[a1,a3],a1] - [[a1,a1],a3] = 0
    d = defects[(0, 2, 0)]
    assert d.lhs == (0, 0, 1, 0, 0) and d.rhs == a1.zero()


@C1
@given(st.sampled_from([2, 3]), st.data())
def test_c1_identity_check_agrees_with_oracle(p, data):
    n = data.draw(st.integers(1, 2))
    f = GF(p)
    entries = data.draw(st.lists(st.integers(0, p - 1), min_size=n**3, max_size=n**3))
    rows = [[tuple(f(entries[(i * n + j) * n + k]) for k in range(n)) for j in range(n)] for i in range(n)]
    convention = data.draw(st.sampled_from(["right", "left"]))
    alg = LeibnizAlgebra(f, n, rows, convention=convention)
    want = oracles.identity_holds(p, oracles.reduce_table(p, rows), convention)
    assert (check_leibniz(alg) is None) == want


# ---------------------------------------------------------------- 2. invariants

C2 = criterion(2, "Lie-center and Lie-commutator values of the example pairs")

PAPER_INVARIANTS = [
    ("2d", "a2", "a1"),
    ("2e", "g2", "g1"),
    ("A1", "a4; a5", "a3; a4; a5"),
    ("A7", "g4; g5", "g3; g4; g5"),
    ("3a", "0", "a1"),
    ("L26", "e3", None),
    ("L40", "a2", None),
]


@C2
@pytest.mark.parametrize("name, z, k", PAPER_INVARIANTS)
def test_c2_paper_invariants(name, z, k):
    p = pair(name)
    assert p.z_lie == space(name, z)
    if k is not None:
        assert p.k_lie.space == space(name, k)


@C2
@pytest.mark.parametrize("name, computed, claimed", [("L26", "e1; e2", "e1; e2; e3"), ("L40", "a2; a3", "a1; a2; a3")])
def test_c2_example_b_commutators_and_disputes(name, computed, claimed):
    entry = CATALOG[name]
    assert entry.pair.k_lie.space == space(name, computed)
    assert entry.disputed
    dispute = next(d for d in entry.disputes if d.key == "k_lie")
    assert space(name, dispute.claimed.strip("span{}").replace(",", ";")) == space(name, claimed)


@C2
@pytest.mark.parametrize("name", ["L26", "L40"])
def test_c2_example_b_commutators_match_oracle(name):
    p = pair(name)
    n = p.q.dim
    table = oracles.reduce_table(5, p.q.table)
    m = oracles.subspace_of(5, n, p.m.space.basis)
    assert oracles.lie_commutator(5, table, m) == oracles.subspace_of(5, n, p.k_lie.space.basis)
    assert oracles.lie_center(5, table, m) == oracles.subspace_of(5, n, p.z_lie.basis)


# ---------------------------------------------------------------- 3. certificates

C3 = criterion(3, "Example certificates and the center restriction")


@C3
@pytest.mark.parametrize("p1, p2", [("2d", "2e"), ("A1", "A7")])
def test_c3_certificates_verify_strict(p1, p2):
    c = cert(f"{p1}_{p2}")
    assert c.mode == STRICT
    assert verify_certificate(pair(p1), pair(p2), c) is None


@C3
def test_c3_example_b_linear_but_not_strict():
    c = cert("L26_L40")
    l26, l40 = pair("L26"), pair("L40")
    assert c.mode == LINEAR
    assert c.beta.shape == (l40.k_lie.space.dim, l26.k_lie.space.dim)
    assert verify_certificate(l26, l40, c) is None
    bad = verify_certificate(l26, l40, c.with_mode(STRICT))
    assert bad.kind == "alpha-not-homomorphism"
    assert "(e4,e4)" in bad.witness


@C3
def test_c3_corollary2_restriction():
    a1, a7 = pair("A1"), pair("A7")
    res = corollary2_check(a1, a7, cert("A1_A7"))
    assert res.matrix == Matrix.from_rows(QQ, [(1, 0), (1, 1)])
    assert res.matrix.is_invertible()
    assert a1.z_lie == space("A1", "a4; a5") and a7.z_lie == space("A7", "g4; g5")


# ---------------------------------------------------------------- 4. isoclinism is not isomorphism

C4 = criterion(4, "A1 and A7 are isoclinic but not isomorphic")


@C4
@pytest.mark.parametrize("p", [2, 3, 0])
def test_c4_isoclinism_found(p):
    a1, a7 = (pair("A1"), pair("A7")) if p == 0 else (reduced_pair("A1", p), reduced_pair("A7", p))
    res = search_isoclinism(a1, a7)
    assert isinstance(res, Found)
    assert verify_certificate(a1, a7, res.cert) is None


@C4
@pytest.mark.parametrize("p", [2, 3])
def test_c4_no_isomorphism_over_small_fields(p):
    res = search_pair_isomorphism(reduced_pair("A1", p), reduced_pair("A7", p), use_fingerprint=False)
    assert isinstance(res, NoIsomorphism)
    print(f"GF({p}): {res.reason}")
    print("over Q the non-isomorphism of A1 and A7 is cited from the published classification, not proven here")


# ---------------------------------------------------------------- 5. factor sets

C5 = criterion(5, "Factor-set identity, extension algebra and reconstruction for every catalog pair")


@C5
@pytest.mark.parametrize("name", [n for n, e in CATALOG.items() if e.is_leibniz])
def test_c5_factor_set_laws(name):
    p = pair(name)
    d = factor_set_from_pair(p.q, p.m)
    assert check_factor_identity(d) is None
    ext = build_extension(d)
    assert check_leibniz(LeibnizAlgebra(ext.algebra.field, ext.algebra.dim, ext.algebra.table,
                                        convention=ext.algebra.convention)) is None
    rec = lemma2_reconstruct(p.q, p.m)
    assert rec.iso.is_bijective()
    assert hom_check(rec.iso.matrix, rec.ext.algebra, p.q) is None


# ---------------------------------------------------------------- 6. stem reduction

C6 = criterion(6, "Stem reduction reaches the brute-force minimum")

FULL_CENSUS = os.environ.get("LEIBNIZ_FULL_CENSUS") == "1"


def check_stem_reduction(p: Pair):
    red = stem_reduce(p)
    assert is_stem(red.pair)
    assert red.cert.mode == STRICT
    assert verify_certificate(p, red.pair, red.cert) is None
    f = p.field.p
    n = p.q.dim
    table = oracles.reduce_table(f, p.q.table)
    best = oracles.max_admissible_dim(f, table, oracles.subspace_of(f, n, p.m.space.basis))
    assert red.pair.q.dim == n - best


@C6
@pytest.mark.parametrize("p, n", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2)])
def test_c6_exhaustive_census(p, n):
    count = 0
    for alg in small_algebras(p, n):
        for pr in all_pairs(alg):
            check_stem_reduction(pr)
            count += 1
    print(f"GF({p}) dim {n}: {count} pairs")
    assert count > 0


@C6
def test_c6_gf3_dim3():
    if FULL_CENSUS:
        algebras = enumerate_leibniz(GF(3), 3)
    else:
        rng = random.Random(2024)
        algebras = (random_leibniz(GF(3), 3, rng) for _ in range(30))
    count = 0
    for alg in algebras:
        for pr in all_pairs(alg):
            check_stem_reduction(pr)
            count += 1
    print(f"GF(3) dim 3 ({'exhaustive' if FULL_CENSUS else 'seeded sample'}): {count} pairs")


@C6
def test_c6_class_2d_over_q():
    red = stem_reduce(pair("2d"))
    assert red.pair.q.dim == 2
    assert list(red.pair.q.nonzero_products()) == [(0, 1, (1, 0))]
    assert verify_certificate(pair("2d"), red.pair, red.cert) is None


# ---------------------------------------------------------------- 7. constructive isomorphism

C7 = criterion(7, "Isomorphism construction from an isoclinism and the epsilon condition")


@C7
def test_c7_lambda_against_basis_changed_copy():
    lam = pair("lambda")
    g = Matrix.from_rows(QQ, [(1, 1), (0, 1)])
    copy = Pair.full(transport(lam.q, g))
    res = theorem3_construct(lam, copy, certificate_from_isomorphism(lam, copy, g))
    assert isinstance(res, Iso)
    assert res.lam_on_m.is_bijective()
    assert hom_check(res.lam_on_m.matrix, lam.q, copy.q) is None


@C7
def test_c7_a1_a7_condition_b():
    res = theorem3_construct(pair("A1"), pair("A7"), cert("A1_A7"))
    assert isinstance(res, ConditionFailed) and res.which == "b"


@C7
def test_c7_epsilon_values():
    lam = epsilon_condition(CATALOG["lambda"].algebra, mode=BASIS_PAIRS)
    assert lam.passed and set(lam.epsilons.values()) == {1}
    l16 = epsilon_condition(CATALOG["L16"].algebra, mode=BASIS_PAIRS)
    assert l16.passed
    assert l16.epsilons == {(0, 0): 1, (1, 3): -1, (3, 3): 1}


@C7
def test_c7_l16_all_elements_witness():
    rep = epsilon_condition(CATALOG["L16"].algebra, mode=ALL_ELEMENTS)
    assert not rep.passed
    assert rep.witness == ((1, 0, 0, 1), (1, 1, 0, 0))
    code, out, _ = run("epsilon", "L16", "--mode", "all")
    assert code == NEGATIVE and out.splitlines()[0] == "FAIL witness x=a1+a4 y=a1+a2"


# ---------------------------------------------------------------- 8. equivalence relation

C8 = criterion(8, "Certificates invert and compose over GF(5)")

GF5 = GF(5)
PAPER_CERTS = [("A1", "A7"), ("2d", "2e"), ("L26", "L40")]


def random_gf5_pair(rng):
    alg = random_leibniz(GF5, 2, rng)
    return rng.choice(all_pairs(alg))


def gf5_triple(rng):
    """Three pairs with verified certificates 1 -> 2 and 2 -> 3."""
    if rng.random() < 0.5:
        a, b = rng.choice(PAPER_CERTS)
        pa, pb = reduced_pair(a, 5), reduced_pair(b, 5)
        g = random_invertible(GF5, pa.q.dim, rng)
        h = random_invertible(GF5, pb.q.dim, rng)
        p1, p3 = transported(pa, g), transported(pb, h)
        c12 = certificate_from_isomorphism(pa, p1, g).inverse().then(cert(f"{a}_{b}", GF5))
        return p1, pb, p3, c12, certificate_from_isomorphism(pb, p3, h)
    base = random_gf5_pair(rng)
    g = random_invertible(GF5, base.q.dim, rng)
    h = random_invertible(GF5, base.q.dim, rng)
    p2 = transported(base, g)
    p3 = transported(p2, h)
    return base, p2, p3, certificate_from_isomorphism(base, p2, g), certificate_from_isomorphism(p2, p3, h)


@C8
def test_c8_symmetry_and_composition():
    rng = random.Random(5)
    for _ in range(100):
        p1, p2, p3, c12, c23 = gf5_triple(rng)
        assert verify_certificate(p1, p2, c12) is None
        assert verify_certificate(p2, p3, c23) is None
        assert verify_certificate(p2, p1, c12.inverse()) is None
        c13 = c12.then(c23)
        assert verify_certificate(p1, p3, c13) is None
        assert verify_certificate(p3, p1, c13.inverse()) is None


@C8
def test_c8_search_results_invert():
    rng = random.Random(55)
    pairs = [random_gf5_pair(rng) for _ in range(20)]
    found = 0
    for p1 in pairs:
        for p2 in pairs:
            res = search_isoclinism(p1, p2)
            if isinstance(res, Found):
                found += 1
                assert verify_certificate(p2, p1, res.cert.inverse()) is None
    assert found >= len(pairs)


# ---------------------------------------------------------------- 9. command line

C9 = criterion(9, "File round trip, deterministic output and exit codes")


@C9
@settings(max_examples=500)
@given(algebra_files())
def test_c9_round_trip(af):
    text = serialize_algebra(af)
    again = parse_algebra(text)
    assert again.semantic() == af.semantic()
    assert serialize_algebra(again) == text


CLI_CASES = [
    (["validate", "abelian3"], OK),
    (["validate", "L16"], NEGATIVE),
    (["invariants", "A1"], OK),
    (["invariants", "L16"], NEGATIVE),
    (["stem", "3a"], OK),
    (["stem", "2d"], NEGATIVE),
    (["isoclinic", "verify", "A1", "A7", "--cert", "@A1_A7"], OK),
    (["isoclinic", "verify", "L26", "L40", "--cert", "@L26_L40", "--mode", "strict"], NEGATIVE),
    (["isoclinic", "search", "A1", "A7"], OK),
    (["isoclinic", "search", "A1", "2d"], NEGATIVE),
    (["factorset", "A1"], OK),
    (["factorset", "L16"], NEGATIVE),
    (["extend", "{fs}"], OK),
    (["extend", "{bad_fs}"], NEGATIVE),
    (["lemma2", "A1"], OK),
    (["lemma2", "L16"], NEGATIVE),
    (["prop4", "{fs}", "{fs}", "--eta", "{eta_id}"], OK),
    (["prop4", "{fs}", "{fs}", "--eta", "{eta_swap}"], NEGATIVE),
    (["theorem3", "lambda", "{lambda_copy}", "--cert", "{lambda_cert}"], OK),
    (["theorem3", "A1", "A7", "--cert", "@A1_A7"], NEGATIVE),
    (["epsilon", "lambda"], OK),
    (["epsilon", "L16", "--mode", "all"], NEGATIVE),
    (["catalog"], OK),
    (["catalog", "nope"], INPUT_ERROR),
    (["validate", "{missing}"], INPUT_ERROR),
    (["validate", "{broken}"], INPUT_ERROR),
]


def expand(argv, files):
    paths = {k: str(v) for k, v in files.items()}
    return [cert_path(a[1:]) if a.startswith("@") else a.format(**paths) for a in argv]


@C9
@pytest.mark.parametrize("argv, code", CLI_CASES, ids=[" ".join(a) for a, _ in CLI_CASES])
def test_c9_exit_codes(files, argv, code):
    args = expand(argv, files)
    first = run(*args)
    assert first[0] == code
    assert run(*args) == first


@C9
def test_c9_console_output_is_byte_identical():
    argv = [sys.executable, "-c", "from leibniz_pairs.cli import main_entry; main_entry()", "factorset", "A7"]
    a = subprocess.run(argv, capture_output=True)
    b = subprocess.run(argv, capture_output=True)
    assert a.returncode == b.returncode == OK
    assert a.stdout == b.stdout and a.stdout

