import random

import oracles
import pytest
from helpers import CATALOG, pair, small_algebras, small_pairs
from hypothesis import given
from hypothesis import strategies as st

from leibniz_pairs.algebra import LeibnizAlgebra, is_ideal, is_lie, two_sided_center
from leibniz_pairs.census import random_leibniz
from leibniz_pairs.exactla import GF, QQ, Subspace, subspace_intersect
from leibniz_pairs.isoclinism import verify_certificate
from leibniz_pairs.pairs import (
    ALL_ELEMENTS,
    BASIS_PAIRS,
    Pair,
    epsilon_condition,
    is_stem,
    stem_reduce,
)


def span(n, *vs):
    return Subspace.span(QQ, n, vs)


def e(n, *idx):
    return tuple(1 if k + 1 in idx else 0 for k in range(n))


def test_lie_center_of_2d():
    assert pair("2d").z_lie == span(3, e(3, 2))


def test_lie_center_of_abelian_is_everything():
    assert pair("abelian3").z_lie == Subspace.full(QQ, 3)


def test_lie_center_of_l26_pair():
    assert pair("L26").z_lie == span(4, e(4, 3))


def test_lie_commutator_of_a1():
    assert pair("A1").k_lie.space == span(5, e(5, 3), e(5, 4), e(5, 5))


def test_lie_commutator_of_abelian_is_zero():
    assert pair("abelian3").k_lie.space.is_zero()


def test_lie_commutator_of_l26_pair():
    # frozen from the brute-force oracle over GF(3) and checked below
    assert pair("L26").k_lie.space == span(4, e(4, 1), e(4, 2))


@pytest.mark.parametrize("name", ["2d", "2e", "3a", "L26", "L40", "lambda", "abelian3"])
def test_center_and_commutator_match_oracle_mod_3(name):
    p = 3
    pr = pair(name)
    n = pr.q.dim
    table = oracles.reduce_table(p, pr.q.table)
    m = oracles.subspace_of(p, n, pr.m.space.basis)
    assert oracles.lie_center(p, table, m) == oracles.subspace_of(p, n, pr.z_lie.basis)
    assert oracles.lie_commutator(p, table, m) == oracles.subspace_of(p, n, pr.k_lie.space.basis)


def test_stem_examples():
    assert is_stem(pair("3a"))
    assert is_stem(pair("A1"))
    assert not is_stem(pair("abelian3"))


def test_stem_reduce_of_stem_pair_is_trivial():
    red = stem_reduce(pair("A1"))
    assert red.s.space.is_zero()
    assert red.pair.q.table == pair("A1").q.table


def test_stem_reduce_of_2d():
    red = stem_reduce(pair("2d"))
    assert red.s.space == span(3, e(3, 2))
    q = red.pair.q
    assert q.dim == 2
    assert list(q.nonzero_products()) == [(0, 1, (1, 0))]
    assert is_stem(red.pair)
    assert verify_certificate(pair("2d"), red.pair, red.cert) is None


def test_lambda_passes_epsilon_both_modes():
    alg = CATALOG["lambda"].algebra
    for mode in (BASIS_PAIRS, ALL_ELEMENTS):
        rep = epsilon_condition(alg, mode=mode)
        assert rep.passed
    assert set(epsilon_condition(alg, mode=BASIS_PAIRS).epsilons.values()) == {1}


def test_l16_epsilon_basis_mode():
    rep = epsilon_condition(CATALOG["L16"].algebra, mode=BASIS_PAIRS)
    assert rep.passed
    assert rep.epsilons == {(0, 0): 1, (1, 3): -1, (3, 3): 1}


def test_l16_epsilon_all_elements_witness():
    rep = epsilon_condition(CATALOG["L16"].algebra, mode=ALL_ELEMENTS)
    assert not rep.passed
    assert rep.witness == ((1, 0, 0, 1), (1, 1, 0, 0))
    assert rep.values == ((0, -1, 1, 0), (0, 1, 1, 0))


def test_a7_fails_epsilon_basis_mode():
    assert not epsilon_condition(CATALOG["A7"].algebra, mode=BASIS_PAIRS).passed


def test_lie_center_of_lie_algebra_is_everything():
    heis = LeibnizAlgebra.from_brackets(QQ, 3, {(0, 1): {2: 1}, (1, 0): {2: -1}}).validated()
    assert Pair.full(heis).z_lie == Subspace.full(QQ, 3)
    assert two_sided_center(heis) == span(3, e(3, 3))


# ---------------------------------------------------------------- properties

PAIRS = small_pairs(2, 3) + small_pairs(3, 2)


@given(st.sampled_from(PAIRS))
def test_center_and_commutator_are_ideals_in_m(p):
    for s in (p.z_lie, p.k_lie.space):
        assert is_ideal(p.q, s)
        assert p.m.space.contains_subspace(s)


@given(st.sampled_from(PAIRS))
def test_center_and_commutator_match_oracle(p):
    f = p.field.p
    n = p.q.dim
    table = oracles.reduce_table(f, p.q.table)
    m = oracles.subspace_of(f, n, p.m.space.basis)
    assert oracles.lie_center(f, table, m) == oracles.subspace_of(f, n, p.z_lie.basis)
    assert oracles.lie_commutator(f, table, m) == oracles.subspace_of(f, n, p.k_lie.space.basis)


@given(st.sampled_from(small_algebras(2, 3) + small_algebras(3, 2)))
def test_lie_algebras_have_full_lie_center(alg):
    if is_lie(alg):
        assert Pair.full(alg).z_lie == Subspace.full(alg.field, alg.dim)


@given(st.sampled_from(small_algebras(2, 3) + small_algebras(3, 2)))
def test_stem_algebras_have_equal_centers(alg):
    p = Pair.full(alg)
    if is_stem(p):
        assert two_sided_center(alg) == p.z_lie


@given(st.sampled_from(PAIRS))
def test_stem_reduce_contract(p):
    red = stem_reduce(p)
    assert subspace_intersect(red.s.space, p.k_lie.space).is_zero()
    assert is_stem(red.pair)
    assert verify_certificate(p, red.pair, red.cert) is None
    f = p.field.p
    table = oracles.reduce_table(f, p.q.table)
    want = p.q.dim - oracles.max_admissible_dim(f, table, oracles.subspace_of(f, p.q.dim, p.m.space.basis))
    assert red.pair.q.dim == want


@given(st.integers(0, 10_000))
def test_stem_reduce_random_gf3_dim3(seed):
    alg = random_leibniz(GF(3), 3, random.Random(seed))
    p = Pair.full(alg)
    red = stem_reduce(p)
    assert is_stem(red.pair)
    table = oracles.reduce_table(3, alg.table)
    assert red.pair.q.dim == 3 - oracles.max_admissible_dim(3, table, frozenset(oracles.elements(3, 3)))
