from fractions import Fraction

import pytest
from helpers import CATALOG, algebra_files
from hypothesis import given

from leibniz_pairs.errors import ParseError
from leibniz_pairs.exactla import GF, QQ, Matrix
from leibniz_pairs.extension import factor_set_from_pair
from leibniz_pairs.fileformat import (
    parse_algebra,
    parse_blocks,
    parse_certificate,
    parse_factor_set,
    parse_vector_list,
    serialize_algebra,
    serialize_certificate,
    serialize_factor_set,
)
from leibniz_pairs.isoclinism import LINEAR, IsoclinismCertificate


def test_minimal_2d_text():
    af = parse_algebra("field Q\ndim 3\n[1,3] = 1*1")
    alg = af.to_algebra()
    assert list(alg.nonzero_products()) == [(0, 2, (1, 0, 0))]
    assert alg.table == CATALOG["2d"].algebra.table


def test_empty_relations_give_abelian_algebra():
    alg = parse_algebra("field GF 3\ndim 2\n").to_algebra()
    assert not list(alg.nonzero_products())
    assert alg.field == GF(3)


def test_a7_round_trip():
    af = CATALOG["A7"].file
    assert parse_algebra(serialize_algebra(af)).semantic() == af.semantic()


def test_names_signs_and_fractions():
    af = parse_algebra("field Q\ndim 2\nbasis x y\n[x,y] = -1/2*x +- y\nideal x; 2*y - x # comment\n")
    assert af.relations[(0, 1)] == (Fraction(-1, 2), -1)
    assert af.ideal == [(1, 0), (-1, 2)]


def test_field_spellings():
    assert parse_algebra("field GF(5)\ndim 1").field == GF(5)
    assert parse_algebra("field GF 5\ndim 1").field == GF(5)


def test_left_convention_meta():
    assert parse_algebra("field Q\ndim 1\nmeta convention left").to_algebra().convention == "left"


@pytest.mark.parametrize(
    "text, line",
    [
        ("field Q\ndim 2\n[1,3] = 1*1", 3),
        ("field GF 4\ndim 2", 1),
        ("field Q\ndim 2\n[1,2] = 1*1\n[1,2] = 1*2", 4),
        ("field Q\ndim 2\nbogus line", 3),
        ("field Q\ndim 2\n[1,2] = 1*zz", 3),
        ("field Q\ndim 2\nbasis a", 3),
        ("field Q\ndim 2\n[1,2] = 1/0*1", 3),
    ],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as info:
        parse_algebra(text)
    assert info.value.line == line
    assert str(info.value).startswith(f"line {line}:")


def test_missing_header_is_an_error():
    with pytest.raises(ParseError):
        parse_algebra("dim 2")
    with pytest.raises(ParseError):
        parse_algebra("field Q")


def test_unknown_convention():
    with pytest.raises(ParseError):
        parse_algebra("field Q\ndim 1\nmeta convention sideways")


def test_certificate_round_trip():
    c = IsoclinismCertificate(Matrix.from_rows(QQ, [(1, Fraction(1, 2)), (0, 1)]), Matrix.identity(QQ, 1), LINEAR)
    assert parse_certificate(serialize_certificate(c), QQ) == c


def test_blocks_reject_ragged_rows():
    with pytest.raises(ParseError):
        parse_blocks("alpha:\n1 0\n1\n", QQ)


def test_empty_block_is_zero_by_zero():
    assert parse_blocks("beta:\n", QQ)["beta"].shape == (0, 0)


def test_factor_set_round_trip():
    p = CATALOG["A1"].pair
    d = factor_set_from_pair(p.q, p.m)
    back = parse_factor_set(serialize_factor_set(d))
    assert back.f == d.f
    assert back.left == d.left and back.right == d.right
    assert back.quotient.table == d.quotient.table
    assert back.convention == d.convention


def test_vector_list():
    names = ("a1", "a2")
    assert parse_vector_list(QQ, names, "a1; a1+a2") == [(1, 0), (1, 1)]
    assert parse_vector_list(QQ, names, "0") == []


# ---------------------------------------------------------------- round trip property

@given(algebra_files())
def test_parse_serialize_round_trip(af):
    text = serialize_algebra(af)
    again = parse_algebra(text)
    assert again.semantic() == af.semantic()
    assert serialize_algebra(again) == text
