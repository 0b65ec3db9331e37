from fractions import Fraction

import pytest

from oracle_bridge.parser import ChainTerm, ParseError, parse_export, render_export

SAMPLE = """# tautbamboo export v1
1/1 ; genera=[2] ; left=[0] ; right=[4] ; profile=two ; leg3=-
-1/1 ; genera=[1,1] ; left=[0,0] ; right=[0,3] ; profile=two ; leg3=-
-3/2 ; genera=[1,1] ; left=[2,0] ; right=[0,0] ; profile=three ; leg3=1:0
5/1 ; genera=[2] ; left=[0] ; right=[3] ; profile=one ; leg3=-
"""


def test_parse_sample():
    terms = parse_export(SAMPLE)
    assert len(terms) == 4
    assert terms[0] == ChainTerm(Fraction(1), (2,), (0,), (4,), "two", None)
    assert terms[2].leg3 == (1, 0)
    assert terms[2].coeff == Fraction(-3, 2)
    assert terms[3].profile == "one"


def test_roundtrip():
    terms = parse_export(SAMPLE)
    assert parse_export(render_export(terms)) == terms


def test_malformed_line_number():
    broken = SAMPLE.replace("genera=[1,1]", "genera=[one,1]", 1)
    with pytest.raises(ParseError) as err:
        parse_export(broken)
    assert err.value.lineno == 3


def test_three_pointed_needs_leg3():
    with pytest.raises(ParseError):
        parse_export("1/1 ; genera=[1] ; left=[0] ; right=[0] ; profile=three ; leg3=-")


def test_leg3_out_of_range():
    with pytest.raises(ParseError):
        parse_export("1/1 ; genera=[1] ; left=[0] ; right=[0] ; profile=three ; leg3=4:0")
