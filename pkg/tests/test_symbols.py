"""Symbol algebra, the expression mini-language, and serialization round-trips."""

from fractions import Fraction

import pytest

from hankel_spectra import MonomialSymbol, PolySymbol, SymbolParseError, parse_symbol
from hankel_spectra.rational import CRat


def crat(re, im=0):
    return CRat(Fraction(re), Fraction(im))


def test_parse_single_monomials():
    s = parse_symbol("zb1")
    assert s.dim == 1 and s.terms == ((crat(1), (0,), (1,)),)
    s = parse_symbol("z1^2")
    assert s.terms == ((crat(1), (2,), (0,)),)
    s = parse_symbol("zb1^2*zb2^3")
    assert s.dim == 2 and s.terms == ((crat(1), (0, 0), (2, 3)),)


def test_parse_dim_forcing():
    s = parse_symbol("zb1", dim=2)
    assert s.dim == 2 and s.terms == ((crat(1), (0, 0), (1, 0)),)
    with pytest.raises(SymbolParseError):
        parse_symbol("zb2", dim=1)


def test_parse_product_expansion():
    s = parse_symbol("zb1*(zb2+1)")
    assert s.terms == (
        (crat(1), (0, 0), (1, 0)),
        (crat(1), (0, 0), (1, 1)),
    )


def test_parse_coefficients():
    s = parse_symbol("1/2*z1 + i*z2")
    assert set(s.terms) == {
        (crat(Fraction(1, 2)), (1, 0), (0, 0)),
        (crat(0, 1), (0, 1), (0, 0)),
    }
    s = parse_symbol("(1+2i)*zb1 - 3/4i")
    assert s.terms == ((crat(0, Fraction(-3, 4)), (0,), (0,)), (crat(1, 2), (0,), (1,)))


def test_parse_unary_minus_and_powers():
    s = parse_symbol("-zb1 + (z1+1)^2")
    expect = PolySymbol(
        [
            (crat(1), (0,), (0,)),
            (crat(-1), (0,), (1,)),
            (crat(2), (1,), (0,)),
            (crat(1), (2,), (0,)),
        ]
    )
    assert s == expect


def test_parse_errors():
    for bad in ("", "z9", "zb1^", "zb1*", "1/0", "z1 $ z2", "(z1", "zb1^-2"):
        with pytest.raises(SymbolParseError):
            parse_symbol(bad)


def test_canonical_merge_and_zero():
    assert parse_symbol("zb1+zb1") == parse_symbol("2*zb1")
    assert parse_symbol("zb1-zb1").is_zero
    assert str(parse_symbol("zb1-zb1")) == "0"


def test_roundtrip_expressions():
    corpus = [
        "zb1",
        "z1^2",
        "zb1*zb2 + zb1",
        "zb1*(zb2+1)",
        "1/2*z1*zb1 - 2*zb2^3",
        "(1+2i)*z1 + (1/3-1/4i)*zb2",
        "i*z1 - i*zb1 + 5",
        "0",
        "3/7",
    ]
    for text in corpus:
        sym = parse_symbol(text, dim=2)
        again = parse_symbol(sym.to_expression(), dim=2)
        assert again == sym, text


def test_json_roundtrip():
    sym = parse_symbol("(1+2i)*z1*zb2 + 1/3*zb1^2")
    again = PolySymbol.from_json_obj(sym.to_json_obj())
    assert again == sym
    inexact = PolySymbol([(0.5 + 0.25j, (1,), (0,))])
    again = PolySymbol.from_json_obj(inexact.to_json_obj())
    assert again == inexact and not again.is_exact


def test_parse_json_input():
    text = '{"dim": 2, "terms": [{"coeff": ["1/2", "0"], "holo": [0, 0], "antiholo": [1, 0]}]}'
    assert parse_symbol(text) == parse_symbol("1/2*zb1", dim=2)


def test_conjugate_and_modulus_squared():
    sym = parse_symbol("zb1*(zb2+1)")
    conj = sym.conjugate()
    assert conj == parse_symbol("z1*(z2+1)")
    mod = sym.modulus_squared()
    # |zb1|^2 (|zb2|^2 + zb2 + z2 + 1)
    assert mod == parse_symbol("z1*zb1*(z2*zb2 + z2 + zb2 + 1)")


def test_monomial_detection():
    assert parse_symbol("zb1*zb2").is_plain_monomial
    assert parse_symbol("zb1*zb2").to_monomial_symbol() == MonomialSymbol((0, 0), (1, 1))
    assert not parse_symbol("2*zb1").is_plain_monomial
    assert not parse_symbol("zb1+zb2").is_plain_monomial
    with pytest.raises(ValueError):
        parse_symbol("zb1+zb2").to_monomial_symbol()


def test_scalar_scaling_and_holomorphy():
    sym = parse_symbol("zb1") * 2
    assert sym == parse_symbol("2*zb1")
    assert parse_symbol("z1^3*z2").is_holomorphic
    assert not parse_symbol("z1*zb2").is_holomorphic


def test_substitute_coordinate_exact_and_float():
    sym = parse_symbol("zb1*(zb2+1)")
    sliced = sym.substitute_coordinate(2, CRat(1))
    assert sliced == parse_symbol("2*zb1")
    sliced = sym.substitute_coordinate(2, CRat(-1))
    assert sliced.is_zero
    import cmath

    q = cmath.exp(1j * 0.7)
    sliced = sym.substitute_coordinate(2, q)
    assert not sliced.is_exact
    (c, h, a), = sliced.terms
    assert (h, a) == ((0,), (1,))
    assert abs(complex(c) - (1 + q.conjugate())) < 1e-15


def test_evaluate():
    sym = parse_symbol("zb1*(zb2+1)")
    z = (0.3 + 0.4j, -0.2 + 0.1j)
    expect = z[0].conjugate() * (z[1].conjugate() + 1)
    assert abs(sym.evaluate(z) - expect) < 1e-15


def test_degrees():
    sym = parse_symbol("z1^2*zb1*zb2^3 + z2")
    assert sym.z_degrees() == (2, 1)
    assert sym.zbar_degrees() == (1, 3)
    assert sym.coordinate_degrees() == (3, 3)
