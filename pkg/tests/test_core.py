"""Exact engine: the closed-form eigenvalue family and its set-level consequences."""

from fractions import Fraction
from itertools import product

import pytest

from hankel_spectra import (
    MonomialSymbol,
    MultiplicityClass,
    SymbolClass,
    enumerate_essential_spectrum,
    enumerate_spectrum,
    lambda_value,
    multiplicity_class,
)
from hankel_spectra.multiindex import DimensionMismatch, full_set, nonempty_subsets


def test_lambda_one_variable_conjugate_families():
    # zbar on the disc: (alpha+1)/(alpha+2) below the winding, then 1/((alpha+1)(alpha+2))
    assert lambda_value((0,), (1,), (0,), {1}) == Fraction(1, 2)
    assert lambda_value((0,), (1,), (1,), {1}) == Fraction(1, 6)
    assert lambda_value((0,), (1,), (2,), {1}) == Fraction(1, 12)


def test_lambda_holomorphic_symbol_vanishes():
    assert lambda_value((2, 0), (0, 0), (3, 5), {1, 2}) == 0
    for a in range(5):
        assert lambda_value((3,), (0,), (a,), {1}) == 0


def test_lambda_mixed_two_variable_first_case():
    # alpha_2 = 0 < m_2 - n_2 = 1 fires the first case
    assert lambda_value((1, 0), (1, 1), (0, 0), {1, 2}) == Fraction(1, 6)


def test_lambda_errors():
    with pytest.raises(DimensionMismatch):
        lambda_value((0,), (1, 0), (0,), {1})
    with pytest.raises(ValueError):
        lambda_value((0,), (1,), (0,), set())
    with pytest.raises(ValueError):
        lambda_value((0,), (1,), (0,), {2})
    with pytest.raises(ValueError):
        lambda_value((-1,), (1,), (0,), {1})


def test_lambda_range_and_case_bound():
    # value in [0,1]; the second case never exceeds the first-case product
    for n1 in range(4):
        for m1 in range(4):
            for a1 in range(5):
                v = lambda_value((n1,), (m1,), (a1,), {1})
                assert 0 <= v <= 1
                if a1 >= m1 - n1:
                    first = Fraction(a1 + 1, a1 + n1 + m1 + 1)
                    assert v <= first


def test_lambda_permutation_symmetry():
    n, m, alpha = (1, 2, 0), (2, 0, 1), (3, 1, 2)
    base = lambda_value(n, m, alpha, {1, 2, 3})
    perm = (2, 0, 1)
    n2 = tuple(n[p] for p in perm)
    m2 = tuple(m[p] for p in perm)
    a2 = tuple(alpha[p] for p in perm)
    assert lambda_value(n2, m2, a2, {1, 2, 3}) == base
    # relabeled proper subset
    assert lambda_value(n, m, alpha, {2}) == lambda_value(n2, m2, a2, {3})


def test_limit_point_law():
    # lambda(alpha(j), B_n) -> lambda(alpha, B) as the off-B coordinates grow
    cases = [
        ((0, 1), (2, 1), (1, 0), frozenset({1})),
        ((1, 0, 2), (1, 3, 0), (0, 2, 1), frozenset({2, 3})),
        ((0, 0), (1, 1), (0, 0), frozenset({2})),
    ]
    for n, m, alpha, B in cases:
        dim = len(n)
        limit = lambda_value(n, m, alpha, B)
        for j in (1, 10, 100, 1000, 10**4):
            alpha_j = tuple(alpha[k] if (k + 1) in B else j for k in range(dim))
            moving = lambda_value(n, m, alpha_j, full_set(dim))
            assert abs(moving - limit) < Fraction(10, j)


def test_multiplicity_class():
    assert multiplicity_class(MonomialSymbol((0, 0), (2, 1))) is SymbolClass.ALL_FINITE
    assert multiplicity_class(MonomialSymbol((0, 0), (2, 0))) is SymbolClass.ALL_INFINITE
    assert multiplicity_class(MonomialSymbol((3, 1), (0, 0))) is SymbolClass.ZERO_OPERATOR
    assert multiplicity_class(MonomialSymbol((1,), (1,))) is SymbolClass.ALL_FINITE


def test_enumerate_spectrum_zbar_disc():
    spec = enumerate_spectrum(MonomialSymbol((0,), (1,)), 3)
    assert spec.value_set() == {
        Fraction(0),
        Fraction(1, 2),
        Fraction(1, 6),
        Fraction(1, 12),
        Fraction(1, 20),
    }
    assert spec.values() == sorted(spec.values())
    assert spec.truncated and spec.contains_zero


def test_enumerate_spectrum_holomorphic():
    spec = enumerate_spectrum(MonomialSymbol((1,), (0,)), 5)
    assert spec.value_set() == {Fraction(0)}
    assert not spec.truncated
    zero = spec.records[0]
    assert zero.is_eigenvalue and zero.multiplicity is MultiplicityClass.INFINITE


def test_enumerate_spectrum_two_variable():
    spec = enumerate_spectrum(MonomialSymbol((0, 0), (1, 1)), 2)
    values = spec.value_set()
    assert Fraction(1, 2) in values and Fraction(1, 4) in values
    half = spec.record_for(Fraction(1, 2))
    subsets = {p.subset for p in half.provenance}
    assert frozenset({1}) in subsets and frozenset({2}) in subsets
    quarter = spec.record_for(Fraction(1, 4))
    assert {p.subset for p in quarter.provenance} == {frozenset({1, 2})}
    assert quarter.is_eigenvalue and not quarter.is_limit_point
    assert quarter.multiplicity is MultiplicityClass.FINITE
    assert half.is_limit_point and not half.is_eigenvalue


def test_enumerate_merges_provenance_across_subsets():
    # for zb1 on D^2 the trivial second coordinate duplicates every value
    spec = enumerate_spectrum(MonomialSymbol((0, 0), (1, 0)), 2)
    half = spec.record_for(Fraction(1, 2))
    subsets = {p.subset for p in half.provenance}
    assert frozenset({1}) in subsets and frozenset({1, 2}) in subsets
    assert half.is_eigenvalue and half.is_limit_point
    assert half.multiplicity is MultiplicityClass.INFINITE


def test_zero_value_flags_when_not_an_eigenvalue():
    spec = enumerate_spectrum(MonomialSymbol((0,), (1,)), 2)
    zero = spec.record_for(Fraction(0))
    assert zero.is_limit_point and not zero.is_eigenvalue
    assert zero.multiplicity is None


def test_essential_equals_spectrum_for_infinite_multiplicity():
    sym = MonomialSymbol((0, 0), (1, 0))
    for cap in (2, 3, 5):
        assert (
            enumerate_essential_spectrum(sym, cap).value_set()
            == enumerate_spectrum(sym, cap).value_set()
        )


def test_essential_proper_subsets_only():
    sym = MonomialSymbol((0, 0), (1, 1))
    ess = enumerate_essential_spectrum(sym, 2)
    assert Fraction(1, 4) not in ess.value_set()
    assert Fraction(1, 2) in ess.value_set()
    assert all(r.is_limit_point for r in ess.records)
    # removed values are exactly the ones attainable only with B = B_n
    spec = enumerate_spectrum(sym, 2)
    full = full_set(2)
    full_only = {
        r.value
        for r in spec.records
        if r.provenance and all(p.subset == full for p in r.provenance)
    }
    assert ess.value_set() == spec.value_set() - full_only


def test_essential_dim_one_is_zero_only():
    ess = enumerate_essential_spectrum(MonomialSymbol((1,), (1,)), 8)
    assert ess.value_set() == {Fraction(0)}


def test_essential_zero_operator_warns():
    ess = enumerate_essential_spectrum(MonomialSymbol((2,), (0,)), 3)
    assert ess.value_set() == {Fraction(0)}
    assert ess.note is not None


def test_enumeration_guards():
    sym = MonomialSymbol((0,), (1,))
    with pytest.raises(ValueError):
        enumerate_spectrum(sym, -1)
    wide = MonomialSymbol((0,) * 9, (1,) * 9)
    with pytest.raises(ValueError):
        enumerate_spectrum(wide, 1)
    assert enumerate_spectrum(wide, 0, max_dim=9).contains_zero


def test_m_zero_gives_zero_everywhere():
    for n in product(range(3), repeat=2):
        sym = MonomialSymbol(n, (0, 0))
        for B in nonempty_subsets(2):
            for alpha in product(range(3), repeat=2):
                assert lambda_value(n, (0, 0), alpha, B) == 0
        assert enumerate_spectrum(sym, 2).value_set() == {Fraction(0)}


def test_rayleigh_quotient_oracle_dim1():
    # core lambda equals the exact Galerkin Rayleigh quotient <H z^a, H z^a>/||z^a||^2
    from hankel_spectra.galerkin import scaled_gram_entry
    from hankel_spectra.multiindex import weight
    from hankel_spectra.symbols import PolySymbol
    from hankel_spectra.rational import CRat

    for n1, m1, a1 in product(range(5), repeat=3):
        sym = PolySymbol([(CRat(1), (n1,), (m1,))])
        lam = lambda_value((n1,), (m1,), (a1,), {1})
        gram = (scaled_gram_entry(sym, (a1,), (a1,)) * weight((a1,))).real_fraction()
        assert gram == lam


def test_rayleigh_quotient_oracle_dim2():
    from hankel_spectra.galerkin import scaled_gram_entry
    from hankel_spectra.multiindex import weight
    from hankel_spectra.symbols import PolySymbol
    from hankel_spectra.rational import CRat

    rng = range(5)
    for n in product(rng, repeat=2):
        for m in product(rng, repeat=2):
            sym = PolySymbol([(CRat(1), n, m)])
            for alpha in product(rng, repeat=2):
                lam = lambda_value(n, m, alpha, {1, 2})
                gram = (scaled_gram_entry(sym, alpha, alpha) * weight(alpha)).real_fraction()
                assert gram == lam
