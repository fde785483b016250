"""Boundary slices, slice-norm profiles, and essential-set predictions."""

import cmath
import math

import numpy as np
import pytest

from hankel_spectra import (
    BasisTruncation,
    MonomialSymbol,
    assemble,
    circle_abs_sq_range,
    containment_report,
    enumerate_spectrum,
    eigenvalues,
    parse_symbol,
    product_essential_prediction,
    separable_essential_prediction,
    slice_norm_profile,
    slice_symbol,
)
from hankel_spectra.boundary import sup_norm_on_torus
from hankel_spectra.rational import CRat
from hankel_spectra.symbols import PolySymbol


def test_slice_symbol_exact_points():
    sym = parse_symbol("zb1*(zb2+1)")
    assert slice_symbol(sym, CRat(1), 2) == parse_symbol("2*zb1")
    assert slice_symbol(sym, CRat(-1), 2).is_zero


def test_slice_symbol_unimodular_factor():
    sym = parse_symbol("zb1^2*zb2^3")
    q = cmath.exp(0.4j)
    sliced = slice_symbol(sym, q, 2)
    (c, h, a), = sliced.terms
    assert (h, a) == ((0,), (2,))
    assert abs(abs(complex(c)) - 1.0) < 1e-14
    assert abs(complex(c) - q.conjugate() ** 3) < 1e-14


def test_slice_symbol_guards():
    with pytest.raises(ValueError):
        slice_symbol(parse_symbol("zb1"), 1.0, 1)
    with pytest.raises(ValueError):
        slice_symbol(parse_symbol("zb1*zb2"), 0.5, 1)
    with pytest.raises(ValueError):
        slice_symbol(parse_symbol("zb1*zb2"), CRat(2), 1)


def test_profile_monomial_constant():
    # conjugate monomials have constant slice norms in every coordinate
    trunc = BasisTruncation(8, 2)
    for n in (1, 2, 3):
        for m in (1, 2, 3):
            sym = parse_symbol(f"zb1^{n}*zb2^{m}")
            for coord in (1, 2):
                prof = slice_norm_profile(sym, coord, 8, trunc)
                assert prof.constant
                assert prof.vmax - prof.vmin <= 1e-10 * prof.vmax


def test_profile_product_symbol_range():
    # lambda_q = |1 + conj(q)|^2 * ||H_zb||^2 sweeps [0, 4 * 1/2]
    trunc = BasisTruncation(10, 2)
    prof = slice_norm_profile(parse_symbol("zb1*(zb2+1)"), 2, 64, trunc)
    assert not prof.constant
    assert abs(prof.vmax - 2.0) < 1e-10
    assert prof.vmin < 1e-12
    theta0 = prof.values[0]  # q = 1
    assert abs(theta0 - 2.0) < 1e-12


def test_profile_holomorphic_zero():
    prof = slice_norm_profile(parse_symbol("z1*z2"), 2, 8, BasisTruncation(6, 2))
    assert prof.constant and prof.vmax <= 1e-12


def test_profile_scaling_law():
    trunc = BasisTruncation(6, 2)
    sym = parse_symbol("zb1*(zb2+1)")
    base = slice_norm_profile(sym, 2, 16, trunc)
    scaled = slice_norm_profile(sym * 3, 2, 16, trunc)
    assert np.allclose(np.array(scaled.values), 9.0 * np.array(base.values), rtol=1e-12)
    # exact form of the scaling law on the assembled matrices
    m1 = assemble(sym, trunc)
    m2 = assemble(sym * 3, trunc)
    for i in range(m1.size):
        for j in range(m1.size):
            assert m2.scaled[i][j] == m1.scaled[i][j] * 9


def test_profile_unimodular_rotation_is_cyclic_shift():
    # multiplying the z2-dependence by a grid rotation shifts the profile
    trunc = BasisTruncation(6, 2)
    samples = 16
    sym = parse_symbol("zb1*(zb2+1)")
    shift = 3
    theta0 = 2.0 * math.pi * shift / samples
    w = cmath.exp(1j * theta0)
    rotated = PolySymbol(
        [(c * (w ** h[1]) * (w.conjugate() ** a[1]), h, a) for c, h, a in sym.terms],
        dim=2,
    )
    base = slice_norm_profile(sym, 2, samples, trunc)
    rot = slice_norm_profile(rotated, 2, samples, trunc)
    assert np.allclose(np.roll(base.values, -shift), rot.values, atol=1e-10)


def test_profile_lipschitz_in_q():
    # |lambda_q1 - lambda_q2| <= C ||psi_q1 - psi_q2||_inf with C the norm sum
    trunc = BasisTruncation(8, 2)
    sym = parse_symbol("zb1*(zb2+1)")
    prof = slice_norm_profile(sym, 2, 32, trunc)
    for i, j in ((0, 1), (3, 9), (10, 25), (7, 8)):
        q1 = cmath.exp(1j * prof.thetas[i])
        q2 = cmath.exp(1j * prof.thetas[j])
        diff = slice_symbol(sym, q1, 2) - slice_symbol(sym, q2, 2)
        sup = sup_norm_on_torus(diff, 128)
        c = math.sqrt(prof.values[i]) + math.sqrt(prof.values[j])
        assert abs(prof.values[i] - prof.values[j]) <= c * sup + 1e-12


def test_circle_range():
    lo, hi = circle_abs_sq_range(parse_symbol("zb1+1"), 128)
    assert abs(lo) < 1e-10 and abs(hi - 4.0) < 1e-10
    lo, hi = circle_abs_sq_range(parse_symbol("zb1"), 64)
    assert abs(lo - 1.0) < 1e-12 and abs(hi - 1.0) < 1e-12
    lo, hi = circle_abs_sq_range(parse_symbol("z1^2 + 2"), 256)
    assert abs(lo - 1.0) < 1e-9 and abs(hi - 9.0) < 1e-9


def test_product_prediction_interval():
    pred = product_essential_prediction(
        parse_symbol("zb1"), parse_symbol("zb1+1"), 128, alpha_cap=4
    )
    assert pred.covers_interval(0.0, 2.0, tol=1e-9)
    half = [iv for iv in pred.intervals if abs(iv.mu - 0.5) < 1e-12]
    assert half and abs(half[0].hi - 2.0) < 1e-9


def test_product_prediction_unimodular_chi():
    spec = enumerate_spectrum(MonomialSymbol((0,), (1,)), 4)
    pred = product_essential_prediction(
        parse_symbol("zb1"), parse_symbol("zb1"), 64, alpha_cap=4
    )
    assert not pred.intervals
    got = sorted(p.value for p in pred.points)
    want = sorted(set(spec.floats()))
    assert np.allclose(got, want, atol=1e-12)


def test_product_prediction_holomorphic_phi():
    pred = product_essential_prediction(
        parse_symbol("z1^2"), parse_symbol("zb1+1"), 64, alpha_cap=3
    )
    vals = [p.value for p in pred.points] + [iv.lo for iv in pred.intervals] + [
        iv.hi for iv in pred.intervals
    ]
    assert max(abs(v) for v in vals) < 1e-12


def test_separable_prediction():
    zb = parse_symbol("zb1")
    pred = separable_essential_prediction([zb, zb], 64, alpha_cap=3)
    # |zb|^2 = 1 on the circle: points are exactly the one-variable spectrum, twice
    spec_vals = sorted(set(enumerate_spectrum(MonomialSymbol((0,), (1,)), 3).floats()))
    got = sorted({round(p.value, 14) for p in pred.points})
    assert np.allclose(got, spec_vals, atol=1e-12)

    pred2 = separable_essential_prediction([zb, parse_symbol("zb1+1")], 64, alpha_cap=3)
    assert pred2.covers_interval(0.0, 2.0, tol=1e-9)

    pred3 = separable_essential_prediction([zb, parse_symbol("0", dim=1)], 64)
    assert [p.value for p in pred3.points] == [0.0] and not pred3.intervals


def test_containment_report_points_match_diagonal():
    sym = parse_symbol("zb1", dim=2)
    w = eigenvalues(assemble(sym, BasisTruncation(20, 2)))
    pred = product_essential_prediction(
        parse_symbol("zb1"), parse_symbol("zb1"), 64, alpha_cap=6
    )
    report = containment_report(pred, w, 1e-10)
    # every nonzero predicted point is a diagonal entry of the compression;
    # 0 is a pure limit point and only approached as N grows
    nonzero = [p for p in report["points"] if p["value"] > 0]
    assert nonzero and all(p["matched"] for p in nonzero)
    zero_gap = [p["gap"] for p in report["points"] if p["value"] == 0.0]
    assert zero_gap and zero_gap[0] < 3e-3


def test_containment_report_gap_trend():
    sym = parse_symbol("zb1*(zb2+1)")
    pred = product_essential_prediction(
        parse_symbol("zb1"), parse_symbol("zb1+1"), 64, alpha_cap=2
    )
    gaps = []
    for n in (8, 12):
        w = eigenvalues(assemble(sym, BasisTruncation(n, 2)))
        report = containment_report(pred, [float(x) for x in w], 1e-8)
        top = [iv for iv in report["intervals"] if iv["hi"] > 1.9]
        gaps.append(top[0]["max_gap"])
    assert gaps[1] < gaps[0]


def test_containment_report_empty_prediction():
    from hankel_spectra import EssentialSetPrediction

    report = containment_report(EssentialSetPrediction((), ()), [0.1, 0.2], 1e-8)
    assert report["points"] == [] and report["intervals"] == []
    with pytest.raises(ValueError):
        containment_report(EssentialSetPrediction((), ()), [], -1.0)


def test_threads_env_does_not_change_results(monkeypatch):
    sym = parse_symbol("zb1*(zb2+1)")
    trunc = BasisTruncation(5, 2)
    base = slice_norm_profile(sym, 2, 8, trunc)
    monkeypatch.setenv("HANKEL_SPECTRA_THREADS", "4")
    threaded = slice_norm_profile(sym, 2, 8, trunc)
    assert threaded.values == base.values


def test_boundary_slice_record():
    from hankel_spectra.boundary import BoundarySlice

    sym = parse_symbol("zb1*(zb2+1)")
    rec = BoundarySlice.at(sym, CRat(1), 2)
    assert rec.slice_sym == parse_symbol("2*zb1") and rec.coord == 2
