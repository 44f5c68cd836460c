from fractions import Fraction as F

import pytest

from superschrod.realization import (SuperDiffOp, SuperSpace,
                                     build_realization, chi_eta_ops,
                                     derive_odd, enumerate_polyspace,
                                     poly_mono, verify_chi_eta,
                                     verify_relations)
from superschrod.superalgebra import build_algebra


def test_operator_shapes():
    ops = build_realization("ssch1", F(3, 4), 1)
    # H = d_t, P = d_x, M = m
    assert ops["H"].terms == [(poly_mono(ops["H"].space), 1, 0, ())]
    assert ops["P"].terms == [(poly_mono(ops["P"].space), 0, 1, ())]
    m_terms = ops["M"].terms
    assert len(m_terms) == 1 and m_terms[0][1:] == (0, 0, ())
    ops2 = build_realization("ssch2", 1, 2)
    # X+ = -phi d_x - m rho
    space = ops2["X+"].space
    assert sorted(ops2["X+"].terms, key=str) == sorted([
        (poly_mono(space, word=("phi",), coeff=-1), 0, 1, ()),
        (poly_mono(space, word=("rho",), coeff=-2), 0, 0, ()),
    ], key=str)


def test_odd_derivative_examples():
    space = SuperSpace.for_kind("ssch1", 1)
    theta = poly_mono(space, word=("theta",))
    theta_eta = poly_mono(space, word=("theta", "eta"))
    assert derive_odd("theta", theta) == poly_mono(space)
    assert derive_odd("theta", theta_eta) == poly_mono(space, word=("eta",))
    assert derive_odd("eta", theta_eta) == poly_mono(space, word=("theta",),
                                                     coeff=-1)


def test_apply_g_to_constant():
    ops = build_realization("ssch1", F(3, 4), 1)
    space = ops["G"].space
    out = ops["G"].apply(poly_mono(space))
    assert out == poly_mono(space, x=1) + poly_mono(space,
                                                    word=("theta", "eta"))


def test_clifford_eta_multiplication():
    # eta * eta inside polynomial products folds to -m/2
    space = SuperSpace.for_kind("ssch1", F(2, 3))
    eta = poly_mono(space, word=("eta",))
    assert eta * eta == poly_mono(space, coeff=F(-1, 3))


@pytest.mark.parametrize("kind,d,m,deg", [
    ("ssch1", F(3, 4), 1, 5),
    ("ssch1", F(1, 2), 0, 5),
    ("ssch2", 1, 2, 4),
    ("ssch2", F(1, 2), 0, 4),
])
def test_relations_hold(kind, d, m, deg):
    table = build_algebra(kind)
    ops = build_realization(kind, d, m)
    report = verify_relations(ops, table, deg, d=d, m=m)
    assert report.ok, report.failures[:3]
    assert report.certified_degree == deg


def test_operator_parity_additivity():
    for kind, m in (("ssch1", 1), ("ssch2", 2)):
        table = build_algebra(kind)
        ops = build_realization(kind, F(1, 3), m)
        for gen, op in ops.items():
            assert op.parity() == table.parity(gen), gen


def test_corrupted_realization_detected():
    table = build_algebra("ssch1")
    ops = build_realization("ssch1", F(3, 4), 1)
    g = ops["G"]
    theta_eta = poly_mono(g.space, word=("theta", "eta"))
    ops["G"] = SuperDiffOp(g.space, [t for t in g.terms
                                     if t[0] != theta_eta])
    assert len(ops["G"].terms) == len(g.terms) - 1
    report = verify_relations(ops, table, 3)
    assert not report.ok
    # [P,K] = G is the first relation whose right side lost the theta*eta
    # piece; the witness residual names it
    x, y, mono, residual = report.failures[0]
    assert (x, y) == ("P", "K")
    assert "thetaeta" in residual


def test_degree_raise_is_tracked():
    ops = build_realization("ssch1", F(3, 4), 1)
    # the x theta eta term of K raises total degree by 3
    assert ops["K"].max_degree_raise() == 3
    assert ops["H"].max_degree_raise() == -1


def test_chi_eta_identities():
    for m in (0, 1, 2, F(2, 3)):
        results = verify_chi_eta(m)
        assert results["chi_square"], m
        assert results["eta_square"], m
        assert results["anticommutator"], m
        assert results["scale_square"] == F(m, 2)


def test_chi_eta_raw_ops():
    raw_chi, raw_eta, s2 = chi_eta_ops(2)
    space = raw_chi.space
    one = poly_mono(space)
    phi = poly_mono(space, word=("phi",))
    assert raw_chi.apply(one) == phi
    assert raw_chi.apply(phi) == one
    assert raw_eta.apply(one) == phi
    assert raw_eta.apply(phi) == -one
    assert s2 == 1


def test_polyspace_enumeration():
    space = SuperSpace.for_kind("ssch2", 0)
    monos = enumerate_polyspace(space, 2)
    assert (0, 0, ()) in monos and (2, 0, ()) in monos
    assert (0, 0, ("theta", "phi")) in monos
    assert all(a + b + len(w) <= 2 for a, b, w in monos)
