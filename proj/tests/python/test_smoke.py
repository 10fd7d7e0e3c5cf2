from fractions import Fraction

import pytest

import specmult

C4 = (4, [(0, 1), (1, 2), (2, 3), (3, 0)])
C6 = (6, [(i, (i + 1) % 6) for i in range(6)])
STAR = (4, [(0, 1), (0, 2), (0, 3)])


def test_version():
    assert specmult.__version__ == "0.1.0"


def test_graph_text_round_trip():
    assert specmult.graph_text(C4) == "4 4\n0 1\n1 2\n2 3\n3 0\n"
    assert specmult.analyze(specmult.graph_text(C4)) == specmult.analyze(C4)


def test_analyze_cycle():
    report = specmult.analyze(C4)
    assert report["theta"] == 1
    assert report["p"] == 0


def test_multiplicities():
    assert specmult.multiplicity(C4, 0)["multiplicity"] == 2
    assert specmult.multiplicity(STAR, Fraction(0))["multiplicity"] == 2
    assert specmult.multiplicity(STAR, "1/2")["multiplicity"] == 0
    # 2cos(2 pi / 6) = 1 has multiplicity 2 in C_6; as a root of x - 1.
    assert specmult.multiplicity(C6, minpoly=[-1, 1], near=1.0)["multiplicity"] == 2
    # x^2 - 3 carries the star's nonzero eigenvalues.
    assert specmult.multiplicity(STAR, minpoly=[-3, 0, 1], near=1.7)["multiplicity"] == 1


def test_upper_bound_and_classifier():
    report = specmult.check_upper_bound(C6, 1)
    assert report["holds"]
    assert report["lhs"] == report["rhs"] == 2
    assert specmult.classify(C6, 1)["verdict"] == "AttainsBound"
    assert specmult.classify(STAR, 0)["verdict"] == "OneDeficientFormA"


def test_spectrum_accounts_for_every_eigenvalue():
    spec = specmult.spectrum(C6)
    assert sum(e["multiplicity"] for e in spec["eigenvalues"]) == 6


def test_errors_carry_a_kind():
    disconnected = (4, [(0, 1), (2, 3)])
    with pytest.raises(specmult.SpecmultError) as info:
        specmult.check_upper_bound(disconnected, 0)
    assert info.value.kind == "NotConnected"
    with pytest.raises(specmult.SpecmultError):
        specmult.multiplicity(C4)


def test_verify_small_campaign_is_deterministic():
    first = specmult.verify("trees", cap=6)
    assert first == specmult.verify("trees", cap=6)
    summary = first[-1]
    assert summary["summary"] is True
    assert summary["discrepancies"] == 0
