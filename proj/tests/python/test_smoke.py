from fractions import Fraction

import pytest

import kohmoto


def test_farey():
    assert kohmoto.farey_distance("0", "1") == 1
    assert kohmoto.farey_distance("1/3", "2/5") == Fraction(1, 3)
    assert kohmoto.mediant("1/2", "2/3") == Fraction(3, 5)


def test_words():
    assert kohmoto.period_word("2/3") == "110"
    assert kohmoto.complexity("2/5", 7) == 5


def test_spectrum():
    s = kohmoto.spectrum_periodic(Fraction(1, 1), 5)
    assert s["bands"] == [["3/1", "3/1", "7/1", "7/1"]]
    d = kohmoto.defect_spectrum("2/3", "minus", 5, "1/1000000")
    assert len(d["points"]) == 3


def test_errors():
    with pytest.raises(kohmoto.PreconditionError):
        kohmoto.spectrum_periodic("3/2")
    with pytest.raises(kohmoto.UnsupportedRegime):
        kohmoto.optimality_certificate("1/2", "plus", V=2, kmax=10)


def test_cli_in_process():
    code, out, err = kohmoto.run_cli("farey", "dist", "1/3", "2/5")
    assert code == 0 and out.splitlines()[-1] == "1/3"
    code, _, _ = kohmoto.run_cli("spectrum", "bands", "--r", "3/2")
    assert code == 2


def test_butterfly():
    csv = kohmoto.butterfly_csv(1, fast=False, defects=False)
    assert csv == "q,p,kind,lo,hi\n1,0,band,-2/1,2/1\n1,1,band,3/1,7/1\n"
