import numpy as np
import pytest

from filterlab import oracle
from filterlab.pcgroup import PcGroup, parse_pcgroup

from conftest import load


def test_cayley_d8(d8):
    T = oracle.cayley_from_pc(d8)
    assert T.order == 8
    assert T.associativity_violation() is None
    # the two order-4 elements square to the same central involution
    order4 = [i for i in range(8) if T.mult(i, i) != T.identity]
    squares = {T.mult(i, i) for i in order4}
    assert len(order4) == 2 and len(squares) == 1


def test_cayley_c3_and_trivial():
    c3 = parse_pcgroup("p 3\nn 1\n")
    T = oracle.cayley_from_pc(c3)
    assert T.order == 3
    assert T.mult(1, 1) == 2 and T.mult(1, 2) == 0
    triv = parse_pcgroup("p 2\nn 0\n")
    T0 = oracle.cayley_from_pc(triv)
    assert T0.order == 1


def test_cayley_cap():
    big = parse_pcgroup("p 2\nn 5\n")
    with pytest.raises(ValueError):
        oracle.cayley_from_pc(big, cap=16)


def test_brute_series_examples(d8, h27):
    gam, zet = oracle.brute_series(oracle.cayley_from_pc(d8))
    assert [len(s) for s in gam] == [8, 2, 1]
    assert [len(s) for s in zet] == [1, 2, 8]
    gam, zet = oracle.brute_series(oracle.cayley_from_pc(h27))
    assert [len(s) for s in gam] == [27, 3, 1]
    assert [len(s) for s in zet] == [1, 3, 27]
    ab = parse_pcgroup("p 2\nn 3\n")
    gam, zet = oracle.brute_series(oracle.cayley_from_pc(ab))
    assert [len(s) for s in gam] == [8, 1]
    assert [len(s) for s in zet] == [1, 8]


def test_check_equiv_clean(d8):
    rep = oracle.check_equiv(d8, oracle.cayley_from_pc(d8))
    assert rep.ok, rep.discrepancies


def test_check_equiv_fault_injection():
    # legal-looking but inconsistent relations: the oracle names a bad product
    bad = PcGroup(
        2,
        4,
        {},
        {(2, 1): ((3, 1),), (3, 2): ((4, 1),)},
        check=False,
    )
    T = oracle.cayley_from_pc(bad)
    rep = oracle.check_equiv(bad, T)
    assert not rep.ok
    assert any("associative" in d or "mismatch" in d for d in rep.discrepancies)


def test_closure_matches_subgroup(d8):
    T = oracle.cayley_from_pc(d8)
    got = T.closure({T.index[d8.generator(3)]})
    assert len(got) == 2
    got = T.closure({T.index[d8.generator(1)], T.index[d8.generator(2)]})
    assert len(got) == 8
