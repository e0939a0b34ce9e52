import pytest

from filterlab import monoid as mon, series
from filterlab.monoid import GradedMonoid
from filterlab.pcgroup import (
    direct_product,
    full_subgroup,
    parse_pcgroup,
    subgroup_from_gens,
    trivial_subgroup,
)
from filterlab.series import (
    Filter,
    Layering,
    boxmap_to_json,
    exponent_p_lcs,
    lower_central,
    product_filter,
    product_layering,
    upper_central,
    verify_filter,
    verify_layering,
    verify_sift,
)

from conftest import load


def test_lower_central_examples(d8, h27):
    assert lower_central(d8).orders() == [8, 8, 2, 1]
    ab = parse_pcgroup("p 3\nn 2\n")
    assert lower_central(ab).orders() == [9, 9, 1]
    prod = direct_product(h27, h27)
    assert lower_central(prod).orders() == [3 ** 6, 3 ** 6, 9, 1]


def test_upper_central_examples(d8, q8):
    assert upper_central(d8).orders() == [1, 2, 8]
    assert upper_central(q8).orders() == [1, 2, 8]
    ab = parse_pcgroup("p 2\nn 2\n")
    assert upper_central(ab).orders() == [1, 4]


def test_exponent_p_examples(d8):
    c4 = load("c4")
    assert exponent_p_lcs(c4).orders()[1:] == [4, 2, 1]
    ab = parse_pcgroup("p 5\nn 2\n")
    assert exponent_p_lcs(ab).orders()[1:] == [25, 1]
    assert exponent_p_lcs(d8).orders()[1:] == [8, 2, 1]


def test_exponent_p_factors_elementary(corpus_groups):
    for name in ("c4", "g16_01_c16", "g81_10_m81", "g16_06_m4_2"):
        G = corpus_groups[name]
        f = exponent_p_lcs(G)
        grades = f.grades()
        for s, t in zip(grades[1:], grades[2:]):
            H, N = f.value(s), f.value(t)
            assert N.is_subset(H)
            for x in H.igs:
                assert N.contains(G.power(x, G.p))


def test_boundary_examples(d8):
    lc = lower_central(d8)
    assert lc.boundary_at((1,)).igs == subgroup_from_gens(d8, [d8.generator(3)]).igs
    uc = upper_central(d8)
    assert uc.boundary_at((1,)).order == 8
    bd = lc.boundary()
    assert not verify_filter(bd)
    bl = uc.boundary()
    assert not verify_layering(bl)


def test_boundary_of_product():
    d8a = parse_pcgroup("p 2\nn 3\npow 2 = g3\ncomm 2 1 = g3\n", name="a")
    d8b = parse_pcgroup("p 2\nn 3\npow 2 = g3\ncomm 2 1 = g3\n", name="b")
    G = direct_product(d8a, d8b)
    pf = product_filter([lower_central(d8a), lower_central(d8b)], G)
    expected = pf.value((2, 1)).join(pf.value((1, 2)))
    assert pf.boundary_at((1, 1)).igs == expected.igs


def test_axioms_on_basic_groups(corpus_groups):
    for name in ("d8", "q8", "h27", "m27", "h125", "g16_09_q16", "g81_10_m81"):
        G = corpus_groups[name]
        lc, uc, ep = lower_central(G), upper_central(G), exponent_p_lcs(G)
        assert not verify_filter(lc)
        assert not verify_filter(ep)
        assert not verify_layering(uc)
        assert not verify_sift(lc, uc)
        assert not verify_sift(ep, uc)


def test_trivial_filter_passes(d8):
    F = full_subgroup(d8)
    T = trivial_subgroup(d8)
    f = Filter(d8, GradedMonoid(1), (1,), {(0,): F, (1,): T})
    assert not verify_filter(f)


def test_fault_injected_filter_fails(d8):
    lc = lower_central(d8)
    table = dict(lc.table)
    table[(1,)], table[(2,)] = table[(2,)], table[(1,)]  # swap two gamma terms
    bad = Filter(d8, lc.monoid, lc.box, table)
    violations = verify_filter(bad)
    assert violations
    assert violations[0].witness is not None or violations[0].t is not None


def test_sift_witness_on_fault(d8):
    uc = upper_central(d8)
    table = dict(uc.table)
    table[(1,)] = trivial_subgroup(d8)
    bad = Layering(d8, uc.monoid, uc.box, table)
    assert verify_layering(bad) or verify_sift(lower_central(d8), bad)


def test_product_filter_values(q8):
    d8 = load("d8")
    G = direct_product(d8, q8)
    fa, fb = lower_central(d8), lower_central(q8)
    pf = product_filter([fa, fb], G)
    for a in range(4):
        for b in range(4):
            expect = fa.value((a,)).order * fb.value((b,)).order
            assert pf.value((a, b)).order == expect
    assert not verify_filter(pf)
    pl = product_layering([upper_central(d8), upper_central(q8)], G)
    assert not verify_layering(pl)
    assert not verify_sift(pf, pl)


def test_product_single_part(d8):
    f = lower_central(d8)
    same = product_filter([f], d8)
    assert same.orders() == f.orders()


def test_product_group_mismatch(d8, q8):
    with pytest.raises(ValueError):
        product_filter([lower_central(d8)], q8)


def test_sift_propagates_to_boundaries(d8, h27):
    for G in (d8, h27):
        f = exponent_p_lcs(G)
        l = upper_central(G)
        assert not verify_sift(f, l)
        # phi also sifts the boundary layering; the boundary filter sifts pi
        assert not verify_sift(f, l.boundary())
        assert not verify_sift(f.boundary(), l)


def test_strata_central(corpus_groups):
    # boundary^s / pi^s is central in pi^M / pi^s
    for name in ("d8", "h27", "g16_13_pauli"):
        G = corpus_groups[name]
        l = upper_central(G)
        full = full_subgroup(G)
        for s in l.grades():
            from filterlab.pcgroup import comm_subgroup

            c = comm_subgroup(full, l.boundary_at(s))
            assert c.is_subset(l.value(s))


def test_json_serialisation(d8):
    lc = lower_central(d8)
    blob = boxmap_to_json(lc)
    assert blob["box"] == [3]
    assert blob["monoid"] == {"dim": 1, "order": "pointwise"}
    assert len(blob["entries"]) == 4
    assert blob["entries"][0]["grade"] == [0]


def test_monoid_mismatch_errors(d8, q8):
    f = lower_central(d8)
    G = direct_product(d8, q8)
    pf = product_filter([lower_central(d8), lower_central(q8)], G)
    with pytest.raises(ValueError):
        verify_sift(f, upper_central(q8))  # different groups
    with pytest.raises(ValueError):
        verify_sift(pf, upper_central(G))  # same group, different monoid dim
