from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from ramlab.ramify import (
    ClassFun,
    FiniteGroup,
    RamPoint,
    artin_flat,
    artin_flat_direct,
    delta_value,
    different_val,
    induce,
    inner,
    jumps_lower,
    jumps_upper,
    kummer_i_value,
    permutation_character,
    phi_upper,
    ram_from_kummer,
    subgroup_as_group,
    swan_nat,
)
from ramlab.valgroup import DomainError, GammaVal

PRIMES = [2, 3, 5, 7]


def s3():
    # permutations of {0,1,2} in a fixed order; identity first
    import itertools
    perms = list(itertools.permutations(range(3)))
    idx = {q: k for k, q in enumerate(perms)}
    table = [[idx[tuple(a[b[x]] for x in range(3))] for b in perms] for a in perms]
    return FiniteGroup(table)


@pytest.mark.parametrize("p", PRIMES)
def test_mu_p_fixture(p):
    rp = ram_from_kummer(p, p, F(1, 3))
    jump = GammaVal(F(1, p - 1), F(1, p))
    assert jumps_lower(rp) == [jump]
    assert phi_upper(rp, jump) == GammaVal(F(p, p - 1), F(1, p))
    assert jumps_upper(rp) == [GammaVal(F(p, p - 1), F(1, p))]
    a = artin_flat(rp)
    assert a(0) == p
    assert all(a(g) == F(-p, p - 1) for g in range(1, p))
    assert swan_nat(rp) == ClassFun.zero(rp.group)
    assert different_val(rp) == GammaVal(1, F(p - 1, p))
    assert delta_value(rp) == p
    assert inner(a, ClassFun.regular(rp.group)) == p


@pytest.mark.parametrize("n, p", [(2, 3), (3, 2), (5, 3), (6, 5)])
def test_tame_kummer(n, p):
    rp = ram_from_kummer(n, p)
    assert jumps_lower(rp) == [GammaVal(0, F(1, n))]
    assert all(v == GammaVal(0, F(1, n)) for v in rp.i_map.values())
    assert different_val(rp) == GammaVal(0, F(n - 1, n))
    assert delta_value(rp) == 0


def test_trivial_group():
    rp = ram_from_kummer(1, 5)
    assert rp.group.order == 1
    assert jumps_lower(rp) == []
    assert phi_upper(rp, GammaVal(F(2, 3), 1)) == GammaVal(F(2, 3), 1)
    assert artin_flat(rp) == ClassFun.zero(rp.group)
    assert swan_nat(rp) == ClassFun.zero(rp.group)
    assert different_val(rp) == GammaVal()
    assert delta_value(rp) == 0


def test_phi_fixes_zero():
    assert phi_upper(ram_from_kummer(9, 3), GammaVal()) == GammaVal()


def test_kummer_i_values_mixed_order():
    # n = 12, p = 2: 1 - zeta is a unit unless zeta has 2-power order
    assert kummer_i_value(6, 12, 2) == GammaVal(0, F(1, 12))
    assert kummer_i_value(2, 12, 2) == GammaVal(1, F(1, 12))
    assert kummer_i_value(4, 12, 2) == GammaVal(F(1, 2), F(1, 12))
    assert kummer_i_value(3, 12, 2) == GammaVal(0, F(1, 12))
    assert kummer_i_value(12, 12, 2) == GammaVal(0, F(1, 12))


@pytest.mark.parametrize("n, p", [(4, 2), (9, 3), (8, 2), (6, 2), (10, 5)])
def test_direct_and_filtered_forms_agree(n, p):
    rp = ram_from_kummer(n, p)
    assert artin_flat(rp) == artin_flat_direct(rp)


def test_induction_examples():
    G = s3()
    H, emb = subgroup_as_group(G, G.generated([1]))
    u = ClassFun.augmentation(H)
    assert induce(u, G, emb)(0) == G.order - G.order // H.order
    cf = ClassFun.regular(G)
    assert induce(cf, G) == cf
    assert induce(ClassFun.zero(H), G, emb) == ClassFun.zero(G)
    assert inner(ClassFun.regular(G), ClassFun.regular(G)) == G.order
    assert inner(ClassFun.augmentation(G), ClassFun.trivial(G)) == 0
    # Frobenius reciprocity with the trivial character
    assert inner(permutation_character(G, emb), ClassFun.trivial(G)) == 1


def test_group_validation():
    with pytest.raises(DomainError):
        FiniteGroup([[0, 1], [1, 1]])
    G = s3()
    assert len(G.classes) == 3
    assert sorted(len(c) for c in G.classes) == [1, 2, 3]
    assert FiniteGroup.from_json({"cyclic": 5}) == FiniteGroup.cyclic(5)
    assert FiniteGroup.from_json(G.to_json()) == G


def test_classfun_must_be_class_constant():
    G = s3()
    with pytest.raises(DomainError):
        ClassFun(G, (1, 2, 3, 4, 5, 6))


def test_rampoint_validation():
    C4 = FiniteGroup.cyclic(4)
    g0 = GammaVal(0, F(1, 4))
    good = {1: GammaVal(F(1, 2), F(1, 4)), 2: GammaVal(1, F(1, 4)), 3: GammaVal(F(1, 2), F(1, 4))}
    RamPoint(C4, good, g0, 2)
    with pytest.raises(DomainError):
        RamPoint(C4, {1: GammaVal(1, 0), 2: GammaVal(1, 0)}, g0, 2)  # missing element
    with pytest.raises(DomainError):
        RamPoint(C4, good, g0, 4)  # not prime
    with pytest.raises(DomainError):
        RamPoint(C4, good, g0, 3)  # wild part not a 3-group
    with pytest.raises(DomainError):
        RamPoint(C4, good, GammaVal(0, 0), 2)  # gamma0 not positive
    bad = dict(good)
    bad[2] = GammaVal(F(1, 4), F(1, 4))  # {1,x : i >= 1/2} = {0,1,3} is not a subgroup
    with pytest.raises(DomainError):
        RamPoint(C4, bad, g0, 2)


def test_rampoint_json_round_trip():
    rp = ram_from_kummer(8, 2, F(1, 2))
    back = RamPoint.from_json(rp.to_json())
    assert back.i_map == rp.i_map and back.gamma0 == rp.gamma0 and back.group == rp.group


@given(st.integers(1, 24), st.sampled_from(PRIMES))
def test_swan_eps_vanishes_for_kummer(n, p):
    assert swan_nat(ram_from_kummer(n, p)) == ClassFun.zero(FiniteGroup.cyclic(n))


@given(st.integers(1, 24), st.sampled_from(PRIMES))
def test_artin_flat_sums_to_zero_on_regular_trivial(n, p):
    a = artin_flat(ram_from_kummer(n, p))
    # a(1) balances the other values: the pairing with the trivial character vanishes
    assert inner(a, ClassFun.trivial(a.group)) == 0
