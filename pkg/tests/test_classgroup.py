import math

import pytest
from hypothesis import given, settings, strategies as st

from noncongruent.arith import factor_squarefree, v2
from noncongruent.classgroup import (
    Discriminant, TernaryWitness, class_number, discriminant, eight_rank_jung_yue,
    eight_rank_quartic_553, eight_rank_quartic_5557, eight_rank_waterhouse, k_set, redei,
    ternary_solve, ternary_witnesses, waterhouse_vector,
)
from noncongruent.errors import BadInput, BudgetExceeded, UnsupportedFourRank, UnsupportedSplit
from oracles import analytic_class_number


def _squarefree_odd(m):
    try:
        factor_squarefree(m)
        return True
    except ValueError:
        return False


odd_sqfree = st.integers(1, 12_000).map(lambda k: 2 * k + 1).filter(_squarefree_odd)


@settings(max_examples=25)
@given(odd_sqfree.filter(lambda m: m > 3))
def test_class_number_matches_analytic_formula(m):
    # the oracle formula needs D < -4
    d = discriminant(m)
    assert class_number(d).h == analytic_class_number(d.D)


@given(odd_sqfree)
def test_genus_theory_lower_bound(m):
    res = class_number(m)
    n_primes = len(redei(m).prime_list)
    assert res.v2 >= n_primes - 1
    assert res.h % (1 << res.v2) == 0 and (res.h >> res.v2) % 2 == 1


@pytest.mark.parametrize("m,h", [(5, 2), (65, 8), (1443, 8), (185, 16), (70115, 88), (3789955, 224)])
def test_class_number_examples(m, h):
    assert class_number(m).h == h


def test_discriminant():
    assert discriminant(5) == Discriminant(5, -20)
    assert discriminant(155) == Discriminant(155, -155)
    for bad in (2, 1, 45):
        with pytest.raises(BadInput):
            discriminant(bad)


def test_budget():
    with pytest.raises(BudgetExceeded):
        class_number(3789955, budget=10**6)


@pytest.mark.parametrize("m,r4", [(5, 0), (21, 0), (17, 1), (41, 1), (155, 1), (65, 1), (2035, 1)])
def test_four_rank(m, r4):
    rd = redei(m)
    assert rd.four_rank == r4
    # 2^(r2 + r4) divides h
    assert v2(class_number(m).h) >= len(rd.prime_list) - 1 + r4


def test_redei_prime_order():
    assert redei(65).prime_list == (2, 5, 13)
    assert redei(155).prime_list == (5, 31)


def test_k_set():
    rd = redei(155)
    K = k_set(rd)
    assert len(K) == 2 ** (rd.four_rank + 1)
    assert 1 in K and 155 in K


@pytest.mark.parametrize("m", [17, 41, 73, 155, 65, 8515, 2035, 3789955])
def test_ternary_witnesses_valid(m):
    rd = redei(m)
    d = next(d for d in k_set(rd) if d not in (1, m))
    ws = ternary_witnesses(d, rd.disc, count=3)
    assert len({(w.x, w.y, w.z) for w in ws}) == 3
    assert all(w.check(rd.disc.D) for w in ws)
    assert ternary_solve(d, rd.disc) == ws[0]
    assert len(waterhouse_vector(rd, ws[0])) == len(rd.prime_list)


@pytest.mark.parametrize("m", [17, 41, 73, 155, 65, 8515, 1443, 2035, 3789955, 2445755, 185])
def test_waterhouse_matches_bridge(m):
    rd = redei(m)
    expect = 1 if v2(class_number(m).h) >= len(rd.prime_list) + 1 else 0
    assert {eight_rank_waterhouse(rd, witness_index=i) for i in range(3)} == {expect}


def test_waterhouse_requires_four_rank_one():
    with pytest.raises(UnsupportedFourRank):
        eight_rank_waterhouse(redei(21))


def test_quartic_fast_paths():
    assert eight_rank_quartic_5557([5, 13, 197], 191) == 0
    assert eight_rank_quartic_5557([13, 37, 109], 263) == 1
    assert eight_rank_quartic_553([5, 37], 11) == 0


@pytest.mark.parametrize("P", [(5, 13), (5, 37), (13, 37)])
def test_jung_yue_matches_bridge(P):
    Pn = math.prod(P)
    expect = 1 if v2(class_number(Pn).h) >= len(P) + 2 else 0
    assert eight_rank_jung_yue(P) == expect


def test_jung_yue_split_errors():
    with pytest.raises(UnsupportedSplit):
        eight_rank_jung_yue((5, 17), split=(5, 17))
    with pytest.raises(BadInput):
        eight_rank_jung_yue((5, 13), split=(1, 5))


def test_ternary_witness_check():
    assert TernaryWitness(1, 2, 1, 0).check(-20)
    assert not TernaryWitness(1, 4, 2, 0).check(-20)
