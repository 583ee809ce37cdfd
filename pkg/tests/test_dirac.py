"""Classification tests: induction, exclusions, degrees, enumeration.

Oracles: the rank-one degree is the exact pairing ratio computed
directly in the test; the fully compact degree must reproduce the
character dimension from the independent Freudenthal path.
"""

from fractions import Fraction as F

import pytest

from dirac_atlas.dirac import (
    EXCLUSION_ODD_PARITY,
    EXCLUSION_SINGULAR,
    EXCLUSION_UNEQUAL_RANK,
    chamber_of,
    dirac_induct,
    enumerate_discrete_series,
    formal_degree,
    pairing_compact_oracle,
    parameter_to_json,
    trace_product,
)
from dirac_atlas.errors import ValidationError
from dirac_atlas.repring import dimension, irr_character
from dirac_atlas.rootsys import (
    inner,
    is_regular,
    weight,
    weyl_group_order,
    wneg,
    wsub,
    wzero,
)
from dirac_atlas.spinmod import build_pair, get_pair, rescale_pair

SL2R = get_pair("sl2r")
SU21 = get_pair("su21")
SL2C = get_pair("sl2c")
CA1 = get_pair("compact_a1")
CA2 = get_pair("compact_a2")


def test_sl2r_zero_is_singular():
    res = dirac_induct((0,), SL2R)
    assert not res.ok and res.exclusion == EXCLUSION_SINGULAR


@pytest.mark.parametrize("n", [1, 2, 3, 5, -1, -4])
def test_sl2r_degree_is_ratio_oracle(n):
    res = dirac_induct((n,), SL2R)
    assert res.ok
    g = SL2R.g
    alpha = g.positive_roots[0]
    lam = weight([n])
    oracle = inner(lam, alpha, g) / inner(g.rho, alpha, g)
    assert res.parameter.signed_trace == oracle == F(n)
    assert res.parameter.formal_degree == abs(oracle)
    assert res.parameter.lam == lam
    assert res.parameter.min_k_type.highest_weight == lam  # rho_K = 0


@pytest.mark.parametrize("m", range(6))
def test_compact_a1_degree_equals_dimension(m):
    res = dirac_induct((m,), CA1)
    assert res.ok
    dim = dimension(irr_character((m,), CA1.k))
    assert res.parameter.formal_degree == F(dim)


def test_formal_degree_at_rho_is_one():
    for pair in (SL2R, SU21, CA1, CA2):
        assert trace_product(pair.g.rho, pair) == 1
        assert formal_degree(pair.g.rho, pair) == 1


def test_sl2r_antidominant_signed_value():
    assert trace_product(wneg(SL2R.g.rho), SL2R) == -1
    assert formal_degree(wneg(SL2R.g.rho), SL2R) == 1


def test_formal_degree_rejects_singular():
    with pytest.raises(ValidationError):
        formal_degree(wzero(2), SU21)


def test_chamber_ids():
    g = SU21.g
    assert chamber_of(g.rho, g) == 0
    assert chamber_of(wneg(g.rho), g) == weyl_group_order(g) - 1
    assert chamber_of(weight([2]), SL2R.g) == 0
    with pytest.raises(ValidationError):
        chamber_of(wzero(2), g)


def test_enumerate_sl2c_empty_for_all_bounds():
    for bound in (0, 1, 10, 100, F(999, 7)):
        assert enumerate_discrete_series(SL2C, bound) == []


def test_enumerate_sl2r_exact_set():
    params = enumerate_discrete_series(SL2R, F(9, 2))
    lams = [p.lam for p in params]
    assert lams == [
        weight([-1]),
        weight([1]),
        weight([-2]),
        weight([2]),
        weight([-3]),
        weight([3]),
    ]
    assert [p.formal_degree for p in params] == [1, 1, 2, 2, 3, 3]


def test_enumerate_su21_chambers_and_roundtrip():
    params = enumerate_discrete_series(SU21, 20)
    assert params
    chambers = {p.chamber_id for p in params}
    assert len(chambers) == 3  # |W_G| / |W_K|
    lams = set()
    for p in params:
        assert is_regular(p.lam, SU21.g)
        assert wsub(p.lam, SU21.k.rho) == p.min_k_type.highest_weight
        lams.add(p.lam)
    assert len(lams) == len(params)


def test_exclusion_soundness_grid():
    for a in range(-1, 4):
        for b in range(-1, 4):
            mu = weight([a, b])
            if SU21.k.coroot_pairing(mu, 0) < 0:
                continue  # not K-dominant: precondition violation, not exclusion
            res = dirac_induct(mu, SU21)
            lam = tuple(x + y for x, y in zip(mu, SU21.k.rho))
            if is_regular(lam, SU21.g):
                assert res.ok
            else:
                assert res.exclusion == EXCLUSION_SINGULAR


def test_odd_parity_exclusion_and_order_of_checks():
    odd = build_pair("A1", [], dim_g_mod_k=3)
    assert odd.parity == 1
    res = dirac_induct((1,), odd)
    assert res.exclusion == EXCLUSION_ODD_PARITY
    assert enumerate_discrete_series(odd, 50) == []
    # unequal rank wins over parity for sl2c
    res = dirac_induct((0, 0), SL2C)
    assert res.exclusion == EXCLUSION_UNEQUAL_RANK


def test_non_dominant_k_type_rejected():
    with pytest.raises(ValidationError):
        dirac_induct((-1, -1), SU21)
    with pytest.raises(ValidationError):
        dirac_induct((F(1, 3), F(0)), SU21)


def test_degree_roots_switch():
    res_pos = dirac_induct((1, 0), CA2, degree_roots="positive")
    res_simple = dirac_induct((1, 0), CA2, degree_roots="simple")
    assert res_pos.parameter.formal_degree == 3  # dim of the standard rep
    # simple-roots reading drops the highest-root factor 3/2
    assert res_simple.parameter.formal_degree == 2
    with pytest.raises(ValidationError):
        dirac_induct((1, 0), CA2, degree_roots="bogus")


def test_compact_pairing_oracle():
    assert pairing_compact_oracle((1,), (1,), CA1) == 1
    assert pairing_compact_oracle((2,), (0,), CA1) == 0
    assert pairing_compact_oracle((0, 0), (0, 0), CA2) == 1
    with pytest.raises(ValidationError):
        pairing_compact_oracle((0,), (0,), SL2R)


def test_compact_pairing_sum_of_squares_is_one():
    labels = [(a,) for a in range(5)]
    for h in labels:
        total = sum(pairing_compact_oracle(h, v, CA1) ** 2 for v in labels)
        assert total == 1


def test_rescaled_form_leaves_classification_alone():
    scaled = rescale_pair(SU21, 7)
    for a in range(3):
        for b in range(3):
            mu = weight([a, b])
            if SU21.k.coroot_pairing(mu, 0) < 0:
                continue
            r1 = dirac_induct(mu, SU21)
            r2 = dirac_induct(mu, scaled)
            assert r1.ok == r2.ok and r1.exclusion == r2.exclusion
            if r1.ok:
                assert r1.parameter.formal_degree == r2.parameter.formal_degree
                assert r1.parameter.chamber_id == r2.parameter.chamber_id
    base = enumerate_discrete_series(SU21, 10)
    again = enumerate_discrete_series(scaled, 70)
    assert [p.lam for p in base] == [p.lam for p in again]


def test_sp4r_chamber_count_and_degree():
    pair = get_pair("sp4r")
    params = enumerate_discrete_series(pair, F(20))
    # |W(C2)| / |W_K| = 8 / 2 chambers meet the K-dominant cone
    assert len({p.chamber_id for p in params}) == 4
    # lambda = (1, 1/2): ratios over the four positive roots are
    # 1, 1/2, 2/3, 3/4 (computed by hand from the bilinear form)
    lam = weight([1, F(1, 2)])
    assert trace_product(lam, pair) == F(1, 4)
    by_lam = {p.lam: p for p in params}
    assert by_lam[lam].formal_degree == F(1, 4)
    assert by_lam[lam].min_k_type.highest_weight == weight([0, 1])


def test_enumeration_matches_bruteforce_box_scan():
    # independent oracle: plain wide box scan with exact filters only
    bound = F(25)
    for pair in (SU21, SL2R):
        brute = []
        import itertools

        for coords in itertools.product(range(-12, 13), repeat=pair.g.rank):
            mu = weight(coords)
            if any(
                pair.k.coroot_pairing(mu, i) < 0
                for i in range(len(pair.k.simple_roots))
            ):
                continue
            lam = tuple(a + b for a, b in zip(mu, pair.k.rho))
            if inner(lam, lam, pair.g) > bound:
                continue
            res = dirac_induct(mu, pair)
            if res.ok:
                brute.append(res.parameter.lam)
        got = [p.lam for p in enumerate_discrete_series(pair, bound)]
        assert sorted(brute) == sorted(got)
        assert len(got) == len(set(got))


def test_parameter_json_shape():
    p = dirac_induct((2,), SL2R).parameter
    js = parameter_to_json(p)
    assert js == {
        "pair": "sl2r",
        "lambda": ["2"],
        "mu": ["2"],
        "formal_degree": "2",
        "signed_trace": "2",
        "chamber_id": 0,
    }


def test_enumeration_bound_validation():
    with pytest.raises(ValidationError):
        enumerate_discrete_series(SL2R, -1)
    assert enumerate_discrete_series(SL2R, 0) == []
