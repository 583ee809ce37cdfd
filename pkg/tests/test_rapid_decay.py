"""Norm laboratory tests: lengths, balls, truncated norms, probes."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dirac_atlas.errors import ConvergenceError, DeskScaleError, ValidationError
from dirac_atlas.rapid_decay import (
    MarkedGroup,
    NormSpec,
    compute_norm_report,
    convolve,
    delta,
    fourier_sup_oracle,
    function_from_json,
    function_to_json,
    hs_norm,
    l1_norm,
    normalize_function,
    parse_group,
    rd_inequality_probe,
    reduce_word,
    reduced_norm_truncated,
    schur_multiply,
    support_radius,
    unconditionality_probe,
)

Z = MarkedGroup.integer_lattice(1)
Z2 = MarkedGroup.integer_lattice(2)
F2 = MarkedGroup.free_group(2)
FIN = MarkedGroup.from_table("s3")

F_TRIPLE = {(0,): 1, (1,): 1, (2,): 1}
F_FLIPPED = {(0,): 1, (1,): 1, (2,): -1}


def random_elements(group, rng, count, radius=4):
    ball = group.ball(radius)
    idx = rng.choice(len(ball), size=min(count, len(ball)), replace=False)
    return [ball[i] for i in idx]


@pytest.mark.parametrize("group", [Z, Z2, F2, FIN], ids=["z", "z2", "f2", "s3"])
def test_length_function_axioms_random(group):
    rng = np.random.default_rng(42)
    elems = random_elements(group, rng, 12, radius=3)
    assert group.length(group.identity()) == 0
    for a in elems:
        assert group.length(group.inv(a)) == group.length(a)
        for b in elems:
            assert group.length(group.mul(a, b)) <= group.length(a) + group.length(b)


@given(st.lists(st.sampled_from([1, -1, 2, -2]), max_size=12))
@settings(max_examples=50, deadline=None)
def test_reduce_word_properties(letters):
    w = reduce_word(letters)
    # reduced: no adjacent cancelling pair
    assert all(w[i] != -w[i + 1] for i in range(len(w) - 1))
    # reduction is idempotent
    assert reduce_word(w) == w


def test_free_convolution_respects_reduction():
    f = convolve(delta((1,)), delta((-1,)), F2)
    assert f == {(): 1 + 0j}
    g = convolve(delta((1, 2)), delta((-2, 1)), F2)
    assert g == {(1, 1): 1 + 0j}


def test_f2_ball_sizes():
    assert [len(F2.ball(r)) for r in range(5)] == [1, 5, 17, 53, 161]
    assert len(F2.sphere(3)) == 36


def test_ball_cap():
    with pytest.raises(DeskScaleError):
        F2.ball(14)
    with pytest.raises(DeskScaleError):
        MarkedGroup.integer_lattice(3).ball(200)


def test_l1_examples():
    assert l1_norm(normalize_function({(3,): 1}, Z)) == 1
    assert l1_norm(normalize_function({(0,): 1, (5,): 1}, Z)) == 2
    assert l1_norm(normalize_function({(0,): 1, (1,): -2j}, Z)) == 3


def test_hs_examples():
    for s in (0, 1, 2.5):
        assert hs_norm(delta(Z.identity()), s, Z) == 1
    assert hs_norm(delta((1,)), 2, Z) == 4  # (1+1)^2
    f = {(1,): 1, (-1,): 1}
    assert abs(hs_norm(f, 1, Z) - math.sqrt(8)) < 1e-12


def test_reduced_norm_of_delta_is_one():
    for radius in (0, 1, 5):
        assert abs(reduced_norm_truncated(delta((0,)), Z, radius) - 1) < 1e-9
    assert abs(reduced_norm_truncated(delta((1,)), F2, 3) - 1) < 1e-9


def test_reduced_norm_requires_covering_radius():
    with pytest.raises(ValidationError):
        reduced_norm_truncated(F_TRIPLE, Z, 1)
    assert support_radius(normalize_function(F_TRIPLE, Z), Z) == 2


def test_reduced_norm_monotone_and_below_l1():
    rng = np.random.default_rng(0)
    for _ in range(10):
        sup = random_elements(Z, rng, 4, radius=3)
        f = {g: complex(a, b) for g, a, b in zip(sup, rng.normal(size=4), rng.normal(size=4))}
        f = normalize_function(f, Z)
        if not f:
            continue
        r0 = support_radius(f, Z)
        v1 = reduced_norm_truncated(f, Z, r0 + 2)
        v2 = reduced_norm_truncated(f, Z, r0 + 10)
        assert v1 <= v2 + 1e-6
        assert v2 <= l1_norm(f) + 1e-6


def test_triple_function_reaches_three():
    val = reduced_norm_truncated(F_TRIPLE, Z, 100)
    assert 3 - 1e-2 <= val <= 3 + 1e-9


def test_fourier_oracle_brackets():
    br = fourier_sup_oracle(F_TRIPLE, Z)
    assert br.lower <= 3.0 <= br.upper
    assert br.upper - br.lower < 1e-3
    br2 = fourier_sup_oracle(F_FLIPPED, Z)
    assert abs(br2.lower - math.sqrt(5)) < 1e-6
    assert br2.upper - br2.lower < 1e-3
    with pytest.raises(ValidationError):
        fourier_sup_oracle(F_TRIPLE, F2)


def test_truncated_matches_oracle_flipped():
    val = reduced_norm_truncated(F_FLIPPED, Z, 200)
    oracle = fourier_sup_oracle(F_FLIPPED, Z)
    assert abs(val - oracle.lower) < 1e-3


def test_fourier_oracle_z2():
    f = {(0, 0): 1, (1, 0): 1, (0, 1): 1}
    br = fourier_sup_oracle(f, Z2, grid=1 << 12)
    assert br.lower <= 3.0 <= br.upper
    assert abs(br.lower - 3.0) < 1e-6


def test_power_iteration_non_convergence_reported():
    with pytest.raises(ConvergenceError) as exc:
        reduced_norm_truncated(F_TRIPLE, Z, 50, max_iter=3)
    assert exc.value.iterations == 3


def test_schur_multiply_examples():
    f = normalize_function({(0,): 1, (1,): 2, (5,): 1}, Z)
    assert schur_multiply(lambda g: 1.0, f) == f
    ball2 = set(Z.ball(2))
    truncated = schur_multiply(lambda g: 1.0 if g in ball2 else 0.0, f)
    assert truncated == {(0,): 1, (1,): 2}
    # weight (1+l)^{-s} converts the Sobolev norm into the plain l2 norm
    s = 2.0
    weighted = schur_multiply(lambda g: (1.0 + Z.length(g)) ** (-s), f)
    plain_l2 = math.sqrt(sum(abs(c) ** 2 for c in f.values()))
    assert abs(hs_norm(weighted, s, Z) - plain_l2) < 1e-12


def test_unconditional_norms_have_zero_deviation():
    f = {(0,): 1 + 1j, (1,): -2, (3,): 0.5j}
    rep = unconditionality_probe(NormSpec("l1"), f, Z, trials=100, seed=7)
    assert rep.max_deviation <= 1e-12
    rep = unconditionality_probe(NormSpec("hs", s=2.0), f, Z, trials=100, seed=7)
    assert rep.max_deviation <= 1e-12


def test_reduced_norm_is_not_unconditional():
    # regression fixture: the sign flip moves the norm from 3 to sqrt(5)
    v_plus = reduced_norm_truncated(F_TRIPLE, Z, 200)
    v_minus = reduced_norm_truncated(F_FLIPPED, Z, 200)
    assert v_plus - v_minus > 0.2
    rep = unconditionality_probe(
        NormSpec("reduced_truncated", radius=40), F_TRIPLE, Z, trials=25, seed=3
    )
    assert rep.max_deviation > 0.05
    assert rep.witness is not None


def test_probe_requires_trials():
    with pytest.raises(ValidationError):
        unconditionality_probe(NormSpec("l1"), F_TRIPLE, Z, trials=0, seed=1)
    with pytest.raises(ValidationError):
        NormSpec("hs").evaluate(F_TRIPLE, Z)
    with pytest.raises(ValidationError):
        NormSpec("bogus").evaluate(F_TRIPLE, Z)


def test_rd_probe_z_bounded():
    rep = rd_inequality_probe(Z, s=1.0, samples=20, seed=5, max_support_radius=40)
    assert rep.max_ratio <= 4.0
    assert len(rep.ratios) == 20
    assert "empirical" in rep.note


def test_rd_probe_f2_spheres():
    rep = rd_inequality_probe(F2, s=2.0, samples=10, seed=5, max_support_radius=4, sphere_supported=True)
    assert rep.max_ratio <= 4.0


def test_rd_probe_identity_ratio_one():
    ball = Z.ball(0)
    assert ball == [(0,)]
    val = reduced_norm_truncated(delta((0,)), Z, 4)
    assert abs(val / hs_norm(delta((0,)), 1.0, Z) - 1.0) < 1e-9


def test_rd_probe_rejects_finite_groups():
    with pytest.raises(ValidationError):
        rd_inequality_probe(FIN, s=1.0, samples=3, seed=1)


def test_norm_report_invariants():
    rep = compute_norm_report(F_TRIPLE, Z, s=1.0, radius=30)
    assert rep.red_lower <= rep.red_upper + 1e-6
    assert rep.red_upper == rep.l1 == 3.0


def test_l1_submultiplicative_random():
    rng = np.random.default_rng(12)
    for group in (Z, F2):
        for _ in range(8):
            sup1 = random_elements(group, rng, 3, radius=2)
            sup2 = random_elements(group, rng, 3, radius=2)
            f = {g: complex(a, b) for g, a, b in zip(sup1, rng.normal(size=3), rng.normal(size=3))}
            g_ = {g: complex(a, b) for g, a, b in zip(sup2, rng.normal(size=3), rng.normal(size=3))}
            assert l1_norm(convolve(f, g_, group)) <= l1_norm(f) * l1_norm(g_) + 1e-12


def test_custom_length_function():
    from dirac_atlas.rapid_decay import validate_length

    doubled = Z.with_length(lambda g: 2 * sum(abs(x) for x in g))
    validate_length(doubled, trials=100, seed=0)
    assert doubled.length((3,)) == 6
    assert hs_norm(delta((1,)), 1, doubled) == 3.0  # (1 + 2)^1
    bad = Z.with_length(lambda g: g[0])  # signed: not symmetric
    with pytest.raises(ValidationError):
        validate_length(bad, trials=200, seed=1)


def test_builtin_lengths_pass_validation():
    from dirac_atlas.rapid_decay import validate_length

    for group in (Z, Z2, F2, FIN):
        validate_length(group, trials=150, seed=3)


def test_schur_ratio_probe():
    from dirac_atlas.rapid_decay import schur_ratio_probe

    ball2 = set(Z.ball(2))
    rep = schur_ratio_probe(lambda g: 1.0 if g in ball2 else 0.0, Z, samples=8, seed=4)
    assert len(rep.ratios) == 8
    assert 0 <= rep.max_ratio
    # the identity multiplier never changes the norm
    rep_id = schur_ratio_probe(lambda g: 1.0, Z, samples=5, seed=4)
    assert rep_id.max_ratio == pytest.approx(1.0, abs=1e-9)
    with pytest.raises(ValidationError):
        schur_ratio_probe(lambda g: 1.0, Z, samples=0, seed=1)


def test_parse_group_names():
    assert parse_group("z").rank == 1
    assert parse_group("z3").rank == 3
    assert parse_group("f2").kind == "free"
    with pytest.raises(ValidationError):
        parse_group("e8")


def test_function_json_roundtrip():
    items = [
        {"g": [1], "re": 1.0, "im": 0.0},
        {"g": [-2], "re": 0.0, "im": -1.5},
    ]
    f = function_from_json(items, Z)
    assert f == {(1,): 1.0, (-2,): -1.5j}
    back = function_from_json(function_to_json(f), Z)
    assert back == f
    with pytest.raises(ValidationError):
        function_from_json([{"re": 1.0}], Z)
    with pytest.raises(ValidationError):
        function_from_json([{"g": [1, 2], "re": 1.0}], Z)


def test_free_group_elements_validated():
    with pytest.raises(ValidationError):
        normalize_function({(1, -1): 1}, F2)  # not reduced
    with pytest.raises(ValidationError):
        normalize_function({(3,): 1}, F2)  # letter out of range
