"""Ranks, the infinitude criterion, genus formula and the rational bounds."""

import random
from fractions import Fraction

import pytest

from towerbound import cft
from towerbound.errors import (
    DegenerateGenus,
    InconsistentModel,
    NotCertified,
    ParityViolation,
    SideConditionViolated,
)
from towerbound.ff import FieldParams

P2 = FieldParams(2)
P3 = FieldParams(3)

PLAN1 = cft.RamificationPlan(P2, ((5, 1, 2), (8, 27, 2), (10, 1, 2)), 160)
PLAN2 = cft.RamificationPlan(P2, ((5, 2, 2), (6, 16, 2), (8, 15, 2), (10, 4, 2)), 192)
PLAN3A = cft.RamificationPlan(P3, ((8, 46, 3),), 567)
PLAN3B = cft.RamificationPlan(P3, ((5, 1, 3), (8, 43, 3), (9, 2, 3)), 567)


def margin_oracle(params, entries, t):
    """Literal transcription of the infinitude inequality, place by place."""
    p, e = params.p, params.e
    expanded = [(f, nu) for f, count, nu in entries for _ in range(count)]
    s_rank = sum(e * f * ((nu - 1) - (nu - 1) // p) for f, nu in expanded)
    s_quad = sum(e * f * (nu - 1) * (e * f * (nu - 1) + 1) for f, nu in expanded)
    return (1 + s_rank - t) ** 2 - 2 * s_quad - 4 * s_rank


def test_local_unit_rank_examples():
    assert cft.local_unit_rank(P2, 4, 2) == 4
    assert cft.local_unit_rank(P2, 5, 2) == 5
    assert cft.local_unit_rank(P3, 5, 3) == 10
    assert cft.local_unit_rank(P2, 9, 1) == 0
    assert cft.local_unit_rank(P3, 2, 1) == 0
    assert cft.local_unit_rank(FieldParams(2, 2), 3, 4) == 2 * 3 * (3 - 1)


def test_generator_rank_examples():
    assert cft.generator_rank_lower(cft.RamificationPlan(P2, ((4, 1, 2), (5, 1, 2)), 5)) == 5
    assert cft.generator_rank_lower(cft.RamificationPlan(P3, ((5, 1, 3),), 7)) == 4
    assert cft.generator_rank_lower(PLAN1) == 72  # 1 + 231 - 160


def test_local_rd_bound_examples():
    assert cft.local_rd_bound(P2, 5, 2) == 15
    assert cft.local_rd_bound(P3, 8, 3) == 136
    assert cft.local_rd_bound(P2, 8, 2) == 36


def test_useless_exponent_rejected():
    with pytest.raises(ValueError):
        cft.RamificationPlan(P2, ((5, 1, 1),), 2)


def test_margins_pinned_and_against_oracle():
    # values derived once by evaluating the inequality literally, then pinned
    for plan, margin in ((PLAN1, 92), (PLAN2, 57), (PLAN3A, 932), (PLAN3B, 308)):
        res = cft.check_gs_inequality(plan)
        assert res.gs_margin == margin
        assert res.infinite
        assert plan.side_condition_ok
        assert margin_oracle(plan.params, plan.entries, plan.t) == margin


def test_check_exposes_rank_pair():
    res = cft.check_gs_inequality(PLAN1)
    assert (res.d_lower, res.rd_upper) == (72, 1201)
    assert Fraction(72 * 72, 4) - 72 >= 1201


def test_side_condition_raises():
    plan = cft.RamificationPlan(P2, ((5, 1, 2),), 6)  # rank sum 5 < t
    assert not plan.side_condition_ok
    with pytest.raises(SideConditionViolated):
        cft.check_gs_inequality(plan)


def test_boundary_t_reports_negative_margin():
    plan = cft.RamificationPlan(P2, ((5, 1, 2), (8, 27, 2), (10, 1, 2)), 231)
    res = cft.check_gs_inequality(plan)  # t equals the rank sum: side condition holds
    assert res.gs_margin == margin_oracle(P2, plan.entries, 231) < 0
    assert not res.infinite


def test_gs_margin_raw_examples():
    assert cft.gs_margin_raw(72, 1201) is True
    assert cft.gs_margin_raw(4, 1) is False
    assert cft.gs_margin_raw(4, 0) is True
    assert cft.gs_margin_raw(0, 0) is False  # a trivial group contradicts nothing
    with pytest.raises(ValueError):
        cft.gs_margin_raw(-1, 0)


def test_genus_goldens():
    assert cft.genus_from_conductors(1, cft.CharacterConductorProfile(((10, 1), (18, 30)), 32)) == 276
    assert cft.genus_from_conductors(2, cft.CharacterConductorProfile(((20, 31),), 32)) == 343
    assert cft.genus_from_conductors(1, cft.CharacterConductorProfile(((15, 80),), 81)) == 601


def test_genus_parity_violation():
    with pytest.raises(ParityViolation):
        cft.genus_from_conductors(1, cft.CharacterConductorProfile(((3, 1),), 2))


def test_profile_character_count_enforced():
    with pytest.raises(ValueError):
        cft.CharacterConductorProfile(((10, 5),), 32)


def test_bounds_golden():
    assert cft.bound_plain(276, PLAN1) == Fraction(80, 253)
    assert cft.bound_plain(343, PLAN2) == Fraction(6, 19)
    assert cft.bound_plain(601, PLAN3A) == Fraction(63, 128)
    assert cft.bound_refined(276, PLAN1) == Fraction(16384, 51711)
    assert cft.bound_refined(276, PLAN1) == Fraction(2**14, 2**9 * 101 - 1)


def test_refined_decimals():
    from towerbound.cli import truncate_decimal

    assert truncate_decimal(cft.bound_refined(343, PLAN2))[: len("0.316999")] == "0.316999"
    assert truncate_decimal(cft.bound_refined(601, PLAN3B))[: len("0.492876")] == "0.492876"
    assert truncate_decimal(Fraction(80, 253))[: len("0.316205")] == "0.316205"


def test_not_certified_raises():
    plan = cft.RamificationPlan(P2, ((5, 1, 2),), 5)  # d = 1, margin < 0
    with pytest.raises(NotCertified):
        cft.bound_plain(10, plan)
    with pytest.raises(NotCertified):
        cft.bound_refined(10, plan)


def test_asymptotic_ratio():
    assert cft.asymptotic_ratio(5, 2) == 5
    with pytest.raises(DegenerateGenus):
        cft.asymptotic_ratio(5, 1)


def test_asymptotic_ratio_consistent_with_bounds():
    # lifting t and the genus through a degree-[K:k] cover leaves the ratio
    # equal to the plain bound: t*[K:k] / (g(K) - 1) with
    # g(K) - 1 = [K:k]*(g - 1 + conductor_degree/2)
    for genus, plan in ((276, PLAN1), (343, PLAN2), (601, PLAN3A)):
        order = 4096  # any cover degree works; the ratio is scale-invariant
        gk_minus_1 = order * (genus - 1) + order * plan.conductor_degree // 2
        assert cft.asymptotic_ratio(plan.t * order, gk_minus_1 + 1) == cft.bound_plain(genus, plan)
    assert cft.asymptotic_ratio(567 * 81, 81 * (601 - 1 + 3 * 368 // 2) + 1) == Fraction(63, 128)


def test_certify_tower_certificate():
    cert = cft.certify_tower(276, PLAN1)
    assert cert.infinite and cert.gs_margin == 92
    assert cert.bound == Fraction(80, 253)
    assert cert.bound_refined == Fraction(16384, 51711)
    assert cert.warnings == ()
    cert3 = cft.certify_tower(601, PLAN3B)
    assert cert3.infinite and cert3.warnings  # exponent discrepancy flagged for nu = p = 3
    bad = cft.certify_tower(276, cft.RamificationPlan(P2, ((5, 1, 2), (8, 27, 2), (10, 1, 2)), 231))
    assert not bad.infinite and bad.bound is None and bad.gs_margin < 0


def test_plan_feasibility_against_spectrum(spectrum_k1):
    cft.RamificationPlan(P2, ((5, 1, 2), (8, 27, 2), (10, 1, 2)), 160, spectrum_k1)
    with pytest.raises(InconsistentModel):
        cft.RamificationPlan(P2, ((5, 2, 2),), 160, spectrum_k1)  # only one degree-5 place
    with pytest.raises(InconsistentModel):
        cft.RamificationPlan(P2, ((8, 27, 2),), 161, spectrum_k1)  # t > a_1
    with pytest.raises(InconsistentModel):
        cft.RamificationPlan(P2, ((1, 1, 2),), 160, spectrum_k1)  # S and T need a_1 + 1 places


def random_plan(rnd):
    params = FieldParams(rnd.choice((2, 3)), rnd.choice((1, 1, 1, 2)))
    entries = tuple(
        (rnd.randint(1, 12), rnd.randint(1, 40), rnd.randint(2, 6))
        for _ in range(rnd.randint(1, 5))
    )
    rank_sum = sum(c * cft.local_unit_rank(params, f, nu) for f, c, nu in entries)
    t = rnd.randint(1, rank_sum)
    return cft.RamificationPlan(params, entries, t)


def test_random_plans_identities_10000():
    rnd = random.Random(20240803)
    for _ in range(10_000):
        plan = random_plan(rnd)
        res = cft.check_gs_inequality(plan)
        d, rd = res.d_lower, res.rd_upper
        # the margin is 4 * (d^2/4 - d - rd); both formulations agree
        assert res.gs_margin == d * d - 4 * d - 4 * rd
        assert res.infinite == cft.gs_margin_raw(d, rd)
        assert res.gs_margin == margin_oracle(plan.params, plan.entries, plan.t)
        # raising t by one drops the margin by exactly 2*d - 1
        bumped_margin = margin_oracle(plan.params, plan.entries, plan.t + 1)
        assert bumped_margin == res.gs_margin - 2 * d + 1


def test_monotonicity_in_entries():
    rnd = random.Random(99)
    for _ in range(300):
        plan = random_plan(rnd)
        extra = plan.entries + ((rnd.randint(1, 9), 1, rnd.randint(2, 5)),)
        grown = cft.RamificationPlan(plan.params, extra, plan.t)
        assert grown.rank_sum >= plan.rank_sum


def test_refined_beats_plain_whenever_s_nonempty():
    rnd = random.Random(4)
    for _ in range(500):
        plan = random_plan(rnd)
        genus = rnd.randint(2, 700)
        plain = Fraction(plan.t) / cft._plain_denominator(genus, plan)
        refined = Fraction(plan.t) / cft._refined_denominator(genus, plan)
        assert refined > plain
        assert cft._refined_denominator(genus, plan) < cft._plain_denominator(genus, plan)
