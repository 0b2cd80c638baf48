import math
from fractions import Fraction

import numpy as np
import pytest

from pretentious.errors import DomainError, NoContradictionError
from pretentious.zfr import (
    CASES,
    FINAL_CONSTANTS,
    KPRIME_LITERAL,
    K_LITERAL,
    CaseSpec,
    case_ledger,
    contradiction_threshold,
    final_constant_checks,
    k_constant,
    kprime_constant,
    max_real_zero_count,
    optimal_constant,
    region_width,
    thm3_case21,
    thm3_case22,
    threshold_grid,
)

# minima and argmins recomputed in exact arithmetic / mpmath
CASE1_MIN, CASE1_ARG = 7 + 4 * math.sqrt(3), 1 + 2 / math.sqrt(3)
CASE21_MIN, CASE21_ARG = 15.86634902201296, 2.27751523415584
CASE22_AT, CASE23_AT = 13.44897497010201, 2.83916705205305
THM3_21_MIN, THM3_21_ARG = 32.27706318109187, 3.52738485717484
THM3_22_AT = 2.44317474431921
REAL_ZERO_BOUND = 1.72221066637637


def _fraction_threshold(spec, c):
    a, b, k, x = (Fraction(v).limit_denominator(10**6) for v in (spec.a, spec.b, spec.k, spec.x))
    big_a = a * c / x + k
    return big_a * c / (b * c - big_a * x)


# closed forms as displayed in each case analysis
CLOSED_FORMS = {
    "thm1.case1": lambda c: (3 * c * c + c) / (c - 1),
    "thm1.case2.1": lambda c: (52 * c * c + 17 * c) / (16 * c - 17),
    "thm1.case2.2": lambda c: (c * c + c) / (2 * c - 4),
    "thm1.case2.3": lambda c: (4 * c * c + c) / (4 * c - 1),
    "thm2": lambda c: (3 * c * c + c) / (c - 1),
    "thm3.case1.1": lambda c: (52 * c * c + 17 * c) / (16 * c - 17),
    "thm3.case1.2": lambda c: (c * c + c) / (2 * c - 4),
    "thm3.case1.3": lambda c: (4 * c * c + c) / (4 * c - 1),
}


@pytest.mark.parametrize("case_id", sorted(CLOSED_FORMS))
def test_threshold_matches_closed_forms(case_id):
    spec = CASES[case_id]
    for c in np.linspace(spec.feasible_from + 0.05, 12, 20):
        got = contradiction_threshold(spec, c)
        want = CLOSED_FORMS[case_id](c)
        assert abs(got - want) <= 1e-10 * abs(want)
        assert float(_fraction_threshold(spec, Fraction(c))) == pytest.approx(got, rel=1e-12)


def test_thm3_closed_forms():
    for c in np.linspace(3.1, 10, 20):
        want = (3592 * c * c + 1105 * K_LITERAL * c) / (1105 * 4 * c - 3592 * c - 1105 * K_LITERAL) * 1
        assert contradiction_threshold(thm3_case21(), c) == pytest.approx(want, rel=1e-10)
    assert contradiction_threshold(thm3_case22(), 3.5273) == pytest.approx(2.4431, abs=1e-3)


def test_no_contradiction():
    with pytest.raises(NoContradictionError):
        contradiction_threshold(CASES["thm1.case1"], 1.0)
    assert threshold_grid(CASES["thm1.case1"], np.array([0.5, 2.0]))[0] == np.inf
    with pytest.raises(DomainError):
        optimal_constant(CaseSpec(4, 4, 1))


@pytest.mark.parametrize(
    "spec, value, arg",
    [
        (CASES["thm1.case1"], CASE1_MIN, CASE1_ARG),
        (CASES["thm1.case2.1"], CASE21_MIN, CASE21_ARG),
        (thm3_case21(), THM3_21_MIN, THM3_21_ARG),
    ],
)
def test_optimal_constant_oracles(spec, value, arg):
    v, a = optimal_constant(spec)
    assert v == pytest.approx(value, abs=1e-9)
    assert a == pytest.approx(arg, abs=1e-5)
    grid = np.linspace(spec.feasible_from, spec.feasible_from + 20, 10**6)[1:]
    brute = threshold_grid(spec, grid)
    assert abs(brute.min() - v) <= 1e-5
    assert v <= brute.min() + 1e-12


def closed_form_argmin(spec):
    """Positive root of (a(b-a)/x) C^2 - 2ak C - k^2 x, where the threshold's derivative vanishes."""
    qa, qb, qc = spec.a * (spec.b - spec.a) / spec.x, -2 * spec.a * spec.k, -spec.k**2 * spec.x
    return (-qb + math.sqrt(qb * qb - 4 * qa * qc)) / (2 * qa)


@pytest.mark.parametrize("spec", [CASES["thm1.case1"], CASES["thm1.case2.1"], thm3_case21(), thm3_case22()])
def test_argmin_against_closed_form(spec):
    _, arg = optimal_constant(spec)
    assert arg == pytest.approx(closed_form_argmin(spec), abs=1e-6)


def test_dependent_values_at_argmin():
    # the argmin is located to ~1e-8, and these thresholds have slope ~40 there
    _, arg = optimal_constant(CASES["thm1.case2.1"])
    assert contradiction_threshold(CASES["thm1.case2.2"], arg) == pytest.approx(CASE22_AT, abs=1e-5)
    assert contradiction_threshold(CASES["thm1.case2.3"], arg) == pytest.approx(CASE23_AT, abs=1e-5)
    exact = closed_form_argmin(CASES["thm1.case2.1"])
    assert contradiction_threshold(CASES["thm1.case2.2"], exact) == pytest.approx(CASE22_AT, abs=1e-11)
    assert contradiction_threshold(CASES["thm1.case2.3"], exact) == pytest.approx(CASE23_AT, abs=1e-11)
    _, arg = optimal_constant(thm3_case21())
    assert contradiction_threshold(thm3_case22(), arg) == pytest.approx(THM3_22_AT, abs=1e-5)
    assert max_real_zero_count(arg, KPRIME_LITERAL, 33) == pytest.approx(REAL_ZERO_BOUND, abs=1e-6)


def test_k_constants():
    assert k_constant() <= K_LITERAL and K_LITERAL - k_constant() < 1e-4
    assert kprime_constant() <= KPRIME_LITERAL + 1e-4
    assert k_constant(1.72195) == pytest.approx((8 - 4 * 1.72195) / (4 * math.log(3)) + 1)


def test_real_zero_count():
    assert max_real_zero_count(3.5273, 0.1567, 33) == pytest.approx(1.722, abs=1e-3)
    assert max_real_zero_count(3.5273, 0.1567, 66) < max_real_zero_count(3.5273, 0.1567, 33)
    with pytest.raises(DomainError):
        max_real_zero_count(-1, 0, 1)


def test_ledger_rows():
    ledger = case_ledger()
    assert len(ledger) == 14
    assert all(e.passed for e in ledger)
    by_id = {e.case_id: e for e in ledger}
    assert by_id["thm1.case2.2"].threshold_value == pytest.approx(13.4489, abs=1e-3)
    assert by_id["thm3.case2.2"].threshold_value == pytest.approx(2.4431, abs=1e-3)
    assert by_id["k"].threshold_value <= 1.2531 + 1e-4
    assert 1.72194 < by_id["c1"].threshold_value < 1.72196
    assert by_id["thm3.case2.3"].threshold_value < 2
    for e in ledger:
        if e.relation == "approx":
            assert e.delta <= 2e-3
            assert abs(e.exact_c1_value - e.paper_value) <= 2e-3


def test_final_constant_checks():
    checks = final_constant_checks()
    assert len(checks) == 6 and all(c.holds for c in checks)
    assert [c.lhs for c in checks[:3]] == [FINAL_CONSTANTS[i] for i in (1, 2, 3)]


W1 = 0.005688995166417734  # 1/(80 log 9)
W3 = 0.003447875858434990  # 1/(132 log 9)
W3_BOTH_3 = 0.002298583905623327  # 1/(132 log 27)


def test_region_width_examples():
    assert region_width(1, 1, cond=3, t=0) == pytest.approx(W1, rel=1e-9)
    assert region_width(3, 1, 1, 3, 1, 0) == pytest.approx(W3, rel=1e-9)
    assert region_width(3, 1, 1, 3, 3, 0) == pytest.approx(W3_BOTH_3, rel=1e-9)
    assert region_width(1, 2, cond=5, t=4, field_degree=2, self_dual_variant=True) == pytest.approx(
        1 / (16 * 7 * math.log(5 * 49))
    )


def test_region_width_errors():
    with pytest.raises(DomainError):
        region_width(2, 1, None, 3, 3)
    with pytest.raises(DomainError):
        region_width(4, 1, 1, 3, 3)
    with pytest.raises(DomainError):
        region_width(1, 0, cond=3)


def test_region_width_monotone():
    for thm in (1, 2, 3):
        for m in range(1, 5):
            base = region_width(thm, m, 2, 5.0, 7.0, 1.0)
            assert region_width(thm, m + 1, 2, 5.0, 7.0, 1.0) < base
            assert region_width(thm, m, 2, 5.0, 7.0, 1.5) < base
            assert region_width(thm, m, 2, 5.0, 7.0, -1.5) < base
            assert region_width(thm, m, 2, 6.0, 7.0, 1.0) < base
            if thm > 1:
                assert region_width(thm, m, 3, 5.0, 7.0, 1.0) < base
                assert region_width(thm, m, 2, 5.0, 8.0, 1.0) < base


def test_region_width_ordering():
    for m in range(1, 6):
        for cond in (3.0, 10.0, 1e3):
            for t in (0.0, 0.5, 10.0, 1e3):
                w1 = region_width(1, m, cond=cond, t=t)
                w2 = region_width(2, m, m, cond, cond, t)
                w3 = region_width(3, m, m, cond, cond, t)
                assert w3 < w2
                # theorem 2 vs 1: (80m - 48) log cond + (24m^2 - 48m) log(3+|t|) > 0
                lc, lt = math.log(cond), math.log(3 + abs(t))
                assert (w2 < w1) == ((80 * m - 48) * lc + (24 * m * m - 48 * m) * lt > 0)
                if m >= 2 or t == 0:
                    assert w2 < w1


def test_region_width_ordering_fails_for_m1_at_height():
    assert region_width(2, 1, 1, 3, 3, 10) > region_width(1, 1, cond=3, t=10)
