import cmath
import math

import numpy as np
import pytest

from pretentious.arithmetic import NumberField, character_group, prime_ideals_up_to
from pretentious.errors import CoverageError, DomainError
from pretentious.repdata import (
    AutomorphicRepData,
    ConstantRule,
    TableRule,
    character_pair,
    contragredient,
    default_theta,
    from_character,
    power_sum_coefficient,
    random_synthetic_rep,
    rankin_selberg,
    rankin_selberg_coefficient,
    satake_to_lambda,
    trivial_rep,
)


def _two_param_rep(theta=0.7, r=0.9, phi=0.4):
    return AutomorphicRepData(
        2, NumberField.rational(), ConstantRule((cmath.exp(1j * theta), r * cmath.exp(-1j * phi))), theta=0.0
    )


def test_contragredient_examples(one, rep5, Q):
    assert contragredient(one) == one
    table = prime_ideals_up_to(Q, 3)
    assert contragredient(rep5).satake_at(table[0]) == (-1j,)
    rep = _two_param_rep()
    got = contragredient(rep).rule.alphas
    assert got == (cmath.exp(-0.7j), 0.9 * cmath.exp(0.4j))


def test_contragredient_involution(rng):
    for field in (NumberField.rational(), NumberField.quadratic(-1)):
        rep = random_synthetic_rep(rng, field, cutoff=2000)
        assert contragredient(contragredient(rep)) == rep
        assert contragredient(rep).conductor_norm == rep.conductor_norm


def test_power_sum_examples(one, rep5, Q):
    table = prime_ideals_up_to(Q, 100)
    for ideal in table:
        for k in (1, 2, 7):
            assert power_sum_coefficient(one, ideal, k) == 1
    rep = AutomorphicRepData(2, Q, ConstantRule((cmath.exp(0.3j), cmath.exp(-0.3j))), theta=0.0, self_dual=True)
    for k in range(1, 8):
        assert abs(power_sum_coefficient(rep, table[3], k) - 2 * math.cos(0.3 * k)) < 1e-14
    assert power_sum_coefficient(rep5, table[0], 3) == (1j) ** 3
    assert power_sum_coefficient(rep5, table.ideal(5, 0), 2) == 0


def test_satake_to_lambda_examples():
    assert satake_to_lambda([0.3 + 2j, -1], 0) == 1
    for j in range(8):
        assert abs(satake_to_lambda([0.8 - 0.1j], j) - (0.8 - 0.1j) ** j) < 1e-14
    th = 0.37
    for j in range(7):
        # brute force: coefficient of x^j in 1/((1 - e^{i th} x)(1 - e^{-i th} x))
        brute = sum(cmath.exp(1j * th * (a - (j - a))) for a in range(j + 1))
        assert abs(satake_to_lambda([cmath.exp(1j * th), cmath.exp(-1j * th)], j) - brute) < 1e-13
        assert abs(brute - math.sin((j + 1) * th) / math.sin(th)) < 1e-12


def test_newton_identity_property(rng):
    for _ in range(30):
        m = int(rng.integers(1, 5))
        alphas = rng.uniform(0.2, 1.5, m) * np.exp(2j * np.pi * rng.uniform(size=m))
        lam = [satake_to_lambda(alphas, j) for j in range(21)]
        for k in range(1, 21):
            rhs = sum(complex((alphas**i).sum()) * lam[k - i] for i in range(1, k + 1))
            assert abs(k * lam[k] - rhs) <= 1e-10 * max(1.0, abs(rhs))


def test_grc_coefficient_bound(rng):
    for _ in range(10):
        rep = random_synthetic_rep(rng, cutoff=500)
        table = prime_ideals_up_to(rep.field, 500)
        for ideal in table:
            for k in (1, 2, 5):
                bound = rep.degree * ideal.norm ** (k * rep.theta)
                assert abs(power_sum_coefficient(rep, ideal, k)) <= bound * (1 + 1e-12)


def test_rankin_selberg_examples(one, rep5, Q):
    table = prime_ideals_up_to(Q, 50)
    pair = rankin_selberg(one, one)
    assert pair.delta and pair.rs_conductor_norm == 1
    assert all(rankin_selberg_coefficient(pair, p, 3) == 1 for p in table)
    pair = rankin_selberg(rep5, contragredient(rep5))
    assert pair.delta
    for ideal in table:
        for k in (1, 2, 3):
            expected = 0 if ideal.p == 5 else 1
            assert abs(rankin_selberg_coefficient(pair, ideal, k) - expected) < 1e-15


def test_rankin_selberg_self_pair_is_abs_square(rng):
    rep = random_synthetic_rep(rng, cutoff=1000, degree=3)
    pair = rankin_selberg(rep, contragredient(rep))
    assert pair.delta
    for ideal in prime_ideals_up_to(rep.field, 1000):
        if ideal.key in rep.ramified:
            continue
        for k in (1, 2):
            c = rankin_selberg_coefficient(pair, ideal, k)
            a = power_sum_coefficient(rep, ideal, k)
            assert c.imag == 0 or abs(c.imag) <= 1e-15 * abs(c)
            assert abs(c.real - abs(a) ** 2) <= 1e-12 * max(1, abs(a) ** 2)


def test_from_character_examples():
    assert from_character(character_group(1)[0]) == trivial_rep()
    assert from_character(character_group(1)[0]).is_trivial
    from pretentious.arithmetic import kronecker_character

    rep = from_character(kronecker_character(-4))
    assert rep.langlands == ((1 + 0j,),) and rep.conductor_norm == 4 and rep.self_dual
    for c in character_group(12):
        if c.parity == 1:
            assert from_character(c).langlands == ((0j,),)
    assert set(from_character(character_group(12)[1]).ramified) == {(2, 0), (3, 0)}


def test_validation_errors(Q):
    with pytest.raises(DomainError):  # |alpha| > 1 with theta = 0 for a constant rule
        AutomorphicRepData(1, Q, ConstantRule((1.5,)), theta=0.0)
    with pytest.raises(DomainError):  # Re mu < -theta
        AutomorphicRepData(1, Q, ConstantRule((1,)), langlands=((-0.3,),), theta=0.1)
    with pytest.raises(DomainError):  # not conjugation closed
        AutomorphicRepData(1, Q, ConstantRule((1j,)), theta=0.0, self_dual=True)
    with pytest.raises(DomainError):  # trivial flag on non-trivial data
        AutomorphicRepData(1, Q, ConstantRule((1,)), conductor_norm=3, is_trivial=True)
    with pytest.raises(DomainError):  # ramified |alpha| > N^theta
        AutomorphicRepData(1, Q, ConstantRule((1,)), ramified={(2, 0): (3.0,)}, theta=0.2)
    with pytest.raises(DomainError):
        AutomorphicRepData(2, Q, ConstantRule((1,)))


def test_theta_default():
    assert default_theta(1) == 0.0
    assert default_theta(2) == pytest.approx(0.3)
    assert AutomorphicRepData(3, NumberField.rational(), ConstantRule((1, 1, 1))).theta == pytest.approx(0.4)


def test_table_rule_coverage(Q):
    rule = TableRule.from_entries(Q, 10, 1, {(2, 0): [1], (3, 0): [-1], (7, 0): [1j]})
    rep = AutomorphicRepData(1, Q, rule, theta=0.0)
    table = prime_ideals_up_to(Q, 10)
    assert rep.satake_matrix(table, 2).ravel().tolist() == [1, -1]
    with pytest.raises(CoverageError):
        rep.satake_matrix(table)  # 5 is missing
    with pytest.raises(CoverageError):
        rep.satake_matrix(prime_ideals_up_to(Q, 20), 6)


def test_pair_upper_bound_and_explicit(chi5):
    psi = character_group(5)[2]
    a, b = from_character(chi5), from_character(psi)
    up = rankin_selberg(a, b)
    assert up.upper_bound_mode and up.rs_conductor_norm == 25
    ex = character_pair(chi5, psi)
    assert not ex.upper_bound_mode and 25 % ex.rs_conductor_norm == 0
    with pytest.raises(DomainError):
        rankin_selberg(a, b, conductor_norm=7)
    with pytest.raises(DomainError):
        rankin_selberg(a, b, ramified_params={(3, 0): (1,)})
    cp = character_pair(chi5, chi5.conjugate())
    assert cp.ramified_params == {(5, 0): (1 + 0j,)} and cp.rs_conductor_norm == 1


def test_default_rs_langlands_parity():
    from pretentious.arithmetic import kronecker_character

    odd = from_character(kronecker_character(-4))
    assert rankin_selberg(odd, odd).rs_langlands == ((0j,),)
    even = from_character(character_group(5)[2])
    assert rankin_selberg(odd, even).rs_langlands == ((1 + 0j,),)


def test_delta_detection(rng):
    rep = random_synthetic_rep(rng, cutoff=2000, degree=2)
    assert rankin_selberg(rep, contragredient(rep)).delta
    assert not rankin_selberg(rep, rep).delta
    sd = random_synthetic_rep(rng, cutoff=2000, degree=3, self_dual=True)
    assert rankin_selberg(sd, sd).delta
