import math

import numpy as np
import pytest

from pretentious.arithmetic import NumberField, character_group, prime_ideals_up_to
from pretentious.errors import CoverageError, DivergenceError
from pretentious.eulersum import log_derivative_rs, log_derivative_standard
from pretentious.metric import (
    MetricPoint,
    distance,
    distance_sq_expansion,
    dstar_combination_defect,
    dstar_sq,
    hermitian_eigenvalues,
    jacobi_eigenvalues,
    mertens_terms,
    psd_check,
    triangle_defect,
)
from pretentious.repdata import (
    character_pair,
    contragredient,
    from_character,
    random_synthetic_rep,
    rankin_selberg,
    trivial_rep,
)
from pretentious.suites import random_point


def test_distance_identity_and_symmetry(rng):
    x = random_point(rng, NumberField.rational(), 10**4)
    assert distance(x, x, 1.5, 10**4).value == 0.0
    for _ in range(20):
        a = random_point(rng, NumberField.rational(), 10**4)
        b = random_point(rng, NumberField.rational(), 10**4)
        assert distance(a, b, 1.5, 10**4).value == distance(b, a, 1.5, 10**4).value


def test_distance_against_naive_loop(one):
    gamma, sigma, X = 1.0, 1.5, 10**5
    d = distance(MetricPoint(one, -gamma), MetricPoint(one, gamma), sigma, X)
    total = []
    for p in range(2, X + 1):
        if all(p % r for r in range(2, int(p**0.5) + 1)):
            q = p
            while q <= X:
                diff = q ** (-1j * gamma) - q ** (1j * gamma)
                total.append(0.5 * abs(diff) ** 2 * math.log(p) * q**-sigma)
                q *= p
    assert abs(d.value_sq - math.fsum(total)) < 1e-9


def test_distance_requires_convergence(one):
    with pytest.raises(DivergenceError):
        distance(MetricPoint(one), MetricPoint(one, 1.0), 1.0, 100)


def test_triangle_degenerate_and_mobius(one):
    x1, x2 = MetricPoint(one, -2.0), MetricPoint(one, 2.0)
    assert triangle_defect(x1, x2, x1, 1.3, 10**4) == pytest.approx(0.0, abs=1e-15)
    h = MetricPoint(one, 0.0, -1)
    assert triangle_defect(x1, x2, h, 1.3, 10**4) >= 0


def test_triangle_random(rng):
    for _ in range(30):
        pts = [random_point(rng, NumberField.quadratic(-1), 5000) for _ in range(3)]
        assert triangle_defect(*pts, 1.5, 5000) >= -1e-12


def test_expansion_unramified_trivial(one):
    x1, x2 = MetricPoint(one, -1.0), MetricPoint(one, 1.0, -1)
    rec = distance_sq_expansion(x1, x2, 1.5, 10**4)
    assert rec.e_terms == (0.0, 0.0, 0.0)
    assert abs(rec.residual) <= 1e-12


@pytest.mark.parametrize("q", [5, 7, 8])
@pytest.mark.parametrize("sigma", [1.05, 1.5])
def test_expansion_characters(q, sigma):
    group = character_group(q)
    for a in group:
        for b in group[:3]:
            x1, x2 = MetricPoint(from_character(a), -1.0), MetricPoint(from_character(b), 1.0, -1)
            rec = distance_sq_expansion(x1, x2, sigma, 10**4)
            assert abs(rec.residual) <= rec.tail_bound


def test_expansion_with_explicit_pairs(chi5):
    psi = character_group(5)[2]
    a, b = from_character(chi5), from_character(psi)
    pairs = (
        character_pair(chi5, chi5.conjugate()),
        character_pair(psi, psi.conjugate()),
        character_pair(chi5, psi.conjugate()),
    )
    x1, x2 = MetricPoint(a, 0.5), MetricPoint(b, -0.5)
    rec = distance_sq_expansion(x1, x2, 1.5, 10**4, pairs)
    assert any(e != 0 for e in rec.e_terms)
    # E runs over all powers of 5 while the truncated sums stop at 5^5 < X < 5^6
    missing = math.log(5) * math.fsum(5 ** (-1.5 * k) for k in range(6, 60))
    assert abs(abs(rec.residual) - missing) <= 1e-12


def test_expansion_self_is_zero(rng):
    rep = random_synthetic_rep(rng, cutoff=10**4, theta=0.05)
    x = MetricPoint(rep, 3.0)
    rec = distance_sq_expansion(x, x, 1.5, 10**4)
    assert abs(rec.total) <= rec.tail_bound


def test_dstar_examples(rep5):
    t1, t2 = MetricPoint(rep5, -2.0), MetricPoint(contragredient(rep5), 2.0)
    v = dstar_sq(t1, t1, 1.1, 10**4)
    assert abs(v.value) <= v.tail_bound
    w = dstar_sq(t1, t2, 1.1, 10**4)
    assert w.value >= -w.tail_bound


def test_dstar_equals_distance_when_unramified():
    one = trivial_rep()
    x1, x2 = MetricPoint(one, 0.7), MetricPoint(one, -1.1, -1)
    d = distance(x1, x2, 1.4, 10**4)
    v = dstar_sq(x1, x2, 1.4, 10**4)
    assert abs(v.value - d.value_sq) <= 1e-12


def test_dstar_combination_reduces(rep5):
    t1, t2 = MetricPoint(rep5, -1.0), MetricPoint(trivial_rep(), 2.0, -1)
    defect, tail = dstar_combination_defect(t1, t2, t1, 1.3, 10**4)
    assert abs(defect - dstar_sq(t1, t2, 1.3, 10**4).value) < 1e-12


def test_dstar_recovers_mertens_type_inequality(rep5):
    """(pi, -g, 1), (pi~, g, 1), (1, 0, -1) give the four-term log-derivative combination."""
    g, sigma, X = 1.7, 1.2, 10**4
    pi, pit, one = rep5, contragredient(rep5), trivial_rep()
    defect, _ = dstar_combination_defect(MetricPoint(pi, -g), MetricPoint(pit, g), MetricPoint(one, 0, -1), sigma, X)
    rhs = (
        log_derivative_rs(rankin_selberg(pi, pit), sigma, X).value.real
        + 2 * log_derivative_standard(one, sigma, X).value.real
        + log_derivative_rs(rankin_selberg(pi, pi), complex(sigma, 2 * g), X).value.real
        + 4 * log_derivative_standard(pi, complex(sigma, g), X).value.real
    )
    assert abs(defect - rhs) < 1e-12


def test_jacobi_matches_numpy(rng):
    for n in (1, 2, 3, 5, 8):
        a = rng.normal(size=(n, n))
        a = a + a.T
        assert np.allclose(jacobi_eigenvalues(a), np.linalg.eigvalsh(a), atol=1e-12)
        h = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        h = h + h.conj().T
        assert np.allclose(hermitian_eigenvalues(h), np.linalg.eigvalsh(h), atol=1e-12)


def test_psd_single_and_gram(rep5, Q):
    table = prime_ideals_up_to(Q, 100)
    herm, lam = psd_check([rep5], table[1], 2)
    assert herm == 0 and lam >= 0
    family = [from_character(c) for c in character_group(7)]
    herm, lam = psd_check(family, table[1], 1)
    assert herm <= 1e-12 and lam >= -1e-12


def test_psd_ramified_needs_data(Q):
    family = [from_character(c) for c in character_group(5)]
    with pytest.raises(CoverageError):
        psd_check(family, prime_ideals_up_to(Q, 5).ideal(5, 0), 1)
    pairs = {(i, j): character_pair(a, b.conjugate()) for i, a in enumerate(character_group(5)) for j, b in enumerate(character_group(5))}
    herm, lam = psd_check(family, prime_ideals_up_to(Q, 5).ideal(5, 0), 1, pairs)
    assert herm <= 1e-12 and lam >= -1e-12


def test_mertens_termwise():
    for g in (0.5, 14.134725):
        _, direct, closed = mertens_terms(1.1, g, 10**4)
        assert direct.min() >= -1e-15
        assert np.max(np.abs(direct - closed)) <= 1e-15 * max(1.0, np.abs(closed).max())
