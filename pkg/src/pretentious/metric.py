"""The distance D_sigma between twisted coefficient sequences, its Rankin-Selberg expansion,
the D*_sigma quantity, and positive-semidefiniteness checks."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .arithmetic import PrimeIdeal
from .errors import CoverageError, DivergenceError, DomainError
from .eulersum import (
    fsum_complex,
    log_derivative_rs,
    prime_power_terms,
    ramified_correction,
    standard_coefficients,
    standard_terms,
    tail_majorant,
)
from .repdata import AutomorphicRepData, RankinSelbergPair, contragredient, rankin_selberg, trivial_rep


@dataclass(frozen=True)
class MetricPoint:
    """n -> sign * a_pi(n) * N(n)^{i gamma}."""

    rep: AutomorphicRepData
    gamma: float = 0.0
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise DomainError("sign must be +1 or -1")
        object.__setattr__(self, "gamma", float(self.gamma))


@dataclass(frozen=True)
class DistanceResult:
    value: float
    tail_bound: float
    cutoff: float
    value_sq: float
    sq_tail_bound: float


@dataclass(frozen=True)
class ExpansionRecord:
    """Six-term decomposition of D_sigma^2.

    ``log_terms`` = (1/2 T11, 1/2 T22, -d1 d2 Re T12) with T = -L'/L,
    ``e_terms`` = (1/2 E11, 1/2 E22, -d1 d2 Re E12).
    """

    log_terms: tuple[float, float, float]
    e_terms: tuple[float, float, float]
    distance_sq: float
    tail_bound: float

    @property
    def total(self) -> float:
        return math.fsum(self.log_terms + self.e_terms)

    @property
    def residual(self) -> float:
        return self.total - self.distance_sq


@dataclass(frozen=True)
class DStarValue:
    value: float
    tail_bound: float
    cutoff: float


def _common_field(*points: MetricPoint):
    field = points[0].rep.field
    if any(p.rep.field != field for p in points):
        raise DomainError("all points must live over the same field")
    return field


def twisted_coefficients(point: MetricPoint, terms) -> np.ndarray:
    """x(p^k) = sign * a(p^k) * N(p)^{i k gamma} for every prime-power term."""
    a = standard_coefficients(point.rep, terms)
    return point.sign * a * np.exp(1j * point.gamma * terms.k * terms.log_norm)


def _distance_pieces(x1, x2, sigma, X):
    field = _common_field(x1, x2)
    theta = max(x1.rep.theta, x2.rep.theta)
    if not sigma > 1 + 2 * theta:
        raise DivergenceError(f"sigma = {sigma} must exceed 1 + 2 theta = {1 + 2 * theta}")
    terms = prime_power_terms(field, X)
    w = terms.log_norm * np.exp(-terms.k * sigma * terms.log_norm)
    diff = np.abs(twisted_coefficients(x1, terms) - twisted_coefficients(x2, terms)) ** 2
    summands = 0.5 * diff * w
    scale = 0.5 * field.degree * (x1.rep.degree + x2.rep.degree) ** 2
    return terms, summands, tail_majorant(X, sigma - 2 * theta, scale)


def distance(x1: MetricPoint, x2: MetricPoint, sigma: float, X: float) -> DistanceResult:
    """D_sigma(x1, x2) truncated to N(p)^k <= X."""
    _, summands, sq_tail = _distance_pieces(x1, x2, float(sigma), X)
    sq = math.fsum(summands.tolist())
    d = math.sqrt(sq)
    return DistanceResult(d, math.sqrt(sq + sq_tail) - d, float(X), sq, sq_tail)


def triangle_defect(x1: MetricPoint, x2: MetricPoint, x3: MetricPoint, sigma: float, X: float) -> float:
    """D(x1, x3) + D(x3, x2) - D(x1, x2) at a common cutoff."""
    return (
        distance(x1, x3, sigma, X).value + distance(x3, x2, sigma, X).value - distance(x1, x2, sigma, X).value
    )


def _pairs(p1: AutomorphicRepData, p2: AutomorphicRepData, pairs):
    if pairs is not None:
        if len(pairs) != 3:
            raise DomainError("expected the pairings (pi1 x pi1~, pi2 x pi2~, pi1 x pi2~)")
        return tuple(pairs)
    c1, c2 = contragredient(p1), contragredient(p2)
    return rankin_selberg(p1, c1), rankin_selberg(p2, c2), rankin_selberg(p1, c2)


def distance_sq_expansion(
    x1: MetricPoint,
    x2: MetricPoint,
    sigma: float,
    X: float,
    pairs: Sequence[RankinSelbergPair] | None = None,
) -> ExpansionRecord:
    """Rewrite D_sigma^2 through Rankin-Selberg log-derivatives plus ramified corrections.

    The returned tail budget covers the truncation of D^2 and of the three log-derivatives.
    """
    sigma = float(sigma)
    p11, p22, p12 = _pairs(x1.rep, x2.rep, pairs)
    dd = x1.sign * x2.sign
    shift = complex(sigma, x2.gamma - x1.gamma)
    t11 = log_derivative_rs(p11, sigma, X)
    t22 = log_derivative_rs(p22, sigma, X)
    t12 = log_derivative_rs(p12, shift, X)
    e11 = ramified_correction(p11, sigma)
    e22 = ramified_correction(p22, sigma)
    e12 = ramified_correction(p12, shift)
    d = distance(x1, x2, sigma, X)
    return ExpansionRecord(
        (0.5 * t11.value.real, 0.5 * t22.value.real, -dd * t12.value.real),
        (0.5 * e11.real, 0.5 * e22.real, -dd * e12.real),
        d.value_sq,
        d.sq_tail_bound + 0.5 * t11.tail_bound + 0.5 * t22.tail_bound + t12.tail_bound,
    )


def dstar_sq(
    t1: MetricPoint,
    t2: MetricPoint,
    sigma: float,
    X: float,
    pairs: Sequence[RankinSelbergPair] | None = None,
) -> DStarValue:
    """1/2 [-L'/L(s, pi1 x pi1~) - L'/L(s, pi2 x pi2~) + 2 d1 d2 Re L'/L(s + i(g2 - g1), pi1 x pi2~)] at s = sigma."""
    sigma = float(sigma)
    _common_field(t1, t2)
    p11, p22, p12 = _pairs(t1.rep, t2.rep, pairs)
    dd = t1.sign * t2.sign
    v11 = log_derivative_rs(p11, sigma, X)
    v22 = log_derivative_rs(p22, sigma, X)
    v12 = log_derivative_rs(p12, complex(sigma, t2.gamma - t1.gamma), X)
    value = math.fsum([0.5 * v11.value.real, 0.5 * v22.value.real, -dd * v12.value.real])
    tail = 0.5 * v11.tail_bound + 0.5 * v22.tail_bound + v12.tail_bound
    return DStarValue(value, tail, float(X))


def dstar_combination_defect(
    t1: MetricPoint, t2: MetricPoint, t3: MetricPoint, sigma: float, X: float
) -> tuple[float, float]:
    """(2 D*(t1,t3) + 2 D*(t3,t2) - D*(t1,t2), combined tail budget)."""
    a = dstar_sq(t1, t3, sigma, X)
    b = dstar_sq(t3, t2, sigma, X)
    c = dstar_sq(t1, t2, sigma, X)
    defect = math.fsum([2 * a.value, 2 * b.value, -c.value])
    return defect, 2 * a.tail_bound + 2 * b.tail_bound + c.tail_bound


# ----------------------------------------------------------------------------
# PSD checks
# ----------------------------------------------------------------------------


def jacobi_eigenvalues(a: np.ndarray, tol: float = 1e-14, max_sweeps: int = 100) -> np.ndarray:
    """Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations (ascending)."""
    a = np.array(a, dtype=float, copy=True)
    n = a.shape[0]
    if a.shape != (n, n):
        raise DomainError("matrix must be square")
    scale = max(float(np.abs(a).max()), 1e-300) if n else 1.0
    for _ in range(max_sweeps):
        off = math.sqrt(float((np.tril(a, -1) ** 2).sum()))
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, tau) / (abs(tau) + math.hypot(1.0, tau))
                c = 1.0 / math.hypot(1.0, t)
                s = t * c
                ap, aq = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                rp, rq = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
    return np.sort(np.diag(a))


def hermitian_eigenvalues(h: np.ndarray) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix via its real 2n x 2n embedding (each appears twice)."""
    h = np.asarray(h, dtype=complex)
    a, b = h.real, h.imag
    emb = np.block([[a, -b], [b, a]])
    return jacobi_eigenvalues(emb)[::2]


def psd_matrix(
    family: Sequence[AutomorphicRepData],
    ideal: PrimeIdeal,
    k: int,
    explicit_pairs: Mapping[tuple[int, int], RankinSelbergPair] | None = None,
) -> np.ndarray:
    """M_ij = a_{pi_i x pi_j~}(p^k) log N(p)."""
    n = len(family)
    explicit_pairs = explicit_pairs or {}
    ramified = any(ideal.key in rep.ramified for rep in family)
    m = np.zeros((n, n), dtype=complex)
    logn = math.log(ideal.norm)
    for i in range(n):
        for j in range(n):
            if ramified:
                pair = explicit_pairs.get((i, j))
                if pair is None:
                    raise CoverageError(f"no Rankin-Selberg data for ({i}, {j}) at ramified ideal {ideal.key}")
                params = np.array(pair.params_at(ideal), dtype=complex)
                m[i, j] = complex((params**k).sum()) * logn
            else:
                a = sum(x**k for x in family[i].satake_at(ideal))
                b = sum(x**k for x in family[j].satake_at(ideal))
                m[i, j] = a * b.conjugate() * logn
    return m


def psd_check(
    family: Sequence[AutomorphicRepData],
    ideal: PrimeIdeal,
    k: int,
    explicit_pairs: Mapping[tuple[int, int], RankinSelbergPair] | None = None,
) -> tuple[float, float]:
    """(max |M - M^dagger|, smallest eigenvalue of (M + M^dagger)/2) at p^k."""
    if k < 1:
        raise DomainError("k must be >= 1")
    m = psd_matrix(family, ideal, k, explicit_pairs)
    herm_err = float(np.abs(m - m.conj().T).max()) if m.size else 0.0
    h = 0.5 * (m + m.conj().T)
    return herm_err, float(hermitian_eigenvalues(h)[0]) if m.size else 0.0


def mertens_terms(sigma: float, gamma: float, X: float):
    """Per prime-power terms of -3 zeta'/zeta(sigma) - 4 Re zeta'/zeta(sigma+i gamma) - Re zeta'/zeta(sigma+2i gamma).

    Returns (terms, direct, closed_form): ``direct`` combines the three log-derivative
    summands, ``closed_form`` is log p * p^{-k sigma} * 2 (1 + cos(k gamma log p))^2.
    """
    one = trivial_rep()
    terms, t0 = standard_terms(one, sigma, X)
    _, t1 = standard_terms(one, complex(sigma, gamma), X)
    _, t2 = standard_terms(one, complex(sigma, 2 * gamma), X)
    direct = 3 * t0.real + 4 * t1.real + t2.real
    closed = t0.real * 2 * (1 + np.cos(gamma * terms.k * terms.log_norm)) ** 2
    return terms, direct, closed
