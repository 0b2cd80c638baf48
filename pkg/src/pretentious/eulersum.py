"""Truncated Euler sums for -L'/L with explicit tail majorants, and the ramified correction E."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable

import numpy as np

from .arithmetic import PrimeIdealTable, omega, prime_ideals_up_to
from .errors import DivergenceError, DomainError
from .repdata import AutomorphicRepData, RankinSelbergPair

_K_REL_TOL = 1e-14


@dataclass(frozen=True)
class TruncatedValue:
    """A truncated Dirichlet-series value; the full series lies within ``tail_bound`` of ``value``."""

    value: complex
    tail_bound: float
    cutoff: float

    def __post_init__(self):
        if not self.tail_bound >= 0:
            raise DomainError("tail bound must be nonnegative")


@dataclass(frozen=True)
class PrimePowerTerms:
    """Prime-power terms N(p)^k <= X in ascending (N(p)^k, p, conj) order.

    ``index`` points into ``table``; ``weight`` is log N(p) * N(p)^{-k s}.
    """

    table: PrimeIdealTable
    index: np.ndarray
    k: np.ndarray
    norm_power: np.ndarray
    log_norm: np.ndarray


def fsum_complex(values: Iterable[complex] | np.ndarray) -> complex:
    """Correctly rounded sum of real and imaginary parts separately (order-independent)."""
    arr = np.asarray(values, dtype=complex)
    return complex(math.fsum(arr.real.tolist()), math.fsum(arr.imag.tolist()))


def deterministic_merge(parts: Iterable[TruncatedValue]) -> TruncatedValue:
    """Combine partial sums of disjoint prime ranges, listed in table order.

    Uses correctly rounded summation, so the result does not depend on how the
    range was sharded. Tail bounds of the parts are added; the cutoff is the max.
    """
    parts = list(parts)
    if not parts:
        raise DomainError("nothing to merge")
    return TruncatedValue(
        fsum_complex([p.value for p in parts]),
        math.fsum(p.tail_bound for p in parts),
        max(p.cutoff for p in parts),
    )


def prime_power_terms(field, X: float) -> PrimePowerTerms:
    """Enumerate prime powers of norm <= X for ``field``."""
    if X < 2:
        raise DomainError("cutoff X must be >= 2")
    return _prime_power_terms(field, int(math.floor(X)))


@lru_cache(maxsize=32)
def _prime_power_terms(field, xi: int) -> PrimePowerTerms:
    table = prime_ideals_up_to(field, xi)
    norms = table.norm.astype(np.int64)
    idx, ks, nps = [], [], []
    power = norms.copy()
    k = 1
    n = len(table)
    while n:
        # ideals with N^k <= X form a prefix because norms are sorted
        n = int(np.searchsorted(power[:n], xi, side="right"))
        if not n:
            break
        idx.append(np.arange(n))
        ks.append(np.full(n, k))
        nps.append(power[:n].copy())
        k += 1
        power = power[:n] * norms[:n]
    index = np.concatenate(idx) if idx else np.zeros(0, dtype=np.int64)
    kk = np.concatenate(ks) if ks else np.zeros(0, dtype=np.int64)
    npow = np.concatenate(nps) if nps else np.zeros(0, dtype=np.int64)
    order = np.lexsort((table.conj[index], table.p[index], npow))
    index, kk, npow = index[order], kk[order], npow[order]
    arrays = (index, kk, npow, table.log_norm[index])
    for arr in arrays:
        arr.flags.writeable = False
    return PrimePowerTerms(table, *arrays)


def _check_sigma(s: complex, theta: float):
    if not s.real > 1 + theta:
        raise DivergenceError(f"Re(s) = {s.real} must exceed 1 + theta = {1 + theta}")


def _weights(terms: PrimePowerTerms, s: complex) -> np.ndarray:
    return terms.log_norm * np.exp(-terms.k * s * terms.log_norm)


def tail_majorant(X: float, u: float, scale: float) -> float:
    """scale * 2 (u-1)^{-2} X^{1-u} (1 + (u-1) log X), a bound for scale * sum_{n>X} Lambda(n) n^{-u}.

    With Lambda(n) <= log n the sum is at most f(X) + int_X^oo f for f(t) = log t t^{-u};
    f(X) is below the integral unless u - 1 > X, in which case f(X) is used instead.
    """
    if u <= 1:
        return math.inf
    e = u - 1
    integral = X ** (-e) * (1.0 + e * math.log(X)) / (e * e)
    return scale * (integral + max(integral, math.log(X) * X ** (-u)))


def _power_coeffs(alphas: np.ndarray, terms: PrimePowerTerms) -> np.ndarray:
    """sum_j alpha_j^k for each term (rows of ``alphas`` indexed by terms.index)."""
    out = np.zeros(len(terms.index), dtype=complex)
    if not len(terms.index):
        return out
    kmax = int(terms.k.max())
    power = alphas.copy()
    for k in range(1, kmax + 1):
        sel = terms.k == k
        out[sel] = power[terms.index[sel]].sum(axis=1)
        if k < kmax:
            power = power * alphas
    return out


def standard_coefficients(rep: AutomorphicRepData, terms: PrimePowerTerms) -> np.ndarray:
    """a_pi(p^k) for every term."""
    n = int(terms.index.max()) + 1 if len(terms.index) else 0
    alphas = rep.satake_matrix(terms.table, n)
    return _power_coeffs(alphas, terms)


def rs_coefficients(pair: RankinSelbergPair, terms: PrimePowerTerms) -> np.ndarray:
    """a_{pi x pi'}(p^k) for every term (stored RS parameters at ramified ideals)."""
    a = standard_coefficients(pair.left, terms)
    b = standard_coefficients(pair.right, terms)
    out = a * b
    table = terms.table
    for key in pair.ramified_keys:
        try:
            i = table.index_of(key)
        except KeyError:
            continue
        sel = terms.index == i
        params = np.array(pair.ramified_params.get(key, ()), dtype=complex)
        out[sel] = [complex((params**k).sum()) for k in terms.k[sel]]
    return out


def standard_terms(rep: AutomorphicRepData, s: complex, X: float) -> tuple[PrimePowerTerms, np.ndarray]:
    """Per-term summands a_pi(p^k) log N(p) N(p)^{-ks} in summation order."""
    s = complex(s)
    _check_sigma(s, rep.theta)
    terms = prime_power_terms(rep.field, X)
    return terms, standard_coefficients(rep, terms) * _weights(terms, s)


def rs_terms(pair: RankinSelbergPair, s: complex, X: float) -> tuple[PrimePowerTerms, np.ndarray]:
    s = complex(s)
    _check_sigma(s, pair.theta)
    terms = prime_power_terms(pair.field, X)
    return terms, rs_coefficients(pair, terms) * _weights(terms, s)


def log_derivative_standard(rep: AutomorphicRepData, s: complex, X: float) -> TruncatedValue:
    """Truncated -L'/L(s, pi) = sum_{N(p)^k <= X} a_pi(p^k) log N(p) N(p)^{-ks}."""
    _, summands = standard_terms(rep, s, X)
    u = complex(s).real - rep.theta
    return TruncatedValue(fsum_complex(summands), tail_majorant(X, u, rep.field.degree * rep.degree), float(X))


def log_derivative_rs(pair: RankinSelbergPair, s: complex, X: float) -> TruncatedValue:
    """Truncated -L'/L(s, pi x pi')."""
    _, summands = rs_terms(pair, s, X)
    u = complex(s).real - pair.theta
    return TruncatedValue(fsum_complex(summands), tail_majorant(X, u, pair.field.degree * pair.degree), float(X))


def _k_series(coeff: Callable[[int], complex], log_norm: float, norm: float, s: complex, r: float, scale: float):
    """sum_{k>=1} coeff(k) log N N^{-ks}, stopping once the geometric tail is negligible.

    |coeff(k)| <= scale * r_0^k with r = r_0 / N^{Re s} < 1 gives the tail bound.
    """
    total = 0j
    parts = []
    k = 1
    base = norm ** (-s)
    while True:
        term = coeff(k) * log_norm * base**k
        parts.append(term)
        total += term
        tail = scale * log_norm * r ** (k + 1) / (1 - r)
        if tail <= _K_REL_TOL * max(abs(total), 1.0) or k > 10_000:
            break
        k += 1
    return fsum_complex(parts)


def ramified_correction(pair: RankinSelbergPair, s: complex) -> complex:
    """E(s) = sum over ramified p, k >= 1 of [a_pi(p^k) a_pi'(p^k) - a_{pi x pi'}(p^k)] log N(p) N(p)^{-ks}."""
    s = complex(s)
    _check_sigma(s, pair.theta)
    keys = pair.ramified_keys
    if not keys:
        return 0j
    table = prime_ideals_up_to(pair.field, max(k[0] ** 2 for k in keys))
    parts = []
    m1, m2 = pair.left.degree, pair.right.degree
    for key in keys:
        ideal = table.ideal(*key)
        a = np.array(pair.left.satake_at(ideal), dtype=complex)
        b = np.array(pair.right.satake_at(ideal), dtype=complex)
        c = np.array(pair.ramified_params.get(key, ()), dtype=complex)

        def coeff(k, a=a, b=b, c=c):
            return complex((a**k).sum() * (b**k).sum() - (c**k).sum())

        rad = max([1.0, *np.abs(a).tolist()]) * max([1.0, *np.abs(b).tolist()])
        rad = max(rad, *np.abs(c).tolist()) if len(c) else rad
        r = rad / ideal.norm**s.real
        if r >= 1:
            raise DivergenceError(f"ramified series at {key} diverges at Re(s) = {s.real}")
        parts.append(_k_series(coeff, math.log(ideal.norm), ideal.norm, s, r, 2 * m1 * m2))
    return fsum_complex(parts)


def ramified_correction_bound(pair: RankinSelbergPair) -> tuple[float, float]:
    """(sharp, simplified) majorants of sup_{Re s > 1} |E(s)|.

    sharp = 2 m1 m2 sum_{p | q1 q2} log N(p) / (N(p)^{1-theta1-theta2} - 1);
    simplified = 2 m1 m2 omega(q1 q2) / (1 - theta1 - theta2).
    """
    budget = pair.theta
    if budget >= 1:
        raise DomainError("theta budget must be < 1")
    keys = pair.ramified_keys
    mm = pair.left.degree * pair.right.degree
    if not keys:
        return 0.0, 0.0
    table = prime_ideals_up_to(pair.field, max(k[0] ** 2 for k in keys))
    terms = []
    for key in keys:
        norm = table.ideal(*key).norm
        terms.append(math.log(norm) / (norm ** (1 - budget) - 1))
    return 2 * mm * math.fsum(terms), 2 * mm * len(keys) / (1 - budget)


def ramified_omega(pair: RankinSelbergPair) -> int:
    """Number of distinct prime ideals dividing q1 q2 (as recorded by the ramified sets)."""
    return len(pair.ramified_keys)


__all__ = [
    "TruncatedValue",
    "PrimePowerTerms",
    "deterministic_merge",
    "fsum_complex",
    "log_derivative_rs",
    "log_derivative_standard",
    "omega",
    "prime_power_terms",
    "ramified_correction",
    "ramified_correction_bound",
    "ramified_omega",
    "rs_coefficients",
    "rs_terms",
    "standard_coefficients",
    "standard_terms",
    "tail_majorant",
]
