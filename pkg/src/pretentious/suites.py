"""Seeded verification suites shared by the command line and the test-suite."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .archimedean import hijt_margin
from .arithmetic import NumberField, PlaceKind, character_group, prime_ideals_up_to
from .conductor import (
    conductor_inequality_margin,
    mu_helper_margin,
    rs_analytic_conductor,
    sample_weil_parameter,
)
from .eulersum import log_derivative_rs, log_derivative_standard, prime_power_terms
from .hadamard import ZeroList, lemma31_rhs
from .metric import (
    MetricPoint,
    distance,
    dstar_combination_defect,
    mertens_terms,
    psd_check,
)
from .repdata import (
    character_pair,
    contragredient,
    from_character,
    random_synthetic_rep,
    rankin_selberg,
    trivial_rep,
)

FIELDS = (NumberField.rational(), NumberField.quadratic(-1), NumberField.quadratic(5))


@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    failures: int = 0
    worst: dict[str, float] = field(default_factory=dict)
    witness: str = ""
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def record(self, key: str, value: float, ok: bool, witness: str = "", lower_is_worse: bool = True):
        self.checks += 1
        prev = self.worst.get(key)
        if prev is None or (value < prev if lower_is_worse else value > prev):
            self.worst[key] = value
        if not ok:
            self.failures += 1
            if not self.witness:
                self.witness = witness or f"{key} = {value!r}"

    def lines(self) -> list[str]:
        out = [f"suite {self.name}: {self.checks} checks, {self.failures} failures"]
        for key, val in self.worst.items():
            out.append(f"  {key}: {val:.10g}")
        out.extend(f"  {n}" for n in self.notes)
        if self.witness:
            out.append(f"  witness: {self.witness}")
        out.append("PASS" if self.passed else "FAIL")
        return out


def random_point(rng: np.random.Generator, field: NumberField, cutoff: float, theta_max: float = 0.2) -> MetricPoint:
    rep = random_synthetic_rep(
        rng, field, theta=float(rng.uniform(0, theta_max)), cutoff=int(cutoff), label="random"
    )
    return MetricPoint(rep, float(rng.uniform(-20, 20)), int(rng.choice([-1, 1])))


def metric_axioms(seed: int = 0, n: int = 100, sigma: float = 1.5, X: float = 1e5) -> SuiteResult:
    res = SuiteResult("metric-axioms")
    rng = np.random.default_rng(seed)
    for i in range(n):
        fld = FIELDS[i % len(FIELDS)]
        x1, x2, x3 = (random_point(rng, fld, X) for _ in range(3))
        d12 = distance(x1, x2, sigma, X).value
        d21 = distance(x2, x1, sigma, X).value
        d13 = distance(x1, x3, sigma, X).value
        d32 = distance(x3, x2, sigma, X).value
        d11 = distance(x1, x1, sigma, X).value
        res.record("min distance", min(d12, d13, d32), min(d12, d13, d32) >= 0, f"triple {i}")
        res.record("max |D(x,y) - D(y,x)|", abs(d12 - d21), d12 == d21, f"triple {i}: asymmetric", False)
        res.record("max D(x,x)", d11, d11 == 0.0, f"triple {i}: D(x,x) = {d11!r}", False)
        defect = d13 + d32 - d12
        res.record("min triangle defect", defect, defect >= -1e-12, f"triple {i}: defect {defect!r}")
    return res


def psd_families(
    moduli=(5, 8), bound: int = 10**4, seed: int = 0, n_triples: int = 50, sigma: float = 1.5, X: float = 1e4
) -> SuiteResult:
    res = SuiteResult("psd")
    rationals = NumberField.rational()
    table = prime_ideals_up_to(rationals, bound)
    for q in moduli:
        family = [from_character(c) for c in character_group(q)]
        for ideal in table:
            if q % ideal.p == 0:
                continue
            k = 1
            while ideal.norm**k <= bound:
                herm, lam = psd_check(family, ideal, k)
                w = f"q={q}, p={ideal.p}, k={k}"
                res.record("max hermitian error", herm, herm <= 1e-12, w, False)
                res.record("min eigenvalue", lam, lam >= -1e-12, w)
                k += 1
    rng = np.random.default_rng(seed)
    chars = [c for q in (5, 7, 8) for c in character_group(q)]
    reps = [from_character(c) for c in chars]
    for i in range(n_triples):
        pts = []
        for _ in range(3):
            rep = reps[int(rng.integers(len(reps)))]
            if rng.random() < 0.3:
                rep = contragredient(rep)
            pts.append(MetricPoint(rep, float(rng.uniform(-15, 15)), int(rng.choice([-1, 1]))))
        defect, tail = dstar_combination_defect(*pts, sigma, X)
        res.record("min D* combination defect + tail", defect + tail, defect >= -tail, f"triple {i}")
        res.record("min D* combination defect", defect, True)
    return res


def hijt(sigmas=None, ts=None) -> SuiteResult:
    res = SuiteResult("hijt")
    sigmas = np.round(np.arange(1.01, 1.995, 0.01), 2) if sigmas is None else sigmas
    ts = np.arange(-50, 50.25, 0.5) if ts is None else ts
    for place in PlaceKind:
        key = f"min margin ({place.value})"
        for s in sigmas:
            for t in ts:
                m = hijt_margin(place, complex(s, t))
                res.record(key, m, m >= 0, f"{place.value} place, s = {s}+{t}i")
    return res


def conductor_suite(seed: int = 7, n: int = 10**5, n_helper: int = 10**4, qmax: int = 20) -> SuiteResult:
    res = SuiteResult("conductor")
    rng = np.random.default_rng(seed)
    for place in PlaceKind:
        key = f"min tensor margin ({place.value})"
        for _ in range(n):
            w1 = sample_weil_parameter(rng, place)
            w2 = sample_weil_parameter(rng, place)
            t = float(rng.uniform(-50, 50))
            m = conductor_inequality_margin(w1, w2, t)
            res.record(key, m, m >= -1e-12, f"{w1} x {w2} at t = {t}")
    for _ in range(n_helper):
        k = int(rng.integers(-20, 21))
        re_max = 0.5 if abs(k) >= 2 else 10.0
        nu = complex(rng.uniform(-re_max, re_max), rng.uniform(-10, 10))
        m = mu_helper_margin(k, nu)
        res.record("min helper margin", m, m >= -1e-12, f"k={k}, nu={nu}")
    witness = mu_helper_margin(1, -0.5 + 1e-9)
    res.record("helper margin at k=1, nu -> -1/2", witness, 0 <= witness <= 1e-8)
    ts = np.arange(-30, 30.01, 2.5)
    for q in range(1, qmax + 1):
        reps = [(c, from_character(c)) for c in character_group(q)]
        for c1_, r1 in reps:
            for c2_, r2 in reps:
                pairs = (rankin_selberg(r1, r2), character_pair(c1_, c2_))
                for pair in pairs:
                    for t in ts:
                        chk = rs_analytic_conductor(pair, float(t))
                        ratio = math.log(chk.bound) - math.log(chk.value)
                        res.record("min log(bound / c(it, pi x pi'))", ratio, chk.holds, f"{c1_.label} x {c2_.label}, t={t}")
    return res


def hadamard_suite(zeros: ZeroList, sigma: float = 1.5, ts=(0.0, 5.0, 10.0), X: float = 1e5) -> SuiteResult:
    res = SuiteResult("hadamard")
    one = trivial_rep()
    pair = rankin_selberg(one, one)
    for t in ts:
        s = complex(sigma, t)
        lhs = log_derivative_standard(one, s, X)
        rhs = lemma31_rhs(s, zeros, pair)
        gap = rhs - lhs.value.real
        res.record("min RHS - (-Re zeta'/zeta)", gap, gap >= -lhs.tail_bound, f"s = {s}")
        prev = math.inf
        for n in range(len(zeros) + 1):
            v = lemma31_rhs(s, zeros, pair, n)
            res.record("monotone in subset size", 0.0, v <= prev, f"s = {s}, subset {n}")
            prev = v
    return res


def tails(seed: int = 0, n: int = 50, sigmas=(1.2, 1.5, 2.0), X: float = 1e4) -> SuiteResult:
    res = SuiteResult("tails")
    rng = np.random.default_rng(seed)
    for i in range(n):
        fld = FIELDS[i % len(FIELDS)]
        rep = random_synthetic_rep(rng, fld, theta=float(rng.uniform(0, 0.09)), cutoff=int(2 * X))
        pair = rankin_selberg(rep, contragredient(rep))
        for sigma in sigmas:
            s = complex(sigma, float(rng.uniform(-10, 10)))
            a, b = log_derivative_standard(rep, s, X), log_derivative_standard(rep, s, 2 * X)
            gap = abs(a.value - b.value)
            res.record("min tail - |v(X) - v(2X)| (standard)", a.tail_bound - gap, gap <= a.tail_bound, f"rep {i}, s={s}")
            a, b = log_derivative_rs(pair, sigma, X), log_derivative_rs(pair, sigma, 2 * X)
            gap = abs(a.value - b.value)
            res.record("min tail - |v(X) - v(2X)| (pair)", a.tail_bound - gap, gap <= a.tail_bound, f"rep {i}, sigma={sigma}")
            res.record("min Re -L'/L(sigma, pi x pi~) + tail", a.value.real + a.tail_bound, a.value.real >= -a.tail_bound)
    return res


def three_four_one(sigma: float = 1.1, X: float = 1e5, gammas=(0.5, 1.0, 14.134725)) -> SuiteResult:
    res = SuiteResult("three-four-one")
    for g in gammas:
        terms, direct, closed = mertens_terms(sigma, g, X)
        lo = float(direct.min())
        res.record("min termwise value", lo, lo >= -1e-15, f"gamma = {g}")
        err = float(np.max(np.abs(direct - closed)))
        res.record("max |term - 2(1 + cos)^2 weight|", err, err <= 1e-15 * max(1.0, float(np.abs(closed).max())), f"gamma = {g}", False)
    res.notes.append(f"{len(prime_power_terms(NumberField.rational(), X).k)} prime powers per gamma")
    return res
