"""Coefficient data for automorphic representations and their Rankin-Selberg pairings.

A representation stores its unramified Satake parameters through a *rule*
(constant, Dirichlet character, or explicit table aligned with the canonical
prime-ideal ordering), plus explicit parameter lists at ramified ideals.
Ramified lists may be shorter than the degree; missing parameters are zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field, replace
from typing import Mapping, Sequence

import numpy as np

from .arithmetic import (
    DirichletCharacter,
    IdealKey,
    NumberField,
    PlaceKind,
    PrimeIdeal,
    PrimeIdealTable,
    prime_ideals_up_to,
)
from .errors import CoverageError, DomainError

_TOL = 1e-12


def default_theta(m: int) -> float:
    """Largest GRC exponent allowed by the Luo-Rudnick-Sarnak / Mueller-Speh range."""
    return 0.5 - 1.0 / (m * m + 1)


def _multiset_equal(a: Sequence[complex], b: Sequence[complex], tol: float = 1e-10) -> bool:
    if len(a) != len(b):
        return False
    rest = list(b)
    for x in a:
        for i, y in enumerate(rest):
            if abs(x - y) <= tol * max(1.0, abs(x)):
                del rest[i]
                break
        else:
            return False
    return True


def _conj_closed(alphas: Sequence[complex]) -> bool:
    return _multiset_equal(list(alphas), [complex(a).conjugate() for a in alphas])


# ----------------------------------------------------------------------------
# Satake rules
# ----------------------------------------------------------------------------


class SatakeRule:
    """Produces unramified Satake parameters for the leading rows of a prime-ideal table."""

    degree: int

    def rows(self, table: PrimeIdealTable, n: int) -> tuple[np.ndarray, np.ndarray]:
        """Return (alphas[n, m], covered[n])."""
        raise NotImplementedError

    def conjugate(self) -> "SatakeRule":
        raise NotImplementedError

    def conj_closed(self) -> bool:
        raise NotImplementedError

    def max_abs_log_ratio(self, table: PrimeIdealTable, n: int) -> float:
        """max over covered rows of log|alpha| / log N(p); used for the GRC check."""
        alphas, covered = self.rows(table, n)
        if not covered.any():
            return -math.inf
        mags = np.abs(alphas[covered])
        logn = table.log_norm[:n][covered][:, None]
        with np.errstate(divide="ignore"):
            ratios = np.where(mags > 0, np.log(np.where(mags > 0, mags, 1.0)) / logn, -np.inf)
        return float(ratios.max())


@dataclass(frozen=True)
class ConstantRule(SatakeRule):
    """The same Satake multiset at every unramified ideal (the trivial rep uses (1,))."""

    alphas: tuple[complex, ...]

    def __post_init__(self):
        object.__setattr__(self, "alphas", tuple(complex(a) for a in self.alphas))

    @property
    def degree(self) -> int:
        return len(self.alphas)

    def rows(self, table, n):
        return np.tile(np.array(self.alphas, dtype=complex), (n, 1)), np.ones(n, dtype=bool)

    def conjugate(self):
        return ConstantRule(tuple(complex(a).conjugate() for a in self.alphas))

    def conj_closed(self):
        return _conj_closed(self.alphas)


@dataclass(frozen=True)
class CharacterRule(SatakeRule):
    """alpha(p) = chi(p) for a Dirichlet character over Q."""

    character: DirichletCharacter
    degree: int = 1

    def rows(self, table, n):
        values = self.character.values()
        return values[table.p[:n] % self.character.modulus][:, None], np.ones(n, dtype=bool)

    def conjugate(self):
        return CharacterRule(self.character.conjugate())

    def conj_closed(self):
        return self.character.is_real


@dataclass(frozen=True, eq=False)
class TableRule(SatakeRule):
    """Explicit Satake table aligned with the canonical ideal order of ``field`` up to ``cutoff``.

    Rows with ``covered == False`` are unknown and raise a coverage error when used.
    """

    field: NumberField
    cutoff: int
    alphas: np.ndarray
    covered: np.ndarray

    def __post_init__(self):
        self.alphas.flags.writeable = False
        self.covered.flags.writeable = False

    @property
    def degree(self) -> int:
        return self.alphas.shape[1]

    @classmethod
    def from_entries(
        cls, field: NumberField, cutoff: int, degree: int, entries: Mapping[IdealKey, Sequence[complex]]
    ) -> "TableRule":
        table = prime_ideals_up_to(field, cutoff)
        alphas = np.zeros((len(table), degree), dtype=complex)
        covered = np.zeros(len(table), dtype=bool)
        for key, vals in entries.items():
            try:
                i = table.index_of(tuple(key))
            except KeyError:
                raise DomainError(f"no prime ideal {key} of norm <= {cutoff} in {field}") from None
            if len(vals) != degree:
                raise DomainError(f"ideal {key}: expected {degree} Satake parameters, got {len(vals)}")
            alphas[i] = vals
            covered[i] = True
        return cls(field, int(cutoff), alphas, covered)

    def rows(self, table, n):
        if table.field != self.field:
            raise DomainError("table field mismatch")
        k = min(n, len(self.alphas))
        alphas = np.zeros((n, self.degree), dtype=complex)
        covered = np.zeros(n, dtype=bool)
        alphas[:k] = self.alphas[:k]
        covered[:k] = self.covered[:k]
        return alphas, covered

    def conjugate(self):
        return TableRule(self.field, self.cutoff, self.alphas.conj(), self.covered.copy())

    def conj_closed(self):
        return all(_conj_closed(row) for row in self.alphas[self.covered].tolist())

    def __eq__(self, other):
        return (
            isinstance(other, TableRule)
            and self.field == other.field
            and self.cutoff == other.cutoff
            and np.array_equal(self.alphas, other.alphas)
            and np.array_equal(self.covered, other.covered)
        )

    __hash__ = None  # type: ignore[assignment]


# ----------------------------------------------------------------------------
# Representations
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class AutomorphicRepData:
    """Data of one pi in F*_m: Satake rule, ramified lists, Langlands parameters, conductor, theta."""

    degree: int
    field: NumberField
    rule: SatakeRule
    ramified: Mapping[IdealKey, tuple[complex, ...]] = dc_field(default_factory=dict)
    langlands: tuple[tuple[complex, ...], ...] = ()
    conductor_norm: int = 1
    theta: float | None = None
    is_trivial: bool = False
    self_dual: bool = False
    label: str = dc_field(default="", compare=False)

    def __post_init__(self):
        m = self.degree
        if m < 1:
            raise DomainError("degree must be >= 1")
        if self.theta is None:
            object.__setattr__(self, "theta", default_theta(m))
        if not 0 <= self.theta < 0.5:
            raise DomainError(f"theta must lie in [0, 1/2), got {self.theta}")
        if self.rule.degree != m:
            raise DomainError("Satake rule degree does not match the representation degree")
        ram = {tuple(k): tuple(complex(a) for a in v) for k, v in self.ramified.items()}
        object.__setattr__(self, "ramified", ram)
        places = self.field.places
        langlands = self.langlands or tuple((0j,) * m for _ in places)
        langlands = tuple(tuple(complex(mu) for mu in per) for per in langlands)
        object.__setattr__(self, "langlands", langlands)
        if len(langlands) != len(places) or any(len(per) != m for per in langlands):
            raise DomainError(f"need {m} Langlands parameters at each of {len(places)} archimedean places")
        if self.conductor_norm < 1:
            raise DomainError("conductor norm must be a positive integer")
        self._validate()

    def _validate(self):
        m, theta = self.degree, self.theta
        for key, vals in self.ramified.items():
            if len(vals) > m:
                raise DomainError(f"ramified ideal {key}: more than {m} parameters")
            norm = self._norm_of(key)
            for a in vals:
                if abs(a) > norm**theta * (1 + _TOL):
                    raise DomainError(f"ramified ideal {key}: |alpha| = {abs(a)} exceeds N(p)^theta")
        for per in self.langlands:
            for mu in per:
                if mu.real < -theta - _TOL:
                    raise DomainError(f"Langlands parameter {mu} has real part below -theta")
        if isinstance(self.rule, ConstantRule):
            if any(abs(a) > 1 + _TOL for a in self.rule.alphas):
                raise DomainError("constant Satake parameters must satisfy |alpha| <= 1")
        elif isinstance(self.rule, TableRule):
            table = prime_ideals_up_to(self.field, max(self.rule.cutoff, 2))
            if self.rule.max_abs_log_ratio(table, len(self.rule.alphas)) > theta + _TOL:
                raise DomainError("Satake table violates |alpha| <= N(p)^theta")
        if self.is_trivial:
            ok = (
                m == 1
                and self.conductor_norm == 1
                and not self.ramified
                and isinstance(self.rule, ConstantRule)
                and self.rule.alphas == (1 + 0j,)
                and all(mu == 0 for per in self.langlands for mu in per)
            )
            if not ok:
                raise DomainError("only the trivial representation may be flagged trivial")
        if self.self_dual:
            ok = (
                self.rule.conj_closed()
                and all(_conj_closed(v) for v in self.ramified.values())
                and all(_conj_closed(per) for per in self.langlands)
            )
            if not ok:
                raise DomainError("self_dual requires conjugation-closed Satake and Langlands data")

    def _norm_of(self, key: IdealKey) -> int:
        p, conj = key
        table = prime_ideals_up_to(self.field, max(p * p, 4))
        try:
            return table.ideal(p, conj).norm
        except KeyError:
            raise DomainError(f"{key} is not a prime ideal of {self.field}") from None

    @property
    def is_ramified_key(self):
        return self.ramified.__contains__

    def satake_matrix(self, table: PrimeIdealTable, n: int | None = None) -> np.ndarray:
        """Satake parameters for the first n ideals of ``table`` as an (n, m) array.

        Ramified rows hold the stored (zero-padded) lists.
        """
        if table.field != self.field:
            raise DomainError(f"table over {table.field} used with a representation over {self.field}")
        n = len(table) if n is None else n
        alphas, covered = self.rule.rows(table, n)
        if self.ramified:
            for key, vals in self.ramified.items():
                try:
                    i = table.index_of(key)
                except KeyError:
                    continue
                if i < n:
                    alphas[i] = 0
                    alphas[i, : len(vals)] = vals
                    covered[i] = True
        if not covered.all():
            i = int(np.flatnonzero(~covered)[0])
            raise CoverageError(f"{self.label or 'representation'} has no Satake data at {table[i].key}")
        return alphas

    def satake_at(self, ideal: PrimeIdeal) -> tuple[complex, ...]:
        if ideal.key in self.ramified:
            return self.ramified[ideal.key]
        table = prime_ideals_up_to(self.field, max(ideal.norm, 2))
        try:
            i = table.index_of(ideal.key)
        except KeyError:
            raise CoverageError(f"{ideal.key} is not a prime ideal of {self.field}") from None
        return tuple(complex(a) for a in self.satake_matrix(table, i + 1)[i])


def contragredient(rep: AutomorphicRepData) -> AutomorphicRepData:
    """Conjugate all Satake and Langlands parameters; the conductor is unchanged."""
    label = rep.label[:-1] if rep.label.endswith("~") else (rep.label + "~" if rep.label else "")
    return replace(
        rep,
        rule=rep.rule.conjugate(),
        ramified={k: tuple(a.conjugate() for a in v) for k, v in rep.ramified.items()},
        langlands=tuple(tuple(mu.conjugate() for mu in per) for per in rep.langlands),
        label=label,
    )


def power_sum_coefficient(rep: AutomorphicRepData, ideal: PrimeIdeal, k: int) -> complex:
    """a_pi(p^k) = sum_j alpha_j(p)^k."""
    if k < 1:
        raise DomainError("k must be >= 1")
    return complex(sum(a**k for a in rep.satake_at(ideal)))


def satake_to_lambda(alphas: Sequence[complex], j: int) -> complex:
    """lambda(p^j) = h_j(alphas), via Newton's identity j h_j = sum_{i=1}^j p_i h_{j-i}."""
    if j < 0:
        raise DomainError("j must be >= 0")
    alphas = [complex(a) for a in alphas]
    power_sums = [complex(sum(a**i for a in alphas)) for i in range(j + 1)]
    h = [1 + 0j]
    for n in range(1, j + 1):
        h.append(sum(power_sums[i] * h[n - i] for i in range(1, n + 1)) / n)
    return h[j]


def trivial_rep(field: NumberField | None = None) -> AutomorphicRepData:
    field = field or NumberField.rational()
    return AutomorphicRepData(
        1, field, ConstantRule((1 + 0j,)), theta=0.0, is_trivial=True, self_dual=True, label="1"
    )


def from_character(chi: DirichletCharacter) -> AutomorphicRepData:
    """GL(1) representation over Q attached to a Dirichlet character.

    Ramified set = primes dividing the modulus (empty parameter lists);
    mu_infinity = (1 - chi(-1))/2; conductor = conductor of chi.
    """
    q = chi.modulus
    ramified = {(p, 0): () for p in range(2, q + 1) if q % p == 0 and all(p % r for r in range(2, p))}
    mu = 0j if chi.parity == 1 else 1 + 0j
    trivial = q == 1
    return AutomorphicRepData(
        1,
        NumberField.rational(),
        ConstantRule((1 + 0j,)) if trivial else CharacterRule(chi),
        ramified=ramified,
        langlands=((mu,),),
        conductor_norm=chi.conductor,
        theta=0.0,
        is_trivial=trivial,
        self_dual=chi.is_real,
        label=chi.label or f"chi mod {q}",
    )


def random_synthetic_rep(
    rng: np.random.Generator,
    field: NumberField | None = None,
    degree: int | None = None,
    theta: float | None = None,
    cutoff: int = 10**4,
    max_ramified: int = 2,
    self_dual: bool = False,
    label: str = "",
) -> AutomorphicRepData:
    """Random explicit-table representation satisfying the GRC-type bounds for ``theta``."""
    field = field or NumberField.rational()
    m = int(degree) if degree is not None else int(rng.integers(1, 4))
    theta = float(theta) if theta is not None else float(rng.uniform(0.0, 0.2))
    table = prime_ideals_up_to(field, cutoff)
    n = len(table)
    logn = table.log_norm[:, None]
    mags = np.exp(theta * rng.uniform(-1.0, 1.0, (n, m)) * logn)
    phases = np.exp(2j * np.pi * rng.uniform(0.0, 1.0, (n, m)))
    alphas = mags * phases
    if self_dual:
        # pair each parameter with its conjugate; an odd leftover is real
        alphas[:, 1::2] = alphas[:, 0 : m - 1 : 2].conj()
        if m % 2:
            alphas[:, -1] = alphas[:, -1].real
    ramified = {}
    n_ram = int(rng.integers(0, max_ramified + 1))
    for i in sorted(rng.choice(min(8, n), size=min(n_ram, n), replace=False).tolist()):
        ideal = table[i]
        r = int(rng.integers(0, m + 1))
        vals = ideal.norm ** (theta * rng.uniform(-1, 1, r)) * np.exp(2j * np.pi * rng.uniform(0, 1, r))
        if self_dual:
            vals = np.abs(vals)
        ramified[ideal.key] = tuple(complex(v) for v in vals)
    conductor = 1
    for key in ramified:
        conductor *= table.ideal(*key).norm ** int(rng.integers(1, 3))
    mus = []
    for _ in field.places:
        re = rng.uniform(-theta, 2.0, m)
        im = rng.uniform(-5.0, 5.0, m) if not self_dual else np.zeros(m)
        mus.append(tuple(complex(a, b) for a, b in zip(re, im)))
    return AutomorphicRepData(
        m,
        field,
        TableRule(field, int(cutoff), alphas, np.ones(n, dtype=bool)),
        ramified=ramified,
        langlands=tuple(mus),
        conductor_norm=conductor,
        theta=theta,
        self_dual=self_dual,
        label=label or f"synthetic(m={m})",
    )


def same_data(a: AutomorphicRepData, b: AutomorphicRepData, cutoff: int = 1000) -> bool:
    """Table comparison of two representations (Satake multisets up to ``cutoff``)."""
    if a.field != b.field or a.degree != b.degree or a.conductor_norm != b.conductor_norm:
        return False
    if set(a.ramified) != set(b.ramified):
        return False
    if not all(_multiset_equal(a.ramified[k], b.ramified[k]) for k in a.ramified):
        return False
    if not all(_multiset_equal(x, y) for x, y in zip(a.langlands, b.langlands)):
        return False
    for rule in (a.rule, b.rule):
        if isinstance(rule, TableRule):
            cutoff = min(cutoff, rule.cutoff)
    if cutoff < 2:
        return True
    table = prime_ideals_up_to(a.field, cutoff)
    try:
        ma, mb = a.satake_matrix(table), b.satake_matrix(table)
    except CoverageError:
        return False
    if a.degree == 1:
        return bool(np.allclose(ma, mb, rtol=0, atol=1e-12))
    sa = np.sort_complex(np.round(ma, 10))
    sb = np.sort_complex(np.round(mb, 10))
    return bool(np.allclose(sa, sb, rtol=0, atol=1e-9))


# ----------------------------------------------------------------------------
# Rankin-Selberg pairs
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class RankinSelbergPair:
    """Data of L(s, left x right).

    ``ramified_params`` covers ideals ramified for either factor; missing
    parameters are zero. ``upper_bound_mode`` marks a conductor taken from the
    divisibility bound N(q)^{m'} N(q')^m rather than supplied.
    """

    left: AutomorphicRepData
    right: AutomorphicRepData
    delta: bool
    ramified_params: Mapping[IdealKey, tuple[complex, ...]]
    rs_langlands: tuple[tuple[complex, ...], ...]
    rs_conductor_norm: int
    upper_bound_mode: bool = False

    @property
    def degree(self) -> int:
        return self.left.degree * self.right.degree

    @property
    def theta(self) -> float:
        return self.left.theta + self.right.theta

    @property
    def field(self) -> NumberField:
        return self.left.field

    @property
    def ramified_keys(self) -> list[IdealKey]:
        return sorted(set(self.left.ramified) | set(self.right.ramified))

    def params_at(self, ideal: PrimeIdeal) -> tuple[complex, ...]:
        """RS Satake parameters at an ideal: stored lists at ramified ideals, products elsewhere."""
        if ideal.key in self.ramified_params or ideal.key in self.left.ramified or ideal.key in self.right.ramified:
            return self.ramified_params.get(ideal.key, ())
        a = self.left.satake_at(ideal)
        b = self.right.satake_at(ideal)
        return tuple(x * y for x in a for y in b)


def _default_rs_langlands(left: AutomorphicRepData, right: AutomorphicRepData):
    out = []
    for place, mus, nus in zip(left.field.places, left.langlands, right.langlands):
        per = []
        for mu in mus:
            for nu in nus:
                if place is PlaceKind.REAL and left.degree == right.degree == 1 and {mu, nu} <= {0j, 1 + 0j}:
                    # one-dimensional Weil characters: the sign rule k = 1 - phi(j) phi'(j)
                    per.append(complex((mu.real + nu.real) % 2))
                else:
                    per.append(mu + nu)
        out.append(tuple(per))
    return tuple(out)


def rankin_selberg(
    left: AutomorphicRepData,
    right: AutomorphicRepData,
    ramified_params: Mapping[IdealKey, Sequence[complex]] | None = None,
    rs_langlands: Sequence[Sequence[complex]] | None = None,
    conductor_norm: int | None = None,
) -> RankinSelbergPair:
    """Build the Rankin-Selberg data of (left, right).

    Defaults: empty ramified lists, pairwise-sum Langlands parameters, and the
    divisibility upper bound for the conductor.
    """
    if left.field != right.field:
        raise DomainError("Rankin-Selberg factors must live over the same field")
    mm = left.degree * right.degree
    theta = left.theta + right.theta
    keys = set(left.ramified) | set(right.ramified)
    params = {tuple(k): tuple(complex(a) for a in v) for k, v in (ramified_params or {}).items()}
    for key, vals in params.items():
        if key not in keys:
            raise DomainError(f"ideal {key} is unramified for both factors")
        if len(vals) > mm:
            raise DomainError(f"ideal {key}: more than {mm} Rankin-Selberg parameters")
        norm = left._norm_of(key)
        if any(abs(a) > norm**theta * (1 + _TOL) for a in vals):
            raise DomainError(f"ideal {key}: Rankin-Selberg parameter exceeds N(p)^(theta+theta')")
    for key in keys:
        params.setdefault(key, ())
    if rs_langlands is None:
        mus = _default_rs_langlands(left, right)
    else:
        mus = tuple(tuple(complex(mu) for mu in per) for per in rs_langlands)
        if len(mus) != len(left.field.places) or any(len(per) != mm for per in mus):
            raise DomainError(f"need {mm} Rankin-Selberg Langlands parameters per place")
    if any(mu.real < -theta - _TOL for per in mus for mu in per):
        raise DomainError("Rankin-Selberg Langlands parameter has real part below -(theta+theta')")
    bound = left.conductor_norm**right.degree * right.conductor_norm**left.degree
    upper = conductor_norm is None
    if upper:
        conductor_norm = bound
    elif conductor_norm < 1 or bound % conductor_norm:
        raise DomainError(f"conductor norm {conductor_norm} does not divide the bound {bound}")
    delta = same_data(right, contragredient(left))
    return RankinSelbergPair(left, right, delta, params, mus, int(conductor_norm), upper)


def character_pair(chi: DirichletCharacter, psi: DirichletCharacter) -> RankinSelbergPair:
    """Explicit-mode pair for two Dirichlet characters: L(s, chi x psi) = L(s, (chi psi)*)."""
    left, right = from_character(chi), from_character(psi)
    if chi.modulus == psi.modulus:
        prod = (chi * psi).primitive()
    else:
        q = math.lcm(chi.modulus, psi.modulus)
        lift = lambda c: DirichletCharacter(
            q, c.denominator, tuple(c.exponents[r % c.modulus] if math.gcd(r, q) == 1 else -1 for r in range(q))
        )
        prod = (lift(chi) * lift(psi)).primitive()
    params = {}
    for key in set(left.ramified) | set(right.ramified):
        p = key[0]
        params[key] = () if prod.modulus % p == 0 else (prod(p),)
    mu = 0j if prod.parity == 1 else 1 + 0j
    return rankin_selberg(left, right, params, ((mu,),), prod.conductor)


def rankin_selberg_coefficient(pair: RankinSelbergPair, ideal: PrimeIdeal, k: int) -> complex:
    """a_{pi x pi'}(p^k): product of power sums when unramified, stored power sum when ramified."""
    if k < 1:
        raise DomainError("k must be >= 1")
    key = ideal.key
    if key in pair.left.ramified or key in pair.right.ramified:
        return complex(sum(a**k for a in pair.ramified_params.get(key, ())))
    return power_sum_coefficient(pair.left, ideal, k) * power_sum_coefficient(pair.right, ideal, k)
