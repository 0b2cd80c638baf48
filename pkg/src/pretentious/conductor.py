"""Analytic conductors and archimedean Weil-group parameter arithmetic."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .arithmetic import PlaceKind
from .errors import DomainError
from .repdata import AutomorphicRepData, RankinSelbergPair


@dataclass(frozen=True)
class WeilRepParameter:
    """Irreducible representation of the Weil group at a real or complex place.

    Complex place: the character chi_{k,nu}, mu = nu + |k|/2.
    Real place, dim 1: k = 1 - phi(j) in {0, 2}, mu = nu + k/2.
    Real place, dim 2: induced from chi_{k,nu} with k >= 1, mu = nu + k/2.
    """

    place: PlaceKind
    dim: int
    k: int
    nu: complex = 0j
    check: bool = True

    def __post_init__(self):
        object.__setattr__(self, "nu", complex(self.nu))
        if not self.check:
            return
        if self.place is PlaceKind.COMPLEX:
            if self.dim != 1:
                raise DomainError("irreducible representations at a complex place are one-dimensional")
            if abs(self.k) >= 2 and abs(self.nu.real) > 0.5:
                raise DomainError("|Re nu| <= 1/2 is required when |k| >= 2")
        elif self.dim == 1:
            if self.k not in (0, 2):
                raise DomainError("a one-dimensional real parameter needs k in {0, 2}")
        elif self.dim == 2:
            if self.k < 1:
                raise DomainError("a two-dimensional real parameter needs k >= 1")
        else:
            raise DomainError("dimension must be 1 or 2")

    @property
    def mu(self) -> complex:
        if self.place is PlaceKind.COMPLEX:
            return self.nu + abs(self.k) / 2
        return self.nu + self.k / 2

    @property
    def sign(self) -> int:
        """phi(j) for a one-dimensional real parameter."""
        if self.place is not PlaceKind.REAL or self.dim != 1:
            raise DomainError("phi(j) is only defined for one-dimensional real parameters")
        return 1 - self.k

    @property
    def squared_factor(self) -> bool:
        return self.place is PlaceKind.COMPLEX or self.dim == 2


@dataclass(frozen=True)
class WeilDecomposition:
    summands: tuple[WeilRepParameter, ...]
    reducible: bool = False

    @property
    def dim(self) -> int:
        return sum(w.dim for w in self.summands)


def local_conductor(w: WeilRepParameter, t: float) -> float:
    """(|mu + it| + 3)^2 for complex places and real dim 2, |mu + it| + 3 for real dim 1."""
    base = abs(w.mu + 1j * t) + 3
    return base * base if w.squared_factor else base


def weil_tensor(w1: WeilRepParameter, w2: WeilRepParameter) -> WeilDecomposition:
    """Decompose w1 (x) w2 into irreducible parameters."""
    if w1.place is not w2.place:
        raise DomainError("cannot tensor parameters at different place kinds")
    place = w1.place
    if place is PlaceKind.COMPLEX:
        return WeilDecomposition((WeilRepParameter(place, 1, w1.k + w2.k, w1.nu + w2.nu, check=False),))
    if w1.dim == 1 and w2.dim == 1:
        k = 1 - w1.sign * w2.sign
        return WeilDecomposition((WeilRepParameter(place, 1, k, w1.nu + w2.nu, check=False),))
    if w1.dim == 1 or w2.dim == 1:
        one, two = (w1, w2) if w1.dim == 1 else (w2, w1)
        return WeilDecomposition((WeilRepParameter(place, 2, two.k, one.nu + two.nu, check=False),))
    a, b = (w1, w2) if w1.k >= w2.k else (w2, w1)
    summands = (
        WeilRepParameter(place, 2, a.k + b.k, a.nu + b.nu, check=False),
        WeilRepParameter(place, 2, a.k - b.k, a.nu - b.nu, check=False),
    )
    return WeilDecomposition(summands, reducible=a.k == b.k)


def conductor_inequality_margin(w1: WeilRepParameter, w2: WeilRepParameter, t: float) -> float:
    """log[c(w1)^{d'} c(w2)^{d} (|t|+3)^{d d' [F_v:R]}] - log c(it, w1 (x) w2)."""
    dec = weil_tensor(w1, w2)
    lhs = math.fsum(math.log(local_conductor(w, t)) for w in dec.summands)
    rhs = (
        w2.dim * math.log(local_conductor(w1, 0.0))
        + w1.dim * math.log(local_conductor(w2, 0.0))
        + w1.dim * w2.dim * w1.place.degree * math.log(abs(t) + 3)
    )
    return rhs - lhs


def mu_helper_margin(k: int, nu: complex) -> float:
    """3|mu| + 1 - (|k|/2 + |nu|) with mu = nu + |k|/2."""
    nu = complex(nu)
    ak = abs(int(k))
    if ak >= 2 and abs(nu.real) > 0.5:
        raise DomainError("|Re nu| <= 1/2 is required when |k| >= 2")
    mu = nu + ak / 2
    if ak == 0:
        # mu = nu
        return 2 * abs(nu) + 1
    if ak == 1:
        return 3 * abs(mu) + 1 - (0.5 + abs(nu))
    return 3 * abs(mu) + 1 - (ak / 2 + abs(nu))


def sample_weil_parameter(
    rng: np.random.Generator, place: PlaceKind, kmax: int = 20, numax: float = 10.0
) -> WeilRepParameter:
    """Random admissible parameter; |Re nu| <= 1/2 whenever |k| >= 2."""
    if place is PlaceKind.COMPLEX:
        dim, k = 1, int(rng.integers(-kmax, kmax + 1))
    elif rng.random() < 0.5:
        dim, k = 1, int(rng.choice([0, 2]))
    else:
        dim, k = 2, int(rng.integers(1, kmax + 1))
    re_max = 0.5 if abs(k) >= 2 else numax
    nu = complex(rng.uniform(-re_max, re_max), rng.uniform(-numax, numax))
    return WeilRepParameter(place, dim, k, nu)


def _archimedean_product(field, params, t: float) -> float:
    out = 1.0
    for place, mus in zip(field.places, params):
        for mu in mus:
            out *= (abs(mu + 1j * t) + 3) ** place.degree
    return out


def analytic_conductor(rep: AutomorphicRepData, t: float) -> float:
    """|D_F|^m N(q) prod_v prod_j (|mu_j(v) + it| + 3)^{[F_v:R]}."""
    disc = abs(rep.field.discriminant) ** rep.degree
    return disc * rep.conductor_norm * _archimedean_product(rep.field, rep.langlands, float(t))


@dataclass(frozen=True)
class RSConductorCheck:
    value: float
    bound: float
    holds: bool
    upper_bound_mode: bool


def rs_analytic_conductor(pair: RankinSelbergPair, t: float) -> RSConductorCheck:
    """c(it, pi x pi') and the check c(it, pi x pi') <= c(pi)^{m'} c(pi')^m (|t|+3)^{m m' [F:Q]}."""
    t = float(t)
    field = pair.field
    mm = pair.degree
    value = abs(field.discriminant) ** mm * pair.rs_conductor_norm * _archimedean_product(field, pair.rs_langlands, t)
    bound = (
        analytic_conductor(pair.left, 0.0) ** pair.right.degree
        * analytic_conductor(pair.right, 0.0) ** pair.left.degree
        * (abs(t) + 3) ** (mm * field.degree)
    )
    return RSConductorCheck(value, bound, value <= bound * (1 + 1e-12), pair.upper_bound_mode)
