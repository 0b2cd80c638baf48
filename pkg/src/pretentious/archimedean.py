"""Archimedean gamma factors: digamma, Gamma_v'/Gamma_v, the HIJT bound and L_infinity log-derivatives."""

from __future__ import annotations

import cmath
import math
from functools import lru_cache

from .arithmetic import PlaceKind
from .errors import PoleError
from .repdata import AutomorphicRepData, RankinSelbergPair

# B_{2n} for n = 1..8
_BERNOULLI = (1 / 6, -1 / 30, 1 / 42, -1 / 30, 5 / 66, -691 / 2730, 7 / 6, -3617 / 510)
_SWITCH = 10.0


def _is_pole(z: complex) -> bool:
    return z.imag == 0 and z.real <= 0 and z.real == math.floor(z.real)


def digamma(z: complex) -> complex:
    """psi(z) by upward recurrence to Re z >= 10 followed by the Stirling series."""
    z = complex(z)
    if _is_pole(z):
        raise PoleError(f"digamma has a pole at {z}")
    shift = 0j
    while z.real < _SWITCH:
        shift -= 1 / z
        z += 1
    inv2 = 1 / (z * z)
    series = 0j
    power = inv2
    for n, b in enumerate(_BERNOULLI, start=1):
        series += b / (2 * n) * power
        power *= inv2
    return shift + cmath.log(z) - 0.5 / z - series


def digamma_real(x: float) -> float:
    return digamma(complex(x)).real


@lru_cache(maxsize=None)
def euler_gamma() -> float:
    """Euler-Mascheroni constant, as -psi(1)."""
    return -digamma(1).real


@lru_cache(maxsize=None)
def c1() -> float:
    """c_1 = log pi + gamma."""
    return math.log(math.pi) + euler_gamma()


def gamma_factor_logderiv(place: PlaceKind, s: complex) -> complex:
    """Gamma_R'/Gamma_R(s) = -log(pi)/2 + psi(s/2)/2, Gamma_C'/Gamma_C(s) = -log(2 pi) + psi(s)."""
    s = complex(s)
    try:
        if place is PlaceKind.REAL:
            return -0.5 * math.log(math.pi) + 0.5 * digamma(s / 2)
        return -math.log(2 * math.pi) + digamma(s)
    except PoleError:
        raise PoleError(f"Gamma factor at a {place.name.lower()} place has a pole at s = {s}") from None


def hijt_bound(place: PlaceKind, s: complex) -> float:
    """[F_v:R] (-c1/2 + log|s+1|/2)."""
    return place.degree * (-0.5 * c1() + 0.5 * math.log(abs(complex(s) + 1)))


def hijt_margin(place: PlaceKind, s: complex) -> float:
    """hijt_bound - Re Gamma_v'/Gamma_v(s); nonnegative where the bound holds."""
    return hijt_bound(place, s) - gamma_factor_logderiv(place, s).real


def _sum_over_params(field, params, s, what):
    total = 0j
    for v, (place, mus) in enumerate(zip(field.places, params)):
        for j, mu in enumerate(mus):
            try:
                total += gamma_factor_logderiv(place, s + mu)
            except PoleError:
                raise PoleError(f"{what}: pole at place {v}, parameter index {j} (mu = {mu}), s = {s}") from None
    return total


def linf_logderiv(pair: RankinSelbergPair, s: complex) -> complex:
    """L_inf'/L_inf(s, pi x pi') = sum over places v and (j, j') of Gamma_v'/Gamma_v(s + mu_{j,j'}(v)).

    Pole errors report the place and the flattened index j * m' + j'.
    """
    return _sum_over_params(pair.field, pair.rs_langlands, complex(s), "L_inf(pi x pi')")


def linf_logderiv_standard(rep: AutomorphicRepData, s: complex) -> complex:
    return _sum_over_params(rep.field, rep.langlands, complex(s), "L_inf(pi)")


__all__ = [
    "PlaceKind",
    "c1",
    "digamma",
    "digamma_real",
    "euler_gamma",
    "gamma_factor_logderiv",
    "hijt_bound",
    "hijt_margin",
    "linf_logderiv",
    "linf_logderiv_standard",
]
