"""Ground arithmetic: primes, prime ideals of Q and quadratic fields, Kronecker
symbols, Dirichlet character groups and the omega function.

Prime-ideal tables are stored column-wise as read-only numpy arrays and sorted
by (norm, residue prime, conjugate index), so that a table for X is always a
prefix of the table for any larger cutoff.
"""

from __future__ import annotations

import cmath
import enum
import itertools
import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

import numpy as np

from .errors import DomainError


class PlaceKind(enum.Enum):
    """Archimedean place type; ``degree`` is [F_v : R]."""

    REAL = "real"
    COMPLEX = "complex"

    @property
    def degree(self) -> int:
        return 1 if self is PlaceKind.REAL else 2


def _is_squarefree(n: int) -> bool:
    n = abs(n)
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class NumberField:
    """Q (``d is None``) or the quadratic field Q(sqrt(d)) for squarefree d != 0, 1."""

    d: int | None = None

    def __post_init__(self):
        if self.d is not None:
            if self.d in (0, 1) or not _is_squarefree(self.d):
                raise DomainError(f"quadratic field needs squarefree d != 0, 1; got {self.d}")

    @classmethod
    def rational(cls) -> "NumberField":
        return cls(None)

    @classmethod
    def quadratic(cls, d: int) -> "NumberField":
        return cls(int(d))

    @property
    def kind(self) -> str:
        return "rational" if self.d is None else "quadratic"

    @property
    def discriminant(self) -> int:
        """Signed field discriminant (1 for Q)."""
        if self.d is None:
            return 1
        return self.d if self.d % 4 == 1 else 4 * self.d

    @property
    def degree(self) -> int:
        return 1 if self.d is None else 2

    @property
    def places(self) -> tuple[PlaceKind, ...]:
        if self.d is None:
            return (PlaceKind.REAL,)
        if self.d > 0:
            return (PlaceKind.REAL, PlaceKind.REAL)
        return (PlaceKind.COMPLEX,)

    def __str__(self) -> str:
        return "Q" if self.d is None else f"Q(sqrt({self.d}))"


@dataclass(frozen=True)
class PrimeIdeal:
    """A prime ideal, identified by its residue prime and a conjugate index (0/1 for split primes)."""

    p: int
    norm: int
    f: int
    ramified: bool
    conj: int = 0

    @property
    def key(self) -> tuple[int, int]:
        return (self.p, self.conj)


IdealKey = tuple[int, int]


def primes_up_to(n: int) -> np.ndarray:
    """Sieve of Eratosthenes; returns an int64 array of primes <= n."""
    n = int(n)
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for i in range(2, math.isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = False
    return np.flatnonzero(sieve).astype(np.int64)


def kronecker_symbol(D: int, n: int) -> int:
    """Kronecker symbol (D/n) for n >= 1."""
    D, n = int(D), int(n)
    if n <= 0:
        raise DomainError("kronecker_symbol needs n >= 1")
    if n == 1:
        return 1
    result = 1
    # factor out 2 from n
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if D % 2 == 0:
            return 0
        if v % 2 == 1 and D % 8 in (3, 5):
            result = -result
    # Jacobi symbol (D/n) for odd n
    a = D % n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def omega(n: int) -> int:
    """Number of distinct prime divisors of n >= 1."""
    n = int(n)
    if n < 1:
        raise DomainError("omega needs n >= 1")
    count = 0
    d = 2
    while d * d <= n:
        if n % d == 0:
            count += 1
            while n % d == 0:
                n //= d
        d += 1
    return count + (1 if n > 1 else 0)


def factorize(n: int) -> list[tuple[int, int]]:
    """Trial-division factorization as ascending (prime, exponent) pairs."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


class PrimeIdealTable:
    """All prime ideals of ``field`` with norm <= ``cutoff``, ascending by norm."""

    def __init__(self, field: NumberField, cutoff: float, p, norm, f, ramified, conj):
        self.field = field
        self.cutoff = cutoff
        self.p = p
        self.norm = norm
        self.f = f
        self.ramified = ramified
        self.conj = conj
        for arr in (p, norm, f, ramified, conj):
            arr.flags.writeable = False
        self.log_norm = np.log(norm.astype(np.float64))
        self.log_norm.flags.writeable = False
        self._index: dict[IdealKey, int] | None = None

    def __len__(self) -> int:
        return len(self.p)

    def __getitem__(self, i: int) -> PrimeIdeal:
        return PrimeIdeal(
            int(self.p[i]), int(self.norm[i]), int(self.f[i]), bool(self.ramified[i]), int(self.conj[i])
        )

    def __iter__(self) -> Iterator[PrimeIdeal]:
        for i in range(len(self)):
            yield self[i]

    def keys(self) -> list[IdealKey]:
        return list(zip(self.p.tolist(), self.conj.tolist()))

    def index_of(self, key: IdealKey) -> int:
        if self._index is None:
            self._index = {k: i for i, k in enumerate(self.keys())}
        return self._index[key]

    def count_up_to(self, x: float) -> int:
        """Number of leading entries with norm <= x (the table is sorted by norm)."""
        return int(np.searchsorted(self.norm, math.floor(x), side="right"))

    def ideal(self, p: int, conj: int = 0) -> PrimeIdeal:
        return self[self.index_of((p, conj))]


@lru_cache(maxsize=32)
def _ideal_table(field: NumberField, cutoff: int) -> PrimeIdealTable:
    primes = primes_up_to(cutoff)
    if field.d is None:
        ones = np.ones(len(primes), dtype=np.int64)
        return PrimeIdealTable(
            field, cutoff, primes, primes.copy(), ones, np.zeros(len(primes), bool), np.zeros(len(primes), np.int64)
        )
    D = field.discriminant
    rows = []
    for p in primes.tolist():
        chi = kronecker_symbol(D, p)
        if chi == 0:
            rows.append((p, p, 1, True, 0))
        elif chi == 1:
            rows.append((p, p, 1, False, 0))
            rows.append((p, p, 1, False, 1))
        elif p * p <= cutoff:
            rows.append((p, p * p, 2, False, 0))
    arr = np.array(rows, dtype=np.int64).reshape(-1, 5)
    order = np.lexsort((arr[:, 4], arr[:, 0], arr[:, 1]))
    arr = arr[order]
    return PrimeIdealTable(
        field, cutoff, arr[:, 0].copy(), arr[:, 1].copy(), arr[:, 2].copy(), arr[:, 3].astype(bool), arr[:, 4].copy()
    )


def prime_ideals_up_to(field: NumberField, X: float) -> PrimeIdealTable:
    """Prime ideals of ``field`` with norm <= X, sorted by (norm, residue prime, conjugate index)."""
    if not X >= 2:
        raise DomainError(f"prime_ideals_up_to needs X >= 2, got {X}")
    return _ideal_table(field, int(math.floor(X)))


# ----------------------------------------------------------------------------
# Dirichlet characters
# ----------------------------------------------------------------------------


def _unit_root(num: int, den: int) -> complex:
    """exp(2 pi i num/den), exact at quarter turns."""
    num %= den
    if (4 * num) % den == 0:
        return (1 + 0j, 1j, -1 + 0j, -1j)[(4 * num) // den]
    return cmath.exp(2j * math.pi * num / den)


@dataclass(frozen=True)
class DirichletCharacter:
    """A Dirichlet character mod q stored as exact angles.

    ``exponents[a]`` is e with chi(a) = exp(2 pi i e / denominator) for gcd(a, q) = 1
    and -1 for residues sharing a factor with q.
    """

    modulus: int
    denominator: int
    exponents: tuple[int, ...]
    label: str = dc_field(default="", compare=False)

    def __call__(self, n: int) -> complex:
        e = self.exponents[int(n) % self.modulus]
        return 0j if e < 0 else _unit_root(e, self.denominator)

    def angle(self, n: int) -> Fraction | None:
        """chi(n) as a fraction of a full turn, or None when chi(n) = 0."""
        e = self.exponents[int(n) % self.modulus]
        return None if e < 0 else Fraction(e, self.denominator)

    def values(self) -> np.ndarray:
        """Complex value table indexed by residue mod q."""
        return np.array([self(a) for a in range(self.modulus)], dtype=complex)

    @property
    def parity(self) -> int:
        if self.modulus <= 2:
            return 1
        return 1 if self.angle(-1) == 0 else -1

    @property
    def is_principal(self) -> bool:
        return all(e <= 0 for e in self.exponents)

    @property
    def is_real(self) -> bool:
        return all(e < 0 or (2 * e) % self.denominator == 0 for e in self.exponents)

    def conjugate(self) -> "DirichletCharacter":
        exps = tuple(e if e < 0 else (-e) % self.denominator for e in self.exponents)
        return DirichletCharacter(self.modulus, self.denominator, exps, self.label + "~" if self.label else "")

    def __mul__(self, other: "DirichletCharacter") -> "DirichletCharacter":
        if other.modulus != self.modulus:
            raise DomainError("characters must share a modulus")
        den = math.lcm(self.denominator, other.denominator)
        sa, sb = den // self.denominator, den // other.denominator
        exps = tuple(
            -1 if (a < 0 or b < 0) else (a * sa + b * sb) % den for a, b in zip(self.exponents, other.exponents)
        )
        return DirichletCharacter(self.modulus, den, exps)

    def same_values(self, other: "DirichletCharacter") -> bool:
        return self.modulus == other.modulus and all(
            self.angle(a) == other.angle(a) for a in range(self.modulus)
        )

    @property
    def conductor(self) -> int:
        """Modulus of the primitive character inducing this one."""
        q = self.modulus
        for d in sorted(d for d in range(1, q + 1) if q % d == 0):
            if all(self.exponents[a] == 0 for a in range(1, q) if a % d == 1 % d and math.gcd(a, q) == 1):
                return d
        return q  # pragma: no cover

    def primitive(self) -> "DirichletCharacter":
        """The primitive character mod ``conductor`` inducing this one."""
        d = self.conductor
        q = self.modulus
        exps = []
        for r in range(d):
            if math.gcd(r, d) != 1:
                exps.append(-1)
                continue
            lift = next(a for a in range(r, r + q * d + 1, d) if math.gcd(a, q) == 1)
            exps.append(self.exponents[lift % q])
        return DirichletCharacter(d, self.denominator, tuple(exps), self.label + "*" if self.label else "")


def _prime_power_generators(p: int, a: int) -> list[tuple[int, int]]:
    """Generators of (Z/p^a)^x as (generator, order) pairs, one per cyclic factor."""
    pa = p**a
    if p == 2:
        if a == 1:
            return []
        if a == 2:
            return [(pa - 1, 2)]
        return [(pa - 1, 2), (5, 2 ** (a - 2))]
    phi = pa - pa // p
    prime_factors = [r for r, _ in factorize(phi)]
    for g in range(2, pa):
        if g % p and all(pow(g, phi // r, pa) != 1 for r in prime_factors):
            return [(g, phi)]
    raise AssertionError("no primitive root")  # pragma: no cover


def _discrete_logs(q: int) -> tuple[list[int], list[list[int] | None]]:
    """Per cyclic factor of (Z/q)^x: its order and the log of every residue mod q."""
    orders: list[int] = []
    logs: list[list[int] | None] = []
    for p, a in factorize(q):
        pa = p**a
        gens = _prime_power_generators(p, a)
        if not gens:
            continue
        # enumerate the subgroup words g1^e1 g2^e2 mod p^a
        table: dict[int, tuple[int, ...]] = {}
        for word in itertools.product(*(range(o) for _, o in gens)):
            v = 1
            for (g, _), e in zip(gens, word):
                v = v * pow(g, e, pa) % pa
            table[v] = word
        for j, (_, o) in enumerate(gens):
            orders.append(o)
            logs.append([table[r % pa][j] if math.gcd(r, q) == 1 else -1 for r in range(q)])
    return orders, logs


@lru_cache(maxsize=64)
def character_group(q: int) -> tuple[DirichletCharacter, ...]:
    """All phi(q) Dirichlet characters mod q; the first is principal.

    Built from the CRT decomposition of (Z/q)^x: primitive roots at odd prime
    powers and <-1> x <5> at 2^a with a >= 3.
    """
    q = int(q)
    if q < 1:
        raise DomainError("modulus must be >= 1")
    orders, logs = _discrete_logs(q)
    den = math.lcm(*orders) if orders else 1
    chars = []
    for idx, c in enumerate(itertools.product(*(range(o) for o in orders))):
        exps = []
        for r in range(q):
            if math.gcd(r, q) != 1:
                exps.append(-1)
                continue
            e = sum(ci * lg[r] * (den // o) for ci, lg, o in zip(c, logs, orders))
            exps.append(e % den)
        chars.append(DirichletCharacter(q, den, tuple(exps), f"chi_{q}[{idx}]"))
    return tuple(chars)


def kronecker_character(D: int) -> DirichletCharacter:
    """The real character n -> (D/n) mod |D| for a fundamental discriminant D."""
    q = abs(D)
    exps = []
    for r in range(q):
        if math.gcd(r, q) != 1:
            exps.append(-1)
            continue
        exps.append(0 if kronecker_symbol(D, r) == 1 else 1)
    return DirichletCharacter(q, 2, tuple(exps), f"kronecker({D})")


def euler_phi(n: int) -> int:
    out = n
    for p, _ in factorize(n):
        out = out // p * (p - 1)
    return out

