"""Zero tables and the Hadamard-product upper bound for -Re L'/L in the strip 1 < sigma < 2."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .archimedean import c1
from .conductor import rs_analytic_conductor
from .errors import DomainError, PoleError, ZeroTableParseError
from .repdata import RankinSelbergPair


@dataclass(frozen=True)
class ZeroList:
    """Nontrivial zeros rho = beta + i gamma (sorted by |gamma|, then beta, then gamma) and the pole order at s = 1."""

    zeros: tuple[tuple[float, float], ...] = ()
    pole_order: int = 0
    source_label: str = ""

    def __post_init__(self):
        zs = tuple((float(b), float(g)) for b, g in self.zeros)
        for b, _ in zs:
            if not 0 < b < 1:
                raise DomainError(f"zero real part {b} outside (0, 1)")
        if self.pole_order < -1:
            raise DomainError("pole order must be >= -1")
        object.__setattr__(self, "zeros", tuple(sorted(zs, key=lambda z: (abs(z[1]), z[0], z[1]))))

    def __len__(self) -> int:
        return len(self.zeros)

    def symmetrized(self) -> "ZeroList":
        """Add the conjugate of every zero with nonzero ordinate."""
        extra = [(b, -g) for b, g in self.zeros if g != 0]
        return ZeroList(self.zeros + tuple(extra), self.pole_order, self.source_label)


def zero_term(s: complex, rho: tuple[float, float]) -> float:
    """Re 1/(s - rho) = (sigma - beta) / ((sigma - beta)^2 + (t - gamma)^2)."""
    s = complex(s)
    beta, gamma = rho
    dx, dy = s.real - beta, s.imag - gamma
    denom = dx * dx + dy * dy
    if denom == 0:
        raise PoleError(f"s = {s} coincides with the zero {rho}")
    return dx / denom


def lemma31_rhs(s: complex, zeros: ZeroList, pair: RankinSelbergPair, subset_size: int | None = None) -> float:
    """Re(delta/(s-1)) - sum_rho Re 1/(s-rho) + (delta - c1/2) + log c(it, pi x pi')/2.

    Only the first ``subset_size`` zeros enter; dropped terms are positive, so the
    result stays an upper bound for -Re L'/L(s, pi x pi').
    """
    s = complex(s)
    if not 1 < s.real < 2:
        raise DomainError(f"Re(s) = {s.real} must lie in (1, 2)")
    n = len(zeros) if subset_size is None else subset_size
    if not 0 <= n <= len(zeros):
        raise DomainError(f"subset size {n} outside [0, {len(zeros)}]")
    delta = zeros.pole_order
    zsum = math.fsum(zero_term(s, rho) for rho in zeros.zeros[:n])
    cond = rs_analytic_conductor(pair, s.imag).value
    return (delta / (s - 1)).real - zsum + (delta - c1() / 2) + 0.5 * math.log(cond)


def parse_zeros(text: str, source_label: str = "") -> ZeroList:
    """Parse the zero-table format: '#' comments, optional 'delta=<int>', then '<gamma>' or '<beta> <gamma>' lines."""
    delta = 0
    zeros = []
    last = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.lower().startswith("delta"):
            key, sep, val = line.partition("=")
            if not sep or key.strip().lower() != "delta":
                raise ZeroTableParseError(lineno, raw, "bad header")
            try:
                delta = int(val.strip())
            except ValueError:
                raise ZeroTableParseError(lineno, raw, "delta must be an integer") from None
            continue
        parts = line.split()
        try:
            nums = [float(x) for x in parts]
        except ValueError:
            raise ZeroTableParseError(lineno, raw, "expected decimal numbers") from None
        if len(nums) == 1:
            beta, gamma = 0.5, nums[0]
        elif len(nums) == 2:
            beta, gamma = nums
        else:
            raise ZeroTableParseError(lineno, raw, "expected one or two columns")
        if not all(math.isfinite(x) for x in (beta, gamma)) or not 0 < beta < 1:
            raise ZeroTableParseError(lineno, raw, "beta must lie in (0, 1)")
        if last is not None and abs(gamma) < last:
            warnings.warn(f"line {lineno}: ordinates are not nondecreasing in |gamma|", stacklevel=2)
        last = abs(gamma)
        zeros.append((beta, gamma))
    if delta < -1:
        raise ZeroTableParseError(0, f"delta={delta}", "pole order must be >= -1")
    return ZeroList(tuple(zeros), delta, source_label)


def load_zeros(path: str | Path) -> ZeroList:
    path = Path(path)
    return parse_zeros(path.read_text(encoding="utf-8"), source_label=path.name)


def zeta_zeros() -> ZeroList:
    """The bundled table of the first 100 zeros of the Riemann zeta function (delta = 1)."""
    text = resources.files("pretentious").joinpath("data/zeta_zeros_100.txt").read_text(encoding="utf-8")
    return parse_zeros(text, source_label="zeta_zeros_100.txt")
