"""Generating functions for genus-0 and genus-1 moduli and universal Jacobians.

Series tags:

``a0``        open genus-0 moduli, degrees >= 3
``a1``        open genus-1 moduli, degrees >= 1
``b0_prime``  p_1-derivative of the stable genus-0 series (rooted trees)
``b1_nr``     stable genus-1 curves without rational tails (necklaces)
``b1``        stable genus-1 curves
``jbar``      genus-1 fine compactified universal Jacobians

Every function returns a :class:`~jacgen.symfun.SymSeries` in the
power-sum basis, truncated at the requested degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from . import cache as _cache
from .errors import NonTateRegime, NotDivisible
from .motive import C, L, ONE, MotiveElem, div_exact, eichler_shimura
from .symfun import (
    SymSeries,
    adams_series,
    geometric_inverse,
    log_one_minus,
    p_derivative,
    plethysm,
    plethystic_inverse,
)

ENGINE_VERSION = 1

# Largest truncation for which every input stays in the Tate range
# (weight-12 cusp forms are the first obstruction).
MAX_B1_DEGREE = 9
MAX_JBAR_DEGREE = 8

TAGS = ("a0", "a1", "b0_prime", "b1_nr", "b1", "jbar")
TAG_ALIASES = {"b0prime": "b0_prime", "b1nr": "b1_nr"}

P1_CLASS = ONE + L            # projective line
ELLIPTIC_CLASS = ONE - C + L  # fibre of the universal elliptic curve
PGL2_CLASS = L**3 - L


@dataclass(frozen=True)
class SeriesId:
    tag: str
    max_degree: int

    def __post_init__(self):
        tag = TAG_ALIASES.get(self.tag, self.tag)
        if tag not in TAGS:
            raise ValueError(f"unknown series tag {self.tag!r}; expected one of {TAGS}")
        object.__setattr__(self, "tag", tag)

    def check_guard(self):
        if self.tag in ("a1", "b1_nr", "b1") and self.max_degree > MAX_B1_DEGREE:
            raise NonTateRegime(12, f"{self.tag} is only supported up to degree {MAX_B1_DEGREE}")
        if self.tag == "jbar" and self.max_degree > MAX_JBAR_DEGREE:
            raise NonTateRegime(12, f"jbar is only supported up to degree {MAX_JBAR_DEGREE}")

    @property
    def filename(self) -> str:
        return f"{self.tag}-N{self.max_degree}-v{ENGINE_VERSION}.series"


def _totient(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if gcd(n, k) == 1)


@lru_cache(maxsize=None)
def _set_partition_inverse(N: int) -> SymSeries:
    # plethystic inverse of sum_{m>=1} h_m
    H = SymSeries.zero(N)
    for m in range(1, N + 1):
        H = H + SymSeries.h(m, N)
    return plethystic_inverse(H)


def conf_series(e, N: int) -> SymSeries:
    """Equivariant classes of ordered configuration spaces of a space of class ``e``.

    Degree ``k`` is the S_k-equivariant class of F(X, k). Computed by
    inverting the decomposition of X^k along set partitions.
    """
    e = MotiveElem.coerce(e)
    sym_powers = SymSeries.one(N)
    for n in range(1, N + 1):
        sym_powers = sym_powers + SymSeries.h(n, N)
    sym_powers = plethysm(sym_powers, SymSeries.p(1, N, e))
    return plethysm(sym_powers, _set_partition_inverse(N))


def _divide_coeffs(f: SymSeries, divisor: MotiveElem, min_deg: int) -> SymSeries:
    out = {}
    for lam, v in f.coeffs.items():
        if sum(lam) < min_deg:
            continue
        out[lam] = div_exact(v, divisor)
    return SymSeries(out, f.max_degree)


def _compute_a0(N: int) -> SymSeries:
    conf = conf_series(P1_CLASS, N)
    return _divide_coeffs(conf, PGL2_CLASS, 3)


def _compute_a1(N: int) -> SymSeries:
    conf = conf_series(ELLIPTIC_CLASS, N)
    fibrewise = _divide_coeffs(conf, ELLIPTIC_CLASS, 1)
    return fibrewise.map_coeffs(eichler_shimura)


def _compute_b0_prime(N: int) -> SymSeries:
    a0p = p_derivative(1, a0(N + 1))
    p1 = SymSeries.p(1, N)
    f = SymSeries.zero(N)
    for n in range(2, N + 1):
        step = plethysm(a0p, (p1 + f).truncate(n)).degree_part(n)
        f = f + SymSeries(step.coeffs, N)
    return f


def _compute_b1_nr(N: int) -> SymSeries:
    A0 = a0(N + 2)
    a0pp = p_derivative(1, p_derivative(1, A0))      # exact to degree N
    a0dot = p_derivative(2, A0)                      # exact to degree N
    out = a1(N)
    logs = SymSeries.zero(N)
    for n in range(1, N + 1):
        logs = logs + log_one_minus(adams_series(n, a0pp, N)) * Fraction(_totient(n), n)
    out = out - logs * Fraction(1, 2)
    psi2 = adams_series(2, a0pp, N)
    numer = a0dot * (a0dot + 1) + psi2 * Fraction(1, 4)
    out = out + numer * geometric_inverse(psi2)
    return out


def _compute_b1(N: int) -> SymSeries:
    return plethysm(b1_nr(N), SymSeries.p(1, N) + b0_prime(N))


def _compute_jbar(N: int) -> SymSeries:
    nr_prime = p_derivative(1, b1_nr(N + 1))
    outer = (SymSeries.one(N) + SymSeries.p(1, N)) * nr_prime
    full = plethysm(outer, SymSeries.p(1, N) + b0_prime(N))
    # the Jacobian series starts at one marking
    return full - full.degree_part(0)


_COMPUTE = {
    "a0": _compute_a0,
    "a1": _compute_a1,
    "b0_prime": _compute_b0_prime,
    "b1_nr": _compute_b1_nr,
    "b1": _compute_b1,
    "jbar": _compute_jbar,
}

# In-process memo; the disk cache is layered on top in ``series``.
_memo: dict = {}


def series(tag: str, N: int, use_cache: bool = True) -> SymSeries:
    """Compute (or load) the series ``tag`` truncated at degree ``N``."""
    sid = SeriesId(tag, N)
    sid.check_guard()
    key = (sid.tag, N)
    if key in _memo:
        return _memo[key]
    result = _cache.load(sid) if use_cache else None
    if result is None:
        result = _COMPUTE[sid.tag](N)
        if use_cache:
            _cache.store(sid, result)
    _memo[key] = result
    return result


def clear_memo():
    _memo.clear()


def a0(N: int) -> SymSeries:
    return series("a0", N)


def a1(N: int) -> SymSeries:
    return series("a1", N)


def b0_prime(N: int) -> SymSeries:
    return series("b0_prime", N)


def b1_nr(N: int) -> SymSeries:
    return series("b1_nr", N)


def b1(N: int) -> SymSeries:
    return series("b1", N)


def jbar(N: int) -> SymSeries:
    return series("jbar", N)


def b0_prime_residual(N: int) -> SymSeries:
    """``a0' o (p_1 + f) - f`` for ``f = b0_prime(N)``; zero when consistent."""
    f = b0_prime(N)
    a0p = p_derivative(1, a0(N + 1))
    return plethysm(a0p, SymSeries.p(1, N) + f) - f


__all__ = [
    "ENGINE_VERSION",
    "MAX_B1_DEGREE",
    "MAX_JBAR_DEGREE",
    "NotDivisible",
    "SeriesId",
    "TAGS",
    "a0",
    "a1",
    "b0_prime",
    "b0_prime_residual",
    "b1",
    "b1_nr",
    "conf_series",
    "jbar",
    "series",
]
