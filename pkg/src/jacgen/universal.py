"""The (f, g) classification of genus-1 fine compactified universal Jacobians.

A universal Jacobian of degree ``d`` on ``n`` markings is named by a pair:
``f`` on nonempty subsets of ``{1..n-1}`` (mildly superadditive) and an
arbitrary ``g`` on subsets of ``{1..n}`` with at least two elements.

Subsets are bitmasks, element ``i`` stored in bit ``i-1``; iteration and
reporting follow increasing mask value.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import floor

from .errors import BoundExceeded, DegenerateWall, NotSuperadditive, NTooSmall
from .lp import solve_strict


def mask_of(elements) -> int:
    m = 0
    for i in elements:
        m |= 1 << (i - 1)
    return m


def elements_of(mask: int) -> tuple:
    out, i = [], 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def _frac_str(v) -> str:
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def _popcount(m: int) -> int:
    return bin(m).count("1")


# -- the two functions -------------------------------------------------------


@dataclass
class FFunction:
    """Integer function on the nonempty subsets of ``{1..n-1}``."""

    n: int
    values: dict  # mask -> int
    _superadditive: bool | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        full = (1 << (self.n - 1)) - 1
        if set(self.values) != set(range(1, full + 1)):
            raise ValueError(f"f must be defined on all {full} nonempty subsets of 1..{self.n - 1}")
        self.values = {m: int(v) for m, v in sorted(self.values.items())}

    @classmethod
    def from_callable(cls, n: int, fn) -> FFunction:
        """Build from ``fn(frozenset) -> int``."""
        return cls(n, {m: fn(frozenset(elements_of(m))) for m in range(1, 1 << (n - 1))})

    @classmethod
    def zero(cls, n: int) -> FFunction:
        return cls(n, {m: 0 for m in range(1, 1 << (n - 1))})

    def __call__(self, subset) -> int:
        return self.values[subset if isinstance(subset, int) else mask_of(subset)]

    def to_document(self) -> dict:
        return {
            "kind": "f",
            "n": self.n,
            "values": [{"subset": list(elements_of(m)), "value": v} for m, v in self.values.items()],
        }

    @classmethod
    def from_document(cls, doc) -> FFunction:
        return cls(doc["n"], {mask_of(e["subset"]): e["value"] for e in doc["values"]})


@dataclass
class GFunction:
    """Integer function on the subsets of ``{1..n}`` with at least two elements."""

    n: int
    values: dict

    def __post_init__(self):
        expected = {m for m in range(1 << self.n) if _popcount(m) >= 2}
        if set(self.values) != expected:
            raise ValueError(f"g must be defined on all {len(expected)} subsets of size >= 2")
        self.values = {m: int(v) for m, v in sorted(self.values.items())}

    @classmethod
    def zero(cls, n: int) -> GFunction:
        return cls(n, {m: 0 for m in range(1 << n) if _popcount(m) >= 2})

    def __call__(self, subset) -> int:
        return self.values[subset if isinstance(subset, int) else mask_of(subset)]

    def to_document(self) -> dict:
        return {
            "kind": "g",
            "n": self.n,
            "values": [{"subset": list(elements_of(m)), "value": v} for m, v in self.values.items()],
        }

    @classmethod
    def from_document(cls, doc) -> GFunction:
        return cls(doc["n"], {mask_of(e["subset"]): e["value"] for e in doc["values"]})


def is_mildly_superadditive(f: FFunction):
    """Return ``(ok, pair)``; ``pair`` is the first violating ``(I, J)`` or None.

    Pairs are unordered, scanned with ``I < J`` by mask value.
    """
    if f._superadditive is True:
        return True, None
    full = (1 << (f.n - 1)) - 1
    vals = f.values
    for I in range(1, full + 1):
        for J in range(I + 1, full + 1):
            if I & J:
                continue
            gap = vals[I | J] - vals[I] - vals[J]
            if not 0 <= gap <= 1:
                f._superadditive = False
                return False, (elements_of(I), elements_of(J))
    f._superadditive = True
    return True, None


def _require_superadditive(f: FFunction):
    ok, pair = is_mildly_superadditive(f)
    if not ok:
        raise NotSuperadditive(pair)


# -- polarisations ------------------------------------------------------------


@dataclass(frozen=True)
class UniversalPolarisation:
    d: int
    x: tuple  # indexed by 1..n-1
    y: dict   # mask over 1..n with >= 2 elements -> rational

    @property
    def n(self) -> int:
        return len(self.x) + 1

    def is_nondegenerate(self) -> bool:
        try:
            f_from_phi(self.x)
            g_from_phi(self.y, self.n)
        except DegenerateWall:
            return False
        return True


def f_from_phi(x) -> FFunction:
    """``f(I) = floor(sum_{i in I} x_i)``; raises on an integral subset sum."""
    x = [Fraction(v) for v in x]
    k = len(x)
    sums = [Fraction(0)] * (1 << k)
    values = {}
    for m in range(1, 1 << k):
        low = m & -m
        sums[m] = sums[m ^ low] + x[low.bit_length() - 1]
        if sums[m].denominator == 1:
            raise DegenerateWall(elements_of(m), sums[m])
        values[m] = floor(sums[m])
    f = FFunction(k + 1, values)
    return f


def g_from_phi(y, n: int) -> GFunction:
    """``g(T)`` is the integer within 1/2 of ``y_T``; raises on half-integers."""
    values = {}
    for m, v in y.items():
        v = Fraction(v)
        shifted = v + Fraction(1, 2)
        if shifted.denominator == 1:
            raise DegenerateWall(elements_of(m), v)
        values[m] = floor(shifted)
    return GFunction(n, values)


@dataclass
class FarkasCertificate:
    """Nonnegative multipliers on the bounds ``f(I) < x_I`` (lower) and
    ``x_I < f(I) + 1`` (upper).

    Summing ``lambda_I * (x_I - f(I))`` over lower bounds and
    ``mu_I * (f(I) + 1 - x_I)`` over upper bounds gives a quantity that the
    bounds force to be positive; the certificate is valid when the ``x``
    terms cancel and the constant is ``<= 0``.
    """

    n: int
    lower: dict  # mask -> Fraction
    upper: dict

    def to_document(self) -> dict:
        return {
            "lower": [{"subset": list(elements_of(m)), "multiplier": _frac_str(v)} for m, v in sorted(self.lower.items())],
            "upper": [{"subset": list(elements_of(m)), "multiplier": _frac_str(v)} for m, v in sorted(self.upper.items())],
        }


def verify_certificate(f: FFunction, cert: FarkasCertificate) -> bool:
    """Check the certificate with plain rational arithmetic."""
    k = f.n - 1
    coeff = [Fraction(0)] * k
    const = Fraction(0)
    weights = list(cert.lower.values()) + list(cert.upper.values())
    if not weights or any(w < 0 for w in weights) or all(w == 0 for w in weights):
        return False
    for m, lam in cert.lower.items():
        for i in elements_of(m):
            coeff[i - 1] += lam
        const -= lam * f(m)
    for m, mu in cert.upper.items():
        for i in elements_of(m):
            coeff[i - 1] -= mu
        const += mu * (f(m) + 1)
    return all(c == 0 for c in coeff) and const <= 0


@dataclass
class Realizability:
    feasible: bool
    x: tuple | None = None
    certificate: FarkasCertificate | None = None
    margin: Fraction | None = None

    def to_document(self) -> dict:
        doc = {"feasible": self.feasible, "margin": _frac_str(self.margin)}
        if self.x is not None:
            doc["x"] = [_frac_str(v) for v in self.x]
        if self.certificate is not None:
            doc["certificate"] = self.certificate.to_document()
        return doc


def _integer_scaled(weights: dict) -> dict:
    # scale multipliers to coprime integers for readability
    from math import gcd, lcm

    nz = {m: Fraction(v) for m, v in weights.items() if v != 0}
    if not nz:
        return nz
    den = lcm(*(v.denominator for v in nz.values()))
    ints = {m: v * den for m, v in nz.items()}
    g = 0
    for v in ints.values():
        g = gcd(g, int(v))
    return {m: Fraction(int(v) // g) for m, v in ints.items()}


def realizable_phi(f: FFunction) -> Realizability:
    """Decide whether some ``x`` has ``f(I) < sum_{i in I} x_i < f(I)+1`` for all I.

    Maximizes the margin with the exact simplex; returns an interior point
    on success and a verified Farkas certificate otherwise.
    """
    _require_superadditive(f)
    k = f.n - 1
    masks = list(f.values)
    rows = []
    for m in masks:
        a = [1 if m >> i & 1 else 0 for i in range(k)]
        rows.append((a, f(m)))
        rows.append(([-v for v in a], -f(m) - 1))
    res = solve_strict(rows, k)
    if res.feasible:
        x = tuple(res.x)
        if f_from_phi(x).values != f.values:
            raise RuntimeError("interior point does not reproduce f")
        return Realizability(True, x=x, margin=res.margin)
    y = res.multipliers
    # both families are scaled by one common factor
    merged = _integer_scaled(
        {("l", m): y[2 * t] for t, m in enumerate(masks)}
        | {("u", m): y[2 * t + 1] for t, m in enumerate(masks)}
    )
    lo = {m: v for (kind, m), v in merged.items() if kind == "l"}
    up = {m: v for (kind, m), v in merged.items() if kind == "u"}
    cert = FarkasCertificate(f.n, lo, up)
    if not verify_certificate(f, cert):
        raise RuntimeError("Farkas certificate failed independent verification")
    return Realizability(False, certificate=cert, margin=res.margin)


# -- the exotic examples ------------------------------------------------------

_EXOTIC_A = mask_of((1, 3, 5))
_EXOTIC_B = mask_of((2, 4, 5))


def exotic_f(n: int) -> FFunction:
    """``f(I) = 1`` if ``I`` contains {1,3,5} or {2,4,5}, else 0."""
    if n < 6:
        raise NTooSmall(f"the exotic function needs n >= 6, got {n}")
    return FFunction(n, {
        m: int((m & _EXOTIC_A) == _EXOTIC_A or (m & _EXOTIC_B) == _EXOTIC_B)
        for m in range(1, 1 << (n - 1))
    })


def exotic_certificate(n: int = 6) -> FarkasCertificate:
    """Hand-made certificate: the lower bounds on {1,3,5}, {2,4,5} against the
    upper bounds on {2,3,5}, {1,4,5}.

    The first pair gives x1 + x3 + x5 > 1 and x2 + x4 + x5 > 1; the second
    gives x2 + x3 + x5 < 1 and x1 + x4 + x5 < 1. Adding each family yields the
    same left-hand side bounded below and above by 2.
    """
    if n < 6:
        raise NTooSmall(f"the exotic function needs n >= 6, got {n}")
    one = Fraction(1)
    return FarkasCertificate(
        n,
        {_EXOTIC_A: one, _EXOTIC_B: one},
        {mask_of((2, 3, 5)): one, mask_of((1, 4, 5)): one},
    )


# -- restriction to a cyclic order ------------------------------------------


def normalize_order(order, n: int | None = None) -> tuple:
    """Rotate a cyclic order of ``1..n`` so that ``n`` comes last."""
    order = tuple(order)
    n = n or len(order)
    if sorted(order) != list(range(1, n + 1)):
        raise ValueError(f"{order} is not a cyclic ordering of 1..{n}")
    k = order.index(n)
    return order[k + 1:] + order[:k + 1]


def restrict_f_to_order(f: FFunction, order) -> dict:
    """Restrict ``f`` to the sets consecutive in the cyclic ``order``.

    After rotating ``n`` to the end, position ``p`` carries the label
    ``order[p-1]`` and the result maps intervals ``(r, s)`` of positions
    ``1..n-1`` to the value of ``f`` on the corresponding labels.
    """
    _require_superadditive(f)
    labels = normalize_order(order, f.n)
    n = f.n
    return {
        (r, s): f(mask_of(labels[r - 1:s]))
        for r in range(1, n) for s in range(r, n)
    }


# -- counting -----------------------------------------------------------------

DEFAULT_COUNT_BOUND = 6


def _fill_order(k: int) -> list:
    # masks of size >= 2, by size then value
    return sorted((m for m in range(1, 1 << k) if _popcount(m) >= 2), key=lambda m: (_popcount(m), m))


def _split_pairs(m: int) -> list:
    out = []
    sub = (m - 1) & m
    while sub:
        rest = m ^ sub
        if sub < rest:
            out.append((sub, rest))
        sub = (sub - 1) & m
    return out


def iter_translation_classes(n: int, bound: int = DEFAULT_COUNT_BOUND):
    """Yield every mildly superadditive f with all singleton values 0."""
    if n > bound:
        raise BoundExceeded(f"n={n} exceeds the configured bound {bound}")
    if n < 2:
        raise ValueError("n must be at least 2")
    k = n - 1
    vals = {1 << i: 0 for i in range(k)}
    order = _fill_order(k)
    splits = {m: _split_pairs(m) for m in order}

    def rec(t):
        if t == len(order):
            yield dict(vals)
            return
        m = order[t]
        sums = [vals[a] + vals[b] for a, b in splits[m]]
        lo, hi = max(sums), min(sums) + 1
        for v in range(lo, hi + 1):
            vals[m] = v
            yield from rec(t + 1)
        vals.pop(m, None)

    for values in rec(0):
        yield FFunction(n, values)


def count_translation_classes(n: int, bound: int = DEFAULT_COUNT_BOUND) -> int:
    """Number of mildly superadditive f with all singleton values zero."""
    if n > bound:
        raise BoundExceeded(f"n={n} exceeds the configured bound {bound}")
    if n < 2:
        raise ValueError("n must be at least 2")
    k = n - 1
    vals = {1 << i: 0 for i in range(k)}
    order = _fill_order(k)
    splits = {m: _split_pairs(m) for m in order}

    def rec(t):
        if t == len(order):
            return 1
        m = order[t]
        lo = hi = None
        for a, b in splits[m]:
            s = vals[a] + vals[b]
            lo = s if lo is None or s > lo else lo
            hi = s if hi is None or s < hi else hi
        total = 0
        for v in range(lo, hi + 2):
            vals[m] = v
            total += rec(t + 1)
        vals.pop(m, None)
        return total

    return rec(0)


# -- classification records -------------------------------------------------


@dataclass
class ClassificationRecord:
    n: int
    d: int
    f: FFunction
    g: GFunction
    valid: bool
    violation: tuple | None = None

    def to_document(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "valid": self.valid,
            "violation": None if self.violation is None else [list(s) for s in self.violation],
            "f": self.f.to_document(),
            "g": self.g.to_document(),
        }


def pair_check(f: FFunction, g: GFunction, d: int = 0) -> ClassificationRecord:
    """Validity of ``(f, g)`` as the name of a universal Jacobian."""
    if f.n != g.n:
        raise ValueError("f and g are defined for different n")
    ok, pair = is_mildly_superadditive(f)
    return ClassificationRecord(f.n, d, f, g, ok, pair)


__all__ = [
    "ClassificationRecord",
    "FFunction",
    "FarkasCertificate",
    "GFunction",
    "Realizability",
    "UniversalPolarisation",
    "count_translation_classes",
    "elements_of",
    "exotic_certificate",
    "exotic_f",
    "f_from_phi",
    "g_from_phi",
    "is_mildly_superadditive",
    "iter_translation_classes",
    "mask_of",
    "normalize_order",
    "pair_check",
    "realizable_phi",
    "restrict_f_to_order",
    "verify_certificate",
]
