"""Truncated symmetric functions over the motive ring.

Series are stored in the power-sum basis: a map from partitions (weakly
decreasing tuples of positive ints) to :class:`~jacgen.motive.MotiveElem`
coefficients, truncated at ``max_degree``. Schur and homogeneous bases are
only used at the boundaries.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

from .errors import BadLeadingTerm, NonIntegralSchur, PositiveDegreeRequired
from .motive import ONE, ZERO, MotiveElem, adams

Partition = tuple

BASES = ("schur", "powersum", "homogeneous")


# -- partitions -----------------------------------------------------------


@lru_cache(maxsize=None)
def partitions(n: int) -> tuple:
    """All partitions of ``n``, lexicographically descending."""
    if n == 0:
        return ((),)
    out = []

    def rec(rest, bound, prefix):
        if rest == 0:
            out.append(tuple(prefix))
            return
        for part in range(min(rest, bound), 0, -1):
            prefix.append(part)
            rec(rest - part, part, prefix)
            prefix.pop()

    rec(n, n, [])
    return tuple(out)


def sort_key(lam: Partition):
    """Key for byte-stable ordering: size ascending, then lex descending."""
    return (sum(lam), tuple(-p for p in lam))


def merge(a: Partition, b: Partition) -> Partition:
    return tuple(sorted(a + b, reverse=True))


@lru_cache(maxsize=None)
def z(lam: Partition) -> int:
    """Size of the centralizer of a permutation of cycle type ``lam``."""
    out = 1
    for part in set(lam):
        m = lam.count(part)
        out *= part**m * math.factorial(m)
    return out


# -- characters (Murnaghan-Nakayama) -------------------------------------


@lru_cache(maxsize=None)
def character(lam: Partition, mu: Partition) -> int:
    """The irreducible character chi^lam evaluated on cycle type ``mu``.

    Border strips are removed via the beta-set (first-column hook lengths)
    of ``lam``: a rim hook of length k is a bead moved from b to b - k.
    The lru_cache is thread-safe and entries are deterministic.
    """
    if sum(lam) != sum(mu):
        raise ValueError(f"size mismatch: {lam} vs {mu}")
    if not mu:
        return 1
    k, rest = mu[0], mu[1:]
    ell = len(lam)
    beta = [lam[i] + ell - 1 - i for i in range(ell)]
    beads = set(beta)
    total = 0
    for b in beta:
        if b - k < 0 or (b - k) in beads:
            continue
        # sign = (-1)^(number of beads strictly between b-k and b)
        height = sum(1 for x in beads if b - k < x < b)
        new_beta = sorted((beads - {b}) | {b - k}, reverse=True)
        m = len(new_beta)
        new_lam = tuple(x for x in (new_beta[i] - (m - 1 - i) for i in range(m)) if x > 0)
        total += (-1) ** height * character(new_lam, rest)
    return total


@lru_cache(maxsize=None)
def _homogeneous_matrix(n: int):
    """Rows h_mu expanded in p: M[mu][nu] = coefficient of p_nu in h_mu."""
    parts = partitions(n)
    rows = {}
    for mu in parts:
        row = {(): Fraction(1)}
        for m in mu:
            hm = {nu: Fraction(1, z(nu)) for nu in partitions(m)}
            new = {}
            for a, va in row.items():
                for b, vb in hm.items():
                    key = merge(a, b)
                    new[key] = new.get(key, 0) + va * vb
            row = new
        rows[mu] = row
    return rows


@lru_cache(maxsize=None)
def _homogeneous_inverse(n: int):
    """p_nu expanded in h: returns dict nu -> dict mu -> coefficient."""
    parts = partitions(n)
    rows = _homogeneous_matrix(n)
    size = len(parts)
    idx = {p: i for i, p in enumerate(parts)}
    # Solve M^T X = I: coefficient vector a (over mu) of p_nu satisfies
    # sum_mu a_mu * M[mu][nu'] = delta(nu, nu').
    A = [[rows[mu].get(nu, Fraction(0)) for mu in parts] for nu in parts]
    aug = [A[i] + [Fraction(int(i == j)) for j in range(size)] for i in range(size)]
    for col in range(size):
        piv = next(r for r in range(col, size) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [v / pv for v in aug[col]]
        for r in range(size):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    # column j of the inverse gives the h-expansion of p_{parts[j]}
    out = {}
    for j, nu in enumerate(parts):
        out[nu] = {mu: aug[idx[mu]][size + j] for mu in parts if aug[idx[mu]][size + j] != 0}
    return out


def _coerce_coeff(x) -> MotiveElem:
    return MotiveElem.coerce(x)


class SymSeries:
    """Immutable truncated symmetric function in the power-sum basis."""

    __slots__ = ("max_degree", "coeffs")

    def __init__(self, coeffs, max_degree: int):
        self.max_degree = max_degree
        clean = {}
        for lam, v in coeffs.items():
            lam = tuple(lam)
            if sum(lam) > max_degree:
                continue
            v = _coerce_coeff(v)
            if not v.is_zero():
                clean[lam] = v
        self.coeffs = clean

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, max_degree: int) -> SymSeries:
        return cls({}, max_degree)

    @classmethod
    def one(cls, max_degree: int) -> SymSeries:
        return cls({(): ONE}, max_degree)

    @classmethod
    def p(cls, k: int, max_degree: int, coeff=1) -> SymSeries:
        return cls({(k,): coeff}, max_degree)

    @classmethod
    def p_lam(cls, lam: Partition, max_degree: int, coeff=1) -> SymSeries:
        return cls({tuple(lam): coeff}, max_degree)

    @classmethod
    def h(cls, n: int, max_degree: int) -> SymSeries:
        return cls({nu: Fraction(1, z(nu)) for nu in partitions(n)}, max_degree)

    @classmethod
    def e(cls, n: int, max_degree: int) -> SymSeries:
        return cls(
            {nu: Fraction((-1) ** (n - len(nu)), z(nu)) for nu in partitions(n)}, max_degree
        )

    @classmethod
    def s(cls, lam: Partition, max_degree: int, coeff=1) -> SymSeries:
        lam = tuple(lam)
        n = sum(lam)
        coeff = _coerce_coeff(coeff)
        return cls(
            {mu: coeff.scale(Fraction(character(lam, mu), z(mu))) for mu in partitions(n)},
            max_degree,
        )

    @classmethod
    def from_basis(cls, entries, basis: str, max_degree: int) -> SymSeries:
        """Build from ``(partition, coeff)`` pairs in the given basis."""
        out = cls.zero(max_degree)
        for lam, coeff in entries:
            lam = tuple(lam)
            if basis == "powersum":
                term = cls.p_lam(lam, max_degree, coeff)
            elif basis == "schur":
                term = cls.s(lam, max_degree, coeff)
            elif basis == "homogeneous":
                term = cls.one(max_degree)
                for part in lam:
                    term = term * cls.h(part, max_degree)
                term = term * _coerce_coeff(coeff)
            else:
                raise ValueError(f"unknown basis {basis!r}")
            out = out + term
        return out

    @classmethod
    def from_schur(cls, entries, max_degree: int) -> SymSeries:
        return cls.from_basis(entries, "schur", max_degree)

    # -- inspection ---------------------------------------------------------

    def __getitem__(self, lam) -> MotiveElem:
        return self.coeffs.get(tuple(lam), ZERO)

    def is_zero(self) -> bool:
        return not self.coeffs

    def min_degree(self) -> int:
        """Lowest degree with a nonzero term (``max_degree + 1`` if zero)."""
        return min((sum(lam) for lam in self.coeffs), default=self.max_degree + 1)

    def degree_part(self, n: int) -> SymSeries:
        return SymSeries({lam: v for lam, v in self.coeffs.items() if sum(lam) == n}, self.max_degree)

    def truncate(self, max_degree: int) -> SymSeries:
        return SymSeries(self.coeffs, min(max_degree, self.max_degree))

    def items(self):
        """Terms in byte-stable order (degree ascending, lex descending)."""
        return sorted(self.coeffs.items(), key=lambda kv: sort_key(kv[0]))

    def map_coeffs(self, fn) -> SymSeries:
        return SymSeries({lam: fn(v) for lam, v in self.coeffs.items()}, self.max_degree)

    def dimension(self, n: int) -> MotiveElem:
        """``n!`` times the coefficient of ``p_1^n``: the nonequivariant class."""
        return self[(1,) * n].scale(math.factorial(n))

    def __eq__(self, other):
        if not isinstance(other, SymSeries):
            return NotImplemented
        return self.max_degree == other.max_degree and self.coeffs == other.coeffs

    def agrees_with(self, other: SymSeries, up_to: int | None = None) -> bool:
        """Equality up to degree ``up_to`` (default: the common truncation)."""
        bound = min(self.max_degree, other.max_degree)
        if up_to is not None:
            bound = min(bound, up_to)
        return self.truncate(bound).coeffs == other.truncate(bound).coeffs

    def __repr__(self):
        return f"SymSeries(N={self.max_degree}, terms={len(self.coeffs)})"

    # -- ring operations ----------------------------------------------------

    def _binary(self, other):
        if isinstance(other, SymSeries):
            return other
        if isinstance(other, (Rational, MotiveElem)):
            return SymSeries({(): other}, self.max_degree)
        return None

    def __add__(self, other):
        other = self._binary(other)
        if other is None:
            return NotImplemented
        out = dict(self.coeffs)
        for lam, v in other.coeffs.items():
            out[lam] = out[lam] + v if lam in out else v
        return SymSeries(out, min(self.max_degree, other.max_degree))

    __radd__ = __add__

    def __neg__(self):
        return SymSeries({lam: -v for lam, v in self.coeffs.items()}, self.max_degree)

    def __sub__(self, other):
        other = self._binary(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (Rational, MotiveElem)):
            other = _coerce_coeff(other)
            return SymSeries({lam: v * other for lam, v in self.coeffs.items()}, self.max_degree)
        if not isinstance(other, SymSeries):
            return NotImplemented
        return multiply(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> SymSeries:
        out = SymSeries.one(self.max_degree)
        for _ in range(k):
            out = out * self
        return out

    def __matmul__(self, other):
        """``f @ g`` is the plethysm ``f o g``."""
        return plethysm(self, other)


def multiply(f: SymSeries, g: SymSeries) -> SymSeries:
    """Graded product, truncated at the smaller bound."""
    N = min(f.max_degree, g.max_degree)
    out: dict = {}
    gitems = [(lam, sum(lam), v) for lam, v in g.coeffs.items()]
    for a, va in f.coeffs.items():
        da = sum(a)
        for b, db, vb in gitems:
            if da + db > N:
                continue
            key = merge(a, b)
            prod = va * vb
            out[key] = out[key] + prod if key in out else prod
    return SymSeries(out, N)


def adams_series(k: int, g: SymSeries, max_degree: int | None = None) -> SymSeries:
    """``p_k o g``: p_m -> p_{km} and Adams operation on coefficients."""
    N = g.max_degree if max_degree is None else max_degree
    out = {}
    for lam, v in g.coeffs.items():
        if k * sum(lam) > N:
            continue
        out[tuple(k * part for part in lam)] = adams(k, v)
    return SymSeries(out, N)


def plethysm(f: SymSeries, g: SymSeries) -> SymSeries:
    """Plethysm ``f o g``; ``g`` must have no constant term.

    Linear over the coefficients of ``f``; the Adams operations act on the
    coefficients of ``g``.
    """
    if not g[()].is_zero():
        raise PositiveDegreeRequired("inner argument of a plethysm has a degree-0 term")
    N = min(f.max_degree, g.max_degree)
    gmin = g.min_degree()
    powers = {}
    for k in range(1, N + 1):
        if k * gmin > N:
            break
        powers[k] = adams_series(k, g, N)
    prods = {(): SymSeries.one(N)}

    def prod_for(lam):
        if lam in prods:
            return prods[lam]
        val = prod_for(lam[:-1]) * powers[lam[-1]]
        prods[lam] = val
        return val

    out: dict = {}
    for lam, v in f.coeffs.items():
        if sum(lam) * gmin > N:
            continue
        for mu, w in prod_for(lam).coeffs.items():
            term = v * w
            out[mu] = out[mu] + term if mu in out else term
    return SymSeries(out, N)


def p_derivative(k: int, f: SymSeries) -> SymSeries:
    """Formal partial derivative with respect to ``p_k``.

    The result is exact up to degree ``max_degree - k``.
    """
    if k < 1:
        raise ValueError("p_derivative needs k >= 1")
    out: dict = {}
    for lam, v in f.coeffs.items():
        m = lam.count(k)
        if not m:
            continue
        idx = lam.index(k)
        rest = lam[:idx] + lam[idx + 1:]
        out[rest] = out[rest] + v.scale(m) if rest in out else v.scale(m)
    return SymSeries(out, f.max_degree - k)


def plethystic_inverse(f: SymSeries) -> SymSeries:
    """The ``g`` with ``f o g = p_1`` (and ``g o f = p_1``), built degree by degree."""
    N = f.max_degree
    if not f[()].is_zero():
        raise BadLeadingTerm("series has a constant term")
    lin = f.degree_part(1)
    if lin.coeffs != {(1,): ONE}:
        raise BadLeadingTerm(f"degree-1 part must be exactly p_1, got {lin.coeffs}")
    g = SymSeries.p(1, N)
    for n in range(2, N + 1):
        comp = plethysm(f, g.truncate(n)).degree_part(n)
        g = g - SymSeries(comp.coeffs, N)
    return g


def _require_positive(g: SymSeries):
    if not g[()].is_zero():
        raise PositiveDegreeRequired("series has a degree-0 term")


def log_one_minus(g: SymSeries) -> SymSeries:
    """``log(1 - g) = -sum_{m>=1} g^m / m``."""
    _require_positive(g)
    N = g.max_degree
    out = SymSeries.zero(N)
    gmin = g.min_degree()
    power = SymSeries.one(N)
    m = 1
    while m * gmin <= N:
        power = power * g
        out = out - power * Fraction(1, m)
        m += 1
    return out


def geometric_inverse(g: SymSeries) -> SymSeries:
    """``1 / (1 - g) = sum_{m>=0} g^m``."""
    _require_positive(g)
    N = g.max_degree
    out = SymSeries.one(N)
    gmin = g.min_degree()
    power = SymSeries.one(N)
    m = 1
    while m * gmin <= N:
        power = power * g
        out = out + power
        m += 1
    return out


def exp_series(g: SymSeries) -> SymSeries:
    """``exp(g) = sum_{m>=0} g^m / m!`` for ``g`` without constant term."""
    _require_positive(g)
    N = g.max_degree
    out = SymSeries.one(N)
    gmin = g.min_degree()
    power = SymSeries.one(N)
    m = 1
    while m * gmin <= N:
        power = power * g
        out = out + power * Fraction(1, math.factorial(m))
        m += 1
    return out


# -- basis changes --------------------------------------------------------


def change_basis(f: SymSeries, target: str, integral: bool = False) -> list:
    """Coefficients of ``f`` in the target basis.

    Returns ``(partition, MotiveElem)`` pairs in byte-stable order. With
    ``integral=True`` and ``target="schur"``, raise
    :class:`NonIntegralSchur` on any non-integral coefficient.
    """
    if target == "powersum":
        return [(lam, v) for lam, v in f.items()]
    out: dict = {}
    if target == "schur":
        for mu, v in f.coeffs.items():
            for lam in partitions(sum(mu)):
                chi = character(lam, mu)
                if chi:
                    term = v.scale(chi)
                    out[lam] = out[lam] + term if lam in out else term
    elif target == "homogeneous":
        for nu, v in f.coeffs.items():
            for mu, a in _homogeneous_inverse(sum(nu))[nu].items():
                term = v.scale(a)
                out[mu] = out[mu] + term if mu in out else term
    else:
        raise ValueError(f"unknown basis {target!r}")
    result = [(lam, v) for lam, v in sorted(out.items(), key=lambda kv: sort_key(kv[0])) if not v.is_zero()]
    if integral and target == "schur":
        for lam, v in result:
            if not v.is_integral():
                raise NonIntegralSchur(f"coefficient of s_{list(lam)} is {v}")
    return result


def schur_coeffs(f: SymSeries, integral: bool = True) -> dict:
    return dict(change_basis(f, "schur", integral=integral))


def is_schur_integral(f: SymSeries) -> bool:
    return all(v.is_integral() for _, v in change_basis(f, "schur"))


# -- serialization --------------------------------------------------------


def to_document(f: SymSeries, basis: str = "powersum") -> dict:
    """The series file document, in byte-stable order."""
    degrees: dict = {}
    for lam, v in change_basis(f, basis):
        degrees.setdefault(str(sum(lam)), []).append({"partition": list(lam), "coeff": v.to_json()})
    return {"max_degree": f.max_degree, "basis": basis, "degrees": degrees}


def from_document(doc: dict) -> SymSeries:
    entries = []
    for _, rows in sorted(doc["degrees"].items(), key=lambda kv: int(kv[0])):
        for row in rows:
            entries.append((tuple(row["partition"]), MotiveElem.from_json(row["coeff"])))
    return SymSeries.from_basis(entries, doc["basis"], doc["max_degree"])
