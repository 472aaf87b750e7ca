"""Coefficient ring for Hodge Euler characteristics.

Elements are symmetric polynomials in two formal roots alpha, beta, stored as
polynomials in ``L = alpha*beta`` (the Lefschetz class) and
``c = alpha + beta`` (the class of the standard weight-1 local system V_1).
Tate polynomials are the elements with no ``c``.

Coefficients are Python ints or :class:`fractions.Fraction`; fractions only show
up in intermediate power-sum expansions.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from numbers import Rational

from .errors import NonTateRegime, NotDivisible

# Eichler-Shimura evaluation is exact while S[k+2] = 0, i.e. k + 2 <= 10.
MAX_TATE_WEIGHT = 10


def _norm(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


class MotiveElem:
    """Immutable polynomial in ``L`` and ``c``.

    ``terms`` maps ``(deg_L, deg_c)`` to a nonzero rational coefficient.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        if terms is None:
            terms = {}
        self.terms = {k: _norm(v) for k, v in terms.items() if v != 0}
        self._hash = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def const(cls, a) -> MotiveElem:
        return cls({(0, 0): a})

    @classmethod
    def L(cls, power: int = 1) -> MotiveElem:
        return cls({(power, 0): 1})

    @classmethod
    def c(cls, power: int = 1) -> MotiveElem:
        return cls({(0, power): 1})

    @classmethod
    def from_tate(cls, coeffs) -> MotiveElem:
        """Build from ascending coefficients ``[c0, c1, ...]`` of powers of L."""
        return cls({(i, 0): a for i, a in enumerate(coeffs)})

    @classmethod
    def coerce(cls, x) -> MotiveElem:
        if isinstance(x, MotiveElem):
            return x
        if isinstance(x, Rational):
            return cls.const(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to MotiveElem")

    # -- inspection ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_tate(self) -> bool:
        return all(dc == 0 for _, dc in self.terms)

    def is_const(self) -> bool:
        return all(k == (0, 0) for k in self.terms)

    def is_integral(self) -> bool:
        return all(isinstance(v, int) for v in self.terms.values())

    def const_term(self):
        return self.terms.get((0, 0), 0)

    def deg_L(self) -> int:
        return max((dl for dl, _ in self.terms), default=-1)

    def deg_c(self) -> int:
        return max((dc for _, dc in self.terms), default=-1)

    def tate_coeffs(self) -> list:
        """Ascending coefficient list in L; requires a Tate element."""
        if not self.is_tate():
            raise ValueError(f"{self} is not a Tate polynomial")
        if not self.terms:
            return []
        out = [0] * (self.deg_L() + 1)
        for (dl, _), v in self.terms.items():
            out[dl] = v
        return out

    def evaluate(self, L, c=0):
        return sum(v * L**dl * c**dc for (dl, dc), v in self.terms.items())

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        try:
            other = MotiveElem.coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return MotiveElem(out)

    __radd__ = __add__

    def __neg__(self):
        return MotiveElem({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        try:
            other = MotiveElem.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, a) -> MotiveElem:
        if a == 0:
            return MotiveElem()
        return MotiveElem({k: v * a for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Rational):
            return self.scale(other)
        if not isinstance(other, MotiveElem):
            return NotImplemented
        if len(other.terms) == 1 and (0, 0) in other.terms:
            return self.scale(other.terms[(0, 0)])
        if len(self.terms) == 1 and (0, 0) in self.terms:
            return other.scale(self.terms[(0, 0)])
        out: dict = {}
        for (a1, b1), v1 in self.terms.items():
            for (a2, b2), v2 in other.terms.items():
                k = (a1 + a2, b1 + b2)
                out[k] = out.get(k, 0) + v1 * v2
        return MotiveElem(out)

    __rmul__ = __mul__

    def __truediv__(self, a):
        if isinstance(a, Rational):
            return self.scale(Fraction(1, 1) / a)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Rational):
            other = MotiveElem.const(other)
        if not isinstance(other, MotiveElem):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def sort_key(self):
        return sorted(self.terms.items())

    # -- printing -----------------------------------------------------------

    def __repr__(self):
        return f"MotiveElem({self.pretty()!r})"

    def __str__(self):
        return self.pretty()

    def pretty(self) -> str:
        """Descending powers of L (then c), e.g. ``L^3 + 3L^2 + 3L + 1``."""
        if not self.terms:
            return "0"
        parts = []
        for (dl, dc), v in sorted(self.terms.items(), key=lambda kv: (-kv[0][0], -kv[0][1])):
            mono = ""
            if dl:
                mono += "L" if dl == 1 else f"L^{dl}"
            if dc:
                mono += "c" if dc == 1 else f"c^{dc}"
            sign = "-" if v < 0 else "+"
            mag = -v if v < 0 else v
            if mono and mag == 1:
                body = mono
            elif mono and isinstance(mag, Fraction):
                body = f"({mag}){mono}"
            else:
                body = f"{mag}{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    # -- serialization ------------------------------------------------------

    def to_triples(self) -> list:
        return [
            {"dL": dl, "dc": dc, "coeff": _coeff_to_json(v)}
            for (dl, dc), v in sorted(self.terms.items())
        ]

    @classmethod
    def from_triples(cls, triples) -> MotiveElem:
        return cls({(t["dL"], t["dc"]): _coeff_from_json(t["coeff"]) for t in triples})

    def to_json(self):
        """Tate elements serialize as ascending lists, others as triples."""
        if self.is_tate():
            return [_coeff_to_json(v) for v in self.tate_coeffs()]
        return self.to_triples()

    @classmethod
    def from_json(cls, doc) -> MotiveElem:
        if doc and isinstance(doc[0], dict):
            return cls.from_triples(doc)
        return cls.from_tate([_coeff_from_json(v) for v in doc])


def _coeff_to_json(v):
    if isinstance(v, int):
        return v
    return f"{v.numerator}/{v.denominator}"


def _coeff_from_json(v):
    if isinstance(v, int):
        return v
    return _norm(Fraction(v))


ZERO = MotiveElem()
ONE = MotiveElem.const(1)
L = MotiveElem.L()
C = MotiveElem.c()


@lru_cache(maxsize=None)
def _power_sum_c(k: int) -> MotiveElem:
    # alpha^k + beta^k by Newton: c_k = c*c_{k-1} - L*c_{k-2}
    if k == 0:
        return MotiveElem.const(2)
    if k == 1:
        return C
    return C * _power_sum_c(k - 1) - L * _power_sum_c(k - 2)


def adams(k: int, x) -> MotiveElem:
    """The Adams operation alpha -> alpha^k, beta -> beta^k."""
    if k < 1:
        raise ValueError("Adams operations are indexed by k >= 1")
    x = MotiveElem.coerce(x)
    if k == 1 or x.is_const():
        return x
    ck = _power_sum_c(k)
    out = ZERO
    cpow = {0: ONE}
    for (dl, dc), v in x.terms.items():
        if dc not in cpow:
            cpow[dc] = ck**dc
        out = out + MotiveElem({(k * dl, 0): v}) * cpow[dc]
    return out


@lru_cache(maxsize=None)
def h_poly(k: int) -> MotiveElem:
    """Class of Sym^k V_1, i.e. the complete symmetric polynomial h_k(alpha, beta)."""
    if k == 0:
        return ONE
    if k == 1:
        return C
    return C * h_poly(k - 1) - L * h_poly(k - 2)


def to_vk_basis(x) -> list:
    """Decompose ``x`` as ``sum coeff_k * h_k`` with Tate coefficients.

    Returns a list of ``(k, coeff)`` pairs, descending in ``k``, zero
    coefficients omitted.
    """
    x = MotiveElem.coerce(x)
    out = []
    while not x.is_zero():
        k = x.deg_c()
        coeff = MotiveElem({(dl, 0): v for (dl, dc), v in x.terms.items() if dc == k})
        out.append((k, coeff))
        x = x - coeff * h_poly(k)
    return out


def from_vk_basis(pairs) -> MotiveElem:
    out = ZERO
    for k, coeff in pairs:
        out = out + coeff * h_poly(k)
    return out


def eichler_shimura(x, max_weight_guard: int = MAX_TATE_WEIGHT) -> MotiveElem:
    """Integrate a local-system class over the moduli of elliptic curves.

    ``V_0 -> L``, ``V_k -> 0`` for odd ``k``, ``V_k -> -1`` for even
    ``2 <= k`` with ``k + 2 <= max_weight_guard``.
    """
    out = ZERO
    for k, coeff in to_vk_basis(x):
        if k == 0:
            out = out + coeff * L
        elif k % 2:
            continue
        elif k + 2 <= max_weight_guard:
            out = out - coeff
        else:
            raise NonTateRegime(k + 2, f"local system V_{k} has nonzero coefficient {coeff}")
    return out


def _leading(x: MotiveElem):
    # lex order with c before L
    return max(x.terms, key=lambda k: (k[1], k[0]))


def div_exact(x, y) -> MotiveElem:
    """Return ``q`` with ``q * y == x``; raise :class:`NotDivisible` otherwise."""
    x = MotiveElem.coerce(x)
    y = MotiveElem.coerce(y)
    if y.is_zero():
        raise ZeroDivisionError("division by the zero motive")
    lt = _leading(y)
    lc = Fraction(y.terms[lt])
    rem = dict(x.terms)
    quot: dict = {}
    while rem:
        top = max(rem, key=lambda k: (k[1], k[0]))
        dl, dc = top[0] - lt[0], top[1] - lt[1]
        if dl < 0 or dc < 0:
            raise NotDivisible(f"{x} is not divisible by {y}")
        q = _norm(rem[top] / lc)
        quot[(dl, dc)] = q
        for (a, b), v in y.terms.items():
            k = (a + dl, b + dc)
            nv = rem.get(k, 0) - q * v
            if nv == 0:
                rem.pop(k, None)
            else:
                rem[k] = _norm(nv) if isinstance(nv, Fraction) else nv
    return MotiveElem(quot)
