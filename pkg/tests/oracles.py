"""Independent reference implementations used only by the tests.

None of these share code with the package beyond the value types, so an
agreement between the two is evidence rather than tautology.
"""

from __future__ import annotations

import itertools
import math
import re
from fractions import Fraction
from pathlib import Path

from jacgen.motive import MotiveElem, adams

DATA = Path(__file__).parent / "data"


# -- polynomial strings -------------------------------------------------------

_TERM = re.compile(r"^(\d*)\s*(L(?:\^(\d+))?)?$")


def parse_poly(text: str) -> MotiveElem:
    """Parse ``'2L^5 + 12L^4 - L + 3'`` into a Tate element."""
    text = text.replace(" ", "")
    if not text.startswith(("-", "+")):
        text = "+" + text
    coeffs: dict = {}
    for sign, body in re.findall(r"([+-])([^+-]+)", text):
        m = _TERM.match(body)
        if not m:
            raise ValueError(f"cannot parse term {body!r}")
        num = int(m.group(1)) if m.group(1) else 1
        if m.group(2) is None:
            power = 0
        else:
            power = int(m.group(3)) if m.group(3) else 1
        coeffs[power] = coeffs.get(power, 0) + (num if sign == "+" else -num)
    return MotiveElem({(k, 0): v for k, v in coeffs.items()})


def load_table(name: str) -> dict:
    """``{(n, partition): MotiveElem}`` from a ``n | partition | poly`` file."""
    out = {}
    for line in (DATA / name).read_text().splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        n, lam, poly = (part.strip() for part in line.split("|"))
        lam = tuple(int(t) for t in lam.split(","))
        assert sum(lam) == int(n)
        out[(int(n), lam)] = parse_poly(poly)
    return out


# -- characters by the Frobenius formula -----------------------------------


def _poly_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def frobenius_character(lam, mu) -> int:
    """chi^lam(mu) as the coefficient of x^(lam + delta) in a_delta * p_mu."""
    n = sum(lam)
    k = len(lam)
    lam = tuple(lam) + (0,) * (k - len(lam))
    # Vandermonde prod_{i<j} (x_i - x_j)
    vand = {tuple([0] * k): 1}
    for i in range(k):
        for j in range(i + 1, k):
            ei = [0] * k
            ej = [0] * k
            ei[i] = 1
            ej[j] = 1
            vand = _poly_mul(vand, {tuple(ei): 1, tuple(ej): -1})
    prod = vand
    for part in mu:
        pk = {}
        for i in range(k):
            e = [0] * k
            e[i] = part
            pk[tuple(e)] = 1
        prod = _poly_mul(prod, pk)
    target = tuple(lam[i] + k - 1 - i for i in range(k))
    assert sum(target) == n + k * (k - 1) // 2
    return prod.get(target, 0)


# -- twisted point counts of configuration spaces -------------------------


def _mobius(n: int) -> int:
    out, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            out = -out
        p += 1
    if m > 1:
        out = -out
    return out


def conf_trace(e: MotiveElem, mu) -> MotiveElem:
    """Trace of a permutation of cycle type ``mu`` on the class of F(X, n).

    Interprets ``psi_d(e)`` as the number of points of X over the degree-d
    extension, counts closed points of each degree by Mobius inversion, and
    assigns the cycles of ``mu`` to distinct closed points.
    """
    out = MotiveElem.const(1)
    counts: dict = {}
    for k in mu:
        counts[k] = counts.get(k, 0) + 1
    for k, m in counts.items():
        closed = MotiveElem()
        for d in range(1, k + 1):
            if k % d == 0:
                closed = closed + adams(d, e).scale(_mobius(k // d))
        closed = closed.scale(Fraction(1, k))
        for t in range(m):
            out = out * (closed - t).scale(k)
    return out


# -- counting -----------------------------------------------------------------


def brute_force_translation_classes(n: int) -> int:
    """Count mildly superadditive f with zero singletons by trying every map
    with ``0 <= f(I) <= |I| - 1``."""
    k = n - 1
    sets = [frozenset(c) for r in range(1, k + 1) for c in itertools.combinations(range(1, k + 1), r)]
    free = [s for s in sets if len(s) >= 2]
    total = 0
    for values in itertools.product(*(range(len(s)) for s in free)):
        f = {s: 0 for s in sets if len(s) == 1}
        f.update(zip(free, values))
        ok = True
        for a in sets:
            for b in sets:
                if a & b or not (a | b) in f:
                    continue
                gap = f[a | b] - f[a] - f[b]
                if gap < 0 or gap > 1:
                    ok = False
                    break
            if not ok:
                break
        total += ok
    return total


# -- Fourier-Motzkin feasibility for strict systems -------------------------


def fm_feasible(rows, nvars: int) -> bool:
    """Decide ``a . x > b`` for all rows by Fourier-Motzkin elimination."""
    system = [(tuple(Fraction(v) for v in a), Fraction(b)) for a, b in rows]
    for var in range(nvars):
        pos, neg, rest = [], [], []
        for a, b in system:
            if a[var] > 0:
                pos.append((a, b))
            elif a[var] < 0:
                neg.append((a, b))
            else:
                rest.append((a, b))
        new = set(rest)
        for ap, bp in pos:
            for an, bn in neg:
                lp, ln = -an[var], ap[var]
                a = tuple(lp * x + ln * y for x, y in zip(ap, an))
                b = lp * bp + ln * bn
                scale = max(abs(v) for v in a) if any(a) else 1
                new.add((tuple(v / scale for v in a), b / scale))
        system = list(new)
    return all(0 > b for _, b in system)


def falling(x: int, k: int) -> int:
    return math.prod(x - t for t in range(k))


def brute_force_consecutive_functions(n: int, singletons) -> int:
    """Count interval functions on 1..n-1 with the given singleton values and
    0 <= f(I∪J) - f(I) - f(J) <= 1 for adjacent intervals, by trying every
    excess f(I) - sum of singletons in [0, |I| - 1]."""
    k = n - 1
    intervals = [(r, s) for r in range(1, k + 1) for s in range(r + 1, k + 1)]
    total = 0
    for excess in itertools.product(*(range(s - r + 1) for r, s in intervals)):
        f = {(i, i): singletons[i - 1] for i in range(1, k + 1)}
        for (r, s), e in zip(intervals, excess):
            f[(r, s)] = e + sum(singletons[r - 1:s])
        total += all(
            0 <= f[(r, s)] - f[(r, q)] - f[(q + 1, s)] <= 1
            for r, s in intervals for q in range(r, s)
        )
    return total
