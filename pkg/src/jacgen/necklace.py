"""Fine compactified Jacobians of necklace curves.

A necklace curve has ``n`` rational components ``C_1, ..., C_n`` arranged in a
cycle, node ``P_j`` joining ``C_j`` and ``C_{j+1}`` (indices mod n). A fine
compactified Jacobian is determined by a base multidegree ``D`` and a cyclic
node sequence ``(j_1, ..., j_m)``; consecutive components differ by
``e_j - e_{j+1}`` where ``j`` is the node at which the connecting sheaf is
singular.

Indices are 1-based in the public API, as in the usual notation; tuples are
0-based internally.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import floor

from .errors import (
    DegeneratePolarisation,
    InternalCellEmpty,
    InvalidSequence,
    NotAnNCycle,
    NotSmoothable,
    NotSuperadditive,
)
from .lp import solve_strict


def _unit(n: int, j: int) -> tuple:
    """Standard basis vector e_j, 1-based and cyclic."""
    v = [0] * n
    v[(j - 1) % n] = 1
    return tuple(v)


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _step(n: int, j: int) -> tuple:
    # e_j - e_{j+1}
    return _sub(_unit(n, j), _unit(n, j + 1))


def canonical_rotation(seq) -> tuple:
    """Lexicographically minimal cyclic rotation of ``seq``."""
    seq = tuple(seq)
    if not seq:
        return seq
    return min(seq[k:] + seq[:k] for k in range(len(seq)))


# -- sequences ---------------------------------------------------------------


@dataclass(frozen=True)
class SeqValidation:
    valid: bool
    rho: int
    reason: str = ""


def _partial_sums(n: int, seq) -> list:
    out, cur = [], (0,) * n
    for j in seq:
        cur = _add(cur, _step(n, j))
        out.append(cur)
    return out


def _balanced_windows(n: int, seq, rho: int) -> tuple | None:
    """First cyclic window of length rho'*n containing each index rho' times."""
    m = len(seq)
    for rp in range(1, rho):
        w = rp * n
        for start in range(m):
            window = [seq[(start + k) % m] for k in range(w)]
            if all(window.count(i) == rp for i in range(1, n + 1)):
                return start, w
    return None


def validate_seq(n: int, seq) -> SeqValidation:
    """Check that ``seq`` is the node sequence of a fine compactified Jacobian.

    Two independent criteria are evaluated: no proper cyclic window is
    balanced, and the derived component multidegrees are pairwise distinct.
    They always agree; a disagreement raises ``AssertionError``.
    """
    seq = tuple(seq)
    if n < 1:
        return SeqValidation(False, 0, "n must be positive")
    if not seq:
        return SeqValidation(False, 0, "empty sequence")
    if any(not isinstance(j, int) or not 1 <= j <= n for j in seq):
        return SeqValidation(False, 0, f"entries must lie in 1..{n}")
    counts = [seq.count(i) for i in range(1, n + 1)]
    if len(set(counts)) != 1:
        return SeqValidation(False, 0, f"index multiplicities differ: {counts}")
    rho = counts[0]

    window = _balanced_windows(n, seq, rho)
    comps = _partial_sums(n, seq)
    distinct = len(set(comps)) == len(comps)
    if (window is None) != distinct:
        raise AssertionError(f"sequence criteria disagree on {seq}")
    if window is not None:
        start, w = window
        return SeqValidation(False, rho, f"balanced window of length {w} at position {start + 1}")
    return SeqValidation(True, rho)


# -- compactified Jacobians ----------------------------------------------------


@dataclass(frozen=True)
class NecklaceFcj:
    """A fine compactified Jacobian of an ``n``-component necklace curve.

    ``components[k-1]`` is ``D + d_k``; ``nodes[k-1]`` is ``(j_k, D + d_k - e_{j_k})``,
    the singular sheaf joining components ``k-1`` and ``k``. The last
    component is ``D`` itself.
    """

    n: int
    d: int
    base: tuple
    seq: tuple
    components: tuple
    nodes: tuple

    @property
    def m(self) -> int:
        return len(self.seq)

    @property
    def rho(self) -> int:
        return self.m // self.n

    @property
    def smoothable(self) -> bool:
        return self.m == self.n

    def to_document(self) -> dict:
        doc = {
            "n": self.n,
            "d": self.d,
            "rho": self.rho,
            "seq": list(self.seq),
            "base": list(self.base),
            "components": [list(c) for c in self.components],
            "nodes": [{"node": j, "multidegree": list(v)} for j, v in self.nodes],
            "smoothable": self.smoothable,
        }
        if self.smoothable:
            doc["polarisation"] = [_frac_str(v) for v in polarisation_of(self).phi]
        return doc


def _frac_str(v) -> str:
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def build_fcj(n: int, d: int, base, seq) -> NecklaceFcj:
    base = tuple(int(v) for v in base)
    seq = tuple(seq)
    if len(base) != n:
        raise InvalidSequence(f"base must have {n} entries")
    if sum(base) != d:
        raise InvalidSequence(f"base {base} does not have total degree {d}")
    check = validate_seq(n, seq)
    if not check.valid:
        raise InvalidSequence(check.reason)
    comps = tuple(_add(base, v) for v in _partial_sums(n, seq))
    nodes = tuple((j, _sub(c, _unit(n, j))) for j, c in zip(seq, comps))
    return NecklaceFcj(n, d, base, seq, comps, nodes)


def _cycle_seq(sigma, n: int | None = None) -> tuple:
    """Orbit of 1 under an n-cycle given in cycle notation or as a mapping."""
    if isinstance(sigma, dict):
        mapping = dict(sigma)
        n = n or len(mapping)
    else:
        cyc = tuple(sigma)
        n = n or len(cyc)
        if sorted(cyc) != list(range(1, n + 1)):
            raise NotAnNCycle(f"{cyc} is not a cyclic ordering of 1..{n}")
        mapping = {cyc[k]: cyc[(k + 1) % n] for k in range(n)}
    if sorted(mapping) != list(range(1, n + 1)) or sorted(mapping.values()) != list(range(1, n + 1)):
        raise NotAnNCycle("not a permutation of 1..n")
    orbit = [1]
    while len(orbit) < n:
        nxt = mapping[orbit[-1]]
        if nxt == 1:
            raise NotAnNCycle("permutation has more than one cycle")
        orbit.append(nxt)
    if mapping[orbit[-1]] != 1:
        raise NotAnNCycle("permutation has more than one cycle")
    return tuple(orbit)


def from_cycle(sigma, base, d: int) -> NecklaceFcj:
    """The smoothable Jacobian with node sequence ``(1, sigma(1), sigma^2(1), ...)``.

    ``sigma`` is either cycle notation ``(1, 3, 2, 4)`` or a dict mapping.
    """
    base = tuple(base)
    return build_fcj(len(base), d, base, _cycle_seq(sigma, len(base)))


def to_cycle(fcj: NecklaceFcj) -> tuple:
    """Cycle notation of the n-cycle, starting at 1."""
    if not fcj.smoothable:
        raise NotSmoothable("only smoothable Jacobians correspond to n-cycles")
    k = fcj.seq.index(1)
    return fcj.seq[k:] + fcj.seq[:k]


# -- polarisations and stability ---------------------------------------------


@dataclass(frozen=True)
class Polarisation:
    phi: tuple

    def __post_init__(self):
        object.__setattr__(self, "phi", tuple(Fraction(v) for v in self.phi))

    @property
    def n(self) -> int:
        return len(self.phi)

    @property
    def total(self) -> Fraction:
        return sum(self.phi, Fraction(0))


def _as_pol(phi) -> Polarisation:
    return phi if isinstance(phi, Polarisation) else Polarisation(phi)


def polarisation_of(fcj: NecklaceFcj) -> Polarisation:
    """Average of the component multidegrees."""
    if not fcj.smoothable:
        raise NotSmoothable(f"sequence of length {fcj.m} on {fcj.n} components")
    n = fcj.n
    return Polarisation(tuple(Fraction(sum(c[i] for c in fcj.components), n) for i in range(n)))


def proper_arcs(n: int):
    """Proper cyclic arcs as ``(start, length)`` pairs, 0-based start."""
    for length in range(1, n):
        for start in range(n):
            yield start, length


def _arc_sum(vec, start, length):
    n = len(vec)
    return sum((vec[(start + k) % n] for k in range(length)), 0)


def degenerate_arc(phi) -> tuple | None:
    """First proper arc (1-based indices) on which ``phi`` sums to an integer."""
    phi = _as_pol(phi).phi
    n = len(phi)
    for start, length in proper_arcs(n):
        if _arc_sum(phi, start, length).denominator == 1:
            return tuple((start + k) % n + 1 for k in range(length))
    return None


def is_stable(phi, deg, singular_node: int | None = None) -> bool:
    """phi-stability of a line bundle (or a sheaf singular at one node).

    For a sheaf singular at node ``P_j``, an arc containing both ``C_j`` and
    ``C_{j+1}`` gains one in degree (the restriction stays torsion free across
    the node) and an arc with ``P_j`` on its boundary uses the half-shifted
    bound.
    """
    pol = _as_pol(phi)
    phi = pol.phi
    n = len(phi)
    deg = tuple(deg)
    if len(deg) != n:
        raise ValueError("multidegree and polarisation have different lengths")
    expected = pol.total - (0 if singular_node is None else 1)
    if sum(deg) != expected:
        raise ValueError(f"total degree {sum(deg)} does not match {expected}")
    arc = degenerate_arc(pol)
    if arc is not None:
        raise DegeneratePolarisation(f"phi sums to an integer on the arc {arc}")
    j = None if singular_node is None else (singular_node - 1) % n
    for start, length in proper_arcs(n):
        end = (start + length - 1) % n
        delta = interior = 0
        if j is not None:
            if j in ((start - 1) % n, end):
                delta = 1
            elif (j - start) % n < length - 1:
                interior = 1
        val = _arc_sum(deg, start, length) + interior - _arc_sum(phi, start, length) + Fraction(delta, 2)
        bound = Fraction(2 - delta, 2)
        if abs(val) == bound:
            raise DegeneratePolarisation("equality in a stability constraint")
        if abs(val) > bound:
            return False
    return True


def stable_multidegrees(phi) -> frozenset:
    """All stable line-bundle multidegrees for a nondegenerate ``phi``."""
    pol = _as_pol(phi)
    phi = pol.phi
    n = len(phi)
    if pol.total.denominator != 1:
        raise ValueError("polarisation must have integral total degree")
    arc = degenerate_arc(pol)
    if arc is not None:
        raise DegeneratePolarisation(f"phi sums to an integer on the arc {arc}")
    d = int(pol.total)
    if n == 1:
        return frozenset({(d,)})
    # singleton bound |d_i - phi_i| < 1 is implied; the search uses a wider box
    ranges = [range(floor(p) - n + 1, floor(p) + n + 1) for p in phi]
    found = set()
    prefix: list = []

    def rec(i, partial_phi_diffs):
        if i == n - 1:
            last = d - sum(prefix)
            if abs(last - phi[-1]) >= n:
                return
            cand = tuple(prefix) + (last,)
            if is_stable(pol, cand):
                found.add(cand)
            return
        for v in ranges[i]:
            diff = v - phi[i]
            # non-wrapping arcs ending at i
            acc, ok = diff, abs(diff) < 1
            for k in range(i - 1, -1, -1):
                if not ok:
                    break
                acc += partial_phi_diffs[k]
                ok = abs(acc) < 1
            if ok:
                prefix.append(v)
                rec(i + 1, partial_phi_diffs + [diff])
                prefix.pop()

    rec(0, [])
    return frozenset(found)


# -- consecutive-set functions ----------------------------------------------


def consecutive_sets(n: int) -> list:
    """Intervals ``(r, s)`` with ``1 <= r <= s <= n-1``, ordered by (r, s)."""
    return [(r, s) for r in range(1, n) for s in range(r, n)]


def f_of_fcj(fcj: NecklaceFcj) -> dict:
    """``f(r, s) = min over components of d_r + ... + d_s``."""
    if not fcj.smoothable:
        raise NotSmoothable("f is defined for smoothable Jacobians")
    return {
        (r, s): min(sum(c[r - 1:s]) for c in fcj.components)
        for r, s in consecutive_sets(fcj.n)
    }


def consecutive_violation(n: int, f) -> tuple | None:
    """First split ``[r, q] + [q+1, s]`` breaking ``0 <= f(I u J) - f(I) - f(J) <= 1``."""
    for r, s in consecutive_sets(n):
        for q in range(r, s):
            gap = f[(r, s)] - f[(r, q)] - f[(q + 1, s)]
            if not 0 <= gap <= 1:
                return (r, q), (q + 1, s)
    return None


def cell_point(n: int, d: int, f) -> tuple:
    """An exact rational phi with ``f(I) < phi_I < f(I)+1`` on every interval."""
    rows = []
    for r, s in consecutive_sets(n):
        a = [1 if r <= i + 1 <= s else 0 for i in range(n - 1)]
        rows.append((a, f[(r, s)]))
        rows.append(([-v for v in a], -f[(r, s)] - 1))
    res = solve_strict(rows, n - 1)
    if not res.feasible:
        raise InternalCellEmpty(f"no interior point for {f}")
    x = tuple(res.x)
    return x + (d - sum(x, Fraction(0)),)


def fcj_from_f(n: int, d: int, f) -> NecklaceFcj:
    """The unique smoothable Jacobian whose interval minima are ``f``.

    ``f`` is first translated to zero singleton values (the construction is
    equivariant under tensoring by line bundles); the normalized problem is
    solved once per function and shifted back.
    """
    f = {tuple(k): int(v) for k, v in f.items()}
    if set(f) != set(consecutive_sets(n)):
        raise ValueError(f"f must be defined exactly on the intervals of 1..{n - 1}")
    bad = consecutive_violation(n, f)
    if bad is not None:
        raise NotSuperadditive(bad)
    if n == 1:
        return build_fcj(1, d, (d,), (1,))
    t = tuple(f[(i, i)] for i in range(1, n))
    t = t + (d - sum(t),)
    reduced = tuple(
        (key, f[key] - sum(t[key[0] - 1:key[1]])) for key in consecutive_sets(n)
    )
    core = _fcj_from_reduced(n, reduced)
    return build_fcj(n, d, _add(core.base, t), core.seq)


@lru_cache(maxsize=4096)
def _fcj_from_reduced(n: int, reduced: tuple) -> NecklaceFcj:
    f = dict(reduced)
    phi = cell_point(n, 0, f)
    S = stable_multidegrees(phi)
    if len(S) != n:
        raise InternalCellEmpty(f"expected {n} stable multidegrees, found {len(S)}")
    succ = {}
    for c in S:
        nxt = [(j, _add(c, _step(n, j))) for j in range(1, n + 1) if _add(c, _step(n, j)) in S]
        if len(nxt) != 1:
            raise InternalCellEmpty(f"component {c} has {len(nxt)} successors")
        succ[c] = nxt[0]
    base = next(c for c in S if succ[c][0] == 1)
    seq, cur = [], base
    for _ in range(n):
        j, cur = succ[cur]
        seq.append(j)
    if cur != base:
        raise InternalCellEmpty("successor map is not a single cycle")
    fcj = build_fcj(n, 0, base, tuple(seq))
    if set(fcj.components) != S:
        raise InternalCellEmpty("reconstructed components differ from the stable set")
    if f_of_fcj(fcj) != f:
        raise InternalCellEmpty("reconstructed Jacobian does not reproduce f")
    return fcj


def normalized_base(n: int, d: int) -> tuple:
    """Base multidegree used in enumeration: ``d * e_1``."""
    return (d,) + (0,) * (n - 1)


def enumerate_smoothable(n: int, d: int = 0) -> list:
    """One Jacobian per n-cycle, cycles in lexicographic order of cycle notation."""
    if n < 1:
        raise ValueError("n must be positive")
    base = normalized_base(n, d)
    out = []
    for rest in itertools.permutations(range(2, n + 1)):
        out.append(build_fcj(n, d, base, (1,) + rest))
    return out


def count_consecutive_functions(n: int, singletons=None) -> int:
    """Number of consecutive-set functions with given singleton values that
    satisfy the interval superadditivity condition.

    Intervals are filled by increasing length; the value on ``[r, s]`` must
    lie within ``[max, min + 1]`` of its split sums.
    """
    if n <= 1:
        return 1
    if singletons is None:
        singletons = [0] * (n - 1)
    f = {(i, i): singletons[i - 1] for i in range(1, n)}
    order = [(r, r + length) for length in range(1, n - 1) for r in range(1, n - length)]

    def rec(k):
        if k == len(order):
            return 1
        r, s = order[k]
        sums = [f[(r, q)] + f[(q + 1, s)] for q in range(r, s)]
        lo, hi = max(sums), min(sums) + 1
        total = 0
        for v in range(lo, hi + 1):
            f[(r, s)] = v
            total += rec(k + 1)
        del f[(r, s)]
        return total

    return rec(0)


__all__ = [
    "NecklaceFcj",
    "Polarisation",
    "SeqValidation",
    "build_fcj",
    "canonical_rotation",
    "cell_point",
    "consecutive_sets",
    "consecutive_violation",
    "count_consecutive_functions",
    "degenerate_arc",
    "enumerate_smoothable",
    "f_of_fcj",
    "fcj_from_f",
    "from_cycle",
    "is_stable",
    "normalized_base",
    "polarisation_of",
    "proper_arcs",
    "stable_multidegrees",
    "to_cycle",
    "validate_seq",
]
