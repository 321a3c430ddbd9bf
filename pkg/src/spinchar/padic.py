"""Exponential sums at a fixed prime and their decorated-array evaluations.

A short pattern is a (2r-1)-tuple of p-adic orders d = (d_1, ..., d_{2r-1})
attached to an r-tuple mu of positive integers (mu_i = m_i + 1).  The module
provides

* a brute-force oracle for the normalized character sum G(t), evaluated in
  double precision from exact root-of-unity data;
* the decorated accumulation arrays of flavors B and C with their gamma and
  gamma-tilde weights, and the closed-form evaluation of G(t);
* the totally resonant Omega machinery and the summation identities tying
  the flavor-B sums to flavor-C decorated arrays;
* the component decomposition of weighting vectors.

Conventions pinned here (each validated against the oracle, see tests):

* CQ1(mu) constrains d_i <= mu_i only for i < r and the accumulated bounds
  d_{2r-i} <= mu_{i+1} + d_i - d_{i+1} for i <= r-2; d_r is unconstrained.
  The closed form treats the resonant middle (d_{r-1} = d_{r+1}) with
  d_r > mu_r by the square-sum evaluation, returns the gamma product when
  d_r <= mu_r and the middle bound d_r <= mu_r + 2(d_{r-1} - d_{r+1})
  holds, and reports None (oracle-only) in the remaining middle cells.
* gamma-tilde vanishes on odd entries that are neither boxed nor circled.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .gtpatterns import ShortGTPattern, top_row
from .laurent import LaurentPoly
from .rootdata import upsilon

DEFAULT_BUDGET = 10_000_000

_Q0 = LaurentPoly.zero(0)
_ONE = LaurentPoly.one(0)
_QINV = LaurentPoly.monomial(0, qexp=-1)
_ONE_MINUS_QINV = _ONE - _QINV
_MINUS_QINV = -_QINV
_QINV_HALF = LaurentPoly.monomial(0, qexp=Fraction(-1, 2))


class BudgetExceededError(RuntimeError):
    """Raised when a brute-force sum would exceed its term budget."""


class PreconditionError(ValueError):
    """Raised when the exponential sum's divisibility conditions fail."""


@dataclass(frozen=True)
class ShortPatternB:
    """Orders (d_1, ..., d_{2r-1}) at p, relative to mu (mu_i = m_i + 1)."""

    mu: tuple
    d: tuple

    def __post_init__(self):
        if len(self.d) != 2 * len(self.mu) - 1:
            raise ValueError("d must have length 2r-1")
        if any(x < 0 for x in self.d) or any(m < 1 for m in self.mu):
            raise ValueError("orders must be nonnegative, mu positive")

    @property
    def r(self) -> int:
        return len(self.mu)


@dataclass(frozen=True)
class DecoratedArray:
    """Accumulated entries with boxing/circling flags; flavor B or C."""

    entries: tuple
    boxed: tuple
    circled: tuple
    flavor: str  # "B" or "C"


def gamma(boxed: bool, circled: bool) -> LaurentPoly:
    if boxed and circled:
        return _Q0
    if boxed:
        return _MINUS_QINV
    if circled:
        return _ONE
    return _ONE_MINUS_QINV


def gamma_tilde(boxed: bool, circled: bool, entry: int) -> LaurentPoly:
    if boxed and circled:
        return _Q0
    if circled:
        return _ONE
    if entry % 2 == 0:
        return _MINUS_QINV if boxed else _ONE_MINUS_QINV
    # Odd entries: boxed gives the square-root weight, generic vanishes.
    return _QINV_HALF if boxed else _Q0


# -- flavor B ----------------------------------------------------------------


def l_vector(t: ShortPatternB) -> tuple:
    """Moduli exponents (L_1, ..., L_{2r-1}) of the character sum."""
    r, d = t.r, (0,) + t.d  # 1-based with d_0 = 0
    if r < 2:
        raise ValueError("l_vector needs rank >= 2")
    out = []
    for i in range(1, r):
        out.append(sum(d[1 : i + 1]))
    out.append(d[r] + 2 * sum(d[1:r]))
    for ip in range(1, r):
        out.append(d[r] - d[ip - 1] + sum(d[r + 1 : r + ip + 1]) + sum(d[1:r]))
    return tuple(out)


def preconditions_hold(t: ShortPatternB) -> bool:
    r, d = t.r, (0,) + t.d
    m = [mu - 1 for mu in (0,) + t.mu]
    for j in range(1, r - 1):
        if d[j + 1] > m[j + 1] + d[j]:
            return False
        if d[j + 1] + d[2 * r - j] > m[j + 1] + d[j] + d[2 * r - j - 1]:
            return False
    if 2 * d[r + 1] > m[r] + 2 * d[r - 1]:
        return False
    return True


def in_cq1(t: ShortPatternB) -> bool:
    """d_i <= mu_i for i < r plus the accumulated third-family bounds."""
    r, d, mu = t.r, (0,) + t.d, (0,) + t.mu
    if any(d[i] > mu[i] for i in range(1, r)):
        return False
    for i in range(1, r - 1):
        if d[2 * r - i] > mu[i + 1] + d[i] - d[i + 1]:
            return False
    return True


def middle_bound_holds(t: ShortPatternB) -> bool:
    r, d = t.r, (0,) + t.d
    return d[r] <= t.mu[r - 1] + 2 * (d[r - 1] - d[r + 1] if r >= 2 else 0)


def in_cq1_le(t: ShortPatternB) -> bool:
    r = t.r
    return in_cq1(t) and middle_bound_holds(t) and t.d[r - 1] <= t.mu[r - 1]


def decorate_B(t: ShortPatternB) -> DecoratedArray:
    """Accumulated sums c_i = d_i + ... + d_{2r-1} with the flavor-B flags."""
    r, mu = t.r, (0,) + t.mu
    d = (0,) + t.d
    n = 2 * r - 1
    entries = []
    acc = 0
    for i in range(n, 0, -1):
        acc += d[i]
        entries.append(acc)
    entries.reverse()
    boxed = []
    circled = []
    for i in range(1, n + 1):
        circled.append(d[i] == 0)
        if i <= r:
            boxed.append(d[i] == mu[i])
        elif i == r + 1:
            boxed.append(d[r] == mu[r] + 2 * (d[r - 1] - d[r + 1]))
        else:
            j = 2 * r - i  # 1 <= j <= r-2
            boxed.append(d[i] == mu[j + 1] + d[j] - d[j + 1])
    return DecoratedArray(tuple(entries), tuple(boxed), tuple(circled), "B")


def g_delta(arr: DecoratedArray) -> LaurentPoly:
    out = _ONE
    for b, c in zip(arr.boxed, arr.circled):
        out = out * gamma(b, c)
        if not out:
            return _Q0
    return out


def resonant_lift(dtuple) -> tuple:
    """(d_1, ..., d_r) -> the symmetric (2r-1)-tuple."""
    d = tuple(dtuple)
    return d + d[-2::-1]


def closed_form_G(t: ShortPatternB) -> LaurentPoly | None:
    """Exact value of G(t) where the case analysis pins it; None otherwise.

    None is returned exactly on the middle cells with d_{r-1} != d_{r+1}
    where the bound d_r <= mu_r + 2(d_{r-1} - d_{r+1}) or d_r <= mu_r
    fails; there the oracle is the only route (tested hypothesis: 0).
    """
    r, d, mu = t.r, (0,) + t.d, (0,) + t.mu
    if r < 2:
        raise ValueError("the closed form needs rank >= 2")
    if not in_cq1(t):
        return _Q0
    if d[r - 1] == d[r + 1]:
        diff = d[r] - mu[r]
        if diff <= 0:
            return g_delta(decorate_B(t))
        if diff % 2:
            arr = decorate_B(t)
            out = _ONE_MINUS_QINV * LaurentPoly.monomial(0, qexp=-((diff + 1) // 2))
            for i, (b, c) in enumerate(zip(arr.boxed, arr.circled), start=1):
                if i in (r, r + 1):
                    continue
                out = out * gamma(b, c)
            return out
        return _Q0
    if middle_bound_holds(t) and d[r] <= mu[r]:
        return g_delta(decorate_B(t))
    return None


def k_vector_B(t: ShortPatternB) -> tuple:
    r, d = t.r, (0,) + t.d
    return tuple(
        sum(d[i : 2 * r]) + sum(d[2 * r - j] for j in range(1, i))
        for i in range(1, r + 1)
    )


# -- brute-force oracle -------------------------------------------------------


def _inverse_table(p: int, f: int, dexp: int, shift: int = 0):
    """(c, u) pairs for c over Z/p^f, unit when dexp > 0; u inverse mod p^dexp."""
    mod = p**f
    pairs = []
    if dexp == 0:
        for c in range(mod):
            pairs.append((c, 0))
        return pairs
    pd = p**dexp
    for c in range(mod):
        if c % p == 0:
            continue
        u = pow(c, -1, pd) + shift * pd
        pairs.append((c, u))
    return pairs


def brute_force_G(
    t: ShortPatternB,
    p: int,
    budget: int = DEFAULT_BUDGET,
    u_shift: int = 0,
) -> complex:
    """Literal evaluation of the normalized character sum at the prime p.

    The sum over c_j mod p^{L_j} is collapsed, exactly, to the summand's
    period p^{f_j}: f_j >= d_j keeps the canonical inverse u_j fixed and
    f_j dominates every denominator exponent in which c_j appears.  The
    weight prod p^{L_j - f_j} then cancels against the normalization,
    leaving p^(-sum f_j) times the reduced sum.  Accumulation is complex
    double with Kahan compensation across outer blocks.

    u_shift replaces each u_j by u_j + u_shift * p^{d_j} (representative
    independence testing).
    """
    r = t.r
    if r < 2:
        raise ValueError("the character sum needs rank >= 2")
    if not preconditions_hold(t):
        raise PreconditionError(f"divisibility conditions fail for {t}")
    d = (0,) + t.d
    m = [0] + [mu - 1 for mu in t.mu]
    L = l_vector(t)
    n = 2 * r - 1

    # Terms: (var_j, other_var_or_None, kind, numerator p-exponent, denom exp).
    # kind: how (c, u) data of the two variables combine, see _term_value.
    terms = []
    terms.append(("c", 1, None, m[1], d[1]))
    for j in range(2, r):
        terms.append(("uc", j, j - 1, m[j], d[j]))
    for j in range(1, r - 1):
        terms.append(
            ("neg_cu", 2 * r - j, 2 * r - j - 1, m[j + 1] + d[j], d[j + 1] + d[2 * r - j])
        )
    terms.append(("uuc", r, r - 1, m[r], d[r]))
    terms.append(("2uc", r + 1, r - 1, m[r] + d[r - 1], d[r + 1] + d[r]))
    terms.append(("ccu", r + 1, r, m[r] + 2 * d[r - 1], 2 * d[r + 1] + d[r]))

    need = [0] * (n + 1)  # max net denominator exponent per variable
    for kind, j, _, pe, de in terms:
        need[j] = max(need[j], de - pe)
    f = [0] * (n + 1)
    for j in range(1, n + 1):
        f[j] = min(L[j - 1], max(d[j], need[j], 0))

    total_terms = 1
    for j in range(1, n + 1):
        cnt = p ** f[j]
        if d[j] > 0:
            cnt -= p ** (f[j] - 1)
        total_terms *= cnt
    if total_terms > budget:
        raise BudgetExceededError(
            f"{total_terms} residue tuples exceed budget {budget}"
        )

    cap = max(de for _, _, _, pe, de in terms)
    big = p**cap
    if big > 2**31:  # keep int64 products safe
        raise BudgetExceededError("denominator too large for vectorized path")

    tables = [None] + [_inverse_table(p, f[j], d[j], u_shift) for j in range(1, n + 1)]
    cs = [None] + [
        np.array([c for c, _ in tables[j]], dtype=np.int64) % big
        for j in range(1, n + 1)
    ]
    us = [None] + [
        np.array([u for _, u in tables[j]], dtype=np.int64) % big
        for j in range(1, n + 1)
    ]
    sizes = [len(tables[j]) for j in range(1, n + 1)]

    # Phase grid over all residue tuples; every term touches at most two
    # variables, so it enters as a broadcast of a 1- or 2-dimensional array.
    phase = np.zeros(tuple(sizes), dtype=np.int64)
    for kind, j, o, pe, de in terms:
        scale = (p ** (pe + cap - de)) % big
        if scale == 0:
            continue
        if kind == "c":
            val = cs[j] * scale % big
            shape = [1] * n
            shape[j - 1] = sizes[j - 1]
            phase += val.reshape(shape)
        else:
            col = {"uc": cs[j], "neg_cu": cs[j],
                   "uuc": cs[j], "2uc": cs[j],
                   "ccu": cs[j] * cs[j] % big}[kind]
            row = {"uc": us[o], "neg_cu": us[o],
                   "uuc": us[o] * us[o] % big,
                   "2uc": 2 * us[o] % big, "ccu": us[o]}[kind]
            val = col[:, None] * row[None, :] % big * scale % big
            if kind == "neg_cu":
                val = (-val) % big
            aj, ao = j - 1, o - 1
            shape = [1] * n
            shape[aj] = sizes[aj]
            shape[ao] = sizes[ao]
            flat = val if aj < ao else val.T
            phase += np.ascontiguousarray(flat).reshape(shape)
        phase %= big

    flat = phase.ravel()
    total = 0.0 + 0.0j
    comp = 0.0 + 0.0j
    step = 1 << 20
    factor = 2j * np.pi / big
    for start in range(0, flat.size, step):
        block = complex(np.exp(factor * flat[start : start + step]).sum())
        y = block - comp
        new_total = total + y
        comp = (new_total - total) - y
        total = new_total
    return total * float(p) ** (-sum(f[1:]))


# -- flavor C ----------------------------------------------------------------


def in_cqc(d, muprime) -> bool:
    r = len(muprime)
    d = (0,) + tuple(d)
    mu = (0,) + tuple(muprime)
    if any(d[j] > mu[j] for j in range(1, r + 1)):
        return False
    for j in range(1, r):
        if d[j + 1] + d[2 * r - j] > mu[j + 1] + d[j]:
            return False
    return True


def delta_c_entries(d, r: int) -> tuple:
    """Entries (c_1, ..., c_r, cbar_{r-1}, ..., cbar_1); d_r enters c_r twice."""
    d = (0,) + tuple(d)
    cbar = [0] * r  # cbar[j] for j = 1..r-1
    acc = 0
    for j in range(1, r):
        acc += d[2 * r - j]
        cbar[j] = acc
    cr = sum(d[2 * r - i] for i in range(1, r)) + 2 * d[r]
    cs = [0] * (r + 1)
    cs[r] = cr
    for j in range(r - 1, 0, -1):
        cs[j] = cs[j + 1] + d[j]
    return tuple(cs[1 : r + 1]) + tuple(cbar[r - 1 : 0 : -1])


def decorate_C_literal(d, muprime) -> DecoratedArray:
    """Flavor-C decorations straight from the stated equalities."""
    r = len(muprime)
    dd = (0,) + tuple(d)
    mu = (0,) + tuple(muprime)
    entries = delta_c_entries(d, r)
    boxed = []
    circled = []
    for j in range(1, r + 1):
        boxed.append(dd[j] == mu[j])
        circled.append(dd[j] == 0)
    for j in range(r - 1, 0, -1):  # positions cbar_{r-1} .. cbar_1
        boxed.append(dd[j + 1] == mu[j + 1] + dd[j] - dd[2 * r - j])
        circled.append(dd[2 * r - j] == 0)
    return DecoratedArray(entries, tuple(boxed), tuple(circled), "C")


def short_pattern_of(d, muprime) -> ShortGTPattern:
    """Inverse of the three-row bijection: rebuild (a_0, b_1, a_1) from d."""
    r = len(muprime)
    if not in_cqc(d, muprime):
        raise ValueError(f"{d} is not in the admissible set for {muprime}")
    a0 = top_row(muprime)
    dd = (0,) + tuple(d)
    b1 = [dd[j] + a0[j] for j in range(1, r)] + [dd[r]]
    a1 = [b1[j - 1] - dd[2 * r - j] for j in range(1, r)]
    return ShortGTPattern(r, tuple(a0), tuple(b1), tuple(a1))


def decorate_C_pullback(d, muprime) -> DecoratedArray:
    """Flavor-C decorations pulled back from the three-row pattern.

    boxed = the corresponding pattern entry satisfies its maximality
    equation, circled = its minimality equation, tested independently (an
    entry equal to both neighbours is boxed and circled at once).  This is
    the authoritative decoration; the literal rules are compared against
    it exhaustively in the tests.
    """
    r = len(muprime)
    p1 = short_pattern_of(d, muprime)
    a0, b1, a1 = p1.a0, p1.b1, p1.a1
    entries = delta_c_entries(d, r)
    boxed = []
    circled = []
    for j in range(1, r + 1):  # c_j <-> b_{1,j}
        boxed.append(b1[j - 1] == a0[j - 1])
        circled.append(b1[j - 1] == a0[j] if j < r else b1[r - 1] == 0)
    for j in range(r - 1, 0, -1):  # cbar_j <-> a_{1,j+1}
        boxed.append(a1[j - 1] == b1[j])
        # Beyond the minimality equation, two clauses that never fire on
        # strict rows: a vanishing last bottom-row entry (the diagonal
        # condition) and equality with the right neighbour (row failure).
        # Either way the tuple belongs to no pattern and must drop out.
        circled.append(
            a1[j - 1] == b1[j - 1]
            or (j == r - 1 and a1[j - 1] == 0)
            or (j <= r - 2 and a1[j - 1] == a1[j])
        )
    # Parity dictionary: entry parities match the pattern statistics.
    for j in range(1, r + 1):
        assert (p1.c_stat("b", 1, j) - entries[j - 1]) % 2 == 0
    for j in range(1, r):
        assert p1.c_stat("a", 1, j + 1) == entries[2 * r - 1 - j]
    return DecoratedArray(entries, tuple(boxed), tuple(circled), "C")


def g_delta_C(arr: DecoratedArray) -> LaurentPoly:
    out = _ONE
    for e, b, c in zip(arr.entries, arr.boxed, arr.circled):
        out = out * gamma_tilde(b, c, e)
        if not out:
            return _Q0
    return out


def k_vector_C(d, r: int) -> tuple:
    dd = (0,) + tuple(d)
    kr = sum(dd[2 * r - j] for j in range(1, r + 1))
    out = []
    for i in range(1, r):
        out.append(
            sum(dd[i : 2 * r]) + dd[r] + sum(dd[2 * r - j] for j in range(1, i))
        )
    out.append(kr)
    return tuple(out)


def iter_cqc(muprime):
    """All admissible flavor-C tuples for muprime (finite set)."""
    r = len(muprime)
    mu = (0,) + tuple(muprime)
    front = [range(mu[j] + 1) for j in range(1, r + 1)]
    for head in itertools.product(*front):
        dd = (0,) + head
        backs = []
        for j in range(r - 1, 0, -1):  # d_{2r-j} for positions r+1 .. 2r-1
            backs.append(range(mu[j + 1] + dd[j] - dd[j + 1] + 1))
        for tail in itertools.product(*backs):
            # tail is ordered d_{r+1}, d_{r+2}, ..., d_{2r-1}
            yield head + tail


@lru_cache(maxsize=None)
def cqc_layer_sums(muprime: tuple):
    """Map k-vector -> exact sum of the flavor-C products over its fiber."""
    r = len(muprime)
    acc = {}
    for d in iter_cqc(muprime):
        val = g_delta_C(decorate_C_pullback(d, muprime))
        if not val:
            continue
        key = k_vector_C(d, r)
        acc[key] = acc.get(key, _Q0) + val
    return {k: v for k, v in acc.items() if v}


# -- totally resonant machinery ----------------------------------------------


def omega_sets(mu, kind: str, weighting: str = None, k: int = None, i: int = None):
    """Resonant r-tuples with d_j <= mu_j (j < i), d_j = mu_j (j > i), and
    d_i related to mu_i by ``kind``; optionally filtered/solved by a
    weighting value k (weighting "A": sum d_j; "B": d_r + 2 sum_{j<r} d_j).
    """
    mu = tuple(mu)
    r = len(mu)
    if i is None:
        i = r
    rels = {
        "<": lambda x, m: x < m,
        "<=": lambda x, m: x <= m,
        "=": lambda x, m: x == m,
        ">=": lambda x, m: x >= m,
        ">": lambda x, m: x > m,
    }
    rel = rels[kind]
    bounded = kind in ("<", "<=", "=")

    def weight(vec):
        if weighting == "A":
            return sum(vec)
        if weighting == "B":
            return vec[-1] + 2 * sum(vec[:-1])
        raise ValueError("weighting must be 'A' or 'B'")

    heads = itertools.product(*(range(mu[j] + 1) for j in range(i - 1)))
    tail = tuple(mu[j] for j in range(i, r))
    for head in heads:
        if bounded:
            top = mu[i - 1] if kind != "<" else mu[i - 1] - 1
            lo = mu[i - 1] if kind == "=" else 0
            for di in range(lo, top + 1):
                vec = head + (di,) + tail
                if k is None or weight(vec) == k:
                    yield vec
        else:
            if k is None:
                raise ValueError(f"unbounded kind {kind!r} needs a weighting value")
            coeff = 1 if (weighting == "A" or i == r) else 2
            rest = weight(head + (0,) + tail)
            num = k - rest
            if num < 0 or num % coeff:
                continue
            di = num // coeff
            if rel(di, mu[i - 1]):
                yield head + (di,) + tail


def i_box(dtuple, mu) -> int:
    """Largest index (1-based) with d_i < mu_i; raises on the maximal tuple."""
    for i in range(len(mu), 0, -1):
        if dtuple[i - 1] < mu[i - 1]:
            return i
    raise ValueError("maximal tuple has no box index")


def omega_of(s, mu):
    """The fiber Omega(s) inside the <=-box of mu."""
    s = tuple(s)
    mu = tuple(mu)
    r = len(mu)
    if s == mu:
        yield from itertools.product(*(range(m + 1) for m in mu))
        return
    ib = i_box(s, mu)
    ranges = []
    for j in range(1, r + 1):
        if j < ib:
            ranges.append((s[j - 1],))
        else:
            ranges.append(range(min(s[j - 1], mu[j - 1]) + 1))
    yield from itertools.product(*ranges)


def g_delta_resonant(dtuple, mu) -> LaurentPoly:
    """Flavor-B product of the symmetric lift of an r-tuple (any r >= 1)."""
    dtuple, mu = tuple(dtuple), tuple(mu)
    r = len(mu)
    out = _ONE
    for i in range(1, r + 1):
        out = out * gamma(dtuple[i - 1] == mu[i - 1], dtuple[i - 1] == 0)
    for i in range(1, r):
        out = out * gamma(dtuple[i] == mu[i], dtuple[i - 1] == 0)
    return out


def lemma3_direct(s, mu) -> LaurentPoly:
    total = _Q0
    for x in omega_of(s, mu):
        total = total + g_delta_resonant(x, mu) * LaurentPoly.monomial(
            0, qexp=sum(x)
        )
    return total


def lemma3_closed(s, mu) -> LaurentPoly:
    """q^(k_A(s) - (r - i_box)) G(s_{i_box}) with the generic factor dropped."""
    s, mu = tuple(s), tuple(mu)
    r = len(mu)
    if s == mu:
        return _Q0
    ib = i_box(s, mu)
    head_s, head_mu = s[:ib], mu[:ib]
    out = LaurentPoly.monomial(0, qexp=sum(s) - (r - ib))
    for i in range(1, ib + 1):
        if i == ib and s[ib - 1] > 0:
            continue  # the unboxed uncircled factor 1 - q^{-1} is divided out
        out = out * gamma(head_s[i - 1] == head_mu[i - 1], head_s[i - 1] == 0)
    for i in range(1, ib):
        out = out * gamma(head_s[i] == head_mu[i], head_s[i - 1] == 0)
    return out


def resonant_closed_G(dtuple, mu) -> LaurentPoly:
    t = ShortPatternB(tuple(mu), resonant_lift(dtuple))
    val = closed_form_G(t)
    assert val is not None  # resonant middles are always covered
    return val


def delta_C_resonant(s, muprime) -> DecoratedArray:
    """The resonant flavor-C array of an r-tuple; equals the literal array
    of the symmetric lift (middle difference twice the last coordinate)."""
    return decorate_C_literal(resonant_lift(s), muprime)


def prop5_sides(mu, kr: int):
    """Flavor-B sum over Omega_B(mu, kr) and flavor-C sum over the <=-box."""
    mu = tuple(mu)
    muprime = upsilon(mu)
    lhs = _Q0
    for dtuple in omega_sets(mu, ">=", weighting="B", k=kr):
        lhs = lhs + resonant_closed_G(dtuple, mu)
    for dtuple in omega_sets(mu, "<", weighting="B", k=kr):
        lhs = lhs + resonant_closed_G(dtuple, mu)
    rhs = _Q0
    for s in omega_sets(muprime, "<=", weighting="A", k=kr):
        rhs = rhs + g_delta_C(delta_C_resonant(s, muprime))
    return lhs, rhs


# -- component decomposition ---------------------------------------------------


@dataclass(frozen=True)
class Component:
    lo: int  # 1-based first index
    hi: int  # 1-based last index
    a: int  # |k_{lo-1} - k_lo|, 0 at the left edge
    b: int  # |k_hi - k_{hi+1}|, 0 at the right edge
    values: tuple
    mu_adj: tuple  # boundary-adjusted mu slice


def component_decomposition(kvec, mu):
    """Split k into constant runs with the boundary-adjusted mu slices,
    plus the admissible summation set for the run weights."""
    kvec, mu = tuple(kvec), tuple(mu)
    r = len(kvec)
    runs = []
    lo = 1
    for i in range(2, r + 2):
        if i > r or kvec[i - 1] != kvec[lo - 1]:
            runs.append((lo, i - 1))
            lo = i
    comps = []
    for lo, hi in runs:
        a = 0 if lo == 1 else abs(kvec[lo - 2] - kvec[lo - 1])
        b = 0 if hi == r else abs(kvec[hi - 1] - kvec[hi])
        vals = kvec[lo - 1 : hi]
        m = hi - lo + 1
        if m >= 2:
            adj = list(mu[lo - 1 : hi])
            if lo > 1 and kvec[lo - 2] < kvec[lo - 1]:
                adj[0] -= a
            if hi < r and kvec[hi - 1] > kvec[hi]:
                adj[-1] -= b
        elif hi < r:  # singleton, not the last component
            adj = [mu[lo - 1]]
            if kvec[hi - 1] > kvec[hi]:
                adj[0] -= b
            if lo > 1 and kvec[lo - 2] < kvec[lo - 1]:
                adj[0] -= a
        else:  # singleton final component
            adj = [mu[r - 1]]
            if lo > 1 and kvec[lo - 2] < kvec[lo - 1]:
                adj[0] -= 2 * a
        comps.append(Component(lo, hi, a, b, vals, tuple(adj)))
    h = len(comps)
    xi = []
    if h:
        offset = sum(c.b for c in comps[:-1])
        bounds = [sum(c.mu_adj) for c in comps[:-1]]
        target = kvec[0] - offset
        for xs in itertools.product(*(range(b + 1) for b in bounds)):
            rest = target - 2 * sum(xs)
            if rest >= 0:
                xi.append(xs + (rest,))
    return comps, xi


def psi_k(d, kvec, mu):
    """Per-component projections (d_lo, ..., d_{hi-1}, min(d_hi, d_{2r-hi}))."""
    comps, _ = component_decomposition(kvec, mu)
    r = len(mu)
    dd = (0,) + tuple(d)
    out = []
    for c in comps:
        part = [dd[j] for j in range(c.lo, c.hi)]
        j = c.hi
        dprime = dd[j] if j == r else min(dd[j], dd[2 * r - j])
        part.append(dprime)
        out.append(tuple(part))
    return out


# -- the general identity -------------------------------------------------------


def iter_cq1_with_k(mu, kvec):
    """Flavor-B tuples with the given weighting vector (finite fiber)."""
    mu = tuple(mu)
    kvec = tuple(kvec)
    r = len(mu)
    deltas = [kvec[i - 1] - kvec[i] for i in range(1, r)]
    budget_front = 2 * kvec[0] - kvec[r - 1]
    for head in itertools.product(*(range(mu[j] + 1) for j in range(r - 1))):
        back = [head[i - 1] - deltas[i - 1] for i in range(1, r)]
        if any(x < 0 for x in back):
            continue
        dr = budget_front - 2 * sum(head)
        if dr < 0:
            continue
        d = tuple(head) + (dr,) + tuple(reversed(back))
        t = ShortPatternB(mu, d)
        if not in_cq1(t):
            continue
        assert k_vector_B(t) == kvec
        yield t


@dataclass(frozen=True)
class Prop6Result:
    lhs: complex
    rhs: Fraction
    abs_err: float
    used_oracle: int
    skipped_divisibility: int
    verdict: bool


def prop6_check(mu, kvec, p: int, tol: float = 1e-6, budget: int = DEFAULT_BUDGET):
    """Numeric comparison of the flavor-B and flavor-C weighted sums.

    Tuples violating the divisibility preconditions never occur in the
    coefficient expansion (the inductive sum ranges over them only), so
    they contribute zero; their count is reported.
    """
    mu, kvec = tuple(mu), tuple(kvec)
    r = len(mu)
    lhs = 0.0 + 0.0j
    used_oracle = 0
    skipped = 0
    for t in iter_cq1_with_k(mu, kvec):
        if not preconditions_hold(t):
            skipped += 1
            continue
        val = closed_form_G(t)
        if val is None:
            lhs += brute_force_G(t, p, budget=budget)
            used_oracle += 1
        else:
            lhs += complex(val.evaluate({"q": Fraction(p)}))
    rhs = Fraction(0)
    target = upsilon(kvec)
    poly = cqc_layer_sums(upsilon(mu)).get(target)
    if poly is not None:
        rhs = poly.evaluate({"q": Fraction(p)})
    err = abs(lhs - complex(rhs))
    return Prop6Result(
        lhs, rhs, err, used_oracle, skipped,
        err <= tol * max(1.0, abs(complex(rhs))),
    )
