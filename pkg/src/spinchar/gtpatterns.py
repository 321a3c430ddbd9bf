"""Strict Gelfand-Tsetlin patterns of type C with decorations and statistics.

A rank-r pattern has 2r rows: a_0 (length r), b_1 (length r), a_1 (length
r-1), b_2 (length r-1), ..., a_{r-1} (length 1), b_r (length 1).  Entry
a_{i,j} exists for i+1 <= j <= r (a_0: 1 <= j <= r); b_{i,j} for
i <= j <= r.  Adjacent rows interleave, every row strictly decreases, and
every a-row below the top ends positively (a_{i,r} >= 1 for i >= 1).  The
last condition is the pattern-side image of the diagonal condition on
symplectic shifted tableaux (row L of the tableau starts with L' or L);
dropping it provably breaks the deformed-denominator identity on weights
with even last coordinate.

Entry classes follow the conventions used throughout this artifact:
an a-entry is maximal when it equals its upper-right neighbour b_{i,j} and
minimal when it equals b_{i,j-1}; a b-entry is maximal when it equals
a_{i-1,j}, minimal when it equals a_{i-1,j+1} (or is zero when j = r).
Both conditions can hold only in the corner b_{i,r} = a_{i-1,r} = 0
(degenerate top rows); the entry then counts as minimal, matching the
rank-one weight table at b = mu = 0.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import comb

from .laurent import LaurentPoly, Monomial
from .rootdata import upsilon

MAXIMAL = "maximal"
MINIMAL = "minimal"
GENERIC = "generic"


def top_row(mu) -> tuple:
    """Partial sums from the right: (mu_1+...+mu_r, mu_2+...+mu_r, ..., mu_r)."""
    mu = tuple(mu)
    out = []
    acc = 0
    for m in reversed(mu):
        acc += m
        out.append(acc)
    return tuple(reversed(out))


def mu_of_top_row(row) -> tuple:
    row = tuple(row)
    return tuple(
        row[i] - row[i + 1] for i in range(len(row) - 1)
    ) + (row[-1],)


@dataclass(frozen=True)
class GTPattern:
    rank: int
    arows: tuple  # arows[i] = row a_i, entries a_{i,i+1..r} (a_0: j=1..r)
    brows: tuple  # brows[i-1] = row b_i, entries b_{i,i..r}

    def a(self, i: int, j: int) -> int:
        return self.arows[i][j - i - 1] if i else self.arows[0][j - 1]

    def b(self, i: int, j: int) -> int:
        return self.brows[i - 1][j - i]

    def has_a(self, i: int, j: int) -> bool:
        lo = 1 if i == 0 else i + 1
        return 0 <= i <= self.rank - 1 and lo <= j <= self.rank

    def rows(self) -> list:
        """Rows in display order a_0, b_1, a_1, ..., b_r."""
        out = []
        for i in range(self.rank):
            out.append(self.arows[i])
            out.append(self.brows[i])
        return out

    def validate(self) -> None:
        r = self.rank
        assert len(self.arows) == r and len(self.brows) == r
        for i in range(r):
            assert len(self.arows[i]) == (r if i == 0 else r - i)
            assert len(self.brows[i]) == r - i
        for row in self.rows():
            assert all(x >= 0 for x in row)
            assert all(row[k] > row[k + 1] for k in range(len(row) - 1)), (
                "rows must strictly decrease"
            )
        for i in range(1, r):
            assert self.a(i, r) >= 1, "a-rows below the top must end positively"
        for i in range(1, r + 1):
            for j in range(i, r + 1):
                v = self.b(i, j)
                assert v <= self.a(i - 1, j)
                if j < r:
                    assert v >= self.a(i - 1, j + 1)
                if self.has_a(i, j):
                    assert v <= self.a(i, j)
                if self.has_a(i, j + 1):
                    assert v >= self.a(i, j + 1)

    # -- decorations -------------------------------------------------------

    def classify(self) -> dict:
        """Class of every entry below the top row, keyed ('a'|'b', i, j)."""
        out = {}
        r = self.rank
        for i in range(1, r + 1):
            for j in range(i, r + 1):
                v = self.b(i, j)
                minimal = (j < r and v == self.a(i - 1, j + 1)) or (
                    j == r and v == 0
                )
                if minimal:  # zero right-edge entries stay minimal
                    out[("b", i, j)] = MINIMAL
                elif v == self.a(i - 1, j):
                    out[("b", i, j)] = MAXIMAL
                else:
                    out[("b", i, j)] = GENERIC
            if i <= r - 1:
                for j in range(i + 1, r + 1):
                    v = self.a(i, j)
                    if v == self.b(i, j):
                        out[("a", i, j)] = MAXIMAL
                    elif v == self.b(i, j - 1):
                        out[("a", i, j)] = MINIMAL
                    else:
                        out[("a", i, j)] = GENERIC
        return out

    def c_stat(self, kind: str, i: int, j: int) -> int:
        """The accumulation statistic attached to an entry; empty sums are 0."""
        if kind == "a":
            return sum(self.b(i, m) - self.a(i, m + 1) for m in range(i, j))
        if kind == "b":
            tail = sum(
                self.a(i - 1, k) + self.a(i, k) for k in range(j + 1, self.rank + 1)
            )
            return self.c_stat("a", i, j) + tail
        raise ValueError(kind)

    def stats(self) -> "PatternStats":
        gen = nmax = max0 = max1 = 0
        for (kind, i, j), cls in self.classify().items():
            if cls == GENERIC:
                gen += 1
            elif cls == MAXIMAL:
                nmax += 1
                if self.c_stat(kind, i, j) % 2:
                    max1 += 1
                else:
                    max0 += 1
        return PatternStats(gen, nmax, max0, max1)

    def wt(self) -> tuple:
        """wt_i = sum(row a_{i-1}) - 2 sum(row b_i) + sum(row a_i)."""
        r = self.rank
        out = []
        for i in range(1, r + 1):
            v = sum(self.arows[i - 1]) - 2 * sum(self.brows[i - 1])
            if i <= r - 1:
                v += sum(self.arows[i])
            out.append(v)
        return tuple(out)

    def to_json(self) -> str:
        cls = self.classify()
        record = {
            "rank": self.rank,
            "rows": [list(row) for row in self.rows()],
            "stats": list(self.stats()),
            "classes": {f"{k}{i},{j}": c for (k, i, j), c in sorted(cls.items())},
            "cstats": {
                f"{k}{i},{j}": self.c_stat(k, i, j) for (k, i, j) in sorted(cls)
            },
            "wt": list(self.wt()),
            "in_circle": in_gt_circle(self),
        }
        return json.dumps(record, sort_keys=True)


@dataclass(frozen=True)
class PatternStats:
    gen: int
    max: int
    max0: int
    max1: int

    def __iter__(self):
        return iter((self.gen, self.max, self.max0, self.max1))


@dataclass(frozen=True)
class ShortGTPattern:
    """Top three rows a_0, b_1, a_1 of a rank-r pattern (a_1 length r-1)."""

    rank: int
    a0: tuple
    b1: tuple
    a1: tuple

    def validate(self) -> None:
        r = self.rank
        assert len(self.a0) == r and len(self.b1) == r and len(self.a1) == r - 1
        for row in (self.a0, self.b1, self.a1):
            assert all(x >= 0 for x in row)
            assert all(row[k] > row[k + 1] for k in range(len(row) - 1))
        if r >= 2:
            assert self.a1[-1] >= 1, "the short bottom row must end positively"
        for j in range(1, r + 1):
            assert self.b1[j - 1] <= self.a0[j - 1]
            if j < r:
                assert self.b1[j - 1] >= self.a0[j]
        for j in range(2, r + 1):
            assert self.b1[j - 2] >= self.a1[j - 2] >= self.b1[j - 1]

    def classify(self) -> dict:
        out = {}
        r = self.rank
        for j in range(1, r + 1):
            v = self.b1[j - 1]
            if (j < r and v == self.a0[j]) or (j == r and v == 0):
                out[("b", 1, j)] = MINIMAL
            elif v == self.a0[j - 1]:
                out[("b", 1, j)] = MAXIMAL
            else:
                out[("b", 1, j)] = GENERIC
        for j in range(2, r + 1):
            v = self.a1[j - 2]
            if v == self.b1[j - 1]:
                out[("a", 1, j)] = MAXIMAL
            elif v == self.b1[j - 2]:
                out[("a", 1, j)] = MINIMAL
            else:
                out[("a", 1, j)] = GENERIC
        return out

    def c_stat(self, kind: str, i: int, j: int) -> int:
        assert i == 1
        r = self.rank
        agetter = lambda jj: self.a1[jj - 2]
        ca = sum(self.b1[m - 1] - agetter(m + 1) for m in range(1, j))
        if kind == "a":
            return ca
        return ca + sum(self.a0[k - 1] + agetter(k) for k in range(j + 1, r + 1))

    def stats(self) -> PatternStats:
        gen = nmax = max0 = max1 = 0
        for (kind, i, j), cls in self.classify().items():
            if cls == GENERIC:
                gen += 1
            elif cls == MAXIMAL:
                nmax += 1
                if self.c_stat(kind, i, j) % 2:
                    max1 += 1
                else:
                    max0 += 1
        return PatternStats(gen, nmax, max0, max1)

    def in_circle(self) -> bool:
        return all(
            self.c_stat(k, i, j) % 2 == 0
            for (k, i, j), cls in self.classify().items()
            if cls == GENERIC
        )

    def wt1(self) -> int:
        return sum(self.a0) - 2 * sum(self.b1) + sum(self.a1)


# -- enumeration -----------------------------------------------------------


def _interleavings(upper, length, last_floor=0):
    """Strictly decreasing rows fitting below ``upper``; descending lex order.

    Slot k (0-based) is bounded above by upper[k] (and strict decrease) and
    below by upper[k+1] when that exists, else 0; the final slot is bounded
    below by ``last_floor``.
    """

    def rec(k, prefix):
        if k == length:
            yield tuple(prefix)
            return
        ub = upper[k]
        if prefix:
            ub = min(ub, prefix[-1] - 1)
        lb = upper[k + 1] if k + 1 < len(upper) else 0
        if k == length - 1:
            lb = max(lb, last_floor)
        for v in range(ub, lb - 1, -1):
            prefix.append(v)
            yield from rec(k + 1, prefix)
            prefix.pop()

    yield from rec(0, [])


def enumerate_strict(mu):
    """All strict interleaving patterns with top row built from mu.

    Deterministic order: row-major, entries descending.  The stream is empty
    when the top row itself is not strictly decreasing.
    """
    mu = tuple(mu)
    r = len(mu)
    top = top_row(mu)
    if any(top[k] <= top[k + 1] for k in range(r - 1)):
        return

    def rec(rows_a, rows_b, upper, next_is_b):
        if len(rows_b) == r:
            yield GTPattern(r, tuple(rows_a), tuple(rows_b))
            return
        length = len(upper) if next_is_b else len(upper) - 1
        floor = 0 if next_is_b else 1  # a-rows below the top end positively
        for row in _interleavings(upper, length, last_floor=floor):
            if next_is_b:
                yield from rec(rows_a, rows_b + [row], row, False)
            else:
                yield from rec(rows_a + [row], rows_b, row, True)

    yield from rec([top], [], top, True)


def enumerate_short(muprime):
    """All strict three-row interleaving arrays with top row from muprime."""
    muprime = tuple(muprime)
    r = len(muprime)
    top = top_row(muprime)
    if any(top[k] <= top[k + 1] for k in range(r - 1)):
        return
    for b1 in _interleavings(top, r):
        for a1 in _interleavings(b1, r - 1, last_floor=1):
            yield ShortGTPattern(r, top, b1, a1)


# -- the circle subset ------------------------------------------------------


def gt_circle_by_cstat(p: GTPattern) -> bool:
    """Membership by definition: every generic entry has an even statistic."""
    return all(
        p.c_stat(kind, i, j) % 2 == 0
        for (kind, i, j), cls in p.classify().items()
        if cls == GENERIC
    )


def gt_circle_by_row_parity(p: GTPattern) -> bool:
    """The two-condition characterization (valid over doubled top rows).

    With parity reference mu_r = a_{0,r}: (1) all a-entries below the top
    row match that parity; (2) each b-row has at most one mismatched entry
    b_{i,j0}, and to its right b_{i,j} = a_{i,j} = a_{i-1,j} for all j > j0.
    """
    r = p.rank
    ref = p.arows[0][-1] % 2
    for i in range(1, r):
        for j in range(i + 1, r + 1):
            if p.a(i, j) % 2 != ref:
                return False
    for i in range(1, r + 1):
        bad = [j for j in range(i, r + 1) if p.b(i, j) % 2 != ref]
        if len(bad) > 1:
            return False
        if bad:
            j0 = bad[0]
            for j in range(j0 + 1, r + 1):
                if not (p.b(i, j) == p.a(i, j) == p.a(i - 1, j)):
                    return False
    return True


def in_gt_circle(p: GTPattern, cross_check: bool = True) -> bool:
    """Circle-subset membership via the statistic-parity definition.

    When the top row comes from a doubled vector (all mu_j even for j < r)
    the row-parity characterization must agree; disagreement is an internal
    failure.  Outside that family only the parity definition applies.
    """
    value = gt_circle_by_cstat(p)
    if cross_check:
        mu = mu_of_top_row(p.arows[0])
        if all(m % 2 == 0 for m in mu[:-1]):
            alt = gt_circle_by_row_parity(p)
            if alt != value:
                raise RuntimeError(
                    f"circle-membership characterizations disagree on {p}"
                )
    return value


def enumerate_circle(mu):
    for p in enumerate_strict(mu):
        if in_gt_circle(p):
            yield p


# -- weights ----------------------------------------------------------------


def g_weight(p: GTPattern) -> LaurentPoly:
    """(-1)^(max1/2) t^(max - max1/2) (1+t)^gen, as a rank-r polynomial in t."""
    return _g_from_stats(p.stats(), p.rank)


def short_g_weight(p1: ShortGTPattern) -> LaurentPoly:
    """Same statistics formula applied to a three-row array."""
    return _g_from_stats(p1.stats(), p1.rank)


def _g_from_stats(st: PatternStats, rank: int) -> LaurentPoly:
    if st.max1 % 2:
        raise ValueError(f"odd max1 statistic ({st.max1}); restrict to the circle subset")
    sign = -1 if (st.max1 // 2) % 2 else 1
    base_t = st.max - st.max1 // 2
    terms = {}
    for jj in range(st.gen + 1):
        terms[Monomial((0,) * rank, base_t + jj, 0)] = sign * comb(st.gen, jj)
    return LaurentPoly(terms, rank)


def tokuyama_rhs(lam, r: int = None) -> LaurentPoly:
    """Sum of G(P) z^(-wt(P)/2) over the circle subset for top row v(lam+rho).

    Asserts the evenness of max1 on every contributing pattern.
    """
    lam = tuple(lam)
    if r is None:
        r = len(lam)
    mu = tuple(l + 1 for l in lam)
    terms = {}
    for p in enumerate_circle(upsilon(mu)):
        st = p.stats()
        assert st.max1 % 2 == 0, f"odd max1 in circle subset: {p}"
        sign = -1 if (st.max1 // 2) % 2 else 1
        base_t = st.max - st.max1 // 2
        zexp = tuple(-w for w in p.wt())  # doubled exponent of -wt/2
        for jj in range(st.gen + 1):
            key = Monomial(zexp, base_t + jj, 0)
            val = terms.get(key, 0) + sign * comb(st.gen, jj)
            if val:
                terms[key] = val
            else:
                del terms[key]
    return LaurentPoly._make(terms, r)


# -- splitting ---------------------------------------------------------------


def split(p: GTPattern):
    """Top three rows plus the rank r-1 tail below them."""
    r = p.rank
    if r < 2:
        raise ValueError("split needs rank >= 2")
    p1 = ShortGTPattern(r, p.arows[0], p.brows[0], p.arows[1])
    tail = GTPattern(r - 1, tuple(p.arows[1:]), tuple(p.brows[1:]))
    return p1, tail


def join(p1: ShortGTPattern, tail: GTPattern) -> GTPattern:
    if tail.rank != p1.rank - 1 or p1.a1 != tail.arows[0]:
        raise ValueError("short pattern and tail do not match")
    return GTPattern(p1.rank, (p1.a0,) + tail.arows, (p1.b1,) + tail.brows)
