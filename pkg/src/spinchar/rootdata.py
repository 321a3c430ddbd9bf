"""Root and weight bookkeeping for the B_r / C_r pair.

Weights of Spin(2r+1) are carried in e-vee coordinates (doubled integers,
see HalfInt).  The torus convention is z^(sum a_i e_i-vee) = prod z_i^(a_i),
fixed globally.  The character is computed by exact division of alternating
Weyl-group sums, which keeps it fully independent of the pattern machinery
it is later checked against.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .laurent import HalfInt, LaurentPoly, Monomial, prod


@dataclass(frozen=True)
class WeightVector:
    """e-vee coordinates, stored doubled (coords_twice[i] = 2 * coordinate)."""

    coords_twice: tuple

    @property
    def rank(self) -> int:
        return len(self.coords_twice)

    @property
    def coords(self) -> tuple:
        return tuple(HalfInt(c) for c in self.coords_twice)

    def is_spin_weight(self) -> bool:
        """All coordinates congruent mod 1: integer or all-half-integer."""
        parities = {c % 2 for c in self.coords_twice}
        return len(parities) <= 1

    def __add__(self, other: "WeightVector") -> "WeightVector":
        return WeightVector(
            tuple(a + b for a, b in zip(self.coords_twice, other.coords_twice))
        )

    def __str__(self):
        return "(" + ", ".join(str(HalfInt(c)) for c in self.coords_twice) + ")"


@dataclass(frozen=True)
class SignedPermutation:
    """Element of the hyperoctahedral group W(B_r): permutation plus signs."""

    perm: tuple  # perm[i] = image of i (0-based)
    signs: tuple  # entries +1 / -1

    def sign_character(self) -> int:
        par = 1
        seen = [False] * len(self.perm)
        for i in range(len(self.perm)):
            if seen[i]:
                continue
            length = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = self.perm[j]
                length += 1
            if length % 2 == 0:
                par = -par
        for s in self.signs:
            par *= s
        return par

    def act_twice(self, coords_twice: tuple) -> tuple:
        """Action on doubled e-vee coordinates: permute then flip signs."""
        out = [0] * len(coords_twice)
        for i, c in enumerate(coords_twice):
            out[self.perm[i]] = self.signs[self.perm[i]] * c
        return tuple(out)


def weyl_group(r: int):
    """All 2^r r! signed permutations, deterministic order."""
    for perm in itertools.permutations(range(r)):
        for signs in itertools.product((1, -1), repeat=r):
            yield SignedPermutation(perm, signs)


def lambda_to_evee(lam, r: int = None) -> WeightVector:
    """Weight sum(lam_i eps_i) in e-vee coordinates.

    Coordinate j is sum(lam_i for j <= i < r) + lam_r / 2, from the
    fundamental weights eps_i = e_1-vee + ... + e_i-vee (i < r) and
    eps_r = (1/2) sum of all e_j-vee.
    """
    lam = tuple(lam)
    if r is None:
        r = len(lam)
    if len(lam) != r:
        raise ValueError("length of lambda must equal the rank")
    coords = []
    for j in range(r):  # 0-based coordinate j+1
        twice = 2 * sum(lam[j : r - 1]) + lam[r - 1]
        coords.append(twice)
    return WeightVector(tuple(coords))


def rho(r: int) -> WeightVector:
    """Half-sum of positive roots: coordinates (r - j + 1/2) for j = 1..r."""
    if r < 1:
        raise ValueError("rank must be >= 1")
    return WeightVector(tuple(2 * (r - j) + 1 for j in range(1, r + 1)))


def upsilon(mu) -> tuple:
    """Doubling map (mu_1, ..., mu_r) -> (2 mu_1, ..., 2 mu_{r-1}, mu_r)."""
    mu = tuple(mu)
    return tuple(2 * m for m in mu[:-1]) + (mu[-1],)


def upsilon_inverse(mu) -> tuple:
    mu = tuple(mu)
    if any(m % 2 for m in mu[:-1]):
        raise ValueError(f"{mu} is not in the image of the doubling map")
    return tuple(m // 2 for m in mu[:-1]) + (mu[-1],)


def deformed_denominator(r: int) -> LaurentPoly:
    """The type-B deformed Weyl denominator D(z; t).

    z^(-rho) times the product of (1 + t z^alpha) over the positive roots
    z_i, z_i z_j^{-1}, z_i z_j (i < j), fully expanded.
    """
    if r < 1:
        raise ValueError("rank must be >= 1")
    one = LaurentPoly.one(r)
    t = LaurentPoly.t_var(r)
    factors = []
    for i in range(1, r + 1):
        factors.append(one + t * LaurentPoly.z_var(r, i))
    for i in range(1, r + 1):
        for j in range(i + 1, r + 1):
            zi, zj = LaurentPoly.z_var(r, i), LaurentPoly.z_var(r, j)
            factors.append(one + t * zi * zj.inverse_monomial())
            factors.append(one + t * zi * zj)
    prefix = LaurentPoly.monomial(
        r, zexp=[Fraction(-(2 * (r - i) + 1), 2) for i in range(1, r + 1)]
    )
    return prefix * prod(factors, r)


def weyl_numerator(nu: WeightVector, r: int = None) -> LaurentPoly:
    """Alternating sum over the Weyl group: sum sgn(w) z^{w(nu)}.

    Requires nu strictly dominant (nu_1 > ... > nu_r > 0); otherwise the
    sum vanishes or terms collide and we refuse.
    """
    coords = nu.coords_twice
    if r is None:
        r = len(coords)
    if len(coords) != r:
        raise ValueError("rank mismatch")
    if any(coords[i] <= coords[i + 1] for i in range(r - 1)) or coords[-1] <= 0:
        raise ValueError(f"{nu} is not strictly dominant")
    terms = {}
    for w in weyl_group(r):
        mono = Monomial(w.act_twice(coords), 0, 0)
        sgn = w.sign_character()
        terms[mono] = terms.get(mono, 0) + sgn
    return LaurentPoly(terms, r)


@lru_cache(maxsize=None)
def _character_cached(lam: tuple, r: int) -> LaurentPoly:
    nu = lambda_to_evee([l + 1 for l in lam], r)
    return weyl_numerator(nu, r).div_exact(weyl_numerator(rho(r), r))


def character(lam, r: int = None) -> LaurentPoly:
    """Character of the irreducible Spin(2r+1) highest-weight representation.

    lam is given in the fundamental-weight basis (nonnegative integers).
    Computed as the exact quotient N(lam + rho) / N(rho).
    """
    lam = tuple(lam)
    if r is None:
        r = len(lam)
    if any(l < 0 for l in lam):
        raise ValueError("lambda must be dominant (nonnegative coordinates)")
    return _character_cached(lam, r)


def weyl_dimension(lam, r: int = None) -> int:
    """Dimension of the lam representation by the Weyl dimension formula.

    Independent oracle for character(lam) evaluated at z = (1, ..., 1):
    product over positive roots of <lam+rho, alpha> / <rho, alpha>.
    """
    lam = tuple(lam)
    if r is None:
        r = len(lam)
    nu = lambda_to_evee([l + 1 for l in lam], r).coords_twice
    rh = rho(r).coords_twice
    value = Fraction(1)
    for i in range(r):
        value *= Fraction(nu[i], rh[i])
        for j in range(i + 1, r):
            value *= Fraction(nu[i] ** 2 - nu[j] ** 2, rh[i] ** 2 - rh[j] ** 2)
    assert value.denominator == 1
    return int(value)
