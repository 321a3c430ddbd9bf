import itertools

import pytest

from spinchar.gtpatterns import (
    GTPattern,
    ShortGTPattern,
    enumerate_circle,
    enumerate_short,
    enumerate_strict,
    g_weight,
    gt_circle_by_cstat,
    gt_circle_by_row_parity,
    in_gt_circle,
    join,
    mu_of_top_row,
    short_g_weight,
    split,
    tokuyama_rhs,
    top_row,
)
from spinchar.laurent import LaurentPoly, Monomial
from spinchar.rootdata import (
    deformed_denominator,
    lambda_to_evee,
    rho,
    upsilon,
    weyl_numerator,
)

# the running example: rank 5, top parameter (2,2,4,2,1)
EXAMPLE = GTPattern(
    5,
    arows=((11, 9, 7, 3, 1), (9, 5, 3, 1), (7, 5, 1), (5, 3), (3,)),
    brows=((11, 7, 4, 3, 1), (7, 5, 3, 0), (5, 3, 1), (5, 2), (0,)),
)


def test_top_row():
    assert top_row((2, 2, 4, 2, 1)) == (11, 9, 7, 3, 1)
    assert top_row((8, 3)) == (11, 3)
    assert top_row((0, 0, 0)) == (0, 0, 0)
    assert mu_of_top_row((11, 9, 7, 3, 1)) == (2, 2, 4, 2, 1)


def test_enumerate_rank1():
    pats = list(enumerate_strict((1,)))
    assert [p.brows[0][0] for p in pats] == [1, 0]
    assert len(list(enumerate_strict((0,)))) == 1  # the all-zero rank-1 pattern


def test_enumerate_deterministic_and_valid():
    pats = list(enumerate_strict((8, 3)))
    assert pats == list(enumerate_strict((8, 3)))
    for p in pats:
        p.validate()


def test_section7_restricted_patterns():
    # lower rows (11, b, 11, 11) inside top row (11, 3): b in {0,1,2,3}
    found = []
    for p in enumerate_strict((8, 3)):
        if p.brows[0][0] == 11 and p.arows[1] == (11,) and p.brows[1] == (11,):
            found.append(p.brows[0][1])
            assert in_gt_circle(p)
            assert p.wt()[1] == -11
            assert p.wt()[0] == 3 - 2 * p.brows[0][1]
    assert sorted(found) == [0, 1, 2, 3]


def test_example_statistics():
    EXAMPLE.validate()
    st = EXAMPLE.stats()
    assert (st.gen, st.max, st.max1) == (8, 9, 4)
    odd_maximal = {
        key
        for key, cls in EXAMPLE.classify().items()
        if cls == "maximal" and EXAMPLE.c_stat(*key) % 2
    }
    assert odd_maximal == {("b", 1, 4), ("b", 1, 5), ("a", 1, 4), ("a", 1, 5)}
    assert in_gt_circle(EXAMPLE)
    assert g_weight(EXAMPLE) == LaurentPoly.monomial(5, texp=7) * (
        (LaurentPoly.one(5) + LaurentPoly.t_var(5)) ** 8
    )


def test_rank1_c_stat_and_weights():
    for mu1, b in [(3, 0), (3, 1), (3, 3)]:
        p = GTPattern(1, ((mu1,),), ((b,),))
        assert p.c_stat("b", 1, 1) == 0
        g = g_weight(p)
        one, t = LaurentPoly.one(1), LaurentPoly.t_var(1)
        if b == 0:
            assert g == one
        elif b == mu1:
            assert g == t
        else:
            assert g == one + t
        assert p.wt() == (mu1 - 2 * b,)


def test_rank1_zero_pattern_is_minimal():
    p = GTPattern(1, ((0,),), ((0,),))
    st = p.stats()
    assert (st.gen, st.max) == (0, 0)
    assert g_weight(p) == LaurentPoly.one(1)


def test_circle_equivalence_on_doubled_tops():
    for mu in itertools.product(range(4), repeat=2):
        for p in enumerate_strict(upsilon(mu)):
            assert gt_circle_by_cstat(p) == gt_circle_by_row_parity(p)
    for mu in itertools.product(range(3), repeat=3):
        for p in enumerate_strict(upsilon(mu)):
            assert gt_circle_by_cstat(p) == gt_circle_by_row_parity(p)


def test_max1_even_on_circle():
    for mu in [(2, 2), (3, 2), (4, 3), (2, 2, 1)]:
        for p in enumerate_circle(upsilon(mu)):
            assert p.stats().max1 % 2 == 0


def test_diagonal_condition_enforced():
    # interleaving alone would admit (4,2 / 4,0 / 0 / 0); the family must not
    with pytest.raises(AssertionError):
        GTPattern(2, ((4, 2), (0,)), ((4, 0), (0,))).validate()
    assert all(p.arows[1][-1] >= 1 for p in enumerate_strict((2, 2)))


def tokuyama_identity_holds(lam, r):
    mu = tuple(l + 1 for l in lam)
    lhs = deformed_denominator(r) * weyl_numerator(lambda_to_evee(mu), r)
    rhs = tokuyama_rhs(lam, r) * weyl_numerator(rho(r), r)
    return lhs == rhs


def test_tokuyama_rank1():
    for lam in range(4):
        assert tokuyama_identity_holds((lam,), 1)


def test_tokuyama_rank2_spot():
    assert tokuyama_identity_holds((3, 2), 2)
    assert tokuyama_identity_holds((0, 1), 2)


def test_split_join_and_multiplicativity():
    for lam in itertools.product(range(2), repeat=2):
        mu = tuple(l + 1 for l in lam)
        for p in enumerate_circle(upsilon(mu)):
            p1, tail = split(p)
            assert join(p1, tail) == p
            assert p.wt()[0] == p1.wt1()
            assert p.wt()[1:] == tail.wt()
            assert g_weight(p) == short_g_weight(p1) * g_weight(tail).embed(2)


def test_short_patterns_match_full_at_rank1_style():
    # the three-row family at rank 2 has the same statistics as full rank-2
    for p in enumerate_strict((2, 2)):
        p1, _ = split(p)
        assert p1.stats() == ShortGTPattern(2, p.arows[0], p.brows[0], p.arows[1]).stats()


def test_enumerate_short_matches_split_images():
    mu = (2, 2)
    tops = {split(p)[0] for p in enumerate_strict(mu)}
    shorts = set(enumerate_short(mu))
    assert tops <= shorts  # every split image is an admissible short pattern


def test_json_dump_fields():
    import json

    rec = json.loads(EXAMPLE.to_json())
    assert rec["stats"] == [8, 9, 5, 4]
    assert rec["in_circle"] is True
    assert rec["wt"] == list(EXAMPLE.wt())
