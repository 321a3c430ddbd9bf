import itertools

import pytest

from spinchar.gtpatterns import (
    GTPattern,
    enumerate_strict,
    g_weight,
    in_gt_circle,
    tokuyama_rhs,
)
from spinchar.laurent import Monomial
from spinchar.rootdata import upsilon
from spinchar.tableaux import (
    Tableau,
    barred,
    corollary_rhs,
    from_gt,
    in_st_circle,
    statistics,
    symbol_name,
    tableau_term,
    to_gt,
    unbarred,
)
from tests.test_gtpatterns import EXAMPLE


def test_example_tableau_rows():
    s = from_gt(EXAMPLE)
    s.validate()
    names = [[symbol_name(c) for c in row] for row in s.rows]
    assert names[0] == ["1", "1", "1", "2'", "2'", "3", "3", "4", "4", "5'", "5'"]
    assert names[1] == ["2'", "2'", "2", "3", "3", "5'", "5'", "5", "5"]
    assert names[2] == ["3'", "4'", "4'", "5'", "5", "5", "5"]
    assert names[3] == ["4", "5'", "5'"]
    assert names[4] == ["5'"]


def test_example_statistics_dictionary():
    s = from_gt(EXAMPLE)
    st = statistics(s)
    pst = EXAMPLE.stats()
    assert st.str_total == 13
    assert st.l_values == (1, 2, 3, 4, 3)
    assert st.hgtbar == -6
    assert pst.gen == st.str_total - 5
    assert pst.max == st.hgtbar + 15
    assert pst.max1 // 2 == 15 - st.l_total
    assert st.wt == EXAMPLE.wt()
    assert in_st_circle(s)
    assert to_gt(s, 5) == EXAMPLE


def test_rank1_bijection_rule():
    p = GTPattern(1, ((5,),), ((2,),))
    s = from_gt(p)
    assert s.rows == ((barred(1),) * 2 + (unbarred(1),) * 3,)
    assert to_gt(s, 1) == p


def test_empty_tableau():
    p = GTPattern(1, ((0,),), ((0,),))
    s = from_gt(p)
    assert s.rows == ()
    assert to_gt(s, 1) == p


def test_round_trip_and_circle_agreement():
    for mu in [(1, 1), (2, 2), (3, 2), (2, 1, 1)]:
        for p in enumerate_strict(upsilon(mu)):
            s = from_gt(p)
            s.validate()
            assert to_gt(s, p.rank) == p
            assert in_st_circle(s) == in_gt_circle(p)


def test_condition1_violation():
    # odd number of 2-family entries in row 1: outside both circle subsets
    p = GTPattern(2, ((4, 2), (1,)), ((3, 1), (0,)))
    p.validate()
    s = from_gt(p)
    counts = s.row_counts(barred(2))
    counts2 = s.row_counts(unbarred(2))
    assert (counts[0] + counts2[0]) % 2 == 1
    assert not in_st_circle(s)
    assert not in_gt_circle(p)


def test_diagonal_condition_in_validate():
    with pytest.raises(AssertionError):
        Tableau(2, ((barred(2), barred(2)), (unbarred(2),))).validate()


def test_term_match_and_aggregate():
    for lam in itertools.product(range(2), repeat=2):
        r = 2
        mu = tuple(l + 1 for l in lam)
        assert corollary_rhs(lam, r) == tokuyama_rhs(lam, r)
        for p in enumerate_strict(upsilon(mu)):
            s = from_gt(p)
            if not in_gt_circle(p):
                assert not in_st_circle(s)
                continue
            expected = g_weight(p).shift(Monomial(tuple(-w for w in p.wt()), 0, 0))
            assert tableau_term(s) == expected


def test_pretty_is_shifted():
    s = from_gt(EXAMPLE)
    lines = s.pretty().splitlines()
    assert len(lines) == 5
    indents = [len(line) - len(line.lstrip()) for line in lines]
    assert indents == sorted(indents)
