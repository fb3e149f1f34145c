"""The two-sided space Z, duality, and counting."""

from fractions import Fraction

import pytest

from conftest import GRID, GRID_IDS, make_ic
from liepar import (RatVecModZ, central_fixed_points, count_z_blocks,
                    dual_tau, duality_check, enumerate_X, enumerate_Z,
                    langlands_count, sp2n_count, strong_real_forms,
                    twisted_involutions)


def rv(*entries):
    return RatVecModZ.reduce([Fraction(e) for e in entries])


def test_z_table_rank1():
    """The six pairs coupling the rank-1 simply connected group with its
    adjoint dual, as a multiset of (x^2, y^2, tau-word, fiber sizes)."""
    ic = make_ic("A1", "sc")
    pairs = enumerate_Z(ic)
    assert len(pairs) == 6
    rows = sorted(p.line() for p in pairs)
    assert rows == sorted([
        "0 2 0 0 e",
        "1 2 0 0 e",
        "2 2 1/2 0 e",
        "3 2 1/2 0 e",
        "4 0 1/2 0 1",
        "4 1 1/2 0 1",
    ])
    # x-components with tau = e pair with the unique noncompact y
    for p in pairs:
        assert p.x_square == p.x.square and p.y_square == p.y.square


def test_dual_tau_brute_force():
    for t, iso, tw in GRID:
        ic = make_ic(t, iso, tw)
        dic = ic.dual
        dtbl = twisted_involutions(dic)
        for tau in twisted_involutions(ic).elements:
            neg_t = tuple(zip(*[tuple(-x for x in row)
                                for row in tau.theta_X]))
            matches = [s for s in dtbl.elements if s.theta_X == neg_t]
            assert len(matches) == 1
            assert dual_tau(tau, ic) == matches[0]


@pytest.mark.parametrize("t,iso,tw", GRID, ids=GRID_IDS)
def test_duality(t, iso, tw):
    report = duality_check(make_ic(t, iso, tw))
    assert report.ok, report.mismatches
    assert report.total == report.dual_total
    for (a, b), size in report.blocks.items():
        assert report.dual_blocks[(b, a)] == size


def test_duality_named_cases():
    # rank-1 sc/ad, rank-2 symplectic/orthogonal, rank-2 twisted pair
    for spec in [("A1", "sc", "c"), ("C2", "sc", "c"),
                 ("A2", "sc", (1, 0))]:
        report = duality_check(make_ic(*spec))
        assert report.ok
    r = duality_check(make_ic("C2", "sc"))
    assert r.total == 24


def test_sp2n_counts_small():
    assert [sp2n_count(n) for n in range(1, 5)] == [4, 18, 88, 460]


def test_sp2n_threads_agree():
    assert sp2n_count(3, threads=4) == 88


def test_count_z_blocks_golden():
    ic = make_ic("C2", "sc")
    minus = rv("1/2", 0)
    plus = rv(0, 0)
    rows, total = count_z_blocks(ic, minus, plus)
    assert total == 18
    tbl = twisted_involutions(ic)
    named = [(tbl.elements[i].tau_word_str() or "e", nx, ny)
             for i, nx, ny in rows]
    assert named == [("e", 4, 1), ("1", 1, 1), ("2", 2, 2),
                     ("1,2,1", 2, 2), ("2,1,2", 1, 1), ("1,2,1,2", 1, 4)]
    # thread count must not change anything
    rows4, total4 = count_z_blocks(ic, minus, plus, threads=4)
    assert (rows4, total4) == (rows, total)


def test_count_matches_enumeration():
    for t, iso, tw in GRID[:10]:
        ic = make_ic(t, iso, tw)
        rows, total = count_z_blocks(ic)
        assert total == len(enumerate_Z(ic))


def test_langlands_count_rank1():
    ic = make_ic("A1", "sc")
    table = enumerate_X(ic)
    forms = strong_real_forms(ic)
    split = langlands_count(ic, table.elements[forms[2].element_ids[0]])
    assert split.counts == {rv(0): 4}
    assert split.formula_total == 4 and split.note is None
    compact = langlands_count(ic, table.elements[0])
    assert compact.counts == {rv(0): 1}
    assert compact.formula_total == 1


def test_langlands_count_adjoint_note():
    ic = make_ic("A1", "ad")
    table = enumerate_X(ic)
    forms = strong_real_forms(ic)
    split = langlands_count(ic, table.elements[forms[1].element_ids[0]])
    assert split.counts == {rv(0): 2, rv("1/2"): 3}
    assert split.formula_total is None
    assert "rho-cover" in split.note


def test_restricted_z():
    ic = make_ic("A1", "sc")
    pairs = enumerate_Z(ic, restrict_x_square=rv("1/2"),
                        restrict_y_square=rv(0))
    assert len(pairs) == 4


def test_central_square_counts_consistency():
    # every pair square is a twist-fixed central element
    for t, iso, tw in GRID[:8]:
        ic = make_ic(t, iso, tw)
        zg = set(central_fixed_points(ic))
        zgd = set(central_fixed_points(ic.dual))
        for p in enumerate_Z(ic):
            assert p.x_square in zg and p.y_square in zgd
