"""The one-sided space X: goldens, moves, real Weyl groups, reduced
space, and whole-space properties."""

import random
import re
from fractions import Fraction

import pytest

from conftest import GRID, GRID_IDS, make_ic
from liepar import (NotImaginary, NotNoncompactImaginary, NotReal,
                    RatVecModZ, TorusSignature, cartans_for, cayley_down,
                    cayley_up, cross, cross_by_word, enumerate_form,
                    enumerate_X, grading, real_weyl, reduced_space,
                    strong_real_forms, twisted_involutions)
from props import (check_cayley_roundtrip, check_cross_action,
                   check_cross_involutive, check_fiber_power_two,
                   check_form_partition, check_grading_transfer,
                   check_projection_surjective)


def rv(*entries):
    return RatVecModZ.reduce([Fraction(e) for e in entries])


# ---------------------------------------------------------------------------
# decorated-graph isomorphism of KGB tables


ROW_RE = re.compile(r"^(\d+): (\d+) (\d+) \[([^\]]*)\] (.*)$")


def parse_rows(lines):
    rows = {}
    for line in lines:
        m = ROW_RE.match(line.strip())
        assert m, line
        i = int(m.group(1))
        status = tuple(m.group(4).split(","))
        k = len(status)
        rest = m.group(5).split()
        cross_ids = tuple(int(x) for x in rest[:k])
        cayley_ids = tuple(None if x == "*" else int(x)
                           for x in rest[k:2 * k])
        word = rest[2 * k] if len(rest) > 2 * k else "e"
        rows[i] = dict(length=int(m.group(2)), cartan=int(m.group(3)),
                       status=status, cross=cross_ids, cayley=cayley_ids,
                       word=word)
    return rows


def decoration(row):
    return (row["length"], row["cartan"], row["status"], row["word"])


def tables_isomorphic(lines_a, lines_b):
    """Is there a bijection matching every decoration and every cross /
    Cayley edge?"""
    a, b = parse_rows(lines_a), parse_rows(lines_b)
    if len(a) != len(b):
        return False
    if sorted(map(decoration, a.values())) != \
            sorted(map(decoration, b.values())):
        return False
    order = sorted(a)
    phi = {}

    def extend(pos):
        if pos == len(order):
            return True
        i = order[pos]
        used = set(phi.values())
        for j in b:
            if j in used or decoration(a[i]) != decoration(b[j]):
                continue
            ok = True
            for s in range(len(a[i]["status"])):
                ia, ib = a[i]["cross"][s], b[j]["cross"][s]
                if ia in phi and phi[ia] != ib:
                    ok = False
                    break
                ca, cb = a[i]["cayley"][s], b[j]["cayley"][s]
                if (ca is None) != (cb is None):
                    ok = False
                    break
                if ca is not None and ca in phi and phi[ca] != cb:
                    ok = False
                    break
            if not ok:
                continue
            phi[i] = j
            if extend(pos + 1):
                return True
            del phi[i]
        return False

    if not extend(0):
        return False
    # full edge check under the found bijection
    for i, row in a.items():
        for s in range(len(row["status"])):
            if phi[row["cross"][s]] != b[phi[i]]["cross"][s]:
                return False
            ca = row["cayley"][s]
            cb = b[phi[i]]["cayley"][s]
            if (ca is None) != (cb is None):
                return False
            if ca is not None and phi[ca] != cb:
                return False
    return True


# published 11-row listing for the split symplectic form in rank 2
SP4_SPLIT_ROWS = [
    "0: 0 0 [n,n] 1 2 6 4 e",
    "1: 0 0 [n,n] 0 3 6 5 e",
    "2: 0 0 [c,n] 2 0 * 4 e",
    "3: 0 0 [c,n] 3 1 * 5 e",
    "4: 1 2 [C,r] 8 4 * * 2",
    "5: 1 2 [C,r] 9 5 * * 2",
    "6: 1 1 [r,C] 6 7 * * 1",
    "7: 2 1 [n,C] 7 6 10 * 2,1,2",
    "8: 2 2 [C,n] 4 9 * 10 1,2,1",
    "9: 2 2 [C,n] 5 8 * 10 1,2,1",
    "10: 3 3 [r,r] 10 10 * * 1,2,1,2",
]

# published 4-row listing for the quaternionic form in rank 2
SP11_ROWS = [
    "0: 0 0 [n,c] 1 0 2 * e",
    "1: 0 0 [n,c] 0 1 2 * e",
    "2: 1 1 [r,C] 2 3 * * 1",
    "3: 2 1 [c,C] 3 2 * * 2,1,2",
]


# ---------------------------------------------------------------------------
# goldens


def test_sl2_table():
    ic = make_ic("A1", "sc")
    table = enumerate_X(ic)
    assert len(table) == 5
    assert table.lines() == [
        "0: 0 0 [c] 0 * e",
        "1: 0 0 [c] 1 * e",
        "2: 0 0 [n] 3 4 e",
        "3: 0 0 [n] 2 4 e",
        "4: 1 1 [r] 4 * 1",
    ]
    assert [x.torus_coord for x in table.elements] == \
        [rv(0), rv("1/2"), rv("1/4"), rv("3/4"), rv(0)]
    assert [x.square for x in table.elements] == \
        [rv(0), rv(0), rv("1/2"), rv("1/2"), rv("1/2")]
    forms = strong_real_forms(ic)
    assert sorted(len(f.element_ids) for f in forms) == [1, 1, 3]
    assert [f.quasisplit for f in forms] == [False, False, True]
    assert [real_weyl(x).total for x in table.elements] == [2, 2, 1, 1, 2]


def test_pgl2_table():
    ic = make_ic("A1", "ad")
    table = enumerate_X(ic)
    assert len(table) == 3
    assert [x.torus_coord for x in table.elements] == \
        [rv(0), rv("1/2"), rv(0)]
    forms = strong_real_forms(ic)
    assert sorted(len(f.element_ids) for f in forms) == [1, 2]
    assert [real_weyl(x).total for x in table.elements] == [2, 2, 2]


def test_sp4_forms_and_tables():
    ic = make_ic("C2", "sc")
    table = enumerate_X(ic)
    assert len(table) == 17
    forms = strong_real_forms(ic)
    assert [len(f.element_ids) for f in forms] == [1, 4, 1, 11]
    assert [f.quasisplit for f in forms] == [False, False, False, True]
    split = enumerate_form(ic, table.elements[forms[3].element_ids[0]])
    assert tables_isomorphic(split.lines(), SP4_SPLIT_ROWS)
    quat = enumerate_form(ic, table.elements[forms[1].element_ids[0]])
    assert tables_isomorphic(quat.lines(), SP11_ROWS)
    # row multisets match exactly
    def multiset(lines):
        return sorted(decoration(r) for r in parse_rows(lines).values())
    assert multiset(split.lines()) == multiset(SP4_SPLIT_ROWS)
    assert multiset(quat.lines()) == multiset(SP11_ROWS)


def test_iso_rejects_wrong_graph():
    bad = list(SP11_ROWS)
    bad[3] = "3: 2 1 [n,C] 3 2 * * 2,1,2"   # wrong status decoration
    assert not tables_isomorphic(SP11_ROWS, bad)
    bad2 = list(SP11_ROWS)
    bad2[0] = "0: 0 0 [n,c] 0 1 2 * e"      # wrong cross edge
    bad2[1] = "1: 0 0 [n,c] 1 0 2 * e"
    assert not tables_isomorphic(SP11_ROWS, bad2)


def test_sl3_twisted_table():
    # the unequal-rank inner class of type A2: one strong real form, the
    # split group; four elements, one per twisted involution
    ic = make_ic("A2", "sc", (1, 0))
    table = enumerate_X(ic)
    assert table.lines() == [
        "0: 0 0 [C,C] 1 2 * * e",
        "1: 1 0 [C,n] 0 1 * 3 1,2",
        "2: 1 0 [n,C] 2 0 3 * 2,1",
        "3: 2 1 [r,r] 3 3 * * 1,2,1",
    ]
    forms = strong_real_forms(ic)
    assert len(forms) == 1 and forms[0].quasisplit


def test_real_weyl_structure():
    ic = make_ic("C2", "sc")
    table = enumerate_X(ic)
    # a quaternionic length-0 element: its cross orbit in the base fiber
    # has size 2, so the stabilizer has index 2 in the imaginary Weyl
    # group of order 8
    forms = strong_real_forms(ic)
    x = table.elements[forms[1].element_ids[0]]
    info = real_weyl(x)
    assert info.imaginary_order == 8
    assert info.orbit_size == 2
    assert info.stab_imaginary == 4
    assert info.total == 4
    # split form: the split Cartan sees the whole Weyl group
    split_top = max((table.elements[i] for i in forms[3].element_ids),
                    key=lambda y: y.length)
    info2 = real_weyl(split_top)
    assert info2.total == info2.real_order == 8


@pytest.mark.parametrize("t,iso,tw", GRID, ids=GRID_IDS)
def test_real_weyl_brute_force(t, iso, tw):
    ic = make_ic(t, iso, tw)
    table = enumerate_X(ic)
    elements = ic.weyl.all_elements()
    for x in table.elements:
        brute = sum(1 for w in elements if cross_by_word(w.word, x) == x)
        assert brute == real_weyl(x).total


def test_cartans_for_split_sp4():
    ic = make_ic("C2", "sc")
    table = enumerate_X(ic)
    forms = strong_real_forms(ic)
    got = cartans_for(table.elements[forms[3].element_ids[0]])
    assert got == ((0, TorusSignature(0, 2, 0)),
                   (1, TorusSignature(0, 0, 1)),
                   (2, TorusSignature(1, 1, 0)),
                   (3, TorusSignature(2, 0, 0)))
    # the quaternionic form misses the split Cartan
    got1 = cartans_for(table.elements[forms[1].element_ids[0]])
    assert [c for c, _ in got1] == [0, 1]


def test_reduced_space_sl2():
    rs = reduced_space(make_ic("A1", "sc"))
    assert rs.z0 == (rv(0), rv("1/2"))
    assert rs.slices[rv(0)] == (0, 1)
    assert rs.slices[rv("1/2")] == (2, 3, 4)


def test_reduced_space_pgl2():
    rs = reduced_space(make_ic("A1", "ad"))
    assert rs.z0 == (rv(0),)
    assert rs.slices[rv(0)] == (0, 1, 2)


def test_move_errors():
    table = enumerate_X(make_ic("A1", "sc"))
    compact, noncpt, split = table.elements[0], table.elements[2], \
        table.elements[4]
    with pytest.raises(NotNoncompactImaginary):
        cayley_up(0, compact)
    with pytest.raises(NotReal):
        cayley_down(0, compact)
    with pytest.raises(NotImaginary):
        grading(split, 0)
    assert grading(noncpt, 0) == 1
    assert grading(compact, 0) == 0
    # grading accepts the negative root too
    rd = table.ic.rd
    assert grading(compact, rd.negative_of(0)) == 0
    assert cayley_down(0, split) == (table.elements[2], table.elements[3])


def test_restricted_squares():
    ic = make_ic("A1", "sc")
    table = enumerate_X(ic, squares=[rv("1/2")])
    assert len(table) == 3
    with pytest.raises(ValueError):
        enumerate_X(ic, squares=[rv("1/3")])


def test_lengths_monotone_and_seeded_at_zero():
    for t, iso, tw in GRID:
        table = enumerate_X(make_ic(t, iso, tw))
        lengths = [x.length for x in table.elements]
        assert lengths == sorted(lengths)
        assert lengths[0] == 0


# ---------------------------------------------------------------------------
# property suites (each checker asserts internally and returns its case
# count; totals are accumulated per suite in test_acceptance)


@pytest.mark.parametrize("t,iso,tw", GRID, ids=GRID_IDS)
def test_cross_involutive(t, iso, tw):
    assert check_cross_involutive(make_ic(t, iso, tw)) > 0


@pytest.mark.parametrize("t,iso,tw", GRID, ids=GRID_IDS)
def test_cross_is_group_action(t, iso, tw):
    ic = make_ic(t, iso, tw)
    rng = random.Random(hash((t, iso, str(tw))) & 0xffff)
    elements = ic.weyl.all_elements()
    pairs = [(rng.choice(elements), rng.choice(elements)) for _ in range(5)]
    assert check_cross_action(ic, pairs) > 0


@pytest.mark.parametrize("t,iso,tw", GRID, ids=GRID_IDS)
def test_cayley_roundtrips(t, iso, tw):
    check_cayley_roundtrip(make_ic(t, iso, tw))


@pytest.mark.parametrize("t,iso,tw", GRID, ids=GRID_IDS)
def test_grading_transfer(t, iso, tw):
    check_grading_transfer(make_ic(t, iso, tw))


@pytest.mark.parametrize("t,iso,tw", GRID, ids=GRID_IDS)
def test_fibers_are_two_groups(t, iso, tw):
    assert check_fiber_power_two(make_ic(t, iso, tw)) > 0


@pytest.mark.parametrize("t,iso,tw", GRID, ids=GRID_IDS)
def test_projection_onto_involutions_surjective(t, iso, tw):
    assert check_projection_surjective(make_ic(t, iso, tw)) > 0


@pytest.mark.parametrize("t,iso,tw", GRID, ids=GRID_IDS)
def test_forms_partition_X(t, iso, tw):
    assert check_form_partition(make_ic(t, iso, tw)) > 0


def test_dot_export():
    table = enumerate_X(make_ic("A1", "sc"))
    text = table.dot()
    assert text.startswith("digraph")
    assert 'n2 -> n4 [label="1"]' in text
    assert "style=dashed" in text
