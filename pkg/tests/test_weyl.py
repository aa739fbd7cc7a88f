"""Weyl group combinatorics against brute-force oracles.

The oracles here recompute lengths, projections and coset data from the
root action alone, so they are independent of the per-family formulas
used by the library.
"""

import itertools

import pytest

from specrep.roots import root_system
from specrep.weyl import (enumerate_VJ, enumerate_W, enumerate_WJ, flat,
                          group_order, in_VJ, in_WJ, inverse, inversion_roots,
                          left_descents, length, longest_element, minimal_reps,
                          multiply, project, reduced_word, simple, subgroup)

ORDERS = {"A1": 2, "A2": 6, "A3": 24, "B2": 8, "B3": 48, "C3": 48,
          "D4": 192, "A2xB2": 48}

SMALL = ["A1", "A2", "A3", "B2", "B3", "C3"]

# V^J sizes keyed by 1-based J; the two ends are forced (V^0 = {w_Delta}
# and W^Delta = {e}), the middle values were enumerated by hand
B2_VJ = {(): 1, (1,): 3, (2,): 3, (1, 2): 1}
A2_VJ = {(): 1, (1,): 2, (2,): 2, (1, 2): 1}


def all_j(rank):
    for r in range(rank + 1):
        yield from (frozenset(c) for c in itertools.combinations(range(rank), r))


@pytest.mark.parametrize("t", sorted(ORDERS))
def test_group_order(t):
    rs = root_system(t)
    w_all = enumerate_W(rs)
    assert len(w_all) == len(set(w_all)) == group_order(rs) == ORDERS[t]


@pytest.mark.parametrize("t", sorted(ORDERS))
def test_length_is_inversion_count(t):
    rs = root_system(t)
    for w in enumerate_W(rs):
        assert length(rs, w) == len(inversion_roots(rs, w))


@pytest.mark.parametrize("t", SMALL + ["D4"])
def test_group_axioms_and_inverse(t):
    rs = root_system(t)
    w_all = enumerate_W(rs)
    e = rs.identity
    for w in w_all[:24]:
        assert multiply(w, inverse(w)) == e
        assert multiply(inverse(w), w) == e
    a, b, c = w_all[1 % len(w_all)], w_all[-1], w_all[len(w_all) // 2]
    assert multiply(multiply(a, b), c) == multiply(a, multiply(b, c))


@pytest.mark.parametrize("t", sorted(ORDERS))
def test_longest_element(t):
    rs = root_system(t)
    wd = longest_element(rs)
    assert length(rs, wd) == rs.num_positive
    assert multiply(wd, wd) == rs.identity
    assert max(length(rs, w) for w in enumerate_W(rs)) == rs.num_positive
    # w_Delta sends every positive root to a negative one
    for i in range(rs.num_positive):
        assert rs.act_root(wd, i) >= rs.num_positive


@pytest.mark.parametrize("t", SMALL)
def test_project_is_coset_minimum(t):
    """(w)^J is the unique shortest element of wW_J: brute-forced here."""
    rs = root_system(t)
    for j in all_j(rs.rank):
        wj_group = subgroup(rs, j)
        for w in enumerate_W(rs):
            coset = [multiply(w, v) for v in wj_group]
            best = min(coset, key=lambda x: length(rs, x))
            assert sum(1 for x in coset
                       if length(rs, x) == length(rs, best)) == 1
            assert project(rs, w, j) == best


@pytest.mark.parametrize("t", SMALL + ["D4"])
def test_wj_enumeration(t):
    rs = root_system(t)
    for j in all_j(rs.rank):
        wj = enumerate_WJ(rs, j)
        assert len(wj) * len(subgroup(rs, j)) == group_order(rs)
        assert all(in_WJ(rs, w, j) for w in wj)
        # sorted by (length, flat) and starting at the identity
        keys = [(length(rs, w), flat(w)) for w in wj]
        assert keys == sorted(keys)
        assert wj[0] == rs.identity


@pytest.mark.parametrize("t", ["A2", "B2"])
def test_vj_sizes_frozen(t):
    rs = root_system(t)
    table = A2_VJ if t == "A2" else B2_VJ
    for jt, size in table.items():
        j = frozenset(i - 1 for i in jt)
        vj = enumerate_VJ(rs, j)
        assert len(vj) == size
        assert all(in_VJ(rs, w, j) for w in vj)


@pytest.mark.parametrize("t", sorted(ORDERS))
def test_vj_partition(t):
    """Summing |V^J| over all J recovers |W| exactly once."""
    rs = root_system(t)
    total = sum(len(enumerate_VJ(rs, j)) for j in all_j(rs.rank))
    assert total == group_order(rs)


@pytest.mark.parametrize("t", SMALL + ["D4", "A2xB2"])
def test_reduced_word(t):
    rs = root_system(t)
    for w in enumerate_W(rs):
        word = reduced_word(rs, w)
        assert len(word) == length(rs, w)
        acc = rs.identity
        for s in word:
            acc = multiply(acc, simple(rs, s))
        assert acc == w


@pytest.mark.parametrize("t", SMALL)
def test_left_descents(t):
    rs = root_system(t)
    for w in enumerate_W(rs):
        ds = left_descents(rs, w)
        for s in range(rs.rank):
            shorter = length(rs, multiply(simple(rs, s), w)) < length(rs, w)
            assert (s in ds) == shorter


def test_minimal_reps_b3(b3):
    j = frozenset({0})
    for k in [frozenset({0, 1}), frozenset({0, 2})]:
        reps = minimal_reps(b3, k, j)
        assert len(reps) == len(subgroup(b3, k)) // len(subgroup(b3, j))
        got = {multiply(r, v) for r in reps for v in subgroup(b3, j)}
        assert got == set(subgroup(b3, k))
