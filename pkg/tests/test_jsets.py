"""Phi_J(w) and the quasi-parabolic family, with definition-level oracles."""

import itertools

import pytest

from specrep.errors import NotQuasiParabolic
from specrep.jsets import (check_quasi_parabolic, indices_of, mask_of,
                           phi_j_mask, phi_j_one_mask, quasi_parabolic_sets,
                           sub_root_mask, vj_of_d, wj_of_d)
from specrep.roots import root_system
from specrep.weyl import (enumerate_VJ, enumerate_W, enumerate_WJ, multiply,
                          project, subgroup)

# total number of quasi-parabolic sets over all J, frozen after one
# enumeration; the rank-2 values are re-derived by brute closure below
QP_TOTALS = {"A1": 4, "A2": 28, "A3": 388, "B2": 52, "B3": 1812, "C3": 1812}


def all_j(rank):
    for r in range(rank + 1):
        yield from (frozenset(c) for c in itertools.combinations(range(rank), r))


def test_mask_roundtrip():
    assert indices_of(mask_of([0, 3, 5])) == (0, 3, 5)
    assert mask_of(indices_of(0b101101)) == 0b101101
    assert indices_of(0) == ()


def test_sub_root_mask_counts(b2, a3):
    # span of one simple root holds exactly that root and its negative
    for rs in (b2, a3):
        for i in range(rs.rank):
            assert len(indices_of(sub_root_mask(rs, frozenset({i})))) == 2
        assert len(indices_of(sub_root_mask(rs, frozenset()))) == 0
        full = sub_root_mask(rs, frozenset(range(rs.rank)))
        assert len(indices_of(full)) == len(rs.roots)


@pytest.mark.parametrize("t", ["A2", "A3", "B2", "B3"])
def test_phi_j_oracle(t):
    """Phi_J(w) = w . (negatives outside span J), recomputed from scratch."""
    rs = root_system(t)
    neg = set(range(rs.num_positive, 2 * rs.num_positive))
    for j in all_j(rs.rank):
        span = set(indices_of(sub_root_mask(rs, j)))
        base = neg - span
        assert phi_j_one_mask(rs, j) == mask_of(base)
        for w in enumerate_WJ(rs, j):
            expect = mask_of(rs.act_root(w, r) for r in base)
            assert phi_j_mask(rs, j, w) == expect


@pytest.mark.parametrize("t", ["A2", "B2"])
def test_phi_j_coset_invariance(t):
    rs = root_system(t)
    for j in all_j(rs.rank):
        for w in enumerate_W(rs):
            rep = project(rs, w, j)
            for v in subgroup(rs, j):
                assert phi_j_mask(rs, j, multiply(w, v)) == phi_j_mask(rs, j, rep)


@pytest.mark.parametrize("t", sorted(QP_TOTALS))
def test_qp_counts_frozen(t):
    rs = root_system(t)
    total = sum(len(quasi_parabolic_sets(rs, j)) for j in all_j(rs.rank))
    assert total == QP_TOTALS[t]


@pytest.mark.parametrize("t", ["A1", "A2", "B2"])
def test_qp_brute_closure(t):
    """Rank <= 2: compare against intersections over all witness subsets."""
    rs = root_system(t)
    for j in all_j(rs.rank):
        gens = [phi_j_mask(rs, j, w) for w in enumerate_WJ(rs, j)]
        brute = set()
        for r in range(1, len(gens) + 1):
            for combo in itertools.combinations(gens, r):
                m = combo[0]
                for x in combo[1:]:
                    m &= x
                brute.add(m)
        got = {d.mask for d in quasi_parabolic_sets(rs, j)}
        assert got == brute


@pytest.mark.parametrize("t", ["A2", "A3", "B2", "B3"])
def test_qp_family_properties(t):
    rs = root_system(t)
    for j in all_j(rs.rank):
        sets = quasi_parabolic_sets(rs, j)
        masks = {d.mask for d in sets}
        assert len(masks) == len(sets)
        # closed under intersection, contains every generator
        for d1 in sets:
            for d2 in sets:
                assert d1.mask & d2.mask in masks
        for w in enumerate_WJ(rs, j):
            assert phi_j_mask(rs, j, w) in masks
        # witnesses actually cut the set out
        for d in sets:
            m = (1 << len(rs.roots)) - 1
            for w in d.witnesses:
                wm = phi_j_mask(rs, j, w)
                assert wm & d.mask == d.mask
                m &= wm
            assert m == d.mask
        # canonical order: size then lex
        keys = [(d.size, d.roots) for d in sets]
        assert keys == sorted(keys)


def test_check_quasi_parabolic(a2):
    j = frozenset({0})
    good = quasi_parabolic_sets(a2, j)[0].mask
    check_quasi_parabolic(a2, j, good)
    taken = {d.mask for d in quasi_parabolic_sets(a2, j)}
    bad = next(m for m in range(1 << len(a2.roots)) if m not in taken)
    with pytest.raises(NotQuasiParabolic):
        check_quasi_parabolic(a2, j, bad)


@pytest.mark.parametrize("t", ["A2", "B2", "A3"])
def test_wj_vj_of_d(t):
    rs = root_system(t)
    for j in all_j(rs.rank):
        vj = set(enumerate_VJ(rs, j))
        for d in quasi_parabolic_sets(rs, j):
            wjd = wj_of_d(rs, j, d.mask)
            assert set(wjd) == {w for w in enumerate_WJ(rs, j)
                                if phi_j_mask(rs, j, w) & d.mask == d.mask}
            assert set(vj_of_d(rs, j, d.mask)) == set(wjd) & vj
            assert set(d.witnesses) <= set(wjd)
        # the empty set is always quasi-parabolic and pulls in everything
        assert wj_of_d(rs, j, 0) == enumerate_WJ(rs, j)
