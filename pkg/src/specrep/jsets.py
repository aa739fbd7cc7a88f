"""Phi_J(w) root sets and the J-quasi-parabolic family of their intersections.

Root sets are bitmasks over RootSystem.roots indices.  Phi_J(1) is the set
of negative roots outside the sub-root system spanned by J; Phi_J(w) is its
image under w and only depends on the coset wW_J.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import NotQuasiParabolic
from .roots import RootSystem, Weyl
from .weyl import JSet, enumerate_VJ, enumerate_WJ, project


def mask_of(indices) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def indices_of(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def sub_root_mask(rs: RootSystem, j: JSet) -> int:
    """Roots lying in the span of the simple roots J (the sub-root system W_J.J)."""
    m = 0
    for r in rs.roots:
        if all(c == 0 or i in j for i, c in enumerate(r.coords)):
            m |= 1 << r.index
    return m


def phi_j_one_mask(rs: RootSystem, j: JSet) -> int:
    neg = ((1 << 2 * rs.num_positive) - 1) ^ ((1 << rs.num_positive) - 1)
    return neg & ~sub_root_mask(rs, j)


def phi_j_mask(rs: RootSystem, j: JSet, w: Weyl) -> int:
    """Bitmask of Phi_J(w) = w . Phi_J(1); cached per coset representative."""
    cache = rs.cache.setdefault(("phimask", j), {})
    rep = project(rs, w, j)
    got = cache.get(rep)
    if got is None:
        got = mask_of(rs.act_root(rep, ri) for ri in indices_of(phi_j_one_mask(rs, j)))
        cache[rep] = got
    return got


@dataclass(frozen=True)
class QPSet:
    """One J-quasi-parabolic set with the witnesses whose Phi_J cut it out."""

    mask: int
    roots: tuple[int, ...]
    witnesses: tuple[Weyl, ...]

    @property
    def size(self) -> int:
        return len(self.roots)


def quasi_parabolic_sets(rs: RootSystem, j: JSet) -> tuple[QPSet, ...]:
    """All distinct intersections of Phi_J(w)'s, size-nondecreasing then lex."""
    key = ("qp", j)
    got = rs.cache.get(key)
    if got is not None:
        return got
    family: dict[int, tuple[Weyl, ...]] = {}
    for w in enumerate_WJ(rs, j):
        m = phi_j_mask(rs, j, w)
        if m not in family:
            family[m] = (w,)
    queue = deque(sorted(family))
    while queue:
        m = queue.popleft()
        for m2, wit2 in list(family.items()):
            c = m & m2
            if c not in family:
                family[c] = tuple(dict.fromkeys(family[m] + wit2))
                queue.append(c)
    sets = [QPSet(m, indices_of(m), wits) for m, wits in family.items()]
    sets.sort(key=lambda d: (d.size, d.roots))
    out = tuple(sets)
    rs.cache[key] = out
    return out


def check_quasi_parabolic(rs: RootSystem, j: JSet, mask: int) -> None:
    if mask not in {d.mask for d in quasi_parabolic_sets(rs, j)}:
        raise NotQuasiParabolic(f"mask {mask:#x} for J={sorted(j)}")


def wj_of_d(rs: RootSystem, j: JSet, mask: int) -> tuple[Weyl, ...]:
    """W^J(D): minimal representatives whose Phi_J(w) contains D."""
    cache = rs.cache.setdefault(("wjd", j), {})
    got = cache.get(mask)
    if got is None:
        got = tuple(w for w in enumerate_WJ(rs, j)
                    if phi_j_mask(rs, j, w) & mask == mask)
        cache[mask] = got
    return got


def vj_of_d(rs: RootSystem, j: JSet, mask: int) -> tuple[Weyl, ...]:
    vj = set(enumerate_VJ(rs, j))
    return tuple(w for w in wj_of_d(rs, j, mask) if w in vj)
