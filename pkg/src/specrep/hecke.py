"""Mod-p Hecke operators on the V^J basis and the simplicity checks.

Vectors are rows indexed by enumerate_VJ order; operators act on the
right.  The T_s action on a basis vector g_w is a three-case table:

    (a) (sw)^J = w               ->  0
    (b) l((sw)^J) > l(w)         ->  g_{sw}    (sw lands back in V^J)
    (c) l((sw)^J) < l(w)         ->  -g_w

and an Omega element u acts by g_w -> normal form of g_{(uw)^J}.
Entries are kept as canonical residues in [0, p).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .chains import omega_group, require_omega, z_j
from .errors import CapExceeded
from .roots import RootSystem, Weyl
from .vjmod import normal_form_matrix
from .weyl import (JSet, enumerate_VJ, enumerate_WJ, flat, in_VJ, length,
                   longest_element, multiply, project, simple)

LINE_CAP = 1 << 20


@dataclass(frozen=True, eq=False)
class HeckeMatrix:
    """Matrix of one Hecke operator on the V^J basis, entries mod p."""

    j: JSet
    p: int
    op: tuple
    mat: np.ndarray


@dataclass(frozen=True, eq=False)
class SimplicityReport:
    j: JSet
    p: int
    dim: int
    zj_in_every_orbit: bool
    generation_ok: bool
    is_simple: bool
    counterexample: tuple[int, ...] | None


def ts_case(rs: RootSystem, j: JSet, w: Weyl, s: int) -> str:
    """Which of the three action cases applies to (w, s); w must be in W^J.

    Asserts the trichotomy: the cases are exhaustive and exclusive, and in
    case (b) the product sw itself is the projection (and stays in V^J
    whenever w started there)."""
    sw = multiply(simple(rs, s), w)
    swj = project(rs, sw, j)
    lw, lswj = length(rs, w), length(rs, swj)
    a, b, c = swj == w, swj != w and lswj > lw, lswj < lw
    assert a + b + c == 1, "action trichotomy violated"
    if b:
        assert swj == sw, "raised projection must be sw itself"
        if in_VJ(rs, w, j):
            assert in_VJ(rs, sw, j), "case (b) must preserve V^J"
    return "a" if a else ("b" if b else "c")


def ts_matrix(rs: RootSystem, j: JSet, s: int, p: int) -> HeckeMatrix:
    """Matrix of T_s on the V^J basis over F_p.

    Integer entries before reduction lie in {-1, 0, 1}."""
    linalg.check_prime(p)
    vj = enumerate_VJ(rs, j)
    vidx = {w: i for i, w in enumerate(vj)}
    raw = np.zeros((len(vj), len(vj)), dtype=np.int64)
    se = simple(rs, s)
    for r, w in enumerate(vj):
        case = ts_case(rs, j, w, s)
        if case == "b":
            raw[r, vidx[multiply(se, w)]] = 1
        elif case == "c":
            raw[r, r] = -1
    assert np.abs(raw).max(initial=0) <= 1
    return HeckeMatrix(j, p, ("Ts", s), raw % p)


def omega_matrix(rs: RootSystem, j: JSet, u: Weyl, p: int) -> HeckeMatrix:
    """Matrix of the Omega operator of u: g_w -> normal form of g_{(uw)^J}."""
    linalg.check_prime(p)
    require_omega(rs, u)
    vj = enumerate_VJ(rs, j)
    wj = enumerate_WJ(rs, j)
    widx = {w: i for i, w in enumerate(wj)}
    nf = normal_form_matrix(rs, j)
    raw = np.zeros((len(vj), len(vj)), dtype=np.int64)
    for r, w in enumerate(vj):
        raw[r] = nf[widx[project(rs, multiply(u, w), j)]]
    mat = raw % p
    assert linalg.modp_rank(mat, p) == len(vj), "Omega operator must be invertible"
    return HeckeMatrix(j, p, ("Tu", flat(u)), mat)


def operator_set(rs: RootSystem, j: JSet, p: int,
                 include_omega: bool = False) -> list[np.ndarray]:
    """The T_s matrices, plus the non-identity Omega operators on demand."""
    ops = [ts_matrix(rs, j, s, p).mat for s in range(rs.rank)]
    if include_omega:
        ops += [omega_matrix(rs, j, u, p).mat
                for u in omega_group(rs) if u != rs.identity]
    return ops


def fingerprint_j(rs: RootSystem, j: JSet) -> frozenset[int]:
    """{s : l(s z^J) < l(z^J)}; distinguishes J from every other subset."""
    z = z_j(rs, j)
    lz = length(rs, z)
    return frozenset(s for s in range(rs.rank)
                     if length(rs, multiply(simple(rs, s), z)) < lz)


def recover_j(rs: RootSystem, fp: frozenset[int]) -> JSet:
    """Invert fingerprint_j: complement the set, then apply -w_Delta."""
    wd = longest_element(rs)
    out = set()
    for i in set(range(rs.rank)) - set(fp):
        target = rs.neg(rs.act_root(wd, rs.simple_indices[i]))
        out.add(rs.simple_indices.index(target))
    return frozenset(out)


def _echelon_append(basis: list[np.ndarray], pivots: list[int],
                    vec: np.ndarray, p: int) -> bool:
    """Reduce vec against the stored rows; append the normalized remainder.

    Stored rows have leading coefficient 1 at pairwise distinct pivots.
    Returns True when vec was independent (and got appended)."""
    v = vec % p
    for row, pv in zip(basis, pivots):
        c = int(v[pv])
        if c:
            v = (v - c * row) % p
    nz = np.nonzero(v)[0]
    if nz.size == 0:
        return False
    pv = int(nz[0])
    v = (v * pow(int(v[pv]), p - 2, p)) % p
    basis.append(v)
    pivots.append(pv)
    return True


def _in_span(basis: list[np.ndarray], pivots: list[int],
             vec: np.ndarray, p: int) -> bool:
    v = vec % p
    for row, pv in zip(basis, pivots):
        c = int(v[pv])
        if c:
            v = (v - c * row) % p
    return not v.any()


def span_closure(seeds: list[np.ndarray], ops: list[np.ndarray], p: int,
                 dim: int, target: np.ndarray | None = None):
    """Smallest op-stable subspace containing the seeds, as echelon rows.

    Stops early once the space is full or the target vector falls inside."""
    basis: list[np.ndarray] = []
    pivots: list[int] = []
    queue: list[np.ndarray] = []
    for v in seeds:
        if _echelon_append(basis, pivots, v, p):
            queue.append(basis[-1])
    qi = 0
    while qi < len(queue) and len(basis) < dim:
        if target is not None and _in_span(basis, pivots, target, p):
            break
        b = queue[qi]
        qi += 1
        for m in ops:
            if _echelon_append(basis, pivots, (b @ m) % p, p):
                queue.append(basis[-1])
    return basis, pivots


def _line_reps(dim: int, p: int) -> np.ndarray:
    """One representative per scalar line of F_p^dim: leading coefficient 1,
    ordered by leading position then tail digits (most significant first)."""
    blocks = []
    for lead in range(dim):
        tail = dim - lead - 1
        cnt = p ** tail
        arr = np.zeros((cnt, dim), dtype=np.int64)
        arr[:, lead] = 1
        r = np.arange(cnt)
        for k in range(tail):
            arr[:, lead + 1 + k] = (r // p ** (tail - 1 - k)) % p
        blocks.append(arr)
    return np.vstack(blocks)


def _indeco_scan(rs: RootSystem, j: JSet, p: int, cap: int,
                 include_omega: bool) -> tuple[bool, tuple[int, ...] | None]:
    """Does every line's orbit span contain g_{z^J}?  (ok, counterexample).

    Fast path: lines from which the z^J line is reachable by a chain of
    single operator applications are certified good in bulk; the leftovers
    get an honest per-line span closure."""
    linalg.check_prime(p)
    vj = enumerate_VJ(rs, j)
    dim = len(vj)
    if p ** dim > cap:
        raise CapExceeded(f"p^dim = {p}^{dim} exceeds the line cap {cap}")
    target = np.zeros(dim, dtype=np.int64)
    target[vj.index(z_j(rs, j))] = 1
    if dim == 1:
        return True, None
    ops = operator_set(rs, j, p, include_omega)
    lines = _line_reps(dim, p)
    n = lines.shape[0]
    weights = p ** np.arange(dim, dtype=np.int64)
    table = np.full(p ** dim, -1, dtype=np.int64)
    table[lines @ weights] = np.arange(n)
    inv = np.array([0] + [pow(c, p - 2, p) for c in range(1, p)], dtype=np.int64)
    succ = np.full((n, len(ops)), -1, dtype=np.int64)
    for k, m in enumerate(ops):
        ims = (lines @ m) % p
        nzmask = ims.any(axis=1)
        lead = np.argmax(ims != 0, axis=1)
        scale = inv[ims[np.arange(n), lead]]
        ims = (ims * scale[:, None]) % p
        succ[nzmask, k] = table[(ims @ weights)[nzmask]]
    good = np.zeros(n, dtype=bool)
    good[int(table[int(target @ weights)])] = True
    while True:
        reach = succ[~good]
        hit = np.zeros(reach.shape[0], dtype=bool)
        for k in range(len(ops)):
            col = reach[:, k]
            hit |= (col >= 0) & good[np.maximum(col, 0)]
        if not hit.any():
            break
        idx = np.nonzero(~good)[0]
        good[idx[hit]] = True
    for r in np.nonzero(~good)[0]:
        basis, pivots = span_closure([lines[int(r)]], ops, p, dim, target)
        if not _in_span(basis, pivots, target, p):
            return False, tuple(int(x) for x in lines[int(r)])
    return True, None


def check_indeco(rs: RootSystem, j: JSet, p: int, cap: int = LINE_CAP,
                 include_omega: bool = False) -> bool:
    """Every nonzero vector generates a T-stable subspace containing g_{z^J}.

    Checked by full line enumeration; T_s operators alone by default, which
    is the stronger statement (fewer operators, smaller orbit spans)."""
    ok, _ = _indeco_scan(rs, j, p, cap, include_omega)
    return ok


def check_simple(rs: RootSystem, j: JSet, p: int, cap: int = LINE_CAP,
                 include_omega: bool = True) -> SimplicityReport:
    """Simplicity of the module: the indecomposability scan plus generation
    of the full space from g_{z^J} under T_s and the Omega operators.

    include_omega=False is the documented negative control: generation is
    expected to fail then (the T_s orbit of g_{z^J} can be tiny)."""
    vj = enumerate_VJ(rs, j)
    dim = len(vj)
    zj_ok, bad = _indeco_scan(rs, j, p, cap, include_omega)
    target = np.zeros(dim, dtype=np.int64)
    target[vj.index(z_j(rs, j))] = 1
    ops = operator_set(rs, j, p, include_omega)
    basis, _ = span_closure([target], ops, p, dim)
    gen_ok = len(basis) == dim
    return SimplicityReport(j, p, dim, zj_ok, gen_ok, zj_ok and gen_ok, bad)
