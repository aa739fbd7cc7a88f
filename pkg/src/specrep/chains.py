"""The order <_J on W^J, witness search, the Omega subgroup, chain builders.

A chain step either left-multiplies by a simple reflection (raising length
by one) or left-multiplies by an element of the Omega subgroup

    W_Omega = {1} + {w_{Delta^(i)} w_Delta : highest-root coefficient of
                     alpha_i is 1, per factor},

taken factorwise for products.  weyllem2_chain links w_Delta to the
identity; lift_chain refines it modulo J and appends a reduced word."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import ChainInvalid, NotOmegaElement, NoWitness
from .roots import Block, RootSystem, Weyl
from .weyl import (JSet, enumerate_VJ, flat, length, longest_element,
                   multiply, project, projection_table, reduced_word)


def z_j(rs: RootSystem, j: JSet) -> Weyl:
    """The maximum of (W^J, <_J): w_Delta * w_J."""
    key = ("zJ", j)
    got = rs.cache.get(key)
    if got is None:
        got = multiply(longest_element(rs), longest_element(rs, j))
        rs.cache[key] = got
    return got


def successors(rs: RootSystem, j: JSet, w: Weyl) -> list[tuple[int, Weyl]]:
    """(s, (sw)^J) pairs with strictly larger projected length."""
    table = projection_table(rs, j)
    lw = length(rs, w)
    out = []
    for i in range(rs.rank):
        w2 = table[multiply(rs.simple_reflections[i], w)]
        if length(rs, w2) > lw:
            out.append((i, w2))
    return out


def leq_j(rs: RootSystem, j: JSet, a: Weyl, b: Weyl) -> bool:
    """a <=_J b: b reachable from a by projected-length-raising steps."""
    if a == b:
        return True
    seen = {a}
    frontier = [a]
    while frontier:
        new = []
        for w in frontier:
            for _, w2 in successors(rs, j, w):
                if w2 == b:
                    return True
                if w2 not in seen:
                    seen.add(w2)
                    new.append(w2)
        frontier = new
    return False


def upset(rs: RootSystem, j: JSet, a: Weyl) -> set[Weyl]:
    """All w with a <=_J w."""
    seen = {a}
    frontier = [a]
    while frontier:
        new = []
        for w in frontier:
            for _, w2 in successors(rs, j, w):
                if w2 not in seen:
                    seen.add(w2)
                    new.append(w2)
        frontier = new
    return seen


def weyllem1_witness(rs: RootSystem, j: JSet, w: Weyl) -> tuple[Weyl, int]:
    """(w', s) with w <_J w', l((sw)^J) < l(w), l((sw')^J) >= l(w').

    Exhaustive breadth-first search, smallest (chain length, s index) first;
    defined for w in V^J different from z_J."""
    table = projection_table(rs, j)
    vj = set(enumerate_VJ(rs, j))
    lw = length(rs, w)
    down = [i for i in range(rs.rank)
            if length(rs, table[multiply(rs.simple_reflections[i], w)]) < lw]
    seen = {w}
    frontier = [w]
    while frontier:
        new = []
        for v in frontier:
            for _, w2 in successors(rs, j, v):
                if w2 not in seen:
                    seen.add(w2)
                    new.append(w2)
        new.sort(key=lambda x: (length(rs, x), flat(x)))
        for wp in new:
            if wp in vj:
                lwp = length(rs, wp)
                for i in down:
                    if length(rs, table[multiply(rs.simple_reflections[i], wp)]) >= lwp:
                        return wp, i
        frontier = new
    raise NoWitness(f"no witness for {w} with J={sorted(j)}")


# --- the Omega subgroup ---


def omega_factor_table(rs: RootSystem) -> tuple[tuple[tuple[int, Weyl], ...], ...]:
    """Per factor: (defining simple index i, w_{Delta^(i)} w_Delta) pairs."""
    key = "omega_table"
    got = rs.cache.get(key)
    if got is not None:
        return got
    table = []
    for fi, fac in enumerate(rs.factors):
        delta_f = frozenset(range(fac.soff, fac.soff + fac.rank))
        w0f = longest_element(rs, delta_f)
        entries = []
        for i in rs.mark_one_simples(fi):
            u = multiply(longest_element(rs, delta_f - {i}), w0f)
            entries.append((i, u))
        table.append(tuple(entries))
    out = tuple(table)
    rs.cache[key] = out
    return out


def omega_group(rs: RootSystem) -> tuple[Weyl, ...]:
    """All elements of W_Omega (componentwise products, identity included)."""
    key = "omega"
    got = rs.cache.get(key)
    if got is not None:
        return got
    per_factor = [[rs.identity] + [u for _, u in entries]
                  for entries in omega_factor_table(rs)]
    elems = set()
    for combo in itertools.product(*per_factor):
        u = rs.identity
        for x in combo:
            u = multiply(u, x)
        elems.add(u)
    out = tuple(sorted(elems, key=lambda w: (length(rs, w), flat(w))))
    rs.cache[key] = out
    rs.cache["omega_set"] = frozenset(out)
    return out


def is_omega(rs: RootSystem, u: Weyl) -> bool:
    omega_group(rs)
    return u in rs.cache["omega_set"]


def require_omega(rs: RootSystem, u: Weyl) -> Weyl:
    if not is_omega(rs, u):
        raise NotOmegaElement(f"{u}")
    return u


# --- explicit chains ---


@dataclass(frozen=True)
class ChainStep:
    kind: str             # "s" or "omega"
    index: int | None     # global simple index for s-steps
    elt: Weyl | None      # Omega element for omega-steps
    frm: Weyl
    to: Weyl


def _rot(l: int, i: int) -> Block:
    return tuple(range(i + 1, l + 2)) + tuple(range(1, i + 1))


def _chain_a(l: int) -> list[tuple[str, object]]:
    steps: list[tuple[str, object]] = []
    for i in range(1, l + 1):
        steps.append(("omega", _rot(l, i)))
        if i < l:
            for jj in range(i, 0, -1):
                for mu in range(jj, l - i + jj):
                    steps.append(("s", mu))
    return steps


def _a_descent(l: int, rho_macro: list[tuple[str, object]]) -> list[tuple[str, object]]:
    """Walk [l..1] down to the identity inside the positive-entry copy of A_{l-1}.

    Value transpositions (mu, mu+1) carry the local label l-mu; each rotation
    is rho applied l-i times."""
    steps: list[tuple[str, object]] = []
    m = l - 1
    for i in range(1, m + 1):
        for _ in range(l - i):
            steps.extend(rho_macro)
        if i < m:
            for jj in range(i, 0, -1):
                for mu in range(jj, m - i + jj):
                    steps.append(("s", l - mu))
    return steps


def _chain_bc(l: int, fam: str) -> list[tuple[str, object]]:
    steps: list[tuple[str, object]] = []
    if fam == "B":
        u = tuple(range(1, l)) + (-l,)
        for i in range(1, l + 1):
            steps.append(("omega", u))
            if i < l:
                for mu in range(1, l - i + 1):
                    steps.append(("s", mu))
        rho = [("s", k) for k in range(l, 0, -1)] + [("omega", u)]
    else:
        u = tuple(range(-l, 0))
        steps.append(("omega", u))
        rho = [("s", k) for k in range(l, 0, -1)] + [("omega", u), ("s", l), ("omega", u)]
    steps.extend(_a_descent(l, rho))
    return steps


def _chain_d(l: int) -> list[tuple[str, object]]:
    u1 = (-1,) + tuple(range(2, l)) + (-l,)
    if l % 2 == 0:
        ul = tuple(range(-l, 0))
    else:
        ul = (l,) + tuple(range(-(l - 1), 0))
    steps: list[tuple[str, object]] = [("omega", ul)]
    rho = [("s", l)] + [("s", k) for k in range(l - 2, 0, -1)] + [("omega", u1)]
    steps.extend(_a_descent(l, rho))
    return steps


def weyllem2_chain(rs: RootSystem) -> list[ChainStep]:
    """Chain from w_Delta to the identity, factor by factor."""
    key = "weyllem2"
    got = rs.cache.get(key)
    if got is not None:
        return got
    cur = longest_element(rs)
    out: list[ChainStep] = []
    for fi, fac in enumerate(rs.factors):
        if fac.family == "A":
            local = _chain_a(fac.rank)
        elif fac.family in "BC":
            local = _chain_bc(fac.rank, fac.family)
        else:
            local = _chain_d(fac.rank)
        for kind, payload in local:
            if kind == "s":
                gi = fac.soff + payload - 1
                nxt = multiply(rs.simple_reflections[gi], cur)
                out.append(ChainStep("s", gi, None, cur, nxt))
            else:
                u = tuple(payload if gi == fi else rs.identity_block(gi)
                          for gi in range(len(rs.factors)))
                nxt = multiply(u, cur)
                out.append(ChainStep("omega", None, u, cur, nxt))
            cur = nxt
    if cur != rs.identity:
        raise ChainInvalid("chain did not reach the identity")
    rs.cache[key] = out
    return out


def lift_chain(rs: RootSystem, j: JSet, w: Weyl) -> list[ChainStep]:
    """Chain whose projections link z_J to w: weyllem2 steps then a reduced word.

    w must lie in W^J; steps stay in W, the contract lives on projections."""
    out = list(weyllem2_chain(rs))
    cur = rs.identity
    for i in reversed(reduced_word(rs, w)):
        nxt = multiply(rs.simple_reflections[i], cur)
        out.append(ChainStep("s", i, None, cur, nxt))
        cur = nxt
    return out


def validate_weyllem2(rs: RootSystem, steps: list[ChainStep]) -> None:
    """Stepwise invariants of a w_Delta -> 1 chain; raises ChainInvalid."""
    if not steps or steps[0].frm != longest_element(rs):
        raise ChainInvalid("chain must start at the longest element")
    if steps[-1].to != rs.identity:
        raise ChainInvalid("chain must end at the identity")
    prev = steps[0].frm
    for k, st in enumerate(steps):
        if st.frm != prev:
            raise ChainInvalid(f"step {k}: broken link")
        if st.kind == "s":
            if st.to != multiply(rs.simple_reflections[st.index], st.frm):
                raise ChainInvalid(f"step {k}: wrong s-product")
            if length(rs, st.to) != length(rs, st.frm) + 1:
                raise ChainInvalid(f"step {k}: s-step must raise length by one")
        elif st.kind == "omega":
            require_omega(rs, st.elt)
            if st.to != multiply(st.elt, st.frm):
                raise ChainInvalid(f"step {k}: wrong omega product")
        else:
            raise ChainInvalid(f"step {k}: unknown kind {st.kind}")
        prev = st.to


def validate_lift(rs: RootSystem, j: JSet, w: Weyl, steps: list[ChainStep]) -> None:
    """Projected contract: start projects to z_J, end to w, s-steps keep or
    raise the projected length (equal projections count as a trivial
    omega step)."""
    table = projection_table(rs, j)
    if not steps:
        if project(rs, w, j) != z_j(rs, j):
            raise ChainInvalid("empty lift only allowed at the maximum")
        return
    if table[steps[0].frm] != z_j(rs, j):
        raise ChainInvalid("lift must start over z_J")
    prev = steps[0].frm
    for k, st in enumerate(steps):
        if st.frm != prev:
            raise ChainInvalid(f"step {k}: broken link")
        if st.kind == "omega":
            require_omega(rs, st.elt)
            if st.to != multiply(st.elt, st.frm):
                raise ChainInvalid(f"step {k}: wrong omega product")
        else:
            if st.to != multiply(rs.simple_reflections[st.index], st.frm):
                raise ChainInvalid(f"step {k}: wrong s-product")
            if length(rs, st.to) != length(rs, st.frm) + 1:
                raise ChainInvalid(f"step {k}: s-step must raise length by one")
            pf, pt = table[st.frm], table[st.to]
            if pt != pf and length(rs, pt) <= length(rs, pf):
                raise ChainInvalid(f"step {k}: projection neither kept nor raised")
        prev = st.to
    if table[steps[-1].to] != w:
        raise ChainInvalid("lift must end over w")
