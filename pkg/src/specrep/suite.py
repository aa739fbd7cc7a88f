"""The acceptance battery: every desk-scale check as one report record.

A record is {check_id, instance, status, detail} with status one of
pass / fail / skip.  Records are emitted in canonical sorted order and
contain nothing nondeterministic, so two runs with the same config
produce byte-identical reports.  Capacity misses (line caps, oracle
size) are skips; everything else that goes wrong is a fail record.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

from . import chains, glnq, hecke, linalg
from .errors import CapExceeded, SpecrepError, TooLarge
from .jsets import phi_j_mask, quasi_parabolic_sets
from .roots import RootSystem, root_system
from .vjmod import Ring, build_mj, restricted_exactness
from .weyl import (JSet, enumerate_VJ, enumerate_W, enumerate_WJ,
                   group_order, inversion_roots, length, longest_element,
                   multiply, project, simple, subgroup)

DEFAULT_TYPES = ("A1", "A2", "A3", "B2", "B3", "C3", "D4")


@dataclass(frozen=True)
class SuiteConfig:
    types: tuple[str, ...] = DEFAULT_TYPES
    primes: tuple[int, ...] = (2, 3)
    oracle_models: tuple[tuple[int, int], ...] = glnq.DEFAULT_MODELS
    line_cap: int = hecke.LINE_CAP
    exactness_max_rank: int = 3

    def validate(self) -> None:
        if self.line_cap <= 0 or self.exactness_max_rank <= 0:
            raise SpecrepError("caps must be positive")
        for p in self.primes:
            linalg.check_prime(p)


def _all_j(rank: int):
    for r in range(rank + 1):
        for jt in itertools.combinations(range(rank), r):
            yield frozenset(jt)


def _jfmt(j: JSet) -> str:
    return "{" + ",".join(str(i + 1) for i in sorted(j)) + "}"


def _record(records: list, check_id: str, instance: str, fn) -> None:
    try:
        ok, detail = fn()
        status = "pass" if ok else "fail"
    except (CapExceeded, TooLarge) as e:
        status, detail = "skip", f"{type(e).__name__}: {e}"
    except Exception as e:  # any module error becomes a failed record
        status, detail = "fail", f"{type(e).__name__}: {e}"
    records.append({"check_id": check_id, "instance": instance,
                    "status": status, "detail": detail})


# ---------------------------------------------------------------- lemmas

def check_warmup(rs: RootSystem) -> bool:
    """Projection shortens, parabolic factorizations add, w_Delta reverses."""
    w_all = enumerate_W(rs)
    wd = longest_element(rs)
    lwd = length(rs, wd)
    for w in w_all:
        lw = length(rs, w)
        if length(rs, multiply(wd, w)) != lwd - lw:
            return False
        if length(rs, multiply(w, wd)) != lwd - lw:
            return False
    for j in _all_j(rs.rank):
        for w in w_all:
            if length(rs, w) < length(rs, project(rs, w, j)):
                return False
        for w1 in enumerate_WJ(rs, j):
            for w2 in subgroup(rs, j):
                if length(rs, multiply(w1, w2)) != length(rs, w1) + length(rs, w2):
                    return False
    return True


def check_hilfe(rs: RootSystem) -> bool:
    """For J inside J' and w in W^{J'}: Phi_J(w) - Phi_{J'}(w) is negative."""
    pos_mask = (1 << rs.num_positive) - 1
    for j2 in _all_j(rs.rank):
        for j in _all_j(rs.rank):
            if not j <= j2:
                continue
            for w in enumerate_WJ(rs, j2):
                diff = phi_j_mask(rs, j, w) & ~phi_j_mask(rs, j2, w)
                if diff & pos_mask:
                    return False
    return True


def _reach_bits(rs: RootSystem, j: JSet):
    """Strict-upset bitmask per element of W^J for the order <_J."""
    wj = enumerate_WJ(rs, j)
    idx = {w: i for i, w in enumerate(wj)}
    reach = [0] * len(wj)
    for w in sorted(wj, key=lambda x: -length(rs, x)):
        b = 0
        for _, v in chains.successors(rs, j, w):
            b |= (1 << idx[v]) | reach[idx[v]]
        reach[idx[w]] = b
    return wj, idx, reach


def check_weylem(rs: RootSystem) -> bool:
    """Parts (a)-(f) of the projection/length lemma, fully exhaustive."""
    w_all = enumerate_W(rs)
    wd = longest_element(rs)
    _, idx0, reach0 = _reach_bits(rs, frozenset())
    for j in _all_j(rs.rank):
        wj, idx, reach = _reach_bits(rs, j)
        vj = set(enumerate_VJ(rs, j))
        z = chains.z_j(rs, j)
        wjelt = longest_element(rs, j)
        if z != multiply(wd, wjelt) or z not in vj:
            return False
        zi = idx[z]
        if reach[zi] != 0:  # nothing above the maximum
            return False
        for w in wj:
            if w != z and not reach[idx[w]] >> zi & 1:  # z above everything
                return False
            lw = length(rs, w)
            for s in range(rs.rank):
                sw = multiply(simple(rs, s), w)
                v = project(rs, sw, j)
                lsw, lv = length(rs, sw), length(rs, v)
                if v != w and v != sw:  # (b) second half
                    return False
                if reach[idx[w]] >> idx[v] & 1 and not lw < lsw:  # (a)
                    return False
                if lsw > lw and v != w:  # (b)
                    if v != sw or not reach[idx[w]] >> idx[sw] & 1:
                        return False
                down_j = bool(reach[idx[v]] >> idx[w] & 1)  # (c)
                if down_j != (lv < lw) or down_j != (lsw < lw):
                    return False
                if w in vj and lv > lw and v not in vj:  # (f)
                    return False
        # (d): below-w_Jw_Delta in <_0 only meets W_J w_Delta inside W_J
        base = multiply(wjelt, wd)
        wjset = set(subgroup(rs, j))
        for u in w_all:
            if reach0[idx0[base]] >> idx0[multiply(u, wd)] & 1 and u not in wjset:
                return False
        # (e) second half: descents of z^J descend everything <_0-above it
        descents = [s for s in range(rs.rank)
                    if length(rs, multiply(simple(rs, s), z)) < length(rs, z)]
        for u in w_all:
            if u == z or reach0[idx0[z]] >> idx0[u] & 1:
                for s in descents:
                    if length(rs, multiply(simple(rs, s), u)) >= length(rs, u):
                        return False
    return True


# -------------------------------------------------------------- batteries

def weyl_battery(cfg: SuiteConfig) -> list[dict]:
    records: list[dict] = []
    for t in cfg.types:
        def order_check(t=t):
            rs = root_system(t)
            n = len(enumerate_W(rs))
            return n == group_order(rs), f"|W|={n}"

        def longest_check(t=t):
            rs = root_system(t)
            wd = longest_element(rs)
            ok = length(rs, wd) == rs.num_positive and multiply(wd, wd) == rs.identity
            return ok, f"l(wD)={length(rs, wd)}"

        def inv_check(t=t):
            rs = root_system(t)
            bad = sum(1 for w in enumerate_W(rs)
                      if length(rs, w) != len(inversion_roots(rs, w)))
            return bad == 0, f"mismatches={bad}"

        def vjsum_check(t=t):
            rs = root_system(t)
            total = sum(len(enumerate_VJ(rs, j)) for j in _all_j(rs.rank))
            return total == group_order(rs), f"sum|V^J|={total}"

        _record(records, "weyl.group_order", t, order_check)
        _record(records, "weyl.longest", t, longest_check)
        _record(records, "weyl.length_inversions", t, inv_check)
        _record(records, "weyl.vj_sum", t, vjsum_check)
    return records


def module_battery(cfg: SuiteConfig) -> list[dict]:
    records: list[dict] = []
    for t in cfg.types:
        def steinberg(t=t):
            rs = root_system(t)
            rep = build_mj(rs, frozenset(), Ring("Z"))
            ok = rep.vj_size == 1 and rep.rank == 1 and rep.basis_ok
            return ok, f"rank={rep.rank}"

        _record(records, "module.steinberg", t, steinberg)
        try:
            rank = root_system(t).rank
        except SpecrepError:
            rank = 0
        for j in _all_j(rank):
            def rank_check(t=t, j=j):
                rs = root_system(t)
                rep = build_mj(rs, j, Ring("Z"))
                ok = rep.rank == rep.vj_size and not rep.torsion and rep.basis_ok
                return ok, f"rank={rep.rank} torsion={len(rep.torsion)}"

            _record(records, "module.rank", f"{t} J={_jfmt(j)}", rank_check)
    return records


def exactness_battery(cfg: SuiteConfig) -> list[dict]:
    records: list[dict] = []
    rings = [Ring("Q")] + [Ring("Fp", p) for p in cfg.primes]
    for t in cfg.types:
        try:
            rs = root_system(t)
        except SpecrepError:
            _record(records, "module.exactness", t, lambda t=t: (root_system(t), ""))
            continue
        if rs.rank > cfg.exactness_max_rank:
            continue
        for j in _all_j(rs.rank):
            for ring in rings:
                def exact_check(t=t, j=j, ring=ring):
                    rs = root_system(t)
                    results = [restricted_exactness(rs, j, d.mask, ring)
                               for d in quasi_parabolic_sets(rs, j)]
                    return all(results), f"{len(results)} sets"

                _record(records, "module.exactness",
                        f"{t} J={_jfmt(j)} ring={ring}", exact_check)
    return records


def chains_battery(cfg: SuiteConfig) -> list[dict]:
    records: list[dict] = []
    for t in cfg.types:
        _record(records, "chains.warmup", t,
                lambda t=t: (check_warmup(root_system(t)), "exhaustive"))
        _record(records, "chains.hilfe", t,
                lambda t=t: (check_hilfe(root_system(t)), "exhaustive"))
        _record(records, "chains.weylem", t,
                lambda t=t: (check_weylem(root_system(t)), "parts a-f"))

        def w2_check(t=t):
            rs = root_system(t)
            steps = chains.weyllem2_chain(rs)
            chains.validate_weyllem2(rs, steps)
            return True, f"{len(steps)} steps"

        _record(records, "chains.weyllem2", t, w2_check)
        try:
            rank = root_system(t).rank
        except SpecrepError:
            rank = 0
        for j in _all_j(rank):
            def w1_check(t=t, j=j):
                rs = root_system(t)
                z = chains.z_j(rs, j)
                n = 0
                for w in enumerate_VJ(rs, j):
                    if w != z:
                        chains.weyllem1_witness(rs, j, w)
                        n += 1
                return True, f"{n} witnesses"

            def lift_check(t=t, j=j):
                rs = root_system(t)
                n = 0
                for w in enumerate_WJ(rs, j):
                    steps = chains.lift_chain(rs, j, w)
                    chains.validate_lift(rs, j, w, steps)
                    n += 1
                return True, f"{n} lifts"

            _record(records, "chains.weyllem1", f"{t} J={_jfmt(j)}", w1_check)
            _record(records, "chains.weyllem3", f"{t} J={_jfmt(j)}", lift_check)
    return records


def hecke_battery(cfg: SuiteConfig) -> list[dict]:
    records: list[dict] = []
    for t in cfg.types:
        def pwdiff_check(t=t):
            rs = root_system(t)
            fps = set()
            for j in _all_j(rs.rank):
                fp = hecke.fingerprint_j(rs, j)
                if fp in fps or hecke.recover_j(rs, fp) != j:
                    return False, f"J={_jfmt(j)}"
                fps.add(fp)
            return True, f"{len(fps)} fingerprints"

        _record(records, "hecke.pwdiff", t, pwdiff_check)
        try:
            rank = root_system(t).rank
        except SpecrepError:
            rank = 0
        for j in _all_j(rank):
            for p in cfg.primes:
                def tri_check(t=t, j=j, p=p):
                    rs = root_system(t)
                    for w in enumerate_WJ(rs, j):
                        for s in range(rs.rank):
                            hecke.ts_case(rs, j, w, s)
                    for s in range(rs.rank):
                        m = hecke.ts_matrix(rs, j, s, p).mat
                        if not ((m @ m) % p == (-m) % p).all():
                            return False, f"s={s + 1}"
                    return True, "cases+quadratic"

                def indeco_check(t=t, j=j, p=p):
                    rs = root_system(t)
                    ok = hecke.check_indeco(rs, j, p, cap=cfg.line_cap)
                    return ok, f"dim={len(enumerate_VJ(rs, j))}"

                def simple_check(t=t, j=j, p=p):
                    rs = root_system(t)
                    rep = hecke.check_simple(rs, j, p, cap=cfg.line_cap)
                    return rep.is_simple, (f"zj={rep.zj_in_every_orbit}"
                                           f" gen={rep.generation_ok}")

                inst = f"{t} J={_jfmt(j)} p={p}"
                _record(records, "hecke.trichotomy", inst, tri_check)
                _record(records, "hecke.indeco", inst, indeco_check)
                _record(records, "hecke.simple", inst, simple_check)

    def control_check():
        rs = root_system("A2")
        rep = hecke.check_simple(rs, frozenset({0}), 2, include_omega=False)
        return not rep.generation_ok, "generation must fail without Omega"

    if "A2" in cfg.types:
        _record(records, "hecke.negative_control", "A2 J={1} p=2", control_check)
    return records


def oracle_battery(cfg: SuiteConfig) -> list[dict]:
    records: list[dict] = []
    for n, q in cfg.oracle_models:
        inst0 = f"n={n} q={q}"
        try:
            model = glnq.build_model(n, q)
        except (TooLarge, SpecrepError) as e:
            status = "skip" if isinstance(e, TooLarge) else "fail"
            records.append({"check_id": "oracle.build", "instance": inst0,
                            "status": status, "detail": str(e)})
            continue
        records.append({"check_id": "oracle.build", "instance": inst0,
                        "status": "pass", "detail": f"|G|={len(model.elements)}"})
        for j in _all_j(model.rs.rank):
            inst = f"{inst0} J={_jfmt(j)}"

            def dim_check(model=model, j=j):
                rep = glnq.special_invariants(model, j)
                return rep.dim == rep.vj_size and rep.basis_ok, f"dim={rep.dim}"

            def ts_check(model=model, j=j):
                res = glnq.certify_ts(model, j)
                return all(res.values()), f"{len(res)} operators"

            def bru_check(model=model, j=j):
                return glnq.check_brudec(model, j), "cells"

            _record(records, "oracle.dims", inst, dim_check)
            _record(records, "oracle.ts_match", inst, ts_check)
            _record(records, "oracle.brudec", inst, bru_check)
    return records


# ------------------------------------------------------------------ suite

def run_suite(cfg: SuiteConfig | None = None) -> tuple[int, list[dict]]:
    """All batteries in order; returns (exit status, sorted records)."""
    cfg = cfg or SuiteConfig()
    cfg.validate()
    records: list[dict] = []
    records += weyl_battery(cfg)
    records += module_battery(cfg)
    records += exactness_battery(cfg)
    records += chains_battery(cfg)
    records += hecke_battery(cfg)
    records += oracle_battery(cfg)
    records.sort(key=lambda r: (r["check_id"], r["instance"]))
    status = 0 if all(r["status"] != "fail" for r in records) else 1
    return status, records


def to_jsonl(records: list[dict]) -> str:
    return "".join(json.dumps(r, sort_keys=True, separators=(",", ":")) + "\n"
                   for r in records)


def to_tsv(records: list[dict]) -> str:
    cols = ("check_id", "instance", "status", "detail")
    lines = ["\t".join(cols)]
    lines += ["\t".join(str(r[c]) for c in cols) for r in records]
    return "\n".join(lines) + "\n"
