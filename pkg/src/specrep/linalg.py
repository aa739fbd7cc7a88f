"""Exact dense linear algebra: integer Smith form and mod-p elimination.

Integer work runs on int64 with an overflow guard and falls back to Python
ints (numpy object arrays) when entries grow too large.  Mod-p elimination
keeps residues below 2^31 so products stay inside int64.
"""

from __future__ import annotations

import numpy as np

from .errors import NonPrimeCharacteristic

INT64_GUARD = 1 << 60
CERT_PRIME = (1 << 31) - 1  # Mersenne prime, used for rational rank certificates


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def check_prime(p: int) -> int:
    if not is_prime(p):
        raise NonPrimeCharacteristic(f"p = {p}")
    return p


def _as_object(a: np.ndarray) -> np.ndarray:
    out = np.empty(a.shape, dtype=object)
    for i in range(a.shape[0]):
        for j in range(a.shape[1]):
            out[i, j] = int(a[i, j])
    return out


def _snf_object(a: np.ndarray) -> list[int]:
    """Classic Smith elimination on a small numpy object matrix."""
    a = a.copy()
    m, n = a.shape
    out: list[int] = []
    top = 0
    while top < min(m, n):
        sub = a[top:, top:]
        if not sub.any():
            break
        # move a nonzero entry of minimal absolute value to the corner
        best = None
        for i in range(sub.shape[0]):
            for j in range(sub.shape[1]):
                v = sub[i, j]
                if v and (best is None or abs(v) < abs(sub[best])):
                    best = (i, j)
        bi, bj = best
        a[[top, top + bi]] = a[[top + bi, top]]
        a[:, [top, top + bj]] = a[:, [top + bj, top]]
        while True:
            piv = a[top, top]
            done = True
            for i in range(top + 1, m):
                q = a[i, top] // piv
                if q:
                    a[i] = a[i] - q * a[top]
                if a[i, top]:
                    a[[top, i]] = a[[i, top]]
                    done = False
                    break
            if not done:
                continue
            for j in range(top + 1, n):
                q = a[top, j] // piv
                if q:
                    a[:, j] = a[:, j] - q * a[:, top]
                if a[top, j]:
                    a[:, [top, j]] = a[:, [j, top]]
                    done = False
                    break
            if done:
                break
        # ensure the pivot divides the rest of the matrix
        piv = a[top, top]
        bad = None
        for i in range(top + 1, m):
            for j in range(top + 1, n):
                if a[i, j] % piv:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            a[top] = a[top] + a[bad]
            continue
        out.append(abs(int(piv)))
        top += 1
    return out


_PROMOTE_BOUND = 1 << 30  # keep int64 products exact


def snf_invariants(mat) -> list[int]:
    """Nonzero invariant factors d_1 | d_2 | ... of an integer matrix.

    len() of the result is the rank over Q; factors > 1 are the torsion
    of the cokernel (together with its free part).
    """
    try:
        a = np.array(mat, dtype=np.int64)
        is_obj = False
    except OverflowError:
        a = np.array(mat, dtype=object)
        is_obj = True
    if a.size == 0:
        return []
    a = a.copy()
    m, n = a.shape
    rows = list(range(m))
    cols = list(range(n))
    ones = 0
    if not is_obj and np.abs(a).max(initial=0) > _PROMOTE_BOUND:
        a = _as_object(a)
        is_obj = True
    # fast phase: repeatedly clear unit pivots (covers incidence-style input)
    while rows and cols:
        sub = a[np.ix_(rows, cols)]
        if is_obj:
            hit = next(((i, j) for i in range(len(rows)) for j in range(len(cols))
                        if abs(sub[i, j]) == 1), None)
        else:
            h = np.argwhere(np.abs(sub) == 1)
            hit = (int(h[0][0]), int(h[0][1])) if h.size else None
        if hit is None:
            break
        r, c = rows[hit[0]], cols[hit[1]]
        piv = int(a[r, c])
        rows2 = [x for x in rows if x != r]
        cols2 = [x for x in cols if x != c]
        if rows2 and cols2:
            colv = a[np.ix_(rows2, [c])]
            rowv = a[np.ix_([r], cols2)]
            upd = colv * rowv  # outer product, object-safe
            a[np.ix_(rows2, cols2)] -= upd if piv > 0 else -upd
            if not is_obj and np.abs(a[np.ix_(rows2, cols2)]).max(initial=0) > _PROMOTE_BOUND:
                a = _as_object(a)
                is_obj = True
        ones += 1
        rows, cols = rows2, cols2
    rest: list[int] = []
    if rows and cols:
        sub = a[np.ix_(rows, cols)]
        if not is_obj:
            sub = _as_object(sub)
        if any(sub[i, j] for i in range(len(rows)) for j in range(len(cols))):
            rest = _snf_object(sub)
    return ones * [1] + rest


def rank_z(mat) -> int:
    return len(snf_invariants(mat))


def _colops_echelon(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Unimodular column reduction; returns (reduced A, transform T) with A@T reduced."""
    a = _as_object(np.array(a, dtype=np.int64))
    m, n = a.shape
    t = np.empty((n, n), dtype=object)
    for i in range(n):
        for j in range(n):
            t[i, j] = 1 if i == j else 0
    lead = 0
    for r in range(m):
        if lead >= n:
            break
        while True:
            nz = [j for j in range(lead, n) if a[r, j]]
            if not nz:
                break
            j0 = min(nz, key=lambda j: abs(a[r, j]))
            if j0 != lead:
                a[:, [lead, j0]] = a[:, [j0, lead]]
                t[:, [lead, j0]] = t[:, [j0, lead]]
            piv = a[r, lead]
            done = True
            for j in range(lead + 1, n):
                q = a[r, j] // piv
                if q:
                    a[:, j] = a[:, j] - q * a[:, lead]
                    t[:, j] = t[:, j] - q * t[:, lead]
                if a[r, j]:
                    done = False
            if done:
                break
        if a[r, lead]:
            lead += 1
    return a, t


def integer_kernel(mat) -> np.ndarray:
    """Columns form a basis of the integer kernel (saturated by construction)."""
    a = np.array(mat, dtype=np.int64)
    if a.size == 0:
        n = a.shape[1] if a.ndim == 2 else 0
        return np.eye(n, dtype=object)
    red, t = _colops_echelon(a)
    keep = [j for j in range(red.shape[1]) if not red[:, j].any()]
    return t[:, keep]


def solve_exact(a: np.ndarray, b: np.ndarray) -> np.ndarray | None:
    """Solve a @ x = b over Q via fraction-free elimination; None if inconsistent.

    Entries of the result are Fractions (exact)."""
    from fractions import Fraction

    m = a.shape[0]
    n = a.shape[1]
    k = b.shape[1]
    aug = [[Fraction(int(a[i, j])) for j in range(n)] + [Fraction(int(b[i, j])) for j in range(k)]
           for i in range(m)]
    piv_cols = []
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, m) if aug[i][c]), None)
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        piv_cols.append(c)
        r += 1
    for i in range(r, m):
        if any(aug[i][n:]):
            return None
    x = np.zeros((n, k), dtype=object)
    for rr, c in enumerate(piv_cols):
        for j in range(k):
            x[c, j] = aug[rr][n + j]
    return x


def modp_rref(mat, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over F_p; returns (matrix, pivot columns)."""
    a = np.array(mat, dtype=np.int64) % p
    m, n = a.shape
    piv: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        a[r] = a[r] * pow(int(a[r, c]), p - 2, p) % p
        col = a[:, c].copy()
        col[r] = 0
        a = (a - np.outer(col, a[r])) % p
        piv.append(c)
        r += 1
    return a, piv


def modp_rank(mat, p: int) -> int:
    a = np.array(mat, dtype=np.int64)
    if a.size == 0:
        return 0
    return len(modp_rref(a, p)[1])


def modp_solve(a, b, p: int) -> np.ndarray | None:
    """One solution of a @ x = b over F_p, or None; b may have several columns."""
    a = np.array(a, dtype=np.int64) % p
    b = np.array(b, dtype=np.int64) % p
    m, n = a.shape
    aug = np.hstack([a, b])
    red, piv = modp_rref(aug, p)
    for c in piv:
        if c >= n:
            return None
    x = np.zeros((n, b.shape[1]), dtype=np.int64)
    for r, c in enumerate(piv):
        x[c] = red[r, n:]
    return x


def modp_nullspace(mat, p: int) -> np.ndarray:
    """Row basis of the right kernel {x : a @ x = 0} over F_p."""
    a = np.array(mat, dtype=np.int64) % p
    if a.size == 0:
        return np.eye(a.shape[1], dtype=np.int64)
    red, piv = modp_rref(a, p)
    free = [c for c in range(a.shape[1]) if c not in piv]
    out = np.zeros((len(free), a.shape[1]), dtype=np.int64)
    for i, f in enumerate(free):
        out[i, f] = 1
        for k, pc in enumerate(piv):
            out[i, pc] = (-int(red[k, f])) % p
    return out
