"""Integer inner loops: Cayley tables, subgroup closure, span growth mod p.

Each kernel exists twice, a numba ``@njit`` version and a numpy version with
identical results.  ``QPALG_DISABLE_NUMBA=1`` (or a missing numba) selects the
numpy path.  All values mod p stay below 2**31 so int64 products never overflow.
"""

from __future__ import annotations

import os

import numpy as np

_disabled = os.environ.get("QPALG_DISABLE_NUMBA", "").lower() in ("1", "true", "yes")

try:
    if _disabled:
        raise ImportError
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - depends on environment
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


def backend() -> str:
    return "numba" if HAVE_NUMBA else "numpy"


# ---------------------------------------------------------------------------
# permutation tables


def perm_keys(perms: np.ndarray) -> np.ndarray:
    """Injective int64 key per row of a (m, d) array of 0-based images."""
    m, d = perms.shape
    if d > 15:
        raise ValueError("degree too large for packed permutation keys")
    weights = d ** np.arange(d, dtype=np.int64)
    return perms.astype(np.int64) @ weights


@njit(cache=True)
def _cayley_table_nb(perms, sorted_keys, order, d):
    m = perms.shape[0]
    table = np.empty((m, m), dtype=np.int32)
    for i in range(m):
        for j in range(m):
            key = 0
            w = 1
            for k in range(d):
                # (p_i p_j)(k) = p_i(p_j(k))
                key += perms[i, perms[j, k]] * w
                w *= d
            pos = np.searchsorted(sorted_keys, key)
            if pos >= m or sorted_keys[pos] != key:
                table[i, j] = -1
            else:
                table[i, j] = order[pos]
    return table


def _cayley_table_np(perms, sorted_keys, order, d):
    m = perms.shape[0]
    comp = perms[np.arange(m)[:, None, None], perms[None, :, :]]
    keys = comp.reshape(m * m, d).astype(np.int64) @ (d ** np.arange(d, dtype=np.int64))
    pos = np.searchsorted(sorted_keys, keys)
    pos_c = np.minimum(pos, m - 1)
    ok = (pos < m) & (sorted_keys[pos_c] == keys)
    table = np.where(ok, order[pos_c], -1).astype(np.int32)
    return table.reshape(m, m)


def cayley_table(perms: np.ndarray) -> np.ndarray:
    """table[i, j] = index of perms[i] * perms[j] (apply j first), -1 if outside."""
    perms = np.ascontiguousarray(perms, dtype=np.int64)
    m, d = perms.shape
    keys = perm_keys(perms)
    order = np.argsort(keys, kind="stable")
    sorted_keys = keys[order]
    if HAVE_NUMBA:
        return _cayley_table_nb(perms, sorted_keys, order.astype(np.int64), d)
    return _cayley_table_np(perms, sorted_keys, order, d)


@njit(cache=True)
def _closure_nb(table, members):
    m = table.shape[0]
    inside = members.copy()
    queue = np.empty(m, dtype=np.int64)
    gens = np.nonzero(members)[0]
    n = 0
    for i in range(m):
        if inside[i]:
            queue[n] = i
            n += 1
    head = 0
    while head < n:
        a = queue[head]
        head += 1
        for g in gens:
            b = table[a, g]
            if not inside[b]:
                inside[b] = True
                queue[n] = b
                n += 1
    return inside


def _closure_np(table, members):
    inside = members.copy()
    while True:
        idx = np.nonzero(inside)[0]
        prods = table[np.ix_(idx, idx)].ravel()
        new = inside.copy()
        new[prods] = True
        if new.sum() == inside.sum():
            return inside
        inside = new


def closure(table: np.ndarray, members: np.ndarray) -> np.ndarray:
    """Boolean mask of the subgroup generated by the masked elements.

    The identity must be index 0 of the table.
    """
    members = np.ascontiguousarray(members, dtype=np.bool_).copy()
    members[0] = True
    if HAVE_NUMBA:
        return _closure_nb(table, members)
    return _closure_np(table, members)


# ---------------------------------------------------------------------------
# span growth of a subalgebra modulo a prime


@njit(cache=True)
def _mul_modp_nb(v, w, I, J, K, C, p, out):
    for t in range(I.shape[0]):
        a = v[I[t]]
        if a == 0:
            continue
        b = w[J[t]]
        if b == 0:
            continue
        out[K[t]] = (out[K[t]] + (a * b % p) * C[t]) % p


@njit(cache=True)
def _reduce_modp_nb(w, basis, pivots, r, p):
    for i in range(r):
        c = w[pivots[i]]
        if c != 0:
            for k in range(w.shape[0]):
                if basis[i, k] != 0:
                    w[k] = (w[k] - c * basis[i, k]) % p


@njit(cache=True)
def _inv_modp(a, p):
    result = 1
    e = p - 2
    a = a % p
    while e > 0:
        if e & 1:
            result = result * a % p
        a = a * a % p
        e >>= 1
    return result


@njit(cache=True)
def _insert_modp_nb(w, basis, pivots, r, p):
    n = w.shape[0]
    piv = -1
    for k in range(n):
        if w[k] != 0:
            piv = k
            break
    if piv < 0:
        return r
    inv = _inv_modp(w[piv], p)
    for k in range(n):
        basis[r, k] = w[k] * inv % p
    pivots[r] = piv
    return r + 1


@njit(cache=True)
def _span_growth_nb(unit, gens, I, J, K, C, p, limit):
    n = unit.shape[0]
    basis = np.zeros((n, n), dtype=np.int64)
    pivots = np.zeros(n, dtype=np.int64)
    r = _insert_modp_nb(unit.copy(), basis, pivots, 0, p)
    head = 0
    w = np.zeros(n, dtype=np.int64)
    while head < r and r < limit:
        v = basis[head].copy()
        for g in range(gens.shape[0]):
            w[:] = 0
            _mul_modp_nb(v, gens[g], I, J, K, C, p, w)
            _reduce_modp_nb(w, basis, pivots, r, p)
            r = _insert_modp_nb(w, basis, pivots, r, p)
            if r >= limit:
                break
        head += 1
    return r


def _span_growth_np(unit, gens, I, J, K, C, p, limit):
    n = unit.shape[0]
    basis = np.zeros((n, n), dtype=np.int64)
    pivots: list[int] = []

    def insert(w):
        nz = np.nonzero(w)[0]
        if nz.size == 0:
            return False
        piv = int(nz[0])
        basis[len(pivots)] = w * pow(int(w[piv]), p - 2, p) % p
        pivots.append(piv)
        return True

    def reduce(w):
        for i, piv in enumerate(pivots):
            c = w[piv]
            if c:
                w = (w - c * basis[i]) % p
        return w

    insert(unit % p)
    head = 0
    while head < len(pivots) and len(pivots) < limit:
        v = basis[head].copy()
        for g in gens:
            vals = (v[I] * g[J]) % p * C % p
            w = np.zeros(n, dtype=np.int64)
            np.add.at(w, K, vals)
            w = reduce(w % p)
            insert(w)
            if len(pivots) >= limit:
                break
        head += 1
    return len(pivots)


def span_growth_modp(unit, gens, I, J, K, C, p: int, limit: int | None = None) -> int:
    """Dimension mod p of the unital subalgebra generated by ``gens``.

    Multiplication is the triplet list (I, J, K, C): b_I * b_J += C * b_K.
    """
    n = unit.shape[0]
    limit = n if limit is None else limit
    args = (np.ascontiguousarray(unit, dtype=np.int64),
            np.ascontiguousarray(gens, dtype=np.int64).reshape(-1, n),
            np.ascontiguousarray(I, dtype=np.int64), np.ascontiguousarray(J, dtype=np.int64),
            np.ascontiguousarray(K, dtype=np.int64), np.ascontiguousarray(C, dtype=np.int64))
    if HAVE_NUMBA:
        return int(_span_growth_nb(*args, np.int64(p), np.int64(limit)))
    return _span_growth_np(*args, p, limit)


@njit(cache=True)
def _rank_modp_nb(A, p):
    A = A % p
    m, n = A.shape
    r = 0
    for c in range(n):
        piv = -1
        for i in range(r, m):
            if A[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for k in range(n):
                tmp = A[r, k]
                A[r, k] = A[piv, k]
                A[piv, k] = tmp
        inv = _inv_modp(A[r, c], p)
        for k in range(n):
            A[r, k] = A[r, k] * inv % p
        for i in range(r + 1, m):
            f = A[i, c]
            if f != 0:
                for k in range(n):
                    A[i, k] = (A[i, k] - f * A[r, k]) % p
        r += 1
        if r == m:
            break
    return r


def _rank_modp_np(A, p):
    A = A.copy() % p
    m, n = A.shape
    r = 0
    for c in range(n):
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        A[[r, piv]] = A[[piv, r]]
        A[r] = A[r] * pow(int(A[r, c]), p - 2, p) % p
        f = A[r + 1:, c].copy()
        A[r + 1:] = (A[r + 1:] - f[:, None] * A[r]) % p
        r += 1
        if r == m:
            break
    return r


def rank_modp(A: np.ndarray, p: int) -> int:
    A = np.ascontiguousarray(A, dtype=np.int64)
    if A.size == 0:
        return 0
    if HAVE_NUMBA:
        return int(_rank_modp_nb(A, np.int64(p)))
    return _rank_modp_np(A, p)
