"""Time the numba kernels against their numpy fallbacks on the same inputs.

    python benchmarks/bench_kernels.py [--repeat N] [--json out.json]

Both paths are called directly, so the QPALG_DISABLE_NUMBA flag is irrelevant
here.  First calls are excluded (numba compiles on first use).
"""

from __future__ import annotations

import argparse
import json
import time

import numpy as np

from qpalg import _kernels as K
from qpalg.builders import build_group_algebra
from qpalg.hopf import _mult_triplets
from qpalg.modular import ModpMap, primes_for
from qpalg.permgrp import parse_group


def _perm_array(G):
    return np.array([g.img for g in G.elements], dtype=np.int64)


def _cases():
    S6 = parse_group(6, ["(123456)", "(12)"])
    perms = _perm_array(S6)
    keys = K.perm_keys(perms)
    order = np.argsort(keys, kind="stable").astype(np.int64)
    sk = keys[order]
    yield "cayley_table S6", (lambda: K._cayley_table_nb(perms, sk, order, 6),
                              lambda: K._cayley_table_np(perms, sk, order, 6))

    table = K.cayley_table(perms)
    members = np.zeros(len(S6), dtype=np.bool_)
    members[0] = True
    members[S6.index[S6.generators[0]]] = True
    members[S6.index[S6.generators[1]]] = True
    yield "closure S6", (lambda: K._closure_nb(table, members.copy()),
                         lambda: K._closure_np(table, members.copy()))

    S5 = parse_group(5, ["(12345)", "(12)"])
    H = build_group_algebra(S5)
    p, r = next(iter(primes_for(H.conductor())))
    I, J, Kk, C = _mult_triplets(H, ModpMap(H.conductor(), p, r))
    unit = np.zeros(H.dim, dtype=np.int64)
    unit[0] = 1
    gens = np.zeros((2, H.dim), dtype=np.int64)
    for row, g in enumerate(S5.generators):
        gens[row, S5.index[g]] = 1
    yield "span_growth kS5 (dim 120)", (
        lambda: K._span_growth_nb(unit, gens, I, J, Kk, C, np.int64(p), np.int64(H.dim)),
        lambda: K._span_growth_np(unit, gens, I, J, Kk, C, p, H.dim))

    rng = np.random.default_rng(0)
    A = rng.integers(0, 1000, size=(200, 240), dtype=np.int64)
    A[100:] = (A[:100] * 3 + A[:100] * 7) % p  # rank 100 by construction
    yield "rank_modp 200x240", (lambda: K._rank_modp_nb(A.copy(), np.int64(p)),
                                lambda: K._rank_modp_np(A.copy(), p))


def _best(fn, repeat: int) -> tuple[float, object]:
    out = fn()
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def _same(a, b) -> bool:
    if isinstance(a, np.ndarray) or isinstance(b, np.ndarray):
        return bool(np.array_equal(np.asarray(a), np.asarray(b)))
    return int(a) == int(b)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", help="write the timings here")
    args = ap.parse_args(argv)
    if not K.HAVE_NUMBA:
        print("numba unavailable; only the numpy path would run")
        return 1
    rows = []
    print(f"{'kernel':30s} {'numba ms':>10s} {'numpy ms':>10s} {'speedup':>8s}  agree")
    for name, (nb, npy) in _cases():
        t_nb, r_nb = _best(nb, args.repeat)
        t_np, r_np = _best(npy, args.repeat)
        agree = _same(r_nb, r_np)
        rows.append({"kernel": name, "numba_s": t_nb, "numpy_s": t_np, "agree": agree})
        print(f"{name:30s} {t_nb * 1e3:10.3f} {t_np * 1e3:10.3f} {t_np / t_nb:8.1f}x  {agree}")
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(rows, fh, indent=2)
    return 0 if all(r["agree"] for r in rows) else 1


if __name__ == "__main__":
    raise SystemExit(main())
