"""Random small groups and the per-instance checks shared by the property and acceptance suites."""

from __future__ import annotations

import json

import numpy as np

from qpalg.builders import build_function_algebra, build_group_algebra
from qpalg.coideal import NotCoideal, NotRightCoideal, check_coideal_subalgebra, coefficient_matrix
from qpalg.exactnum import ONE
from qpalg.hopf import dual
from qpalg.magic import (block_compose, cayley_magic, cert_from_json, cert_to_json, fourier_magic,
                         magic_failures, permutation_magic, verify_magic)
from qpalg.permgrp import OrderLimitExceeded, Perm, group_closure
import oracles

MAX_ORDER = 24


def small_group(degree: int, images: list[list[int]]):
    """Closure of the given permutations; falls back to the cyclic group of the first one when too large."""
    gens = [Perm(img) for img in images]
    try:
        return group_closure(degree, gens, cap=MAX_ORDER)
    except OrderLimitExceeded:
        return group_closure(degree, gens[:1], cap=MAX_ORDER)


def _coset_algebra(H, G, k: int):
    """Functions on G constant on the cosets of <g_k>, as a coideal subalgebra of k^G."""
    sub = [0]
    while True:
        nxt = int(G.table[sub[-1], k])
        if nxt == 0:
            break
        sub.append(nxt)
    cosets = (lambda x: [int(G.table[x, s]) for s in sub], lambda x: [int(G.table[s, x]) for s in sub])
    for coset in cosets:
        seen, basis = set(), []
        for x in range(len(G)):
            if x not in seen:
                c = coset(x)
                seen.update(c)
                basis.append({y: ONE for y in c})
        for side in ("right", "left"):
            try:
                return check_coideal_subalgebra(H, basis, side)
            except (NotCoideal, NotRightCoideal):
                continue
    raise AssertionError("coset functions form no one-sided coideal subalgebra")


def _cyclic_span(Hg, G, k: int):
    powers = [0]
    while True:
        nxt = int(G.table[powers[-1], k])
        if nxt == 0:
            break
        powers.append(nxt)
    return check_coideal_subalgebra(Hg, [{p: ONE} for p in powers], "right")


def _same_structure(A, B) -> bool:
    return (A.mult == B.mult and A.comult == B.comult and A.unit == B.unit and A.counit == B.counit
            and A.antipode == B.antipode)


def check_instance(G, pick: int = 0) -> dict[str, bool]:
    """Every property on one group; ``pick`` selects the element used for the coideal subalgebras."""
    Hf, Hg = build_function_algebra(G), build_group_algebra(G)
    k = pick % len(G)
    certs = [(Hf, cayley_magic(Hf)), (Hf, permutation_magic(Hf))]
    gens = G.generators or [G.identity]
    certs.append((Hg, block_compose([fourier_magic(Hg, g) for g in gens])))
    coeff = []
    for H, L in ((Hf, _coset_algebra(Hf, G, k)), (Hg, _cyclic_span(Hg, G, k))):
        u = coefficient_matrix(L)
        coeff.append((H, verify_magic(H, u, [{"kind": "coefficient_matrix", "size": len(u)}])))
    out = {}
    out["identities"] = all(not magic_failures(H, c.entries) and oracles.is_magic(H, c.entries)
                            for H, c in certs + coeff)
    out["full_generation"] = all(c.is_full_certificate for _, c in certs)
    out["coefficient_matrix"] = all(oracles.is_magic(H, c.entries) for H, c in coeff)
    out["double_dual"] = _same_structure(dual(dual(Hf)), Hf) and _same_structure(dual(dual(Hg)), Hg)
    ok = True
    for H, c in certs + coeff:
        doc = json.loads(json.dumps(cert_to_json(c)))
        back = cert_from_json(doc)
        ok &= back.entries == c.entries and back.generated_dim == c.generated_dim
        ok &= cert_to_json(back) == doc
    out["json_round_trip"] = bool(ok)
    return out


def random_instances(count: int, seed: int = 0):
    """Deterministic stream of (group, pick) pairs of order at most MAX_ORDER."""
    rng = np.random.default_rng(seed)
    for _ in range(count):
        d = int(rng.integers(2, 7))
        images = [list(rng.permutation(d)) for _ in range(int(rng.integers(1, 4)))]
        yield small_group(d, images), int(rng.integers(0, MAX_ORDER))
