"""Magic matrices with entries in a Hopf algebra and generation certificates."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .exactnum import ONE, ZERO, Cyclotomic, primitive_root, scalar_from_text, scalar_to_text
from .hopf import HopfData, HopfMap, from_json, generated_dimension, tensor_of, to_json
from .linalg import Vec, vec_iadd, vec_sub
from .permgrp import PermGroup

FORMAT_TAG = "qpalg.magic/1"


class RelationFailure(AssertionError):
    def __init__(self, identity: str, indices: tuple, residual: str):
        super().__init__(f"{identity} fails at {indices}: residual {residual}")
        self.identity, self.indices, self.residual = identity, indices, residual


class GenerationFailure(AssertionError):
    pass


@dataclass
class MagicCert:
    parent: HopfData
    entries: list[list[Vec]]
    generated_dim: int
    generation_method: str = ""
    provenance: list[dict] = field(default_factory=list)

    @property
    def size(self) -> int:
        return len(self.entries)

    @property
    def degree(self) -> int:
        return len(self.entries)

    @property
    def is_full_certificate(self) -> bool:
        return self.generated_dim == self.parent.dim

    def entry_list(self) -> list[Vec]:
        return [u for row in self.entries for u in row if u]


def _residual(H: HopfData, v: Vec) -> str:
    return H.format_vec(v)


def magic_failures(H: HopfData, u: Sequence[Sequence[Vec]], stop_early: bool = False) -> list[str]:
    """Every violated magic identity, as readable strings (empty when magic)."""
    n = len(u)
    out: list[str] = []

    def fail(msg: str) -> bool:
        out.append(msg)
        return stop_early

    if any(len(row) != n for row in u):
        return ["matrix is not square"]
    one = H.unit
    for i in range(n):
        r: Vec = {}
        c: Vec = {}
        for l in range(n):
            vec_iadd(r, u[i][l])
            vec_iadd(c, u[l][i])
        if r != one and fail(f"row sum {i}: residual {_residual(H, vec_sub(r, one))}"):
            return out
        if c != one and fail(f"column sum {i}: residual {_residual(H, vec_sub(c, one))}"):
            return out
    for i in range(n):
        for j in range(n):
            a = u[i][j]
            if not a:
                continue
            for k in range(n):
                b = u[i][k]
                if b:
                    p = H.multiply(a, b)
                    want = a if j == k else {}
                    if p != want and fail(f"u[{i}][{j}]u[{i}][{k}] = delta u[{i}][{j}]: residual "
                                          f"{_residual(H, vec_sub(p, want))}"):
                        return out
                b = u[k][j]
                if b:
                    p = H.multiply(a, b)
                    want = a if i == k else {}
                    if p != want and fail(f"u[{i}][{j}]u[{k}][{j}] = delta u[{i}][{j}]: residual "
                                          f"{_residual(H, vec_sub(p, want))}"):
                        return out
    for i in range(n):
        for j in range(n):
            d = H.delta(u[i][j])
            s: Vec = {}
            for k in range(n):
                if u[i][k] and u[k][j]:
                    vec_iadd(s, tensor_of(u[i][k], u[k][j]))
            if d != s and fail(f"Delta(u[{i}][{j}]) = sum_k u[{i}][k] (x) u[k][{j}]"):
                return out
            e = H.eps(u[i][j])
            if e != (ONE if i == j else ZERO) and fail(f"eps(u[{i}][{j}]) = delta"):
                return out
            if H.antipode is not None and H.S(u[i][j]) != u[j][i]:
                if fail(f"S(u[{i}][{j}]) = u[{j}][{i}]"):
                    return out
    return out


def verify_magic(H: HopfData, entries: Sequence[Sequence[Vec]], provenance: list[dict] | None = None,
                 generation: bool = True) -> MagicCert:
    fails = magic_failures(H, entries, stop_early=True)
    if fails:
        msg = fails[0]
        raise RelationFailure(msg.split(":")[0], (), msg.split("residual")[-1].strip())
    entries = [[dict(v) for v in row] for row in entries]
    gd, method = (-1, "not computed")
    if generation:
        gd, method = generated_dimension(H, [v for row in entries for v in row if v])
    return MagicCert(H, entries, gd, method, list(provenance or []))


def identity_magic(H: HopfData, n: int = 1) -> MagicCert:
    u = [[dict(H.unit) if i == j else {} for j in range(n)] for i in range(n)]
    return verify_magic(H, u, [{"kind": "identity", "size": n}])


def _group_of(H: HopfData, kind: str) -> PermGroup:
    G = H.structure
    if H.meta.get("kind") != kind or not isinstance(G, PermGroup):
        raise ValueError(f"expected a {kind.replace('_', ' ')} built from a permutation group")
    return G


def cayley_magic(H: HopfData) -> MagicCert:
    """u[g][h] = e_{g^-1 h} in k^G."""
    G = _group_of(H, "function_algebra")
    t, inv = G.table, G.inv
    n = len(G)
    u = [[{int(t[inv[g], h]): ONE} for h in range(n)] for g in range(n)]
    return verify_magic(H, u, [{"kind": "cayley", "size": n}])


def permutation_magic(H: HopfData) -> MagicCert:
    """u[i][j] = sum of e_g over g with g(j) = i, for k^G with G acting on points."""
    G = _group_of(H, "function_algebra")
    d = G.degree
    u = [[{} for _ in range(d)] for _ in range(d)]
    for gi, g in enumerate(G.elements):
        for j in range(d):
            u[g.img[j]][j][gi] = ONE
    return verify_magic(H, u, [{"kind": "permutation", "size": d}])


def fourier_magic(H: HopfData, g) -> MagicCert:
    """u[i][j] = (1/n) sum_k zeta_n^{k(j-i)} g^k in kG, n the order of g."""
    G = _group_of(H, "group_algebra")
    gi = G.index[g] if not isinstance(g, int) else g
    powers = [0]
    t = G.table
    while True:
        nxt = int(t[powers[-1], gi])
        if nxt == 0:
            break
        powers.append(nxt)
    n = len(powers)
    w = primitive_root(n)
    wp = [w ** k for k in range(n)]
    inv_n = Cyclotomic.rational(1) / n
    u = []
    for i in range(n):
        row = []
        for j in range(n):
            row.append({powers[k]: wp[(k * (j - i)) % n] * inv_n for k in range(n)})
        u.append(row)
    return verify_magic(H, u, [{"kind": "fourier", "element": str(G.elements[gi]), "size": n}])


def block_diagonal(blocks: Sequence[Sequence[Sequence[Vec]]]) -> list[list[Vec]]:
    n = sum(len(b) for b in blocks)
    u = [[{} for _ in range(n)] for _ in range(n)]
    off = 0
    for b in blocks:
        m = len(b)
        for i in range(m):
            for j in range(m):
                u[off + i][off + j] = dict(b[i][j])
        off += m
    return u


def block_compose(certs: Sequence[MagicCert]) -> MagicCert:
    if not certs:
        raise ValueError("no blocks")
    H = certs[0].parent
    if any(c.parent is not H for c in certs):
        raise ValueError("blocks must share the parent Hopf algebra")
    prov = [p for c in certs for p in c.provenance]
    return verify_magic(H, block_diagonal([c.entries for c in certs]), prov)


def embed(cert: MagicCert, f: HopfMap, verify: bool = True) -> MagicCert:
    """Push a certificate through a Hopf algebra map."""
    u = [[f(v) for v in row] for row in cert.entries]
    prov = [dict(p, via=f.target.meta.get("kind", "map")) for p in cert.provenance]
    if verify:
        return verify_magic(f.target, u, prov)
    return MagicCert(f.target, u, -1, "not computed", prov)


def double_inclusions(D: HopfData) -> tuple[HopfData, HopfData, HopfMap, HopfMap]:
    """k^G -> D(G), e_g -> e_g # 1, and kG -> D(G), x -> 1 # x."""
    from .builders import build_function_algebra, build_group_algebra

    st = D.structure
    G = _double_group(D)
    Hf, Hg = build_function_algebra(G), build_group_algebra(G)
    n = len(G)
    # Gamma and F of the double presentation list G in the same order
    f_imgs = [{st.pos(g, 0): ONE} for g in range(n)]
    g_imgs = [{st.pos(g, x): ONE for g in range(n)} for x in range(n)]
    return Hf, Hg, HopfMap(Hf, D, f_imgs), HopfMap(Hg, D, g_imgs)


def _double_group(D: HopfData) -> PermGroup:
    from .permgrp import parse_group

    if D.meta.get("kind") != "drinfeld_double":
        raise ValueError("expected a Drinfeld double")
    g = D.meta["group"]
    return parse_group(g["degree"], g["gens"])


def double_magic(D: HopfData, fun_cert: MagicCert | None = None,
                 group_certs: Sequence[MagicCert] | None = None) -> MagicCert:
    """Block certificate of D(G) from Fourier blocks of kG and a Cayley block of k^G."""
    Hf, Hg, jf, jg = double_inclusions(D)
    G = Hg.structure
    if group_certs is None:
        from .permgrp import small_generating_set
        import numpy as np

        gens = small_generating_set(G, np.ones(len(G), dtype=bool))
        group_certs = [fourier_magic(Hg, g) for g in gens]
    if fun_cert is None:
        fun_cert = cayley_magic(Hf)
    blocks = [embed(c, jg, verify=False) for c in group_certs] + [embed(fun_cert, jf, verify=False)]
    cert = verify_magic(D, block_diagonal([b.entries for b in blocks]),
                        [p for b in blocks for p in b.provenance])
    if not cert.is_full_certificate:
        raise GenerationFailure(f"blocks generate dimension {cert.generated_dim} of {D.dim}")
    return cert


# ---------------------------------------------------------------------------
# JSON


def cert_to_json(cert: MagicCert, degree_bound: dict | None = None, embed_parent: bool = True) -> dict:
    H = cert.parent
    from math import lcm

    N = H.conductor()
    for row in cert.entries:
        for v in row:
            for x in v.values():
                N = lcm(N, x.n)
    out = {
        "format": FORMAT_TAG,
        "size": cert.size,
        "conductor": N,
        "entries": [[[[k, scalar_to_text(c, N)] for k, c in sorted(v.items())] for v in row]
                    for row in cert.entries],
        "generated_dim": cert.generated_dim,
        "generation_method": cert.generation_method,
        "full": cert.is_full_certificate,
        "provenance": cert.provenance,
    }
    if degree_bound is not None:
        out["degree_bound"] = degree_bound
    if embed_parent:
        out["parent"] = to_json(H)
    return out


def cert_from_json(obj: dict, parent: HopfData | None = None, verify: bool = True) -> MagicCert:
    if obj.get("format") != FORMAT_TAG:
        raise ValueError(f"not a {FORMAT_TAG} document")
    H = parent if parent is not None else from_json(obj["parent"])
    N = int(obj["conductor"])
    u = [[{k: scalar_from_text(c, N) for k, c in v} for v in row] for row in obj["entries"]]
    for row in u:
        for v in row:
            for k in [k for k, c in v.items() if c.is_zero()]:
                del v[k]
    if verify:
        return verify_magic(H, u, obj.get("provenance", []))
    return MagicCert(H, u, int(obj.get("generated_dim", -1)), obj.get("generation_method", ""),
                     obj.get("provenance", []))
