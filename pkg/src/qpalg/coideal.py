"""Coideal subalgebras: verification, idempotents, coefficient matrices and
the support grading of right coideal subalgebras in split extensions."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import lcm
from typing import Sequence

import numpy as np

from .builders import BicrossedStructure
from .exactnum import ONE, ZERO, Cyclotomic, primitive_root
from .hopf import HopfData
from .linalg import Echelon, Vec, rank, span_basis, vec_iadd, vec_scale, vec_sub
from .permgrp import PermGroup, characters


class NotClosed(ValueError):
    def __init__(self, msg: str, witness=None):
        super().__init__(msg)
        self.witness = witness


class NotCoideal(ValueError):
    def __init__(self, msg: str, witness=None):
        super().__init__(msg)
        self.witness = witness


class EigenvalueOutsideCyclotomic(ArithmeticError):
    pass


class MagicRelationFailure(AssertionError):
    pass


class PreconditionViolated(ValueError):
    pass


class NotRightCoideal(ValueError):
    pass


@dataclass
class CoidealSub:
    parent: HopfData
    side: str
    basis: list[Vec]
    is_subalgebra: bool = True
    is_coideal: bool = True
    commutative: bool = False
    separable: bool = False
    name: str = ""
    _idempotents: list[Vec] | None = field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def echelon(self) -> Echelon:
        e = Echelon()
        for v in self.basis:
            e.add(v)
        return e

    def contains(self, v: Vec) -> bool:
        return self.echelon().contains(v)

    def contained_in(self, basis: Sequence[Vec]) -> bool:
        e = Echelon()
        for v in basis:
            e.add(v)
        return all(e.contains(v) for v in self.basis)

    def describe(self) -> str:
        return self.name or f"{self.side} coideal subalgebra of dim {self.dim}"


def _slices(X: Vec, leg: int) -> dict[int, Vec]:
    """Group a tensor by one leg: leg=0 keys by first factor, values over the second."""
    out: dict[int, Vec] = {}
    for (a, b), c in X.items():
        if leg == 0:
            out.setdefault(a, {})[b] = c
        else:
            out.setdefault(b, {})[a] = c
    return out


def check_coideal_subalgebra(H: HopfData, basis: Sequence[Vec], side: str, name: str = "",
                             require: bool = True) -> CoidealSub:
    """Verify closure and the coideal condition; compute commutativity and separability."""
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    basis = span_basis(basis)
    e = Echelon()
    for v in basis:
        e.add(v)
    sub = CoidealSub(H, side, basis, name=name)
    if not e.contains(H.unit):
        sub.is_subalgebra = False
        if require:
            raise NotClosed("unit not contained", witness="1")
    for i, a in enumerate(basis):
        for j, b in enumerate(basis):
            if not e.contains(H.multiply(a, b)):
                sub.is_subalgebra = False
                if require:
                    raise NotClosed(f"product of basis vectors {i} and {j} leaves the subspace",
                                    witness=(H.format_vec(a), H.format_vec(b)))
                break
        if not sub.is_subalgebra:
            break
    # left: Delta(L) in H (x) L, i.e. slices over the second leg lie in L
    leg = 0 if side == "left" else 1
    for i, v in enumerate(basis):
        if not all(e.contains(s) for s in _slices(H.delta(v), leg).values()):
            sub.is_coideal = False
            if require:
                raise NotCoideal(f"Delta of basis vector {i} leaves H (x) L" if side == "left"
                                 else f"Delta of basis vector {i} leaves R (x) H",
                                 witness=H.format_vec(v))
            break
    sub.commutative = all(H.multiply(a, b) == H.multiply(b, a)
                          for i, a in enumerate(basis) for b in basis[i + 1:])
    if sub.commutative and sub.is_subalgebra:
        sub.separable = _trace_form_nondegenerate(H, basis)
    return sub


def _structure_in_basis(H: HopfData, basis: Sequence[Vec]) -> list[list[Vec]]:
    """c[i][j] = coordinates of basis[i]*basis[j] in the basis."""
    e = Echelon(track=True)
    for k, v in enumerate(basis):
        e.add(v, k)
    out = []
    for a in basis:
        row = []
        for b in basis:
            coords = e.coordinates(H.multiply(a, b))
            if coords is None:
                raise NotClosed("product leaves the subspace")
            row.append(coords)
        out.append(row)
    return out


def _trace_form_nondegenerate(H: HopfData, basis: Sequence[Vec]) -> bool:
    c = _structure_in_basis(H, basis)
    m = len(basis)
    # trace of left multiplication by basis[k]
    tr = [sum((c[k][j].get(j, ZERO) for j in range(m)), ZERO) for k in range(m)]
    rows = []
    for i in range(m):
        row: Vec = {}
        for j in range(m):
            s = ZERO
            for k, x in c[i][j].items():
                s = s + x * tr[k]
            if not s.is_zero():
                row[j] = s
        rows.append(row)
    return rank(rows) == m


# ---------------------------------------------------------------------------
# primitive idempotents


def exponent_bound(H: HopfData) -> int:
    """A multiple of the orders of the roots of unity expected as eigenvalues."""
    st = H.structure
    n = H.conductor()
    if isinstance(st, BicrossedStructure):
        n = lcm(n, st.mp.G.exponent, 2 * st.mp.nF * st.mp.nGamma)
    elif isinstance(st, PermGroup):
        n = lcm(n, st.exponent)
    else:
        n = lcm(n, 2 * H.dim)
    return n


def _poly_roots(coeffs: Sequence[Cyclotomic], M: int) -> list[Cyclotomic] | None:
    """Roots among 0 and the M-th roots of unity, if they account for the full degree."""
    deg = len(coeffs) - 1
    roots = []
    if coeffs[0].is_zero():
        roots.append(ZERO)
    w = primitive_root(M)
    lam = ONE
    for k in range(M):
        if k:
            lam = lam * w
        acc = ZERO
        for c in reversed(coeffs):
            acc = acc * lam + c
        if acc.is_zero():
            roots.append(lam)
        if len(roots) == deg:
            break
    if len(roots) != deg or len(set(roots)) != deg:
        return None
    return roots


def _power_relation(H: HopfData, E: Vec, a: Vec, limit: int) -> list[Cyclotomic]:
    e = Echelon(track=True)
    v = E
    for k in range(limit + 2):
        rel = e.add(v, k)
        if rel is not None:
            return [rel.get(i, ZERO) for i in range(k + 1)]
        v = H.multiply(v, a)
    raise ArithmeticError("power sequence did not become dependent")


def primitive_idempotents(L: CoidealSub, M: int | None = None) -> list[Vec]:
    """Complete set of orthogonal primitive idempotents of a commutative separable L.

    Each idempotent is split along the eigenspaces of multiplication by a basis
    vector of L; eigenvalues are sought among 0 and the M-th roots of unity.
    """
    if L._idempotents is not None:
        return L._idempotents
    if not L.commutative or not L.separable:
        raise PreconditionViolated("primitive idempotents need a commutative separable subalgebra")
    H = L.parent
    M = M or exponent_bound(H)
    m = L.dim
    done: list[Vec] = []
    todo: list[Vec] = [dict(H.unit)]
    while todo:
        E = todo.pop()
        split = None
        stuck = False
        for v in L.basis:
            a = H.multiply(E, v)
            coeffs = _power_relation(H, E, a, m)
            if len(coeffs) <= 2:
                continue
            roots = _poly_roots(coeffs, M)
            if roots is None:
                stuck = True
                continue
            parts = []
            for j, lam in enumerate(roots):
                P = dict(E)
                denom = ONE
                for k, mu in enumerate(roots):
                    if k != j:
                        P = H.multiply(P, vec_sub(a, vec_scale(E, mu)))
                        denom = denom * (lam - mu)
                parts.append(vec_scale(P, denom.inverse()))
            split = parts
            break
        if split is None:
            if stuck:
                raise EigenvalueOutsideCyclotomic(
                    f"eigenvalues of a splitting element are not 0 or {M}-th roots of unity")
            done.append(E)
        else:
            todo.extend(split)
    if len(done) != m:
        raise EigenvalueOutsideCyclotomic(f"found {len(done)} primitive idempotents, expected {m}")
    # smallest conductor keeps later products cheap
    done = [_demoted(v) for v in done]
    done.sort(key=lambda v: sorted((k, repr(c)) for k, c in v.items()))
    L._idempotents = done
    return done


def _demoted(v: Vec) -> Vec:
    return {k: c.demote() for k, c in v.items()}


def check_idempotents(H: HopfData, idems: Sequence[Vec]) -> bool:
    total: Vec = {}
    for i, f in enumerate(idems):
        vec_iadd(total, f)
        for j, g in enumerate(idems):
            prod = H.multiply(f, g)
            if prod != (f if i == j else {}):
                return False
    return total == H.unit


# ---------------------------------------------------------------------------
# coefficient matrices


def coefficient_matrix(L: CoidealSub, verify: bool = True) -> list[list[Vec]]:
    """Entries u[i][j] of H defined by the idempotents f_i of L.

    Left: Delta(f_i) = sum_j u_ij (x) f_j.  Right: Delta(f_i) = sum_j f_j (x) u_ji.
    """
    H = L.parent
    idems = primitive_idempotents(L)
    m = len(idems)
    e = Echelon(track=True)
    for k, f in enumerate(idems):
        e.add(f, k)
    u = [[{} for _ in range(m)] for _ in range(m)]
    for i, f in enumerate(idems):
        d = H.delta(f)
        if L.side == "left":
            for a, s in _slices(d, 0).items():
                coords = e.coordinates(s)
                if coords is None:
                    raise MagicRelationFailure("comultiplication leaves H (x) L")
                for j, c in coords.items():
                    vec_iadd(u[i][j], {a: c})
        else:
            for b, s in _slices(d, 1).items():
                coords = e.coordinates(s)
                if coords is None:
                    raise MagicRelationFailure("comultiplication leaves R (x) H")
                for j, c in coords.items():
                    vec_iadd(u[j][i], {b: c})
    u = [[_demoted(v) for v in row] for row in u]
    if verify:
        from .magic import magic_failures

        fails = magic_failures(H, u, stop_early=True)
        if fails:
            raise MagicRelationFailure(fails[0])
    return u


# ---------------------------------------------------------------------------
# named constructions in bicrossed products


def _structure(H: HopfData) -> BicrossedStructure:
    st = H.structure
    if not isinstance(st, BicrossedStructure):
        raise PreconditionViolated("needs a bicrossed presentation")
    return st


def _cyclic_span(mp, xi: int) -> list[int]:
    out, y = [0], xi
    t = mp.F.table
    while y != 0:
        out.append(y)
        y = int(t[y, xi])
    return sorted(out)


def construct_named(H: HopfData, kind: str, arg=None) -> CoidealSub:
    """kind: 'Lx' (element of F), 'oneKT' / 'XT' (subgroup of F), 'kGH', 'kGamma'."""
    if kind == "kGH":
        g = grouplikes_split(H)[0]
        return check_coideal_subalgebra(H, g, "left", name="kG(H)")
    st = _structure(H)
    mp = st.mp
    if kind == "kGamma":
        basis = [{st.pos(g, 0): ONE} for g in range(mp.nGamma)]
        return check_coideal_subalgebra(H, basis, "left", name="k^Gamma")
    if kind == "Lx":
        if not mp.right_action_trivial():
            raise PreconditionViolated("L^x needs a trivial right action")
        xi = mp.F.index[arg] if not isinstance(arg, int) else arg
        xs = _cyclic_span(mp, xi)
        basis = [{st.pos(g, y): ONE} for g in range(mp.nGamma) for y in xs]
        return check_coideal_subalgebra(H, basis, "left", name=f"L^{mp.fname(xi)}")
    T: PermGroup = arg
    tidx = [mp.F.index[t] for t in T.elements]
    if kind == "oneKT":
        from .matchedpair import is_stable

        if not is_stable(mp, T):
            raise PreconditionViolated("T must be stable under |>")
        basis = [{st.pos(g, t): ONE for g in range(mp.nGamma)} for t in tidx]
        return check_coideal_subalgebra(H, basis, "right", name=f"1#k<{','.join(map(str, T.generators))}>")
    if kind == "XT":
        if not mp.right_action_trivial():
            raise PreconditionViolated("X(T) needs a trivial right action")
        inv = mp.Gamma.inv
        basis = [{st.pos(g, mp.tri(int(inv[g]), y)): ONE} for g in range(mp.nGamma) for y in tidx]
        return check_coideal_subalgebra(H, basis, "right", name=f"X(<{','.join(map(str, T.generators))}>)")
    raise ValueError(f"unknown construction {kind!r}")


def grouplikes_split(H: HopfData) -> tuple[list[Vec], np.ndarray, list[str]]:
    """All group-likes chi # x of a split extension, their multiplication table and names.

    x runs over the points of F fixed by every g |>, chi over the linear characters of Gamma.
    """
    from .hopf import is_grouplike

    st = _structure(H)
    if not st.split:
        raise PreconditionViolated("group-like enumeration needs a split extension")
    mp = st.mp
    e, chars = characters(mp.Gamma)
    fixed = [x for x in range(mp.nF) if all(mp.tri(g, x) == x for g in range(mp.nGamma))]
    elems, names = [], []
    for ci, chi in enumerate(chars):
        for x in fixed:
            v = {st.pos(g, x): Cyclotomic.zeta(e, chi[g]) if e > 1 else ONE for g in range(mp.nGamma)}
            elems.append(v)
            names.append(f"chi{ci}#{mp.fname(x)}")
    for v in elems:
        if not is_grouplike(H, v):
            raise AssertionError("enumerated element is not group-like")
    index = {}
    for k, v in enumerate(elems):
        index[tuple(sorted((i, c) for i, c in v.items()))] = k
    n = len(elems)
    table = np.empty((n, n), dtype=np.int64)
    for a in range(n):
        for b in range(n):
            p = H.multiply(elems[a], elems[b])
            key = tuple(sorted(p.items()))
            if key not in index:
                raise AssertionError("group-likes not closed under multiplication")
            table[a, b] = index[key]
    return elems, table, names


# ---------------------------------------------------------------------------
# grading of right coideal subalgebras


@dataclass
class GradedSupport:
    components: dict[int, list[Vec]]
    support: list[int]
    T: list[int]
    report: dict

    def names(self, mp) -> dict:
        return {"support": [mp.fname(x) for x in self.support], "T": [mp.fname(x) for x in self.T]}


def _in_span(basis: Sequence[Vec], vs: Sequence[Vec]) -> bool:
    e = Echelon()
    for v in basis:
        e.add(v)
    return all(e.contains(v) for v in vs)


def graded_analysis(H: HopfData, R: CoidealSub) -> GradedSupport:
    st = _structure(H)
    mp = st.mp
    if R.side != "right" or not R.is_coideal or not R.is_subalgebra:
        raise NotRightCoideal("graded analysis needs a verified right coideal subalgebra")
    where = st.unpos()
    # projections to k^Gamma # x
    proj: dict[int, list[Vec]] = {}
    for v in R.basis:
        parts: dict[int, Vec] = {}
        for i, c in v.items():
            g, x = where[i]
            parts.setdefault(x, {})[i] = c
        for x, p in parts.items():
            proj.setdefault(x, []).append(p)
    comps = {x: span_basis(vs) for x, vs in sorted(proj.items())}
    comps = {x: b for x, b in comps.items() if b}
    exhaustive = sum(len(b) for b in comps.values()) == R.dim and all(
        _in_span(R.basis, b) for b in comps.values())
    support = sorted(comps)
    T = sorted(x for x, b in comps.items() if any(v.get(st.pos(0, x)) for v in b))
    t = mp.F.table
    is_group = 0 in T and all(int(t[a, b]) in T for a in T for b in T)
    sup = set(support)
    stable = all(mp.tri(g, x) in sup for g in range(mp.nGamma) for x in support)
    # (g -> f)(h) = f(h g): e_k # x  |->  e_{k g^-1} # (g |> x)
    tG, invG = mp.Gamma.table, mp.Gamma.inv
    covariant = True
    for g in range(mp.nGamma):
        for x in support:
            moved = []
            for v in comps[x]:
                w = {}
                for i, c in v.items():
                    k, _ = where[i]
                    w[st.pos(int(tG[k, invG[g]]), mp.tri(g, x))] = c
                moved.append(w)
            target = comps.get(mp.tri(g, x), [])
            if len(target) != len(moved) or not _in_span(target, moved):
                covariant = False
    invF = mp.F.inv
    inverse_closed = all(int(invF[x]) in sup for x in support)
    kGamma = [{st.pos(g, 0): ONE} for g in range(mp.nGamma)]
    contains_kGamma = _in_span(R.basis, kGamma)
    R1 = comps.get(0, [])
    meets_trivially = len(R1) == 1
    report = {
        "grading_exhaustive": exhaustive,
        "T_is_subgroup": is_group,
        "support_stable": stable,
        "translation_covariant": covariant,
        "support_inverse_closed": inverse_closed,
        "contains_kGamma": contains_kGamma,
        "meets_kGamma_trivially": meets_trivially,
    }
    if R.commutative and contains_kGamma:
        report["T_acts_trivially"] = all(mp.tle(g, x) == g for g in range(mp.nGamma) for x in T)
    if R.commutative and meets_trivially:
        Tset = set(T)
        report["T_stable"] = all(mp.tri(g, x) in Tset for g in range(mp.nGamma) for x in T)
    return GradedSupport(comps, support, T, report)
