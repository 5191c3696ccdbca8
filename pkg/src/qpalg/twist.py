"""2-cocycle twisting of finite-dimensional Hopf algebras."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iproduct
from typing import Sequence

from .builders import Bicharacter, build_group_algebra, exponent_coordinates
from .exactnum import ONE, ZERO, Cyclotomic, as_scalar
from .hopf import HopfData, HopfMap, NoAntipode, solve_antipode, verify_hopf
from .linalg import Echelon, Vec, kernel, span_basis, vec_iadd
from .magic import MagicCert, verify_magic
from .permgrp import Perm, PermGroup

Pair = tuple[int, int]


class InvalidCocycle(ValueError):
    pass


class ConditionFails(AssertionError):
    def __init__(self, which: str, i: int, j: int, l: int, value):
        super().__init__(f"{which}(x[{i}][{j}], x[{i}][{l}]) = {value}, expected "
                         f"{1 if i == j == l else 0}")
        self.which, self.triple, self.value = which, (i, j, l), value


class NotHopfSurjection(ValueError):
    pass


def _pair_terms(H: HopfData, i: int, j: int):
    """Terms ((x1, y1), (x2, y2), coefficient) of Delta(b_i) (x) Delta(b_j)."""
    for (a, b), c in H.comult[i].items():
        for (d, e), f in H.comult[j].items():
            yield (a, d), (b, e), c * f


def convolve(H: HopfData, f: dict, g: dict) -> dict:
    """(f * g)(x, y) = sum f(x1, y1) g(x2, y2) on basis pairs; zeros omitted."""
    out = {}
    n = H.dim
    for i in range(n):
        for j in range(n):
            s = ZERO
            for p1, p2, c in _pair_terms(H, i, j):
                a = f.get(p1)
                if a is None:
                    continue
                b = g.get(p2)
                if b is not None:
                    s = s + c * a * b
            if not s.is_zero():
                out[(i, j)] = s
    return out


def counit_form(H: HopfData) -> dict:
    return {(i, j): H.counit[i] * H.counit[j] for i in range(H.dim) for j in range(H.dim)
            if not (H.counit[i] * H.counit[j]).is_zero()}


def convolution_inverse(H: HopfData, table: dict) -> dict:
    """Inverse in the convolution algebra of (H (x) H)^*, from the minimal relation of the powers."""
    e = Echelon(track=True)
    powers = [counit_form(H)]
    limit = H.dim ** 2 + 1
    for k in range(limit + 1):
        rel = e.add(powers[k], k)
        if rel is not None:
            a0 = rel.get(0, ZERO)
            if a0.is_zero():
                raise InvalidCocycle("cocycle is not convolution invertible")
            inv: dict = {}
            for m, a in rel.items():
                if m >= 1:
                    vec_iadd(inv, powers[m - 1], -a / a0)
            return inv
        powers.append(convolve(H, powers[k], table))
    raise InvalidCocycle("no minimal relation found")


@dataclass
class CocycleForm:
    parent: HopfData
    table: dict
    inverse_table: dict = field(default_factory=dict)
    meta: dict = field(default_factory=dict)

    @classmethod
    def from_table(cls, H: HopfData, table: dict, verify: bool = True, meta: dict | None = None) -> "CocycleForm":
        table = {k: as_scalar(v) for k, v in table.items() if not as_scalar(v).is_zero()}
        sigma = cls(H, table, convolution_inverse(H, table), dict(meta or {}))
        if verify:
            sigma.check()
        return sigma

    @classmethod
    def trivial(cls, H: HopfData) -> "CocycleForm":
        return cls.from_table(H, counit_form(H), meta={"kind": "trivial"})

    def value(self, u: Vec, v: Vec, inverse: bool = False) -> Cyclotomic:
        t = self.inverse_table if inverse else self.table
        s = ZERO
        for i, a in u.items():
            for j, b in v.items():
                c = t.get((i, j))
                if c is not None:
                    s = s + a * b * c
        return s

    def inverse(self, parent: HopfData | None = None) -> "CocycleForm":
        """sigma^-1 as a cocycle on ``parent`` (the twisted algebra)."""
        return CocycleForm(parent or self.parent, dict(self.inverse_table), dict(self.table),
                           {"kind": "inverse", "of": self.meta})

    def is_trivial(self) -> bool:
        return self.table == counit_form(self.parent)

    def left_products(self, i: int, j: int, inverse: bool = False) -> Vec:
        """sum sigma(x1, y1) x2 y2 for x = b_i, y = b_j."""
        H = self.parent
        t = self.inverse_table if inverse else self.table
        out: Vec = {}
        for p1, (b, e), c in _pair_terms(H, i, j):
            s = t.get(p1)
            if s is not None:
                vec_iadd(out, H.mult.get((b, e), {}), c * s)
        return out

    def check(self) -> None:
        H = self.parent
        n = H.dim
        one = H.unit
        for i in range(n):
            b = {i: ONE}
            if self.value(b, one) != H.counit[i] or self.value(one, b) != H.counit[i]:
                raise InvalidCocycle(f"not normalized at basis element {H.labels[i]}")
        eps = counit_form(H)
        if convolve(H, self.table, self.inverse_table) != eps or convolve(H, self.inverse_table, self.table) != eps:
            raise InvalidCocycle("convolution inverse check failed")
        L = {(i, j): self.left_products(i, j) for i in range(n) for j in range(n)}
        for i, j, k in iproduct(range(n), repeat=3):
            lhs = self.value(L[(i, j)], {k: ONE})
            rhs = self.value({i: ONE}, L[(j, k)])
            if lhs != rhs:
                raise InvalidCocycle(f"cocycle identity fails at ({H.labels[i]}, {H.labels[j]}, {H.labels[k]})")


def doi_twist(H: HopfData, sigma: CocycleForm, verify: bool = True) -> HopfData:
    """H^sigma: same coalgebra, [x][y] = sigma(x1, y1) sigma^-1(x3, y3) [x2 y2]."""
    if sigma.parent is not H and not sigma.parent.structure_equal(H, antipode=False):
        raise InvalidCocycle("cocycle belongs to a different Hopf algebra")
    n = H.dim
    right: dict[Pair, Vec] = {}

    def tail(a: int, b: int) -> Vec:
        # sum sigma^-1(u2, v2) u1 v1
        if (a, b) not in right:
            out: Vec = {}
            for (u1, v1), p2, c in _pair_terms(H, a, b):
                s = sigma.inverse_table.get(p2)
                if s is not None:
                    vec_iadd(out, H.mult.get((u1, v1), {}), c * s)
            right[(a, b)] = out
        return right[(a, b)]

    mult = {}
    for i in range(n):
        for j in range(n):
            out: Vec = {}
            for p1, (a, b), c in _pair_terms(H, i, j):
                s = sigma.table.get(p1)
                if s is not None:
                    vec_iadd(out, tail(a, b), c * s)
            if out:
                mult[(i, j)] = out
    meta = {"kind": "twist", "of": H.meta, "cocycle": sigma.meta}
    T = HopfData(list(H.labels), mult, dict(H.unit), [dict(d) for d in H.comult], list(H.counit),
                 None, meta, None)
    try:
        T = T.with_antipode(solve_antipode(T))
    except NoAntipode as exc:
        raise InvalidCocycle(f"twisted algebra has no antipode: {exc}") from exc
    if verify:
        rep = verify_hopf(T)
        if not rep.is_hopf:
            raise InvalidCocycle(f"twisted structure fails: {rep.first_failure()}")
        T.meta["verified"] = True
    return T


@dataclass
class DeformedAlgebra:
    """H with the one-sided product x . y = sigma(x1, y1) x2 y2."""
    labels: list[str]
    mult: dict
    unit: Vec
    center: list[Vec]

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def center_dim(self) -> int:
        return len(self.center)

    def multiply(self, u: Vec, v: Vec) -> Vec:
        out: Vec = {}
        for i, a in u.items():
            for j, b in v.items():
                vec_iadd(out, self.mult.get((i, j), {}), a * b)
        return out


def _center(n: int, mult: dict) -> list[Vec]:
    images = []
    for i in range(n):
        col: Vec = {}
        for g in range(n):
            for k, c in mult.get((i, g), {}).items():
                vec_iadd(col, {(g, k): c})
            for k, c in mult.get((g, i), {}).items():
                vec_iadd(col, {(g, k): -c})
        images.append(col)
    return span_basis(kernel(images))


def cocycle_deform_algebra(sigma: CocycleForm) -> DeformedAlgebra:
    H = sigma.parent
    n = H.dim
    mult = {}
    for i in range(n):
        for j in range(n):
            v = sigma.left_products(i, j)
            if v:
                mult[(i, j)] = v
    return DeformedAlgebra(list(H.labels), mult, dict(H.unit), _center(n, mult))


def lift_cocycle(H: HopfData, p: HopfMap, s: Bicharacter, verify: bool = True) -> CocycleForm:
    """sigma'(a, b) = s(p(a), p(b)) for a Hopf surjection p onto kGamma."""
    Q = p.target
    if Q.meta.get("kind") != "group_algebra" or not isinstance(Q.structure, PermGroup):
        raise NotHopfSurjection("target must be a group algebra")
    if set(Q.structure.elements) != set(s.group.elements):
        raise NotHopfSurjection("bicharacter lives on a different group")
    s.check()
    rep = p.verify()
    if not all(rep.values()) or p.rank() != Q.dim:
        raise NotHopfSurjection(f"not a Hopf surjection: {rep}")
    order = [s.group.index[g] for g in Q.structure.elements]
    table = {}
    imgs = [p({i: ONE}) for i in range(H.dim)]
    for i, u in enumerate(imgs):
        for j, v in enumerate(imgs):
            acc = ZERO
            for a, x in u.items():
                for b, y in v.items():
                    acc = acc + x * y * s(order[a], order[b])
            if not acc.is_zero():
                table[(i, j)] = acc
    return CocycleForm.from_table(H, table, verify,
                                  meta={"kind": "lifted", "bicharacter_gens": [str(g) for g in s.gens]})


def function_algebra_projection(H: HopfData, A: PermGroup, gens: Sequence[Perm]) -> HopfMap:
    """k^G -> k^A = kA^ -> kA, e_a -> |A|^-1 sum_b chi_b(a)^-1 b, with chi_b(a) = prod zeta^(b_i a_i)."""
    G: PermGroup = H.structure
    if H.meta.get("kind") != "function_algebra" or not isinstance(G, PermGroup):
        raise NotHopfSurjection("expected a function algebra on a permutation group")
    if not A.is_subgroup_of(G):
        raise NotHopfSurjection("A is not a subgroup of G")
    Q = build_group_algebra(A)
    coords = exponent_coordinates(A, gens)
    orders = [g.order() for g in gens]
    inv_n = Cyclotomic.rational(1) / len(A)
    images: list[Vec] = []
    for g in G.elements:
        if g not in A.index:
            images.append({})
            continue
        a = coords[A.index[g]]
        img = {}
        for bi, b in enumerate(coords):
            val = ONE
            for ai, bj, m in zip(a, b, orders):
                if ai * bj % m:
                    val = val * Cyclotomic.zeta(m, (-ai * bj) % m)
            img[bi] = val * inv_n
        images.append(img)
    return HopfMap(H, Q, images)


def suff_twist_violation(cert: MagicCert, sigma: CocycleForm) -> ConditionFails | None:
    """First triple violating sigma(x_ij, x_il) = delta_ij delta_il (or its sigma^-1 form)."""
    u = cert.entries
    n = len(u)
    for which, inverse in (("sigma", False), ("sigma^-1", True)):
        for i in range(n):
            for j in range(n):
                for l in range(n):
                    val = sigma.value(u[i][j], u[i][l], inverse)
                    want = ONE if i == j == l else ZERO
                    if val != want:
                        return ConditionFails(which, i, j, l, val)
    return None


def check_suff_twist(cert: MagicCert, sigma: CocycleForm, twisted: HopfData | None = None) -> MagicCert:
    """The same entries as a magic matrix over H^sigma; raises ConditionFails when the condition fails."""
    bad = suff_twist_violation(cert, sigma)
    if bad is not None:
        raise bad
    T = twisted or doi_twist(cert.parent, sigma)
    out = verify_magic(T, cert.entries, [dict(p, twisted=True) for p in cert.provenance])
    # a full certificate must stay full; partial ones are returned as verified magic matrices
    if cert.is_full_certificate and not out.is_full_certificate:
        raise AssertionError(f"twisted entries generate dimension {out.generated_dim} of {T.dim}")
    return out
