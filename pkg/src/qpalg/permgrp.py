"""Permutation groups by full enumeration.

Permutations compose right to left: ``(g*h)(i) = g(h(i))``.  Elements of a
group are sorted lexicographically by one-line notation, so the identity is
always element 0.
"""

from __future__ import annotations

import re
from functools import cached_property
from itertools import product as iproduct
from math import lcm
from typing import Iterable, Sequence

import numpy as np

from . import _kernels

DEFAULT_ORDER_CAP = 10080


class OrderLimitExceeded(RuntimeError):
    pass


class CycleSyntaxError(ValueError):
    pass


class Perm:
    """A permutation of {1..n}; stored 0-based."""

    __slots__ = ("img", "_hash")

    def __init__(self, img: Sequence[int]):
        self.img = tuple(img)
        self._hash = hash(self.img)

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return cls(range(n))

    @classmethod
    def from_images(cls, images: Sequence[int]) -> "Perm":
        """From 1-based one-line notation."""
        img = tuple(i - 1 for i in images)
        if sorted(img) != list(range(len(img))):
            raise ValueError(f"not a permutation: {list(images)}")
        return cls(img)

    @classmethod
    def from_cycles(cls, text: str, degree: int) -> "Perm":
        return parse_cycles(text, degree)

    @property
    def degree(self) -> int:
        return len(self.img)

    @property
    def images(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in self.img)

    def __call__(self, point: int) -> int:
        """Image of a 1-based point."""
        return self.img[point - 1] + 1

    def __mul__(self, other: "Perm") -> "Perm":
        a = self.img
        return Perm(tuple(a[j] for j in other.img))

    def inverse(self) -> "Perm":
        inv = [0] * len(self.img)
        for i, j in enumerate(self.img):
            inv[j] = i
        return Perm(inv)

    def __pow__(self, k: int) -> "Perm":
        base = self if k >= 0 else self.inverse()
        out = Perm.identity(self.degree)
        for _ in range(abs(k)):
            out = out * base
        return out

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.img))

    def order(self) -> int:
        o = 1
        for c in self.cycles():
            o = lcm(o, len(c))
        return o

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, 1-based, each starting at its least point."""
        seen, out = set(), []
        for start in range(len(self.img)):
            if start in seen:
                continue
            cyc, j = [], start
            while j not in seen:
                seen.add(j)
                cyc.append(j + 1)
                j = self.img[j]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def __eq__(self, other):
        return isinstance(other, Perm) and self.img == other.img

    def __lt__(self, other: "Perm"):
        return self.img < other.img

    def __hash__(self):
        return self._hash

    def __str__(self):
        cyc = self.cycles()
        if not cyc:
            return "()"
        sep = "" if self.degree <= 9 else " "
        return "".join("(" + sep.join(map(str, c)) + ")" for c in cyc)

    def __repr__(self):
        return f"Perm({self})"


_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int) -> Perm:
    """Parse cycle notation such as ``(1 2 3)(4 5)``, ``(1342)`` or ``()``.

    Points without separators are read digit by digit (degree <= 9 only).
    """
    s = text.strip()
    if not s:
        raise CycleSyntaxError("empty permutation")
    pos, img = 0, list(range(degree))
    for m in _CYCLE.finditer(s):
        if s[pos:m.start()].strip():
            raise CycleSyntaxError(f"unexpected {s[pos:m.start()]!r} in {text!r}")
        pos = m.end()
        body = m.group(1).strip()
        if not body:
            continue
        if re.search(r"[\s,]", body):
            pts = [int(t) for t in re.split(r"[\s,]+", body) if t]
        elif degree <= 9:
            pts = [int(ch) for ch in body]
        else:
            pts = [int(body)]
        if any(p < 1 or p > degree for p in pts):
            raise CycleSyntaxError(f"point out of range 1..{degree} in {text!r}")
        if len(set(pts)) != len(pts):
            raise CycleSyntaxError(f"repeated point in cycle {m.group(0)!r}")
        cyc = Perm(tuple(_cycle_images(pts, degree)))
        img = [cyc.img[j] for j in img]
    if s[pos:].strip():
        raise CycleSyntaxError(f"unexpected {s[pos:]!r} in {text!r}")
    return Perm(img)


def _cycle_images(pts: list[int], degree: int) -> list[int]:
    img = list(range(degree))
    for a, b in zip(pts, pts[1:] + pts[:1]):
        img[a - 1] = b - 1
    return img


class PermGroup:
    """A finite permutation group with enumerated, sorted elements."""

    def __init__(self, degree: int, generators: Sequence[Perm], elements: Sequence[Perm]):
        self.degree = degree
        self.generators = tuple(generators)
        self.elements = tuple(sorted(elements))
        self.index = {g: i for i, g in enumerate(self.elements)}

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g: Perm) -> bool:
        return g in self.index

    def __eq__(self, other):
        return isinstance(other, PermGroup) and self.elements == other.elements

    def __hash__(self):
        return hash(self.elements)

    def __repr__(self):
        gens = ", ".join(map(str, self.generators)) or "()"
        return f"PermGroup(order={self.order}, gens=[{gens}])"

    @cached_property
    def identity(self) -> Perm:
        return Perm.identity(self.degree)

    @cached_property
    def table(self) -> np.ndarray:
        arr = np.array([g.img for g in self.elements], dtype=np.int64).reshape(len(self), self.degree)
        t = _kernels.cayley_table(arr)
        if (t < 0).any():
            raise ValueError("element list is not closed under composition")
        return t

    @cached_property
    def inv(self) -> np.ndarray:
        t = self.table
        return np.argmax(t == 0, axis=1)

    def mul(self, i: int, j: int) -> int:
        return int(self.table[i, j])

    def is_abelian(self) -> bool:
        t = self.table
        return bool((t == t.T).all())

    @cached_property
    def exponent(self) -> int:
        e = 1
        for g in self.elements:
            e = lcm(e, g.order())
        return e

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return all(g in other for g in self.elements)

    def mask(self, elements: Iterable[Perm]) -> np.ndarray:
        m = np.zeros(len(self), dtype=np.bool_)
        for g in elements:
            m[self.index[g]] = True
        return m

    def subgroup_from_mask(self, mask: np.ndarray, generators: Sequence[Perm] | None = None) -> "PermGroup":
        elems = [self.elements[i] for i in np.nonzero(mask)[0]]
        if generators is None:
            generators = small_generating_set(self, mask)
        return PermGroup(self.degree, generators, elems)

    def closure_mask(self, elements: Iterable[Perm]) -> np.ndarray:
        return _kernels.closure(self.table, self.mask(elements))

    def label(self, g: Perm) -> str:
        return str(g)


def small_generating_set(G: PermGroup, mask: np.ndarray) -> list[Perm]:
    """Greedy generating set of the masked subgroup, by descending element order."""
    idx = [int(i) for i in np.nonzero(mask)[0]]
    idx.sort(key=lambda i: (-G.elements[i].order(), i))
    gens: list[int] = []
    cur = np.zeros(len(G), dtype=np.bool_)
    cur[0] = True
    for i in idx:
        if not cur[i]:
            gens.append(i)
            m = np.zeros(len(G), dtype=np.bool_)
            m[gens] = True
            cur = _kernels.closure(G.table, m)
    return [G.elements[i] for i in gens]


def group_closure(degree: int, generators: Sequence[Perm], cap: int = DEFAULT_ORDER_CAP) -> PermGroup:
    """Enumerate the group generated by ``generators`` (orbit of 1 under right multiplication)."""
    gens = []
    for g in generators:
        if g.degree != degree:
            raise ValueError(f"generator {g} has degree {g.degree}, expected {degree}")
        if not g.is_identity() and g not in gens:
            gens.append(g)
    ident = Perm.identity(degree)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                k = h * g
                if k not in seen:
                    seen.add(k)
                    if len(seen) > cap:
                        raise OrderLimitExceeded(f"group order exceeds cap {cap}")
                    nxt.append(k)
        frontier = nxt
    return PermGroup(degree, gens, seen)


def parse_group(degree: int, gens: Sequence[str], cap: int = DEFAULT_ORDER_CAP) -> PermGroup:
    return group_closure(degree, [parse_cycles(s, degree) for s in gens], cap)


def symmetric(n: int) -> PermGroup:
    if n <= 1:
        return group_closure(max(n, 1), [])
    gens = [parse_cycles("(1 2)", n)]
    if n > 2:
        gens.append(Perm(tuple(list(range(1, n)) + [0])))
    return group_closure(n, gens)


def alternating(n: int) -> PermGroup:
    gens = [Perm(_cycle_images([1, 2, k], n)) for k in range(3, n + 1)]
    return group_closure(n, gens)


def cyclic(n: int, degree: int | None = None) -> PermGroup:
    degree = n if degree is None else degree
    return group_closure(degree, [Perm(_cycle_images(list(range(1, n + 1)), degree))] if n > 1 else [])


def point_stabilizer(G: PermGroup, point: int) -> PermGroup:
    mask = np.array([g(point) == point for g in G.elements], dtype=np.bool_)
    return G.subgroup_from_mask(mask)


def generated_subgroup(G: PermGroup, parts: Sequence[PermGroup]) -> PermGroup:
    elems = [g for P in parts for g in P.generators]
    for P in parts:
        if not P.is_subgroup_of(G):
            raise ValueError("part is not contained in the ambient group")
    return G.subgroup_from_mask(G.closure_mask(elems))


def _mask_key(mask: np.ndarray) -> bytes:
    return np.packbits(mask).tobytes()


def subgroups(G: PermGroup, filter: str = "all", cap: int = DEFAULT_ORDER_CAP) -> list[PermGroup]:
    """All subgroups of G matching ``filter`` (all, abelian, cyclic), sorted by (order, elements).

    Joins of cyclic subgroups, closed until no new subgroup appears.
    """
    if len(G) > cap:
        raise OrderLimitExceeded(f"group order exceeds cap {cap}")
    if filter not in ("all", "abelian", "cyclic"):
        raise ValueError(f"unknown filter {filter!r}")
    table = G.table
    cyc: dict[bytes, np.ndarray] = {}
    for i in range(len(G)):
        m = np.zeros(len(G), dtype=np.bool_)
        m[i] = True
        c = _kernels.closure(table, m)
        cyc.setdefault(_mask_key(c), c)
    cyclic_masks = list(cyc.values())
    if filter == "cyclic":
        found = dict(cyc)
    else:
        commute = table == table.T
        found = dict(cyc)
        layer = list(cyc.values())
        while layer:
            nxt = []
            for H in layer:
                for C in cyclic_masks:
                    if (C & ~H).sum() == 0:
                        continue
                    if filter == "abelian" and not commute[np.ix_(H, C)].all():
                        continue
                    J = _kernels.closure(table, H | C)
                    k = _mask_key(J)
                    if k not in found:
                        found[k] = J
                        nxt.append(J)
            layer = nxt
    out = [G.subgroup_from_mask(m) for m in found.values()]
    out.sort(key=lambda H: (H.order, H.elements))
    return out


def is_abelian_subgroup(H: PermGroup) -> bool:
    return H.is_abelian()


def direct_product(G: PermGroup, H: PermGroup) -> tuple[PermGroup, PermGroup, PermGroup]:
    """G x H acting on disjoint points; returns (product, copy of G, copy of H)."""
    d1, d2 = G.degree, H.degree

    def left(g: Perm) -> Perm:
        return Perm(g.img + tuple(range(d1, d1 + d2)))

    def right(h: Perm) -> Perm:
        return Perm(tuple(range(d1)) + tuple(d1 + j for j in h.img))

    P = group_closure(d1 + d2, [left(g) for g in G.generators] + [right(h) for h in H.generators])
    GL = PermGroup(d1 + d2, [left(g) for g in G.generators], [left(g) for g in G.elements])
    HR = PermGroup(d1 + d2, [right(h) for h in H.generators], [right(h) for h in H.elements])
    return P, GL, HR


def pair_perm(g: Perm, h: Perm) -> Perm:
    d1 = g.degree
    return Perm(g.img + tuple(d1 + j for j in h.img))


def split_pair(p: Perm, d1: int) -> tuple[Perm, Perm]:
    return Perm(p.img[:d1]), Perm(tuple(j - d1 for j in p.img[d1:]))


def diagonal(G: PermGroup) -> PermGroup:
    """The diagonal copy {(g, g)} inside G x G."""
    return PermGroup(2 * G.degree, [pair_perm(g, g) for g in G.generators],
                     [pair_perm(g, g) for g in G.elements])


def characters(G: PermGroup) -> tuple[int, list[tuple[int, ...]]]:
    """Linear characters of G as exponent vectors: chi(g_i) = zeta_e ** chi[i].

    Returns (e, characters) with e the exponent of G; characters sorted.
    """
    e = G.exponent
    gi = [G.index[g] for g in G.generators]
    choices = [range(0, e, e // G.elements[i].order()) for i in gi]
    out = []
    table = G.table
    for vals in iproduct(*choices):
        chi = [-1] * len(G)
        chi[0] = 0
        queue, ok = [0], True
        while queue and ok:
            a = queue.pop()
            for gidx, v in zip(gi, vals):
                b = int(table[a, gidx])
                w = (chi[a] + v) % e
                if chi[b] < 0:
                    chi[b] = w
                    queue.append(b)
                elif chi[b] != w:
                    ok = False
                    break
        if ok:
            for a in range(len(G)):
                for b in range(len(G)):
                    if chi[int(table[a, b])] != (chi[a] + chi[b]) % e:
                        ok = False
                        break
                if not ok:
                    break
        if ok:
            out.append(tuple(chi))
    out.sort()
    return e, out


def element_orders(table: np.ndarray, identity: int) -> list[int]:
    out = []
    for i in range(table.shape[0]):
        k, j = 1, i
        while j != identity:
            j = int(table[j, i])
            k += 1
        out.append(k)
    return out


def find_isomorphism(t1: np.ndarray, e1: int, t2: np.ndarray, e2: int) -> list[int] | None:
    """A bijection phi with phi(a*b) = phi(a)*phi(b) between two Cayley tables, or None."""
    n = t1.shape[0]
    if t2.shape[0] != n:
        return None
    o1, o2 = element_orders(t1, e1), element_orders(t2, e2)
    if sorted(o1) != sorted(o2):
        return None
    # greedy generating set of the first table
    gens: list[int] = []
    reached = {e1}
    for i in sorted(range(n), key=lambda i: -o1[i]):
        if i in reached:
            continue
        gens.append(i)
        reached = _table_closure(t1, e1, gens)
        if len(reached) == n:
            break
    cands = [[j for j in range(n) if o2[j] == o1[g]] for g in gens]
    for imgs in iproduct(*cands):
        phi = {e1: e2}
        queue, ok = [e1], True
        while queue and ok:
            a = queue.pop()
            for g, h in zip(gens, imgs):
                b, w = int(t1[a, g]), int(t2[phi[a], h])
                if b not in phi:
                    phi[b] = w
                    queue.append(b)
                elif phi[b] != w:
                    ok = False
                    break
        if not ok or len(set(phi.values())) != n:
            continue
        if all(phi[int(t1[a, b])] == int(t2[phi[a], phi[b]]) for a in range(n) for b in range(n)):
            return [phi[i] for i in range(n)]
    return None


def _table_closure(table: np.ndarray, e: int, gens: list[int]) -> set[int]:
    seen, queue = {e}, [e]
    while queue:
        a = queue.pop()
        for g in gens:
            b = int(table[a, g])
            if b not in seen:
                seen.add(b)
                queue.append(b)
    return seen


def dihedral(n: int) -> PermGroup:
    """Symmetries of an n-gon on {1..n}; order 2n."""
    rot = Perm(_cycle_images(list(range(1, n + 1)), n))
    refl = Perm(tuple((-i) % n for i in range(n)))
    return group_closure(n, [rot, refl])


def affine_group(p: int) -> PermGroup:
    """x -> ax + b over F_p acting on {1..p} (point k is residue k-1)."""
    trans = Perm(tuple((i + 1) % p for i in range(p)))
    g = next(a for a in range(2, p) if all(pow(a, (p - 1) // q, p) != 1
                                           for q in range(2, p) if (p - 1) % q == 0 and all(q % r for r in range(2, q))))
    mult = Perm(tuple(g * i % p for i in range(p)))
    return group_closure(p, [trans, mult])
