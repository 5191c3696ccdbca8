"""Finite-dimensional Hopf algebras given by structure constants."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import lcm
from typing import Any, Iterable, Sequence

import numpy as np

from . import _kernels
from .exactnum import ONE, ZERO, Cyclotomic, as_scalar, scalar_from_text, scalar_to_text
from .linalg import Echelon, Vec, kernel, rank, vec_add, vec_iadd, vec_scale, vec_sub
from .modular import ModpMap, primes_for

FORMAT_TAG = "qpalg.hopf/1"


class NoAntipode(ArithmeticError):
    pass


class HopfAxiomError(ValueError):
    pass


class HopfData:
    """Structure constants of a finite-dimensional Hopf algebra on basis b_0..b_{n-1}.

    mult[(i, j)] is b_i b_j as a sparse vector (missing means zero);
    comult[i] maps (j, k) to the coefficient of b_j (x) b_k in Delta(b_i);
    antipode[i] is S(b_i).  ``meta`` is JSON-able description, ``structure``
    an optional in-memory object (matched pair and basis indexing) set by
    builders.
    """

    def __init__(self, labels: Sequence[str], mult: dict, unit: Vec, comult: Sequence[Vec],
                 counit: Sequence, antipode: Sequence[Vec] | None = None,
                 meta: dict | None = None, structure: Any = None):
        self.labels = list(labels)
        self.dim = len(self.labels)
        self.mult = {k: v for k, v in mult.items() if v}
        self.unit = dict(unit)
        self.comult = [dict(c) for c in comult]
        self.counit = [as_scalar(c) for c in counit]
        self.antipode = None if antipode is None else [dict(s) for s in antipode]
        self.meta = dict(meta or {})
        self.structure = structure
        self._rows: list[list[tuple[int, Vec]]] | None = None
        self._cols: list[list[tuple[int, Vec]]] | None = None

    # indexes ---------------------------------------------------------------
    @property
    def rows(self) -> list[list[tuple[int, Vec]]]:
        """rows[i] = [(j, b_i b_j)] over nonzero products."""
        if self._rows is None:
            rows: list[list] = [[] for _ in range(self.dim)]
            cols: list[list] = [[] for _ in range(self.dim)]
            for (i, j), v in sorted(self.mult.items()):
                rows[i].append((j, v))
                cols[j].append((i, v))
            self._rows, self._cols = rows, cols
        return self._rows

    @property
    def cols(self) -> list[list[tuple[int, Vec]]]:
        self.rows
        return self._cols

    def conductor(self) -> int:
        n = 1
        for v in self.mult.values():
            for x in v.values():
                n = lcm(n, x.n)
        for c in self.comult:
            for x in c.values():
                n = lcm(n, x.n)
        for x in list(self.unit.values()) + self.counit:
            n = lcm(n, x.n)
        for s in self.antipode or []:
            for x in s.values():
                n = lcm(n, x.n)
        return n

    # operations on vectors ------------------------------------------------
    def one(self) -> Vec:
        return dict(self.unit)

    def multiply(self, u: Vec, v: Vec) -> Vec:
        out: Vec = {}
        if len(u) <= len(v):
            for i, a in u.items():
                for j, prod in self.rows[i]:
                    b = v.get(j)
                    if b is not None:
                        vec_iadd(out, prod, a * b)
        else:
            for j, b in v.items():
                for i, prod in self.cols[j]:
                    a = u.get(i)
                    if a is not None:
                        vec_iadd(out, prod, a * b)
        return out

    def right_products(self, u: Vec) -> dict[int, Vec]:
        """{k: u b_k} over k with nonzero product."""
        acc: dict[int, Vec] = {}
        for i, a in u.items():
            for k, prod in self.rows[i]:
                vec_iadd(acc.setdefault(k, {}), prod, a)
        return {k: v for k, v in acc.items() if v}

    def delta(self, u: Vec) -> Vec:
        out: Vec = {}
        for i, a in u.items():
            vec_iadd(out, self.comult[i], a)
        return out

    def eps(self, u: Vec) -> Cyclotomic:
        acc = ZERO
        for i, a in u.items():
            c = self.counit[i]
            if not c.is_zero():
                acc = acc + a * c
        return acc

    def S(self, u: Vec) -> Vec:
        if self.antipode is None:
            raise NoAntipode("antipode not set")
        out: Vec = {}
        for i, a in u.items():
            vec_iadd(out, self.antipode[i], a)
        return out

    def tensor_multiply(self, X: Vec, Y: Vec) -> Vec:
        out: Vec = {}
        for (a, b), c in X.items():
            for (p, q), d in Y.items():
                left = self.mult.get((a, p))
                if left is None:
                    continue
                right = self.mult.get((b, q))
                if right is None:
                    continue
                coef = c * d
                for k, x in left.items():
                    cx = coef * x
                    for l, y in right.items():
                        key = (k, l)
                        val = out.get(key, ZERO) + cx * y
                        if val.is_zero():
                            out.pop(key, None)
                        else:
                            out[key] = val
        return out

    def element(self, coords: Vec | int) -> "Element":
        if isinstance(coords, int):
            coords = {coords: ONE}
        return Element(self, coords)

    def basis_index(self, label: str) -> int:
        return self.labels.index(label)

    def format_vec(self, v: Vec) -> str:
        if not v:
            return "0"
        parts = []
        for k in sorted(v):
            c = v[k]
            lab = self.labels[k]
            if c.is_one():
                parts.append(lab)
            else:
                parts.append(f"{c!r}*{lab}")
        return " + ".join(parts)

    def structure_equal(self, other: "HopfData", antipode: bool = True) -> bool:
        if self.dim != other.dim:
            return False
        if self.mult != other.mult or self.unit != other.unit:
            return False
        if self.comult != other.comult or self.counit != other.counit:
            return False
        if antipode and self.antipode is not None and other.antipode is not None:
            return self.antipode == other.antipode
        return True

    def with_antipode(self, antipode: Sequence[Vec]) -> "HopfData":
        return HopfData(self.labels, self.mult, self.unit, self.comult, self.counit, antipode,
                        self.meta, self.structure)


@dataclass(eq=False)
class Element:
    parent: HopfData
    coords: Vec = field(default_factory=dict)

    def _wrap(self, v: Vec) -> "Element":
        return Element(self.parent, v)

    def __add__(self, other: "Element") -> "Element":
        return self._wrap(vec_add(self.coords, other.coords))

    def __sub__(self, other: "Element") -> "Element":
        return self._wrap(vec_sub(self.coords, other.coords))

    def __neg__(self) -> "Element":
        return self._wrap(vec_scale(self.coords, -1))

    def __mul__(self, other):
        if isinstance(other, Element):
            return self._wrap(self.parent.multiply(self.coords, other.coords))
        return self._wrap(vec_scale(self.coords, other))

    def __rmul__(self, other):
        return self._wrap(vec_scale(self.coords, other))

    def __eq__(self, other):
        return isinstance(other, Element) and not vec_sub(self.coords, other.coords)

    def is_zero(self) -> bool:
        return not self.coords

    def delta(self) -> Vec:
        return self.parent.delta(self.coords)

    def counit(self) -> Cyclotomic:
        return self.parent.eps(self.coords)

    def antipode(self) -> "Element":
        return self._wrap(self.parent.S(self.coords))

    def __repr__(self):
        return self.parent.format_vec(self.coords)


def tensor_of(u: Vec, v: Vec) -> Vec:
    return {(i, j): a * b for i, a in u.items() for j, b in v.items()}


# ---------------------------------------------------------------------------
# verification


@dataclass
class HopfReport:
    associative: bool = True
    unital: bool = True
    coassociative: bool = True
    counital: bool = True
    bialgebra: bool = True
    antipode_left: bool = True
    antipode_right: bool = True
    s_squared_identity: bool = True
    commutative: bool = True
    cocommutative: bool = True
    witnesses: dict = field(default_factory=dict)

    AXIOMS = ("associative", "unital", "coassociative", "counital", "bialgebra",
              "antipode_left", "antipode_right")

    @property
    def is_hopf(self) -> bool:
        return all(getattr(self, k) for k in self.AXIOMS)

    def first_failure(self) -> str | None:
        for k in self.AXIOMS:
            if not getattr(self, k):
                return f"{k}: {self.witnesses.get(k, '')}"
        return None

    def flags(self) -> dict:
        keys = self.AXIOMS + ("s_squared_identity", "commutative", "cocommutative")
        return {k: getattr(self, k) for k in keys}


def _fail(rep: HopfReport, key: str, witness: str) -> None:
    if getattr(rep, key):
        setattr(rep, key, False)
        rep.witnesses[key] = witness


def verify_hopf(H: HopfData, stop_early: bool = False) -> HopfReport:
    """Exhaustive check of every Hopf algebra identity on basis elements."""
    rep = HopfReport()
    n, lab = H.dim, H.labels
    one = H.unit

    for i in range(n):
        b = {i: ONE}
        if H.multiply(one, b) != b or H.multiply(b, one) != b:
            _fail(rep, "unital", f"1*{lab[i]} or {lab[i]}*1")
            break

    # associativity: (b_i b_j) b_k = b_i (b_j b_k) for all k, grouped per (i, j)
    for i in range(n):
        if not rep.associative:
            break
        for j in range(n):
            p = H.mult.get((i, j), {})
            left = H.right_products(p) if p else {}
            right: dict[int, Vec] = {}
            for k, q in H.rows[j]:
                r = H.multiply({i: ONE}, q)
                if r:
                    right[k] = r
            if left != right:
                ks = sorted(set(left) | set(right), key=lambda k: (left.get(k) == right.get(k), k))
                _fail(rep, "associative", f"({lab[i]}*{lab[j]})*{lab[ks[0]]}")
                break

    for i in range(n):
        d = H.comult[i]
        l: Vec = {}
        r: Vec = {}
        for (a, b), c in d.items():
            for (a2, a3), c2 in H.comult[a].items():
                k = (a2, a3, b)
                vec_iadd(l, {k: c2}, c)
            for (b2, b3), c3 in H.comult[b].items():
                k = (a, b2, b3)
                vec_iadd(r, {k: c3}, c)
        if l != r:
            _fail(rep, "coassociative", f"Delta on {lab[i]}")
            break

    for i in range(n):
        d = H.comult[i]
        l, r = {}, {}
        for (a, b), c in d.items():
            ea, eb = H.counit[a], H.counit[b]
            if not ea.is_zero():
                vec_iadd(l, {b: ea}, c)
            if not eb.is_zero():
                vec_iadd(r, {a: eb}, c)
        if l != {i: ONE} or r != {i: ONE}:
            _fail(rep, "counital", f"counit on {lab[i]}")
            break

    # bialgebra: Delta and eps multiplicative and unital
    if H.delta(one) != tensor_of(one, one):
        _fail(rep, "bialgebra", "Delta(1) != 1 (x) 1")
    if H.eps(one) != ONE:
        _fail(rep, "bialgebra", "eps(1) != 1")
    for i in range(n):
        if not rep.bialgebra:
            break
        for j in range(n):
            p = H.mult.get((i, j), {})
            if H.delta(p) != H.tensor_multiply(H.comult[i], H.comult[j]):
                _fail(rep, "bialgebra", f"Delta({lab[i]}*{lab[j]})")
                break
            if H.eps(p) != H.counit[i] * H.counit[j]:
                _fail(rep, "bialgebra", f"eps({lab[i]}*{lab[j]})")
                break

    if H.antipode is None or len(H.antipode) != n:
        _fail(rep, "antipode_left", "antipode missing")
        _fail(rep, "antipode_right", "antipode missing")
        _fail(rep, "s_squared_identity", "antipode missing")
    else:
        for i in range(n):
            target = vec_scale(one, H.counit[i])
            l: Vec = {}
            r: Vec = {}
            for (a, b), c in H.comult[i].items():
                vec_iadd(l, H.multiply(H.antipode[a], {b: ONE}), c)
                vec_iadd(r, H.multiply({a: ONE}, H.antipode[b]), c)
            if l != target:
                _fail(rep, "antipode_left", f"m(S (x) id)Delta({lab[i]})")
            if r != target:
                _fail(rep, "antipode_right", f"m(id (x) S)Delta({lab[i]})")
            if H.S(H.antipode[i]) != {i: ONE}:
                _fail(rep, "s_squared_identity", f"S^2({lab[i]})")

    for (i, j), v in H.mult.items():
        if H.mult.get((j, i), {}) != v:
            _fail(rep, "commutative", f"{lab[i]}*{lab[j]}")
            break
    for i in range(n):
        d = H.comult[i]
        if {(b, a): c for (a, b), c in d.items()} != d:
            _fail(rep, "cocommutative", f"Delta({lab[i]})")
            break
    return rep


def require_hopf(H: HopfData) -> HopfReport:
    rep = verify_hopf(H)
    if not rep.is_hopf:
        raise HopfAxiomError(rep.first_failure())
    return rep


# ---------------------------------------------------------------------------
# antipode


def _conv_step(H: HopfData, f: Vec) -> Vec:
    """f * id in the convolution algebra; f is keyed (j, i): coefficient of b_j in f(b_i)."""
    cols: dict[int, Vec] = {}
    for (j, i), c in f.items():
        cols.setdefault(i, {})[j] = c
    out: Vec = {}
    for i in range(H.dim):
        img: Vec = {}
        for (a, b), c in H.comult[i].items():
            fa = cols.get(a)
            if fa:
                for k, prod in H.cols[b]:
                    x = fa.get(k)
                    if x is not None:
                        vec_iadd(img, prod, c * x)
        for j, c in img.items():
            out[(j, i)] = c
    return out


def solve_antipode(H: HopfData) -> list[Vec]:
    """Convolution inverse of the identity map, then both antipode axioms re-checked.

    The powers id^{*k} are generated until linearly dependent; the resulting
    relation sum a_k id^{*k} = 0 gives S = -(1/a_0) sum_{k>=1} a_k id^{*(k-1)}.
    """
    n = H.dim
    ueps: Vec = {}
    for i in range(n):
        for j, c in H.unit.items():
            x = c * H.counit[i]
            if not x.is_zero():
                ueps[(j, i)] = x
    powers = [ueps]
    e = Echelon(track=True)
    rel = None
    for k in range(n * n + 1):
        rel = e.add(powers[k], k)
        if rel is not None:
            break
        powers.append(_conv_step(H, powers[k]))
    if rel is None:
        raise NoAntipode("convolution powers of id never became dependent")
    a0 = rel.get(0, ZERO)
    if a0.is_zero():
        raise NoAntipode("identity is not convolution invertible")
    S: Vec = {}
    for k, a in rel.items():
        if k >= 1:
            vec_iadd(S, powers[k - 1], a)
    S = vec_scale(S, -(a0.inverse()))
    cols: list[Vec] = [{} for _ in range(n)]
    for (j, i), c in S.items():
        cols[i][j] = c
    G = H.with_antipode(cols)
    for i in range(n):
        target = vec_scale(H.unit, H.counit[i])
        l: Vec = {}
        r: Vec = {}
        for (a, b), c in H.comult[i].items():
            vec_iadd(l, G.multiply(cols[a], {b: ONE}), c)
            vec_iadd(r, G.multiply({a: ONE}, cols[b]), c)
        if l != target or r != target:
            raise NoAntipode(f"antipode axiom fails at {H.labels[i]}")
    return cols


def with_solved_antipode(H: HopfData) -> HopfData:
    return H.with_antipode(solve_antipode(H))


# ---------------------------------------------------------------------------
# maps, duals, exact sequences


class HopfMap:
    """Linear map source -> target given by the images of the source basis."""

    def __init__(self, source: HopfData, target: HopfData, images: Sequence[Vec]):
        if len(images) != source.dim:
            raise ValueError("one image per source basis vector required")
        self.source, self.target = source, target
        self.images = [dict(v) for v in images]

    def __call__(self, v: Vec) -> Vec:
        out: Vec = {}
        for i, a in v.items():
            vec_iadd(out, self.images[i], a)
        return out

    def apply_tensor(self, X: Vec) -> Vec:
        out: Vec = {}
        for (a, b), c in X.items():
            for k, x in self.images[a].items():
                for l, y in self.images[b].items():
                    vec_iadd(out, {(k, l): x * y}, c)
        return out

    def rank(self) -> int:
        return rank(self.images)

    def verify(self) -> dict:
        """Flags for each structure map the linear map should intertwine."""
        S, T = self.source, self.target
        out = {"unit": self(S.unit) == T.unit, "mult": True, "comult": True, "counit": True}
        for i in range(S.dim):
            if T.eps(self.images[i]) != S.counit[i]:
                out["counit"] = False
            if T.delta(self.images[i]) != self.apply_tensor(S.comult[i]):
                out["comult"] = False
        for i in range(S.dim):
            for j in range(S.dim):
                lhs = self(S.mult.get((i, j), {}))
                if lhs != T.multiply(self.images[i], self.images[j]):
                    out["mult"] = False
                    break
            if not out["mult"]:
                break
        return out

    def is_hopf_map(self) -> bool:
        return all(self.verify().values())


def dual(H: HopfData, prefix: str = "d") -> HopfData:
    """The dual Hopf algebra on the dual basis."""
    n = H.dim
    mult: dict = {}
    for i, d in enumerate(H.comult):
        for (a, b), c in d.items():
            mult.setdefault((a, b), {})[i] = c
    comult: list[Vec] = [{} for _ in range(n)]
    for (i, j), v in H.mult.items():
        for k, c in v.items():
            comult[k][(i, j)] = c
    unit = {i: c for i, c in enumerate(H.counit) if not c.is_zero()}
    counit = [H.unit.get(i, ZERO) for i in range(n)]
    antipode = None
    if H.antipode is not None:
        antipode = [{} for _ in range(n)]
        for i, s in enumerate(H.antipode):
            for j, c in s.items():
                antipode[j][i] = c
    labels = [f"{prefix}[{l}]" for l in H.labels]
    meta = {"kind": "dual", "of": H.meta}
    return HopfData(labels, mult, unit, comult, counit, antipode, meta)


def trivial_hopf() -> HopfData:
    return HopfData(["1"], {(0, 0): {0: ONE}}, {0: ONE}, [{(0, 0): ONE}], [ONE], [{0: ONE}],
                    {"kind": "trivial"})


def counit_map(H: HopfData) -> HopfMap:
    """H -> k."""
    return HopfMap(H, trivial_hopf(), [{0: c} if not c.is_zero() else {} for c in H.counit])


def unit_map(H: HopfData) -> HopfMap:
    """k -> H."""
    return HopfMap(trivial_hopf(), H, [dict(H.unit)])


def identity_map(H: HopfData) -> HopfMap:
    return HopfMap(H, H, [{i: ONE} for i in range(H.dim)])


def coinvariants(H: HopfData, pi: HopfMap) -> list[Vec]:
    """Basis of {h : (id (x) pi) Delta(h) = h (x) 1}, reduced echelon form."""
    one = pi.target.unit
    images = []
    for i in range(H.dim):
        t: Vec = {}
        for (a, b), c in H.comult[i].items():
            for k, x in pi.images[b].items():
                vec_iadd(t, {(a, k): x}, c)
        vec_iadd(t, tensor_of({i: ONE}, one), Cyclotomic.rational(-1))
        images.append(t)
    from .linalg import span_basis

    return span_basis(kernel(images))


def verify_exact_sequence(A: HopfData, H: HopfData, iota: HopfMap, pi: HopfMap) -> dict:
    co = coinvariants(H, pi)
    co_ech = Echelon()
    for v in co:
        co_ech.add(v)
    inj = iota.rank() == A.dim
    surj = pi.rank() == pi.target.dim
    inside = all(co_ech.contains(v) for v in iota.images)
    dims = A.dim * pi.target.dim == H.dim
    return {"iota_injective": inj, "pi_surjective": surj, "image_in_coinvariants": inside,
            "image_equals_coinvariants": inside and len(co) == A.dim,
            "dimension_identity": dims,
            "iota_hopf": iota.is_hopf_map(), "pi_hopf": pi.is_hopf_map(),
            "dims": [A.dim, H.dim, pi.target.dim]}


# ---------------------------------------------------------------------------
# generation


def _closure_exact(H: HopfData, seeds: Iterable[Vec], limit: int | None = None) -> Echelon:
    gens_e = Echelon()
    for s in seeds:
        gens_e.add(s)
    gens = gens_e.rows
    e = Echelon()
    e.add(H.unit)
    for g in gens:
        e.add(g)
    head = 0
    while head < len(e):
        if limit is not None and len(e) >= limit:
            break
        v = e.rows[head]
        head += 1
        for g in gens:
            e.add(H.multiply(v, g))
    return e


def subalgebra_span_growth(H: HopfData, seeds: Iterable[Vec]) -> list[Vec]:
    """Reduced echelon basis of the unital subalgebra generated by ``seeds``."""
    return _closure_exact(H, list(seeds)).reduced_basis()


def _mult_triplets(H: HopfData, fmap: ModpMap):
    I, J, K, C = [], [], [], []
    for (i, j), v in H.mult.items():
        for k, c in v.items():
            I.append(i)
            J.append(j)
            K.append(k)
            C.append(fmap(c))
    return (np.array(I, dtype=np.int64), np.array(J, dtype=np.int64),
            np.array(K, dtype=np.int64), np.array(C, dtype=np.int64))


def generated_dimension_modp(H: HopfData, seeds: Sequence[Vec]) -> int | None:
    """A lower bound for the generated dimension, computed modulo a prime.

    Returns None if no prime avoiding all denominators was found.
    """
    N = H.conductor()
    for s in seeds:
        for x in s.values():
            N = lcm(N, x.n)
    for p, r in primes_for(N):
        f = ModpMap(N, p, r)
        try:
            I, J, K, C = _mult_triplets(H, f)
            unit = np.zeros(H.dim, dtype=np.int64)
            for k, c in H.unit.items():
                unit[k] = f(c)
            gens = np.zeros((max(len(seeds), 1), H.dim), dtype=np.int64)
            for g, s in enumerate(seeds):
                for k, c in s.items():
                    gens[g, k] = f(c)
        except ZeroDivisionError:
            continue
        if not seeds:
            gens = gens[:0]
        return _kernels.span_growth_modp(unit, gens, I, J, K, C, p)
    return None


def generated_dimension(H: HopfData, seeds: Sequence[Vec]) -> tuple[int, str]:
    """Dimension of the generated subalgebra and the method that proved it.

    Full generation is proved modulo p when possible: the dimension over F_p
    of the reduced subalgebra never exceeds the dimension over the field.
    """
    seeds = [s for s in seeds if s]
    lower = generated_dimension_modp(H, seeds)
    if lower == H.dim:
        return H.dim, "modular lower bound"
    return len(_closure_exact(H, seeds)), "exact span growth"


def is_subalgebra(H: HopfData, basis: Sequence[Vec]) -> bool:
    e = Echelon()
    for v in basis:
        e.add(v)
    if not e.contains(H.unit):
        return False
    return all(e.contains(H.multiply(a, b)) for a in basis for b in basis)


def is_grouplike(H: HopfData, v: Vec) -> bool:
    return H.eps(v) == ONE and H.delta(v) == tensor_of(v, v)


def is_hopf_subalgebra(H: HopfData, basis: Sequence[Vec]) -> bool:
    """Subalgebra, subcoalgebra and stable under the antipode."""
    if not is_subalgebra(H, basis):
        return False
    e = Echelon()
    for v in basis:
        e.add(v)
    for v in basis:
        if not _tensor_in(e, H.delta(v)):
            return False
        if H.antipode is not None and not e.contains(H.S(v)):
            return False
    return True


def _tensor_in(e: Echelon, X: Vec) -> bool:
    """X in V (x) V for V the span held by ``e``."""
    by_right: dict[int, Vec] = {}
    by_left: dict[int, Vec] = {}
    for (a, b), c in X.items():
        by_right.setdefault(b, {})[a] = c
        by_left.setdefault(a, {})[b] = c
    # X in V (x) H and H (x) V together give V (x) V
    return all(e.contains(v) for v in by_right.values()) and all(e.contains(v) for v in by_left.values())


# ---------------------------------------------------------------------------
# JSON


def to_json(H: HopfData) -> dict:
    N = H.conductor()

    def t(x: Cyclotomic) -> str:
        return scalar_to_text(x, N)

    mult = [[i, j, k, t(c)] for (i, j), v in sorted(H.mult.items()) for k, c in sorted(v.items())]
    comult = [[i, a, b, t(c)] for i, d in enumerate(H.comult) for (a, b), c in sorted(d.items())]
    out = {
        "format": FORMAT_TAG,
        "dim": H.dim,
        "conductor": N,
        "labels": H.labels,
        "mult": mult,
        "unit": [[k, t(c)] for k, c in sorted(H.unit.items())],
        "comult": comult,
        "counit": [[i, t(c)] for i, c in enumerate(H.counit) if not c.is_zero()],
        "meta": H.meta,
    }
    if H.antipode is not None:
        out["antipode"] = [[i, j, t(c)] for i, s in enumerate(H.antipode) for j, c in sorted(s.items())]
    return out


def from_json(obj: dict) -> HopfData:
    if obj.get("format") != FORMAT_TAG:
        raise ValueError(f"not a {FORMAT_TAG} document")
    N = int(obj["conductor"])
    n = int(obj["dim"])

    def s(text: str) -> Cyclotomic:
        return scalar_from_text(text, N)

    mult: dict = {}
    for i, j, k, c in obj["mult"]:
        x = s(c)
        if not x.is_zero():
            mult.setdefault((i, j), {})[k] = x
    comult: list[Vec] = [{} for _ in range(n)]
    for i, a, b, c in obj["comult"]:
        x = s(c)
        if not x.is_zero():
            comult[i][(a, b)] = x
    counit = [ZERO] * n
    for i, c in obj["counit"]:
        counit[i] = s(c)
    unit = {k: s(c) for k, c in obj["unit"]}
    antipode = None
    if "antipode" in obj:
        antipode = [{} for _ in range(n)]
        for i, j, c in obj["antipode"]:
            antipode[i][j] = s(c)
    labels = obj.get("labels") or [f"b{i}" for i in range(n)]
    if len(labels) != n:
        raise ValueError("label count does not match dim")
    return HopfData(labels, mult, unit, comult, counit, antipode, obj.get("meta", {}))


def dumps(H: HopfData) -> str:
    return json.dumps(to_json(H), indent=1, sort_keys=True)
