"""Sparse exact linear algebra over cyclotomic scalars.

Vectors are dicts ``{index: Cyclotomic}`` holding only nonzero entries.
Indices may be any hashable, sortable key (ints for basis vectors, tuples
for tensors).
"""

from __future__ import annotations

from typing import Hashable, Iterable, Sequence

from .exactnum import ONE, ZERO, Cyclotomic, as_scalar

Vec = dict


def vec_add(a: Vec, b: Vec, coef: Cyclotomic = ONE) -> Vec:
    """a + coef*b as a new vector."""
    out = dict(a)
    if coef.is_zero():
        return out
    one = coef.is_one()
    for k, v in b.items():
        term = v if one else coef * v
        cur = out.get(k)
        if cur is None:
            out[k] = term
        else:
            s = cur + term
            if s.is_zero():
                del out[k]
            else:
                out[k] = s
    return out


def vec_iadd(out: Vec, b: Vec, coef: Cyclotomic = ONE) -> None:
    if coef.is_zero():
        return
    one = coef.is_one()
    for k, v in b.items():
        term = v if one else coef * v
        cur = out.get(k)
        if cur is None:
            out[k] = term
        else:
            s = cur + term
            if s.is_zero():
                del out[k]
            else:
                out[k] = s


def vec_scale(a: Vec, c) -> Vec:
    c = as_scalar(c)
    if c.is_zero():
        return {}
    if c.is_one():
        return dict(a)
    return {k: c * v for k, v in a.items()}


def vec_sub(a: Vec, b: Vec) -> Vec:
    return vec_add(a, b, Cyclotomic.rational(-1))


def vec_eq(a: Vec, b: Vec) -> bool:
    return not vec_sub(a, b)


def vec_combine(terms: Iterable[tuple]) -> Vec:
    """Sum of coef*vec over (coef, vec) pairs."""
    out: Vec = {}
    for c, v in terms:
        vec_iadd(out, v, as_scalar(c))
    return out


def unit_vec(i: Hashable) -> Vec:
    return {i: ONE}


def vec_conductor(v: Vec) -> int:
    from math import lcm

    n = 1
    for x in v.values():
        n = lcm(n, x.n)
    return n


class Echelon:
    """Incremental row-echelon form of a growing list of sparse vectors.

    Rows are kept in insertion order with pivot entry 1 and zeros at every
    earlier pivot, so reduction is one pass in insertion order.  With
    ``track=True`` each row remembers which inserted vectors (by tag) it is
    a combination of, which gives coordinates and kernel relations.
    """

    def __init__(self, track: bool = False):
        self.track = track
        self.rows: list[Vec] = []
        self.pivots: list = []
        self.combos: list[Vec] = []
        self.tags: list = []

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, v: Vec, combo: Vec | None = None) -> tuple[Vec, Vec | None]:
        v = dict(v)
        for row, piv, cmb in zip(self.rows, self.pivots, self.combos or [None] * len(self.rows)):
            c = v.get(piv)
            if c is not None:
                neg = -c
                vec_iadd(v, row, neg)
                if combo is not None:
                    vec_iadd(combo, cmb, neg)
        return v, combo

    def add(self, v: Vec, tag: Hashable = None) -> Vec | None:
        """Insert v.  Returns None if independent, else the dependency relation.

        The relation (only meaningful with tracking) is a vector over tags that
        sums to zero: tag + sum of coef*earlier_tags.
        """
        combo = {tag: ONE} if self.track else None
        rem, combo = self.reduce(v, combo)
        if not rem:
            return combo if self.track else {}
        piv = min(rem)
        inv = rem[piv].inverse()
        self.rows.append(vec_scale(rem, inv))
        self.pivots.append(piv)
        if self.track:
            self.combos.append(vec_scale(combo, inv))
            self.tags.append(tag)
        return None

    def contains(self, v: Vec) -> bool:
        rem, _ = self.reduce(v)
        return not rem

    def coordinates(self, v: Vec) -> Vec | None:
        """Coefficients over tags expressing v, or None when v is outside the span."""
        if not self.track:
            raise ValueError("coordinates need a tracking echelon")
        combo: Vec = {}
        rem, combo = self.reduce(v, combo)
        if rem:
            return None
        return vec_scale(combo, Cyclotomic.rational(-1))

    def reduced_basis(self) -> list[Vec]:
        """Fully reduced rows (pivot-only columns), sorted by pivot."""
        order = sorted(range(len(self.rows)), key=lambda i: self.pivots[i])
        rows = [dict(self.rows[i]) for i in order]
        pivs = [self.pivots[i] for i in order]
        for i in range(len(rows) - 1, -1, -1):
            for j in range(i):
                c = rows[j].get(pivs[i])
                if c is not None:
                    vec_iadd(rows[j], rows[i], -c)
        return rows


def rank(vectors: Iterable[Vec]) -> int:
    e = Echelon()
    for v in vectors:
        e.add(v)
    return len(e)


def kernel(images: Sequence[Vec]) -> list[Vec]:
    """Basis of {a : sum_i a_i images[i] = 0}, as vectors over range(len(images))."""
    e = Echelon(track=True)
    out = []
    for i, v in enumerate(images):
        rel = e.add(v, i)
        if rel is not None:
            out.append(rel)
    return out


def span_basis(vectors: Iterable[Vec]) -> list[Vec]:
    e = Echelon()
    for v in vectors:
        e.add(v)
    return e.reduced_basis()


def solve(columns: Sequence[Vec], target: Vec) -> Vec | None:
    """Some a with sum_i a_i columns[i] = target, or None."""
    e = Echelon(track=True)
    for i, c in enumerate(columns):
        e.add(c, i)
    return e.coordinates(target)


def minimal_polynomial(apply, start: Vec, limit: int) -> list[Cyclotomic]:
    """Monic minimal polynomial (low to high) of a linear map on the Krylov space of start.

    ``apply`` maps a vector to its image.
    """
    e = Echelon(track=True)
    v = start
    for k in range(limit + 1):
        rel = e.add(v, k)
        if rel is not None:
            return [rel.get(i, ZERO) for i in range(k + 1)]
        v = apply(v)
    raise ArithmeticError("Krylov sequence did not become dependent")
