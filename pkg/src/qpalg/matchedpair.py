"""Matched pairs of groups read off from exact factorizations G = F Gamma.

For g in Gamma and x in F the product gx is written uniquely as
(g |> x)(g <| x) with g |> x in F and g <| x in Gamma.  Tables are indexed by
positions in the sorted element lists of Gamma and F.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .permgrp import Perm, PermGroup, group_closure, subgroups


class NotExactFactorization(ValueError):
    pass


class CompatibilityFailure(AssertionError):
    pass


def power_labels(G: PermGroup, var: str = "z") -> Callable[[Perm], str] | None:
    """Labels ``1, z, z^2, ...`` when G is cyclic on its first generator."""
    if not G.generators:
        return lambda g: "1"
    z = G.generators[0]
    if z.order() != G.order:
        return None
    names = {}
    p = G.identity
    for k in range(G.order):
        names[p] = "1" if k == 0 else (var if k == 1 else f"{var}^{k}")
        p = p * z
    return names.__getitem__


@dataclass
class MatchedPair:
    G: PermGroup
    F: PermGroup
    Gamma: PermGroup
    act_left: np.ndarray   # [gi, xi] -> index in F of g |> x
    act_right: np.ndarray  # [gi, xi] -> index in Gamma of g <| x
    label_F: Callable[[Perm], str] = field(default=str, repr=False)
    label_Gamma: Callable[[Perm], str] = field(default=str, repr=False)
    description: dict = field(default_factory=dict)

    @property
    def nF(self) -> int:
        return len(self.F)

    @property
    def nGamma(self) -> int:
        return len(self.Gamma)

    def tri(self, gi: int, xi: int) -> int:
        return int(self.act_left[gi, xi])

    def tle(self, gi: int, xi: int) -> int:
        return int(self.act_right[gi, xi])

    def fname(self, xi: int) -> str:
        return self.label_F(self.F.elements[xi])

    def gname(self, gi: int) -> str:
        return self.label_Gamma(self.Gamma.elements[gi])

    def right_action_trivial(self) -> bool:
        return bool((self.act_right == np.arange(self.nGamma)[:, None]).all())

    def left_action_trivial(self) -> bool:
        return bool((self.act_left == np.arange(self.nF)[None, :]).all())

    def verify(self) -> None:
        """Exhaustive check of the factorization identity and the compatibility laws."""
        F, Gm = self.F, self.Gamma
        tF, tG = F.table, Gm.table
        for gi, g in enumerate(Gm.elements):
            for xi, x in enumerate(F.elements):
                if F.elements[self.tri(gi, xi)] * Gm.elements[self.tle(gi, xi)] != g * x:
                    raise CompatibilityFailure(f"factorization at g={g}, x={x}")
        L, R = self.act_left, self.act_right
        for s in range(len(Gm)):
            for x in range(len(F)):
                sx, sl = L[s, x], R[s, x]
                for y in range(len(F)):
                    if L[s, tF[x, y]] != tF[sx, L[sl, y]]:
                        raise CompatibilityFailure(f"s|>(xy) at s={Gm.elements[s]}")
        for s in range(len(Gm)):
            for t in range(len(Gm)):
                st = tG[s, t]
                for x in range(len(F)):
                    if R[st, x] != tG[R[s, L[t, x]], R[t, x]]:
                        raise CompatibilityFailure(f"(st)<|x at s={Gm.elements[s]}, t={Gm.elements[t]}")
        if not (L[:, 0] == 0).all() or not (R[0, :] == 0).all():
            raise CompatibilityFailure("identity not fixed by the actions")
        if not (L[0, :] == np.arange(len(F))).all() or not (R[:, 0] == np.arange(len(Gm))).all():
            raise CompatibilityFailure("identity does not act trivially")

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["g\\x"] + [self.fname(x) for x in range(self.nF)])
        for g in range(self.nGamma):
            w.writerow([self.gname(g)] + [f"{self.fname(self.tri(g, x))} | {self.gname(self.tle(g, x))}"
                                          for x in range(self.nF)])
        return buf.getvalue()


def derive_matched_pair(G: PermGroup, F: PermGroup, Gamma: PermGroup,
                        label_F: Callable[[Perm], str] | None = None,
                        label_Gamma: Callable[[Perm], str] | None = None,
                        description: dict | None = None) -> MatchedPair:
    if not F.is_subgroup_of(G) or not Gamma.is_subgroup_of(G):
        raise NotExactFactorization("F and Gamma must be subgroups of G")
    if len(F) * len(Gamma) != len(G):
        raise NotExactFactorization(f"|F||Gamma| = {len(F)}*{len(Gamma)} != |G| = {len(G)}")
    common = set(F.elements) & set(Gamma.elements)
    if len(common) != 1:
        raise NotExactFactorization(f"F and Gamma intersect in {len(common)} elements")
    split = {}
    for fi, f in enumerate(F.elements):
        for gi, g in enumerate(Gamma.elements):
            split[f * g] = (fi, gi)
    L = np.empty((len(Gamma), len(F)), dtype=np.int64)
    R = np.empty((len(Gamma), len(F)), dtype=np.int64)
    for gi, g in enumerate(Gamma.elements):
        for xi, x in enumerate(F.elements):
            L[gi, xi], R[gi, xi] = split[g * x]
    if label_Gamma is None:
        label_Gamma = power_labels(Gamma) or str
    mp = MatchedPair(G, F, Gamma, L, R, label_F or str, label_Gamma, dict(description or {}))
    mp.verify()
    return mp


@dataclass
class Orbit:
    members: list[int]
    representative: int
    stabilizer: PermGroup


def orbits_and_stabilizers(mp: MatchedPair, side: str) -> list[Orbit]:
    """side='left': Gamma acting on F by |>;  side='right': F acting on Gamma by <|."""
    if side == "left":
        n, acting = mp.nF, mp.Gamma

        def act(a: int, pt: int) -> int:
            return mp.tri(a, pt)
    elif side == "right":
        n, acting = mp.nGamma, mp.F

        def act(a: int, pt: int) -> int:
            return mp.tle(pt, a)
    else:
        raise ValueError("side must be 'left' or 'right'")
    seen = [False] * n
    out = []
    for start in range(n):
        if seen[start]:
            continue
        orb = sorted({act(a, start) for a in range(len(acting))})
        for o in orb:
            seen[o] = True
        stab = np.array([act(a, start) == start for a in range(len(acting))], dtype=np.bool_)
        out.append(Orbit(orb, start, acting.subgroup_from_mask(stab)))
    return out


def is_stable(mp: MatchedPair, T: PermGroup) -> bool:
    idx = [mp.F.index[t] for t in T.elements]
    members = set(idx)
    return all(mp.tri(g, x) in members for g in range(mp.nGamma) for x in idx)


def stable_subgroups(mp: MatchedPair, filter: str = "abelian") -> list[PermGroup]:
    """Subgroups T of F with g |> T = T for every g in Gamma."""
    pool = subgroups(mp.F, "abelian" if filter == "abelian" else "all")
    return [T for T in pool if is_stable(mp, T)]


def trivially_acting_kernel(mp: MatchedPair) -> PermGroup:
    """Largest subgroup of F acting trivially on Gamma through <|."""
    ident = np.arange(mp.nGamma)
    mask = np.array([(mp.act_right[:, x] == ident).all() for x in range(mp.nF)], dtype=np.bool_)
    K = mp.F.subgroup_from_mask(mask)
    if not is_stable(mp, K):
        raise CompatibilityFailure("kernel of <| is not stable under |>")
    return K


def restrict_matched_pair(mp: MatchedPair, F_sub: PermGroup) -> MatchedPair:
    """Matched pair on F' and Gamma' = {g : g |> F' = F'} inside the group they generate."""
    if not F_sub.is_subgroup_of(mp.F):
        raise ValueError("F' is not a subgroup of F")
    idx = {mp.F.index[t] for t in F_sub.elements}
    keep = np.array([all(mp.tri(g, x) in idx for x in idx) for g in range(mp.nGamma)], dtype=np.bool_)
    Gamma_sub = mp.Gamma.subgroup_from_mask(keep, generators=None)
    G_sub = group_closure(mp.G.degree, list(F_sub.generators) + list(Gamma_sub.generators))
    label_Gamma = power_labels(Gamma_sub) if Gamma_sub == mp.Gamma else None
    if Gamma_sub == mp.Gamma:
        Gamma_sub = mp.Gamma
    return derive_matched_pair(G_sub, F_sub, Gamma_sub, mp.label_F, label_Gamma or mp.label_Gamma,
                               {"restricted_from": mp.description})


def transpose(mp: MatchedPair) -> MatchedPair:
    """The pair with the roles of F and Gamma exchanged, from G = Gamma F."""
    return derive_matched_pair(mp.G, mp.Gamma, mp.F, mp.label_Gamma, mp.label_F,
                               {"transpose_of": mp.description})


def factorization_from_gens(degree: int, group: Sequence[str], F: Sequence[str], Gamma: Sequence[str],
                            cap: int | None = None) -> MatchedPair:
    from .permgrp import DEFAULT_ORDER_CAP, parse_cycles

    cap = cap or DEFAULT_ORDER_CAP
    Gg = group_closure(degree, [parse_cycles(s, degree) for s in group], cap)
    Ff = group_closure(degree, [parse_cycles(s, degree) for s in F], cap)
    Gm = group_closure(degree, [parse_cycles(s, degree) for s in Gamma], cap)
    desc = {"degree": degree, "group": list(group), "F": list(F), "Gamma": list(Gamma)}
    return derive_matched_pair(Gg, Ff, Gm, description=desc)
