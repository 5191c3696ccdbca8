"""Structured-text job inputs: factorizations, cocycle tables, bicharacters and groups."""

from __future__ import annotations

import re
import sys
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .builders import Bicharacter, CocyclePair, zn_zn
from .exactnum import scalar_from_text
from .matchedpair import MatchedPair, factorization_from_gens, power_labels
from .permgrp import DEFAULT_ORDER_CAP, CycleSyntaxError, PermGroup, parse_cycles, parse_group

KINDS = ("factorization", "bicrossed", "group", "lifted_cocycle", "bicharacter")


class SpecError(ValueError):
    """Input error with an optional 1-based line and column."""

    def __init__(self, msg: str, path: str = "", line: int | None = None, col: int | None = None):
        where = path
        if line is not None:
            where += f":{line}:{col or 1}"
        super().__init__(f"{where}: {msg}" if where else msg)
        self.path, self.line, self.col = path, line, col


@dataclass
class Spec:
    kind: str
    data: dict
    path: str = ""
    text: str = field(default="", repr=False)

    def locate(self, key: str) -> tuple[int | None, int | None]:
        """Line and column of ``key = ...`` in the source, when present."""
        m = re.search(rf"^[ \t]*{re.escape(key)}[ \t]*=", self.text, flags=re.M)
        if not m:
            return None, None
        line = self.text.count("\n", 0, m.start()) + 1
        col = m.start() - (self.text.rfind("\n", 0, m.start()) + 1) + 1
        return line, col

    def error(self, key: str, msg: str) -> SpecError:
        line, col = self.locate(key)
        return SpecError(f"{key}: {msg}", self.path, line, col)

    def get(self, key: str, typ, default=...):
        if key not in self.data:
            if default is ...:
                raise SpecError(f"missing key {key!r}", self.path)
            return default
        v = self.data[key]
        if not isinstance(v, typ) or (typ is int and isinstance(v, bool)):
            raise self.error(key, f"expected {getattr(typ, '__name__', typ)}")
        return v

    def strings(self, key: str, default=...) -> list[str]:
        v = self.get(key, list, default)
        if any(not isinstance(s, str) for s in v):
            raise self.error(key, "expected a list of strings")
        return v

    def perm_group(self, key: str, degree: int, cap: int) -> PermGroup:
        gens = self.strings(key)
        try:
            return parse_group(degree, gens, cap)
        except CycleSyntaxError as exc:
            raise self.error(key, str(exc)) from exc


def fixture_path(name: str) -> Path:
    """Path of a shipped fixture, e.g. ``s5_c5``, ``s5_c5.toml`` or ``trivial.json``."""
    if not name.endswith((".toml", ".json")):
        name += ".toml"
    return Path(str(resources.files("qpalg") / "data" / name))


def resolve(path: str) -> Path:
    p = Path(path)
    if p.exists():
        return p
    q = fixture_path(p.name)
    if q.exists():
        return q
    raise SpecError("file not found", path)


def parse_spec_text(text: str, path: str = "<string>") -> Spec:
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        line, col = getattr(exc, "lineno", None), getattr(exc, "colno", None)
        if line is None:
            m = re.search(r"line (\d+), column (\d+)", str(exc))
            line, col = (int(m.group(1)), int(m.group(2))) if m else (None, None)
        raise SpecError(str(exc).split(" (at ")[0], path, line, col) from exc
    kind = data.get("kind")
    spec = Spec(kind, data, path, text)
    if kind not in KINDS:
        raise spec.error("kind", f"expected one of {', '.join(KINDS)}") if "kind" in data \
            else SpecError("missing key 'kind'", path)
    return spec


def load_spec(path: str) -> Spec:
    p = resolve(path)
    return parse_spec_text(p.read_text(encoding="utf-8"), str(path))


def matched_pair_of(spec: Spec, cap: int = DEFAULT_ORDER_CAP) -> MatchedPair:
    if spec.kind not in ("factorization", "bicrossed"):
        raise SpecError(f"a {spec.kind} spec has no factorization", spec.path)
    degree = spec.get("degree", int)
    if not 1 <= degree <= 15:
        raise spec.error("degree", "must lie in 1..15")
    for key in ("group", "F", "Gamma"):
        spec.perm_group(key, degree, cap)
    try:
        mp = factorization_from_gens(degree, spec.strings("group"), spec.strings("F"),
                                     spec.strings("Gamma"), cap)
    except ValueError as exc:
        raise SpecError(str(exc), spec.path) from exc
    mp.description["name"] = spec.get("name", str, "")
    return mp


def _scalar(spec: Spec, key: str, text: str, N: int):
    try:
        return scalar_from_text(text, N)
    except ValueError as exc:
        raise spec.error(key, f"bad scalar {text!r}: {exc}") from exc


def _element(spec: Spec, key: str, G: PermGroup, text: str) -> int:
    try:
        p = parse_cycles(text, G.degree)
    except CycleSyntaxError as exc:
        raise spec.error(key, str(exc)) from exc
    if p not in G.index:
        raise spec.error(key, f"{text} is not an element of the expected group")
    return G.index[p]


def cocycles_of(spec: Spec, mp: MatchedPair) -> CocyclePair:
    N = spec.get("conductor", int, 1)
    cc = CocyclePair()
    for row in spec.get("sigma", list, []):
        if not isinstance(row, list) or len(row) != 4:
            raise spec.error("sigma", "rows are [g, x, y, value]")
        g = _element(spec, "sigma", mp.Gamma, row[0])
        x, y = (_element(spec, "sigma", mp.F, r) for r in row[1:3])
        cc.sigma[(g, x, y)] = _scalar(spec, "sigma", row[3], N)
    for row in spec.get("tau", list, []):
        if not isinstance(row, list) or len(row) != 4:
            raise spec.error("tau", "rows are [x, s, t, value]")
        x = _element(spec, "tau", mp.F, row[0])
        s, t = (_element(spec, "tau", mp.Gamma, r) for r in row[1:3])
        cc.tau[(x, s, t)] = _scalar(spec, "tau", row[3], N)
    return cc


def _values(spec: Spec, key: str, size: int) -> list[list]:
    N = spec.get("conductor", int, 1)
    rows = spec.get(key, list)
    if len(rows) != size or any(not isinstance(r, list) or len(r) != size for r in rows):
        raise spec.error(key, f"expected a {size}x{size} table")
    return [[_scalar(spec, key, v, N) for v in r] for r in rows]


def bicharacter_of(spec: Spec, cap: int = DEFAULT_ORDER_CAP) -> Bicharacter:
    """The bicharacter of a ``bicharacter`` or ``lifted_cocycle`` spec."""
    if spec.kind == "bicharacter":
        n = spec.get("n", int)
        if n < 1:
            raise spec.error("n", "must be positive")
        P, gens = zn_zn(n)
        return Bicharacter.from_generator_values(P, gens, _values(spec, "bicharacter", 2))
    if spec.kind == "lifted_cocycle":
        degree = spec.get("degree", int)
        A = spec.perm_group("subgroup", degree, cap)
        gens = [parse_cycles(s, degree) for s in spec.strings("subgroup")]
        return Bicharacter.from_generator_values(A, gens, _values(spec, "bicharacter", len(gens)))
    raise SpecError(f"a {spec.kind} spec has no bicharacter", spec.path)


def group_of(spec: Spec, cap: int = DEFAULT_ORDER_CAP) -> PermGroup:
    degree = spec.get("degree", int)
    key = "gens" if spec.kind == "group" else "group"
    return spec.perm_group(key, degree, cap)


def gamma_labels(mp: MatchedPair):
    return power_labels(mp.Gamma) or str
