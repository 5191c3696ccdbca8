"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Elements are stored in the power basis of Q[x]/(Phi_N(x)) as an integer
numerator vector of length phi(N) over a single positive denominator, kept
in lowest terms.  This makes the representation canonical, so equality of
two elements with the same conductor is tuple comparison.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence


class InversionOfZero(ZeroDivisionError):
    pass


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def _divisors(n: int) -> list[int]:
    small = [d for d in range(1, int(n**0.5) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    # both low->high, den monic
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1]
        out[k] = c
        if c:
            for j, d in enumerate(den):
                num[k + j] -= c * d
    assert not any(num), "inexact polynomial division"
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ValueError("conductor must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n)[:-1]:
        poly = _poly_divexact(poly, list(cyclotomic_poly(d)))
    return tuple(poly)


class _Field:
    """Per-conductor tables: x^e mod Phi_N for 0 <= e < N."""

    __slots__ = ("n", "phi", "powers")

    def __init__(self, n: int):
        self.n = n
        phi = euler_phi(n)
        self.phi = phi
        cp = cyclotomic_poly(n)
        powers = []
        vec = [0] * phi
        vec[0] = 1
        for _ in range(n):
            powers.append(tuple(vec))
            # multiply by x, then reduce the x^phi term with the monic Phi_n
            top = vec[-1]
            vec = [0] + vec[:-1]
            if top:
                for j in range(phi):
                    vec[j] -= top * cp[j]
        self.powers = powers


@lru_cache(maxsize=None)
def _field(n: int) -> _Field:
    return _Field(n)


def _normalize(num: list[int], den: int) -> tuple[tuple[int, ...], int]:
    if den < 0:
        num = [-a for a in num]
        den = -den
    g = den
    for a in num:
        if a:
            g = gcd(g, a)
            if g == 1:
                break
    if not any(num):
        return tuple(0 for _ in num), 1
    if g != 1:
        num = [a // g for a in num]
        den //= g
    return tuple(num), den


class Cyclotomic:
    """An element of Q(zeta_n), immutable."""

    __slots__ = ("n", "num", "den")

    def __init__(self, n: int, num: Sequence[int], den: int = 1, *, _canonical: bool = False):
        if _canonical:
            self.n, self.num, self.den = n, num, den
            return
        fld = _field(n)
        if len(num) != fld.phi:
            raise ValueError(f"expected {fld.phi} coefficients for conductor {n}")
        self.n = n
        self.num, self.den = _normalize(list(num), den)

    # construction -----------------------------------------------------
    @classmethod
    def rational(cls, q) -> "Cyclotomic":
        q = Fraction(q)
        return cls(1, (q.numerator,), q.denominator, _canonical=True)

    @classmethod
    def zeta(cls, n: int, k: int = 1) -> "Cyclotomic":
        fld = _field(n)
        return cls(n, fld.powers[k % n], 1, _canonical=True)

    @classmethod
    def from_fractions(cls, n: int, coeffs: Iterable) -> "Cyclotomic":
        fr = [Fraction(c) for c in coeffs]
        den = 1
        for c in fr:
            den = _lcm(den, c.denominator)
        return cls(n, [int(c * den) for c in fr], den)

    # basic queries ------------------------------------------------------
    @property
    def conductor(self) -> int:
        return self.n

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(a, self.den) for a in self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def __bool__(self) -> bool:
        return any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def is_one(self) -> bool:
        return self.den == 1 and self.num[0] == 1 and not any(self.num[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.num[0], self.den)

    # conductor handling -----------------------------------------------
    def promote(self, m: int) -> "Cyclotomic":
        if m == self.n:
            return self
        if m % self.n:
            raise ValueError(f"cannot embed conductor {self.n} into {m}")
        step = m // self.n
        fld = _field(m)
        acc = [0] * fld.phi
        for k, a in enumerate(self.num):
            if a:
                for j, b in enumerate(fld.powers[k * step]):
                    if b:
                        acc[j] += a * b
        num, den = _normalize(acc, self.den)
        return Cyclotomic(m, num, den, _canonical=True)

    def galois(self, k: int) -> "Cyclotomic":
        """Image under zeta -> zeta^k, k coprime to the conductor."""
        n = self.n
        if gcd(k, n) != 1:
            raise ValueError("Galois exponent must be a unit mod the conductor")
        fld = _field(n)
        acc = [0] * fld.phi
        for e, a in enumerate(self.num):
            if a:
                for j, b in enumerate(fld.powers[(e * k) % n]):
                    if b:
                        acc[j] += a * b
        num, den = _normalize(acc, self.den)
        return Cyclotomic(n, num, den, _canonical=True)

    def conjugate(self) -> "Cyclotomic":
        return self.galois(-1 % self.n) if self.n > 2 else self

    def demote(self) -> "Cyclotomic":
        """Same value written over the smallest possible conductor."""
        return _demote(self.n, self.num, self.den)

    # arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> tuple["Cyclotomic", "Cyclotomic"]:
        if not isinstance(other, Cyclotomic):
            if isinstance(other, (int, Fraction)):
                other = Cyclotomic.rational(other)
            else:
                return NotImplemented, NotImplemented
        if other.n == self.n:
            return self, other
        m = _lcm(self.n, other.n)
        return self.promote(m), other.promote(m)

    def __add__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        if a.n == 1:
            x, y = a.num[0] * b.den + b.num[0] * a.den, a.den * b.den
            g = gcd(x, y)
            return Cyclotomic(1, (x // g,), y // g, _canonical=True)
        num = [p * b.den + q * a.den for p, q in zip(a.num, b.num)]
        num, den = _normalize(num, a.den * b.den)
        return Cyclotomic(a.n, num, den, _canonical=True)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.n, tuple(-a for a in self.num), self.den, _canonical=True)

    def __sub__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Cyclotomic) and (self.n == 1 or other.n == 1) and self.n != other.n:
            # rational times field element: scale without promoting
            r, x = (self, other) if self.n == 1 else (other, self)
            q = r.num[0]
            num, den = _normalize([a * q for a in x.num], x.den * r.den)
            return Cyclotomic(x.n, num, den, _canonical=True)
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        if a.n == 1:
            x, y = a.num[0] * b.num[0], a.den * b.den
            g = gcd(x, y)
            return Cyclotomic(1, (x // g,), y // g, _canonical=True)
        fld = _field(a.n)
        phi, n = fld.phi, a.n
        conv = [0] * (2 * phi - 1)
        for i, p in enumerate(a.num):
            if p:
                for j, q in enumerate(b.num):
                    if q:
                        conv[i + j] += p * q
        acc = conv[:phi]
        for e in range(phi, 2 * phi - 1):
            c = conv[e]
            if c:
                for j, v in enumerate(fld.powers[e % n]):
                    if v:
                        acc[j] += c * v
        num, den = _normalize(acc, a.den * b.den)
        return Cyclotomic(n, num, den, _canonical=True)

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        if self.is_zero():
            raise InversionOfZero("inverse of zero in a cyclotomic field")
        if self.n == 1:
            return Cyclotomic(1, (self.den if self.num[0] > 0 else -self.den,), abs(self.num[0]),
                              _canonical=True)
        # a^{-1} = (product of the other Galois conjugates) / norm
        others = Cyclotomic.rational(1)
        for k in range(2, self.n):
            if gcd(k, self.n) == 1:
                others = others * self.galois(k)
        norm = (self * others).demote()
        return others * Cyclotomic.rational(1 / norm.to_fraction())

    def __truediv__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        return a * b.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result, base = Cyclotomic.rational(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self.num[0], self.den) == other
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        if self.n == other.n:
            return self.num == other.num and self.den == other.den
        a, b = self._coerce(other)
        return a.num == b.num and a.den == b.den

    def __hash__(self):
        d = self.demote()
        if d.n == 1:
            return hash(Fraction(d.num[0], d.den))
        return hash((d.n, d.num, d.den))

    # text forms ---------------------------------------------------------
    def to_text(self, var: str = "z") -> str:
        terms = []
        for k, a in enumerate(self.num):
            if not a:
                continue
            c = str(Fraction(a, self.den))
            terms.append(c if k == 0 else f"{c}*{var}" if k == 1 else f"{c}*{var}^{k}")
        return " + ".join(terms) if terms else "0"

    def __repr__(self):
        d = self.demote()
        if d.n == 1:
            return str(Fraction(d.num[0], d.den))
        return f"({d.to_text(f'z{d.n}')})"

    def __str__(self):
        return repr(self)

    def to_json(self) -> dict:
        return {"conductor": self.n, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj: dict) -> "Cyclotomic":
        return cls.from_fractions(int(obj["conductor"]), [Fraction(c) for c in obj["coeffs"]])


_TERM = re.compile(r"^\s*([-+]?\d+(?:/\d+)?)\s*(?:\*\s*z(?:\^(\d+))?)?\s*$")


def scalar_to_text(a: Cyclotomic, n: int) -> str:
    return a.promote(n).to_text()


def scalar_from_text(text: str, n: int) -> Cyclotomic:
    """Parse ``c0 + c1*z + c2*z^2`` with z a primitive n-th root of unity."""
    fld = _field(n)
    coeffs = [Fraction(0)] * fld.phi
    for part in text.split(" + "):
        m = _TERM.match(part)
        if not m:
            if part.strip() == "z":
                m = _TERM.match("1*z")
            else:
                raise ValueError(f"bad scalar term {part!r}")
        k = int(m.group(2)) if m.group(2) else (1 if "z" in part else 0)
        if k >= fld.phi:
            # non-canonical exponent: fold it in through x^k mod Phi_n
            val = Fraction(m.group(1))
            for j, v in enumerate(fld.powers[k % n]):
                coeffs[j] += val * v
        else:
            coeffs[k] += Fraction(m.group(1))
    return Cyclotomic.from_fractions(n, coeffs)


@lru_cache(maxsize=4096)
def _demote(n: int, num: tuple, den: int) -> Cyclotomic:
    if n == 1 or not any(num[1:]):
        return Cyclotomic(1, (num[0],), den, _canonical=True)
    x = Cyclotomic(n, num, den, _canonical=True)
    for d in _divisors(n)[:-1]:
        # x lies in Q(zeta_d) iff it is fixed by every k = 1 mod d
        if all(x.galois(k) == x for k in range(1, n, 1) if gcd(k, n) == 1 and k % d == 1):
            coeffs = _solve_embedding(n, d, x)
            if coeffs is not None:
                return Cyclotomic.from_fractions(d, coeffs)
    return x


def _solve_embedding(n: int, d: int, x: Cyclotomic):
    """Coordinates of x in the image of the power basis of Q(zeta_d)."""
    fd, fn = _field(d), _field(n)
    step = n // d
    cols = [[Fraction(v) for v in fn.powers[k * step]] for k in range(fd.phi)]
    target = list(x.coeffs)
    rows = [[cols[c][r] for c in range(fd.phi)] + [target[r]] for r in range(fn.phi)]
    sol = _rational_solve(rows, fd.phi)
    return sol


def _rational_solve(rows: list[list[Fraction]], ncols: int):
    rows = [r[:] for r in rows]
    piv_cols = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
    if any(row[-1] for row in rows[r:]):
        return None
    sol = [Fraction(0)] * ncols
    for i, c in enumerate(piv_cols):
        sol[c] = rows[i][-1]
    return sol


ZERO = Cyclotomic.rational(0)
ONE = Cyclotomic.rational(1)


def as_scalar(x) -> Cyclotomic:
    if isinstance(x, Cyclotomic):
        return x
    return Cyclotomic.rational(x)


def primitive_root(n: int) -> Cyclotomic:
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return ONE
    if n == 2:
        return Cyclotomic.rational(-1)
    return Cyclotomic.zeta(n)


def cyc_arith(a: Cyclotomic, b: Cyclotomic | None, op: str):
    """Dispatch form of the field operations: add, mul, inv, eq."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inverse()
    if op == "eq":
        return a == b
    raise ValueError(f"unknown op {op!r}")
