"""Reduction of cyclotomic data modulo a prime p = 1 (mod N)."""

from __future__ import annotations

from functools import lru_cache

from .exactnum import Cyclotomic

_PRIME_CEIL = 2**31 - 1


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 7, 61):  # deterministic below 2**32
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _prime_factors(n: int) -> list[int]:
    out, q = [], 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


@lru_cache(maxsize=None)
def primes_for(conductor: int, count: int = 3) -> tuple[tuple[int, int], ...]:
    """The largest ``count`` primes p < 2**31 with p = 1 mod N, each with a primitive N-th root."""
    out = []
    p = _PRIME_CEIL - ((_PRIME_CEIL - 1) % conductor)
    qs = _prime_factors(conductor)
    while len(out) < count:
        if _is_prime(p):
            for a in range(2, p):
                r = pow(a, (p - 1) // conductor, p)
                if all(pow(r, conductor // q, p) != 1 for q in qs):
                    out.append((p, r))
                    break
        p -= conductor
    return tuple(out)


class ModpMap:
    """Ring map Z[1/d][zeta_N] -> GF(p) sending zeta_N to a fixed primitive root."""

    def __init__(self, conductor: int, p: int, root: int):
        self.n, self.p, self.root = conductor, p, root

    def __call__(self, x: Cyclotomic) -> int:
        p = self.p
        if x.den % p == 0:
            raise ZeroDivisionError("denominator divisible by the chosen prime")
        step = self.n // x.n
        r = pow(self.root, step, p)
        acc, rk = 0, 1
        for c in x.num:
            if c:
                acc = (acc + c * rk) % p
            rk = rk * r % p
        return acc * pow(x.den % p, p - 2, p) % p
