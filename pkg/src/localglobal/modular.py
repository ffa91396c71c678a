"""Modular-integer primitives: gcd machinery, CRT, Euler phi, quadratic
residues and square roots modulo primes."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import lru_cache

from .errors import Degenerate, NonResidue, NotCoprime, NotOddPrime, Unsolvable

SIEVE_LIMIT = 10**6


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``g = gcd(|a|, |b|) = a*x + b*y``."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    if old_r == 0:
        return 0, 0, 0
    return old_r, old_x, old_y


@dataclass(frozen=True)
class LinearSolution:
    """Solutions of ``a*x + b*y = c``: ``(x0 + step_x*t, y0 + step_y*t)``."""

    x0: int
    y0: int
    step_x: int
    step_y: int

    def at(self, t: int) -> tuple[int, int]:
        return self.x0 + self.step_x * t, self.y0 + self.step_y * t


def solve_linear2(a: int, b: int, c: int) -> LinearSolution:
    if a == 0 and b == 0:
        raise Degenerate("a = b = 0")
    d, X, Y = ext_gcd(a, b)
    if c % d:
        raise Unsolvable(f"gcd({a}, {b}) = {d} does not divide {c}")
    e = c // d
    return LinearSolution(e * X, e * Y, b // d, -(a // d))


@dataclass(frozen=True)
class ResidueSystem:
    """A system of congruences ``x = r_i (mod m_i)``, residues normalized."""

    pairs: tuple[tuple[int, int], ...]

    def __init__(self, pairs):
        norm = []
        for r, m in pairs:
            if m < 1:
                raise ValueError(f"modulus must be positive, got {m}")
            norm.append((r % m, m))
        object.__setattr__(self, "pairs", tuple(norm))

    @property
    def moduli(self) -> list[int]:
        return [m for _, m in self.pairs]

    def offending_pair(self) -> tuple[int, int] | None:
        mods = self.moduli
        for i in range(len(mods)):
            for j in range(i + 1, len(mods)):
                if math.gcd(mods[i], mods[j]) != 1:
                    return mods[i], mods[j]
        return None

    @property
    def coprime(self) -> bool:
        return self.offending_pair() is None


def crt(system) -> tuple[int, int]:
    """Chinese remainder: ``a = sum a_i X_i M_i`` with ``M_i = N / N_i`` and
    ``X_i M_i = 1 (mod N_i)``, reduced into ``[0, N)``."""
    if not isinstance(system, ResidueSystem):
        system = ResidueSystem(system)
    bad = system.offending_pair()
    if bad is not None:
        raise NotCoprime(*bad)
    N = math.prod(system.moduli)
    a = 0
    for a_i, N_i in system.pairs:
        M_i = N // N_i
        X_i = pow(M_i, -1, N_i) if N_i > 1 else 0
        a += a_i * X_i * M_i
    return a % N, N


# --- factorization -------------------------------------------------------

@lru_cache(maxsize=1)
def _smallest_factor_table() -> list[int]:
    spf = list(range(SIEVE_LIMIT + 1))
    for i in range(2, math.isqrt(SIEVE_LIMIT) + 1):
        if spf[i] == i:
            for j in range(i * i, SIEVE_LIMIT + 1, i):
                if spf[j] == j:
                    spf[j] = i
    return spf


@lru_cache(maxsize=None)
def _small_primes() -> tuple[int, ...]:
    return tuple(p for p in range(2, 1000) if all(p % q for q in range(2, math.isqrt(p) + 1)))


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24, strong probable prime above."""
    if n < 2:
        return False
    for p in _small_primes()[:25]:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
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


def _pollard_rho(n: int) -> int:
    if n % 2 == 0:
        return 2
    rng = random.Random(n)
    while True:
        c = rng.randrange(1, n)
        f = lambda v: (v * v + c) % n  # noqa: E731
        x = y = rng.randrange(2, n)
        d = 1
        while d == 1:
            x = f(x)
            y = f(f(y))
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of ``|n|`` as ``{p: e}``; ``{}`` for 0 and 1."""
    n = abs(n)
    out: dict[int, int] = {}
    if n < 2:
        return out
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if m <= SIEVE_LIMIT:
            spf = _smallest_factor_table()
            while m > 1:
                p = spf[m]
                out[p] = out.get(p, 0) + 1
                m //= p
            continue
        for p in _small_primes():
            while m % p == 0:
                out[p] = out.get(p, 0) + 1
                m //= p
        if m <= SIEVE_LIMIT:
            stack.append(m)
        elif is_prime(m):
            out[m] = out.get(m, 0) + 1
        else:
            d = _pollard_rho(m)
            stack.extend((d, m // d))
    return dict(sorted(out.items()))


def prime_factors(n: int) -> list[int]:
    return list(factorize(n))


def primes_between(lo: int, hi: int) -> list[int]:
    """All primes ``lo <= p <= hi``."""
    if hi <= SIEVE_LIMIT:
        spf = _smallest_factor_table()
        return [p for p in range(max(lo, 2), hi + 1) if spf[p] == p]
    return [p for p in range(max(lo, 2), hi + 1) if is_prime(p)]


def euler_phi(N: int) -> int:
    if N < 1:
        raise ValueError("euler_phi needs N >= 1")
    result = 1
    for p, a in factorize(N).items():
        result *= p ** (a - 1) * (p - 1)
    return result


def valuation(n: int, p: int) -> int:
    """``ord_p(n)`` for nonzero integer n."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def squarefree_part(n: int) -> int:
    """Signed squarefree kernel: ``n = s * t^2`` with s squarefree."""
    sign = -1 if n < 0 else 1
    s = 1
    for p, e in factorize(n).items():
        if e % 2:
            s *= p
    return sign * s


# --- quadratic residues ---------------------------------------------------

def legendre_symbol(a: int, p: int) -> int:
    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise NotOddPrime(f"{p} is not an odd prime")
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def sqrt_mod_p(a: int, p: int) -> int:
    """Least root ``r`` of ``r^2 = a (mod p)``; raises NonResidue otherwise."""
    a %= p
    if p == 2 or a == 0:
        return a
    if legendre_symbol(a, p) != 1:
        raise NonResidue(f"{a} is not a square mod {p}")
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
    else:
        r = _tonelli_shanks(a, p)
    return min(r, p - r)


def _tonelli_shanks(a: int, p: int) -> int:
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def least_nonresidue(p: int) -> int:
    v = 2
    while legendre_symbol(v, p) != -1:
        v += 1
    return v


def sqrt_mod_prime_power(a: int, p: int, k: int) -> int | None:
    """A root of ``x^2 = a (mod p^k)`` or None (brute force below p^k <= 64
    for p = 2, Hensel lifting for odd p and units)."""
    mod = p**k
    a %= mod
    if p == 2 or a % p == 0:
        if mod <= 1 << 16:
            for x in range(mod):
                if x * x % mod == a:
                    return x
            return None
        raise ValueError("only small moduli supported for p = 2 or non-units")
    r = sqrt_mod_p(a, p)
    pk = p
    for _ in range(1, k):
        pk *= p
        r = (r - (r * r - a) * pow(2 * r, -1, pk)) % pk
    return r % mod
