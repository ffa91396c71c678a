"""Rational torsion by Nagell-Lutz on an integral short model."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from ..errors import MazurViolation, SingularCurve
from ..modular import factorize
from .curve import O, ECPoint, WeierstrassCurve

MAZUR_GROUPS = tuple(
    [(m,) for m in (1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12)] + [(2, 2 * n) for n in (1, 2, 3, 4)]
)


@dataclass(frozen=True)
class TorsionGroup:
    """``invariants`` is ``(n,)`` for Z/nZ or ``(2, 2n)`` for Z/2 x Z/2n."""

    invariants: tuple[int, ...]
    generators: tuple[ECPoint, ...]
    points: tuple[ECPoint, ...]

    @property
    def order(self) -> int:
        return math.prod(self.invariants)

    def __str__(self) -> str:
        if self.invariants == (1,):
            return "trivial"
        return " x ".join(f"Z/{n}Z" for n in self.invariants)


def _square_divisors(D: int) -> list[int]:
    """All y >= 1 with y^2 | D."""
    ys = [1]
    for p, e in factorize(D).items():
        ys = [y * p**k for y in ys for k in range(e // 2 + 1)]
    return sorted(ys)


def _integer_roots(c2: int, c1: int, c0: int) -> list[int]:
    """Integer roots of ``x^3 + c2 x^2 + c1 x + c0``."""
    f = lambda x: ((x + c2) * x + c1) * x + c0  # noqa: E731
    if c0 == 0:
        roots = {0}
        disc = c2 * c2 - 4 * c1
        if disc >= 0:
            r = math.isqrt(disc)
            if r * r == disc:
                roots |= {x for x in ((-c2 + r) // 2, (-c2 - r) // 2) if f(x) == 0}
        return sorted(roots)
    # integer roots lie in [-B, B] with the Cauchy bound; bisect on sign changes
    B = 1 + max(abs(c2), abs(c1), abs(c0))
    roots = set()
    crit = [-B, B]
    d = c2 * c2 - 3 * c1  # f' = 3x^2 + 2 c2 x + c1
    if d >= 0:
        r = math.isqrt(d)
        crit += [(-c2 - r) // 3 - 1, (-c2 + r) // 3 + 1, (-c2 - r) // 3, (-c2 + r) // 3]
    crit = sorted(set(min(max(v, -B), B) for v in crit))
    for lo, hi in zip(crit, crit[1:]):
        for x in (lo, hi):
            if f(x) == 0:
                roots.add(x)
        flo, fhi = f(lo), f(hi)
        if flo * fhi < 0:
            while hi - lo > 1:
                mid = (lo + hi) // 2
                fm = f(mid)
                if fm == 0:
                    break
                if (fm < 0) == (flo < 0):
                    lo, flo = mid, fm
                else:
                    hi = mid
            for x in range(lo, hi + 1):
                if f(x) == 0:
                    roots.add(x)
    # points near the critical points were checked above; include neighbours
    for v in crit:
        for x in (v - 1, v, v + 1):
            if f(x) == 0:
                roots.add(x)
    return sorted(roots)


def torsion_subgroup(E: WeierstrassCurve) -> TorsionGroup:
    """Nagell-Lutz candidates (integral x, y with y = 0 or y^2 | 4A^3 + 27B^2)
    on the short model, each kept if ``k P = O`` for some k <= 12."""
    if E.is_singular():
        raise SingularCurve(f"{E} is singular")
    A, B, ch = E.short_model()
    short = WeierstrassCurve(0, 0, 0, A, B)
    D = abs(4 * A**3 + 27 * B**2)
    found: dict[ECPoint, int] = {O: 1}
    for y in [0] + _square_divisors(D):
        for x in _integer_roots(0, A, B - y * y):
            for yy in {y, -y}:
                P = ECPoint.affine(x, yy)
                n = short.order(P, 12)
                if n is not None:
                    found[P] = n
    n = len(found)
    two_torsion = sum(1 for k in found.values() if k <= 2)
    if two_torsion == 4:
        invariants = (2, n // 2)
        big = next(P for P, k in sorted(found.items(), key=_key) if k == n // 2)
        multiples = {short.multiply(i, big) for i in range(n // 2)}
        other = next(P for P, k in sorted(found.items(), key=_key) if k == 2 and P not in multiples)
        gens = (big, other)
    else:
        invariants = (n,)
        gens = tuple(P for P, k in sorted(found.items(), key=_key) if k == n)[:1] if n > 1 else ()
    if invariants not in MAZUR_GROUPS:
        raise MazurViolation(f"torsion {invariants} is not in Mazur's list (implementation bug)")
    back = lambda P: ch.to_old(P)  # noqa: E731
    points = tuple(sorted((back(P) for P in found), key=_key))
    return TorsionGroup(invariants, tuple(back(P) for P in gens), points)


def _key(item):
    P = item[0] if isinstance(item, tuple) else item
    if P.is_infinity:
        return (0, Fraction(0), Fraction(0))
    return (1, P.x, P.y)
