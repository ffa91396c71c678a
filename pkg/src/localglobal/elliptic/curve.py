"""Weierstrass curves over Q: Tate invariants, the chord-tangent group law,
coordinate changes, reduction mod p and point counting."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from ..errors import BadReduction, PointNotOnCurve, SingularCurve, SmallCharacteristic
from ..modular import factorize, is_prime, legendre_symbol, squarefree_part


@dataclass(frozen=True)
class ECPoint:
    """Affine point ``(x, y)`` or the point at infinity ``O = (0 : 1 : 0)``."""

    x: Fraction | None = None
    y: Fraction | None = None

    @classmethod
    def infinity(cls) -> ECPoint:
        return cls(None, None)

    @classmethod
    def affine(cls, x, y) -> ECPoint:
        return cls(Fraction(x), Fraction(y))

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __str__(self) -> str:
        return "O" if self.is_infinity else f"({self.x}, {self.y})"

    def is_integral(self) -> bool:
        return self.is_infinity or (self.x.denominator == 1 and self.y.denominator == 1)


O = ECPoint.infinity()


@dataclass(frozen=True)
class TateInvariants:
    b2: Fraction
    b4: Fraction
    b6: Fraction
    b8: Fraction
    c4: Fraction
    c6: Fraction
    disc: Fraction
    j: Fraction | None  # None when disc == 0


@dataclass(frozen=True)
class CoordinateChange:
    """``x = u^2 x' + r``, ``y = u^3 y' + s u^2 x' + t``."""

    u: Fraction = Fraction(1)
    r: Fraction = Fraction(0)
    s: Fraction = Fraction(0)
    t: Fraction = Fraction(0)

    def compose(self, other: CoordinateChange) -> CoordinateChange:
        """Apply ``self`` first, then ``other`` (on the new coordinates)."""
        u1, r1, s1, t1 = self.u, self.r, self.s, self.t
        u2, r2, s2, t2 = other.u, other.r, other.s, other.t
        return CoordinateChange(
            u1 * u2,
            r1 + u1 * u1 * r2,
            s1 + u1 * s2,
            t1 + u1 * u1 * s1 * r2 + u1**3 * t2,
        )

    def to_new(self, P: ECPoint) -> ECPoint:
        if P.is_infinity:
            return P
        u, r, s, t = self.u, self.r, self.s, self.t
        x = (P.x - r) / (u * u)
        y = (P.y - s * (P.x - r) - t) / u**3
        return ECPoint(x, y)

    def to_old(self, P: ECPoint) -> ECPoint:
        if P.is_infinity:
            return P
        u, r, s, t = self.u, self.r, self.s, self.t
        return ECPoint(u * u * P.x + r, u**3 * P.y + s * u * u * P.x + t)


class WeierstrassCurve:
    """``y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6`` over Q."""

    __slots__ = ("a1", "a2", "a3", "a4", "a6", "_tate")

    def __init__(self, a1=0, a2=0, a3=0, a4=0, a6=0):
        self.a1, self.a2, self.a3, self.a4, self.a6 = (Fraction(v) for v in (a1, a2, a3, a4, a6))
        self._tate = None

    @classmethod
    def from_list(cls, coeffs: Sequence) -> WeierstrassCurve:
        coeffs = list(coeffs)
        if len(coeffs) == 2:
            return cls(0, 0, 0, coeffs[0], coeffs[1])
        if len(coeffs) != 5:
            raise ValueError("need [a1,a2,a3,a4,a6] or [a4,a6]")
        return cls(*coeffs)

    @classmethod
    def parse(cls, text: str) -> WeierstrassCurve:
        """Parse ``[0,0,1,-7,6]`` (PARI ellinit style) or whitespace separated."""
        parts = [p for p in re.split(r"[\s,\[\]]+", text.strip()) if p]
        return cls.from_list([Fraction(p) for p in parts])

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    def __eq__(self, other):
        return isinstance(other, WeierstrassCurve) and self.coefficients == other.coefficients

    def __hash__(self):
        return hash(self.coefficients)

    def __repr__(self) -> str:
        return f"WeierstrassCurve({self.bracket()})"

    def bracket(self) -> str:
        return "[" + ",".join(str(a) for a in self.coefficients) + "]"

    def __str__(self) -> str:
        a1, a2, a3, a4, a6 = self.coefficients

        def mono(c, var, first=False):
            if c == 0:
                return ""
            sign = "-" if c < 0 else ("" if first else "+")
            mag = abs(c)
            body = var if (mag == 1 and var) else (f"{mag}{var}" if var else f"{mag}")
            return f" {sign} {body}" if not first else f"{sign}{body}"

        lhs = "y^2" + mono(a1, "xy") + mono(a3, "y")
        rhs = "x^3" + mono(a2, "x^2") + mono(a4, "x") + mono(a6, "")
        return f"{lhs} = {rhs}"

    # --- invariants --------------------------------------------------------

    def tate_invariants(self) -> TateInvariants:
        if self._tate is None:
            a1, a2, a3, a4, a6 = self.coefficients
            b2 = a1 * a1 + 4 * a2
            b4 = 2 * a4 + a1 * a3
            b6 = a3 * a3 + 4 * a6
            b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
            c4 = b2 * b2 - 24 * b4
            c6 = -(b2**3) + 36 * b2 * b4 - 216 * b6
            disc = -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
            j = c4**3 / disc if disc else None
            self._tate = TateInvariants(b2, b4, b6, b8, c4, c6, disc, j)
        return self._tate

    @property
    def discriminant(self) -> Fraction:
        return self.tate_invariants().disc

    @property
    def j_invariant(self) -> Fraction | None:
        return self.tate_invariants().j

    def is_singular(self) -> bool:
        return self.discriminant == 0

    def is_integral(self) -> bool:
        return all(a.denominator == 1 for a in self.coefficients)

    # --- points ------------------------------------------------------------

    def contains(self, P: ECPoint) -> bool:
        if P.is_infinity:
            return True
        x, y = P.x, P.y
        a1, a2, a3, a4, a6 = self.coefficients
        return y * y + a1 * x * y + a3 * y == x**3 + a2 * x * x + a4 * x + a6

    def _check(self, *points: ECPoint) -> None:
        if self.is_singular():
            raise SingularCurve(f"{self} is singular")
        for P in points:
            if not self.contains(P):
                raise PointNotOnCurve(f"{P} is not on {self}")

    def point(self, x, y) -> ECPoint:
        P = ECPoint.affine(x, y)
        if not self.contains(P):
            raise PointNotOnCurve(f"{P} is not on {self}")
        return P

    def negate(self, P: ECPoint) -> ECPoint:
        if P.is_infinity:
            return P
        return ECPoint(P.x, -P.y - self.a1 * P.x - self.a3)

    def add(self, P: ECPoint, Q: ECPoint) -> ECPoint:
        self._check(P, Q)
        return self._add(P, Q)

    def _add(self, P: ECPoint, Q: ECPoint) -> ECPoint:
        if P.is_infinity:
            return Q
        if Q.is_infinity:
            return P
        a1, a2, a3, a4, _ = self.coefficients
        x1, y1, x2, y2 = P.x, P.y, Q.x, Q.y
        if x1 == x2:
            if y1 + y2 + a1 * x2 + a3 == 0:
                return O
            lam = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) / (2 * y1 + a1 * x1 + a3)
        else:
            lam = (y2 - y1) / (x2 - x1)
        nu = y1 - lam * x1
        x3 = lam * lam + a1 * lam - a2 - x1 - x2
        y3 = -(lam + a1) * x3 - nu - a3
        return ECPoint(x3, y3)

    def multiply(self, k: int, P: ECPoint) -> ECPoint:
        self._check(P)
        if k < 0:
            return self.negate(self.multiply(-k, P))
        result, base = O, P
        while k:
            if k & 1:
                result = self._add(result, base)
            k >>= 1
            if k:
                base = self._add(base, base)
        return result

    def order(self, P: ECPoint, bound: int = 12) -> int | None:
        """Order of P if it is at most ``bound``, else None."""
        self._check(P)
        Q = P
        for k in range(1, bound + 1):
            if Q.is_infinity:
                return k
            Q = self._add(Q, P)
        return None

    # --- models ------------------------------------------------------------

    def change_coordinates(self, ch: CoordinateChange) -> WeierstrassCurve:
        u, r, s, t = ch.u, ch.r, ch.s, ch.t
        a1, a2, a3, a4, a6 = self.coefficients
        return WeierstrassCurve(
            (a1 + 2 * s) / u,
            (a2 - s * a1 + 3 * r - s * s) / u**2,
            (a3 + r * a1 + 2 * t) / u**3,
            (a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t) / u**4,
            (a6 + r * a4 + r * r * a2 + r**3 - t * a3 - t * t - r * t * a1) / u**6,
        )

    def integral_model(self) -> tuple[WeierstrassCurve, CoordinateChange]:
        """Scale ``a_i -> d^i a_i`` with the least d making every a_i integral."""
        den = math.lcm(*(a.denominator for a in self.coefficients))
        d = 1
        for p in factorize(den):
            k = 0
            for a, i in zip(self.coefficients, (1, 2, 3, 4, 6)):
                v = 0
                q = a.denominator
                while q % p == 0:
                    q //= p
                    v += 1
                k = max(k, -(-v // i))
            d *= p**k
        ch = CoordinateChange(u=Fraction(1, d))
        return self.change_coordinates(ch), ch

    def minimal_model(self) -> tuple[WeierstrassCurve, CoordinateChange]:
        """Integral model with u^12 stripped from Delta wherever an integral
        (r, s, t) exists, then normalized to a1, a3 in {0,1}, a2 in {-1,0,1}."""
        if self.is_singular():
            raise SingularCurve(f"{self} is singular")
        E, ch = self.integral_model()
        progress = True
        while progress:
            progress = False
            disc = int(E.discriminant)
            for p, e in factorize(disc).items():
                if e < 12:
                    continue
                step = _reduce_at(E, p)
                if step is not None:
                    E = E.change_coordinates(step)
                    ch = ch.compose(step)
                    progress = True
                    break
        step = _normalization(E)
        return E.change_coordinates(step), ch.compose(step)

    def short_model(self) -> tuple[int, int, CoordinateChange]:
        """Integral ``Y^2 = X^3 + A X + B`` with ``A = -27 c4``, ``B = -54 c6``
        (of an integral model), plus the change of coordinates to it."""
        E, ch = self.integral_model()
        tate = E.tate_invariants()
        a1, a3 = E.a1, E.a3
        # X = 36 x + 3 b2, Y = 108 (2 y + a1 x + a3)
        to_short = CoordinateChange(
            u=Fraction(1, 6), r=-tate.b2 / 12, s=-a1 / 2, t=a1 * tate.b2 / 24 - a3 / 2
        )
        return int(-27 * tate.c4), int(-54 * tate.c6), ch.compose(to_short)

    # --- reduction ---------------------------------------------------------

    def reduce_coefficients(self, p: int) -> tuple[int, ...]:
        if any(a.denominator % p == 0 for a in self.coefficients):
            raise BadReduction(f"{p} divides a coefficient denominator")
        return tuple(a.numerator * pow(a.denominator, -1, p) % p for a in self.coefficients)

    def has_good_reduction(self, p: int) -> bool:
        if any(a.denominator % p == 0 for a in self.coefficients):
            return False
        d = self.discriminant
        return d.numerator % p != 0


def _reduce_at(E: WeierstrassCurve, p: int) -> CoordinateChange | None:
    """A change with u = p keeping integrality, if one exists."""
    a1, a2, a3, a4, a6 = (int(a) for a in E.coefficients)
    for s in range(p):
        if (a1 + 2 * s) % p:
            continue
        for r in range(p * p):
            if (a2 - s * a1 + 3 * r - s * s) % (p * p):
                continue
            for t in range(p**3):
                ch = CoordinateChange(Fraction(p), Fraction(r), Fraction(s), Fraction(t))
                if E.change_coordinates(ch).is_integral():
                    return ch
    return None


def _normalization(E: WeierstrassCurve) -> CoordinateChange:
    a1, a2, a3 = int(E.a1), int(E.a2), int(E.a3)
    s = -(a1 - a1 % 2) // 2
    a2p = a2 - s * a1 - s * s
    r = -((a2p + 1) // 3)  # lands a2 + 3r in {-1, 0, 1}
    a3p = a3 + r * a1
    t = -(a3p - a3p % 2) // 2
    return CoordinateChange(Fraction(1), Fraction(r), Fraction(s), Fraction(t))


# --- point counting ----------------------------------------------------------


def count_points_naive(coeffs: Sequence[int], p: int) -> int:
    """Projective points of the (possibly singular) reduced equation, by
    enumerating all ``(x, y)`` in F_p^2, plus the point at infinity."""
    a1, a2, a3, a4, a6 = (int(c) % p for c in coeffs)
    x = np.arange(p, dtype=np.int64)
    y = np.arange(p, dtype=np.int64)
    X, Y = np.meshgrid(x, y, indexing="ij")
    lhs = (Y * Y + a1 * X % p * Y + a3 * Y) % p
    rhs = ((X * X % p) * X + a2 * (X * X % p) + a4 * X + a6) % p
    return int(np.count_nonzero(lhs == rhs)) + 1


def _squares_table(p: int) -> np.ndarray:
    table = np.full(p, -1, dtype=np.int64)
    r = np.arange(1, p, dtype=np.int64)
    table[(r * r) % p] = 1
    table[0] = 0
    return table


def character_sum(A: int, B: int, p: int) -> int:
    """``sum_x chi(x^3 + A x + B)`` over F_p."""
    x = np.arange(p, dtype=np.int64)
    f = ((x * x % p) * x + A * x + B) % p
    return int(_squares_table(p)[f].sum())


def short_model_mod_p(E: WeierstrassCurve, p: int) -> tuple[int, int]:
    """``(A, B)`` with E isomorphic over F_p (p >= 5) to y^2 = x^3 + A x + B."""
    tate = E.tate_invariants()
    c4 = tate.c4.numerator * pow(tate.c4.denominator, -1, p) % p
    c6 = tate.c6.numerator * pow(tate.c6.denominator, -1, p) % p
    return (-27 * c4) % p, (-54 * c6) % p


def count_points_mod_p(E: WeierstrassCurve, p: int, method: str = "auto") -> int:
    """``N_p = #E(F_p)``; ``p + 1 + sum chi(x^3 + a x + b)`` for p >= 5."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if not E.has_good_reduction(p):
        raise BadReduction(f"{p} is a prime of bad reduction")
    if p < 5:
        if method == "charsum":
            raise SmallCharacteristic("no short Weierstrass form in characteristic 2 or 3")
        return count_points_naive(E.reduce_coefficients(p), p)
    if method == "naive":
        return count_points_naive(E.reduce_coefficients(p), p)
    A, B = short_model_mod_p(E, p)
    return p + 1 + character_sum(A, B, p)


# --- char 2 / 3 normal forms -------------------------------------------------


@dataclass(frozen=True)
class NormalFormCheck:
    kind: str
    nonsingular: bool


def recognize_normal_form(coeffs: Sequence[int], p: int) -> NormalFormCheck:
    """Classify reduced coefficients as one of the small-characteristic
    normal forms and report the nonsingularity condition.

    p = 2: ``y^2 + xy = x^3 + a2 x^2 + a6`` (needs Delta != 0) or
    ``y^2 + a3 y = x^3 + a4 x + a6`` (needs a3 != 0);
    p = 3: ``y^2 = x^3 + a2 x^2 + a4 x + a6`` (no repeated roots);
    p >= 5: ``y^2 = x^3 + a4 x + a6`` with ``-16(4 a4^3 + 27 a6^2) != 0``.
    """
    a1, a2, a3, a4, a6 = (int(c) % p for c in coeffs)
    disc = int(WeierstrassCurve(a1, a2, a3, a4, a6).discriminant) % p
    if p == 2:
        if a1 == 1 and a3 == 0 and a4 == 0:
            return NormalFormCheck("char2_j_nonzero", disc != 0)
        if a1 == 0 and a2 == 0:
            return NormalFormCheck("char2_j_zero", a3 != 0)
    elif p == 3:
        if a1 == 0 and a3 == 0:
            return NormalFormCheck("char3", disc != 0)
    elif a1 == a2 == a3 == 0:
        return NormalFormCheck("short", (-16 * (4 * a4**3 + 27 * a6**2)) % p != 0)
    return NormalFormCheck("general", disc != 0)


# --- Frobenius traces ----------------------------------------------------------


def reduction_type(E: WeierstrassCurve, p: int) -> str:
    """'good', 'split', 'nonsplit' or 'additive' for an integral model.

    At a singular point the tangent slopes m solve
    ``m^2 + a1 m - (3 x0 + a2) = 0``; two rational slopes mean split
    multiplicative, conjugate slopes non-split, a double slope a cusp.
    """
    if not E.is_integral():
        raise ValueError("reduction type needs an integral model")
    if E.has_good_reduction(p):
        return "good"
    a1, a2, a3, a4, a6 = (int(a) % p for a in E.coefficients)
    if p == 2:
        pts = [
            (x, y)
            for x in range(2)
            for y in range(2)
            if (y * y + a1 * x * y + a3 * y - x**3 - a2 * x * x - a4 * x - a6) % 2 == 0
            and (a1 * y - 3 * x * x - 2 * a2 * x - a4) % 2 == 0
            and (2 * y + a1 * x + a3) % 2 == 0
        ]
        if not pts:
            # the singular point is not F_2-rational only for inseparable cases
            return "additive"
        x0, _ = pts[0]
        c = (3 * x0 + a2) % 2
        roots = [m for m in range(2) if (m * m + a1 * m - c) % 2 == 0]
        if a1 == 0:
            return "additive"
        return "split" if roots else "nonsplit"
    tate = E.tate_invariants()
    b2, b4, b6 = (int(v) % p for v in (tate.b2, tate.b4, tate.b6))
    # (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
    x0 = next(
        x for x in range(p)
        if (4 * x**3 + b2 * x * x + 2 * b4 * x + b6) % p == 0
        and (12 * x * x + 2 * b2 * x + 2 * b4) % p == 0
    )
    disc = (b2 + 12 * x0) % p  # = a1^2 + 4 (3 x0 + a2)
    if disc == 0:
        return "additive"
    return "split" if legendre_symbol(disc, p) == 1 else "nonsplit"


def ap(E: WeierstrassCurve, p: int) -> int:
    """Trace of Frobenius: ``p + 1 - N_p`` at good p; +1 / -1 / 0 for split,
    non-split and additive reduction.  E must be an integral (minimal) model."""
    kind = reduction_type(E, p)
    if kind == "good":
        return p + 1 - count_points_mod_p(E, p)
    return {"split": 1, "nonsplit": -1, "additive": 0}[kind]


def conductor(E: WeierstrassCurve) -> int | None:
    """``|Delta_min|`` when the minimal discriminant is squarefree, else None."""
    Em, _ = E.minimal_model()
    d = int(Em.discriminant)
    return abs(d) if squarefree_part(abs(d)) == abs(d) else None


def singular_cubic_parametrize(t) -> tuple[Fraction, Fraction]:
    """Rational point ``(t^2 - 1, t (t^2 - 1))`` of the nodal cubic ``y^2 = x^2 + x^3``."""
    t = Fraction(t)
    x = t * t - 1
    return x, t * x


GENERATOR_877_X = Fraction(
    375494528127162193105504069942092792346201,
    6215987776871505425463220780697238044100,
)


def is_rational_square(q: Fraction) -> bool:
    q = Fraction(q)
    if q < 0:
        return False
    n, d = q.numerator, q.denominator
    return math.isqrt(n) ** 2 == n and math.isqrt(d) ** 2 == d


def check_generator_877(x=GENERATOR_877_X) -> bool:
    """Is ``x^3 + 877 x`` the square of a rational number?"""
    x = Fraction(x)
    return is_rational_square(x**3 + 877 * x)
