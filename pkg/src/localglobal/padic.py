"""Finite-precision elements of Q_p.

A nonzero value is stored as ``p^valuation * unit`` where ``unit`` is an
integer coprime to p known modulo ``p^(abs_precision - valuation)``.  Digits
are only materialized for printing.  The zero of precision N stands for any
element of ``p^N Z_p`` and renders as ``O(p^N)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import (
    DivisionByZero,
    NotPrincipalUnit,
    PrimeMismatch,
    StartConditionFailed,
    ZeroDenominator,
    ZeroInput,
)
from .modular import factorize, is_prime, least_nonresidue, legendre_symbol, sqrt_mod_p
from .places import INF, Place


def _split(n: int, p: int) -> tuple[int, int]:
    """``n = p^v * u`` with ``p`` not dividing ``u``; n nonzero."""
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v, n


def _rational_valuation(x: Fraction, p: int) -> int:
    return _split(x.numerator, p)[0] - _split(x.denominator, p)[0]


class PAdicNumber:
    __slots__ = ("p", "valuation", "unit", "abs_precision")

    def __init__(self, p: int, valuation: int | None, unit: int, abs_precision: int):
        # valuation None marks the zero element O(p^abs_precision)
        self.p = p
        self.abs_precision = abs_precision
        if valuation is None or unit == 0:
            self.valuation = None
            self.unit = 0
            return
        k = abs_precision - valuation
        if k <= 0:
            self.valuation = None
            self.unit = 0
            return
        extra, unit = _split(unit, p)
        valuation += extra
        k -= extra
        if k <= 0:
            self.valuation = None
            self.unit = 0
            return
        self.valuation = valuation
        self.unit = unit % p**k

    # --- construction ------------------------------------------------------

    @classmethod
    def zero(cls, p: int, abs_precision: int) -> PAdicNumber:
        return cls(p, None, 0, abs_precision)

    @classmethod
    def from_rational(cls, num, den: int = 1, p: int = 2, prec: int = 20) -> PAdicNumber:
        """``num/den + O(p^prec)``; ``prec`` is the absolute precision."""
        if den == 0:
            raise ZeroDenominator("denominator is zero")
        x = Fraction(num, den)
        if x == 0:
            return cls.zero(p, prec)
        vn, un = _split(x.numerator, p)
        vd, ud = _split(x.denominator, p)
        m = vn - vd
        k = prec - m
        if k <= 0:
            return cls.zero(p, prec)
        mod = p**k
        return cls(p, m, un * pow(ud, -1, mod) % mod, prec)

    @classmethod
    def coerce(cls, value, p: int, prec: int) -> PAdicNumber:
        if isinstance(value, PAdicNumber):
            if value.p != p:
                raise PrimeMismatch(f"primes {value.p} and {p} differ")
            return value
        x = Fraction(value)
        return cls.from_rational(x.numerator, x.denominator, p, prec)

    # --- accessors ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.valuation is None

    @property
    def rel_precision(self) -> int:
        return 0 if self.is_zero else self.abs_precision - self.valuation

    @property
    def digits(self) -> list[int]:
        out = []
        u = self.unit
        for _ in range(self.rel_precision):
            u, d = divmod(u, self.p)
            out.append(d)
        return out

    def ord(self) -> float | int:
        return math.inf if self.is_zero else self.valuation

    def norm(self) -> Fraction:
        """``|x|_p = p^(-valuation)``; the zero element has norm 0."""
        if self.is_zero:
            return Fraction(0)
        return Fraction(self.p) ** (-self.valuation)

    def lift(self) -> Fraction:
        """The rational ``p^valuation * unit`` (an integer when valuation >= 0)."""
        if self.is_zero:
            return Fraction(0)
        return Fraction(self.p) ** self.valuation * self.unit

    def lift_int(self) -> int:
        """Integer representative in ``[0, p^abs_precision)``; needs x in Z_p."""
        if self.is_zero:
            return 0
        if self.valuation < 0:
            raise ValueError("not a p-adic integer")
        return self.p**self.valuation * self.unit

    def with_precision(self, abs_precision: int) -> PAdicNumber:
        """Reduce (never extend) to the given absolute precision."""
        n = min(abs_precision, self.abs_precision)
        return PAdicNumber(self.p, self.valuation, self.unit, n)

    # --- arithmetic --------------------------------------------------------

    def _exact_precision(self, value: Fraction) -> int:
        # precision for an exact rational operand so it never limits the result
        vc = _rational_valuation(value, self.p) if value else 0
        mx = 0 if self.is_zero else abs(self.valuation)
        return self.abs_precision + 2 * abs(vc) + 2 * mx + self.rel_precision + 1

    def _other(self, other) -> PAdicNumber:
        if isinstance(other, PAdicNumber):
            if other.p != self.p:
                raise PrimeMismatch(f"primes {self.p} and {other.p} differ")
            return other
        if isinstance(other, (int, Fraction)):
            value = Fraction(other)
            return PAdicNumber.from_rational(
                value.numerator, value.denominator, self.p, self._exact_precision(value)
            )
        return NotImplemented

    def __neg__(self) -> PAdicNumber:
        if self.is_zero:
            return self
        return PAdicNumber(self.p, self.valuation, -self.unit, self.abs_precision)

    def __add__(self, other) -> PAdicNumber:
        y = self._other(other)
        if y is NotImplemented:
            return y
        x = self
        N = min(x.abs_precision, y.abs_precision)
        if x.is_zero:
            return y.with_precision(N)
        if y.is_zero:
            return x.with_precision(N)
        v = min(x.valuation, y.valuation)
        p = x.p
        total = x.unit * p ** (x.valuation - v) + y.unit * p ** (y.valuation - v)
        if N - v <= 0:
            return PAdicNumber.zero(p, N)
        return PAdicNumber(p, v, total % p ** (N - v), N)

    __radd__ = __add__

    def __sub__(self, other) -> PAdicNumber:
        y = self._other(other)
        if y is NotImplemented:
            return y
        return self + (-y)

    def __rsub__(self, other) -> PAdicNumber:
        y = self._other(other)
        if y is NotImplemented:
            return y
        return y + (-self)

    def __mul__(self, other) -> PAdicNumber:
        y = self._other(other)
        if y is NotImplemented:
            return y
        x = self
        p = x.p
        if x.is_zero and y.is_zero:
            return PAdicNumber.zero(p, x.abs_precision + y.abs_precision)
        if x.is_zero:
            return PAdicNumber.zero(p, x.abs_precision + y.valuation)
        if y.is_zero:
            return PAdicNumber.zero(p, y.abs_precision + x.valuation)
        m = x.valuation + y.valuation
        N = min(x.abs_precision + y.valuation, y.abs_precision + x.valuation)
        return PAdicNumber(p, m, x.unit * y.unit % p ** (N - m), N)

    __rmul__ = __mul__

    def inverse(self) -> PAdicNumber:
        if self.is_zero:
            raise DivisionByZero("division by a p-adic zero")
        k = self.rel_precision
        mod = self.p**k
        return PAdicNumber(self.p, -self.valuation, pow(self.unit, -1, mod), k - self.valuation)

    def __truediv__(self, other) -> PAdicNumber:
        y = self._other(other)
        if y is NotImplemented:
            return y
        if y.is_zero:
            raise DivisionByZero("division by a p-adic zero")
        if self.is_zero:
            return PAdicNumber.zero(self.p, self.abs_precision - y.valuation)
        m = self.valuation - y.valuation
        k = min(self.rel_precision, y.rel_precision)
        mod = self.p**k
        return PAdicNumber(self.p, m, self.unit * pow(y.unit, -1, mod) % mod, m + k)

    def __rtruediv__(self, other) -> PAdicNumber:
        y = self._other(other)
        if y is NotImplemented:
            return y
        return y / self

    def __pow__(self, e: int) -> PAdicNumber:
        if e < 0:
            return self.inverse() ** (-e)
        result = PAdicNumber.from_rational(1, 1, self.p, self._exact_precision(Fraction(1)))
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        """Equality of the printed values (same prime, precision and digits)."""
        if not isinstance(other, PAdicNumber):
            return NotImplemented
        return (self.p, self.valuation, self.unit, self.abs_precision) == (
            other.p, other.valuation, other.unit, other.abs_precision,
        )

    def __hash__(self):
        return hash((self.p, self.valuation, self.unit, self.abs_precision))

    def agrees_with(self, other, abs_precision: int | None = None) -> bool:
        """True when ``self - other`` is zero to the joint (or given) precision."""
        diff = self - other
        if abs_precision is not None:
            if diff.abs_precision < abs_precision:
                return False
            return diff.is_zero or diff.valuation >= abs_precision
        return diff.is_zero

    # --- rendering ---------------------------------------------------------

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"PAdicNumber({render(self)})"


def _term(digit: int, p: int, e: int) -> str:
    if e == 0:
        return str(digit)
    power = str(p) if e == 1 else f"{p}^{e}"
    return power if digit == 1 else f"{digit}*{power}"


def render(x: PAdicNumber) -> str:
    """PARI-style text, e.g. ``2*7^-1 + 1 + O(7^6)``."""
    tail = f"O({x.p}^{x.abs_precision})"
    if x.is_zero:
        return tail
    terms = [_term(d, x.p, x.valuation + i) for i, d in enumerate(x.digits) if d]
    return " + ".join(terms + [tail])


def from_rational(num, den: int, p: int, prec: int) -> PAdicNumber:
    return PAdicNumber.from_rational(num, den, p, prec)


def arith(op: str, x: PAdicNumber, y: PAdicNumber | None = None) -> PAdicNumber:
    if op == "neg":
        return -x
    if y is None:
        raise TypeError(f"{op} needs two operands")
    if isinstance(y, PAdicNumber) and y.p != x.p:
        raise PrimeMismatch(f"primes {x.p} and {y.p} differ")
    return {
        "add": lambda: x + y,
        "sub": lambda: x - y,
        "mul": lambda: x * y,
        "div": lambda: x / y,
    }[op]()


# --- absolute values ---------------------------------------------------------

def valuation_abs(num: int, den: int, p: int) -> tuple[int | float, Fraction]:
    """``(ord_p(num/den), |num/den|_p)`` with ``|0|_p = 0``."""
    if den == 0:
        raise ZeroDenominator("denominator is zero")
    if num == 0:
        return math.inf, Fraction(0)
    order = _split(num, p)[0] - _split(den, p)[0]
    return order, Fraction(p) ** (-order)


@dataclass(frozen=True)
class ProductCheck:
    places: list[tuple[Place, Fraction]]
    product: Fraction


def valuation_product_check(num: int, den: int = 1) -> ProductCheck:
    """All places where ``|num/den|_v != 1`` and the product over them."""
    if den == 0:
        raise ZeroDenominator("denominator is zero")
    a = Fraction(num, den)
    if a == 0:
        raise ZeroInput("product formula needs a nonzero rational")
    places: list[tuple[Place, Fraction]] = []
    primes = sorted(set(factorize(a.numerator)) | set(factorize(a.denominator)))
    for p in primes:
        places.append((Place(p), valuation_abs(a.numerator, a.denominator, p)[1]))
    if abs(a) != 1:
        places.append((INF, abs(a)))
    product = math.prod((v for _, v in places), start=Fraction(1))
    return ProductCheck(places, product)


# --- Teichmuller, Hensel -----------------------------------------------------

def teichmuller(x0: int, p: int, prec: int) -> PAdicNumber:
    """``omega(x0) = lim x0^(p^n)`` computed modulo ``p^prec``."""
    mod = p**prec
    if x0 % p == 0:
        return PAdicNumber.zero(p, prec)
    y = x0 % mod
    while True:
        z = pow(y, p, mod)
        if z == y:
            return PAdicNumber(p, 0, y, prec)
        y = z


def _poly_eval(coeffs: Sequence[int], x: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _poly_derivative(coeffs: Sequence[int]) -> list[int]:
    return [i * c for i, c in enumerate(coeffs)][1:] or [0]


def hensel_lift(coeffs: Sequence[int], alpha0, target_prec: int, p: int | None = None) -> PAdicNumber:
    """Newton iteration ``a <- a - f(a)/f'(a)`` in Z_p.

    ``coeffs`` lists the integer coefficients of f from the constant term up.
    ``alpha0`` is a PAdicNumber or an integer (then ``p`` is required).  The
    result is the unique root congruent to alpha0, correct modulo
    ``p^target_prec``.
    """
    if isinstance(alpha0, PAdicNumber):
        p = alpha0.p
        a = alpha0.lift_int()
    else:
        if p is None:
            raise TypeError("p is required for an integer starting point")
        a = int(alpha0)
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    df = _poly_derivative(coeffs)
    f0, d0 = _poly_eval(coeffs, a), _poly_eval(df, a)
    if f0 == 0 and d0 != 0:
        return PAdicNumber.from_rational(a, 1, p, target_prec)
    if d0 == 0:
        raise StartConditionFailed("f'(alpha0) = 0: |f(alpha0)/f'(alpha0)^2|_p is infinite")
    k = _split(d0, p)[0]
    excess = (_split(f0, p)[0] if f0 else math.inf) - 2 * k
    if excess <= 0:
        ratio = Fraction(p) ** (-excess)
        raise StartConditionFailed(
            f"|f(alpha0)/f'(alpha0)^2|_{p} = {ratio} is not < 1", ratio_abs=ratio
        )
    work = p ** (target_prec + 2 * k + 2)
    goal = p ** (target_prec + k)
    a %= work
    pk = p**k
    while True:
        fa = _poly_eval(coeffs, a) % work
        if fa % goal == 0:
            break
        da = _poly_eval(df, a) % work
        # f(a) is divisible by p^(2k+1) and f'(a) has valuation exactly k
        step = (fa // pk) * pow(da // pk % p ** (target_prec + k + 2), -1, p ** (target_prec + k + 2))
        a = (a - step) % work
    return PAdicNumber.from_rational(a % p**target_prec, 1, p, target_prec)


# --- squares -----------------------------------------------------------------

@dataclass(frozen=True)
class SquareTest:
    is_square: bool
    witness: PAdicNumber | None = None

    def __bool__(self) -> bool:
        return self.is_square


def is_square(x, p: int | None = None, prec: int = 20) -> SquareTest:
    """Square test in Q_p: even valuation and a square unit (mod p, or mod 8
    when p = 2).  A witness root is Hensel-lifted when the answer is yes."""
    if isinstance(x, PAdicNumber):
        p = x.p
        if x.is_zero:
            raise ZeroInput("zero has no square class")
        m, unit, k = x.valuation, x.unit, x.rel_precision
    else:
        if p is None:
            raise TypeError("p is required for a rational argument")
        value = Fraction(x)
        if value == 0:
            raise ZeroInput("zero has no square class")
        vn, un = _split(value.numerator, p)
        vd, ud = _split(value.denominator, p)
        m, k = vn - vd, prec
        unit = un * pow(ud, -1, p**k) % p**k
    if m % 2:
        return SquareTest(False)
    if p == 2:
        if k < 3:
            raise ValueError("need at least 3 significant 2-adic digits")
        if unit % 8 != 1:
            return SquareTest(False)
        seed, root_prec = 1, k - 1
    else:
        if legendre_symbol(unit, p) != 1:
            return SquareTest(False)
        seed, root_prec = sqrt_mod_p(unit, p), k
    root = hensel_lift([-unit, 0, 1], seed, root_prec, p=p)
    witness = PAdicNumber(p, m // 2 + (root.valuation or 0), root.unit, m // 2 + root_prec)
    return SquareTest(True, witness)


def square_class_reps(p: int) -> list[int]:
    if p == 2:
        return [1, 5, -1, -5, 2, 10, -2, -10]
    v = least_nonresidue(p)
    return [1, v, p, p * v]


# --- logarithm and unit decomposition ----------------------------------------

def _log_terms(p: int, nu: int, prec: int) -> int:
    T = 1
    while T * nu - int(math.log(T, p) + 1e-12) < prec:
        T += 1
    # floor(log_p n) bounds v_p(n); every later term is then small enough too
    return T


def padic_log(u: PAdicNumber, prec: int | None = None) -> PAdicNumber:
    """``log u = sum (-1)^(n+1) x^n / n`` with ``x = u - 1``, for u in 1 + p^nu Z_p."""
    p = u.p
    nu = 1 if p > 2 else 2
    if u.is_zero or u.valuation != 0 or u.rel_precision < nu or (u.unit - 1) % p**nu:
        raise NotPrincipalUnit(f"{u} is not congruent to 1 mod {p}^{nu}")
    N = u.abs_precision if prec is None else min(prec, u.abs_precision)
    mod = p**N
    X = (u.unit - 1) % mod
    total = 0
    for n in range(1, _log_terms(p, nu, N) + 1):
        g, n_unit = _split(n, p)
        wide = p ** (N + g)
        term = pow(X, n, wide) // p**g * pow(n_unit, -1, mod)
        total += term if n % 2 else -term
    return PAdicNumber.from_rational(total % mod, 1, p, N)


@dataclass(frozen=True)
class UnitDecomposition:
    """``x = p^exponent * teich * principal`` with ``principal = 1 (mod p^nu)``."""

    exponent: int
    teich: PAdicNumber
    principal: PAdicNumber
    nu: int

    def reassemble(self) -> PAdicNumber:
        p = self.teich.p
        return self.teich * self.principal * Fraction(p) ** self.exponent


def unit_decompose(x: PAdicNumber) -> UnitDecomposition:
    if x.is_zero:
        raise ZeroInput("zero has no unit decomposition")
    p, k = x.p, x.rel_precision
    unit = PAdicNumber(p, 0, x.unit, k)
    if p == 2:
        if k < 2:
            raise ValueError("need at least 2 significant 2-adic digits")
        sign = 1 if x.unit % 4 == 1 else -1
        teich = PAdicNumber.from_rational(sign, 1, 2, k)
        nu = 2
    else:
        teich = teichmuller(x.unit % p, p, k)
        nu = 1
    return UnitDecomposition(x.valuation, teich, unit / teich, nu)
