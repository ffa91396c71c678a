"""Dirichlet coefficients, L(E, s) and the logarithmic-derivative rank estimate.

The analytic continuation uses the completed function
``Lambda(s) = (sqrt(N) / 2 pi)^s Gamma(s) L(E, s) = w Lambda(2 - s)``, split at
a point t on the Mellin integral::

    Lambda(s) = sum a_n [ (A/n)^s Gamma(s, n t / A) + w (A/n)^(2-s) Gamma(2-s, n / (t A)) ]

with ``A = sqrt(N) / 2 pi``.  t = 1 gives the usual symmetric series; any
other t gives the same value only for the right root number w.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import mpmath
from mpmath import mp, mpf

from ..errors import NeedConductor, NeedRootNumber, OutOfConvergenceRegion, SIsOne
from ..modular import primes_between
from .curve import WeierstrassCurve, ap, conductor, reduction_type

DEFAULT_DPS = 30
MAX_TERMS = 10**5


# --- incomplete gamma ------------------------------------------------------------


def _lower_gamma_series(a, x):
    """``gamma(a, x) = x^a e^-x sum x^k / (a (a+1) ... (a+k))``."""
    term = 1 / a
    total = term
    k = 0
    while True:
        k += 1
        term *= x / (a + k)
        total += term
        if abs(term) < abs(total) * mp.eps:
            break
    return total * mpmath.exp(-x) * x**a


def _upper_gamma_cf(a, x):
    """Continued fraction (modified Lentz) for ``Gamma(a, x)``, good for x > a + 1."""
    tiny = mpf(10) ** (-(mp.dps + 20))
    b = x + 1 - a
    c = 1 / tiny
    d = 1 / b
    h = d
    i = 0
    while True:
        i += 1
        an = -i * (i - a)
        b += 2
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1 / d
        delta = d * c
        h *= delta
        if abs(delta - 1) < mp.eps:
            break
    return mpmath.exp(-x) * x**a * h


def _e1_series(x):
    """``E_1(x) = Gamma(0, x) = -gamma - ln x - sum (-x)^k / (k k!)``."""
    total = mpf(0)
    term = mpf(1)
    k = 0
    while True:
        k += 1
        term *= -x / k
        add = term / k
        total += add
        if abs(add) < mp.eps * max(abs(total), 1):
            break
    return -mpmath.euler - mpmath.log(x) - total


def upper_gamma(a, x):
    """Upper incomplete gamma ``Gamma(a, x)`` for real a and x > 0.

    Series for the lower function when ``x < a + 1``, continued fraction
    otherwise; non-positive integer a goes through ``E_1`` and the downward
    recurrence ``Gamma(a, x) = (Gamma(a + 1, x) - x^a e^-x) / a``.
    """
    a, x = mpf(a), mpf(x)
    if x <= 0:
        raise ValueError("x must be positive")
    if x >= a + 1:
        return _upper_gamma_cf(a, x)
    if a <= 0 and a == int(a):
        g = _upper_gamma_cf(mpf(0), x) if x >= 1 else _e1_series(x)
        for k in range(0, int(-a)):
            b = -k - 1  # Gamma(b, x) from Gamma(b + 1, x)
            g = (g - x**b * mpmath.exp(-x)) / b
        return g
    # Gamma(a) is huge near 0 and the negative integers; pay for the cancellation in digits
    extra = max(0, int(mpmath.log10(abs(mpmath.gamma(a))))) + 5
    with mp.workdps(mp.dps + extra):
        result = mpmath.gamma(a) - _lower_gamma_series(a, x)
    return +result


# --- coefficients -----------------------------------------------------------------


@dataclass
class LSeriesProfile:
    """Conductor, root number and Dirichlet coefficients of L(E, s) for a
    minimal model.  ``coefficients[n]`` is a_n (index 0 unused)."""

    curve: WeierstrassCurve
    conductor: int | None
    root_number: int | None
    coefficients: list[int] = field(default_factory=lambda: [0, 1])
    bad_primes: dict[int, str] = field(default_factory=dict)
    _ap: dict[int, int] = field(default_factory=dict, repr=False)

    @classmethod
    def for_curve(cls, E: WeierstrassCurve, conductor_value: int | None = None,
                  root_number: int | None = None) -> LSeriesProfile:
        Em, _ = E.minimal_model()
        N = conductor_value if conductor_value is not None else conductor(Em)
        disc = int(Em.discriminant)
        from ..modular import prime_factors

        bad = {p: reduction_type(Em, p) for p in prime_factors(disc)}
        return cls(Em, N, root_number, [0, 1], bad)

    @property
    def n_max(self) -> int:
        return len(self.coefficients) - 1

    def ap(self, p: int) -> int:
        if p not in self._ap:
            self._ap[p] = ap(self.curve, p)
        return self._ap[p]

    def extend(self, n_max: int) -> list[int]:
        """Make a_1 .. a_{n_max} available and return the coefficient list."""
        if n_max <= self.n_max:
            return self.coefficients
        self.coefficients = l_coefficients(self.curve, n_max, self)
        return self.coefficients

    def require_conductor(self) -> int:
        if self.conductor is None:
            raise NeedConductor(
                "minimal discriminant is not squarefree; supply the conductor"
            )
        return self.conductor


def l_coefficients(E: WeierstrassCurve, n_max: int, profile: LSeriesProfile | None = None) -> list[int]:
    """``[0, a_1, ..., a_{n_max}]`` for a minimal model E.

    ``a_{p^k} = a_p a_{p^(k-1)} - p a_{p^(k-2)}`` at good p, ``a_p^k`` at bad p,
    and ``a_{mn} = a_m a_n`` for coprime m, n.
    """
    get_ap = profile.ap if profile is not None else (lambda p: ap(E, p))
    disc = int(E.discriminant)
    a = [0] * (n_max + 1)
    if n_max >= 1:
        a[1] = 1
    # smallest prime factor sieve over [0, n_max]
    spf = list(range(n_max + 1))
    for i in range(2, math.isqrt(n_max) + 1):
        if spf[i] == i:
            for j in range(i * i, n_max + 1, i):
                if spf[j] == j:
                    spf[j] = i
    for p in primes_between(2, n_max):
        t = get_ap(p)
        good = disc % p != 0
        a[p] = t
        prev2, prev1 = 1, t
        q = p * p
        while q <= n_max:
            cur = t * prev1 - (p * prev2 if good else 0)
            a[q] = cur
            prev2, prev1 = prev1, cur
            q *= p
    for n in range(2, n_max + 1):
        p = spf[n]
        m, q = n, 1
        while m % p == 0:
            m //= p
            q *= p
        if m > 1:
            a[n] = a[q] * a[m]
    return a


# --- evaluation -------------------------------------------------------------------


def terms_needed(N: int, tol: float, s_values=(1.0,)) -> int:
    """Least T with ``2 sum_{n>T} (2 sqrt(n)/n) e^(-2 pi n / sqrt(N)) < tol``,
    scaled up by the largest ``(A/n)^s`` growth for the requested s."""
    A = math.sqrt(N) / (2 * math.pi)
    r = math.exp(-1 / A)
    growth = max(1.0, max(A ** abs(s) for s in s_values) * A)
    T = 1
    while True:
        tail = 4 / math.sqrt(T + 1) * r ** (T + 1) / (1 - r) * growth
        if tail < tol or T >= MAX_TERMS:
            return T
        T = int(T * 1.2) + 1


def completed_l(profile: LSeriesProfile, s, w: int, T: int, split=1) -> mpf:
    """``Lambda(s)`` from T terms of the split Mellin series."""
    N = profile.require_conductor()
    coeffs = profile.extend(T)
    s = mpf(s)
    A = mpmath.sqrt(N) / (2 * mpmath.pi)
    t = mpf(split)
    total = mpf(0)
    for n in range(1, T + 1):
        an = coeffs[n]
        if an == 0:
            continue
        ratio = A / n
        term = ratio**s * upper_gamma(s, n * t / A)
        term += w * ratio ** (2 - s) * upper_gamma(2 - s, n / (t * A))
        total += an * term
    return total


def select_root_number(profile: LSeriesProfile, probe=1.3, split=1.1, T: int | None = None) -> int:
    """Sign w in {+1, -1} minimizing ``|Lambda(s) - w Lambda(2 - s)|`` at the probe."""
    N = profile.require_conductor()
    T = T or terms_needed(N, 1e-12, (probe, 2 - probe))
    best, best_err = None, None
    with mp.workdps(DEFAULT_DPS):
        for w in (1, -1):
            lhs = completed_l(profile, probe, w, T, split)
            rhs = completed_l(profile, 2 - probe, w, T, split)
            err = abs(lhs - w * rhs)
            if best_err is None or err < best_err:
                best, best_err = w, err
    return best


def _analytic_l(profile: LSeriesProfile, s, T: int | None, tol: float, split=1) -> mpf:
    N = profile.require_conductor()
    if profile.root_number is None:
        raise NeedRootNumber("root number unknown; select or supply it")
    s = mpf(s)
    T = T or terms_needed(N, tol, (float(s), 2 - float(s)))
    A = mpmath.sqrt(N) / (2 * mpmath.pi)
    lam = completed_l(profile, s, profile.root_number, T, split)
    return lam / (A**s * mpmath.gamma(s))


def _euler_l(profile: LSeriesProfile, s, P: int) -> mpf:
    s = mpf(s)
    if s <= 1.5:
        raise OutOfConvergenceRegion("Euler product needs s > 3/2")
    result = mpf(1)
    disc = int(profile.curve.discriminant)
    for p in primes_between(2, P):
        t = profile.ap(p)
        ps = mpf(p) ** (-s)
        if disc % p:
            result /= 1 - t * ps + p * ps * ps
        else:
            result /= 1 - t * ps
    return result


def l_value(E, s, mode: str = "analytic", terms: int | None = None, cut: int = 10**4,
            conductor_value: int | None = None, root_number: int | None = None,
            tol: float = 1e-8, dps: int = DEFAULT_DPS, split=1) -> mpf:
    """``L(E, s)`` by the truncated Euler product (``mode='euler'``, primes
    up to ``cut``) or the functional-equation series (``mode='analytic'``).

    With w = -1 and ``split=1`` the series gives L(E, 1) = 0 identically; a
    different split evaluates it numerically instead."""
    profile = E if isinstance(E, LSeriesProfile) else LSeriesProfile.for_curve(
        E, conductor_value, root_number
    )
    with mp.workdps(dps):
        if mode in ("euler", "euler_product"):
            return _euler_l(profile, s, cut)
        if mode != "analytic":
            raise ValueError(f"unknown mode {mode!r}")
        if profile.root_number is None:
            profile.root_number = select_root_number(profile)
        return _analytic_l(profile, s, terms, tol, split)


def rank_estimate(E, s=1.0001, conductor_value: int | None = None, root_number: int | None = None,
                  dps: int = 40, tol: float = 1e-32) -> mpf:
    """``(L(s^2 - s + 1) - L(s)) / ((s - 1) L(s))``, a finite-difference form
    of ``(s - 1) L'(s) / L(s)``, which tends to the order of vanishing at 1."""
    profile = E if isinstance(E, LSeriesProfile) else LSeriesProfile.for_curve(
        E, conductor_value, root_number
    )
    with mp.workdps(dps):
        s = mpf(s)
        if s == 1:
            raise SIsOne("the estimate is undefined at s = 1")
        if profile.root_number is None:
            profile.root_number = select_root_number(profile)
        s2 = s * s - s + 1
        T = terms_needed(profile.require_conductor(), tol, (float(s), 2 - float(s)))
        L1 = _analytic_l(profile, s, T, tol)
        L2 = _analytic_l(profile, s2, T, tol)
        return (L2 - L1) / ((s - 1) * L1)
