"""Quadratic forms over Q and Q_p.

Hilbert symbols at every place, the product formula, local-global
solvability of ternary forms, Legendre's constructive descent, secant
parametrization of conics and Lagrange diagonalization.

Ternary forms use the convention ``a x^2 + b y^2 - c z^2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

from .errors import (
    BadParameters,
    DefiniteForm,
    DegenerateForm,
    LocallyUnsolvable,
    NotReduced,
    VertexPoint,
    ZeroArgument,
)
from .modular import (
    crt,
    factorize,
    legendre_symbol,
    prime_factors,
    sqrt_mod_p,
    squarefree_part,
)
from .padic import PAdicNumber, is_square, square_class_reps
from .places import INF, Place

__all__ = [
    "Place",
    "hilbert_symbol",
    "hilbert_product",
    "hilbert_table",
    "ternary_represents_zero",
    "TernaryForm",
    "legendre_reduce",
    "legendre_solve",
    "solve_ternary",
    "SymmetricForm",
    "conic_second_intersection",
    "pythagorean_triple",
    "lagrange_diagonalize",
    "norm_witness",
]


def _as_place(v) -> Place:
    if isinstance(v, Place):
        return v
    if v is None:
        return INF
    if isinstance(v, str):
        return Place.parse(v)
    return Place(int(v))


def _square_class_int(a) -> int:
    """An integer in the same square class as the nonzero rational a."""
    a = Fraction(a)
    if a == 0:
        raise ZeroArgument("Hilbert symbol arguments must be nonzero")
    return a.numerator * a.denominator


def _split(n: int, p: int) -> tuple[int, int]:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v, n


def hilbert_symbol(a, b, v=None) -> int:
    """``(a, b)_v``: +1 iff ``a x^2 + b y^2 = z^2`` has a nontrivial zero over Q_v."""
    place = _as_place(v)
    a, b = _square_class_int(a), _square_class_int(b)
    if place.is_infinite:
        return -1 if a < 0 and b < 0 else 1
    p = place.p
    alpha, u = _split(a, p)
    beta, w = _split(b, p)
    if p == 2:
        eps = lambda t: ((t - 1) // 2) % 2  # noqa: E731
        omega = lambda t: ((t * t - 1) // 8) % 2  # noqa: E731
        e = eps(u) * eps(w) + alpha * omega(w) + beta * omega(u)
        return -1 if e % 2 else 1
    sign = -1 if (alpha * beta * (p - 1) // 2) % 2 else 1
    return sign * legendre_symbol(u, p) ** (beta % 2) * legendre_symbol(w, p) ** (alpha % 2)


def _relevant_primes(*values) -> list[int]:
    primes = {2}
    for x in values:
        x = Fraction(x)
        primes |= set(prime_factors(x.numerator)) | set(prime_factors(x.denominator))
    return sorted(primes)


@dataclass(frozen=True)
class HilbertProduct:
    entries: list[tuple[Place, int]]
    product: int


def hilbert_product(a, b) -> HilbertProduct:
    """Symbols at infinity and at every prime dividing 2ab; every other
    place contributes +1."""
    if Fraction(a) == 0 or Fraction(b) == 0:
        raise ZeroArgument("Hilbert symbol arguments must be nonzero")
    entries = [(Place(p), hilbert_symbol(a, b, p)) for p in _relevant_primes(a, b)]
    entries.append((INF, hilbert_symbol(a, b, INF)))
    return HilbertProduct(entries, math.prod(s for _, s in entries))


def hilbert_table(p: int) -> tuple[list[int], list[list[int]]]:
    """Square-class representatives and ``table[row b][col a] = (a, b)_p``."""
    reps = square_class_reps(p)
    return reps, [[hilbert_symbol(a, b, p) for a in reps] for b in reps]


def format_hilbert_table(p: int) -> str:
    reps, table = hilbert_table(p)
    if p == 2:
        labels = [str(r) for r in reps]
    else:
        labels = ["1", "v", "p", "pv"]
    width = max(4, *(len(s) for s in labels)) + 1
    lines = []
    if p != 2:
        lines.append(f"p = {p}, v = {reps[1]}")
    lines.append("b\\a".ljust(width) + "".join(s.rjust(width) for s in labels))
    for label, row in zip(labels, table):
        lines.append(label.ljust(width) + "".join(f"{s:+d}".rjust(width) for s in row))
    return "\n".join(lines)


@dataclass(frozen=True)
class TernaryVerdict:
    represents_zero: bool
    per_place: list[tuple[Place, int]]

    @property
    def failing_places(self) -> list[Place]:
        return [v for v, s in self.per_place if s != 1]


def ternary_represents_zero(a, b, c) -> TernaryVerdict:
    """Does ``a x^2 + b y^2 - c z^2`` have a nontrivial rational zero?

    Decided place by place: the form ``a x^2 + b y^2 + c' z^2`` with
    ``c' = -c`` is isotropic over Q_v iff ``(-a/c', -b/c')_v = +1``.
    """
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    if a == 0 or b == 0 or c == 0:
        raise DegenerateForm("ternary form must be nondegenerate")
    s, t = a / c, b / c
    per_place = [(Place(p), hilbert_symbol(s, t, p)) for p in _relevant_primes(a, b, c)]
    per_place.append((INF, hilbert_symbol(s, t, INF)))
    return TernaryVerdict(all(sym == 1 for _, sym in per_place), per_place)


def local_diagnostics(coeffs: Sequence) -> dict[tuple[int, int, int], TernaryVerdict]:
    """Per-place verdicts for every 3-variable diagonal subform of
    ``sum coeffs[i] x_i^2`` (rank >= 4 forms get no global answer)."""
    out = {}
    for i, j, k in combinations(range(len(coeffs)), 3):
        out[(i, j, k)] = ternary_represents_zero(coeffs[i], coeffs[j], -Fraction(coeffs[k]))
    return out


def norm_witness(a, b, p: int, prec: int = 20, search: int = 4):
    """``(y, z)`` with ``a = z^2 - b y^2`` in Q_p, or None if ``(a, b)_p = -1``.

    y is searched among rationals ``t p^j``; z is a Hensel-lifted square root.
    """
    a, b = Fraction(a), Fraction(b)
    if hilbert_symbol(a, b, p) != 1:
        return None
    span = p**3 * search
    for j in range(0, 4):
        for sign in (1, -1) if j else (1,):
            e = j * sign
            for t in range(0, span):
                y = Fraction(t) * Fraction(p) ** e
                target = a + b * y * y
                if target == 0:
                    continue
                test = is_square(target, p, prec)
                if test:
                    return y, test.witness
    raise RuntimeError(f"no norm witness found for ({a}, {b})_{p}")


# --- Legendre descent ---------------------------------------------------------


@dataclass(frozen=True)
class TernaryForm:
    """``a x^2 + b y^2 - c z^2`` with a record of how it was obtained.

    ``scale[i]`` and ``perm`` transport solutions back: the original
    coordinate ``perm[i]`` equals ``scale[i] * new_i`` (projectively).
    """

    a: int
    b: int
    c: int
    reduction_trace: tuple[str, ...] = ()
    scale: tuple[Fraction, Fraction, Fraction] = (Fraction(1), Fraction(1), Fraction(1))
    perm: tuple[int, int, int] = (0, 1, 2)

    @property
    def coefficients(self) -> tuple[int, int, int]:
        return self.a, self.b, self.c

    def evaluate(self, x, y, z):
        return self.a * x * x + self.b * y * y - self.c * z * z

    def is_reduced(self) -> bool:
        a, b, c = self.a, self.b, self.c
        return (
            min(a, b, c) > 0
            and all(squarefree_part(t) == t for t in (a, b, c))
            and math.gcd(a, b) == math.gcd(a, c) == math.gcd(b, c) == 1
        )

    def to_original(self, sol: Sequence[int]) -> tuple[int, int, int]:
        """Map a zero of this form to a primitive zero of the original one."""
        values = [Fraction(0)] * 3
        for i in range(3):
            values[self.perm[i]] = self.scale[i] * sol[i]
        return _primitive(values)


def _primitive(values) -> tuple[int, int, int]:
    values = [Fraction(v) for v in values]
    den = math.lcm(*(v.denominator for v in values))
    ints = [int(v * den) for v in values]
    g = math.gcd(*ints)
    if g:
        ints = [t // g for t in ints]
    lead = next((t for t in ints if t), 1)
    if lead < 0:
        ints = [-t for t in ints]
    return tuple(ints)


def legendre_reduce(a: int, b: int, c: int) -> TernaryForm:
    """Bring ``a x^2 + b y^2 - c z^2`` to positive, squarefree, pairwise
    coprime coefficients, keeping a transport map for solutions."""
    coeffs = [int(a), int(b), -int(c)]  # as a x^2 + b y^2 + c' z^2
    if 0 in coeffs:
        raise DegenerateForm("coefficients must be nonzero")
    if all(t > 0 for t in coeffs) or all(t < 0 for t in coeffs):
        raise DefiniteForm(f"{a}x^2 + {b}y^2 - {c}z^2 is definite")
    trace: list[str] = []
    negatives = [i for i in range(3) if coeffs[i] < 0]
    if len(negatives) == 2:
        coeffs = [-t for t in coeffs]
        trace.append("multiply by -1")
    neg = next(i for i in range(3) if coeffs[i] < 0)
    perm = [i for i in range(3) if i != neg] + [neg]
    if perm != [0, 1, 2]:
        trace.append(f"permute variables to {tuple(perm)}")
    coeffs = [coeffs[i] for i in perm]
    scale = [Fraction(1)] * 3
    for i in range(3):
        s = squarefree_part(coeffs[i])
        if s != coeffs[i]:
            t = math.isqrt(coeffs[i] // s)
            trace.append(f"strip square {t}^2 from coefficient {i}")
            coeffs[i] = s
            scale[i] /= t
    while True:
        g = math.gcd(*coeffs)
        if g > 1:
            coeffs = [t // g for t in coeffs]
            trace.append(f"divide by gcd {g}")
            continue
        shared = None
        for i, j in ((0, 1), (0, 2), (1, 2)):
            d = math.gcd(coeffs[i], coeffs[j])
            if d > 1:
                shared = (i, j, min(factorize(d)))
                break
        if shared is None:
            break
        i, j, p = shared
        k = 3 - i - j
        coeffs[i] //= p
        coeffs[j] //= p
        coeffs[k] *= p
        scale[i] /= p
        scale[j] /= p
        trace.append(f"absorb shared prime {p} of coefficients {i},{j}")
    return TernaryForm(
        coeffs[0], coeffs[1], -coeffs[2], tuple(trace), tuple(scale), tuple(perm)
    )


def _legendre_conditions(a: int, b: int, c: int):
    """Linear factors ``L_p`` (coefficient triples mod p) for every prime p | abc,
    or raise LocallyUnsolvable naming the modulus where the criterion fails."""
    factors = {}
    for p in prime_factors(a):
        # b y^2 - c z^2 = b (y - l z)(y + l z) with l^2 = c/b
        if p != 2 and legendre_symbol(b * c, p) != 1:
            raise LocallyUnsolvable(f"bc = {b * c} is not a square mod {p} (modulus a = {a})", Place(p))
        lam = sqrt_mod_p(c * pow(b, -1, p), p)
        factors[p] = (0, 1, (-lam) % p)
    for p in prime_factors(b):
        if p != 2 and legendre_symbol(a * c, p) != 1:
            raise LocallyUnsolvable(f"ac = {a * c} is not a square mod {p} (modulus b = {b})", Place(p))
        mu = sqrt_mod_p(c * pow(a, -1, p), p)
        factors[p] = (1, 0, (-mu) % p)
    for p in prime_factors(c):
        if p != 2 and legendre_symbol(-a * b, p) != 1:
            raise LocallyUnsolvable(f"-ab = {-a * b} is not a square mod {p} (modulus c = {c})", Place(p))
        nu = sqrt_mod_p(-b * pow(a, -1, p), p)
        factors[p] = (1, (-nu) % p, 0)
    return factors


def legendre_solve(form: TernaryForm) -> tuple[int, int, int]:
    """Primitive ``(x, y, z)`` with ``a x^2 + b y^2 = c z^2`` by Legendre's
    pigeonhole construction."""
    if not isinstance(form, TernaryForm):
        form = TernaryForm(*form)
    if not form.is_reduced():
        raise NotReduced(f"{form.coefficients} is not positive, squarefree and pairwise coprime")
    a, b, c = form.coefficients
    if a == b == c == 1:
        return (1, 0, 1)
    factors = _legendre_conditions(a, b, c)
    modulus = a * b * c
    primes = sorted(factors)
    L = tuple(
        crt([(factors[p][i], p) for p in primes])[0] if primes else 0 for i in range(3)
    )

    def L_at(x, y, z):
        return (L[0] * x + L[1] * y + L[2] * z) % modulus

    bounds = [math.isqrt(b * c - 1) + 1, math.isqrt(a * c - 1) + 1, math.isqrt(a * b - 1) + 1]
    # bounds[i] = ceil(sqrt(.)), so 0 <= x < bounds[0] is 0 <= x < sqrt(bc)
    seen: dict[int, tuple[int, int, int]] = {}
    candidate = None
    for pt in product(*(range(n) for n in bounds)):
        key = L_at(*pt)
        if key in seen:
            other = seen[key]
            candidate = tuple(u - w for u, w in zip(pt, other))
            sol = _finish(form, candidate)
            if sol is not None:
                return sol
        else:
            seen[key] = pt
    # box too small for the counting argument (e.g. all of bc, ac, ab squares)
    limit = max(bounds) + 1
    for pt in product(range(-limit, limit + 1), repeat=3):
        if any(pt) and L_at(*pt) == 0:
            sol = _finish(form, pt)
            if sol is not None:
                return sol
    raise LocallyUnsolvable(f"no zero found for {form.coefficients}")


def _finish(form: TernaryForm, pt) -> tuple[int, int, int] | None:
    a, b, c = form.coefficients
    x0, y0, z0 = pt
    q = form.evaluate(x0, y0, z0)
    if q == 0 and any(pt):
        return _primitive(pt)
    if q == a * b * c:
        sol = (x0 * z0 + b * y0, y0 * z0 - a * x0, z0 * z0 + a * b)
        if form.evaluate(*sol) == 0:
            return _primitive(sol)
    return None


def solve_ternary(a: int, b: int, c: int) -> tuple[int, int, int]:
    """Primitive nontrivial zero of ``a x^2 + b y^2 - c z^2`` (any nonzero
    integer coefficients) via reduction, descent and transport back."""
    form = legendre_reduce(a, b, c)
    sol = legendre_solve(form)
    return form.to_original(sol)


# --- conics ---------------------------------------------------------------------


@dataclass(frozen=True)
class SymmetricForm:
    """``F(X) = X^t A X`` with a symmetric rational matrix A."""

    matrix: tuple[tuple[Fraction, ...], ...]

    def __init__(self, matrix):
        rows = tuple(tuple(Fraction(v) for v in row) for row in matrix)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("matrix must be square")
        if any(rows[i][j] != rows[j][i] for i in range(n) for j in range(n)):
            raise ValueError("matrix must be symmetric")
        object.__setattr__(self, "matrix", rows)

    @classmethod
    def from_polynomial(cls, quadratic, linear=(), constant=0) -> SymmetricForm:
        """Homogenize ``sum a_ij x_i x_j + sum b_i x_i + c`` (indices from 1)
        with ``X_0`` as the new coordinate: ``f_ij = a_ij / 2`` off the
        diagonal, ``f_0i = b_i / 2``, ``f_00 = c``.

        ``quadratic`` maps ``(i, j)`` with ``1 <= i <= j`` to ``a_ij``.
        """
        n = max([max(k) for k in quadratic] + [len(linear)])
        M = [[Fraction(0)] * (n + 1) for _ in range(n + 1)]
        for (i, j), coef in quadratic.items():
            i, j = min(i, j), max(i, j)
            if i == j:
                M[i][i] += Fraction(coef)
            else:
                M[i][j] += Fraction(coef) / 2
                M[j][i] += Fraction(coef) / 2
        for i, coef in enumerate(linear, start=1):
            M[0][i] += Fraction(coef) / 2
            M[i][0] += Fraction(coef) / 2
        M[0][0] = Fraction(constant)
        return cls(M)

    @property
    def size(self) -> int:
        return len(self.matrix)

    def __call__(self, X) -> Fraction:
        return self.bilinear(X, X)

    def bilinear(self, X, Y) -> Fraction:
        A = self.matrix
        return sum(
            (Fraction(X[i]) * A[i][j] * Fraction(Y[j]) for i in range(self.size) for j in range(self.size)),
            Fraction(0),
        )

    def gradient(self, X) -> list[Fraction]:
        A = self.matrix
        return [2 * sum((A[i][j] * Fraction(X[j]) for j in range(self.size)), Fraction(0)) for i in range(self.size)]


def conic_second_intersection(F: SymmetricForm, X0, Y0) -> tuple[int, ...]:
    """Second point where the line through X0 (on the quadric) and Y0 meets
    it: ``u X0 + v Y0`` with ``u = 1`` and ``v = -sum dF/dX_i(X0) Y0_i / F(Y0)``."""
    if F(X0) != 0:
        raise ValueError("X0 is not on the quadric")
    grad = F.gradient(X0)
    if not any(grad):
        raise VertexPoint(f"{tuple(X0)} is a vertex of the quadric")
    fy = F(Y0)
    if fy == 0:
        return _normalize(Y0)
    v = -sum((g * Fraction(y) for g, y in zip(grad, Y0)), Fraction(0)) / fy
    return _normalize([Fraction(x) + v * Fraction(y) for x, y in zip(X0, Y0)])


def _normalize(point) -> tuple[int, ...]:
    values = [Fraction(v) for v in point]
    den = math.lcm(*(v.denominator for v in values))
    ints = [int(v * den) for v in values]
    g = math.gcd(*ints)
    if g == 0:
        raise ValueError("the zero vector is not a projective point")
    ints = [t // g for t in ints]
    lead = next(t for t in ints if t)
    return tuple(-t for t in ints) if lead < 0 else tuple(ints)


def pythagorean_triple(u: int, v: int) -> tuple[int, int, int]:
    if not u > v > 0:
        raise BadParameters("need u > v > 0")
    if math.gcd(u, v) != 1:
        raise BadParameters("need gcd(u, v) = 1")
    if (u - v) % 2 == 0:
        raise BadParameters("need u and v of opposite parity")
    return 2 * u * v, u * u - v * v, u * u + v * v


def lagrange_diagonalize(A) -> tuple[list[list[Fraction]], list[Fraction]]:
    """Completion of squares: returns ``(C, d)`` with ``C^t A C = diag(d)``."""
    if isinstance(A, SymmetricForm):
        A = A.matrix
    M = [[Fraction(v) for v in row] for row in A]
    n = len(M)
    if any(M[i][j] != M[j][i] for i in range(n) for j in range(n)):
        raise ValueError("matrix must be symmetric")
    C = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]

    def congruence(E):
        # M <- E^t M E, C <- C E
        nonlocal M, C
        ME = [[sum(M[i][k] * E[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
        M = [[sum(E[k][i] * ME[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
        C = [[sum(C[i][k] * E[k][j] for k in range(n)) for j in range(n)] for i in range(n)]

    def swap(i, j):
        E = [[Fraction(int(r == c)) for c in range(n)] for r in range(n)]
        E[i][i] = E[j][j] = Fraction(0)
        E[i][j] = E[j][i] = Fraction(1)
        congruence(E)

    for k in range(n):
        piv = next((i for i in range(k, n) if M[i][i] != 0), None)
        if piv is None:
            pair = next(
                ((i, j) for i in range(k, n) for j in range(i + 1, n) if M[i][j] != 0), None
            )
            if pair is None:
                break
            i, j = pair
            # x_i = y_i + y_j, x_j = y_i - y_j
            E = [[Fraction(int(r == c)) for c in range(n)] for r in range(n)]
            E[i][j] = Fraction(1)
            E[j][i] = Fraction(1)
            E[j][j] = Fraction(-1)
            congruence(E)
            piv = i
        if piv != k:
            swap(k, piv)
        E = [[Fraction(int(r == c)) for c in range(n)] for r in range(n)]
        for j in range(k + 1, n):
            E[k][j] = -M[k][j] / M[k][k]
        congruence(E)
    return C, [M[i][i] for i in range(n)]
