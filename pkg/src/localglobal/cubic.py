"""Brute-force local and global search for diagonal ternary cubics
``a X^3 + b Y^3 + c Z^3 = 0``.

This is a numerical probe of the failure of the local-global principle for
cubics (3X^3 + 4Y^3 + 5Z^3 is the classical example), not a decision procedure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class CubicProbe:
    coefficients: tuple[int, int, int]
    local_witnesses: dict[int, tuple[int, int, int] | None]
    global_solutions: list[tuple[int, int, int]]
    bound: int

    @property
    def locally_solvable(self) -> bool:
        return all(w is not None for w in self.local_witnesses.values())

    @property
    def only_trivial_global(self) -> bool:
        return self.global_solutions == [(0, 0, 0)]


def primitive_zero_mod(coeffs: tuple[int, int, int], N: int) -> tuple[int, int, int] | None:
    """A triple with ``gcd(X, Y, Z, N) = 1`` on which the cubic vanishes mod N."""
    a, b, c = coeffs
    r = np.arange(N, dtype=np.int64)
    cube = r * r % N * r % N
    pair = (a * cube[:, None] + b * cube[None, :]) % N
    g_xy = np.gcd(np.gcd(r[:, None], r[None, :]), N)
    for z in range(N):
        hit = (pair + c * int(cube[z])) % N == 0
        if math.gcd(z, N) != 1:
            hit &= np.gcd(g_xy, z) == 1
        idx = np.argwhere(hit)
        if len(idx):
            x, y = idx[0]
            return int(x), int(y), z
    return None


def integer_zeros(coeffs: tuple[int, int, int], bound: int) -> list[tuple[int, int, int]]:
    """All integer zeros with ``|X|, |Y|, |Z| <= bound``."""
    a, b, c = coeffs
    r = np.arange(-bound, bound + 1, dtype=np.int64)
    cube = r**3
    pair = a * cube[:, None] + b * cube[None, :]
    out = []
    for k, z in enumerate(r):
        for i, j in np.argwhere(pair + c * cube[k] == 0):
            out.append((int(r[i]), int(r[j]), int(z)))
    return sorted(out)


def probe(coeffs=(3, 4, 5), moduli=None, bound: int = 50) -> CubicProbe:
    moduli = list(moduli) if moduli is not None else [2**4, 3**4, 5**4] + list(range(2, 51))
    witnesses = {N: primitive_zero_mod(coeffs, N) for N in sorted(set(moduli))}
    return CubicProbe(tuple(coeffs), witnesses, integer_zeros(coeffs, bound), bound)
