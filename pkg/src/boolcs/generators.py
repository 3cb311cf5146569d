"""Seeded instance generators: random systems, LFSR filter generators, matrix inverses."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

import numpy as np

from .poly import BoolPoly
from .triset import PolySystem

__all__ = [
    "gen_random",
    "LfsrSpec",
    "companion_matrix",
    "gen_lfsr_filter",
    "gen_matrix_ab",
    "gen_matrix_ba",
    "augment_with_negation",
]


def _monomials_up_to(n: int, d: int) -> list[int]:
    out = [0]
    for k in range(1, min(d, n) + 1):
        for vs in combinations(range(n), k):
            m = 0
            for v in vs:
                m |= 1 << v
            out.append(m)
    return out


def gen_random(n: int, m: int, d: int, seed: int) -> PolySystem:
    """``m`` polynomials whose monomials of degree <= ``d`` each appear with probability 1/2.

    The constant monomial is drawn like any other; an all-zero draw is
    redrawn.
    """
    if n < 1 or m < 1 or d < 1:
        raise ValueError("gen_random needs n, m, d >= 1")
    rng = random.Random(seed)
    cands = _monomials_up_to(n, d)
    polys = []
    while len(polys) < m:
        bits = rng.getrandbits(len(cands))
        terms = [c for i, c in enumerate(cands) if bits >> i & 1]
        if terms:
            polys.append(BoolPoly(n, terms))
    return PolySystem(n, polys)


def _gf2_rank(mat: np.ndarray) -> int:
    a = mat.copy() & 1
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i, c]), None)
        if piv is None:
            continue
        a[[r, piv]] = a[[piv, r]]
        for i in range(rows):
            if i != r and a[i, c]:
                a[i] ^= a[r]
        r += 1
    return r


def companion_matrix(n: int, taps: Sequence[int]) -> np.ndarray:
    """Fibonacci LFSR update: ``x_j <- x_{j+1}`` for j < n, ``x_n <- sum of x_t, t in taps``.

    Invertible exactly when tap 1 is present.
    """
    mat = np.zeros((n, n), dtype=np.uint8)
    for j in range(n - 1):
        mat[j, j + 1] = 1
    for t in taps:
        if not 1 <= t <= n:
            raise ValueError(f"tap {t} outside 1..{n}")
        mat[n - 1, t - 1] ^= 1
    return mat


@dataclass
class LfsrSpec:
    n: int
    transition: np.ndarray
    filter: BoolPoly
    keystream_len: int
    secret: tuple[int, ...] | None = None
    plant: bool = True
    _rank: int = field(init=False, repr=False, default=0)

    def __post_init__(self):
        self.transition = np.asarray(self.transition, dtype=np.uint8) & 1
        if self.transition.shape != (self.n, self.n):
            raise ValueError(f"transition must be {self.n}x{self.n}")
        if _gf2_rank(self.transition) != self.n:
            raise ValueError("LFSR transition matrix is not invertible over F2")
        if self.filter.n != self.n:
            raise ValueError("filter must be a polynomial in the LFSR state variables")
        if self.keystream_len < 1:
            raise ValueError("keystream_len must be positive")
        if self.secret is not None and len(self.secret) != self.n:
            raise ValueError("secret must have one bit per state variable")


def gen_lfsr_filter(spec: LfsrSpec, seed: int | None = None) -> tuple[PolySystem, tuple[int, ...]]:
    """Equations ``f(L^i(x)) + z_i`` for ``i = 0 .. m-1``.

    With ``spec.plant`` the keystream bit ``z_i`` is ``f(L^i(s))`` for the
    secret state ``s`` (drawn from ``seed`` when not given), so ``s`` is a
    solution; otherwise every ``z_i`` is 0.  Returns the system and ``s``.
    """
    n = spec.n
    secret = spec.secret
    if secret is None:
        rng = random.Random(seed)
        secret = tuple(rng.getrandbits(1) for _ in range(n))
    one = BoolPoly.one(n)
    power = np.eye(n, dtype=np.uint8)
    polys = []
    for _ in range(spec.keystream_len):
        forms = [BoolPoly(n, [1 << k for k in range(n) if power[j, k]]) for j in range(n)]
        eq = spec.filter.compose(forms)
        if spec.plant:
            state = power.astype(np.int64) @ np.asarray(secret, dtype=np.int64) % 2
            if spec.filter.eval(tuple(int(b) for b in state)):
                eq = eq + one
        polys.append(eq)
        power = (spec.transition.astype(np.int64) @ power % 2).astype(np.uint8)
    return PolySystem(n, polys), tuple(secret)


def _matrix_vars(k: int) -> tuple[list[list[int]], list[list[int]]]:
    a = [[i * k + j + 1 for j in range(k)] for i in range(k)]
    b = [[k * k + i * k + j + 1 for j in range(k)] for i in range(k)]
    return a, b


def _product_identity(k: int, left, right) -> list[BoolPoly]:
    n = 2 * k * k
    out = []
    for i in range(k):
        for j in range(k):
            terms = [(1 << (left[i][l] - 1)) | (1 << (right[l][j] - 1)) for l in range(k)]
            if i == j:
                terms.append(0)
            out.append(BoolPoly(n, terms))
    return out


def gen_matrix_ab(k: int) -> PolySystem:
    """Entries of ``AB + I`` for k x k matrices; a_ij are x1..x_{k^2}, then b_ij, row-major."""
    if k < 1:
        raise ValueError("k must be positive")
    a, b = _matrix_vars(k)
    return PolySystem(2 * k * k, _product_identity(k, a, b))


def gen_matrix_ba(k: int) -> list[BoolPoly]:
    """Entries of ``BA + I`` over the same variables as :func:`gen_matrix_ab`."""
    if k < 1:
        raise ValueError("k must be positive")
    a, b = _matrix_vars(k)
    return _product_identity(k, b, a)


def augment_with_negation(s: PolySystem, g: BoolPoly) -> PolySystem:
    """``s`` plus ``g + 1``: its zero set is the part of Zero(s) where ``g`` is 1."""
    return PolySystem(s.n, list(s.polys) + [g + BoolPoly.one(s.n)])
