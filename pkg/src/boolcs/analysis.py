"""Counting and enumerating solutions, pseudo-remainders, the brute-force
oracle, decomposition checks and the two-pass running-time predictor."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .poly import BoolPoly, TriangularSet
from .solver import BranchOrder, SolverConfig, bcs
from .triset import PolySystem

__all__ = [
    "SolutionSet",
    "Prediction",
    "Verification",
    "count_solutions",
    "enumerate_solutions",
    "prem",
    "brute_force_zeros",
    "verify_decomposition",
    "predict",
    "BRUTE_FORCE_LIMIT",
]

BRUTE_FORCE_LIMIT = 24


def _mask_to_point(mask: int, n: int) -> tuple[int, ...]:
    return tuple((mask >> i) & 1 for i in range(n))


@dataclass(frozen=True)
class SolutionSet:
    """Distinct points of F2^n, kept sorted (x1 is the most significant coordinate)."""

    n: int
    points: tuple[tuple[int, ...], ...]

    @classmethod
    def from_masks(cls, n: int, masks: Iterable[int]) -> "SolutionSet":
        return cls(n, tuple(sorted({_mask_to_point(m, n) for m in masks})))

    @property
    def masks(self) -> frozenset:
        return frozenset(sum(b << i for i, b in enumerate(p)) for p in self.points)

    def bitstrings(self) -> list[str]:
        return ["".join(map(str, p)) for p in self.points]

    def __len__(self) -> int:
        return len(self.points)

    def __contains__(self, point) -> bool:
        return tuple(point) in set(self.points)


def count_solutions(trisets: Iterable[TriangularSet], n: int) -> int:
    """Number of zeros of a disjoint union of monic triangular sets."""
    return sum(1 << (n - len(a)) for a in trisets)


def _enumerate_masks(a: TriangularSet, n: int) -> list[int]:
    lead = 0
    tails = []
    for p in a.elems:
        c = p.cls
        lead |= 1 << (c - 1)
        tails.append((1 << (c - 1), p + BoolPoly.var(n, c)))
    free = [1 << i for i in range(n) if not lead >> i & 1]
    out = []
    for k in range(1 << len(free)):
        mask = 0
        for i, bit in enumerate(free):
            if k >> i & 1:
                mask |= bit
        # ascending class: each tail only mentions variables already fixed
        for bit, tail in tails:
            if tail.eval_mask(mask):
                mask |= bit
        out.append(mask)
    return out


def enumerate_solutions(a: TriangularSet, n: int | None = None) -> SolutionSet:
    """All ``2**(n - r)`` zeros of a monic triangular set, by back-substitution."""
    n = a.n if n is None else n
    return SolutionSet.from_masks(n, _enumerate_masks(a, n))


def prem(p: BoolPoly, a: TriangularSet) -> BoolPoly:
    """Pseudo-remainder of ``p`` by monic ``a``.

    Replaces the highest leading variable of ``a`` occurring in ``p`` by its
    tail until none is left.  The result is 0 exactly when ``p`` vanishes on
    Zero(a).
    """
    by_class = {q.cls: q + BoolPoly.var(q.n, q.cls) for q in a.elems}
    lead = 0
    for c in by_class:
        lead |= 1 << (c - 1)
    while True:
        hit = p.support & lead
        if not hit:
            return p
        c = hit.bit_length()
        p = p.substitute(c, by_class[c])


def _zero_mask_array(polys: Sequence[BoolPoly], n: int) -> np.ndarray:
    pts = np.arange(1 << n, dtype=np.uint32 if n <= 32 else np.uint64)
    alive = np.ones(pts.shape, dtype=bool)
    for p in polys:
        val = np.zeros(pts.shape, dtype=bool)
        for m in p.termset:
            val ^= (pts & m) == m
        alive &= ~val
    return pts[alive]


def brute_force_zeros(s: PolySystem | Sequence[BoolPoly], n: int | None = None,
                      force: bool = False) -> SolutionSet:
    """Common zeros found by evaluating every point of F2^n.

    Refuses ``n`` above :data:`BRUTE_FORCE_LIMIT` unless ``force`` is set.
    """
    if isinstance(s, PolySystem):
        n, polys = s.n, s.polys
    else:
        polys = list(s)
        if n is None:
            n = polys[0].n
    if n > BRUTE_FORCE_LIMIT and not force:
        raise ValueError(f"brute force over 2^{n} points refused (limit {BRUTE_FORCE_LIMIT}); pass force=True")
    masks = _zero_mask_array(polys, n)
    return SolutionSet.from_masks(n, (int(m) for m in masks))


@dataclass(frozen=True)
class Verification:
    ok: bool
    check: str | None = None
    witness: tuple[int, ...] | None = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok


def verify_decomposition(s: PolySystem, trisets: Sequence[TriangularSet],
                         force: bool = False) -> Verification:
    """Check a decomposition against the brute-force zero set.

    Checks, in order: the triangular sets are pairwise disjoint, their zeros
    are exactly Zero(s) (``union-deficit`` / ``union-excess``), and the count
    formula matches.  The first failure is reported with a witness point.
    """
    n = s.n
    truth = brute_force_zeros(s, force=force).masks
    owner: dict[int, int] = {}
    for i, a in enumerate(trisets):
        for m in _enumerate_masks(a, n):
            if m in owner:
                return Verification(False, "disjointness", _mask_to_point(m, n),
                                    f"triangular sets {owner[m]} and {i} share a zero")
            owner[m] = i
    union = set(owner)
    deficit = truth - union
    if deficit:
        return Verification(False, "union-deficit", _mask_to_point(min(deficit), n),
                            f"{len(deficit)} zeros of the system are missing")
    excess = union - truth
    if excess:
        return Verification(False, "union-excess", _mask_to_point(min(excess), n),
                            f"{len(excess)} points are not zeros of the system")
    count = count_solutions(trisets, n)
    if count != len(truth):
        return Verification(False, "count", None, f"count formula gives {count}, oracle {len(truth)}")
    return Verification(True, detail=f"{len(truth)} solutions in {len(trisets)} triangular sets")


@dataclass(frozen=True)
class Prediction:
    d_a: float
    t_a: float
    N_sample: int
    N_r: int | None = None
    T_r: float | None = None

    @property
    def N_p(self) -> float:
        return 2.0 ** self.d_a

    @property
    def T_p(self) -> float:
        return self.t_a * self.N_p

    def lines(self) -> list[str]:
        out = [
            f"d_a = {self.d_a:.4f}",
            f"t_a_seconds = {self.t_a:.6g}",
            f"N_sample = {self.N_sample}",
            f"N_p = {round(self.N_p)}",
            f"T_p_seconds = {self.T_p:.6g}",
        ]
        if self.N_r is not None:
            out += [f"N_r = {self.N_r}", f"T_r_seconds = {self.T_r:.6g}"]
        return out


def predict(s: PolySystem, cfg: SolverConfig = SolverConfig(), samples: int = 500,
            full: bool = False) -> Prediction:
    """Estimate the branch count and total time of a solve from ``samples`` branches.

    The average depth comes from a run that prefers low initial depth, the
    average branch time from a run that prefers high initial depth.  Both runs
    (and the optional full solve) are single-threaded.
    """
    if samples < 1:
        raise ValueError("samples must be positive")
    base = dataclasses.replace(cfg, threads=1, record_tree=False)
    low = bcs(s, dataclasses.replace(base, branch_order=BranchOrder.LOW_FIRST, branch_limit=samples))
    high = bcs(s, dataclasses.replace(base, branch_order=BranchOrder.HIGH_FIRST, branch_limit=samples))
    d_a = low.average_depth
    t_a = sum(b.seconds for b in high.branches) / len(high.branches)
    n_r = t_r = None
    if full:
        rep = bcs(s, dataclasses.replace(base, branch_limit=None))
        n_r, t_r = rep.branch_count, rep.wall_seconds
    return Prediction(d_a, t_a, min(samples, low.branch_count), n_r, t_r)
