"""Pure-Python TriSet kernel: Simplify, AddReduce, Choose and zero decomposition.

Systems are plain lists of :class:`BoolPoly`; list position doubles as the
insertion id used for tie-breaking.  Substitution and reduction rewrite a
polynomial in place, so it keeps its position; newly created polynomials
are appended.  Every system is kept canonical: no zero polynomials and no
duplicates (the first occurrence wins).

The compiled kernel in ``_core.pyx`` mirrors these rules exactly, so both
backends produce identical decompositions.
"""

from __future__ import annotations

import enum
import math
from typing import Iterable, Sequence

from .poly import BoolPoly, TriangularSet

__all__ = [
    "ChooseStrategy",
    "PolySystem",
    "canonical",
    "simplify",
    "add_reduce",
    "choose_index",
    "choose",
    "decompose_step",
    "triset",
    "termination_index",
    "TerminationIndexError",
]


class ChooseStrategy(enum.Enum):
    INDEX_LEX = "index"
    HIGHEST_CLASS = "highest-class"
    INPUT_ORDER = "input-order"


class PolySystem:
    """A polynomial set in ``n`` variables with stable insertion order."""

    def __init__(self, n: int, polys: Iterable[BoolPoly] = ()):
        self.n = n
        self.polys = canonical(polys)
        for p in self.polys:
            if p.n != n:
                raise ValueError(f"polynomial over {p.n} variables in a system over {n}")
        self.monic_counter = sum(1 for p in self.polys if p.is_monic)

    def __len__(self) -> int:
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)

    def __contains__(self, p: BoolPoly) -> bool:
        return p in self.polys

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PolySystem):
            return NotImplemented
        return self.n == other.n and self.polys == other.polys

    def as_set(self) -> frozenset:
        return frozenset(self.polys)

    def __repr__(self) -> str:
        return "PolySystem({" + ", ".join(str(p) for p in self.polys) + "})"


class TerminationIndexError(AssertionError):
    """A TriSet update failed to decrease the termination index."""


def canonical(polys: Iterable[BoolPoly]) -> list[BoolPoly]:
    """Drop zeros and later duplicates, keeping insertion order."""
    seen = set()
    out = []
    for p in polys:
        if p.is_zero or p in seen:
            continue
        seen.add(p)
        out.append(p)
    return out


def _has_one(polys: Sequence[BoolPoly]) -> bool:
    return any(p.is_one for p in polys)


def _simplify(P: list[BoolPoly]):
    if _has_one(P):
        return None
    lin = []
    while True:
        best, bc = -1, 0
        for i, p in enumerate(P):
            c = p.cls
            if c > bc and p.degree <= 1:
                best, bc = i, c
        if best < 0:
            return lin, P
        lp = P.pop(best)
        tail = lp + BoolPoly.var(lp.n, bc)
        P = canonical([q.substitute(bc, tail) for q in P])
        lin.append(lp)
        if _has_one(P):
            return None


def simplify(s: PolySystem):
    """Eliminate variables with the linear polynomials of ``s``.

    Returns ``None`` when the constant 1 shows up, otherwise
    ``(lin, reduced)`` where ``lin`` holds the linear polynomials in the
    order they were used (highest class first) and ``reduced`` no longer
    mentions any of their leading variables.
    """
    out = _simplify(list(s.polys))
    if out is None:
        return None
    lin, P = out
    return TriangularSet(s.n, lin), PolySystem(s.n, P)


def _reduce_positions(P: list[BoolPoly], positions: Sequence[int]):
    """AddReduce the elements of ``P`` at ``positions`` (all monic), in place.

    Within each class the pivot is the element of lowest degree, then fewest
    terms, then lowest position; every other element of that class is
    replaced by its sum with the pivot.
    """
    groups: dict[int, list[int]] = {}
    for i in positions:
        groups.setdefault(P[i].cls, []).append(i)
    out = list(P)
    for c in sorted(groups):
        idx = groups[c]
        if len(idx) < 2:
            continue
        piv = min(idx, key=lambda i: (P[i].degree, P[i].term_count, i))
        q = P[piv]
        for j in idx:
            if j == piv:
                continue
            s = P[j] + q
            if s.is_one:
                return None
            out[j] = s
    return canonical(out)


def add_reduce(s: PolySystem):
    """Eliminate repeated leading variables by addition; ``None`` on 1."""
    for p in s.polys:
        if not p.is_monic:
            raise ValueError(f"add_reduce needs monic polynomials, got {p}")
    out = _reduce_positions(s.polys, range(len(s.polys)))
    if out is None:
        return None
    return PolySystem(s.n, out)


def choose_index(p: BoolPoly) -> tuple[int, int, int, int]:
    """``(deg(P), term(I), term(U), cls(P))`` for a non-monic ``P = I*x_c + U``."""
    if p.is_constant or p.is_monic:
        raise ValueError(f"choose_index needs a non-monic, non-constant polynomial, got {p}")
    init, tail = p.init_tail()
    return (p.degree, init.term_count, tail.term_count, p.cls)


def _choose_pos(P: Sequence[BoolPoly], strategy: ChooseStrategy) -> int:
    best, best_key = -1, None
    for i, p in enumerate(P):
        if p.is_constant or p.is_monic:
            continue
        if strategy is ChooseStrategy.INPUT_ORDER:
            return i
        key = choose_index(p)
        if strategy is ChooseStrategy.HIGHEST_CLASS:
            key = (-key[3],) + key
        if best_key is None or key < best_key:
            best, best_key = i, key
    if best < 0:
        raise ValueError("choose needs at least one non-monic polynomial")
    return best


def choose(s: PolySystem, strategy: ChooseStrategy = ChooseStrategy.INDEX_LEX) -> BoolPoly:
    return s.polys[_choose_pos(s.polys, strategy)]


def _decompose(P: list[BoolPoly], k: int, found: Sequence[BoolPoly]):
    p = P[k]
    c = p.cls
    init, tail = p.init_tail()
    rest = P[:k] + P[k + 1:]
    left = canonical(rest + [BoolPoly.var(p.n, c) + tail, init + BoolPoly.one(p.n)])
    right = canonical(rest + list(found) + [init, tail])
    return left, right


def decompose_step(s: PolySystem, p: BoolPoly, found: Iterable[BoolPoly] = ()):
    """Split on ``p = I*x_c + U`` into ``(left, right)``.

    ``left`` continues the branch with ``x_c + U`` and ``I + 1``; ``right``
    is the spawned system carrying ``found`` plus ``I`` and ``U``.
    """
    if p.is_constant or p.is_monic:
        raise ValueError(f"decompose_step needs a non-monic polynomial, got {p}")
    k = s.polys.index(p)
    left, right = _decompose(s.polys, k, list(found))
    return PolySystem(s.n, left), PolySystem(s.n, right)


def termination_index(polys: Iterable[BoolPoly], n: int) -> tuple[int, ...]:
    """``(t_n, r_n, ..., t_1, r_1)``: non-monic and total counts per class."""
    t = [0] * (n + 1)
    r = [0] * (n + 1)
    for p in polys:
        c = p.cls
        r[c] += 1
        if c and not p.is_monic:
            t[c] += 1
    out = []
    for c in range(n, 0, -1):
        out += [t[c], r[c]]
    return tuple(out)


def triset(polys: Sequence[BoolPoly], threshold: float = 4,
           strategy: ChooseStrategy = ChooseStrategy.INDEX_LEX,
           check_index: bool = False):
    """Run one solving branch.

    Returns ``(a, spawned)``: ``a`` is the list of monic polynomials forming
    a triangular set, or ``None`` if the branch ends in a contradiction;
    ``spawned`` lists the right-child systems in the order they were split
    off.  The branch depth grows by one per entry of ``spawned``.

    With ``check_index`` set, every update is checked against the
    lexicographic termination index: non-increasing for Simplify and
    AddReduce, strictly decreasing for both halves of a decomposition.
    """
    if threshold is None:
        threshold = math.inf
    P = canonical(polys)
    n = P[0].n if P else 0
    A: list[BoolPoly] = []
    spawned: list[list[BoolPoly]] = []
    n_monic = sum(1 for p in P if p.is_monic)

    def _check(before, after, strict):
        if not check_index:
            return
        b = termination_index(before, n)
        a = termination_index(after, n)
        if not ((a < b) if strict else (a <= b)):
            raise TerminationIndexError(f"index {b} -> {a} on {before} -> {after}")

    while P:
        out = _simplify(P)
        if out is None:
            return None, spawned
        lin, Q = out
        _check(P, Q, False)
        A.extend(lin)
        P = Q
        if n_monic >= threshold:
            Q = _reduce_positions(P, [i for i, p in enumerate(P) if p.is_monic])
            if Q is None:
                return None, spawned
            _check(P, Q, False)
            P = Q
            n_monic = sum(1 for p in P if p.is_monic)
        if all(p.is_monic for p in P):
            classes = [p.cls for p in P]
            if len(set(classes)) == len(classes):
                A.extend(P)
                return A, spawned
            Q = _reduce_positions(P, range(len(P)))
            if Q is None:
                return None, spawned
            _check(P, Q, True)
            P = Q
            continue
        k = _choose_pos(P, strategy)
        left, right = _decompose(P, k, A)
        if check_index:
            _check(P, left, True)
            _check(P, _decompose(P, k, ())[1], True)
        spawned.append(right)
        P = left
        n_monic += 1
    return A, spawned
