"""Boolean polynomials in F2[x1..xn]/(xi^2 + xi).

A monomial is a plain ``int`` bit mask: bit ``i - 1`` set means ``x_i``
divides it, so the empty mask ``0`` is the constant monomial ``1``.
Variables are idempotent, so the product of two monomials is the bitwise
OR of their masks.

A :class:`BoolPoly` is the XOR-sum of a set of distinct monomials (its
algebraic normal form).  Terms are exposed in a canonical order: higher
degree first, then by descending mask value, which puts monomials with a
higher top variable first among those of equal degree.
"""

from __future__ import annotations

import re
from typing import Iterable, Sequence

__all__ = [
    "BoolPoly",
    "TriangularSet",
    "monomial_degree",
    "monomial_vars",
    "monomial_str",
]


def monomial_degree(m: int) -> int:
    return m.bit_count()


def monomial_vars(m: int) -> list[int]:
    """1-based variable indices dividing monomial ``m``, ascending."""
    out = []
    i = 1
    while m:
        if m & 1:
            out.append(i)
        m >>= 1
        i += 1
    return out


def monomial_str(m: int) -> str:
    if m == 0:
        return "1"
    return "*".join(f"x{i}" for i in monomial_vars(m))


def _toggle_all(acc: set, masks: Iterable[int]) -> None:
    for m in masks:
        if m in acc:
            acc.remove(m)
        else:
            acc.add(m)


def _term_key(m: int) -> tuple[int, int]:
    return (m.bit_count(), m)


_FACTOR = re.compile(r"x(\d+)\Z")


class BoolPoly:
    """An element of the Boolean polynomial ring in ``n`` variables.

    Instances are immutable.  ``BoolPoly(n, terms)`` XOR-combines the given
    monomial masks, so repeated masks cancel in pairs.
    """

    __slots__ = ("n", "_set", "_terms", "_hash", "_support")

    def __init__(self, n: int, terms: Iterable[int] = ()):
        acc: set[int] = set()
        _toggle_all(acc, terms)
        if acc and max(acc).bit_length() > n:
            raise ValueError(f"monomial uses a variable beyond x{n}")
        self._init(n, frozenset(acc))

    def _init(self, n: int, s: frozenset) -> None:
        self.n = n
        self._set = s
        self._terms = None
        self._hash = None
        self._support = None

    @classmethod
    def _from_set(cls, n: int, s: frozenset) -> "BoolPoly":
        p = cls.__new__(cls)
        p._init(n, s)
        return p

    @classmethod
    def zero(cls, n: int) -> "BoolPoly":
        return cls._from_set(n, frozenset())

    @classmethod
    def one(cls, n: int) -> "BoolPoly":
        return cls._from_set(n, frozenset((0,)))

    @classmethod
    def var(cls, n: int, i: int) -> "BoolPoly":
        if not 1 <= i <= n:
            raise ValueError(f"variable index {i} outside 1..{n}")
        return cls._from_set(n, frozenset((1 << (i - 1),)))

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> "BoolPoly":
        """Parse ``"x1*x3 + x2 + 1"``-style text.

        Whitespace is ignored and terms may come in any order.  When ``n`` is
        omitted the largest variable index seen is used.
        """
        masks = []
        top = 0
        body = "".join(text.split())
        if not body:
            raise ValueError("empty polynomial")
        for term in body.split("+"):
            if term == "":
                raise ValueError(f"empty term in {text!r}")
            if term in ("0", "1"):
                if term == "1":
                    masks.append(0)
                continue
            m = 0
            for factor in term.split("*"):
                if factor == "1":
                    continue
                if factor == "0":
                    m = None
                    break
                hit = _FACTOR.match(factor)
                if hit is None:
                    raise ValueError(f"malformed factor {factor!r}")
                i = int(hit.group(1))
                if i < 1:
                    raise ValueError(f"variable index must be >= 1, got x{i}")
                if n is not None and i > n:
                    raise ValueError(f"variable x{i} out of range (vars: {n})")
                top = max(top, i)
                m |= 1 << (i - 1)
            if m is not None:
                masks.append(m)
        return cls(top if n is None else n, masks)

    # -- structure -------------------------------------------------------

    @property
    def terms(self) -> tuple[int, ...]:
        """Monomial masks in canonical order."""
        if self._terms is None:
            self._terms = tuple(sorted(self._set, key=_term_key, reverse=True))
        return self._terms

    @property
    def termset(self) -> frozenset:
        return self._set

    @property
    def support(self) -> int:
        """Mask of every variable occurring in the polynomial."""
        if self._support is None:
            s = 0
            for m in self._set:
                s |= m
            self._support = s
        return self._support

    @property
    def cls(self) -> int:
        """Largest variable index present; 0 for constants."""
        return self.support.bit_length()

    @property
    def degree(self) -> int:
        return max((m.bit_count() for m in self._set), default=0)

    @property
    def term_count(self) -> int:
        return len(self._set)

    @property
    def is_zero(self) -> bool:
        return not self._set

    @property
    def is_one(self) -> bool:
        return self._set == _ONE

    @property
    def is_constant(self) -> bool:
        return self.support == 0

    @property
    def is_monic(self) -> bool:
        c = self.cls
        if c == 0:
            return False
        bit = 1 << (c - 1)
        return sum(1 for m in self._set if m & bit) == 1 and bit in self._set

    @property
    def is_linear(self) -> bool:
        return self.cls > 0 and self.degree <= 1

    def init_tail(self) -> tuple["BoolPoly", "BoolPoly"]:
        """Split ``p = I*x_c + U`` with ``c = cls(p)``; neither part has x_c."""
        c = self.cls
        if c == 0:
            raise ValueError("init_tail of a constant polynomial")
        return self.split(c)

    def split(self, c: int) -> tuple["BoolPoly", "BoolPoly"]:
        """Coefficients ``(P1, P2)`` of ``p = P1*x_c + P2`` for any variable c."""
        bit = 1 << (c - 1)
        hi = frozenset(m ^ bit for m in self._set if m & bit)
        lo = frozenset(m for m in self._set if not m & bit)
        return BoolPoly._from_set(self.n, hi), BoolPoly._from_set(self.n, lo)

    def substitute(self, c: int, l: "BoolPoly") -> "BoolPoly":
        """Replace ``x_c`` by ``l``, where ``l`` has class below ``c``."""
        if l.cls >= c:
            raise ValueError(f"substitute x{c} needs a polynomial of lower class, got cls {l.cls}")
        self._check(l)
        bit = 1 << (c - 1)
        if not self.support & bit:
            return self
        acc: set[int] = set()
        for m in self._set:
            if m & bit:
                base = m ^ bit
                _toggle_all(acc, (base | t for t in l._set))
            else:
                _toggle_all(acc, (m,))
        return BoolPoly._from_set(self.n, frozenset(acc))

    def compose(self, forms: Sequence["BoolPoly"]) -> "BoolPoly":
        """Simultaneously substitute ``x_j <- forms[j - 1]`` for every j."""
        if len(forms) != self.n:
            raise ValueError("compose needs one polynomial per variable")
        out = BoolPoly.zero(self.n)
        one = BoolPoly.one(self.n)
        for m in self._set:
            prod = one
            for i in monomial_vars(m):
                prod = prod * forms[i - 1]
            out = out + prod
        return out

    def eval(self, point: Sequence[int]) -> int:
        if len(point) != self.n:
            raise ValueError(f"point has length {len(point)}, expected {self.n}")
        mask = 0
        for i, b in enumerate(point):
            if b & 1:
                mask |= 1 << i
        return self.eval_mask(mask)

    def eval_mask(self, mask: int) -> int:
        """Evaluate at the point whose coordinate ``x_i`` is bit ``i - 1``."""
        v = 0
        for m in self._set:
            if m & mask == m:
                v ^= 1
        return v

    # -- arithmetic ------------------------------------------------------

    def _check(self, other: "BoolPoly") -> None:
        if other.n != self.n:
            raise ValueError(f"ambient mismatch: {self.n} vs {other.n} variables")

    def __add__(self, other: "BoolPoly") -> "BoolPoly":
        self._check(other)
        return BoolPoly._from_set(self.n, self._set ^ other._set)

    __sub__ = __add__

    def __mul__(self, other: "BoolPoly") -> "BoolPoly":
        self._check(other)
        acc: set[int] = set()
        for a in self._set:
            _toggle_all(acc, (a | b for b in other._set))
        return BoolPoly._from_set(self.n, frozenset(acc))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BoolPoly):
            return NotImplemented
        return self.n == other.n and self._set == other._set

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, self._set))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._set)

    def __str__(self) -> str:
        if not self._set:
            return "0"
        return " + ".join(monomial_str(m) for m in self.terms)

    def __repr__(self) -> str:
        return f"BoolPoly({self.n}, {str(self)!r})"


_ONE = frozenset((0,))


class TriangularSet:
    """Monic polynomials with strictly increasing classes.

    Its zero set has exactly ``2**(n - len(self))`` points.
    """

    __slots__ = ("n", "elems")

    def __init__(self, n: int, elems: Iterable[BoolPoly] = ()):
        elems = sorted(elems, key=lambda p: p.cls)
        prev = 0
        for p in elems:
            if p.n != n:
                raise ValueError("triangular set element has the wrong ambient n")
            if not p.is_monic:
                raise ValueError(f"triangular set element {p} is not monic")
            if p.cls <= prev:
                raise ValueError("triangular set classes must strictly increase")
            prev = p.cls
        self.n = n
        self.elems = tuple(elems)

    def __len__(self) -> int:
        return len(self.elems)

    def __iter__(self):
        return iter(self.elems)

    def __getitem__(self, i):
        return self.elems[i]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TriangularSet):
            return NotImplemented
        return self.n == other.n and self.elems == other.elems

    def __hash__(self) -> int:
        return hash((self.n, self.elems))

    @property
    def leading(self) -> tuple[int, ...]:
        return tuple(p.cls for p in self.elems)

    def solution_count(self) -> int:
        return 1 << (self.n - len(self.elems))

    def __repr__(self) -> str:
        return "TriangularSet([" + ", ".join(str(p) for p in self.elems) + "])"
