# distutils: language = c++
# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled TriSet kernel for systems in at most 64 variables.

A polynomial is a ``vector[uint64_t]`` of monomial masks kept sorted
ascending with no repeats.  This is an internal order only; conversion to
:class:`BoolPoly` restores the canonical one.  The rules (insertion order,
dedup, pivot and choose tie-breaks) follow ``triset.py`` exactly.
"""

from libc.stdint cimport uint64_t
from libcpp cimport bool as cbool
from libcpp.vector cimport vector
from libcpp.utility cimport pair
from libcpp.algorithm cimport sort

cdef extern from *:
    int popcount64 "__builtin_popcountll"(unsigned long long) nogil
    int clz64 "__builtin_clzll"(unsigned long long) nogil

ctypedef vector[uint64_t] Poly

MAX_VARS = 64

cdef enum:
    CHOOSE_INDEX = 0
    CHOOSE_HIGHEST_CLASS = 1
    CHOOSE_INPUT_ORDER = 2

cdef struct Meta:
    uint64_t support
    uint64_t hash
    int deg
    int cls
    int n_init
    int n_tail
    cbool monic
    cbool one


# -- polynomial primitives -------------------------------------------------

cdef inline uint64_t _mix(uint64_t x) noexcept nogil:
    x += 0x9E3779B97F4A7C15ULL
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL
    return x ^ (x >> 31)


cdef Meta _meta(const Poly& p) noexcept nogil:
    cdef Meta m
    cdef size_t i
    cdef uint64_t t, bit
    cdef int d
    m.support = 0
    m.hash = 0
    m.deg = 0
    m.n_init = 0
    m.monic = False
    m.one = p.size() == 1 and p[0] == 0
    for i in range(p.size()):
        t = p[i]
        m.support |= t
        m.hash ^= _mix(t)
        d = popcount64(t)
        if d > m.deg:
            m.deg = d
    if m.support == 0:
        m.cls = 0
        m.n_tail = <int>p.size()
        return m
    m.cls = 64 - clz64(m.support)
    bit = (<uint64_t>1) << (m.cls - 1)
    for i in range(p.size()):
        if p[i] & bit:
            m.n_init += 1
    m.n_tail = <int>p.size() - m.n_init
    if m.n_init == 1:
        for i in range(p.size()):
            if p[i] & bit:
                m.monic = p[i] == bit
                break
    return m


cdef void _normalize(Poly& v) noexcept nogil:
    """Sort ascending and cancel repeated monomials in pairs."""
    cdef size_t i = 0, j, w = 0, n = v.size()
    sort(v.begin(), v.end())
    while i < n:
        j = i + 1
        while j < n and v[j] == v[i]:
            j += 1
        if (j - i) & 1:
            v[w] = v[i]
            w += 1
        i = j
    v.resize(w)


cdef void _add(const Poly& a, const Poly& b, Poly& out) noexcept nogil:
    cdef size_t i = 0, j = 0
    out.clear()
    out.reserve(a.size() + b.size())
    while i < a.size() and j < b.size():
        if a[i] < b[j]:
            out.push_back(a[i])
            i += 1
        elif b[j] < a[i]:
            out.push_back(b[j])
            j += 1
        else:
            i += 1
            j += 1
    while i < a.size():
        out.push_back(a[i])
        i += 1
    while j < b.size():
        out.push_back(b[j])
        j += 1


cdef void _mul(const Poly& a, const Poly& b, Poly& out) noexcept nogil:
    cdef size_t i, j
    out.clear()
    out.reserve(a.size() * b.size())
    for i in range(a.size()):
        for j in range(b.size()):
            out.push_back(a[i] | b[j])
    _normalize(out)


cdef void _split(const Poly& p, uint64_t bit, Poly& hi, Poly& lo) noexcept nogil:
    """``p = hi*x + lo`` for the variable ``bit``; both stay ascending."""
    cdef size_t i
    hi.clear()
    lo.clear()
    for i in range(p.size()):
        if p[i] & bit:
            hi.push_back(p[i] ^ bit)
        else:
            lo.push_back(p[i])


cdef void _substitute(const Poly& p, uint64_t bit, const Poly& l, Poly& out) noexcept nogil:
    cdef Poly prod, rest
    cdef size_t i, j
    cdef uint64_t base
    for i in range(p.size()):
        if p[i] & bit:
            base = p[i] ^ bit
            for j in range(l.size()):
                prod.push_back(base | l[j])
        else:
            rest.push_back(p[i])
    _normalize(prod)
    _add(prod, rest, out)


# -- system-level steps ------------------------------------------------------

cdef void _refresh(vector[Poly]& P, vector[Meta]& M) noexcept nogil:
    cdef size_t i
    M.resize(P.size())
    for i in range(P.size()):
        M[i] = _meta(P[i])


cdef void _canonicalize(vector[Poly]& P, vector[Meta]& M) noexcept nogil:
    """Drop zeros and later duplicates, preserving order."""
    cdef vector[pair[uint64_t, size_t]] keyed
    cdef vector[char] dead
    cdef size_t i, j, k, g, w
    cdef cbool any_dead = False
    dead.resize(P.size(), 0)
    for i in range(P.size()):
        if P[i].size() == 0:
            dead[i] = 1
            any_dead = True
        else:
            keyed.push_back(pair[uint64_t, size_t](M[i].hash, i))
    sort(keyed.begin(), keyed.end())
    g = 0
    while g < keyed.size():
        k = g + 1
        while k < keyed.size() and keyed[k].first == keyed[g].first:
            k += 1
        if k - g > 1:
            # members are ascending by position, so the earlier one survives
            for i in range(g + 1, k):
                for j in range(g, i):
                    if not dead[keyed[j].second] and P[keyed[i].second] == P[keyed[j].second]:
                        dead[keyed[i].second] = 1
                        any_dead = True
                        break
        g = k
    if not any_dead:
        return
    w = 0
    for i in range(P.size()):
        if not dead[i]:
            if w != i:
                P[w].swap(P[i])
                M[w] = M[i]
            w += 1
    P.resize(w)
    M.resize(w)


cdef cbool _has_one(const vector[Meta]& M) noexcept nogil:
    cdef size_t i
    for i in range(M.size()):
        if M[i].one:
            return True
    return False


cdef cbool _simplify(vector[Poly]& P, vector[Meta]& M, vector[Poly]& A) noexcept nogil:
    cdef int best, bc
    cdef size_t i
    cdef uint64_t bit
    cdef Poly lp, tail, out
    if _has_one(M):
        return False
    while True:
        best = -1
        bc = 0
        for i in range(P.size()):
            if M[i].cls > bc and M[i].deg <= 1:
                best = <int>i
                bc = M[i].cls
        if best < 0:
            return True
        lp.swap(P[best])
        P.erase(P.begin() + best)
        M.erase(M.begin() + best)
        bit = (<uint64_t>1) << (bc - 1)
        tail.clear()
        for i in range(lp.size()):
            if lp[i] != bit:
                tail.push_back(lp[i])
        for i in range(P.size()):
            if M[i].support & bit:
                _substitute(P[i], bit, tail, out)
                P[i].swap(out)
                M[i] = _meta(P[i])
        A.push_back(lp)
        _canonicalize(P, M)
        if _has_one(M):
            return False


cdef cbool _reduce_positions(vector[Poly]& P, vector[Meta]& M, const vector[size_t]& pos) noexcept nogil:
    """AddReduce the (monic) elements at ``pos``; False on a contradiction."""
    cdef vector[pair[int, size_t]] byclass
    cdef size_t g, k, i, piv, j
    cdef Poly out
    for i in range(pos.size()):
        byclass.push_back(pair[int, size_t](M[pos[i]].cls, pos[i]))
    sort(byclass.begin(), byclass.end())
    g = 0
    while g < byclass.size():
        k = g + 1
        while k < byclass.size() and byclass[k].first == byclass[g].first:
            k += 1
        if k - g > 1:
            piv = byclass[g].second
            for i in range(g + 1, k):
                j = byclass[i].second
                if (M[j].deg < M[piv].deg
                        or (M[j].deg == M[piv].deg and P[j].size() < P[piv].size())):
                    piv = j
            for i in range(g, k):
                j = byclass[i].second
                if j == piv:
                    continue
                _add(P[j], P[piv], out)
                if out.size() == 1 and out[0] == 0:
                    return False
                P[j].swap(out)
                M[j] = _meta(P[j])
        g = k
    _canonicalize(P, M)
    return True


cdef inline cbool _key_less(const int* a, const int* b) noexcept nogil:
    cdef int i
    for i in range(5):
        if a[i] != b[i]:
            return a[i] < b[i]
    return False


cdef int _choose(const vector[Meta]& M, int strategy) noexcept nogil:
    """Position of the non-monic element to split on, -1 if none."""
    cdef int best = -1
    cdef size_t i
    cdef int key[5]
    cdef int best_key[5]
    for i in range(M.size()):
        if M[i].cls == 0 or M[i].monic:
            continue
        if strategy == CHOOSE_INPUT_ORDER:
            return <int>i
        key[0] = -M[i].cls if strategy == CHOOSE_HIGHEST_CLASS else 0
        key[1] = M[i].deg
        key[2] = M[i].n_init
        key[3] = M[i].n_tail
        key[4] = M[i].cls
        if best < 0 or _key_less(key, best_key):
            best = <int>i
            best_key[:] = key
    return best


cdef void _decompose(vector[Poly]& P, vector[Meta]& M, int k, const vector[Poly]& A,
                     vector[Poly]& right) noexcept nogil:
    """Split on ``P[k] = I*x_c + U``: ``P`` becomes the left child."""
    cdef Poly init, tail, lead, extra
    cdef uint64_t bit = (<uint64_t>1) << (M[k].cls - 1)
    cdef vector[Meta] RM
    cdef size_t i
    _split(P[k], bit, init, tail)
    P.erase(P.begin() + k)
    M.erase(M.begin() + k)
    right = P
    for i in range(A.size()):
        right.push_back(A[i])
    right.push_back(init)
    right.push_back(tail)
    _refresh(right, RM)
    _canonicalize(right, RM)
    extra.push_back(bit)
    _add(tail, extra, lead)
    P.push_back(lead)
    extra[0] = 0
    _add(init, extra, lead)
    P.push_back(lead)
    M.push_back(_meta(P[P.size() - 2]))
    M.push_back(_meta(P[P.size() - 1]))
    _canonicalize(P, M)


cdef cbool _triset(vector[Poly]& P, int threshold, int strategy,
                   vector[Poly]& A, vector[vector[Poly]]& spawned) noexcept nogil:
    cdef vector[Meta] M
    cdef vector[size_t] pos
    cdef vector[Poly] right
    cdef size_t i
    cdef int n_monic = 0, k
    cdef cbool all_monic, distinct
    cdef char seen[65]
    _refresh(P, M)
    _canonicalize(P, M)
    for i in range(M.size()):
        if M[i].monic:
            n_monic += 1
    while P.size() > 0:
        if not _simplify(P, M, A):
            return False
        if threshold >= 0 and n_monic >= threshold:
            pos.clear()
            for i in range(M.size()):
                if M[i].monic:
                    pos.push_back(i)
            if not _reduce_positions(P, M, pos):
                return False
            n_monic = 0
            for i in range(M.size()):
                if M[i].monic:
                    n_monic += 1
        all_monic = True
        for i in range(M.size()):
            if not M[i].monic:
                all_monic = False
                break
        if all_monic:
            distinct = True
            for i in range(65):
                seen[i] = 0
            for i in range(M.size()):
                if seen[M[i].cls]:
                    distinct = False
                    break
                seen[M[i].cls] = 1
            if distinct:
                for i in range(P.size()):
                    A.push_back(P[i])
                return True
            pos.clear()
            for i in range(M.size()):
                pos.push_back(i)
            if not _reduce_positions(P, M, pos):
                return False
            continue
        k = _choose(M, strategy)
        _decompose(P, M, k, A, right)
        spawned.push_back(right)
        n_monic += 1
    return True


# -- Python surface ------------------------------------------------------------

cdef Poly _to_poly(masks) except *:
    cdef Poly p
    for m in masks:
        p.push_back(<uint64_t>m)
    _normalize(p)
    return p


cdef list _from_poly(const Poly& p):
    cdef size_t i
    return [p[i] for i in range(p.size())]


cdef class CSystem:
    """An opaque polynomial system held in compiled form."""

    cdef vector[Poly] polys
    cdef readonly int n

    def __init__(self, int n, polys=()):
        if n > 64:
            raise ValueError("the compiled kernel supports at most 64 variables")
        self.n = n
        for masks in polys:
            self.polys.push_back(_to_poly(masks))

    def __len__(self):
        return self.polys.size()

    def masks(self):
        """Each polynomial as a list of ascending monomial masks."""
        cdef size_t i
        return [_from_poly(self.polys[i]) for i in range(self.polys.size())]


cdef CSystem _wrap(int n, vector[Poly]& v):
    cdef CSystem s = CSystem.__new__(CSystem)
    s.n = n
    s.polys.swap(v)
    return s


def run_triset(CSystem system, int threshold, int strategy):
    """Run one solving branch on a copy of ``system``.

    ``threshold`` < 0 disables the early AddReduce.  Returns ``(a, spawned)``
    where ``a`` is a list of mask lists or ``None`` on contradiction, and
    ``spawned`` is a list of :class:`CSystem`.
    """
    cdef vector[Poly] P = system.polys
    cdef vector[Poly] A
    cdef vector[vector[Poly]] spawned
    cdef cbool ok
    cdef size_t i
    with nogil:
        ok = _triset(P, threshold, strategy, A, spawned)
    out = [_wrap(system.n, spawned[i]) for i in range(spawned.size())]
    if not ok:
        return None, out
    return [_from_poly(A[i]) for i in range(A.size())], out


def simplify_masks(polys):
    """Kernel Simplify on mask lists: ``None`` or ``(lin, reduced)``."""
    cdef vector[Poly] P, A
    cdef vector[Meta] M
    cdef size_t i
    for masks in polys:
        P.push_back(_to_poly(masks))
    _refresh(P, M)
    _canonicalize(P, M)
    if not _simplify(P, M, A):
        return None
    return ([_from_poly(A[i]) for i in range(A.size())],
            [_from_poly(P[i]) for i in range(P.size())])


def add_reduce_masks(polys):
    """Kernel AddReduce over all of ``polys``: ``None`` or the reduced list."""
    cdef vector[Poly] P
    cdef vector[Meta] M
    cdef vector[size_t] pos
    cdef size_t i
    for masks in polys:
        P.push_back(_to_poly(masks))
    _refresh(P, M)
    _canonicalize(P, M)
    for i in range(P.size()):
        pos.push_back(i)
    if not _reduce_positions(P, M, pos):
        return None
    return [_from_poly(P[i]) for i in range(P.size())]


def add_masks(a, b):
    cdef Poly pa = _to_poly(a), pb = _to_poly(b), out
    _add(pa, pb, out)
    return _from_poly(out)


def mul_masks(a, b):
    cdef Poly pa = _to_poly(a), pb = _to_poly(b), out
    _mul(pa, pb, out)
    return _from_poly(out)


def substitute_masks(p, int c, l):
    cdef Poly pp = _to_poly(p), pl = _to_poly(l), out
    _substitute(pp, (<uint64_t>1) << (c - 1), pl, out)
    return _from_poly(out)
