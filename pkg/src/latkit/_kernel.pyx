# cython: language_level=3
"""Compiled kernel: packed-integer ops for the doubled herringbone lattice.

Mirror of `latkit._pykernel`; see that module for the tag layout and the
closure schedule.  The two backends must stay behaviourally identical.
"""

from libcpp.unordered_set cimport unordered_set
from libcpp.vector cimport vector

BACKEND = "cython"

cdef enum:
    T_ZERO = 0
    T_ONE = 1
    T_B = 2
    T_C = 3
    T_A = 4
    T_P = 5
    T_Q = 6
    T_R = 7
    T_S = 8
    T_D = 9

CODE_ZERO = T_ZERO
CODE_ONE = T_ONE


cdef inline bint _is_lower(long tag) nogil:
    return tag == T_B or tag == T_A or tag == T_P or tag == T_Q


cdef inline long _even_ceil(long i) nogil:
    return i + (i & 1)


cdef inline long _odd_ceil(long i) nogil:
    return i | 1


cdef bint _leq(long x, long y) nogil:
    cdef long tx, ty
    cdef bint xlow, ylow
    if x == y:
        return True
    tx = x & 15
    ty = y & 15
    if tx == T_ZERO or ty == T_ONE:
        return True
    if ty == T_ZERO or tx == T_ONE:
        return False
    xlow = _is_lower(tx)
    ylow = _is_lower(ty)
    if xlow and ylow:
        if tx == ty:
            return (x >> 4) >= (y >> 4)
        if ty == T_Q:
            return tx == T_B or (y >> 4) <= (x >> 4)
        return False
    if (not xlow) and (not ylow):
        if tx == ty:
            return (x >> 4) <= (y >> 4)
        if tx == T_R:
            return ty == T_C or (x >> 4) <= (y >> 4)
        return False
    if xlow:
        return tx == T_P or ty == T_S
    return False


cdef long _meet(long x, long y) nogil:
    cdef long tx, ty, ix, iy, t
    cdef bint xlow, ylow
    if _leq(x, y):
        return x
    if _leq(y, x):
        return y
    tx = x & 15
    ty = y & 15
    ix = x >> 4
    iy = y >> 4
    xlow = _is_lower(tx)
    ylow = _is_lower(ty)
    if xlow and ylow:
        if tx == T_Q:
            if ty == T_A:
                return T_A | (max(iy, _even_ceil(ix)) << 4)
            if ty == T_P:
                return T_P | (max(iy, _odd_ceil(ix)) << 4)
            return T_ZERO
        if ty == T_Q:
            if tx == T_A:
                return T_A | (max(ix, _even_ceil(iy)) << 4)
            if tx == T_P:
                return T_P | (max(ix, _odd_ceil(iy)) << 4)
            return T_ZERO
        return T_ZERO
    if (not xlow) and (not ylow):
        if tx == T_C:
            return T_R | (iy << 4)
        if ty == T_C:
            return T_R | (ix << 4)
        return T_R | (min(ix, iy) << 4)
    if not xlow:
        t = tx; tx = ty; ty = t
        t = ix; ix = iy; iy = t
    if tx == T_Q:
        return T_P | (_odd_ceil(ix) << 4)
    return T_ZERO


cdef long _join(long x, long y) nogil:
    cdef long tx, ty, ix, iy, t
    cdef bint xlow, ylow
    if _leq(x, y):
        return y
    if _leq(y, x):
        return x
    tx = x & 15
    ty = y & 15
    ix = x >> 4
    iy = y >> 4
    xlow = _is_lower(tx)
    ylow = _is_lower(ty)
    if xlow and ylow:
        if tx == T_Q or ty == T_Q:
            return T_Q | (min(ix, iy) << 4)
        if tx == T_B:
            return T_Q | (iy << 4)
        if ty == T_B:
            return T_Q | (ix << 4)
        return T_Q | (min(ix, iy) << 4)
    if (not xlow) and (not ylow):
        if tx == T_R:
            if ty == T_D:
                return T_D | (max(iy, _even_ceil(ix)) << 4)
            if ty == T_S:
                return T_S | (max(iy, _odd_ceil(ix)) << 4)
            return T_ONE
        if ty == T_R:
            if tx == T_D:
                return T_D | (max(ix, _even_ceil(iy)) << 4)
            if tx == T_S:
                return T_S | (max(ix, _odd_ceil(iy)) << 4)
            return T_ONE
        return T_ONE
    if not xlow:
        t = tx; tx = ty; ty = t
        t = ix; ix = iy; iy = t
    if ty == T_R:
        return T_S | (_odd_ceil(iy) << 4)
    return T_ONE


cdef long _DELTA_TAG[10]
_DELTA_TAG[T_ZERO] = T_ONE
_DELTA_TAG[T_ONE] = T_ZERO
_DELTA_TAG[T_B] = T_C
_DELTA_TAG[T_C] = T_B
_DELTA_TAG[T_A] = T_D
_DELTA_TAG[T_D] = T_A
_DELTA_TAG[T_P] = T_S
_DELTA_TAG[T_S] = T_P
_DELTA_TAG[T_Q] = T_R
_DELTA_TAG[T_R] = T_Q


def pack(tag, index):
    return tag | (index << 4)


def unpack(code):
    return code & 15, code >> 4


def leq_code(x, y):
    return _leq(x, y)


def meet_code(x, y):
    return _meet(x, y)


def join_code(x, y):
    return _join(x, y)


def delta_code(x):
    """Point reflection: the order-reversing involution of the lattice."""
    return _DELTA_TAG[x & 15] | (x & ~<long>15)


def pair_closure(gens, budget):
    """Bounded closure in the direct square; see `_pykernel.pair_closure`."""
    cdef vector[long] xs, ys
    cdef vector[long] par_i, par_j, par_op
    cdef unordered_set[long long] seen
    cdef long long key
    cdef long x, y, xi, yi, xj, yj, mx, my, jx, jy
    cdef Py_ssize_t lo = 0, hi, i, j, jstart, gi
    cdef long limit = budget
    cdef bint added, truncated, complete = False

    for gi, (px, py) in enumerate(gens):
        x = px
        y = py
        key = (<long long> x << 32) | <unsigned long> y
        if seen.find(key) == seen.end():
            seen.insert(key)
            xs.push_back(x)
            ys.push_back(y)
            par_i.push_back(gi)
            par_j.push_back(-1)
            par_op.push_back(0)

    while True:
        hi = xs.size()
        added = False
        truncated = False
        for i in range(hi):
            xi = xs[i]
            yi = ys[i]
            jstart = lo if i < lo else i
            for j in range(jstart, hi):
                xj = xs[j]
                yj = ys[j]
                mx = _meet(xi, xj)
                my = _meet(yi, yj)
                key = (<long long> mx << 32) | <unsigned long> my
                if seen.find(key) == seen.end():
                    if <long> xs.size() >= limit:
                        truncated = True
                        break
                    seen.insert(key)
                    xs.push_back(mx)
                    ys.push_back(my)
                    par_i.push_back(i)
                    par_j.push_back(j)
                    par_op.push_back(1)
                    added = True
                jx = _join(xi, xj)
                jy = _join(yi, yj)
                key = (<long long> jx << 32) | <unsigned long> jy
                if seen.find(key) == seen.end():
                    if <long> xs.size() >= limit:
                        truncated = True
                        break
                    seen.insert(key)
                    xs.push_back(jx)
                    ys.push_back(jy)
                    par_i.push_back(i)
                    par_j.push_back(j)
                    par_op.push_back(2)
                    added = True
            if truncated:
                break
        if truncated:
            break
        if not added:
            complete = True
            break
        lo = hi

    elements = [(xs[i], ys[i]) for i in range(<Py_ssize_t> xs.size())]
    parents = [
        (par_i[i], par_j[i], par_op[i]) for i in range(<Py_ssize_t> par_i.size())
    ]
    return elements, parents, complete
