"""Pure-Python kernel: packed-integer ops for the doubled herringbone lattice.

Elements are packed as ``tag | index << 4``.  The compiled extension
(`latkit._kernel`) implements exactly the same functions; `latkit.kernel`
picks one at import time.  Keep the two in sync — the test suite compares
them op by op.

Tag layout (chains ascend on the upper half, descend on the lower half):

    ZERO  bottom                ONE  top
    B     the unique atom       C    the unique coatom
    A     lower even rib chain  D    upper even rib chain
    P     lower odd rib chain   S    upper odd rib chain
    Q     lower spine           R    upper spine
"""

BACKEND = "python"

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

_LOWER = frozenset((T_B, T_A, T_P, T_Q))

CODE_ZERO = T_ZERO
CODE_ONE = T_ONE


def pack(tag, index):
    return tag | (index << 4)


def unpack(code):
    return code & 15, code >> 4


def _even_ceil(i):
    return i + (i & 1)


def _odd_ceil(i):
    return i | 1


def leq_code(x, y):
    """Order of the doubled herringbone lattice on packed codes."""
    if x == y:
        return True
    tx = x & 15
    ty = y & 15
    if tx == T_ZERO or ty == T_ONE:
        return True
    if ty == T_ZERO or tx == T_ONE:
        return False
    xlow = tx in _LOWER
    ylow = ty in _LOWER
    if xlow and ylow:
        if tx == ty:
            return (x >> 4) >= (y >> 4)
        if ty == T_Q:
            return tx == T_B or (y >> 4) <= (x >> 4)
        return False
    if not xlow and not ylow:
        if tx == ty:
            return (x >> 4) <= (y >> 4)
        if tx == T_R:
            return ty == T_C or (x >> 4) <= (y >> 4)
        return False
    if xlow:
        # Lower-half elements sit below the upper half exactly when the lower
        # one is on the odd rib chain or the upper one is on its mirror image.
        return tx == T_P or ty == T_S
    return False


def meet_code(x, y):
    if leq_code(x, y):
        return x
    if leq_code(y, x):
        return y
    tx = x & 15
    ty = y & 15
    ix = x >> 4
    iy = y >> 4
    xlow = tx in _LOWER
    ylow = ty in _LOWER
    if xlow and ylow:
        if tx == T_Q:
            if ty == T_A:
                return T_A | (max(iy, _even_ceil(ix)) << 4)
            if ty == T_P:
                return T_P | (max(iy, _odd_ceil(ix)) << 4)
            return CODE_ZERO
        if ty == T_Q:
            if tx == T_A:
                return T_A | (max(ix, _even_ceil(iy)) << 4)
            if tx == T_P:
                return T_P | (max(ix, _odd_ceil(iy)) << 4)
            return CODE_ZERO
        return CODE_ZERO
    if not xlow and not ylow:
        if tx == T_C:
            return T_R | (iy << 4)
        if ty == T_C:
            return T_R | (ix << 4)
        # R against D/S at higher spine index, or D against S.
        return T_R | (min(ix, iy) << 4)
    if not xlow:
        tx, ty = ty, tx
        ix, iy = iy, ix
    # Now x is a lower incomparable element (tag B, A or Q) and y upper.
    if tx == T_Q:
        return T_P | (_odd_ceil(ix) << 4)
    return CODE_ZERO


def join_code(x, y):
    if leq_code(x, y):
        return y
    if leq_code(y, x):
        return x
    tx = x & 15
    ty = y & 15
    ix = x >> 4
    iy = y >> 4
    xlow = tx in _LOWER
    ylow = ty in _LOWER
    if xlow and ylow:
        if tx == T_Q:
            return T_Q | (min(ix, iy) << 4)
        if ty == T_Q:
            return T_Q | (min(ix, iy) << 4)
        if tx == T_B:
            return T_Q | (iy << 4)
        if ty == T_B:
            return T_Q | (ix << 4)
        return T_Q | (min(ix, iy) << 4)
    if not xlow and not ylow:
        if tx == T_R:
            if ty == T_D:
                return T_D | (max(iy, _even_ceil(ix)) << 4)
            if ty == T_S:
                return T_S | (max(iy, _odd_ceil(ix)) << 4)
            return CODE_ONE
        if ty == T_R:
            if tx == T_D:
                return T_D | (max(ix, _even_ceil(iy)) << 4)
            if tx == T_S:
                return T_S | (max(ix, _odd_ceil(iy)) << 4)
            return CODE_ONE
        return CODE_ONE
    if not xlow:
        tx, ty = ty, tx
        ix, iy = iy, ix
    if ty == T_R:
        return T_S | (_odd_ceil(iy) << 4)
    return CODE_ONE


_DELTA = {
    T_ZERO: T_ONE,
    T_ONE: T_ZERO,
    T_B: T_C,
    T_C: T_B,
    T_A: T_D,
    T_D: T_A,
    T_P: T_S,
    T_S: T_P,
    T_Q: T_R,
    T_R: T_Q,
}


def delta_code(x):
    """Point reflection: the order-reversing involution of the lattice."""
    return _DELTA[x & 15] | (x & ~15)


def pair_closure(gens, budget):
    """Bounded sublattice closure in the direct square, on packed codes.

    `gens` is a list of ``(code, code)`` pairs.  Combines known elements
    pairwise with componentwise meet and join, breadth first, scanning pairs
    in lexicographic (left discovery index, right discovery index, meet
    before join) order.  Stops at a fixpoint, or once `budget` elements are
    known and a further new element shows up.

    Returns ``(elements, parents, complete)`` where `elements` is the list of
    pairs in discovery order and ``parents[k]`` is ``(i, j, op)`` with op 0
    for a generator (i = its position in `gens`), 1 for meet, 2 for join.
    """
    meet = meet_code
    join = join_code
    elements = []
    parents = []
    seen = set()
    for gi, (x, y) in enumerate(gens):
        key = (x << 32) | y
        if key not in seen:
            seen.add(key)
            elements.append((x, y))
            parents.append((gi, -1, 0))
    complete = False
    lo = 0
    while True:
        hi = len(elements)
        added = False
        truncated = False
        for i in range(hi):
            xi, yi = elements[i]
            jstart = lo if i < lo else i
            for j in range(jstart, hi):
                xj, yj = elements[j]
                mx = meet(xi, xj)
                my = meet(yi, yj)
                key = (mx << 32) | my
                if key not in seen:
                    if len(elements) >= budget:
                        truncated = True
                        break
                    seen.add(key)
                    elements.append((mx, my))
                    parents.append((i, j, 1))
                    added = True
                jx = join(xi, xj)
                jy = join(yi, yj)
                key = (jx << 32) | jy
                if key not in seen:
                    if len(elements) >= budget:
                        truncated = True
                        break
                    seen.add(key)
                    elements.append((jx, jy))
                    parents.append((i, j, 2))
                    added = True
            if truncated:
                break
        if truncated:
            break
        if not added:
            complete = True
            break
        lo = hi
    return elements, parents, complete
