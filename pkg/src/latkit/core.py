"""Finite bounded lattices as immutable values.

A `FiniteLattice` stores the order as bitmask down-sets plus a dense numpy
relation matrix, and precomputes full meet/join tables at validation time;
everything downstream is table lookups.  Element names are opaque strings and
the canonical element order is the input order.
"""

from __future__ import annotations

from functools import cached_property, reduce
from typing import Iterable, Optional, Sequence

import numpy as np

from latkit.errors import (
    NotALattice,
    NotAPoset,
    NotASublattice,
    SizeLimit,
    Unbounded,
)

MATERIALIZE_CAP = 2048
ISO_SIZE_LIMIT = 512


class FiniteLattice:
    """A finite bounded lattice; immutable after construction.

    Do not call the constructor directly: build lattices with `validate`
    (from cover pairs) or the helpers in this module.
    """

    def __init__(self, universe, down_masks, meet_tab, join_tab, bottom_index, top_index):
        self.universe = tuple(universe)
        self.n = len(self.universe)
        self._index = {name: i for i, name in enumerate(self.universe)}
        self.down_masks = tuple(down_masks)
        self.up_masks = tuple(_transpose_masks(down_masks, self.n))
        self.meet_table = meet_tab
        self.join_table = join_tab
        self.bottom_index = bottom_index
        self.top_index = top_index
        self.meet_table.flags.writeable = False
        self.join_table.flags.writeable = False

    @property
    def bottom(self) -> str:
        return self.universe[self.bottom_index]

    @property
    def top(self) -> str:
        return self.universe[self.top_index]

    def __len__(self):
        return self.n

    def __repr__(self):
        return f"FiniteLattice(|L|={self.n}, bottom={self.bottom!r}, top={self.top!r})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"not an element: {name!r}") from None

    def leq(self, a: str, b: str) -> bool:
        return bool(self.down_masks[self.index(b)] >> self.index(a) & 1)

    def leq_idx(self, i: int, j: int) -> bool:
        return bool(self.down_masks[j] >> i & 1)

    def meet(self, a: str, b: str) -> str:
        return self.universe[self.meet_table[self.index(a), self.index(b)]]

    def join(self, a: str, b: str) -> str:
        return self.universe[self.join_table[self.index(a), self.index(b)]]

    def meet_all(self, names: Iterable[str]) -> str:
        return reduce(self.meet, names)

    def join_all(self, names: Iterable[str]) -> str:
        return reduce(self.join, names)

    @cached_property
    def leq_matrix(self) -> np.ndarray:
        """Dense boolean matrix: entry (i, j) iff element i <= element j."""
        mat = np.zeros((self.n, self.n), dtype=bool)
        for j, mask in enumerate(self.down_masks):
            for i in _bits(mask):
                mat[i, j] = True
        mat.flags.writeable = False
        return mat

    @cached_property
    def cover_pairs(self):
        """Hasse-diagram edges as (lower, upper) index pairs, sorted."""
        out = []
        for j in range(self.n):
            strict = self.down_masks[j] & ~(1 << j)
            for i in _bits(strict):
                if self.up_masks[i] & self.down_masks[j] == (1 << i) | (1 << j):
                    out.append((i, j))
        return tuple(sorted(out))


class ElementSet:
    """A subset of a lattice's universe, stored as a bitmask."""

    __slots__ = ("lattice", "mask")

    def __init__(self, lattice: FiniteLattice, mask: int):
        self.lattice = lattice
        self.mask = mask

    @classmethod
    def from_names(cls, lattice: FiniteLattice, names: Iterable[str]) -> "ElementSet":
        mask = 0
        for name in names:
            mask |= 1 << lattice.index(name)
        return cls(lattice, mask)

    def names(self) -> tuple:
        return tuple(self.lattice.universe[i] for i in _bits(self.mask))

    def indices(self) -> tuple:
        return tuple(_bits(self.mask))

    def __len__(self):
        return self.mask.bit_count()

    def __iter__(self):
        return iter(self.names())

    def __contains__(self, name):
        return name in self.lattice.universe and bool(
            self.mask >> self.lattice.index(name) & 1
        )

    def __eq__(self, other):
        if isinstance(other, ElementSet):
            return self.lattice is other.lattice and self.mask == other.mask
        return set(self.names()) == set(other)

    def __repr__(self):
        return f"ElementSet({{{', '.join(self.names())}}})"


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _transpose_masks(down_masks, n):
    up = [0] * n
    for j, mask in enumerate(down_masks):
        for i in _bits(mask):
            up[i] |= 1 << j
    return up


def _from_order(universe: Sequence[str], down_masks: Sequence[int]) -> FiniteLattice:
    """Build a lattice from full down-set masks, verifying every invariant."""
    n = len(universe)
    if n == 0:
        raise Unbounded("empty universe has no bounds")
    for i, mask in enumerate(down_masks):
        if not mask >> i & 1:
            raise NotAPoset(f"order not reflexive at {universe[i]!r}")
        for j in _bits(mask):
            if down_masks[j] & ~mask:
                raise NotAPoset(
                    f"order not transitive through {universe[j]!r} below {universe[i]!r}"
                )
    full = (1 << n) - 1
    bottoms = [i for i in range(n) if down_masks[i] == 1 << i]
    tops = [i for i in range(n) if down_masks[i] == full]
    if len(bottoms) != 1:
        raise Unbounded(f"expected one minimal element, found {len(bottoms)}")
    if len(tops) != 1:
        raise Unbounded(f"expected one maximal element, found {len(tops)}")

    up_masks = _transpose_masks(down_masks, n)
    down_of = {mask: i for i, mask in enumerate(down_masks)}
    up_of = {mask: i for i, mask in enumerate(up_masks)}
    meet_tab = np.zeros((n, n), dtype=np.int16)
    join_tab = np.zeros((n, n), dtype=np.int16)
    for i in range(n):
        di = down_masks[i]
        ui = up_masks[i]
        for j in range(i, n):
            lows = di & down_masks[j]
            m = down_of.get(lows)
            if m is None:
                raise NotALattice(
                    f"{universe[i]!r} and {universe[j]!r} have no unique meet"
                )
            meet_tab[i, j] = meet_tab[j, i] = m
            ups = ui & up_masks[j]
            w = up_of.get(ups)
            if w is None:
                raise NotALattice(
                    f"{universe[i]!r} and {universe[j]!r} have no unique join"
                )
            join_tab[i, j] = join_tab[j, i] = w
    return FiniteLattice(universe, down_masks, meet_tab, join_tab, bottoms[0], tops[0])


def validate(universe: Sequence[str], cover_pairs: Iterable[tuple]) -> FiniteLattice:
    """Build the lattice whose order is the reflexive-transitive closure of
    `cover_pairs` (pairs of names, lower first).

    Raises NotAPoset on a cycle, Unbounded when there is no global bottom or
    top, and NotALattice when some pair lacks a unique meet or join.
    """
    universe = list(universe)
    if len(set(universe)) != len(universe):
        raise NotAPoset("duplicate element names")
    index = {name: i for i, name in enumerate(universe)}
    n = len(universe)
    succs = [[] for _ in range(n)]
    indeg = [0] * n
    for a, b in cover_pairs:
        if a not in index or b not in index:
            raise NotAPoset(f"cover pair ({a!r}, {b!r}) mentions unknown element")
        if a == b:
            raise NotAPoset(f"self-loop at {a!r}")
        succs[index[a]].append(index[b])
        indeg[index[b]] += 1
    order = [i for i in range(n) if indeg[i] == 0]
    head = 0
    remaining = indeg[:]
    while head < len(order):
        v = order[head]
        head += 1
        for w in succs[v]:
            remaining[w] -= 1
            if remaining[w] == 0:
                order.append(w)
    if len(order) != n:
        raise NotAPoset("cover pairs contain a cycle")
    down = [1 << i for i in range(n)]
    for v in order:
        for w in succs[v]:
            down[w] |= down[v]
    return _from_order(universe, down)


def atoms(lattice: FiniteLattice) -> ElementSet:
    """Elements covering the bottom."""
    mask = 0
    for i, j in lattice.cover_pairs:
        if i == lattice.bottom_index:
            mask |= 1 << j
    return ElementSet(lattice, mask)


def coatoms(lattice: FiniteLattice) -> ElementSet:
    """Elements covered by the top."""
    mask = 0
    for i, j in lattice.cover_pairs:
        if j == lattice.top_index:
            mask |= 1 << i
    return ElementSet(lattice, mask)


def covers(lattice: FiniteLattice) -> set:
    """Hasse-diagram edges as (lower, upper) name pairs."""
    return {
        (lattice.universe[i], lattice.universe[j]) for i, j in lattice.cover_pairs
    }


def dual(lattice: FiniteLattice) -> FiniteLattice:
    """Order reversed, meet and join swapped, names kept."""
    return FiniteLattice(
        lattice.universe,
        lattice.up_masks,
        lattice.join_table.copy(),
        lattice.meet_table.copy(),
        lattice.top_index,
        lattice.bottom_index,
    )


def rename(lattice: FiniteLattice, mapping: dict) -> FiniteLattice:
    """Relabel elements; `mapping` must cover the universe injectively."""
    new_names = [mapping[name] for name in lattice.universe]
    if len(set(new_names)) != len(new_names):
        raise NotAPoset("renaming is not injective")
    return FiniteLattice(
        new_names,
        lattice.down_masks,
        lattice.meet_table.copy(),
        lattice.join_table.copy(),
        lattice.bottom_index,
        lattice.top_index,
    )


def pair_name(a: str, b: str) -> str:
    return f"({a},{b})"


def product(l1: FiniteLattice, l2: FiniteLattice) -> FiniteLattice:
    """Direct product with componentwise order and operations."""
    n1, n2 = l1.n, l2.n
    if n1 * n2 > MATERIALIZE_CAP:
        raise SizeLimit(
            f"product would have {n1 * n2} elements (cap {MATERIALIZE_CAP})"
        )
    universe = [
        pair_name(a, b) for a in l1.universe for b in l2.universe
    ]
    down = []
    for i in range(n1):
        d1 = l1.down_masks[i]
        for j in range(n2):
            d2 = l2.down_masks[j]
            mask = 0
            for a in _bits(d1):
                mask |= _spread(d2, a * n2)
            down.append(mask)
    return _from_order(universe, down)


def _spread(mask: int, shift: int) -> int:
    return mask << shift


def power(lattice: FiniteLattice, m: int) -> FiniteLattice:
    """Direct power L^m (materialized; guarded by MATERIALIZE_CAP)."""
    if m < 1:
        raise SizeLimit("power exponent must be >= 1")
    if lattice.n ** m > MATERIALIZE_CAP:
        raise SizeLimit(
            f"power would have {lattice.n ** m} elements (cap {MATERIALIZE_CAP})"
        )
    out = lattice
    for _ in range(m - 1):
        out = product(out, lattice)
    return out


def is_modular(lattice: FiniteLattice) -> bool:
    """Modular law over all triples: x <= z implies x v (y ^ z) = (x v y) ^ z."""
    mt = lattice.meet_table.astype(np.intp)
    jt = lattice.join_table.astype(np.intp)
    leq = lattice.leq_matrix
    n = lattice.n
    for x in range(n):
        zs = np.nonzero(leq[x])[0]
        if zs.size == 0:
            continue
        lhs = jt[x][mt[:, zs]]
        rhs = mt[jt[x][:, None], zs[None, :]]
        if not np.array_equal(lhs, rhs):
            return False
    return True


def is_distributive(lattice: FiniteLattice) -> bool:
    """Distributive law over all triples: x ^ (y v z) = (x ^ y) v (x ^ z)."""
    mt = lattice.meet_table.astype(np.intp)
    jt = lattice.join_table.astype(np.intp)
    for x in range(lattice.n):
        lhs = mt[x][jt]
        rhs = jt[np.ix_(mt[x], mt[x])]
        if not np.array_equal(lhs, rhs):
            return False
    return True


def has_antichain(lattice: FiniteLattice, k: int) -> bool:
    """True iff some k elements are pairwise incomparable."""
    if k <= 0:
        return True
    if k > lattice.n:
        return False
    incomp = []
    for i in range(lattice.n):
        comparable = lattice.down_masks[i] | lattice.up_masks[i]
        incomp.append(~comparable & ((1 << lattice.n) - 1))

    def grow(candidates: int, need: int) -> bool:
        if need == 0:
            return True
        if candidates.bit_count() < need:
            return False
        rest = candidates
        while rest:
            low = rest & -rest
            i = low.bit_length() - 1
            rest ^= low
            if grow(rest & incomp[i], need - 1):
                return True
        return False

    return grow((1 << lattice.n) - 1, k)


def down_set(lattice: FiniteLattice, name: str) -> ElementSet:
    return ElementSet(lattice, lattice.down_masks[lattice.index(name)])


def up_set(lattice: FiniteLattice, name: str) -> ElementSet:
    return ElementSet(lattice, lattice.up_masks[lattice.index(name)])


def induced_sublattice(lattice: FiniteLattice, names: Iterable[str]) -> FiniteLattice:
    """The sublattice on `names` (must be closed under meet and join)."""
    idxs = sorted(lattice.index(name) for name in set(names))
    if not idxs:
        raise NotASublattice("empty subset")
    inset = {i: pos for pos, i in enumerate(idxs)}
    for a in idxs:
        for b in idxs:
            if lattice.meet_table[a, b] not in inset:
                raise NotASublattice(
                    f"not closed under meet: {lattice.universe[a]!r}, {lattice.universe[b]!r}"
                )
            if lattice.join_table[a, b] not in inset:
                raise NotASublattice(
                    f"not closed under join: {lattice.universe[a]!r}, {lattice.universe[b]!r}"
                )
    universe = [lattice.universe[i] for i in idxs]
    down = []
    for i in idxs:
        mask = 0
        for j in idxs:
            if lattice.leq_idx(j, i):
                mask |= 1 << inset[j]
        down.append(mask)
    return _from_order(universe, down)


def principal_ideal(lattice: FiniteLattice, name: str) -> FiniteLattice:
    """The interval from bottom to `name` as a lattice."""
    return induced_sublattice(lattice, down_set(lattice, name).names())


def principal_filter(lattice: FiniteLattice, name: str) -> FiniteLattice:
    return induced_sublattice(lattice, up_set(lattice, name).names())


def _refine_colors(lattice: FiniteLattice):
    """Stable vertex colors used to prune isomorphism search."""
    n = lattice.n
    lowers = [[] for _ in range(n)]
    uppers = [[] for _ in range(n)]
    for i, j in lattice.cover_pairs:
        lowers[j].append(i)
        uppers[i].append(j)
    colors = [
        (lattice.down_masks[i].bit_count(), lattice.up_masks[i].bit_count())
        for i in range(n)
    ]
    canon = {c: rank for rank, c in enumerate(sorted(set(colors)))}
    colors = [canon[c] for c in colors]
    while True:
        refreshed = [
            (
                colors[i],
                tuple(sorted(colors[j] for j in lowers[i])),
                tuple(sorted(colors[j] for j in uppers[i])),
            )
            for i in range(n)
        ]
        canon = {c: rank for rank, c in enumerate(sorted(set(refreshed)))}
        fresh = [canon[c] for c in refreshed]
        if len(set(fresh)) == len(set(colors)):
            return fresh
        colors = fresh


def find_isomorphism(l1: FiniteLattice, l2: FiniteLattice) -> Optional[dict]:
    """An order isomorphism l1 -> l2 as a name mapping, or None.

    Backtracking over color-refined candidates; meant for desk-scale inputs
    (raises SizeLimit past ISO_SIZE_LIMIT elements).
    """
    if l1.n != l2.n:
        return None
    if l1.n > ISO_SIZE_LIMIT:
        raise SizeLimit(f"isomorphism search capped at {ISO_SIZE_LIMIT} elements")
    n = l1.n
    c1 = _refine_colors(l1)
    c2 = _refine_colors(l2)
    if sorted(c1) != sorted(c2):
        return None
    candidates = [
        [j for j in range(n) if c2[j] == c1[i]] for i in range(n)
    ]
    order = sorted(range(n), key=lambda i: len(candidates[i]))
    assigned = [-1] * n
    used = [False] * n

    def extend(pos: int) -> bool:
        if pos == n:
            return True
        i = order[pos]
        for j in candidates[i]:
            if used[j]:
                continue
            ok = True
            for q in range(pos):
                p = order[q]
                if l1.leq_idx(i, p) != l2.leq_idx(j, assigned[p]) or l1.leq_idx(
                    p, i
                ) != l2.leq_idx(assigned[p], j):
                    ok = False
                    break
            if ok:
                assigned[i] = j
                used[j] = True
                if extend(pos + 1):
                    return True
                used[j] = False
                assigned[i] = -1
        return False

    if not extend(0):
        return None
    return {l1.universe[i]: l2.universe[assigned[i]] for i in range(n)}


def find_dual_automorphism(lattice: FiniteLattice) -> Optional[dict]:
    """An order-reversing bijection of the lattice onto itself, or None."""
    return find_isomorphism(lattice, dual(lattice))
