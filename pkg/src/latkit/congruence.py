"""Congruences, quotient lattices, natural projections, homomorphism checks."""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from latkit.core import FiniteLattice, _from_order, induced_sublattice
from latkit.errors import SizeLimit


class Congruence:
    """A partition of a lattice's universe compatible with meet and join.

    `block_index[i]` is the block id of element i; block ids are dense and
    ordered by first appearance in universe order.
    """

    def __init__(self, lattice: FiniteLattice, block_index: Sequence[int], _checked=False):
        self.lattice = lattice
        self.block_index = tuple(block_index)
        if len(self.block_index) != lattice.n:
            raise ValueError("partition does not cover the universe")
        self.block_count = max(self.block_index) + 1 if self.block_index else 0
        if sorted(set(self.block_index)) != list(range(self.block_count)):
            raise ValueError("block ids must be dense and first-appearance ordered")
        if not _checked and not self._compatible():
            raise ValueError("partition is not compatible with meet and join")

    def _compatible(self) -> bool:
        blk = np.asarray(self.block_index, dtype=np.intp)
        for table in (self.lattice.meet_table, self.lattice.join_table):
            rows = blk[table.astype(np.intp)]
            reps: dict[int, np.ndarray] = {}
            for i in range(self.lattice.n):
                b = self.block_index[i]
                if b in reps:
                    if not np.array_equal(rows[i], reps[b]):
                        return False
                else:
                    reps[b] = rows[i]
        return True

    @classmethod
    def from_pair_list(cls, lattice: FiniteLattice, same: Iterable[tuple]) -> "Congruence":
        """The finest equivalence containing `same`; must come out compatible."""
        parent = list(range(lattice.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in same:
            ra, rb = find(lattice.index(a)), find(lattice.index(b))
            if ra != rb:
                parent[rb] = ra
        return cls(lattice, _normalize([find(i) for i in range(lattice.n)]))

    @classmethod
    def identity(cls, lattice: FiniteLattice) -> "Congruence":
        return cls(lattice, range(lattice.n), _checked=True)

    @classmethod
    def total(cls, lattice: FiniteLattice) -> "Congruence":
        return cls(lattice, [0] * lattice.n, _checked=True)

    def same_block(self, a: str, b: str) -> bool:
        return self.block_index[self.lattice.index(a)] == self.block_index[
            self.lattice.index(b)
        ]

    def block_of(self, a: str) -> tuple:
        b = self.block_index[self.lattice.index(a)]
        return self.blocks()[b]

    def blocks(self) -> tuple:
        out = [[] for _ in range(self.block_count)]
        for i, b in enumerate(self.block_index):
            out[b].append(self.lattice.universe[i])
        return tuple(tuple(block) for block in out)

    def refines(self, other: "Congruence") -> bool:
        """True iff every block of self sits inside a block of other."""
        image = {}
        for i in range(self.lattice.n):
            b = self.block_index[i]
            if b in image:
                if image[b] != other.block_index[i]:
                    return False
            else:
                image[b] = other.block_index[i]
        return True

    def __eq__(self, other):
        return (
            isinstance(other, Congruence)
            and self.lattice is other.lattice
            and self.block_index == other.block_index
        )

    def __hash__(self):
        return hash(self.block_index)

    def __repr__(self):
        inner = ", ".join("{" + ",".join(b) + "}" for b in self.blocks())
        return f"Congruence({inner})"


def _normalize(raw: Sequence[int]) -> list:
    order = {}
    out = []
    for r in raw:
        if r not in order:
            order[r] = len(order)
        out.append(order[r])
    return out


class Homomorphism:
    """A total map between two lattices' universes."""

    def __init__(self, source: FiniteLattice, target: FiniteLattice, mapping: dict):
        self.source = source
        self.target = target
        self.mapping = dict(mapping)
        for name in source.universe:
            if name not in self.mapping:
                raise ValueError(f"mapping missing {name!r}")
            target.index(self.mapping[name])

    def __call__(self, name: str) -> str:
        return self.mapping[name]

    def is_surjective(self) -> bool:
        return set(self.mapping.values()) == set(self.target.universe)


def congruence_generated(lattice: FiniteLattice, pairs: Iterable[tuple]) -> Congruence:
    """Least congruence collapsing every pair in `pairs`.

    Union-find with a work queue: each actual merge re-enqueues the images of
    the merged pair under meet and join with every element, until stable.
    """
    n = lattice.n
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    meet_tab = lattice.meet_table
    join_tab = lattice.join_table
    queue = [(lattice.index(a), lattice.index(b)) for a, b in pairs]
    while queue:
        a, b = queue.pop()
        ra, rb = find(a), find(b)
        if ra == rb:
            continue
        parent[rb] = ra
        for z in range(n):
            ma, mb = meet_tab[a, z], meet_tab[b, z]
            if find(ma) != find(mb):
                queue.append((ma, mb))
            ja, jb = join_tab[a, z], join_tab[b, z]
            if find(ja) != find(jb):
                queue.append((ja, jb))
    return Congruence(lattice, _normalize([find(i) for i in range(n)]))


def quotient(lattice: FiniteLattice, theta: Congruence):
    """The lattice of theta-blocks plus the natural projection onto it.

    Blocks are named after their first member in universe order.  The block
    order is induced by members; well-definedness is asserted by checking the
    tables against representatives.
    """
    if theta.lattice is not lattice:
        raise ValueError("congruence belongs to a different lattice")
    nb = theta.block_count
    members = [[] for _ in range(nb)]
    for i, b in enumerate(theta.block_index):
        members[b].append(i)
    rep = [m[0] for m in members]
    names = [lattice.universe[r] for r in rep]

    leq = lattice.leq_matrix
    by_row = np.zeros((nb, lattice.n), dtype=bool)
    for b, mem in enumerate(members):
        by_row[b] = leq[mem].any(axis=0)
    down = [0] * nb
    for y, mem in enumerate(members):
        col = by_row[:, mem].any(axis=1)
        for x in np.nonzero(col)[0]:
            down[y] |= 1 << int(x)
    quo = _from_order(names, down)

    blk = theta.block_index
    for x in range(nb):
        for y in range(nb):
            assert quo.meet_table[x, y] == blk[lattice.meet_table[rep[x], rep[y]]]
            assert quo.join_table[x, y] == blk[lattice.join_table[rep[x], rep[y]]]

    projection = Homomorphism(
        lattice,
        quo,
        {
            lattice.universe[i]: names[theta.block_index[i]]
            for i in range(lattice.n)
        },
    )
    return quo, projection


def restrict(theta: Congruence, sub_names: Iterable[str]):
    """Restrict a congruence to a sublattice (raises NotASublattice otherwise).

    Returns the induced sublattice together with the restricted congruence.
    """
    sub = induced_sublattice(theta.lattice, sub_names)
    raw = [theta.block_index[theta.lattice.index(name)] for name in sub.universe]
    return sub, Congruence(sub, _normalize(raw))


def check_homomorphism(f: Homomorphism | dict, source: FiniteLattice, target: FiniteLattice) -> bool:
    """Exhaustively verify that f preserves meet and join on all pairs."""
    mapping = f.mapping if isinstance(f, Homomorphism) else f
    if set(mapping) != set(source.universe):
        return False
    for v in mapping.values():
        if v not in target._index:
            return False
    for a in source.universe:
        fa = mapping[a]
        for b in source.universe:
            fb = mapping[b]
            if mapping[source.meet(a, b)] != target.meet(fa, fb):
                return False
            if mapping[source.join(a, b)] != target.join(fa, fb):
                return False
    return True


def check_automorphism(f: Homomorphism | dict, lattice: FiniteLattice) -> bool:
    """True iff f is a bijective self-homomorphism."""
    mapping = f.mapping if isinstance(f, Homomorphism) else f
    if set(mapping.values()) != set(lattice.universe):
        return False
    return check_homomorphism(mapping, lattice, lattice)


def all_congruences(lattice: FiniteLattice) -> list:
    """Every congruence of a small lattice, by filtering all partitions."""
    if lattice.n > 10:
        raise SizeLimit("congruence enumeration capped at 10 elements")
    out = []
    for raw in _partitions(lattice.n):
        cong = Congruence(lattice, raw, _checked=True)
        if cong._compatible():
            out.append(cong)
    return out


def _block_pairs(cong: Congruence) -> list:
    pairs = []
    first: dict = {}
    for i, b in enumerate(cong.block_index):
        if b in first:
            pairs.append((cong.lattice.universe[first[b]], cong.lattice.universe[i]))
        else:
            first[b] = i
    return pairs


def congruence_lattice(lattice: FiniteLattice) -> list:
    """Every congruence, as joins of principal ones (moderate sizes only).

    Sound because each congruence is the join of the principal congruences
    of its collapsed pairs.
    """
    if lattice.n > 32:
        raise SizeLimit("congruence lattice computation capped at 32 elements")
    principals = []
    seen = set()
    for i in range(lattice.n):
        for j in range(i + 1, lattice.n):
            cong = congruence_generated(
                lattice, [(lattice.universe[i], lattice.universe[j])]
            )
            if cong.block_index not in seen:
                seen.add(cong.block_index)
                principals.append(cong)
    identity = Congruence.identity(lattice)
    found = {identity.block_index: identity}
    queue = list(principals)
    for cong in principals:
        found.setdefault(cong.block_index, cong)
    while queue:
        base = queue.pop()
        base_pairs = _block_pairs(base)
        for p in principals:
            joined = congruence_generated(lattice, base_pairs + _block_pairs(p))
            if joined.block_index not in found:
                found[joined.block_index] = joined
                queue.append(joined)
    return list(found.values())


def _partitions(n: int):
    """Block-index vectors of all set partitions of range(n), canonical form."""
    def rec(i, blocks_used, current):
        if i == n:
            yield list(current)
            return
        for b in range(blocks_used):
            current.append(b)
            yield from rec(i + 1, blocks_used, current)
            current.pop()
        current.append(blocks_used)
        yield from rec(i + 1, blocks_used + 1, current)
        current.pop()

    yield from rec(0, 0, [])
