"""Brute-force oracles, independent of the library's computation paths.

These recompute expected values from first principles (graph search over
cover edges, exhaustive subset/permutation scans) so the tests never assert
a library path against itself.
"""

from itertools import combinations, permutations


def order_from_covers(names, cover_pairs):
    """Reflexive-transitive closure of cover edges via BFS, as lower-sets."""
    below = {name: {name} for name in names}
    succs = {name: [] for name in names}
    for a, b in cover_pairs:
        succs[a].append(b)
    for start in names:
        stack = [start]
        reach = {start}
        while stack:
            node = stack.pop()
            for nxt in succs[node]:
                if nxt not in reach:
                    reach.add(nxt)
                    stack.append(nxt)
        for node in reach:
            below[node].add(start)
    return below


def brute_meet(below, names, x, y):
    """Unique greatest common lower bound from lower-set data, or None."""
    commons = below[x] & below[y]
    greatest = [c for c in commons if commons <= below[c]]
    if len(greatest) != 1:
        return None
    return greatest[0]


def brute_join(below, names, x, y):
    above = {n: {m for m in names if n in below[m]} for n in names}
    commons = above[x] & above[y]
    least = [c for c in commons if commons <= above[c]]
    if len(least) != 1:
        return None
    return least[0]


def brute_atoms(lattice):
    """Elements with exactly two lower bounds, straight from the order."""
    out = []
    for x in lattice.universe:
        lowers = [y for y in lattice.universe if lattice.leq(y, x)]
        if len(lowers) == 2:
            out.append(x)
    return sorted(out)


def brute_coatoms(lattice):
    out = []
    for x in lattice.universe:
        uppers = [y for y in lattice.universe if lattice.leq(x, y)]
        if len(uppers) == 2:
            out.append(x)
    return sorted(out)


def brute_has_antichain(lattice, k):
    for combo in combinations(lattice.universe, k):
        if all(
            not lattice.leq(a, b) and not lattice.leq(b, a)
            for a, b in combinations(combo, 2)
        ):
            return True
    return False


def brute_isomorphism(l1, l2):
    """Exhaustive isomorphism search by permutations; only for tiny inputs."""
    if l1.n != l2.n:
        return None
    if l1.n > 7:
        raise ValueError("oracle capped at 7 elements")
    for perm in permutations(range(l2.n)):
        if all(
            l1.leq_idx(i, j) == l2.leq_idx(perm[i], perm[j])
            for i in range(l1.n)
            for j in range(l1.n)
        ):
            return {l1.universe[i]: l2.universe[perm[i]] for i in range(l1.n)}
    return None


def brute_dual_automorphism(lattice):
    if lattice.n > 7:
        raise ValueError("oracle capped at 7 elements")
    n = lattice.n
    for perm in permutations(range(n)):
        if all(
            lattice.leq_idx(i, j) == lattice.leq_idx(perm[j], perm[i])
            for i in range(n)
            for j in range(n)
        ):
            return {lattice.universe[i]: lattice.universe[perm[i]] for i in range(n)}
    return None


def all_partitions(n):
    """Block-index vectors of every set partition of range(n)."""
    def rec(i, used, acc):
        if i == n:
            yield tuple(acc)
            return
        for b in range(used):
            acc.append(b)
            yield from rec(i + 1, used, acc)
            acc.pop()
        acc.append(used)
        yield from rec(i + 1, used + 1, acc)
        acc.pop()

    yield from rec(0, 0, [])


def is_compatible_partition(lattice, block_index):
    n = lattice.n
    for i in range(n):
        for j in range(n):
            if block_index[i] != block_index[j]:
                continue
            for z in range(n):
                if (
                    block_index[lattice.meet_table[i, z]]
                    != block_index[lattice.meet_table[j, z]]
                ):
                    return False
                if (
                    block_index[lattice.join_table[i, z]]
                    != block_index[lattice.join_table[j, z]]
                ):
                    return False
    return True


def brute_congruence_generated(lattice, pairs):
    """Least compatible partition containing `pairs`, by full enumeration.

    Returns a frozenset of frozenset blocks; usable up to ~8 elements.
    """
    n = lattice.n
    idx = {name: i for i, name in enumerate(lattice.universe)}
    wanted = [(idx[a], idx[b]) for a, b in pairs]
    candidates = []
    for part in all_partitions(n):
        if all(part[a] == part[b] for a, b in wanted) and is_compatible_partition(
            lattice, part
        ):
            candidates.append(part)
    # intersect: two elements equivalent iff equivalent in every candidate
    classes = {}
    for i in range(n):
        key = tuple(part[i] for part in candidates)
        classes.setdefault(key, []).append(lattice.universe[i])
    return frozenset(frozenset(block) for block in classes.values())


def brute_is_modular(lattice):
    """Pentagon search over 5-element subsets (independent of the law check)."""
    names = lattice.universe
    for z, a, b, c, t in permutations(names, 5):
        if (
            lattice.leq(z, a)
            and lattice.leq(a, b)
            and lattice.leq(b, t)
            and lattice.leq(z, c)
            and lattice.leq(c, t)
            and a != z and b != t and a != b
            and lattice.meet(a, c) == z
            and lattice.meet(b, c) == z
            and lattice.join(a, c) == t
            and lattice.join(b, c) == t
        ):
            return False
    return True
