"""Exhaustive enumeration of small lattices up to isomorphism.

Lattices are generated bottom-up in linear-extension order: each new element
picks a down-closed strict down-set such that every pair keeps a unique
greatest lower bound, and the last element is the top.  A finite
meet-semilattice with a top is a lattice, so no join check is needed during
the search.  Duplicates across labelings are removed with a canonical form:
the minimal relation-matrix bit string over all color-respecting orderings.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, asdict
from itertools import combinations, permutations
from typing import Iterator, Optional

from latkit.core import FiniteLattice, atoms, coatoms, is_modular, validate
from latkit.errors import SizeLimit
from latkit.terms import generated_sublattice

MAX_ATLAS_SIZE = 8


@dataclass(frozen=True)
class AtlasRecord:
    """One isomorphism class of lattices, canonically labeled.

    `covers` lists Hasse edges (lower, upper) over elements 0..size-1 in the
    canonical order.  `min_generators` is the least size of a generating set;
    `three_generated` records whether some 3-element subset generates.
    """

    size: int
    covers: tuple
    atom_count: int
    coatom_count: int
    min_generators: int
    three_generated: bool
    modular: bool

    def lattice(self) -> FiniteLattice:
        names = [str(i) for i in range(self.size)]
        return validate(names, [(str(a), str(b)) for a, b in self.covers])


def _labelled_lattices(n: int) -> Iterator[list]:
    """All labeled lattices on elements 0..n-1 in linear-extension order.

    Yields full down-set masks (bit i set in down[j] iff i <= j).
    """
    if n == 1:
        yield [1]
        return

    downs = [1]
    down_of = {1: 0}

    def extend(i: int) -> Iterator[list]:
        last = i == n - 1
        if last:
            candidates = [(1 << i) - 1]
        else:
            candidates = _candidate_strict_downs(i)
        for strict in candidates:
            ok = True
            for j in range(i):
                if strict >> j & 1:
                    continue
                common = strict & downs[j]
                if common not in down_of:
                    ok = False
                    break
            if not ok:
                continue
            full = strict | (1 << i)
            downs.append(full)
            down_of[full] = i
            if last:
                yield list(downs)
            else:
                yield from extend(i + 1)
            downs.pop()
            del down_of[full]

    def _candidate_strict_downs(i: int) -> list:
        # Down-closed subsets of the elements so far that contain the bottom.
        out = []
        universe = list(range(i))

        def grow(start: int, mask: int):
            out.append(mask)
            for j in range(start, i):
                if not mask >> j & 1 and downs[j] & ~(mask | (1 << j)) == 0:
                    grow(j + 1, mask | (1 << j))

        grow(1, 1)
        return out

    yield from extend(1)


def _wl_colors(downs: list, n: int) -> list:
    ups = [0] * n
    for j, mask in enumerate(downs):
        m = mask
        while m:
            low = m & -m
            ups[low.bit_length() - 1] |= 1 << j
            m ^= low
    colors = [(downs[i].bit_count(), ups[i].bit_count()) for i in range(n)]
    while True:
        fresh = []
        for i in range(n):
            below = sorted(
                colors[j] for j in range(n) if downs[i] >> j & 1 and j != i
            )
            above = sorted(
                colors[j] for j in range(n) if ups[i] >> j & 1 and j != i
            )
            fresh.append((colors[i], tuple(below), tuple(above)))
        rank = {c: k for k, c in enumerate(sorted(set(fresh)))}
        fresh = [rank[c] for c in fresh]
        if len(set(fresh)) == len(set(colors)):
            return fresh
        colors = fresh


def canonical_downs(downs: list) -> tuple:
    """Canonical relabeling of a lattice given by down-set masks.

    Minimizes the tuple of down-masks over every ordering that sorts the
    refined colors; the color partition is isomorphism-invariant, so equal
    canonical forms mean isomorphic lattices and conversely.
    """
    n = len(downs)
    colors = _wl_colors(downs, n)
    classes: dict = {}
    for i, c in enumerate(colors):
        classes.setdefault(c, []).append(i)
    groups = [classes[c] for c in sorted(classes)]

    best: Optional[tuple] = None
    for perm_parts in _group_orderings(groups):
        old_order = [i for part in perm_parts for i in part]
        pos = {old: new for new, old in enumerate(old_order)}
        relabeled = []
        for new in range(n):
            mask = downs[old_order[new]]
            fresh = 0
            m = mask
            while m:
                low = m & -m
                fresh |= 1 << pos[low.bit_length() - 1]
                m ^= low
            relabeled.append(fresh)
        key = tuple(relabeled)
        if best is None or key < best:
            best = key
    assert best is not None
    return best


def _group_orderings(groups: list) -> Iterator[list]:
    if not groups:
        yield []
        return
    head, *rest = groups
    for tail in _group_orderings(rest):
        for perm in permutations(head):
            yield [list(perm)] + tail


def _covers_from_downs(downs: tuple) -> tuple:
    n = len(downs)
    ups = [0] * n
    for j, mask in enumerate(downs):
        for i in range(n):
            if mask >> i & 1:
                ups[i] |= 1 << j
    out = []
    for j in range(n):
        strict = downs[j] & ~(1 << j)
        for i in range(n):
            if strict >> i & 1 and ups[i] & downs[j] == (1 << i) | (1 << j):
                out.append((i, j))
    return tuple(sorted(out))


def min_generators(lattice: FiniteLattice):
    """Smallest generating-set size plus one witness subset."""
    if lattice.n > 40:
        raise SizeLimit("generator search capped at 40 elements")
    if lattice.n == 1:
        return 1, (lattice.universe[0],)
    for g in range(1, lattice.n + 1):
        for subset in combinations(lattice.universe, g):
            if len(generated_sublattice(lattice, subset)) == lattice.n:
                return g, subset
    raise AssertionError("the whole universe always generates")


def generating_triples(lattice: FiniteLattice):
    """All 3-element subsets whose closure is the whole lattice."""
    if lattice.n < 3:
        return []
    return [
        triple
        for triple in combinations(lattice.universe, 3)
        if len(generated_sublattice(lattice, triple)) == lattice.n
    ]


def _record_for(downs: tuple) -> AtlasRecord:
    n = len(downs)
    names = [str(i) for i in range(n)]
    covers = _covers_from_downs(downs)
    lattice = validate(names, [(str(a), str(b)) for a, b in covers])
    g, _ = min_generators(lattice)
    return AtlasRecord(
        size=n,
        covers=covers,
        atom_count=len(atoms(lattice)),
        coatom_count=len(coatoms(lattice)),
        min_generators=g,
        three_generated=bool(generating_triples(lattice)),
        modular=is_modular(lattice),
    )


def enumerate_lattices(max_size: int, atlas_path=None) -> list:
    """Every isomorphism class of lattices with up to `max_size` elements.

    Deterministic order: by size, then by canonical down-mask tuple.  When
    `atlas_path` is given, records are loaded from it if it already covers
    `max_size`, and written to it otherwise.
    """
    if max_size < 1:
        raise SizeLimit("max_size must be >= 1")
    if max_size > MAX_ATLAS_SIZE:
        raise SizeLimit(
            f"atlas enumeration capped at {MAX_ATLAS_SIZE} elements"
        )
    if atlas_path is not None:
        cached = _load_atlas(atlas_path, max_size)
        if cached is not None:
            return cached
    records = []
    for n in range(1, max_size + 1):
        seen = {}
        for downs in _labelled_lattices(n):
            key = canonical_downs(downs)
            if key not in seen:
                seen[key] = True
        records.extend(_record_for(key) for key in sorted(seen))
    if atlas_path is not None:
        _store_atlas(atlas_path, records)
    return records


def _load_atlas(path, max_size: int):
    import os

    if not os.path.exists(path):
        return None
    records = []
    top = 0
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            raw = json.loads(line)
            raw["covers"] = tuple(tuple(pair) for pair in raw["covers"])
            records.append(AtlasRecord(**raw))
            top = max(top, records[-1].size)
    if top < max_size:
        return None
    return [r for r in records if r.size <= max_size]


def _store_atlas(path, records) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for record in records:
            fh.write(json.dumps(asdict(record), sort_keys=True) + "\n")


@dataclass
class Problem13Report:
    """Atom/coatom statistics of all three-generated lattices in the atlas."""

    max_size: int
    three_generated_count: int
    max_atom_count: int
    pair_distribution: dict
    atom_distribution: dict
    evidence_only: bool = True

    def render_text(self) -> str:
        lines = [
            f"three-generated lattices with at most {self.max_size} elements: "
            f"{self.three_generated_count}",
            f"maximum atom count observed: {self.max_atom_count}",
            "atom-count distribution:",
        ]
        for count in sorted(self.atom_distribution):
            lines.append(f"  {count} atoms: {self.atom_distribution[count]}")
        lines.append("(atom count, coatom count) pairs:")
        for pair in sorted(self.pair_distribution):
            lines.append(f"  {pair}: {self.pair_distribution[pair]}")
        lines.append(
            "status: evidence-only (exhaustive up to the size bound, no claim beyond)"
        )
        return "\n".join(lines)

    def render_json(self) -> str:
        payload = {
            "max_size": self.max_size,
            "three_generated_count": self.three_generated_count,
            "max_atom_count": self.max_atom_count,
            "atom_distribution": {
                str(k): v for k, v in sorted(self.atom_distribution.items())
            },
            "pair_distribution": {
                f"{k[0]},{k[1]}": v for k, v in sorted(self.pair_distribution.items())
            },
            "evidence_only": True,
        }
        return json.dumps(payload, indent=2, sort_keys=True)


def problem13_report(max_size: int, atlas_path=None) -> Problem13Report:
    """Atom counts of every three-generated lattice with <= max_size elements."""
    records = enumerate_lattices(max_size, atlas_path=atlas_path)
    pairs: dict = {}
    atoms_dist: dict = {}
    total = 0
    max_atoms = 0
    for record in records:
        if not record.three_generated:
            continue
        total += 1
        max_atoms = max(max_atoms, record.atom_count)
        key = (record.atom_count, record.coatom_count)
        pairs[key] = pairs.get(key, 0) + 1
        atoms_dist[record.atom_count] = atoms_dist.get(record.atom_count, 0) + 1
    return Problem13Report(
        max_size=max_size,
        three_generated_count=total,
        max_atom_count=max_atoms,
        pair_distribution=pairs,
        atom_distribution=atoms_dist,
    )
