"""Named lattices and the structural constructions the toolkit verifies.

Covers the stock examples (diamond, chains, booleans), the 28-element free
modular lattice on three generators with its quotient chain T, T', T'', the
two-sided gluing of complete lattices, and generated sublattices of direct
powers driven by column-surjective generator matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, reduce
from typing import Dict, Sequence, Tuple

from latkit.congruence import congruence_generated, quotient
from latkit.core import (
    FiniteLattice,
    _from_order,
    atoms,
    is_modular,
    validate,
)
from latkit.errors import (
    ColumnNotSurjective,
    ConstructionSelfCheckFailed,
    NotGenerating,
    SizeLimit,
    SpecViolation,
)
from latkit.terms import (
    ClosureResult,
    TableOps,
    TupleOps,
    bounded_closure,
    generated_sublattice,
    is_generated_by,
)

FM3_GENERATORS = ("x", "y", "z")


@lru_cache(maxsize=None)
def m3() -> FiniteLattice:
    """The five-element non-distributive modular diamond."""
    return validate(
        ["0", "a1", "a2", "a3", "1"],
        [("0", "a1"), ("0", "a2"), ("0", "a3"), ("a1", "1"), ("a2", "1"), ("a3", "1")],
    )


@lru_cache(maxsize=None)
def n5() -> FiniteLattice:
    """The five-element pentagon (the minimal non-modular lattice)."""
    return validate(
        ["0", "a", "b", "c", "1"],
        [("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")],
    )


@lru_cache(maxsize=None)
def chain(n: int) -> FiniteLattice:
    """The n-element chain 0 < 1 < ... < n-1."""
    if n < 1:
        raise ValueError("chain needs at least one element")
    names = [str(i) for i in range(n)]
    return validate(names, [(str(i), str(i + 1)) for i in range(n - 1)])


@lru_cache(maxsize=None)
def boolean(k: int) -> FiniteLattice:
    """The boolean lattice of subsets of k points, named by bitstrings."""
    if k < 0:
        raise ValueError("boolean exponent must be >= 0")

    def name(mask):
        return format(mask, f"0{max(k, 1)}b")

    names = [name(m) for m in range(1 << k)]
    pairs = []
    for m in range(1 << k):
        for b in range(k):
            if not m >> b & 1:
                pairs.append((name(m), name(m | 1 << b)))
    return validate(names, pairs)


class _MonotoneFnOps:
    """Pointwise ops on 8-bit truth tables of boolean functions of 3 inputs."""

    @staticmethod
    def meet(f, g):
        return f & g

    @staticmethod
    def join(f, g):
        return f | g


def _projection(var: int) -> int:
    """Truth table of the var-th of three boolean inputs."""
    table = 0
    for point in range(8):
        if point >> var & 1:
            table |= 1 << point
    return table


@lru_cache(maxsize=None)
def _free_distributive_3():
    """The free distributive lattice on three generators, as truth tables.

    Terms in three variables under pointwise and/or are exactly the
    nonconstant monotone boolean functions; there are 18 of them.
    """
    gens = [_projection(v) for v in range(3)]
    closure = bounded_closure(_MonotoneFnOps(), gens, budget=300)
    assert closure.complete and len(closure) == 18
    return closure.elements


@lru_cache(maxsize=None)
def free_modular_3() -> FiniteLattice:
    """The 28-element modular lattice freely generated by x, y, z.

    Built as the sublattice generated by the three diagonal pairs inside the
    product of the free distributive lattice on three generators and the
    diamond (generators to the three atoms); the two factors jointly separate
    all term functions.  Build-time self-check: 28 elements, modular,
    generated by {x, y, z}.  Elements are named by a generating term.
    """
    fd3 = _free_distributive_3()
    diamond = m3()

    class _PairOps:
        @staticmethod
        def meet(u, v):
            return (u[0] & v[0], diamond.meet(u[1], v[1]))

        @staticmethod
        def join(u, v):
            return (u[0] | v[0], diamond.join(u[1], v[1]))

    gens = [
        (_projection(0), "a1"),
        (_projection(1), "a2"),
        (_projection(2), "a3"),
    ]
    closure = bounded_closure(_PairOps(), gens, budget=len(fd3) * 5 + 1)
    if not closure.complete or len(closure) != 28:
        raise ConstructionSelfCheckFailed(
            f"free modular closure produced {len(closure)} elements"
        )

    names = {}
    for element in closure.elements:
        text = str(closure.witness[element])
        for i, g in enumerate(FM3_GENERATORS):
            text = text.replace(f"x{i}", g)
        names[element] = text

    elements = closure.elements
    pos = {e: i for i, e in enumerate(elements)}
    down = [0] * len(elements)
    for i, (f, u) in enumerate(elements):
        for j, (g, v) in enumerate(elements):
            if f & g == f and diamond.leq(u, v):
                down[j] |= 1 << i
    lattice = _from_order([names[e] for e in elements], down)

    if not is_modular(lattice):
        raise ConstructionSelfCheckFailed("free modular construction not modular")
    if not is_generated_by(lattice, FM3_GENERATORS):
        raise ConstructionSelfCheckFailed("free modular lattice not 3-generated")
    return lattice


def _t_with_atoms():
    """T (the quotient of the free modular lattice collapsing two atoms to 0)
    plus its two atoms, the one inside a diamond sublattice first."""
    fm3 = free_modular_3()
    zero = fm3.bottom
    theta = congruence_generated(
        fm3, [(zero, fm3.meet("x", "y")), (zero, fm3.meet("y", "z"))]
    )
    t, _ = quotient(fm3, theta)
    found = atoms(t).names()
    if len(found) != 2:
        raise ConstructionSelfCheckFailed(f"T has {len(found)} atoms, expected 2")
    in_diamond = [a for a in found if _inside_some_diamond(t, a)]
    if len(in_diamond) != 1:
        raise ConstructionSelfCheckFailed(
            "expected exactly one atom of T inside a diamond sublattice"
        )
    s1 = in_diamond[0]
    s2 = found[0] if found[1] == s1 else found[1]
    return t, s1, s2


def _inside_some_diamond(lattice: FiniteLattice, name: str) -> bool:
    """Is the element a member of some M3 sublattice of the lattice?"""
    n = lattice.n
    target = lattice.index(name)
    mt, jt = lattice.meet_table, lattice.join_table
    for m1 in range(n):
        for m2 in range(m1 + 1, n):
            z = mt[m1, m2]
            t = jt[m1, m2]
            if z == t or z == m1 or z == m2 or t == m1 or t == m2:
                continue
            for m3 in range(m2 + 1, n):
                if (
                    mt[m1, m3] == z
                    and mt[m2, m3] == z
                    and jt[m1, m3] == t
                    and jt[m2, m3] == t
                    and m3 != z
                    and m3 != t
                    and target in (z, t, m1, m2, m3)
                ):
                    return True
    return False


@lru_cache(maxsize=None)
def lattice_T() -> FiniteLattice:
    return _t_with_atoms()[0]


@lru_cache(maxsize=None)
def lattice_T_prime() -> FiniteLattice:
    """T with its non-diamond atom collapsed to 0."""
    t, _, s2 = _t_with_atoms()
    return quotient(t, congruence_generated(t, [(t.bottom, s2)]))[0]


@lru_cache(maxsize=None)
def lattice_T_doubleprime() -> FiniteLattice:
    """T with its diamond atom collapsed to 0 (flattens the diamond)."""
    t, s1, _ = _t_with_atoms()
    return quotient(t, congruence_generated(t, [(t.bottom, s1)]))[0]


@dataclass(frozen=True)
class GlueSpec:
    """Input data for the two-sided gluing construction.

    `s1` is a meet-closed subset of `l1` containing its top, `s2` a
    join-closed subset of `l2` containing its bottom, and `mu` an order
    isomorphism from s1 onto s2.
    """

    l1: FiniteLattice
    l2: FiniteLattice
    s1: Tuple[str, ...]
    s2: Tuple[str, ...]
    mu: Dict[str, str]


def glue(spec: GlueSpec) -> FiniteLattice:
    """Order the disjoint union of two lattices through an isomorphism of
    fragments: x stays below its own lattice's elements, and sits below
    y in the upper lattice iff mu(least s1-element above x) <= y.

    Raises SpecViolation when the input data breaks the preconditions; the
    result always passes full lattice validation.
    """
    l1, l2 = spec.l1, spec.l2
    s1 = list(dict.fromkeys(spec.s1))
    s2 = list(dict.fromkeys(spec.s2))
    if set(l1.universe) & set(l2.universe):
        raise SpecViolation("the two lattices must have disjoint element names")
    if not s1 or not s2:
        raise SpecViolation("fragments must be nonempty")
    for name in s1:
        if name not in l1.universe:
            raise SpecViolation(f"{name!r} not in the lower lattice")
    for name in s2:
        if name not in l2.universe:
            raise SpecViolation(f"{name!r} not in the upper lattice")
    if l1.top not in s1:
        raise SpecViolation("lower fragment must contain the top of its lattice")
    if l2.bottom not in s2:
        raise SpecViolation("upper fragment must contain the bottom of its lattice")
    for a in s1:
        for b in s1:
            if l1.meet(a, b) not in s1:
                raise SpecViolation("lower fragment not closed under meets")
    for a in s2:
        for b in s2:
            if l2.join(a, b) not in s2:
                raise SpecViolation("upper fragment not closed under joins")
    mu = dict(spec.mu)
    if sorted(mu) != sorted(s1) or sorted(mu.values()) != sorted(s2):
        raise SpecViolation("mu must be a bijection from the lower fragment onto the upper")
    for a in s1:
        for b in s1:
            if l1.leq(a, b) != l2.leq(mu[a], mu[b]):
                raise SpecViolation("mu is not an order isomorphism")

    def mu_hat(x: str) -> str:
        above = [s for s in s1 if l1.leq(x, s)]
        least = reduce(l1.meet, above)
        return mu[least]

    universe = list(l1.universe) + list(l2.universe)
    n1 = l1.n
    down = []
    for j in range(n1):
        down.append(l1.down_masks[j])
    for j, name in enumerate(l2.universe):
        mask = l2.down_masks[j] << n1
        for i, lower in enumerate(l1.universe):
            if l2.leq(mu_hat(lower), name):
                mask |= 1 << i
        down.append(mask)
    return _from_order(universe, down)


@dataclass(frozen=True)
class GeneratorMatrix:
    """An n-by-m matrix over n generator names, every column onto.

    Rows of the matrix, read as tuples of elements, generate a sublattice of
    the m-th direct power.
    """

    generators: Tuple[str, ...]
    rows: Tuple[Tuple[str, ...], ...]

    def __post_init__(self):
        n = len(self.generators)
        if len(self.rows) != n:
            raise SpecViolation(f"expected {n} rows, got {len(self.rows)}")
        widths = {len(row) for row in self.rows}
        if len(widths) != 1:
            raise SpecViolation("ragged matrix")
        for entry in (e for row in self.rows for e in row):
            if entry not in self.generators:
                raise SpecViolation(f"entry {entry!r} is not a generator")
        for col in range(self.width):
            column = {row[col] for row in self.rows}
            if column != set(self.generators):
                raise ColumnNotSurjective(
                    f"column {col} misses {set(self.generators) - column}"
                )

    @property
    def width(self) -> int:
        return len(self.rows[0])


def matrix_power_sublattice(
    lattice: FiniteLattice,
    matrix: GeneratorMatrix,
    gen_assignment: Dict[str, str],
) -> ClosureResult:
    """Closure of the matrix rows inside the direct power of the lattice.

    `gen_assignment` sends generator names to lattice elements and must be
    generating (NotGenerating otherwise).  Elements of the result are tuples
    of element names; the ambient power is never materialized.
    """
    values = {}
    for g in matrix.generators:
        if g not in gen_assignment:
            raise NotGenerating(f"no assignment for generator {g!r}")
        values[g] = gen_assignment[g]
        lattice.index(values[g])
    if not is_generated_by(lattice, list(values.values())):
        raise NotGenerating("assigned elements do not generate the lattice")
    rows = [tuple(values[entry] for entry in row) for row in matrix.rows]
    budget = min(lattice.n ** matrix.width, 50_000) + 1
    result = bounded_closure(TupleOps(TableOps(lattice)), rows, budget=budget)
    if not result.complete:
        raise SizeLimit("generated power sublattice exceeds 50000 elements")
    return result


def tuple_closure_lattice(lattice: FiniteLattice, closure: ClosureResult) -> FiniteLattice:
    """The closure of power tuples as a lattice in its own right."""
    elements = closure.elements
    width = len(elements[0])
    down = [0] * len(elements)
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            if all(lattice.leq(a[c], b[c]) for c in range(width)):
                down[j] |= 1 << i
    names = ["(" + ",".join(t) + ")" for t in elements]
    return _from_order(names, down)


def triple_law_violations(lattice: FiniteLattice, triple: Sequence[str]) -> list:
    """Check the structure laws of a lattice generated by a three-element set.

    For generators a1, a2, a3 (the closure of which must be the whole
    lattice), verifies, for every permutation (i, j, k):

      * if ai ^ aj is not the bottom, the lattice is the disjoint union of
        the filter of ai ^ aj and the ideal of ak, and ai ^ aj is an atom;
      * dually for joins and coatoms;
      * with k = #{pairs with ai ^ aj above bottom}: if k is 2 or 3 the
        lattice has exactly k atoms, and dually for coatoms;
      * if all pairwise meets are bottom and all pairwise joins are top, the
        lattice is the diamond;
      * if the lattice is modular it has between one and three atoms.

    Returns a list of human-readable violations (empty = all laws hold).
    """
    from latkit.core import coatoms, find_isomorphism

    problems = []
    a1, a2, a3 = triple
    if not is_generated_by(lattice, [a1, a2, a3]):
        return [f"{triple} does not generate the lattice"]
    bottom, top = lattice.bottom, lattice.top
    atom_names = set(atoms(lattice).names())
    coatom_names = set(coatoms(lattice).names())
    universe = set(lattice.universe)

    pairs = [(a1, a2, a3), (a1, a3, a2), (a2, a3, a1)]
    meets_above = 0
    joins_below = 0
    for ai, aj, ak in pairs:
        m = lattice.meet(ai, aj)
        if m != bottom:
            meets_above += 1
            filt = {x for x in universe if lattice.leq(m, x)}
            ideal = {x for x in universe if lattice.leq(x, ak)}
            if filt & ideal or filt | ideal != universe:
                problems.append(
                    f"filter({ai}^{aj}) and ideal({ak}) do not partition the lattice"
                )
            if m not in atom_names:
                problems.append(f"{ai}^{aj}={m} is above bottom but not an atom")
        j = lattice.join(ai, aj)
        if j != top:
            joins_below += 1
            ideal = {x for x in universe if lattice.leq(x, j)}
            filt = {x for x in universe if lattice.leq(ak, x)}
            if filt & ideal or filt | ideal != universe:
                problems.append(
                    f"ideal({ai}v{aj}) and filter({ak}) do not partition the lattice"
                )
            if j not in coatom_names:
                problems.append(f"{ai}v{aj}={j} is below top but not a coatom")

    if meets_above in (2, 3) and len(atom_names) != meets_above:
        problems.append(
            f"{meets_above} pairwise meets above bottom but {len(atom_names)} atoms"
        )
    if joins_below in (2, 3) and len(coatom_names) != joins_below:
        problems.append(
            f"{joins_below} pairwise joins below top but {len(coatom_names)} coatoms"
        )
    if meets_above == 0 and joins_below == 0:
        if find_isomorphism(lattice, m3()) is None:
            problems.append(
                "trivial pairwise meets and joins but the lattice is not the diamond"
            )
    if is_modular(lattice) and not 1 <= len(atom_names) <= 3:
        problems.append(f"modular but has {len(atom_names)} atoms")
    return problems


def generated_triple_sublattice(lattice: FiniteLattice, triple: Sequence[str]):
    """The sublattice generated by a triple of elements, as its own lattice."""
    closure = generated_sublattice(lattice, list(triple))
    from latkit.core import induced_sublattice

    return induced_sublattice(lattice, closure.elements)
