"""Lattice terms and generated-sublattice closures with term provenance.

Closures work against any *ops provider*: an object with ``meet(x, y)`` and
``join(x, y)`` over hashable elements.  `TableOps` adapts a `FiniteLattice`,
`PairOps` builds the direct square of a provider; the herringbone module adds
a symbolic provider for the infinite lattices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from latkit.core import FiniteLattice

VAR = "var"
MEET = "meet"
JOIN = "join"

_GLYPH = {MEET: "∧", JOIN: "∨"}


@dataclass(frozen=True)
class Term:
    """A lattice term: a variable leaf or a binary meet/join node.

    Witness terms coming out of large closures share subtrees, so the
    traversals below are iterative and memoize on node identity.
    """

    kind: str
    index: int = -1
    left: Optional["Term"] = None
    right: Optional["Term"] = None

    @staticmethod
    def var(index: int) -> "Term":
        return Term(VAR, index=index)

    @staticmethod
    def meet(left: "Term", right: "Term") -> "Term":
        return Term(MEET, left=left, right=right)

    @staticmethod
    def join(left: "Term", right: "Term") -> "Term":
        return Term(JOIN, left=left, right=right)

    @property
    def arity(self) -> int:
        """One more than the largest variable index used."""
        best = 0
        for node in self._postorder():
            if node.kind == VAR:
                best = max(best, node.index + 1)
        return best

    def _postorder(self):
        """Nodes with children before parents, each shared node once."""
        out = []
        seen = set()
        stack = [(self, False)]
        while stack:
            node, expanded = stack.pop()
            if id(node) in seen:
                continue
            if node.kind == VAR or expanded:
                seen.add(id(node))
                out.append(node)
            else:
                stack.append((node, True))
                stack.append((node.right, False))
                stack.append((node.left, False))
        return out

    def __str__(self):
        vals = {}
        for node in self._postorder():
            if node.kind == VAR:
                vals[id(node)] = f"x{node.index}"
            else:
                vals[id(node)] = (
                    f"({vals[id(node.left)]}{_GLYPH[node.kind]}{vals[id(node.right)]})"
                )
        return vals[id(self)]


def evaluate(term: Term, assignment: Sequence, ops):
    """Structural fold of `term` over `assignment` using `ops`."""
    vals = {}
    for node in term._postorder():
        if node.kind == VAR:
            if node.index >= len(assignment):
                raise IndexError(
                    f"term uses x{node.index} but only {len(assignment)} values given"
                )
            vals[id(node)] = assignment[node.index]
        elif node.kind == MEET:
            vals[id(node)] = ops.meet(vals[id(node.left)], vals[id(node.right)])
        else:
            vals[id(node)] = ops.join(vals[id(node.left)], vals[id(node.right)])
    return vals[id(term)]


def dual_term(term: Term) -> Term:
    """Swap meets and joins recursively; an involution."""
    out = {}
    for node in term._postorder():
        if node.kind == VAR:
            out[id(node)] = node
        else:
            kind = JOIN if node.kind == MEET else MEET
            out[id(node)] = Term(kind, left=out[id(node.left)], right=out[id(node.right)])
    return out[id(term)]


def random_term(rng, arity: int, size: int) -> Term:
    """A random term with `size` internal nodes over `arity` variables."""
    if size <= 0:
        return Term.var(rng.randrange(arity))
    left_size = rng.randrange(size)
    left = random_term(rng, arity, left_size)
    right = random_term(rng, arity, size - 1 - left_size)
    kind = MEET if rng.random() < 0.5 else JOIN
    return Term(kind, left=left, right=right)


class TableOps:
    """Ops provider backed by a FiniteLattice's tables; elements are names."""

    def __init__(self, lattice: FiniteLattice):
        self.lattice = lattice

    def meet(self, a, b):
        return self.lattice.meet(a, b)

    def join(self, a, b):
        return self.lattice.join(a, b)


class PairOps:
    """Componentwise ops on pairs, from two providers."""

    def __init__(self, first, second):
        self.first = first
        self.second = second

    def meet(self, a, b):
        return (self.first.meet(a[0], b[0]), self.second.meet(a[1], b[1]))

    def join(self, a, b):
        return (self.first.join(a[0], b[0]), self.second.join(a[1], b[1]))


class TupleOps:
    """Componentwise ops on same-length tuples over one provider."""

    def __init__(self, base):
        self.base = base

    def meet(self, a, b):
        return tuple(self.base.meet(x, y) for x, y in zip(a, b))

    def join(self, a, b):
        return tuple(self.base.join(x, y) for x, y in zip(a, b))


@dataclass
class ClosureResult:
    """Ordered closure output with term witnesses.

    `complete` is True iff the closure reached a fixpoint; False means the
    element budget cut the run short.  Every witness re-evaluates to its
    element under the original generator assignment.
    """

    elements: list
    complete: bool
    witness: dict = field(repr=False)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x):
        return x in self.witness


def witnesses_from_parents(elements, parents):
    witness = {}
    gen_vars = {}
    for k, element in enumerate(elements):
        i, j, op = parents[k]
        if op == 0:
            term = gen_vars.get(i)
            if term is None:
                term = Term.var(i)
                gen_vars[i] = term
            witness[element] = term
        else:
            kind = MEET if op == 1 else JOIN
            witness[element] = Term(
                kind, left=witness[elements[i]], right=witness[elements[j]]
            )
    return witness


def bounded_closure(ops, gens: Sequence, budget: int) -> ClosureResult:
    """Breadth-first meet/join closure of `gens`, deterministic order.

    Pairs of known elements are combined in lexicographic (left discovery
    index, right discovery index, meet before join) order, round by round.
    Stops at a fixpoint (``complete=True``) or as soon as `budget` elements
    are known and another new element appears (``complete=False``).
    """
    if budget < len(set(gens)):
        raise ValueError("budget must be at least the number of generators")
    elements = []
    parents = []
    seen = set()
    for gi, g in enumerate(gens):
        if g not in seen:
            seen.add(g)
            elements.append(g)
            parents.append((gi, -1, 0))
    meet = ops.meet
    join = ops.join
    complete = False
    lo = 0
    while True:
        hi = len(elements)
        added = False
        truncated = False
        for i in range(hi):
            ei = elements[i]
            jstart = lo if i < lo else i
            for j in range(jstart, hi):
                ej = elements[j]
                for op, z in ((1, meet(ei, ej)), (2, join(ei, ej))):
                    if z not in seen:
                        if len(elements) >= budget:
                            truncated = True
                            break
                        seen.add(z)
                        elements.append(z)
                        parents.append((i, j, op))
                        added = True
                if truncated:
                    break
            if truncated:
                break
        if truncated:
            break
        if not added:
            complete = True
            break
        lo = hi
    return ClosureResult(
        elements=elements,
        complete=complete,
        witness=witnesses_from_parents(elements, parents),
    )


def generated_sublattice(lattice: FiniteLattice, gens: Sequence[str]) -> ClosureResult:
    """Least subset of `lattice` containing `gens` closed under meet and join."""
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator")
    for g in gens:
        lattice.index(g)
    result = bounded_closure(TableOps(lattice), gens, budget=lattice.n + 1)
    assert result.complete
    return result


def is_generated_by(lattice: FiniteLattice, gens: Sequence[str]) -> bool:
    """True iff the closure of `gens` is the whole universe."""
    return len(generated_sublattice(lattice, gens)) == lattice.n
