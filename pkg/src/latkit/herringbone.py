"""Exact symbolic model of the herringbone lattice H and its selfdual double K.

H is the infinite zigzag lattice: a descending spine q0 > q1 > ... with rib
chains a0 > a2 > ... (even) and p1 > p3 > ... (odd) hanging off it, a single
atom b below the whole spine, and a bottom.  K glues H below a point-reflected
copy of itself (elements 1, c, d, s, r) along p1 |-> r0, q0 |-> s1, giving a
selfdual lattice whose only atom is b.

Elements are `KElement` values with a tag and (for chain members) an index;
the order, meet and join are closed-form rules on tags and indices, evaluated
by the selected kernel backend.  The closed forms are validated two
independent ways in the test suite: against finite truncations built from
cover lists, and against the defining generation equalities

    a0 = a, q0 = a0 v b, p1 = q0 ^ c, q1 = b v p1, a2 = a ^ q1, ...
    d0 = d, r0 = d0 ^ c, s1 = r0 v b, r1 = c ^ s1, d2 = d v r1, ...
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from latkit import kernel
from latkit.congruence import Congruence, check_automorphism, quotient
from latkit.core import (
    FiniteLattice,
    dual,
    find_isomorphism,
    principal_ideal,
    rename,
    validate,
)
from latkit.errors import ConstructionSelfCheckFailed
from latkit.terms import ClosureResult, Term, witnesses_from_parents

TAGS = ("Zero", "One", "B", "C", "A", "P", "Q", "R", "S", "D")

_TAG_CODE = {
    "Zero": 0,
    "One": 1,
    "B": 2,
    "C": 3,
    "A": 4,
    "P": 5,
    "Q": 6,
    "R": 7,
    "S": 8,
    "D": 9,
}
_CODE_TAG = {v: k for k, v in _TAG_CODE.items()}

_INDEXED = frozenset("APQRSD")
_EVEN = frozenset("AD")
_ODD = frozenset("PS")
_H_TAGS = frozenset(("Zero", "B", "A", "P", "Q"))

_BLOCK = {
    "Zero": "Z",
    "One": "U",
    "B": "B",
    "C": "C",
    "A": "A",
    "P": "P",
    "Q": "Q",
    "R": "R",
    "S": "S",
    "D": "D",
}


@dataclass(frozen=True)
class KElement:
    """A symbolic element of K: a tag plus an index for chain members.

    Index parity is part of the normal form: A and D carry even indices,
    P and S odd ones, Q and R any non-negative index.  Two elements are
    equal iff tag and index agree.
    """

    tag: str
    index: Optional[int] = None

    def __post_init__(self):
        if self.tag not in _TAG_CODE:
            raise ValueError(f"unknown tag {self.tag!r}")
        if self.tag in _INDEXED:
            if self.index is None or self.index < 0:
                raise ValueError(f"{self.tag} needs a non-negative index")
            if self.tag in _EVEN and self.index % 2:
                raise ValueError(f"{self.tag} index must be even: {self.index}")
            if self.tag in _ODD and self.index % 2 == 0:
                raise ValueError(f"{self.tag} index must be odd: {self.index}")
        elif self.index is not None:
            raise ValueError(f"{self.tag} carries no index")

    def __str__(self):
        if self.index is None:
            return self.tag
        return f"{self.tag}:{self.index}"

    @staticmethod
    def parse(text: str) -> "KElement":
        if ":" in text:
            tag, _, idx = text.partition(":")
            return KElement(tag, int(idx))
        return KElement(text)

    def code(self) -> int:
        return _TAG_CODE[self.tag] | ((self.index or 0) << 4)

    @staticmethod
    def from_code(code: int) -> "KElement":
        tag = _CODE_TAG[code & 15]
        return KElement(tag, code >> 4 if tag in _INDEXED else None)


ZERO = KElement("Zero")
ONE = KElement("One")
B = KElement("B")
C = KElement("C")


def A(i: int) -> KElement:
    return KElement("A", i)


def P(i: int) -> KElement:
    return KElement("P", i)


def Q(i: int) -> KElement:
    return KElement("Q", i)


def R(i: int) -> KElement:
    return KElement("R", i)


def S(i: int) -> KElement:
    return KElement("S", i)


def D(i: int) -> KElement:
    return KElement("D", i)


def in_H(x: KElement) -> bool:
    """H is the principal ideal below q0 inside K."""
    return x.tag in _H_TAGS


def sym_leq(x: KElement, y: KElement) -> bool:
    return kernel.leq_code(x.code(), y.code())


def sym_meet(x: KElement, y: KElement) -> KElement:
    return KElement.from_code(kernel.meet_code(x.code(), y.code()))


def sym_join(x: KElement, y: KElement) -> KElement:
    return KElement.from_code(kernel.join_code(x.code(), y.code()))


def delta(x: KElement) -> KElement:
    """The order-reversing involution of K (a <-> d, b <-> c, q <-> r, ...)."""
    return KElement.from_code(kernel.delta_code(x.code()))


def theta_block(x: KElement) -> str:
    """The block of x under the ten-block congruence (index discarded)."""
    return _BLOCK[x.tag]


def is_atom_K(x: KElement) -> bool:
    """b is the only atom of K: every chain descends forever."""
    return x.tag == "B"


def is_atom_H(x: KElement) -> bool:
    return x.tag == "B"


def generators_K():
    """K is generated by {a, b, c, d}."""
    return (A(0), B, C, D(0))


def generators_H():
    """H is generated by {a, b, p1}."""
    return (A(0), B, P(1))


class KOps:
    """Symbolic ops provider over KElement values."""

    @staticmethod
    def meet(x, y):
        return sym_meet(x, y)

    @staticmethod
    def join(x, y):
        return sym_join(x, y)


def _even_cap(k: int) -> int:
    return k + (k & 1)


def _odd_cap(k: int) -> int:
    return k | 1


def _h_side_elements(k: int):
    ac, pc = _even_cap(k), _odd_cap(k)
    out = [ZERO, B]
    out += [A(i) for i in range(0, ac + 1, 2)]
    out += [P(i) for i in range(1, pc + 1, 2)]
    out += [Q(i) for i in range(k + 1)]
    return out


def _h_side_covers(k: int):
    """Cover pairs of the lower (H) half of a depth-k truncation."""
    ac, pc = _even_cap(k), _odd_cap(k)
    pairs = [(ZERO, B), (ZERO, A(ac)), (ZERO, P(pc))]
    pairs += [(A(i + 2), A(i)) for i in range(0, ac - 1, 2)]
    pairs += [(P(i + 2), P(i)) for i in range(1, pc - 1, 2)]
    pairs += [(Q(j + 1), Q(j)) for j in range(k)]
    pairs += [(A(i), Q(i)) for i in range(0, min(ac, k) + 1, 2)]
    pairs += [(P(i), Q(i)) for i in range(1, min(pc, k) + 1, 2)]
    pairs.append((B, Q(k)))
    if ac > k:
        pairs.append((A(ac), Q(k)))
    if pc > k:
        pairs.append((P(pc), Q(k)))
    return pairs


@lru_cache(maxsize=None)
def truncation_H(k: int) -> FiniteLattice:
    """Finite truncation of H: spine to depth k, rib chains closed off.

    Rib chains run one index past k where parity demands, so that meets of
    interior elements stay inside and the tag partition is a congruence.
    """
    if k < 1:
        raise ValueError("truncation depth must be >= 1")
    names = [str(x) for x in _h_side_elements(k)]
    pairs = [(str(a), str(b)) for a, b in _h_side_covers(k)]
    return validate(names, pairs)


@lru_cache(maxsize=None)
def truncation_K(k: int) -> FiniteLattice:
    """Finite truncation of K: a depth-k lower half glued below its mirror."""
    if k < 1:
        raise ValueError("truncation depth must be >= 1")
    elements = _h_side_elements(k)
    names = [str(x) for x in elements]
    names += [str(delta(x)) for x in elements]
    pairs = [(str(a), str(b)) for a, b in _h_side_covers(k)]
    pairs += [(str(delta(b)), str(delta(a))) for a, b in _h_side_covers(k)]
    pairs += [(str(P(1)), str(R(0))), (str(Q(0)), str(S(1)))]
    return validate(names, pairs)


def delta_renamed_dual(lattice: FiniteLattice) -> FiniteLattice:
    """Dual of a truncation with element names pushed through delta."""
    return rename(
        dual(lattice), {name: str(delta(KElement.parse(name))) for name in lattice.universe}
    )


def theta_congruence(lattice: FiniteLattice) -> Congruence:
    """The tag-block partition of a truncation, as a checked congruence."""
    raw = []
    seen = {}
    for name in lattice.universe:
        block = theta_block(KElement.parse(name))
        if block not in seen:
            seen[block] = len(seen)
        raw.append(seen[block])
    return Congruence(lattice, raw)


PSI = {
    "Z": "Z", "U": "U", "A": "B", "B": "A", "C": "D", "D": "C",
    "P": "P", "Q": "Q", "R": "R", "S": "S",
}

_KTHETA_COVERS = [
    ("Z", "A"), ("Z", "B"), ("Z", "P"),
    ("A", "Q"), ("B", "Q"), ("P", "Q"), ("P", "R"),
    ("Q", "S"), ("R", "S"), ("R", "C"), ("R", "D"),
    ("S", "U"), ("C", "U"), ("D", "U"),
]


@lru_cache(maxsize=None)
def k_theta_quotient() -> FiniteLattice:
    """The ten-element quotient of K by the tag-block congruence.

    Build-time self-checks: the block map is a homomorphism from symbolic K
    (random pairs, indices <= 200), the A<->B, C<->D swap is an automorphism,
    and the ideal below Q is the diamond M3.
    """
    import random

    quo = validate(["Z", "B", "A", "P", "Q", "R", "S", "C", "D", "U"], _KTHETA_COVERS)

    rng = random.Random(0xB10C)
    pool = _random_elements(rng, count=400, max_index=200)
    for x, y in zip(pool[0::2], pool[1::2]):
        if quo.meet(theta_block(x), theta_block(y)) != theta_block(sym_meet(x, y)):
            raise ConstructionSelfCheckFailed(f"block map breaks meet at {x}, {y}")
        if quo.join(theta_block(x), theta_block(y)) != theta_block(sym_join(x, y)):
            raise ConstructionSelfCheckFailed(f"block map breaks join at {x}, {y}")
    if not check_automorphism(PSI, quo):
        raise ConstructionSelfCheckFailed("A/B, C/D swap is not an automorphism")
    from latkit.constructions import m3

    if find_isomorphism(principal_ideal(quo, "Q"), m3()) is None:
        raise ConstructionSelfCheckFailed("ideal below Q is not M3")
    return quo


def _random_elements(rng, count: int, max_index: int, h_only: bool = False):
    """Deterministic sample of symbolic elements with indices <= max_index."""
    tags = ["Zero", "B", "A", "P", "Q"] if h_only else list(TAGS)
    out = []
    for _ in range(count):
        tag = rng.choice(tags)
        if tag in _INDEXED:
            i = rng.randrange(max_index + 1)
            if tag in _EVEN:
                i -= i & 1
            elif tag in _ODD:
                i |= 1
            out.append(KElement(tag, i))
        else:
            out.append(KElement(tag))
    return out


def random_k_element(rng, max_index: int, h_only: bool = False) -> KElement:
    return _random_elements(rng, 1, max_index, h_only)[0]


class _TermSubstOps:
    """Ops provider that rebuilds terms, used to substitute variables."""

    @staticmethod
    def meet(x, y):
        return Term.meet(x, y)

    @staticmethod
    def join(x, y):
        return Term.join(x, y)


_K_TERMS: dict = {}


def _lower_half_terms(max_index: int, a_var: Term, b_var: Term, p1_term: Term) -> dict:
    """Terms for the lower-half chains up to `max_index`, built iteratively.

    Follows the generation chain a0 = a, q0 = a0 v b, q1 = b v p1,
    a2 = a ^ q1, q2 = a2 v b, p3 = q2 ^ p1, q3 = b v p3, a4 = a ^ q3, ...
    """
    terms = {
        ZERO: Term.meet(a_var, b_var),
        B: b_var,
        A(0): a_var,
        Q(0): Term.join(a_var, b_var),
    }
    if max_index >= 1:
        terms[P(1)] = p1_term
        terms[Q(1)] = Term.join(b_var, p1_term)
    for j in range(2, max_index + 1):
        if j % 2:
            terms[P(j)] = Term.meet(terms[Q(j - 1)], terms[P(j - 2)])
            terms[Q(j)] = Term.join(b_var, terms[P(j)])
        else:
            terms[A(j)] = Term.meet(a_var, terms[Q(j - 1)])
            terms[Q(j)] = Term.join(terms[A(j)], b_var)
    return terms


def term_for_K_element(x: KElement) -> Term:
    """A term over (a, b, c, d) evaluating to x in K.

    Lower-half elements follow the generation chain directly; upper-half ones
    mirror the recipe of their reflection through delta, which swaps the
    generator roles a <-> d and b <-> c and dualizes the term.
    """
    if x in _K_TERMS:
        return _K_TERMS[x]
    a_var, b_var, c_var, d_var = (Term.var(i) for i in range(4))
    need = x if in_H(x) or x == ONE or x == C else delta(x)
    top_index = need.index or 0
    lower = _lower_half_terms(
        top_index + 1, a_var, b_var, Term.meet(Term.join(a_var, b_var), c_var)
    )
    for element, term in lower.items():
        _K_TERMS.setdefault(element, term)
    _K_TERMS.setdefault(ONE, Term.join(b_var, c_var))
    _K_TERMS.setdefault(C, c_var)
    if x not in _K_TERMS:
        from latkit.terms import dual_term, evaluate

        mirrored = evaluate(
            dual_term(_K_TERMS[delta(x)]),
            [d_var, c_var, b_var, a_var],
            _TermSubstOps(),
        )
        _K_TERMS[x] = mirrored
    return _K_TERMS[x]


_H_TERMS: dict = {}


def term_for_H_element(x: KElement) -> Term:
    """A term over (a, b, p1) evaluating to x in H."""
    if not in_H(x):
        raise ValueError(f"{x} is not in H")
    if x in _H_TERMS:
        return _H_TERMS[x]
    a_var, b_var, p_var = (Term.var(i) for i in range(3))
    lower = _lower_half_terms((x.index or 0) + 1, a_var, b_var, p_var)
    for element, term in lower.items():
        _H_TERMS.setdefault(element, term)
    return _H_TERMS[x]


def square_generators_K():
    """The four generating rows (a,b), (b,a), (c,d), (d,c) of the square of K."""
    a, b, c, d = generators_K()
    return ((a, b), (b, a), (c, d), (d, c))


def square_generators_H():
    """The three generating rows (a,b), (b,a), (p1,p1) of the square of H."""
    a, b, p1 = generators_H()
    return ((a, b), (b, a), (p1, p1))


def pair_closure_square(gens, budget: int) -> ClosureResult:
    """Bounded closure of pairs of symbolic elements in the direct square.

    Kernel-accelerated; emits exactly the same ordered output as
    `terms.bounded_closure` over `PairOps(KOps, KOps)`.
    """
    packed = [(x.code(), y.code()) for x, y in gens]
    elements, parents, complete = kernel.pair_closure(packed, budget)
    out = [
        (KElement.from_code(x), KElement.from_code(y)) for x, y in elements
    ]
    return ClosureResult(
        elements=out, complete=complete, witness=witnesses_from_parents(out, parents)
    )


def block_pair(x: tuple) -> tuple:
    return (theta_block(x[0]), theta_block(x[1]))


def truncation_quotient(k: int):
    """Quotient of the depth-k truncation by its tag-block congruence."""
    lat = truncation_K(k)
    return quotient(lat, theta_congruence(lat))
