import random

import pytest

from latkit import herringbone as hb
from latkit.congruence import (
    Congruence,
    Homomorphism,
    all_congruences,
    check_automorphism,
    check_homomorphism,
    congruence_generated,
    congruence_lattice,
    quotient,
    restrict,
)
from latkit.constructions import chain, m3
from latkit.core import atoms, find_isomorphism, validate
from latkit.errors import NotASublattice
from latkit.terms import TableOps, evaluate, random_term

from oracles import brute_congruence_generated


def test_congruence_generated_empty(diamond):
    theta = congruence_generated(diamond, [])
    assert theta.block_count == diamond.n


def test_m3_is_simple(diamond):
    theta = congruence_generated(diamond, [("0", "a1")])
    assert theta.block_count == 1


def test_congruence_generated_matches_bruteforce():
    n5 = validate(
        ["0", "a", "b", "c", "1"],
        [("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")],
    )
    b2 = validate(["0", "p", "q", "1"], [("0", "p"), ("0", "q"), ("p", "1"), ("q", "1")])
    cases = [
        (n5, [("a", "b")]),
        (n5, [("0", "c")]),
        (n5, [("0", "a")]),
        (b2, [("0", "p")]),
        (b2, [("p", "1")]),
        (b2, [("0", "1")]),
    ]
    for lat, pairs in cases:
        ours = frozenset(frozenset(b) for b in congruence_generated(lat, pairs).blocks())
        assert ours == brute_congruence_generated(lat, pairs)


def test_congruence_minimality_small():
    # generated congruence refines every compatible partition containing the pair
    lat = validate(
        ["0", "a", "b", "1"], [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")]
    )
    target = congruence_generated(lat, [("0", "a")])
    for cong in all_congruences(lat):
        if cong.same_block("0", "a"):
            assert target.refines(cong)


def test_compatibility_validation(diamond):
    with pytest.raises(ValueError):
        Congruence(diamond, [0, 0, 1, 2, 3])  # merging 0 with a1 alone


def test_fm3_theta_quotient_two_atoms(fm3):
    zero = fm3.bottom
    theta = congruence_generated(
        fm3, [(zero, fm3.meet("x", "y")), (zero, fm3.meet("y", "z"))]
    )
    quo, proj = quotient(fm3, theta)
    assert quo.n == 18
    assert len(atoms(quo)) == 2
    assert proj.is_surjective()


def test_quotient_by_identity(fm3):
    quo, proj = quotient(fm3, Congruence.identity(fm3))
    assert quo.n == fm3.n
    assert find_isomorphism(quo, fm3) is not None


def test_quotient_projection_commutes_with_terms(fm3):
    zero = fm3.bottom
    theta = congruence_generated(
        fm3, [(zero, fm3.meet("x", "y")), (zero, fm3.meet("y", "z"))]
    )
    quo, proj = quotient(fm3, theta)
    rng = random.Random(4242)
    for _ in range(1000):
        t = random_term(rng, arity=3, size=rng.randrange(1, 8))
        args = [rng.choice(fm3.universe) for _ in range(3)]
        image = proj(evaluate(t, args, TableOps(fm3)))
        direct = evaluate(t, [proj(a) for a in args], TableOps(quo))
        assert image == direct


def test_restrict_to_ideal():
    k3 = hb.truncation_K(3)
    theta = hb.theta_congruence(k3)
    ideal_names = [n for n in k3.universe if k3.leq(n, "Q:0")]
    sub, restricted = restrict(theta, ideal_names)
    assert restricted.block_count == 5
    blocks = {frozenset(b) for b in restricted.blocks()}
    assert frozenset(["B"]) in blocks
    quo, _ = quotient(sub, restricted)
    assert find_isomorphism(quo, m3()) is not None


def test_restrict_identity_and_total(diamond):
    sub, ident = restrict(Congruence.identity(diamond), diamond.universe)
    assert ident.block_count == diamond.n
    sub, total = restrict(Congruence.total(diamond), diamond.universe)
    assert total.block_count == 1


def test_restrict_rejects_non_sublattice(diamond):
    with pytest.raises(NotASublattice):
        restrict(Congruence.identity(diamond), ["a1", "a2"])


def test_check_homomorphism_and_automorphism(diamond):
    identity = {x: x for x in diamond.universe}
    assert check_automorphism(identity, diamond)
    rotate = dict(identity)
    rotate.update({"a1": "a2", "a2": "a3", "a3": "a1"})
    assert check_automorphism(rotate, diamond)
    collapse = {x: "0" for x in diamond.universe}
    assert not check_automorphism(collapse, diamond)
    assert check_homomorphism(collapse, diamond, diamond)  # constant map
    # the diamond is simple: sending atoms to bottom breaks joins
    to_chain = {"0": "0", "a1": "0", "a2": "0", "a3": "0", "1": "1"}
    assert not check_homomorphism(to_chain, diamond, chain(2))
    squash = {"0": "0", "1": "0", "2": "1"}
    assert check_homomorphism(squash, chain(3), chain(2))


def test_homomorphism_object(fm3, diamond):
    mapping = {}
    proj_targets = {"x": "a1", "y": "a2", "z": "a3"}
    closure_map = None
    # the surjection from the free modular lattice onto the diamond
    from latkit.terms import generated_sublattice

    result = generated_sublattice(fm3, ["x", "y", "z"])
    for element in result.elements:
        term = result.witness[element]
        mapping[element] = evaluate(
            term, ["a1", "a2", "a3"], TableOps(diamond)
        )
    hom = Homomorphism(fm3, diamond, mapping)
    assert check_homomorphism(hom, fm3, diamond)
    assert hom.is_surjective()


def test_block_quotient_automorphisms():
    quo = hb.k_theta_quotient()
    assert check_automorphism(hb.PSI, quo)
    partial = {x: x for x in quo.universe}
    partial.update({"A": "B", "B": "A"})
    # swapping only A and B is also an automorphism of the ten-block lattice
    assert check_automorphism(partial, quo)
    broken = {x: x for x in quo.universe}
    broken.update({"B": "P", "P": "B"})
    assert not check_automorphism(broken, quo)
    assert check_automorphism({x: x for x in quo.universe}, quo)


def test_congruence_lattice_of_diamond(diamond):
    found = congruence_lattice(diamond)
    assert len(found) == 2  # simple: identity and total


def test_correspondence_theorem_small():
    # congruences of L/theta correspond to congruences of L above theta
    lat = validate(
        ["0", "a", "b", "c", "1"],
        [("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")],
    )
    congs = all_congruences(lat)
    for theta in congs:
        quo, proj = quotient(lat, theta)
        above = [c for c in congs if theta.refines(c)]
        quo_congs = all_congruences(quo)
        assert len(above) == len(quo_congs)
        # pullbacks of quotient congruences are exactly the ones above theta
        pulled = set()
        for psi in quo_congs:
            raw = tuple(
                psi.block_index[quo.index(proj(name))] for name in lat.universe
            )
            order = {}
            normalized = []
            for r in raw:
                order.setdefault(r, len(order))
                normalized.append(order[r])
            pulled.add(tuple(normalized))
        assert pulled == {c.block_index for c in above}
