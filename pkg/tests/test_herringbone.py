import random

import pytest

from latkit import herringbone as hb
from latkit.congruence import quotient
from latkit.constructions import m3
from latkit.core import (
    covers,
    find_isomorphism,
    principal_ideal,
    validate,
)
from latkit.terms import PairOps, bounded_closure, evaluate


def test_element_normal_form():
    assert hb.A(4) == hb.KElement("A", 4)
    assert str(hb.A(4)) == "A:4"
    assert str(hb.B) == "B"
    assert hb.KElement.parse("Q:0") == hb.Q(0)
    assert hb.KElement.parse("Zero") == hb.ZERO
    with pytest.raises(ValueError):
        hb.KElement("A", 3)  # even chain
    with pytest.raises(ValueError):
        hb.KElement("P", 2)  # odd chain
    with pytest.raises(ValueError):
        hb.KElement("B", 1)  # no index


def test_codec_roundtrip():
    rng = random.Random(5)
    for _ in range(500):
        x = hb.random_k_element(rng, 300)
        assert hb.KElement.from_code(x.code()) == x
        assert hb.KElement.parse(str(x)) == x


def test_generation_chain_lower():
    a, b, c, d = hb.generators_K()
    assert hb.sym_join(a, b) == hb.Q(0)
    assert hb.sym_meet(hb.Q(0), c) == hb.P(1)
    assert hb.sym_join(b, hb.P(1)) == hb.Q(1)
    assert hb.sym_meet(a, hb.Q(1)) == hb.A(2)
    assert hb.sym_join(hb.A(2), b) == hb.Q(2)
    assert hb.sym_meet(hb.Q(2), hb.P(1)) == hb.P(3)
    assert hb.sym_join(b, hb.P(3)) == hb.Q(3)
    assert hb.sym_meet(a, hb.Q(3)) == hb.A(4)


def test_generation_chain_upper():
    a, b, c, d = hb.generators_K()
    assert hb.sym_meet(d, c) == hb.R(0)
    assert hb.sym_join(hb.R(0), b) == hb.S(1)
    assert hb.sym_meet(c, hb.S(1)) == hb.R(1)
    assert hb.sym_join(d, hb.R(1)) == hb.D(2)
    assert hb.sym_meet(hb.D(2), c) == hb.R(2)
    assert hb.sym_join(hb.R(2), hb.S(1)) == hb.S(3)


def test_recursion_equalities_all_indices():
    a, b, c, d = hb.generators_K()
    for i in range(0, 200, 2):
        assert hb.sym_meet(a, hb.Q(i + 1)) == hb.A(i + 2)
        assert hb.sym_join(hb.A(i + 2), b) == hb.Q(i + 2)
        assert hb.sym_meet(hb.Q(i + 2), hb.P(i + 1)) == hb.P(i + 3)
        assert hb.sym_join(b, hb.P(i + 3)) == hb.Q(i + 3)
        # mirrored chain
        assert hb.sym_join(d, hb.R(i + 1)) == hb.D(i + 2)
        assert hb.sym_meet(hb.D(i + 2), c) == hb.R(i + 2)
        assert hb.sym_join(hb.R(i + 2), hb.S(i + 1)) == hb.S(i + 3)
        assert hb.sym_meet(c, hb.S(i + 3)) == hb.R(i + 3)


def test_idempotence_random():
    rng = random.Random(17)
    for _ in range(200):
        x = hb.random_k_element(rng, 500)
        assert hb.sym_meet(x, x) == x
        assert hb.sym_join(x, x) == x


def test_lattice_laws_random():
    rng = random.Random(23)
    for _ in range(3000):
        x = hb.random_k_element(rng, 500)
        y = hb.random_k_element(rng, 500)
        z = hb.random_k_element(rng, 500)
        assert hb.sym_meet(x, y) == hb.sym_meet(y, x)
        assert hb.sym_join(x, y) == hb.sym_join(y, x)
        assert hb.sym_meet(hb.sym_meet(x, y), z) == hb.sym_meet(x, hb.sym_meet(y, z))
        assert hb.sym_join(hb.sym_join(x, y), z) == hb.sym_join(x, hb.sym_join(y, z))
        assert hb.sym_meet(x, hb.sym_join(x, y)) == x
        assert hb.sym_join(x, hb.sym_meet(x, y)) == x


def test_meet_join_consistent_with_order():
    rng = random.Random(29)
    for _ in range(2000):
        x = hb.random_k_element(rng, 300)
        y = hb.random_k_element(rng, 300)
        m = hb.sym_meet(x, y)
        j = hb.sym_join(x, y)
        assert hb.sym_leq(m, x) and hb.sym_leq(m, y)
        assert hb.sym_leq(x, j) and hb.sym_leq(y, j)
        assert hb.sym_leq(x, y) == (m == x)
        assert hb.sym_leq(x, y) == (j == y)


def test_delta_involution_and_reversal():
    assert hb.delta(hb.A(0)) == hb.D(0)
    assert hb.delta(hb.B) == hb.C
    assert hb.delta(hb.Q(2)) == hb.R(2)
    rng = random.Random(31)
    for _ in range(2000):
        x = hb.random_k_element(rng, 500)
        y = hb.random_k_element(rng, 500)
        assert hb.delta(hb.delta(x)) == x
        assert hb.sym_leq(x, y) == hb.sym_leq(hb.delta(y), hb.delta(x))
        assert hb.delta(hb.sym_meet(x, y)) == hb.sym_join(hb.delta(x), hb.delta(y))


def test_theta_block_values():
    assert hb.theta_block(hb.A(4)) == "A"
    assert hb.theta_block(hb.ZERO) == "Z"
    assert hb.theta_block(hb.ONE) == "U"
    assert hb.theta_block(hb.S(3)) == "S"


def test_theta_block_is_homomorphism():
    quo = hb.k_theta_quotient()
    rng = random.Random(37)
    for _ in range(2000):
        x = hb.random_k_element(rng, 200)
        y = hb.random_k_element(rng, 200)
        assert quo.meet(hb.theta_block(x), hb.theta_block(y)) == hb.theta_block(
            hb.sym_meet(x, y)
        )
        assert quo.join(hb.theta_block(x), hb.theta_block(y)) == hb.theta_block(
            hb.sym_join(x, y)
        )


def test_atom_decisions():
    assert hb.is_atom_K(hb.B)
    assert not hb.is_atom_K(hb.A(6))
    assert not hb.is_atom_K(hb.ZERO)
    assert not hb.is_atom_K(hb.P(1))
    assert hb.is_atom_H(hb.B)


def test_truncation_sizes_and_validity():
    for k in range(1, 12):
        tk = hb.truncation_K(k)
        th = hb.truncation_H(k)
        assert tk.n == 4 * k + 10
        assert th.n == 2 * k + 5
        assert tk.bottom == "Zero" and tk.top == "One"
        assert th.bottom == "Zero" and th.top == "Q:0"


def test_truncation_H_is_the_ideal_below_q0():
    for k in (1, 3, 6):
        tk = hb.truncation_K(k)
        ideal = principal_ideal(tk, "Q:0")
        th = hb.truncation_H(k)
        assert set(ideal.universe) == set(th.universe)
        assert covers(ideal) == covers(th)


def test_truncation_agrees_with_symbolic_interior():
    k = 12
    lat = hb.truncation_K(k)
    elements = [hb.KElement.parse(name) for name in lat.universe]
    interior = [e for e in elements if (e.index or 0) <= k - 2]
    for x in interior:
        for y in interior:
            assert lat.meet(str(x), str(y)) == str(hb.sym_meet(x, y))
            assert lat.join(str(x), str(y)) == str(hb.sym_join(x, y))
            assert lat.leq(str(x), str(y)) == hb.sym_leq(x, y)


def test_truncation_quotients_are_the_ten_block_lattice():
    canon = hb.k_theta_quotient()
    for k in (2, 3, 10):
        quo, proj = hb.truncation_quotient(k)
        assert quo.n == 10
        assert find_isomorphism(quo, canon) is not None


def test_truncation_H_quotient_is_m3():
    for k in (1, 2, 7):
        th = hb.truncation_H(k)
        sub_theta = hb.theta_congruence(th)
        assert sub_theta.block_count == 5
        quo, _ = quotient(th, sub_theta)
        assert find_isomorphism(quo, m3()) is not None


def test_k_theta_quotient_structure():
    quo = hb.k_theta_quotient()
    assert quo.n == 10
    assert find_isomorphism(principal_ideal(quo, "Q"), m3()) is not None
    from latkit.core import power

    assert power(quo, 2).n == 100


def test_generators_reach_all_small_indices():
    closure = bounded_closure(hb.KOps(), list(hb.generators_K()), 3000)
    names = {str(e) for e in closure.elements}
    for i in range(51):
        assert f"Q:{i}" in names
        assert f"R:{i}" in names
    assert "Zero" in names and "One" in names


def test_h_generators_reach_even_ribs():
    closure = bounded_closure(hb.KOps(), list(hb.generators_H()), 3000)
    names = {str(e) for e in closure.elements}
    for k in range(0, 41, 2):
        assert f"A:{k}" in names
    assert all(hb.in_H(e) for e in closure.elements)


def test_two_generators_stall():
    closure = bounded_closure(hb.KOps(), [hb.A(0), hb.B], 100)
    assert closure.complete
    assert {str(e) for e in closure.elements} == {"A:0", "B", "Zero", "Q:0"}


def test_terms_for_elements():
    ops = hb.KOps()
    a, b, c, d = hb.generators_K()
    rng = random.Random(41)
    for _ in range(120):
        x = hb.random_k_element(rng, 40)
        term = hb.term_for_K_element(x)
        assert evaluate(term, [a, b, c, d], ops) == x
    p1 = hb.P(1)
    for _ in range(80):
        x = hb.random_k_element(rng, 40, h_only=True)
        term = hb.term_for_H_element(x)
        assert evaluate(term, [a, b, p1], ops) == x


def test_pair_closure_matches_generic():
    gens = list(hb.square_generators_K())
    fast = hb.pair_closure_square(gens, 600)
    slow = bounded_closure(PairOps(hb.KOps(), hb.KOps()), gens, 600)
    assert fast.elements == slow.elements
    assert fast.complete == slow.complete


def test_pair_closure_witnesses():
    gens = list(hb.square_generators_K())
    result = hb.pair_closure_square(gens, 400)
    ops = PairOps(hb.KOps(), hb.KOps())
    rng = random.Random(43)
    sample = rng.sample(result.elements, 60)
    for element in sample:
        term = result.witness[element]
        assert evaluate(term, gens, ops) == element


def test_square_generators_closed_under_reflection():
    rows = set(hb.square_generators_K())
    reflected = {(hb.delta(x), hb.delta(y)) for x, y in rows}
    assert reflected == rows


def test_delta_renamed_dual_roundtrip():
    th = hb.truncation_H(4)
    up = hb.delta_renamed_dual(th)
    assert set(up.universe) == {str(hb.delta(hb.KElement.parse(n))) for n in th.universe}
    back = hb.delta_renamed_dual(up)
    assert set(back.universe) == set(th.universe)
    assert covers(back) == covers(th)


def test_truncation_cover_oracle():
    # the generated cover list must match covers computed from the tables
    for k in (1, 2, 5):
        lat = hb.truncation_K(k)
        recomputed = validate(lat.universe, sorted(covers(lat)))
        assert covers(recomputed) == covers(lat)
