import random

from hypothesis import given, settings, strategies as st

from latkit import herringbone as hb
from latkit.terms import (
    PairOps,
    TableOps,
    Term,
    bounded_closure,
    dual_term,
    evaluate,
    generated_sublattice,
    is_generated_by,
    random_term,
)


def _eval_recursive(term, assignment, ops):
    # independent evaluator (plain recursion) for cross-checking
    if term.kind == "var":
        return assignment[term.index]
    left = _eval_recursive(term.left, assignment, ops)
    right = _eval_recursive(term.right, assignment, ops)
    return ops.meet(left, right) if term.kind == "meet" else ops.join(left, right)


def test_eval_meet_on_m3(diamond):
    t = Term.meet(Term.var(0), Term.var(1))
    assert evaluate(t, ["a1", "a2"], TableOps(diamond)) == "0"


def test_eval_mixed_on_m3(diamond):
    t = Term.join(Term.var(0), Term.meet(Term.var(1), Term.var(2)))
    assert evaluate(t, ["a1", "a2", "a3"], TableOps(diamond)) == "a1"


def test_eval_pair_in_square_of_K():
    t = Term.meet(Term.var(0), Term.var(1))
    a, b, _, _ = hb.generators_K()
    ops = PairOps(hb.KOps(), hb.KOps())
    result = evaluate(t, [(a, b), (b, a)], ops)
    assert result == (hb.ZERO, hb.ZERO)


def test_dual_term_basics():
    t = Term.meet(Term.var(0), Term.var(1))
    assert dual_term(t).kind == "join"
    v = Term.var(3)
    assert dual_term(v) is v


@settings(max_examples=200)
@given(st.integers(0, 2 ** 30))
def test_dual_term_involution(seed):
    rng = random.Random(seed)
    t = random_term(rng, arity=4, size=rng.randrange(12))
    assert dual_term(dual_term(t)) == t


def test_delta_commutes_with_dual_terms():
    # reflection applied to a term value equals the dual term on reflected args
    rng = random.Random(20240)
    ops = hb.KOps()
    for _ in range(1000):
        t = random_term(rng, arity=4, size=rng.randrange(1, 10))
        args = [hb.random_k_element(rng, 60) for _ in range(4)]
        lhs = hb.delta(evaluate(t, args, ops))
        rhs = evaluate(dual_term(t), [hb.delta(x) for x in args], ops)
        assert lhs == rhs


def test_evaluate_matches_recursive_evaluator(diamond):
    rng = random.Random(99)
    ops = TableOps(diamond)
    for _ in range(200):
        t = random_term(rng, arity=3, size=rng.randrange(10))
        args = [rng.choice(diamond.universe) for _ in range(3)]
        assert evaluate(t, args, ops) == _eval_recursive(t, args, ops)


def test_term_str_and_arity():
    t = Term.join(Term.var(0), Term.meet(Term.var(1), Term.var(2)))
    assert str(t) == "(x0∨(x1∧x2))"
    assert t.arity == 3


def test_generated_sublattice_m3(diamond):
    result = generated_sublattice(diamond, ["a1", "a2", "a3"])
    assert sorted(result.elements) == sorted(diamond.universe)
    assert result.complete


def test_generated_sublattice_partial(diamond):
    result = generated_sublattice(diamond, ["a1", "a2"])
    assert set(result.elements) == {"a1", "a2", "0", "1"}
    assert not is_generated_by(diamond, ["a1", "a2"])
    assert is_generated_by(diamond, ["a1", "a2", "a3"])


def test_generated_sublattice_fm3(fm3):
    assert len(generated_sublattice(fm3, ["x", "y", "z"])) == 28


def test_boolean_two_generated(bool2):
    ats = sorted(a for a in bool2.universe if a not in (bool2.bottom, bool2.top))
    assert is_generated_by(bool2, ats)


def test_witnesses_roundtrip(fm3):
    result = generated_sublattice(fm3, ["x", "y", "z"])
    ops = TableOps(fm3)
    for element in result.elements:
        term = result.witness[element]
        assert evaluate(term, ["x", "y", "z"], ops) == element


def test_generators_have_variable_witnesses(diamond):
    result = generated_sublattice(diamond, ["a1", "a2"])
    assert result.witness["a1"] == Term.var(0)
    assert result.witness["a2"] == Term.var(1)


def test_closure_monotone_extensive_idempotent(fm3):
    small = set(generated_sublattice(fm3, ["x", "y"]).elements)
    big = set(generated_sublattice(fm3, ["x", "y", "z"]).elements)
    assert {"x", "y"} <= small <= big
    again = set(generated_sublattice(fm3, sorted(small)).elements)
    assert again == small


def test_closure_induces_valid_lattice(fm3):
    from latkit.core import induced_sublattice

    result = generated_sublattice(fm3, ["x", "y"])
    sub = induced_sublattice(fm3, result.elements)
    assert sub.n == len(result)


def test_bounded_closure_singleton():
    result = bounded_closure(hb.KOps(), [hb.B], budget=1)
    assert result.elements == [hb.B]
    assert result.complete


def test_bounded_closure_budget_cuts():
    gens = list(hb.generators_K())
    result = bounded_closure(hb.KOps(), gens, budget=20)
    assert len(result) == 20
    assert not result.complete


def test_bounded_closure_determinism():
    gens = list(hb.square_generators_K())
    ops = PairOps(hb.KOps(), hb.KOps())
    first = bounded_closure(ops, gens, 300)
    second = bounded_closure(ops, gens, 300)
    assert first.elements == second.elements
    assert first.complete == second.complete


def test_bounded_closure_finite_fixpoint():
    # images of the four generating rows inside the square of the ten-block
    # quotient close up inside the 100-element ambient lattice
    quo = hb.k_theta_quotient()
    ops = PairOps(TableOps(quo), TableOps(quo))
    gens = [("A", "B"), ("B", "A"), ("C", "D"), ("D", "C")]
    result = bounded_closure(ops, gens, budget=10_000)
    assert result.complete
    assert len(result) <= 100


def test_square_closure_no_fixpoint_at_budget():
    result = hb.pair_closure_square(list(hb.square_generators_K()), 10_000)
    assert not result.complete
    assert len(result) == 10_000
