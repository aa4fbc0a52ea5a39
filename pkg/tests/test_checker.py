"""Both checking engines: the naive evaluator and the radius-limited game."""

import random

import pytest

from posetmc import checker as C
from posetmc import formula as F
from posetmc import poset as P
from posetmc import typegraph as T
from posetmc.checker import (
    CheckResult,
    GamePosition,
    check_local,
    eval_naive,
    local_move_set,
    type_set,
)
from posetmc.formula import FormulaError, FreeVariableError, parse
from util import antichain, chain, random_posets, two_chains


# ---------------------------------------------------------------------------
# naive engine

def test_naive_on_chain():
    p = chain(4)
    assert eval_naive(p, parse("E x. A y. x <= y"))
    assert eval_naive(p, parse("A x. A y. x <= y | y <= x"))
    assert not eval_naive(p, parse("E x. E y. !x <= y & !y <= x"))


def test_naive_on_antichain():
    p = antichain(3)
    assert not eval_naive(p, parse("A x. A y. x <= y | y <= x"))
    assert eval_naive(p, parse("A x. A y. x <= y -> y <= x"))


def test_naive_with_colors():
    p = chain(3, colors={"0": "red", "2": "blue"})
    assert eval_naive(p, parse("E x. red(x) & (A y. x <= y)"))
    assert not eval_naive(p, parse("E x. blue(x) & (A y. x <= y)"))


def test_naive_strict_below_exists():
    f = parse("A x. E y. y <= x & !y = x")
    assert not eval_naive(chain(5), f)  # fails at the bottom element


def test_naive_on_empty_poset():
    p = P.from_relation(0, [])
    assert not eval_naive(p, parse("E x. x = x"))
    assert eval_naive(p, parse("A x. red(x)"))


def test_naive_open_formula_with_env():
    p = chain(3)
    f = F.LessEq("x", "y")
    assert eval_naive(p, f, env={"x": 0, "y": 2})
    assert not eval_naive(p, f, env={"x": 2, "y": 0})


def test_naive_counts_nodes():
    stats = {}
    eval_naive(chain(3), parse("E x. A y. x <= y"), stats=stats)
    assert stats["nodes"] > 3


def test_naive_rejects_edge_atom():
    with pytest.raises(FormulaError):
        eval_naive(chain(2), parse("E x. edge(x, x)"))


def test_naive_unassigned_free_variable():
    with pytest.raises(FormulaError):
        eval_naive(chain(2), F.LessEq("x", "y"), env={"x": 0})


# ---------------------------------------------------------------------------
# move sets

def test_move_set_without_assignment_is_domain():
    digs = T.build_up_to(chain(20), 1)
    pos = GamePosition(parse("E x. A y. x <= y"), ())
    assert local_move_set(digs, pos, 1) == set(range(20))


def test_move_set_rank_zero_body():
    digs = T.build_up_to(chain(20), 1)
    pos = GamePosition(parse("E x. A y. x <= y").body, (5,))
    assert local_move_set(digs, pos, 0) == {0, 1, 3, 4, 5, 6, 7, 18, 19}


def test_move_set_radius_is_difference_of_radii():
    digs = T.build_up_to(chain(60), 1)
    pos = GamePosition(parse("E x. A y. x <= y").body, (30,))
    got = local_move_set(digs, pos, 1)
    assert got == T.ball(digs[1], (30,), T.radius(1) - T.radius(0))


def test_move_set_needs_built_digraphs():
    digs = T.build_up_to(chain(10), 0)
    pos = GamePosition(parse("E x. A y. x <= y").body, (5,))
    with pytest.raises(ValueError):
        local_move_set(digs, pos, 1)


# ---------------------------------------------------------------------------
# local engine basics

def test_local_on_chain():
    assert check_local(chain(6), parse("E x. A y. x <= y")).verdict
    assert not check_local(chain(6), parse("E x. E y. !x <= y & !y <= x")).verdict


def test_local_on_antichain():
    assert not check_local(antichain(4), parse("A x. A y. x <= y | y <= x")).verdict
    assert check_local(antichain(4), parse("E x. A y. x <= y -> x = y")).verdict


def test_local_with_colors():
    p = chain(3, colors={"0": "red", "2": "blue"})
    assert check_local(p, parse("E x. red(x) & (A y. x <= y)")).verdict
    assert not check_local(p, parse("E x. blue(x) & (A y. x <= y)")).verdict


def test_local_rank_three():
    f = parse("A x. A y. A z. (x <= y & y <= z) -> x <= z")
    assert check_local(chain(8), f).verdict
    assert check_local(two_chains(4), f).verdict


def test_local_on_empty_poset():
    p = P.from_relation(0, [])
    assert not check_local(p, parse("E x. x = x")).verdict
    assert check_local(p, parse("A x. red(x)")).verdict


def test_local_requires_sentence():
    with pytest.raises(FreeVariableError):
        check_local(chain(3), F.Exists("x", F.LessEq("x", "y")))


def test_local_requires_quantifier():
    with pytest.raises(FormulaError):
        check_local(chain(3), F.Or(F.Eq("x", "x"), F.Not(F.Eq("x", "x"))))


def test_local_rejects_edge_atom():
    with pytest.raises(FormulaError):
        check_local(chain(3), parse("E x. edge(x, x)"))


def test_result_json_shape():
    r = check_local(chain(5), parse("E x. A y. x <= y"))
    payload = r.to_json()
    assert sorted(payload) == ["millis", "positions", "typeCountsPerRank",
                               "verdict"]
    assert payload["verdict"] is True
    assert payload["positions"] == r.positions > 0
    assert len(payload["typeCountsPerRank"]) == 2


# ---------------------------------------------------------------------------
# agreement with the oracle

def _sentences(rng, count, max_rank, colors=("c0", "c1")):
    out = []
    for i in range(count):
        out.append(F.random_sentence(rng, 1 + i % max_rank, colors=colors,
                                     negations="any"))
    return out


def test_engines_agree_up_to_rank_two():
    rng = random.Random(601)
    for p in random_posets(80, seed=602, max_n=10, max_width=3):
        for f in _sentences(rng, 4, 2):
            want = eval_naive(p, f)
            assert check_local(p, f).verdict == want, (p, f)


def test_engines_agree_at_rank_three():
    rng = random.Random(603)
    for p in random_posets(25, seed=604, max_n=8, max_width=2):
        f = F.random_sentence(rng, 3, colors=("c0",), negations="any")
        assert check_local(p, f).verdict == eval_naive(p, f), (p, f)


def test_flags_do_not_change_verdicts():
    rng = random.Random(605)
    for p in random_posets(30, seed=606, max_n=9, max_width=3):
        for f in _sentences(rng, 3, 2):
            want = eval_naive(p, f)
            for opt in (True, False):
                for memo in (True, False):
                    got = check_local(p, f, first_move_opt=opt, memo=memo)
                    assert got.verdict == want, (p, f, opt, memo)


def test_locality_verification_passes():
    rng = random.Random(607)
    for p in random_posets(25, seed=608, max_n=9, max_width=3):
        for f in _sentences(rng, 2, 2):
            r = check_local(p, f, memo=False, verify_locality=True)
            assert r.verdict == eval_naive(p, f)


def test_memo_does_not_increase_positions():
    rng = random.Random(609)
    for p in random_posets(15, seed=610, max_n=9, max_width=2):
        f = F.random_sentence(rng, 2, colors=("c0",))
        with_memo = check_local(p, f, memo=True).positions
        without = check_local(p, f, memo=False).positions
        assert with_memo <= without


def test_first_move_opt_does_not_increase_positions():
    rng = random.Random(611)
    for p in random_posets(15, seed=612, max_n=10, max_width=2):
        f = F.random_sentence(rng, 2, colors=("c0",))
        narrow = check_local(p, f, first_move_opt=True).positions
        wide = check_local(p, f, first_move_opt=False).positions
        assert narrow <= wide


def test_positions_bounded_by_naive_work():
    rng = random.Random(613)
    for p in random_posets(25, seed=614, max_n=10, max_width=3):
        for f in _sentences(rng, 2, 2):
            stats = {}
            eval_naive(p, f, stats=stats)
            assert check_local(p, f).positions <= stats["nodes"]


# ---------------------------------------------------------------------------
# locality pays off

def test_positions_independent_of_chain_length():
    f = parse("E x. A y. x <= y")
    small = check_local(chain(50), f)
    large = check_local(chain(200), f)
    assert small.verdict == large.verdict is True
    assert small.positions == large.positions
    assert small.max_ball == large.max_ball


def test_type_counts_saturate_on_chains():
    f = parse("E x. A y. x <= y")
    a = check_local(chain(120), f).type_counts
    b = check_local(chain(240), f).type_counts
    assert a == b


# ---------------------------------------------------------------------------
# type sets

def test_type_set_examples():
    assert len(type_set(antichain(3), 0)) == 3   # one chain each
    assert len(type_set(chain(5), 0)) == 1
    assert len(type_set(chain(30), 1)) == 11


def test_type_set_equal_for_identical_builds():
    assert type_set(chain(6), 1) == type_set(chain(6), 1)


def test_type_set_doubles_with_disjoint_copy():
    single, double = chain(3), two_chains(3)
    s1 = type_set(single, 0)
    s2 = type_set(double, 0)
    assert len(s2) == 2 * len(s1)
    d0 = T.build_rank0(double)
    assert {d0.tau[e] for e in double.chains[0]} == s1
    assert {d0.tau[e] for e in double.chains[1]}.isdisjoint(s1)


def test_equal_type_sets_transfer_verdicts():
    # same rank-1 type sets => same rank-2 sentences hold
    a, b = chain(30), chain(45)
    assert type_set(a, 1) == type_set(b, 1)
    rng = random.Random(615)
    for _ in range(25):
        f = F.random_sentence(rng, 2, negations="any")
        assert check_local(a, f).verdict == check_local(b, f).verdict


def test_equal_type_sets_transfer_verdicts_colored():
    def striped(n):
        return chain(n, colors={str(i): "c%d" % (i % 2) for i in range(n)})
    a, b = striped(20), striped(30)
    assert type_set(a, 1) == type_set(b, 1)
    rng = random.Random(616)
    for _ in range(25):
        f = F.random_sentence(rng, 2, colors=("c0", "c1"), negations="any")
        assert check_local(a, f).verdict == check_local(b, f).verdict


def test_different_type_sets_on_different_shapes():
    assert type_set(chain(4), 0) != type_set(antichain(4), 0)
