import random
from fractions import Fraction

import pytest

from f2double.amalgam import AlternatingForm, AmalgamWord, act
from f2double.autos import specialize
from f2double.engine import (ConstructionState, FolnerBlock, NonSpecialC, Requirement,
                             check_triple, folner_ratios, new_state, reaches_all_classes,
                             replay, run, transfer_counts)
from f2double.statefile import dumps
from f2double.words import Word, words_up_to
from oracles import act_str

W = Word.parse
COMM = W("abAB")


def oracle_triple_ok(state, t) -> bool:
    fwd = dict(state.alpha.forward)
    c = str(state.c)
    return (act_str(fwd, c, t.x) == t.x and act_str(fwd, c, t.wx) == t.wx
            and act_str(fwd, str(t.word), t.x) == t.wx != t.x)


def test_new_state_examples():
    assert new_state(COMM).c == COMM
    s = new_state(W("aab"))
    assert s.c == specialize(W("aab"))[1] and s.c != W("aab")
    with pytest.raises(ValueError):
        new_state(W(""))
    with pytest.raises(ValueError):
        new_state(W("aA"))


def test_satisfy_ff_examples():
    s = new_state(COMM)
    t = s.satisfy_ff(W("b"))
    assert t.wx == t.x + 1
    assert t.x in s.fixc and t.wx in s.fixc
    assert oracle_triple_ok(s, t)
    t = s.satisfy_ff(W("A"))
    assert oracle_triple_ok(s, t)
    with pytest.raises(ValueError):
        s.satisfy_ff(COMM)
    with pytest.raises(ValueError):
        s.satisfy_ff(W("aA"))


def test_witness_permanence():
    s = new_state(W("aBAb"))
    early = [s.satisfy_ff(w) for w in words_up_to(2)]
    for k in range(1, 4):
        s.satisfy_infinite_order(k)
        s.satisfy_folner(k)
        s.satisfy_transitivity(k, k + 1)
    for w in words_up_to(3):
        s.satisfy_ff(w)
    s.satisfy_sigma_faithful(AlternatingForm(0, ((1, W("a")), (2, W("b")))))
    assert all(oracle_triple_ok(s, t) for t in early)
    assert all(check_triple(s, t) for t in s.witnesses)


def test_satisfactions_are_disjoint():
    s = run(COMM, 4)
    pts = [p for t in s.witnesses for p in (t.x, t.wx)]
    assert len(pts) == len(set(pts))
    blocks = [set(b.points()) for b in s.folner_blocks]
    for i, b in enumerate(blocks):
        assert not b & set(pts)
        for other in blocks[i + 1:]:
            assert not b & other


def test_infinite_order_examples():
    s = new_state(COMM)
    z = s.satisfy_infinite_order(1)
    fwd = dict(s.alpha.forward)
    assert act_str(fwd, "abAB", z) != z
    z = s.satisfy_infinite_order(-2)
    fwd = dict(s.alpha.forward)
    assert act_str(fwd, "baBAbaBA", z) != z
    with pytest.raises(ValueError):
        s.satisfy_infinite_order(0)


def test_folner_commutator():
    s = new_state(COMM)
    b = s.satisfy_folner(10)
    assert len(b) >= 20 and b.epsilon == Fraction(1, 10)
    ra, rb = folner_ratios(s, b)
    assert ra == 0 and rb <= Fraction(1, 10)
    assert all(p in s.fixc for p in b.points())
    fwd = dict(s.alpha.forward)
    assert all(act_str(fwd, "abAB", x) == x for x in b.points())


def test_folner_shift():
    s = new_state(W("abb"))
    assert s.c == W("abb")
    b = s.satisfy_folner(4)
    assert len(b) >= 16
    ra, rb = folner_ratios(s, b)
    assert ra == Fraction(4, len(b)) <= Fraction(1, 4)
    assert rb == Fraction(2, len(b))
    assert all(s.alpha(x) == x - 2 for x in b.points())
    fwd = dict(s.alpha.forward)
    assert all(act_str(fwd, "abb", x) == x for x in b.points())


@pytest.mark.parametrize("c", ["aBAb", "aab", "bbb", "aabbbb", "abAAB", "aaaB"])
def test_folner_ratios_meet_epsilon(c):
    s = new_state(W(c))
    for l in (1, 3, 7, 12):
        b = s.satisfy_folner(l)
        ra, rb = folner_ratios(s, b)
        assert ra <= Fraction(1, l) and rb <= Fraction(1, l)
        assert all(p in s.fixc for p in b.points())


def test_folner_interval_arithmetic_and_nonspecial():
    s = new_state(COMM)
    assert folner_ratios(s, FolnerBlock(0, 99, Fraction(1, 10)))[1] == Fraction(2, 100)
    bad = ConstructionState(W("aab"), c=W("aab"))
    with pytest.raises(NonSpecialC):
        bad.satisfy_folner(3)


def test_transitivity_examples():
    s = new_state(COMM)
    assert s.satisfy_transitivity(1, 1) == ()
    reps = s.satisfy_transitivity(2, 3)
    assert len(reps) == 3 and [r % 3 for r in reps] == [1, 2, 0]
    a2 = lambda x: s.alpha(s.alpha(x))
    assert [a2(r) for r in reps] == [reps[1], reps[2], reps[0]]
    assert reaches_all_classes(s, 2, 3)
    reps = s.satisfy_transitivity(3, 2)
    assert len(reps) == 2 and reaches_all_classes(s, 3, 2)


def test_transitivity_check_fails_without_requirement():
    s = new_state(COMM)
    assert reaches_all_classes(s, 1, 1)
    assert not reaches_all_classes(s, 2, 3)


def test_sigma_faithful_pair():
    s = new_state(COMM)
    form = AlternatingForm(0, ((1, W("a")), (2, W("b"))))
    x0 = s.satisfy_sigma_faithful(form)
    image = act(s, form.spell(s.c), x0)
    assert image != x0 and s.movers[str(form)] == (x0, image)
    # direct hand evaluation: sigma, then b, then sigma^-1, then a
    y = s.alpha(s.sigma.inv(s.sigma(x0) + 1))
    assert y == image
    assert set(s.sigma.forward) <= s.fixc


def test_sigma_faithful_delegations():
    s = new_state(COMM)
    x0 = s.satisfy_sigma_faithful(AlternatingForm(2, ()))
    assert any(k == 2 and z == x0 for k, z, _ in s.orders)
    before = len(s.sigma)
    x0 = s.satisfy_sigma_faithful(AlternatingForm(0, ((1, W("ab")),)))
    assert len(s.sigma) == before
    assert s.pool[W("ab")][0].x == x0
    with pytest.raises(ValueError):
        s.satisfy_sigma_faithful(AlternatingForm())


def test_sigma_chain_long_forms():
    s = new_state(W("aBAb"))
    rng = random.Random(4)
    words = [w for w in words_up_to(3) if w != s.c]
    for _ in range(60):
        n = rng.randint(2, 6)
        first = rng.choice((1, 2))
        syl = tuple((first if i % 2 == 0 else 3 - first, rng.choice(words)) for i in range(n))
        form = AlternatingForm(rng.randint(-2, 2), syl)
        x0 = s.satisfy_sigma_faithful(form)
        assert act(s, form.spell(s.c), x0) != x0
    for key, (x0, image) in s.movers.items():
        assert act(s, AlternatingForm.parse(key).spell(s.c), x0) == image


def test_sigma_reserve_and_transfer():
    s = new_state(COMM)
    s.satisfy_folner(5)
    b = s.sigma_reserve()
    assert b.reserved and set(b.points()) <= s.sigma_pins
    s.satisfy_sigma_faithful(AlternatingForm(0, ((2, W("a")), (1, W("b")))))
    for h, (via, direct) in transfer_counts(s, b).items():
        assert via == direct
    b2 = s.sigma_reserve()
    assert b2 is not b and b2.reserved


def test_run_stage_one():
    s = run(COMM, 1)
    for w in ("a", "b", "A", "B"):
        assert len(s.pool[W(w)]) >= 1
    assert {k for k, _, _ in s.orders} == {1, -1}
    assert len(s.folner_blocks) == 1
    assert s.log[:4] == ["ff a", "ff A", "ff b", "ff B"]
    assert "order 1" in s.log and "folner 1" in s.log and s.log[-1] == "reserve"


def test_run_zero_stages_is_empty():
    s = run(COMM, 0)
    assert not s.log and not s.alpha.forward and not s.witnesses and s.used_extent == 0


def test_run_is_deterministic_and_replays():
    a, b = run(W("aBAb"), 4), run(W("aBAb"), 4)
    assert dumps(a) == dumps(b)
    assert dumps(replay(a)) == dumps(a)
    c = run(W("aBAb"), 4, seed=3)
    assert dumps(c) != dumps(a)
    assert dumps(replay(c)) == dumps(c)


def test_requirement_text_roundtrip():
    for line in ("ff aB", "order -3", "folner 4", "trans 2 3", "sigma ab.y", "sigma c^2", "reserve"):
        assert str(Requirement.parse(line)) == line
    with pytest.raises(ValueError):
        Requirement.parse("nonsense 1")


def test_sigma_commutes_with_c():
    s = run(W("aBAb"), 6)
    c = AmalgamWord.in_factor(1, s.c)
    rng = random.Random(0)
    pts = sorted(s.sigma.forward) + [rng.randint(-5, s.used_extent + 5) for _ in range(1000)]
    for x in pts:
        assert s.sigma(act(s, c, x)) == act(s, c, s.sigma(x))
