import random

import pytest
from hypothesis import given, settings, strategies as st

from cbgames.constructions import (empty_automaton, intersect_with_buchi, union_machines, universal_automaton,
                                   up_singleton_automaton, zero_star_one_omega)
from cbgames.machines import MachineBuilder, MachineError, is_real_time, lambda_run_bound, validate_machine
from cbgames.membership import SearchLimits, accepts_up_bounded, accepts_up_buchi, language_verdict, verdict_bool
from cbgames.sampling import all_up_words, random_buchi, random_machine, random_up_word
from cbgames.words import parse_up

AB = ("a", "b")
LIM = SearchLimits(max_steps=20_000, max_counter=12, max_lambda_chain=8)


def accept_all_one_counter(alphabet=("0", "1")):
    b = MachineBuilder(alphabet, 1, "all1")
    b.state("q", accepting=True)
    for a in alphabet:
        b.add("q", a, "q", (0,), (0,))
    return b.build("q")


def test_union_of_singletons():
    u = union_machines(up_singleton_automaton(parse_up("(a)"), AB), up_singleton_automaton(parse_up("(b)"), AB))
    assert accepts_up_buchi(u, parse_up("(a)"))
    assert accepts_up_buchi(u, parse_up("(b)"))
    assert not accepts_up_buchi(u, parse_up("(ab)"))
    assert is_real_time(u)


def test_union_idempotent_on_samples():
    m = zero_star_one_omega()
    u = union_machines(m, m)
    for w in all_up_words(("0", "1"), 4):
        assert accepts_up_buchi(u, w) == accepts_up_buchi(m, w)


def test_union_alphabet_mismatch():
    with pytest.raises(MachineError):
        union_machines(zero_star_one_omega(), universal_automaton(AB))


def test_intersection_examples():
    x = intersect_with_buchi(accept_all_one_counter(), zero_star_one_omega())
    assert x.counter_count == 1
    assert language_verdict(x, parse_up("(01)"), LIM) is True
    assert language_verdict(x, parse_up("1(0)"), LIM) is False


def test_intersection_with_universal_and_empty():
    m = zero_star_one_omega()
    bits = ("0", "1")
    full = intersect_with_buchi(m, universal_automaton(bits))
    none = intersect_with_buchi(m, empty_automaton(bits))
    for w in all_up_words(bits, 4):
        assert accepts_up_buchi(full, w) == accepts_up_buchi(m, w)
        assert not accepts_up_buchi(none, w)


def test_intersection_requires_plain_buchi():
    with pytest.raises(MachineError):
        intersect_with_buchi(zero_star_one_omega(), accept_all_one_counter())
    b = MachineBuilder(("0", "1"), 0)
    b.add("q", None, "q")
    with pytest.raises(MachineError):
        intersect_with_buchi(zero_star_one_omega(), b.build("q"))


@pytest.mark.parametrize("w,yes,no", [("(a)", "(a)", "(ab)"), ("a(b)", "a(b)", "(b)")])
def test_singleton(w, yes, no):
    m = up_singleton_automaton(parse_up(w), AB)
    assert accepts_up_buchi(m, parse_up(yes))
    assert not accepts_up_buchi(m, parse_up(no))


def test_singleton_state_count():
    m = up_singleton_automaton(parse_up("(a)"), AB)
    assert len(m.states) == 2


@pytest.mark.parametrize("w,expected", [("(1)", True), ("1(0)", False), ("(001)", True)])
def test_zero_star_one(w, expected):
    assert accepts_up_buchi(zero_star_one_omega(), parse_up(w)) is expected


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**7))
def test_union_and_intersection_semantics(seed):
    rng = random.Random(seed)
    m1, m2 = random_machine(rng), random_machine(rng)
    b = random_buchi(rng, m1.alphabet)
    u, x = union_machines(m1, m2), intersect_with_buchi(m1, b)
    assert validate_machine(u) == [] and validate_machine(x) == []
    w = random_up_word(rng, m1.alphabet, 5)
    v1, v2, vu, vx = (verdict_bool(accepts_up_bounded(m, w, LIM)) for m in (m1, m2, u, x))
    if None not in (v1, v2, vu):
        assert vu == (v1 or v2)
    if None not in (v1, vx):
        assert vx == (v1 and accepts_up_buchi(b, w))


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**7))
def test_constructions_keep_lambda_bounds(seed):
    rng = random.Random(seed)
    m1, m2 = random_machine(rng), random_machine(rng)
    b = random_buchi(rng, m1.alphabet)
    u, x = union_machines(m1, m2), intersect_with_buchi(m1, b)
    if is_real_time(m1) and is_real_time(m2):
        assert is_real_time(u)
    if is_real_time(m1):
        assert is_real_time(x)
    b1, b2 = lambda_run_bound(m1, 6), lambda_run_bound(m2, 6)
    if b1 is not None and b2 is not None:
        bu = lambda_run_bound(u, 6)
        assert bu is not None and bu <= max(b1, b2) + 1
    if b1 is not None:
        bx = lambda_run_bound(x, 6)
        assert bx is not None and bx <= b1 + 1


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**7))
def test_singleton_product_realizes_membership(seed):
    rng = random.Random(seed)
    m = random_machine(rng, max_counters=0)
    w = random_up_word(rng, m.alphabet, 5)
    x = intersect_with_buchi(m, up_singleton_automaton(w, m.alphabet))
    assert accepts_up_buchi(x, w) == accepts_up_buchi(m, w)
