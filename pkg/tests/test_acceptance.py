"""Acceptance criteria, one test per criterion (see the summary printed by conftest)."""

import random
import time

import pytest

from cbgames import codings, constructions, games, machines, membership, sampling
from cbgames.codings import CodingSpec, data_position, encode, encode_h_by_rules, in_pref
from cbgames.words import UPWord, format_finite, in_limit, parse_up, prefix

AB = ("a", "b")
BITS = ("0", "1")


# 1 ---------------------------------------------------------------------------

def test_criterion_01_coding_golden_strings():
    t0 = time.perf_counter()
    x = parse_up("(ab)")
    assert format_finite(encode(CodingSpec("theta", 2, AB), x).prefix(9)) == "aEEbEEEEa"
    assert format_finite(encode(CodingSpec("phi", 2, AB), x).prefix(8)) == "FFaFFbFF"
    assert format_finite(encode(CodingSpec("hk", 2, AB), x).prefix(16)) == "ACCaBCCCCACCCCbB"
    assert time.perf_counter() - t0 < 1.0


# 2 ---------------------------------------------------------------------------

def test_criterion_02_rules_encoder_matches_formula():
    rng = random.Random(2)
    mismatches = 0
    for K in (2, 3, 4):
        spec = CodingSpec("h", K, AB)
        for _ in range(100):
            x = sampling.random_up_word(rng, AB, 6)
            if encode(spec, x).prefix(500) != encode_h_by_rules(K, x, AB).prefix(500):
                mismatches += 1
    assert mismatches == 0


# 3 ---------------------------------------------------------------------------

def test_criterion_03_writer_parity():
    for S in (2, 4, 6, 1728):
        spec = CodingSpec("theta", S, AB)
        assert all(data_position(spec, n) % 2 == n % 2 for n in range(1, 51))


# 4 ---------------------------------------------------------------------------

GADGET_CASES = [
    ("Lprime", 2, "theta"),
    ("Lprime", 3, "theta"),
    ("Hlang", None, "h"),
    ("Vlang", None, "h"),
    ("Ulang", None, "h"),
    ("ClosureH", None, "h"),
    ("Lsecond", 2, "phi"),
]


def _gadget_sample(rng, kind, param):
    spec = CodingSpec(kind, param or 2, AB)
    r = rng.random()
    if kind == "h" and r < 0.25:
        return sampling.h_language_word(rng, AB)
    if r < 0.8:
        return sampling.near_coded_word(rng, spec, data_letters=rng.randint(1, 4))
    return sampling.random_up_word(rng, spec.alphabet, 6)


@pytest.mark.parametrize("gadget,param,kind", GADGET_CASES)
def test_criterion_04_gadgets_agree_with_definitions(gadget, param, kind):
    rng = random.Random(f"4:{gadget}:{param}")
    machine = codings.build_gadget(gadget, param, AB)
    predicate = codings.gadget_predicate(gadget, param, AB)
    lim = membership.SearchLimits(max_steps=200_000, max_counter=2_000)
    disagreements, unknown, positives = [], 0, 0
    for _ in range(250):
        w = _gadget_sample(rng, kind, param)
        expected = predicate(w)
        positives += expected
        if machine.counter_count == 0:
            got = membership.accepts_up_buchi(machine, w)
        else:
            v = membership.accepts_up_bounded(machine, w, lim)
            if isinstance(v, membership.Accept):
                assert membership.check_certificate(machine, w, v.certificate)
            got = membership.verdict_bool(v)
        if got is None:
            unknown += 1
        elif got != expected:
            disagreements.append(str(w))
    assert disagreements == []
    if machine.counter_count == 0:
        assert unknown == 0
    assert unknown <= 25
    assert 0 < positives < 250  # the sample exercises both outcomes


# 5 ---------------------------------------------------------------------------

def test_criterion_05_real_time_and_lambda_bounds():
    for S in (2, 3, 4):
        assert machines.is_real_time(codings.build_gadget("Lprime", S, AB))
    rng = random.Random(5)
    depth = 6
    checked = 0
    for _ in range(50):
        pool = [sampling.random_machine(rng, lambda_prob=0.25) for _ in range(3)]
        m = pool[0]
        for other in pool[1:]:
            if rng.random() < 0.5:
                out = constructions.union_machines(m, other)
                inputs = (m, other)
            else:
                out = constructions.intersect_with_buchi(m, sampling.random_buchi(rng, AB))
                inputs = (m,)
            assert not machines.validate_machine(out)
            if all(machines.is_real_time(i) for i in inputs):
                assert machines.is_real_time(out)
            bounds = [machines.lambda_run_bound(i, depth) for i in inputs]
            if None not in bounds:
                b = machines.lambda_run_bound(out, depth)
                assert b is not None and b <= max(bounds) + 1
                checked += 1
            m = out
    # real-time inputs stay real-time through a chain of constructions
    rt = [sampling.random_machine(rng, lambda_prob=0.0) for _ in range(4)]
    chain = constructions.union_machines(constructions.union_machines(rt[0], rt[1]), rt[2])
    chain = constructions.intersect_with_buchi(chain, sampling.random_buchi(rng, AB))
    assert machines.is_real_time(chain)
    assert checked >= 50


# 6 ---------------------------------------------------------------------------

def test_criterion_06_membership_matches_oracle():
    t0 = time.perf_counter()
    rng = random.Random(6)
    lim = membership.SearchLimits(max_steps=5_000, max_counter=8, max_lambda_chain=8)
    family = list(sampling.all_up_words(AB, 6))
    disagreements, accepts, both = [], 0, 0
    for _ in range(500):
        m = sampling.random_machine(rng, max_states=4, max_counters=2, max_transitions=6)
        for w in rng.sample(family, 8):
            v = membership.accepts_up_bounded(m, w, lim)
            if isinstance(v, membership.Accept):
                accepts += 1
                assert membership.check_certificate(m, w, v.certificate)
            engine = membership.verdict_bool(v)
            oracle = membership.oracle_accepts(m, w, depth=40, max_nodes=20_000)
            if engine is not None and oracle is not None:
                both += 1
                if engine != oracle:
                    disagreements.append((machines.dump_machine(m), str(w)))
    assert disagreements == []
    assert accepts > 100 and both > 3000
    assert time.perf_counter() - t0 < 60


# 7 ---------------------------------------------------------------------------

def test_criterion_07_closure_law():
    rng = random.Random(7)
    cl = codings.build_gadget("ClosureH", base=AB)
    gamma1 = AB + ("A", "B", "C")
    both = set()
    for i in range(100):
        if i % 4 == 0:
            w = sampling.h_language_word(rng, AB)
        elif i % 4 == 1:
            w = sampling.random_up_word(rng, gamma1, 6)
        else:
            w = sampling.near_coded_word(rng, CodingSpec("h", 2, AB), data_letters=rng.randint(1, 3))
        closed = in_limit(lambda p: in_pref("H", p), w, sample_bound=40)
        assert membership.accepts_up_buchi(cl, w) == closed, str(w)
        both.add(closed)
    assert both == {True, False}


# 8 ---------------------------------------------------------------------------

CODED_CAP = 1 << 13
REDUCTIONS = (("theta", 2), ("h", 2), ("phi", 2))


def _winsets():
    rng = random.Random(88)
    return [constructions.zero_star_one_omega(),
            sampling.random_buchi(rng, BITS, 3, "B1"),
            sampling.random_buchi(rng, BITS, 3, "B2")]


def _rounds_within(spec, cap, limit=25):
    r = 1
    while r < limit and data_position(spec, 2 * (r + 1)) <= cap:
        r += 1
    return r


class _Deviate:
    """Wrap a coded strategy so that it writes ``letter`` at coded position ``position``."""

    def __init__(self, inner, position, letter):
        self.inner, self.position, self.letter = inner, position, letter

    def __call__(self, coded):
        if len(coded) + 1 == self.position:
            return self.letter
        return self.inner(coded)


def _deviation(rng, spec, coded_word, player):
    """A filler position of ``player`` and a letter leaving every relevant prefix set there."""
    table = codings.SlotTable(spec)
    positions = [i for i in range(1, 80) if (i % 2 == 1) == (player == 1) and not isinstance(table[i], int)]
    p = rng.choice(positions)
    head = coded_word.prefix(p - 1)
    for c in rng.sample(spec.alphabet, len(spec.alphabet)):
        p_c = head + (c,)
        if not in_pref(spec, p_c) and (spec.kind != "h" or not in_pref("H", p_c)):
            return p, c
    return None


@pytest.mark.parametrize("kind,param", REDUCTIONS)
def test_criterion_08_lift_correspondence_and_winners(kind, param):
    t0 = time.perf_counter()
    spec = CodingSpec(kind, param, BITS)
    winsets = _winsets()
    rng = random.Random(f"8:{kind}")
    rounds = _rounds_within(spec, CODED_CAP)
    obs1 = sampling.gs_observations(BITS)
    escapes = 0
    for i in range(50):
        W = winsets[i % 3]
        coded_winset = codings.coded_gs_winset(spec, W)
        t1 = sampling.random_transducer(rng, obs1, BITS, 2, "t1")
        t2 = sampling.random_transducer(rng, BITS, BITS, 2, "t2")
        x = games.play_gs_transducers(t1, t2).word
        y = encode(spec, x)
        o1, o2 = games.encode_gs_strategy(spec, 1, t1), games.encode_gs_strategy(spec, 2, t2)

        # the coded game between the encoded strategies writes the coding of x
        coded = games.play_gs(o1, o2, 50)
        assert coded.word == y.prefix(100)

        # (a) the lifts' simulated coded play agrees with the coding at every sync point
        l1 = games.lift_gs(spec, 1, o1, CODED_CAP)
        l2 = games.lift_gs(spec, 2, o2, CODED_CAP)
        decoded = games.play_gs(l1, l2, rounds)
        assert decoded.word == prefix(x, 2 * rounds)
        reference = y.prefix(max(len(l1.coded_play), len(l2.coded_play)))
        for lift in (l1, l2):
            assert lift.sync_points, "no synchronization point reached"
            for n, m in lift.sync_points:
                assert m == data_position(spec, n)
                assert lift.coded_play[:m] == reference[:m]

        # (b) winner of the transformed game equals the winner of the original game
        original = games.gs_winner(x, W)
        transformed = games.gs_winner(y, coded_winset)
        assert original in (1, 2) and transformed == original

        # a player whose coded strategy leaves the coded set loses, and its lift refuses to go on
        escaper = 1 + i % 2
        dev = _deviation(rng, spec, y, escaper)
        if dev is None:
            continue
        p, c = dev
        def outers():
            fresh = {j: games.encode_gs_strategy(spec, j, (t1, t2)[j - 1]) for j in (1, 2)}
            fresh[escaper] = _Deviate(fresh[escaper], p, c)
            return fresh

        fresh = outers()
        head = games.play_gs(fresh[1], fresh[2], (p + 1) // 2).word[:p]
        assert head == y.prefix(p - 1) + (c,)
        completion = UPWord(head, (spec.alphabet[0],))
        assert games.gs_winner(completion, coded_winset) == 3 - escaper
        lifts = {j: games.lift_gs(spec, j, o, CODED_CAP) for j, o in outers().items()}
        with pytest.raises(games.StrategyEscape) as info:
            games.play_gs(lifts[1], lifts[2], rounds)
        assert info.value.player == escaper and info.value.position == p
        escapes += 1
    assert escapes >= 40
    assert time.perf_counter() - t0 < 120


# 9 ---------------------------------------------------------------------------

def _wadge_p1(rng):
    return sampling.random_transducer(rng, ("^",) + BITS + ("s",), BITS, 3, "p1")


def test_criterion_09_wadge_semantics():
    rng = random.Random(9)
    languages = [constructions.zero_star_one_omega(), sampling.random_buchi(rng, BITS, 3, "B")]
    copy = games.copy_transducer(BITS)
    skip = games.constant_transducer("s", BITS, "skip")
    in_L_seen = 0
    for L in languages:
        total = games.sum_language(L, games.empty_language, BITS, ["p"], ["m"],
                                   L2_complement=games.full_language)
        for _ in range(50):
            s1 = _wadge_p1(rng)
            out = games.play_wadge(s1, copy, L, L, 10)
            assert out.b_infinite and out.winner == 2
            out = games.play_wadge(s1, skip, L, L, 10)
            assert out.b_infinite is False
            if membership.accepts_up_buchi(L, out.a):
                in_L_seen += 1
                assert out.winner == 1
            out = games.play_wadge(s1, games.copy_into_sum_strategy(BITS), L, total, 10)
            assert out.winner == 2
            assert games.sum_membership(L, games.empty_language, games.full_language, BITS, ["p"], ["m"], out.b) \
                == membership.accepts_up_buchi(L, out.a)
    assert in_L_seen > 0


# 10 --------------------------------------------------------------------------

def test_criterion_10_constants():
    assert codings.K_default() == 9699690
    assert codings.min_even_S(("a", "b")) == 1728
    assert codings.min_even_S(("a", "b", "c")) == 3376
