"""Randomized invariant suites run by ``cbgames selfcheck``.

Module functions are looked up through their modules at call time so that a
patched (fault-injected) implementation is the one exercised.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import codings, constructions, games, machines, membership, sampling, words

CODING_SAMPLE = (("theta", 2), ("theta", 4), ("h", 2), ("h", 4), ("hk", 2), ("phi", 2), ("phi", 3))


@dataclass
class SuiteResult:
    name: str
    passed: int = 0
    failures: list = field(default_factory=list)

    def check(self, ok: bool, what: str) -> None:
        if ok:
            self.passed += 1
        else:
            self.failures.append(what)


def _words(rng, budget, r: SuiteResult):
    for _ in range(budget):
        w = sampling.random_up_word(rng, ("a", "b", "c"), 8)
        n = words.up_normalize(w)
        r.check(words.up_equal(w, n), f"normalize changed {w}")
        r.check(words.up_equal(words.parse_up(words.format_up(w)), w), f"notation round trip {w}")
        k = rng.randint(0, 10)
        r.check(words.prefix(words.up_shift(w, k), 5) == words.prefix(w, k + 5)[k:], f"shift {w} by {k}")


def _machines(rng, budget, r: SuiteResult):
    for _ in range(budget):
        m = sampling.random_machine(rng)
        r.check(not machines.validate_machine(m), f"random machine invalid: {m.name}")
        r.check(machines.parse_machine(machines.dump_machine(m)) == m, "file format round trip")


def _membership(rng, budget, r: SuiteResult):
    lim = membership.SearchLimits(max_steps=20_000, max_counter=12, max_lambda_chain=8)
    for _ in range(budget):
        m = sampling.random_machine(rng)
        w = sampling.random_up_word(rng, m.alphabet, 6)
        v = membership.accepts_up_bounded(m, w, lim)
        if isinstance(v, membership.Accept):
            r.check(membership.check_certificate(m, w, v.certificate), f"certificate replay {w}")
        oracle = membership.oracle_accepts(m, w, depth=24, max_nodes=50_000)
        decided = membership.verdict_bool(v)
        r.check(oracle is None or decided is None or oracle == decided,
                f"engine says {decided}, oracle says {oracle} on {w}")


def _codings(rng, budget, r: SuiteResult):
    ab = ("a", "b")
    for i in range(budget):
        kind, param = CODING_SAMPLE[i % len(CODING_SAMPLE)]
        spec = codings.CodingSpec(kind, param, ab)
        x = sampling.random_up_word(rng, ab, 4)
        n = rng.randint(1, 5)
        m = codings.data_position(spec, n)
        r.check(codings.encode(spec, x).prefix(m) == codings.encode_finite(spec, words.prefix(x, n)),
                f"prefix determinacy {spec} {x} n={n}")
        p = codings.encode(spec, x).prefix(m)
        r.check(codings.in_pref(spec, p), f"coded prefix rejected {spec}")
        q = sampling.near_coded_word(rng, spec)
        pref = words.prefix(q, len(q.u) + 3 * len(q.v))
        flags = [codings.in_pref(spec, pref[:j]) for j in range(len(pref) + 1)]
        r.check(all(a or not b for a, b in zip(flags, flags[1:])), f"in_pref not prefix-closed {spec}")
        if kind == "theta" and param % 2 == 0:
            r.check(all(codings.data_position(spec, j) % 2 == j % 2 for j in range(1, 51)),
                    f"writer parity {spec}")
        if kind == "h":
            K = param
            a = codings.encode(spec, x).prefix(300)
            r.check(a == codings.encode_h_by_rules(K, x, ab).prefix(300), f"rules vs formula K={K} {x}")
        # H: the letter after a maximal C-run sits at an even position
        hw = sampling.h_language_word(rng, ab)
        hp = words.prefix(hw, 60)
        ok = all(hp[j + 1] == "C" or (j + 2) % 2 == 0
                 for j in range(len(hp) - 1) if hp[j] == "C")
        r.check(ok and codings.in_pref("H", hp), f"H post-C parity {hw}")
        w = sampling.near_coded_word(rng, codings.CodingSpec("h", 2, ab))
        closed = words.in_limit(lambda p: codings.in_pref("H", p), w, sample_bound=32)
        r.check(membership.accepts_up_buchi(codings.build_gadget("ClosureH", base=ab), w) == closed,
                f"closure law {w}")
    gadgets = (("Lprime", 2, ("a", "b", "E"), "theta"), ("Lsecond", 2, ("a", "b", "F"), "phi"),
               ("Hlang", None, None, "h"), ("Vlang", None, None, "h"), ("Ulang", None, None, "h"),
               ("ClosureH", None, None, "h"))
    lim = membership.SearchLimits(max_counter=400)
    for i in range(budget):
        g, param, _, kind = gadgets[i % len(gadgets)]
        machine = codings.build_gadget(g, param, ab)
        spec = codings.CodingSpec(kind, param or 2, ab)
        w = sampling.h_language_word(rng, ab) if kind == "h" and rng.random() < 0.3 \
            else sampling.near_coded_word(rng, spec)
        v = membership.language_verdict(machine, w, lim)
        r.check(v is None or v == codings.gadget_predicate(g, param, ab)(w), f"gadget {g} on {w}")


def _constructions(rng, budget, r: SuiteResult):
    lim = membership.SearchLimits(max_steps=20_000, max_counter=12, max_lambda_chain=8)
    for _ in range(budget):
        m1, m2 = sampling.random_machine(rng), sampling.random_machine(rng)
        b = sampling.random_buchi(rng, m1.alphabet)
        u = constructions.union_machines(m1, m2)
        x = constructions.intersect_with_buchi(m1, b)
        r.check(not machines.validate_machine(u) and not machines.validate_machine(x), "invalid construction")
        w = sampling.random_up_word(rng, m1.alphabet, 5)
        v1, v2 = (membership.verdict_bool(membership.accepts_up_bounded(m, w, lim)) for m in (m1, m2))
        vu = membership.verdict_bool(membership.accepts_up_bounded(u, w, lim))
        if None not in (v1, v2, vu):
            r.check(vu == (v1 or v2), f"union semantics on {w}")
        vb = membership.accepts_up_buchi(b, w)
        vx = membership.verdict_bool(membership.accepts_up_bounded(x, w, lim))
        if None not in (v1, vx):
            r.check(vx == (v1 and vb), f"intersection semantics on {w}")
        rt1, rt2 = machines.is_real_time(m1), machines.is_real_time(m2)
        if rt1 and rt2:
            r.check(machines.is_real_time(u), "union of real-time machines is not real-time")
        if rt1:
            r.check(machines.is_real_time(x), "intersection of a real-time machine is not real-time")
        b1, b2 = machines.lambda_run_bound(m1, 6), machines.lambda_run_bound(m2, 6)
        if b1 is not None and b2 is not None:
            bu = machines.lambda_run_bound(u, 6)
            r.check(bu is not None and bu <= max(b1, b2) + 1, "union increases the lambda bound")
        if b1 is not None:
            bx = machines.lambda_run_bound(x, 6)
            r.check(bx is not None and bx <= b1 + 1, "intersection increases the lambda bound")


def _games(rng, budget, r: SuiteResult):
    ab = ("a", "b")
    obs = sampling.gs_observations(ab)
    z = constructions.zero_star_one_omega()
    for i in range(budget):
        t1 = sampling.random_transducer(rng, obs, ab, 2)
        t2 = sampling.random_transducer(rng, ab, ab, 2)
        play = games.play_gs_transducers(t1, t2)
        h = rng.randint(1, 12)
        fin = games.play_gs(t1, t2, h)
        r.check(fin.word == words.prefix(play.word, 2 * h), "transducer play vs unrolled play")
        r.check(words.prefix(play.player_letters(1), h) == fin.word[0::2], "alternation")
        kind = ("theta", "h", "phi")[i % 3]
        spec = codings.CodingSpec(kind, 2, ab)
        l1 = games.lift_gs(spec, 1, games.encode_gs_strategy(spec, 1, t1), max_coded_length=4096)
        l2 = games.lift_gs(spec, 2, games.encode_gs_strategy(spec, 2, t2), max_coded_length=4096)
        lifted = games.play_gs(l1, l2, 3)
        r.check(lifted.word == words.prefix(play.word, 6), f"lifted play differs ({kind})")
        coded = codings.encode(spec, play.word)
        for lift in (l1, l2):
            r.check(all(lift.coded_play[:m] == coded.prefix(m) for _, m in lift.sync_points),
                    f"lift correspondence ({kind})")
        # skip soundness and the first clause of the sum
        w1 = sampling.random_transducer(rng, ("^", "0", "1", "s"), ("0", "1"), 2)
        w2 = sampling.random_transducer(rng, ("0", "1"), ("0", "1", "s"), 2)
        out = games.play_wadge(w1, w2, z, z, 10)
        r.check(out.b_infinite == any(y != "s" for y in out.moves2.v), "skip soundness")
        a = out.a
        r.check(games.sum_membership(z, games.empty_language, games.full_language, ("0", "1"), ["p"], ["m"], a)
                == membership.accepts_up_buchi(z, a), "sum first clause")


SUITES = {
    "words": _words,
    "machines": _machines,
    "membership": _membership,
    "codings": _codings,
    "constructions": _constructions,
    "games": _games,
}


def run_selfcheck(seed: int = 0, budget: int = 20, suites=None) -> list:
    """Run the suites with ``budget`` cases each; returns one SuiteResult per suite."""
    results = []
    if budget <= 0:
        return results
    for name in suites or SUITES:
        r = SuiteResult(name)
        try:
            SUITES[name](random.Random(f"{seed}:{name}"), budget, r)
        except Exception as exc:  # a crash is a failure of the suite, not of the runner
            r.failures.append(f"crashed: {type(exc).__name__}: {exc}")
        results.append(r)
    return results


def format_report(results) -> str:
    lines = []
    for r in results:
        status = "ok" if not r.failures else "FAIL"
        lines.append(f"{r.name}: {r.passed} passed, {len(r.failures)} failed [{status}]")
        lines.extend(f"  {msg}" for msg in r.failures[:5])
    return "\n".join(lines) + ("\n" if lines else "")
