"""Seeded generators for machines, words and strategies used by tests and selfcheck."""

from __future__ import annotations

import itertools
import random

from .codings import CodingSpec, encode_finite
from .games import START, TransducerStrategy
from .machines import CounterMachine, MachineBuilder, Transition, check_machine
from .words import UPWord


def random_transition(rng: random.Random, states, alphabet, k: int, lambda_prob: float = 0.15):
    letter = None if rng.random() < lambda_prob else rng.choice(alphabet)
    guard = tuple(rng.randint(0, 1) for _ in range(k))
    update = tuple(rng.choice((-1, 0, 1)) if g else rng.choice((0, 1)) for g in guard)
    return Transition(rng.choice(states), letter, guard, rng.choice(states), update)


def random_machine(rng: random.Random, alphabet=("a", "b"), max_states: int = 4, max_counters: int = 2,
                   max_transitions: int = 6, lambda_prob: float = 0.15, name: str = "R") -> CounterMachine:
    """A valid machine with at most the given numbers of states, counters and transitions."""
    n = rng.randint(1, max_states)
    states = tuple(f"q{i}" for i in range(n))
    k = rng.randint(0, max_counters)
    transitions = [random_transition(rng, states, alphabet, k, lambda_prob)
                   for _ in range(rng.randint(1, max_transitions))]
    accepting = {q for q in states if rng.random() < 0.5} or {rng.choice(states)}
    return check_machine(CounterMachine(states, tuple(alphabet), k, transitions, "q0", accepting, name))


def random_buchi(rng: random.Random, alphabet=("0", "1"), n_states: int = 3, name: str = "B") -> CounterMachine:
    """A complete deterministic Büchi automaton with random transitions."""
    b = MachineBuilder(tuple(alphabet), 0, name)
    states = [f"b{i}" for i in range(n_states)]
    acc = set(rng.sample(states, rng.randint(1, n_states - 1 if n_states > 1 else 1)))
    for q in states:
        b.state(q, accepting=q in acc)
        for a in alphabet:
            b.add(q, a, rng.choice(states))
    return b.build(states[0])


def random_up_word(rng: random.Random, alphabet, max_length: int = 6) -> UPWord:
    """Random u(v) with 1 <= |v| and |u| + |v| <= max_length."""
    total = rng.randint(1, max_length)
    lv = rng.randint(1, total)
    return UPWord(tuple(rng.choice(alphabet) for _ in range(total - lv)),
                  tuple(rng.choice(alphabet) for _ in range(lv)))


def all_up_words(alphabet, max_length: int):
    for total in range(1, max_length + 1):
        for lv in range(1, total + 1):
            for u in itertools.product(alphabet, repeat=total - lv):
                for v in itertools.product(alphabet, repeat=lv):
                    yield UPWord(u, v)


def near_coded_word(rng: random.Random, spec: CodingSpec, data_letters: int = 4) -> UPWord:
    """A UP word that follows a coded prefix for a while, then mutates or loops."""
    x = [rng.choice(spec.base) for _ in range(data_letters)]
    p = list(encode_finite(spec, x))
    cut = rng.randint(0, len(p))
    u = p[:cut]
    if u and rng.random() < 0.5:
        u[rng.randrange(len(u))] = rng.choice(spec.alphabet)
    v = [rng.choice(spec.alphabet) for _ in range(rng.randint(1, 3))]
    if rng.random() < 0.3:
        v = [rng.choice(spec.extension)] * rng.randint(1, 2)
    return UPWord(tuple(u), tuple(v))


def h_language_word(rng: random.Random, base=("a", "b"), blocks: int = 3) -> UPWord:
    """A UP word of the regular relaxation H (periodic part made of two blocks)."""

    def even():
        return ["C"] * (2 * rng.randint(1, 3))

    def odd():
        return ["C"] * (2 * rng.randint(1, 3) + 1)

    u = odd() + ["A", rng.choice(base)]
    for _ in range(rng.randrange(blocks)):
        u += even() + ["A"] + odd() + [rng.choice(base), "B"] + even() + ["A"] + odd() + ["A", rng.choice(base)]
    v = even() + ["A"] + odd() + [rng.choice(base), "B"] + even() + ["A"] + odd() + ["A", rng.choice(base)]
    return UPWord(tuple(u), tuple(v))


def random_transducer(rng: random.Random, observations, outputs, n_states: int = 2,
                      name: str = "T") -> TransducerStrategy:
    states = tuple(f"m{i}" for i in range(n_states))
    out, nxt = {}, {}
    for q in states:
        for o in observations:
            out[q, o] = rng.choice(tuple(outputs))
            nxt[q, o] = rng.choice(states)
    return TransducerStrategy(states, states[0], out, nxt, name)


def gs_observations(alphabet) -> tuple:
    return (START,) + tuple(alphabet)
