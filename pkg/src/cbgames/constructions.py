"""Closure constructions on counter machines and a few stock Büchi automata."""

from __future__ import annotations

from collections import deque

from .machines import (CounterMachine, MachineBuilder, MachineError, Transition, check_machine,
                       is_real_time, pad_counters, rename_states)
from .words import UPWord, up_normalize


def _same_alphabet(m1: CounterMachine, m2: CounterMachine) -> None:
    if set(m1.alphabet) != set(m2.alphabet):
        raise MachineError(f"alphabet mismatch: {m1.name} has {m1.alphabet}, {m2.name} has {m2.alphabet}")


def union_machines(m1: CounterMachine, m2: CounterMachine, name: str | None = None) -> CounterMachine:
    """Machine for L(m1) ∪ L(m2).

    The fresh initial state copies the outgoing transitions of both original
    initial states, so no lambda step is added and real-time inputs give a
    real-time result.  The fresh state has no incoming transitions, hence is
    only ever occupied at the first configuration, where all counters are 0.
    """
    _same_alphabet(m1, m2)
    k = max(m1.counter_count, m2.counter_count)
    left = rename_states(pad_counters(m1, k), "L.")
    right = rename_states(pad_counters(m2, k), "R.")
    init = "init"
    transitions = list(left.transitions) + list(right.transitions)
    for side in (left, right):
        for t in side.transitions:
            if t.source == side.initial:
                transitions.append(Transition(init, t.letter, t.guard, t.target, t.update))
    return check_machine(CounterMachine(
        (init,) + left.states + right.states, m1.alphabet, k, transitions, init,
        left.accepting | right.accepting, name or f"({m1.name}|{m2.name})"))


def intersect_with_buchi(m: CounterMachine, b: CounterMachine, name: str | None = None) -> CounterMachine:
    """Product of ``m`` with a 0-counter, lambda-free Büchi automaton ``b``.

    States are ``left&right&flag``; flag 1 waits for an accepting state of
    ``m``, flag 2 for one of ``b``.  Lambda steps of ``m`` leave ``b`` where it
    is.  Only the reachable part of the product is built.
    """
    _same_alphabet(m, b)
    if b.counter_count != 0:
        raise MachineError(f"{b.name} is not a 0-counter automaton")
    if not is_real_time(b):
        raise MachineError(f"{b.name} has lambda transitions")

    def flag_after(p, q, flag):
        if flag == 1 and p in m.accepting:
            return 2
        if flag == 2 and q in b.accepting:
            return 1
        return flag

    def label(p, q, flag):
        return f"{p}&{q}&{flag}"

    builder = MachineBuilder(m.alphabet, m.counter_count, name or f"({m.name}&{b.name})")
    start = (m.initial, b.initial, 1)
    seen = {start}
    queue = deque([start])
    while queue:
        p, q, flag = queue.popleft()
        src = builder.state(label(p, q, flag), accepting=flag == 1 and p in m.accepting)
        flag2 = flag_after(p, q, flag)
        for t in m.transitions:
            if t.source != p:
                continue
            targets = [q] if t.letter is None else [u.target for u in b.outgoing(q, t.letter)]
            for q2 in targets:
                nxt = (t.target, q2, flag2)
                builder.add(src, t.letter, label(*nxt), t.guard, t.update)
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
    for p, q, flag in seen:
        builder.state(label(p, q, flag), accepting=flag == 1 and p in m.accepting)
    return builder.build(label(*start))


def up_singleton_automaton(w: UPWord, alphabet=None) -> CounterMachine:
    """Deterministic Büchi automaton accepting exactly ``{w}``."""
    w = up_normalize(w)
    word = w.u + w.v
    alphabet = tuple(alphabet) if alphabet is not None else tuple(sorted(w.letters))
    builder = MachineBuilder(alphabet, 0, f"single[{w}]")
    n = len(word)
    names = [builder.state(f"p{i}", accepting=i >= len(w.u)) for i in range(n)]
    sink = None
    for i, a in enumerate(word):
        nxt = i + 1 if i + 1 < n else len(w.u)
        for b in alphabet:
            if b == a:
                builder.add(names[i], b, names[nxt])
            else:
                if sink is None:
                    sink = builder.state("sink")
                builder.add(names[i], b, sink)
    if sink is not None:
        for b in alphabet:
            builder.add(sink, b, sink)
    return builder.build(names[0])


def zero_star_one_omega() -> CounterMachine:
    """Deterministic Büchi automaton for (0*1)^ω: infinitely many 1s."""
    builder = MachineBuilder(("0", "1"), 0, "zeroStarOne")
    for q in ("q0", "q1"):
        builder.state(q, accepting=q == "q1")
        builder.add(q, "0", "q0")
        builder.add(q, "1", "q1")
    return builder.build("q0")


def universal_automaton(alphabet) -> CounterMachine:
    builder = MachineBuilder(tuple(alphabet), 0, "universal")
    builder.state("u", accepting=True)
    for a in alphabet:
        builder.add("u", a, "u")
    return builder.build("u")


def empty_automaton(alphabet) -> CounterMachine:
    builder = MachineBuilder(tuple(alphabet), 0, "empty")
    builder.state("e")
    for a in alphabet:
        builder.add("e", a, "e")
    return builder.build("e")
