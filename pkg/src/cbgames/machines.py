"""k-counter Büchi machines: data model, single-step semantics, file format.

A transition ``(q, a, guard, q2, update)`` fires from configuration
``(q, c_1..c_k)`` when ``guard[m] == (1 if c_m > 0 else 0)`` for every
counter, and moves to ``(q2, c_1 + update[1], ...)``.  ``a`` is a letter or
``None`` for a lambda step.  With ``k == 0`` the machine is an ordinary Büchi
automaton.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple

LAMBDA = None
LAMBDA_TOKEN = "-"


class MachineError(ValueError):
    pass


@dataclass(frozen=True)
class Transition:
    source: str
    letter: str | None
    guard: tuple
    target: str
    update: tuple

    def __post_init__(self):
        object.__setattr__(self, "guard", tuple(self.guard))
        object.__setattr__(self, "update", tuple(self.update))

    @property
    def is_lambda(self) -> bool:
        return self.letter is None

    def __str__(self):
        return format_transition(self)


class Configuration(NamedTuple):
    state: str
    counters: tuple


@dataclass(frozen=True)
class RunPrefix:
    """Consecutive configurations and the step letters (``None`` = lambda) between them."""

    configurations: tuple
    step_letters: tuple

    @property
    def consumed(self) -> tuple:
        return tuple(a for a in self.step_letters if a is not None)

    def __len__(self):
        return len(self.step_letters)


@dataclass(frozen=True, eq=False)
class CounterMachine:
    states: tuple
    alphabet: tuple
    counter_count: int
    transitions: tuple
    initial: str
    accepting: frozenset
    name: str = "M"

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "transitions", tuple(self.transitions))
        object.__setattr__(self, "accepting", frozenset(self.accepting))

    @cached_property
    def _index(self) -> dict:
        index: dict = {}
        for t in self.transitions:
            index.setdefault((t.source, t.letter), []).append(t)
        return index

    def outgoing(self, state: str, letter: str | None) -> list:
        return self._index.get((state, letter), [])

    @property
    def k(self) -> int:
        return self.counter_count

    @cached_property
    def initial_configuration(self) -> Configuration:
        return Configuration(self.initial, (0,) * self.counter_count)

    def __eq__(self, other):
        if not isinstance(other, CounterMachine):
            return NotImplemented
        return (self.states, self.alphabet, self.counter_count, frozenset(self.transitions),
                self.initial, self.accepting) == (
            other.states, other.alphabet, other.counter_count, frozenset(other.transitions),
            other.initial, other.accepting)

    def __hash__(self):
        return hash((self.states, self.alphabet, self.counter_count, self.initial))


def validate_machine(m: CounterMachine) -> list:
    """Return the list of invariant violations; an empty list means the machine is valid."""
    problems = []
    states = set(m.states)
    if len(states) != len(m.states):
        problems.append("duplicate states")
    if not m.alphabet:
        problems.append("empty alphabet")
    if len(set(m.alphabet)) != len(m.alphabet):
        problems.append("duplicate alphabet letters")
    if m.counter_count < 0:
        problems.append(f"negative counter count {m.counter_count}")
    if m.initial not in states:
        problems.append(f"initial state {m.initial!r} not in states")
    for q in sorted(m.accepting - states):
        problems.append(f"accepting state {q!r} not in states")
    for t in m.transitions:
        where = f"transition {format_transition(t)}"
        if t.source not in states:
            problems.append(f"{where}: source {t.source!r} not in states")
        if t.target not in states:
            problems.append(f"{where}: target {t.target!r} not in states")
        if t.letter is not None and t.letter not in m.alphabet:
            problems.append(f"{where}: letter {t.letter!r} not in alphabet")
        if len(t.guard) != m.counter_count or len(t.update) != m.counter_count:
            problems.append(f"{where}: guard/update length differs from k={m.counter_count}")
            continue
        for j, (g, d) in enumerate(zip(t.guard, t.update), 1):
            if g not in (0, 1):
                problems.append(f"{where}: guard of counter {j} is {g!r}, not 0/1")
            if d not in (-1, 0, 1):
                problems.append(f"{where}: update of counter {j} is {d!r}, not -1/0/1")
            if g == 0 and d == -1:
                problems.append(f"{where}: decrements counter {j} under a zero test")
    return problems


def check_machine(m: CounterMachine) -> CounterMachine:
    problems = validate_machine(m)
    if problems:
        raise MachineError(f"invalid machine {m.name}: " + "; ".join(problems))
    return m


def zero_pattern(counters: tuple) -> tuple:
    return tuple(1 if c > 0 else 0 for c in counters)


def successors(m: CounterMachine, c: Configuration, step: str | None) -> list:
    """Configurations reachable from ``c`` by one transition reading ``step``."""
    pattern = zero_pattern(c.counters)
    out = []
    for t in m.outgoing(c.state, step):
        if t.guard != pattern:
            continue
        counters = tuple(x + d for x, d in zip(c.counters, t.update))
        if any(x < 0 for x in counters):
            continue
        nxt = Configuration(t.target, counters)
        if nxt not in out:
            out.append(nxt)
    return out


def replay(m: CounterMachine, step_letters: Iterable, start: Configuration | None = None,
           choose=None) -> RunPrefix | None:
    """Follow ``step_letters`` from ``start``; ``choose`` picks among successors (default: first)."""
    c = start if start is not None else m.initial_configuration
    configs = [c]
    steps = tuple(step_letters)
    for a in steps:
        nxt = successors(m, c, a)
        if not nxt:
            return None
        c = nxt[0] if choose is None else choose(nxt)
        configs.append(c)
    return RunPrefix(tuple(configs), steps)


def is_real_time(m: CounterMachine) -> bool:
    return not any(t.letter is None for t in m.transitions)


def lambda_run_bound(m: CounterMachine, depth: int) -> int | None:
    """Longest chain of consecutive lambda steps from configurations reachable within ``depth``.

    Configurations are explored breadth-first up to ``depth`` steps from the
    initial one.  Returns ``None`` ("exceeded") when a lambda chain repeats a
    configuration or gets longer than ``depth``.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if is_real_time(m):
        return 0
    seen = {m.initial_configuration}
    frontier = [m.initial_configuration]
    for _ in range(depth):
        nxt = []
        for c in frontier:
            for a in (None,) + m.alphabet:
                for d in successors(m, c, a):
                    if d not in seen:
                        seen.add(d)
                        nxt.append(d)
        frontier = nxt
    longest: dict = {}
    on_path: set = set()

    class _Exceeded(Exception):
        pass

    def chain(c: Configuration, length: int) -> int:
        if c in longest:
            return longest[c]
        if c in on_path or length > depth:
            raise _Exceeded
        on_path.add(c)
        best = 0
        for d in successors(m, c, None):
            best = max(best, 1 + chain(d, length + 1))
        on_path.discard(c)
        if best > depth:
            raise _Exceeded
        longest[c] = best
        return best

    try:
        return max(chain(c, 0) for c in seen)
    except _Exceeded:
        return None


def pad_counters(m: CounterMachine, k2: int) -> CounterMachine:
    """Embed ``m`` into ``k2 >= k`` counters; the new counters never move."""
    if k2 < m.counter_count:
        raise MachineError(f"cannot pad {m.counter_count} counters down to {k2}")
    extra = k2 - m.counter_count
    if extra == 0:
        return m
    transitions = []
    for t in m.transitions:
        for g in itertools.product((0, 1), repeat=extra):
            transitions.append(Transition(t.source, t.letter, t.guard + g, t.target,
                                          t.update + (0,) * extra))
    return CounterMachine(m.states, m.alphabet, k2, transitions, m.initial, m.accepting, m.name)


def rename_states(m: CounterMachine, prefix: str) -> CounterMachine:
    ren = {q: prefix + q for q in m.states}
    return CounterMachine(
        [ren[q] for q in m.states], m.alphabet, m.counter_count,
        [Transition(ren[t.source], t.letter, t.guard, ren[t.target], t.update) for t in m.transitions],
        ren[m.initial], {ren[q] for q in m.accepting}, m.name)


# ------------------------------------------------------------- file format

def format_transition(t: Transition) -> str:
    letter = LAMBDA_TOKEN if t.letter is None else t.letter
    guard = "".join(str(g) for g in t.guard) or "-"
    update = ",".join(str(d) for d in t.update) or "-"
    return f"trans {t.source} {letter} {guard} {t.target} {update}"


def dump_machine(m: CounterMachine) -> str:
    lines = [
        f"machine {m.name}",
        f"counters {m.counter_count}",
        "alphabet " + " ".join(m.alphabet),
        "states " + " ".join(m.states),
        f"initial {m.initial}",
        "accepting " + " ".join(q for q in m.states if q in m.accepting),
    ]
    lines.extend(format_transition(t) for t in m.transitions)
    return "\n".join(line.rstrip() for line in lines) + "\n"


def parse_machine(text: str) -> CounterMachine:
    """Read the line-oriented machine format; ``#`` starts a comment."""
    name, k = "M", None
    alphabet, states, accepting, transitions = [], [], [], []
    initial = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, *args = line.split()
        try:
            if key == "machine":
                name = " ".join(args) or name
            elif key == "counters":
                (k_text,) = args
                k = int(k_text)
            elif key == "alphabet":
                alphabet.extend(args)
            elif key == "states":
                states.extend(args)
            elif key == "initial":
                (initial,) = args
            elif key == "accepting":
                accepting.extend(args)
            elif key == "trans":
                src, letter, guard, dst, update = args
                transitions.append(Transition(
                    src, None if letter == LAMBDA_TOKEN else letter,
                    () if guard == "-" else tuple(int(ch) for ch in guard),
                    dst,
                    () if update == "-" else tuple(int(x) for x in update.split(","))))
            else:
                raise MachineError(f"unknown directive {key!r}")
        except ValueError as exc:
            raise MachineError(f"line {lineno}: {exc}: {raw!r}") from None
    if k is None:
        raise MachineError("missing 'counters' directive")
    if initial is None:
        raise MachineError("missing 'initial' directive")
    return CounterMachine(states, alphabet, k, transitions, initial, accepting, name)


@dataclass
class MachineBuilder:
    """Incremental construction helper used by the gadget and product builders."""

    alphabet: tuple
    counter_count: int = 0
    name: str = "M"
    states: list = field(default_factory=list)
    transitions: list = field(default_factory=list)
    accepting: set = field(default_factory=set)
    _known: set = field(default_factory=set)

    def state(self, q: str, accepting: bool = False) -> str:
        if q not in self._known:
            self._known.add(q)
            self.states.append(q)
        if accepting:
            self.accepting.add(q)
        return q

    def add(self, src: str, letter, dst: str, guard=(), update=()) -> None:
        self.state(src)
        self.state(dst)
        k = self.counter_count
        self.transitions.append(Transition(src, letter, guard or (0,) * k, dst, update or (0,) * k))

    def build(self, initial: str) -> CounterMachine:
        self.state(initial)
        return check_machine(CounterMachine(self.states, self.alphabet, self.counter_count,
                                            self.transitions, initial, self.accepting, self.name))
