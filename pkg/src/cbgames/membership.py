"""Acceptance of ultimately periodic words.

The search space is the product of machine configurations with the *phase*
of the input word: phase ``p`` means ``p`` letters of ``u + v`` have been
read, with ``p`` wrapping from ``|u|+|v|`` back to ``|u|``.  An accepting run
exists iff some reachable cycle of this graph reads at least one letter and
visits an accepting state.  For 0-counter machines the graph is finite and
the answer exact.  With counters the graph can be infinite, so exploration is
capped and the verdict may be incomplete; an ``Accept`` always carries a
lasso certificate that :func:`check_certificate` replays independently.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import networkx as nx

from .machines import Configuration, CounterMachine, RunPrefix, successors
from .words import UPWord


class AlphabetMismatch(ValueError):
    pass


@dataclass(frozen=True)
class SearchLimits:
    max_steps: int = 200_000  # explored search nodes
    max_counter: int = 64
    max_lambda_chain: int = 16

    def __post_init__(self):
        if min(self.max_steps, self.max_counter, self.max_lambda_chain) < 1:
            raise ValueError("search limits must be >= 1")


DEFAULT_LIMITS = SearchLimits()


@dataclass(frozen=True)
class LassoCertificate:
    stem: RunPrefix
    loop: RunPrefix
    loop_input_phase: int
    accepting_witness: str


@dataclass(frozen=True)
class Accept:
    certificate: LassoCertificate
    label = "ACCEPT"


@dataclass(frozen=True)
class Reject:
    complete: bool

    @property
    def label(self) -> str:
        return "REJECT" if self.complete else "REJECT?"


@dataclass(frozen=True)
class Unknown:
    reason: str
    label = "UNKNOWN"


MembershipVerdict = Accept | Reject | Unknown


def verdict_bool(v: MembershipVerdict) -> bool | None:
    """True for Accept, False for a complete Reject, None otherwise."""
    if isinstance(v, Accept):
        return True
    if isinstance(v, Reject) and v.complete:
        return False
    return None


def _check_alphabet(m: CounterMachine, w: UPWord) -> None:
    extra = w.letters - set(m.alphabet)
    if extra:
        raise AlphabetMismatch(f"word letters {sorted(extra)} not in alphabet of {m.name}")


class _Phases:
    def __init__(self, w: UPWord):
        self.word = w.u + w.v
        self.loop_start = len(w.u)

    def letter(self, p: int) -> str:
        return self.word[p]

    def advance(self, p: int) -> int:
        p += 1
        return self.loop_start if p == len(self.word) else p


@dataclass
class _Exploration:
    graph: nx.DiGraph
    root: tuple
    truncated_by: set


def _explore(m: CounterMachine, w: UPWord, lim: SearchLimits | None) -> _Exploration:
    """Breadth-first construction of the reachable (configuration, phase) graph.

    Nodes are ``(Configuration, phase, lam)`` where ``lam`` counts lambda steps
    since the last letter; it is pinned to 0 for 0-counter machines, whose
    graph is finite anyway.  Edge attribute ``step`` is the letter or None.
    """
    phases = _Phases(w)
    track_lambda = m.counter_count > 0 and lim is not None
    root = (m.initial_configuration, 0, 0)
    g = nx.DiGraph()
    g.add_node(root)
    truncated: set = set()
    queue = deque([root])
    while queue:
        node = queue.popleft()
        config, phase, lam = node
        a = phases.letter(phase)
        moves = [(a, d, phases.advance(phase), 0) for d in successors(m, config, a)]
        for d in successors(m, config, None):
            moves.append((None, d, phase, lam + 1 if track_lambda else 0))
        for step, d, p2, lam2 in moves:
            if lim is not None:
                if d.counters and max(d.counters) > lim.max_counter:
                    truncated.add("max_counter")
                    continue
                if lam2 > lim.max_lambda_chain:
                    truncated.add("max_lambda_chain")
                    continue
            nxt = (d, p2, lam2)
            if nxt not in g:
                if lim is not None and g.number_of_nodes() >= lim.max_steps:
                    truncated.add("max_steps")
                    continue
                g.add_node(nxt)
                queue.append(nxt)
            # a letter step and a lambda step can join the same two nodes; keep the letter
            if step is not None or not g.has_edge(node, nxt):
                g.add_edge(node, nxt, step=step)
    return _Exploration(g, root, truncated)


def _path(g: nx.DiGraph, source, target, allowed=None) -> list:
    """Shortest node path source -> target (BFS), optionally inside ``allowed``."""
    if source == target:
        return [source]
    parent = {source: None}
    queue = deque([source])
    while queue:
        x = queue.popleft()
        for y in g.successors(x):
            if y in parent or (allowed is not None and y not in allowed):
                continue
            parent[y] = x
            if y == target:
                out = [y]
                while parent[out[-1]] is not None:
                    out.append(parent[out[-1]])
                return out[::-1]
            queue.append(y)
    raise ValueError("no path")


def _run_prefix(g: nx.DiGraph, nodes: list) -> RunPrefix:
    steps = tuple(g.edges[x, y]["step"] for x, y in zip(nodes, nodes[1:]))
    return RunPrefix(tuple(n[0] for n in nodes), steps)


def _find_lasso(m: CounterMachine, ex: _Exploration) -> LassoCertificate | None:
    g = ex.graph
    for comp in nx.strongly_connected_components(g):
        acc = sorted((n for n in comp if n[0].state in m.accepting), key=repr)
        if not acc:
            continue
        letter_edge = next(((x, y) for x in sorted(comp, key=repr) for y in g.successors(x)
                            if y in comp and g.edges[x, y]["step"] is not None), None)
        if letter_edge is None:
            continue
        f = acc[0]
        x, y = letter_edge
        stem = _path(g, ex.root, f)
        loop = _path(g, f, x, comp) + _path(g, y, f, comp)
        return LassoCertificate(_run_prefix(g, stem), _run_prefix(g, loop), f[1], f[0].state)
    return None


def accepts_up_buchi(m: CounterMachine, w: UPWord) -> bool:
    """Exact membership of ``w`` in the language of a 0-counter Büchi machine."""
    if m.counter_count != 0:
        raise ValueError(f"{m.name} has {m.counter_count} counters; use accepts_up_bounded")
    _check_alphabet(m, w)
    return _find_lasso(m, _explore(m, w, None)) is not None


def accepts_up_bounded(m: CounterMachine, w: UPWord,
                       lim: SearchLimits = DEFAULT_LIMITS) -> MembershipVerdict:
    """Certificate-sound, explicitly incomplete membership for k-counter machines.

    * ``Accept(cert)``: an accepting lasso was found (verified by replay).
    * ``Reject(complete=True)``: the reachable graph was exhausted without any
      cap being hit, so no accepting run exists.
    * ``Reject(complete=False)``: exhausted within the counter/lambda caps;
      runs that exceed them were not examined.
    * ``Unknown``: the node budget ran out first.
    """
    _check_alphabet(m, w)
    # the 0-counter product is finite: explore it whole
    ex = _explore(m, w, lim if m.counter_count else None)
    cert = _find_lasso(m, ex)
    if cert is not None:
        if not check_certificate(m, w, cert):  # pragma: no cover - internal consistency guard
            raise AssertionError("lasso search produced an invalid certificate")
        return Accept(cert)
    if "max_steps" in ex.truncated_by:
        return Unknown("max_steps")
    return Reject(complete=not ex.truncated_by)


def check_certificate(m: CounterMachine, w: UPWord, cert: LassoCertificate) -> bool:
    """Replay a lasso certificate against ``m`` and ``w``."""
    phases = _Phases(w)

    def walk(run: RunPrefix, config: Configuration, phase: int):
        if not run.configurations or run.configurations[0] != config:
            return None
        if len(run.configurations) != len(run.step_letters) + 1:
            return None
        for step, nxt in zip(run.step_letters, run.configurations[1:]):
            if step is not None:
                if step != phases.letter(phase):
                    return None
                phase = phases.advance(phase)
            if nxt not in successors(m, config, step):
                return None
            config = nxt
        return config, phase

    end = walk(cert.stem, m.initial_configuration, 0)
    if end is None or end[1] != cert.loop_input_phase:
        return False
    loop_end = walk(cert.loop, end[0], end[1])
    if loop_end != end:
        return False
    if not cert.loop.consumed or cert.loop_input_phase < phases.loop_start:
        return False
    if cert.accepting_witness not in m.accepting:
        return False
    return any(c.state == cert.accepting_witness for c in cert.loop.configurations)


def prefix_feasible(m: CounterMachine, p, lim: SearchLimits = DEFAULT_LIMITS) -> bool | None:
    """Whether some run prefix consumes exactly ``p``; None when a cap cut the search."""
    p = tuple(p)
    cut = False
    explored = 0
    frontier = {m.initial_configuration}
    for i in range(len(p) + 1):
        # lambda closure, breadth-first so each configuration gets its shortest chain
        layer = {c: 0 for c in frontier}
        queue = deque(frontier)
        while queue:
            c = queue.popleft()
            for d in successors(m, c, None):
                if layer[c] + 1 > lim.max_lambda_chain or max(d.counters, default=0) > lim.max_counter:
                    cut = True
                elif d not in layer:
                    layer[d] = layer[c] + 1
                    queue.append(d)
        explored += len(layer)
        if explored > lim.max_steps:
            return None
        if i == len(p):
            return True
        frontier = set()
        for c in layer:
            for d in successors(m, c, p[i]):
                if max(d.counters, default=0) > lim.max_counter:
                    cut = True
                else:
                    frontier.add(d)
        if not frontier:
            return None if cut else False
    return True  # pragma: no cover


def oracle_accepts(m: CounterMachine, w: UPWord, depth: int, max_nodes: int = 1_000_000) -> bool | None:
    """Brute-force validator: enumerate run paths of length <= ``depth``.

    Each path is a sequence of (configuration, phase) nodes in which a node
    may occur at most three times (enough for a simple stem followed by the
    two simple halves of a loop through an accepting node and a letter
    step).  True means a path closed an accepting, letter-reading cycle;
    False means every path was enumerated without one; None means the depth
    or node budget cut the enumeration.
    """
    _check_alphabet(m, w)
    phases = _Phases(w)
    root = (m.initial_configuration, 0)
    explored = 0
    cut = False
    stack = [([root], [])]
    while stack:
        nodes, steps = stack.pop()
        explored += 1
        if explored > max_nodes:
            return None
        last = nodes[-1]
        for i in range(len(nodes) - 1):
            if nodes[i] == last:
                if any(s is not None for s in steps[i:]) and any(
                        n[0].state in m.accepting for n in nodes[i:]):
                    return True
        config, phase = last
        a = phases.letter(phase)
        nexts = [((d, phases.advance(phase)), a) for d in successors(m, config, a)]
        nexts += [((d, phase), None) for d in successors(m, config, None)]
        nexts = [(node, step) for node, step in nexts if nodes.count(node) < 3]
        if nexts and len(steps) >= depth:
            cut = True
            continue
        for node, step in nexts:
            stack.append((nodes + [node], steps + [step]))
    return None if cut else False


def language_verdict(recognizer, w: UPWord, lim: SearchLimits = DEFAULT_LIMITS) -> bool | None:
    """Membership through a machine or a predicate; None when undecided."""
    if isinstance(recognizer, CounterMachine):
        if recognizer.counter_count == 0:
            return accepts_up_buchi(recognizer, w)
        return verdict_bool(accepts_up_bounded(recognizer, w, lim))
    return recognizer(w)
