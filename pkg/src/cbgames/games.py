"""Gale-Stewart and Wadge game engines and strategy transfer through codings.

Strategies are plain callables on histories:

* Gale-Stewart Player 1: history ``a1 b1 ... a(n-1) b(n-1)`` -> letter;
  Player 2: history ``a1 b1 ... an`` -> letter.
* Wadge Player 1: Player 2's moves so far (letters or the skip ``s``) -> letter;
  Player 2: Player 1's letters so far (non-empty) -> letter or ``s``.

Histories are passed as lists owned by the engine; strategies must not
mutate them.  :class:`TransducerStrategy` is the finite-memory refinement for
which plays are ultimately periodic and winners can be computed exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from .codings import (HK, PHI, THETA, CodingSpec, PrefixParser, SlotTable, data_position,
                      writer_parity_ok)
from .membership import SearchLimits, language_verdict
from .words import LazyWord, UPWord, iter_letters, prefix, up_normalize, up_project, up_shift

SKIP = "s"
START = "^"  # observation seen by a first mover before the opponent has moved


class StrategyError(ValueError):
    pass


class StrategyEscape(Exception):
    """The strategy being lifted left the prefix set of the coded words."""

    def __init__(self, player: int, position: int, expected, got):
        self.player, self.position, self.expected, self.got = player, position, expected, got
        super().__init__(f"player {player} leaves the coded set at position {position}: "
                         f"expected {expected}, got {got!r}")


class HorizonExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Undecided:
    reason: str

    def __str__(self):
        return f"undecided ({self.reason})"


Winner = int | Undecided


# ------------------------------------------------------------ transducers

@dataclass(frozen=True, eq=False)
class TransducerStrategy:
    """Deterministic Mealy machine: observes the opponent's last move, emits a move."""

    states: tuple
    initial: str
    out: dict       # (state, observation) -> emitted letter
    next: dict      # (state, observation) -> state
    name: str = "T"

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        if self.initial not in self.states:
            raise StrategyError(f"initial state {self.initial!r} not among states")
        for key, q in self.next.items():
            if q not in self.states or key[0] not in self.states:
                raise StrategyError(f"bad memory update {key} -> {q}")
        if set(self.out) != set(self.next):
            raise StrategyError("output and memory maps must have the same domain")

    def step(self, state, obs):
        try:
            return self.out[state, obs], self.next[state, obs]
        except KeyError:
            raise StrategyError(f"{self.name}: no move in state {state!r} on {obs!r}") from None

    def missing(self, observations) -> list:
        return [(q, o) for q in self.states for o in observations if (q, o) not in self.out]


def constant_transducer(letter, observations, name=None) -> TransducerStrategy:
    obs = tuple(observations)
    return TransducerStrategy(("q",), "q", {("q", o): letter for o in obs},
                              {("q", o): "q" for o in obs}, name or f"const-{letter}")


def copy_transducer(alphabet, name="copy") -> TransducerStrategy:
    """Repeat the opponent's last letter."""
    alphabet = tuple(alphabet)
    return TransducerStrategy(("q",), "q", {("q", a): a for a in alphabet},
                              {("q", a): "q" for a in alphabet}, name)


def _obs_gs1(h, j):
    return START if j == 0 else h[2 * j - 1]


def _obs_gs2(h, j):
    return h[2 * j]


def _obs_w1(h, j):
    return START if j == 0 else h[j - 1]


def _obs_w2(h, j):
    return h[j]


# role -> (observation j of a history, index of the move being asked for)
_ROLES = {
    "gs1": (_obs_gs1, lambda h: len(h) // 2),
    "gs2": (_obs_gs2, lambda h: len(h) // 2),
    "w1": (_obs_w1, len),
    "w2": (_obs_w2, lambda h: len(h) - 1),
}


class _Runner:
    """Incremental evaluation of a transducer along a growing history."""

    def __init__(self, t: TransducerStrategy, role: str):
        self.t = t
        self.obs, self.move_index = _ROLES[role]
        self.reset()

    def reset(self):
        self.memory = self.t.initial
        self.seen: list = []

    def __call__(self, history):
        m = self.move_index(history)
        if m < len(self.seen) or (self.seen and self.obs(history, len(self.seen) - 1) != self.seen[-1]):
            self.reset()
        for j in range(len(self.seen), m):
            o = self.obs(history, j)
            self.memory = self.t.step(self.memory, o)[1]
            self.seen.append(o)
        return self.t.step(self.memory, self.obs(history, m))[0]


def as_strategy(t, role: str):
    """Callable strategy for ``role`` in gs1, gs2, w1, w2; callables pass through."""
    if not isinstance(t, TransducerStrategy):
        return t
    if role not in _ROLES:
        raise ValueError(f"unknown role {role!r}")
    return _Runner(t, role)


# ------------------------------------------------------------ Gale-Stewart

@dataclass(frozen=True)
class GSPlay:
    """An interleaved play ``a1 b1 a2 b2 ...`` (a UP word or a finite prefix)."""

    word: UPWord | tuple

    def player_letters(self, player: int):
        if isinstance(self.word, UPWord):
            return up_project(self.word, player - 1)
        return tuple(self.word[player - 1::2])

    def prefix(self, n: int) -> tuple:
        return prefix(self.word, n)

    def __str__(self):
        return str(self.word) if isinstance(self.word, UPWord) else "".join(self.word)


def _check_move(a, alphabet, who):
    if alphabet is not None and a not in alphabet:
        raise StrategyError(f"{who} emitted {a!r}, outside {tuple(alphabet)}")


def play_gs(f1, f2, horizon: int, alphabet=None) -> GSPlay:
    """Play ``horizon`` rounds; the result has ``2 * horizon`` letters."""
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    f1, f2 = as_strategy(f1, "gs1"), as_strategy(f2, "gs2")
    history: list = []
    for _ in range(horizon):
        a = f1(history)
        _check_move(a, alphabet, "player 1")
        history.append(a)
        b = f2(history)
        _check_move(b, alphabet, "player 2")
        history.append(b)
    return GSPlay(tuple(history))


def play_gs_transducers(t1: TransducerStrategy, t2: TransducerStrategy, alphabet=None) -> GSPlay:
    """The exact infinite play of two transducers, as an ultimately periodic word."""
    m1, m2, obs = t1.initial, t2.initial, START
    seen: dict = {}
    letters: list = []
    while (m1, m2, obs) not in seen:
        seen[m1, m2, obs] = len(letters)
        a, m1 = t1.step(m1, obs)
        _check_move(a, alphabet, "player 1")
        b, m2 = t2.step(m2, a)
        _check_move(b, alphabet, "player 2")
        letters += [a, b]
        obs = b
    start = seen[m1, m2, obs]
    return GSPlay(up_normalize(UPWord(tuple(letters[:start]), tuple(letters[start:]))))


def _verdict(recognizer, w, lim):
    if isinstance(w, LazyWord):
        return recognizer(w)
    return language_verdict(recognizer, w, lim)


def gs_winner(play, winset, limits: SearchLimits | None = None) -> Winner:
    """1 if the play is in the winning set, 2 if it is not, else Undecided."""
    w = play.word if isinstance(play, GSPlay) else play
    if isinstance(w, tuple):
        return Undecided("finite play prefix")
    v = _verdict(winset, w, limits or SearchLimits())
    if v is None:
        return Undecided("membership unknown")
    return 1 if v else 2


# ------------------------------------------------------------------ Wadge

@dataclass(frozen=True)
class WadgeOutcome:
    a: UPWord | tuple
    moves2: UPWord | tuple        # Player 2's moves including skips
    b: UPWord | tuple             # Player 2's letters, skips removed
    b_infinite: bool | None
    winner: Winner


def _strip_skips(w: UPWord, skip) -> tuple:
    u = tuple(x for x in w.u if x != skip)
    v = tuple(x for x in w.v if x != skip)
    if not v:
        return u + v, False
    return up_normalize(UPWord(u, v)), True


def wadge_winner(a, b, b_infinite, L, L2, limits: SearchLimits | None = None) -> Winner:
    """Player 2 wins iff (a in L and b in L2) or (a not in L and b not in L2 and b infinite)."""
    if b_infinite is False:
        return 1
    if b_infinite is None:
        return Undecided("skip-starvation")
    lim = limits or SearchLimits()
    va, vb = _verdict(L, a, lim), _verdict(L2, b, lim)
    if va is None or vb is None:
        return Undecided("membership unknown")
    return 2 if va == vb else 1


def play_wadge(s1, s2, L, L2, horizon: int, limits: SearchLimits | None = None,
               alphabet1=None, alphabet2=None, skip=SKIP) -> WadgeOutcome:
    """Play W(L, L2).

    Two transducers give the exact infinite play (the joint state repeats);
    otherwise ``horizon`` rounds are played and the winner is Undecided.
    """
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    moves2_alphabet = None if alphabet2 is None else tuple(alphabet2) + (skip,)
    if isinstance(s1, TransducerStrategy) and isinstance(s2, TransducerStrategy):
        m1, m2, obs = s1.initial, s2.initial, START
        seen: dict = {}
        xs, ys = [], []
        while (m1, m2, obs) not in seen:
            seen[m1, m2, obs] = len(xs)
            a, m1 = s1.step(m1, obs)
            _check_move(a, alphabet1, "player 1")
            b, m2 = s2.step(m2, a)
            _check_move(b, moves2_alphabet, "player 2")
            xs.append(a)
            ys.append(b)
            obs = b
        i = seen[m1, m2, obs]
        a_word = up_normalize(UPWord(tuple(xs[:i]), tuple(xs[i:])))
        moves = up_normalize(UPWord(tuple(ys[:i]), tuple(ys[i:])))
        b_word, infinite = _strip_skips(moves, skip)
        return WadgeOutcome(a_word, moves, b_word, infinite,
                            wadge_winner(a_word, b_word, infinite, L, L2, limits))
    f1, f2 = as_strategy(s1, "w1"), as_strategy(s2, "w2")
    xs, ys = [], []
    for _ in range(horizon):
        a = f1(ys)
        _check_move(a, alphabet1, "player 1")
        xs.append(a)
        b = f2(xs)
        _check_move(b, moves2_alphabet, "player 2")
        ys.append(b)
    b_word = tuple(y for y in ys if y != skip)
    return WadgeOutcome(tuple(xs), tuple(ys), b_word, None, Undecided("skip-starvation"))


# -------------------------------------------------------------------- sums

def sum_membership(L, L2, L2_complement, X, X_plus, X_minus, w: UPWord,
                   limits: SearchLimits | None = None) -> bool | None:
    """Membership of ``w`` in L2 + L.

    The sum holds the words of L, plus every ``u a β`` with ``u`` over X and
    either ``a`` in X_plus and ``β`` in L2, or ``a`` in X_minus and ``β``
    outside L2.  ``L2_complement`` may be None, in which case the complement
    of L2's verdict is used.
    """
    X, X_plus, X_minus = set(X), set(X_plus), set(X_minus)
    if not X_plus or not X_minus or X_plus & X_minus or (X_plus | X_minus) & X:
        raise ValueError("X_plus and X_minus must be non-empty, disjoint and outside X")
    bad = w.letters - X - X_plus - X_minus
    if bad:
        raise ValueError(f"letters {sorted(bad)} outside X and the sum markers")
    lim = limits or SearchLimits()
    word = w.u + w.v
    i = next((j for j, a in enumerate(word) if a not in X), None)
    if i is None:
        return language_verdict(L, w, lim)
    beta = up_shift(w, i + 1)
    if word[i] in X_plus:
        return language_verdict(L2, beta, lim)
    if L2_complement is not None:
        return language_verdict(L2_complement, beta, lim)
    v = language_verdict(L2, beta, lim)
    return None if v is None else not v


def sum_language(L, L2, X, X_plus, X_minus, L2_complement=None, limits=None):
    """Predicate for L2 + L (see :func:`sum_membership`)."""
    return lambda w: sum_membership(L, L2, L2_complement, X, X_plus, X_minus, w, limits)


def empty_language(w) -> bool:
    return False


def full_language(w) -> bool:
    return True


def copy_into_sum_strategy(alphabet) -> TransducerStrategy:
    """Player 2 copies Player 1: wins W(L, ∅ + L) for every L over ``alphabet``."""
    return copy_transducer(alphabet, "copy-into-sum")


# ------------------------------------------------------ Gale-Stewart lifts

def _require_parity(spec: CodingSpec):
    if not writer_parity_ok(spec):
        raise StrategyError(f"{spec} does not hand x(n) to the writer of x(n); use an even parameter")


class CodedGSStrategy:
    """An original-game strategy played in the coded game.

    Fillers are written as the coding prescribes; at a data slot the original
    strategy answers the decoded history.  Once the coded history leaves the
    prefix set of the coded words the data moves default to the first base
    letter (any total continuation would do).
    """

    def __init__(self, spec: CodingSpec, player: int, strategy):
        _require_parity(spec)
        self.spec, self.player = spec, player
        self.strategy = as_strategy(strategy, f"gs{player}")
        self.table = SlotTable(spec)
        self._reset()

    def _reset(self):
        self.parser = PrefixParser(self.spec.kind, self.spec.param, self.spec.base)
        self.read = 0
        self.decoded: list = []

    def __call__(self, coded):
        if len(coded) < self.read:
            self._reset()
        for a in coded[self.read:]:
            before = self.parser.data_count
            if self.parser.feed(a) and self.parser.data_count > before:
                self.decoded.append(a)
        self.read = len(coded)
        slot = self.table[len(coded) + 1]
        if not isinstance(slot, int):
            return slot
        if not self.parser.alive:
            return self.spec.base[0]
        return self.strategy(self.decoded[:slot - 1])


def encode_gs_strategy(spec: CodingSpec, player: int, strategy) -> CodedGSStrategy:
    return CodedGSStrategy(spec, player, strategy)


class LiftedGSStrategy:
    """Original-game strategy obtained from a coded-game strategy ``outer``.

    The lift keeps a simulated coded play: its own filler moves are asked
    from ``outer`` and must match the coding, the opponent's fillers are
    forced, and the opponent's data letters are read off the real history.
    ``sync_points`` lists ``(n, coded length)`` after each data letter.
    """

    def __init__(self, spec: CodingSpec, player: int, outer, max_coded_length: int = 1 << 16):
        _require_parity(spec)
        self.spec, self.player, self.outer = spec, player, outer
        self.max_coded_length = max_coded_length
        self.table = SlotTable(spec)
        self._reset()

    def _reset(self):
        self.coded: list = []
        self.data: list = []
        self.sync_points: list = []

    @property
    def coded_play(self) -> tuple:
        return tuple(self.coded)

    def __call__(self, history):
        n = len(history) + 1
        if (n % 2 == 1) != (self.player == 1):
            raise StrategyError(f"player {self.player} asked to write x({n})")
        if len(self.data) >= n or list(history[:len(self.data)]) != self.data:
            self._reset()
        while True:
            i = len(self.coded) + 1
            if i > self.max_coded_length:
                raise HorizonExceeded(f"coded play longer than {self.max_coded_length}")
            slot = self.table[i]
            writer = 1 if i % 2 else 2
            if writer == self.player:
                move = self.outer(self.coded)
                if isinstance(slot, int):
                    if move not in self.spec.base:
                        raise StrategyEscape(self.player, i, "a data letter", move)
                elif move != slot:
                    raise StrategyEscape(self.player, i, slot, move)
            else:
                move = history[slot - 1] if isinstance(slot, int) else slot
            self.coded.append(move)
            if isinstance(slot, int):
                self.data.append(move)
                self.sync_points.append((slot, i))
                if slot == n:
                    return move


def lift_gs(spec: CodingSpec, player: int, outer, max_coded_length: int = 1 << 16) -> LiftedGSStrategy:
    return LiftedGSStrategy(spec, player, as_strategy(outer, f"gs{player}"), max_coded_length)


# ------------------------------------------------------------ Wadge lifts

@dataclass
class EscapeNotice:
    """The lifted coded strategy left the coded closed set; the lift switched sides."""

    coded_position: int
    real_round: int
    marker: str


# escaping into the complement of the coded words: theta and phi put the
# escaped word surely outside the coded set, hk surely inside it
_ESCAPE_SIDE = {THETA: "plus", PHI: "plus", HK: "minus"}


@dataclass
class _WadgeLiftBase:
    spec1: CodingSpec
    spec2: CodingSpec
    outer: Callable
    markers: tuple | None = None      # (plus marker, minus marker)
    fill: str | None = None
    max_coded_length: int = 1 << 16
    skip: str = SKIP
    notice: EscapeNotice | None = None
    coded1: list = field(default_factory=list)
    coded2: list = field(default_factory=list)

    def _escape(self, position: int, real_round: int, player: int, got):
        if self.markers is None:
            raise StrategyEscape(player, position, "a letter inside the coded set", got)
        kind = self.spec1.kind
        marker = self.markers[0] if _ESCAPE_SIDE[kind] == "plus" else self.markers[1]
        self.notice = EscapeNotice(position, real_round, marker)

    def _after_escape(self, emitted_marker: bool):
        return self.notice.marker if not emitted_marker else self.fill


class LiftedWadgeP2(_WadgeLiftBase):
    """Player 2 in W(L, ∅ + L2) from Player 2 in the coded game.

    Coded Player 1 writes the coding of the real letters as far as they are
    known; each data letter of coded Player 2 is queued and the lift emits at
    most one per real round (skipping otherwise), so after n real letters it
    has written p <= n letters.
    """

    def __init__(self, spec1, spec2, outer, **kw):
        super().__init__(spec1, spec2, outer, **kw)
        self.table1 = SlotTable(spec1)
        self.parser2 = PrefixParser(spec2.kind, spec2.param, spec2.base)
        self.queue: list = []
        self.emitted: list = []
        self.marker_sent = False
        if self.fill is None:
            self.fill = spec2.base[0]

    def __call__(self, xs):
        n = len(xs)
        if n != len(self.emitted) + 1:
            raise StrategyError("lifted Wadge strategies must be called once per round, in order")
        if self.notice is None:
            limit = data_position(self.spec1, n + 1) - 1
            while len(self.coded1) < limit and self.notice is None:
                i = len(self.coded1) + 1
                if i > self.max_coded_length:
                    raise HorizonExceeded(f"coded play longer than {self.max_coded_length}")
                slot = self.table1[i]
                self.coded1.append(xs[slot - 1] if isinstance(slot, int) else slot)
                move = self.outer(self.coded1)
                self.coded2.append(move)
                if move == self.skip:
                    continue
                before = self.parser2.data_count
                if not self.parser2.feed(move):
                    self._escape(i, n, 2, move)
                elif self.parser2.data_count > before:
                    self.queue.append(move)
        if self.notice is not None:
            out = self._after_escape(self.marker_sent)
            self.marker_sent = True
        elif self.queue:
            out = self.queue.pop(0)
        else:
            out = self.skip
        self.emitted.append(out)
        return out


class LiftedWadgeP1(_WadgeLiftBase):
    """Player 1 in W(∅ + L, L2) from Player 1 in the coded game.

    Coded Player 2 writes the coding of the real Player 2 letters known so
    far and skips when it runs out.  The coded round in which coded Player 1
    writes a data letter is answered by coded Player 2 only at the next real
    round, once the real reply is known.
    """

    def __init__(self, spec1, spec2, outer, **kw):
        super().__init__(spec1, spec2, outer, **kw)
        self.table2 = SlotTable(spec2)
        self.parser1 = PrefixParser(spec1.kind, spec1.param, spec1.base)
        self.written2 = 0          # letters of the coding of Player 2's word already played
        self.pending_reply = False
        self.emitted: list = []
        self.marker_sent = False
        if self.fill is None:
            self.fill = spec1.base[0]

    def _reply(self, ys2):
        known = data_position(self.spec2, len(ys2) + 1) - 1
        i = self.written2 + 1
        if i <= known:
            slot = self.table2[i]
            self.coded2.append(ys2[slot - 1] if isinstance(slot, int) else slot)
            self.written2 = i
        else:
            self.coded2.append(self.skip)

    def __call__(self, ys):
        n = len(ys) + 1
        if n != len(self.emitted) + 1:
            raise StrategyError("lifted Wadge strategies must be called once per round, in order")
        ys2 = [y for y in ys if y != self.skip and y not in (self.markers or ())]
        if self.notice is None:
            if self.pending_reply:
                self._reply(ys2)
                self.pending_reply = False
            while self.notice is None:
                i = len(self.coded1) + 1
                if i > self.max_coded_length:
                    raise HorizonExceeded(f"coded play longer than {self.max_coded_length}")
                move = self.outer(self.coded2)
                self.coded1.append(move)
                before = self.parser1.data_count
                if not self.parser1.feed(move):
                    self._escape(i, n, 1, move)
                    break
                if self.parser1.data_count > before:
                    self.pending_reply = True
                    self.emitted.append(move)
                    return move
                self._reply(ys2)
        out = self._after_escape(self.marker_sent)
        self.marker_sent = True
        self.emitted.append(out)
        return out


def lift_wadge(spec1: CodingSpec, spec2: CodingSpec, player: int, outer, markers=None,
               fill=None, max_coded_length: int = 1 << 16):
    """Lift a coded Wadge strategy of ``player`` to the original alphabets.

    ``spec1``/``spec2`` code Player 1's and Player 2's words (same kind and
    parameter, possibly different base alphabets).  With ``markers`` =
    (plus, minus) the lifted strategy plays in the sum game and answers an
    escape by writing the marker and then ``fill`` forever; without markers
    an escape raises :class:`StrategyEscape`.
    """
    if spec1.kind != spec2.kind or spec1.param != spec2.param:
        raise StrategyError("both sides must use the same coding")
    if spec1.kind == "h":
        raise StrategyError("the Wadge reductions use theta, hk or phi")
    cls = LiftedWadgeP1 if player == 1 else LiftedWadgeP2
    role = "w1" if player == 1 else "w2"
    return cls(spec1, spec2, as_strategy(outer, role), markers=markers, fill=fill,
               max_coded_length=max_coded_length)


class CodedWadgeP2:
    """Player 2's original strategy played in the coded Wadge game.

    Whenever coded Player 1 completes a data letter, the original strategy
    answers the decoded word; its letters are coded and written out as fast
    as the coding allows, skipping when nothing is known yet.
    """

    def __init__(self, spec1: CodingSpec, spec2: CodingSpec, strategy, skip=SKIP):
        self.spec1, self.spec2, self.skip = spec1, spec2, skip
        self.strategy = as_strategy(strategy, "w2")
        self.table2 = SlotTable(spec2)
        self.parser1 = PrefixParser(spec1.kind, spec1.param, spec1.base)
        self.read = 0
        self.decoded: list = []
        self.answers: list = []
        self.written = 0

    def __call__(self, coded1):
        for a in coded1[self.read:]:
            before = self.parser1.data_count
            if self.parser1.feed(a) and self.parser1.data_count > before:
                self.decoded.append(a)
                b = self.strategy(self.decoded)
                if b != self.skip:
                    self.answers.append(b)
        self.read = len(coded1)
        known = data_position(self.spec2, len(self.answers) + 1) - 1
        if self.written < known:
            self.written += 1
            slot = self.table2[self.written]
            return self.answers[slot - 1] if isinstance(slot, int) else slot
        return self.skip


def compose_lifts(specs: Sequence[CodingSpec], player: int, outer, max_coded_length: int = 1 << 16):
    """Lift a Gale-Stewart strategy through a chain of codings.

    ``specs`` lists the codings in the order they are applied to the
    original word (e.g. theta, then h over the theta alphabet, then phi).
    """
    strategy = as_strategy(outer, f"gs{player}")
    for spec in reversed(specs):
        strategy = LiftedGSStrategy(spec, player, strategy, max_coded_length)
    return strategy


# --------------------------------------------------------- strategy files

def dump_strategy(t: TransducerStrategy, header: Sequence[str] = ()) -> str:
    lines = list(header) + [f"strategy {t.name}", "states " + " ".join(t.states), f"initial {t.initial}"]
    for (q, o), a in t.out.items():
        lines.append(f"out {q} {o} {a}")
    for (q, o), r in t.next.items():
        lines.append(f"next {q} {o} {r}")
    return "\n".join(lines) + "\n"


@dataclass
class StrategyFile:
    transducer: TransducerStrategy
    lift: tuple | None = None   # (game, reduction, param, player) for lifted strategies


def parse_strategy(text: str) -> StrategyFile:
    """Read the strategy format: ``states``, ``initial``, ``out q o a``, ``next q o q'`` lines."""
    name, states, initial, lift = "T", [], None, None
    out, nxt = {}, {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, *args = line.split()
        try:
            if key == "strategy":
                name = " ".join(args) or name
            elif key == "states":
                states.extend(args)
            elif key == "initial":
                (initial,) = args
            elif key == "out":
                q, o, a = args
                out[q, o] = a
            elif key == "next":
                q, o, r = args
                nxt[q, o] = r
            elif key == "lift":
                game, reduction, param, player = args
                lift = (game, reduction, int(param), int(player))
            else:
                raise StrategyError(f"unknown directive {key!r}")
        except ValueError as exc:
            raise StrategyError(f"line {lineno}: {exc}: {raw!r}") from None
    if initial is None:
        raise StrategyError("missing 'initial' directive")
    return StrategyFile(TransducerStrategy(states, initial, out, nxt, name), lift)


def iter_play(play: GSPlay):
    return iter_letters(play.word)
