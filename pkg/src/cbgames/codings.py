"""The four ω-word codings, their prefix classifiers and gadget languages.

Codings (``x`` over a base alphabet, ``x(n)`` its n-th letter):

* ``theta`` (parameter S):  x(1) E^S x(2) E^(S^2) x(3) E^(S^3) ...
* ``hk``    (parameter K):  A C^K x(1) B  C^(K^2) A C^(K^2) x(2) B  C^(K^3) A C^(K^3) x(3) B ...
* ``h``     (parameter K):  C^K C A x(1)  C^(K^2) A C^(K^2) C x(2) B  C^(K^3) A C^(K^3) C A x(3) ...
* ``phi``   (parameter K):  F^K x(1) F^K x(2) F^K x(3) ...

In ``h`` every even block is ``C^(K^n) A C^(K^n) C x(n) B`` and every odd
block after the first is ``C^(K^n) A C^(K^n) C A x(n)``.

Gadget languages over Γ1 = Γ ∪ {A, B, C}: ``H`` is the regular relaxation of
``h(Γ^ω)`` in which every C-block before an ``A`` has even non-zero length and
every C-block before ``C x`` / ``C A x`` does too; ``V = Pref(H) ∩ Γ1*.C``;
``U`` holds the even-length words whose last letter is the first to leave
Pref(H).  ``L'`` (theta) and ``L''`` (phi) collect the words whose first
departure from the prefixes of the coded set happens at an even position.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator

from . import constructions
from .machines import CounterMachine, MachineBuilder
from .membership import SearchLimits, language_verdict
from .words import LazyWord, UPWord, WordError, iter_letters, up_normalize

THETA, HK, H, PHI = "theta", "hk", "h", "phi"
KINDS = (THETA, HK, H, PHI)
EXTENSION_LETTERS = {THETA: ("E",), HK: ("A", "B", "C"), H: ("A", "B", "C"), PHI: ("F",)}

FIRST_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19)

# hard cap on letters scanned when looking for the first exit of a UP word
SCAN_CAP = 2_000_000


class CodingError(ValueError):
    pass


@dataclass(frozen=True)
class CodingSpec:
    kind: str
    param: int
    base: tuple = ("a", "b")

    def __post_init__(self):
        if self.kind not in KINDS:
            raise CodingError(f"unknown coding {self.kind!r}; expected one of {KINDS}")
        if self.param < 1:
            raise CodingError("coding parameter must be >= 1")
        object.__setattr__(self, "base", tuple(self.base))
        clash = set(self.base) & set(self.extension)
        if clash:
            raise CodingError(f"base letters {sorted(clash)} collide with coding letters")

    @property
    def extension(self) -> tuple:
        return EXTENSION_LETTERS[self.kind]

    @property
    def alphabet(self) -> tuple:
        return self.base + self.extension

    def __str__(self):
        return f"{self.kind}({self.param})"


def K_default(primes: int = 8) -> int:
    """Product of the first ``primes`` prime numbers (9699690 for eight)."""
    return math.prod(FIRST_PRIMES[:primes])


def min_even_S(base_alphabet) -> int:
    """Smallest even S >= (3k)^3 with k = |Σ| + 2."""
    k = len(tuple(base_alphabet)) + 2
    s = (3 * k) ** 3
    return s + (s % 2)


# ------------------------------------------------------------------ slots
#
# A coding is a sequence of slots: an int n marks the position of x(n), a
# string is a filler letter that does not depend on x.

def _blocks(spec: CodingSpec) -> Iterator[list]:
    P = spec.param
    n = 1
    while True:
        if spec.kind == THETA:
            yield [n] + ["E"] * (P ** n)
        elif spec.kind == PHI:
            yield ["F"] * P + [n]
        elif spec.kind == HK:
            if n == 1:
                yield ["A"] + ["C"] * P + [1, "B"]
            else:
                run = ["C"] * (P ** n)
                yield run + ["A"] + run + [n, "B"]
        else:
            if n == 1:
                yield ["C"] * (P + 1) + ["A", 1]
            else:
                run = ["C"] * (P ** n)
                tail = [n, "B"] if n % 2 == 0 else ["A", n]
                yield run + ["A"] + run + ["C"] + tail
        n += 1


def slots(spec: CodingSpec) -> Iterator:
    for block in _blocks(spec):
        yield from block


class SlotTable:
    """Random access to the slots of a coding (1-based), expanded on demand."""

    def __init__(self, spec: CodingSpec):
        self.spec = spec
        self._iter = slots(spec)
        self._cache: list = []

    def __getitem__(self, i: int):
        while len(self._cache) < i:
            self._cache.append(next(self._iter))
        return self._cache[i - 1]


def writer_parity_ok(spec: CodingSpec) -> bool:
    """Whether x(n) always lands on a position of the same parity as n.

    This is what makes the coded Gale-Stewart game hand x(n) to the player
    who writes x(n) in the original game.
    """
    if spec.kind == HK:
        return False
    return spec.param % 2 == 0


def _check_letter(spec: CodingSpec, a) -> None:
    if a not in spec.base:
        raise CodingError(f"letter {a!r} is not in the base alphabet {spec.base}")


def encode(spec: CodingSpec, x) -> LazyWord:
    """The coded word of ``x`` (a UPWord, LazyWord or any infinite iterable)."""
    if isinstance(x, UPWord):
        for a in x.letters:
            _check_letter(spec, a)

    def stream():
        source = iter_letters(x)
        data: list = []
        for slot in slots(spec):
            if isinstance(slot, int):
                a = next(source)
                _check_letter(spec, a)
                data.append(a)
                yield a
            else:
                yield slot

    return LazyWord(stream=stream, preimage=x, coding=spec, description=f"{spec}[{x}]")


def encode_finite(spec: CodingSpec, letters) -> tuple:
    """Coded prefix up to and including the data letter ``x(len(letters))``."""
    letters = tuple(letters)
    out: list = []
    if not letters:
        return ()
    for slot in slots(spec):
        if isinstance(slot, int):
            _check_letter(spec, letters[slot - 1])
            out.append(letters[slot - 1])
            if slot == len(letters):
                return tuple(out)
        else:
            out.append(slot)
    raise AssertionError("unreachable")  # pragma: no cover


def encode_h_by_rules(K: int, x, base=("a", "b")) -> LazyWord:
    """``h(x)`` obtained by rewriting the ``h_K(x)`` stream.

    The rewrite drops the leading A, inserts ``C A`` before every odd-indexed
    data letter and drops the B that follows it, and inserts ``C`` before
    every even-indexed data letter.  The insert/drop rules are applied from
    the first data letter on.
    """
    source_spec = CodingSpec(HK, K, base)
    spec = CodingSpec(H, K, base)
    source = encode(source_spec, x)

    def stream():
        count = 0
        drop_b = False
        for i, a in enumerate(source, 1):
            if i == 1 and a == "A":
                continue
            if a in spec.base:
                count += 1
                if count % 2:
                    yield "C"
                    yield "A"
                    drop_b = True
                else:
                    yield "C"
                yield a
            elif a == "B" and drop_b:
                drop_b = False
            else:
                yield a

    return LazyWord(stream=stream, preimage=x, coding=spec, description=f"rules-h({K})[{x}]")


def _geometric(P: int, lo: int, hi: int) -> int:
    """Sum of P^i for lo <= i <= hi (0 when hi < lo)."""
    if hi < lo:
        return 0
    if P == 1:
        return hi - lo + 1
    return (P ** (hi + 1) - P ** lo) // (P - 1)


def data_position(spec: CodingSpec, n: int) -> int:
    """1-based position of ``x(n)`` in the coded word (closed form)."""
    if n < 1:
        raise ValueError("data letters are indexed from 1")
    P = spec.param
    if spec.kind == THETA:
        return n + _geometric(P, 1, n - 1)
    if spec.kind == PHI:
        return n * (P + 1)
    if spec.kind == HK:
        if n == 1:
            return P + 2
        # block 1 has P+3 letters, block i >= 2 has 2 P^i + 3
        before = (P + 3) + 2 * _geometric(P, 2, n - 1) + 3 * (n - 2)
        return before + 2 * P ** n + 2
    if n == 1:
        return P + 3
    # block 1 has P+3 letters, block i >= 2 has 2 P^i + 4
    before = (P + 3) + 2 * _geometric(P, 2, n - 1) + 4 * (n - 2)
    return before + 2 * P ** n + (3 if n % 2 == 0 else 4)


def decode_prefix(spec: CodingSpec, coded) -> tuple:
    """The data letters found at the data positions of a coded prefix."""
    out = []
    n = 1
    coded = tuple(coded)
    while True:
        pos = data_position(spec, n)
        if pos > len(coded):
            return tuple(out)
        out.append(coded[pos - 1])
        n += 1


# ------------------------------------------------------- prefix classifiers

@dataclass(frozen=True)
class _Run:
    filler: str
    exact: int | None = None      # required length, or None for a parity rule
    parity: int = 0
    minimum: int = 1

    def can_grow(self, m: int) -> bool:
        return self.exact is None or m <= self.exact

    def ok(self, m: int) -> bool:
        if self.exact is not None:
            return m == self.exact
        return m >= self.minimum and m % 2 == self.parity

    def key(self, m: int):
        if self.exact is not None:
            return m
        return m if m <= self.minimum else (self.minimum + 1 + m % 2)


_DATA = object()


def _template(kind: str, P: int | None, n: int) -> list:
    if kind == THETA:
        return [_DATA, _Run("E", P ** n)]
    if kind == PHI:
        return [_Run("F", P), _DATA]
    if kind == HK:
        if n == 1:
            return ["A", _Run("C", P), _DATA, "B"]
        return [_Run("C", P ** n), "A", _Run("C", P ** n), _DATA, "B"]
    if kind == H:
        if n == 1:
            return [_Run("C", P + 1), "A", _DATA]
        head = [_Run("C", P ** n), "A", _Run("C", P ** n + 1)]
        return head + ([_DATA, "B"] if n % 2 == 0 else ["A", _DATA])
    # the regular relaxation H: even non-null n_i, n'_i
    even, odd = _Run("C", None, 0, 2), _Run("C", None, 1, 3)
    if n == 1:
        return [odd, "A", _DATA]
    return [even, "A", odd] + ([_DATA, "B"] if n % 2 == 0 else ["A", _DATA])


def _canonical_block(kind: str, P: int | None, n: int) -> int:
    """Block index with the same template as block n, from a finite range when one exists."""
    if kind == PHI:
        return 1
    if kind == "H":
        return 1 if n == 1 else 2 + n % 2
    if P != 1 or n == 1:
        return n
    return 2 if kind == HK else 2 + n % 2


class PrefixParser:
    """Incremental membership test for the prefix set of a coded language.

    ``kind`` is one of the coding kinds or ``"H"`` for the regular gadget
    language.  :meth:`feed` returns False from the first letter that leaves
    the prefix set on.
    """

    def __init__(self, kind: str, param: int | None, base=None):
        self.kind = kind
        self.param = param
        self.base = None if base is None else frozenset(base)
        self._fillers = frozenset("EF") if kind in (THETA, PHI) else frozenset("ABC")
        self.block = 1
        self.elems = _template(kind, param, 1)
        self.idx = 0
        self.run = 0
        self.length = 0
        self.data_count = 0
        self.alive = True

    def _is_data(self, a) -> bool:
        if self.base is not None:
            return a in self.base
        return a not in self._fillers

    def _advance(self) -> None:
        self.idx += 1
        self.run = 0
        if self.idx == len(self.elems):
            self.block += 1
            self.elems = _template(self.kind, self.param, self.block)
            self.idx = 0

    def feed(self, a) -> bool:
        if not self.alive:
            return False
        self.length += 1
        while True:
            el = self.elems[self.idx]
            if isinstance(el, _Run):
                if a == el.filler:
                    self.run += 1
                    if not el.can_grow(self.run):
                        break
                    return True
                if not el.ok(self.run):
                    break
                self._advance()
                continue
            if el is _DATA:
                if not self._is_data(a):
                    break
                self.data_count += 1
            elif a != el:
                break
            self._advance()
            return True
        self.alive = False
        return False

    def key(self):
        el = self.elems[self.idx]
        run_key = el.key(self.run) if isinstance(el, _Run) else 0
        return _canonical_block(self.kind, self.param, self.block), self.idx, run_key


def _parser_for(target, param=None, base=None) -> PrefixParser:
    if isinstance(target, CodingSpec):
        return PrefixParser(target.kind, target.param, target.base)
    return PrefixParser(target, param, base)


def in_pref(target, p, param: int | None = None, base=None) -> bool:
    """Whether finite word ``p`` is a prefix of some coded word.

    ``target`` is a :class:`CodingSpec` (prefixes of its image) or ``"H"``.
    """
    parser = _parser_for(target, param, base)
    return all(parser.feed(a) for a in p)


@dataclass(frozen=True)
class Scan:
    """Outcome of scanning a UP word against a prefix set."""

    exit_position: int | None            # first position outside the prefix set
    decoded: UPWord | None = None        # data letters, when the word never exits
    infinitely_many_data: bool = False


def scan_up(parser: PrefixParser, w: UPWord, cap: int = SCAN_CAP) -> Scan:
    """Find the first exit of ``w`` from the prefix set, or prove there is none.

    The parser state is compared at period boundaries; a repeated state means
    the word stays in the prefix set forever.
    """
    data: list = []

    def feed(a) -> bool:
        before = parser.data_count
        ok = parser.feed(a)
        if parser.data_count != before:
            data.append(a)
        return ok

    for a in w.u:
        if not feed(a):
            return Scan(parser.length)
    seen: dict = {}
    while parser.length <= cap:
        key = parser.key()
        if key in seen:
            first_len = seen[key]
            many = parser.data_count > first_len
            decoded = None
            if many:
                decoded = up_normalize(UPWord(tuple(data[:first_len]), tuple(data[first_len:])))
            return Scan(None, decoded, many)
        seen[key] = parser.data_count
        for a in w.v:
            if not feed(a):
                return Scan(parser.length)
    raise CodingError(f"no verdict for {w} within {cap} letters")


# ------------------------------------------------- direct-definition predicates

def _even_exit(target, param=None, base=None) -> Callable[[UPWord], bool]:
    def pred(w: UPWord) -> bool:
        pos = scan_up(_parser_for(target, param, base), w).exit_position
        return pos is not None and pos % 2 == 0
    return pred


def lprime_predicate(S: int, base=("a", "b")) -> Callable[[UPWord], bool]:
    """Words whose first departure from Pref(θ_S(Σ^ω)) is at an even position."""
    return _even_exit(CodingSpec(THETA, S, base))


def lsecond_predicate(K: int, base=("a", "b")) -> Callable[[UPWord], bool]:
    """Words whose first departure from Pref(φ_K(Γ^ω)) is at an even position."""
    return _even_exit(CodingSpec(PHI, K, base))


def u_predicate(base=("a", "b")) -> Callable[[UPWord], bool]:
    """U.Γ1^ω: the first departure from Pref(H) is at an even position."""
    return _even_exit("H", None, base)


def h_predicate(base=("a", "b")) -> Callable[[UPWord], bool]:
    def pred(w: UPWord) -> bool:
        s = scan_up(PrefixParser("H", None, base), w)
        return s.exit_position is None and s.infinitely_many_data
    return pred


def closure_h_predicate(base=("a", "b")) -> Callable[[UPWord], bool]:
    """Every prefix lies in Pref(H)."""
    def pred(w: UPWord) -> bool:
        return scan_up(PrefixParser("H", None, base), w).exit_position is None
    return pred


def v_predicate(base=("a", "b")) -> Callable[[UPWord], bool]:
    """V.C^ω: stays in Pref(H) but eventually writes only C."""
    def pred(w: UPWord) -> bool:
        s = scan_up(PrefixParser("H", None, base), w)
        return s.exit_position is None and not s.infinitely_many_data
    return pred


def gadget_predicate(kind: str, param: int | None = None, base=("a", "b")):
    table = {
        "Lprime": lambda: lprime_predicate(param, base),
        "Lsecond": lambda: lsecond_predicate(param, base),
        "Hlang": lambda: h_predicate(base),
        "Vlang": lambda: v_predicate(base),
        "Ulang": lambda: u_predicate(base),
        "ClosureH": lambda: closure_h_predicate(base),
    }
    if kind not in table:
        raise CodingError(f"unknown gadget {kind!r}")
    return table[kind]()


# ----------------------------------------------------------- gadget machines

_NEXT_COUNT = {0: 1, 1: 2, 2: 3, 3: 4, 4: 3}  # 3 = odd >= 3, 4 = even >= 4
_EVEN_END = (2, 4)
_ODD_END = (3,)


def _h_prefix_dfa(gamma) -> tuple:
    """Deterministic automaton for Pref(H) (every state is live).

    Returns ``(states, initial, delta, accepting)`` where ``accepting`` marks
    the state entered after odd-indexed data letters, so that the same graph
    read as a Büchi automaton accepts H.
    """
    # stage -> (kind, successor stage, letter that ends the stage)
    runs = {
        "b1r": (_ODD_END, "A", "b1d"),
        "er1": (_EVEN_END, "A", "er2"),
        "er2": (_ODD_END, "data", "eB"),
        "or1": (_EVEN_END, "A", "or2"),
        "or2": (_ODD_END, "A", "od"),
    }
    singles = {"b1d": ("data", "er1"), "eB": ("B", "or1"), "od": ("data", "er1")}
    states, delta = [], {}

    def entry(stage):
        return f"{stage}0" if stage in runs else stage

    for stage, (ends, closer, nxt) in runs.items():
        for c in range(5):
            q = f"{stage}{c}"
            states.append(q)
            delta[q, "C"] = f"{stage}{_NEXT_COUNT[c]}"
            if c in ends:
                for a in (gamma if closer == "data" else (closer,)):
                    delta[q, a] = entry(nxt)
    for stage, (closer, nxt) in singles.items():
        states.append(stage)
        for a in (gamma if closer == "data" else (closer,)):
            delta[stage, a] = entry(nxt)
    return states, "b1r0", delta, {"er10"}


def _phi_prefix_dfa(K: int, gamma) -> tuple:
    states = [f"f{i}" for i in range(K + 1)]
    delta = {(f"f{i}", "F"): f"f{i + 1}" for i in range(K)}
    for a in gamma:
        delta[f"f{K}", a] = "f0"
    return states, "f0", delta, {"f0"}


def _dfa_machine(dfa, alphabet, name) -> CounterMachine:
    states, init, delta, accepting = dfa
    b = MachineBuilder(tuple(alphabet), 0, name)
    for q in states:
        b.state(q, accepting=q in accepting)
    for (q, a), r in delta.items():
        b.add(q, a, r)
    return b.build(init)


def _even_exit_machine(dfa, alphabet, name) -> CounterMachine:
    """Büchi automaton: the first letter leaving the DFA's domain is at an even position."""
    states, init, delta, _ = dfa
    b = MachineBuilder(tuple(alphabet), 0, name)
    out = b.state("out", accepting=True)
    for a in alphabet:
        b.add(out, a, out)
    for q in states:
        for r in (0, 1):
            src = b.state(f"{q}.{r}")
            for a in alphabet:
                if (q, a) in delta:
                    b.add(src, a, f"{delta[q, a]}.{1 - r}")
                elif r == 1:
                    b.add(src, a, out)
    return b.build(f"{init}.0")


def _vc_machine(gamma1, dfa) -> CounterMachine:
    states, init, delta, _ = dfa
    b = MachineBuilder(tuple(gamma1), 0, "VC")
    for q in states:
        b.state(q)
    cw = b.state("cw", accepting=True)
    b.add(cw, "C", cw)
    for (q, a), r in delta.items():
        b.add(q, a, r)
        if a == "C":
            b.add(q, "C", cw)
    return b.build(init)


def _lprime_machine(S: int, base) -> CounterMachine:
    """Real-time 2-counter Büchi machine for L'(S).

    The counter ``cur`` holds S^n while block n of E's is read.  Each E
    increments the other counter; every S-th E of the block decrements
    ``cur`` (the count mod S lives in the finite control).  The block is
    complete exactly when ``cur`` is zero and the count is 0 mod S; then the
    roles of the counters swap.  The parity of the position is tracked so the
    first departure can be classified as even (accept) or odd (reject).
    """
    alphabet = tuple(base) + ("E",)
    b = MachineBuilder(alphabet, 2, f"Lprime({S})")
    out = b.state("out", accepting=True)
    patterns = [(0, 0), (0, 1), (1, 0), (1, 1)]
    for a in alphabet:
        for g in patterns:
            b.add(out, a, out, g)
    start = b.state("start")

    def name(mod, cur, r):
        return f"m{mod}c{cur}p{r}"

    for a in base:
        b.add(start, a, name(0, 0, 1), (0, 0), (1, 0))
    # E at position 1 leaves the prefix set at an odd position: no transition
    for mod in range(S):
        for cur in (0, 1):
            other = 1 - cur
            for r in (0, 1):
                src = b.state(name(mod, cur, r))
                for g in patterns:
                    cur_zero = g[cur] == 0
                    if mod != 0 and cur_zero:
                        continue  # unreachable: cur only hits 0 when mod wraps to 0
                    for a in alphabet:
                        valid = None
                        if a == "E":
                            if not (mod == 0 and cur_zero):
                                upd = [0, 0]
                                upd[other] = 1
                                if mod == S - 1:
                                    upd[cur] = -1
                                valid = (name((mod + 1) % S, cur, 1 - r), tuple(upd))
                        elif mod == 0 and cur_zero:
                            valid = (name(0, other, 1 - r), (0, 0))
                        if valid is not None:
                            b.add(src, a, valid[0], g, valid[1])
                        elif r == 1:
                            b.add(src, a, out, g)
    return b.build(start)


def build_gadget(kind: str, param: int | None = None, base=("a", "b")) -> CounterMachine:
    """Machine for a gadget language.

    ``Lprime`` (param S, over base ∪ {E}) is a real-time 2-counter machine;
    ``Hlang``, ``Vlang`` (V.C^ω), ``Ulang`` (U.Γ1^ω), ``ClosureH`` (over
    base ∪ {A,B,C}) and ``Lsecond`` (param K, over base ∪ {F}) are 0-counter
    Büchi automata.
    """
    base = tuple(base)
    gamma1 = base + ("A", "B", "C")
    if kind == "Lprime":
        if not param or param < 1:
            raise CodingError("Lprime needs S >= 1")
        return _lprime_machine(param, base)
    if kind == "Lsecond":
        if not param or param < 1:
            raise CodingError("Lsecond needs K >= 1")
        return _even_exit_machine(_phi_prefix_dfa(param, base), base + ("F",), f"Lsecond({param})")
    dfa = _h_prefix_dfa(base)
    if kind == "Hlang":
        return _dfa_machine(dfa, gamma1, "H")
    if kind == "Vlang":
        return _vc_machine(gamma1, dfa)
    if kind == "Ulang":
        return _even_exit_machine(dfa, gamma1, "UG")
    if kind == "ClosureH":
        return constructions.union_machines(_dfa_machine(dfa, gamma1, "H"), _vc_machine(gamma1, dfa),
                                            name="ClH")
    raise CodingError(f"unknown gadget {kind!r}")


GADGET_KINDS = ("Lprime", "Hlang", "Vlang", "Ulang", "ClosureH", "Lsecond")


# ------------------------------------------------------- images and assembly

def _union_verdicts(verdicts: Iterable) -> bool | None:
    undecided = False
    for v in verdicts:
        if v is True:
            return True
        if v is None:
            undecided = True
    return None if undecided else False


def image_predicate(spec: CodingSpec, base_language, limits: SearchLimits | None = None):
    """Recognizer for the coded image of ``base_language``.

    For ``theta``/``phi``/``h`` this is ``spec(L)``; for ``h`` it also covers
    ``h(Γ^ω)⁻ ∩ H`` and for ``hk`` ``hk(Σ^ω)⁻``, matching the languages the
    image automata of the reductions accept.  Accepts UP words (decoded
    exactly through the prefix parser) and lazy words produced by
    :func:`encode` with the same spec.
    """
    lim = limits or SearchLimits()

    def pred(w):
        if isinstance(w, LazyWord):
            if w.coding != spec or not isinstance(w.preimage, UPWord):
                return None
            return language_verdict(base_language, w.preimage, lim)
        s = scan_up(PrefixParser(spec.kind, spec.param, spec.base), w)
        if s.exit_position is None:
            return language_verdict(base_language, s.decoded, lim)
        if spec.kind == HK:
            return True
        if spec.kind == H:
            return h_predicate(spec.base)(w)
        return False

    return pred


def assemble_script_L(image, gamma=("a", "b"), K: int | None = None, limits: SearchLimits | None = None):
    """Recognizer for image ∪ V.C^ω ∪ U.Γ1^ω.

    ``image`` recognizes h(L) ∪ [h(Γ^ω)⁻ ∩ H]; it is either a machine (the
    result is then a machine) or a predicate (the result is a predicate whose
    verdict is True, False or None for undecided).  ``K`` is only used to
    build a default image for a base machine over Γ.
    """
    gamma = tuple(gamma)
    v = build_gadget("Vlang", base=gamma)
    u = build_gadget("Ulang", base=gamma)
    if isinstance(image, CounterMachine) and K is not None and set(image.alphabet) == set(gamma):
        image = image_predicate(CodingSpec(H, K, gamma), image, limits)
    if isinstance(image, CounterMachine):
        return constructions.union_machines(constructions.union_machines(image, v), u, name="ScriptL")
    lim = limits or SearchLimits()

    def pred(w):
        if isinstance(w, LazyWord):
            # a word produced by the coding stays in Pref(H): only the image can accept
            return image(w)
        return _union_verdicts((image(w), language_verdict(v, w, lim), language_verdict(u, w, lim)))

    return pred


def coded_gs_winset(spec: CodingSpec, base_language, limits: SearchLimits | None = None):
    """Winning set of the transformed Gale-Stewart game for a reduction.

    theta: θ_S(L) ∪ L'; h: the assembled language; phi: φ_K(L) ∪ L''.
    """
    image = image_predicate(spec, base_language, limits)
    if spec.kind == H:
        return assemble_script_L(image, spec.base, limits=limits)
    if spec.kind == THETA:
        gadget = build_gadget("Lprime", spec.param, spec.base)
    elif spec.kind == PHI:
        gadget = build_gadget("Lsecond", spec.param, spec.base)
    else:
        raise CodingError("the hk coding is only used in Wadge games")
    lim = limits or SearchLimits(max_counter=10 ** 6)

    def pred(w):
        if isinstance(w, LazyWord):
            return image(w)
        return _union_verdicts((image(w), language_verdict(gadget, w, lim)))

    return pred


def check_base_word(spec: CodingSpec, x) -> None:
    if isinstance(x, UPWord):
        bad = x.letters - set(spec.base)
        if bad:
            raise WordError(f"letters {sorted(bad)} outside base alphabet {spec.base}")
