"""Finite and infinite words.

Finite words are plain tuples of letters (letters are short strings).  An
infinite word is either an :class:`UPWord` ``u v^omega`` or a
:class:`LazyWord` whose letters are computed on demand.  Indexing is 1-based
throughout: ``letter_at(w, 1)`` is the first letter.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence

Letter = str
FiniteWord = tuple  # tuple[Letter, ...]

# Letters reserved by the codings and by the Wadge skip move.
RESERVED_LETTERS = frozenset({"E", "A", "B", "C", "F", "s"})


class WordError(ValueError):
    pass


@dataclass(frozen=True)
class Alphabet:
    """An ordered set of distinct letters."""

    letters: tuple

    def __post_init__(self):
        letters = tuple(self.letters)
        if not letters:
            raise WordError("alphabet must be non-empty")
        if len(set(letters)) != len(letters):
            raise WordError(f"duplicate letters in alphabet {letters!r}")
        for a in letters:
            if not isinstance(a, str) or not a or any(ch.isspace() or ch in "()" for ch in a):
                raise WordError(f"bad letter {a!r}")
        object.__setattr__(self, "letters", letters)

    def __contains__(self, a):
        return a in self.letters

    def __iter__(self):
        return iter(self.letters)

    def __len__(self):
        return len(self.letters)

    def extend(self, *extra: Letter) -> "Alphabet":
        """Alphabet with coding letters appended; they must be new."""
        clash = [a for a in extra if a in self.letters]
        if clash:
            raise WordError(f"extension letters {clash} collide with base alphabet")
        return Alphabet(self.letters + tuple(extra))


@dataclass(frozen=True)
class UPWord:
    """The ultimately periodic word ``u v v v ...``."""

    u: tuple
    v: tuple

    def __post_init__(self):
        object.__setattr__(self, "u", tuple(self.u))
        object.__setattr__(self, "v", tuple(self.v))
        if not self.v:
            raise WordError("period of an ultimately periodic word must be non-empty")

    @property
    def letters(self) -> frozenset:
        return frozenset(self.u) | frozenset(self.v)

    def __str__(self):
        return format_up(self)


class LazyWord:
    """An infinite word given by a computable letter function or a stream.

    Exactly one of ``letter_fn`` (1-based index -> letter) or ``stream`` (a
    zero-argument factory returning a fresh infinite iterator) is required.
    Materialized letters are cached; the cache is guarded by a lock.
    """

    def __init__(self, letter_fn: Callable[[int], Letter] | None = None,
                 stream: Callable[[], Iterator[Letter]] | None = None,
                 preimage: "UPWord | LazyWord | None" = None,
                 coding=None, description: str = ""):
        if (letter_fn is None) == (stream is None):
            raise WordError("LazyWord needs exactly one of letter_fn or stream")
        self._letter_fn = letter_fn
        self._stream_factory = stream
        self._iter = None
        self._cache: list = []
        self._lock = threading.Lock()
        # the word this one encodes, when produced by a coding
        self.preimage = preimage
        self.coding = coding
        self.description = description

    def _fill(self, n: int) -> None:
        with self._lock:
            cache = self._cache
            if len(cache) >= n:
                return
            if self._letter_fn is not None:
                cache.extend(self._letter_fn(i) for i in range(len(cache) + 1, n + 1))
                return
            if self._iter is None:
                self._iter = iter(self._stream_factory())
            while len(cache) < n:
                cache.append(next(self._iter))

    def letter(self, i: int) -> Letter:
        if i < 1:
            raise IndexError("letters are indexed from 1")
        self._fill(i)
        return self._cache[i - 1]

    def prefix(self, n: int) -> tuple:
        self._fill(n)
        return tuple(self._cache[:n])

    def __iter__(self):
        i = 1
        while True:
            yield self.letter(i)
            i += 1

    def __repr__(self):
        return f"LazyWord({self.description or 'computed'})"


def letter_at(w, i: int) -> Letter:
    """The i-th letter (1-based) of a finite, UP or lazy word."""
    if i < 1:
        raise IndexError("letters are indexed from 1")
    if isinstance(w, UPWord):
        if i <= len(w.u):
            return w.u[i - 1]
        return w.v[(i - len(w.u) - 1) % len(w.v)]
    if isinstance(w, LazyWord):
        return w.letter(i)
    return w[i - 1]


def prefix(w, n: int) -> tuple:
    """The length-n prefix ``w[n]``; ``prefix(w, 0)`` is the empty word."""
    if n < 0:
        raise ValueError("prefix length must be non-negative")
    if isinstance(w, UPWord):
        u, v = w.u, w.v
        if n <= len(u):
            return u[:n]
        rest = n - len(u)
        reps, extra = divmod(rest, len(v))
        return u + v * reps + v[:extra]
    if isinstance(w, LazyWord):
        return w.prefix(n)
    if n > len(w):
        raise ValueError(f"finite word of length {len(w)} has no prefix of length {n}")
    return tuple(w[:n])


def iter_letters(w) -> Iterator[Letter]:
    if isinstance(w, UPWord):
        yield from w.u
        while True:
            yield from w.v
    else:
        yield from w


def _primitive_root(v: tuple) -> tuple:
    n = len(v)
    for d in range(1, n + 1):
        if n % d == 0 and v[:d] * (n // d) == v:
            return v[:d]
    return v


def up_normalize(w: UPWord) -> UPWord:
    """Canonical form: primitive period, then the shortest transient."""
    u, v = list(w.u), _primitive_root(w.v)
    # absorb the tail of u into a rotated period while it matches
    while u and u[-1] == v[-1]:
        u.pop()
        v = (v[-1],) + v[:-1]
    return UPWord(tuple(u), v)


def up_equal(w1: UPWord, w2: UPWord) -> bool:
    bound = len(w1.u) + len(w2.u) + math.lcm(len(w1.v), len(w2.v))
    return prefix(w1, bound) == prefix(w2, bound)


def is_prefix(p: Sequence, w) -> bool:
    p = tuple(p)
    if isinstance(w, (UPWord, LazyWord)):
        return prefix(w, len(p)) == p
    return len(p) <= len(w) and tuple(w[:len(p)]) == p


def in_limit(pref_predicate: Callable[[tuple], bool], w: UPWord, sample_bound: int = 2,
             prefix_closed: bool = True) -> bool:
    """Whether ``w`` lies in Lim(V) for the finite-word set V tested by the predicate.

    For a prefix-closed V this checks every prefix up to ``|u| + sample_bound*|v|``.
    Otherwise it asks for a hit within the last full period of that window,
    which is the recurrence pattern of UP words once the predicate's state has
    stabilized.  Both are exact when the predicate is recognized by an
    automaton that stabilizes within ``sample_bound`` periods.
    """
    sample_bound = max(sample_bound, 1)
    horizon = len(w.u) + sample_bound * len(w.v)
    if prefix_closed:
        return all(pref_predicate(prefix(w, n)) for n in range(horizon + 1))
    return any(pref_predicate(prefix(w, n)) for n in range(horizon - len(w.v) + 1, horizon + 1))


def up_shift(w: UPWord, k: int) -> UPWord:
    """The suffix of ``w`` that starts at position ``k + 1``."""
    if k < 0:
        raise ValueError("shift must be non-negative")
    if k <= len(w.u):
        return UPWord(w.u[k:], w.v)
    r = (k - len(w.u)) % len(w.v)
    return UPWord((), w.v[r:] + w.v[:r])


def up_project(w: UPWord, offset: int) -> UPWord:
    """Letters at positions ``offset+1, offset+3, ...`` (every other letter)."""
    u, v = w.u, w.v
    if len(v) % 2:
        v = v + v
    if len(u) % 2:
        u = u + v[:1]
        v = v[1:] + v[:1]
    return up_normalize(UPWord(u[offset::2], v[offset::2]))


# ---------------------------------------------------------------- notation

def _tokens(text: str, alphabet: Iterable[Letter] | None) -> list:
    text = text.strip()
    if not text:
        return []
    if any(ch.isspace() for ch in text):
        return text.split()
    if alphabet is not None and any(len(a) > 1 for a in alphabet):
        return _greedy_split(text, alphabet)
    return list(text)


def _greedy_split(text: str, alphabet: Iterable[Letter]) -> list:
    letters = sorted(alphabet, key=len, reverse=True)
    out, i = [], 0
    while i < len(text):
        for a in letters:
            if text.startswith(a, i):
                out.append(a)
                i += len(a)
                break
        else:
            raise WordError(f"cannot split {text!r} at offset {i}")
    return out


def parse_finite(text: str, alphabet: Iterable[Letter] | None = None) -> tuple:
    """Parse a finite word; ``""``, ``"-"`` and ``"λ"`` denote the empty word."""
    if text.strip() in ("-", "λ"):
        return ()
    return tuple(_tokens(text, alphabet))


def parse_up(text: str, alphabet: Iterable[Letter] | None = None) -> UPWord:
    """Parse ``u(v)``, e.g. ``ab(ba)`` or ``x y ( z )``."""
    text = text.strip()
    if text.count("(") != 1 or text.count(")") != 1 or not text.endswith(")"):
        raise WordError(f"expected u(v) notation, got {text!r}")
    head, tail = text[:-1].split("(")
    v = _tokens(tail, alphabet)
    if not v:
        raise WordError(f"empty period in {text!r}")
    return UPWord(tuple(_tokens(head, alphabet)), tuple(v))


def _join(letters: Sequence[Letter], sep: str | None) -> str:
    if sep is None:
        sep = "" if all(len(a) == 1 for a in letters) else " "
    return sep.join(letters)


def format_finite(w: Sequence[Letter], sep: str | None = None) -> str:
    return _join(w, sep)


def format_up(w: UPWord, sep: str | None = None) -> str:
    if sep is None:
        sep = "" if all(len(a) == 1 for a in w.u + w.v) else " "
    if sep:
        return (sep.join(w.u) + " " if w.u else "") + "( " + sep.join(w.v) + " )"
    return "".join(w.u) + "(" + "".join(w.v) + ")"


def parse_word(text: str, alphabet: Iterable[Letter] | None = None):
    """UP word if the text has a period in parentheses, else a finite word."""
    if "(" in text:
        return parse_up(text, alphabet)
    return parse_finite(text, alphabet)


def dump_prefixes(words: Iterable[Sequence[Letter]]) -> str:
    """Plain-text prefix dump, one word per line."""
    return "".join(format_finite(w) + "\n" for w in words)
