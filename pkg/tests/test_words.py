import pytest
from hypothesis import given, settings, strategies as st

from cbgames.words import (LazyWord, UPWord, WordError, format_up, in_limit, is_prefix, letter_at,
                           parse_finite, parse_up, parse_word, prefix, up_equal, up_normalize,
                           up_project, up_shift)


def W(text):
    return parse_up(text)


letters = st.sampled_from("abc")
up_words = st.builds(UPWord, st.lists(letters, max_size=5).map(tuple),
                     st.lists(letters, min_size=1, max_size=5).map(tuple))


@pytest.mark.parametrize("w,i,expected", [("a(b)", 1, "a"), ("a(b)", 5, "b"), ("(ab)", 4, "b")])
def test_letter_at(w, i, expected):
    assert letter_at(W(w), i) == expected


def test_letter_at_rejects_zero():
    with pytest.raises(IndexError):
        letter_at(W("(a)"), 0)


@pytest.mark.parametrize("w,n,expected", [("a(b)", 3, "abb"), ("ab(c)", 0, ""), ("(01)", 5, "01010")])
def test_prefix(w, n, expected):
    assert "".join(prefix(W(w), n)) == expected


def test_prefix_of_finite_word_too_long():
    with pytest.raises(ValueError):
        prefix(("a",), 2)


@pytest.mark.parametrize("w,expected", [("a(bb)", "a(b)"), ("(ab)", "(ab)"), ("ab(ab)", "(ab)"),
                                        ("ab(ba)", "ab(ba)")])
def test_normalize(w, expected):
    assert up_normalize(W(w)) == W(expected)


def _brute_force_canonical(w):
    # smallest (|u'|+|v'|, |u'|) among all representations no longer than the original
    best = None
    for lu in range(len(w.u) + len(w.v) + 1):
        for lv in range(1, len(w.v) + 1):
            cand = UPWord(prefix(w, lu), prefix(up_shift(w, lu), lv))
            if up_equal(cand, w):
                key = (lv, lu)
                if best is None or key < best[0]:
                    best = (key, cand)
    return best[1]


@settings(max_examples=200)
@given(up_words)
def test_normalize_matches_brute_force(w):
    assert up_normalize(w) == _brute_force_canonical(w)


@pytest.mark.parametrize("a,b,expected", [("a(b)", "ab(bb)", True), ("(ab)", "(ba)", False),
                                          ("(ab)", "a(ba)", True)])
def test_up_equal(a, b, expected):
    assert up_equal(W(a), W(b)) is expected


@pytest.mark.parametrize("p,w,expected", [("", "a(b)", True), ("ab", "a(b)", True), ("ba", "a(b)", False)])
def test_is_prefix(p, w, expected):
    assert is_prefix(tuple(p), W(w)) is expected


def test_in_limit_constant_predicates():
    w = W("ab(c)")
    assert in_limit(lambda p: True, w, 3)
    assert not in_limit(lambda p: False, w, 3)


@given(up_words, st.integers(0, 30))
def test_prefix_extends_by_letter(w, n):
    assert prefix(w, n + 1) == prefix(w, n) + (letter_at(w, n + 1),)


@given(up_words)
def test_normalize_preserves_word(w):
    n = up_normalize(w)
    assert up_equal(w, n)
    assert up_normalize(n) == n


@given(up_words)
def test_notation_round_trip(w):
    assert up_equal(parse_up(format_up(w)), w)


@given(up_words, st.integers(0, 20))
def test_shift(w, k):
    assert prefix(up_shift(w, k), 15) == prefix(w, k + 15)[k:]


@given(up_words, st.sampled_from([0, 1]))
def test_project_takes_every_other_letter(w, offset):
    assert prefix(up_project(w, offset), 12) == prefix(w, 30)[offset::2][:12]


@given(up_words)
def test_in_limit_prefix_closed_equals_unrolled(w):
    # "no b after a c" is prefix closed and stabilizes within two periods
    def pred(p):
        s = "".join(p)
        return "c" not in s or "b" not in s[s.index("c"):]

    unrolled = all(pred(prefix(w, n)) for n in range(len(w.u) + 12 * len(w.v) + 1))
    assert in_limit(pred, w, 2) == unrolled


def test_multi_letter_tokens():
    w = parse_up("x1 y ( z x1 )")
    assert w == UPWord(("x1", "y"), ("z", "x1"))
    assert format_up(w) == "x1 y ( z x1 )"
    assert parse_finite("x1y", alphabet=("x1", "y")) == ("x1", "y")


@pytest.mark.parametrize("text", ["ab", "a(b", "a()", "(a)(b)"])
def test_bad_notation(text):
    with pytest.raises(WordError):
        parse_up(text)


def test_parse_word_dispatch():
    assert parse_word("ab") == ("a", "b")
    assert parse_word("λ") == ()
    assert isinstance(parse_word("a(b)"), UPWord)


def test_empty_period_rejected():
    with pytest.raises(WordError):
        UPWord(("a",), ())


def test_lazy_word_from_function_and_stream():
    def evens():
        i = 0
        while True:
            yield str(i % 3)
            i += 1

    f = LazyWord(letter_fn=lambda i: "ab"[i % 2])
    s = LazyWord(stream=evens)
    assert f.prefix(4) == ("b", "a", "b", "a")
    assert s.prefix(5) == ("0", "1", "2", "0", "1")
    assert letter_at(s, 7) == "0"
    assert is_prefix(("0", "1"), s)
    with pytest.raises(WordError):
        LazyWord()
