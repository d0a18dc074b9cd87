import pytest
from hypothesis import given, strategies as st

from conftest import raw_words
from handlecalc.words import (
    EMPTY, Alphabet, Word, WordError, commutator, concat, conjugate, cyclic_reduce, exponent_sums,
    invert, is_cyclically_reduced, min_cyclic_form, reduce, substitute, words_up_to)
from oracles import inv, naive_reduce

A = Alphabet(("x", "y", "z"))


def w(text):
    return A.word(text)


@pytest.mark.parametrize("raw, expected", [
    ("x x^-1 y", "y"),
    ("1", "1"),
    ("x y y^-1 x", "x^2"),
])
def test_reduce_examples(raw, expected):
    codes = [c for tok in raw.split() for c in A.word(tok)] if raw != "1" else []
    assert reduce(codes) == w(expected)


def test_reduce_parses_text():
    assert reduce("x y y^-1 x", A) == w("x x")


@pytest.mark.parametrize("word, expected", [("x y", "y^-1 x^-1"), ("1", "1"), ("x y x^-1", "x y^-1 x^-1")])
def test_invert_examples(word, expected):
    assert invert(w(word)) == w(expected)


@pytest.mark.parametrize("word, c, expected", [("y", "x", "x y x^-1"), ("y", "1", "y"), ("x", "x", "x")])
def test_conjugate_examples(word, c, expected):
    assert conjugate(w(word), w(c)) == w(expected)


def test_commutator_examples():
    assert commutator(w("x"), w("y")) == w("x y x^-1 y^-1")
    assert commutator(w("x"), w("x")) == EMPTY
    assert commutator(w("x y"), w("y")) == Word(naive_reduce([1, 2, 2, -2, -1, -2]))


@pytest.mark.parametrize("word, core, conj", [
    ("x y x^-1", "y", "x"),
    ("y", "y", "1"),
    ("x y z y^-1 x^-1", "z", "x y"),
])
def test_cyclic_reduce_examples(word, core, conj):
    assert cyclic_reduce(w(word)) == (w(core), w(conj))


def test_substitute_examples():
    xy = w("x y")
    assert substitute(w("x y"), {0: xy}) == w("x y y")
    assert substitute(w("x y z"), [w("x"), w("y"), w("z")]) == w("x y z")
    assert substitute(w("x^-1"), {0: xy}) == w("y^-1 x^-1")


def test_parse_errors():
    with pytest.raises(WordError):
        A.word("q")
    with pytest.raises(WordError):
        A.word("x^0")
    with pytest.raises(WordError):
        A.word("x^a")
    assert A.word("x^-2") == Word((-1, -1))


def test_format_runs():
    assert A.format(w("x x y^-1 y^-1 y^-1 z")) == "x^2 y^-3 z"
    assert A.format(EMPTY) == "1"


def test_fresh_names():
    assert Alphabet(("x",)).fresh_name() == "z"
    assert Alphabet(("z", "y")).fresh_name() == "x"
    assert Alphabet(()).fresh_name("dual") == "d1"


def test_words_up_to_shortlex():
    ws = words_up_to(2, 2)
    assert len(ws) == 1 + 4 + 12
    assert ws[0] == EMPTY
    assert [len(x) for x in ws] == sorted(len(x) for x in ws)


@given(raw_words(3, 20))
def test_reduce_matches_naive_oracle(raw):
    assert list(Word(raw)) == naive_reduce(raw)


@given(raw_words(3, 20))
def test_reduce_idempotent(raw):
    r = Word(raw)
    assert Word(r) == r
    assert all(r[k] != -r[k + 1] for k in range(len(r) - 1))


@given(raw_words(3), raw_words(3))
def test_invert_is_antihomomorphism(a, b):
    assert invert(concat(a, b)) == concat(invert(b), invert(a))
    assert list(invert(a)) == naive_reduce(inv(a))


@given(raw_words(3), raw_words(3))
def test_inverse_cancels(a, b):
    assert concat(a, invert(a)) == EMPTY
    assert concat(a, b, invert(b)) == Word(a)


@given(raw_words(3, 16))
def test_cyclic_reduce_reassembles(raw):
    core, conj = cyclic_reduce(raw)
    assert conjugate(core, conj) == Word(raw)
    assert is_cyclically_reduced(core)


@given(raw_words(3, 10), raw_words(3, 4))
def test_min_cyclic_form_conjugation_invariant(raw, c):
    assert min_cyclic_form(raw) == min_cyclic_form(conjugate(raw, c))
    assert min_cyclic_form(raw) == min_cyclic_form(invert(raw))


@given(raw_words(2, 10), raw_words(2, 4), raw_words(2, 4))
def test_substitute_is_homomorphism(raw, a, b):
    images = {0: Word(a), 1: Word(b)}
    half = len(raw) // 2
    assert substitute(raw, images) == concat(substitute(raw[:half], images), substitute(raw[half:], images))


@given(raw_words(3, 12))
def test_exponent_sums_survive_reduction(raw):
    sums = [sum((1 if c > 0 else -1) for c in raw if abs(c) == g) for g in (1, 2, 3)]
    assert exponent_sums(Word(raw), 3) == sums


@given(st.lists(st.integers(-3, 3).filter(bool), max_size=10))
def test_format_parse_round_trip(raw):
    word = Word(raw)
    assert A.word(A.format(word)) == word
