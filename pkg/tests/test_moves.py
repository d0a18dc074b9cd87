import random

import pytest
from hypothesis import given, strategies as st

from handlecalc.moves import MoveKind, MoveToken, apply_move, fold, inverse_of, invert_script
from handlecalc.presentation import BiPresentation, HandlePair, MoveError, Presentation
from handlecalc.search import _apply_raw, _token, _vocabulary, legal_moves
from handlecalc.words import Alphabet, Word, words_up_to
from oracles import random_word

P = Presentation.from_text


def test_invert_relator_twice():
    p = P("x y", "x y^2", "y")
    t = MoveToken(MoveKind.InvertRelator, 0)
    assert fold(p, [t, t]) == p


def test_multiply_then_inverse_token():
    p = P("x y", "x y^2", "y x")
    t = MoveToken(MoveKind.MultiplyRelator, 0, 1, p.alphabet.word("x y"))
    q = apply_move(p, t)
    assert q != p
    assert apply_move(q, inverse_of(t)) == p


def test_single_slide_then_inverse_token():
    a, d = Alphabet(("x", "y")), Alphabet(("u", "v"))
    bp = BiPresentation(a, d, (HandlePair(a.word("x"), d.word("u")), HandlePair(a.word("y"), d.word("v"))))
    t = MoveToken(MoveKind.SingleSlide, 0, 1, a.word("x"))
    assert apply_move(apply_move(bp, t), inverse_of(t)) == bp
    g = MoveToken(MoveKind.GeneralSlide, 1, 0, a.word("y"), d.word("v^-1"), sign=-1)
    assert apply_move(apply_move(bp, g), inverse_of(g)) == bp


def test_token_validation():
    with pytest.raises(MoveError):
        MoveToken(MoveKind.MultiplyRelator, 0)
    with pytest.raises(MoveError):
        MoveToken(MoveKind.SingleSlide, 1, 1)
    with pytest.raises(MoveError):
        MoveToken(MoveKind.InvertRelator, 0, sign=2)
    with pytest.raises(MoveError):
        MoveToken(MoveKind.Destabilize, 0, side="left")


def test_pair_moves_rejected_on_plain_presentations():
    with pytest.raises(MoveError):
        apply_move(P("x y", "x", "y"), MoveToken(MoveKind.SingleSlide, 0, 1))
    with pytest.raises(MoveError):
        apply_move(P("x y", "x", "y"), MoveToken(MoveKind.AddCancellingPairDual))


def test_inverse_needs_context():
    with pytest.raises(MoveError):
        inverse_of(MoveToken(MoveKind.Destabilize, 0))
    with pytest.raises(MoveError):
        inverse_of(MoveToken(MoveKind.Stabilize))


def test_bi_presentation_pair_inverses():
    a, d = Alphabet(("x",)), Alphabet(("u",))
    bp = BiPresentation(a, d, (HandlePair(a.word("x"), d.word("u")),))
    script = [MoveToken(MoveKind.AddCancellingPairDual), MoveToken(MoveKind.AddCancellingPairPrimary),
              MoveToken(MoveKind.DoubleSlide, 0, 1, a.word("x"), exponent=-1)]
    end = fold(bp, script)
    assert fold(end, invert_script(bp, script)) == bp


def _random_presentation(rng, k):
    a = Alphabet(tuple("xyz"[:k]))
    return Presentation(a, tuple(Word(random_word(rng, k, 6)) for _ in range(k)))


@given(st.integers(0, 10**6), st.integers(1, 3), st.integers(1, 12))
def test_invert_script_round_trip(seed, k, n):
    rng = random.Random(seed)
    p = _random_presentation(rng, k)
    script = []
    cur = p
    for _ in range(n):
        moves = legal_moves(cur, cap=1, stable=True, max_generators=4)
        t = moves[rng.randrange(len(moves))]
        script.append(t)
        cur = apply_move(cur, t)
    assert fold(cur, invert_script(p, script)) == p


@given(st.integers(0, 10**6), st.integers(1, 3))
def test_raw_transitions_match_tokens(seed, k):
    rng = random.Random(seed)
    p = _random_presentation(rng, k)
    vocab = _vocabulary(k, p.nrels, 1, words_up_to(k, 1))
    for mv in rng.sample(vocab, min(20, len(vocab))):
        k2, rels = _apply_raw((k, p.relators), mv)
        q = apply_move(p, _token(mv))
        assert (q.ngens, q.relators) == (k2, rels)
