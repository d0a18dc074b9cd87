import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import raw_words
from handlecalc import _kernels
from handlecalc.invariants import (
    BudgetExceeded, FiniteGroup, abelianization_matrix, alternating_group, count_homomorphisms, cyclic_group,
    default_groups, h1_signature, smith_normal_form, symmetric_group)
from handlecalc.presentation import Presentation
from handlecalc.words import Alphabet, Word
from oracles import exponent_matrix, hom_count, invariant_factors, sym_table

P = Presentation.from_text
AK2 = P("x y", "x^2 y^-3", "x y x y^-1 x^-1 y^-1")


def test_abelianization_examples():
    assert abelianization_matrix(P("x y", "x", "y")) == [[1, 0], [0, 1]]
    assert abelianization_matrix(AK2) == [[2, -3], [1, -1]]
    assert abelianization_matrix(P("x y")) == []


def test_snf_examples():
    assert smith_normal_form([[2, 0], [0, 3]]).invariants == (1, 6)
    assert smith_normal_form([[1, 0], [0, 1]]).invariants == (1, 1)
    s = smith_normal_form([[2, -3], [1, -1]])
    assert s.invariants == (1, 1)
    assert s.h1_trivial()


def test_h1_signatures():
    assert h1_signature(P("x", "x^2")) == (0, (2,))
    assert h1_signature(P("x y", "x y x^-1 y^-1")) == (2, ())
    assert h1_signature(P("x y")) == (2, ())
    assert h1_signature(AK2) == (0, ())


@given(st.lists(st.lists(st.integers(-6, 6), min_size=3, max_size=3), min_size=1, max_size=4))
def test_snf_matches_determinantal_divisors(rows):
    s = smith_normal_form(rows)
    nonzero = [d for d in s.invariants if d]
    assert nonzero == invariant_factors(rows)
    for a, b in zip(nonzero, nonzero[1:]):
        assert b % a == 0
    L, R = np.array(s.left), np.array(s.right)
    assert abs(round(np.linalg.det(L))) == 1 and abs(round(np.linalg.det(R))) == 1
    D = L @ np.array(rows) @ R
    expected = np.zeros_like(D)
    for k, d in enumerate(s.invariants):
        expected[k, k] = d
    assert (D == expected).all()


def test_homomorphism_examples():
    s3 = symmetric_group(3)
    for g in default_groups():
        assert count_homomorphisms(P("x", "x"), g) == 1
    assert count_homomorphisms(P("x", "x^2"), s3) == 4
    assert count_homomorphisms(P("x y", "x", "y"), s3) == 1
    assert count_homomorphisms(P("x y"), s3) == 36


def test_group_tables():
    assert symmetric_group(3).order == 6
    assert alternating_group(4).order == 12
    assert cyclic_group(5).order == 5
    assert np.array_equal(symmetric_group(3).table, np.array(sym_table(3)))
    with pytest.raises(ValueError):
        FiniteGroup("bad", np.array([[0, 1], [0, 1]]))
    with pytest.raises(ValueError):
        FiniteGroup("nonassoc", np.array([[0, 1, 2], [1, 0, 0], [2, 2, 1]]))


def test_budget():
    with pytest.raises(BudgetExceeded):
        count_homomorphisms(P("x y z"), alternating_group(4), max_assignments=100)


small_presentations = st.integers(1, 3).flatmap(
    lambda k: st.tuples(st.just(k), st.lists(raw_words(k, 8), max_size=3)))


@given(small_presentations)
def test_hom_count_matches_enumeration(data):
    k, rels = data
    p = Presentation(Alphabet(tuple("xyz"[:k])), tuple(Word(r) for r in rels))
    for g in default_groups():
        expected = hom_count(k, [list(r) for r in p.relators], g.table.tolist())
        assert count_homomorphisms(p, g, use_numba=False) == expected
        assert count_homomorphisms(p, g, use_numba=True) == expected


@given(small_presentations)
def test_abelianization_matches_oracle(data):
    k, rels = data
    p = Presentation(Alphabet(tuple("xyz"[:k])), tuple(Word(r) for r in rels))
    assert abelianization_matrix(p) == exponent_matrix(k, [list(r) for r in p.relators])


def test_numpy_and_loop_kernels_agree():
    g = alternating_group(4)
    p = P("x y z", "x^3", "y^2 z x^-1", "x y x y^-1 x^-1 y^-1 z^2")
    letters, offsets = _kernels.pack_relators(p.relators, 3)
    args = (g.table, g.inverse, g.identity, letters, offsets, 3)
    assert _kernels._count_numpy(*args) == _kernels._count_python_loop(*args)


@pytest.mark.parametrize("flag, expected", [("1", "False"), ("", str(_kernels.HAVE_NUMBA))])
def test_env_flag_selects_fallback(flag, expected):
    env = dict(os.environ, HANDLECALC_DISABLE_NUMBA=flag)
    r = subprocess.run([sys.executable, "-c", "from handlecalc import _kernels; print(_kernels.USE_NUMBA)"],
                       capture_output=True, text=True, env=env)
    assert r.stdout.strip() == expected
