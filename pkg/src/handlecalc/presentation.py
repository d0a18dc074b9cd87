"""Balanced presentations, relator/dual-relator pairs, and the move calculus on them.

Every move is a pure function returning a new value. Indices are 0-based here;
the text format and CLI use 1-based indices.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Sequence

from .words import (
    EMPTY,
    Alphabet,
    Word,
    concat,
    conjugate,
    commutator,
    cyclic_reduce,
    invert,
    relabel,
    substitute,
)


class MoveError(ValueError):
    """A move was applied outside its preconditions."""


def _as_word(w) -> Word:
    return w if isinstance(w, Word) else Word(w)


def _check_word(w: Sequence[int], size: int, what: str):
    for c in w:
        if abs(c) > size:
            raise MoveError(f"{what} uses a letter outside its alphabet")


@dataclass(frozen=True)
class Presentation:
    alphabet: Alphabet
    relators: tuple[Word, ...] = ()

    def __post_init__(self):
        rels = tuple(_as_word(r) for r in self.relators)
        object.__setattr__(self, "relators", rels)
        k = len(self.alphabet)
        for r in rels:
            _check_word(r, k, "relator")

    @classmethod
    def from_text(cls, gens: str, *relators: str) -> "Presentation":
        a = Alphabet(tuple(gens.split()))
        return cls(a, tuple(a.word(r) for r in relators))

    @property
    def ngens(self) -> int:
        return len(self.alphabet.names)

    @property
    def nrels(self) -> int:
        return len(self.relators)

    def is_balanced(self) -> bool:
        return self.ngens == self.nrels

    def with_relators(self, relators) -> "Presentation":
        return Presentation(self.alphabet, tuple(relators))

    def __str__(self):
        gens = ", ".join(self.alphabet.names)
        rels = ", ".join(self.alphabet.format(r) for r in self.relators)
        return f"<{gens} | {rels}>"


def standard_trivial(alphabet: Alphabet) -> Presentation:
    return Presentation(alphabet, tuple(Word((g + 1,)) for g in range(len(alphabet.names))))


@dataclass(frozen=True)
class HandlePair:
    relator: Word = EMPTY
    dual_relator: Word = EMPTY

    def __post_init__(self):
        object.__setattr__(self, "relator", _as_word(self.relator))
        object.__setattr__(self, "dual_relator", _as_word(self.dual_relator))


@dataclass(frozen=True)
class SlidePath:
    c: Word = EMPTY
    c_star: Word = EMPTY

    def __post_init__(self):
        object.__setattr__(self, "c", _as_word(self.c))
        object.__setattr__(self, "c_star", _as_word(self.c_star))


@dataclass(frozen=True)
class BiPresentation:
    """Relators over the 1-handle generators paired with dual relators over the dual side."""

    primary: Alphabet
    dual: Alphabet = field(default_factory=Alphabet)
    pairs: tuple[HandlePair, ...] = ()

    def __post_init__(self):
        pairs = tuple(self.pairs)
        object.__setattr__(self, "pairs", pairs)
        for hp in pairs:
            _check_word(hp.relator, len(self.primary), "relator")
            _check_word(hp.dual_relator, len(self.dual), "dual relator")

    @property
    def relators(self) -> tuple[Word, ...]:
        return tuple(hp.relator for hp in self.pairs)

    @property
    def dual_relators(self) -> tuple[Word, ...]:
        return tuple(hp.dual_relator for hp in self.pairs)

    @property
    def alphabet(self) -> Alphabet:
        return self.primary

    def presentation(self) -> Presentation:
        return Presentation(self.primary, self.relators)

    def dual_presentation(self) -> Presentation:
        return Presentation(self.dual, self.dual_relators)

    def with_pairs(self, pairs) -> "BiPresentation":
        return replace(self, pairs=tuple(pairs))


def _index(seq, i, what="relator"):
    if not 0 <= i < len(seq):
        raise MoveError(f"{what} index {i + 1} out of range 1..{len(seq)}")


def _distinct(i, j):
    if i == j:
        raise MoveError("the two handle indices must differ")


# --- relator moves -----------------------------------------------------------

def ac_move_invert_relator(p, i: int):
    """Replace relator ``i`` by its inverse; on pairs the dual relator is inverted too."""
    if isinstance(p, BiPresentation):
        _index(p.pairs, i)
        pairs = list(p.pairs)
        hp = pairs[i]
        pairs[i] = HandlePair(invert(hp.relator), invert(hp.dual_relator))
        return p.with_pairs(pairs)
    _index(p.relators, i)
    rels = list(p.relators)
    rels[i] = invert(rels[i])
    return p.with_relators(rels)


def ac_move_multiply(p: Presentation, i: int, j: int, c=EMPTY, sign: int = 1) -> Presentation:
    """``r_i <- r_i c r_j^sign c^-1``."""
    if isinstance(p, BiPresentation):
        return general_slide(p, i, j, SlidePath(c, EMPTY), sign)
    _index(p.relators, i)
    _index(p.relators, j)
    _distinct(i, j)
    _check_word(c, p.ngens, "conjugator")
    rels = list(p.relators)
    rj = rels[j] if sign > 0 else invert(rels[j])
    rels[i] = concat(rels[i], conjugate(rj, c))
    return p.with_relators(rels)


def swap_relators(p, i: int, j: int):
    if isinstance(p, BiPresentation):
        _index(p.pairs, i)
        _index(p.pairs, j)
        pairs = list(p.pairs)
        pairs[i], pairs[j] = pairs[j], pairs[i]
        return p.with_pairs(pairs)
    _index(p.relators, i)
    _index(p.relators, j)
    rels = list(p.relators)
    rels[i], rels[j] = rels[j], rels[i]
    return p.with_relators(rels)


# --- generator moves ----------------------------------------------------------

def _require_presentation(p, what):
    if isinstance(p, BiPresentation):
        raise MoveError(f"{what} is not modelled on relator/dual-relator pairs")


def ac_move_generator(p: Presentation, i: int, j: int | None = None, invert_flag: bool = False,
                      sign: int = 1) -> Presentation:
    """Change of basis ``x_i' = x_i x_j^sign`` (or ``x_i' = x_i^-1``).

    Relators are rewritten with ``x_i -> x_i' x_j^-sign`` (resp. ``x_i -> x_i'^-1``),
    so the move is a bijection on presentation data.
    """
    _require_presentation(p, "a generator move")
    _index(p.alphabet.names, i, "generator")
    g = i + 1
    if invert_flag:
        image = Word((-g,))
    else:
        if j is None:
            raise MoveError("generator multiply needs a second generator")
        _index(p.alphabet.names, j, "generator")
        _distinct(i, j)
        image = Word((g, -sign * (j + 1)))
    return p.with_relators(substitute(r, {i: image}) for r in p.relators)


def swap_generators(p: Presentation, i: int, j: int) -> Presentation:
    """Exchange the positions of generators ``i`` and ``j``; the named relators are unchanged."""
    _require_presentation(p, "a generator swap")
    names = list(p.alphabet.names)
    _index(names, i, "generator")
    _index(names, j, "generator")
    names[i], names[j] = names[j], names[i]
    perm = list(range(len(p.alphabet)))
    perm[i], perm[j] = j, i
    return Presentation(p.alphabet.with_names(names), tuple(Word._trusted(relabel(r, perm)) for r in p.relators))


def stabilize(p, name: str | None = None, gen_pos: int | None = None, rel_pos: int | None = None):
    """Add a generator together with a relator equal to it (a cancelling 1/2-pair)."""
    if isinstance(p, BiPresentation):
        if gen_pos not in (None, len(p.primary.names)) or rel_pos not in (None, len(p.pairs)):
            raise MoveError("on pairs a stabilization appends")
        return add_cancelling_pair(p, "primary", name)
    k = p.ngens
    gen_pos = k if gen_pos is None else gen_pos
    rel_pos = p.nrels if rel_pos is None else rel_pos
    if not 0 <= gen_pos <= k or not 0 <= rel_pos <= p.nrels:
        raise MoveError("stabilization position out of range")
    if p.alphabet.boundary_names:
        raise MoveError("stabilization of presentations with boundary letters is unsupported")
    name = name or p.alphabet.fresh_name()
    names = list(p.alphabet.names)
    names.insert(gen_pos, name)
    # shift generators at or after gen_pos up by one
    perm = [g if g < gen_pos else g + 1 for g in range(k)]
    rels = [Word._trusted(relabel(r, perm)) for r in p.relators]
    rels.insert(rel_pos, Word((gen_pos + 1,)))
    return Presentation(Alphabet(tuple(names)), tuple(rels))


def destabilize(p, i: int, side: str = "primary"):
    """Remove relator ``i`` equal to a single generator absent from every other relator."""
    if isinstance(p, BiPresentation):
        return remove_cancelling_pair(p, i, side)
    if side != "primary":
        raise MoveError("dual destabilization needs relator/dual-relator pairs")
    _index(p.relators, i)
    r = p.relators[i]
    if len(r) != 1 or r[0] < 0:
        raise MoveError(f"relator {i + 1} is not a single generator")
    g = r[0] - 1
    for t, other in enumerate(p.relators):
        if t != i and any(abs(c) == g + 1 for c in other):
            raise MoveError(f"generator {p.alphabet.names[g]} occurs in relator {t + 1}")
    names = list(p.alphabet.names)
    del names[g]
    perm = [h if h < g else h - 1 for h in range(p.ngens)]
    rels = [Word._trusted(relabel(w, perm)) for t, w in enumerate(p.relators) if t != i]
    return Presentation(Alphabet(tuple(names), p.alphabet.boundary_names), tuple(rels))


def add_cancelling_pair(bp: BiPresentation, side: str = "dual", name: str | None = None) -> BiPresentation:
    """Append a 1/2-pair (``side='primary'``) or a 2/3-pair (``side='dual'``)."""
    if side == "primary":
        if bp.primary.boundary_names:
            raise MoveError("primary alphabet cannot carry boundary letters")
        name = name or bp.primary.fresh_name()
        primary = bp.primary.with_names(bp.primary.names + (name,))
        hp = HandlePair(Word((len(primary.names),)), EMPTY)
        return BiPresentation(primary, bp.dual, bp.pairs + (hp,))
    if side == "dual":
        name = name or bp.dual.fresh_name("dual")
        # new dual generator goes before boundary letters; shift their codes
        k = len(bp.dual.names)
        dual = Alphabet(bp.dual.names + (name,), bp.dual.boundary_names)
        perm = [g if g < k else g + 1 for g in range(len(bp.dual))]
        pairs = [HandlePair(hp.relator, Word._trusted(relabel(hp.dual_relator, perm))) for hp in bp.pairs]
        pairs.append(HandlePair(EMPTY, Word((k + 1,))))
        return BiPresentation(bp.primary, dual, tuple(pairs))
    raise MoveError(f"unknown side {side!r}")


def remove_cancelling_pair(bp: BiPresentation, i: int, side: str = "primary") -> BiPresentation:
    """Inverse of :func:`add_cancelling_pair` for the pair at position ``i``."""
    _index(bp.pairs, i)
    hp = bp.pairs[i]
    if side == "primary":
        word, other_side, alpha = hp.relator, hp.dual_relator, bp.primary
    elif side == "dual":
        word, other_side, alpha = hp.dual_relator, hp.relator, bp.dual
    else:
        raise MoveError(f"unknown side {side!r}")
    if other_side or len(word) != 1 or word[0] < 0 or word[0] > len(alpha.names):
        raise MoveError(f"pair {i + 1} is not a cancelling {side} pair")
    g = word[0] - 1
    for t, q in enumerate(bp.pairs):
        w = q.relator if side == "primary" else q.dual_relator
        if t != i and any(abs(c) == g + 1 for c in w):
            raise MoveError(f"generator {alpha.names[g]} occurs in pair {t + 1}")
    names = list(alpha.names)
    del names[g]
    perm = [h if h < g else h - 1 for h in range(len(alpha))]
    new_alpha = Alphabet(tuple(names), alpha.boundary_names)
    pairs = []
    for t, q in enumerate(bp.pairs):
        if t == i:
            continue
        if side == "primary":
            pairs.append(HandlePair(Word._trusted(relabel(q.relator, perm)), q.dual_relator))
        else:
            pairs.append(HandlePair(q.relator, Word._trusted(relabel(q.dual_relator, perm))))
    if side == "primary":
        return BiPresentation(new_alpha, bp.dual, tuple(pairs))
    return BiPresentation(bp.primary, new_alpha, tuple(pairs))


# --- 2-handle slides -----------------------------------------------------------

def general_slide(bp: BiPresentation, i: int, j: int, path: SlidePath = SlidePath(), sign: int = 1) -> BiPresentation:
    """Slide handle ``i`` over ``sign * H_j`` along ``path = (c, c*)``.

    ``r_i <- r_i c r_j^sign c^-1`` and ``r*_j <- r*_j c*^-1 (r*_i)^-sign c*``;
    every other relator and dual relator is untouched.
    """
    if not isinstance(bp, BiPresentation):
        raise MoveError("slides act on relator/dual-relator pairs")
    _index(bp.pairs, i)
    _index(bp.pairs, j)
    _distinct(i, j)
    if sign not in (1, -1):
        raise MoveError("slide sign must be +1 or -1")
    _check_word(path.c, len(bp.primary), "slide path")
    _check_word(path.c_star, len(bp.dual), "dual slide path")
    hi, hj = bp.pairs[i], bp.pairs[j]
    rj = hj.relator if sign > 0 else invert(hj.relator)
    dual_i = invert(hi.dual_relator) if sign > 0 else hi.dual_relator
    pairs = list(bp.pairs)
    pairs[i] = HandlePair(concat(hi.relator, conjugate(rj, path.c)), hi.dual_relator)
    pairs[j] = HandlePair(hj.relator, concat(hj.dual_relator, conjugate(dual_i, invert(path.c_star))))
    return bp.with_pairs(pairs)


def single_slide(bp: BiPresentation, i: int, j: int, c=EMPTY, sign: int = 1) -> BiPresentation:
    return general_slide(bp, i, j, SlidePath(c, EMPTY), sign)


def double_slide(bp: BiPresentation, i: int, j: int, c=EMPTY, sign: int = 1, exponent: int = 1) -> BiPresentation:
    """Slide ``i`` over ``sign*H_j`` along ``(c, 1)``, then over ``-sign*H_j`` along ``(1, 1)``.

    ``r_i <- r_i [c, r_j^sign]^exponent`` with all dual relators fixed.
    ``exponent=-1`` gives the inverse move.
    """
    if not isinstance(bp, BiPresentation):
        raise MoveError("slides act on relator/dual-relator pairs")
    _index(bp.pairs, i)
    _index(bp.pairs, j)
    _distinct(i, j)
    if exponent not in (1, -1) or sign not in (1, -1):
        raise MoveError("double slide sign and exponent must be +1 or -1")
    _check_word(c, len(bp.primary), "slide path")
    rj = bp.pairs[j].relator if sign > 0 else invert(bp.pairs[j].relator)
    comm = commutator(c, rj)
    if exponent < 0:
        comm = invert(comm)
    pairs = list(bp.pairs)
    pairs[i] = HandlePair(concat(pairs[i].relator, comm), pairs[i].dual_relator)
    return bp.with_pairs(pairs)


# --- AC-structure recognition ------------------------------------------------------

@dataclass(frozen=True)
class MatchEntry:
    relator: int
    generator: int
    sign: int
    conjugator: Word


@dataclass(frozen=True)
class ACStatus:
    type1: bool
    type2: bool
    matching: tuple[MatchEntry, ...] | None


def matchable_generator(r: Sequence[int]):
    """``(generator, sign, conjugator)`` if ``r`` is conjugate to a generator or its inverse."""
    core, conj = cyclic_reduce(r)
    if len(core) == 1:
        c = core[0]
        return abs(c) - 1, (1 if c > 0 else -1), conj
    return None


def maximum_bipartite_matching(adj: Sequence[Sequence[int]], nright: int) -> list[int]:
    """Augmenting-path matching; ``adj[u]`` lists right vertices of left vertex ``u``.

    Returns ``match_left`` with -1 for unmatched. Lower indices are tried first.
    """
    match_right = [-1] * nright
    match_left = [-1] * len(adj)

    def augment(u, seen):
        for v in adj[u]:
            if seen[v]:
                continue
            seen[v] = True
            if match_right[v] == -1 or augment(match_right[v], seen):
                match_right[v] = u
                match_left[u] = v
                return True
        return False

    for u in range(len(adj)):
        augment(u, [False] * nright)
    return match_left


def is_ac_structure(p) -> ACStatus:
    """Decide both AC-structure types on relators matched to generators up to conjugacy."""
    if isinstance(p, BiPresentation):
        p = p.presentation()
    k, l = p.ngens, p.nrels
    info = [matchable_generator(r) for r in p.relators]
    adj = [[m[0]] if m is not None and m[0] < k else [] for m in info]
    match = maximum_bipartite_matching(adj, k)
    size = sum(1 for v in match if v >= 0)
    type1 = k >= l and size == l
    type2 = k <= l and size == k
    witness = None
    if type1 or type2:
        witness = tuple(MatchEntry(i, g, info[i][1], info[i][2]) for i, g in enumerate(match) if g >= 0)
    return ACStatus(type1, type2, witness)
