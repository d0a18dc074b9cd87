"""Bounded search over the move graph.

Trivialization search runs a bidirectional breadth-first phase (forward from
the input, backward from the standard trivial presentation) followed by a
beam phase ordered by total cyclically reduced length. The breadth-first
tables dedup exact relator data up to relator order and generator
relabelling, which are exact symmetries of the move vocabulary, so the phase
stays complete for a capped conjugator length. Goal detection and the beam
transposition table use :class:`CanonicalForm`, which also forgets relator
inversion and conjugation.
"""
from __future__ import annotations

import itertools
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

from .corkcalc import NormalClosureCertificate
from .moves import MoveKind, MoveToken, apply_move, fold, invert_script
from .presentation import Presentation, standard_trivial
from .words import (
    EMPTY,
    Word,
    concat,
    conjugate,
    cyclic_reduce,
    invert,
    letter_order,
    min_cyclic_form,
    relabel,
    substitute,
    words_up_to,
)

# beyond this many generators only relator order is quotiented
MAX_PERM_GENS = 6


@dataclass(frozen=True)
class SearchBudget:
    max_depth: int = 8
    max_nodes: int = 20000
    beam_width: int = 32
    conjugator_length_cap: int = 1
    rng_seed: int = 0
    bfs_depth: int = 4
    stable: bool = False
    max_generators: int | None = None
    workers: int = 1

    def __post_init__(self):
        for name in ("max_depth", "max_nodes", "conjugator_length_cap", "rng_seed", "bfs_depth"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative")
        if self.beam_width < 1:
            raise ValueError("beam_width must be at least 1")
        if self.workers < 1:
            raise ValueError("workers must be at least 1")


@dataclass(frozen=True, order=True)
class CanonicalForm:
    ngens: int
    relators: tuple[tuple[int, ...], ...]


def _perms(k: int):
    if k > MAX_PERM_GENS:
        return [tuple(range(k))]
    return list(itertools.permutations(range(k)))


def canonical_form(p) -> CanonicalForm:
    """Invariant under relator order, inversion, conjugation and generator relabelling."""
    k = p.ngens if hasattr(p, "ngens") else len(p.alphabet.names)
    return _canonical(k, p.relators)


def _canonical(k: int, rels) -> CanonicalForm:
    best = None
    for perm in _perms(k):
        key = tuple(sorted(min_cyclic_form(relabel(r, perm)) for r in rels))
        if best is None or key < best:
            best = key
    return CanonicalForm(k, best)


def _strict_key(k: int, rels):
    best = None
    for perm in _perms(k):
        key = tuple(sorted(tuple(letter_order(c) for c in relabel(r, perm)) for r in rels))
        if best is None or key < best:
            best = key
    return (k, best)


def _normalizing_moves(k: int, rels) -> list[MoveToken]:
    """Generator and relator swaps taking ``rels`` to its strict-key representative."""
    best = None
    for perm in _perms(k):
        key = tuple(sorted(tuple(letter_order(c) for c in relabel(r, perm)) for r in rels))
        if best is None or key < best[0]:
            best = (key, perm)
    perm = best[1]
    moves = []
    # generator g must end at position perm[g]
    at = list(range(k))  # at[position] = original generator there
    where = list(range(k))
    for pos in range(k):
        g = perm.index(pos)
        cur = where[g]
        if cur != pos:
            moves.append(MoveToken(MoveKind.SwapGenerators, pos, cur))
            h = at[pos]
            at[pos], at[cur] = g, h
            where[g], where[h] = pos, cur
    keyed = [tuple(letter_order(c) for c in relabel(r, perm)) for r in rels]
    order = sorted(range(len(rels)), key=lambda t: (keyed[t], t))
    slot = list(range(len(rels)))  # slot[position] = original relator there
    loc = list(range(len(rels)))
    for pos, t in enumerate(order):
        cur = loc[t]
        if cur != pos:
            moves.append(MoveToken(MoveKind.SwapRelators, pos, cur))
            u = slot[pos]
            slot[pos], slot[cur] = t, u
            loc[t], loc[u] = pos, cur
    return moves


def is_trivial_form(k: int, rels) -> bool:
    """Balanced and every relator conjugate to a distinct generator or its inverse."""
    if len(rels) != k:
        return False
    seen = set()
    for r in rels:
        core, _ = cyclic_reduce(r)
        if len(core) != 1:
            return False
        seen.add(abs(core[0]))
    return len(seen) == k


def total_cyclic_length(rels) -> int:
    return sum(len(cyclic_reduce(r)[0]) for r in rels)


# --- raw transitions ----------------------------------------------------------------
# A state is (ngens, relators as Words); a move descriptor is a short tuple
# converted to a MoveToken only when a script is reconstructed.

def _vocabulary(k: int, nrels: int, cap: int, conjugators):
    out = []
    for i in range(nrels):
        out.append(("inv", i))
    for i in range(nrels):
        for j in range(nrels):
            if i == j:
                continue
            for s in (1, -1):
                for c in conjugators:
                    out.append(("mul", i, j, c, s))
    for g in range(k):
        out.append(("ginv", g))
    for g in range(k):
        for h in range(k):
            if g != h:
                for s in (1, -1):
                    out.append(("gmul", g, h, s))
    return out


def _apply_raw(state, mv):
    k, rels = state
    op = mv[0]
    if op == "inv":
        rels = list(rels)
        rels[mv[1]] = invert(rels[mv[1]])
        return k, tuple(rels)
    if op == "mul":
        _, i, j, c, s = mv
        rj = rels[j] if s > 0 else invert(rels[j])
        rels = list(rels)
        rels[i] = concat(rels[i], conjugate(rj, c))
        return k, tuple(rels)
    if op == "ginv":
        g = mv[1]
        return k, tuple(substitute(r, {g: (-(g + 1),)}) for r in rels)
    if op == "gmul":
        _, g, h, s = mv
        img = Word((g + 1, -s * (h + 1)))
        return k, tuple(substitute(r, {g: img}) for r in rels)
    if op == "stab":
        return k + 1, tuple(rels) + (Word((k + 1,)),)
    if op == "destab":
        i = mv[1]
        r = rels[i]
        g = r[0] - 1
        perm = [h if h < g else h - 1 for h in range(k)]
        return k - 1, tuple(Word._trusted(relabel(w, perm)) for t, w in enumerate(rels) if t != i)
    raise ValueError(op)  # pragma: no cover


def _destabilizable(state, i):
    k, rels = state
    r = rels[i]
    if len(r) != 1 or r[0] < 0:
        return False
    g = r[0]
    return all(t == i or all(abs(c) != g for c in w) for t, w in enumerate(rels))


def _token(mv) -> MoveToken:
    op = mv[0]
    if op == "inv":
        return MoveToken(MoveKind.InvertRelator, mv[1])
    if op == "mul":
        return MoveToken(MoveKind.MultiplyRelator, mv[1], mv[2], mv[3], sign=mv[4])
    if op == "ginv":
        return MoveToken(MoveKind.GeneratorInvert, mv[1])
    if op == "gmul":
        return MoveToken(MoveKind.GeneratorMultiply, mv[1], mv[2], sign=mv[3])
    if op == "stab":
        return MoveToken(MoveKind.Stabilize)
    if op == "destab":
        return MoveToken(MoveKind.Destabilize, mv[1])
    raise ValueError(op)  # pragma: no cover


@dataclass(frozen=True)
class _Expander:
    cap: int
    stable: bool
    max_generators: int

    def __call__(self, state):
        k, rels = state
        vocab = _vocabulary(k, len(rels), self.cap, words_up_to(k, self.cap))
        out = [(mv, _apply_raw(state, mv)) for mv in vocab]
        if self.stable:
            if k < self.max_generators:
                mv = ("stab",)
                out.append((mv, _apply_raw(state, mv)))
            for i in range(len(rels)):
                if k > 1 and _destabilizable(state, i):
                    mv = ("destab", i)
                    out.append((mv, _apply_raw(state, mv)))
        return out


def _chunk_expand(args):
    expander, states = args
    return [expander(s) for s in states]


def _expand_wave(expander, states, workers):
    """Children of every state, in input order; identical for any worker count."""
    if workers <= 1 or len(states) < 2 * workers:
        return [expander(s) for s in states]
    size = -(-len(states) // workers)
    chunks = [states[t:t + size] for t in range(0, len(states), size)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_chunk_expand, [(expander, c) for c in chunks]))
    return [children for part in parts for children in part]


@dataclass
class SearchResult:
    script: tuple[MoveToken, ...] | None
    nodes: int
    status: str  # "found" | "exhausted"
    result: Presentation | None = None

    @property
    def found(self) -> bool:
        return self.script is not None


class _Tree:
    """Parent pointers keyed by strict key."""

    def __init__(self):
        self.parent = {}  # key -> (parent_key, move) ; root maps to None
        self.state = {}

    def add(self, key, state, parent_key, mv):
        self.parent[key] = None if parent_key is None else (parent_key, mv)
        self.state[key] = state

    def path(self, key):
        moves = []
        while self.parent[key] is not None:
            key, mv = self.parent[key]
            moves.append(mv)
        return moves[::-1]


def trivialization_search(p: Presentation, budget: SearchBudget = SearchBudget()) -> SearchResult:
    """Look for a move script taking ``p`` to the standard trivial presentation.

    Absence of a script is budget exhaustion, never a verdict.
    """
    k0 = p.ngens
    max_gens = budget.max_generators if budget.max_generators is not None else k0 + 1
    expander = _Expander(budget.conjugator_length_cap, budget.stable, max_gens)
    nodes = 0
    start = (k0, tuple(p.relators))
    if is_trivial_form(*start):
        return SearchResult((), 0, "found", p)

    fwd_depth = (budget.bfs_depth + 1) // 2
    bwd_depth = budget.bfs_depth // 2

    # backward ball around the standard trivial presentation
    goal = (k0, tuple(standard_trivial(p.alphabet).relators))
    back = _Tree()
    back.add(_strict_key(*goal), goal, None, None)
    layer = [_strict_key(*goal)]
    for _ in range(bwd_depth):
        if nodes + len(layer) > budget.max_nodes:
            return SearchResult(None, nodes, "exhausted")
        waves = _expand_wave(expander, [back.state[key] for key in layer], budget.workers)
        nodes += len(layer)
        nxt = []
        for key, children in zip(layer, waves):
            for mv, child in children:
                ck = _strict_key(*child)
                if ck not in back.parent:
                    back.add(ck, child, key, mv)
                    nxt.append(ck)
        layer = nxt

    fwd = _Tree()
    sk = _strict_key(*start)
    fwd.add(sk, start, None, None)

    def hit(key, state):
        return is_trivial_form(*state) or key in back.parent

    if sk in back.parent:
        return _finish(p, fwd, back, sk, nodes)

    layer = [sk]
    depth = 0
    while depth < fwd_depth and layer:
        if nodes + len(layer) > budget.max_nodes:
            return SearchResult(None, nodes, "exhausted")
        waves = _expand_wave(expander, [fwd.state[key] for key in layer], budget.workers)
        nodes += len(layer)
        depth += 1
        nxt = []
        for key, children in zip(layer, waves):
            for mv, child in children:
                ck = _strict_key(*child)
                if ck in fwd.parent:
                    continue
                fwd.add(ck, child, key, mv)
                if hit(ck, child):
                    return _finish(p, fwd, back, ck, nodes)
                nxt.append(ck)
        layer = nxt

    # beam phase
    seen = {_canonical(*fwd.state[key]) for key in fwd.parent}
    beam = _select(layer, fwd, budget.beam_width)
    while depth < budget.max_depth and beam:
        if nodes + len(beam) > budget.max_nodes:
            return SearchResult(None, nodes, "exhausted")
        waves = _expand_wave(expander, [fwd.state[key] for key in beam], budget.workers)
        nodes += len(beam)
        depth += 1
        cands = []
        for key, children in zip(beam, waves):
            for mv, child in children:
                cf = _canonical(*child)
                if cf in seen:
                    continue
                seen.add(cf)
                ck = _strict_key(*child)
                if ck in fwd.parent:
                    continue
                fwd.add(ck, child, key, mv)
                if hit(ck, child):
                    return _finish(p, fwd, back, ck, nodes)
                cands.append((total_cyclic_length(child[1]), cf, ck))
        cands.sort()
        beam = [ck for _, _, ck in cands[:budget.beam_width]]
    return SearchResult(None, nodes, "exhausted")


def _select(keys, tree, width):
    scored = sorted((total_cyclic_length(tree.state[key][1]), _canonical(*tree.state[key]), key) for key in keys)
    return [key for _, _, key in scored[:width]]


def _finish(p, fwd, back, key, nodes):
    script = [_token(mv) for mv in fwd.path(key)]
    state = fwd.state[key]
    if not is_trivial_form(*state):
        bstate = back.state[key]
        script += _normalizing_moves(*state)
        script += list(reversed(_normalizing_moves(*bstate)))
        bpath = [_token(mv) for mv in back.path(key)]
        # backward path runs goal -> bstate; walk it in reverse
        start = Presentation(p.alphabet, tuple(back.state[back_root(back)][1]))
        script += list(invert_script(start, bpath))
    script = _cancel_swaps(replace(t, name=None) if t.kind is MoveKind.Stabilize else t for t in script)
    result = fold(p, script)
    if not is_trivial_form(result.ngens, result.relators) or canonical_form(result) != canonical_form(
            standard_trivial(result.alphabet)):
        raise AssertionError("search produced a script that does not verify")  # pragma: no cover
    return SearchResult(tuple(script), nodes, "found", result)


def _cancel_swaps(script):
    """Drop adjacent repeated swaps, which undo each other."""
    out = []
    for t in script:
        if (out and t.kind in (MoveKind.SwapRelators, MoveKind.SwapGenerators) and out[-1].kind is t.kind
                and {out[-1].i, out[-1].j} == {t.i, t.j}):
            out.pop()
        else:
            out.append(t)
    return out


def back_root(tree):
    return next(key for key, v in tree.parent.items() if v is None)


# --- scrambling -------------------------------------------------------------------------

def legal_moves(p: Presentation, cap: int = 1, stable: bool = False, max_generators: int | None = None):
    """Every invertible move token applicable to ``p``, in a fixed order."""
    k, n = p.ngens, p.nrels
    conj = words_up_to(k, cap)
    toks = [_token(mv) for mv in _vocabulary(k, n, cap, conj)]
    for i in range(n):
        for j in range(i + 1, n):
            toks.append(MoveToken(MoveKind.SwapRelators, i, j))
    for g in range(k):
        for h in range(g + 1, k):
            toks.append(MoveToken(MoveKind.SwapGenerators, g, h))
    if stable and (max_generators is None or k < max_generators):
        toks.append(MoveToken(MoveKind.Stabilize))
    return toks


def scramble(p: Presentation, k: int, seed: int = 0, cap: int = 1, stable: bool = False,
             max_generators: int | None = None):
    """Apply ``k`` uniformly drawn legal moves; return ``(scrambled, inverse_script)``."""
    if k < 0:
        raise ValueError("move count must be nonnegative")
    rng = random.Random(seed)
    forward = []
    cur = p
    for _ in range(k):
        moves = legal_moves(cur, cap, stable, max_generators)
        t = moves[rng.randrange(len(moves))]
        if t.kind is MoveKind.Stabilize:
            t = replace(t, name=cur.alphabet.fresh_name())
        forward.append(t)
        cur = apply_move(cur, t)
    return cur, invert_script(p, forward)


# --- normal-closure certificates ------------------------------------------------------

def certificate_search(p: Presentation, target, budget: SearchBudget = SearchBudget()):
    """Breadth-first search for ``target`` as a product of conjugates of relators.

    Returns ``(certificate or None, nodes expanded)``.
    """
    target = Word(target)
    if not target:
        return NormalClosureCertificate(()), 0
    conj = words_up_to(p.ngens, budget.conjugator_length_cap)
    factors = []
    for t in range(p.nrels):
        for s in (1, -1):
            r = p.relators[t] if s > 0 else invert(p.relators[t])
            for c in conj:
                factors.append(((s, t, c), conjugate(r, c)))
    parent = {EMPTY: None}
    layer = [EMPTY]
    nodes = 0
    for _ in range(budget.max_depth):
        nxt = []
        for w in layer:
            if nodes >= budget.max_nodes:
                return None, nodes
            nodes += 1
            for f, val in factors:
                child = concat(w, val)
                if child in parent:
                    continue
                parent[child] = (w, f)
                if child == target:
                    out = []
                    while parent[child] is not None:
                        child, f = parent[child]
                        out.append(f)
                    return NormalClosureCertificate(tuple(reversed(out))), nodes
                nxt.append(child)
        layer = nxt
    return None, nodes
