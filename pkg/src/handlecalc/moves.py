"""Serializable move tokens and their application."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable

from . import presentation as P
from .presentation import BiPresentation, MoveError, SlidePath
from .words import EMPTY, Word


class MoveKind(enum.Enum):
    InvertRelator = "invertrelator"
    MultiplyRelator = "multiplyrelator"
    GeneratorInvert = "generatorinvert"
    GeneratorMultiply = "generatormultiply"
    Stabilize = "stabilize"
    Destabilize = "destabilize"
    AddCancellingPairPrimary = "addcancellingpairprimary"
    AddCancellingPairDual = "addcancellingpairdual"
    SingleSlide = "singleslide"
    DoubleSlide = "doubleslide"
    GeneralSlide = "generalslide"
    SwapRelators = "swaprelators"
    SwapGenerators = "swapgenerators"


TWO_INDEX = {
    MoveKind.MultiplyRelator, MoveKind.GeneratorMultiply, MoveKind.SingleSlide,
    MoveKind.DoubleSlide, MoveKind.GeneralSlide, MoveKind.SwapRelators, MoveKind.SwapGenerators,
}
ONE_INDEX = {MoveKind.InvertRelator, MoveKind.GeneratorInvert, MoveKind.Destabilize}
DISTINCT = TWO_INDEX - {MoveKind.SwapRelators, MoveKind.SwapGenerators}


@dataclass(frozen=True)
class MoveToken:
    """One move application. Indices are 0-based.

    ``sign`` selects sliding/multiplying by ``r_j`` or its inverse (and the
    direction of a generator multiply); ``exponent`` inverts a double slide;
    ``name``/``gen_pos``/``rel_pos`` place a stabilization; ``side`` says which
    kind of cancelling pair a destabilization removes.
    """

    kind: MoveKind
    i: int | None = None
    j: int | None = None
    c: Word = EMPTY
    c_star: Word = EMPTY
    sign: int = 1
    exponent: int = 1
    name: str | None = None
    gen_pos: int | None = None
    rel_pos: int | None = None
    side: str = "primary"

    def __post_init__(self):
        object.__setattr__(self, "c", Word(self.c))
        object.__setattr__(self, "c_star", Word(self.c_star))
        k = self.kind
        if k in TWO_INDEX and (self.i is None or self.j is None):
            raise MoveError(f"{k.value} needs two indices")
        if k in ONE_INDEX and self.i is None:
            raise MoveError(f"{k.value} needs an index")
        if k in DISTINCT and self.i == self.j:
            raise MoveError(f"{k.value} needs distinct indices")
        for v in (self.i, self.j):
            if v is not None and v < 0:
                raise MoveError("indices must be nonnegative")
        if self.sign not in (1, -1) or self.exponent not in (1, -1):
            raise MoveError("sign and exponent must be +1 or -1")
        if self.side not in ("primary", "dual"):
            raise MoveError(f"unknown side {self.side!r}")


MoveScript = tuple  # ordered MoveTokens


def apply_move(p, t: MoveToken):
    k = t.kind
    if k is MoveKind.InvertRelator:
        return P.ac_move_invert_relator(p, t.i)
    if k is MoveKind.MultiplyRelator:
        return P.ac_move_multiply(p, t.i, t.j, t.c, t.sign)
    if k is MoveKind.GeneratorInvert:
        return P.ac_move_generator(p, t.i, invert_flag=True)
    if k is MoveKind.GeneratorMultiply:
        return P.ac_move_generator(p, t.i, t.j, sign=t.sign)
    if k is MoveKind.Stabilize:
        return P.stabilize(p, t.name, t.gen_pos, t.rel_pos)
    if k is MoveKind.Destabilize:
        return P.destabilize(p, t.i, t.side)
    if k is MoveKind.AddCancellingPairPrimary:
        _need_pairs(p, k)
        return P.add_cancelling_pair(p, "primary", t.name)
    if k is MoveKind.AddCancellingPairDual:
        _need_pairs(p, k)
        return P.add_cancelling_pair(p, "dual", t.name)
    if k is MoveKind.SingleSlide:
        _need_pairs(p, k)
        return P.single_slide(p, t.i, t.j, t.c, t.sign)
    if k is MoveKind.GeneralSlide:
        _need_pairs(p, k)
        return P.general_slide(p, t.i, t.j, SlidePath(t.c, t.c_star), t.sign)
    if k is MoveKind.DoubleSlide:
        _need_pairs(p, k)
        return P.double_slide(p, t.i, t.j, t.c, t.sign, t.exponent)
    if k is MoveKind.SwapRelators:
        return P.swap_relators(p, t.i, t.j)
    if k is MoveKind.SwapGenerators:
        return P.swap_generators(p, t.i, t.j)
    raise MoveError(f"unhandled move kind {k}")  # pragma: no cover


def _need_pairs(p, kind):
    if not isinstance(p, BiPresentation):
        raise MoveError(f"{kind.value} acts on relator/dual-relator pairs")


def fold(p, script: Iterable[MoveToken]):
    for t in script:
        p = apply_move(p, t)
    return p


def inverse_of(t: MoveToken, before=None) -> MoveToken:
    """Token undoing ``t``.

    ``before`` (the value ``t`` was applied to) is needed only for Destabilize,
    whose inverse must restore the removed generator's name and position.
    """
    k = t.kind
    if k in (MoveKind.InvertRelator, MoveKind.GeneratorInvert, MoveKind.SwapRelators, MoveKind.SwapGenerators):
        return t
    if k in (MoveKind.MultiplyRelator, MoveKind.GeneratorMultiply, MoveKind.SingleSlide, MoveKind.GeneralSlide):
        return MoveToken(k, t.i, t.j, t.c, t.c_star, sign=-t.sign)
    if k is MoveKind.DoubleSlide:
        return MoveToken(k, t.i, t.j, t.c, sign=t.sign, exponent=-t.exponent)
    if k is MoveKind.Stabilize:
        if before is None and t.rel_pos is None:
            raise MoveError("inverse of an appending stabilization needs the prior presentation")
        rel_pos = t.rel_pos if t.rel_pos is not None else _nrels(before)
        return MoveToken(MoveKind.Destabilize, rel_pos, side="primary")
    if k is MoveKind.AddCancellingPairPrimary:
        if before is None:
            raise MoveError("inverse of a cancelling pair needs the prior value")
        return MoveToken(MoveKind.Destabilize, len(before.pairs), side="primary")
    if k is MoveKind.AddCancellingPairDual:
        if before is None:
            raise MoveError("inverse of a cancelling pair needs the prior value")
        return MoveToken(MoveKind.Destabilize, len(before.pairs), side="dual")
    if k is MoveKind.Destabilize:
        if before is None:
            raise MoveError("inverse of a destabilization needs the prior value")
        if isinstance(before, BiPresentation):
            hp = before.pairs[t.i]
            if t.side == "primary":
                g = hp.relator[0] - 1
                if t.i != len(before.pairs) - 1 or g != len(before.primary.names) - 1:
                    raise MoveError("only the last appended cancelling pair has an inverse token")
                return MoveToken(MoveKind.AddCancellingPairPrimary, name=before.primary.names[g])
            g = hp.dual_relator[0] - 1
            if t.i != len(before.pairs) - 1 or g != len(before.dual.names) - 1:
                raise MoveError("only the last appended cancelling pair has an inverse token")
            return MoveToken(MoveKind.AddCancellingPairDual, name=before.dual.names[g])
        g = before.relators[t.i][0] - 1
        return MoveToken(MoveKind.Stabilize, name=before.alphabet.names[g], gen_pos=g, rel_pos=t.i)
    raise MoveError(f"unhandled move kind {k}")  # pragma: no cover


def _nrels(p):
    return len(p.pairs) if isinstance(p, BiPresentation) else len(p.relators)


def invert_script(p, script: Iterable[MoveToken]) -> tuple[MoveToken, ...]:
    """Inverse script of ``script`` applied from ``p``."""
    inv = []
    for t in script:
        inv.append(inverse_of(t, p))
        p = apply_move(p, t)
    return tuple(reversed(inv))


def changes_counts(t: MoveToken) -> bool:
    return t.kind in (MoveKind.Stabilize, MoveKind.Destabilize,
                      MoveKind.AddCancellingPairPrimary, MoveKind.AddCancellingPairDual)
