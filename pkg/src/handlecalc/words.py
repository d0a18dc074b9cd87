"""Free-group words over a named alphabet.

Letters are nonzero integer codes: generator ``g`` (0-based position in the
alphabet, boundary names following the ordinary names) is ``g + 1`` and its
inverse is ``-(g + 1)``. Names only matter at the text boundary.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*(@[0-9]+)*\Z")


class WordError(ValueError):
    pass


@dataclass(frozen=True)
class Alphabet:
    names: tuple[str, ...] = ()
    boundary_names: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "boundary_names", tuple(self.boundary_names))
        seen = set()
        for n in self.names + self.boundary_names:
            if not isinstance(n, str) or not IDENT.match(n):
                raise WordError(f"invalid generator identifier {n!r}")
            if n in seen:
                raise WordError(f"duplicate generator identifier {n!r}")
            seen.add(n)

    def __len__(self):
        return len(self.names) + len(self.boundary_names)

    @property
    def all_names(self) -> tuple[str, ...]:
        return self.names + self.boundary_names

    def index(self, name: str) -> int:
        try:
            return self.all_names.index(name)
        except ValueError:
            raise WordError(f"unknown generator {name!r}") from None

    def code(self, name: str, sign: int = 1) -> int:
        return sign * (self.index(name) + 1)

    def gen(self, name: str) -> "Word":
        return Word((self.code(name),))

    def word(self, text: str) -> "Word":
        """Parse ``"x y^-1 z^2"``; ``"1"`` or ``""`` is the identity."""
        codes: list[int] = []
        for tok in text.split():
            codes.extend(parse_letter_token(tok, self))
        return reduce(codes)

    def format(self, w: Sequence[int]) -> str:
        return format_word(w, self)

    def with_names(self, names: Iterable[str]) -> "Alphabet":
        return Alphabet(tuple(names), self.boundary_names)

    def fresh_name(self, pool: str = "primary") -> str:
        taken = set(self.all_names)
        if pool == "dual":
            n = 1
            while f"d{n}" in taken:
                n += 1
            return f"d{n}"
        for ch in "zyxwvutsrqponmlkjihgfedcba":
            if ch not in taken:
                return ch
        n = 1
        while f"g{n}" in taken:
            n += 1
        return f"g{n}"


def parse_letter_token(tok: str, alphabet: Alphabet) -> list[int]:
    if tok == "1":
        return []
    name, caret, exp = tok.partition("^")
    if caret:
        try:
            k = int(exp)
        except ValueError:
            raise WordError(f"malformed exponent in {tok!r}") from None
        if k == 0:
            raise WordError(f"zero exponent in {tok!r}")
    else:
        k = 1
    c = alphabet.code(name)
    return [c if k > 0 else -c] * abs(k)


def format_word(w: Sequence[int], alphabet: Alphabet) -> str:
    if not w:
        return "1"
    names = alphabet.all_names
    out = []
    i = 0
    while i < len(w):
        j = i
        while j < len(w) and w[j] == w[i]:
            j += 1
        c, run = w[i], j - i
        name = names[abs(c) - 1]
        k = run if c > 0 else -run
        out.append(name if k == 1 else f"{name}^{k}")
        i = j
    return " ".join(out)


class Word(tuple):
    """Freely reduced word; construction always reduces.

    A ``tuple`` subclass so words hash, compare and sort as plain code tuples.
    """

    __slots__ = ()

    def __new__(cls, letters: Iterable[int] = ()):
        return tuple.__new__(cls, _reduce_codes(letters))

    @classmethod
    def _trusted(cls, letters) -> "Word":
        return tuple.__new__(cls, letters)

    def __mul__(self, other):
        return concat(self, other)

    def inverse(self) -> "Word":
        return invert(self)

    def __repr__(self):
        return f"Word({tuple(self)!r})"

    # tuple slicing would bypass the subclass
    def __getitem__(self, item):
        r = tuple.__getitem__(self, item)
        if isinstance(item, slice):
            return Word._trusted(r)
        return r



def _reduce_codes(letters: Iterable[int]) -> list[int]:
    stack: list[int] = []
    for c in letters:
        c = int(c)
        if c == 0:
            raise WordError("letter code 0 is not a generator")
        if stack and stack[-1] == -c:
            stack.pop()
        else:
            stack.append(c)
    return stack


EMPTY = Word()


def _w(w) -> Word:
    return w if isinstance(w, Word) else Word(w)


def reduce(raw, alphabet: Alphabet | None = None) -> Word:
    """Freely reduce a letter sequence.

    ``raw`` holds integer codes, or ``(name, sign)`` pairs / bare names when an
    alphabet is given.
    """
    if alphabet is None:
        return Word(raw)
    if isinstance(raw, str):
        return alphabet.word(raw)
    codes = []
    for item in raw:
        if isinstance(item, str):
            codes.append(alphabet.code(item))
        elif isinstance(item, tuple):
            name, sign = item
            if sign not in (1, -1):
                raise WordError(f"letter sign must be +1 or -1, got {sign}")
            codes.append(alphabet.code(name, sign))
        else:
            c = int(item)
            if c == 0 or abs(c) > len(alphabet):
                raise WordError(f"letter code {c} outside alphabet")
            codes.append(c)
    return Word(codes)


def concat(*words: Sequence[int]) -> Word:
    out: list[int] = []
    for w in words:
        w = _w(w)
        k = 0
        n = len(w)
        while k < n and out and out[-1] == -w[k]:
            out.pop()
            k += 1
        out.extend(w[k:])
    return Word._trusted(out)


def invert(w: Sequence[int]) -> Word:
    w = _w(w)
    return Word._trusted([-c for c in reversed(w)])


def conjugate(w: Sequence[int], c: Sequence[int]) -> Word:
    """``c w c^-1``, reduced."""
    return concat(c, w, invert(c))


def commutator(a: Sequence[int], b: Sequence[int]) -> Word:
    return concat(a, b, invert(a), invert(b))


def power(w: Sequence[int], k: int) -> Word:
    base = w if k >= 0 else invert(w)
    return concat(*([base] * abs(k)))


def cyclic_reduce(w: Sequence[int]) -> tuple[Word, Word]:
    """Return ``(core, conj)`` with ``w = conj core conj^-1`` and core cyclically reduced."""
    w = _w(w)
    i, j = 0, len(w) - 1
    while i < j and w[i] == -w[j]:
        i += 1
        j -= 1
    return Word._trusted(w[i:j + 1]), Word._trusted(w[:i])


def is_cyclically_reduced(w: Sequence[int]) -> bool:
    w = _w(w)
    return len(w) < 2 or w[0] != -w[-1]


def substitute(w: Sequence[int], images: Mapping[int, Sequence[int]] | Sequence[Sequence[int]]) -> Word:
    """Image of ``w`` under the endomorphism sending generator ``g`` to ``images[g]``.

    ``images`` is indexed by 0-based generator position; generators missing
    from a mapping are fixed.
    """
    get = images.get if isinstance(images, Mapping) else None
    parts = []
    for c in w:
        g = abs(c) - 1
        if get is not None:
            img = get(g)
            if img is None:
                img = (g + 1,)
        else:
            img = images[g]
        parts.append(img if c > 0 else invert(img))
    return concat(*parts)


def exponent_sums(w: Sequence[int], ngens: int) -> list[int]:
    out = [0] * ngens
    for c in w:
        g = abs(c) - 1
        if g < ngens:
            out[g] += 1 if c > 0 else -1
    return out


def relabel(w: Sequence[int], perm: Sequence[int]) -> tuple[int, ...]:
    """Move generator ``g`` to position ``perm[g]``."""
    return tuple(perm[c - 1] + 1 if c > 0 else -(perm[-c - 1] + 1) for c in w)


def letter_order(c: int) -> int:
    """Sort key putting ``x1 < x1^-1 < x2 < x2^-1 < ...``."""
    return 2 * (abs(c) - 1) + (c < 0)


def min_cyclic_form(w: Sequence[int]) -> tuple[int, ...]:
    """Least rotation of the cyclic core of ``w`` or of its inverse, in ``letter_order`` keys."""
    core, _ = cyclic_reduce(w)
    if not core:
        return ()
    best = None
    for cand in (core, invert(core)):
        keys = [letter_order(c) for c in cand]
        n = len(keys)
        doubled = keys + keys
        for s in range(n):
            rot = tuple(doubled[s:s + n])
            if best is None or rot < best:
                best = rot
    return best


def words_up_to(ngens: int, max_len: int) -> list[Word]:
    """All reduced words of length <= max_len, shortlex ordered."""
    letters = [c for g in range(1, ngens + 1) for c in (g, -g)]
    out = [EMPTY]
    layer = [EMPTY]
    for _ in range(max_len):
        nxt = []
        for w in layer:
            for c in letters:
                if w and w[-1] == -c:
                    continue
                nxt.append(Word._trusted(tuple(w) + (c,)))
        out.extend(nxt)
        layer = nxt
    return out
