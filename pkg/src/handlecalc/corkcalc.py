"""Multicorks, pinwheels and the encasement rewriting, at the presentation level."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .invariants import abelianization_matrix, smith_normal_form
from .moves import MoveKind, MoveToken, apply_move, fold
from .presentation import BiPresentation, Presentation, is_ac_structure
from .words import EMPTY, Alphabet, Word, commutator, concat, conjugate, invert


class VerificationError(ValueError):
    """Supplied witness data does not check out."""


def _component_name(name: str, index: int) -> str:
    return f"{name}@{index}"


def _strip_suffix(name: str) -> str:
    base, at, _ = name.rpartition("@")
    return base if at else name


def boundary_sum(*parts: Presentation) -> Presentation:
    """Free product of the pieces, generator ``g`` of piece ``i`` renamed ``g@i``."""
    names: list[str] = []
    rels: list[Word] = []
    for idx, p in enumerate(parts):
        if p.alphabet.boundary_names:
            raise ValueError("components may not carry boundary letters")
        shift = len(names)
        names.extend(_component_name(n, idx) for n in p.alphabet.names)
        for r in p.relators:
            rels.append(Word._trusted(tuple(c + shift if c > 0 else c - shift for c in r)))
    return Presentation(Alphabet(tuple(names)), tuple(rels))


def _check_cork(p: Presentation, what: str):
    if not p.is_balanced():
        raise VerificationError(f"{what} is not balanced")
    st = is_ac_structure(p)
    if not (st.type1 and st.type2):
        raise VerificationError(f"{what} is not an AC structure")


@dataclass(frozen=True)
class MulticorkModel:
    components: tuple[Presentation, ...]

    def __post_init__(self):
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        if not comps:
            raise VerificationError("a multicork needs at least one component")
        for i, c in enumerate(comps):
            _check_cork(c, f"component {i + 1}")

    @property
    def order(self) -> int:
        return len(self.components)


@dataclass(frozen=True)
class PinwheelModel:
    total: Presentation
    order: int
    # per component: (gen_start, gen_stop, rel_start, rel_stop)
    component_spans: tuple[tuple[int, int, int, int], ...]

    def component(self, i: int) -> Presentation:
        """Restriction of the total presentation to span ``i``, suffix removed."""
        g0, g1, r0, r1 = self.component_spans[i]
        names = tuple(_strip_suffix(n) for n in self.total.alphabet.names[g0:g1])
        rels = tuple(Word._trusted(tuple(c - g0 if c > 0 else c + g0 for c in r))
                     for r in self.total.relators[r0:r1])
        return Presentation(Alphabet(names), rels)

    def components(self) -> tuple[Presentation, ...]:
        return tuple(self.component(i) for i in range(self.order))


def mu(cork: Presentation, n: int) -> MulticorkModel:
    """Constant multicork with ``n`` copies of ``cork``."""
    if n < 1:
        raise ValueError("order must be at least 1")
    _check_cork(cork, "cork")
    return MulticorkModel((cork,) * n)


def _assemble(components: Sequence[Presentation]) -> PinwheelModel:
    total = boundary_sum(*components)
    spans = []
    g = r = 0
    for c in components:
        spans.append((g, g + c.ngens, r, r + c.nrels))
        g += c.ngens
        r += c.nrels
    return PinwheelModel(total, len(components), tuple(spans))


def pinwheel(mc: MulticorkModel) -> PinwheelModel:
    pw = _assemble(mc.components)
    st = is_ac_structure(pw.total)
    if not (pw.total.is_balanced() and st.type1 and st.type2):  # pragma: no cover - follows from components
        raise VerificationError("pinwheel lost the AC structure")
    return pw


def pinwheel_twist(pw: PinwheelModel, j: int) -> PinwheelModel:
    """Put component ``(i + j) mod n`` into slot ``i`` for every ``i``."""
    n = pw.order
    comps = pw.components()
    return _assemble([comps[(i + j) % n] for i in range(n)])


# --- witnesses -------------------------------------------------------------------

@dataclass(frozen=True)
class CommutatorDecomposition:
    """``pairs[i]`` lists ``(a_ij, b_ij)`` with ``r_i = x_i prod_j [a_ij, b_ij]`` (``i`` 0-based)."""

    pairs: Mapping[int, tuple[tuple[Word, Word], ...]]

    def __post_init__(self):
        norm = {int(i): tuple((Word(a), Word(b)) for a, b in ps) for i, ps in dict(self.pairs).items()}
        object.__setattr__(self, "pairs", dict(sorted(norm.items())))

    def product(self, i: int) -> Word:
        terms = [Word((i + 1,))] + [commutator(a, b) for a, b in self.pairs[i]]
        return concat(*terms)


@dataclass(frozen=True)
class NormalClosureCertificate:
    """Factors ``(sign, relator index, conjugator)``; the product of ``c r^sign c^-1`` is the target."""

    factors: tuple[tuple[int, int, Word], ...] = ()

    def __post_init__(self):
        fs = tuple((int(s), int(t), Word(c)) for s, t, c in self.factors)
        for s, _, _ in fs:
            if s not in (1, -1):
                raise ValueError("certificate signs must be +1 or -1")
        object.__setattr__(self, "factors", fs)

    def evaluate(self, relators: Sequence[Word]) -> Word:
        terms = []
        for s, t, c in self.factors:
            r = relators[t] if s > 0 else invert(relators[t])
            terms.append(conjugate(r, c))
        return concat(*terms)

    def inverted_conjugated(self, g: Word) -> "NormalClosureCertificate":
        """Certificate for ``g w^-1 g^-1`` when ``self`` certifies ``w``."""
        return NormalClosureCertificate(tuple((-s, t, concat(g, c)) for s, t, c in reversed(self.factors)))


def verify_decomposition(p: Presentation, d: CommutatorDecomposition) -> bool:
    for i in d.pairs:
        if not 0 <= i < min(p.nrels, p.ngens):
            return False
        if d.product(i) != p.relators[i]:
            return False
    return True


def verify_certificate(p: Presentation, target, cert: NormalClosureCertificate) -> bool:
    if any(not 0 <= t < p.nrels for _, t, _ in cert.factors):
        return False
    if any(abs(x) > p.ngens for _, _, c in cert.factors for x in c):
        return False
    return cert.evaluate(p.relators) == Word(target)


def encase(bp: BiPresentation, d: CommutatorDecomposition,
           certs: Mapping[tuple[int, int], NormalClosureCertificate]):
    """Rewrite each decomposed relator ``r_i`` into the bare generator ``x_i``.

    One extra 2/3-pair per commutator is added, single slides build its relator
    from the certificate, and a double slide over it strips the commutator.
    Returns ``(result, script)``; the script folds over ``bp`` to ``result``.
    """
    p = bp.presentation()
    if not verify_decomposition(p, d):
        raise VerificationError("commutator decomposition does not reproduce the relators")
    for i, ps in d.pairs.items():
        for j, (_, b) in enumerate(ps):
            cert = certs.get((i, j))
            if cert is None:
                raise VerificationError(f"no certificate for b[{i + 1},{j + 1}]")
            if not verify_certificate(p, b, cert):
                raise VerificationError(f"certificate for b[{i + 1},{j + 1}] does not evaluate to it")

    script: list[MoveToken] = []
    cur = bp

    def run(tok):
        nonlocal cur
        cur = apply_move(cur, tok)
        script.append(tok)

    n0 = len(bp.pairs)
    extra: dict[tuple[int, int], int] = {}
    for i, ps in d.pairs.items():
        for j in range(len(ps)):
            extra[(i, j)] = n0 + len(extra)
            run(MoveToken(MoveKind.AddCancellingPairDual, name=cur.dual.fresh_name("dual")))

    # Stripping the leftmost commutator of x [a,b] R by right multiplication
    # needs R^-1 [b,a] R = [R^-1 b a R, R^-1 b^-1 R]; the extra handle carries
    # R^-1 b^-1 R and the double slide runs along R^-1 b a R.
    paths: dict[tuple[int, int], Word] = {}
    for i, ps in d.pairs.items():
        for j, (a, b) in enumerate(ps):
            rest = concat(*[commutator(a2, b2) for a2, b2 in ps[j + 1:]])
            rinv = invert(rest)
            cert = certs[(i, j)].inverted_conjugated(rinv)
            e = extra[(i, j)]
            for s, t, c in cert.factors:
                run(MoveToken(MoveKind.SingleSlide, e, t, c, sign=s))
            paths[(i, j)] = concat(rinv, b, a, rest)

    for i, ps in d.pairs.items():
        for j in range(len(ps)):
            run(MoveToken(MoveKind.DoubleSlide, i, extra[(i, j)], paths[(i, j)]))
        if cur.pairs[i].relator != Word((i + 1,)):  # pragma: no cover - guarded by verification
            raise VerificationError(f"relator {i + 1} did not reduce to its generator")
    return cur, tuple(script)


def homological_pairing(p: Presentation):
    """Row-reduce relators until the top ``k x k`` exponent block is the identity.

    Uses relator products with trivial conjugators, inversions and swaps only.
    Returns ``(result, script)``.
    """
    k, n = p.ngens, p.nrels
    M = abelianization_matrix(p)
    if n < k or not smith_normal_form(M).h1_trivial():
        raise VerificationError("H1 is nonzero; no homological pairing exists")
    script: list[MoveToken] = []
    M = [row[:] for row in M]

    def add(i, j, s):  # row_i += s * row_j
        script.append(MoveToken(MoveKind.MultiplyRelator, i, j, EMPTY, sign=s))
        M[i] = [x + s * y for x, y in zip(M[i], M[j])]

    def swap(i, j):
        script.append(MoveToken(MoveKind.SwapRelators, i, j))
        M[i], M[j] = M[j], M[i]

    def negate(i):
        script.append(MoveToken(MoveKind.InvertRelator, i))
        M[i] = [-x for x in M[i]]

    for col in range(k):
        while True:
            rows = [r for r in range(col, n) if M[r][col]]
            if not rows:  # pragma: no cover - excluded by the H1 check
                raise VerificationError("H1 is nonzero; no homological pairing exists")
            piv = min(rows, key=lambda r: (abs(M[r][col]), r))
            if piv != col:
                swap(col, piv)
            others = [r for r in range(col + 1, n) if M[r][col]]
            if not others:
                break
            for r in others:
                q = M[r][col] // M[col][col]
                for _ in range(abs(q)):
                    add(r, col, -1 if q > 0 else 1)
        if M[col][col] < 0:
            negate(col)
        if M[col][col] != 1:  # pragma: no cover - excluded by the H1 check
            raise VerificationError("H1 is nonzero; no homological pairing exists")
        for r in range(col):
            q = M[r][col]
            for _ in range(abs(q)):
                add(r, col, -1 if q > 0 else 1)
    return fold(p, script), tuple(script)
