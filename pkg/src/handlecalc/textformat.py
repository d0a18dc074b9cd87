"""Line-oriented text format for presentations, scripts, witnesses and groups.

Grammar (one item per line, ``#`` comments, whitespace-separated tokens)::

    gens: x y               generators, in order
    duals: u v              dual generators (makes the document a bi-presentation)
    boundary: b             opaque boundary letters on the dual side
    rel: x y x^-1           relator; ``rel: <word> | <dual word>`` with pairs
    order: 2                pinwheel order, followed by one ``span:`` per component
    span: 1 1 1 1           first generator, generator count, first relator, relator count
    target: y               target word for certificate search
    decomp: 1 a= x b= y     one commutator pair of relator 1 (repeat for more)
    cert: 1 1 f= +2 x       certificate for b[1,1]: factors ``f= <sign><relator> <conjugator>``
    move: singleslide 1 2 c= x y^-1
    group: S3               followed by the rows of its multiplication table
    component:              starts a multicork component; its gens:/rel: lines follow

Words are ``name``, ``name^-1`` or ``name^k``; the identity is ``1``. Indices are 1-based.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .corkcalc import CommutatorDecomposition, NormalClosureCertificate, PinwheelModel
from .invariants import FiniteGroup
from .moves import MoveKind, MoveToken, apply_move
from .presentation import BiPresentation, HandlePair, MoveError, Presentation
from .words import Alphabet, Word, WordError, parse_letter_token


class ParseError(ValueError):
    def __init__(self, msg, line=None, col=None):
        self.line, self.col = line, col
        where = ""
        if line is not None:
            where = f"line {line}" + (f", col {col}" if col is not None else "") + ": "
        super().__init__(where + msg)


@dataclass(frozen=True)
class Document:
    presentation: Presentation | BiPresentation | None = None
    pinwheel_order: int | None = None
    spans: tuple[tuple[int, int, int, int], ...] = ()
    target: Word | None = None
    decomposition: CommutatorDecomposition | None = None
    certificates: tuple[tuple[tuple[int, int] | None, NormalClosureCertificate], ...] = ()
    moves: tuple[MoveToken, ...] = ()
    groups: tuple[FiniteGroup, ...] = ()
    components: tuple[Presentation, ...] = ()

    def pinwheel(self) -> PinwheelModel:
        if self.pinwheel_order is None or not isinstance(self.presentation, Presentation):
            raise ValueError("document does not describe a pinwheel")
        return PinwheelModel(self.presentation, self.pinwheel_order, self.spans)

    def cert_map(self) -> dict[tuple[int, int], NormalClosureCertificate]:
        return {key: cert for key, cert in self.certificates if key is not None}


# --- tokens ---------------------------------------------------------------------------

class _Line:
    def __init__(self, lineno: int, text: str):
        self.lineno = lineno
        self.text = text
        body = text.split("#", 1)[0]
        self.tokens: list[tuple[int, str]] = []
        col = 0
        for tok in body.split():
            col = body.index(tok, col)
            self.tokens.append((col + 1, tok))
            col += len(tok)

    def error(self, msg, k=None):
        col = self.tokens[k][0] if k is not None and k < len(self.tokens) else None
        return ParseError(msg, self.lineno, col)


def _word(line: _Line, toks: Sequence[tuple[int, str]], alphabet: Alphabet) -> Word:
    codes = []
    for col, tok in toks:
        try:
            codes.extend(parse_letter_token(tok, alphabet))
        except WordError as e:
            raise ParseError(str(e), line.lineno, col) from None
    return Word(codes)


def _int(line: _Line, tok: tuple[int, str], what="integer") -> int:
    try:
        return int(tok[1])
    except ValueError:
        raise ParseError(f"expected {what}, got {tok[1]!r}", line.lineno, tok[0]) from None


def _keyed(line: _Line, toks):
    """Split ``a= w w key=v ...`` into (positional tokens, {key: [tokens]}) keeping order."""
    pos, keyed = [], {}
    cur = None
    for col, tok in toks:
        if "=" in tok:
            key, _, rest = tok.partition("=")
            if not key:
                raise ParseError(f"malformed key in {tok!r}", line.lineno, col)
            cur = []
            keyed.setdefault(key, []).append(cur)
            if rest:
                cur.append((col + len(key) + 1, rest))
        elif cur is None:
            pos.append((col, tok))
        else:
            cur.append((col, tok))
    return pos, keyed


def _single(line, keyed, key, required=False):
    vals = keyed.get(key)
    if not vals:
        if required:
            raise line.error(f"missing {key}=")
        return None
    if len(vals) > 1:
        raise line.error(f"repeated {key}=")
    return vals[0]


# --- moves ------------------------------------------------------------------------------

_HAS_C = {MoveKind.MultiplyRelator, MoveKind.SingleSlide, MoveKind.DoubleSlide, MoveKind.GeneralSlide}
_HAS_SIGN = {MoveKind.MultiplyRelator, MoveKind.GeneratorMultiply, MoveKind.SingleSlide,
             MoveKind.DoubleSlide, MoveKind.GeneralSlide}


def _nindices(kind):
    from .moves import ONE_INDEX, TWO_INDEX

    return 2 if kind in TWO_INDEX else 1 if kind in ONE_INDEX else 0


def _dual_alpha(value):
    return value.dual if isinstance(value, BiPresentation) else Alphabet()


def parse_move(line: _Line, toks, value) -> MoveToken:
    if not toks:
        raise line.error("empty move")
    try:
        kind = MoveKind(toks[0][1].lower())
    except ValueError:
        raise ParseError(f"unknown move {toks[0][1]!r}", line.lineno, toks[0][0]) from None
    pos, keyed = _keyed(line, toks[1:])
    n = _nindices(kind)
    if len(pos) != n:
        raise ParseError(f"{kind.value} takes {n} indices", line.lineno, toks[0][0])
    idx = [_int(line, t, "index") - 1 for t in pos]
    allowed = set()
    kw = {}
    if kind in _HAS_C:
        allowed.add("c")
        kw["c"] = _word(line, _single(line, keyed, "c", required=True), value.alphabet)
    if kind is MoveKind.GeneralSlide or kind is MoveKind.SingleSlide:
        allowed.add("cstar")
        cs = _single(line, keyed, "cstar", required=kind is MoveKind.GeneralSlide)
        if cs is not None:
            kw["c_star"] = _word(line, cs, _dual_alpha(value))
            if kind is MoveKind.SingleSlide and kw.pop("c_star"):
                raise line.error("a single slide has an empty dual path")
    if kind in _HAS_SIGN:
        allowed.add("sign")
    if kind is MoveKind.DoubleSlide:
        allowed.add("exp")
    if kind in (MoveKind.Stabilize, MoveKind.AddCancellingPairPrimary, MoveKind.AddCancellingPairDual):
        allowed.add("name")
    if kind is MoveKind.Stabilize:
        allowed |= {"gen", "rel"}
    if kind is MoveKind.Destabilize:
        allowed.add("side")
    for key in keyed:
        if key not in allowed:
            raise line.error(f"{kind.value} does not take {key}=")
    for key, attr in (("sign", "sign"), ("exp", "exponent")):
        v = _single(line, keyed, key)
        if v is not None:
            if len(v) != 1:
                raise line.error(f"{key}= takes one value")
            kw[attr] = _int(line, v[0])
    for key, attr in (("gen", "gen_pos"), ("rel", "rel_pos")):
        v = _single(line, keyed, key)
        if v is not None:
            if len(v) != 1:
                raise line.error(f"{key}= takes one value")
            kw[attr] = _int(line, v[0]) - 1
    for key in ("name", "side"):
        v = _single(line, keyed, key)
        if v is not None:
            if len(v) != 1:
                raise line.error(f"{key}= takes one value")
            kw[key] = v[0][1]
    try:
        return MoveToken(kind, *idx, **kw)
    except MoveError as e:
        raise line.error(str(e), 0) from None


def format_move(t: MoveToken, value) -> str:
    parts = [t.kind.value]
    parts += [str(v + 1) for v in (t.i, t.j) if v is not None]
    if t.kind in _HAS_C:
        parts += ["c=", value.alphabet.format(t.c)]
    if t.kind is MoveKind.GeneralSlide:
        parts += ["cstar=", _dual_alpha(value).format(t.c_star)]
    if t.kind in _HAS_SIGN and t.sign != 1:
        parts.append(f"sign={t.sign}")
    if t.kind is MoveKind.DoubleSlide and t.exponent != 1:
        parts.append(f"exp={t.exponent}")
    if t.name is not None:
        parts.append(f"name={t.name}")
    if t.gen_pos is not None:
        parts.append(f"gen={t.gen_pos + 1}")
    if t.rel_pos is not None:
        parts.append(f"rel={t.rel_pos + 1}")
    if t.kind is MoveKind.Destabilize and t.side != "primary":
        parts.append(f"side={t.side}")
    return " ".join(parts)


def format_script(p, script) -> list[str]:
    """Move texts, each relative to the value reached by the preceding moves."""
    out = []
    for t in script:
        out.append(format_move(t, p))
        p = apply_move(p, t)
    return out


# --- document parser ------------------------------------------------------------------------

def parse(text: str) -> Document:
    lines = [_Line(n, raw) for n, raw in enumerate(text.splitlines(), 1)]
    top: dict = {"gens": None, "duals": None, "boundary": None, "rels": [], "decl": None}
    comps: list[dict] = []
    order = None
    spans = []
    target_toks = None
    decomp_lines = []
    cert_lines = []
    move_lines = []
    groups = []
    cur_group = None
    block = top

    def alpha_line(line, toks, key, where):
        if where[key] is not None:
            raise line.error(f"repeated {key}:")
        names = [t for _, t in toks]
        try:
            where[key] = Alphabet(tuple(names))
        except WordError as e:
            raise line.error(str(e)) from None
        if where["decl"] is None:
            where["decl"] = line

    for line in lines:
        if not line.tokens:
            continue
        head_col, head = line.tokens[0]
        if not head.endswith(":"):
            if cur_group is not None:
                cur_group[1].append((line, [_int(line, t) for t in line.tokens]))
                continue
            raise ParseError(f"expected a section header, got {head!r}", line.lineno, head_col)
        key = head[:-1]
        toks = line.tokens[1:]
        if key != "group":
            cur_group = None
        if key == "component":
            if toks:
                raise line.error("component: takes no arguments", 1)
            block = {"gens": None, "duals": None, "boundary": None, "rels": [], "decl": line}
            comps.append(block)
        elif key == "gens":
            alpha_line(line, toks, "gens", block)
        elif key in ("duals", "boundary"):
            if block is not top:
                raise line.error(f"{key}: is not allowed inside a component")
            alpha_line(line, toks, key, top)
        elif key == "rel":
            block["rels"].append((line, toks))
        elif key == "order":
            if order is not None or len(toks) != 1:
                raise line.error("order: takes one integer and appears once")
            order = _int(line, toks[0])
        elif key == "span":
            if len(toks) != 4:
                raise line.error("span: takes four integers")
            spans.append((line, [_int(line, t) for t in toks]))
        elif key == "target":
            if target_toks is not None:
                raise line.error("repeated target:")
            target_toks = (line, toks)
        elif key == "decomp":
            decomp_lines.append((line, toks))
        elif key == "cert":
            cert_lines.append((line, toks))
        elif key == "move":
            move_lines.append((line, toks))
        elif key == "group":
            if len(toks) != 1:
                raise line.error("group: takes a name")
            cur_group = (toks[0][1], [], line)
            groups.append(cur_group)
        else:
            raise ParseError(f"unknown section {head!r}", line.lineno, head_col)

    value = _build_value(top)
    components = tuple(_build_value(c) for c in comps)
    for c in components:
        if not isinstance(c, Presentation):
            raise ParseError("components must be plain presentations")

    span_vals = []
    for line, (g0, gn, r0, rn) in spans:
        if min(g0, r0) < 1 or min(gn, rn) < 0:
            raise line.error("span values out of range")
        span_vals.append((g0 - 1, g0 - 1 + gn, r0 - 1, r0 - 1 + rn))
    if order is not None:
        if not isinstance(value, Presentation):
            raise ParseError("order: needs a plain presentation")
        if len(span_vals) != order:
            raise ParseError(f"order {order} needs {order} span: lines")

    alpha = value.alphabet if value is not None else None

    def need_alpha(line):
        if alpha is None:
            raise line.error("words need a gens: declaration first")
        return alpha

    target = None
    if target_toks is not None:
        line, toks = target_toks
        target = _word(line, toks, need_alpha(line))

    decomposition = None
    if decomp_lines:
        pairs: dict[int, list] = {}
        for line, toks in decomp_lines:
            pos, keyed = _keyed(line, toks)
            if len(pos) != 1:
                raise line.error("decomp: takes a relator index")
            i = _int(line, pos[0], "index") - 1
            if i < 0:
                raise line.error("index out of range", 0)
            pairs.setdefault(i, [])
            if keyed:
                if set(keyed) != {"a", "b"}:
                    raise line.error("decomp: takes a= and b=")
                a = _word(line, _single(line, keyed, "a"), need_alpha(line))
                b = _word(line, _single(line, keyed, "b"), need_alpha(line))
                pairs[i].append((a, b))
        decomposition = CommutatorDecomposition(pairs)

    certificates = []
    for line, toks in cert_lines:
        pos, keyed = _keyed(line, toks)
        if set(keyed) - {"f"}:
            raise line.error("cert: takes f= factors")
        if len(pos) not in (0, 2):
            raise line.error("cert: takes either no index or two indices")
        key = None
        if pos:
            i, j = (_int(line, t, "index") - 1 for t in pos)
            if i < 0 or j < 0:
                raise line.error("index out of range", 0)
            key = (i, j)
        factors = []
        for ftoks in keyed.get("f", []):
            if not ftoks:
                raise line.error("empty factor")
            col, head = ftoks[0]
            if head[:1] not in "+-" or not head[1:].isdigit():
                raise ParseError(f"factor must start with +N or -N, got {head!r}", line.lineno, col)
            sign = 1 if head[0] == "+" else -1
            t = int(head[1:]) - 1
            if t < 0:
                raise ParseError("relator index out of range", line.lineno, col)
            factors.append((sign, t, _word(line, ftoks[1:], need_alpha(line))))
        certificates.append((key, NormalClosureCertificate(tuple(factors))))

    moves = []
    cur = value
    for line, toks in move_lines:
        if cur is None:
            raise line.error("moves need a presentation")
        tok = parse_move(line, toks, cur)
        moves.append(tok)
        try:
            cur = apply_move(cur, tok)
        except MoveError as e:
            raise MoveError(f"line {line.lineno}: {e}") from None

    fg = []
    for name, rows, line in groups:
        if not rows:
            raise line.error("group: needs a table")
        try:
            fg.append(FiniteGroup(name, np.array([r for _, r in rows], dtype=np.int64)))
        except ValueError as e:
            raise line.error(str(e)) from None

    return Document(value, order, tuple(span_vals), target, decomposition, tuple(certificates),
                    tuple(moves), tuple(fg), components)


def _build_value(block):
    gens, duals, boundary = block["gens"], block["duals"], block["boundary"]
    rels = block["rels"]
    if gens is None:
        if rels or duals is not None or boundary is not None:
            line = rels[0][0] if rels else block["decl"]
            raise ParseError("gens: must be declared", line.lineno if line else None)
        return None
    bi = duals is not None or boundary is not None or any(any(t == "|" for _, t in toks) for _, toks in rels)
    if not bi:
        words = [_word(line, toks, gens) for line, toks in rels]
        return Presentation(gens, tuple(words))
    dual = Alphabet((duals or Alphabet()).names, (boundary or Alphabet()).names)
    pairs = []
    for line, toks in rels:
        bars = [k for k, (_, t) in enumerate(toks) if t == "|"]
        if len(bars) != 1:
            raise line.error("bi-presentation relators need exactly one '|'")
        k = bars[0]
        pairs.append(HandlePair(_word(line, toks[:k], gens), _word(line, toks[k + 1:], dual)))
    return BiPresentation(gens, dual, tuple(pairs))


# --- printer -------------------------------------------------------------------------------------

def _head(key, body=""):
    return f"{key}: {body}" if body else f"{key}:"


def format_value(value) -> list[str]:
    lines = [_head("gens", " ".join(value.alphabet.names))]
    if isinstance(value, BiPresentation):
        lines.append(_head("duals", " ".join(value.dual.names)))
        if value.dual.boundary_names:
            lines.append(_head("boundary", " ".join(value.dual.boundary_names)))
        for hp in value.pairs:
            lines.append(_head("rel", f"{value.primary.format(hp.relator)} | {value.dual.format(hp.dual_relator)}"))
    else:
        for r in value.relators:
            lines.append(_head("rel", value.alphabet.format(r)))
    return lines


def format_certificate(cert: NormalClosureCertificate, alphabet: Alphabet, key=None) -> str:
    parts = [] if key is None else [str(key[0] + 1), str(key[1] + 1)]
    for s, t, c in cert.factors:
        parts += ["f=", f"{'+' if s > 0 else '-'}{t + 1}", alphabet.format(c)]
    return _head("cert", " ".join(parts))


def dumps(doc: Document) -> str:
    lines: list[str] = []
    v = doc.presentation
    if v is not None:
        lines += format_value(v)
    if doc.pinwheel_order is not None:
        lines.append(_head("order", str(doc.pinwheel_order)))
        for g0, g1, r0, r1 in doc.spans:
            lines.append(_head("span", f"{g0 + 1} {g1 - g0} {r0 + 1} {r1 - r0}"))
    if doc.target is not None:
        lines.append(_head("target", v.alphabet.format(doc.target)))
    if doc.decomposition is not None:
        for i, ps in doc.decomposition.pairs.items():
            if not ps:
                lines.append(_head("decomp", str(i + 1)))
            for a, b in ps:
                lines.append(_head("decomp", f"{i + 1} a= {v.alphabet.format(a)} b= {v.alphabet.format(b)}"))
    for key, cert in doc.certificates:
        lines.append(format_certificate(cert, v.alphabet, key))
    if doc.moves:
        lines += [_head("move", m) for m in format_script(v, doc.moves)]
    for g in doc.groups:
        lines.append(_head("group", g.name))
        lines += [" ".join(str(int(x)) for x in row) for row in g.table]
    for c in doc.components:
        lines.append("component:")
        lines += format_value(c)
    return "\n".join(lines) + "\n" if lines else ""


def pinwheel_document(pw: PinwheelModel) -> Document:
    return Document(pw.total, pw.order, pw.component_spans)
