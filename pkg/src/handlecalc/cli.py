"""Command-line driver. Reads a document, runs one operation, prints ``key: value`` lines.

Exit status: 0 success, 1 verification failure, 2 budget exhausted, 3 parse error.
"""
from __future__ import annotations

import argparse
import configparser
import sys

from . import textformat as tf
from .corkcalc import (MulticorkModel, VerificationError, encase, pinwheel, pinwheel_twist,
                       verify_certificate, verify_decomposition)
from .invariants import (BudgetExceeded, abelianization_matrix, count_homomorphisms,
                         default_groups, smith_normal_form)
from .moves import MoveKind, MoveToken, apply_move
from .presentation import BiPresentation, MoveError, Presentation, is_ac_structure
from .search import SearchBudget, certificate_search, scramble, trivialization_search
from .words import WordError

OK, VERIFY, BUDGET, PARSE = 0, 1, 2, 3


class _Exit(Exception):
    def __init__(self, code, msg):
        super().__init__(msg)
        self.code = code


def _bool(b):
    return "true" if b else "false"


def _need(doc, kind, what):
    v = doc.presentation
    if not isinstance(v, kind):
        raise _Exit(PARSE, f"input needs {what}")
    return v


# --- subcommands ---------------------------------------------------------------------

def cmd_check(doc, args, out):
    v = doc.presentation
    if v is None:
        if not doc.components:
            raise _Exit(PARSE, "input has no gens: section")
        _check_components(doc, out)
        return
    p = v.presentation() if isinstance(v, BiPresentation) else v
    st = is_ac_structure(p)
    out(f"generators: {p.ngens}")
    out(f"relators: {p.nrels}")
    out(f"balanced: {_bool(p.is_balanced())}")
    out(f"ac_type1: {_bool(st.type1)}")
    out(f"ac_type2: {_bool(st.type2)}")
    for m in st.matching or ():
        g = p.alphabet.format(((m.generator + 1) * m.sign,))
        out(f"match[{m.relator + 1}]: {g} conj= {p.alphabet.format(m.conjugator)}")
    ok = True
    if doc.decomposition is not None:
        good = verify_decomposition(p, doc.decomposition)
        ok &= good
        out(f"decomposition: {'valid' if good else 'invalid'}")
    for key, cert in doc.certificates:
        if key is None:
            if doc.target is None:
                continue
            target, label = doc.target, "cert"
        else:
            i, j = key
            pairs = doc.decomposition.pairs if doc.decomposition is not None else {}
            if i not in pairs or j >= len(pairs[i]):
                raise _Exit(VERIFY, f"certificate {i + 1} {j + 1} has no decomposition entry")
            target, label = pairs[i][j][1], f"cert[{i + 1},{j + 1}]"
        good = verify_certificate(p, target, cert)
        ok &= good
        out(f"{label}: {'valid' if good else 'invalid'}")
    if doc.components:
        _check_components(doc, out)
    if not ok:
        raise _Exit(VERIFY, "witness data does not verify")


def _check_components(doc, out):
    out(f"components: {len(doc.components)}")
    try:
        MulticorkModel(doc.components)
    except VerificationError as e:
        out("multicork: invalid")
        raise _Exit(VERIFY, str(e))
    out("multicork: valid")


def cmd_invariants(doc, args, out):
    v = doc.presentation
    if v is None:
        raise _Exit(PARSE, "input has no gens: section")
    p = v.presentation() if isinstance(v, BiPresentation) else v
    M = abelianization_matrix(p)
    out("abelianization: " + " ; ".join(" ".join(str(x) for x in row) for row in M))
    snf = smith_normal_form(M) if M else None
    out("snf: " + (" ".join(str(x) for x in snf.invariants) if snf else ""))
    rank, torsion = snf.h1() if snf else (p.ngens, ())
    parts = ([f"Z^{rank}"] if rank else []) + [f"Z/{t}" for t in torsion]
    out("h1: " + (" + ".join(parts) if parts else "0"))
    groups = list(doc.groups) or _load_groups(args.groups) or default_groups()
    for g in groups:
        try:
            n = count_homomorphisms(p, g, max_assignments=args.max_assignments)
        except BudgetExceeded as e:
            raise _Exit(BUDGET, str(e))
        out(f"hom_count[{g.name}]: {n}")


def cmd_move(doc, args, out):
    if doc.presentation is None:
        raise _Exit(PARSE, "input has no gens: section")
    cur = doc.presentation
    for t in doc.moves:
        cur = apply_move(cur, t)
    _emit_value(cur, out)
    out(f"moves: {len(doc.moves)}")


def cmd_slide(doc, args, out):
    bp = _need(doc, BiPresentation, "a bi-presentation (duals: section)")
    i, j = args.i - 1, args.j - 1
    try:
        c = bp.alphabet.word(args.path)
        cs = bp.dual.word(args.dual_path)
    except WordError as e:
        raise _Exit(PARSE, str(e))
    if args.double:
        if cs:
            raise _Exit(PARSE, "a double slide has no dual path")
        t = MoveToken(MoveKind.DoubleSlide, i, j, c, sign=args.sign, exponent=args.exp)
    elif cs:
        t = MoveToken(MoveKind.GeneralSlide, i, j, c, cs, sign=args.sign)
    else:
        t = MoveToken(MoveKind.SingleSlide, i, j, c, sign=args.sign)
    res = apply_move(bp, t)
    _emit_value(res, out)
    out("script: " + tf.format_move(t, bp))


def cmd_pinwheel(doc, args, out):
    if not doc.components:
        raise _Exit(PARSE, "input needs component: blocks")
    pw = pinwheel(MulticorkModel(doc.components))
    for line in tf.dumps(tf.pinwheel_document(pw)).splitlines():
        out(line)


def cmd_twist(doc, args, out):
    try:
        pw = doc.pinwheel()
    except ValueError as e:
        raise _Exit(PARSE, str(e))
    res = pinwheel_twist(pw, args.j)
    for line in tf.dumps(tf.pinwheel_document(res)).splitlines():
        out(line)


def cmd_encase(doc, args, out):
    bp = _need(doc, BiPresentation, "a bi-presentation (duals: section)")
    if doc.decomposition is None:
        raise _Exit(PARSE, "input needs decomp: lines")
    res, script = encase(bp, doc.decomposition, doc.cert_map())
    _emit_value(res, out)
    for line in tf.format_script(bp, script):
        out("script: " + line)


def cmd_scramble(doc, args, out):
    p = _need(doc, Presentation, "a plain presentation")
    b = _budget(args)
    res, inv = scramble(p, args.k, args.seed, b.conjugator_length_cap, b.stable, b.max_generators)
    _emit_value(res, out)
    for line in tf.format_script(res, inv):
        out("script: " + line)


def cmd_trivialize(doc, args, out):
    p = _need(doc, Presentation, "a plain presentation")
    r = trivialization_search(p, _budget(args))
    out(f"status: {r.status}")
    out(f"nodes: {r.nodes}")
    if not r.found:
        raise _Exit(BUDGET, "search budget exhausted without a verdict")
    out(f"length: {len(r.script)}")
    for line in tf.format_script(p, r.script):
        out("script: " + line)


def cmd_certsearch(doc, args, out):
    v = doc.presentation
    if v is None or doc.target is None:
        raise _Exit(PARSE, "input needs gens:, rel: and target: sections")
    p = v.presentation() if isinstance(v, BiPresentation) else v
    cert, nodes = certificate_search(p, doc.target, _budget(args))
    out(f"status: {'found' if cert is not None else 'exhausted'}")
    out(f"nodes: {nodes}")
    if cert is None:
        raise _Exit(BUDGET, "search budget exhausted without a certificate")
    out(tf.format_certificate(cert, p.alphabet))


def _emit_value(v, out):
    for line in tf.format_value(v):
        out(line)


# --- plumbing ------------------------------------------------------------------------------

_BUDGET_KEYS = {
    "max_depth": int, "max_nodes": int, "beam": int, "conj_cap": int,
    "bfs_depth": int, "workers": int, "max_generators": int, "stable": "bool",
}


def _load_config(path):
    cp = configparser.ConfigParser()
    if not cp.read(path):
        raise _Exit(PARSE, f"cannot read config file {path}")
    if not cp.has_section("search"):
        return {}
    sec = cp["search"]
    vals = {}
    for key in sec:
        kind = _BUDGET_KEYS.get(key)
        if kind is None:
            raise _Exit(PARSE, f"unknown config key {key!r}")
        try:
            vals[key] = sec.getboolean(key) if kind == "bool" else sec.getint(key)
        except ValueError as e:
            raise _Exit(PARSE, f"config key {key}: {e}")
    return vals


def _budget(args) -> SearchBudget:
    defaults = SearchBudget()
    conf = _load_config(args.config) if args.config else {}

    def pick(flag, key, default):
        v = getattr(args, flag)
        if v is not None:
            return v
        return conf.get(key, default)

    try:
        return SearchBudget(
            max_depth=pick("max_depth", "max_depth", defaults.max_depth),
            max_nodes=pick("max_nodes", "max_nodes", defaults.max_nodes),
            beam_width=pick("beam", "beam", defaults.beam_width),
            conjugator_length_cap=pick("conj_cap", "conj_cap", defaults.conjugator_length_cap),
            rng_seed=args.seed,
            bfs_depth=pick("bfs_depth", "bfs_depth", defaults.bfs_depth),
            stable=args.stable or conf.get("stable", False),
            max_generators=pick("max_generators", "max_generators", defaults.max_generators),
            workers=pick("workers", "workers", defaults.workers),
        )
    except ValueError as e:
        raise _Exit(PARSE, str(e))


def _load_groups(path):
    if not path:
        return []
    try:
        with open(path) as fh:
            gdoc = tf.parse(fh.read())
    except OSError as e:
        raise _Exit(PARSE, str(e))
    return list(gdoc.groups)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="document file (default: standard input)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--max-depth", type=int)
    common.add_argument("--max-nodes", type=int)
    common.add_argument("--beam", type=int)
    common.add_argument("--conj-cap", type=int)
    common.add_argument("--bfs-depth", type=int)
    common.add_argument("--max-generators", type=int)
    common.add_argument("--workers", type=int, help="processes used to expand search waves")
    common.add_argument("--stable", action="store_true", help="allow stabilization in search")
    common.add_argument("--groups", help="document with group: tables for invariants")
    common.add_argument("--max-assignments", type=int, default=10**7)
    common.add_argument("--config", help="INI file with a [search] section of budget keys")

    ap = argparse.ArgumentParser(prog="handlecalc", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    sub.add_parser("check", parents=[common], help="balance, AC structure and witness checks")
    sub.add_parser("invariants", parents=[common], help="abelianization, SNF, homomorphism counts")
    sub.add_parser("move", parents=[common], help="apply the document's move: script")
    sp = sub.add_parser("slide", parents=[common], help="slide relator I over relator J")
    sp.add_argument("-i", type=int, required=True)
    sp.add_argument("-j", type=int, required=True)
    sp.add_argument("--path", default="1", help="primary path word")
    sp.add_argument("--dual-path", default="1", help="dual path word")
    sp.add_argument("--sign", type=int, choices=(1, -1), default=1)
    sp.add_argument("--double", action="store_true")
    sp.add_argument("--exp", type=int, choices=(1, -1), default=1)
    sub.add_parser("pinwheel", parents=[common], help="assemble component: blocks into a pinwheel")
    sp = sub.add_parser("twist", parents=[common], help="rotate pinwheel components")
    sp.add_argument("-j", type=int, required=True)
    sub.add_parser("encase", parents=[common], help="rewrite decomposed relators to generators")
    sp = sub.add_parser("scramble", parents=[common], help="apply k random invertible moves")
    sp.add_argument("-k", type=int, required=True)
    sub.add_parser("trivialize", parents=[common], help="search for a trivializing script")
    sub.add_parser("certsearch", parents=[common], help="search for a normal-closure certificate")
    return ap


COMMANDS = {
    "check": cmd_check, "invariants": cmd_invariants, "move": cmd_move, "slide": cmd_slide,
    "pinwheel": cmd_pinwheel, "twist": cmd_twist, "encase": cmd_encase, "scramble": cmd_scramble,
    "trivialize": cmd_trivialize, "certsearch": cmd_certsearch,
}


def run(argv, stdin_text=None) -> tuple[int, str, str]:
    """Run one command; return ``(status, stdout, stderr)``."""
    lines: list[str] = []
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        if e.code == 0:
            return OK, "", ""
        return PARSE, "", "usage error\n"
    try:
        if args.input:
            try:
                with open(args.input) as fh:
                    text = fh.read()
            except OSError as e:
                raise _Exit(PARSE, str(e))
        else:
            text = stdin_text if stdin_text is not None else sys.stdin.read()
        try:
            doc = tf.parse(text)
        except (tf.ParseError, WordError, ValueError) as e:
            if isinstance(e, MoveError):
                raise _Exit(VERIFY, str(e))
            raise _Exit(PARSE, str(e))
        try:
            COMMANDS[args.command](doc, args, lines.append)
        except (MoveError, VerificationError) as e:
            raise _Exit(VERIFY, str(e))
    except _Exit as e:
        out = "\n".join(lines) + "\n" if lines else ""
        return e.code, out, f"error: {e}\n"
    return OK, "\n".join(lines) + "\n" if lines else "", ""


def main(argv=None) -> int:
    code, out, err = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
