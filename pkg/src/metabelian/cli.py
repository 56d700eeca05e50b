"""Command-line interface: ``metabelian <command> --rank N ...``.

Exit status is 0 on success, 1 on a domain error and 2 on a syntax error.
Errors are reported on stderr as one JSON object.  With ``--json`` results
go to stdout as JSON with sorted keys and a top-level ``"v": 1``.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import arith, evalhom, fox, group, harness
from .commod import collect
from .errors import InternalInconsistency, MetabelianError, ParseError
from .laurent import eval_at
from .words import (
    expand_module_expr,
    parse_module_expr,
    parse_poly,
    parse_word,
    print_element,
    print_module_expr,
    print_poly,
    print_word,
)


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(message)


def _alpha(text):
    try:
        return tuple(int(s) for s in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad point {text!r}; expected a1,...,an") from None


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--rank", type=int, required=True)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=int, default=100)
    common.add_argument("--json", action="store_true")
    common.add_argument("--alpha", type=_alpha)

    p = _Parser(prog="metabelian", description="Exact arithmetic in free metabelian groups.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def cmd(name, help, *args):
        s = sub.add_parser(name, parents=[common], help=help)
        for a in args:
            s.add_argument(a)
        return s

    cmd("nf", "normal form of a word", "word")
    cmd("eq", "equality of two words", "word1", "word2")
    cmd("mul", "product of two words", "word1", "word2")
    cmd("inv", "inverse of a word", "word")
    s = cmd("pow", "integer power of a word", "word")
    s.add_argument("exponent", type=int)
    cmd("comm", "commutator [u,v] = u^-1 v^-1 u v", "word1", "word2")
    s = cmd("fox", "Fox derivatives of a word", "word")
    s.add_argument("--index", type=int)
    cmd("collect", "collected form of a module expression", "expr")
    cmd("recover", "collected form of a word in G', read from Fox derivatives", "word")
    cmd("expand", "module expression as a plain word", "expr")
    cmd("encode", "integer code of a word's value", "word")
    cmd("decode", "element with a given code", "code")
    cmd("coded-mul", "product of two codes", "code1", "code2")
    cmd("eval", "value of a Laurent polynomial at --alpha", "poly")
    s = sub.add_parser("discriminate", parents=[common], help="point where every polynomial is nonzero")
    s.add_argument("--poly", nargs="+", required=True)
    cmd("quotient-eq", "congruence of two module expressions at --alpha", "expr1", "expr2")
    s = sub.add_parser("basis-cert", parents=[common], help="necessary conditions for a free basis")
    s.add_argument("words", nargs="+")
    sub.add_parser("check-axioms", parents=[common], help="seeded property run")
    cmd("corpus", "check a file of '<word> ; <word>' lines", "file")
    return p


def _code(text):
    text = text.strip()
    if text.startswith("{"):
        text = str(json.loads(text)["code"])
    if not text.isdigit():
        raise ParseError(f"not a decimal code: {text!r}")
    return int(text)


def _need_alpha(args):
    if args.alpha is None:
        raise _Usage(f"{args.command} needs --alpha")
    return evalhom.EvalPoint(args.alpha)


def _elem(g):
    return {"text": print_element(g), "element": g.to_json()}


def run(args):
    """Execute a parsed command; returns ``(exit status, text, json payload)``."""
    n = args.rank
    if n < 2:
        raise _Usage("--rank must be at least 2")
    c = args.command
    W = lambda t: parse_word(t, n)  # noqa: E731
    E = lambda t: group.evaluate_word(W(t))  # noqa: E731

    if c == "nf":
        g = E(args.word)
        return 0, print_element(g), _elem(g)
    if c == "eq":
        w1, w2 = W(args.word1), W(args.word2)
        nf = group.evaluate_word(w1) == group.evaluate_word(w2)
        if nf != fox.magnus_equal(w1, w2):
            raise InternalInconsistency("normal form and Fox oracle disagree")
        return 0, "true" if nf else "false", {"equal": nf}
    if c in ("mul", "comm"):
        f = group.mul if c == "mul" else group.commutator
        g = f(E(args.word1), E(args.word2))
        return 0, print_element(g), _elem(g)
    if c == "inv":
        g = group.inv(E(args.word))
        return 0, print_element(g), _elem(g)
    if c == "pow":
        g = group.pow(E(args.word), args.exponent)
        return 0, print_element(g), _elem(g)
    if c == "fox":
        w = W(args.word)
        if args.index is not None:
            d = fox.fox(w, args.index)
            return 0, print_poly(d), {"index": args.index, "derivative": print_poly(d)}
        ds = [print_poly(d) for d in fox.fox_all(w)]
        return 0, "\n".join(f"d{i} = {d}" for i, d in enumerate(ds, 1)), {"derivatives": ds}
    if c == "collect":
        u = collect(parse_module_expr(args.expr, n))
        return 0, print_module_expr(u), {"collected": print_module_expr(u)}
    if c == "recover":
        u = fox.recover_collected(W(args.word))
        return 0, print_module_expr(u), {"collected": print_module_expr(u)}
    if c == "expand":
        w = expand_module_expr(parse_module_expr(args.expr, n))
        return 0, print_word(w), {"word": print_word(w)}
    if c == "encode":
        code = arith.encode_element(E(args.word))
        return 0, str(code), {"code": str(code)}
    if c == "decode":
        g = arith.decode_element(_code(args.code), n)
        return 0, print_element(g), _elem(g)
    if c == "coded-mul":
        code = arith.coded_mul(_code(args.code1), _code(args.code2), n)
        return 0, str(code), {"code": str(code)}
    if c == "eval":
        pt = _need_alpha(args)
        v = eval_at(parse_poly(args.poly, n), pt.alphas)
        return 0, str(v), {"value": str(v)}
    if c == "discriminate":
        ps = [parse_poly(t, n) for t in args.poly]
        pt = evalhom.separating_point(ps)
        vals = [str(eval_at(p, pt.alphas)) for p in ps]
        text = "alpha = " + ",".join(map(str, pt.alphas)) + "\n" + "\n".join(vals)
        return 0, text, {"alpha": list(pt.alphas), "values": vals}
    if c == "quotient-eq":
        pt = _need_alpha(args)
        u = collect(parse_module_expr(args.expr1, n))
        v = collect(parse_module_expr(args.expr2, n))
        ok = evalhom.congruent_mod(u, v, pt)
        return 0, "true" if ok else "false", {"congruent": ok, "alpha": list(pt.alphas)}
    if c == "basis-cert":
        verdict, det = group.basis_certificate([W(t) for t in args.words])
        d = str(det) if isinstance(det, int) else print_poly(det)
        return 0, f"{verdict.value} (det = {d})", {"verdict": verdict.value, "det": d}
    if c == "check-axioms":
        rep = harness.check_axioms(n, args.samples, args.seed)
        bad = sum(r["failed"] for r in rep.values())
        lines = [f"{k}: {r['passed']}/{r['passed'] + r['failed']} passed" for k, r in rep.items()]
        lines.append("all properties pass" if not bad else f"{bad} failures")
        return (0 if not bad else 1), "\n".join(lines), {"properties": rep, "failures": bad}
    if c == "corpus":
        with open(args.file, encoding="utf-8") as fh:
            rows = harness.run_corpus(fh, n)
        bad = [r for r in rows if not r["agree"]]
        word = lambda b: "equal" if b else "unequal"  # noqa: E731
        lines = [f"{r['line']}: {word(r['normal_form'])}/{word(r['fox'])}" for r in rows]
        if bad:
            lines.append(f"{len(bad)} disagreements")
        return (1 if bad else 0), "\n".join(lines), {"results": rows, "disagreements": len(bad)}
    raise _Usage(f"unknown command {c}")


def _emit_error(kind, message, out):
    print(json.dumps({"v": 1, "error": kind, "message": message}, sort_keys=True), file=out)


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        status, text, payload = run(args)
    except _Usage as exc:
        _emit_error("UsageError", str(exc), stderr)
        return 2
    except ParseError as exc:
        _emit_error("ParseError", str(exc), stderr)
        return 2
    except MetabelianError as exc:
        _emit_error(type(exc).__name__, str(exc), stderr)
        return 1
    except OSError as exc:
        _emit_error("IOError", str(exc), stderr)
        return 1
    if args.json:
        payload = dict(payload, v=1, command=args.command)
        print(json.dumps(payload, sort_keys=True), file=stdout)
    elif text:
        print(text, file=stdout)
    return status


if __name__ == "__main__":
    sys.exit(main())
