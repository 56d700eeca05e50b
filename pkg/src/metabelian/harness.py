"""Seeded property runs and the word-pair corpus checker behind the CLI."""

from __future__ import annotations

from .errors import ParseError
from .fox import magnus_equal, main_identity_holds
from .group import (
    check_exp_axioms,
    commutator,
    delta_commutator_check,
    evaluate_word,
    identity,
    inv,
    mul,
)
from .sampling import near_miss, random_word, rng
from .words import parse_word


def _prop_group_axioms(r, n):
    u, v, w = (evaluate_word(random_word(r, n, 20, 5)) for _ in range(3))
    one = identity(n)
    return (
        mul(mul(u, v), w) == mul(u, mul(v, w))
        and mul(u, one) == u == mul(one, u)
        and mul(u, inv(u)) == one
    )


def _prop_oracle(r, n):
    w1 = random_word(r, n, 12, 3)
    w2 = near_miss(r, w1) if r.random() < 0.5 else random_word(r, n, 12, 3)
    return (evaluate_word(w1) == evaluate_word(w2)) == magnus_equal(w1, w2)


def _prop_main_identity(r, n):
    return main_identity_holds(random_word(r, n, 20, 5))


def _prop_jacobi(r, n):
    u, v, w = (evaluate_word(random_word(r, n, 6, 3)) for _ in range(3))
    t = mul(mul(commutator(commutator(u, v), w), commutator(commutator(v, w), u)), commutator(commutator(w, u), v))
    return t.is_identity()


def _prop_exp_axioms(r, n):
    g, h = (evaluate_word(random_word(r, n, 6, 3)) for _ in range(2))
    return check_exp_axioms(g, h, r.randint(-5, 5), r.randint(-5, 5))


def _prop_delta_commutator(r, n):
    while True:
        x, y = (evaluate_word(random_word(r, n, 4, 2)) for _ in range(2))
        a, b = x.gamma, y.gamma
        if any(a) and any(b) and any(p + q for p, q in zip(a, b)):
            return delta_commutator_check(x, y, r.randint(-5, 5))


PROPERTIES = {
    "group-axioms": _prop_group_axioms,
    "oracle-agreement": _prop_oracle,
    "fox-main-identity": _prop_main_identity,
    "jacobi-identity": _prop_jacobi,
    "exp-axioms": _prop_exp_axioms,
    "delta-commutator": _prop_delta_commutator,
}


def check_axioms(rank: int, samples: int, seed: int):
    """Run every property ``samples`` times; returns ``{name: {"passed", "failed"}}``.

    Each property draws from its own generator seeded by ``(seed, name)``, so
    results do not depend on the order the properties run in.
    """
    report = {}
    for name in sorted(PROPERTIES):
        r = rng(f"{seed}:{name}")
        ok = sum(1 for _ in range(samples) if PROPERTIES[name](r, rank))
        report[name] = {"passed": ok, "failed": samples - ok}
    return report


def parse_corpus_line(line: str, rank: int, lineno: int):
    """``None`` for blank/comment lines, else the pair of words."""
    body = line.split("#", 1)[0].strip()
    if not body:
        return None
    parts = body.split(";")
    if len(parts) != 2:
        raise ParseError(f"line {lineno}: expected '<word> ; <word>'")
    try:
        return parse_word(parts[0], rank), parse_word(parts[1], rank)
    except ParseError as exc:
        raise ParseError(f"line {lineno}: {exc}") from exc


def run_corpus(lines, rank: int):
    """Verdicts from the normal form and from the Fox oracle, one per pair."""
    out = []
    for lineno, line in enumerate(lines, start=1):
        pair = parse_corpus_line(line, rank, lineno)
        if pair is None:
            continue
        w1, w2 = pair
        nf = evaluate_word(w1) == evaluate_word(w2)
        fx = magnus_equal(w1, w2)
        out.append({"line": lineno, "normal_form": nf, "fox": fx, "agree": nf == fx})
    return out
