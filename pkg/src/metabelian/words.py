"""Group words and the text grammars for words, polynomials and module expressions.

Grammar (whitespace is insignificant, ``*`` between factors is optional)::

    word    := term {term}
    term    := atom ['^' exp]
    exp     := int | '(' poly ')'
    atom    := 'x' nat | '1' | '(' word ')' | '[' word ',' word ']'
    modexpr := mfactor {['*'] mfactor}  |  '1'
    mfactor := '[' gen ',' gen ']' ['^' '(' poly ')']
    poly    := ['+'|'-'] pterm {('+'|'-') pterm}
    pterm   := pfactor {pfactor}
    pfactor := (int | 'a' nat | '(' poly ')') ['^' int]

A polynomial exponent on a commutator atom is the module action
(``[u,v]^(a1)`` is ``x1^-1 [u,v] x1``); on any other atom it must be an
integer constant.
"""

from __future__ import annotations

import re

from .commod import CollectedPart, RawModuleExpr
from .errors import BadIndex, ParseError, RankMismatch
from .laurent import LaurentPoly, format_poly


class GroupWord:
    """A word in ``x1 .. xn`` with adjacent equal letters merged."""

    __slots__ = ("rank", "letters")

    def __init__(self, rank: int, letters=()):
        self.rank = rank
        out = []
        for k, e in letters:
            if not 1 <= k <= rank:
                raise BadIndex(f"generator x{k} out of range for rank {rank}")
            if not e:
                continue
            if out and out[-1][0] == k:
                s = out[-1][1] + e
                if s:
                    out[-1] = (k, s)
                else:
                    out.pop()
            else:
                out.append((k, e))
        self.letters = tuple(out)

    @classmethod
    def generator(cls, rank, k, e=1):
        return cls(rank, [(k, e)])

    def _check(self, other):
        if other.rank != self.rank:
            raise RankMismatch(f"rank {self.rank} vs rank {other.rank}")

    def inverse(self):
        return GroupWord(self.rank, [(k, -e) for k, e in reversed(self.letters)])

    def concat(self, other):
        self._check(other)
        return GroupWord(self.rank, self.letters + other.letters)

    __mul__ = concat

    def pow(self, m: int):
        base = self if m >= 0 else self.inverse()
        return GroupWord(self.rank, base.letters * abs(m))

    __pow__ = pow

    def abelianization(self):
        v = [0] * self.rank
        for k, e in self.letters:
            v[k - 1] += e
        return tuple(v)

    def length(self):
        """Length as a word in ``x_i^{+-1}``."""
        return sum(abs(e) for _, e in self.letters)

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __eq__(self, other):
        if not isinstance(other, GroupWord):
            return NotImplemented
        return self.rank == other.rank and self.letters == other.letters

    def __hash__(self):
        return hash((self.rank, self.letters))

    def __repr__(self):
        return f"GroupWord({self.rank}, {print_word(self)!r})"

    def __str__(self):
        return print_word(self)


def commutator_word(u: GroupWord, v: GroupWord) -> GroupWord:
    """``u^-1 v^-1 u v``."""
    return u.inverse() * v.inverse() * u * v


def monomial_word(rank, m) -> GroupWord:
    """The word ``x1^m1 .. xn^mn`` realizing the monomial ``a^m``."""
    return GroupWord(rank, [(i + 1, e) for i, e in enumerate(m)])


def act_word(u: GroupWord, q: LaurentPoly) -> GroupWord:
    """A word for ``u^q``; meaningful when ``u`` lies in ``G'``."""
    n = u.rank
    letters = []
    for m, c in q.items():
        t = monomial_word(n, m)
        letters.extend((t.inverse() * u.pow(c) * t).letters)
    return GroupWord(n, letters)


# ---------------------------------------------------------------------------
# tokenizer

_TOKEN = re.compile(r"\s*(?:(?P<gen>x\d+)|(?P<var>a\d+)|(?P<int>\d+)|(?P<op>[\^()\[\],*+\-]))")


def _tokenize(text):
    toks = []
    pos = 0
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        start = m.start(kind)
        toks.append((kind, m.group(kind), start))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text, rank):
        if rank < 1:
            raise RankMismatch(f"rank must be positive, got {rank}")
        self.text = text
        self.rank = rank
        self.toks = _tokenize(text)
        self.i = 0

    # helpers
    def peek(self):
        return self.toks[self.i]

    def at(self, value):
        kind, v, _ = self.toks[self.i]
        return kind == "op" and v == value

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, msg, tok=None):
        kind, v, pos = tok or self.peek()
        what = "end of input" if kind == "end" else repr(v)
        raise ParseError(f"{msg}, found {what}", self.text, pos)

    def expect(self, value):
        if not self.at(value):
            self.fail(f"expected {value!r}")
        self.next()

    def done(self):
        if self.peek()[0] != "end":
            self.fail("unexpected trailing input")

    def index(self, tok):
        _, v, pos = tok
        k = int(v[1:])
        if not 1 <= k <= self.rank:
            raise BadIndex(f"{v} at position {pos} is out of range for rank {self.rank}")
        return k

    def integer(self):
        sign = 1
        if self.at("-") or self.at("+"):
            sign = -1 if self.next()[1] == "-" else 1
        kind, v, _ = self.peek()
        if kind != "int":
            self.fail("expected an integer")
        self.next()
        return sign * int(v)

    # words
    def word(self, stop):
        letters = []
        while True:
            if self.at("*"):
                self.next()
            kind, v, _ = self.peek()
            if kind == "end" or (kind == "op" and v in stop):
                break
            letters.extend(self.term().letters)
        return GroupWord(self.rank, letters)

    def term(self):
        tok = self.peek()
        kind, v, _ = tok
        is_comm = False
        if kind == "gen":
            self.next()
            atom = GroupWord.generator(self.rank, self.index(tok))
        elif kind == "int" and v == "1":
            self.next()
            atom = GroupWord(self.rank)
        elif self.at("("):
            self.next()
            atom = self.word(stop=(")",))
            self.expect(")")
        elif self.at("["):
            self.next()
            u = self.word(stop=(",",))
            self.expect(",")
            w = self.word(stop=("]",))
            self.expect("]")
            atom = commutator_word(u, w)
            is_comm = True
        else:
            self.fail("expected a generator, '1', '(' or '['")
        if not self.at("^"):
            return atom
        self.next()
        if self.at("("):
            ptok = self.peek()
            self.next()
            q = self.poly()
            self.expect(")")
            if is_comm:
                return act_word(atom, q)
            if not q.is_constant():
                raise ParseError("polynomial exponent is only allowed on a commutator", self.text, ptok[2])
            return atom.pow(q.constant_value())
        return atom.pow(self.integer())

    # polynomials
    def poly(self):
        zero = LaurentPoly.zero(self.rank)
        acc = zero
        sign = 1
        if self.at("-") or self.at("+"):
            sign = -1 if self.next()[1] == "-" else 1
        acc = acc + self.pterm() * sign
        while self.at("+") or self.at("-"):
            sign = -1 if self.next()[1] == "-" else 1
            acc = acc + self.pterm() * sign
        return acc

    def _starts_pfactor(self):
        kind, v, _ = self.peek()
        return kind in ("int", "var") or (kind == "op" and v == "(")

    def pterm(self):
        acc = self.pfactor()
        while True:
            if self.at("*"):
                self.next()
                acc = acc * self.pfactor()
            elif self._starts_pfactor():
                acc = acc * self.pfactor()
            else:
                return acc

    def pfactor(self):
        tok = self.peek()
        kind, v, pos = tok
        if kind == "int":
            self.next()
            f = LaurentPoly.const(self.rank, int(v))
        elif kind == "var":
            self.next()
            f = LaurentPoly.var(self.rank, self.index(tok))
        elif self.at("("):
            self.next()
            f = self.poly()
            self.expect(")")
        else:
            self.fail("expected an integer, a variable or '('")
        if self.at("^"):
            self.next()
            etok = self.peek()
            e = self.integer()
            if e < 0 and not f.is_monomial():
                raise ParseError("negative power of a non-unit", self.text, etok[2])
            f = f ** e
        return f

    # module expressions
    def modexpr(self):
        factors = []
        if self.peek()[:2] == ("int", "1"):
            self.next()
            return RawModuleExpr(self.rank, [])
        while True:
            if self.at("*"):
                self.next()
            if self.peek()[0] == "end":
                break
            self.expect("[")
            gi = self.peek()
            if gi[0] != "gen":
                self.fail("expected a generator")
            self.next()
            self.expect(",")
            gj = self.peek()
            if gj[0] != "gen":
                self.fail("expected a generator")
            self.next()
            self.expect("]")
            i, j = self.index(gi), self.index(gj)
            q = LaurentPoly.one(self.rank)
            if self.at("^"):
                self.next()
                self.expect("(")
                q = self.poly()
                self.expect(")")
            factors.append(((i, j), q))
        if not factors:
            self.fail("empty module expression")
        return RawModuleExpr(self.rank, factors)


def parse_word(text: str, rank: int) -> GroupWord:
    p = _Parser(text, rank)
    w = p.word(stop=())
    p.done()
    return w


def parse_poly(text: str, rank: int) -> LaurentPoly:
    p = _Parser(text, rank)
    q = p.poly()
    p.done()
    return q


def parse_module_expr(text: str, rank: int) -> RawModuleExpr:
    p = _Parser(text, rank)
    e = p.modexpr()
    p.done()
    return e


def parse_element(text: str, rank: int):
    from .group import evaluate_word

    return evaluate_word(parse_word(text, rank))


# ---------------------------------------------------------------------------
# printing


def print_word(w: GroupWord) -> str:
    if not w.letters:
        return "1"
    return " ".join(f"x{k}" if e == 1 else f"x{k}^{e}" for k, e in w.letters)


def print_poly(p: LaurentPoly) -> str:
    return format_poly(p)


def print_module_expr(e) -> str:
    items = e.items() if isinstance(e, CollectedPart) else list(e)
    if not items:
        return "1"
    return " * ".join(f"[x{i},x{j}]^({format_poly(p)})" for (i, j), p in items)


def print_element(g) -> str:
    head = [f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}" for i, e in enumerate(g.gamma) if e]
    tail = [f"[x{i},x{j}]^({format_poly(p)})" for (i, j), p in g.part.items()]
    return " ".join(head + tail) or "1"


# ---------------------------------------------------------------------------
# expansion into plain words


def expand_module_expr(e) -> GroupWord:
    """A group word equal to the module expression ``e`` (raw or collected)."""
    n = e.rank
    items = e.items() if isinstance(e, CollectedPart) else list(e)
    letters = []
    for (i, j), q in items:
        c = commutator_word(GroupWord.generator(n, i), GroupWord.generator(n, j))
        letters.extend(act_word(c, q).letters)
    return GroupWord(n, letters)


def element_word(g) -> GroupWord:
    """A group word whose value is ``g``: generator powers, then the expanded part."""
    head = GroupWord(g.rank, [(i + 1, e) for i, e in enumerate(g.gamma)])
    return head * expand_module_expr(g.part)
