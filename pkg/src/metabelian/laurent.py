"""Sparse Laurent polynomials over the integers.

A polynomial is a finite map from exponent vectors (tuples of ints, one entry
per variable ``a1 .. an``) to nonzero Python ints.  Values are immutable and
carry their rank; combining polynomials of different ranks raises
:class:`RankMismatch`.

Monomial order (for printing and coding) is graded lexicographic: compare the
total degree first, then the exponent tuple, both by ordinary integer value.
:meth:`LaurentPoly.items` lists terms from the largest monomial down.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .errors import (
    BadIndex,
    DivisionByZero,
    NotDivisible,
    RankMismatch,
    TrivialBase,
    ZeroEvaluationPoint,
)

Monomial = tuple  # tuple[int, ...]


def monomial_key(m):
    return (sum(m), m)


def _mono_mul(m1, m2):
    return tuple(x + y for x, y in zip(m1, m2))


def _add_term(acc, m, c):
    v = acc.get(m, 0) + c
    if v:
        acc[m] = v
    else:
        acc.pop(m, None)


class LaurentPoly:
    __slots__ = ("rank", "_terms", "_hash")

    def __init__(self, rank: int, terms: Mapping[Monomial, int] | None = None):
        self.rank = rank
        clean = {}
        if terms:
            for m, c in terms.items():
                m = tuple(int(e) for e in m)
                if len(m) != rank:
                    raise RankMismatch(f"monomial {m} has length {len(m)}, expected {rank}")
                if c:
                    _add_term(clean, m, int(c))
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, rank, terms):
        # trusted constructor: terms already pruned and correctly sized
        p = object.__new__(cls)
        p.rank = rank
        p._terms = terms
        p._hash = None
        return p

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, rank):
        return cls._raw(rank, {})

    @classmethod
    def const(cls, rank, c):
        return cls._raw(rank, {(0,) * rank: int(c)} if c else {})

    @classmethod
    def one(cls, rank):
        return cls.const(rank, 1)

    @classmethod
    def var(cls, rank, i, power=1):
        """The monomial ``a_i**power`` (``i`` is 1-based)."""
        if not 1 <= i <= rank:
            raise BadIndex(f"variable a{i} out of range for rank {rank}")
        e = [0] * rank
        e[i - 1] = power
        return cls._raw(rank, {tuple(e): 1})

    @classmethod
    def monomial(cls, exponents, coeff=1):
        exponents = tuple(int(e) for e in exponents)
        return cls._raw(len(exponents), {exponents: int(coeff)} if coeff else {})

    # -- inspection --------------------------------------------------------

    @property
    def terms(self):
        """Read-only copy of the term map."""
        return dict(self._terms)

    def items(self):
        """Terms in canonical (descending graded-lex) order."""
        return sorted(self._terms.items(), key=lambda t: monomial_key(t[0]), reverse=True)

    def coefficient(self, m):
        return self._terms.get(tuple(m), 0)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self):
        return not self._terms

    def is_monomial(self):
        """True for ``c * a^e`` with ``c`` a unit (+1 or -1)."""
        if len(self._terms) != 1:
            return False
        (c,) = self._terms.values()
        return c in (1, -1)

    def is_constant(self):
        return all(not any(m) for m in self._terms)

    def constant_value(self):
        return self._terms.get((0,) * self.rank, 0)

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.rank == other.rank and self._terms == other._terms
        if isinstance(other, int):
            if other == 0:
                return not self._terms
            return self._terms == {(0,) * self.rank: other}
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rank, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"LaurentPoly({self.rank}, {self})"

    def __str__(self):
        return format_poly(self)

    # -- ring operations ---------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            if other.rank != self.rank:
                raise RankMismatch(f"rank {self.rank} vs rank {other.rank}")
            return other
        if isinstance(other, int):
            return LaurentPoly.const(self.rank, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if len(other._terms) > len(self._terms):
            self, other = other, self
        acc = dict(self._terms)
        for m, c in other._terms.items():
            _add_term(acc, m, c)
        return LaurentPoly._raw(self.rank, acc)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self.rank, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return LaurentPoly.zero(self.rank)
            return LaurentPoly._raw(self.rank, {m: c * other for m, c in self._terms.items()})
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        acc = {}
        get = acc.get
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                acc[m] = get(m, 0) + c1 * c2
        return LaurentPoly._raw(self.rank, {m: c for m, c in acc.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            if not self.is_monomial():
                raise NotDivisible(f"{self} is not a unit; negative power undefined")
            (m, c), = self._terms.items()
            return LaurentPoly._raw(self.rank, {tuple(e * k for e in m): c ** -k})
        result = LaurentPoly.one(self.rank)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def shift(self, m):
        """Multiply by the monomial with exponent vector ``m``."""
        m = tuple(m)
        if len(m) != self.rank:
            raise RankMismatch(f"shift by {m} in rank {self.rank}")
        if not any(m):
            return self
        return LaurentPoly._raw(self.rank, {_mono_mul(k, m): c for k, c in self._terms.items()})

    def min_exponents(self):
        if not self._terms:
            return (0,) * self.rank
        return tuple(min(col) for col in zip(*self._terms))

    def max_exponents(self):
        if not self._terms:
            return (0,) * self.rank
        return tuple(max(col) for col in zip(*self._terms))


# ---------------------------------------------------------------------------
# operations on polynomials


def add(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p + q


def mul(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p * q


def geometric_sum(g, delta: int) -> LaurentPoly:
    """The unique ``f`` with ``f * (g - 1) == g**delta - 1``.

    ``g`` is an exponent vector (or a monomial ``LaurentPoly`` with
    coefficient 1) other than the identity.
    """
    if isinstance(g, LaurentPoly):
        if len(g) != 1 or list(g._terms.values()) != [1]:
            raise TrivialBase(f"{g} is not a monomial")
        (g,) = g._terms
    g = tuple(g)
    if not any(g):
        raise TrivialBase("geometric sum with base 1 is undefined")
    rank = len(g)
    if delta >= 0:
        terms = {tuple(e * t for e in g): 1 for t in range(delta)}
    else:
        terms = {tuple(e * t for e in g): -1 for t in range(delta, 0)}
    return LaurentPoly._raw(rank, terms)


def _lex_division(p, d):
    # p, d: dicts over nonnegative exponents, d has no monomial factor.
    # Division by a single polynomial with lex order; exact iff remainder 0.
    lead_m = max(d)
    lead_c = d[lead_m]
    rest = [(m, c) for m, c in d.items() if m != lead_m]
    r = dict(p)
    q = {}
    while r:
        m = max(r)
        c = r[m]
        qm = tuple(x - y for x, y in zip(m, lead_m))
        if any(e < 0 for e in qm) or c % lead_c:
            return None
        qc = c // lead_c
        q[qm] = qc
        del r[m]
        for dm, dc in rest:
            _add_term(r, _mono_mul(qm, dm), -qc * dc)
    return q


def divide_exact(p: LaurentPoly, d: LaurentPoly) -> LaurentPoly:
    """Return ``q`` with ``q * d == p``; raise :class:`NotDivisible` if none exists."""
    if p.rank != d.rank:
        raise RankMismatch(f"rank {p.rank} vs rank {d.rank}")
    if d.is_zero():
        raise DivisionByZero("division by the zero polynomial")
    if p.is_zero():
        return LaurentPoly.zero(p.rank)
    if len(d) == 1:
        (dm, dc), = d._terms.items()
        if any(c % dc for c in p._terms.values()):
            raise NotDivisible(f"{p} is not divisible by {d}")
        neg = tuple(-e for e in dm)
        return LaurentPoly._raw(p.rank, {_mono_mul(m, neg): c // dc for m, c in p._terms.items()})
    # move both operands to nonnegative exponents with no monomial factor
    dmin = d.min_exponents()
    pmin = p.min_exponents()
    nd = {tuple(x - y for x, y in zip(m, dmin)): c for m, c in d._terms.items()}
    np_ = {tuple(x - y for x, y in zip(m, pmin)): c for m, c in p._terms.items()}
    q = _lex_division(np_, nd)
    if q is None:
        raise NotDivisible(f"{p} is not divisible by {d}")
    offset = tuple(x - y for x, y in zip(pmin, dmin))
    return LaurentPoly._raw(p.rank, {_mono_mul(m, offset): c for m, c in q.items()})


def involute(p: LaurentPoly) -> LaurentPoly:
    """Replace every monomial by its inverse."""
    return LaurentPoly._raw(p.rank, {tuple(-e for e in m): c for m, c in p._terms.items()})


def retract(p: LaurentPoly, keep: Iterable[int]) -> LaurentPoly:
    """Substitute ``a_i = 1`` for every ``i`` (1-based) not in ``keep``."""
    keep = set(keep)
    if any(not 1 <= i <= p.rank for i in keep):
        raise BadIndex(f"index set {sorted(keep)} out of range for rank {p.rank}")
    mask = tuple((i + 1) in keep for i in range(p.rank))
    acc = {}
    for m, c in p._terms.items():
        _add_term(acc, tuple(e if k else 0 for e, k in zip(m, mask)), c)
    return LaurentPoly._raw(p.rank, acc)


def eval_at(p: LaurentPoly, point) -> Fraction:
    """Exact value at an integer point with all coordinates nonzero."""
    point = tuple(int(x) for x in point)
    if len(point) != p.rank:
        raise RankMismatch(f"point of length {len(point)} for rank {p.rank}")
    if any(x == 0 for x in point):
        raise ZeroEvaluationPoint(f"evaluation point {point} has a zero coordinate")
    if not p._terms:
        return Fraction(0)
    # common denominator: prod alpha_i ** beta_i
    low = p.min_exponents()
    shift = [-e if e < 0 else 0 for e in low]
    num = 0
    for m, c in p._terms.items():
        v = c
        for x, e, s in zip(point, m, shift):
            v *= x ** (e + s)
        num += v
    den = 1
    for x, s in zip(point, shift):
        den *= x ** s
    return Fraction(num, den)


def canonical_fraction(q: LaurentPoly):
    """Split ``q`` as ``P / a**beta`` with ``P`` a polynomial and ``beta >= 0`` minimal.

    Returns ``(P, beta)``.  For every ``i`` with ``beta[i] > 0`` some term of
    ``P`` has zero ``a_i``-exponent.
    """
    low = q.min_exponents()
    beta = tuple(-e if e < 0 else 0 for e in low)
    return q.shift(beta), beta


def support(p: LaurentPoly) -> frozenset:
    """1-based indices of variables that occur with nonzero exponent."""
    out = set()
    for m in p._terms:
        for i, e in enumerate(m):
            if e:
                out.add(i + 1)
    return frozenset(out)


# ---------------------------------------------------------------------------
# printing (parsing lives in :mod:`metabelian.words`)


def format_monomial(m):
    parts = []
    for i, e in enumerate(m):
        if e == 1:
            parts.append(f"a{i + 1}")
        elif e:
            parts.append(f"a{i + 1}^{e}")
    return "*".join(parts)


def format_poly(p: LaurentPoly) -> str:
    if p.is_zero():
        return "0"
    out = []
    for k, (m, c) in enumerate(p.items()):
        mono = format_monomial(m)
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if k == 0:
            out.append(body if sign == "+" else "-" + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)
