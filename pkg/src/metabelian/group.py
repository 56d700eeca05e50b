"""Elements of the free metabelian group in normal form.

An element is ``x_1^g1 ... x_n^gn * prod [x_i, x_j]^beta_ij`` with the
commutator part collected.  Conventions: ``[g, h] = g^-1 h^-1 g h`` and the
module action of ``a_k`` on ``G'`` is conjugation by ``x_k``
(``u^(a_k) = x_k^-1 u x_k``).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .commod import (
    CollectedPart,
    RawModuleExpr,
    collect,
    madd,
    mact,
    mscale,
    pair_order,
)
from .errors import BadIndex, InternalInconsistency, NotInCommutant, RankMismatch, TrivialBase
from .laurent import LaurentPoly, _add_term, divide_exact, geometric_sum


@dataclass(frozen=True)
class Element:
    rank: int
    gamma: tuple
    part: CollectedPart

    def __post_init__(self):
        if len(self.gamma) != self.rank or self.part.rank != self.rank:
            raise RankMismatch(f"gamma {self.gamma} / part rank {self.part.rank} vs rank {self.rank}")

    @property
    def monomial(self):
        """Exponent vector of the image in the abelianization."""
        return self.gamma

    def in_commutant(self):
        return not any(self.gamma)

    def is_identity(self):
        return not any(self.gamma) and self.part.is_zero()

    def __mul__(self, other):
        return mul(self, other)

    def __pow__(self, m):
        return pow(self, m)

    def __invert__(self):
        return inv(self)

    def __str__(self):
        from .words import print_element

        return print_element(self)

    def to_json(self):
        return {
            "rank": self.rank,
            "gamma": list(self.gamma),
            "beta": {f"{i},{j}": [[c, list(m)] for m, c in p.items()] for (i, j), p in self.part.items()},
        }

    @classmethod
    def from_json(cls, data):
        rank = int(data["rank"])
        gamma = tuple(int(x) for x in data["gamma"])
        beta = {}
        for key, terms in data.get("beta", {}).items():
            i, j = (int(s) for s in key.split(","))
            beta[(i, j)] = LaurentPoly(rank, {tuple(m): c for c, m in terms})
        return cls(rank, gamma, CollectedPart(rank, beta))


def identity(rank: int) -> Element:
    return Element(rank, (0,) * rank, CollectedPart.zero(rank))


def generator(rank: int, i: int, power: int = 1) -> Element:
    if not 1 <= i <= rank:
        raise BadIndex(f"generator x{i} out of range for rank {rank}")
    g = [0] * rank
    g[i - 1] = power
    return Element(rank, tuple(g), CollectedPart.zero(rank))


def from_part(part: CollectedPart) -> Element:
    return Element(part.rank, (0,) * part.rank, part)


def cross_terms(gamma, delta):
    """The commutator part of ``x^gamma * x^delta`` rewritten as ``x^(gamma+delta) * Pi``.

    Moving ``x_j^delta_j`` left past ``x_{j+1}^gamma_{j+1} ... x_n^gamma_n``
    creates ``[x_i^gamma_i, x_j^delta_j]`` conjugated by the ``x_k^gamma_k``
    (``k > i``) it was born left of, and later by every ``x_k^delta_k``
    (``k > j``) that overtakes it.  Returns uncollected ``{(i, j): terms}``.
    """
    n = len(gamma)
    out = {}
    for i in range(2, n + 1):
        gi = gamma[i - 1]
        if not gi:
            continue
        for j in range(1, i):
            dj = delta[j - 1]
            if not dj:
                continue
            shift = [0] * n
            for k in range(i, n):
                shift[k] += gamma[k]
            for k in range(j, n):
                shift[k] += delta[k]
            si = range(gi) if gi > 0 else range(gi, 0)
            sj = range(dj) if dj > 0 else range(dj, 0)
            sign = (1 if gi > 0 else -1) * (1 if dj > 0 else -1)
            acc = {}
            for s in si:
                for t in sj:
                    m = list(shift)
                    m[i - 1] += s
                    m[j - 1] += t
                    _add_term(acc, tuple(m), sign)
            if acc:
                out[(i, j)] = acc
    return out


def mul(g: Element, h: Element) -> Element:
    n = g.rank
    if h.rank != n:
        raise RankMismatch(f"rank {n} vs rank {h.rank}")
    delta = h.gamma
    gamma = tuple(a + b for a, b in zip(g.gamma, delta))
    cross = cross_terms(g.gamma, delta)
    if not cross and not any(delta):
        return Element(n, gamma, madd(g.part, h.part))
    factors = [(ij, LaurentPoly._raw(n, t)) for ij, t in cross.items()]
    factors += [(ij, p.shift(delta)) for ij, p in g.part.items()]
    factors += h.part.items()
    return Element(n, gamma, collect(RawModuleExpr(n, factors)))


def inv(g: Element) -> Element:
    """Closed-form inverse: ``g^-1 = x^-gamma * u`` with ``u`` solved from the product formula."""
    n = g.rank
    neg = tuple(-a for a in g.gamma)
    cross = cross_terms(g.gamma, neg)
    factors = [(ij, -LaurentPoly._raw(n, t)) for ij, t in cross.items()]
    factors += [(ij, -p.shift(neg)) for ij, p in g.part.items()]
    return Element(n, neg, collect(RawModuleExpr(n, factors)))


def inv_by_words(g: Element) -> Element:
    """Inverse by reversing a word for ``g``; cross-check for :func:`inv`."""
    from .words import element_word

    return evaluate_word(element_word(g).inverse())


def pow(g: Element, m: int) -> Element:
    if m < 0:
        g, m = inv(g), -m
    result = identity(g.rank)
    if g.in_commutant():
        return from_part(mscale(g.part, m))
    base = g
    while m:
        if m & 1:
            result = mul(result, base)
        m >>= 1
        if m:
            base = mul(base, base)
    return result


def commutator(g: Element, h: Element) -> Element:
    return mul(mul(inv(g), inv(h)), mul(g, h))


def conjugate(g: Element, h: Element) -> Element:
    """``h^-1 g h``."""
    return mul(mul(inv(h), g), h)


def act(g: Element, q: LaurentPoly) -> Element:
    """Module action on an element of ``G'``."""
    if not g.in_commutant():
        raise NotInCommutant("module action is defined on G' only")
    return from_part(mact(g.part, q))


def evaluate_word(word) -> Element:
    """Left-to-right product of the letters of a :class:`GroupWord`.

    Equivalent to folding :func:`mul` over the letters, but every cross term
    is shifted once by the abelianization of the rest of the word and the
    whole part is collected at the end.
    """
    n = word.rank
    gamma = [0] * n
    pending = []
    for k, e in word.letters:
        delta = [0] * n
        delta[k - 1] = e
        cross = cross_terms(gamma, delta)
        gamma[k - 1] += e
        if cross:
            pending.append((cross, tuple(gamma)))
    final = tuple(gamma)
    factors = []
    for cross, after in pending:
        rest = tuple(f - a for f, a in zip(final, after))
        for ij, t in cross.items():
            factors.append((ij, LaurentPoly._raw(n, t).shift(rest)))
    return Element(n, final, collect(RawModuleExpr(n, factors)))


def power_residue(w: Element, g: Element, m: int) -> Element:
    """``(w^m g^m)^-1 (w g)^m``, which lies in ``G'`` for ``g`` in ``G'``."""
    if not g.in_commutant():
        raise NotInCommutant("power_residue needs g in G'")
    u = mul(inv(mul(pow(w, m), pow(g, m))), pow(mul(w, g), m))
    if not u.in_commutant():
        raise InternalInconsistency(f"power residue {u} left the commutant")
    return u


def delta_comm_poly(a, b, delta: int) -> LaurentPoly:
    """``f`` with ``(a - 1) f = (ab)^delta-sum - b^delta-sum``.

    ``a`` and ``b`` are exponent vectors; ``a``, ``b`` and ``ab`` must be
    nontrivial.
    """
    a, b = tuple(a), tuple(b)
    if len(a) != len(b):
        raise RankMismatch(f"monomials {a} and {b} differ in rank")
    ab = tuple(x + y for x, y in zip(a, b))
    if not any(a) or not any(b) or not any(ab):
        raise TrivialBase("delta_comm_poly needs a, b, ab all different from 1")
    top = geometric_sum(ab, delta) - geometric_sum(b, delta)
    return divide_exact(top, LaurentPoly.monomial(a) - 1)


def delta_commutator_sides(x: Element, y: Element, delta: int):
    """Both sides of ``y^-d x^-d (xy)^d = [x,y]^(-f(a,b))``."""
    left = mul(mul(pow(y, -delta), pow(x, -delta)), pow(mul(x, y), delta))
    f = delta_comm_poly(x.gamma, y.gamma, delta)
    right = act(commutator(x, y), -f)
    return left, right


def delta_commutator_check(x: Element, y: Element, delta: int) -> bool:
    left, right = delta_commutator_sides(x, y, delta)
    return left == right


def exp_axiom_failures(g: Element, h: Element, alpha: int, beta: int):
    """Names of the exponential-group axioms violated by ``(g, h, alpha, beta)``."""
    one = identity(g.rank)
    bad = []
    if pow(g, 1) != g:
        bad.append("g^1 = g")
    if pow(g, 0) != one:
        bad.append("g^0 = 1")
    if pow(one, alpha) != one:
        bad.append("1^alpha = 1")
    if pow(g, alpha + beta) != mul(pow(g, alpha), pow(g, beta)):
        bad.append("g^(alpha+beta) = g^alpha g^beta")
    if pow(g, alpha * beta) != pow(pow(g, alpha), beta):
        bad.append("g^(alpha beta) = (g^alpha)^beta")
    if pow(conjugate(g, h), alpha) != conjugate(pow(g, alpha), h):
        bad.append("(h^-1 g h)^alpha = h^-1 g^alpha h")
    if mul(g, h) == mul(h, g) and pow(mul(g, h), alpha) != mul(pow(g, alpha), pow(h, alpha)):
        bad.append("[g,h] = 1 => (gh)^alpha = g^alpha h^alpha")
    return bad


def check_exp_axioms(g: Element, h: Element, alpha: int, beta: int) -> bool:
    return not exp_axiom_failures(g, h, alpha, beta)


class BasisVerdict(enum.Enum):
    FAIL_ABELIANIZATION = "FailAbelianization"
    FAIL_JACOBIAN_UNIT = "FailJacobianUnit"
    PASS_NECESSARY = "PassNecessary"


def int_det(rows):
    """Determinant of a square integer matrix (fraction-free elimination)."""
    m = [[Fraction(x) for x in r] for r in rows]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            if f:
                for k in range(c, n):
                    m[r][k] -= f * m[c][k]
    return int(det)


def poly_det(rows):
    """Determinant over the Laurent ring by Bareiss elimination."""
    n = len(rows)
    if n == 0:
        raise ValueError("empty matrix")
    rank = rows[0][0].rank
    m = [list(r) for r in rows]
    sign = 1
    prev = LaurentPoly.one(rank)
    for c in range(n - 1):
        piv = next((r for r in range(c, n) if m[r][c]), None)
        if piv is None:
            return LaurentPoly.zero(rank)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            sign = -sign
        for r in range(c + 1, n):
            for k in range(c + 1, n):
                m[r][k] = divide_exact(m[r][k] * m[c][c] - m[r][c] * m[c][k], prev)
            m[r][c] = LaurentPoly.zero(rank)
        prev = m[c][c]
    return m[n - 1][n - 1] * sign


def basis_certificate(words):
    """Necessary conditions for ``words`` to be a free basis.

    Returns ``(verdict, det)`` where ``det`` is the abelianization determinant
    for a :attr:`BasisVerdict.FAIL_ABELIANIZATION` verdict and the Fox
    Jacobian determinant otherwise.
    """
    from .fox import fox_all

    words = list(words)
    if not words:
        raise RankMismatch("basis_certificate needs n words")
    n = words[0].rank
    if len(words) != n or any(w.rank != n for w in words):
        raise RankMismatch(f"need exactly {n} words of rank {n}")
    ab = [list(w.abelianization()) for w in words]
    d = int_det(ab)
    if d not in (1, -1):
        return BasisVerdict.FAIL_ABELIANIZATION, d
    jac = poly_det([list(fox_all(w)) for w in words])
    if not jac.is_monomial():
        return BasisVerdict.FAIL_JACOBIAN_UNIT, jac
    return BasisVerdict.PASS_NECESSARY, jac


def coordinates_tuple(g: Element):
    """``(gamma, [beta_ij in pair order])``."""
    return g.gamma, [g.part.get(i, j) for i, j in pair_order(g.rank)]


__all__ = [
    "Element",
    "identity",
    "generator",
    "from_part",
    "mul",
    "inv",
    "inv_by_words",
    "pow",
    "commutator",
    "conjugate",
    "act",
    "evaluate_word",
    "power_residue",
    "delta_comm_poly",
    "delta_commutator_check",
    "check_exp_axioms",
    "basis_certificate",
    "BasisVerdict",
]
