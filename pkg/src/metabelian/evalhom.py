"""Evaluation homomorphisms ``a_i -> alpha_i`` and congruences they induce on ``G'``.

At a point ``alpha`` with nonzero integer entries the Laurent ring maps onto
``Z[1/N]`` with ``N = |alpha_1 ... alpha_n|``.  Tensoring ``G'`` along this
map gives the module over ``Z[1/N]`` spanned by the commutators ``e_ij``
modulo the evaluated Jacobi relators

    (alpha_k - 1) e_ij - (alpha_i - 1) e_kj + (alpha_j - 1) e_ki,  j < i < k.

Membership in that relation lattice is decided with a Smith normal form.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .commod import CollectedPart, pair_order
from .errors import (
    InternalInconsistency,
    NonIntegerExponent,
    RankMismatch,
    ZeroEvaluationPoint,
    ZeroPolynomial,
)
from .laurent import LaurentPoly, canonical_fraction, eval_at


@dataclass(frozen=True)
class EvalPoint:
    alphas: tuple

    def __post_init__(self):
        object.__setattr__(self, "alphas", tuple(int(a) for a in self.alphas))
        if any(a == 0 for a in self.alphas):
            raise ZeroEvaluationPoint(f"evaluation point {self.alphas} has a zero entry")

    @property
    def rank(self):
        return len(self.alphas)

    @property
    def denominator_base(self):
        n = 1
        for a in self.alphas:
            n *= abs(a)
        return n

    def __iter__(self):
        return iter(self.alphas)


def _as_point(p):
    return p if isinstance(p, EvalPoint) else EvalPoint(tuple(p))


# ---------------------------------------------------------------------------
# discrimination


def _nonvanishing_point(polys, v):
    """Values for variables ``0 .. v-1`` making every polynomial nonzero.

    ``polys`` are dicts over exponent tuples of length ``v`` with nonnegative
    entries.  Recurse on the leading coefficients in the last variable, then
    take the last variable beyond a root bound of every specialization.
    """
    if v == 0:
        return ()
    leads = []
    for p in polys:
        lead = {}
        top = max(m[v - 1] for m in p)
        for m, c in p.items():
            if m[v - 1] == top:
                lead[m[: v - 1]] = lead.get(m[: v - 1], 0) + c
        leads.append(lead)
    head = _nonvanishing_point(leads, v - 1)
    best = 1
    for p in polys:
        uni = {}
        for m, c in p.items():
            val = c
            for x, e in zip(head, m):
                val *= x ** e
            uni[m[v - 1]] = uni.get(m[v - 1], 0) + val
        if max(uni) == 0:
            continue
        # |root| < 1 + max |c_i / c_d| <= 1 + sum |c_i| for an integer polynomial
        best = max(best, 1 + sum(abs(c) for c in uni.values()))
    return head + (best,)


def separating_point(ps) -> EvalPoint:
    """A point at which every polynomial in ``ps`` evaluates to a nonzero number."""
    ps = list(ps)
    if not ps:
        raise ValueError("separating_point needs at least one polynomial")
    rank = ps[0].rank
    if any(p.rank != rank for p in ps):
        raise RankMismatch("polynomials of different ranks")
    if any(p.is_zero() for p in ps):
        raise ZeroPolynomial("the zero polynomial vanishes everywhere")
    polys = [canonical_fraction(p)[0].terms for p in ps]
    point = EvalPoint(_nonvanishing_point(polys, rank))
    for p in ps:
        if eval_at(p, point.alphas) == 0:
            raise InternalInconsistency(f"{p} vanishes at the constructed point {point.alphas}")
    return point


def discriminating_point(ps) -> EvalPoint:
    """A point at which pairwise distinct polynomials take pairwise distinct values."""
    ps = list(ps)
    diffs = []
    for k, p in enumerate(ps):
        for q in ps[k + 1:]:
            d = p - q
            if d.is_zero():
                raise ZeroPolynomial(f"polynomial {p} occurs twice")
            diffs.append(d)
    if not diffs:
        return EvalPoint((1,) * ps[0].rank)
    return separating_point(diffs)


# ---------------------------------------------------------------------------
# Smith normal form


def smith_normal_form(a):
    """Return ``(U, D, V)`` with ``U a V = D`` diagonal, ``U`` and ``V`` unimodular.

    The diagonal entries are nonnegative and each divides the next.
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    d = [list(r) for r in a]
    u = [[int(i == j) for j in range(rows)] for i in range(rows)]
    v = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def row_op(r1, r2, q):  # r1 -= q r2
        d[r1] = [x - q * y for x, y in zip(d[r1], d[r2])]
        u[r1] = [x - q * y for x, y in zip(u[r1], u[r2])]

    def col_op(c1, c2, q):  # c1 -= q c2
        for m in (d, v):
            for r in m:
                r[c1] -= q * r[c2]

    def swap_rows(r1, r2):
        d[r1], d[r2] = d[r2], d[r1]
        u[r1], u[r2] = u[r2], u[r1]

    def swap_cols(c1, c2):
        for m in (d, v):
            for r in m:
                r[c1], r[c2] = r[c2], r[c1]

    t = 0
    while t < min(rows, cols):
        nz = [(abs(d[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if d[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = d[t][t]
            done = True
            for i in range(t + 1, rows):
                if d[i][t]:
                    row_op(i, t, d[i][t] // p)
                    if d[i][t]:
                        done = False
            for j in range(t + 1, cols):
                if d[t][j]:
                    col_op(j, t, d[t][j] // p)
                    if d[t][j]:
                        done = False
            if done:
                # divisibility of the rest by the pivot
                bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if d[i][j] % p), None)
                if bad is None:
                    break
                for r in (d, u):
                    r[t] = [x + y for x, y in zip(r[t], r[bad[0]])]
                continue
            nz = [(abs(d[i][t]), i, t) for i in range(t, rows) if d[i][t]]
            nz += [(abs(d[t][j]), t, j) for j in range(t, cols) if d[t][j]]
            _, i, j = min(nz)
            swap_rows(t, i)
            swap_cols(t, j)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return u, d, v


def _matmul(a, b):
    return [[sum(x * y for x, y in zip(r, c)) for c in zip(*b)] for r in a]


def _strip(d, n):
    # largest divisor of d coprime to n
    if n == 1 or d == 0:
        return d
    g = gcd(d, n)
    while g > 1:
        d //= g
        g = gcd(d, g)
    return d


@dataclass(frozen=True)
class QuotientPresentation:
    point: EvalPoint
    relators: list
    invariants: tuple
    U: list = field(repr=False)
    V: list = field(repr=False)

    @property
    def columns(self):
        return pair_order(self.point.rank)

    @property
    def denominator_base(self):
        return self.point.denominator_base

    @property
    def free_rank(self):
        return len(self.columns) - sum(1 for d in self.invariants if d)

    def torsion(self):
        """Invariant factors of the quotient over ``Z[1/N]`` that are not units."""
        n = self.denominator_base
        return tuple(s for s in (_strip(d, n) for d in self.invariants if d) if s != 1)

    def contains(self, vec) -> bool:
        """Is the rational vector ``vec`` in the ``Z[1/N]``-span of the relators?"""
        vec = [Fraction(x) for x in vec]
        if len(vec) != len(self.columns):
            raise RankMismatch(f"vector of length {len(vec)}, expected {len(self.columns)}")
        n = self.denominator_base
        scale = 1
        for x in vec:
            while (x * scale).denominator != 1:
                if n == 1:
                    raise InternalInconsistency(f"{x} is not an integer over Z")
                scale *= n
        w = [int(x * scale) for x in vec]
        w = [sum(a * b for a, b in zip(w, col)) for col in zip(*self.V)]
        for k, x in enumerate(w):
            d = self.invariants[k] if k < len(self.invariants) else 0
            if d == 0:
                if x:
                    return False
            elif x % _strip(d, n):
                return False
        return True


def relator_matrix(point: EvalPoint):
    alpha = point.alphas
    n = len(alpha)
    cols = {ij: c for c, ij in enumerate(pair_order(n))}
    rows = []
    for k in range(3, n + 1):
        for i in range(2, k):
            for j in range(1, i):
                r = [0] * len(cols)
                r[cols[(i, j)]] += alpha[k - 1] - 1
                r[cols[(k, j)]] -= alpha[i - 1] - 1
                r[cols[(k, i)]] += alpha[j - 1] - 1
                rows.append(r)
    return rows


def quotient_presentation(point) -> QuotientPresentation:
    point = _as_point(point)
    rel = relator_matrix(point)
    m = len(pair_order(point.rank))
    if rel:
        u, d, v = smith_normal_form(rel)
        if _matmul(_matmul(u, rel), v) != d:
            raise InternalInconsistency("Smith normal form check failed")
        inv = tuple(d[k][k] for k in range(min(len(d), m)))
    else:
        u, v, inv = [], [[int(i == j) for j in range(m)] for i in range(m)], ()
    return QuotientPresentation(point, rel, inv, u, v)


# ---------------------------------------------------------------------------
# images and congruences


def module_image(u, point):
    """Coefficients of a module element evaluated at ``point``, in pair order."""
    point = _as_point(point)
    if u.rank != point.rank:
        raise RankMismatch(f"rank {u.rank} vs point of length {point.rank}")
    items = u.items() if isinstance(u, CollectedPart) else list(u)
    acc = {}
    for ij, p in items:
        acc[ij] = acc.get(ij, 0) + eval_at(p, point.alphas)
    return tuple(Fraction(acc.get(ij, 0)) for ij in pair_order(u.rank))


def congruent_images(x, y, point) -> bool:
    q = quotient_presentation(point)
    return q.contains([a - b for a, b in zip(x, y)])


def congruent_mod(u, v, point) -> bool:
    """Is ``u == v`` modulo the submodule cut out by evaluation at ``point``?"""
    if u.rank != v.rank:
        raise RankMismatch(f"rank {u.rank} vs rank {v.rank}")
    point = _as_point(point)
    return congruent_images(module_image(u, point), module_image(v, point), point)


def lemma63_check(g, q: LaurentPoly, h, point, two_sided: bool = False) -> bool:
    """Necessary condition for ``g^q == h`` at one point.

    With an integer value ``q(alpha)`` this tests ``g^q(alpha) == h`` in the
    evaluated quotient.  When ``q(alpha)`` is not an integer, pass
    ``two_sided=True`` to test ``g^P(alpha) == h^(alpha^beta)`` for the
    canonical fraction ``q = P / a^beta`` instead.
    """
    point = _as_point(point)
    val = eval_at(q, point.alphas)
    gi = module_image(g, point)
    hi = module_image(h, point)
    if val.denominator == 1 and not two_sided:
        return congruent_images([x * val for x in gi], hi, point)
    if not two_sided:
        raise NonIntegerExponent(f"{q} evaluates to {val} at {point.alphas}; use two_sided=True")
    p, beta = canonical_fraction(q)
    left = eval_at(p, point.alphas)
    right = 1
    for a, b in zip(point.alphas, beta):
        right *= a ** b
    return congruent_images([x * left for x in gi], [y * right for y in hi], point)
