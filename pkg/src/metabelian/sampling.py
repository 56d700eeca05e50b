"""Seeded random generators for words, polynomials and module elements.

Shared by the CLI harness and the test-suite so that a seed names the same
sample everywhere.
"""

from __future__ import annotations

import random

from .commod import CollectedPart, RawModuleExpr, pair_order
from .laurent import LaurentPoly
from .words import GroupWord, commutator_word


def rng(seed) -> random.Random:
    return random.Random(seed)


def random_word(r: random.Random, rank: int, max_len: int = 20, max_exp: int = 5) -> GroupWord:
    length = r.randint(0, max_len)
    letters = []
    for _ in range(length):
        e = r.randint(1, max_exp) * r.choice((-1, 1))
        letters.append((r.randint(1, rank), e))
    return GroupWord(rank, letters)


def random_monomial(r, rank, max_exp=2, variables=None):
    variables = range(1, rank + 1) if variables is None else variables
    m = [0] * rank
    for i in variables:
        m[i - 1] = r.randint(-max_exp, max_exp)
    return tuple(m)


def random_poly(r, rank, max_terms=4, max_exp=2, max_coeff=5, variables=None) -> LaurentPoly:
    """Possibly zero; ``variables`` restricts the support (1-based)."""
    terms = {}
    for _ in range(r.randint(0, max_terms)):
        c = r.randint(-max_coeff, max_coeff)
        if c:
            terms[random_monomial(r, rank, max_exp, variables)] = c
    return LaurentPoly(rank, terms)


def random_nonzero_poly(r, rank, **kw) -> LaurentPoly:
    while True:
        p = random_poly(r, rank, **kw)
        if p:
            return p


def random_raw_expr(r, rank, max_factors=4, **kw) -> RawModuleExpr:
    factors = []
    for _ in range(r.randint(0, max_factors)):
        i, j = r.sample(range(1, rank + 1), 2)
        factors.append(((i, j), random_poly(r, rank, **kw)))
    return RawModuleExpr(rank, factors)


def random_part(r, rank, density=0.6, **kw) -> CollectedPart:
    """A collected part drawn coordinate-wise with the support constraint."""
    beta = {}
    for i, j in pair_order(rank):
        if r.random() < density:
            p = random_poly(r, rank, variables=range(1, i + 1), **kw)
            if p:
                beta[(i, j)] = p
    return CollectedPart(rank, beta)


def random_element(r, rank, **kw):
    from .group import Element

    gamma = tuple(r.randint(-4, 4) for _ in range(rank))
    return Element(rank, gamma, random_part(r, rank, **kw))


def near_miss(r, w: GroupWord) -> GroupWord:
    """``w`` with a short word spliced in that is trivial or nearly trivial.

    The insert is a Jacobi relator or ``[[u,v],[s,t]]`` (both trivial), a
    commutator ``[c, v]`` with ``c`` in ``G'``, or a relator with one
    exponent changed by one.
    """
    n = w.rank
    k = r.randint(0, len(w.letters))
    kind = r.randrange(4)
    if kind == 0 and n >= 3:
        # [x_i, x_j]^(a_k - 1) against its rewrite: trivial
        j, i, kk = sorted(r.sample(range(1, n + 1), 3))
        ins = jacobi_word(n, i, j, kk)
    elif kind == 1:
        # [[u, v], [s, t]] is trivial in a metabelian group
        u, v, s, t = (random_word(r, n, 3, 2) for _ in range(4))
        ins = commutator_word(commutator_word(u, v), commutator_word(s, t))
    elif kind == 2:
        # [c, v] with c in G' and v arbitrary: nontrivial in general
        c = commutator_word(random_word(r, n, 3, 2), random_word(r, n, 3, 2))
        ins = commutator_word(c, random_word(r, n, 3, 2))
    else:
        # a Jacobi relator with one letter perturbed
        if n >= 3:
            j, i, kk = sorted(r.sample(range(1, n + 1), 3))
            ins = jacobi_word(n, i, j, kk)
        else:
            ins = commutator_word(GroupWord.generator(n, 2), GroupWord.generator(n, 1))
        letters = list(ins.letters)
        p = r.randrange(len(letters))
        g, e = letters[p]
        letters[p] = (g, e + r.choice((-1, 1)))
        ins = GroupWord(n, letters)
    return GroupWord(n, w.letters[:k] + ins.letters + w.letters[k:])


def jacobi_word(rank, i, j, k) -> GroupWord:
    """``[x_i,x_j]^(a_k - 1) * ([x_k,x_j]^(a_i - 1) [x_k,x_i]^(1 - a_j))^-1``, trivial in G."""
    from .words import act_word

    x = lambda t: GroupWord.generator(rank, t)  # noqa: E731
    ak = LaurentPoly.var(rank, k) - 1
    ai = LaurentPoly.var(rank, i) - 1
    aj = 1 - LaurentPoly.var(rank, j)
    lhs = act_word(commutator_word(x(i), x(j)), ak)
    rhs = act_word(commutator_word(x(k), x(j)), ai) * act_word(commutator_word(x(k), x(i)), aj)
    return lhs * rhs.inverse()

