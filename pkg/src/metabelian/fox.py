"""Fox derivatives with values in the Laurent ring, and what they buy us.

``d_i(x_j) = [i == j]`` and ``d_i(uv) = d_i(u) + u_bar d_i(v)``, where
``u_bar`` is the image of ``u`` in the abelianization.  Together with the
abelianization, the Fox vector determines an element of the free metabelian
group (Magnus embedding), which gives an equality test that shares no code
with collection.
"""

from __future__ import annotations

from .commod import CollectedPart
from .errors import BadIndex, InternalInconsistency, NotDivisible, NotInCommutant
from .laurent import LaurentPoly, _add_term, divide_exact, geometric_sum, involute


def _accumulate(w, wanted):
    # wanted: set of 1-based indices; returns {i: term dict}
    n = w.rank
    prefix = [0] * n
    acc = {i: {} for i in wanted}
    for k, e in w.letters:
        if k in acc:
            step = range(e) if e > 0 else range(e, 0)
            sign = 1 if e > 0 else -1
            out = acc[k]
            for t in step:
                m = list(prefix)
                m[k - 1] += t
                _add_term(out, tuple(m), sign)
        prefix[k - 1] += e
    return {i: LaurentPoly._raw(n, t) for i, t in acc.items()}


def fox(w, i: int) -> LaurentPoly:
    if not 1 <= i <= w.rank:
        raise BadIndex(f"Fox derivative d{i} out of range for rank {w.rank}")
    return _accumulate(w, {i})[i]


def fox_all(w):
    """``(d_1(w), .., d_n(w))`` as a tuple."""
    d = _accumulate(w, set(range(1, w.rank + 1)))
    return tuple(d[i] for i in range(1, w.rank + 1))


def main_identity_holds(w) -> bool:
    """``sum d_i(w) (a_i - 1) == w_bar - 1``."""
    n = w.rank
    lhs = LaurentPoly.zero(n)
    for i, d in enumerate(fox_all(w), start=1):
        lhs = lhs + d * (LaurentPoly.var(n, i) - 1)
    return lhs == LaurentPoly.monomial(w.abelianization()) - 1


def magnus_equal(w1, w2) -> bool:
    """Decide ``w1 == w2`` in the free metabelian group without normal forms."""
    if w1.abelianization() != w2.abelianization():
        return False
    return not any(fox_all(w1 * w2.inverse()))


def _comm_fox(rank, i, j):
    # d([x_i, x_j]) at indices i and j; all other entries vanish
    ai_inv = LaurentPoly.var(rank, i, -1)
    aj_inv = LaurentPoly.var(rank, j, -1)
    return ai_inv * (aj_inv - 1), aj_inv * (1 - ai_inv)


def fox_of_part(u: CollectedPart):
    """Fox vector of a commutator-part, using ``d(w^q) = involute(q) d(w)`` on ``G'``."""
    n = u.rank
    out = [LaurentPoly.zero(n) for _ in range(n)]
    for (i, j), q in u.items():
        qi = involute(q)
        di, dj = _comm_fox(n, i, j)
        out[i - 1] = out[i - 1] + qi * di
        out[j - 1] = out[j - 1] + qi * dj
    return tuple(out)


def fox_of_element(g, i: int | None = None):
    """Fox derivative(s) of an element straight from its normal form.

    ``d(x^gamma u) = d(x^gamma) + a^gamma d(u)``.  Returns the full vector
    when ``i`` is None.
    """
    n = g.rank
    if i is not None and not 1 <= i <= n:
        raise BadIndex(f"Fox derivative d{i} out of range for rank {n}")
    head = []
    prefix = [0] * n
    for k in range(1, n + 1):
        e = g.gamma[k - 1]
        head.append(geometric_sum(_unit(n, k), e).shift(prefix) if e else LaurentPoly.zero(n))
        prefix[k - 1] = e
    tail = fox_of_part(g.part)
    vec = tuple(h + t.shift(g.gamma) for h, t in zip(head, tail))
    return vec if i is None else vec[i - 1]


def _unit(n, k):
    e = [0] * n
    e[k - 1] = 1
    return tuple(e)


def _retract_word(w, t):
    from .words import GroupWord

    return GroupWord(w.rank, [(k, e) for k, e in w.letters if k <= t])


def recover_collected(w) -> CollectedPart:
    """The collected form of a word lying in ``G'``, read off its Fox derivatives.

    Work up through the retractions onto ``x1 .. xt``.  After removing the
    already known pairs ``(i, j)`` with ``i < t``, the ``j``-th derivative of
    the retracted word is ``involute(beta_tj) * a_j^-1 a_t^-1 (a_t - 1)``.
    """
    n = w.rank
    if any(w.abelianization()):
        raise NotInCommutant(f"word {w} has nontrivial abelianization")
    beta = {}
    for t in range(2, n + 1):
        known = fox_of_part(CollectedPart._raw(n, dict(beta)))
        got = fox_all(_retract_word(w, t))
        res = [g - k for g, k in zip(got, known)]
        at = LaurentPoly.var(n, t)
        for j in range(1, t):
            cof = LaurentPoly.monomial(tuple(-1 if k in (j, t) else 0 for k in range(1, n + 1))) * (at - 1)
            try:
                b = involute(divide_exact(res[j - 1], cof))
            except NotDivisible as exc:
                raise InternalInconsistency(f"d{j} residual at level {t} not divisible: {exc}") from exc
            if b:
                beta[(t, j)] = b
        left = [g - k for g, k in zip(got, fox_of_part(CollectedPart._raw(n, dict(beta))))]
        if any(left):
            raise InternalInconsistency(f"Fox residual at level {t} did not vanish")
    return CollectedPart(n, beta)
