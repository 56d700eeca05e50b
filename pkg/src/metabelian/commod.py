"""The commutator subgroup G' as a module over the Laurent ring.

Module elements are written additively: ``{(i, j): Q}`` stands for the product
of ``[x_i, x_j]^Q`` over all stored pairs, with ``j < i``.  A *collected*
part additionally requires every coefficient of ``[x_i, x_j]`` to involve only
``a_1 .. a_i``; such representations are unique, so :class:`CollectedPart`
equality is structural.
"""

from __future__ import annotations

from typing import Iterable

from .errors import BadIndex, RankMismatch
from .laurent import LaurentPoly, _add_term, geometric_sum, retract, support


def pair_order(rank):
    """Commutator indices ``(i, j)``, ``j < i``, sorted by ``i`` then ``j``."""
    return [(i, j) for i in range(2, rank + 1) for j in range(1, i)]


def unit_vector(rank, k, power=1):
    e = [0] * rank
    e[k - 1] = power
    return tuple(e)


def _check_pair(rank, i, j):
    if not (1 <= i <= rank and 1 <= j <= rank):
        raise BadIndex(f"commutator [x{i},x{j}] out of range for rank {rank}")


class RawModuleExpr:
    """An uncollected product of commutator powers.

    Factors with ``i < j`` are normalized to ``[x_j, x_i]`` with negated
    exponent; factors with ``i == j`` are dropped (``[x_i, x_i] = 1``).
    """

    __slots__ = ("rank", "factors")

    def __init__(self, rank: int, factors: Iterable = ()):
        self.rank = rank
        out = []
        for (i, j), p in factors:
            _check_pair(rank, i, j)
            if p.rank != rank:
                raise RankMismatch(f"coefficient of rank {p.rank} in rank {rank} expression")
            if i == j or p.is_zero():
                continue
            if i < j:
                i, j, p = j, i, -p
            out.append(((i, j), p))
        self.factors = tuple(out)

    def __iter__(self):
        return iter(self.factors)

    def __len__(self):
        return len(self.factors)

    def __add__(self, other):
        if other.rank != self.rank:
            raise RankMismatch(f"rank {self.rank} vs rank {other.rank}")
        return RawModuleExpr(self.rank, self.factors + other.factors)

    def __neg__(self):
        return RawModuleExpr(self.rank, [(ij, -p) for ij, p in self.factors])

    def __repr__(self):
        body = " * ".join(f"[x{i},x{j}]^({p})" for (i, j), p in self.factors)
        return f"RawModuleExpr({self.rank}, {body or '1'})"


class CollectedPart:
    __slots__ = ("rank", "_beta", "_hash")

    def __init__(self, rank: int, beta=None):
        self.rank = rank
        clean = {}
        for (i, j), p in (beta or {}).items():
            _check_pair(rank, i, j)
            if not j < i:
                raise BadIndex(f"collected parts store only j < i, got ({i},{j})")
            if p.rank != rank:
                raise RankMismatch(f"coefficient of rank {p.rank} in rank {rank} part")
            if not support(p) <= set(range(1, i + 1)):
                raise ValueError(f"coefficient of [x{i},x{j}] uses variables beyond a{i}: {p}")
            if p:
                clean[(i, j)] = p
        self._beta = clean
        self._hash = None

    @classmethod
    def _raw(cls, rank, beta):
        u = object.__new__(cls)
        u.rank = rank
        u._beta = beta
        u._hash = None
        return u

    @classmethod
    def zero(cls, rank):
        return cls._raw(rank, {})

    @classmethod
    def basis(cls, rank, i, j):
        """The single commutator ``[x_i, x_j]``, ``j < i``."""
        return cls(rank, {(i, j): LaurentPoly.one(rank)})

    @property
    def beta(self):
        return dict(self._beta)

    def get(self, i, j):
        return self._beta.get((i, j)) or LaurentPoly.zero(self.rank)

    def items(self):
        return [(ij, self._beta[ij]) for ij in sorted(self._beta)]

    def is_zero(self):
        return not self._beta

    def __bool__(self):
        return bool(self._beta)

    def __len__(self):
        return len(self._beta)

    def __eq__(self, other):
        if not isinstance(other, CollectedPart):
            return NotImplemented
        return self.rank == other.rank and self._beta == other._beta

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rank, frozenset(self._beta.items())))
        return self._hash

    def __repr__(self):
        body = " * ".join(f"[x{i},x{j}]^({p})" for (i, j), p in self.items())
        return f"CollectedPart({self.rank}, {body or '1'})"

    def to_raw(self):
        return RawModuleExpr(self.rank, self.items())

    def __add__(self, other):
        return madd(self, other)

    def __neg__(self):
        return mneg(self)

    def __sub__(self, other):
        return madd(self, mneg(other))


def jacobi_step(i: int, j: int, k: int, delta: int, rank: int) -> RawModuleExpr:
    """Rewrite ``[x_i, x_j]^(a_k^delta - 1)`` for ``j < i < k``.

    Returns ``[x_k,x_j]^((a_i - 1) e) * [x_k,x_i]^((1 - a_j) e)`` with
    ``e = (a_k^delta - 1)/(a_k - 1)``.
    """
    if not (1 <= j < i < k <= rank):
        raise BadIndex(f"jacobi_step needs 1 <= j < i < k <= rank, got j={j} i={i} k={k}")
    e = geometric_sum(unit_vector(rank, k), delta)
    ai = LaurentPoly.var(rank, i)
    aj = LaurentPoly.var(rank, j)
    return RawModuleExpr(rank, [((k, j), (ai - 1) * e), ((k, i), (1 - aj) * e)])


def _quotient_terms(dc):
    """Terms ``(t, e)`` of ``sum c_d (a^d - 1) / (a - 1)`` over ``(d, c)`` pairs.

    For ``t >= 0`` the coefficient of ``a^t`` is the sum of ``c_d`` over
    ``d > t``; for ``t < 0`` it is minus the sum over ``d <= t``.
    """
    out = []
    pos = sorted((d, c) for d, c in dc if d > 0)
    run = 0
    for idx in range(len(pos) - 1, -1, -1):
        d, c = pos[idx]
        run += c
        stop = pos[idx - 1][0] if idx else 0
        if run:
            out.extend((t, run) for t in range(d - 1, stop - 1, -1))
    neg = sorted((d, c) for d, c in dc if d < 0)
    run = 0
    for idx, (d, c) in enumerate(neg):
        run += c
        stop = neg[idx + 1][0] if idx + 1 < len(neg) else 0
        if run:
            out.extend((t, -run) for t in range(d, stop))
    return out


def collect(e: RawModuleExpr | CollectedPart) -> CollectedPart:
    """Bring a module expression to collected form.

    The coefficient ``p`` of ``[x_i, x_j]`` is cleared of ``a_k`` for each
    ``k > i`` in turn: ``p = p(a_k = 1) + (a_k - 1) E`` and
    ``[x_i,x_j]^((a_k - 1) E) = [x_k,x_j]^((a_i - 1) E) [x_k,x_i]^((1 - a_j) E)``.
    The new factors on ``[x_k, .]`` are processed later because ``k > i``.
    """
    if isinstance(e, CollectedPart):
        return e
    n = e.rank
    # Monomials are packed into ints, one biased field of `width` bits per
    # variable.  A term moves only to pairs with a larger first index, so it
    # gains at most n - 1 unit steps and no field can overflow.
    top = max((abs(x) for _, p in e.factors for m in p._terms for x in m), default=0)
    width = (top + n + 1).bit_length() + 1
    bias, mask = 1 << (width - 1), (1 << width) - 1
    offs = [width * k for k in range(n)]
    packed_zero = sum(bias << o for o in offs)

    buckets = {}
    for ij, p in e.factors:
        acc = buckets.setdefault(ij, {})
        for m, c in p._terms.items():
            key = packed_zero + sum(x << o for x, o in zip(m, offs))
            acc[key] = acc.get(key, 0) + c

    out = {}
    for i, j in pair_order(n):
        acc = buckets.pop((i, j), None)
        if not acc:
            continue
        step_i, step_j = 1 << offs[i - 1], 1 << offs[j - 1]
        for k in range(i, n):  # 0-based position k holds a_{k+1}
            ok = offs[k]
            rest, fibers = {}, {}
            for m, c in acc.items():
                if not c:
                    continue
                d = ((m >> ok) & mask) - bias
                if d:
                    base = m - (d << ok)
                    fibers.setdefault(base, []).append((d, c))
                    rest[base] = rest.get(base, 0) + c
                else:
                    rest[m] = rest.get(m, 0) + c
            if fibers:
                kj = buckets.setdefault((k + 1, j), {})
                ki = buckets.setdefault((k + 1, i), {})
                kj_get, ki_get = kj.get, ki.get
                for base, dc in fibers.items():
                    for t, sign in _quotient_terms(dc):
                        mono = base + (t << ok)
                        mono_i, mono_j = mono + step_i, mono + step_j
                        # (a_i - 1) E on [x_k, x_j]
                        kj[mono_i] = kj_get(mono_i, 0) + sign
                        kj[mono] = kj_get(mono, 0) - sign
                        # (1 - a_j) E on [x_k, x_i]
                        ki[mono] = ki_get(mono, 0) + sign
                        ki[mono_j] = ki_get(mono_j, 0) - sign
            acc = rest
        res = {tuple(((m >> o) & mask) - bias for o in offs): c for m, c in acc.items() if c}
        if res:
            out[(i, j)] = LaurentPoly._raw(n, res)
    return CollectedPart._raw(n, out)


def madd(u: CollectedPart, v: CollectedPart) -> CollectedPart:
    if u.rank != v.rank:
        raise RankMismatch(f"rank {u.rank} vs rank {v.rank}")
    out = dict(u._beta)
    for ij, p in v._beta.items():
        s = out[ij] + p if ij in out else p
        if s:
            out[ij] = s
        else:
            out.pop(ij, None)
    return CollectedPart._raw(u.rank, out)


def mneg(u: CollectedPart) -> CollectedPart:
    return CollectedPart._raw(u.rank, {ij: -p for ij, p in u._beta.items()})


def mscale(u: CollectedPart, k: int) -> CollectedPart:
    """Integer multiple; keeps collected form."""
    if not k:
        return CollectedPart.zero(u.rank)
    return CollectedPart._raw(u.rank, {ij: p * k for ij, p in u._beta.items()})


def mact(u: CollectedPart, q: LaurentPoly) -> CollectedPart:
    """Module action ``u^q``; the product is re-collected."""
    if q.rank != u.rank:
        raise RankMismatch(f"rank {u.rank} vs rank {q.rank}")
    return collect(RawModuleExpr(u.rank, [(ij, p * q) for ij, p in u._beta.items()]))


def retract_part(u: CollectedPart, keep: Iterable[int]) -> CollectedPart:
    """Image under ``x_i -> 1`` for ``i`` not in ``keep``."""
    keep = set(keep)
    out = {}
    for (i, j), p in u._beta.items():
        if i in keep and j in keep:
            r = retract(p, keep)
            if r:
                out[(i, j)] = r
    return CollectedPart._raw(u.rank, out)


def is_collected(u) -> bool:
    """Support check used by tests and by coordinate decoding."""
    return all(support(p) <= set(range(1, i + 1)) for (i, _), p in u.items())
