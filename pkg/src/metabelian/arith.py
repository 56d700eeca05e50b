"""Integer codes for tuples, Laurent polynomials and group elements.

``zigzag`` folds the integers onto the naturals, ``pair`` is the Cantor
pairing function, and tuples of every length are coded bijectively:
``()`` is 0 and a nonempty tuple is ``1 + pair(len - 1, fold)``, where
``fold`` pairs the zigzagged entries along a balanced binary tree.  The
balanced shape keeps code size roughly linear in the tuple length; a left
fold squares the code once per entry.  Polynomials are coded
through their canonical fraction, elements through their coordinates.
Every decoder re-encodes its output and rejects the input unless the codes
match, so the set of valid codes is decidable and decoding is exact.
"""

from __future__ import annotations

from math import isqrt

from .commod import CollectedPart, pair_order
from .errors import BadCoordinates, NotACode
from .laurent import LaurentPoly, canonical_fraction, support


def zigzag(z: int) -> int:
    return 2 * z if z >= 0 else -2 * z - 1


def unzigzag(k: int) -> int:
    if k < 0:
        raise NotACode(f"{k} is negative")
    return k // 2 if k % 2 == 0 else -(k + 1) // 2


def pair(m: int, k: int) -> int:
    if m < 0 or k < 0:
        raise NotACode(f"pair needs naturals, got ({m}, {k})")
    s = m + k
    return s * (s + 1) // 2 + k


def unpair(c: int):
    if c < 0:
        raise NotACode(f"{c} is negative")
    s = (isqrt(8 * c + 1) - 1) // 2
    k = c - s * (s + 1) // 2
    return s - k, k


def _fold(vals):
    if len(vals) == 1:
        return vals[0]
    h = (len(vals) + 1) // 2
    return pair(_fold(vals[:h]), _fold(vals[h:]))


def _unfold(v, size, block, out):
    # every window of `size` entries holds size // block nonzero entries, and
    # pair(m, k) >= m + k, so a smaller value cannot come from a valid code
    if block and v < size // block:
        raise NotACode(f"subtree value {v} too small for {size} entries")
    if size == 1:
        out.append(v)
        return
    m, k = unpair(v)
    h = (size + 1) // 2
    _unfold(m, h, block, out)
    _unfold(k, size - h, block, out)


def encode_tuple(t) -> int:
    t = tuple(t)
    if not t:
        return 0
    return 1 + pair(len(t) - 1, _fold([zigzag(z) for z in t]))


def decode_tuple(code: int, max_len: int | None = None, block: int | None = None) -> tuple:
    """Inverse of :func:`encode_tuple`.

    ``max_len`` caps the length.  ``block`` asserts that every entry at a
    multiple of ``block`` is nonzero, which lets long non-codes fail fast.
    """
    if code < 0:
        raise NotACode(f"{code} is negative")
    if code == 0:
        return ()
    extra, acc = unpair(code - 1)
    if max_len is not None and extra >= max_len:
        raise NotACode(f"tuple of length {extra + 1} exceeds {max_len}")
    out = []
    _unfold(acc, extra + 1, block, out)
    return tuple(unzigzag(z) for z in out)


def encode_poly(q: LaurentPoly) -> int:
    """``pair(tau(u), tau(v))`` for the canonical fraction ``P / a^v``.

    ``u`` lists ``(coefficient, exponents...)`` for the terms of ``P`` from
    the largest monomial down.
    """
    p, beta = canonical_fraction(q)
    u = []
    for m, c in p.items():
        u.append(c)
        u.extend(m)
    return pair(encode_tuple(u), encode_tuple(beta))


def decode_poly(code: int, rank: int) -> LaurentPoly:
    cu, cv = unpair(code)
    # each term starts with a nonzero coefficient
    u, beta = decode_tuple(cu, block=rank + 1), decode_tuple(cv, rank + 1)
    if len(beta) != rank:
        raise NotACode(f"{code}: shift vector has length {len(beta)}, expected {rank}")
    if len(u) % (rank + 1):
        raise NotACode(f"{code}: term list length {len(u)} is not a multiple of {rank + 1}")
    terms = {}
    for k in range(0, len(u), rank + 1):
        c, m = u[k], tuple(u[k + 1:k + rank + 1])
        if not c or m in terms or any(e < 0 for e in m):
            raise NotACode(f"{code}: malformed term {c}*{m}")
        terms[m] = c
    q = LaurentPoly(rank, terms).shift(tuple(-b for b in beta))
    if encode_poly(q) != code:
        raise NotACode(f"{code} is not the canonical code of {q}")
    return q


def coordinates(g):
    """``(gamma, codes)`` with one polynomial code per commutator in pair order."""
    return tuple(g.gamma), tuple(encode_poly(g.part.get(i, j)) for i, j in pair_order(g.rank))


def element_from_coordinates(gamma, codes, rank: int):
    from .group import Element

    gamma, codes = tuple(gamma), tuple(codes)
    pairs = pair_order(rank)
    if len(gamma) != rank or len(codes) != len(pairs):
        raise BadCoordinates(f"rank {rank} needs {rank} exponents and {len(pairs)} codes")
    beta = {}
    for (i, j), c in zip(pairs, codes):
        q = decode_poly(c, rank)
        if not support(q) <= set(range(1, i + 1)):
            raise BadCoordinates(f"coefficient {q} of [x{i},x{j}] uses variables beyond a{i}")
        if q:
            beta[(i, j)] = q
    return Element(rank, gamma, CollectedPart._raw(rank, beta))


def encode_element(g) -> int:
    gamma, codes = coordinates(g)
    return encode_tuple(gamma + codes)


def decode_element(code: int, rank: int):
    width = rank + len(pair_order(rank))
    t = decode_tuple(code, width + 1)
    if len(t) != width:
        raise NotACode(f"{code} decodes to {len(t)} coordinates, rank {rank} needs {width}")
    codes = t[rank:]
    if any(c < 0 for c in codes):
        raise NotACode(f"{code} has a negative polynomial code")
    try:
        return element_from_coordinates(t[:rank], codes, rank)
    except BadCoordinates as exc:
        raise NotACode(str(exc)) from exc


def coded_mul(c1: int, c2: int, rank: int) -> int:
    from .group import mul

    return encode_element(mul(decode_element(c1, rank), decode_element(c2, rank)))


def coded_inv(c: int, rank: int) -> int:
    from .group import inv

    return encode_element(inv(decode_element(c, rank)))

