"""Dense univariate polynomials with exact coefficients.

A polynomial is a tuple of coefficients in ascending degree, ``(c0, c1, ...)``,
holding Python ints or :class:`fractions.Fraction`. Trailing zeros are trimmed,
so the zero polynomial is ``()``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Sequence

Poly = tuple


def trim(p: Sequence) -> Poly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def degree(p: Sequence) -> int:
    """Degree of ``p``; -1 for the zero polynomial."""
    return len(trim(p)) - 1


def add(p: Sequence, q: Sequence) -> Poly:
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] += c
    return trim(out)


def scale(p: Sequence, c) -> Poly:
    return trim(c * x for x in p)


def sub(p: Sequence, q: Sequence) -> Poly:
    return add(p, scale(q, -1))


def mul(p: Sequence, q: Sequence) -> Poly:
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return trim(out)


def power(p: Sequence, e: int) -> Poly:
    out: Poly = (1,)
    base = trim(p)
    while e:
        if e & 1:
            out = mul(out, base)
        base = mul(base, base)
        e >>= 1
    return out


def shift(p: Sequence, k: int) -> Poly:
    """Multiply by ``x**k``."""
    p = trim(p)
    return (0,) * k + p if p else ()


def evaluate(p: Sequence, x):
    """Horner evaluation; exact when ``x`` is an int or Fraction."""
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def derivative(p: Sequence) -> Poly:
    return trim(i * c for i, c in enumerate(p) if i)


def order_at_zero(p: Sequence) -> int | None:
    """Multiplicity of the root at 0; None for the zero polynomial."""
    for i, c in enumerate(p):
        if c != 0:
            return i
    return None


def divmod_poly(p: Sequence, q: Sequence) -> tuple[Poly, Poly]:
    """Euclidean division over the rationals."""
    q = trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = [Fraction(c) for c in trim(p)]
    dq = len(q) - 1
    lead = Fraction(q[-1])
    if len(r) - 1 < dq:
        return (), trim(r)
    quo = [Fraction(0)] * (len(r) - dq)
    for i in range(len(r) - 1, dq - 1, -1):
        c = r[i] / lead
        quo[i - dq] = c
        if c:
            for j, b in enumerate(q):
                r[i - dq + j] -= c * b
    return trim(quo), trim(r[:dq])


def content(p: Sequence) -> int:
    """gcd of the integer coefficients (0 for the zero polynomial)."""
    return reduce(gcd, (int(c) for c in p), 0)


def primitive(p: Sequence) -> Poly:
    """Scale a rational polynomial to coprime integer coefficients.

    The sign is preserved.
    """
    p = trim(p)
    if not p:
        return ()
    fr = [Fraction(c) for c in p]
    den = reduce(lambda a, b: a * b // gcd(a, b), (c.denominator for c in fr), 1)
    ints = [int(c * den) for c in fr]
    g = content(ints)
    return tuple(c // g for c in ints)


def gcd_poly(p: Sequence, q: Sequence) -> Poly:
    """Greatest common divisor over Q, returned primitive with positive lead."""
    a, b = trim(p), trim(q)
    while b:
        a, b = b, divmod_poly(a, b)[1]
    if not a:
        return ()
    a = primitive(a)
    return a if a[-1] > 0 else scale(a, -1)


def exact_div(p: Sequence, q: Sequence) -> Poly:
    """``p / q`` when ``q`` divides ``p``; raises ArithmeticError otherwise."""
    quo, rem = divmod_poly(p, q)
    if rem:
        raise ArithmeticError("polynomial division is not exact")
    return quo


def squarefree(p: Sequence) -> Poly:
    p = primitive(p)
    g = gcd_poly(p, derivative(p))
    if len(g) <= 1:
        return p
    return primitive(exact_div(p, g))


def sturm_sequence(p: Sequence) -> list[Poly]:
    seq = [primitive(p)]
    if len(seq[0]) <= 1:
        return seq
    seq.append(primitive(derivative(seq[0])))
    while True:
        r = divmod_poly(seq[-2], seq[-1])[1]
        if not r:
            return seq
        # primitive() keeps the sign, so negate to follow Sturm's recurrence
        seq.append(scale(primitive(r), -1))


def sign(x) -> int:
    return (x > 0) - (x < 0)


def sign_variations(seq: Sequence[Sequence], x) -> int:
    signs = [s for s in (sign(evaluate(p, x)) for p in seq) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(seq: Sequence[Sequence], lo, hi) -> int:
    """Distinct real roots in ``(lo, hi]`` of the square-free head of ``seq``.

    ``lo`` must not be a root.
    """
    return sign_variations(seq, lo) - sign_variations(seq, hi)


def smallest_root(p: Sequence, lo, hi, tol) -> tuple[Fraction, Fraction] | None:
    """Bracket the smallest real root of ``p`` in ``(lo, hi]`` to width ``tol``.

    Returns None if there is no root there. ``lo`` must not be a root.
    """
    seq = sturm_sequence(squarefree(p))
    lo, hi, tol = Fraction(lo), Fraction(hi), Fraction(tol)
    if count_roots(seq, lo, hi) == 0:
        return None
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if count_roots(seq, lo, mid) > 0:
            hi = mid
        else:
            lo = mid
    return lo, hi


def to_str(p: Sequence, var: str = "z") -> str:
    terms = []
    for i, c in enumerate(p):
        if c == 0:
            continue
        if i == 0:
            terms.append(f"{c}")
        elif i == 1:
            terms.append(f"{c}{var}")
        else:
            terms.append(f"{c}{var}^{i}")
    return " + ".join(terms) if terms else "0"
