"""Exact real root counting for univariate rational polynomials.

Polynomials are coefficient lists in ascending degree order.  Root counts
use Sturm sequences on the square-free part, so the answers are exact
integers that cannot flip under rounding.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence

Coeffs = List[Fraction]


def trim(p: Sequence[Fraction]) -> Coeffs:
    out = [Fraction(c) for c in p]
    while out and out[-1] == 0:
        out.pop()
    return out


def degree(p: Sequence[Fraction]) -> int:
    t = trim(p)
    return len(t) - 1 if t else -1


def evaluate(p: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(trim(p)):
        acc = acc * x + c
    return acc


def derivative(p: Sequence[Fraction]) -> Coeffs:
    t = trim(p)
    return [c * i for i, c in enumerate(t)][1:]


def divmod_poly(num: Sequence[Fraction], den: Sequence[Fraction]):
    num = trim(num)
    den = trim(den)
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    quot = [Fraction(0)] * max(len(num) - len(den) + 1, 0)
    rem = list(num)
    dn = len(den) - 1
    lead = den[-1]
    while len(rem) - 1 >= dn and rem:
        shift = len(rem) - 1 - dn
        factor = rem[-1] / lead
        quot[shift] = factor
        for i, c in enumerate(den):
            rem[shift + i] -= factor * c
        rem = trim(rem)
        if not rem:
            break
    return trim(quot), trim(rem)


def poly_gcd(p: Sequence[Fraction], q: Sequence[Fraction]) -> Coeffs:
    a, b = trim(p), trim(q)
    while b:
        _, r = divmod_poly(a, b)
        a, b = b, r
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


def square_free_part(p: Sequence[Fraction]) -> Coeffs:
    t = trim(p)
    if degree(t) <= 0:
        return t
    g = poly_gcd(t, derivative(t))
    if degree(g) <= 0:
        return t
    quot, rem = divmod_poly(t, g)
    assert not rem
    return quot


def sturm_sequence(p: Sequence[Fraction]) -> List[Coeffs]:
    p0 = square_free_part(p)
    if degree(p0) <= 0:
        return [p0] if p0 else []
    chain = [p0, derivative(p0)]
    while degree(chain[-1]) > 0:
        _, rem = divmod_poly(chain[-2], chain[-1])
        if not rem:
            break
        chain.append([-c for c in rem])
    return chain


def _sign_variations(values: Sequence[Fraction]) -> int:
    signs = [1 if v > 0 else -1 for v in values if v != 0]
    return sum(1 for s1, s2 in zip(signs, signs[1:]) if s1 != s2)


def count_real_roots(p: Sequence[Fraction]) -> int:
    """Number of distinct real roots of p over the whole line."""
    chain = sturm_sequence(p)
    if not chain or degree(chain[0]) <= 0:
        return 0
    at_pos = []
    at_neg = []
    for q in chain:
        t = trim(q)
        if not t:
            continue
        lead = t[-1]
        d = len(t) - 1
        at_pos.append(lead)
        at_neg.append(lead if d % 2 == 0 else -lead)
    return _sign_variations(at_neg) - _sign_variations(at_pos)
