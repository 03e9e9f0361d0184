"""Kauffman-bracket oracles: Jones polynomial, determinant, Euler reference.

This path deliberately shares only the parser and the circle counter with
the homology pipeline, so it can cross-validate it.  The bracket is the
state sum over all 2**n smoothings,

    <D> = sum_m A**(n - 2|m|) (-A**2 - A**-2)**(circles(m) - 1),

normalized by (-A)**(-3w) with w the writhe.  Exponents of the normalized
polynomial are always even, so exact evaluation at the determinant point
only needs Gaussian integers.
"""

from __future__ import annotations

from math import isqrt

import numpy as np

from ._kernels import circle_counts_all
from .laurent import LaurentPoly
from .linalg import is_perfect_square
from .pdcodes import Diagram


def _bracket(d: Diagram) -> LaurentPoly:
    n = d.n
    if n == 0:
        counts = [0]
    else:
        quads = np.array([[a - 1 for a in q] for q in d.crossings], dtype=np.int64)
        counts = circle_counts_all(quads, d.arc_count)
    delta = LaurentPoly({2: -1, -2: -1}, "A")
    acc: dict[tuple[int, int], int] = {}
    for m in range(1 << n):
        k = int(counts[m]) + d.free_loops
        exp = n - 2 * int(m).bit_count()
        acc[(k, exp)] = acc.get((k, exp), 0) + 1
    # regroup: polynomial = sum over (k, exp) of count * A**exp * delta**(k-1)
    out = LaurentPoly.zero("A")
    powers: dict[int, LaurentPoly] = {0: LaurentPoly.one("A")}

    def delta_pow(e: int) -> LaurentPoly:
        if e not in powers:
            powers[e] = delta_pow(e - 1) * delta
        return powers[e]

    for (k, exp), cnt in acc.items():
        out = out + delta_pow(k - 1).shift(exp).scale(cnt)
    return out


def kauffman_bracket(d: Diagram) -> LaurentPoly:
    """Writhe-normalized bracket (-A)**(-3w) <D>, a Laurent polynomial in A."""
    w = d.n_plus - d.n_minus
    sign = -1 if (3 * w) % 2 else 1
    return _bracket(d).shift(-3 * w).scale(sign)


def jones_polynomial(d: Diagram) -> LaurentPoly:
    """Jones polynomial in x = t**(1/2) (even exponents for knots)."""
    f = kauffman_bracket(d)
    # x = A**(-2); normalized bracket exponents are even
    coeffs: dict[int, int] = {}
    for e, c in f.coeffs.items():
        if e % 2:
            raise AssertionError("normalized bracket has an odd exponent")
        coeffs[-e // 2] = coeffs.get(-e // 2, 0) + c
    return LaurentPoly(coeffs, "x")


def determinant(d: Diagram) -> int:
    """|H_1| of the double branched cover: |Jones at t = -1| (0 if infinite)."""
    f = kauffman_bracket(d)
    # evaluate at A = primitive 8th root: A**2 = i
    re, im = 0, 0
    for e, c in f.coeffs.items():
        s = (e // 2) % 4
        if s == 0:
            re += c
        elif s == 1:
            im += c
        elif s == 2:
            re -= c
        else:
            im -= c
    norm = re * re + im * im
    if not is_perfect_square(norm):
        raise AssertionError(f"determinant norm {norm} is not a perfect square")
    return isqrt(norm)


def euler_reference(d: Diagram) -> LaurentPoly:
    """The graded Euler characteristic the diagram complex must reproduce.

    Derived from the bracket alone: (-1)**n_- q**(2n_- - n_+) times the
    bracket with A**2 replaced by -q (after clearing A**n).  Equals the Jones
    polynomial of the mirror diagram evaluated at t = q**2.
    """
    br = _bracket(d).shift(-d.n)  # now all exponents even
    poly = br.substitute_square(-1, "q")  # A**(2s) -> (-q)**s
    poly = poly.shift(2 * d.n_minus - d.n_plus)
    if d.n_minus % 2:
        poly = poly.scale(-1)
    return poly
