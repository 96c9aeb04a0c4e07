"""Finite words and correlation sets.

A word is any nonempty sequence with element equality: strings of symbols
for label words, tuples of edge identifiers for edge words. Correlation sets
record the self-overlap structure that every closed form downstream is built
from: l is in the correlation of (u, w) when the length-(l+1) suffix of u
equals the length-(l+1) prefix of w.
"""

from __future__ import annotations

from .ratpoly import Poly


def correlate(u, w):
    """Correlation set of equal-length words u, w as a frozenset of ints.

    Cross-correlations are only defined for |u| = |w|; unequal lengths raise.
    """
    if len(u) != len(w):
        raise ValueError("correlate requires equal-length words")
    n = len(u)
    if n == 0:
        raise ValueError("words must be nonempty")
    return frozenset(l for l in range(n) if u[n - 1 - l:] == w[:l + 1])


def correlation_poly(u, w) -> Poly:
    """(u,w)_z = sum of z^l over the correlation set."""
    return Poly.from_exponents(correlate(u, w))


def is_prime(w) -> bool:
    """True when the only self-overlap of w is the trivial full one."""
    return correlate(w, w) == frozenset({len(w) - 1})


def reverse(w):
    """Symbol order reversed; c_w = c_reverse(w) (a tested property)."""
    return w[::-1]
