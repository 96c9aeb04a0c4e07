"""Escape rates for cylinder holes in full shifts.

Holes are finite unions of cylinders over an N-letter alphabet. The escape
rate into a fixed hole equals the entropy drop ln N - h(X_K); for a sequence
of cylinders shrinking onto eventually periodic points, the rescaled rates
converge to T/N where T sums the entries of the inverted limit correlation
matrix alpha(N). Everything here is exact rational arithmetic except the
final root isolation for the finite-n Perron values.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .automata import DirectedGraph
from .perturb import sft_multi_gf
from .ratpoly import Poly, RatFunc, largest_real_root, polymatrix_solve
from .words import correlation_poly


class Point:
    """Eventually periodic one-sided sequence pre (per)^inf over digits.

    Stored in canonical form: the period is primitive and the preperiod is
    shortest (trailing preperiod symbols equal to the last period symbol are
    absorbed by rotating the period).
    """

    __slots__ = ("pre", "per")

    def __init__(self, pre, per):
        pre = str(pre)
        per = str(per)
        if not per:
            raise ValueError("period must be nonempty")
        for d in range(1, len(per) + 1):
            if len(per) % d == 0 and per[:d] * (len(per) // d) == per:
                per = per[:d]
                break
        while pre and pre[-1] == per[-1]:
            pre = pre[:-1]
            per = per[-1] + per[:-1]
        self.pre = pre
        self.per = per

    @property
    def is_periodic(self):
        return not self.pre

    @property
    def period(self):
        return len(self.per)

    def prefix(self, n):
        reps = -(-max(0, n - len(self.pre)) // len(self.per)) + 1
        return (self.pre + self.per * reps)[:n]

    def shift(self, m):
        if m <= len(self.pre):
            return Point(self.pre[m:], self.per)
        t = (m - len(self.pre)) % len(self.per)
        return Point("", self.per[t:] + self.per[:t])

    def __eq__(self, other):
        return isinstance(other, Point) and (self.pre, self.per) == (other.pre, other.per)

    def __hash__(self):
        return hash((self.pre, self.per))

    def __repr__(self):
        return f"Point({self.pre!r}, {self.per!r})"


def point_relation(x: Point, y: Point):
    """Least m >= 1 with S^m x = y, or None. Any such m occurs within one
    preperiod plus one full period of x."""
    for m in range(1, len(x.pre) + len(x.per) + 1):
        if x.shift(m) == y:
            return m
    return None


def alpha_entry(xi: Point, xj: Point, z) -> Fraction:
    """alpha_{i,j}(z) = lim z^-n (w_{i,n}, w_{j,n})_z for prefixes of the two
    points: (1/z) * sum of z^-m over all m >= 0 with S^m x_i = x_j.

    The sum is geometric when x_j is periodic and a single term otherwise.
    """
    z = Fraction(z)
    if z <= 1:
        raise ValueError("the limit entries require z > 1")
    m0 = 0 if xi == xj else point_relation(xi, xj)
    if m0 is None:
        return Fraction(0)
    base = Fraction(1, 1) / z ** (m0 + 1)
    if xj.is_periodic:
        return base / (1 - Fraction(1) / z ** xj.period)
    return base


def alpha_matrix(points, z):
    return [[alpha_entry(xi, xj, z) for xj in points] for xi in points]


def _frac_inverse(M):
    k = len(M)
    A = [list(row) + [Fraction(int(i == j)) for j in range(k)]
         for i, row in enumerate(M)]
    for col in range(k):
        piv = next((r for r in range(col, k) if A[r][col] != 0), None)
        if piv is None:
            return None
        A[col], A[piv] = A[piv], A[col]
        pv = A[col][col]
        A[col] = [v / pv for v in A[col]]
        for r in range(k):
            if r != col and A[r][col] != 0:
                f = A[r][col]
                A[r] = [a - f * b for a, b in zip(A[r], A[col])]
    return [row[k:] for row in A]


def _validate_points(N, points):
    pts = list(points)
    if not pts:
        raise ValueError("need at least one point")
    if len(set(pts)) != len(pts):
        raise ValueError("points must be pairwise distinct")
    for p in pts:
        for ch in p.pre + p.per:
            if not ch.isdigit() or int(ch) >= N:
                raise ValueError(f"symbol {ch!r} outside alphabet of size {N}")
    return pts


def local_rate(N, points):
    """Exact local escape data for holes shrinking onto the given points.

    Returns alpha(N), T (entry sum of its inverse), lambda = T/N, and the
    per-cylinder rate rho = T/(kN), all as Fractions. Invertibility of
    alpha(N) is guaranteed (diagonal dominance) only for k < N; beyond that
    the numeric outcome is reported without a convergence claim.
    """
    N = int(N)
    pts = _validate_points(N, points)
    k = len(pts)
    alpha = alpha_matrix(pts, N)
    dominant = all(
        alpha[i][i] > sum(alpha[i][j] for j in range(k) if j != i)
        for i in range(k))
    inv = _frac_inverse([row[:] for row in alpha])
    out = {"N": N, "k": k, "alpha": alpha,
           "alpha_invertible": inv is not None,
           "diagonally_dominant": dominant,
           "dominance_guaranteed": k < N,
           "T": None, "lambda": None, "rho": None}
    if inv is not None:
        T = sum(sum(row) for row in inv)
        out["T"] = T
        out["lambda"] = T / N
        out["rho"] = T / (k * N)
    return out


def fullshift_resolvent(N, words) -> RatFunc:
    """z - N + s(z) for a reduced set of equal-length words in the N-full
    shift, where s(z) sums the entries of the inverse correlation matrix.
    The largest real zero in (1, N) is the perturbed Perron value."""
    k = len(words)
    M = [[correlation_poly(words[j], words[i]) for j in range(k)]
         for i in range(k)]
    ones = [Poly.one()] * k
    x, _ = polymatrix_solve(M, ones)
    s = x[0]
    for i in range(1, k):
        s = s + x[i]
    return RatFunc(Poly([Fraction(-N), Fraction(1)])) + s


def lambda_sequence(N, points, n_lo=2, n_hi=14):
    """Finite-n Perron values for the cylinder holes [x_i]_n and their
    rescaled entropy gaps (ln N - ln lambda_n) * N^n, which converge to the
    exact local rate lambda = T/N."""
    N = int(N)
    pts = _validate_points(N, points)
    exact = local_rate(N, pts)
    rows = []
    for n in range(n_lo, n_hi + 1):
        words = [p.prefix(n) for p in pts]
        if len(set(words)) != len(words):
            rows.append({"n": n, "lambda_n": None, "scaled": None,
                         "note": "cylinders not yet disjoint"})
            continue
        try:
            r = fullshift_resolvent(N, words)
        except ZeroDivisionError:
            rows.append({"n": n, "lambda_n": None, "scaled": None,
                         "note": "singular correlation matrix"})
            continue
        lam_n = largest_real_root(r.num, 1, N + 1e-9, 1e-12)
        if lam_n is None:
            lam_n = 1.0
        gap = math.log(N) - math.log(lam_n)
        rows.append({"n": n, "lambda_n": lam_n, "scaled": gap * N ** n})
    return {"N": N, "k": len(pts),
            "exact_lambda": exact["lambda"], "exact_T": exact["T"],
            "rows": rows}


def escape_rate(N, K, tol=1e-9, n_check=12) -> float:
    """rho(K) = ln N - h(X_K) for a hole given by the cylinders of the words
    in K. Empty K gives 0; a hole swallowing everything gives +inf."""
    N = int(N)
    words = [str(w) for w in K]
    for w in words:
        if len(w) == 0:
            raise ValueError("hole words must be nonempty")
        for ch in w:
            if not ch.isdigit() or int(ch) >= N:
                raise ValueError(f"symbol {ch!r} outside alphabet of size {N}")
    if not words:
        return 0.0
    g = DirectedGraph([[N]])
    edge_words = [[(0, 0, int(ch)) for ch in w] for w in words]
    res = sft_multi_gf(g, edge_words, tol=tol, n_check=n_check)
    if res.lam == 0:
        return float("inf")
    return math.log(N) - res.entropy
