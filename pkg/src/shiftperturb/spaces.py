"""Gap sets S and the shift spaces they define.

An S-gap shift over {0,1} consists of the biinfinite sequences in which the
length of every maximal finite block of 0s between consecutive 1s lies in S.
Gap sets are either finite or have eventually periodic characteristic
sequence; both admit a rational gap series T_S(z) = sum_{s in S} z^-(s+1)
and a finite right-resolving presentation.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .automata import LabeledGraph, lang_dfa
from .ratpoly import Poly, RatFunc, largest_real_root


class GapSet:
    """S subset of {0, 1, 2, ...}, finite or eventually periodic.

    Finite sets store the sorted member tuple. Infinite sets store the
    characteristic sequence as (pre, per): chi_S(i) = pre[i] for i < len(pre)
    and per[(i - len(pre)) % len(per)] afterwards.
    """

    __slots__ = ("members", "pre", "per")

    def __init__(self, members=None, pre=None, per=None):
        if members is not None:
            ms = sorted(set(int(s) for s in members))
            if ms and ms[0] < 0:
                raise ValueError("gap sets contain nonnegative integers")
            self.members = tuple(ms)
            self.pre = None
            self.per = None
            return
        pre = tuple(int(b) for b in (pre or ()))
        per = tuple(int(b) for b in per)
        if not per or any(b not in (0, 1) for b in pre + per):
            raise ValueError("characteristic bits must be 0/1 with nonempty period")
        if not any(per):
            # a silent period is just a finite set
            self.members = tuple(i for i, b in enumerate(pre) if b)
            self.pre = None
            self.per = None
            return
        self.members = None
        self.pre = pre
        self.per = per

    # common gap sets
    @staticmethod
    def naturals():
        return GapSet(per=(1,))

    @staticmethod
    def positives():
        return GapSet(pre=(0,), per=(1,))

    @staticmethod
    def multiples(d):
        if d < 1:
            raise ValueError("d must be >= 1")
        return GapSet(per=(1,) + (0,) * (d - 1))

    @property
    def is_infinite(self):
        return self.members is None

    def __contains__(self, n):
        n = int(n)
        if n < 0:
            return False
        if self.members is not None:
            return n in self.members
        if n < len(self.pre):
            return self.pre[n] == 1
        return self.per[(n - len(self.pre)) % len(self.per)] == 1

    def is_empty(self):
        return self.members == ()

    def members_upto(self, n):
        return [s for s in range(n + 1) if s in self]

    def min_at_least(self, k):
        """Smallest member >= k, or None."""
        if self.members is not None:
            for s in self.members:
                if s >= k:
                    return s
            return None
        horizon = max(k, len(self.pre)) + len(self.per)
        for s in range(k, horizon + 1):
            if s in self:
                return s
        return None

    def shifted(self, m):
        """S_m = {s - m : s in S, s >= m}."""
        m = int(m)
        if m < 0:
            raise ValueError("shift must be nonnegative")
        if self.members is not None:
            return GapSet(members=[s - m for s in self.members if s >= m])
        if m <= len(self.pre):
            return GapSet(pre=self.pre[m:], per=self.per)
        q = (m - len(self.pre)) % len(self.per)
        return GapSet(per=self.per[q:] + self.per[:q])

    def truncated_below(self, n):
        """S_0 for a forbidden block of n zeros: members strictly below n."""
        return GapSet(members=[s for s in self.members_upto(n - 1)])

    def gap_series(self) -> RatFunc:
        """T_S(z) = sum_{s in S} z^-(s+1) as a rational function."""
        if self.members is not None:
            if not self.members:
                return RatFunc(Poly.zero())
            top = self.members[-1]
            num = Poly.from_exponents(top - s for s in self.members)
            return RatFunc(num, Poly.monomial(top + 1))
        P, Q = len(self.pre), len(self.per)
        num_pre = Poly([Fraction(0)])
        for i, b in enumerate(self.pre):
            if b:
                num_pre = num_pre + Poly.monomial(P - 1 - i)
        num_per = Poly([Fraction(0)])
        for j, b in enumerate(self.per):
            if b:
                num_per = num_per + Poly.monomial(Q - 1 - j)
        zP = Poly.monomial(P)
        zQm1 = Poly.monomial(Q) - Poly.one()
        # T = num_pre / z^P + num_per / (z^P (z^Q - 1))
        return RatFunc(num_pre, zP) + RatFunc(num_per, zP * zQm1)

    def presentation(self) -> LabeledGraph:
        """Right-resolving labeled graph presenting X_S.

        States track the number of 0s read since the last 1 (capped into the
        periodic part for infinite S); a 1-edge leaves state j exactly when
        j is in S.
        """
        if self.members is not None:
            if not self.members:
                raise ValueError("empty gap set presents an empty shift")
            top = self.members[-1]
            edges = [(i, i + 1, "0") for i in range(top)]
            edges += [(s, 0, "1") for s in self.members]
            return LabeledGraph(top + 1, edges)
        P, Q = len(self.pre), len(self.per)
        n = P + Q
        edges = [(i, (i + 1) if i + 1 < n else P, "0") for i in range(n)]
        edges += [(j, 0, "1") for j in range(n) if j in self]
        return LabeledGraph(n, edges)

    def contains_word(self, w) -> bool:
        """Whether the binary word w occurs in some point of X_S."""
        _validate_binary(w)
        if self.is_empty():
            return False
        return lang_dfa(self.presentation(), []).run(w) is not None

    def __repr__(self):
        if self.members is not None:
            return f"GapSet(members={list(self.members)})"
        return f"GapSet(pre={list(self.pre)}, per={list(self.per)})"


def _validate_binary(w):
    if len(w) == 0 or any(ch not in ("0", "1", 0, 1) for ch in w):
        raise ValueError("expected a nonempty binary word")


def sgap_entropy_base(S: GapSet, tol=1e-12) -> float:
    """Perron value lambda_S of the S-gap shift: the unique root of
    1 - T_S(z) in (1, 2], or 1 when the shift has zero entropy."""
    if S.is_empty():
        raise ValueError("empty gap set presents an empty shift")
    return _entropy_base_cached(S.members, S.pre, S.per, tol)


@lru_cache(maxsize=None)
def _entropy_base_cached(members, pre, per, tol):
    S = GapSet(members) if members is not None else GapSet(pre=pre, per=per)
    one_minus = RatFunc(Poly.one()) - S.gap_series()
    root = largest_real_root(one_minus.num, 1, 2, tol)
    return 1.0 if root is None else root


def normalize_word(S: GapSet, w):
    """Canonical occurrence form (wtilde, m) of a binary word in X_S.

    Each boundary run of 0s is padded out to the least element of S at least
    as long, so that wtilde begins and ends flush with a full gap; m is the
    padded length of the run that governs the shifted gap series (leading if
    w starts with 0, else trailing if it ends with 0, else 0).

    Raises if w is all zeros (no surrounding 1s to anchor a gap) or does not
    occur in X_S.
    """
    _validate_binary(w)
    w = "".join(str(int(ch)) for ch in w)
    if "1" not in w:
        raise ValueError("all-zero words have no canonical form; handle 0^n separately")
    a = len(w) - len(w.lstrip("0"))
    b = len(w) - len(w.rstrip("0"))
    core = w.strip("0")
    for run in _internal_runs(core):
        if run not in S:
            raise ValueError(f"word does not occur: internal gap {run} not in S")
    a2 = 0 if a == 0 else S.min_at_least(a)
    b2 = 0 if b == 0 else S.min_at_least(b)
    if a2 is None or b2 is None:
        raise ValueError("word does not occur: boundary gap exceeds every member of S")
    wtilde = "0" * a2 + core + "0" * b2
    m = a2 if a > 0 else (b2 if b > 0 else 0)
    return wtilde, m


def _internal_runs(core):
    """Lengths of maximal 0-runs strictly inside a word bracketed by 1s."""
    runs = []
    cnt = 0
    for ch in core:
        if ch == "0":
            cnt += 1
        else:
            if cnt:
                runs.append(cnt)
            cnt = 0
    return runs
