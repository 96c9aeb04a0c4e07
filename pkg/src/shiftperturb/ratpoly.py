"""Exact univariate polynomial and rational function arithmetic over Q.

Coefficients are fractions.Fraction, stored ascending by degree. Floating
point only ever enters at the final bisection refinement of isolated real
roots; everything upstream (Sturm chains, series coefficients, matrix
solves) is exact.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd as _intgcd


def _frac(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x).limit_denominator(10**15)
    raise TypeError(f"cannot coerce {type(x).__name__} to Fraction")


class Poly:
    """Dense polynomial with exact rational coefficients, ascending order."""

    __slots__ = ("c",)

    def __init__(self, coeffs=()):
        c = [_frac(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.c = c

    @staticmethod
    def zero():
        return Poly()

    @staticmethod
    def one():
        return Poly([1])

    @staticmethod
    def x():
        return Poly([0, 1])

    @staticmethod
    def monomial(k, coeff=1):
        if k < 0:
            raise ValueError("monomial exponent must be >= 0")
        return Poly([0] * k + [coeff])

    @staticmethod
    def from_exponents(exps):
        """Sum of z^e over the given exponent collection (0/1 coefficients)."""
        exps = list(exps)
        if not exps:
            return Poly()
        c = [0] * (max(exps) + 1)
        for e in exps:
            c[e] += 1
        return Poly(c)

    @property
    def degree(self):
        return len(self.c) - 1 if self.c else -1

    def is_zero(self):
        return not self.c

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.c == other.c

    def __hash__(self):
        return hash(tuple(self.c))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly([other])
        if not isinstance(other, Poly):
            return NotImplemented
        n = max(len(self.c), len(other.c))
        out = [Fraction(0)] * n
        for i, a in enumerate(self.c):
            out[i] += a
        for i, b in enumerate(other.c):
            out[i] += b
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly([-a for a in self.c])

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly([other])
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly([a * other for a in self.c])
        if not isinstance(other, Poly):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return Poly()
        out = [Fraction(0)] * (len(self.c) + len(other.c) - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(other.c):
                    if b:
                        out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def divmod(self, other):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.c)
        q = [Fraction(0)] * max(0, len(r) - len(other.c) + 1)
        dlead = other.c[-1]
        dn = len(other.c)
        while len(r) >= dn:
            if r[-1] == 0:
                r.pop()
                continue
            k = len(r) - dn
            f = r[-1] / dlead
            q[k] = f
            for i, b in enumerate(other.c):
                r[k + i] -= f * b
            # leading term is exactly cancelled
            r.pop()
        return Poly(q), Poly(r)

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def eval(self, x):
        """Horner evaluation; exact when x is Fraction/int."""
        acc = 0 if not isinstance(x, float) else 0.0
        for a in reversed(self.c):
            acc = acc * x + a
        return acc

    def eval_float(self, x):
        acc = 0.0
        for a in reversed(self.c):
            acc = acc * x + float(a)
        return acc

    def derivative(self):
        return Poly([i * a for i, a in enumerate(self.c)][1:])

    def monic(self):
        if self.is_zero():
            return self
        lead = self.c[-1]
        return Poly([a / lead for a in self.c])

    def primitive(self):
        """Integer-primitive scalar multiple (positive leading coefficient)."""
        if self.is_zero():
            return self
        den_lcm = 1
        for a in self.c:
            den_lcm = den_lcm * a.denominator // _intgcd(den_lcm, a.denominator)
        ints = [int(a * den_lcm) for a in self.c]
        g = 0
        for v in ints:
            g = _intgcd(g, abs(v))
        if g == 0:
            g = 1
        ints = [v // g for v in ints]
        if ints[-1] < 0:
            ints = [-v for v in ints]
        return Poly(ints)

    def int_coeffs(self):
        """Coefficients of the primitive form, as plain ints, ascending."""
        return [int(a) for a in self.primitive().c]

    def __repr__(self):
        if self.is_zero():
            return "Poly(0)"
        terms = []
        for i in range(len(self.c) - 1, -1, -1):
            a = self.c[i]
            if a == 0:
                continue
            if i == 0:
                terms.append(f"{a}")
            elif i == 1:
                terms.append("z" if a == 1 else f"{a}*z")
            else:
                terms.append(f"z^{i}" if a == 1 else f"{a}*z^{i}")
        return "Poly(" + " + ".join(terms) + ")"


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd by the Euclidean algorithm."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


class RatFunc:
    """Reduced rational function num/den with Poly parts, den monic-normalized
    up to an integer-primitive rescaling."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if isinstance(num, (int, Fraction)):
            num = Poly([num])
        if den is None:
            den = Poly.one()
        elif isinstance(den, (int, Fraction)):
            den = Poly([den])
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            self.num, self.den = Poly(), Poly.one()
            return
        g = poly_gcd(num, den)
        if g.degree > 0:
            num = num // g
            den = den // g
        # normalize: denominator primitive with positive leading coefficient
        dprim = den.primitive()
        scale = den.c[-1] / dprim.c[-1]
        self.num = num * (1 / scale)
        self.den = dprim

    @staticmethod
    def zero():
        return RatFunc(Poly())

    def is_zero(self):
        return self.num.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatFunc(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return (self.num * other.den) == (other.num * self.den)

    def __add__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            other = RatFunc(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return RatFunc(self.num * other.den + other.num * self.den,
                       self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            other = RatFunc(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            other = RatFunc(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            other = RatFunc(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return RatFunc(other) / self

    def eval(self, x):
        dv = self.den.eval(x)
        if dv == 0:
            raise ZeroDivisionError("evaluation at a pole")
        return self.num.eval(x) / dv

    def __repr__(self):
        return f"RatFunc({self.num!r} / {self.den!r})"


def series_expand(r: RatFunc, K: int):
    """Expand r(z) = sum a_n z^-n; return (coeffs a_0..a_K, principal part).

    The principal part is a dict {j: coeff} for positive powers z^j when the
    numerator degree exceeds the denominator degree.
    """
    if r.is_zero():
        return [Fraction(0)] * (K + 1), {}
    # substitute z = 1/t: r = t^shift * N(t)/D(t) with D(0) != 0
    nrev = list(reversed(r.num.c))
    drev = list(reversed(r.den.c))
    shift = len(drev) - len(nrev)  # deg(den) - deg(num)
    # strip common factors of t (trailing zeros in original = leading here)
    while nrev and nrev[-1] == 0:
        nrev.pop()
    while drev and drev[-1] == 0:
        drev.pop()
    tn = 0
    while nrev and nrev[0] == 0:
        nrev.pop(0)
        tn += 1
    td = 0
    while drev and drev[0] == 0:
        drev.pop(0)
        td += 1
    shift += tn - td
    if not drev or drev[0] == 0:
        raise ValueError("series expansion at infinity does not exist")
    order = K - shift
    coeffs = []
    if order >= 0:
        # power-series division N(t)/D(t) to t^order
        c0 = drev[0]
        out = [Fraction(0)] * (order + 1)
        for n in range(order + 1):
            acc = nrev[n] if n < len(nrev) else Fraction(0)
            for k in range(1, min(n, len(drev) - 1) + 1):
                acc -= drev[k] * out[n - k]
            out[n] = acc / c0
        coeffs = out
    a = [Fraction(0)] * (K + 1)
    principal = {}
    for i, v in enumerate(coeffs):
        e = i + shift
        if v == 0:
            continue
        if e < 0:
            principal[-e] = v
        elif e <= K:
            a[e] = v
    return a, principal


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def sturm_chain(p: Poly):
    chain = [p, p.derivative()]
    while not chain[-1].is_zero() and chain[-1].degree > 0:
        chain.append(-(chain[-2] % chain[-1]))
    if chain[-1].is_zero():
        chain.pop()
    return chain


def _variations(chain, x: Fraction) -> int:
    signs = [s for s in (_sign(q.eval(x)) for q in chain) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _int_rows(chain):
    """Integer-scaled coefficient rows of a Sturm chain (signs preserved)."""
    rows = []
    for qp in chain:
        den = 1
        for c in qp.c:
            den = den * c.denominator // _intgcd(den, c.denominator)
        rows.append([int(c * den) for c in qp.c])
    return rows


def _int_eval_sign(row, p, q):
    """Sign of sum c_i (p/q)^i for integers p, q with q > 0."""
    acc = 0
    f = 1
    for c in reversed(row):
        acc = acc * p + c * f
        f *= q
    return (acc > 0) - (acc < 0)


def _variations_int(rows, p, q):
    signs = [s for s in (_int_eval_sign(r, p, q) for r in rows) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(p: Poly, lo: Fraction, hi: Fraction) -> int:
    """Number of distinct real roots of p in the half-open interval (lo, hi]."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    sf = p // poly_gcd(p, p.derivative()) if p.degree > 0 else p
    chain = sturm_chain(sf)
    return _variations(chain, lo) - _variations(chain, hi)


def largest_real_root(p: Poly, lo, hi, tol=1e-12):
    """Largest real root of p in (lo, hi] to absolute accuracy tol, or None.

    Sturm-based isolation on exact rationals, then bisection. Roots exactly at
    lo are excluded by deflation; a root exactly at hi is returned as hi.
    """
    if p.is_zero():
        raise ValueError("zero polynomial has no well-defined roots")
    if p.degree <= 0:
        return None
    lo = _frac(lo)
    hi = _frac(hi)
    if not lo < hi:
        raise ValueError("need lo < hi")
    # square-free part
    g = poly_gcd(p, p.derivative())
    sf = p // g if g.degree > 0 else p
    # peel roots sitting exactly on the endpoints
    zmin = Poly([-lo, 1])
    while sf.eval(lo) == 0:
        sf = sf // zmin
    if sf.degree <= 0:
        return None
    if sf.eval(hi) == 0:
        return float(hi)
    chain = sturm_chain(sf)
    rows = _int_rows(chain)
    # shared denominator D doubles each step; numerators stay integers
    D = lo.denominator * hi.denominator // _intgcd(lo.denominator,
                                                   hi.denominator)
    na = lo.numerator * (D // lo.denominator)
    nb = hi.numerator * (D // hi.denominator)
    v_lo = _variations_int(rows, na, D)
    v_hi = _variations_int(rows, nb, D)
    if v_lo - v_hi <= 0:
        return None
    tolF = _frac(tol)
    # keep the rightmost root: shrink toward whichever half still has one
    while (nb - na) * tolF.denominator > tolF.numerator * D:
        na, nb, D = 2 * na, 2 * nb, 2 * D
        nm = (na + nb) // 2
        if _variations_int(rows, nm, D) - v_hi > 0:
            na = nm
        elif _int_eval_sign(rows[0], nm, D) == 0:
            # mid is a root and no roots lie strictly to its right
            return float(Fraction(nm, D))
        else:
            nb = nm
            v_hi = _variations_int(rows, nb, D)
    return float(Fraction(na + nb, 2 * D))


def largest_real_pole(r: RatFunc, lo, hi, tol=1e-12):
    """Largest real root of the reduced denominator in (lo, hi], or None.

    Construction of RatFunc already cancelled the gcd, so removable
    singularities never show up here.
    """
    if r.den.degree <= 0:
        return None
    return largest_real_root(r.den, lo, hi, tol)


def polymatrix_solve(P, rhs):
    """Solve P x = rhs over the rational-function field; return (x, det).

    P is a list of rows of Poly/RatFunc entries. Plain Gaussian elimination
    with exact arithmetic; matrices here are tiny (at most N + k rows).
    Raises ZeroDivisionError on an identically singular matrix.
    """
    n = len(P)
    M = [[e if isinstance(e, RatFunc) else RatFunc(e) for e in row] for row in P]
    b = [e if isinstance(e, RatFunc) else RatFunc(e) for e in rhs]
    det = RatFunc(1)
    for col in range(n):
        piv = None
        for r in range(col, n):
            if not M[r][col].is_zero():
                piv = r
                break
        if piv is None:
            raise ZeroDivisionError("singular polynomial matrix")
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
            b[col], b[piv] = b[piv], b[col]
            det = -det
        pval = M[col][col]
        det = det * pval
        for r in range(col + 1, n):
            if M[r][col].is_zero():
                continue
            f = M[r][col] / pval
            for c in range(col, n):
                M[r][c] = M[r][c] - f * M[col][c]
            b[r] = b[r] - f * b[col]
    x = [RatFunc(0)] * n
    for r in range(n - 1, -1, -1):
        acc = b[r]
        for c in range(r + 1, n):
            acc = acc - M[r][c] * x[c]
        x[r] = acc / M[r][r]
    return x, det


def polymatrix_solve_first_column(P):
    """First column of P^-1, plus det(P)."""
    n = len(P)
    e1 = [RatFunc(1)] + [RatFunc(0)] * (n - 1)
    return polymatrix_solve(P, e1)


def char_poly(A) -> Poly:
    """Characteristic polynomial det(zI - A) by the Samuelson-Berkowitz
    algorithm: division-free, so integer matrices stay in integers.
    Results are memoized; adjacency matrices recur across engine passes."""
    return Poly(_char_poly_cached(tuple(tuple(r) for r in A)).c)


@lru_cache(maxsize=None)
def _char_poly_cached(A):
    n = len(A)
    if n == 0:
        return Poly([Fraction(1)])
    C = [1, -A[0][0]]  # descending coefficients, monic
    for k in range(1, n):
        a = A[k][k]
        R = [A[k][j] for j in range(k)]
        col = [1, -a]
        v = [A[i][k] for i in range(k)]
        for _ in range(k):
            col.append(-sum(R[i] * v[i] for i in range(k)))
            v = [sum(A[i][j] * v[j] for j in range(k)) for i in range(k)]
        newC = [0] * (k + 2)
        for i in range(k + 2):
            s = 0
            for j in range(min(i, k) + 1):
                if i - j < len(col):
                    s += col[i - j] * C[j]
            newC[i] = s
        C = newC
    return Poly([Fraction(c) for c in reversed(C)])


def cofactor(A_polys, i, j) -> Poly:
    """Cofactor (-1)^(i+j) * minor(i, j) of a Poly matrix."""
    n = len(A_polys)
    sub = [[A_polys[r][c] for c in range(n) if c != j]
           for r in range(n) if r != i]
    d = _poly_det(sub)
    return d if (i + j) % 2 == 0 else -d


def _poly_det(M) -> Poly:
    n = len(M)
    if n == 0:
        return Poly.one()
    if n == 1:
        return M[0][0]
    # cofactor expansion; matrices stay tiny
    acc = Poly()
    for j in range(n):
        if M[0][j].is_zero():
            continue
        sub = [[M[r][c] for c in range(n) if c != j] for r in range(1, n)]
        term = M[0][j] * _poly_det(sub)
        acc = acc + (term if j % 2 == 0 else -term)
    return acc


def zI_minus_A(A):
    """Matrix of Polys for zI - A from an integer adjacency matrix."""
    n = len(A)
    return [[Poly([-A[i][j], 1]) if i == j else Poly([-A[i][j]])
             for j in range(n)] for i in range(n)]
