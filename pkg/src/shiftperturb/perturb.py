"""Entropy and generating-function engines for forbidden-word perturbations.

Every closed form computed here is checked at runtime against the path-counting
oracle in automata.py: series prefixes must match exactly, and Perron values
must agree with the language-DFA spectral radius. A disagreement raises
OracleMismatchError rather than returning a number.

A recurring subtlety: the closed forms count locally admissible words (words
readable as avoiding walks), which coincide with the language of the perturbed
shift exactly when every such word extends to a biinfinite avoiding walk.
The engines decide that closure property exactly (extension_closed) and fall
back to the oracle spectral radius, with diagnostics, when it fails.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .automata import (DFA, DirectedGraph, LabeledGraph,
                       avoid_product_presentation, count_words, determinize,
                       dfa_to_labeled, edge_shift_graph, essential,
                       essential_digraph, extension_closed, full_shift_graph,
                       is_irreducible, label_preimages, lang_dfa, perron_root,
                       walk_counts)
from .ratpoly import (Poly, RatFunc, char_poly, cofactor, largest_real_pole,
                      largest_real_root, polymatrix_solve, series_expand,
                      zI_minus_A)
from .spaces import GapSet, normalize_word, sgap_entropy_base
from .words import correlation_poly

NEG_INF = float("-inf")


class UnsupportedWordError(ValueError):
    """The word shape falls outside this engine's formula (e.g. 0u0 for the
    one-sided S-gap correlation method)."""


class OracleMismatchError(ArithmeticError):
    """A closed form disagreed with the brute-force counting oracle."""


@dataclass
class PerturbationResult:
    entropy: float
    lam: float                      # Perron value; 0 encodes an empty shift
    characteristic: object          # Poly or RatFunc whose root/pole gives lam
    generating_function: RatFunc    # or None when no closed form applies
    series: list                    # language counts f(0..n_check), oracle-true
    diagnostics: dict = field(default_factory=dict)

    def as_dict(self):
        return {
            "entropy": None if self.lam == 0 else self.entropy,
            "lambda": self.lam,
            "characteristic": _jsonable(self.characteristic),
            "generating_function": _jsonable(self.generating_function),
            "series": list(self.series),
            "diagnostics": _jsonable(self.diagnostics),
        }


def _jsonable(x):
    if isinstance(x, Poly):
        return {"poly": [_jsonable(c) for c in x.c]}
    if isinstance(x, RatFunc):
        return {"num": [_jsonable(c) for c in x.num.c],
                "den": [_jsonable(c) for c in x.den.c]}
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = sorted(x, key=repr) if isinstance(x, (set, frozenset)) else x
        return [_jsonable(v) for v in items]
    if isinstance(x, float) and (math.isinf(x) or math.isnan(x)):
        return None
    return x


def _entropy(lam):
    return NEG_INF if lam == 0 else math.log(lam)


def _lang_perron(ldfa: DFA) -> float:
    if ldfa.n_states == 0:
        return 0.0
    return perron_root(DirectedGraph(ldfa.adjacency()))


def _dfa_gf(ldfa: DFA) -> RatFunc:
    """Exact rational generating function sum f(n) z^-n of a DFA's path
    counts: denominator det(zI - A), numerator recovered from the first
    n+1 counts (the tail cancels because the counts obey the char-poly
    recurrence)."""
    if ldfa.n_states == 0 or ldfa.initial is None:
        return RatFunc(Poly.one())
    A = ldfa.adjacency()
    n = len(A)
    cp = char_poly(A)
    f = ldfa.path_counts(n)
    a = cp.c
    num = [sum(a[i] * f[i - m] for i in range(m, n + 1)) for m in range(n + 1)]
    return RatFunc(Poly(num), cp)


def _normalize_gf(F: RatFunc):
    """Scale by the monomial z^j that makes the z^0 series coefficient 1.

    Returns (normalized gf, j). Raises OracleMismatchError when no monomial
    can do it (leading behaviour not 1 * z^j)."""
    if F.is_zero():
        raise OracleMismatchError("zero generating function cannot be normalized")
    j = F.num.degree - F.den.degree
    if j > 0:
        F = F * RatFunc(Poly.one(), Poly.monomial(j))
    elif j < 0:
        F = F * RatFunc(Poly.monomial(-j))
    lead = F.num.c[-1] / F.den.c[-1]
    if lead != 1:
        raise OracleMismatchError(
            f"generating function has leading coefficient {lead}, not 1")
    return F, j


def _series_ints(F: RatFunc, n_max):
    coeffs, principal = series_expand(F, n_max)
    if principal:
        raise OracleMismatchError(f"generating function has polynomial part {principal}")
    out = []
    for a in coeffs:
        if a.denominator != 1:
            raise OracleMismatchError(f"non-integer series coefficient {a}")
        out.append(int(a))
    return out


def cross_correlation_poly(u, w) -> Poly:
    """(u, w)_z for possibly unequal lengths: sum of z^l over the overlaps
    where the length-(l+1) suffix of u equals the prefix of w.

    Total containments (l + 1 = min length with distinct words) cannot occur
    for reduced word sets; equal words contribute the full l = n - 1 term.
    """
    bound = min(len(u), len(w))
    return Poly.from_exponents(
        l for l in range(bound) if u[len(u) - 1 - l:] == w[:l + 1])


def _as_digraph(A) -> DirectedGraph:
    return A if isinstance(A, DirectedGraph) else DirectedGraph(A)


def _edge_word(g: DirectedGraph, w):
    word = tuple((int(e[0]), int(e[1]), int(e[2])) for e in w)
    if not g.is_walk(word):
        raise ValueError(f"edge word {word} is not a walk in the graph")
    return word


def _check_reduced(K):
    for i, a in enumerate(K):
        for j, b in enumerate(K):
            if i != j and _is_factor(a, b):
                raise ValueError(
                    f"forbidden set is not reduced: word {i} occurs inside word {j}")


def _is_factor(a, b):
    if len(a) > len(b):
        return False
    return any(b[t:t + len(a)] == a for t in range(len(b) - len(a) + 1))


def _select_lambda(diag, *, empty, closed, lam_formula, lam_oracle,
                   lam_ambient, tol):
    """Shared endgame: pick the reported Perron value and enforce the
    dual-route agreement contract."""
    if empty:
        diag["empty"] = True
        return 0.0
    diag["empty"] = False
    diag["lambda_oracle"] = lam_oracle
    if lam_formula is not None:
        diag["lambda_formula"] = lam_formula
    if lam_formula is None:
        lam = lam_oracle
    elif closed:
        lam = lam_formula
        if abs(lam - lam_oracle) > max(tol, 1e-6) * max(1.0, abs(lam)):
            raise OracleMismatchError(
                f"formula Perron {lam} vs oracle Perron {lam_oracle}")
    else:
        lam = lam_oracle
        diag.setdefault("notes", []).append(
            "some admissible words do not extend biinfinitely; "
            "entropy taken from the language automaton")
    if lam - lam_ambient > 1e-8:
        raise OracleMismatchError(
            f"perturbed Perron {lam} exceeds ambient {lam_ambient}")
    return min(lam, lam_ambient)


# ---------------------------------------------------------------------------
# SFT engines


def sft_multi_gf(A, K, tol=1e-9, n_check=12) -> PerturbationResult:
    """Entropy and walk generating function of an edge shift with a reduced
    set K of walks forbidden.

    Solves the (N+k) x (N+k) linear system coupling vertex generating
    functions with one unknown per forbidden word; F(z) is the total count of
    K-free walks. The reported series is always the language count sequence.
    """
    g = _as_digraph(A)
    n_check = max(int(n_check), 6)
    K = [_edge_word(g, w) for w in K]
    if len(set(K)) != len(K):
        raise ValueError("forbidden set contains duplicates")
    _check_reduced(K)
    diag = {"engine": "sft_multi", "ambient_irreducible": is_irreducible(g),
            "notes": []}

    # the subshift lives on the essential core; walks touching peeled
    # vertices never occur, so forbidding them is a no-op
    core, vmap = essential_digraph(g)
    if core.n != g.n:
        diag["notes"].append(
            f"restricted to the essential core ({core.n} of {g.n} vertices)")
    kept, dropped = [], []
    for wd in K:
        if all(vmap[i] is not None and vmap[j] is not None for (i, j, _) in wd):
            kept.append(tuple((vmap[i], vmap[j], c) for (i, j, c) in wd))
        else:
            dropped.append(list(wd))
    if dropped:
        diag["dropped_words"] = dropped
        diag["notes"].append(
            f"{len(dropped)} forbidden walk(s) never occur in the subshift; ignored")
    K, g = kept, core

    lamA = perron_root(g) if g.n else 0.0
    es = edge_shift_graph(g)
    ldfa = lang_dfa(es, K)
    lang_counts = ldfa.path_counts(n_check)
    empty = ldfa.n_states == 0
    closed = extension_closed(es, K) if g.n else True
    diag["ambient_lambda"] = lamA
    diag["extension_closed"] = closed
    diag["oracle_series"] = lang_counts

    N, k = g.n, len(K)
    z = Poly.x()
    size = N + k
    P = [[Poly.zero() for _ in range(size)] for _ in range(size)]
    for i in range(N):
        for ip in range(N):
            P[i][ip] = Poly([Fraction(-g.A[ip][i])]) + (z if ip == i else Poly.zero())
        for v in range(k):
            if K[v][-1][1] == i:
                P[i][N + v] = z
    for v in range(k):
        P[N + v][K[v][0][0]] = Poly.one()
        for u in range(k):
            ov = cross_correlation_poly(K[u], K[v])
            if not ov.is_zero():
                P[N + v][N + u] = -(z * ov)
    rhs = [z] * N + [Poly.zero()] * k

    F_norm = None
    lam_formula = None
    if N == 0:
        diag["notes"].append("no biinfinite walks; the shift is empty")
    else:
        try:
            x, _ = polymatrix_solve(P, rhs)
            F = x[0]
            for i in range(1, N):
                F = F + x[i]
            F = F - RatFunc(Poly([Fraction(N - 1)]))
            F_norm, j = _normalize_gf(F)
            diag["normalization_power"] = j
            formula_series = _series_ints(F_norm, n_check)
            oracle_walks = walk_counts(es, K, n_check)
            diag["walk_series"] = formula_series
            if formula_series != oracle_walks:
                raise OracleMismatchError(
                    f"walk series {formula_series} != oracle {oracle_walks}")
            if not empty:
                lam_formula = largest_real_pole(F_norm, 1, lamA + 1e-9, 1e-12) or 1.0
        except ZeroDivisionError:
            diag["singular_system"] = True
            diag["notes"].append("singular system; falling back to the oracle")

    lam = _select_lambda(diag, empty=empty, closed=closed,
                         lam_formula=lam_formula,
                         lam_oracle=_lang_perron(ldfa),
                         lam_ambient=lamA, tol=tol)
    return PerturbationResult(
        entropy=_entropy(lam), lam=lam,
        characteristic=F_norm.den if F_norm is not None else None,
        generating_function=F_norm, series=lang_counts, diagnostics=diag)


def sft_entropy_single(A, walk, tol=1e-9, n_check=12) -> PerturbationResult:
    """Perron value of an edge shift with one walk w forbidden, from the
    closed characteristic polynomial det(zI-A) c_w(z) + adj_{s(w),r(w)}(zI-A).

    Cross-validated on every call against the k=1 linear-system engine and
    the counting oracle. A reducible ambient graph only produces a warning;
    the formula is still evaluated.
    """
    g = _as_digraph(A)
    n_check = max(int(n_check), 6)
    w = _edge_word(g, walk)
    lamA = perron_root(g)
    c = correlation_poly(w, w)
    i, j = w[0][0], w[-1][1]
    eq = char_poly(g.A) * c + cofactor(zI_minus_A(g.A), i, j)

    multi = sft_multi_gf(g, [w], tol=tol, n_check=n_check)
    diag = {"engine": "sft_single", "ambient_lambda": lamA,
            "ambient_irreducible": is_irreducible(g),
            "extension_closed": multi.diagnostics["extension_closed"],
            "oracle_series": multi.series, "notes": []}
    if not diag["ambient_irreducible"]:
        diag["notes"].append("ambient graph is reducible; formula evaluated anyway")

    empty = multi.lam == 0
    root = None
    if not empty:
        root = largest_real_root(eq, 1, lamA + 1e-9, 1e-12) or 1.0
        diag["characteristic_root_full_range"] = \
            largest_real_root(eq, 0, lamA + 1e-9, 1e-12)
    lam = _select_lambda(diag, empty=empty,
                         closed=multi.diagnostics["extension_closed"],
                         lam_formula=root, lam_oracle=multi.diagnostics.get(
                             "lambda_oracle", 0.0),
                         lam_ambient=lamA, tol=tol)
    if abs(lam - multi.lam) > max(tol, 1e-9) * max(1.0, abs(lam)):
        raise OracleMismatchError(
            f"single-word value {lam} disagrees with linear system {multi.lam}")
    return PerturbationResult(
        entropy=_entropy(lam), lam=lam, characteristic=eq,
        generating_function=multi.generating_function,
        series=multi.series, diagnostics=diag)


# ---------------------------------------------------------------------------
# Sofic lift


def sofic_perturb(g: LabeledGraph, w, tol=1e-9, n_check=12):
    """Forbid the label word w in the sofic shift presented by g.

    Lifts w to its preimage walks on a right-resolving presentation, runs the
    multi-word SFT engine there (the lift is finite-to-one, so entropy is
    preserved), and independently recounts on the label side. Returns
    (PerturbationResult, LabeledGraph presentation of the perturbed shift).
    """
    n_check = max(int(n_check), 6)
    if len(w) == 0:
        raise ValueError("expected a nonempty label word")
    if g.is_right_resolving():
        rr = essential(g)
    else:
        rr = essential(dfa_to_labeled(determinize(g)))
    if rr.n == 0:
        raise ValueError("presentation has no biinfinite walks")

    amb = lang_dfa(rr, [])
    lamX = _lang_perron(amb)
    diag = {"engine": "sofic", "ambient_lambda": lamX, "notes": []}
    if amb.run(w) is None:
        diag["noop"] = True
        diag["notes"].append("word does not occur; perturbation is trivial")
        counts = amb.path_counts(n_check)
        gf, _ = _normalize_gf(_dfa_gf(amb))
        res = PerturbationResult(
            entropy=_entropy(lamX), lam=lamX, characteristic=None,
            generating_function=gf, series=counts, diagnostics=diag)
        return res, rr

    K = label_preimages(rr, w)
    diag["preimage_walks"] = [list(u) for u in K]
    lift = sft_multi_gf(rr.underlying(), K, tol=tol, n_check=n_check)
    diag["lift"] = {k: v for k, v in lift.diagnostics.items()
                    if k not in ("oracle_series", "walk_series")}

    ldfa = lang_dfa(rr, [w])
    counts = ldfa.path_counts(n_check)
    empty = ldfa.n_states == 0
    lam_label = _lang_perron(ldfa)
    lam = _select_lambda(diag, empty=empty, closed=True,
                         lam_formula=lift.lam if lift.lam > 0 else None,
                         lam_oracle=lam_label, lam_ambient=lamX, tol=tol)
    gf = None
    if not empty:
        gf, _ = _normalize_gf(_dfa_gf(ldfa))
        if _series_ints(gf, n_check) != counts:
            raise OracleMismatchError("label generating function mismatch")
    res = PerturbationResult(
        entropy=_entropy(lam), lam=lam, characteristic=lift.characteristic,
        generating_function=gf, series=counts, diagnostics=diag)
    return res, avoid_product_presentation(rr, [w])


# ---------------------------------------------------------------------------
# Gap-shift engines


def _binary_str(w):
    if len(w) == 0:
        raise ValueError("expected a nonempty binary word")
    s = "".join(str(int(ch)) for ch in w)
    if any(ch not in "01" for ch in s):
        raise ValueError("expected a binary word over {0,1}")
    return s


def sgap_perturb_gf(S: GapSet, w, tol=1e-9, n_check=12) -> PerturbationResult:
    """Forbid the binary word w in the S-gap shift.

    For w = 0^n the perturbed shift is the S_0-gap shift over the members of
    S below n. Otherwise w is oriented to end in 1 (reversal preserves gap
    languages and counts), padded to its canonical occurrence form wtilde,
    and f_w = (1 - T_S) c_wtilde + T_{S_m} gives the Perron value. For
    infinite S the closed-form generating function is returned; its series
    counts admissible words avoiding wtilde (cross-checked against the walk
    oracle), while `series` is always the language of the perturbed shift.

    Words with a 1 strictly between two boundary 0-runs (0u0 shape) are not
    covered by the one-sided correlation method: UnsupportedWordError.
    """
    w = _binary_str(w)
    n_check = max(int(n_check), 6)
    if S.is_empty():
        raise ValueError("empty gap set presents an empty shift")
    lamS = sgap_entropy_base(S)
    gS = S.presentation()
    diag = {"engine": "sgap", "ambient_lambda": lamS, "notes": []}

    if "1" not in w:
        return _sgap_zero_block(S, w, lamS, gS, diag, tol, n_check)

    if w[0] == "0" and w[-1] == "0":
        raise UnsupportedWordError(
            "words of shape 0u0 need the d-gap engine or a sofic presentation")
    reversed_word = w[-1] == "0"
    w_eng = w[::-1] if reversed_word else w
    diag["reversed"] = reversed_word

    wtilde, m = normalize_word(S, w_eng)  # ValueError when w cannot occur
    diag["wtilde"] = wtilde
    diag["m"] = m
    c = RatFunc(correlation_poly(wtilde, wtilde))
    one = RatFunc(Poly.one())
    T_S = S.gap_series()
    T_Sm = S.shifted(m).gap_series()
    f_w = (one - T_S) * c + T_Sm

    ldfa = lang_dfa(gS, [w])
    counts = ldfa.path_counts(n_check)
    empty = ldfa.n_states == 0
    closed = extension_closed(gS, [w])
    diag["extension_closed"] = closed
    diag["oracle_series"] = counts

    F_norm = None
    if S.is_infinite:
        inv_zm1 = one / RatFunc(Poly([Fraction(-1), Fraction(1)]))  # 1/(z-1)
        zg = RatFunc(Poly.x()) * inv_zm1                            # z/(z-1)
        T_Sc = inv_zm1 - T_S
        T_Smc = inv_zm1 - T_Sm
        F = zg * (c * (T_Sc + one) - T_Smc) / f_w
        F_norm, j = _normalize_gf(F)
        diag["normalization_power"] = j
        formula_series = _series_ints(F_norm, n_check)
        # F counts admissible words avoiding wtilde, not w: padding the
        # boundary run changes the finite avoiding-word counts even though
        # the perturbed shift itself is unchanged
        walk_series = walk_counts(gS, [wtilde], n_check)
        diag["walk_series"] = walk_series
        if formula_series != walk_series:
            raise OracleMismatchError(
                f"gap-shift series {formula_series} != oracle {walk_series}")
        if wtilde != w_eng:
            diag["notes"].append(
                "boundary zero-run padded; the generating function counts "
                "admissible words avoiding the padded word")
            if count_words(gS, [wtilde], n_check) != counts:
                raise OracleMismatchError(
                    "padding changed the perturbed language")
    else:
        diag["notes"].append(
            "finite gap set: generating function taken from the oracle automaton")
        if not empty:
            F_norm, _ = _normalize_gf(_dfa_gf(ldfa))

    lam_formula = None
    if not empty:
        root = largest_real_root(f_w.num, 1, lamS + 1e-9, 1e-12) or 1.0
        if S.is_infinite:
            lam_formula = root
        else:
            # f_w is only validated against the oracle for infinite S
            diag["lambda_formula_reference"] = root
    lam = _select_lambda(diag, empty=empty, closed=closed,
                         lam_formula=lam_formula, lam_oracle=_lang_perron(ldfa),
                         lam_ambient=lamS, tol=tol)
    return PerturbationResult(
        entropy=_entropy(lam), lam=lam, characteristic=f_w.num,
        generating_function=F_norm, series=counts, diagnostics=diag)


def _sgap_zero_block(S, w, lamS, gS, diag, tol, n_check):
    """w = 0^n: the survivors form the gap shift over S_0 = {s in S : s < n}."""
    n = len(w)
    S0 = S.truncated_below(n)
    diag["S0"] = list(S0.members)
    ldfa = lang_dfa(gS, [w])
    counts = ldfa.path_counts(n_check)
    empty = ldfa.n_states == 0
    if S0.is_empty():
        if not empty:
            raise OracleMismatchError(
                "S_0 is empty but the oracle finds surviving points")
        diag["empty"] = True
        diag["notes"].append("no member of S below n: nothing survives")
        return PerturbationResult(
            entropy=NEG_INF, lam=0.0, characteristic=None,
            generating_function=None, series=counts, diagnostics=diag)
    sub_counts = count_words(S0.presentation(), [], n_check)
    if sub_counts != counts:
        raise OracleMismatchError(
            f"S_0 language {sub_counts} != perturbed language {counts}")
    charpoly = (RatFunc(Poly.one()) - S0.gap_series()).num
    lam_formula = sgap_entropy_base(S0)
    gf, _ = _normalize_gf(_dfa_gf(ldfa))
    lam = _select_lambda(diag, empty=False, closed=True,
                         lam_formula=lam_formula, lam_oracle=_lang_perron(ldfa),
                         lam_ambient=lamS, tol=tol)
    return PerturbationResult(
        entropy=_entropy(lam), lam=lam, characteristic=charpoly,
        generating_function=gf, series=counts, diagnostics=diag)


def dgap_perturb_entropy(d, w, tol=1e-9, n_check=12) -> PerturbationResult:
    """Forbid w in the d-gap shift (gaps in {0, d, 2d, ...}).

    Works through the unique preimage walk u of wtilde on the d-state cyclic
    presentation; the Perron value is the largest real zero of
    (z^d - z^(d-1) - 1) c_u(z) + z^(d-1). Handles 0u0-shaped words, which the
    one-sided S-gap method rejects.
    """
    d = int(d)
    if d < 1:
        raise ValueError("d must be a positive integer")
    w = _binary_str(w)
    n_check = max(int(n_check), 6)
    S = GapSet.multiples(d)
    lamD = sgap_entropy_base(S)
    gd = S.presentation()
    diag = {"engine": "dgap", "d": d, "ambient_lambda": lamD, "notes": []}

    z = Poly.x()
    lead = Poly.monomial(d) - Poly.monomial(d - 1) - Poly.one()
    tail = Poly.monomial(d - 1)

    if "1" not in w:
        k = -(-len(w) // d)  # extend 0^n to the forbidden gap 0^(kd)
        c_u = Poly.from_exponents(jd * d - 1 for jd in range(1, k + 1))
        diag["wtilde"] = "0" * (k * d)
        sgap_view = sgap_perturb_gf(S, w, tol=tol, n_check=n_check)
        diag["sgap_lambda"] = sgap_view.lam
    else:
        wtilde, m = normalize_word(S, w)  # raises when w cannot occur
        diag["wtilde"] = wtilde
        diag["m"] = m
        pre = label_preimages(gd, wtilde)
        if len(pre) != 1:
            raise OracleMismatchError(
                f"expected a unique preimage walk, found {len(pre)}")
        u = pre[0]
        diag["preimage_walk"] = list(u)
        c_u = correlation_poly(u, u)
        sgap_view = None

    g_w = lead * c_u + tail
    ldfa = lang_dfa(gd, [w])
    counts = ldfa.path_counts(n_check)
    empty = ldfa.n_states == 0
    closed = extension_closed(gd, [w])
    diag["extension_closed"] = closed
    diag["oracle_series"] = counts

    lam_formula = None
    if not empty:
        lam_formula = largest_real_root(g_w, 1, lamD + 1e-9, 1e-12) or 1.0
    lam = _select_lambda(diag, empty=empty, closed=closed,
                         lam_formula=lam_formula, lam_oracle=_lang_perron(ldfa),
                         lam_ambient=lamD, tol=tol)
    if sgap_view is not None and abs(lam - sgap_view.lam) > max(tol, 1e-9):
        raise OracleMismatchError(
            f"d-gap zero-block value {lam} disagrees with S_0 route {sgap_view.lam}")
    gf = None
    if not empty:
        gf, _ = _normalize_gf(_dfa_gf(ldfa))
    return PerturbationResult(
        entropy=_entropy(lam), lam=lam, characteristic=g_w,
        generating_function=gf, series=counts, diagnostics=diag)


# ---------------------------------------------------------------------------
# Diagnostics: decay profiles and structural checks


def _as_presentation(system) -> LabeledGraph:
    if isinstance(system, LabeledGraph):
        return system
    if isinstance(system, GapSet):
        return system.presentation()
    if isinstance(system, int):
        return full_shift_graph(system)
    raise TypeError(f"cannot present {system!r} as a labeled graph")


def decay_profile(system, family, tol=1e-9):
    """Entropy gaps for a family of forbidden words, with the two scalings
    used as decay evidence: (lam - lam_w) * lam^len(w) for gap shifts and
    len(w) * (h - h_w) for sofic presentations. Both are reported per row.
    """
    if isinstance(system, GapSet):
        lam0 = sgap_entropy_base(system)
        perturbed = lambda w: sgap_perturb_gf(system, w, tol=tol, n_check=6)
    else:
        g = _as_presentation(system)
        lam0 = _lang_perron(lang_dfa(g, []))
        perturbed = lambda w: sofic_perturb(g, w, tol=tol, n_check=6)[0]
    rows = []
    for w in family:
        res = perturbed(w)
        n = len(w)
        gap = lam0 - res.lam
        linear = None
        if res.lam > 0:
            linear = n * (math.log(lam0) - math.log(res.lam))
        rows.append({"n": n, "word": w if isinstance(w, str) else list(w),
                     "lambda": res.lam, "gap": gap,
                     "scaled_power": gap * lam0 ** n,
                     "scaled_linear": linear})
    return {"ambient_lambda": lam0, "rows": rows}


def check_structure(system, forbidden, horizon=30, sync_words=(), j_cap=None):
    """Finite-horizon structural report for the perturbed shift.

    nonempty: exact. irreducible_at_horizon: for all pairs of words of length
    j <= j_cap, some connector v with |v| <= horizon - 2j exists (failure is
    conclusive evidence at this horizon; success is horizon-limited).
    synchronizing certificates for each candidate m: m avoids the forbidden
    words, occurs in the language, and every state reached after m allows
    every continuation the canonical post-m state allows, out to the horizon.
    """
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    g = _as_presentation(system)
    forbidden = list(forbidden)
    ldfa = lang_dfa(g, forbidden)
    report = {"horizon": horizon, "horizon_limited": True,
              "nonempty": ldfa.n_states > 0,
              "irreducible_at_horizon": None, "irreducibility_witness": None,
              "synchronizing": {}, "notes": []}
    if ldfa.n_states == 0:
        report["notes"].append("perturbed shift is empty")
        for m in sync_words:
            report["synchronizing"][_word_key(m)] = {
                "passed": False, "reasons": ["language is empty"]}
        return report

    out = {}
    for (q, sym), r in ldfa.trans.items():
        out.setdefault(q, []).append((sym, r))

    if j_cap is None:
        j_cap = max(1, min(horizon // 3, 5))
    reach_cache = {}

    def reach(q, budget):
        key = (q, budget)
        if key not in reach_cache:
            seen = {q}
            frontier = {q}
            for _ in range(budget):
                frontier = {r for p in frontier for (_, r) in out.get(p, ())} - seen
                if not frontier:
                    break
                seen |= frontier
            reach_cache[key] = seen
        return reach_cache[key]

    irreducible = True
    witness = None
    for j in range(1, j_cap + 1):
        budget = horizon - 2 * j
        if budget < 0:
            break
        words_j = _dfa_words(ldfa, out, j, cap=4000)
        if words_j is None:
            report["notes"].append(
                f"word table at length {j} too large; irreducibility checked to {j - 1}")
            break
        targets = {}
        for wd in words_j:
            targets[wd] = frozenset(q for q in range(ldfa.n_states)
                                    if _dfa_run_from(ldfa, q, wd) is not None)
        for u in words_j:
            qu = ldfa.run(u)
            ru = reach(qu, budget)
            for wd, tset in targets.items():
                if not (ru & tset):
                    irreducible = False
                    witness = (u, wd)
                    break
            if witness:
                break
        if witness:
            break
    report["irreducible_at_horizon"] = irreducible
    if witness:
        report["irreducibility_witness"] = [_word_key(witness[0]),
                                            _word_key(witness[1])]

    for m in sync_words:
        report["synchronizing"][_word_key(m)] = _sync_certificate(
            ldfa, out, m, forbidden, horizon)
    return report


def _word_key(w):
    return w if isinstance(w, str) else repr(list(w))


def _dfa_words(ldfa, out, length, cap):
    is_str = all(isinstance(sym, str) for (_, sym) in ldfa.trans.keys())
    frontier = [(ldfa.initial, ())]
    for _ in range(length):
        nxt = []
        for q, pref in frontier:
            for sym, r in out.get(q, ()):
                nxt.append((r, pref + (sym,)))
            if len(nxt) > cap:
                return None
        frontier = nxt
    seen = {pref for (_, pref) in frontier}
    return ["".join(p) for p in sorted(seen)] if is_str else sorted(seen)


def _dfa_run_from(ldfa, q, word):
    for sym in word:
        q = ldfa.trans.get((q, sym))
        if q is None:
            return None
    return q


def _sync_certificate(ldfa, out, m, forbidden, horizon):
    reasons = []
    for kword in forbidden:
        if _is_factor(m, kword):
            reasons.append("candidate occurs inside a forbidden word")
            break
    qm = ldfa.run(m)
    if qm is None:
        reasons.append("candidate does not occur in the language")
    if reasons:
        return {"passed": False, "reasons": reasons}
    landing = {_dfa_run_from(ldfa, q, m) for q in range(ldfa.n_states)}
    landing.discard(None)
    depth = horizon - len(m)
    for p in sorted(landing):
        bad = _simulation_gap(ldfa, qm, p, depth)
        if bad is not None:
            return {"passed": False,
                    "reasons": [f"continuation {_word_key(bad)} readable after "
                                f"the reference occurrence but not from state {p}"]}
    return {"passed": True, "reasons": [],
            "states_after_candidate": len(landing)}


def _simulation_gap(ldfa, ref, other, depth):
    """Shortest word readable from ref but not from other (within depth),
    else None."""
    seen = {(ref, other)}
    frontier = [(ref, other, ())]
    for _ in range(depth):
        nxt = []
        for a, b, pref in frontier:
            for (q, sym), r in ldfa.trans.items():
                if q != a:
                    continue
                b2 = ldfa.trans.get((b, sym))
                if b2 is None:
                    return pref + (sym,)
                if (r, b2) not in seen:
                    seen.add((r, b2))
                    nxt.append((r, b2, pref + (sym,)))
        if not nxt:
            return None
        frontier = nxt
    return None
