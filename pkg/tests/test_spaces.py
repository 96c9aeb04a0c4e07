"""Gap sets: series, presentations, entropies, word normalization."""

from fractions import Fraction

import pytest

from shiftperturb.automata import count_words, lang_dfa, perron_root
from shiftperturb.ratpoly import Poly, RatFunc
from shiftperturb.spaces import GapSet, normalize_word, sgap_entropy_base

GOLDEN = (1 + 5 ** 0.5) / 2
PLASTIC = 1.3247179572447460


def P(*coeffs):
    return Poly([Fraction(c) for c in coeffs])


class TestGapSet:
    def test_finite_normalization(self):
        s = GapSet([3, 1, 1, 0])
        assert s.members == (0, 1, 3)
        assert not s.is_infinite

    def test_silent_period_collapses_to_finite(self):
        s = GapSet(pre=(1, 0, 1), per=(0,))
        assert s.members == (0, 2)

    def test_membership(self):
        evens = GapSet.multiples(2)
        assert 0 in evens and 4 in evens and 101 not in evens
        assert evens.is_infinite
        pos = GapSet.positives()
        assert 0 not in pos and 7 in pos

    def test_min_at_least(self):
        pos = GapSet.positives()
        assert pos.min_at_least(0) == 1
        assert GapSet.multiples(3).min_at_least(4) == 6
        assert GapSet([1, 5]).min_at_least(2) == 5
        assert GapSet([1]).min_at_least(2) is None

    def test_shifted(self):
        evens = GapSet.multiples(2)
        s = evens.shifted(1)
        assert 1 in s and 3 in s and 0 not in s

    def test_truncated_below(self):
        s = GapSet.naturals().truncated_below(3)
        assert s.members == (0, 1, 2)

    def test_empty(self):
        assert GapSet([]).is_empty()
        assert not GapSet.naturals().is_empty()


class TestGapSeries:
    def cases(self):
        # T_S(z) = sum over s in S of z^{-(s+1)}, as a rational function
        return [
            (GapSet.naturals(), RatFunc(P(1), P(-1, 1))),           # 1/(z-1)
            (GapSet.positives(), RatFunc(P(1), P(0, -1, 1))),       # 1/(z^2-z)
            (GapSet.multiples(2), RatFunc(P(0, 1), P(-1, 0, 1))),   # z/(z^2-1)
            (GapSet.multiples(3), RatFunc(P(0, 0, 1), P(-1, 0, 0, 1))),
            (GapSet([0, 2]), RatFunc(P(1, 0, 1), P(0, 0, 0, 1))),   # (z^2+1)/z^3
        ]

    def test_gap_series_fixtures(self):
        for s, want in self.cases():
            assert s.gap_series() == want, s

    def test_series_matches_membership(self):
        # coefficient of z^-(k+1) in T_S is the indicator of k in S
        from shiftperturb.ratpoly import series_expand
        for s, _ in self.cases():
            coeffs, principal = series_expand(s.gap_series(), 12)
            assert principal == {}
            assert coeffs[0] == 0
            for k in range(11):
                assert coeffs[k + 1] == (1 if k in s else 0), (s, k)


class TestPresentation:
    def test_presentation_language_counts(self):
        # the presented language of the naturals gap shift is the full shift
        g = GapSet.naturals().presentation()
        assert count_words(g, [], 5) == [1, 2, 4, 8, 16, 32]

    def test_presentation_entropy_matches_formula(self):
        for s in (GapSet.naturals(), GapSet.positives(), GapSet.multiples(2),
                  GapSet.multiples(3), GapSet([1, 2]), GapSet([0, 2])):
            lam_formula = sgap_entropy_base(s)
            dfa = lang_dfa(s.presentation(), [])
            from shiftperturb.automata import DirectedGraph
            lam_graph = perron_root(DirectedGraph(dfa.adjacency()))
            assert lam_formula == pytest.approx(lam_graph, abs=1e-9), s

    def test_contains_word(self):
        evens = GapSet.multiples(2)
        assert evens.contains_word("1001")
        assert not evens.contains_word("101")
        assert evens.contains_word("0010")


class TestEntropyBase:
    def test_known_values(self):
        # every binary sequence has all its gap lengths in N0: full shift
        assert sgap_entropy_base(GapSet.naturals()) == pytest.approx(2.0)
        # {2,4,6,...}: 1 - T_S has its root at the plastic number
        s24 = GapSet(pre=(0, 0), per=(1, 0))
        assert sgap_entropy_base(s24) == pytest.approx(PLASTIC, abs=1e-9)
        # single gap {1}: period-2 orbit, entropy 0
        assert sgap_entropy_base(GapSet([1])) == pytest.approx(1.0)

    def test_golden_from_positives(self):
        # positives gap shift is the golden mean shift
        assert sgap_entropy_base(GapSet.positives()) == pytest.approx(GOLDEN, abs=1e-10)


class TestNormalizeWord:
    def test_interior_word_unchanged(self):
        w, m = normalize_word(GapSet.naturals(), "11")
        assert w == "11" and m == 0

    def test_leading_zeros_padded(self):
        # 011 over naturals: leading block must reach a representable gap
        w, m = normalize_word(GapSet.naturals(), "011")
        assert w == "011" and m == 1

    def test_trailing_zeros_use_reversal(self):
        w, m = normalize_word(GapSet.naturals(), "110")
        assert w == "110" and m == 1

    def test_evens_padding(self):
        # 01 over evens: the leading run of one zero extends to the minimal
        # even gap of size >= 1, namely 2
        w, m = normalize_word(GapSet.multiples(2), "01")
        assert w == "001" and m == 2

    def test_internal_run_must_be_in_s(self):
        with pytest.raises(ValueError):
            normalize_word(GapSet.multiples(2), "101")

    def test_all_zero_rejected(self):
        with pytest.raises(ValueError):
            normalize_word(GapSet.naturals(), "000")

    def test_binary_only(self):
        with pytest.raises(ValueError):
            normalize_word(GapSet.naturals(), "12")
