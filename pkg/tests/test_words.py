"""Correlation sets of words."""

import pytest

from shiftperturb.words import correlate, correlation_poly, is_prime, reverse
from shiftperturb.ratpoly import Poly


class TestCorrelate:
    def test_self_overlaps(self):
        # brute-force definition: l in (u,w) iff the length-(l+1) suffix of u
        # equals the length-(l+1) prefix of w
        assert correlate("11", "11") == {0, 1}
        assert correlate("10", "10") == {1}
        assert correlate("1010", "1010") == {1, 3}
        assert correlate("0101", "0101") == {1, 3}

    def test_cross_overlaps(self):
        assert correlate("1010", "0101") == {0, 2}
        assert correlate("0101", "1010") == {0, 2}
        assert correlate("110", "100") == {1}
        assert correlate("100", "110") == set()

    def test_swap_fixture_pair(self):
        assert correlate("120", "110") == set()
        assert correlate("110", "120") == set()

    def test_length_mismatch_raises(self):
        with pytest.raises(ValueError):
            correlate("11", "111")

    def test_generic_sequences(self):
        assert correlate((0, 1), (1, 0)) == {0}


class TestCorrelationPoly:
    def test_poly_from_set(self):
        assert correlation_poly("11", "11") == Poly([1, 1])
        assert correlation_poly("10", "10") == Poly([0, 1])
        assert correlation_poly("100", "110") == Poly.zero()

class TestPrime:
    def test_prime_words(self):
        assert is_prime("10")
        assert is_prime("110")
        assert is_prime("1000")
        assert not is_prime("11")
        assert not is_prime("101")
        assert is_prime("1")  # (w,w) = {0} = {n-1}

    def test_reverse(self):
        assert reverse("100") == "001"
