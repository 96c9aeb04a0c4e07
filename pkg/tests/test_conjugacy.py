"""Swap conjugacies between X_u and X_w.

The block map swaps occurrences of u and w inside a window of width 2n-1.
Admissibility asks for matching self-correlations, cross-correlations equal
to the common self-correlation minus the trivial overlap, and matching
endpoint vertex sets; under those conditions the swap is a well defined
involution carrying one perturbed language onto the other.
"""

import itertools

import pytest

from shiftperturb.automata import full_shift_graph
from shiftperturb.conjugacy import (SwapCode, SwapConflictError, apply_swap,
                                    swap_admissible, verify_conjugacy)
from shiftperturb.spaces import GapSet


class TestAdmissibility:
    def test_ternary_pair(self):
        rep = swap_admissible(full_shift_graph(3), "120", "110")
        assert rep["admissible"]
        assert rep["correlations"] == {"uu": [2], "ww": [2],
                                       "uw": [], "wu": []}

    def test_correlation_mismatch(self):
        rep = swap_admissible(full_shift_graph(2), "01", "11")
        assert not rep["admissible"]
        assert any("self correlations differ" in r for r in rep["reasons"])

    def test_cross_correlation_blocks(self):
        # 010 and 011 share the prefix but 011/010 overlap at the seam
        rep = swap_admissible(full_shift_graph(2), "010", "011")
        assert not rep["admissible"]

    def test_binary_pair(self):
        rep = swap_admissible(full_shift_graph(2), "0000101", "0001001")
        assert rep["admissible"]

    def test_missing_word(self):
        even = GapSet.multiples(2).presentation()
        rep = swap_admissible(even, "111", "000")
        assert not rep["admissible"]


class TestLocalRule:
    def test_window_length_enforced(self):
        with pytest.raises(ValueError):
            SwapCode("120", "110").local_rule("1201")

    def test_passthrough(self):
        assert SwapCode("120", "110").local_rule("22222") == "2"

    def test_swaps_both_ways(self):
        code = SwapCode("120", "110")
        # center is u[2]; w[2] is also 0
        assert code.local_rule("12012") == "0"
        # center is u[1]=2 inside 120 -> w[1]=1
        assert code.local_rule("01201") == "1"
        # center is w[1]=1 inside 110 -> u[1]=2
        assert code.local_rule("01101") == "2"

    def test_conflict_raises(self):
        code = SwapCode("01", "11")
        with pytest.raises(SwapConflictError) as ei:
            code.local_rule("111")
        assert ei.value.window == "111"
        assert sorted(ei.value.outputs) == ["0", "1"]


class TestApplySwap:
    def test_interior_default(self):
        assert apply_swap(SwapCode("120", "110"), "0120112011") == "0110111011"

    def test_padded(self):
        code = SwapCode("120", "110")
        assert apply_swap(code, "0120112011", pad="22") == "0110111011"
        with pytest.raises(ValueError):
            apply_swap(code, "0120", pad="2")

    def test_periodic(self):
        code = SwapCode("120", "110")
        assert apply_swap(code, "120", periodic=True) == "110"
        assert apply_swap(code, "120120", periodic=True) == "110110"
        with pytest.raises(ValueError):
            apply_swap(code, "120", periodic=True, pad="22")

    def test_involution_on_all_windows(self):
        # exhaustive on every ternary word of length 2n: applying the swap
        # twice through a neutral context returns the original word
        code = SwapCode("120", "110")
        for L in (4, 5, 6):
            for tup in itertools.product("012", repeat=L):
                x = "".join(tup)
                once = apply_swap(code, x, pad="22")
                twice = apply_swap(code, once, pad="22")
                assert twice == x

    def test_periodic_involution(self):
        code = SwapCode("120", "110")
        for tup in itertools.product("012", repeat=5):
            x = "".join(tup)
            assert apply_swap(code, apply_swap(code, x, periodic=True),
                              periodic=True) == x


class TestVerifyConjugacy:
    def test_ternary_full_shift(self):
        v = verify_conjugacy(3, "120", "110", n_max=7)
        assert v["ok"]
        assert v["mode"] == "padded" and v["pad"] == "22"
        assert v["entropy_gap"] == 0.0
        assert v["entropies_agree"]
        assert v["witnesses"] == []
        row5 = next(r for r in v["rows"] if r["j"] == 5)
        assert row5["count_u"] == row5["count_w"] == 216
        assert row5["bijection"] and row5["involution_ok"]

    def test_identity_pair(self):
        v = verify_conjugacy(2, "11", "11", n_max=4)
        assert v["mode"] == "identity" and v["ok"]

    def test_binary_pair_interior(self):
        # binary alphabet leaves no neutral pad symbol
        v = verify_conjugacy(2, "0000101", "0001001", n_max=8)
        assert v["mode"] == "interior"
        assert v["ok"] and v["entropy_gap"] == 0.0

    def test_sgap_pair(self):
        v = verify_conjugacy(GapSet.positives(), "01000010", "01001010",
                             n_max=9)
        assert v["mode"] == "interior"
        assert v["ok"] and v["entropy_gap"] == 0.0

    def test_inadmissible_raises(self):
        with pytest.raises(ValueError):
            verify_conjugacy(2, "01", "11", n_max=4)
