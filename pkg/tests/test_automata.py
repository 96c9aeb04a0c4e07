"""Graph, automaton, and language-counting oracle layer.

The count fixtures here were frozen from brute-force enumeration before any
closed-form engine existed; everything downstream cross-checks against them.
"""

import itertools

import pytest

from shiftperturb.automata import (DFA, DirectedGraph, LabeledGraph,
                                   avoid_product_presentation, count_words,
                                   determinize, edge_shift_graph, enumerate_words,
                                   essential, extension_closed, full_shift_graph,
                                   is_irreducible, label_preimages, lang_dfa,
                                   perron_root, walk_counts, word_endpoints)
from shiftperturb.spaces import GapSet

GOLDEN = (1 + 5 ** 0.5) / 2


def brute_counts(alphabet, forbidden, n_max, member=None):
    """Independent check: enumerate all strings, filter factors."""
    counts = []
    for n in range(n_max + 1):
        c = 0
        for t in itertools.product(alphabet, repeat=n):
            s = "".join(t)
            if any(f in s for f in forbidden):
                continue
            if member is not None and not member(s):
                continue
            c += 1
        counts.append(c)
    return counts


class TestGraphs:
    def test_directed_graph_validation(self):
        with pytest.raises(ValueError):
            DirectedGraph([[1, 2]])
        with pytest.raises(ValueError):
            DirectedGraph([[-1]])

    def test_full_shift_graph(self):
        g = full_shift_graph(3)
        assert g.n == 1 and sorted(l for (_, _, l) in g.edges) == ["0", "1", "2"]

    def test_edge_shift_graph_labels_are_edges(self):
        g = edge_shift_graph(DirectedGraph([[1, 1], [1, 0]]))
        assert len(g.edges) == 3
        assert all(isinstance(l, tuple) and len(l) == 3 for (_, _, l) in g.edges)

    def test_essential_prunes_stranded_vertices(self):
        # vertex 2 has no outgoing edge; vertex 1 then loses its only target
        g = LabeledGraph(3, [(0, 0, "a"), (0, 1, "b"), (1, 2, "c")])
        e = essential(g)
        assert e.n == 1 and [(s, t, l) for (s, t, l) in e.edges] == [(0, 0, "a")]

    def test_is_irreducible(self):
        assert is_irreducible(DirectedGraph([[1, 1], [1, 0]]))
        assert not is_irreducible(DirectedGraph([[1, 1], [0, 1]]))


class TestCounting:
    def test_full_shift_counts(self):
        assert count_words(full_shift_graph(2), [], 6) == [1, 2, 4, 8, 16, 32, 64]

    def test_golden_mean_counts(self):
        got = count_words(full_shift_graph(2), ["11"], 7)
        assert got == [1, 2, 3, 5, 8, 13, 21, 34]
        assert got == brute_counts("01", ["11"], 7)

    def test_two_word_degenerate(self):
        assert count_words(full_shift_graph(2), ["01", "10"], 3) == [1, 2, 2, 2]

    def test_emptying_perturbation(self):
        assert count_words(full_shift_graph(2), ["0", "1"], 2) == [1, 0, 0]

    def test_even_shift_counts(self):
        even = GapSet.multiples(2).presentation()
        assert count_words(even, [], 6) == [1, 2, 4, 7, 12, 20, 33]
        assert count_words(even, ["11"], 8) == [1, 2, 3, 4, 6, 8, 11, 15, 20]
        assert count_words(even, ["1001"], 8) == [1, 2, 4, 7, 11, 16, 23, 33, 48]

    def test_gap_shift_counts(self):
        assert count_words(GapSet.multiples(3).presentation(), [], 6) == \
            [1, 2, 4, 7, 11, 17, 26]
        assert count_words(GapSet([0, 2]).presentation(), [], 6) == \
            [1, 2, 4, 6, 9, 13, 19]

    def test_edge_shift_counts(self):
        g = edge_shift_graph(DirectedGraph([[1, 1], [1, 0]]))
        assert count_words(g, [], 4) == [1, 3, 5, 8, 13]

    def test_walk_vs_language_counts(self):
        # on an essential right-resolving presentation with forbidden factors
        # removed, locally admissible walks can exceed extendable words
        pos = GapSet.positives().presentation()
        walks = walk_counts(pos, ["0101"], 8)
        langs = count_words(pos, ["0101"], 8)
        assert walks == [1, 2, 3, 5, 7, 10, 15, 22, 32]
        assert langs == [1, 2, 3, 4, 6, 9, 13, 19, 28]
        assert all(w >= l for w, l in zip(walks, langs))

    def test_enumerate_matches_counts(self):
        g = full_shift_graph(2)
        for n in range(7):
            words = enumerate_words(g, ["11"], n)
            assert len(words) == count_words(g, ["11"], n)[n]
            assert all("11" not in w for w in words)


class TestDFA:
    def test_determinize_full_shift(self):
        dfa = determinize(full_shift_graph(2))
        assert isinstance(dfa, DFA)
        assert dfa.initial is not None

    def test_lang_dfa_rejects_forbidden(self):
        dfa = lang_dfa(full_shift_graph(2), ["11"])
        assert dfa.run("0110") is None
        assert dfa.run("0101") is not None

    def test_lang_dfa_drops_nonextendable(self):
        # 0101 cannot be extended in both directions in the positives gap
        # shift without
        # creating the forbidden word, so it is not in the language
        pos = GapSet.positives().presentation()
        dfa = lang_dfa(pos, ["0101"])
        assert dfa.run("0101") is None


class TestExtensionClosed:
    def test_sft_is_extension_closed(self):
        assert extension_closed(full_shift_graph(2), ["11"])
        assert extension_closed(full_shift_graph(3), ["120", "110"])

    def test_gap_not_extension_closed(self):
        assert not extension_closed(GapSet.positives().presentation(), ["0101"])


class TestPresentations:
    def test_avoid_product_presentation_golden_mean(self):
        pres = avoid_product_presentation(full_shift_graph(2), ["11"])
        assert pres.n == 2
        assert sorted(pres.edges) == [(0, 0, "0"), (0, 1, "1"), (1, 0, "0")]

    def test_word_endpoints_golden_mean(self):
        gm = LabeledGraph(2, [(0, 0, "0"), (0, 1, "1"), (1, 0, "0")])
        s, r = word_endpoints(gm, "01")
        assert s == {0, 1} and r == {1}
        s, r = word_endpoints(gm, "11")
        assert s == set() and r == set()

    def test_label_preimages(self):
        gm = LabeledGraph(2, [(0, 0, "0"), (0, 1, "1"), (1, 0, "0")])
        walks = label_preimages(gm, "01")
        assert len(walks) == 2  # 0->0->1 and 1->0->1


class TestPerron:
    def test_full_shift(self):
        assert perron_root(DirectedGraph([[2]])) == pytest.approx(2.0)

    def test_golden_mean(self):
        r = perron_root(DirectedGraph([[1, 1], [1, 0]]))
        assert r == pytest.approx(GOLDEN, abs=1e-10)

    def test_defective_matrix(self):
        # adjacency with eigenvalue 1 in a nontrivial Jordan block; the
        # Sturm route and the eigenvalue route must still agree
        A = DirectedGraph([[1, 1], [0, 1]])
        assert perron_root(A) == pytest.approx(1.0)

    def test_nilpotent_raises(self):
        with pytest.raises(ValueError):
            perron_root(DirectedGraph([[0, 1], [0, 0]]))
