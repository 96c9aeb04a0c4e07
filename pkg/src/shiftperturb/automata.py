"""Directed multigraphs, labeled presentations, and the counting oracle.

The oracle pipeline (determinize, product with an Aho-Corasick pattern
automaton, prune to the bi-essential core, recount) is deliberately
independent of every closed-form engine in this package: it only ever counts
paths. All generating functions and entropy formulas are validated against it.
"""

from __future__ import annotations

import numpy as np

from .ratpoly import char_poly, largest_real_root


class DirectedGraph:
    """Finite multigraph given by a nonnegative integer adjacency matrix.

    Edges are identified as triples (i, j, c): the c-th parallel edge from
    vertex i to vertex j, 0 <= c < A[i][j].
    """

    def __init__(self, A):
        self.A = [[int(x) for x in row] for row in A]
        n = len(self.A)
        for row in self.A:
            if len(row) != n:
                raise ValueError("adjacency matrix must be square")
            if any(x < 0 for x in row):
                raise ValueError("adjacency entries must be nonnegative")

    @property
    def n(self):
        return len(self.A)

    def edge_ids(self):
        return [(i, j, c)
                for i in range(self.n)
                for j in range(self.n)
                for c in range(self.A[i][j])]

    def is_walk(self, word) -> bool:
        """word is a sequence of edge triples forming a connected walk."""
        if len(word) == 0:
            return False
        for e in word:
            i, j, c = e
            if not (0 <= i < self.n and 0 <= j < self.n and 0 <= c < self.A[i][j]):
                return False
        return all(word[t][1] == word[t + 1][0] for t in range(len(word) - 1))


class LabeledGraph:
    """Labeled directed multigraph: edge list of (src, dst, label) triples."""

    def __init__(self, n, edges):
        self.n = int(n)
        self.edges = [(int(s), int(t), l) for (s, t, l) in edges]
        for s, t, _ in self.edges:
            if not (0 <= s < self.n and 0 <= t < self.n):
                raise ValueError("edge endpoint out of range")

    def underlying(self) -> DirectedGraph:
        A = [[0] * self.n for _ in range(self.n)]
        for s, t, _ in self.edges:
            A[s][t] += 1
        return DirectedGraph(A)

    def edge_triple(self, k):
        """Edge k as a (src, dst, copy) triple of the underlying multigraph."""
        s, t, _ = self.edges[k]
        c = sum(1 for m in range(k) if self.edges[m][0] == s and self.edges[m][1] == t)
        return (s, t, c)

    def labels(self):
        return sorted({l for (_, _, l) in self.edges}, key=repr)

    def is_right_resolving(self) -> bool:
        seen = set()
        for s, _, l in self.edges:
            if (s, l) in seen:
                return False
            seen.add((s, l))
        return True


def full_shift_graph(N) -> LabeledGraph:
    return LabeledGraph(1, [(0, 0, str(a)) for a in range(N)])


def edge_shift_graph(g: DirectedGraph) -> LabeledGraph:
    """Edge shift of a multigraph: every edge labeled by its own identity."""
    return LabeledGraph(g.n, [(i, j, (i, j, c)) for (i, j, c) in g.edge_ids()])


def essential_digraph(g: DirectedGraph):
    """Restriction of g to the vertices lying on some biinfinite walk.

    Returns (core, vmap) where vmap[old] is the new index or None for a
    peeled vertex. Vertices with no surviving out- or in-edges are removed
    until stable; parallel edge indices are preserved.
    """
    alive = set(range(g.n))
    changed = True
    while changed:
        changed = False
        for v in list(alive):
            has_out = any(g.A[v][j] for j in alive)
            has_in = any(g.A[i][v] for i in alive)
            if not (has_out and has_in):
                alive.discard(v)
                changed = True
    order = sorted(alive)
    vmap = [None] * g.n
    for idx, v in enumerate(order):
        vmap[v] = idx
    core = DirectedGraph([[g.A[i][j] for j in order] for i in order])
    return core, vmap


class DFA:
    """Deterministic partial automaton; every state accepting."""

    def __init__(self, n_states, trans, initial):
        self.n_states = n_states
        self.trans = dict(trans)  # (state, symbol) -> state
        self.initial = initial

    def adjacency(self):
        A = [[0] * self.n_states for _ in range(self.n_states)]
        for (q, _), r in self.trans.items():
            A[q][r] += 1
        return A

    def step(self, q, sym):
        return self.trans.get((q, sym))

    def run(self, word):
        q = self.initial
        for sym in word:
            q = self.trans.get((q, sym))
            if q is None:
                return None
        return q

    def path_counts(self, n_max):
        """Number of length-n paths from the initial state, n = 0..n_max."""
        if self.initial is None:
            return [1] + [0] * n_max
        out_edges = {}
        for (q, _), r in self.trans.items():
            out_edges.setdefault(q, []).append(r)
        cur = {self.initial: 1}
        counts = [1]
        for _ in range(n_max):
            nxt = {}
            for q, c in cur.items():
                for r in out_edges.get(q, ()):
                    nxt[r] = nxt.get(r, 0) + c
            counts.append(sum(nxt.values()))
            cur = nxt
        return counts


def _essential_edges(n, edges):
    """Vertices surviving iterated removal of in-degree/out-degree-0 states."""
    alive = set(range(n))
    while True:
        has_out = {s for (s, t, _) in edges if s in alive and t in alive}
        has_in = {t for (s, t, _) in edges if s in alive and t in alive}
        keep = {v for v in alive if v in has_out and v in has_in}
        if keep == alive:
            return alive, [(s, t, l) for (s, t, l) in edges if s in alive and t in alive]
        alive = keep


def essential(g: LabeledGraph) -> LabeledGraph:
    alive, edges = _essential_edges(g.n, g.edges)
    idx = {v: i for i, v in enumerate(sorted(alive))}
    return LabeledGraph(len(alive), [(idx[s], idx[t], l) for (s, t, l) in edges])


def _subset_determinize(init_set, step_fn, symbols):
    """Generic subset construction. step_fn(state_set, sym) -> state_set."""
    init = frozenset(init_set)
    if not init:
        return DFA(0, {}, None)
    states = {init: 0}
    order = [init]
    trans = {}
    qi = 0
    while qi < len(order):
        cur = order[qi]
        for sym in symbols:
            nxt = frozenset(step_fn(cur, sym))
            if not nxt:
                continue
            if nxt not in states:
                states[nxt] = len(order)
                order.append(nxt)
            trans[(qi, sym)] = states[nxt]
        qi += 1
    return DFA(len(order), trans, 0)


def determinize(g: LabeledGraph) -> DFA:
    """DFA for the label words of finite walks in g (initial = all vertices),
    trimmed to states that still lie on arbitrarily long continuations."""
    g = essential(g)
    by_label = {}
    for s, t, l in g.edges:
        by_label.setdefault(l, []).append((s, t))
    symbols = list(by_label.keys())

    def step(cur, sym):
        return {t for (s, t) in by_label.get(sym, ()) if s in cur}

    return _subset_determinize(range(g.n), step, symbols)


def _aho_corasick(patterns):
    """Prefix-tree automaton with suffix links folded in.

    Returns (goto, dead): goto maps (node, symbol) -> node over prefix nodes,
    dead is the set of nodes having some pattern as a suffix.
    """
    pats = [p if isinstance(p, str) else tuple(p) for p in patterns]
    if any(len(p) == 0 for p in pats):
        raise ValueError("forbidden words must be nonempty")
    is_str = bool(pats) and isinstance(pats[0], str)
    empty = "" if is_str else ()
    nodes = {empty}
    for p in pats:
        for i in range(1, len(p) + 1):
            nodes.add(p[:i])
    node_list = sorted(nodes, key=lambda x: (len(x), repr(x)))
    symbols = sorted({p[i] for p in pats for i in range(len(p))}, key=repr)
    node_set = set(node_list)

    def longest_suffix_in(x):
        for k in range(len(x)):
            if x[k:] in node_set:
                return x[k:]
        return empty

    goto = {}
    for nd in node_list:
        for sym in symbols:
            ext = nd + (sym if is_str else (sym,))
            goto[(nd, sym)] = ext if ext in node_set else longest_suffix_in(ext)
    pat_set = set(pats)

    def has_pattern_suffix(nd):
        return any(nd[max(0, len(nd) - len(p)):] == p for p in pat_set)

    dead = {nd for nd in node_list if has_pattern_suffix(nd)}
    return goto, dead, empty, symbols


def _avoid_product(g: LabeledGraph, forbidden):
    """Product of the determinized presentation with the live part of the
    pattern automaton. Returns (n_states, labeled edge list, initial state).

    Paths from the initial state are exactly the K-free label words readable
    as walks in g (no extendability requirement yet).
    """
    dfa = determinize(g)
    if dfa.initial is None:
        return 0, [], None
    goto, dead, ac_root, _ = _aho_corasick(forbidden) if forbidden else (None, set(), None, None)
    syms = sorted({l for (_, l) in dfa.trans.keys()}, key=repr)
    init = (dfa.initial, ac_root)
    states = {init: 0}
    order = [init]
    edges = []
    qi = 0
    while qi < len(order):
        q, ac = order[qi]
        for sym in syms:
            r = dfa.trans.get((q, sym))
            if r is None:
                continue
            if goto is not None:
                # symbols absent from every pattern reset the matcher
                ac2 = goto.get((ac, sym), ac_root)
                if ac2 in dead:
                    continue
            else:
                ac2 = ac_root
            key = (r, ac2)
            if key not in states:
                states[key] = len(order)
                order.append(key)
            edges.append((qi, states[key], sym))
        qi += 1
    return len(order), edges, 0


def walk_counts(g: LabeledGraph, forbidden, n_max):
    """Counts of K-free label words of walks in g (locally admissible words).

    These can exceed the language counts of the perturbed shift when a
    readable word has no biinfinite continuation; see extension_closed.
    """
    n, edges, init = _avoid_product(g, forbidden)
    if init is None:
        return [1] + [0] * n_max
    out = {}
    for s, t, _ in edges:
        out.setdefault(s, []).append(t)
    cur = {init: 1}
    counts = [1]
    for _ in range(n_max):
        nxt = {}
        for q, c in cur.items():
            for r in out.get(q, ()):
                nxt[r] = nxt.get(r, 0) + c
        counts.append(sum(nxt.values()))
        cur = nxt
    return counts


def lang_dfa(g: LabeledGraph, forbidden) -> DFA:
    """DFA counting the language of the perturbed shift: K-free label words
    that extend to biinfinite avoiding walks.

    Built by pruning the avoidance product to its bi-essential core and
    re-determinizing from the full core (a word is in the language exactly
    when it labels a path between core states).
    """
    n, edges, init = _avoid_product(g, forbidden)
    if init is None:
        return DFA(0, {}, None)
    alive, edges = _essential_edges(n, edges)
    if not alive:
        return DFA(0, {}, None)
    by_label = {}
    for s, t, l in edges:
        by_label.setdefault(l, []).append((s, t))

    def step(cur, sym):
        return {t for (s, t) in by_label.get(sym, ()) if s in cur}

    return _subset_determinize(alive, step, list(by_label.keys()))


def count_words(g: LabeledGraph, forbidden, n_max):
    """Exact #L_n of the sofic shift presented by g with the words of
    `forbidden` outlawed, for n = 0..n_max. f(0) = 1 always."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    return lang_dfa(g, forbidden).path_counts(n_max)


def enumerate_words(g: LabeledGraph, forbidden, length, cap=2_000_000):
    """The set of length-n words of the perturbed language. Strings stay
    strings; other label types come back as tuples."""
    dfa = lang_dfa(g, forbidden)
    if dfa.initial is None:
        return set()
    out_edges = {}
    for (q, sym), r in dfa.trans.items():
        out_edges.setdefault(q, []).append((sym, r))
    is_str = all(isinstance(l, str) for (_, _, l) in g.edges)
    words = set()
    stack = [(dfa.initial, [])]
    while stack:
        q, pref = stack.pop()
        if len(pref) == length:
            words.add("".join(pref) if is_str else tuple(pref))
            if len(words) > cap:
                raise RuntimeError("word enumeration exceeded cap")
            continue
        for sym, r in out_edges.get(q, ()):
            stack.append((r, pref + [sym]))
    return words


def extension_closed(g: LabeledGraph, forbidden) -> bool:
    """Decide whether every K-free readable word extends biinfinitely,
    i.e. whether walk_counts and count_words agree for every n.

    Both sequences satisfy linear recurrences of order at most the state
    counts of their automata, so agreement up to the summed order decides
    equality everywhere.
    """
    n_prod, _, init = _avoid_product(g, forbidden)
    if init is None:
        return True
    dfa = lang_dfa(g, forbidden)
    bound = n_prod + dfa.n_states + 2
    return walk_counts(g, forbidden, bound) == dfa.path_counts(bound)


def dfa_to_labeled(dfa: DFA) -> LabeledGraph:
    """View a DFA as a labeled graph (deterministic, hence right-resolving)."""
    edges = sorted(((q, r, sym) for (q, sym), r in dfa.trans.items()),
                   key=lambda e: (e[0], repr(e[2])))
    return LabeledGraph(dfa.n_states, edges)


def avoid_product_presentation(g: LabeledGraph, forbidden) -> LabeledGraph:
    """Right-resolving presentation of the shift presented by g with the
    given label words forbidden (the bi-essential avoidance product)."""
    n, edges, init = _avoid_product(g, forbidden)
    if init is None:
        return LabeledGraph(0, [])
    alive, edges = _essential_edges(n, edges)
    idx = {v: i for i, v in enumerate(sorted(alive))}
    return LabeledGraph(len(alive), [(idx[s], idx[t], l) for (s, t, l) in edges])


def is_irreducible(g: DirectedGraph) -> bool:
    """Strong connectivity through at least one edge (a single vertex needs
    a self-loop)."""
    n = g.n
    adj = [[j for j in range(n) if g.A[i][j] > 0] for i in range(n)]
    for i in range(n):
        seen = set()
        stack = list(adj[i])
        while stack:
            v = stack.pop()
            if v in seen:
                continue
            seen.add(v)
            stack.extend(adj[v])
        if seen != set(range(n)):
            return False
    return True


def perron_root(g: DirectedGraph, tol=1e-9) -> float:
    """Largest real eigenvalue of the adjacency matrix.

    Computed exactly from the characteristic polynomial (Sturm bisection) and
    double-checked against the numeric spectral radius; for a nonnegative
    matrix the two coincide."""
    A = g.A
    cp = char_poly(A)
    hi = max(1, max(sum(row) for row in A))
    root = largest_real_root(cp, 0, hi, min(tol, 1e-12))
    if root is None:
        raise ValueError("nilpotent adjacency matrix: no cycles, empty shift")
    eigs = np.linalg.eigvals(np.array(A, dtype=float))
    rho = float(max(abs(eigs))) if len(eigs) else 0.0
    if abs(rho - root) > max(tol, 1e-7) * max(1.0, abs(root)):
        raise ArithmeticError(
            f"perron root mismatch: char poly {root} vs spectral radius {rho}")
    return root


def word_endpoints(g: LabeledGraph, w):
    """(S_G(w), R_G(w)): sources and ranges over all walks labeled w."""
    by_label = {}
    for s, t, l in g.edges:
        by_label.setdefault(l, []).append((s, t))
    pairs = {(v, v) for v in range(g.n)}
    for sym in w:
        step = by_label.get(sym, ())
        pairs = {(a, t) for (a, e) in pairs for (s, t) in step if s == e}
        if not pairs:
            return set(), set()
    return {a for (a, _) in pairs}, {b for (_, b) in pairs}


def label_preimages(g: LabeledGraph, w):
    """All walks labeled w, as tuples of (src, dst, copy) edge triples."""
    by_label = {}
    for k, (s, t, l) in enumerate(g.edges):
        by_label.setdefault(l, []).append((s, t, g.edge_triple(k)))
    paths = [(None, [])]
    for sym in w:
        if sym not in by_label:
            return []
        paths = [(t, seq + [trip])
                 for (endv, seq) in paths
                 for (s, t, trip) in by_label[sym]
                 if endv is None or endv == s]
        if not paths:
            return []
    return [tuple(seq) for (_, seq) in paths]
