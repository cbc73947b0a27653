"""Brute-force reference implementations used only by the tests.

They enumerate every upward path explicitly and share no code with the
library's BFS/cache based queries.
"""

from fractions import Fraction
import random


def all_upward_paths(parents, s):
    """Every path s -> ... -> (a parentless node), as lists of nodes."""
    if not parents[s]:
        return [[s]]
    out = []
    for p in sorted(parents[s]):
        for rest in all_upward_paths(parents, p):
            out.append([s] + rest)
    return out


class BruteTaxonomy:
    def __init__(self, nodes, edges):
        ids = [n[0] for n in nodes]
        self.parents = {i: set() for i in ids}
        for c, p in edges:
            self.parents[c].add(p)
        roots = [i for i in ids if not self.parents[i]]
        if len(roots) > 1:
            self.parents["ROOT"] = set()
            for r in roots:
                self.parents[r].add("ROOT")
        self.paths = {s: all_upward_paths(self.parents, s) for s in self.parents}

    def depth(self, s):
        return max(len(p) for p in self.paths[s])

    def ancestors(self, s):
        return {n for p in self.paths[s] for n in p}

    def up_distance(self, s, anc):
        return min(p.index(anc) for p in self.paths[s] if anc in p)

    def lcs(self, a, b):
        common = self.ancestors(a) & self.ancestors(b)
        best = max(self.depth(c) for c in common)
        return min(c for c in common if self.depth(c) == best)

    def path_length(self, a, b):
        common = self.ancestors(a) & self.ancestors(b)
        return min(self.up_distance(a, c) + self.up_distance(b, c) for c in common)

    def wu_palmer(self, a, b):
        return 2.0 * self.depth(self.lcs(a, b)) / (self.depth(a) + self.depth(b))


def brute_counts(nodes, edges, lemma_of, tokens):
    """Exact (Fraction) smoothed counts: each token occurrence credits
    1/n to the full ancestor set of each of its n synsets."""
    bt = BruteTaxonomy(nodes, edges)
    counts = {s: Fraction(0) for s in bt.parents}
    for tok in tokens:
        senses = sorted(s for s, lemmas in lemma_of.items() if tok in lemmas)
        for s in senses:
            for anc in bt.ancestors(s):
                counts[anc] += Fraction(1, len(senses))
    return {s: c + 1 for s, c in counts.items()}


def random_dag(rng: random.Random, n, max_parents=3, extra_roots=0, vocab=None):
    """Random DAG on ``n`` nodes; node i>0 draws parents from nodes < i.

    ``extra_roots`` additional nodes are left parentless, which forces a
    virtual root.  Returns ``(nodes, edges)`` with one to two lemmas per
    node drawn from ``vocab`` (so words can be polysemous).
    """
    ids = [f"s{i:02d}" for i in range(n)]
    roots = {0} | set(rng.sample(range(1, n), min(extra_roots, n - 1))) if n > 1 else {0}
    edges = []
    for i in range(1, n):
        if i in roots:
            continue
        k = rng.randint(1, min(max_parents, i))
        for p in rng.sample(range(i), k):
            edges.append((ids[i], ids[p]))
    vocab = vocab or [f"w{j}" for j in range(max(2, n // 2))]
    nodes = [(sid, rng.sample(vocab, rng.randint(1, 2))) for sid in ids]
    return nodes, edges
