"""Hypernym taxonomy with depth, LCS, path length and Wu-Palmer queries.

Depth counts nodes: the root has depth 1.  Only hypernym edges are kept.
"""

from __future__ import annotations

import hashlib
import logging
import re
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

from .errors import CycleDetected, DanglingEdge, DuplicateSynsetId, UnknownSynset, UnknownWord

log = logging.getLogger(__name__)

VIRTUAL_ROOT = "ROOT"
VIRTUAL_ROOT_LEMMA = "*root*"


def normalize_lemma(word: str) -> str:
    """Lowercase and collapse underscores/whitespace to single spaces."""
    return " ".join(word.replace("_", " ").lower().split())


@dataclass(frozen=True)
class Synset:
    id: str
    lemmas: tuple[str, ...]
    gloss: str | None = None
    parents: frozenset[str] = field(default_factory=frozenset)
    children: frozenset[str] = field(default_factory=frozenset)


class Resolution(NamedTuple):
    """Outcome of resolving a concept label to synsets."""

    label: str
    matched: str
    synsets: tuple[str, ...]
    fallback: bool


class Taxonomy:
    """Immutable hypernym DAG with a single root.

    Build with :func:`build_taxonomy`.  Query methods are pure; the
    ancestor cache is filled lazily but never changes results.
    """

    def __init__(self, synsets: dict[str, Synset], root: str):
        self.synsets = synsets
        self.root = root
        index: dict[str, set[str]] = {}
        for sid, syn in synsets.items():
            for lemma in syn.lemmas:
                index.setdefault(lemma, set()).add(sid)
        self.lemma_index = {w: frozenset(ids) for w, ids in index.items()}
        self._depth = self._compute_depths()
        self._up_cache: dict[str, dict[str, int]] = {}

    def __len__(self):
        return len(self.synsets)

    def __contains__(self, sid):
        return sid in self.synsets

    def __repr__(self):
        return f"Taxonomy({len(self)} synsets, root={self.root!r})"

    def _compute_depths(self):
        # longest path from the root, so every proper ancestor is strictly
        # shallower than its descendants (see ``depth``)
        pending = {sid: len(syn.parents) for sid, syn in self.synsets.items()}
        depth = {self.root: 1}
        queue = deque([self.root])
        while queue:
            sid = queue.popleft()
            for child in self.synsets[sid].children:
                depth[child] = max(depth.get(child, 0), depth[sid] + 1)
                pending[child] -= 1
                if pending[child] == 0:
                    queue.append(child)
        return depth

    def _check(self, sid):
        if sid not in self.synsets:
            raise UnknownSynset(f"unknown synset: {sid!r}")

    # -- structural queries -------------------------------------------------

    def upward_distances(self, sid: str) -> dict[str, int]:
        """Map every ancestor of ``sid`` (itself included) to its minimum
        number of hypernym edges from ``sid``."""
        self._check(sid)
        cached = self._up_cache.get(sid)
        if cached is not None:
            return cached
        dist = {sid: 0}
        queue = deque([sid])
        while queue:
            cur = queue.popleft()
            for parent in self.synsets[cur].parents:
                if parent not in dist:
                    dist[parent] = dist[cur] + 1
                    queue.append(parent)
        if len(self._up_cache) > 100_000:
            self._up_cache.clear()
        self._up_cache[sid] = dist
        return dist

    def ancestors(self, sid: str) -> frozenset[str]:
        """Reflexive-transitive hypernyms of ``sid``."""
        return frozenset(self.upward_distances(sid))

    def depth(self, sid: str) -> int:
        """Number of nodes on the longest hypernym path from ``sid`` to the
        root (root = 1).  On trees this is the ordinary node depth."""
        self._check(sid)
        return self._depth[sid]

    def max_depth(self) -> int:
        return max(self._depth.values())

    def lcs(self, a: str, b: str) -> str:
        """Deepest common subsumer; lexicographically smallest id on ties."""
        common = self.upward_distances(a).keys() & self.upward_distances(b).keys()
        return min(common, key=lambda s: (-self._depth[s], s))

    def path_length(self, a: str, b: str) -> int:
        up_a = self.upward_distances(a)
        up_b = self.upward_distances(b)
        return min(up_a[c] + up_b[c] for c in up_a.keys() & up_b.keys())

    def wu_palmer(self, a: str, b: str) -> float:
        return 2.0 * self.depth(self.lcs(a, b)) / (self.depth(a) + self.depth(b))

    # -- word level -----------------------------------------------------------

    def resolve(self, label: str) -> Resolution:
        """Map a concept label to synsets.

        Tries the whole (normalized) label first; a multiword label that
        is not a lemma falls back to its last token.
        """
        key = normalize_lemma(label)
        hit = self.lemma_index.get(key)
        if hit:
            return Resolution(label, key, tuple(sorted(hit)), False)
        tokens = key.split()
        if len(tokens) > 1:
            head = tokens[-1]
            hit = self.lemma_index.get(head)
            if hit:
                log.info("label %r not a lemma; using head word %r", label, head)
                return Resolution(label, head, tuple(sorted(hit)), True)
        raise UnknownWord(label)

    def synsets_for(self, word: str) -> tuple[str, ...]:
        return self.resolve(word).synsets

    def word_similarity_wup(self, w1: str, w2: str) -> float:
        s1, s2 = self.synsets_for(w1), self.synsets_for(w2)
        return max(self.wu_palmer(a, b) for a in s1 for b in s2)

    # -- identity ---------------------------------------------------------------

    def edges(self) -> list[tuple[str, str]]:
        return sorted((c, p) for c, syn in self.synsets.items() for p in syn.parents)

    def serialize(self) -> str:
        """Canonical simple-format text (see ``wordnet_io``)."""
        from .wordnet_io import dump_simple_taxonomy

        return dump_simple_taxonomy(self)

    @property
    def checksum(self) -> str:
        cached = getattr(self, "_checksum", None)
        if cached is None:
            cached = hashlib.sha256(self.serialize().encode("utf-8")).hexdigest()
            self._checksum = cached
        return cached


def build_taxonomy(
    nodes: Iterable[tuple],
    edges: Iterable[tuple[str, str]],
) -> Taxonomy:
    """Validate nodes and (child, parent) edges into a :class:`Taxonomy`.

    ``nodes`` holds ``(id, lemmas)`` or ``(id, lemmas, gloss)`` tuples.
    A virtual root (id ``ROOT``) is added above multiple parentless
    synsets.
    """
    info: dict[str, tuple[tuple[str, ...], str | None]] = {}
    for node in nodes:
        sid, lemmas = node[0], node[1]
        gloss = node[2] if len(node) > 2 else None
        if not sid or not isinstance(sid, str) or re.search(r"\s", sid):
            raise ValueError(f"invalid synset id {sid!r}")
        if sid in info:
            raise DuplicateSynsetId(f"duplicate synset id: {sid!r}")
        if isinstance(lemmas, str):
            lemmas = [lemmas]
        norm = tuple(dict.fromkeys(normalize_lemma(w) for w in lemmas if normalize_lemma(w)))
        if not norm:
            raise ValueError(f"synset {sid!r} has no lemmas")
        info[sid] = (norm, gloss)

    parents: dict[str, set[str]] = {sid: set() for sid in info}
    children: dict[str, set[str]] = {sid: set() for sid in info}
    for child, parent in edges:
        for end in (child, parent):
            if end not in info:
                raise DanglingEdge(f"edge ({child!r}, {parent!r}) references undeclared synset {end!r}", end)
        if child == parent:
            raise CycleDetected(f"self-loop on {child!r}")
        parents[child].add(parent)
        children[parent].add(child)

    # Kahn's algorithm from the roots down; leftovers sit on a cycle
    indeg = {sid: len(ps) for sid, ps in parents.items()}
    queue = deque(sorted(s for s, d in indeg.items() if d == 0))
    seen = 0
    while queue:
        sid = queue.popleft()
        seen += 1
        for c in children[sid]:
            indeg[c] -= 1
            if indeg[c] == 0:
                queue.append(c)
    if seen != len(info):
        stuck = sorted(s for s, d in indeg.items() if d > 0)
        raise CycleDetected(f"hypernym edges contain a cycle through {stuck[:5]}")
    if not info:
        raise ValueError("taxonomy needs at least one synset")

    roots = sorted(s for s, ps in parents.items() if not ps)
    if len(roots) == 1:
        root = roots[0]
    else:
        if VIRTUAL_ROOT in info:
            raise DuplicateSynsetId(f"cannot insert virtual root: id {VIRTUAL_ROOT!r} already used")
        root = VIRTUAL_ROOT
        info[root] = ((VIRTUAL_ROOT_LEMMA,), None)
        parents[root] = set()
        children[root] = set(roots)
        for r in roots:
            parents[r].add(root)

    synsets = {
        sid: Synset(sid, lemmas, gloss, frozenset(parents[sid]), frozenset(children[sid]))
        for sid, (lemmas, gloss) in info.items()
    }
    return Taxonomy(synsets, root)
