"""Latent semantic analysis: corpus loading, term-document matrix,
truncated-SVD training and cosine similarity of word/label vectors."""

from __future__ import annotations

import hashlib
import math
import re
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

import numpy as np

from .errors import (
    EmptyCollection,
    OutOfVocabulary,
    ParseError,
    RankTooLarge,
    SingleDocument,
    UnknownTerm,
)
from .svd import SparseMatrix, SvdFactors, truncated_svd

LSA_HEADER = "#semsim-lsa v1"
WEIGHTINGS = ("raw", "log_entropy")
DEFAULT_K = 50

_WORD = re.compile(r"[^\W\d_]+")


def tokenize(text: str, stopwords: Iterable[str] | None = None) -> list[str]:
    """Lowercased alphabetic runs of length >= 2, minus optional stopwords."""
    tokens = [t for t in _WORD.findall(text.lower()) if len(t) >= 2]
    if stopwords:
        stop = {w.lower() for w in stopwords}
        tokens = [t for t in tokens if t not in stop]
    return tokens


@dataclass(frozen=True)
class DocumentCollection:
    docs: tuple[tuple[str, str], ...]

    def __post_init__(self):
        docs = tuple((str(i), str(t)) for i, t in self.docs)
        ids = [i for i, _ in docs]
        if len(set(ids)) != len(ids):
            dup = next(i for i in ids if ids.count(i) > 1)
            raise ValueError(f"duplicate document id {dup!r}")
        object.__setattr__(self, "docs", docs)

    def __len__(self):
        return len(self.docs)

    @property
    def checksum(self) -> str:
        h = hashlib.sha256()
        for doc_id, text in self.docs:
            h.update(doc_id.encode("utf-8") + b"\0" + text.encode("utf-8") + b"\0")
        return h.hexdigest()

    def tokens(self, stopwords=None) -> list[str]:
        """All tokens of all documents, in order."""
        return [tok for _, text in self.docs for tok in tokenize(text, stopwords)]


def parse_corpus_text(text: str, source="<string>") -> DocumentCollection:
    """Split a ``%%DOC <id>`` separated file into documents."""
    docs: list[tuple[str, list[str]]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if line.startswith("%%DOC"):
            parts = line.split(None, 1)
            if len(parts) != 2 or parts[0] != "%%DOC":
                raise ParseError("separator needs a document id", path=source, line=lineno)
            docs.append((parts[1].strip(), []))
        elif docs:
            docs[-1][1].append(line)
        elif line.strip():
            raise ParseError("text before the first %%DOC separator", path=source, line=lineno)
    try:
        return DocumentCollection(tuple((i, "\n".join(body)) for i, body in docs))
    except ValueError as exc:
        raise ParseError(str(exc), path=source) from None


def load_corpus(path) -> DocumentCollection:
    """Load a directory of ``.txt`` files (doc id = file name) or a single
    ``%%DOC``-separated file.  A file without separators is one document."""
    path = Path(path)
    if path.is_dir():
        files = sorted(p for p in path.iterdir() if p.suffix == ".txt" and p.is_file())
        return DocumentCollection(tuple((p.name, p.read_text(encoding="utf-8")) for p in files))
    if not path.exists():
        raise OSError(f"no such corpus: {path}")
    text = path.read_text(encoding="utf-8")
    if not any(line.startswith("%%DOC") for line in text.splitlines()):
        return DocumentCollection(((path.name, text),))
    return parse_corpus_text(text, source=str(path))


@dataclass(frozen=True, eq=False)
class TermDocMatrix:
    vocabulary: tuple[str, ...]
    doc_ids: tuple[str, ...]
    matrix: SparseMatrix
    weighting: str
    corpus_checksum: str = ""


def build_matrix(dc: DocumentCollection, weighting: str = "log_entropy", stopwords=None) -> TermDocMatrix:
    """Rows are terms in first-occurrence order, columns are documents.

    ``log_entropy`` weights an entry as ``log2(1 + tf) * (1 - H_t / log2(n))``
    where ``H_t`` is the entropy of the term's distribution over the n
    documents.
    """
    if weighting not in WEIGHTINGS:
        raise ValueError(f"unknown weighting {weighting!r}; expected one of {WEIGHTINGS}")
    if len(dc) == 0:
        raise EmptyCollection("document collection is empty")
    if len(dc) == 1:
        raise SingleDocument("LSA needs at least two documents")
    vocab: dict[str, int] = {}
    doc_counts = []
    for _, text in dc.docs:
        tf = Counter()
        for tok in tokenize(text, stopwords):
            vocab.setdefault(tok, len(vocab))
            tf[tok] += 1
        doc_counts.append(tf)
    if not vocab:
        raise EmptyCollection("no tokens in any document")

    rows, cols, vals = [], [], []
    for j, tf in enumerate(doc_counts):
        for term, c in tf.items():
            rows.append(vocab[term])
            cols.append(j)
            vals.append(float(c))
    rows_a, cols_a = np.array(rows), np.array(cols)
    vals_a = np.array(vals)
    if weighting == "log_entropy":
        n = len(dc)
        gf = np.bincount(rows_a, weights=vals_a, minlength=len(vocab))
        p = vals_a / gf[rows_a]
        ent = np.bincount(rows_a, weights=-p * np.log2(p), minlength=len(vocab))
        g = 1.0 - ent / math.log2(n)
        g[np.abs(g) <= 1e-12] = 0.0
        vals_a = np.log2(1.0 + vals_a) * g[rows_a]
    matrix = SparseMatrix(len(vocab), len(dc), rows_a, cols_a, vals_a)
    return TermDocMatrix(tuple(vocab), tuple(i for i, _ in dc.docs), matrix, weighting, dc.checksum)


def default_k(rows: int, cols: int) -> int:
    p = min(rows, cols)
    return DEFAULT_K if DEFAULT_K < p else max(1, p - 1)


@dataclass(frozen=True, eq=False)
class LatentSpace:
    """Word vectors (rows of U*S) for a trained or reloaded space."""

    vocabulary: tuple[str, ...]
    vectors: np.ndarray
    weighting: str
    corpus_checksum: str
    factors: SvdFactors | None = None
    _index: dict = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {t: i for i, t in enumerate(self.vocabulary)})
        self.vectors.setflags(write=False)

    @property
    def k(self) -> int:
        return self.vectors.shape[1]

    @property
    def singular_values(self):
        return None if self.factors is None else self.factors.s

    def __contains__(self, term):
        return term in self._index

    def header(self) -> str:
        return (f"{LSA_HEADER} k={self.k} weighting={self.weighting} "
                f"corpus={self.corpus_checksum} terms={len(self.vocabulary)}")

    def save(self, path) -> None:
        Path(path).write_text(dump_latent_space(self), encoding="utf-8")


def train(m: TermDocMatrix, k: int | None = None, seed: int = 42, tol: float = 1e-8,
          max_iter: int = 300) -> LatentSpace:
    rows, cols = m.matrix.shape
    if k is None:
        k = default_k(rows, cols)
    if not 1 <= k <= min(rows, cols):
        raise RankTooLarge(f"k={k} outside 1..{min(rows, cols)}")
    factors = truncated_svd(m.matrix, k, tol=tol, max_iter=max_iter, seed=seed)
    vectors = np.ascontiguousarray(factors.u * factors.s)
    return LatentSpace(m.vocabulary, vectors, m.weighting, m.corpus_checksum, factors)


def word_vector(ls: LatentSpace, term: str) -> np.ndarray:
    try:
        return ls.vectors[ls._index[term]]
    except KeyError:
        raise UnknownTerm(term) from None


def label_vector(ls: LatentSpace, label: str) -> np.ndarray:
    """Mean of the word vectors of the label's in-vocabulary tokens."""
    rows = [ls._index[t] for t in tokenize(label) if t in ls._index]
    if not rows:
        raise OutOfVocabulary(label)
    return ls.vectors[rows].mean(axis=0)


def cosine(x: np.ndarray, y: np.ndarray) -> float:
    nx, ny = np.linalg.norm(x), np.linalg.norm(y)
    if nx == 0.0 or ny == 0.0:
        return 0.0
    return float(np.clip(np.dot(x, y) / (nx * ny), -1.0, 1.0))


def lsa_similarity(ls: LatentSpace, label1: str, label2: str) -> float:
    v1 = label_vector(ls, label1)
    v2 = label_vector(ls, label2)
    return cosine(v1, v2)


# ------------------------------------------------------------ persistence

def dump_latent_space(ls: LatentSpace) -> str:
    lines = [ls.header()]
    lines.extend(ls.vocabulary)
    lines.extend(" ".join(format(float(x), ".17g") for x in row) for row in ls.vectors)
    return "\n".join(lines) + "\n"


def load_latent_space(path) -> LatentSpace:
    path = Path(path)
    lines = path.read_text(encoding="utf-8").splitlines()
    if not lines or not lines[0].startswith(LSA_HEADER + " "):
        raise ParseError(f"missing {LSA_HEADER!r} header", path=path, line=1)
    meta = dict(kv.split("=", 1) for kv in lines[0][len(LSA_HEADER):].split() if "=" in kv)
    try:
        k = int(meta["k"])
    except (KeyError, ValueError):
        raise ParseError("header lacks k=<int>", path=path, line=1) from None
    body = lines[1:]
    if "terms" in meta:
        n = int(meta["terms"])
    else:
        if len(body) % 2:
            raise ParseError("odd number of body lines", path=path)
        n = len(body) // 2
    if len(body) != 2 * n:
        raise ParseError(f"expected {2 * n} body lines, found {len(body)}", path=path)
    vocab = tuple(body[:n])
    vecs = np.empty((n, k))
    for i, line in enumerate(body[n:]):
        parts = line.split()
        if len(parts) != k:
            raise ParseError(f"vector has {len(parts)} values, expected {k}", path=path, line=n + i + 2)
        try:
            vecs[i] = [float(x) for x in parts]
        except ValueError:
            raise ParseError("non-numeric vector entry", path=path, line=n + i + 2) from None
    return LatentSpace(vocab, vecs, meta.get("weighting", ""), meta.get("corpus", ""))
