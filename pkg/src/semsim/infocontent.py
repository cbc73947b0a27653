"""Corpus frequencies, information content and Jiang-Conrath similarity.

IC uses the natural log.  Every synset count gets add-one smoothing, so
IC values are always finite.  IC values are rounded to multiples of
``IC_QUANTUM`` (2**-40 nats): sums and differences of such values are
exact in double precision, which makes Jiang-Conrath distances along a
chain add up exactly.
"""

from __future__ import annotations

import hashlib
import math
import warnings
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from .errors import EmptyCorpusWarning, ParseError, UnknownSynset
from .taxonomy import Taxonomy, normalize_lemma

IC_HEADER = "#semsim-ic v1"
LOG_BASE = "nat"
SMOOTHING = "add1"
IC_QUANTUM = 2.0**-40


@dataclass(frozen=True)
class FrequencyTable:
    counts: dict[str, float]
    total: float
    resolved_tokens: int = 0

    @property
    def empty(self) -> bool:
        return self.resolved_tokens == 0


def count_frequencies(t: Taxonomy, corpus: Iterable[str]) -> FrequencyTable:
    """Propagate token credit up the hypernym graph, then add one to every synset.

    A token matching ``n`` synsets gives ``1/n`` to each of them.  The credit
    reaches every ancestor exactly once, even under multiple inheritance.
    Tokens are grouped by type first, and the sums run over a fixed order,
    so the totals do not depend on token order.
    """
    tally = Counter(normalize_lemma(tok) for tok in corpus)
    direct: dict[str, float] = {}
    resolved = 0
    for word in sorted(tally):
        ids = t.lemma_index.get(word)
        if not ids:
            continue
        n = tally[word]
        resolved += n
        share = n / len(ids)
        for sid in sorted(ids):
            direct[sid] = direct.get(sid, 0.0) + share

    counts = {sid: 0.0 for sid in t.synsets}
    for sid in sorted(direct):
        credit = direct[sid]
        for anc in sorted(t.ancestors(sid)):
            counts[anc] += credit
    for sid in counts:
        counts[sid] += 1.0
    if resolved == 0:
        warnings.warn("no corpus token resolved to a synset; IC table is smoothing-only",
                      EmptyCorpusWarning, stacklevel=2)
    return FrequencyTable(counts, counts[t.root], resolved)


def information_content(ft: FrequencyTable, s: str) -> float:
    try:
        count = ft.counts[s]
    except KeyError:
        raise UnknownSynset(f"unknown synset: {s!r}") from None
    return round(-math.log(count / ft.total) / IC_QUANTUM) * IC_QUANTUM


@dataclass(frozen=True)
class ICTable:
    ic: dict[str, float]
    taxonomy_ref: str
    corpus_ref: str
    counts: dict[str, float] | None = None

    def __getitem__(self, sid):
        try:
            return self.ic[sid]
        except KeyError:
            raise UnknownSynset(f"synset not in IC table: {sid!r}") from None

    def header(self) -> str:
        return f"{IC_HEADER} taxonomy={self.taxonomy_ref} corpus={self.corpus_ref} log={LOG_BASE} smoothing={SMOOTHING}"

    def save(self, path) -> None:
        Path(path).write_text(dump_ic_table(self), encoding="utf-8")


def build_ic_table(t: Taxonomy, corpus: Iterable[str], corpus_ref: str | None = None) -> ICTable:
    tokens = list(corpus)
    if corpus_ref is None:
        corpus_ref = hashlib.sha256("\n".join(tokens).encode("utf-8")).hexdigest()
    ft = count_frequencies(t, tokens)
    ic = {sid: information_content(ft, sid) for sid in t.synsets}
    return ICTable(ic, t.checksum, corpus_ref, dict(ft.counts))


def jiang_conrath_distance(ict: ICTable, t: Taxonomy, a: str, b: str) -> float:
    if a == b:
        t.depth(a)
        ict[a]
        return 0.0
    lcs = t.lcs(a, b)
    return max(ict[a] + ict[b] - 2.0 * ict[lcs], 0.0)


def jcn_similarity(ict: ICTable, t: Taxonomy, a: str, b: str) -> float:
    return 1.0 / (1.0 + jiang_conrath_distance(ict, t, a, b))


def word_similarity_jcn(ict: ICTable, t: Taxonomy, w1: str, w2: str) -> float:
    s1, s2 = t.synsets_for(w1), t.synsets_for(w2)
    return max(jcn_similarity(ict, t, a, b) for a in s1 for b in s2)


# ------------------------------------------------------------------ TSV format

def dump_ic_table(ict: ICTable) -> str:
    lines = [ict.header(), "synset_id\tcount\tic"]
    for sid in sorted(ict.ic):
        count = ict.counts.get(sid, float("nan")) if ict.counts else float("nan")
        lines.append(f"{sid}\t{count!r}\t{ict.ic[sid]!r}")
    return "\n".join(lines) + "\n"


def load_ic_table(path) -> ICTable:
    path = Path(path)
    lines = path.read_text(encoding="utf-8").splitlines()
    if not lines or not lines[0].startswith(IC_HEADER):
        raise ParseError(f"missing {IC_HEADER!r} header", path=path, line=1)
    meta = dict(kv.split("=", 1) for kv in lines[0][len(IC_HEADER):].split() if "=" in kv)
    if meta.get("log", LOG_BASE) != LOG_BASE or meta.get("smoothing", SMOOTHING) != SMOOTHING:
        raise ParseError(f"unsupported IC table options {meta}", path=path, line=1)
    ic, counts = {}, {}
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip() or line.startswith("synset_id\t") or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise ParseError("expected 3 tab-separated fields", path=path, line=lineno)
        try:
            counts[parts[0]] = float(parts[1])
            ic[parts[0]] = float(parts[2])
        except ValueError:
            raise ParseError("non-numeric count or ic", path=path, line=lineno) from None
    return ICTable(ic, meta.get("taxonomy", ""), meta.get("corpus", ""), counts)
