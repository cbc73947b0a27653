"""Lazily construct taxonomy, IC table and latent spaces from a RunConfig."""

from __future__ import annotations

import logging
from pathlib import Path

from .config import RunConfig
from .errors import BackendUnavailable, ConfigError
from .evaluation import JcnMeasure, LsaMeasure, WupMeasure
from .infocontent import ICTable, build_ic_table, load_ic_table
from .lsa import LatentSpace, build_matrix, load_corpus, load_latent_space, train
from .taxonomy import Taxonomy
from .wordnet_io import load_simple_taxonomy, load_wordnet

log = logging.getLogger(__name__)


def read_stopwords(path) -> list[str]:
    if path is None:
        return []
    return [w.strip().lower() for w in Path(path).read_text(encoding="utf-8").split() if w.strip()]


class Backends:
    def __init__(self, config: RunConfig):
        self.config = config
        self._taxonomy = None
        self._ic = None
        self._spaces: dict[str, LatentSpace] = {}

    def taxonomy(self) -> Taxonomy:
        if self._taxonomy is None:
            cfg = self.config
            if cfg.taxonomy is not None:
                self._taxonomy = load_simple_taxonomy(cfg.taxonomy)
            elif cfg.wordnet_data is not None:
                self._taxonomy = load_wordnet(cfg.wordnet_index, cfg.wordnet_data, cfg.wordnet_pos)
            else:
                raise BackendUnavailable("no taxonomy configured (set 'taxonomy' or 'wordnet_data')")
            log.info("loaded %r", self._taxonomy)
        return self._taxonomy

    def ic_table(self) -> ICTable:
        if self._ic is None:
            cfg = self.config
            if cfg.ic_table is not None:
                self._ic = load_ic_table(cfg.ic_table)
            elif cfg.ic_corpus is not None:
                self._ic = ic_from_corpus(self.taxonomy(), cfg.ic_corpus, read_stopwords(cfg.stopwords))
            else:
                raise BackendUnavailable("no IC source configured (set 'ic_corpus' or 'ic_table')")
        return self._ic

    def space(self, space_id: str = "default") -> LatentSpace:
        if space_id not in self._spaces:
            src = self.config.lsa.get(space_id)
            if src is None or (src.space is None and src.corpus is None):
                raise BackendUnavailable(f"no LSA source configured for space {space_id!r}")
            if src.space is not None:
                self._spaces[space_id] = load_latent_space(src.space)
            else:
                self._spaces[space_id] = train_space(
                    src.corpus, self.config.lsa_k, self.config.lsa_weighting,
                    self.config.seed, read_stopwords(self.config.stopwords))
        return self._spaces[space_id]

    def measure(self, name: str):
        if name == "wup":
            return WupMeasure(self.taxonomy())
        if name == "jcn":
            return JcnMeasure(self.ic_table(), self.taxonomy())
        if name == "lsa" or name.startswith("lsa:"):
            space_id = name.split(":", 1)[1] if ":" in name else "default"
            return LsaMeasure(self.space(space_id), space_id)
        raise ConfigError(f"unknown measure {name!r} (expected wup, jcn, lsa or lsa:<id>)")

    def configured_measures(self) -> list[str]:
        names = []
        if self.config.has_taxonomy():
            names.append("wup")
            if self.config.ic_table is not None or self.config.ic_corpus is not None:
                names.append("jcn")
        for space_id in sorted(self.config.lsa):
            names.append("lsa" if space_id == "default" else f"lsa:{space_id}")
        return names


def ic_from_corpus(taxonomy: Taxonomy, corpus_path, stopwords=()) -> ICTable:
    corpus = load_corpus(corpus_path)
    return build_ic_table(taxonomy, corpus.tokens(stopwords), corpus.checksum)


def train_space(corpus_path, k, weighting, seed, stopwords=()) -> LatentSpace:
    corpus = load_corpus(corpus_path)
    return train(build_matrix(corpus, weighting, stopwords), k, seed=seed)
