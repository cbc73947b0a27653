"""Threshold-sweep evaluation of similarity measures against an expert
reference alignment.

Pipeline: score the full cross product of two concept sets, keep pairs
scoring at least ``t``, intersect with the reference pairs and report
recall, precision and F-measure for every ``t`` of the sweep.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from .errors import BackendUnavailable, BadSweepConfig, EmptyReference, OutOfVocabulary, ParseError, UnknownWord
from .infocontent import ICTable, LOG_BASE, SMOOTHING, word_similarity_jcn
from .lsa import LatentSpace, lsa_similarity
from .taxonomy import Taxonomy

DEFAULT_SWEEP = (0.70, 1.00, 0.05)
CSV_HEADER = ("threshold", "zeta", "delta", "recall", "precision", "f_measure")


# ------------------------------------------------------------------ inputs

@dataclass(frozen=True)
class ConceptSet:
    domain_name: str
    concepts: tuple[str, ...]

    def __post_init__(self):
        concepts = tuple(self.concepts)
        if not concepts:
            raise ValueError(f"concept set {self.domain_name!r} is empty")
        seen = set()
        for c in concepts:
            if c in seen:
                raise ValueError(f"duplicate concept {c!r} in {self.domain_name!r}")
            seen.add(c)
        object.__setattr__(self, "concepts", concepts)

    def __len__(self):
        return len(self.concepts)

    def __iter__(self):
        return iter(self.concepts)

    def __contains__(self, label):
        return label in self.concepts


def load_concept_set(path, domain_name: str | None = None) -> ConceptSet:
    path = Path(path)
    labels, seen = [], set()
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        label = line.strip()
        if not label or label.startswith("#"):
            continue
        if label in seen:
            raise ParseError(f"duplicate concept {label!r}", path=path, line=lineno)
        seen.add(label)
        labels.append(label)
    if not labels:
        raise ParseError("no concepts", path=path)
    return ConceptSet(domain_name or path.stem, tuple(labels))


@dataclass(frozen=True)
class ReferenceAlignment:
    pairs: frozenset[tuple[str, str]]

    @property
    def beta(self) -> int:
        return len(self.pairs)

    def validate(self, set_a: ConceptSet, set_b: ConceptSet) -> None:
        for a, b in sorted(self.pairs):
            if a not in set_a:
                raise ValueError(f"reference concept {a!r} not in {set_a.domain_name!r}")
            if b not in set_b:
                raise ValueError(f"reference concept {b!r} not in {set_b.domain_name!r}")


def load_reference(path, set_a: ConceptSet | None = None, set_b: ConceptSet | None = None) -> ReferenceAlignment:
    path = Path(path)
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != ["concept_a", "concept_b"]:
            raise ParseError("header must be 'concept_a,concept_b'", path=path, line=1)
        pairs = set()
        for lineno, rec in enumerate(reader, start=2):
            if not rec or all(not f.strip() for f in rec):
                continue
            if len(rec) != 2:
                raise ParseError("expected two fields", path=path, line=lineno)
            pair = (rec[0].strip(), rec[1].strip())
            if pair in pairs:
                raise ParseError(f"duplicate pair {pair}", path=path, line=lineno)
            for label, cs in zip(pair, (set_a, set_b)):
                if cs is not None and label not in cs:
                    raise ParseError(f"concept {label!r} not in {cs.domain_name!r}", path=path, line=lineno)
            pairs.add(pair)
    return ReferenceAlignment(frozenset(pairs))


# ---------------------------------------------------------------- measures

class WupMeasure:
    tag = "wup"

    def __init__(self, taxonomy: Taxonomy | None):
        self.taxonomy = taxonomy

    @property
    def ready(self):
        return self.taxonomy is not None

    def score(self, a, b):
        return self.taxonomy.word_similarity_wup(a, b)

    def metadata(self):
        return {
            "measure": self.tag,
            "normalization": "2*depth(lcs)/(depth(a)+depth(b)); depth counts nodes (root=1); max over sense pairs",
            "taxonomy_checksum": self.taxonomy.checksum,
            "taxonomy_source_checksum": getattr(self.taxonomy, "source_checksum", None),
        }


class JcnMeasure:
    tag = "jcn"

    def __init__(self, ic: ICTable | None, taxonomy: Taxonomy | None):
        self.ic = ic
        self.taxonomy = taxonomy

    @property
    def ready(self):
        return self.ic is not None and self.taxonomy is not None

    def score(self, a, b):
        return word_similarity_jcn(self.ic, self.taxonomy, a, b)

    def metadata(self):
        return {
            "measure": self.tag,
            "normalization": "1/(1+(ic(a)+ic(b)-2*ic(lcs))); max over sense pairs",
            "log_base": LOG_BASE,
            "smoothing": SMOOTHING,
            "taxonomy_checksum": self.taxonomy.checksum,
            "ic_taxonomy_ref": self.ic.taxonomy_ref,
            "corpus_checksum": self.ic.corpus_ref,
        }


class LsaMeasure:
    def __init__(self, space: LatentSpace | None, space_id: str = "default"):
        self.space = space
        self.space_id = space_id
        self.tag = f"lsa:{space_id}"

    @property
    def ready(self):
        return self.space is not None

    def score(self, a, b):
        return lsa_similarity(self.space, a, b)

    def metadata(self):
        return {
            "measure": self.tag,
            "normalization": "raw cosine of mean U*S label vectors, range [-1, 1]",
            "k": self.space.k,
            "weighting": self.space.weighting,
            "corpus_checksum": self.space.corpus_checksum,
        }


# ------------------------------------------------------------------- steps

@dataclass
class SimilarityMatrix:
    set_a: ConceptSet
    set_b: ConceptSet
    measure: str
    scores: dict[tuple[str, str], float]
    missing: dict[tuple[str, str], str] = field(default_factory=dict)
    metadata: dict = field(default_factory=dict)

    def score(self, a, b):
        return self.scores.get((a, b))


def pairwise_similarity(a: ConceptSet, b: ConceptSet, measure) -> SimilarityMatrix:
    """Score the full cross product; unresolvable pairs go to ``missing``."""
    if measure is None or not getattr(measure, "ready", False):
        tag = getattr(measure, "tag", "?")
        raise BackendUnavailable(f"measure {tag!r} is not initialized")
    scores, missing = {}, {}
    for ca in a:
        for cb in b:
            try:
                value = float(measure.score(ca, cb))
            except (UnknownWord, OutOfVocabulary) as exc:
                missing[(ca, cb)] = str(exc)
                continue
            if not math.isfinite(value):
                missing[(ca, cb)] = "non-finite score"
                continue
            scores[(ca, cb)] = value
    return SimilarityMatrix(a, b, measure.tag, scores, missing, measure.metadata())


def filter_threshold(m: SimilarityMatrix, t: float) -> set[tuple[str, str]]:
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"threshold {t} outside [0, 1]")
    return {pair for pair, s in m.scores.items() if s >= t}


def compare(predicted, reference: ReferenceAlignment) -> int:
    return len(set(predicted) & reference.pairs)


def metrics(delta: int, beta: int, zeta: int) -> tuple[float, float, float]:
    """Recall, precision and F-measure (harmonic mean; 0 if either is 0)."""
    if beta <= 0:
        raise EmptyReference("reference alignment is empty")
    if delta < 0 or delta > min(beta, zeta):
        raise ValueError(f"delta={delta} inconsistent with beta={beta}, zeta={zeta}")
    recall = delta / beta
    precision = delta / zeta if zeta > 0 else 0.0
    if recall == 0.0 or precision == 0.0:
        return recall, precision, 0.0
    return recall, precision, 2.0 / ((1.0 / recall) + (1.0 / precision))


def thresholds(start: float = DEFAULT_SWEEP[0], end: float = DEFAULT_SWEEP[1],
               step: float = DEFAULT_SWEEP[2]) -> list[float]:
    """Thresholds by integer step counting, rounded to 12 decimals so
    that e.g. 0.7 + 2*0.05 is exactly the float 0.8."""
    if not (math.isfinite(start) and math.isfinite(end) and math.isfinite(step)):
        raise BadSweepConfig("sweep bounds must be finite")
    if step <= 0:
        raise BadSweepConfig(f"step must be positive, got {step}")
    if start > end:
        raise BadSweepConfig(f"start {start} exceeds end {end}")
    if start < 0.0 or end > 1.0:
        raise BadSweepConfig(f"sweep [{start}, {end}] outside [0, 1]")
    n = math.floor((end - start) / step + 1e-9)
    return [round(start + i * step, 12) for i in range(n + 1)]


@dataclass(frozen=True)
class ReportRow:
    threshold: float
    zeta: int
    delta: int
    recall: float
    precision: float
    f_measure: float


@dataclass
class EvaluationReport:
    rows: list[ReportRow]
    beta: int
    metadata: dict = field(default_factory=dict)

    def best_row(self) -> ReportRow:
        """Highest F-measure; lowest threshold among ties."""
        return max(self.rows, key=lambda r: (r.f_measure, -r.threshold))

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write(",".join(CSV_HEADER) + "\n")
        for r in self.rows:
            buf.write(f"{r.threshold:.6f},{r.zeta},{r.delta},{r.recall:.6f},{r.precision:.6f},{r.f_measure:.6f}\n")
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps(self.metadata, indent=2, sort_keys=True) + "\n"

    def write(self, directory, stem: str) -> tuple[Path, Path]:
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        csv_path = directory / f"{stem}.csv"
        json_path = directory / f"{stem}.json"
        csv_path.write_text(self.to_csv(), encoding="utf-8")
        json_path.write_text(self.to_json(), encoding="utf-8")
        return csv_path, json_path


def sweep(m: SimilarityMatrix, ref: ReferenceAlignment, start: float = DEFAULT_SWEEP[0],
          end: float = DEFAULT_SWEEP[1], step: float = DEFAULT_SWEEP[2]) -> EvaluationReport:
    ts = thresholds(start, end, step)
    beta = ref.beta
    if beta == 0:
        raise EmptyReference("reference alignment is empty")
    rows = []
    for t in ts:
        predicted = filter_threshold(m, t)
        zeta = len(predicted)
        delta = compare(predicted, ref)
        rows.append(ReportRow(t, zeta, delta, *metrics(delta, beta, zeta)))
    meta = dict(m.metadata)
    meta.update(
        measure=m.measure,
        domain_a=m.set_a.domain_name,
        domain_b=m.set_b.domain_name,
        size_a=len(m.set_a),
        size_b=len(m.set_b),
        beta=beta,
        missing_pairs=len(m.missing),
        filter_rule="score >= threshold",
        direction="(concept_a from set_a, concept_b from set_b)",
        f_measure_zero_guard="f = 0 when recall or precision is 0; precision = 0 when zeta = 0",
        sweep={"start": start, "end": end, "step": step, "thresholds": ts},
        timestamp=datetime.now(timezone.utc).isoformat(timespec="seconds"),
    )
    return EvaluationReport(rows, beta, meta)


def evaluate(a: ConceptSet, b: ConceptSet, ref: ReferenceAlignment, measure, **sweep_config) -> EvaluationReport:
    """Steps one to five in one call."""
    ref.validate(a, b)
    return sweep(pairwise_similarity(a, b, measure), ref, **sweep_config)
