"""Semantic similarity toolkit.

Wu-Palmer and Jiang-Conrath measures over a hypernym taxonomy, latent
semantic analysis on a truncated SVD, and a threshold-sweep evaluator
reporting recall, precision and F-measure against reference alignments.
"""

from importlib import resources

from .errors import SemsimError
from .evaluation import (
    ConceptSet,
    EvaluationReport,
    JcnMeasure,
    LsaMeasure,
    ReferenceAlignment,
    WupMeasure,
    evaluate,
    pairwise_similarity,
    sweep,
)
from .infocontent import build_ic_table, count_frequencies, jcn_similarity
from .kernels import BACKEND as KERNEL_BACKEND
from .lsa import build_matrix, lsa_similarity, tokenize, train
from .taxonomy import Taxonomy, build_taxonomy
from .wordnet_io import load_simple_taxonomy, load_wordnet

__version__ = "0.1.0"


def data_path(*parts) -> str:
    """Filesystem path of a bundled fixture, e.g. ``data_path("toy", "set_a.txt")``."""
    return str(resources.files(__name__).joinpath("data", *parts))


__all__ = [
    "SemsimError",
    "Taxonomy",
    "build_taxonomy",
    "load_simple_taxonomy",
    "load_wordnet",
    "count_frequencies",
    "build_ic_table",
    "jcn_similarity",
    "tokenize",
    "build_matrix",
    "train",
    "lsa_similarity",
    "ConceptSet",
    "ReferenceAlignment",
    "EvaluationReport",
    "WupMeasure",
    "JcnMeasure",
    "LsaMeasure",
    "pairwise_similarity",
    "sweep",
    "evaluate",
    "data_path",
    "KERNEL_BACKEND",
    "__version__",
]
