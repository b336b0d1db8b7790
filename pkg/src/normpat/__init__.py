"""Normal entry patterns: construction, normality oracles, canonical forms,
classification of normal 0-1 matrices and exhaustive small-order search."""

from .canon import are_equivalent, canonical_key, is_binary_perm_similar
from .constructions import circulant3, extremal, with_k_classes
from .core import BinaryMatrix, Pattern, pattern_from_labels
from .errors import CapacityError, DomainError, MalformedInputError, NormpatError
from .normality import is_normal_lemma2, is_normal_symbolic
from .search import SearchConfig, SearchReport, run_search, verify_theorem

__version__ = "0.1.0"

__all__ = [
    "BinaryMatrix",
    "CapacityError",
    "DomainError",
    "MalformedInputError",
    "NormpatError",
    "Pattern",
    "SearchConfig",
    "SearchReport",
    "are_equivalent",
    "canonical_key",
    "circulant3",
    "extremal",
    "is_binary_perm_similar",
    "is_normal_lemma2",
    "is_normal_symbolic",
    "pattern_from_labels",
    "run_search",
    "verify_theorem",
    "with_k_classes",
]
