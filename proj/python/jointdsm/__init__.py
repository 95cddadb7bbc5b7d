"""Count-based distributional semantic models over dependency contexts."""

from jointdsm._core import (
    CountMatrix,
    Embedding,
    JdsmError,
    WeightedMatrix,
    cosine,
    count_corpus,
    evaluate,
    fisher_r_to_z,
    load_counts,
    load_dataset,
    load_embedding,
    load_weighted,
    ppmi,
    save_counts,
    save_embedding,
    save_weighted,
    select_top,
    spearman,
    truncated_svd,
)

__all__ = [
    "CountMatrix",
    "Embedding",
    "JdsmError",
    "WeightedMatrix",
    "cosine",
    "count_corpus",
    "evaluate",
    "fisher_r_to_z",
    "load_counts",
    "load_dataset",
    "load_embedding",
    "load_weighted",
    "ppmi",
    "save_counts",
    "save_embedding",
    "save_weighted",
    "select_top",
    "spearman",
    "truncated_svd",
]

__version__ = "0.1.0"
