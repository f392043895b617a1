"""Spectral topic estimation, topic/journal ranking, and bibliometrics.

The heavy lifting lives in the compiled extension; this package re-exports
its operations. Matrices are numpy arrays with the same orientation as the
CLI file formats: documents are columns of D and W, words are rows of D
and A.
"""

from topicrank._core import (
    TopicRankError,
    cross_topic_graph,
    dominant_topic,
    estimate_topic_matrix,
    estimate_weights_ridge,
    estimate_weights_wls,
    fit_export_scores,
    fit_stigler,
    frequent_anchor_words,
    l1_error,
    normalization_matrix,
    pagerank,
    random_topic_matrix,
    random_weights,
    sample_citations,
    sample_counts,
    select_k_scree,
    sleeping_beauty,
    topic_loadings,
    tr_score,
    w_error,
)

__all__ = [
    "TopicRankError",
    "cross_topic_graph",
    "dominant_topic",
    "estimate_topic_matrix",
    "estimate_weights_ridge",
    "estimate_weights_wls",
    "fit_export_scores",
    "fit_stigler",
    "frequent_anchor_words",
    "l1_error",
    "normalization_matrix",
    "pagerank",
    "random_topic_matrix",
    "random_weights",
    "sample_citations",
    "sample_counts",
    "select_k_scree",
    "sleeping_beauty",
    "topic_loadings",
    "tr_score",
    "w_error",
]

__version__ = "0.1.0"
