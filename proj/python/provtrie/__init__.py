"""Generalized prefix trie index for workflow provenance paths."""

from ._provtrie import (  # noqa: F401
    Graph,
    ProvtrieError,
    Trie,
    all_pairs_clique_count,
    clique_walk_count,
    count_paths,
    count_walks,
    enumerate_walks,
    gen_clique,
    infer_roles,
    load_trace,
    most_probable_at_depth,
    ngrams,
    parse_ntriples,
    q1,
    sequence,
    suggest,
    validate_dag,
)

__all__ = [name for name in dir() if not name.startswith("_")]
