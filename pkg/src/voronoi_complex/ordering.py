"""Global order on lattice vectors.

Every deterministic choice in the pipeline (sorted cells, greedy orientation
bases, the distinguished vector adjoined in incidence signs) is made with
respect to one total order on integer vectors.  The default is lexicographic
on coordinates.  The order can be reversed, which must flip orientations
coherently; the homology is unchanged, and tests rely on that.
"""

from contextlib import contextmanager

_REVERSED = False


def vector_key(v):
    """Sort key realizing the global order on vectors."""
    if _REVERSED:
        return tuple(-x for x in v)
    return v


def sort_vectors(vectors):
    return tuple(sorted(vectors, key=vector_key))


def min_vector(vectors):
    return min(vectors, key=vector_key)


@contextmanager
def reversed_order():
    """Temporarily reverse the global vector order (test hook)."""
    global _REVERSED
    old = _REVERSED
    _REVERSED = True
    try:
        yield
    finally:
        _REVERSED = old
