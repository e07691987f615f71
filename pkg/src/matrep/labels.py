"""Canonical ordering and formatting of structured labels.

Ground-set elements, flats and complex vertices are drawn from ints,
strings, tuples and frozensets, nested arbitrarily.  Every piece of derived
data in the package (simplex orderings, boundary matrices, exports) is
sorted through ``label_key`` so results are bit-identical across runs.
"""

from __future__ import annotations


def label_key(x):
    """Total-order key for the label types used across the package."""
    if isinstance(x, bool):
        raise TypeError("bool labels are not supported")
    if isinstance(x, int):
        return (0, x)
    if isinstance(x, str):
        return (1, x)
    if isinstance(x, tuple):
        return (2, tuple(label_key(e) for e in x))
    if isinstance(x, frozenset):
        return (3, tuple(sorted(label_key(e) for e in x)))
    raise TypeError(f"unsupported label type: {type(x).__name__}")


def sort_labels(labels):
    return sorted(labels, key=label_key)


def format_label(x) -> str:
    """Deterministic readable string for a label (used by exports/reports)."""
    if isinstance(x, int):
        return str(x)
    if isinstance(x, str):
        return x
    if isinstance(x, tuple):
        return "(" + ",".join(format_label(e) for e in x) + ")"
    if isinstance(x, frozenset):
        return "{" + ",".join(format_label(e) for e in sort_labels(x)) + "}"
    raise TypeError(f"unsupported label type: {type(x).__name__}")
