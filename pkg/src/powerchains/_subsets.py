"""Generic subset-sum machinery shared by the integer and polynomial chain
modules.

Works on any sequence of addable, hashable elements.  Subsets are reported as
tuples of 1-based term indices; enumeration follows increasing bitmask order,
which makes every witness reproducible.
"""

from __future__ import annotations

from powerchains.errors import SizeLimitError

DEFAULT_MAX_TERMS = 24


def check_term_cap(n_terms: int, max_terms: int = DEFAULT_MAX_TERMS) -> None:
    if n_terms > max_terms:
        raise SizeLimitError(
            f"sequence has {n_terms} terms, above the subset-sum cap of "
            f"{max_terms}; raise max_terms explicitly to override")


def mask_indices(mask: int) -> tuple[int, ...]:
    """1-based indices of the set bits of mask, ascending."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def subset_values(items) -> set:
    """The set of all nonempty subset sums, by incremental extension."""
    values: set = set()
    for x in items:
        values |= {s + x for s in values}
        values.add(x)
    return values


def subset_value_witnesses(items) -> dict:
    """Map each subset-sum value to the first (lowest-mask) subset reaching it."""
    items = list(items)
    n = len(items)
    sums = [None] * (1 << n)
    witnesses: dict = {}
    for mask in range(1, 1 << n):
        low = mask & -mask
        rest = mask ^ low
        x = items[low.bit_length() - 1]
        s = x if rest == 0 else sums[rest] + x
        sums[mask] = s
        if s not in witnesses:
            witnesses[s] = mask_indices(mask)
    return witnesses


def first_sum_collision(items):
    """First pair of distinct subsets with equal sums, in mask order.

    Returns (indices_a, indices_b, value) or None when all 2^n - 1 nonempty
    subset sums are pairwise distinct.
    """
    items = list(items)
    n = len(items)
    sums = [None] * (1 << n)
    seen: dict = {}
    for mask in range(1, 1 << n):
        low = mask & -mask
        rest = mask ^ low
        x = items[low.bit_length() - 1]
        s = x if rest == 0 else sums[rest] + x
        sums[mask] = s
        other = seen.get(s)
        if other is not None:
            return mask_indices(other), mask_indices(mask), s
        seen[s] = mask
    return None
