"""Partitions, index subsets, permutation signs, and dominance order.

Conventions used across the whole package: indices are 1-based, subsets
are kept sorted increasing, partitions are stored without trailing
zeros, and the canonical ordering of the l-subsets of {1..n} is
lexicographic on the element sequences.  That ordering defines the
variable indices of every polynomial ring here.  (Some computer algebra
systems, e.g. Macaulay2, index Pluecker coordinates 0-based; every
interface in this package is 1-based.)
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from math import comb


class Partition(tuple):
    """Weakly decreasing tuple of positive parts; trailing zeros stripped.

    Accepts an iterable of ints, a comma-separated string like "4,2,2",
    or another Partition (returned unchanged).
    """

    def __new__(cls, parts=()):
        if isinstance(parts, Partition):
            return parts
        if isinstance(parts, str):
            parts = [int(s) for s in parts.split(",") if s.strip()]
        parts = tuple(int(p) for p in parts)
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"parts not weakly decreasing: {parts}")
        if any(p < 0 for p in parts):
            raise ValueError(f"negative part in {parts}")
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        return super().__new__(cls, parts)

    @property
    def n(self) -> int:
        """Sum of the parts."""
        return sum(self)

    def __str__(self) -> str:
        return ",".join(str(p) for p in self)

    def __repr__(self) -> str:
        return f"Partition({tuple(self)!r})"


class PluckerIndex(tuple):
    """Sorted subset of {1..n}; prints as ``{1,4,6,8}``."""

    def __new__(cls, elements=()):
        if isinstance(elements, PluckerIndex):
            return elements
        if isinstance(elements, str):
            elements = [int(s) for s in elements.strip().strip("{}").split(",") if s.strip()]
        elements = tuple(int(e) for e in elements)
        if any(e < 1 for e in elements):
            raise ValueError(f"indices must be >= 1: {elements}")
        if any(a >= b for a, b in zip(elements, elements[1:])):
            raise ValueError(f"indices not strictly increasing: {elements}")
        return super().__new__(cls, elements)

    def __str__(self) -> str:
        return "{" + ",".join(str(e) for e in self) + "}"

    def __repr__(self) -> str:
        return f"PluckerIndex({tuple(self)!r})"


@lru_cache(maxsize=None)
def subsets(n: int, l: int) -> tuple:
    """All C(n,l) sorted l-subsets of {1..n}, lexicographically ordered.

    This ordering is the canonical one: position k in the returned tuple
    is the variable index of the corresponding Pluecker coordinate.
    """
    if l < 0 or l > n:
        raise ValueError(f"subset size {l} out of range for n={n}")
    return tuple(PluckerIndex(c) for c in itertools.combinations(range(1, n + 1), l))


@lru_cache(maxsize=None)
def _subset_ranks(n: int, l: int) -> dict:
    return {s: k for k, s in enumerate(subsets(n, l))}


def subset_rank(n: int, elements) -> int:
    """Position of a sorted subset in the canonical ordering."""
    idx = PluckerIndex(elements)
    try:
        return _subset_ranks(n, len(idx))[idx]
    except KeyError:
        raise ValueError(f"{idx} is not a subset of {{1..{n}}}") from None


def subset_unrank(n: int, l: int, k: int) -> PluckerIndex:
    all_subsets = subsets(n, l)
    if not 0 <= k < len(all_subsets):
        raise ValueError(f"rank {k} out of range for C({n},{l})={len(all_subsets)}")
    return all_subsets[k]


def inversions(seq) -> int:
    seq = tuple(seq)
    return sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])


def sign_interleave(I, J) -> int:
    """Sign of the permutation of {1..n} given by the concatenation (I, J).

    I and J must be disjoint with union {1..n} where n = |I| + |J|.
    """
    I, J = PluckerIndex(I), PluckerIndex(J)
    n = len(I) + len(J)
    if set(I) | set(J) != set(range(1, n + 1)) or set(I) & set(J):
        raise ValueError(f"{I} and {J} do not partition {{1..{n}}}")
    return -1 if inversions(I + J) % 2 else 1


def sort_with_sign(seq):
    """Sort a sequence of distinct ints; return (sorted tuple, sign).

    Sign 0 when the sequence has a repeated entry.
    """
    seq = tuple(seq)
    if len(set(seq)) != len(seq):
        return tuple(sorted(seq)), 0
    return tuple(sorted(seq)), (-1 if inversions(seq) % 2 else 1)


def conjugate(mu) -> Partition:
    """Conjugate (transposed) partition: mu*_i = #{j : mu_j >= i}."""
    mu = Partition(mu)
    if not mu:
        return Partition()
    return Partition(sum(1 for p in mu if p >= i) for i in range(1, mu[0] + 1))


def dominance_leq(mu, nu) -> bool:
    """Prefix-sum (dominance) comparison of two partitions of the same size."""
    mu, nu = Partition(mu), Partition(nu)
    if mu.n != nu.n:
        raise ValueError(f"partitions of different sizes: {mu.n} != {nu.n}")
    width = max(len(mu), len(nu))
    acc_mu = acc_nu = 0
    for i in range(width):
        acc_mu += mu[i] if i < len(mu) else 0
        acc_nu += nu[i] if i < len(nu) else 0
        if acc_mu > acc_nu:
            return False
    return True


def mu_max(d: int, r: int, l: int) -> Partition:
    """Dominance-largest partition of l with at most d parts of size at most r.

    Has a = floor(l/r) parts equal to r followed by one part b = l - a*r.
    """
    if not 0 <= l <= d * r:
        raise ValueError(f"l={l} out of range for d={d}, r={r}")
    a, b = divmod(l, r)
    return Partition((r,) * a + ((b,) if b else ()))


def complement_partition(mu, d: int, r: int) -> Partition:
    """Complement inside the d x r box: (r - mu_d, ..., r - mu_1)."""
    mu = Partition(mu)
    if len(mu) > d:
        raise ValueError(f"{mu} has more than d={d} parts")
    if mu and mu[0] > r:
        raise ValueError(f"{mu} has a part exceeding r={r}")
    padded = tuple(mu) + (0,) * (d - len(mu))
    return Partition(r - p for p in reversed(padded))


def box_partitions(d: int, r: int, l: int) -> list:
    """All partitions of l with at most d parts, each part at most r."""
    result = []

    def extend(prefix, remaining, cap):
        if not remaining:
            result.append(Partition(prefix))
            return
        if len(prefix) == d:
            return
        for part in range(min(cap, remaining), 0, -1):
            if remaining - part <= (d - len(prefix) - 1) * part:
                extend(prefix + [part], remaining - part, part)

    if not 0 <= l <= d * r:
        raise ValueError(f"l={l} out of range for d={d}, r={r}")
    if l == 0:
        return [Partition()]
    extend([], l, r)
    return result


def partitions_of(n: int):
    """All partitions of n, in descending lexicographic order."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        yield Partition()
        return

    def gen(remaining, cap):
        if remaining == 0:
            yield ()
            return
        for part in range(min(cap, remaining), 0, -1):
            for rest in gen(remaining - part, part):
                yield (part,) + rest

    for parts in gen(n, n):
        yield Partition(parts)


def partitions_table_order(n: int) -> list:
    """Partitions of n ordered by decreasing length, then lexicographically.

    This is the row order of the classification tables bundled with the
    package: (1,..,1) first, (n) last.
    """
    return sorted(partitions_of(n), key=lambda p: (-len(p), tuple(p)))


def binomial(n: int, k: int) -> int:
    return comb(n, k) if 0 <= k <= n else 0
