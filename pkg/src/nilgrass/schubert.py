"""Finite lattice models for rectangular block structure.

For a partition with d equal parts of size r, the fixed locus carries an
action of block-Toeplitz matrices assembled from d x d blocks.  This
module builds the lattice coordinate subspaces, the orbit
parametrizations of their closures, and both dimension formulas, and
checks containment of sampled orbit points in the cut-out locus.

Two bases of n-space are supported: grouped-by-vector (the t-action is
the Jordan matrix) and grouped-by-power (block matrices are
block-Toeplitz).  The fixed perfect-shuffle permutation converts
between them.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

from .combinat import (Partition, PluckerIndex, conjugate, sort_with_sign,
                       subset_rank, subsets)
from .grassmann import (NilpotentMatrix, evaluate_quadric, jordan_matrix,
                        linear_form_row, quadric_triples, row_to_form,
                        shuffle_equations)
from .linalg import det_bareiss, maximal_minors
from .polyring import plucker_ring
from .qq import QQ, QQ0, QQ1, random_rational

BASIS_BY_VECTOR = "by-vector"
BASIS_BY_POWER = "by-power"


@dataclass(frozen=True)
class RectangularContext:
    """Block data d, r with n = d*r and an active basis convention."""

    d: int
    r: int
    basis: str = BASIS_BY_POWER

    def __post_init__(self):
        if self.d < 1 or self.r < 1:
            raise ValueError("d and r must be positive")
        if self.basis not in (BASIS_BY_VECTOR, BASIS_BY_POWER):
            raise ValueError(f"unknown basis convention {self.basis!r}")

    @property
    def n(self) -> int:
        return self.d * self.r

    @property
    def partition(self) -> Partition:
        return Partition((self.r,) * self.d)

    def position(self, power: int, vector: int) -> int:
        """0-based index of t^power e_vector in the active basis."""
        if not (0 <= power < self.r and 1 <= vector <= self.d):
            raise ValueError("basis element out of range")
        if self.basis == BASIS_BY_POWER:
            return power * self.d + (vector - 1)
        return (vector - 1) * self.r + power

    def shuffle_permutation(self) -> list:
        """perm[i] = by-power position of by-vector position i (0-based)."""
        perm = [0] * self.n
        for vector in range(1, self.d + 1):
            for power in range(self.r):
                perm[(vector - 1) * self.r + power] = power * self.d + (vector - 1)
        return perm

    def multiplication_matrix(self) -> NilpotentMatrix:
        """Matrix of multiplication by t in the active basis (row action)."""
        n = self.n
        entries = [[QQ0] * n for _ in range(n)]
        for vector in range(1, self.d + 1):
            for power in range(self.r - 1):
                entries[self.position(power, vector)][self.position(power + 1, vector)] = QQ1
        return NilpotentMatrix(entries, partition=self.partition
                               if self.basis == BASIS_BY_VECTOR else None)


def lattice_subspace(mu, ctx: RectangularContext) -> PluckerIndex:
    """Index set of the coordinate subspace spanned by t^(r-i) e_j, i <= mu_j."""
    mu = Partition(mu)
    _check_box(mu, ctx)
    positions = []
    for j, part in enumerate(mu, start=1):
        for i in range(1, part + 1):
            positions.append(ctx.position(ctx.r - i, j) + 1)
    return PluckerIndex(sorted(positions))


def _check_box(mu: Partition, ctx: RectangularContext):
    if len(mu) > ctx.d:
        raise ValueError(f"{mu} has more than d={ctx.d} parts")
    if mu and mu[0] > ctx.r:
        raise ValueError(f"{mu} has a part larger than r={ctx.r}")


@dataclass
class BlockMatrix:
    """n x n block-Toeplitz matrix built from d x d blocks (by-power basis)."""

    d: int
    r: int
    blocks: list
    entries: list

    def __mul__(self, other: "BlockMatrix") -> "BlockMatrix":
        if (self.d, self.r) != (other.d, other.r):
            raise ValueError("incompatible block structure")
        products = []
        for k in range(self.r):
            block = [[QQ0] * self.d for _ in range(self.d)]
            for i in range(k + 1):
                A, Bm = self.blocks[i], other.blocks[k - i]
                for a in range(self.d):
                    for b in range(self.d):
                        acc = block[a][b]
                        for c in range(self.d):
                            acc += A[a][c] * Bm[c][b]
                        block[a][b] = acc
            products.append(block)
        return assemble_block_matrix(products, RectangularContext(self.d, self.r))


def assemble_block_matrix(blocks, ctx: RectangularContext) -> BlockMatrix:
    """Assemble r blocks of size d x d into the upper block-Toeplitz matrix."""
    d, r = ctx.d, ctx.r
    blocks = [[[QQ(x) for x in row] for row in block] for block in blocks]
    if len(blocks) != r or any(len(b) != d or any(len(row) != d for row in b)
                               for b in blocks):
        raise ValueError(f"expected {r} blocks of size {d}x{d}")
    n = ctx.n
    entries = [[QQ0] * n for _ in range(n)]
    for i in range(r):
        for k in range(i, r):
            block = blocks[k - i]
            for a in range(d):
                for b in range(d):
                    entries[i * d + a][k * d + b] = block[a][b]
    return BlockMatrix(d=d, r=r, blocks=blocks, entries=entries)


def random_block_matrix(ctx: RectangularContext, rng: random.Random,
                        bound: int = 10) -> BlockMatrix:
    """Random block matrix with invertible constant block."""
    while True:
        blocks = [[[random_rational(rng, bound, bound) for _ in range(ctx.d)]
                   for _ in range(ctx.d)] for _ in range(ctx.r)]
        if det_bareiss(blocks[0]) != 0:
            return assemble_block_matrix(blocks, ctx)


def orbit_point(mu, A: BlockMatrix, l: int) -> list:
    """Pluecker vector of the image of the lattice subspace under A.

    This is the row of the l-th exterior power of A indexed by the
    lattice point, i.e. the maximal minors of the selected rows of A.
    """
    mu = Partition(mu)
    if mu.n != l:
        raise ValueError(f"{mu} is not a partition of l={l}")
    ctx = RectangularContext(A.d, A.r)
    _check_box(mu, ctx)
    if det_bareiss(A.blocks[0]) == 0:
        raise ValueError("constant block is singular")
    rows = lattice_subspace(mu, ctx)
    return maximal_minors([A.entries[i - 1] for i in rows])


def schubert_dim(mu, ctx: RectangularContext) -> int:
    """Orbit-closure dimension d*l - sum of squared conjugate parts."""
    mu = Partition(mu)
    _check_box(mu, ctx)
    l = mu.n
    return ctx.d * l - sum(p * p for p in conjugate(mu))


def pair_sum_dim(mu, d: int) -> int:
    """Equivalent dimension count: sum over i <= j of (mu_i - mu_j)."""
    mu = Partition(mu)
    if len(mu) > d:
        raise ValueError(f"{mu} has more than {d} parts")
    padded = tuple(mu) + (0,) * (d - len(mu))
    return sum(padded[i] - padded[j] for i in range(d) for j in range(i, d))


def grassfixed_dim(ctx: RectangularContext, l: int) -> int:
    """Dimension (d-a)l - (a+1)b of the full fixed locus, a=floor(l/r), b=l-ar."""
    if not 0 <= l <= ctx.n:
        raise ValueError(f"l={l} out of range for n={ctx.n}")
    a, b = divmod(l, ctx.r)
    return (ctx.d - a) * l - (a + 1) * b


@lru_cache(maxsize=None)
def _shuffle_rows_by_power(d: int, r: int, l: int) -> tuple:
    """Reduced shuffle-form rows in the by-power basis, as sparse rows."""
    ctx = RectangularContext(d, r, basis=BASIS_BY_POWER)
    system = shuffle_equations(ctx.multiplication_matrix(), l)
    return tuple(tuple(sorted(linear_form_row(f).items())) for f in system.basis)


def shuffle_forms_by_power(ctx: RectangularContext, l: int) -> list:
    """Shuffle-span basis transported to the by-power basis convention."""
    ring = plucker_ring(ctx.n, l)
    return [row_to_form(ring, dict(row))
            for row in _shuffle_rows_by_power(ctx.d, ctx.r, l)]


def transport_form_rows(rows, perm, n: int, l: int) -> list:
    """Relabel sparse linear-form rows along a basis permutation of [n].

    perm[i] is the 0-based image position of 0-based position i; index
    sets map with the sign of the sorting permutation.
    """
    index_sets = subsets(n, l)
    out = []
    for row in rows:
        new = {}
        for var, coeff in row.items():
            image, sign = sort_with_sign(tuple(perm[e - 1] + 1 for e in index_sets[var]))
            new[subset_rank(n, image)] = sign * coeff
        out.append(new)
    return out


def point_satisfies(ctx: RectangularContext, l: int, vector) -> bool:
    """Exact check of all shuffle forms (by-power) and Pluecker quadrics."""
    vector = [QQ(x) for x in vector]
    for row in _shuffle_rows_by_power(ctx.d, ctx.r, l):
        acc = QQ0
        for var, coeff in row:
            if vector[var]:
                acc += coeff * vector[var]
        if acc != 0:
            return False
    return all(evaluate_quadric(t, vector) == 0
               for t in quadric_triples(ctx.n, l))


def verify_containment(mu, ctx: RectangularContext, l: int, trials: int,
                       rng: random.Random | None = None) -> bool:
    """Sampled orbit points satisfy every shuffle form and quadric."""
    rng = rng or random.Random(0)
    mu = Partition(mu)
    for _ in range(trials):
        A = random_block_matrix(ctx, rng)
        if not point_satisfies(ctx, l, orbit_point(mu, A, l)):
            return False
    return True


def ball_strata(ctx: RectangularContext) -> list:
    """(l, shuffle rank, dimension) for every stratum l = 0..n."""
    T = jordan_matrix(ctx.partition)
    out = []
    for l in range(ctx.n + 1):
        sigma = shuffle_equations(T, l).sigma
        out.append((l, sigma, grassfixed_dim(ctx, l)))
    return out
