"""Fixed loci of nilpotent matrices on Grassmannians.

Builds the nilpotent Jordan matrices T attached to partitions, the
linear shuffle system of a nilpotent matrix, the Pluecker quadrics, the
combined ideal cutting out the fixed locus, and the duality
substitution that exchanges subspace dimension l with n - l.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .combinat import Partition, PluckerIndex, sign_interleave, sort_with_sign, subset_rank, subsets
from .linalg import SparseEchelon, is_zero_matrix, mat_mul, maximal_minors
from .qq import QQ, QQ0, QQ1
from .polyring import (Poly, PolyMatrix, plucker_ring, univariate_ring,
                       coefficient_matrix, wedge_power)


class NilpotentMatrix:
    """Square rational matrix with T^n = 0, verified on construction."""

    def __init__(self, entries, partition=None):
        self.entries = [[QQ(x) for x in row] for row in entries]
        self.n = len(self.entries)
        if any(len(row) != self.n for row in self.entries):
            raise ValueError("matrix is not square")
        self.partition = Partition(partition) if partition is not None else None
        if not self._is_nilpotent():
            raise ValueError("matrix is not nilpotent")

    def _is_nilpotent(self) -> bool:
        if all(self.entries[i][j] == 0
               for i in range(self.n) for j in range(i + 1)):
            return True  # strictly upper triangular
        power = self.entries
        steps = 0
        while 2 ** steps < self.n:
            power = mat_mul(power, power)
            steps += 1
            if is_zero_matrix(power):
                return True
        return is_zero_matrix(power)

    def rank(self) -> int:
        from .linalg import mat_rank
        return mat_rank(self.entries)

    def __repr__(self):
        tag = f", partition={self.partition}" if self.partition else ""
        return f"NilpotentMatrix(n={self.n}{tag})"


def jordan_matrix(lam) -> NilpotentMatrix:
    """Nilpotent Jordan matrix with block sizes given by the partition.

    Ones sit in positions (j, j+1) except where a block ends, so the
    right action e_j -> e_{j+1} walks down each block.
    """
    lam = Partition(lam)
    if not lam:
        raise ValueError("empty partition")
    n = lam.n
    block_ends = set()
    acc = 0
    for part in lam:
        acc += part
        block_ends.add(acc)
    entries = [[QQ0] * n for _ in range(n)]
    for j in range(1, n):
        if j not in block_ends:
            entries[j - 1][j] = QQ1
    return NilpotentMatrix(entries, partition=lam)


@dataclass
class ShuffleSystem:
    """Linear forms vanishing on the T-fixed locus, with their rank."""

    n: int
    l: int
    ring: object
    forms: list
    basis: list
    sigma: int

    def span(self) -> SparseEchelon:
        ech = SparseEchelon()
        for form in self.basis:
            ech.add(linear_form_row(form))
        return ech


def linear_form_row(form: Poly) -> dict:
    """Sparse row {variable index: coefficient} of a linear form."""
    row = {}
    for mon, coeff in form.terms.items():
        if sum(mon) != 1:
            raise ValueError("form is not homogeneous linear")
        row[mon.index(1)] = coeff
    return row


def row_to_form(ring, row: dict) -> Poly:
    terms = {}
    for i, coeff in row.items():
        mon = tuple(1 if j == i else 0 for j in range(ring.nvars))
        terms[mon] = QQ(coeff)
    return Poly(ring, terms)


def _coerce_nilpotent(T) -> NilpotentMatrix:
    return T if isinstance(T, NilpotentMatrix) else NilpotentMatrix(T)


def shuffle_equations(T, l: int) -> ShuffleSystem:
    """All coordinates of P * [wedge_l(Id + zT)]_i for i = 1..l.

    Returns the forms in generation order along with a row-reduced
    spanning set and its rank sigma.
    """
    T = _coerce_nilpotent(T)
    n = T.n
    if not 0 <= l <= n:
        raise ValueError(f"l={l} out of range for n={n}")
    ring = plucker_ring(n, l)
    zring = univariate_ring("z")
    z = zring.var(0)
    entries = [[zring.const(QQ1 if i == j else QQ0) + z * T.entries[i][j]
                for j in range(n)] for i in range(n)]
    W = wedge_power(PolyMatrix(zring, entries), l)
    forms = []
    ech = SparseEchelon()
    for i in range(1, l + 1):
        Mi = coefficient_matrix(W, i, "z")
        for col in range(len(Mi)):
            row = {}
            for r in range(len(Mi)):
                if Mi[r][col]:
                    row[r] = Mi[r][col]
            if row:
                forms.append(row_to_form(ring, row))
                ech.add(row)
    basis = [row_to_form(ring, row) for row in ech.basis()]
    return ShuffleSystem(n=n, l=l, ring=ring, forms=forms, basis=basis, sigma=ech.rank)


@lru_cache(maxsize=None)
def _quadric_index_data(n: int, l: int) -> tuple:
    """Compiled Pluecker relations: tuples of (rank_a, rank_b, sign)."""
    if not 1 <= l <= n - 1:
        if l in (0, n):
            return ()
        raise ValueError(f"l={l} out of range for n={n}")
    relations = []
    seen = set()
    for H in subsets(n, l - 1):
        H_set = set(H)
        for K in subsets(n, l + 1):
            triples = []
            for j, k in enumerate(K):
                if k in H_set:
                    continue
                A, sign_a = sort_with_sign(H + (k,))
                if sign_a == 0:
                    continue
                B = K[:j] + K[j + 1:]
                sign = sign_a * (-1 if j % 2 else 1)
                triples.append((subset_rank(n, A), subset_rank(n, B), sign))
            if not triples:
                continue
            collected = {}
            for ra, rb, sign in triples:
                key = (ra, rb) if ra <= rb else (rb, ra)
                collected[key] = collected.get(key, 0) + sign
            collected = {k: v for k, v in collected.items() if v}
            if not collected:
                continue
            canon = tuple(sorted(collected.items()))
            neg = tuple(sorted((k, -v) for k, v in collected.items()))
            if canon in seen or neg in seen:
                continue
            seen.add(canon)
            relations.append(tuple((ra, rb, v) for (ra, rb), v in sorted(collected.items())))
    return tuple(relations)


def plucker_quadrics(n: int, l: int) -> list:
    """Quadratic relations cutting out the Grassmannian of l-planes in n-space.

    One relation per pair of an (l-1)-subset H and an (l+1)-subset K,
    with exact sign duplicates removed; every relation vanishes on all
    decomposable vectors.
    """
    ring = plucker_ring(n, l)
    quadrics = []
    for triples in _quadric_index_data(n, l):
        terms = {}
        for ra, rb, sign in triples:
            mon = [0] * ring.nvars
            mon[ra] += 1
            mon[rb] += 1
            terms[tuple(mon)] = QQ(sign)
        quadrics.append(Poly(ring, terms))
    return quadrics


def quadric_triples(n: int, l: int) -> tuple:
    """Compiled quadric support for fast evaluation on coordinate vectors."""
    return _quadric_index_data(n, l)


def evaluate_quadric(triples, vector) -> object:
    acc = QQ0
    for ra, rb, sign in triples:
        term = vector[ra] * vector[rb]
        if sign != 1:
            term = term * sign
        acc += term
    return acc


@dataclass
class ShuffleIdeal:
    """Shuffle linear system plus Pluecker quadrics for one (T, l)."""

    system: ShuffleSystem
    quadrics: list

    @property
    def generators(self) -> list:
        return list(self.system.basis) + list(self.quadrics)

    @property
    def ring(self):
        return self.system.ring


def shuffle_ideal(T, l: int) -> ShuffleIdeal:
    T = _coerce_nilpotent(T)
    system = shuffle_equations(T, l)
    return ShuffleIdeal(system=system, quadrics=plucker_quadrics(T.n, l))


def antidiag_B(lam):
    """Block-diagonal matrix of antidiagonal identity blocks.

    Satisfies B*B = Id and T_lam * B = B * transpose(T_lam).
    """
    lam = Partition(lam)
    n = lam.n
    B = [[QQ0] * n for _ in range(n)]
    offset = 0
    for part in lam:
        for i in range(part):
            B[offset + i][offset + part - 1 - i] = QQ1
        offset += part
    return B


def _antidiag_perm(lam) -> list:
    """Permutation pi with B[i][pi(i)] = 1 (0-based)."""
    lam = Partition(lam)
    perm = []
    offset = 0
    for part in lam:
        perm.extend(offset + part - 1 - i for i in range(part))
        offset += part
    return perm


def _plucker_ring_data(ring):
    if not (ring.tag and ring.tag[0] == "plucker"):
        raise ValueError("polynomial is not in a Pluecker ring")
    return ring.tag[1], ring.tag[2]


def hodge_star(form: Poly, n: int) -> Poly:
    """Signed complement relabeling p_I -> sign(I, J) p_J with J = [n] - I."""
    ring_n, l = _plucker_ring_data(form.ring)
    if ring_n != n:
        raise ValueError(f"form lives on {ring_n}-space, not {n}-space")
    if not form.is_zero() and (form.degree() != 1 or not form.is_homogeneous()):
        raise ValueError("hodge star expects a homogeneous linear form")
    target = plucker_ring(n, n - l)
    index_sets = subsets(n, l)
    full = set(range(1, n + 1))
    terms = {}
    for mon, coeff in form.terms.items():
        I = index_sets[mon.index(1)]
        J = PluckerIndex(sorted(full - set(I)))
        sign = sign_interleave(I, J)
        target_mon = tuple(1 if k == subset_rank(n, J) else 0
                           for k in range(target.nvars))
        terms[target_mon] = terms.get(target_mon, QQ0) + sign * coeff
    return target.from_terms(terms)


def duality_map(lam, l: int, form: Poly) -> Poly:
    """Linear substitution sending forms on Gr(l,n) to forms on Gr(n-l,n).

    Composes the wedge of the block-antidiagonal involution with the
    Hodge star; it carries the shuffle span of (lam, l) onto the shuffle
    span of (lam, n-l).
    """
    lam = Partition(lam)
    n = lam.n
    ring_n, ring_l = _plucker_ring_data(form.ring)
    if (ring_n, ring_l) != (n, l):
        raise ValueError("form does not live on the expected Pluecker ring")
    if not form.is_zero() and (form.degree() != 1 or not form.is_homogeneous()):
        raise ValueError("duality map expects a homogeneous linear form")
    perm = _antidiag_perm(lam)
    ring = form.ring
    index_sets = subsets(n, l)
    terms = {}
    for mon, coeff in form.terms.items():
        I = index_sets[mon.index(1)]
        image, sign = sort_with_sign(tuple(perm[e - 1] + 1 for e in I))
        target_mon = tuple(1 if k == subset_rank(n, image) else 0
                           for k in range(ring.nvars))
        terms[target_mon] = terms.get(target_mon, QQ0) + sign * coeff
    return hodge_star(ring.from_terms(terms), n)


def onepart_shuffle_basis(n: int, l: int) -> list:
    """Coordinate forms p_I for every I except (n-l+1, ..., n).

    Spans the same space as the shuffle system of the single Jordan
    block of size n.
    """
    if not 1 <= l <= n:
        raise ValueError(f"l={l} out of range for n={n}")
    ring = plucker_ring(n, l)
    last = tuple(range(n - l + 1, n + 1))
    return [ring.var(k) for k, I in enumerate(subsets(n, l)) if tuple(I) != last]


def plucker_vector(L) -> list:
    """Pluecker coordinates (maximal minors) of a full-rank l x n matrix."""
    return maximal_minors([[QQ(x) for x in row] for row in L])


def decomposable_vanishing(n: int, l: int, vector) -> bool:
    """True when every Pluecker quadric vanishes on the vector."""
    return all(evaluate_quadric(t, vector) == 0 for t in quadric_triples(n, l))
