"""Exact linear algebra over the rationals.

Dense matrices are plain lists of lists of rationals.  The sparse
echelon form used for the large shuffle systems keeps rows as
column->coefficient dicts, so rank computations only ever touch
nonzero entries.
"""

from __future__ import annotations

from .combinat import subsets
from .qq import QQ, QQ0, QQ1


def mat_from(rows):
    return [[QQ(x) for x in row] for row in rows]


def mat_identity(n: int):
    return [[QQ1 if i == j else QQ0 for j in range(n)] for i in range(n)]


def mat_zero(rows: int, cols: int):
    return [[QQ0] * cols for _ in range(rows)]


def mat_mul(A, B):
    rows, inner, cols = len(A), len(B), len(B[0]) if B else 0
    if A and len(A[0]) != inner:
        raise ValueError("incompatible shapes")
    out = []
    for i in range(rows):
        Ai = A[i]
        row = []
        for j in range(cols):
            acc = QQ0
            for k in range(inner):
                a = Ai[k]
                if a:
                    acc += a * B[k][j]
            row.append(acc)
        out.append(row)
    return out


def mat_add(A, B):
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scale(c, A):
    c = QQ(c)
    return [[c * a for a in row] for row in A]


def mat_transpose(A):
    return [list(col) for col in zip(*A)]


def mat_pow(A, k: int):
    n = len(A)
    result = mat_identity(n)
    base = [row[:] for row in A]
    while k:
        if k & 1:
            result = mat_mul(result, base)
        k >>= 1
        if k:
            base = mat_mul(base, base)
    return result


def is_zero_matrix(A) -> bool:
    return all(x == 0 for row in A for x in row)


def rref(M):
    """Reduced row-echelon form of a rational matrix.

    Returns (R, rank, pivot_columns); M is not modified.
    """
    R = [[QQ(x) for x in row] for row in M]
    rows = len(R)
    cols = len(R[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pivot_row = next((i for i in range(r, rows) if R[i][c] != 0), None)
        if pivot_row is None:
            continue
        R[r], R[pivot_row] = R[pivot_row], R[r]
        inv = 1 / R[r][c]
        R[r] = [x * inv for x in R[r]]
        for i in range(rows):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                R[i] = [x - f * y for x, y in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return R, r, pivots


def mat_rank(M) -> int:
    return rref(M)[1] if M else 0


def det_bareiss(M):
    """Fraction-free (Bareiss) determinant; exact over the rationals."""
    n = len(M)
    if n == 0:
        return QQ1
    if any(len(row) != n for row in M):
        raise ValueError("determinant of a non-square matrix")
    A = [[QQ(x) for x in row] for row in M]
    sign = 1
    prev = QQ1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if swap is None:
                return QQ0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) / prev
            A[i][k] = QQ0
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def maximal_minors(M):
    """All maximal minors of an l x n matrix, in canonical subset order.

    Uses Laplace expansion down the rows with memoization on
    (row suffix, column subset), which shares work across the minors.
    """
    l = len(M)
    n = len(M[0]) if l else 0
    if l > n:
        raise ValueError("matrix has more rows than columns")
    memo = {}

    def minor(k, cols):
        if k == l:
            return QQ1
        key = (k, cols)
        cached = memo.get(key)
        if cached is not None:
            return cached
        acc = QQ0
        row = M[k]
        for t, c in enumerate(cols):
            a = row[c]
            if a:
                sub = minor(k + 1, cols[:t] + cols[t + 1:])
                if sub:
                    acc += (a if t % 2 == 0 else -a) * sub
        memo[key] = acc
        return acc

    return [minor(0, tuple(e - 1 for e in J)) for J in subsets(n, l)]


def row_space_contains(L, vectors) -> bool:
    """Exact check that every given vector lies in the row space of L."""
    R, rank, pivots = rref(L)
    basis = R[:rank]
    for v in vectors:
        v = [QQ(x) for x in v]
        for row, c in zip(basis, pivots):
            if v[c] != 0:
                f = v[c]
                v = [x - f * y for x, y in zip(v, row)]
        if any(x != 0 for x in v):
            return False
    return True


def restriction_matrix(L, T):
    """Matrix X with X*L = L*T, for L whose row space is T-invariant.

    Raises ValueError if the row space is not invariant or L is not of
    full row rank.
    """
    R, rank, pivots = rref(L)
    if rank != len(L):
        raise ValueError("rows are not linearly independent")
    LT = mat_mul(L, T)
    Lp = [[L[i][c] for c in pivots] for i in range(len(L))]
    LTp = [[LT[i][c] for c in pivots] for i in range(len(L))]
    X = _solve_right(Lp, LTp)
    if mat_mul(X, L) != LT:
        raise ValueError("row space is not invariant under T")
    return X


def _solve_right(A, B):
    """Solve X*A = B for square invertible A."""
    n = len(A)
    aug = [list(row_a) + list(row_b) for row_a, row_b in
           zip(mat_transpose(A), mat_transpose(B))]
    R, rank, _ = rref(aug)
    if rank != n:
        raise ValueError("singular system")
    return mat_transpose([row[n:] for row in R[:n]])


def nilpotent_jordan_type(X):
    """Jordan type of a nilpotent square matrix.

    The conjugate of the partition is the sequence of rank differences
    rank(X^(k-1)) - rank(X^k).
    """
    from .combinat import Partition, conjugate

    n = len(X)
    ranks = [n]
    P = mat_identity(n)
    while ranks[-1] > 0:
        P = mat_mul(P, X)
        ranks.append(mat_rank(P))
        if len(ranks) > n + 1:
            raise ValueError("matrix is not nilpotent")
    diffs = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))]
    return conjugate(Partition(sorted(diffs, reverse=True)))


class SparseEchelon:
    """Incremental reduced echelon form over sparse rational rows.

    Rows are dicts mapping a column key to a nonzero coefficient; column
    keys may be any sortable hashable values.  Pivot rows are kept monic
    with the pivot on the smallest column key of the row.
    """

    def __init__(self):
        self.pivots = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: dict) -> dict:
        """Fully reduce a row against the current pivot rows.

        Eliminating one column can introduce new columns further right,
        so columns are rescanned until none of them carries a pivot.
        """
        row = {c: QQ(v) for c, v in row.items() if v != 0}
        while True:
            reducible = [c for c in row if c in self.pivots]
            if not reducible:
                return row
            col = min(reducible, key=_col_key)
            coeff = row[col]
            for c, v in self.pivots[col].items():
                new = row.get(c, QQ0) - coeff * v
                if new:
                    row[c] = new
                else:
                    row.pop(c, None)

    def add(self, row: dict) -> bool:
        """Insert a row; returns True if it enlarged the span."""
        row = self.reduce(row)
        if not row:
            return False
        col = min(row, key=_col_key)
        inv = 1 / row[col]
        row = {c: v * inv for c, v in row.items()}
        for other in self.pivots.values():
            coeff = other.get(col)
            if coeff:
                for c, v in row.items():
                    new = other.get(c, QQ0) - coeff * v
                    if new:
                        other[c] = new
                    else:
                        other.pop(c, None)
        self.pivots[col] = row
        return True

    def contains(self, row: dict) -> bool:
        return not self.reduce(row)

    def basis(self) -> list:
        """Canonical reduced basis rows, sorted by pivot column."""
        return [dict(self.pivots[c]) for c in sorted(self.pivots, key=_col_key)]

    def spans_same(self, other: "SparseEchelon") -> bool:
        return self.basis() == other.basis()


def _col_key(c):
    return c if isinstance(c, tuple) else (c,)


def echelon_of(rows) -> SparseEchelon:
    ech = SparseEchelon()
    for row in rows:
        ech.add(row)
    return ech
