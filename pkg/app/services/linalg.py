"""Exact linear algebra on matrices stored as tuples of row tuples.

Elimination routines need a field domain; determinant and adjugate
inversion work over any commutative scalar ring.
"""

from itertools import permutations
from typing import Any, List, Optional, Sequence, Tuple

from app.services.scalars import ScalarDomain

Matrix = Tuple[Tuple[Any, ...], ...]


def identity(n: int, dom: ScalarDomain) -> Matrix:
    return tuple(
        tuple(dom.one if i == j else dom.zero for j in range(n)) for i in range(n)
    )


def zeros(rows: int, cols: int, dom: ScalarDomain) -> Matrix:
    return tuple(tuple(dom.zero for _ in range(cols)) for _ in range(rows))


def mat_add(A: Matrix, B: Matrix, dom: ScalarDomain) -> Matrix:
    return tuple(
        tuple(dom.add(x, y) for x, y in zip(row_a, row_b)) for row_a, row_b in zip(A, B)
    )


def mat_sub(A: Matrix, B: Matrix, dom: ScalarDomain) -> Matrix:
    return tuple(
        tuple(dom.sub(x, y) for x, y in zip(row_a, row_b)) for row_a, row_b in zip(A, B)
    )


def mat_neg(A: Matrix, dom: ScalarDomain) -> Matrix:
    return tuple(tuple(dom.neg(x) for x in row) for row in A)


def mat_mul(A: Matrix, B: Matrix, dom: ScalarDomain) -> Matrix:
    columns = list(zip(*B))
    result = []
    for row in A:
        out = []
        for col in columns:
            acc = dom.zero
            for x, y in zip(row, col):
                acc = dom.add(acc, dom.mul(x, y))
            out.append(acc)
        result.append(tuple(out))
    return tuple(result)


def chain(dom: ScalarDomain, *matrices: Matrix) -> Matrix:
    """The product of two or more matrices, left to right."""
    result = matrices[0]
    for m in matrices[1:]:
        result = mat_mul(result, m, dom)
    return result


def transpose(A: Matrix) -> Matrix:
    return tuple(zip(*A))


def conj_transpose(A: Matrix, dom: ScalarDomain) -> Matrix:
    return tuple(tuple(dom.conj(x) for x in col) for col in zip(*A))


def is_zero(A: Matrix, dom: ScalarDomain) -> bool:
    return all(dom.is_zero(x) for row in A for x in row)


# ========================================
# Elimination over a field
# ========================================

def rref(A: Sequence[Sequence[Any]], dom: ScalarDomain) -> Tuple[Matrix, Tuple[int, ...]]:
    """Reduced row echelon form and pivot columns; first nonzero pivot wins."""
    rows: List[List[Any]] = [list(row) for row in A]
    if not rows:
        return (), ()
    n_rows, n_cols = len(rows), len(rows[0])
    pivots: List[int] = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        pivot = next((i for i in range(r, n_rows) if not dom.is_zero(rows[i][c])), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = dom.inv(rows[r][c])
        rows[r] = [dom.mul(inv, x) for x in rows[r]]
        for i in range(n_rows):
            if i != r and not dom.is_zero(rows[i][c]):
                factor = rows[i][c]
                rows[i] = [dom.sub(x, dom.mul(factor, y)) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return tuple(tuple(row) for row in rows), tuple(pivots)


def rank(A: Matrix, dom: ScalarDomain) -> int:
    return len(rref(A, dom)[1])


def row_basis(vectors: Sequence[Sequence[Any]], dom: ScalarDomain) -> Matrix:
    """Nonzero rows of the reduced echelon form of the stacked vectors."""
    if not vectors:
        return ()
    reduced, pivots = rref(vectors, dom)
    return reduced[:len(pivots)]


def span_contains(basis: Matrix, vectors: Sequence[Sequence[Any]], dom: ScalarDomain) -> bool:
    """True when every vector lies in the row span of ``basis``."""
    if not vectors:
        return True
    if not basis:
        return all(dom.is_zero(x) for v in vectors for x in v)
    return rank(tuple(basis) + tuple(tuple(v) for v in vectors), dom) == len(basis)


def nullspace(A: Matrix, dom: ScalarDomain) -> Matrix:
    """Basis (as row tuples) of the right null space {v : A v = 0}."""
    n_cols = len(A[0]) if A else 0
    reduced, pivots = rref(A, dom)
    free = [j for j in range(n_cols) if j not in pivots]
    basis = []
    for f in free:
        v = [dom.zero] * n_cols
        v[f] = dom.one
        for row_index, pc in enumerate(pivots):
            v[pc] = dom.neg(reduced[row_index][f])
        basis.append(tuple(v))
    return tuple(basis)


def inverse(A: Matrix, dom: ScalarDomain) -> Optional[Matrix]:
    n = len(A)
    augmented = tuple(tuple(row) + ident for row, ident in zip(A, identity(n, dom)))
    reduced, pivots = rref(augmented, dom)
    if pivots != tuple(range(n)):
        return None
    return tuple(row[n:] for row in reduced)


def rank_factorization(A: Matrix, dom: ScalarDomain) -> Tuple[Matrix, Matrix, Tuple[int, ...]]:
    """A = F G with F the pivot columns of A and G the nonzero rows of rref(A)."""
    reduced, pivots = rref(A, dom)
    F = tuple(tuple(row[c] for c in pivots) for row in A)
    G = reduced[:len(pivots)]
    return F, G, pivots


def left_inverse_full_column(F: Matrix, dom: ScalarDomain) -> Matrix:
    """L with L F = I for F of full column rank r."""
    n_rows, r = len(F), len(F[0])
    _, independent_rows = rref(transpose(F), dom)
    square = tuple(F[i] for i in independent_rows)
    square_inv = inverse(square, dom)
    L = [[dom.zero] * n_rows for _ in range(r)]
    for j, i in enumerate(independent_rows):
        for row in range(r):
            L[row][i] = square_inv[row][j]
    return tuple(tuple(row) for row in L)


def right_inverse_echelon(G: Matrix, pivots: Sequence[int], dom: ScalarDomain) -> Matrix:
    """R with G R = I for G in reduced echelon form with the given pivots."""
    n_cols, r = len(G[0]), len(G)
    R = [[dom.zero] * r for _ in range(n_cols)]
    for j, pc in enumerate(pivots):
        R[pc][j] = dom.one
    return tuple(tuple(row) for row in R)


# ========================================
# Commutative rings without division
# ========================================

def _permutation_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def determinant(A: Matrix, dom: ScalarDomain) -> Any:
    n = len(A)
    total = dom.zero
    for perm in permutations(range(n)):
        term = dom.one
        for i in range(n):
            term = dom.mul(term, A[i][perm[i]])
        if _permutation_sign(perm) < 0:
            term = dom.neg(term)
        total = dom.add(total, term)
    return total


def _minor(A: Matrix, row: int, col: int) -> Matrix:
    return tuple(
        tuple(x for j, x in enumerate(r) if j != col) for i, r in enumerate(A) if i != row
    )


def adjugate_inverse(A: Matrix, dom: ScalarDomain) -> Optional[Matrix]:
    """Inverse over a commutative ring: exists iff det(A) is a unit."""
    n = len(A)
    det = determinant(A, dom)
    if not dom.is_unit(det):
        return None
    det_inv = dom.inv(det)
    if n == 1:
        return ((det_inv,),)
    result = []
    for i in range(n):
        row = []
        for j in range(n):
            cofactor = determinant(_minor(A, j, i), dom)
            if (i + j) % 2:
                cofactor = dom.neg(cofactor)
            row.append(dom.mul(det_inv, cofactor))
        result.append(tuple(row))
    return tuple(result)
