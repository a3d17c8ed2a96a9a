"""Dense exact linear algebra over a Field (small systems only).

Matrices are lists of row lists of field values.  Everything here is
deterministic: pivoting always takes the first nonzero entry.
"""

from __future__ import annotations

from .fields import Field
from .rng import Rng


def mat_copy(A):
    return [row[:] for row in A]


def rref(F: Field, A, ncols=None):
    """Reduced row echelon form in place; returns (R, pivot column list)."""
    A = mat_copy(A)
    if not A:
        return A, []
    m, n = len(A), ncols if ncols is not None else len(A[0])
    pivots = []
    r = 0
    for c in range(n):
        pr = None
        for i in range(r, m):
            if A[i][c] != F.zero:
                pr = i
                break
        if pr is None:
            continue
        A[r], A[pr] = A[pr], A[r]
        inv = F.inv(A[r][c])
        A[r] = [F.mul(x, inv) for x in A[r]]
        for i in range(m):
            if i != r and A[i][c] != F.zero:
                f = A[i][c]
                Ai, Ar = A[i], A[r]
                A[i] = [F.sub(Ai[j], F.mul(f, Ar[j])) for j in range(n)]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return A, pivots


def rank(F: Field, A) -> int:
    return len(rref(F, A)[1])


def nullspace(F: Field, A, n=None):
    """Basis of {x : A x = 0} as list of length-n vectors."""
    if not A:
        return [[F.one if i == j else F.zero for i in range(n)] for j in range(n)] if n else []
    n = n if n is not None else len(A[0])
    R, pivots = rref(F, A, n)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [F.zero] * n
        v[fc] = F.one
        for r, pc in enumerate(pivots):
            v[pc] = F.neg(R[r][fc])
        basis.append(v)
    return basis


def row_space_basis(F: Field, A):
    """Nonzero rows of the rref: canonical basis of the row span."""
    if not A:
        return []
    R, pivots = rref(F, A)
    return [R[i] for i in range(len(pivots))]


def solve(F: Field, A, b):
    """One solution of A x = b, or None if inconsistent."""
    if not A:
        return None
    n = len(A[0])
    aug = [row + [bb] for row, bb in zip(A, b)]
    R, pivots = rref(F, aug, n + 1)
    if n in pivots:
        return None
    x = [F.zero] * n
    for r, pc in enumerate(pivots):
        x[pc] = R[r][n]
    return x


def det(F: Field, A):
    A = mat_copy(A)
    n = len(A)
    d = F.one
    for c in range(n):
        pr = None
        for i in range(c, n):
            if A[i][c] != F.zero:
                pr = i
                break
        if pr is None:
            return F.zero
        if pr != c:
            A[c], A[pr] = A[pr], A[c]
            d = F.neg(d)
        d = F.mul(d, A[c][c])
        inv = F.inv(A[c][c])
        for i in range(c + 1, n):
            if A[i][c] != F.zero:
                f = F.mul(A[i][c], inv)
                A[i] = [F.sub(A[i][j], F.mul(f, A[c][j])) for j in range(n)]
    return d


def inverse(F: Field, A):
    n = len(A)
    aug = [A[i][:] + [F.one if j == i else F.zero for j in range(n)] for i in range(n)]
    R, pivots = rref(F, aug, 2 * n)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in R[:n]]


def mat_mul(F: Field, A, B):
    m, k, n = len(A), len(B), len(B[0])
    out = []
    for i in range(m):
        row = []
        Ai = A[i]
        for j in range(n):
            s = F.zero
            for t in range(k):
                s = F.add(s, F.mul(Ai[t], B[t][j]))
            row.append(s)
        out.append(row)
    return out


def mat_vec(F: Field, A, v):
    out = []
    for row in A:
        s = F.zero
        for a, x in zip(row, v):
            s = F.add(s, F.mul(a, x))
        out.append(s)
    return out


def random_invertible(F: Field, n: int, rng: Rng):
    while True:
        A = [[F.rand(rng) for _ in range(n)] for _ in range(n)]
        if det(F, A) != F.zero:
            return A


def identity(F: Field, n: int):
    return [[F.one if i == j else F.zero for j in range(n)] for i in range(n)]
