"""Integer matrices: extended gcd, determinants, Smith and Hermite normal forms.

Matrices are tuples of row tuples of Python ints.
"""
from math import gcd

from ..errors import InvalidInput

IntMatrix = tuple[tuple[int, ...], ...]


def egcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b) > 0.

    When b != 0 the pair is normalised so that |x| <= |b|/(2g), preferring
    the nonnegative x when two candidates qualify.
    """
    if a == 0 and b == 0:
        raise InvalidInput("egcd(0, 0) is undefined")
    if b == 0:
        return abs(a), (1 if a > 0 else -1), 0
    old_r, r = a, b
    old_x, x = 1, 0
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
    g, x = old_r, old_x
    if g < 0:
        g, x = -g, -x
    m = abs(b) // g
    x %= m
    if 2 * x > m:
        x -= m
    y = (g - a * x) // b
    assert a * x + b * y == g
    return g, x, y


def as_matrix(rows) -> IntMatrix:
    m = tuple(tuple(int(v) for v in row) for row in rows)
    if not m or not m[0]:
        raise InvalidInput("matrix must be nonempty")
    if any(len(r) != len(m[0]) for r in m):
        raise InvalidInput("matrix rows have different lengths")
    return m


def identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def matmul(A, B) -> IntMatrix:
    if len(A[0]) != len(B):
        raise InvalidInput("dimension mismatch in matrix product")
    cols = list(zip(*B))
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in A)


def transpose(A) -> IntMatrix:
    return tuple(zip(*A))


def det(A) -> int:
    """Fraction-free (Bareiss) determinant."""
    n = len(A)
    if any(len(r) != n for r in A):
        raise InvalidInput("determinant of a non-square matrix")
    M = [list(r) for r in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if M[i][k]), None)
            if piv is None:
                return 0
            M[k], M[piv] = M[piv], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1] if n else 1


def is_unimodular(A) -> bool:
    return len(A) == len(A[0]) and abs(det(A)) == 1


def smith_normal_form(M) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return (U, S, V) with U*M*V = S, U and V unimodular, S diagonal, d_i | d_{i+1}."""
    A = [list(r) for r in as_matrix(M)]
    m, n = len(A), len(A[0])
    U = [list(r) for r in identity(m)]
    V = [list(r) for r in identity(n)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):  # row_dst += k * row_src
        A[dst] = [a + k * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + k * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, k):
        for row in A:
            row[dst] += k * row[src]
        for row in V:
            row[dst] += k * row[src]

    for t in range(min(m, n)):
        while True:
            entries = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
            if not entries:
                break
            _, i, j = min(entries)
            swap_rows(t, i)
            swap_cols(t, j)
            p = A[t][t]
            done = True
            for i in range(t + 1, m):
                q = A[i][t] // p
                if q:
                    add_row(i, t, -q)
                if A[i][t]:
                    done = False
            for j in range(t + 1, n):
                q = A[t][j] // p
                if q:
                    add_col(j, t, -q)
                if A[t][j]:
                    done = False
            if not done:
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if t < m and t < n and A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
    return as_matrix(U), as_matrix(A), as_matrix(V)


def invariant_factors(M) -> tuple[int, ...]:
    _, S, _ = smith_normal_form(M)
    return tuple(S[i][i] for i in range(min(len(S), len(S[0]))))


def hermite_normal_form(M) -> tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite form: returns (H, U) with U*M = H, U unimodular.

    H is in row echelon form, pivots positive, entries above each pivot
    reduced into [0, pivot). Zero rows are kept at the bottom.
    """
    A = [list(r) for r in as_matrix(M)]
    m, n = len(A), len(A[0])
    U = [list(r) for r in identity(m)]
    row = 0
    for col in range(n):
        if row == m:
            break
        while True:
            nz = [(abs(A[i][col]), i) for i in range(row, m) if A[i][col]]
            if not nz:
                break
            _, piv = min(nz)
            A[row], A[piv] = A[piv], A[row]
            U[row], U[piv] = U[piv], U[row]
            clean = True
            for i in range(row + 1, m):
                q = A[i][col] // A[row][col]
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[row])]
                    U[i] = [a - q * b for a, b in zip(U[i], U[row])]
                if A[i][col]:
                    clean = False
            if clean:
                break
        if row < m and A[row][col]:
            if A[row][col] < 0:
                A[row] = [-a for a in A[row]]
                U[row] = [-a for a in U[row]]
            p = A[row][col]
            for i in range(row):
                q = A[i][col] // p
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[row])]
                    U[i] = [a - q * b for a, b in zip(U[i], U[row])]
            row += 1
    return as_matrix(A), as_matrix(U)


def content(v) -> int:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    return g
