"""Exact dense linear algebra over the rationals or a prime field.

Matrices are lists of rows.  A field is described by ``p``: ``None`` for
the rationals (entries become :class:`fractions.Fraction`) or a prime for
``F_p`` (entries are ints in ``range(p)``).
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterator, Sequence

Matrix = list[list]

PRIMES = (2, 3, 5, 7, 101)


class Field:
    """Arithmetic helper for ``Q`` (``p=None``) or ``F_p``."""

    def __init__(self, p: int | None = None):
        if p is not None and (p < 2 or any(p % k == 0 for k in range(2, int(p**0.5) + 1))):
            raise ValueError(f"{p} is not prime")
        self.p = p

    def __repr__(self):
        return "Q" if self.p is None else f"F_{self.p}"

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(self.p)

    def __call__(self, x):
        if self.p is None:
            return Fraction(x)
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def inv(self, x):
        if self.p is None:
            return 1 / Fraction(x)
        return pow(int(x), -1, self.p)

    def elements(self) -> range:
        if self.p is None:
            raise ValueError("the rationals are infinite")
        return range(self.p)

    def matrix(self, rows: Sequence[Sequence]) -> Matrix:
        return [[self(x) for x in row] for row in rows]


def shape(A: Matrix) -> tuple[int, int]:
    return len(A), (len(A[0]) if A else 0)


def zeros(n: int, m: int, F: Field) -> Matrix:
    return [[F(0)] * m for _ in range(n)]


def identity(n: int, F: Field) -> Matrix:
    return [[F(1 if i == j else 0) for j in range(n)] for i in range(n)]


def matmul(A: Matrix, B: Matrix, F: Field, inner: int | None = None) -> Matrix:
    """Product ``A @ B``; ``inner`` gives the shared dimension when a factor has no rows."""
    n = len(A)
    k = inner if inner is not None else (len(A[0]) if A else len(B))
    m = len(B[0]) if B else 0
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            s = 0
            for t in range(k):
                s += A[i][t] * B[t][j]
            row.append(F(s))
        out.append(row)
    return out


def transpose(A: Matrix) -> Matrix:
    return [list(r) for r in zip(*A)]


def rref(A: Matrix, F: Field, ncols: int | None = None) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns (nonzero rows only)."""
    M = [[F(x) for x in row] for row in A]
    ncols = ncols if ncols is not None else (len(M[0]) if M else 0)
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = F.inv(M[r][c])
        M[r] = [F(x * inv) for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [F(a - f * b) for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(A: Matrix, F: Field) -> int:
    return len(rref(A, F)[1])


def nullspace(A: Matrix, F: Field, ncols: int | None = None) -> Matrix:
    """Basis (as rows) of ``{x : A x = 0}``."""
    ncols = ncols if ncols is not None else (len(A[0]) if A else 0)
    R, piv = rref(A, F, ncols)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [F(0)] * ncols
        v[f] = F(1)
        for row, pc in zip(R, piv):
            v[pc] = F(-row[f])
        basis.append(v)
    return basis


def det(A: Matrix, F: Field):
    n = len(A)
    if n == 0:
        return F(1)
    M = [[F(x) for x in row] for row in A]
    result = F(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c] != 0), None)
        if piv is None:
            return F(0)
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            result = F(-result)
        result = F(result * M[c][c])
        inv = F.inv(M[c][c])
        for i in range(c + 1, n):
            if M[i][c] != 0:
                f = F(M[i][c] * inv)
                M[i] = [F(a - f * b) for a, b in zip(M[i], M[c])]
    return result


def inverse(A: Matrix, F: Field) -> Matrix:
    n = len(A)
    aug = [list(row) + [F(1 if i == j else 0) for j in range(n)] for i, row in enumerate(A)]
    R, piv = rref(aug, F, n)
    if piv != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in R]


def submatrix(A: Matrix, rows: Sequence[int], cols: Sequence[int]) -> Matrix:
    return [[A[i][j] for j in cols] for i in rows]


def leading_minor(A: Matrix, j: int, F: Field):
    return det(submatrix(A, range(j), range(j)), F)


def is_zero(A: Matrix) -> bool:
    return all(x == 0 for row in A for x in row)


def matpow(A: Matrix, k: int, F: Field) -> Matrix:
    out = identity(len(A), F)
    for _ in range(k):
        out = matmul(out, A, F)
    return out


# --- polynomials over the field (coefficient lists, lowest degree first) -------

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def charpoly(A: Matrix, F: Field) -> list:
    """Coefficients of ``det(t I - A)`` (lowest degree first), Berkowitz algorithm."""
    n = len(A)
    A = [[F(x) for x in row] for row in A]
    # Berkowitz builds the vector for det(t I - A_k) iteratively
    vec = [F(1)]
    for k in range(n):
        # leading (k+1) x (k+1) block: A_k = [[a, R], [C, M]] with the new row/col first
        a = A[k][k]
        R = [A[k][j] for j in range(k)]
        C = [A[i][k] for i in range(k)]
        M = [[A[i][j] for j in range(k)] for i in range(k)]
        # Toeplitz column: 1, -a, -R C, -R M C, ...
        col = [F(1), F(-a)]
        power = C
        for _ in range(k):
            col.append(F(-sum(r * c for r, c in zip(R, power))))
            power = [F(sum(M[i][j] * power[j] for j in range(k))) for i in range(k)]
        # multiply the (k+2) x (k+1) lower-triangular Toeplitz matrix with vec
        new = []
        for i in range(k + 2):
            s = 0
            for j in range(min(i + 1, len(vec))):
                s += col[i - j] * vec[j]
            new.append(F(s))
        vec = new
    # vec holds coefficients from highest degree down
    return list(reversed(vec))


def poly_derivative(a: Sequence, F: Field) -> list:
    return _trim([F(k * c) for k, c in enumerate(a)][1:])


def poly_divmod(a: Sequence, b: Sequence, F: Field):
    a, b = _trim(a), _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [F(0)] * max(len(a) - len(b) + 1, 0)
    inv = F.inv(b[-1])
    while len(a) >= len(b) and a:
        c = F(a[-1] * inv)
        d = len(a) - len(b)
        q[d] = c
        for i, bc in enumerate(b):
            a[d + i] = F(a[d + i] - c * bc)
        a = _trim(a)
    return _trim(q), a


def poly_gcd(a: Sequence, b: Sequence, F: Field) -> list:
    a, b = _trim([F(x) for x in a]), _trim([F(x) for x in b])
    while b:
        _, r = poly_divmod(a, b, F)
        a, b = b, r
    if a:
        inv = F.inv(a[-1])
        a = [F(x * inv) for x in a]
    return a


def is_squarefree(a: Sequence, F: Field) -> bool:
    g = poly_gcd(a, poly_derivative(a, F), F)
    return len(g) <= 1


# --- subspaces over finite fields --------------------------------------------------

def subspaces(n: int, k: int, F: Field) -> Iterator[tuple[tuple[int, ...], ...]]:
    """All ``k``-dimensional subspaces of ``F_p^n`` as RREF row tuples."""
    for pivots in itertools.combinations(range(n), k):
        free = [(i, c) for i, pc in enumerate(pivots) for c in range(pc + 1, n) if c not in pivots]
        for values in itertools.product(F.elements(), repeat=len(free)):
            rows = [[0] * n for _ in range(k)]
            for i, pc in enumerate(pivots):
                rows[i][pc] = 1
            for (i, c), v in zip(free, values):
                rows[i][c] = v
            yield tuple(tuple(r) for r in rows)


def gaussian_binomial(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def span_contains(basis: Sequence[Sequence], vectors: Sequence[Sequence], F: Field) -> bool:
    """Whether every vector lies in the row span of ``basis``."""
    if not vectors:
        return True
    base = rank([list(b) for b in basis], F) if basis else 0
    n = len(vectors[0])
    rows = [list(b) for b in basis] + [list(v) for v in vectors]
    return len(rref(rows, F, n)[1]) == base
