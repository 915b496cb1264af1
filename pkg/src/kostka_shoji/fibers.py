"""Points of the cyclic representation space: regularity, invariant flags, minor identities.

A point is a tuple ``(x_0, ..., x_{r-1})`` of ``N x N`` matrices where
``x_i`` maps ``V_{i+1}`` to ``V_i``; the group acts by
``x_i -> g_i x_i g_{i+1}^{-1}``.  As a representation this lives on the
opposite of the cyclic quiver, arrow ``a_i: i+1 -> i``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from . import linalg
from .errors import BudgetExceeded, ValidationError
from .linalg import Field, Matrix
from .quiver import FlagType, Quiver, QuiverRep

DEFAULT_FLAG_BUDGET = 10**7


@dataclass
class PointOnFiber:
    xs: list[Matrix]
    field: Field
    gs: list[Matrix] | None = None

    def __post_init__(self):
        F = self.field
        self.xs = [F.matrix(x) for x in self.xs]
        if len(self.xs) < 2:
            raise ValidationError("need at least two matrices")
        n = len(self.xs[0])
        for x in self.xs:
            if linalg.shape(x) != (n, n):
                raise ValidationError("all matrices must be square of the same size")
        if self.gs is not None:
            self.gs = [F.matrix(g) for g in self.gs]

    @property
    def r(self) -> int:
        return len(self.xs)

    @property
    def N(self) -> int:
        return len(self.xs[0])

    def as_rep(self) -> QuiverRep:
        Q = Quiver.cyclic(self.r).opposite()
        return QuiverRep(Q, (self.N,) * self.r, {f"a{i}": x for i, x in enumerate(self.xs)}, self.field)

    def cyclic_products(self) -> list[Matrix]:
        """``f_i = x_i x_{i+1} ... x_{i-1}``, an endomorphism of ``V_i``."""
        F, r = self.field, self.r
        out = []
        for i in range(r):
            f = linalg.identity(self.N, F)
            for s in range(r):
                f = linalg.matmul(f, self.xs[(i + s) % r], F)
            out.append(f)
        return out

    def act(self, gs: Sequence[Matrix]) -> "PointOnFiber":
        F, r = self.field, self.r
        ys = []
        for i in range(r):
            ginv = linalg.inverse(gs[(i + 1) % r], F)
            ys.append(linalg.matmul(linalg.matmul(gs[i], self.xs[i], F), ginv, F))
        return PointOnFiber(ys, F)


# --- regularity ------------------------------------------------------------------------

def is_semisimple_regular_point(x: PointOnFiber) -> bool:
    """``f_0`` has a squarefree characteristic polynomial."""
    f0 = x.cyclic_products()[0]
    return linalg.is_squarefree(linalg.charpoly(f0, x.field), x.field)


def is_regular_nilpotent(f: Matrix, F: Field) -> bool:
    n = len(f)
    return linalg.is_zero(linalg.matpow(f, n, F)) and linalg.rank(f, F) == n - 1


def is_regular_nilpotent_point(x: PointOnFiber) -> bool:
    """Every cyclic product ``f_i`` is regular nilpotent."""
    return all(is_regular_nilpotent(f, x.field) for f in x.cyclic_products())


# --- invariant flags over finite fields -------------------------------------------------

def _apply(X: Matrix, v, F: Field):
    return [F(sum(X[i][j] * v[j] for j in range(len(v)))) for i in range(len(X))]


def count_invariant_flags(rep: QuiverRep, ft: FlagType, budget: int = DEFAULT_FLAG_BUDGET) -> int:
    """Number of ``F_q``-rational flags of type ``ft`` compatible with ``rep``.

    Flags are built in ascending order; at each step every vertex with a
    positive jump chooses an enlargement (enumerated as subspaces of a
    coordinate complement), and arrow conditions are checked as soon as
    both endpoints are fixed.
    """
    F = rep.field
    if F.p is None:
        raise ValidationError("flag counting needs a finite field")
    Q = rep.quiver
    if tuple(Q.vertices) != ft.vertices or tuple(rep.dims) != ft.dims:
        raise ValidationError("flag type does not match the representation")
    steps = ft.ascending()
    nv = len(Q.vertices)
    arrows = [(Q.index(a.tail), Q.index(a.head), rep.maps[a.id]) for a in Q.arrows]
    visited = [0]

    def extensions(U, n, j):
        rows, piv = U
        free = [c for c in range(n) if c not in piv]
        for sub in linalg.subspaces(len(free), j, F):
            visited[0] += 1
            if visited[0] > budget:
                raise BudgetExceeded("echelon forms visited", visited[0], budget)
            new = [list(r) for r in rows]
            for srow in sub:
                v = [0] * n
                for c, x in zip(free, srow):
                    v[c] = x
                new.append(v)
            yield linalg.rref(new, F, n)

    def arrow_ok(t, h, X, cur, prev):
        target = prev[h] if ft.strict else cur[h]
        imgs = [_apply(X, u, F) for u in cur[t][0]]
        return linalg.span_contains(target[0], imgs, F)

    def rec(m, prev):
        if m == len(steps):
            return 1
        step = steps[m]
        order = [v for v in range(nv) if step[v]]
        cur = list(prev)
        total = 0

        def choose(k):
            nonlocal total
            if k == len(order):
                # arrows between untouched vertices were already checked one step earlier
                total += rec(m + 1, list(cur))
                return
            v = order[k]
            fixed = set(order[:k + 1]) | {u for u in range(nv) if not step[u]}
            for ext in extensions(prev[v], rep.dims[v], step[v]):
                cur[v] = ext
                if all(arrow_ok(t, h, X, cur, prev) for t, h, X in arrows
                       if v in (t, h) and t in fixed and h in fixed):
                    choose(k + 1)
            cur[v] = prev[v]

        choose(0)
        return total

    start = [([], []) for _ in range(nv)]
    return rec(0, start)


# --- minors and the splitting function ----------------------------------------------------

def _is_lower_unipotent(g, F):
    n = len(g)
    return all(g[i][j] == (F(1) if i == j else 0) for i in range(n) for j in range(i, n))


def _is_upper(x, strict=False):
    n = len(x)
    return all(x[i][j] == 0 for i in range(n) for j in range(n) if (j <= i if strict else j < i))


def _conj(g, x, F, h=None):
    return linalg.matmul(linalg.matmul(g, x, F), linalg.inverse(h if h is not None else g, F), F)


def fi_minor_function(gs: Sequence[Matrix], xs: Sequence[Matrix], F: Field):
    """Product of leading principal minors of ``g_s x_s g_s^{-1}`` (last factor stops at ``N-1``)."""
    gs = [F.matrix(g) for g in gs]
    xs = [F.matrix(x) for x in xs]
    r = len(xs)
    if r < 2 or len(gs) != r:
        raise ValidationError("need r >= 2 matrices x and as many g")
    N = len(xs[0])
    for m in gs + xs:
        if linalg.shape(m) != (N, N):
            raise ValidationError("all matrices must be N x N")
    if not all(_is_lower_unipotent(g, F) for g in gs):
        raise ValidationError("g_s must be lower unitriangular")
    if not all(_is_upper(x) for x in xs[:-1]) or not _is_upper(xs[-1], strict=True):
        raise ValidationError("x_s must be upper triangular and x_{r-1} strictly upper triangular")
    value = F(1)
    for s in range(r):
        c = _conj(gs[s], xs[s], F)
        top = N if s < r - 1 else N - 1
        for j in range(1, top + 1):
            value = F(value * linalg.leading_minor(c, j, F))
            if value == 0:
                return value
    return value


def splitting_locus_check(gs: Sequence[Matrix], xs: Sequence[Matrix], F: Field) -> bool:
    """``True`` when the minor function vanishes or the image point is regular nilpotent."""
    if fi_minor_function(gs, xs, F) == 0:
        return True
    r = len(xs)
    ys = [_conj(F.matrix(gs[s]), F.matrix(xs[s]), F, F.matrix(gs[(s + 1) % r])) for s in range(r)]
    return is_regular_nilpotent_point(PointOnFiber(ys, F))


def mk_identity_check(g: Matrix, M: Matrix, r: int, F: Field) -> bool:
    """``det((g M g^{-1})_{<=r,<=r}) == det(M_{<=r,>N-r}) det((g^{-1})_{>N-r,<=r})``.

    Requires ``g`` lower unitriangular and the block ``M_{<=r,<=N-r}`` zero.
    """
    g, M = F.matrix(g), F.matrix(M)
    N = len(M)
    if linalg.shape(g) != (N, N) or linalg.shape(M) != (N, N):
        raise ValidationError("g and M must be N x N")
    if not 1 <= r <= N:
        raise ValidationError("r must lie in 1..N")
    if not _is_lower_unipotent(g, F):
        raise ValidationError("g must be lower unitriangular")
    if any(M[i][j] != 0 for i in range(r) for j in range(N - r)):
        raise ValidationError("M must vanish on its upper-left r x (N-r) block")
    ginv = linalg.inverse(g, F)
    lhs = linalg.leading_minor(linalg.matmul(linalg.matmul(g, M, F), ginv, F), r, F)
    rhs = F(linalg.det(linalg.submatrix(M, range(r), range(N - r, N)), F)
            * linalg.det(linalg.submatrix(ginv, range(N - r, N), range(r)), F))
    return lhs == rhs


# --- samplers ------------------------------------------------------------------------------

def _rand(F: Field, rng: random.Random, lo=-5, hi=5):
    return F(rng.randrange(F.p)) if F.p is not None else F(rng.randint(lo, hi))


def random_lower_unipotent(N: int, F: Field, rng: random.Random) -> Matrix:
    return [[F(1) if i == j else (_rand(F, rng) if j < i else F(0)) for j in range(N)] for i in range(N)]


def random_upper(N: int, F: Field, rng: random.Random, strict: bool = False) -> Matrix:
    return [[_rand(F, rng) if (j > i or (j == i and not strict)) else F(0) for j in range(N)]
            for i in range(N)]


def random_matrix(N: int, F: Field, rng: random.Random) -> Matrix:
    return [[_rand(F, rng) for _ in range(N)] for _ in range(N)]


def random_invertible(N: int, F: Field, rng: random.Random) -> Matrix:
    while True:
        g = random_matrix(N, F, rng)
        if linalg.det(g, F) != 0:
            return g


def random_mk_pair(N: int, r: int, F: Field, rng: random.Random) -> tuple[Matrix, Matrix]:
    g = random_lower_unipotent(N, F, rng)
    M = random_matrix(N, F, rng)
    for i in range(r):
        for j in range(N - r):
            M[i][j] = F(0)
    return g, M


def random_splitting_sample(r: int, N: int, F: Field, rng: random.Random):
    gs = [random_lower_unipotent(N, F, rng) for _ in range(r)]
    xs = [random_upper(N, F, rng) for _ in range(r - 1)] + [random_upper(N, F, rng, strict=True)]
    return gs, xs


def jordan_block(N: int, F: Field) -> Matrix:
    return [[F(1) if j == i + 1 else F(0) for j in range(N)] for i in range(N)]


def regular_nilpotent_point(r: int, N: int, F: Field, rng: random.Random | None = None) -> PointOnFiber:
    """``x_i = I`` for ``i < r-1`` and ``x_{r-1}`` a Jordan block, moved by a random group element."""
    xs = [linalg.identity(N, F) for _ in range(r - 1)] + [jordan_block(N, F)]
    x = PointOnFiber(xs, F)
    if rng is not None:
        x = x.act([random_invertible(N, F, rng) for _ in range(r)])
    return x


def random_semisimple_regular_point(r: int, N: int, F: Field, rng: random.Random,
                                    max_tries: int = 10000) -> PointOnFiber:
    """Random invertible ``x_i`` with ``f_0`` semisimple regular (rejection sampling)."""
    for _ in range(max_tries):
        x = PointOnFiber([random_invertible(N, F, rng) for _ in range(r)], F)
        if is_semisimple_regular_point(x):
            return x
    raise BudgetExceeded("rejection-sampling attempts", max_tries, max_tries)
