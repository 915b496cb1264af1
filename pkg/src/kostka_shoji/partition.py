"""Graded vector partition functions.

For a multiset of weights ``g`` each carrying a variable ``q_{v(g)}``, the
partition function ``P(beta)`` is the coefficient of ``e^beta`` in
``prod_g 1 / (1 - q_{v(g)} e^g)``.  This is finite only when the cone
spanned by the generators is pointed, which is certified up front by an
integer functional taking values >= 1 on every generator.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import BudgetExceeded, PointednessViolation, ValidationError
from .polyring import SparsePolynomial
from .weights import Weight

DEFAULT_PARTITION_BUDGET = 200
DEFAULT_CACHE_SIZE = 1 << 16


@dataclass(frozen=True)
class GradedGenerator:
    """A fiber weight tagged with the (0-based) index of its grading variable."""

    weight: Weight
    var: int

    def __post_init__(self):
        if not any(self.weight.flat):
            raise ValidationError("generator weight must be nonzero")
        if self.var < 0:
            raise ValidationError("variable index must be nonnegative")


# --- exact simplex -----------------------------------------------------------

def _pivot(rows, basis, i, j):
    piv = rows[i][j]
    rows[i] = [x / piv for x in rows[i]]
    for k, row in enumerate(rows):
        if k != i and row[j] != 0:
            f = row[j]
            rows[k] = [a - f * b for a, b in zip(row, rows[i])]
    basis[i] = j


def _simplex(rows, basis, cost, allowed):
    """Minimise ``cost . x`` over the tableau in place (Bland's rule)."""
    ncols = len(rows[0]) - 1
    while True:
        entering = None
        for j in range(ncols):
            if not allowed[j] or j in basis:
                continue
            reduced = cost[j] - sum(cost[b] * row[j] for b, row in zip(basis, rows))
            if reduced < 0:
                entering = j
                break
        if entering is None:
            return
        best = None
        for i, row in enumerate(rows):
            if row[entering] > 0:
                ratio = row[-1] / row[entering]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            raise ArithmeticError("unbounded linear program")
        _pivot(rows, basis, best[1], entering)


def _feasible_point(positive: Sequence[Sequence[int]], nonneg: Sequence[Sequence[int]]):
    """Rational ``phi`` with ``a.phi >= 1`` on ``positive`` and ``>= 0`` on ``nonneg``.

    Among feasible points one of minimal l1-norm is returned; ``None`` when
    the system is infeasible.
    """
    cons = [(list(a), Fraction(1)) for a in positive] + [(list(a), Fraction(0)) for a in nonneg]
    n = len(cons[0][0])
    m = len(cons)
    # columns: u (n) | v (n) | slack (m) | artificial (m) | rhs
    width = 2 * n + 2 * m
    rows = []
    for i, (a, b) in enumerate(cons):
        row = [Fraction(0)] * (width + 1)
        for k in range(n):
            row[k] = Fraction(a[k])
            row[n + k] = Fraction(-a[k])
        row[2 * n + i] = Fraction(-1)
        row[2 * n + m + i] = Fraction(1)
        row[-1] = b
        rows.append(row)
    basis = [2 * n + m + i for i in range(m)]
    art = set(basis)
    cost1 = [Fraction(1) if j in art else Fraction(0) for j in range(width)]
    _simplex(rows, basis, cost1, [True] * width)
    if sum(row[-1] for b, row in zip(basis, rows) if b in art) != 0:
        return None
    # drive zero-level artificials out of the basis, dropping redundant rows
    i = 0
    while i < len(rows):
        if basis[i] in art:
            j = next((j for j in range(2 * n + m) if rows[i][j] != 0), None)
            if j is None:
                del rows[i], basis[i]
                continue
            _pivot(rows, basis, i, j)
        i += 1
    cost2 = [Fraction(1) if j < 2 * n else Fraction(0) for j in range(width)]
    _simplex(rows, basis, cost2, [j < 2 * n + m for j in range(width)])
    x = [Fraction(0)] * width
    for b, row in zip(basis, rows):
        x[b] = row[-1]
    return [x[k] - x[n + k] for k in range(n)]


def certify_pointed(gens: Sequence[GradedGenerator | Weight | Sequence[int]],
                    nonneg: Sequence[Sequence[int]] = ()) -> tuple[int, ...]:
    """Integer functional ``phi`` with ``<phi, g> >= 1`` for every generator.

    ``nonneg`` lists extra vectors on which ``phi`` must be >= 0.  Raises
    :class:`PointednessViolation` when no such functional exists.
    """
    vecs = [_flat(g) for g in gens]
    if not vecs:
        raise ValidationError("certify_pointed needs at least one generator")
    if len({len(v) for v in vecs} | {len(v) for v in nonneg}) != 1:
        raise ValidationError("generators have unequal lengths")
    phi = _feasible_point(vecs, [list(v) for v in nonneg])
    if phi is None:
        raise PointednessViolation(
            "no linear functional is positive on every generator "
            "(some nonnegative combination of generators vanishes)"
        )
    scale = math.lcm(*(f.denominator for f in phi)) if phi else 1
    phi = tuple(int(f * scale) for f in phi)
    assert all(sum(a * b for a, b in zip(v, phi)) >= 1 for v in vecs)
    return phi


def _flat(g) -> tuple[int, ...]:
    if isinstance(g, GradedGenerator):
        return g.weight.flat
    if isinstance(g, Weight):
        return g.flat
    return tuple(int(x) for x in g)


# --- generator sets -----------------------------------------------------------

class GeneratorSet:
    """A pointed multiset of graded generators sharing one block structure.

    Parameters
    ----------
    generators : sequence of GradedGenerator
    dims : block structure; inferred from the first generator when omitted.
    nvars : number of grading variables; defaults to ``1 + max var``.
    nonneg : extra vectors the certified functional must be nonnegative on.
        Bundles pass the positive roots here so that dominance-lowering moves
        never raise the functional level.
    cache_size : bound on the memo table of :meth:`partition` (LRU).
    """

    def __init__(self, generators: Sequence[GradedGenerator], dims=None, nvars=None,
                 nonneg: Sequence[Sequence[int]] = (), cache_size: int = DEFAULT_CACHE_SIZE):
        self.generators = tuple(generators)
        if dims is None:
            if not self.generators:
                raise ValidationError("dims required for an empty generator set")
            dims = self.generators[0].weight.dims
        self.dims = tuple(dims)
        for g in self.generators:
            if g.weight.dims != self.dims:
                raise ValidationError(f"generator {g} does not have dims {self.dims}")
        top = max((g.var for g in self.generators), default=-1) + 1
        self.nvars = top if nvars is None else int(nvars)
        if self.nvars < top:
            raise ValidationError("nvars smaller than a generator's variable index")
        width = sum(self.dims)
        nonneg = [tuple(v) for v in nonneg]
        if self.generators:
            try:
                self.functional = certify_pointed(self.generators, nonneg)
                self.root_compatible = True
            except PointednessViolation:
                if not nonneg:
                    raise
                self.functional = certify_pointed(self.generators)
                self.root_compatible = False
        else:
            self.functional = (0,) * width
            self.root_compatible = True
        self.certificate_method = "exact-simplex"
        self._levels = [self.level(g.weight) for g in self.generators]
        # coordinates that the suffix gens[k:] can still move up / down
        self._can_pos = []
        self._can_neg = []
        for k in range(len(self.generators) + 1):
            rest = self.generators[k:]
            self._can_pos.append(tuple(any(g.weight.flat[c] > 0 for g in rest) for c in range(width)))
            self._can_neg.append(tuple(any(g.weight.flat[c] < 0 for g in rest) for c in range(width)))
        self._one = SparsePolynomial.one(self.nvars)
        self._zero = SparsePolynomial.zero(self.nvars)
        self._memo = functools.lru_cache(maxsize=cache_size)(self._count)

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def level(self, beta: Weight | Sequence[int]) -> int:
        return sum(a * b for a, b in zip(_flat(beta), self.functional))

    def _reachable(self, k, residual) -> bool:
        pos, neg = self._can_pos[k], self._can_neg[k]
        for c, x in enumerate(residual):
            if (x > 0 and not pos[c]) or (x < 0 and not neg[c]):
                return False
        return True

    def _count(self, k: int, residual: tuple[int, ...]) -> SparsePolynomial:
        if k == len(self.generators):
            return self._one if not any(residual) else self._zero
        if not self._reachable(k, residual):
            return self._zero
        g = self.generators[k]
        step = g.weight.flat
        total = self._zero
        m = 0
        cur = residual
        while self.level(cur) >= 0:
            sub = self._memo(k + 1, cur)
            if sub:
                total = total + sub.shift(g.var, m)
            cur = tuple(a - b for a, b in zip(cur, step))
            m += 1
        return total

    def partition(self, beta: Weight, budget: int = DEFAULT_PARTITION_BUDGET) -> SparsePolynomial:
        """Graded partition function of ``beta`` (dynamic programme)."""
        lvl = self._check_beta(beta, budget)
        if lvl < 0:
            return self._zero
        return self._memo(0, beta.flat)

    def _check_beta(self, beta, budget):
        if beta.dims != self.dims:
            raise ValidationError(f"weight dims {beta.dims} != generator dims {self.dims}")
        lvl = self.level(beta)
        if lvl > budget:
            raise BudgetExceeded("functional level of beta", lvl, budget)
        return lvl

    def clear_cache(self):
        self._memo.cache_clear()

    def cache_info(self):
        return self._memo.cache_info()

    def to_json(self) -> list[dict]:
        return [{"weight": str(g.weight), "var": g.var} for g in self.generators]


def vector_partition(beta: Weight, gens: GeneratorSet,
                     budget: int = DEFAULT_PARTITION_BUDGET) -> SparsePolynomial:
    return gens.partition(beta, budget)


def vector_partition_bruteforce(beta: Weight, gens: GeneratorSet, cap: int = 16) -> SparsePolynomial:
    """Enumerate every multiset of generators with level at most ``<phi, beta>``.

    Independent of the memoised recursion: multiplicity vectors are listed
    exhaustively in generator order and filtered by their sum.
    """
    lvl = gens._check_beta(beta, cap)
    result = SparsePolynomial.zero(gens.nvars)
    if lvl < 0:
        return result
    n = len(gens.generators)
    levels = gens._levels
    target = list(beta.flat)
    terms: dict[tuple[int, ...], int] = {}
    counts = [0] * n

    def rec(k, budget_left):
        if k == n:
            acc = [0] * len(target)
            exps = [0] * gens.nvars
            for g, c in zip(gens.generators, counts):
                if c:
                    for idx, x in enumerate(g.weight.flat):
                        acc[idx] += c * x
                    exps[g.var] += c
            if acc == target:
                key = tuple(exps)
                terms[key] = terms.get(key, 0) + 1
            return
        c = 0
        while c * levels[k] <= budget_left:
            counts[k] = c
            rec(k + 1, budget_left - c * levels[k])
            c += 1
        counts[k] = 0

    rec(0, lvl)
    return SparsePolynomial(gens.nvars, terms)


def graded_character(gens: GeneratorSet, max_level: int,
                     budget: int = DEFAULT_PARTITION_BUDGET) -> dict[tuple[int, ...], SparsePolynomial]:
    """Truncated expansion of ``prod_g 1/(1 - q_g e^g)``.

    Returns ``{beta: P(beta)}`` for every ``beta`` of level at most
    ``max_level`` with a nonzero coefficient.
    """
    if max_level > budget:
        raise BudgetExceeded("truncation level", max_level, budget)
    width = sum(gens.dims)
    current = {(0,) * width: SparsePolynomial.one(gens.nvars)} if max_level >= 0 else {}
    for g, lvl in zip(gens.generators, gens._levels):
        nxt: dict[tuple[int, ...], SparsePolynomial] = {}
        for beta, poly in current.items():
            base = gens.level(beta)
            m = 0
            cur = beta
            while base + m * lvl <= max_level:
                term = poly.shift(g.var, m)
                nxt[cur] = nxt[cur] + term if cur in nxt else term
                cur = tuple(a + b for a, b in zip(cur, g.weight.flat))
                m += 1
        current = nxt
    return {b: p for b, p in current.items() if p}
