import math
import random

import pytest
import sympy

from kostka_shoji import fibers
from kostka_shoji.errors import BudgetExceeded, ValidationError
from kostka_shoji.linalg import Field, charpoly, gaussian_binomial, subspaces
from kostka_shoji.quiver import Quiver, QuiverRep, FlagType, flagtype_D0, flagtype_D1


def point(xs, p):
    return fibers.PointOnFiber(xs, Field(p))


def test_charpoly_against_sympy():
    rng = random.Random(0)
    for n in range(1, 5):
        A = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)]
        expected = [int(c) for c in reversed(sympy.Matrix(A).charpoly().all_coeffs())]
        assert [int(c) for c in charpoly(A, Field())] == expected


def test_subspace_counts():
    for p in (2, 3):
        for n in range(4):
            for k in range(n + 1):
                assert sum(1 for _ in subspaces(n, k, Field(p))) == gaussian_binomial(n, k, p)


def test_regularity_examples():
    F = Field()
    x = fibers.PointOnFiber([[[1, 0], [0, 1]], [[1, 0], [0, 2]]], F)
    assert fibers.is_semisimple_regular_point(x)
    x = fibers.PointOnFiber([[[1, 0], [0, 1]], [[0, 1], [0, 0]]], F)
    assert fibers.is_regular_nilpotent_point(x)
    x = fibers.PointOnFiber([[[1, 0], [0, 1]], [[0, 0], [0, 0]]], F)
    assert not fibers.is_semisimple_regular_point(x)
    assert not fibers.is_regular_nilpotent_point(x)


def test_count_examples():
    x = point([[[1]], [[1]]], 3)
    assert fibers.count_invariant_flags(x.as_rep(), flagtype_D0(2, 1)) == 1
    x = point([[[1, 0], [0, 1]], [[0, 1], [0, 0]]], 2)
    assert fibers.count_invariant_flags(x.as_rep(), flagtype_D1(2, 2)) == 1
    x = point([[[1, 0], [0, 1]], [[1, 0], [0, 2]]], 3)
    assert fibers.count_invariant_flags(x.as_rep(), flagtype_D0(2, 2)) == 2


def test_count_zero_point_is_all_flags():
    # x = 0: every pair of complete flags counts, (q+1)^2 for N=2, r=2
    for p in (2, 3):
        x = point([[[0, 0], [0, 0]]] * 2, p)
        assert fibers.count_invariant_flags(x.as_rep(), flagtype_D0(2, 2)) == (p + 1) ** 2


def test_count_type_a_grassmannian():
    # A2 with x = 0 and a flag of type (2 at vertex 2, then 1+... ): count Gr(1, F^2) choices
    A2 = Quiver.type_a(2)
    V = QuiverRep(A2, (2, 1), {}, Field(3))
    ft = FlagType((1, 2), ((1, 1), (1, 0)))
    assert fibers.count_invariant_flags(V, ft) == gaussian_binomial(2, 1, 3)


def test_count_budget():
    x = point([[[0, 0], [0, 0]]] * 2, 3)
    with pytest.raises(BudgetExceeded):
        fibers.count_invariant_flags(x.as_rep(), flagtype_D0(2, 2), budget=5)


def test_regular_nilpotent_points_have_one_flag():
    rng = random.Random(11)
    for p in (2, 3):
        for r, N in [(2, 2), (3, 2), (2, 3)]:
            for _ in range(3):
                x = fibers.regular_nilpotent_point(r, N, Field(p), rng)
                assert fibers.is_regular_nilpotent_point(x)
                assert fibers.count_invariant_flags(x.as_rep(), flagtype_D1(r, N)) == 1


def test_semisimple_bound():
    rng = random.Random(3)
    for r, N in [(2, 2), (3, 2)]:
        for _ in range(10):
            x = fibers.random_semisimple_regular_point(r, N, Field(3), rng)
            assert fibers.count_invariant_flags(x.as_rep(), flagtype_D0(r, N)) <= math.factorial(N) ** r


def test_split_semisimple_has_n_factorial_flags():
    # empirical observation, not a proven invariant: with f_0 split over F_p, exactly N! flags
    rng = random.Random(1)
    F = Field(5)
    seen = 0
    for r, N in [(2, 2), (3, 2)]:
        for _ in range(20):
            x = fibers.random_semisimple_regular_point(r, N, F, rng)
            f0 = sympy.Matrix(x.cyclic_products()[0])
            roots = [a for a in range(5) if (f0 - a * sympy.eye(N)).det() % 5 == 0]
            if len(roots) == N:
                seen += 1
                assert fibers.count_invariant_flags(x.as_rep(), flagtype_D0(r, N)) == math.factorial(N)
    assert seen > 0


def test_minor_function_examples():
    F = Field()
    I = [[1, 0], [0, 1]]
    assert fibers.fi_minor_function([I, I], [I, [[0, 1], [0, 0]]], F) == 0
    assert fibers.fi_minor_function([[[1]], [[1]]], [[[3]], [[0]]], F) == 3
    gs = [[[1, 0], [1, 1]], [[1, 0], [4, 1]]]
    xs = [[[4, 1], [0, 2]], [[0, 4], [0, 0]]]
    assert fibers.fi_minor_function(gs, xs, Field(7)) == 1
    with pytest.raises(ValidationError):
        fibers.fi_minor_function([I, I], [I, I], F)


def test_minor_function_against_sympy():
    rng = random.Random(9)
    F = Field(7)
    for _ in range(20):
        gs, xs = fibers.random_splitting_sample(3, 3, F, rng)
        value = 1
        for s in range(3):
            g = sympy.Matrix(gs[s])
            c = g * sympy.Matrix(xs[s]) * g.inv()
            for j in range(1, (3 if s < 2 else 2) + 1):
                value *= c[:j, :j].det()
        assert fibers.fi_minor_function(gs, xs, F) == value % 7


def test_mk_examples():
    F = Field()
    assert fibers.mk_identity_check([[1, 0], [0, 1]], [[0, 1], [0, 0]], 1, F)
    assert fibers.mk_identity_check([[1, 0], [1, 1]], [[0, 1], [0, 0]], 1, F)
    with pytest.raises(ValidationError):
        fibers.mk_identity_check([[1, 0], [0, 1]], [[1, 1], [0, 0]], 1, F)


def test_mk_random():
    rng = random.Random(42)
    for F in (Field(101), Field()):
        for _ in range(40):
            N = rng.randint(1, 4)
            r = rng.randint(1, N)
            g, M = fibers.random_mk_pair(N, r, F, rng)
            assert fibers.mk_identity_check(g, M, r, F)


def test_splitting_examples():
    F = Field()
    assert fibers.splitting_locus_check([[[1]], [[1]]], [[[2]], [[0]]], F)
    I = [[1, 0], [0, 1]]
    assert fibers.splitting_locus_check([I, I], [I, [[0, 1], [0, 0]]], F)


def test_splitting_random_nonvacuous():
    rng = random.Random(1)
    F = Field(7)
    hits = 0
    for _ in range(60):
        gs, xs = fibers.random_splitting_sample(2, 2, F, rng)
        hits += fibers.fi_minor_function(gs, xs, F) != 0
        assert fibers.splitting_locus_check(gs, xs, F)
    assert hits > 0
