"""Graded Euler characteristics of bundles: two independent engines.

``kostka_kostant`` uses the alternating Weyl sum of the graded partition
function; ``euler_decompose`` expands the graded character of the fiber's
symmetric algebra and straightens each weight under the dot action.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from typing import Sequence

from .bundles import BundleSpec
from .errors import ValidationError
from .partition import DEFAULT_PARTITION_BUDGET, graded_character
from .polyring import SparsePolynomial
from .weights import (DEFAULT_WEYL_BUDGET, Weight, dot_straighten, enumerate_weyl,
                      make_rho, unit)


def _check_dominant(w: Weight, spec: BundleSpec, name: str):
    if w.dims != spec.dims:
        raise ValidationError(f"{name} has blocks {w.dims}, bundle expects {spec.dims}")
    if not w.is_dominant():
        raise ValidationError(f"{name} = {w} is not dominant")


def kostka_kostant(lam: Weight, mu: Weight, spec: BundleSpec,
                   weyl_budget: int = DEFAULT_WEYL_BUDGET,
                   partition_budget: int = DEFAULT_PARTITION_BUDGET,
                   n_jobs: int = 1) -> SparsePolynomial:
    """``sum_w sign(w) P(w(lam + rho) - (mu + rho))``."""
    _check_dominant(lam, spec, "lambda")
    _check_dominant(mu, spec, "mu")
    gens = spec.gens
    zero = SparsePolynomial.zero(spec.nvars)
    if sum(lam.flat) != sum(mu.flat):
        return zero
    rho = make_rho(spec.dims)
    top = lam + rho
    base = mu + rho

    def chunk(elements):
        total = zero
        for w in elements:
            beta = w.act(top) - base
            if gens.level(beta) < 0:
                continue
            p = gens.partition(beta, partition_budget)
            if p:
                total = total + (p if w.sign > 0 else -p)
        return total

    elements = list(enumerate_weyl(spec.dims, weyl_budget))
    if n_jobs <= 1 or len(elements) < 2:
        return chunk(elements)
    size = -(-len(elements) // n_jobs)
    parts = [elements[i:i + size] for i in range(0, len(elements), size)]
    with ThreadPoolExecutor(max_workers=n_jobs) as pool:
        results = list(pool.map(chunk, parts))
    total = zero
    for r in results:
        total = total + r
    return total


def euler_decompose(mu: Weight, spec: BundleSpec, T: int,
                    partition_budget: int = DEFAULT_PARTITION_BUDGET) -> dict[Weight, SparsePolynomial]:
    """``{lam: K_{lam,mu}}`` for every dominant ``lam`` with ``<phi, lam - mu> <= T``.

    Needs a functional that is also nonnegative on positive roots, so that
    straightening never raises the level and truncation at ``T`` is exact.
    """
    _check_dominant(mu, spec, "mu")
    if T < 0:
        raise ValidationError("truncation level must be nonnegative")
    if not spec.gens.root_compatible:
        raise ValidationError("no pointedness certificate is nonnegative on positive roots; "
                              "truncated straightening would be inexact")
    out: dict[Weight, SparsePolynomial] = {}
    for flat, poly in graded_character(spec.gens, T, partition_budget).items():
        beta = Weight(spec.dims, flat)
        s = dot_straighten(mu + beta)
        if s is None:
            continue
        sign, lam = s
        if spec.gens.level(lam - mu) > T:
            continue
        term = poly if sign > 0 else -poly
        out[lam] = out[lam] + term if lam in out else term
    return {lam: p for lam, p in sorted(out.items(), key=lambda kv: kv[0].flat) if p}


def weight_sum(weights: Sequence[Weight], dims) -> Weight:
    total = Weight.zero(dims)
    for w in weights:
        total = total + w
    return total


def fiber_weight_sum(spec: BundleSpec) -> Weight:
    return weight_sum([g.weight for g in spec.generators], spec.dims)


def canonical_weight(spec: BundleSpec, lam: Weight) -> Weight:
    """``-lam + |n_P| - |Y|``: the twist of the canonical bundle of ``G x^P Y``."""
    if lam.dims != spec.dims:
        raise ValidationError("weight does not match the bundle")
    return -lam + weight_sum(spec.nilradical(), spec.dims) - fiber_weight_sum(spec)


def kappa(r: int, N: int) -> Weight:
    """``sum_{j=1..N} (eps_{0,j} - eps_{r-1,j})``."""
    dims = (N,) * r
    return weight_sum([unit(dims, 0, j) - unit(dims, r - 1, j) for j in range(N)], dims)


def rho_parabolic(spec: BundleSpec) -> Weight:
    """Per-vertex staircase that is constant on blocks: entry = number of later blocks."""
    flat = []
    for bl in spec.blocks:
        for b, size in enumerate(bl):
            flat.extend([len(bl) - 1 - b] * size)
    return Weight(spec.dims, tuple(flat))


def panyushev_shift(spec: BundleSpec) -> tuple[Weight, Weight, Weight]:
    """``(|Y|, |n_P|, rho_P)``; callers test ``mu - (|Y| - |n_P|)`` (optionally ``- rho_P``)."""
    return fiber_weight_sum(spec), weight_sum(spec.nilradical(), spec.dims), rho_parabolic(spec)


def shift_dominance(spec: BundleSpec, mu: Weight) -> tuple[bool, bool]:
    """Whether ``mu - (|Y| - |n_P|)`` and ``mu - rho_P - (|Y| - |n_P|)`` are dominant."""
    y, n, rp = panyushev_shift(spec)
    shifted = mu - (y - n)
    return shifted.is_dominant(), (shifted - rp).is_dominant()


def weight_grid(dims, lo: int, hi: int, equal_size: bool = True):
    """Pairs of dominant weights with entries in ``[lo, hi]`` (same total size when asked)."""
    from .weights import dominant_weights

    ws = dominant_weights(dims, lo, hi)
    for lam, mu in itertools.product(ws, ws):
        if not equal_size or sum(lam.flat) == sum(mu.flat):
            yield lam, mu
