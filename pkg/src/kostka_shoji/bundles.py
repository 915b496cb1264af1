"""Homogeneous bundles ``G_d x^P Y`` described by their fiber weights."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

from .errors import ValidationError
from .partition import DEFAULT_CACHE_SIZE, GeneratorSet, GradedGenerator
from .quiver import FlagType, Quiver, diagram_flagtype, fiber_entries
from .weights import Weight, check_dims, unit


@dataclass
class BundleSpec:
    """Dimension vector, parabolic blocks per vertex and graded fiber weights."""

    dims: tuple[int, ...]
    blocks: tuple[tuple[int, ...], ...]
    gens: GeneratorSet
    var_names: tuple[str, ...]
    label: str = ""
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        for d, bl in zip(self.dims, self.blocks):
            if sum(bl) != d or any(b < 1 for b in bl):
                raise ValidationError(f"blocks {bl} are not a composition of {d}")
        if len(self.blocks) != len(self.dims):
            raise ValidationError("one block composition per vertex is required")
        if len(self.var_names) != self.gens.nvars:
            raise ValidationError("variable names do not match the variable count")

    @property
    def nvars(self) -> int:
        return self.gens.nvars

    @property
    def generators(self):
        return self.gens.generators

    def positive_roots(self) -> list[Weight]:
        """``eps_{v,j} - eps_{v,k}`` for ``j < k`` at every vertex (Borel)."""
        out = []
        for v, d in enumerate(self.dims):
            for j in range(d):
                for k in range(j + 1, d):
                    out.append(unit(self.dims, v, j) - unit(self.dims, v, k))
        return out

    def nilradical(self) -> list[Weight]:
        """Positive roots joining different parabolic blocks at the same vertex."""
        out = []
        for v, (d, bl) in enumerate(zip(self.dims, self.blocks)):
            which = [b for b, size in enumerate(bl) for _ in range(size)]
            for j in range(d):
                for k in range(j + 1, d):
                    if which[j] != which[k]:
                        out.append(unit(self.dims, v, j) - unit(self.dims, v, k))
        return out

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "dims": list(self.dims),
            "blocks": [list(b) for b in self.blocks],
            "vars": list(self.var_names),
            "generators": self.gens.to_json(),
            "functional": list(self.gens.functional),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, data) -> "BundleSpec":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            dims = check_dims(data["dims"])
            gens = [GradedGenerator(_parse_weight(g["weight"], dims), int(g["var"]))
                    for g in data["generators"]]
            names = tuple(data["vars"])
            blocks = tuple(tuple(b) for b in data.get("blocks", [[1] * d for d in dims]))
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"malformed bundle record: {exc}") from None
        return make_bundle(dims, gens, names, blocks, data.get("label", ""))


def _parse_weight(text, dims):
    w = Weight.parse(text) if isinstance(text, str) else Weight(dims, tuple(text))
    if w.dims != dims:
        # parse drops nothing, but empty blocks collapse in text form
        w = Weight(dims, w.flat)
    return w


def make_bundle(dims, gens: Sequence[GradedGenerator], var_names, blocks=None, label="",
                cache_size: int = DEFAULT_CACHE_SIZE) -> BundleSpec:
    """Assemble a spec; the pointedness certificate is also asked to be >= 0 on positive roots."""
    dims = check_dims(dims)
    blocks = tuple(tuple(b) for b in blocks) if blocks is not None else tuple((1,) * d for d in dims)
    roots = []
    for v, d in enumerate(dims):
        for j in range(d):
            for k in range(j + 1, d):
                roots.append((unit(dims, v, j) - unit(dims, v, k)).flat)
    gset = GeneratorSet(gens, dims=dims, nvars=len(var_names), nonneg=roots, cache_size=cache_size)
    return BundleSpec(dims, blocks, gset, tuple(var_names), label)


def _fi_generators(r, N, last_weak):
    dims = (N,) * r
    gens = []
    for i in range(r):
        weak = i < r - 1 or last_weak
        nxt = (i + 1) % r
        for j in range(N):
            for k in range(j if weak else j + 1, N):
                gens.append(GradedGenerator(unit(dims, i, j) - unit(dims, nxt, k), i))
    return dims, gens


def bundle_fi(r: int, N: int) -> BundleSpec:
    """Fiber ``b'_0 + ... + b'_{r-2} + n'_{r-1}``; summand ``i`` graded by ``q_{i+1}``."""
    if r < 2 or N < 1:
        raise ValidationError("bundle_fi needs r >= 2 and N >= 1")
    dims, gens = _fi_generators(r, N, last_weak=False)
    return make_bundle(dims, gens, [f"q{i + 1}" for i in range(r)], label=f"fi(r={r},N={N})")


def bundle_full(r: int, N: int) -> BundleSpec:
    """All ``r`` summands upper triangular; typically not pointed."""
    if r < 2 or N < 1:
        raise ValidationError("bundle_full needs r >= 2 and N >= 1")
    dims, gens = _fi_generators(r, N, last_weak=True)
    return make_bundle(dims, gens, [f"q{i + 1}" for i in range(r)], label=f"full(r={r},N={N})")


def fi_fiber_weight_sum(r: int, N: int, last_weak: bool = True) -> Weight:
    """Sum of the fiber weights without building a generator set (no pointedness check)."""
    dims, gens = _fi_generators(r, N, last_weak)
    total = Weight.zero(dims)
    for g in gens:
        total = total + g.weight
    return total


def bundle_classical(N: int) -> BundleSpec:
    """Cotangent bundle of the flag variety of ``GL_N``: fiber ``n`` graded by one variable."""
    if N < 1:
        raise ValidationError("bundle_classical needs N >= 1")
    dims = (N,)
    gens = [GradedGenerator(unit(dims, 0, j) - unit(dims, 0, k), 0)
            for j in range(N) for k in range(j + 1, N)]
    return make_bundle(dims, gens, ["q"], label=f"classical(N={N})")


def bundle_from_diagram(Q: Quiver, n: int) -> BundleSpec:
    """Complete flags of rank ``n`` at every vertex with the diagram incidence conditions.

    For ``a`` in the marked subquiver the generators are
    ``eps_{t(a),j} - eps_{h(a),k}`` with ``j <= k``; for the other arrows
    ``j < k``.  Each arrow gets its own variable, in arrow order.
    """
    if n < 1:
        raise ValidationError("rank must be positive")
    if not Q.is_acyclic(Q.subquiver):
        raise ValidationError("the marked subquiver must be acyclic")
    dims = (n,) * len(Q.vertices)
    gens = []
    for var, a in enumerate(Q.arrows):
        t, h = Q.index(a.tail), Q.index(a.head)
        weak = a.id in Q.subquiver
        for j in range(n):
            for k in range(j if weak else j + 1, n):
                gens.append(GradedGenerator(unit(dims, t, j) - unit(dims, h, k), var))
    names = [f"q_{a.id}" for a in Q.arrows]
    return make_bundle(dims, gens, names, label=f"diagram({Q.name or 'Q'},n={n})")


def bundle_from_flagtype(Q: Quiver, ft: FlagType) -> BundleSpec:
    """Fiber of ``X_{i,a}``: arrow entries preserving the flag (one variable per arrow)."""
    dims = ft.dims
    index = {a.id: n for n, a in enumerate(Q.arrows)}
    gens = []
    for aid, p, q in fiber_entries(Q, ft):
        a = Q.arrow(aid)
        w = unit(dims, Q.index(a.head), p) - unit(dims, Q.index(a.tail), q)
        gens.append(GradedGenerator(w, index[aid]))
    names = [f"q_{a.id}" for a in Q.arrows]
    return make_bundle(dims, gens, names, blocks=ft.blocks(), label="flagtype")


def diagram_as_flagtype(Q: Quiver, n: int) -> tuple[Quiver, FlagType]:
    """The pair ``(Q^op, type)`` whose flag-type bundle reproduces :func:`bundle_from_diagram`."""
    return Q.opposite(), diagram_flagtype(Q, n)
