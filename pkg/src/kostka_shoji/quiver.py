"""Quivers, flag types and representations of type A and cyclic quivers.

Conventions
-----------
* A representation assigns to an arrow ``a: t -> h`` a matrix of shape
  ``d_h x d_t`` (maps run along arrows); ``G_d`` acts by
  ``g_h x g_t^{-1}``.
* A :class:`FlagType` lists its steps top quotient first, i.e. step ``k``
  is the dimension vector of ``F^{k-1} / F^k`` for a descending flag
  ``V = F^0 > F^1 > ... > F^nu = 0``.  Internally we also use the
  ascending order (``depth``) in which basis vectors enter the flag.
* A matrix entry ``(p, q)`` of ``x_a`` (row ``p`` in ``V_h``, column ``q``
  in ``V_t``) has torus weight ``eps_{h,p} - eps_{t,q}``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Sequence

from . import linalg
from .errors import InvariantViolation, ValidationError
from .linalg import Field


@dataclass(frozen=True)
class Arrow:
    id: str
    tail: Hashable
    head: Hashable


class Quiver:
    """A finite quiver with at most one arrow between each ordered pair of vertices.

    ``subquiver`` is the set of arrow ids forming an (acyclic) subquiver with
    the same vertex set; it is only used by the Orr-Shimozono diagrams.
    """

    def __init__(self, vertices: Sequence[Hashable], arrows: Iterable, subquiver=None, name=None):
        self.vertices = tuple(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise ValidationError("duplicate vertex")
        arrs = []
        for a in arrows:
            a = a if isinstance(a, Arrow) else Arrow(*a)
            if a.tail not in self.vertices or a.head not in self.vertices:
                raise ValidationError(f"arrow {a.id} has an unknown endpoint")
            arrs.append(a)
        self.arrows = tuple(arrs)
        pairs = [(a.tail, a.head) for a in self.arrows]
        if len(set(pairs)) != len(pairs):
            raise ValidationError("at most one arrow per ordered pair of vertices is allowed")
        if len({a.id for a in self.arrows}) != len(self.arrows):
            raise ValidationError("duplicate arrow id")
        self.subquiver = frozenset(subquiver or ())
        if not self.subquiver <= {a.id for a in self.arrows}:
            raise ValidationError("subquiver mentions unknown arrows")
        self.name = name

    def __repr__(self):
        arrows = ", ".join(f"{a.id}:{a.tail}->{a.head}" for a in self.arrows)
        return f"Quiver({list(self.vertices)}; {arrows})"

    def __eq__(self, other):
        return (isinstance(other, Quiver) and self.vertices == other.vertices
                and self.arrows == other.arrows and self.subquiver == other.subquiver)

    def __hash__(self):
        return hash((self.vertices, self.arrows, self.subquiver))

    def index(self, v) -> int:
        return self.vertices.index(v)

    def arrow(self, aid) -> Arrow:
        for a in self.arrows:
            if a.id == aid:
                return a
        raise KeyError(aid)

    @classmethod
    def type_a(cls, n: int, orientation: str | None = None) -> "Quiver":
        """Path quiver on vertices ``1..n``; ``orientation[i]`` is ``'>'`` for ``i+1 -> i+2``."""
        orientation = orientation if orientation is not None else ">" * (n - 1)
        if len(orientation) != n - 1 or set(orientation) - {"<", ">"}:
            raise ValidationError(f"orientation must be a string of {n - 1} '<' or '>'")
        arrows = []
        for i, o in enumerate(orientation, start=1):
            arrows.append((f"a{i}", i, i + 1) if o == ">" else (f"a{i}", i + 1, i))
        return cls(range(1, n + 1), arrows, name=f"A{n}{orientation}")

    @classmethod
    def cyclic(cls, r: int) -> "Quiver":
        """Cyclic quiver on ``Z/r`` with arrows ``a_i: i -> i+1``."""
        if r < 2:
            raise ValidationError("cyclic quiver needs r >= 2")
        return cls(range(r), [(f"a{i}", i, (i + 1) % r) for i in range(r)], name=f"cyclic{r}")

    def opposite(self) -> "Quiver":
        return Quiver(self.vertices, [Arrow(a.id, a.head, a.tail) for a in self.arrows],
                      self.subquiver, name=f"{self.name}^op" if self.name else None)

    def with_subquiver(self, arrow_ids) -> "Quiver":
        q = Quiver(self.vertices, self.arrows, arrow_ids, self.name)
        if not q.is_acyclic(q.subquiver):
            raise ValidationError("the marked subquiver must be acyclic")
        return q

    def is_acyclic(self, arrow_ids=None) -> bool:
        ids = {a.id for a in self.arrows} if arrow_ids is None else set(arrow_ids)
        try:
            self.topological_order(ids)
            return True
        except ValidationError:
            return False

    def topological_order(self, arrow_ids=None) -> list:
        """Vertices ordered so that ``i`` precedes ``j`` whenever ``i -> j`` (ties by position)."""
        ids = {a.id for a in self.arrows} if arrow_ids is None else set(arrow_ids)
        arrs = [a for a in self.arrows if a.id in ids]
        indeg = {v: 0 for v in self.vertices}
        for a in arrs:
            indeg[a.head] += 1
        order = []
        ready = [v for v in self.vertices if indeg[v] == 0]
        while ready:
            v = min(ready, key=self.index)
            ready.remove(v)
            order.append(v)
            for a in arrs:
                if a.tail == v:
                    indeg[a.head] -= 1
                    if indeg[a.head] == 0:
                        ready.append(a.head)
        if len(order) != len(self.vertices):
            raise ValidationError("quiver has an oriented cycle")
        return order

    def is_type_a(self) -> bool:
        n = len(self.vertices)
        if len(self.arrows) != n - 1:
            return False
        deg = {v: 0 for v in self.vertices}
        adj = {v: set() for v in self.vertices}
        for a in self.arrows:
            if a.tail == a.head:
                return False
            deg[a.tail] += 1
            deg[a.head] += 1
            adj[a.tail].add(a.head)
            adj[a.head].add(a.tail)
        if any(d > 2 for d in deg.values()):
            return False
        seen, stack = set(), [self.vertices[0]]
        while stack:
            v = stack.pop()
            if v not in seen:
                seen.add(v)
                stack.extend(adj[v])
        return len(seen) == n

    def is_cyclic_quiver(self) -> bool:
        n = len(self.vertices)
        if n < 2 or len(self.arrows) != n:
            return False
        outs = {}
        for a in self.arrows:
            if a.tail in outs:
                return False
            outs[a.tail] = a.head
        if len(outs) != n:
            return False
        v, seen = self.vertices[0], set()
        while v not in seen:
            seen.add(v)
            v = outs[v]
        return len(seen) == n

    def path_order(self) -> list:
        """Vertices of a type-A quiver along the underlying path."""
        if not self.is_type_a():
            raise ValidationError("unsupported quiver: only type A paths are handled here")
        adj = {v: [] for v in self.vertices}
        for a in self.arrows:
            adj[a.tail].append(a.head)
            adj[a.head].append(a.tail)
        ends = [v for v in self.vertices if len(adj[v]) <= 1]
        start = min(ends, key=self.index)
        order, prev = [start], None
        while len(order) < len(self.vertices):
            nxt = [w for w in adj[order[-1]] if w != prev][0]
            prev = order[-1]
            order.append(nxt)
        return order

    def euler_form(self, d: Sequence[int], e: Sequence[int]) -> int:
        """``sum_i d_i e_i - sum_{a} d_{t(a)} e_{h(a)}`` (equals dim Hom - dim Ext^1)."""
        total = sum(x * y for x, y in zip(d, e))
        for a in self.arrows:
            total -= d[self.index(a.tail)] * e[self.index(a.head)]
        return total


# --- flag types -----------------------------------------------------------------------

@dataclass(frozen=True)
class FlagType:
    """Sequence of dimension-vector jumps, top quotient first.

    ``strict`` flags use the nilpotent incidence ``x(F_t) in F_{t-1}``
    instead of ``x(F_t) in F_t``.
    """

    vertices: tuple
    steps: tuple[tuple[int, ...], ...]
    strict: bool = False

    def __post_init__(self):
        for s in self.steps:
            if len(s) != len(self.vertices):
                raise ValidationError("flag step length does not match the vertex count")
            if any(x < 0 for x in s) or not any(s):
                raise ValidationError("flag steps must be nonnegative and nonzero")

    @classmethod
    def from_sequence(cls, vertices, i: Sequence, a: Sequence[int]) -> "FlagType":
        """Build from a pure sequence ``(i, a)``: ``F^{k-1}/F^k`` sits at ``i_k`` with dim ``a_k``."""
        vertices = tuple(vertices)
        if len(i) != len(a):
            raise ValidationError("i and a must have equal length")
        steps = []
        for v, jump in zip(i, a):
            if v not in vertices:
                raise ValidationError(f"unknown vertex {v}")
            if jump < 0:
                raise ValidationError("negative jump")
            if jump == 0:
                continue
            s = [0] * len(vertices)
            s[vertices.index(v)] = int(jump)
            steps.append(tuple(s))
        return cls(vertices, tuple(steps))

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(sum(s[k] for s in self.steps) for k in range(len(self.vertices)))

    def is_pure(self) -> bool:
        return all(sum(1 for x in s if x) == 1 for s in self.steps)

    def sequence(self) -> tuple[tuple, tuple[int, ...]]:
        """``(i, a)`` for a pure flag type."""
        if not self.is_pure():
            raise ValidationError("flag type is not pure")
        i, a = [], []
        for s in self.steps:
            k = next(k for k, x in enumerate(s) if x)
            i.append(self.vertices[k])
            a.append(s[k])
        return tuple(i), tuple(a)

    def ascending(self) -> tuple[tuple[int, ...], ...]:
        return tuple(reversed(self.steps))

    def depths(self) -> list[list[int]]:
        """``depths[v][p]``: ascending step (1-based) at which basis vector ``p`` of ``V_v`` enters."""
        out = [[] for _ in self.vertices]
        for m, s in enumerate(self.ascending(), start=1):
            for k, x in enumerate(s):
                out[k].extend([m] * x)
        return out

    def blocks(self) -> list[tuple[int, ...]]:
        """Parabolic block sizes per vertex (ascending order)."""
        return [tuple(s[k] for s in self.ascending() if s[k]) for k in range(len(self.vertices))]

    def partial_flag_dim(self) -> int:
        """Dimension of ``G_d / P`` for the stabiliser ``P`` of a flag of this type."""
        total = 0
        for d, bl in zip(self.dims, self.blocks()):
            total += (d * d - sum(b * b for b in bl)) // 2
        return total

    def refines(self, other: "FlagType") -> bool:
        """Whether merging runs of consecutive steps of ``self`` yields ``other``."""
        if self.vertices != other.vertices:
            return False
        k = 0
        for target in other.steps:
            acc = [0] * len(self.vertices)
            while k < len(self.steps) and any(a < t for a, t in zip(acc, target)):
                acc = [a + x for a, x in zip(acc, self.steps[k])]
                k += 1
            if tuple(acc) != tuple(target):
                return False
        return k == len(self.steps)

    def to_json(self) -> dict:
        out = {"vertices": list(self.vertices), "steps": [list(s) for s in self.steps],
               "strict": self.strict}
        if self.is_pure():
            i, a = self.sequence()
            out["i"], out["a"] = list(i), list(a)
        return out

    @classmethod
    def from_json(cls, data) -> "FlagType":
        if "steps" in data:
            return cls(tuple(data["vertices"]), tuple(tuple(s) for s in data["steps"]),
                       bool(data.get("strict", False)))
        return cls.from_sequence(data["vertices"], data["i"], data["a"])


def flagtype_D0(r: int, N: int) -> FlagType:
    """Complete flags at every vertex of the cyclic quiver, all vertices moving together."""
    if r < 2 or N < 1:
        raise ValidationError("need r >= 2 and N >= 1")
    return FlagType(tuple(range(r)), tuple((1,) * r for _ in range(N)))


def flagtype_D1(r: int, N: int) -> FlagType:
    """Interleaved type: in each round vertex ``r-1`` sits on top of vertices ``0..r-2``."""
    if r < 2 or N < 1:
        raise ValidationError("need r >= 2 and N >= 1")
    last = tuple(1 if v == r - 1 else 0 for v in range(r))
    rest = tuple(0 if v == r - 1 else 1 for v in range(r))
    return FlagType(tuple(range(r)), (last, rest) * N)


def fiber_entries(Q: Quiver, ft: FlagType) -> list[tuple[str, int, int]]:
    """Matrix entries ``(arrow_id, p, q)`` allowed in the fiber ``Y`` of ``X_{i,a}``.

    Entry ``(p, q)`` maps basis vector ``q`` of ``V_t`` to basis vector ``p``
    of ``V_h``; it is allowed when the flag stays invariant (or is pushed
    one step down for strict flag types).
    """
    if tuple(Q.vertices) != ft.vertices:
        raise ValidationError("flag type and quiver have different vertex sets")
    depth = ft.depths()
    out = []
    for a in Q.arrows:
        t, h = Q.index(a.tail), Q.index(a.head)
        for p, dp in enumerate(depth[h]):
            for q, dq in enumerate(depth[t]):
                if (dp < dq) if ft.strict else (dp <= dq):
                    out.append((a.id, p, q))
    return out


def diagram_flagtype(Q: Quiver, n: int) -> FlagType:
    """Flag type on ``Q.opposite()`` whose fiber matches the Orr-Shimozono diagram of ``Q``.

    In every round of the complete flags, ``t(a)`` may not come after
    ``h(a)`` for ``a`` in the subquiver, and must come strictly after it for
    the remaining arrows.  Raises when these constraints are cyclic.
    """
    level = {v: 0 for v in Q.vertices}
    for _ in range(len(Q.vertices) + 1):
        changed = False
        for a in Q.arrows:
            if a.id in Q.subquiver:
                lo, hi, gap = a.tail, a.head, 0
            else:
                lo, hi, gap = a.head, a.tail, 1
            if level[hi] < level[lo] + gap:
                level[hi] = level[lo] + gap
                changed = True
        if not changed:
            break
    else:
        raise ValidationError("diagram conditions are cyclic; no flag type refines them")
    top = max(level.values())
    rnd = []
    for lv in range(top + 1):
        s = tuple(1 if level[v] == lv else 0 for v in Q.vertices)
        if any(s):
            rnd.append(s)
    ascending = rnd * n
    return FlagType(tuple(Q.vertices), tuple(reversed(ascending)))


# --- representations ------------------------------------------------------------------

@dataclass(eq=False)
class QuiverRep:
    """Matrices ``x_a`` (shape ``d_h x d_t``) over ``field``; optional indecomposable labels."""

    quiver: Quiver
    dims: tuple[int, ...]
    maps: dict
    field: Field = field(default_factory=Field)
    summands: tuple = ()

    def __post_init__(self):
        self.dims = tuple(int(d) for d in self.dims)
        if len(self.dims) != len(self.quiver.vertices) or any(d < 0 for d in self.dims):
            raise ValidationError("bad dimension vector")
        F = self.field
        maps = {}
        for a in self.quiver.arrows:
            dt, dh = self.dims[self.quiver.index(a.tail)], self.dims[self.quiver.index(a.head)]
            M = self.maps.get(a.id)
            M = [[F(0)] * dt for _ in range(dh)] if M is None else [[F(x) for x in row] for row in M]
            if len(M) != dh or any(len(row) != dt for row in M):
                raise ValidationError(f"matrix for arrow {a.id} must be {dh} x {dt}")
            maps[a.id] = M
        self.maps = maps
        if self.summands:
            total = [0] * len(self.dims)
            for s in self.summands:
                for k, x in enumerate(s.dims):
                    total[k] += x
            if tuple(total) != self.dims:
                raise ValidationError("stated decomposition does not reproduce the dimension vector")

    def __repr__(self):
        names = "+".join(s.label for s in self.summands) if self.summands else "?"
        return f"QuiverRep(dims={self.dims}, {names})"

    @property
    def label(self) -> str:
        own = getattr(self, "_label", None)
        return own if own is not None else "+".join(s.label for s in self.summands)

    @classmethod
    def zero(cls, Q: Quiver, dims, F: Field | None = None) -> "QuiverRep":
        return cls(Q, tuple(dims), {}, F or Field())

    @classmethod
    def interval(cls, Q: Quiver, support: Iterable, F: Field | None = None) -> "QuiverRep":
        """Thin indecomposable with 1-dimensional spaces on a connected ``support``."""
        F = F or Field()
        support = set(support)
        dims = tuple(1 if v in support else 0 for v in Q.vertices)
        maps = {a.id: [[1]] for a in Q.arrows if a.tail in support and a.head in support}
        rep = cls(Q, dims, maps, F)
        order = [v for v in Q.path_order() if v in support]
        rep._label = f"S{order[0]}" if len(order) == 1 else f"M{order[0]}-{order[-1]}"
        rep.summands = (rep,)
        return rep

    @classmethod
    def cyclic_indecomposable(cls, Q: Quiver, top, length: int, F: Field | None = None) -> "QuiverRep":
        """Uniserial nilpotent ``S_top[length]``: a chain of ``length`` vectors starting at ``top``."""
        if not Q.is_cyclic_quiver():
            raise ValidationError("S_i[l] needs an oriented cycle")
        F = F or Field()
        out = {a.tail: a for a in Q.arrows}
        chain = [top]
        for _ in range(length - 1):
            chain.append(out[chain[-1]].head)
        dims = [0] * len(Q.vertices)
        pos = []
        for v in chain:
            k = Q.index(v)
            pos.append(dims[k])
            dims[k] += 1
        maps = {a.id: [[0] * dims[Q.index(a.tail)] for _ in range(dims[Q.index(a.head)])]
                for a in Q.arrows}
        for s in range(length - 1):
            a = out[chain[s]]
            maps[a.id][pos[s + 1]][pos[s]] = 1
        rep = cls(Q, tuple(dims), maps, F)
        rep._label = f"S{top}[{length}]"
        rep.summands = (rep,)
        return rep

    def direct_sum(self, other: "QuiverRep") -> "QuiverRep":
        if self.quiver != other.quiver or self.field != other.field:
            raise ValidationError("direct sum needs the same quiver and field")
        Q = self.quiver
        dims = tuple(x + y for x, y in zip(self.dims, other.dims))
        F = self.field
        maps = {}
        for a in Q.arrows:
            t, h = Q.index(a.tail), Q.index(a.head)
            A, B = self.maps[a.id], other.maps[a.id]
            M = [[F(0)] * dims[t] for _ in range(dims[h])]
            for i in range(self.dims[h]):
                for j in range(self.dims[t]):
                    M[i][j] = A[i][j]
            for i in range(other.dims[h]):
                for j in range(other.dims[t]):
                    M[self.dims[h] + i][self.dims[t] + j] = B[i][j]
            maps[a.id] = M
        summands = (self.summands or (self,)) + (other.summands or (other,))
        return QuiverRep(Q, dims, maps, F, summands)

    @classmethod
    def from_summands(cls, Q: Quiver, parts: Sequence["QuiverRep"], F: Field | None = None) -> "QuiverRep":
        if not parts:
            return cls.zero(Q, (0,) * len(Q.vertices), F)
        rep = parts[0]
        for p in parts[1:]:
            rep = rep.direct_sum(p)
        return rep

    def total_map(self) -> linalg.Matrix:
        """Block matrix of all arrows acting on ``V = sum_v V_v``."""
        F = self.field
        off = [0]
        for d in self.dims:
            off.append(off[-1] + d)
        n = off[-1]
        M = [[F(0)] * n for _ in range(n)]
        for a in self.quiver.arrows:
            t, h = self.quiver.index(a.tail), self.quiver.index(a.head)
            X = self.maps[a.id]
            for i in range(self.dims[h]):
                for j in range(self.dims[t]):
                    M[off[h] + i][off[t] + j] = F(M[off[h] + i][off[t] + j] + X[i][j])
        return M

    def is_nilpotent(self) -> bool:
        M = self.total_map()
        n = len(M)
        return n == 0 or linalg.is_zero(linalg.matpow(M, n, self.field))


def parse_rep(Q: Quiver, text: str, F: Field | None = None) -> QuiverRep:
    """Parse a sum of indecomposables such as ``"S1+M1-2"`` or ``"2*S0[3]+S1[1]"``."""
    parts = []
    for token in text.replace(" ", "").split("+"):
        if not token:
            continue
        mult = 1
        m = re.fullmatch(r"(\d+)\*(.+)", token)
        if m:
            mult, token = int(m.group(1)), m.group(2)
        parts.extend([_parse_indecomposable(Q, token, F)] * mult)
    if not parts:
        raise ValidationError(f"empty representation {text!r}")
    return QuiverRep.from_summands(Q, parts, F)


def _vertex(Q, s):
    for v in Q.vertices:
        if str(v) == s:
            return v
    raise ValidationError(f"unknown vertex {s!r}")


def _parse_indecomposable(Q, token, F):
    m = re.fullmatch(r"S(\w+?)\[(\d+)\]", token)
    if m:
        return QuiverRep.cyclic_indecomposable(Q, _vertex(Q, m.group(1)), int(m.group(2)), F)
    m = re.fullmatch(r"S(\w+)", token)
    if m:
        return QuiverRep.interval(Q, [_vertex(Q, m.group(1))], F)
    m = re.fullmatch(r"M(\w+)-(\w+)", token)
    if m:
        path = Q.path_order()
        i, j = path.index(_vertex(Q, m.group(1))), path.index(_vertex(Q, m.group(2)))
        lo, hi = min(i, j), max(i, j)
        return QuiverRep.interval(Q, path[lo:hi + 1], F)
    raise ValidationError(f"cannot parse indecomposable {token!r}")


def hom_dim(M: QuiverRep, N: QuiverRep) -> int:
    """Dimension of the space of intertwiners ``M -> N`` (kernel of a linear system)."""
    if M.quiver != N.quiver or M.field != N.field:
        raise ValidationError("hom_dim needs representations of the same quiver over the same field")
    Q, F = M.quiver, M.field
    # unknown f_v is an (N_v x M_v) matrix, flattened row-major
    offsets, n = [], 0
    for v in range(len(Q.vertices)):
        offsets.append(n)
        n += N.dims[v] * M.dims[v]
    if n == 0:
        return 0
    rows = []
    for a in Q.arrows:
        t, h = Q.index(a.tail), Q.index(a.head)
        A, B = M.maps[a.id], N.maps[a.id]  # A: M_h x M_t, B: N_h x N_t
        # (B f_t - f_h A)[i][j] = 0 for i < N_h, j < M_t
        for i in range(N.dims[h]):
            for j in range(M.dims[t]):
                row = [F(0)] * n
                for k in range(N.dims[t]):
                    if B[i][k] != 0:
                        idx = offsets[t] + k * M.dims[t] + j
                        row[idx] = F(row[idx] + B[i][k])
                for k in range(M.dims[h]):
                    if A[k][j] != 0:
                        idx = offsets[h] + i * M.dims[h] + k
                        row[idx] = F(row[idx] - A[k][j])
                if any(x != 0 for x in row):
                    rows.append(row)
    return n - (linalg.rank(rows, F) if rows else 0)


def ext_dim(M: QuiverRep, N: QuiverRep) -> int:
    """``dim Ext^1(M, N) = dim Hom(M, N) - <dim M, dim N>``."""
    return hom_dim(M, N) - M.quiver.euler_form(M.dims, N.dims)


def orbit_dim(V: QuiverRep) -> int:
    return sum(d * d for d in V.dims) - hom_dim(V, V)


# --- resolutions ------------------------------------------------------------------------

@dataclass
class DirectedPartition:
    classes: list[list[QuiverRep]]
    hom_checks: list[tuple[str, str, int]]
    ext_checks: list[tuple[str, str, int]]

    def verify(self) -> bool:
        return all(v == 0 for *_, v in self.hom_checks + self.ext_checks)


def directed_partition(V: QuiverRep) -> DirectedPartition:
    """Order the distinct indecomposable summands of ``V`` into a directed partition.

    ``alpha`` must precede ``beta`` when ``Hom(alpha, beta) != 0`` or
    ``Ext^1(beta, alpha) != 0``; a topological sort of these constraints
    (ties broken by first appearance) gives a total order, which is then
    grouped greedily into maximal blocks without internal ``Ext^1``.
    """
    if not V.summands:
        raise ValidationError("representation must be given as a sum of indecomposables")
    distinct: list[QuiverRep] = []
    for s in V.summands:
        if not any(s.label == d.label for d in distinct):
            distinct.append(s)
    n = len(distinct)
    hom = [[hom_dim(a, b) for b in distinct] for a in distinct]
    ext = [[ext_dim(a, b) for b in distinct] for a in distinct]
    before = {i: set() for i in range(n)}
    for i in range(n):
        for j in range(n):
            if i != j and (hom[i][j] or ext[j][i]):
                before[j].add(i)
    order, done = [], set()
    while len(order) < n:
        ready = [i for i in range(n) if i not in done and before[i] <= done]
        if not ready:
            raise InvariantViolation("no directed order exists (representation category not directed)")
        order.append(ready[0])
        done.add(ready[0])
    classes: list[list[int]] = []
    for i in order:
        if classes and all(ext[i][j] == 0 and ext[j][i] == 0 for j in classes[-1]) and ext[i][i] == 0:
            classes[-1].append(i)
        else:
            classes.append([i])
    hom_checks, ext_checks = [], []
    for t, ct in enumerate(classes):
        for u, cu in enumerate(classes):
            for a in ct:
                for b in cu:
                    if u < t:
                        hom_checks.append((distinct[a].label, distinct[b].label, hom_dim(distinct[a], distinct[b])))
                    if t <= u:
                        ext_checks.append((distinct[a].label, distinct[b].label, ext_dim(distinct[a], distinct[b])))
    part = DirectedPartition([[distinct[i] for i in c] for c in classes], hom_checks, ext_checks)
    if not part.verify():
        raise InvariantViolation("directed partition certificate failed")
    return part


def reineke_flagtype(V: QuiverRep) -> FlagType:
    """Reineke's ``(i, a)`` for a type-A representation given as a sum of intervals."""
    Q = V.quiver
    if not Q.is_type_a():
        raise ValidationError("unsupported quiver: Reineke resolutions are implemented for type A only")
    part = directed_partition(V)
    ascending_vertices = Q.topological_order()
    i_seq, a_seq = [], []
    for cls in part.classes:
        labels = {s.label for s in cls}
        dims = [0] * len(Q.vertices)
        support = set()
        for s in V.summands:
            if s.label in labels:
                for k, x in enumerate(s.dims):
                    dims[k] += x
        for s in cls:
            support |= {Q.vertices[k] for k, x in enumerate(s.dims) if x}
        for v in ascending_vertices:
            if v in support:
                i_seq.append(v)
                a_seq.append(dims[Q.index(v)])
    return FlagType.from_sequence(Q.vertices, i_seq, a_seq)


def schiffmann_flagtype(V: QuiverRep) -> FlagType:
    """Kernel filtration ``Ker x^t`` of a nilpotent cyclic representation."""
    Q, F = V.quiver, V.field
    if not Q.is_cyclic_quiver():
        raise ValidationError("Schiffmann resolutions need a cyclic quiver")
    if not V.is_nilpotent():
        raise ValidationError("representation is not nilpotent")
    M = V.total_map()
    n = len(M)
    off = [0]
    for d in V.dims:
        off.append(off[-1] + d)
    kernel_dims = [[0] * len(V.dims)]
    P = linalg.identity(n, F)
    while kernel_dims[-1] != list(V.dims):
        P = linalg.matmul(M, P, F)
        row = []
        for k, d in enumerate(V.dims):
            cols = list(range(off[k], off[k + 1]))
            sub = linalg.submatrix(P, range(n), cols)
            row.append(d - (linalg.rank(sub, F) if d else 0))
        kernel_dims.append(row)
    ascending = [tuple(b - a for a, b in zip(lo, hi)) for lo, hi in zip(kernel_dims, kernel_dims[1:])]
    ascending = [s for s in ascending if any(s)]
    ft = FlagType(Q.vertices, tuple(reversed(ascending)))
    if not ft.is_pure():
        ft = FlagType(Q.vertices, ft.steps, strict=True)
    return ft


def generic_finiteness(Q: Quiver, ft: FlagType, V: QuiverRep | None = None) -> dict:
    """Compare ``dim G_d x^P Y`` with ``dim`` of the orbit of ``V``."""
    if tuple(ft.dims) != tuple(V.dims if V is not None else ft.dims):
        raise ValidationError("flag type and representation have different dimension vectors")
    dim_bundle = ft.partial_flag_dim() + len(fiber_entries(Q, ft))
    report = {"dim_bundle": dim_bundle, "dim_orbit_closure": None, "equal": None}
    if V is not None:
        report["dim_orbit_closure"] = orbit_dim(V)
        report["equal"] = dim_bundle == report["dim_orbit_closure"]
    return report


def interval_reps(Q: Quiver, max_dim: int, F: Field | None = None) -> list[QuiverRep]:
    """Every sum of interval modules of a type-A quiver with dimension entries <= ``max_dim``."""
    path = Q.path_order()
    intervals = [QuiverRep.interval(Q, path[i:j + 1], F)
                 for i in range(len(path)) for j in range(i, len(path))]
    out = []

    def rec(k, dims, chosen):
        if k == len(intervals):
            if chosen:
                out.append(QuiverRep.from_summands(Q, chosen, F))
            return
        I = intervals[k]
        m = 0
        cur = list(dims)
        while all(x <= max_dim for x in cur):
            rec(k + 1, cur, chosen + [I] * m)
            m += 1
            cur = [x + y for x, y in zip(cur, I.dims)]

    rec(0, [0] * len(Q.vertices), [])
    return out


def all_orientations(n: int) -> list[str]:
    return ["".join(o) for o in itertools.product("><", repeat=n - 1)]
