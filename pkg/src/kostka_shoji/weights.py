"""Weight lattice of a product of general linear groups.

A weight is stored as a flat integer tuple together with the dimension
vector that splits it into per-vertex blocks.  The Weyl group is the
product of symmetric groups acting on each block separately.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import BudgetExceeded, ValidationError

DEFAULT_WEYL_BUDGET = 10**6


def check_dims(dims: Iterable[int]) -> tuple[int, ...]:
    dims = tuple(int(d) for d in dims)
    if any(d < 0 for d in dims):
        raise ValidationError(f"dimension vector has a negative entry: {dims}")
    return dims


@dataclass(frozen=True)
class Weight:
    """Integer weight with per-vertex block structure ``dims``."""

    dims: tuple[int, ...]
    flat: tuple[int, ...]

    def __post_init__(self):
        if len(self.flat) != sum(self.dims):
            raise ValidationError(
                f"weight of length {len(self.flat)} does not match dims {self.dims}"
            )

    @classmethod
    def from_blocks(cls, blocks: Sequence[Sequence[int]]) -> "Weight":
        blocks = [tuple(int(x) for x in b) for b in blocks]
        return cls(tuple(len(b) for b in blocks), tuple(itertools.chain(*blocks)))

    @classmethod
    def zero(cls, dims: Sequence[int]) -> "Weight":
        dims = check_dims(dims)
        return cls(dims, (0,) * sum(dims))

    @classmethod
    def parse(cls, text: str) -> "Weight":
        """Parse ``"1,0;0,-1"`` (blocks separated by ``;``)."""
        blocks = []
        for chunk in text.strip().split(";"):
            chunk = chunk.strip()
            if not chunk:
                blocks.append(())
                continue
            try:
                blocks.append(tuple(int(x) for x in chunk.split(",")))
            except ValueError:
                raise ValidationError(f"cannot parse weight {text!r}") from None
        return cls.from_blocks(blocks)

    def __str__(self):
        return ";".join(",".join(str(x) for x in b) for b in self.blocks())

    @property
    def offsets(self) -> tuple[int, ...]:
        return _offsets(self.dims)

    def block(self, i: int) -> tuple[int, ...]:
        o = self.offsets[i]
        return self.flat[o:o + self.dims[i]]

    def blocks(self) -> list[tuple[int, ...]]:
        return [self.block(i) for i in range(len(self.dims))]

    def _check(self, other: "Weight"):
        if self.dims != other.dims:
            raise ValidationError(f"block mismatch: {self.dims} vs {other.dims}")

    def __add__(self, other: "Weight") -> "Weight":
        self._check(other)
        return Weight(self.dims, tuple(a + b for a, b in zip(self.flat, other.flat)))

    def __sub__(self, other: "Weight") -> "Weight":
        self._check(other)
        return Weight(self.dims, tuple(a - b for a, b in zip(self.flat, other.flat)))

    def __neg__(self) -> "Weight":
        return Weight(self.dims, tuple(-a for a in self.flat))

    def __mul__(self, k: int) -> "Weight":
        return Weight(self.dims, tuple(k * a for a in self.flat))

    __rmul__ = __mul__

    def pair(self, functional: Sequence[int]) -> int:
        return sum(a * b for a, b in zip(self.flat, functional))

    def is_dominant(self) -> bool:
        return all(
            all(b[j] >= b[j + 1] for j in range(len(b) - 1)) for b in self.blocks()
        )


def _offsets(dims):
    out, acc = [], 0
    for d in dims:
        out.append(acc)
        acc += d
    return tuple(out)


def unit(dims: Sequence[int], vertex: int, j: int) -> Weight:
    """Basis character for coordinate ``j`` (0-based) of block ``vertex``."""
    dims = tuple(dims)
    flat = [0] * sum(dims)
    flat[_offsets(dims)[vertex] + j] = 1
    return Weight(dims, tuple(flat))


def make_rho(dims: Sequence[int]) -> Weight:
    """Staircase ``(d-1, ..., 1, 0)`` in every block."""
    dims = check_dims(dims)
    return Weight.from_blocks([tuple(range(d - 1, -1, -1)) for d in dims])


def weyl_order(dims: Sequence[int]) -> int:
    return math.prod(math.factorial(d) for d in dims)


def _perm_sign(perm) -> int:
    sign, seen = 1, [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@dataclass(frozen=True)
class SignedWeyl:
    """Element of a product of symmetric groups, with its sign."""

    perms: tuple[tuple[int, ...], ...]
    sign: int

    def act(self, weight: Weight) -> Weight:
        """Permute entries inside each block: ``out[j] = block[perm[j]]``."""
        out = []
        for perm, block in zip(self.perms, weight.blocks()):
            out.extend(block[k] for k in perm)
        return Weight(weight.dims, tuple(out))


def enumerate_weyl(dims: Sequence[int], budget: int = DEFAULT_WEYL_BUDGET) -> Iterator[SignedWeyl]:
    """Yield every element of ``prod_i S_{d_i}`` once (lexicographic order)."""
    dims = check_dims(dims)
    size = weyl_order(dims)
    if size > budget:
        raise BudgetExceeded("Weyl group order", size, budget)
    factors = [
        [(p, _perm_sign(p)) for p in itertools.permutations(range(d))] for d in dims
    ]
    for combo in itertools.product(*factors):
        sign = 1
        for _, s in combo:
            sign *= s
        yield SignedWeyl(tuple(p for p, _ in combo), sign)


def dot_straighten(nu: Weight) -> tuple[int, Weight] | None:
    """Bring ``nu`` to the dominant chamber under the dot action.

    Returns ``None`` when ``nu + rho`` has a repeated entry in some block,
    otherwise ``(sign(w), w(nu + rho) - rho)``.
    """
    rho = make_rho(nu.dims)
    shifted = nu + rho
    sign = 1
    out = []
    for block in shifted.blocks():
        if len(set(block)) != len(block):
            return None
        order = sorted(range(len(block)), key=lambda k: -block[k])
        sign *= _perm_sign(order)
        out.extend(block[k] for k in order)
    return sign, Weight(nu.dims, tuple(out)) - rho


def dominant_weights(dims: Sequence[int], lo: int, hi: int) -> list[Weight]:
    """All dominant weights with entries in ``[lo, hi]``, in a fixed order."""
    per_block = []
    for d in dims:
        per_block.append(
            [tuple(sorted(c, reverse=True))
             for c in itertools.combinations_with_replacement(range(hi, lo - 1, -1), d)]
        )
    return [Weight.from_blocks(bs) for bs in itertools.product(*per_block)]
