"""Tableau oracles: semistandard tableaux, charge, and Kostka-Foulkes polynomials."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import ValidationError
from .polyring import SparsePolynomial


@dataclass(frozen=True)
class Tableau:
    shape: tuple[int, ...]
    rows: tuple[tuple[int, ...], ...]

    def reading_word(self) -> list[int]:
        """Rows from bottom to top, each left to right."""
        word = []
        for row in reversed(self.rows):
            word.extend(row)
        return word

    def content(self) -> list[int]:
        top = max((x for row in self.rows for x in row), default=0)
        out = [0] * top
        for row in self.rows:
            for x in row:
                out[x - 1] += 1
        return out

    def is_semistandard(self) -> bool:
        for row in self.rows:
            if any(a > b for a, b in zip(row, row[1:])):
                return False
        for upper, lower in zip(self.rows, self.rows[1:]):
            if any(lower[j] <= upper[j] for j in range(len(lower))):
                return False
        return True


def _partition(lam: Sequence[int], name: str) -> tuple[int, ...]:
    lam = tuple(int(x) for x in lam)
    if any(x < 0 for x in lam) or any(a < b for a, b in zip(lam, lam[1:])):
        raise ValidationError(f"{name} = {lam} is not a partition")
    return tuple(x for x in lam if x)


def _horizontal_strips(outer_bound, inner, size):
    """Shapes ``nu`` with ``nu / inner`` a horizontal strip of ``size`` boxes inside ``outer_bound``."""
    n = len(outer_bound)
    inner = list(inner) + [0] * (n - len(inner))
    out = []

    def rec(i, left, cur):
        if i == n:
            if left == 0:
                out.append(tuple(cur))
            return
        hi = outer_bound[i]
        if i > 0:
            hi = min(hi, inner[i - 1])
        for v in range(inner[i], hi + 1):
            if v - inner[i] > left:
                break
            rec(i + 1, left - (v - inner[i]), cur + [v])

    rec(0, size, [])
    return out


def ssyt_enumerate(lam: Sequence[int], mu: Sequence[int]) -> list[Tableau]:
    """All semistandard tableaux of shape ``lam`` and content ``mu`` (a composition)."""
    lam = _partition(lam, "lambda")
    mu = tuple(int(x) for x in mu)
    if any(x < 0 for x in mu):
        raise ValidationError("content must be nonnegative")
    if sum(lam) != sum(mu):
        raise ValidationError(f"|lambda| = {sum(lam)} differs from |mu| = {sum(mu)}")
    results = []

    def rec(letter, shape, chain):
        if letter == len(mu):
            if tuple(x for x in shape if x) == lam:
                results.append(_build(lam, chain))
            return
        for nxt in _horizontal_strips(lam, shape, mu[letter]):
            rec(letter + 1, nxt, chain + [nxt])

    rec(0, (0,) * len(lam), [])
    results.sort(key=lambda t: t.rows)
    return results


def _build(lam, chain):
    rows = [[] for _ in lam]
    prev = [0] * len(lam)
    for letter, shape in enumerate(chain, start=1):
        for i, (a, b) in enumerate(zip(prev, shape)):
            rows[i].extend([letter] * (b - a))
        prev = shape
    return Tableau(lam, tuple(tuple(r) for r in rows))


def charge_word(word: Sequence[int]) -> int:
    """Charge of a word whose content is a partition (standard subword extraction).

    Repeatedly extract a standard subword: starting from the right, find a
    1, then move leftwards cyclically to the next 2, 3, ...; the index goes
    up by one each time the search wraps around.  Charge is the total index.
    """
    letters = list(word)
    if not letters:
        return 0
    counts = {}
    for x in letters:
        counts[x] = counts.get(x, 0) + 1
    top = max(counts)
    if any(counts.get(k, 0) < counts.get(k + 1, 0) for k in range(1, top)):
        raise ValidationError("charge needs a word of partition content")
    alive = list(range(len(letters)))
    total = 0
    while alive:
        seq = [letters[i] for i in alive]
        n = len(seq)
        pos = max(i for i in range(n) if seq[i] == 1)
        chosen = [pos]
        index = 0
        k = 1
        while (k + 1) in seq:
            j = pos - 1
            wrapped = False
            while True:
                if j < 0:
                    j = n - 1
                    wrapped = True
                if seq[j] == k + 1 and j not in chosen:
                    break
                j -= 1
            if wrapped:
                index += 1
            total += index
            pos = j
            chosen.append(j)
            k += 1
        alive = [alive[i] for i in range(n) if i not in set(chosen)]
    return total


def charge(t: Tableau) -> int:
    return charge_word(t.reading_word())


def kostka_charge(lam: Sequence[int], mu: Sequence[int]) -> SparsePolynomial:
    """``sum_T q^{charge(T)}`` over tableaux of shape ``lam``, content ``mu``."""
    mu_p = _partition(mu, "mu")
    terms: dict[tuple[int], int] = {}
    for t in ssyt_enumerate(lam, mu_p):
        c = charge(t)
        terms[(c,)] = terms.get((c,), 0) + 1
    return SparsePolynomial(1, terms)


def kostka_number(lam: Sequence[int], mu: Sequence[int]) -> int:
    return len(ssyt_enumerate(lam, mu))


def partitions(n: int, max_part: int | None = None) -> list[tuple[int, ...]]:
    """Partitions of ``n`` in reverse lexicographic order."""
    max_part = n if max_part is None else max_part
    if n == 0:
        return [()]
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return out


def pad(lam: Sequence[int], n: int) -> tuple[int, ...]:
    lam = tuple(lam)
    if len(lam) > n:
        raise ValidationError(f"{lam} has more than {n} parts")
    return lam + (0,) * (n - len(lam))
