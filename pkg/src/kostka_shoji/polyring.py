"""Sparse multivariate polynomials with Python (arbitrary precision) integer coefficients."""

from __future__ import annotations

import json
from typing import Iterable, Mapping, Sequence

from .errors import ValidationError


class SparsePolynomial:
    """Immutable map from exponent tuples to nonzero integer coefficients."""

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], int] | Iterable = ()):
        self.nvars = int(nvars)
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[tuple[int, ...], int] = {}
        for exp, coef in items:
            exp = tuple(int(e) for e in exp)
            if len(exp) != self.nvars or any(e < 0 for e in exp):
                raise ValidationError(f"bad exponent {exp} for {self.nvars} variables")
            coef = int(coef)
            if coef:
                clean[exp] = clean.get(exp, 0) + coef
        self._terms = {e: c for e, c in clean.items() if c}
        self._hash = None

    @classmethod
    def zero(cls, nvars: int) -> "SparsePolynomial":
        return cls(nvars)

    @classmethod
    def one(cls, nvars: int) -> "SparsePolynomial":
        return cls(nvars, {(0,) * nvars: 1})

    @classmethod
    def constant(cls, nvars: int, c: int) -> "SparsePolynomial":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, i: int, power: int = 1) -> "SparsePolynomial":
        exp = [0] * nvars
        exp[i] = power
        return cls(nvars, {tuple(exp): 1})

    @property
    def terms(self) -> dict[tuple[int, ...], int]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = SparsePolynomial.constant(self.nvars, other)
        if not isinstance(other, SparsePolynomial):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def _coerce(self, other) -> "SparsePolynomial":
        if isinstance(other, int):
            return SparsePolynomial.constant(self.nvars, other)
        if not isinstance(other, SparsePolynomial):
            raise TypeError(f"cannot combine polynomial with {type(other).__name__}")
        if other.nvars != self.nvars:
            raise ValidationError(
                f"variable count mismatch: {self.nvars} vs {other.nvars}"
            )
        return other

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return SparsePolynomial(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return SparsePolynomial(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out: dict[tuple[int, ...], int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return SparsePolynomial(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = SparsePolynomial.one(self.nvars)
        for _ in range(n):
            result = result * self
        return result

    def shift(self, var: int, power: int) -> "SparsePolynomial":
        """Multiply by ``q_var ** power``."""
        if power == 0:
            return self
        out = {}
        for e, c in self._terms.items():
            e = list(e)
            e[var] += power
            out[tuple(e)] = c
        return SparsePolynomial(self.nvars, out)

    def scale(self, k: int) -> "SparsePolynomial":
        return SparsePolynomial(self.nvars, {e: k * c for e, c in self._terms.items()})

    def coefficient(self, exp: Sequence[int]) -> int:
        return self._terms.get(tuple(exp), 0)

    def total_degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def __call__(self, *values: int) -> int:
        return self.evaluate(values)

    def evaluate(self, values: Sequence[int]) -> int:
        total = 0
        for e, c in self._terms.items():
            m = c
            for v, k in zip(values, e):
                m *= v**k
            total += m
        return total

    def specialize(self, values: Mapping[int, int | None] | Sequence[int | None] | None = None,
                   collapse: bool = False) -> "SparsePolynomial":
        """Substitute integers for some variables, or collapse everything onto one variable.

        ``values`` maps a variable index to an integer; ``None`` (or a missing
        index) leaves that variable alone.  With ``collapse=True`` every
        remaining variable is identified with a single variable ``q`` and the
        result is univariate.
        """
        if values is None:
            values = {}
        elif not isinstance(values, Mapping):
            values = {i: v for i, v in enumerate(values)}
        out: dict[tuple[int, ...], int] = {}
        for e, c in self._terms.items():
            kept = []
            for i, k in enumerate(e):
                v = values.get(i)
                if v is None:
                    kept.append(k)
                else:
                    c *= int(v) ** k
                    kept.append(0)
            key = (sum(kept),) if collapse else tuple(kept)
            out[key] = out.get(key, 0) + c
        return SparsePolynomial(1 if collapse else self.nvars, out)

    def collapse(self) -> "SparsePolynomial":
        """Set ``q_1 = ... = q_m = q``."""
        return self.specialize(collapse=True)

    def negative_terms(self) -> list[tuple[tuple[int, ...], int]]:
        return [(e, c) for e, c in self.items() if c < 0]

    def is_nonnegative(self) -> tuple[bool, list[tuple[tuple[int, ...], int]]]:
        bad = self.negative_terms()
        return not bad, bad

    def coefficient_sum(self) -> int:
        return sum(self._terms.values())

    def to_json(self, names: Sequence[str] | None = None) -> dict:
        names = list(names) if names is not None else default_names(self.nvars)
        return {
            "vars": names,
            "terms": [{"exp": list(e), "coef": str(c)} for e, c in self.items()],
        }

    @classmethod
    def from_json(cls, data: Mapping | str) -> "SparsePolynomial":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            nvars = len(data["vars"])
            return cls(nvars, [(t["exp"], int(t["coef"])) for t in data["terms"]])
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"malformed polynomial record: {exc}") from None

    def format(self, names: Sequence[str] | None = None) -> str:
        if not self._terms:
            return "0"
        names = list(names) if names is not None else default_names(self.nvars)
        parts = []
        for e, c in sorted(self._terms.items(), key=lambda t: (sum(t[0]), t[0])):
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"SparsePolynomial({self.format()})"


def default_names(nvars: int) -> list[str]:
    if nvars == 1:
        return ["q"]
    return [f"q{i + 1}" for i in range(nvars)]


def poly_add(a: SparsePolynomial, b: SparsePolynomial) -> SparsePolynomial:
    return a + b


def poly_mul(a: SparsePolynomial, b: SparsePolynomial) -> SparsePolynomial:
    return a * b


def poly_specialize(p: SparsePolynomial, values=None, collapse: bool = False) -> SparsePolynomial:
    return p.specialize(values, collapse=collapse)


def poly_is_nonnegative(p: SparsePolynomial):
    return p.is_nonnegative()
