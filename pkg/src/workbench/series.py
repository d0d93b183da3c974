"""Truncated multivariate power series F[[y_1..y_n]] / (total degree > D)."""
from __future__ import annotations

from typing import Any

__all__ = ["Series"]


class Series:
    __slots__ = ("F", "n", "D", "terms")

    def __init__(self, F, n: int, D: int, terms: dict | None = None) -> None:
        self.F = F
        self.n = n
        self.D = D
        self.terms = {e: c for e, c in (terms or {}).items() if not F.is_zero(c) and sum(e) <= D}

    @classmethod
    def one(cls, F, n: int, D: int) -> "Series":
        return cls(F, n, D, {(0,) * n: F.one})

    @classmethod
    def var(cls, F, n: int, D: int, a: int) -> "Series":
        """The variable y_a (1-based)."""
        e = [0] * n
        e[a - 1] = 1
        return cls(F, n, D, {tuple(e): F.one})

    def _new(self, terms: dict) -> "Series":
        return Series(self.F, self.n, self.D, terms)

    def _lift(self, other: Any) -> "Series":
        if isinstance(other, Series):
            return other
        return self._new({(0,) * self.n: self.F(other)})

    def __add__(self, other: Any) -> "Series":
        o = self._lift(other)
        F = self.F
        out = dict(self.terms)
        for e, c in o.terms.items():
            out[e] = F.add(out.get(e, F.zero), c)
        return self._new(out)

    __radd__ = __add__

    def __neg__(self) -> "Series":
        return self._new({e: self.F.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other: Any) -> "Series":
        return self + (-self._lift(other))

    def __rsub__(self, other: Any) -> "Series":
        return self._lift(other) - self

    def __mul__(self, other: Any) -> "Series":
        F = self.F
        if not isinstance(other, Series):
            c = F(other)
            return self._new({e: F.mul(v, c) for e, v in self.terms.items()})
        out: dict = {}
        D = self.D
        for e1, c1 in self.terms.items():
            d1 = sum(e1)
            for e2, c2 in other.terms.items():
                if d1 + sum(e2) > D:
                    continue
                e = tuple(x + y for x, y in zip(e1, e2))
                out[e] = F.add(out.get(e, F.zero), F.mul(c1, c2))
        return self._new(out)

    def __rmul__(self, other: Any) -> "Series":
        return self * other

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None  # type: ignore[assignment]

    def constant(self) -> Any:
        return self.terms.get((0,) * self.n, self.F.zero)

    def is_zero(self) -> bool:
        return not self.terms

    def inverse(self) -> "Series":
        F = self.F
        c0 = self.constant()
        if F.is_zero(c0):
            raise ZeroDivisionError("series with zero constant term is not invertible")
        cinv = F.inv(c0)
        u = self * cinv - 1  # no constant term
        acc = Series.one(F, self.n, self.D)
        term = Series.one(F, self.n, self.D)
        for _ in range(self.D):
            term = term * (-u)
            if term.is_zero():
                break
            acc = acc + term
        return acc * cinv

    def swap(self, a: int, b: int) -> "Series":
        """Exchange the variables y_a and y_b."""
        out = {}
        for e, c in self.terms.items():
            e = list(e)
            e[a - 1], e[b - 1] = e[b - 1], e[a - 1]
            out[tuple(e)] = c
        return self._new(out)

    def __repr__(self) -> str:
        return f"Series({len(self.terms)} terms, D={self.D})"
