"""Exact coefficient fields.

Two backends are provided: prime fields GF(l), stored as machine integers
in ``[0, l)``, and the rationals, stored as :class:`fractions.Fraction`.
A :class:`FieldSpec` bundles a field with the two distinguished elements
``q`` (of order ``e``) and ``zeta`` (of order ``p``).

    >>> spec = find_prime_field(2, 3)
    >>> spec.modulus, spec.q, spec.zeta
    (7, 6, 2)
    >>> element_order(2, spec)
    3
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Iterator

import numpy as np

__all__ = [
    "INF",
    "is_finite",
    "FieldError",
    "FieldSearchError",
    "PrimeField",
    "RationalField",
    "FieldSpec",
    "is_prime",
    "find_prime_field",
    "rational_field_spec",
    "element_order",
]

# Sentinel for an infinite multiplicative order (e = infinity).
INF = math.inf


def is_finite(order: float | int) -> bool:
    return order != INF


class FieldError(ValueError):
    pass


class FieldSearchError(FieldError):
    pass


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m % 2 == 0:
        return m == 2
    k = 3
    while k * k <= m:
        if m % k == 0:
            return False
        k += 2
    return True


def _prime_factors(m: int) -> list[int]:
    out = []
    k = 2
    while k * k <= m:
        if m % k == 0:
            out.append(k)
            while m % k == 0:
                m //= k
        k += 1
    if m > 1:
        out.append(m)
    return out


class PrimeField:
    """The prime field GF(modulus); elements are ints in [0, modulus)."""

    kind = "prime"

    def __init__(self, modulus: int) -> None:
        if not is_prime(modulus):
            raise FieldError(f"{modulus} is not prime")
        self.modulus = modulus
        # int64 products stay exact as long as residues are below 2**31
        self.dtype: Any = np.int64 if modulus < 2**31 else object
        self.zero = 0
        self.one = 1

    def __repr__(self) -> str:
        return f"GF({self.modulus})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PrimeField) and other.modulus == self.modulus

    def __hash__(self) -> int:
        return hash(("prime", self.modulus))

    def __call__(self, x: Any) -> int:
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.modulus) % self.modulus
        return int(x) % self.modulus

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.modulus

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.modulus

    def mul(self, a: int, b: int) -> int:
        return a * b % self.modulus

    def neg(self, a: int) -> int:
        return -a % self.modulus

    def inv(self, a: int) -> int:
        a = int(a) % self.modulus
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.modulus)

    def div(self, a: int, b: int) -> int:
        return a * self.inv(b) % self.modulus

    def pow(self, a: int, k: int) -> int:
        if k < 0:
            return pow(self.inv(a), -k, self.modulus)
        return pow(int(a), k, self.modulus)

    def is_zero(self, a: int) -> bool:
        return a % self.modulus == 0

    def elements(self) -> Iterator[int]:
        return iter(range(self.modulus))

    def to_json(self, a: int) -> int:
        return int(a)

    def from_json(self, a: Any) -> int:
        return self(a)

    def array(self, data: Any) -> np.ndarray:
        arr = np.array(data, dtype=object)
        if self.dtype is not object:
            arr = arr.astype(np.int64)
        return arr % self.modulus

    def zeros(self, shape: Any) -> np.ndarray:
        return np.zeros(shape, dtype=self.dtype)

    def reduce(self, arr: np.ndarray) -> np.ndarray:
        return arr % self.modulus


class RationalField:
    """The rationals; elements are Fractions, arrays have object dtype."""

    kind = "rationals"

    def __init__(self) -> None:
        self.dtype: Any = object
        self.zero = Fraction(0)
        self.one = Fraction(1)
        self.modulus = None

    def __repr__(self) -> str:
        return "QQ"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("rationals")

    def __call__(self, x: Any) -> Fraction:
        return Fraction(x)

    def add(self, a: Fraction, b: Fraction) -> Fraction:
        return a + b

    def sub(self, a: Fraction, b: Fraction) -> Fraction:
        return a - b

    def mul(self, a: Fraction, b: Fraction) -> Fraction:
        return a * b

    def neg(self, a: Fraction) -> Fraction:
        return -a

    def inv(self, a: Fraction) -> Fraction:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def div(self, a: Fraction, b: Fraction) -> Fraction:
        return Fraction(a) * self.inv(b)

    def pow(self, a: Fraction, k: int) -> Fraction:
        return Fraction(a) ** k

    def is_zero(self, a: Fraction) -> bool:
        return a == 0

    def to_json(self, a: Fraction) -> str:
        return str(Fraction(a))

    def from_json(self, a: Any) -> Fraction:
        return Fraction(a)

    def array(self, data: Any) -> np.ndarray:
        arr = np.array(data, dtype=object)
        flat = arr.reshape(-1)
        for idx in range(flat.size):
            flat[idx] = Fraction(flat[idx])
        return arr

    def zeros(self, shape: Any) -> np.ndarray:
        arr = np.empty(shape, dtype=object)
        arr.fill(Fraction(0))
        return arr

    def reduce(self, arr: np.ndarray) -> np.ndarray:
        return arr


@lru_cache(maxsize=None)
def _prime_field(modulus: int) -> PrimeField:
    return PrimeField(modulus)


_QQ = RationalField()


@dataclass(frozen=True)
class FieldSpec:
    """A field together with q of order e and zeta of order p."""

    kind: str
    modulus: int | None
    q: Any
    zeta: Any
    e: float | int
    p: int

    def __post_init__(self) -> None:
        if self.kind not in ("prime", "rationals"):
            raise FieldError(f"unknown field kind {self.kind!r}")
        if self.kind == "rationals" and self.p not in (1, 2):
            raise FieldError("the rationals only contain roots of unity of order 1 and 2")
        if self.kind == "prime" and self.modulus is not None and self.p % self.modulus == 0:
            raise FieldError("the characteristic must not divide p")
        field = self.field
        if field.is_zero(field(self.q)) or field(self.q) == field.one:
            raise FieldError("q must differ from 0 and 1")
        if element_order(self.q, self) != self.e:
            raise FieldError(f"q={self.q} does not have order {self.e}")
        if element_order(self.zeta, self) != self.p:
            raise FieldError(f"zeta={self.zeta} does not have order {self.p}")

    @property
    def field(self) -> PrimeField | RationalField:
        if self.kind == "prime":
            return _prime_field(self.modulus)
        return _QQ

    def to_json(self) -> dict[str, Any]:
        field = self.field
        out: dict[str, Any] = {"kind": self.kind}
        if self.kind == "prime":
            out["modulus"] = self.modulus
        out["q"] = field.to_json(self.q)
        out["zeta"] = field.to_json(self.zeta)
        out["e"] = "inf" if self.e == INF else int(self.e)
        out["p"] = self.p
        return out

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "FieldSpec":
        kind = data["kind"]
        e = INF if data["e"] in ("inf", "infinity", None) else int(data["e"])
        if kind == "prime":
            m = int(data["modulus"])
            return cls("prime", m, int(data["q"]) % m, int(data["zeta"]) % m, e, int(data["p"]))
        return cls("rationals", None, Fraction(data["q"]), Fraction(data["zeta"]), e, int(data["p"]))


def _order_mod(x: int, modulus: int) -> int:
    x %= modulus
    if x == 0:
        raise FieldError("zero has no multiplicative order")
    m = modulus - 1
    order = m
    for f in _prime_factors(m):
        while order % f == 0 and pow(x, order // f, modulus) == 1:
            order //= f
    return order


def element_order(x: Any, spec: FieldSpec | PrimeField | RationalField) -> float | int:
    """Least m >= 1 with x**m == 1, or INF when no such m exists."""
    field = spec.field if isinstance(spec, FieldSpec) else spec
    if field.kind == "prime":
        return _order_mod(int(field(x)), field.modulus)
    x = Fraction(x)
    if x == 0:
        raise FieldError("zero has no multiplicative order")
    if x == 1:
        return 1
    if x == -1:
        return 2
    return INF


def find_prime_field(e: int, p: int, min_prime: int = 2, max_prime: int = 100_000) -> FieldSpec:
    """Smallest prime l >= min_prime with l = 1 mod lcm(e, p), plus the
    smallest q of order e and zeta of order p in GF(l)."""
    if not is_finite(e) or e < 2:
        raise FieldError("e must be a finite integer >= 2 for a prime field")
    if p < 1:
        raise FieldError("p must be >= 1")
    step = math.lcm(int(e), p)
    ell = max(min_prime, 2)
    while ell <= max_prime:
        if ell % step == 1 % step and is_prime(ell) and p % ell != 0:
            q = next(x for x in range(2, ell) if _order_mod(x, ell) == e)
            zeta = next(x for x in range(1, ell) if _order_mod(x, ell) == p)
            return FieldSpec("prime", ell, q, zeta, int(e), p)
        ell += 1
    raise FieldSearchError(
        f"no prime l <= {max_prime} with l = 1 mod {step} (raise max_prime)"
    )


def rational_field_spec(q: Any = 2, p: int = 2) -> FieldSpec:
    """Rational field with the given q and zeta = -1 (p = 2) or 1 (p = 1)."""
    if p not in (1, 2):
        raise FieldError("the rationals only support p in {1, 2}")
    zeta = Fraction(-1) if p == 2 else Fraction(1)
    q = Fraction(q)
    return FieldSpec("rationals", None, q, zeta, element_order(q, _QQ), p)
