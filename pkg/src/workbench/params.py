"""Arithmetic frame of a configuration.

Given ``e`` (order of q), ``p`` (order of zeta), ``d`` and ``n`` this module
computes ``pprime`` (least m with zeta**m a power of q), ``eta`` (the
exponent with zeta**pprime == q**eta) and ``omega = p // pprime``, and
moves weights between the index sets I x J, I x J' and I.

Residues in I are canonical integers in ``range(e)``; for ``e = INF`` the
set I is the integers.  Second coordinates j live in ``1..p`` (for J) or
``1..pprime`` (for J').
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from typing import Any, Iterable, Mapping

from .scalars import INF, FieldSpec, is_finite

__all__ = [
    "ParamsError",
    "Params",
    "Weight",
    "derive_params",
    "fiber_count",
    "collapse_weight",
    "expand_weight",
    "collapse_weight_i",
    "check_sigma_stable",
    "hecke_weight",
]


class ParamsError(ValueError):
    pass


@dataclass(frozen=True)
class Params:
    e: float | int
    p: int
    d: int
    n: int
    pprime: int
    eta: int
    omega: int
    field: FieldSpec

    @property
    def r(self) -> int:
        return self.p * self.d

    @property
    def jprime(self) -> range:
        return range(1, self.pprime + 1)

    @property
    def q(self) -> Any:
        return self.field.q

    @property
    def zeta(self) -> Any:
        return self.field.zeta

    def residue(self, i: int) -> int:
        return i % self.e if is_finite(self.e) else i

    def j_residue(self, j: int) -> int:
        """Canonical representative of j in Z/pZ, taken in 1..p."""
        return (j - 1) % self.p + 1

    def value(self, i: int, j: int) -> Any:
        """The field element zeta**j * q**i."""
        f = self.field.field
        return f.mul(f.pow(self.zeta, j), f.pow(self.q, i))

    def to_json(self) -> dict[str, Any]:
        return {
            "e": "inf" if self.e == INF else int(self.e),
            "p": self.p,
            "d": self.d,
            "r": self.r,
            "n": self.n,
            "pprime": self.pprime,
            "eta": self.eta,
            "omega": self.omega,
            "field": self.field.to_json(),
        }


@dataclass(frozen=True)
class Weight:
    """Finitely supported non-negative weight.

    ``domain`` is one of "I", "IxJ", "IxJ'".  Keys are residues ``i`` for
    "I" and pairs ``(i, j)`` otherwise.  Zero entries are dropped.
    """

    domain: str
    entries: tuple = dc_field(default=())

    def __post_init__(self) -> None:
        if self.domain not in ("I", "IxJ", "IxJ'"):
            raise ParamsError(f"unknown weight domain {self.domain!r}")
        items = dict(self.entries)
        for key, val in items.items():
            if int(val) < 0:
                raise ParamsError(f"negative weight entry at {key}")
        clean = tuple(sorted((k, int(v)) for k, v in items.items() if int(v) != 0))
        object.__setattr__(self, "entries", clean)

    @classmethod
    def from_map(cls, domain: str, entries: Mapping) -> "Weight":
        return cls(domain, tuple(entries.items()))

    def as_dict(self) -> dict:
        return dict(self.entries)

    def __getitem__(self, key: Any) -> int:
        return self.as_dict().get(key, 0)

    @property
    def level(self) -> int:
        return sum(v for _, v in self.entries)

    @property
    def support(self) -> list:
        return [k for k, _ in self.entries]

    def to_json(self) -> list[list[int]]:
        if self.domain == "I":
            return [[int(k), v] for k, v in self.entries]
        return [[int(k[0]), int(k[1]), v] for k, v in self.entries]

    @classmethod
    def from_json(cls, domain: str, data: Iterable[Iterable[int]]) -> "Weight":
        out: dict = {}
        for row in data:
            row = list(row)
            key = row[0] if domain == "I" else (row[0], row[1])
            out[key] = out.get(key, 0) + row[-1]
        return cls.from_map(domain, out)


def _find_pprime(field: FieldSpec) -> int:
    """Least m >= 1 such that zeta**m lies in the subgroup generated by q."""
    f = field.field
    if not is_finite(field.e):
        # over the rationals, <q> contains no root of unity other than 1
        return field.p
    powers = {f.pow(field.q, i) for i in range(int(field.e))}
    for m in range(1, field.p + 1):
        if f.pow(field.zeta, m) in powers:
            return m
    raise ParamsError("zeta**p = 1 must lie in <q>")  # unreachable


def derive_params(e: float | int, p: int, d: int, n: int, field: FieldSpec) -> Params:
    if field.e != e or field.p != p:
        raise ParamsError(
            f"field orders (e={field.e}, p={field.p}) do not match requested (e={e}, p={p})"
        )
    if not is_finite(e) and p > 2:
        raise ParamsError("e = infinity is only supported with p <= 2")
    if d < 1 or n < 1:
        raise ParamsError("d and n must be positive")
    if is_finite(e):
        pprime = p // math.gcd(p, int(e))
    else:
        pprime = p
    if pprime != _find_pprime(field):
        raise ParamsError("p' disagrees with its defining minimality property")
    f = field.field
    target = f.pow(field.zeta, pprime)
    if is_finite(e):
        etas = [i for i in range(int(e)) if f.pow(field.q, i) == target]
        if len(etas) != 1:
            raise ParamsError("no exponent eta solves zeta**p' = q**eta")
        eta = etas[0]
    else:
        if target != f.one:
            raise ParamsError("no exponent eta solves zeta**p' = q**eta")
        eta = 0
    return Params(e, p, d, n, pprime, eta, p // pprime, field)


def fiber_count(i: int, params: Params) -> int:
    """Number of a in Z/omega Z with eta * a == i in I."""
    i = params.residue(i)
    return sum(1 for a in range(params.omega) if params.residue(params.eta * a) == i)


def collapse_weight(varlambda: Weight, params: Params) -> Weight:
    """Weight over I x J  ->  weight over I x J'.

    Lambda[i, j] is the sum of varlambda[i', j + pprime * a] over the pairs
    (i', a) in I x Z/omega Z with i' + eta * a == i.
    """
    if varlambda.domain != "IxJ":
        raise ParamsError("collapse_weight expects a weight over I x J")
    src: dict = {}
    for (i, j), v in varlambda.entries:
        key = (params.residue(i), params.j_residue(j))
        src[key] = src.get(key, 0) + v
    residues = {i for i, _ in src}
    out: dict = {}
    for i0, _ in src:
        for a in range(params.omega):
            residues.add(params.residue(i0 + params.eta * a))
    for i in residues:
        for j in params.jprime:
            total = 0
            for a in range(params.omega):
                i_src = params.residue(i - params.eta * a)
                total += src.get((i_src, params.j_residue(j + params.pprime * a)), 0)
            if total:
                out[(i, j)] = total
    result = Weight.from_map("IxJ'", out)
    if result.level != varlambda.level:
        raise ParamsError("collapse changed the level")
    return result


def expand_weight(lam: Weight, params: Params) -> Weight:
    """Place Lambda[i, j] at (i, j) in I x J (the image of (j, 0)), zero elsewhere."""
    if lam.domain != "IxJ'":
        raise ParamsError("expand_weight expects a weight over I x J'")
    return Weight.from_map("IxJ", {(i, j): v for (i, j), v in lam.entries})


def collapse_weight_i(varlambda: Weight, params: Params) -> Weight:
    """j-independent version: weight over I of level d -> level omega * d.

    Lambda_i = sum over a in Z/omega Z of varlambda_{i - eta * a}.
    """
    if varlambda.domain != "I":
        raise ParamsError("expected a weight over I")
    src = {params.residue(i): v for i, v in varlambda.entries}
    out: dict = {}
    for i0 in src:
        for a in range(params.omega):
            i = params.residue(i0 + params.eta * a)
            out[i] = out.get(i, 0) + src[i0]
    return Weight.from_map("I", out)


def check_sigma_stable(lam: Weight, params: Params) -> bool:
    """True iff Lambda_i == Lambda_{i + eta} for every i."""
    if lam.domain != "I":
        raise ParamsError("expected a weight over I")
    vals = {params.residue(i): v for i, v in lam.entries}
    return all(vals.get(params.residue(i + params.eta), 0) == v for i, v in vals.items())


def hecke_weight(varlambda_i: Weight, params: Params) -> Weight:
    """From a level-d weight over I to the j-independent weight over K = I x J'.

    This is the weight used by the Ariki-Koike cyclotomic relation when every
    j in J carries the same multiplicities.
    """
    if varlambda_i.level != params.d:
        raise ParamsError(f"weight has level {varlambda_i.level}, expected d={params.d}")
    lam_i = collapse_weight_i(varlambda_i, params)
    out = {(i, j): v for i, v in lam_i.entries for j in params.jprime}
    result = Weight.from_map("IxJ'", out)
    if result.level != params.r:
        raise ParamsError("level mismatch while building the Hecke weight")
    return result
