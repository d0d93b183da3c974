"""Univariate polynomials over a field as coefficient lists, constant term first."""
from __future__ import annotations

from typing import Any, Iterable, Sequence

from .linalg import identity, matmul

__all__ = [
    "trim",
    "degree",
    "padd",
    "psub",
    "pmul",
    "pdivmod",
    "monic",
    "pgcd",
    "pegcd",
    "peval",
    "peval_matrix",
    "from_roots",
    "split_over_grid",
    "format_poly",
]


def trim(F, f: Sequence) -> list:
    f = list(f)
    while f and F.is_zero(f[-1]):
        f.pop()
    return f


def degree(F, f: Sequence) -> int:
    return len(trim(F, f)) - 1


def padd(F, f: Sequence, g: Sequence) -> list:
    n = max(len(f), len(g))
    out = [F.add(f[i] if i < len(f) else F.zero, g[i] if i < len(g) else F.zero) for i in range(n)]
    return trim(F, out)


def psub(F, f: Sequence, g: Sequence) -> list:
    return padd(F, f, [F.neg(c) for c in g])


def pmul(F, f: Sequence, g: Sequence) -> list:
    if not f or not g:
        return []
    out = [F.zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if F.is_zero(a):
            continue
        for j, b in enumerate(g):
            out[i + j] = F.add(out[i + j], F.mul(a, b))
    return trim(F, out)


def pdivmod(F, f: Sequence, g: Sequence) -> tuple[list, list]:
    g = trim(F, g)
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = trim(F, f)
    q = [F.zero] * max(len(r) - len(g) + 1, 0)
    inv = F.inv(g[-1])
    while len(r) >= len(g):
        c = F.mul(r[-1], inv)
        shift = len(r) - len(g)
        q[shift] = c
        for i, b in enumerate(g):
            r[shift + i] = F.sub(r[shift + i], F.mul(c, b))
        r = trim(F, r)
    return trim(F, q), r


def monic(F, f: Sequence) -> list:
    f = trim(F, f)
    if not f:
        return f
    inv = F.inv(f[-1])
    return [F.mul(c, inv) for c in f]


def pgcd(F, f: Sequence, g: Sequence) -> list:
    a, b = trim(F, f), trim(F, g)
    while b:
        a, b = b, pdivmod(F, a, b)[1]
    return monic(F, a)


def pegcd(F, f: Sequence, g: Sequence) -> tuple[list, list, list]:
    """(d, s, t) with s f + t g = d = gcd(f, g), d monic."""
    r0, r1 = trim(F, f), trim(F, g)
    s0, s1 = [F.one], []
    t0, t1 = [], [F.one]
    while r1:
        quo, rem = pdivmod(F, r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, psub(F, s0, pmul(F, quo, s1))
        t0, t1 = t1, psub(F, t0, pmul(F, quo, t1))
    inv = F.inv(r0[-1])
    return ([F.mul(c, inv) for c in r0], [F.mul(c, inv) for c in s0], [F.mul(c, inv) for c in t0])


def peval(F, f: Sequence, x: Any) -> Any:
    acc = F.zero
    for c in reversed(list(f)):
        acc = F.add(F.mul(acc, x), c)
    return acc


def peval_matrix(F, f: Sequence, M, unit=None):
    """f(M) by Horner; ``unit`` replaces the identity (e.g. a corner idempotent)."""
    n = M.shape[0]
    one = identity(F, n) if unit is None else unit
    acc = F.zeros((n, n))
    prime = F.kind == "prime"
    for c in reversed(list(f)):
        acc = matmul(F, M, acc)
        acc = (acc + int(c) * one) % F.modulus if prime else acc + c * one
    return acc


def from_roots(F, roots: Iterable[tuple[Any, int]]) -> list:
    out = [F.one]
    for v, mult in roots:
        for _ in range(mult):
            out = pmul(F, out, [F.neg(v), F.one])
    return out


def split_over_grid(F, f: Sequence, grid: Iterable[Any]) -> tuple[dict, list]:
    """Divide out linear factors (t - v) for v in grid.

    Returns ({v: multiplicity}, leftover cofactor)."""
    rest = monic(F, f)
    mults: dict = {}
    for v in grid:
        lin = [F.neg(v), F.one]
        while len(rest) > 1:
            quo, rem = pdivmod(F, rest, lin)
            if rem:
                break
            rest = quo
            mults[v] = mults.get(v, 0) + 1
    return mults, rest


def format_poly(F, f: Sequence, var: str = "t") -> str:
    f = trim(F, f)
    if not f:
        return "0"
    parts = []
    for d in range(len(f) - 1, -1, -1):
        c = f[d]
        if F.is_zero(c):
            continue
        cs = str(F.to_json(c))
        if d == 0:
            parts.append(cs)
        else:
            mono = var if d == 1 else f"{var}^{d}"
            parts.append(mono if c == F.one else f"{cs}*{mono}")
    return " + ".join(parts)
