"""The quiver with vertex set I x J', its vertex shift, and residue sequences.

A vertex (i, j) carries the field value zeta**j * q**i; there is an arrow
u -> w exactly when value(w) == q * value(u).  Residue sequences are tuples
of vertices, and the shift acts on them letterwise.
"""
from __future__ import annotations

import itertools
import json
from collections import Counter
from dataclasses import dataclass, field as dc_field
from typing import Any, Iterable, Sequence

from .params import Params, Weight
from .scalars import is_finite

__all__ = [
    "QuiverError",
    "Vertex",
    "Quiver",
    "OrbitClass",
    "KComposition",
    "EQUAL",
    "NONE",
    "FWD",
    "BACK",
    "BOTH",
    "build_quiver",
    "adjacency",
    "shift_vertex",
    "shift_sequence",
    "swap",
    "orbit_classes",
    "sigma_dot",
    "composition_of",
]

EQUAL, NONE, FWD, BACK, BOTH = "equal", "none", "fwd", "back", "both"

DEFAULT_ENUMERATION_CAP = 200_000


class QuiverError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Vertex:
    i: int
    j: int
    value: Any = dc_field(compare=False, hash=False, default=None)

    @property
    def label(self) -> str:
        return f"{self.i}_{self.j}"

    def __repr__(self) -> str:
        return self.label


class Quiver:
    """Vertices of I x J' (a window of I when e is infinite) with cached values."""

    def __init__(self, params: Params, window: tuple[int, int] | None = None) -> None:
        self.params = params
        f = params.field.field
        if is_finite(params.e):
            residues = list(range(int(params.e)))
            self.window = None
        else:
            if window is None:
                raise QuiverError("an infinite quiver needs a finite window of I")
            residues = list(range(window[0], window[1] + 1))
            self.window = window
        self.residues = residues
        self.vertices = [Vertex(i, j, params.value(i, j)) for j in params.jprime for i in residues]
        self.vertices.sort()
        self._by_pair = {(v.i, v.j): v for v in self.vertices}
        self._by_value: dict = {}
        for v in self.vertices:
            if v.value in self._by_value:
                raise QuiverError(f"vertex values collide at {v} and {self._by_value[v.value]}")
            self._by_value[v.value] = v
        self._q = params.q
        self._field = f

    def __len__(self) -> int:
        return len(self.vertices)

    def vertex(self, i: int, j: int) -> Vertex:
        key = (self.params.residue(i), j)
        if key not in self._by_pair:
            raise QuiverError(f"vertex {key} is not in this quiver")
        return self._by_pair[key]

    def has_vertex(self, i: int, j: int) -> bool:
        return (self.params.residue(i), j) in self._by_pair

    def is_edge(self, u: Vertex, w: Vertex) -> bool:
        return w.value == self._field.mul(self._q, u.value)

    def edges(self) -> list[tuple[Vertex, Vertex]]:
        return [(u, w) for u in self.vertices for w in self.vertices if self.is_edge(u, w)]

    def components(self) -> list[list[Vertex]]:
        parent = {v: v for v in self.vertices}

        def find(v: Vertex) -> Vertex:
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for u, w in self.edges():
            parent[find(u)] = find(w)
        groups: dict = {}
        for v in self.vertices:
            groups.setdefault(find(v), []).append(v)
        return sorted(groups.values())

    def to_json(self) -> dict[str, Any]:
        f = self.params.field.field
        return {
            "vertices": [{"i": v.i, "j": v.j, "value": f.to_json(v.value)} for v in self.vertices],
            "components": self.params.pprime,
            "window": list(self.window) if self.window else None,
        }

    def edge_list(self) -> str:
        return "\n".join(f"{u.label} -> {w.label}" for u, w in self.edges()) + "\n"

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def build_quiver(params: Params, lam: Weight | None = None, radius: int | None = None) -> Quiver:
    """Quiver on I x J'.  For e infinite, I is the window of residues within
    ``radius`` (default n) of the support of ``lam``."""
    if is_finite(params.e):
        return Quiver(params)
    if lam is None or not lam.entries:
        raise QuiverError("an infinite quiver needs a weight to place its window")
    rad = params.n if radius is None else radius
    support = [k if lam.domain == "I" else k[0] for k in lam.support]
    return Quiver(params, (min(support) - rad, max(support) + rad))


def adjacency(u: Vertex, w: Vertex, quiver: Quiver) -> str:
    if u == w:
        return EQUAL
    fwd = quiver.is_edge(u, w)
    back = quiver.is_edge(w, u)
    if fwd and back:
        return BOTH
    if fwd:
        return FWD
    if back:
        return BACK
    return NONE


def shift_vertex(v: Vertex, quiver: Quiver) -> Vertex:
    """The vertex with value zeta * value(v)."""
    params = quiver.params
    if v.j < params.pprime:
        out = quiver.vertex(v.i, v.j + 1)
    else:
        i = v.i + params.eta
        if not quiver.has_vertex(i, 1):
            raise QuiverError(f"shift of {v} leaves the window")
        out = quiver.vertex(i, 1)
    f = params.field.field
    if out.value != f.mul(params.zeta, v.value):
        raise QuiverError(f"shift of {v} disagrees with multiplication by zeta")
    return out


def shift_sequence(k: Sequence[Vertex], quiver: Quiver, power: int = 1) -> tuple[Vertex, ...]:
    power %= quiver.params.p
    out = tuple(k)
    for _ in range(power):
        out = tuple(shift_vertex(v, quiver) for v in out)
    return out


def swap(k: Sequence, a: int) -> tuple:
    """s_a . k: exchange positions a and a+1 (1-based)."""
    k = list(k)
    k[a - 1], k[a] = k[a], k[a - 1]
    return tuple(k)


@dataclass(frozen=True)
class OrbitClass:
    representative: tuple[Vertex, ...]
    members: tuple[tuple[Vertex, ...], ...]

    @property
    def label(self) -> str:
        return "[" + ",".join(v.label for v in self.representative) + "]"

    def __repr__(self) -> str:
        return self.label


def sequences(quiver: Quiver, n: int, cap: int = DEFAULT_ENUMERATION_CAP) -> list[tuple[Vertex, ...]]:
    count = len(quiver) ** n
    if count > cap:
        raise QuiverError(f"|K|^n = {count} exceeds the enumeration cap {cap}")
    return [tuple(k) for k in itertools.product(quiver.vertices, repeat=n)]


def orbit_classes(n: int, quiver: Quiver, cap: int = DEFAULT_ENUMERATION_CAP,
                  seqs: Iterable[tuple[Vertex, ...]] | None = None) -> list[OrbitClass]:
    """Partition K^n (or the given sequences) into orbits of the shift."""
    p = quiver.params.p
    seen: set = set()
    out = []
    for k in (sequences(quiver, n, cap) if seqs is None else seqs):
        if k in seen:
            continue
        orbit = [k]
        cur = shift_sequence(k, quiver)
        while cur != k:
            orbit.append(cur)
            cur = shift_sequence(cur, quiver)
        if len(orbit) != p:
            raise QuiverError(f"orbit of {k} has size {len(orbit)}, expected {p}")
        seen.update(orbit)
        rep = min(orbit)
        # members listed starting from the representative
        start = orbit.index(rep)
        members = tuple(orbit[start:] + orbit[:start])
        out.append(OrbitClass(rep, members))
    out.sort(key=lambda c: c.representative)
    return out


@dataclass(frozen=True)
class KComposition:
    counts: tuple[tuple[Vertex, int], ...]

    @classmethod
    def from_map(cls, counts: dict) -> "KComposition":
        return cls(tuple(sorted((v, c) for v, c in counts.items() if c)))

    def as_dict(self) -> dict:
        return dict(self.counts)

    @property
    def size(self) -> int:
        return sum(c for _, c in self.counts)

    def sequences(self) -> list[tuple[Vertex, ...]]:
        letters = [v for v, c in self.counts for _ in range(c)]
        return sorted(set(itertools.permutations(letters)))

    @property
    def label(self) -> str:
        return "{" + ",".join(f"{v.label}:{c}" for v, c in self.counts) + "}"


def composition_of(k: Sequence[Vertex]) -> KComposition:
    return KComposition.from_map(dict(Counter(k)))


def sigma_dot(alpha: KComposition, quiver: Quiver) -> KComposition:
    """(sigma . alpha)_k = alpha_{sigma^{-1}(k)}."""
    return KComposition.from_map({shift_vertex(v, quiver): c for v, c in alpha.counts})
