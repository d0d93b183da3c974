"""Noncommutative Groebner completion over path algebras.

A presentation is given over a path algebra: a finite set of vertices
(orthogonal idempotents summing to 1) and arrows.  Each arrow ``x`` acts on
vertices through ``moves[x][c]``: the path ``x e(c)`` equals
``e(moves[x][c]) x e(c)``.  One-vertex presentations are ordinary free
algebras.  Idempotent relations such as e(k)e(k') = delta e(k) and
psi_a e(k) = e(s_a k) psi_a are therefore built into the monomials instead
of being rewritten.

A monomial is a pair ``(k, w)`` standing for ``w e(k)``, where ``w`` is a
tuple of arrow indices.  Contexts are propagated right to left.
Polynomials are dicts from monomials to nonzero field elements.

Monomials are ordered degree-lexicographically: by length, then by the
word with arrows compared by precedence rank, then by the right vertex.
"""
from __future__ import annotations

import heapq
import itertools
import json
import random
import re
from dataclasses import dataclass, field as dc_field
from typing import Any, Iterable, Mapping

from .scalars import FieldSpec

__all__ = [
    "Monomial",
    "Poly",
    "Relation",
    "Presentation",
    "Caps",
    "RewriteSystem",
    "NormalBasis",
    "LaurentPoly",
    "RewriteError",
    "InfiniteDimensionalError",
    "complete",
    "normal_form",
    "reduce_randomly",
    "basis_and_dimension",
    "check_homogeneous",
    "check_complete",
    "parse_pres",
]

Monomial = tuple  # (vertex index, tuple of arrow indices)
Poly = dict


class RewriteError(ValueError):
    pass


class InfiniteDimensionalError(RewriteError):
    pass


@dataclass
class Relation:
    id: str
    terms: Poly


@dataclass
class Presentation:
    """A finitely presented algebra over a path algebra."""

    field: FieldSpec
    vertices: list[str]
    arrows: list[str]
    moves: list[list[int]]
    relations: list[Relation]
    degrees: list[list[int]] | None = None
    precedence: list[int] | None = None
    structural: tuple[str, ...] = ()
    metadata: dict = dc_field(default_factory=dict)
    name: str = "presentation"

    def __post_init__(self) -> None:
        nv = len(self.vertices)
        if len(self.moves) != len(self.arrows):
            raise RewriteError("one move table per arrow is required")
        for x, row in enumerate(self.moves):
            if len(row) != nv or any(not 0 <= c < nv for c in row):
                raise RewriteError(f"bad move table for arrow {self.arrows[x]}")
        for rel in self.relations:
            for k, w in rel.terms:
                if not 0 <= k < nv or any(not 0 <= x < len(self.arrows) for x in w):
                    raise RewriteError(f"relation {rel.id} uses an undeclared generator")

    @property
    def F(self):
        return self.field.field

    @property
    def rank(self) -> list[int]:
        return list(range(len(self.arrows))) if self.precedence is None else list(self.precedence)

    def arrow_index(self, label: str) -> int:
        return self.arrows.index(label)

    def vertex_index(self, label: str) -> int:
        return self.vertices.index(label)

    def contexts(self, mono: Monomial) -> list[int]:
        k, w = mono
        ctx = [0] * (len(w) + 1)
        ctx[-1] = k
        for i in range(len(w) - 1, -1, -1):
            ctx[i] = self.moves[w[i]][ctx[i + 1]]
        return ctx

    def left_vertex(self, mono: Monomial) -> int:
        return self.contexts(mono)[0]

    def degree(self, mono: Monomial) -> int:
        if self.degrees is None:
            raise RewriteError("presentation carries no degrees")
        ctx = self.contexts(mono)
        return sum(self.degrees[x][ctx[i + 1]] for i, x in enumerate(mono[1]))

    def word(self, text: str, vertex: int = 0) -> Monomial:
        """Monomial from space separated arrow labels."""
        labels = text.split()
        return (vertex, tuple(self.arrow_index(a) for a in labels))

    def format_monomial(self, mono: Monomial) -> str:
        k, w = mono
        letters = " ".join(self.arrows[x] for x in w)
        if len(self.vertices) == 1:
            return letters or "1"
        tail = f"e({self.vertices[k]})"
        return f"{letters} {tail}" if letters else tail

    def format_poly(self, poly: Poly) -> str:
        if not poly:
            return "0"
        F = self.F
        keyf = _order_key(self.rank)
        parts = [f"({F.to_json(c)})*[{self.format_monomial(m)}]"
                 for m, c in sorted(poly.items(), key=lambda mc: keyf(mc[0]), reverse=True)]
        return " + ".join(parts)

    def dumps(self) -> str:
        """The plain-text .pres format."""
        lines = ["# workbench presentation v1", f"name {self.name}",
                 "field " + json.dumps(self.field.to_json(), sort_keys=True),
                 "vertices " + " ".join(self.vertices),
                 "arrows " + " ".join(self.arrows)]
        if len(self.vertices) > 1:
            for x, a in enumerate(self.arrows):
                lines.append(f"move {a} " + " ".join(self.vertices[c] for c in self.moves[x]))
        if self.degrees is not None:
            for x, a in enumerate(self.arrows):
                lines.append(f"degree {a} " + " ".join(str(d) for d in self.degrees[x]))
        if self.precedence is not None:
            lines.append("precedence " + " ".join(str(r) for r in self.precedence))
        if self.structural:
            lines.append("structural " + " ".join(self.structural))
        for rel in self.relations:
            lines.append(f"relation {rel.id}: {self._format_terms(rel.terms)}")
        return "\n".join(lines) + "\n"

    def _format_terms(self, poly: Poly) -> str:
        F = self.F
        parts = []
        for (k, w), c in sorted(poly.items()):
            letters = " ".join(self.arrows[x] for x in w)
            parts.append(f"({F.to_json(c)})*[{letters} | {self.vertices[k]}]")
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict[str, Any]:
        F = self.F
        return {
            "name": self.name,
            "field": self.field.to_json(),
            "vertices": self.vertices,
            "arrows": self.arrows,
            "moves": self.moves,
            "degrees": self.degrees,
            "precedence": self.precedence,
            "structural": list(self.structural),
            "relations": [
                {"id": r.id, "terms": [[F.to_json(c), k, list(w)] for (k, w), c in sorted(r.terms.items())]}
                for r in self.relations
            ],
        }

    def with_precedence(self, precedence: list[int]) -> "Presentation":
        return Presentation(self.field, self.vertices, self.arrows, self.moves, self.relations,
                            self.degrees, list(precedence), self.structural, dict(self.metadata),
                            self.name)


_TERM = re.compile(r"\(([^)]*)\)\*\[([^|\]]*)\|\s*([^\]]*)\]")


def parse_pres(text: str) -> Presentation:
    """Inverse of :meth:`Presentation.dumps`."""
    fields: dict[str, Any] = {"moves": {}, "degrees": {}, "relations": []}
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, _, rest = line.partition(" ")
        if head == "name":
            fields["name"] = rest.strip()
        elif head == "field":
            fields["field"] = FieldSpec.from_json(json.loads(rest))
        elif head == "vertices":
            fields["vertices"] = rest.split()
        elif head == "arrows":
            fields["arrows"] = rest.split()
        elif head == "move":
            a, *targets = rest.split()
            fields["moves"][a] = targets
        elif head == "degree":
            a, *degs = rest.split()
            fields["degrees"][a] = [int(d) for d in degs]
        elif head == "precedence":
            fields["precedence"] = [int(r) for r in rest.split()]
        elif head == "structural":
            fields["structural"] = tuple(rest.split())
        elif head == "relation":
            rid, _, body = rest.partition(":")
            fields["relations"].append((rid.strip(), body))
        else:
            raise RewriteError(f"unknown .pres directive {head!r}")
    try:
        spec = fields["field"]
        vertices = fields["vertices"]
        arrows = fields["arrows"]
    except KeyError as exc:
        raise RewriteError(f"missing .pres directive {exc}") from None
    vidx = {v: i for i, v in enumerate(vertices)}
    aidx = {a: i for i, a in enumerate(arrows)}
    if len(vertices) == 1:
        moves = [[0] for _ in arrows]
    else:
        moves = [[vidx[t] for t in fields["moves"][a]] for a in arrows]
    degrees = [fields["degrees"][a] for a in arrows] if fields["degrees"] else None
    F = spec.field
    relations = []
    for rid, body in fields["relations"]:
        terms: Poly = {}
        for coeff, word, vert in _TERM.findall(body):
            mono = (vidx[vert.strip()], tuple(aidx[a] for a in word.split()))
            c = F.add(terms.get(mono, F.zero), F.from_json(coeff.strip()))
            if F.is_zero(c):
                terms.pop(mono, None)
            else:
                terms[mono] = c
        relations.append(Relation(rid, terms))
    return Presentation(spec, vertices, arrows, moves, relations, degrees,
                        fields.get("precedence"), fields.get("structural", ()),
                        name=fields.get("name", "presentation"))


def _order_key(rank: list[int]):
    def key(mono: Monomial) -> tuple:
        k, w = mono
        return (len(w), tuple(rank[x] for x in w), k)
    return key


@dataclass(frozen=True)
class Caps:
    max_rules: int = 20_000
    max_degree: int = 64
    max_steps: int = 2_000_000


_DEAD = object()


class _Reducer:
    """Rule lookup and full reduction, shared by completion and normal forms."""

    def __init__(self, pres: Presentation) -> None:
        self.pres = pres
        self.F = pres.F
        self.moves = pres.moves
        rank = pres.rank
        self.rank = rank
        self.rules: dict[tuple[int, tuple], Poly] = {}
        self.dead: set[int] = set()
        self._length_counts: dict[int, int] = {}
        self.lengths: list[int] = []
        self._nkeys: dict = {}

    def key(self, mono: Monomial) -> tuple:
        k, w = mono
        rank = self.rank
        return (len(w), tuple(rank[x] for x in w), k)

    def nkey(self, mono: Monomial) -> tuple:
        nk = self._nkeys.get(mono)
        if nk is None:
            k, w = mono
            rank = self.rank
            nk = (-len(w), tuple(-rank[x] for x in w), -k)
            if len(self._nkeys) < 2_000_000:
                self._nkeys[mono] = nk
        return nk

    def add_rule(self, lm: Monomial, rhs: Poly) -> None:
        self.rules[lm] = rhs
        L = len(lm[1])
        self._length_counts[L] = self._length_counts.get(L, 0) + 1
        self.lengths = sorted(self._length_counts)

    def remove_rule(self, lm: Monomial) -> Poly:
        rhs = self.rules.pop(lm)
        L = len(lm[1])
        self._length_counts[L] -= 1
        if not self._length_counts[L]:
            del self._length_counts[L]
        self.lengths = sorted(self._length_counts)
        return rhs

    def contexts(self, k: int, w: tuple) -> list[int]:
        moves = self.moves
        ctx = [0] * (len(w) + 1)
        ctx[-1] = k
        for i in range(len(w) - 1, -1, -1):
            ctx[i] = moves[w[i]][ctx[i + 1]]
        return ctx

    def find(self, mono: Monomial, start_only: bool = False):
        k, w = mono
        ctx = self.contexts(k, w)
        dead = self.dead
        if dead and any(c in dead for c in ctx):
            return _DEAD
        rules = self.rules
        m = len(w)
        lengths = self.lengths
        starts = range(1) if start_only else range(m)
        for i in starts:
            for L in lengths:
                j = i + L
                if j > m:
                    break
                rhs = rules.get((ctx[j], w[i:j]))
                if rhs is not None:
                    return i, j, rhs
        return None

    def occurrences(self, mono: Monomial) -> list:
        """All (i, j, rhs) rule matches inside mono (for randomized strategies)."""
        k, w = mono
        ctx = self.contexts(k, w)
        if self.dead and any(c in self.dead for c in ctx):
            return [_DEAD]
        out = []
        for i in range(len(w)):
            for L in self.lengths:
                j = i + L
                if j > len(w):
                    break
                rhs = self.rules.get((ctx[j], w[i:j]))
                if rhs is not None:
                    out.append((i, j, rhs))
        return out

    def reduce(self, poly: Mapping) -> Poly:
        F = self.F
        work = {m: c for m, c in poly.items() if not F.is_zero(c)}
        nkey = self.nkey
        heap = [(nkey(m), m) for m in work]
        heapq.heapify(heap)
        out: Poly = {}
        push, pop = heapq.heappush, heapq.heappop
        add, mul, is_zero = F.add, F.mul, F.is_zero
        while heap:
            _, m = pop(heap)
            c = work.pop(m, None)
            if c is None:
                continue
            hit = self.find(m)
            if hit is None:
                out[m] = c
                continue
            if hit is _DEAD:
                continue
            i, j, rhs = hit
            k, w = m
            pre, post = w[:i], w[j:]
            for (_, rw), d in rhs.items():
                nm = (k, pre + rw + post)
                v = mul(c, d)
                old = work.get(nm)
                if old is None:
                    work[nm] = v
                    push(heap, (nkey(nm), nm))
                else:
                    s = add(old, v)
                    if is_zero(s):
                        del work[nm]
                    else:
                        work[nm] = s
        return out

    def divides(self, small: Monomial, big: Monomial) -> bool:
        ks, u = small
        kb, v = big
        if len(u) > len(v):
            return False
        ctx = self.contexts(kb, v)
        L = len(u)
        for i in range(len(v) - L + 1):
            if v[i:i + L] == u and ctx[i + L] == ks:
                return True
        return False


def _split_uniform(pres: Presentation, poly: Poly) -> list[Poly]:
    groups: dict = {}
    for mono, c in poly.items():
        ctx = pres.contexts(mono)
        groups.setdefault((mono[0], ctx[0]), {})[mono] = c
    return [groups[g] for g in sorted(groups)]


@dataclass
class RewriteSystem:
    """A (possibly partial) completed rewriting system."""

    pres: Presentation
    rules: dict
    dead: frozenset
    complete: bool
    diagnostics: dict

    def __post_init__(self) -> None:
        self._reducer = _Reducer(self.pres)
        for lm in sorted(self.rules, key=self._reducer.key):
            self._reducer.add_rule(lm, self.rules[lm])
        self._reducer.dead = set(self.dead)

    def reduce(self, poly: Mapping) -> Poly:
        return self._reducer.reduce(poly)

    def is_irreducible(self, mono: Monomial) -> bool:
        return self._reducer.find(mono) is None

    def key(self, mono: Monomial) -> tuple:
        return self._reducer.key(mono)

    def leading(self, poly: Poly) -> Monomial:
        return max(poly, key=self._reducer.key)

    def dumps(self) -> str:
        pres = self.pres
        lines = [f"# rules: {len(self.rules)}  complete: {str(self.complete).lower()}"]
        for k in sorted(self.dead):
            lines.append(f"e({pres.vertices[k]}) -> 0")
        for lm in sorted(self.rules, key=self._reducer.key):
            lines.append(f"{pres.format_monomial(lm)} -> {pres.format_poly(self.rules[lm])}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict[str, Any]:
        F = self.pres.F
        return {
            "complete": self.complete,
            "dead_vertices": sorted(self.dead),
            "rules": [
                {"lhs": [lm[0], list(lm[1])],
                 "rhs": [[F.to_json(c), k, list(w)] for (k, w), c in sorted(self.rules[lm].items())]}
                for lm in sorted(self.rules, key=self._reducer.key)
            ],
            "diagnostics": self.diagnostics,
        }


def complete(pres: Presentation, caps: Caps = Caps()) -> RewriteSystem:
    """Buchberger-Mora completion of the two-sided ideal of ``pres``."""
    red = _Reducer(pres)
    F = red.F
    queue: list[Poly] = []
    for rel in pres.relations:
        queue.extend(_split_uniform(pres, rel.terms))
    queue.reverse()
    pairs: list = []
    rule_ids: dict[Monomial, int] = {}
    counter = itertools.count()
    diagnostics: dict[str, Any] = {"spolys": 0, "skipped_degree": 0, "evicted": 0, "vertex_kills": 0}
    complete_flag = True

    def make_pairs(lm: Monomial) -> None:
        ka, u = lm
        for other in list(red.rules):
            for a, b in ((lm, other), (other, lm)) if other != lm else ((lm, lm),):
                _overlaps_into(a, b)

    def _overlaps_into(a: Monomial, b: Monomial) -> None:
        ka, u = a
        kb, v = b
        top = min(len(u), len(v))
        if top < 2:
            return
        ctx_v = None
        for l in range(1, top):
            if u[-l:] != v[:l]:
                continue
            if ctx_v is None:
                ctx_v = red.contexts(kb, v)
            if ctx_v[l] != ka:
                continue
            heapq.heappush(pairs, (len(u) + len(v) - l, next(counter), rule_ids[a], rule_ids[b], a, b, l))

    def spoly(a: Monomial, b: Monomial, l: int) -> Poly:
        ka, u = a
        kb, v = b
        tail = v[l:]
        head = u[:len(u) - l]
        out: Poly = {}
        for (k, w), c in red.rules[a].items():
            out[(kb, w + tail)] = c
        for (k, w), c in red.rules[b].items():
            m = (k, head + w)
            s = F.sub(out.get(m, F.zero), c)
            if F.is_zero(s):
                out.pop(m, None)
            else:
                out[m] = s
        return out

    def insert(h: Poly) -> None:
        nonlocal complete_flag
        h = red.reduce(h)
        if not h:
            return
        lm = max(h, key=red.key)
        inv = F.inv(h[lm])
        rhs = {m: F.neg(F.mul(c, inv)) for m, c in h.items() if m != lm}
        if not lm[1]:
            # e(k) = 0: the vertex dies; rules passing through it are
            # re-examined, pairs of the others stay valid
            dead = lm[0]
            red.dead.add(dead)
            diagnostics["vertex_kills"] += 1
            for old in list(red.rules):
                monos = [old, *red.rules[old]]
                if not any(dead in red.contexts(k, w) for k, w in monos):
                    continue
                old_rhs = red.remove_rule(old)
                poly = {m: F.neg(c) for m, c in old_rhs.items()}
                poly[old] = F.one
                queue.append(poly)
                rule_ids.pop(old, None)
            return
        for old in list(red.rules):
            if red.divides(lm, old):
                old_rhs = red.remove_rule(old)
                poly = {m: F.neg(c) for m, c in old_rhs.items()}
                poly[old] = F.one
                queue.append(poly)
                rule_ids.pop(old, None)
                diagnostics["evicted"] += 1
        red.add_rule(lm, rhs)
        rule_ids[lm] = next(counter)
        make_pairs(lm)
        if len(red.rules) > caps.max_rules:
            complete_flag = False
            raise _CapHit(f"max_rules={caps.max_rules} exceeded")

    try:
        while queue or pairs:
            while queue:
                insert(queue.pop())
            if not pairs:
                break
            length, _, ida, idb, a, b, l = heapq.heappop(pairs)
            if rule_ids.get(a) != ida or rule_ids.get(b) != idb:
                continue
            if length > caps.max_degree:
                diagnostics["skipped_degree"] += 1
                complete_flag = False
                continue
            diagnostics["spolys"] += 1
            if diagnostics["spolys"] > caps.max_steps:
                complete_flag = False
                raise _CapHit(f"max_steps={caps.max_steps} exceeded")
            queue.append(spoly(a, b, l))
    except _CapHit as exc:
        diagnostics["cap"] = str(exc)
        complete_flag = False
    # inter-reduce right-hand sides
    final: dict = {}
    for lm in sorted(red.rules, key=red.key):
        final[lm] = red.reduce(red.rules[lm])
    for lm, rhs in final.items():
        red.rules[lm] = rhs
    diagnostics["rules"] = len(final)
    return RewriteSystem(pres, final, frozenset(red.dead), complete_flag, diagnostics)


class _CapHit(Exception):
    pass


def normal_form(element: Mapping, rs: RewriteSystem) -> Poly:
    return rs.reduce(element)


def reduce_randomly(element: Mapping, rs: RewriteSystem, rng: random.Random) -> Poly:
    """Reduce by single random rewrite steps at random positions.

    Slow, but an independent strategy for confluence audits."""
    red = rs._reducer
    F = red.F
    poly = {m: c for m, c in element.items() if not F.is_zero(c)}
    while True:
        reducible = []
        for m in sorted(poly, key=red.key):
            occ = red.occurrences(m)
            if occ:
                reducible.append((m, occ))
        if not reducible:
            return poly
        m, occ = rng.choice(reducible)
        c = poly.pop(m)
        hit = rng.choice(occ)
        if hit is _DEAD:
            continue
        i, j, rhs = hit
        k, w = m
        for (_, rw), d in rhs.items():
            nm = (k, w[:i] + rw + w[j:])
            s = F.add(poly.get(nm, F.zero), F.mul(c, d))
            if F.is_zero(s):
                poly.pop(nm, None)
            else:
                poly[nm] = s


def check_complete(rs: RewriteSystem) -> dict[str, Any]:
    """Re-check every overlap and every defining relation."""
    red = rs._reducer
    F = red.F
    failures = []
    lms = sorted(rs.rules, key=red.key)
    checked = 0
    for a in lms:
        for b in lms:
            ka, u = a
            kb, v = b
            for l in range(1, min(len(u), len(v))):
                if u[-l:] != v[:l]:
                    continue
                if red.contexts(kb, v)[l] != ka:
                    continue
                s: Poly = {}
                for (k, w), c in rs.rules[a].items():
                    s[(kb, w + v[l:])] = c
                for (k, w), c in rs.rules[b].items():
                    m = (k, u[:len(u) - l] + w)
                    s[m] = F.sub(s.get(m, F.zero), c)
                checked += 1
                if rs.reduce(s):
                    failures.append((rs.pres.format_monomial(a), rs.pres.format_monomial(b), l))
    bad_relations = [rel.id for rel in rs.pres.relations if rs.reduce(rel.terms)]
    return {"overlaps_checked": checked, "overlap_failures": failures,
            "relation_failures": bad_relations,
            "ok": not failures and not bad_relations}


class LaurentPoly(dict):
    """Laurent polynomial in t as {exponent: coefficient}."""

    def at_one(self) -> int:
        return sum(self.values())

    def dominated_by(self, other: "LaurentPoly") -> bool:
        return all(c <= other.get(d, 0) for d, c in self.items())

    def __str__(self) -> str:
        if not self:
            return "0"
        parts = []
        for d in sorted(self):
            c = self[d]
            if d == 0:
                parts.append(str(c))
            else:
                mono = "t" if d == 1 else f"t^{d}"
                parts.append(mono if c == 1 else f"{c}{mono}")
        return " + ".join(parts)

    def to_json(self) -> dict[str, int]:
        return {str(d): self[d] for d in sorted(self)}


@dataclass
class NormalBasis:
    words: list
    dimension: int
    graded_dimension: LaurentPoly | None

    def to_json(self, pres: Presentation | None = None) -> dict[str, Any]:
        out: dict[str, Any] = {"dimension": self.dimension,
                               "words": [[k, list(w)] for k, w in self.words]}
        if self.graded_dimension is not None:
            out["graded_dimension"] = self.graded_dimension.to_json()
        if pres is not None:
            out["labels"] = [pres.format_monomial(m) for m in self.words]
        return out


def basis_and_dimension(rs: RewriteSystem, graded: bool | None = None,
                        cap: int = 200_000) -> NormalBasis:
    """Irreducible monomials, grown breadth-first by prepending arrows."""
    if not rs.complete:
        raise RewriteError("basis enumeration needs a complete rewriting system")
    pres = rs.pres
    red = rs._reducer
    nv = len(pres.vertices)
    frontier = [(v, ()) for v in range(nv) if v not in rs.dead]
    words = list(frontier)
    while frontier:
        new = []
        for k, w in frontier:
            for x in range(len(pres.arrows)):
                m = (k, (x,) + w)
                if red.find(m) is None:
                    new.append(m)
        words.extend(new)
        if len(words) > cap:
            raise InfiniteDimensionalError(
                f"more than {cap} irreducible words; the algebra looks infinite-dimensional")
        frontier = new
    words.sort(key=red.key)
    gd = None
    if (graded is None and pres.degrees is not None) or graded:
        gd = LaurentPoly()
        for m in words:
            d = pres.degree(m)
            gd[d] = gd.get(d, 0) + 1
    return NormalBasis(words, len(words), gd)


def check_homogeneous(pres: Presentation) -> list[dict[str, Any]]:
    """Per-relation verdict: do all monomials share one degree?"""
    out = []
    for rel in pres.relations:
        degs = sorted({pres.degree(m) for m in rel.terms})
        out.append({"id": rel.id, "homogeneous": len(degs) <= 1, "degrees": degs})
    return out


def poly_from_terms(terms: Iterable[tuple[Any, Monomial]], F) -> Poly:
    out: Poly = {}
    for c, m in terms:
        s = F.add(out.get(m, F.zero), F(c))
        if F.is_zero(s):
            out.pop(m, None)
        else:
            out[m] = s
    return out
