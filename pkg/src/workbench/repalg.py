"""Left regular representations of completed presentations.

Every algebra element is stored as its left-multiplication matrix in the
normal-word basis; its coordinate vector is that matrix applied to the unit.
"""
from __future__ import annotations

import csv
import io
import itertools
from dataclasses import dataclass
from typing import Any, Callable, Hashable, Iterable, Mapping, Sequence

import numpy as np

from .linalg import IncrementalSpan, identity, matmul, matvec, rank, scale, solve
from .poly import from_roots, monic, pdivmod, pegcd, peval_matrix, pmul, split_over_grid, trim
from .rewrite import NormalBasis, Poly, RewriteSystem

__all__ = [
    "RepresentationError",
    "StrayEigenvalueError",
    "CornerSingularError",
    "MatrixAlgebra",
    "AlgElement",
    "regular_representation",
    "minimal_polynomial",
    "matrix_minimal_polynomial",
    "spectral_idempotents",
    "generalized_eigenprojection",
    "corner_inverse",
    "neumann_inverse",
    "nilpotency_index",
    "span_closure",
    "matrix_to_csv",
]


class RepresentationError(RuntimeError):
    pass


class StrayEigenvalueError(ValueError):
    pass


class CornerSingularError(ArithmeticError):
    pass


class AlgElement:
    """An element of a MatrixAlgebra, held as its left-multiplication matrix."""

    __slots__ = ("alg", "M")

    def __init__(self, alg: "MatrixAlgebra", M: np.ndarray) -> None:
        self.alg = alg
        self.M = M

    @property
    def F(self):
        return self.alg.F

    def _wrap(self, M: np.ndarray) -> "AlgElement":
        return AlgElement(self.alg, M)

    def _lift(self, other: Any) -> "AlgElement":
        if isinstance(other, AlgElement):
            return other
        return self.alg.scalar(other)

    def __add__(self, other: Any) -> "AlgElement":
        o = self._lift(other)
        F = self.F
        return self._wrap((self.M + o.M) % F.modulus if F.kind == "prime" else self.M + o.M)

    __radd__ = __add__

    def __neg__(self) -> "AlgElement":
        F = self.F
        return self._wrap((-self.M) % F.modulus if F.kind == "prime" else -self.M)

    def __sub__(self, other: Any) -> "AlgElement":
        return self + (-self._lift(other))

    def __rsub__(self, other: Any) -> "AlgElement":
        return self._lift(other) - self

    def __mul__(self, other: Any) -> "AlgElement":
        if isinstance(other, AlgElement):
            return self._wrap(matmul(self.F, self.M, other.M))
        return self._wrap(scale(self.F, self.M, self.F(other)))

    def __rmul__(self, other: Any) -> "AlgElement":
        return self._wrap(scale(self.F, self.M, self.F(other)))

    def __pow__(self, k: int) -> "AlgElement":
        out = self.alg.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AlgElement):
            return NotImplemented
        return bool(np.array_equal(self.M, other.M))

    __hash__ = None  # type: ignore[assignment]

    def is_zero(self) -> bool:
        return not np.any(self.M != 0)

    def coords(self) -> np.ndarray:
        return matvec(self.F, self.M, self.alg.unit)

    def rank(self) -> int:
        return rank(self.F, self.M)

    def __repr__(self) -> str:
        return f"AlgElement(dim={self.alg.dim}, nnz={int(np.count_nonzero(self.M))})"


@dataclass
class MatrixAlgebra:
    rs: RewriteSystem
    basis: NormalBasis
    gens: dict
    idempotents: dict
    unit: np.ndarray

    @property
    def pres(self):
        return self.rs.pres

    @property
    def F(self):
        return self.rs.pres.F

    @property
    def dim(self) -> int:
        return self.basis.dimension

    def element(self, M: np.ndarray) -> AlgElement:
        return AlgElement(self, M)

    def gen(self, label: str) -> AlgElement:
        return AlgElement(self, self.gens[label])

    def vertex(self, v: int) -> AlgElement:
        return AlgElement(self, self.idempotents[v])

    def one(self) -> AlgElement:
        return AlgElement(self, identity(self.F, self.dim))

    def zero(self) -> AlgElement:
        return AlgElement(self, self.F.zeros((self.dim, self.dim)))

    def scalar(self, c: Any) -> AlgElement:
        return AlgElement(self, scale(self.F, identity(self.F, self.dim), self.F(c)))

    def evaluate(self, poly: Poly, arrows: Sequence[AlgElement] | None = None,
                 vertices: Mapping[int, AlgElement] | Callable[[int], AlgElement] | None = None
                 ) -> AlgElement:
        """Evaluate a path-algebra polynomial on given arrow and vertex images.

        Defaults are this algebra's own generators."""
        pres = self.pres
        if arrows is None:
            arrows = [self.gen(a) for a in pres.arrows]
        if vertices is None:
            vertices = self.vertex
        get_vertex = vertices if callable(vertices) else (lambda v: vertices[v])
        F = self.F
        cache: dict = {}

        def word(k: int, w: tuple) -> np.ndarray:
            key = (k, w)
            hit = cache.get(key)
            if hit is None:
                if not w:
                    hit = get_vertex(k).M
                else:
                    hit = matmul(F, arrows[w[0]].M, word(k, w[1:]))
                cache[key] = hit
            return hit

        acc = F.zeros((self.dim, self.dim))
        prime = F.kind == "prime"
        for (k, w), c in poly.items():
            term = word(k, w)
            acc = (acc + int(c) * term) % F.modulus if prime else acc + c * term
        return AlgElement(self, acc)

    def from_coords(self, vec: np.ndarray) -> AlgElement:
        """The element whose coordinates in the normal-word basis are vec."""
        F = self.F
        acc = F.zeros((self.dim, self.dim))
        mats: dict = {}
        prime = F.kind == "prime"
        for idx, (k, w) in enumerate(self.basis.words):
            if w:
                M = matmul(F, self.gens[self.pres.arrows[w[0]]], mats[(k, w[1:])])
            else:
                M = self.idempotents[k]
            mats[(k, w)] = M
            c = vec[idx]
            if c != 0:
                acc = (acc + int(c) * M) % F.modulus if prime else acc + c * M
        return AlgElement(self, acc)

    def word_element(self, text: str, vertex: int = 0) -> AlgElement:
        return self.evaluate({self.pres.word(text, vertex): self.F.one})

    def relation_residuals(self) -> list[tuple[str, bool]]:
        return [(rel.id, self.evaluate(rel.terms).is_zero()) for rel in self.pres.relations]


def regular_representation(rs: RewriteSystem, basis: NormalBasis, verify: bool = True) -> MatrixAlgebra:
    """Matrices of left multiplication by every arrow and vertex."""
    pres = rs.pres
    F = pres.F
    dim = basis.dimension
    index = {m: i for i, m in enumerate(basis.words)}
    gens: dict = {}
    for x, label in enumerate(pres.arrows):
        M = F.zeros((dim, dim))
        for j, (k, w) in enumerate(basis.words):
            for mono, c in rs.reduce({(k, (x,) + w): F.one}).items():
                if mono not in index:
                    raise RepresentationError(f"normal form of {label}*{pres.format_monomial((k, w))} "
                                              "left the basis")
                M[index[mono], j] = c
        gens[label] = M
    idempotents: dict = {}
    for v in range(len(pres.vertices)):
        M = F.zeros((dim, dim))
        for j, mono in enumerate(basis.words):
            if pres.left_vertex(mono) == v:
                M[j, j] = F.one
        idempotents[v] = M
    unit = F.zeros(dim)
    for v in range(len(pres.vertices)):
        mono = (v, ())
        if mono in index:
            unit[index[mono]] = F.one
    alg = MatrixAlgebra(rs, basis, gens, idempotents, unit)
    if verify:
        bad = [rid for rid, ok in alg.relation_residuals() if not ok]
        if bad:
            raise RepresentationError(f"relations with nonzero residual: {bad[:10]}")
        total = F.zeros((dim, dim))
        for M in idempotents.values():
            total = (total + M) % F.modulus if F.kind == "prime" else total + M
        if not np.array_equal(total, identity(F, dim)):
            raise RepresentationError("vertex idempotents do not sum to the identity")
    return alg


def _krylov_minpoly(F, step: Callable[[np.ndarray], np.ndarray], v0: np.ndarray, limit: int) -> list:
    span = IncrementalSpan(F, len(v0))
    vecs = [v0]
    span.add(v0)
    while True:
        nxt = step(vecs[-1])
        if span.contains(nxt):
            A = F.zeros((len(v0), len(vecs)))
            for i, v in enumerate(vecs):
                A[:, i] = v
            sol = solve(F, A, nxt)
            if sol is None:
                raise RepresentationError("Krylov dependency could not be solved")
            return [F.neg(c) for c in sol] + [F.one]
        if len(vecs) > limit:
            raise RepresentationError("minimal polynomial search exceeded the dimension")
        span.add(nxt)
        vecs.append(nxt)


def minimal_polynomial(x: AlgElement, unit: AlgElement | None = None) -> list:
    """Least monic annihilator of x, constant term first.

    With ``unit`` = e the annihilator is taken in the corner algebra eHe,
    whose identity is e.  The algebra acts faithfully on itself, so the
    Krylov sequence of the unit's coordinates suffices."""
    F = x.F
    start = x.alg.unit if unit is None else unit.coords()
    if not np.any(start != 0):
        return [F.one]
    return _krylov_minpoly(F, lambda v: matvec(F, x.M, v), start, x.alg.dim + 1)


def matrix_minimal_polynomial(F, M: np.ndarray) -> list:
    """Minimal polynomial of an arbitrary square matrix via flattened powers."""
    n = M.shape[0]
    return _krylov_minpoly(F, lambda v: matmul(F, M, v.reshape(n, n)).reshape(-1),
                           identity(F, n).reshape(-1), n * n + 1)


def generalized_eigenprojection(F, minpoly: Sequence, root: Any) -> list:
    """Polynomial pi with pi(x) the projection onto the generalized root-eigenspace."""
    m = monic(F, minpoly)
    mult = 0
    rest = m
    lin = [F.neg(root), F.one]
    while len(rest) > 1:
        quo, rem = pdivmod(F, rest, lin)
        if rem:
            break
        rest, mult = quo, mult + 1
    if mult == 0:
        return []
    local = from_roots(F, [(root, mult)])
    d, s, t = pegcd(F, local, rest)
    if d != [F.one]:
        raise RepresentationError("local factors are not coprime")
    return pdivmod(F, pmul(F, t, rest), m)[1]


def spectral_idempotents(Xs: Sequence[AlgElement], grid: Mapping[Any, Hashable],
                         check_commute: bool = True) -> dict:
    """Simultaneous generalized eigenprojections of commuting elements.

    ``grid`` maps allowed eigenvalues to labels.  Returns a dict from tuples
    of labels to nonzero idempotents e(k) = prod_a pi_{k_a}(X_a)."""
    if not Xs:
        raise ValueError("need at least one element")
    alg = Xs[0].alg
    F = alg.F
    if check_commute:
        for A, B in itertools.combinations(Xs, 2):
            if not (A * B == B * A):
                raise ValueError("the elements do not commute")
    per_a = []
    for a, X in enumerate(Xs, start=1):
        mp = minimal_polynomial(X)
        mults, rest = split_over_grid(F, mp, list(grid))
        if len(rest) > 1:
            stray = _stray_roots(F, rest)
            raise StrayEigenvalueError(
                f"X_{a} has eigenvalues outside the grid: {stray or 'an irreducible factor'}")
        projs = []
        for v in grid:
            if v in mults:
                pi = generalized_eigenprojection(F, mp, v)
                projs.append((grid[v], AlgElement(alg, peval_matrix(F, pi, X.M))))
        per_a.append(projs)
    family = {(): alg.one()}
    for projs in per_a:
        nxt = {}
        for k, E in family.items():
            for lab, P in projs:
                prod = E * P
                if not prod.is_zero():
                    nxt[k + (lab,)] = prod
        family = nxt
    return family


def _stray_roots(F, f: Sequence) -> list:
    if F.kind != "prime" or F.modulus > 10_000:
        return []
    from .poly import peval
    return [x for x in range(F.modulus) if F.is_zero(peval(F, f, x))]


def corner_inverse(x: AlgElement, e: AlgElement) -> AlgElement:
    """Inverse of x in the corner algebra eHe.

    Solves the linear system for the corner minimal polynomial m of x
    (Krylov vectors x^i e); then x^{-1} = -m(0)^{-1} (m(t) - m(0))/t at x."""
    F = x.F
    if not (e * e == e):
        raise ValueError("e is not idempotent")
    if not (e * x * e == x):
        raise ValueError("x does not lie in the corner eHe")
    mp = minimal_polynomial(x, unit=e)
    if F.is_zero(mp[0]):
        raise CornerSingularError("element is not invertible in the corner")
    c = F.neg(F.inv(mp[0]))
    tail = mp[1:]
    y = AlgElement(x.alg, peval_matrix(F, tail, x.M, unit=e.M)) * c
    return y


def neumann_inverse(x: AlgElement, e: AlgElement) -> AlgElement:
    """Oracle: x = c e - N with N nilpotent, inverse c^-1 sum (N/c)^m."""
    F = x.F
    mp = minimal_polynomial(x, unit=e)
    deg = len(mp) - 1
    # a single eigenvalue c forces mp = (t - c)^deg, read c off the t^(deg-1) term
    c = F.neg(F.div(mp[-2], F(deg))) if deg else F.one
    if deg == 0 or from_roots(F, [(c, deg)]) != mp:
        raise ValueError("x has more than one eigenvalue on the corner")
    N = e * c - x
    cinv = F.inv(c)
    term = e
    acc = e
    u = N * cinv
    for _ in range(x.alg.dim + 1):
        term = term * u
        if term.is_zero():
            return acc * cinv
        acc = acc + term
    raise ValueError("N is not nilpotent")


def nilpotency_index(x: AlgElement) -> int | None:
    """Least m with x^m = 0, or None when x is not nilpotent."""
    cur = x
    for m in range(1, x.alg.dim + 2):
        if cur.is_zero():
            return m
        cur = cur * x
    return None


def span_closure(gens: Sequence[AlgElement], unital: bool = True) -> tuple[int, IncrementalSpan]:
    """Dimension of the (unital) subalgebra generated by gens, by span growth."""
    alg = gens[0].alg
    F = alg.F
    span = IncrementalSpan(F, alg.dim)
    frontier = []
    if unital:
        one = alg.one()
        span.add(one.coords())
        frontier.append(one)
    for g in gens:
        if span.add(g.coords()):
            frontier.append(g)
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                prod = g * h
                if span.add(prod.coords()):
                    nxt.append(prod)
        frontier = nxt
    return len(span), span


def matrix_to_csv(M: np.ndarray, F) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for row in M:
        writer.writerow([F.to_json(c) for c in row])
    return buf.getvalue()
