"""Emitters for the presented algebras handled by the workbench.

* Ariki-Koike algebras H_n^Lambda(q, zeta), generators S, T1..T{n-1};
* cyclotomic KLR algebras R_n^Lambda (optionally one block R_alpha^Lambda),
  as path algebras on the residue sequences;
* the shift-fixed KLR presentation, on orbit classes of sequences;
* Hecke algebras of G(r,p,n), generators s, t1', t1..t{n-1}, with either
  the alternating big braid ("BMR") or Ariki's sum relation ("Ar").

KLR relations are instantiated per idempotent: every relation is right
multiplied by e(k), so all of its monomials start at the vertex k.
"""
from __future__ import annotations

import math
from typing import Any, Sequence

from .params import Params, ParamsError, Weight, check_sigma_stable
from .quiver import (BACK, BOTH, EQUAL, FWD, NONE, KComposition, OrbitClass, Quiver,
                     adjacency, orbit_classes, sequences, swap)
from .rewrite import Poly, Presentation, Relation
from .scalars import is_finite

__all__ = [
    "PresentationError",
    "KLR_FAMILIES",
    "ariki_koike_presentation",
    "klr_cyclotomic_presentation",
    "fixed_point_presentation",
    "grpn_presentation",
    "cyclotomic_coefficients",
    "psi_degree",
    "ak_weight",
]

# relation families of the KLR presentation; the first four are built into
# the path-algebra monomials
KLR_FAMILIES = (
    "sum_e",
    "idempotent_orthogonality",
    "y_e_commute",
    "psi_e",
    "y_commute",
    "psi_y_commute",
    "psi_commute",
    "psi_y_left",
    "psi_y_right",
    "quadratic_equal",
    "quadratic_unlinked",
    "quadratic_linked",
    "braid",
)
STRUCTURAL = KLR_FAMILIES[:4]


class PresentationError(ValueError):
    pass


def _add(poly: Poly, F, mono, c) -> None:
    s = F.add(poly.get(mono, F.zero), c)
    if F.is_zero(s):
        poly.pop(mono, None)
    else:
        poly[mono] = s


def _poly(F, terms) -> Poly:
    out: Poly = {}
    for c, mono in terms:
        _add(out, F, mono, F(c) if not isinstance(c, int) or F.kind == "prime" else F(c))
    return out


def _poly_mul_1v(F, a: Poly, b: Poly) -> Poly:
    """Product in a one-vertex free algebra."""
    out: Poly = {}
    for (_, u), c in a.items():
        for (_, v), d in b.items():
            _add(out, F, (0, u + v), F.mul(c, d))
    return out


def cyclotomic_coefficients(F, roots: Sequence[tuple[Any, int]]) -> list:
    """Coefficients (constant term first) of prod (t - root)^mult."""
    coeffs = [F.one]
    for root, mult in roots:
        for _ in range(mult):
            new = [F.zero] * (len(coeffs) + 1)
            for m, c in enumerate(coeffs):
                new[m + 1] = F.add(new[m + 1], c)
                new[m] = F.sub(new[m], F.mul(root, c))
            coeffs = new
    return coeffs


def ak_weight(lam: Weight, params: Params) -> dict:
    """Multiplicities over I x J' for the Ariki-Koike cyclotomic relation.

    An "I" weight is read as the j-independent weight Lambda_{i,j} = Lambda_i."""
    if lam.domain == "IxJ'":
        out = {(params.residue(i), j): v for (i, j), v in lam.entries}
    elif lam.domain == "I":
        out = {(params.residue(i), j): v for i, v in lam.entries for j in params.jprime}
    else:
        raise PresentationError("the Hecke weight must be over I or I x J'")
    if sum(out.values()) != params.r:
        raise PresentationError(f"weight level {sum(out.values())} differs from r={params.r}")
    return out


def ariki_koike_presentation(params: Params, lam: Weight) -> Presentation:
    n = params.n
    if n < 1:
        raise PresentationError("n must be positive")
    spec = params.field
    F = spec.field
    arrows = ["S"] + [f"T{a}" for a in range(1, n)]
    S = 0

    def T(a: int) -> int:
        return a

    def w(*letters: int) -> tuple:
        return (0, tuple(letters))

    mult = ak_weight(lam, params)
    roots = [(params.value(i, j), m) for (i, j), m in sorted(mult.items())]
    coeffs = cyclotomic_coefficients(F, roots)
    rels = [Relation("cyclotomic", _poly(F, [(c, w(*([S] * m))) for m, c in enumerate(coeffs)]))]
    q = params.q
    for a in range(1, n):
        rels.append(Relation(f"quadratic[{a}]", _poly(F, [
            (F.one, w(T(a), T(a))), (F.sub(F.one, q), w(T(a))), (F.neg(q), w())])))
    if n >= 2:
        rels.append(Relation("ST1ST1", _poly(F, [
            (F.one, w(S, T(1), S, T(1))), (F.neg(F.one), w(T(1), S, T(1), S))])))
    for a in range(2, n):
        rels.append(Relation(f"S_commute[{a}]", _poly(F, [
            (F.one, w(S, T(a))), (F.neg(F.one), w(T(a), S))])))
    for a in range(1, n):
        for b in range(a + 2, n):
            rels.append(Relation(f"commute[{a},{b}]", _poly(F, [
                (F.one, w(T(b), T(a))), (F.neg(F.one), w(T(a), T(b)))])))
    for a in range(1, n - 1):
        rels.append(Relation(f"braid[{a}]", _poly(F, [
            (F.one, w(T(a + 1), T(a), T(a + 1))), (F.neg(F.one), w(T(a), T(a + 1), T(a)))])))
    meta = {"kind": "ariki-koike", "params": params.to_json(),
            "weight": [[i, j, v] for (i, j), v in sorted(mult.items())],
            "cyclotomic_coefficients": [F.to_json(c) for c in coeffs]}
    return Presentation(spec, ["1"], arrows, [[0] for _ in arrows], rels,
                        name=f"ariki-koike(e={_e(params)},p={params.p},n={n})", metadata=meta)


def _e(params: Params) -> str:
    return str(int(params.e)) if is_finite(params.e) else "inf"


def psi_degree(adj: str) -> int:
    return {EQUAL: -2, NONE: 0, FWD: 1, BACK: 1, BOTH: 2}[adj]


def _klr_relations(F, n: int, nv: int, seq_of, adj_of, cyclo_of, index_of_swap,
                   same_letter) -> list[Relation]:
    """KLR relations over generic vertices.

    seq_of(v) -> label; adj_of(v, a) -> adjacency of positions a, a+1;
    cyclo_of(v) -> exponent of y1; index_of_swap(v, a) -> vertex s_a . v;
    same_letter(v, a, b) -> whether positions a and b carry equal letters.
    Arrow indices: y_a -> a-1, psi_a -> n+a-1.
    """
    one, m1 = F.one, F.neg(F.one)

    def y(a: int) -> int:
        return a - 1

    def psi(a: int) -> int:
        return n + a - 1

    rels: list[Relation] = []
    for v in range(nv):
        lab = seq_of(v)

        def e(*letters: int) -> tuple:
            return (v, tuple(letters))

        for a in range(1, n + 1):
            for b in range(a + 1, n + 1):
                rels.append(Relation(f"y_commute[{a},{b}]({lab})",
                                     _poly(F, [(one, e(y(b), y(a))), (m1, e(y(a), y(b)))])))
        for a in range(1, n):
            for b in range(1, n + 1):
                if b in (a, a + 1):
                    continue
                rels.append(Relation(f"psi_y_commute[{a},{b}]({lab})",
                                     _poly(F, [(one, e(psi(a), y(b))), (m1, e(y(b), psi(a)))])))
            for b in range(a + 2, n):
                rels.append(Relation(f"psi_commute[{a},{b}]({lab})",
                                     _poly(F, [(one, e(psi(b), psi(a))), (m1, e(psi(a), psi(b)))])))
            adj = adj_of(v, a)
            delta = [(one, e())] if adj == EQUAL else []
            rels.append(Relation(f"psi_y_left[{a}]({lab})", _poly(F, [
                (one, e(psi(a), y(a + 1))), (m1, e(y(a), psi(a)))] + [(m1, t) for _, t in delta])))
            rels.append(Relation(f"psi_y_right[{a}]({lab})", _poly(F, [
                (one, e(y(a + 1), psi(a))), (m1, e(psi(a), y(a)))] + [(m1, t) for _, t in delta])))
            sq = e(psi(a), psi(a))
            if adj == EQUAL:
                rels.append(Relation(f"quadratic_equal[{a}]({lab})", _poly(F, [(one, sq)])))
            elif adj == NONE:
                rels.append(Relation(f"quadratic_unlinked[{a}]({lab})", _poly(F, [(one, sq), (m1, e())])))
            else:
                if adj == FWD:
                    rhs = [(one, e(y(a + 1))), (m1, e(y(a)))]
                elif adj == BACK:
                    rhs = [(one, e(y(a))), (m1, e(y(a + 1)))]
                else:
                    # (y_{a+1} - y_a)(y_a - y_{a+1})
                    rhs = [(one, e(y(a + 1), y(a))), (m1, e(y(a + 1), y(a + 1))),
                           (m1, e(y(a), y(a))), (one, e(y(a), y(a + 1)))]
                rels.append(Relation(f"quadratic_linked[{a}]({lab})",
                                     _poly(F, [(one, sq)] + [(F.neg(F(c)), t) for c, t in rhs])))
        for a in range(1, n - 1):
            terms = [(one, e(psi(a + 1), psi(a), psi(a + 1))), (m1, e(psi(a), psi(a + 1), psi(a)))]
            if same_letter(v, a, a + 2):
                adj = adj_of(v, a)
                if adj == FWD:
                    terms.append((one, e()))
                elif adj == BACK:
                    terms.append((m1, e()))
                elif adj == BOTH:
                    two = F.add(one, one)
                    terms += [(F.neg(two), e(y(a + 1))), (one, e(y(a))), (one, e(y(a + 2)))]
            rels.append(Relation(f"braid[{a}]({lab})", _poly(F, terms)))
        c = cyclo_of(v)
        rels.append(Relation(f"cyclotomic({lab})", _poly(F, [(one, e(*([y(1)] * c)))])))
    return rels


def _klr_tables(n: int, nv: int, index_of_swap, adj_of) -> tuple[list, list]:
    moves = [list(range(nv)) for _ in range(n)]
    degrees = [[2] * nv for _ in range(n)]
    for a in range(1, n):
        moves.append([index_of_swap(v, a) for v in range(nv)])
        degrees.append([psi_degree(adj_of(v, a)) for v in range(nv)])
    return moves, degrees


def _klr_labels(n: int) -> list[str]:
    return [f"y{a}" for a in range(1, n + 1)] + [f"psi{a}" for a in range(1, n)]


def _seq_label(k) -> str:
    return ",".join(v.label for v in k)


def klr_cyclotomic_presentation(quiver: Quiver, lam: Weight, n: int,
                                block: KComposition | None = None,
                                cap: int = 200_000) -> Presentation:
    """Cyclotomic KLR algebra on K^n, or on the block K^alpha when given."""
    if lam.domain != "IxJ'":
        raise PresentationError("the KLR weight must be over K = I x J'")
    params = quiver.params
    F = params.field.field
    if block is not None:
        if block.size != n:
            raise PresentationError("block size differs from n")
        seqs = block.sequences()
    else:
        seqs = sequences(quiver, n, cap)
    index = {k: t for t, k in enumerate(seqs)}
    weights = lam.as_dict()

    def adj_of(v: int, a: int) -> str:
        k = seqs[v]
        return adjacency(k[a - 1], k[a], quiver)

    def index_of_swap(v: int, a: int) -> int:
        return index[swap(seqs[v], a)]

    def cyclo_of(v: int) -> int:
        k1 = seqs[v][0]
        return weights.get((k1.i, k1.j), 0)

    def same(v: int, a: int, b: int) -> bool:
        return seqs[v][a - 1] == seqs[v][b - 1]

    nv = len(seqs)
    rels = _klr_relations(F, n, nv, lambda v: _seq_label(seqs[v]), adj_of, cyclo_of,
                          index_of_swap, same)
    moves, degrees = _klr_tables(n, nv, index_of_swap, adj_of)
    meta = {"kind": "klr", "params": params.to_json(), "weight": lam.to_json(),
            "block": block.label if block else None, "sequences": [_seq_label(k) for k in seqs]}
    pres = Presentation(params.field, [_seq_label(k) for k in seqs], _klr_labels(n), moves, rels,
                        degrees=degrees, structural=STRUCTURAL, metadata=meta,
                        name=f"klr(e={_e(params)},p={params.p},n={n})")
    pres.metadata["sequence_objects"] = seqs
    return pres


def fixed_point_presentation(quiver: Quiver, lam: Weight, n: int,
                             classes: list[OrbitClass] | None = None,
                             cap: int = 200_000) -> Presentation:
    """KLR presentation on shift-orbit classes of residue sequences."""
    if lam.domain != "IxJ'":
        raise PresentationError("the KLR weight must be over K = I x J'")
    params = quiver.params
    F = params.field.field
    from .quiver import shift_vertex
    weights = lam.as_dict()
    for v in quiver.vertices:
        if weights.get((v.i, v.j), 0) != weights.get((lambda s: (s.i, s.j))(shift_vertex(v, quiver)), 0):
            raise PresentationError(
                "the weight is not shift-stable (Lambda_k must equal Lambda_{sigma(k)}); "
                "the fixed-point presentation is undefined")
    if classes is None:
        classes = orbit_classes(n, quiver, cap)
    member_of = {m: t for t, cls in enumerate(classes) for m in cls.members}
    reps = [cls.representative for cls in classes]

    def adj_of(v: int, a: int) -> str:
        k = reps[v]
        return adjacency(k[a - 1], k[a], quiver)

    def index_of_swap(v: int, a: int) -> int:
        return member_of[swap(reps[v], a)]

    def cyclo_of(v: int) -> int:
        k1 = reps[v][0]
        return weights.get((k1.i, k1.j), 0)

    def same(v: int, a: int, b: int) -> bool:
        return reps[v][a - 1] == reps[v][b - 1]

    nv = len(classes)
    labels = [cls.label for cls in classes]
    rels = _klr_relations(F, n, nv, lambda v: labels[v], adj_of, cyclo_of, index_of_swap, same)
    moves, degrees = _klr_tables(n, nv, index_of_swap, adj_of)
    meta = {"kind": "klr-fixed", "params": params.to_json(), "weight": lam.to_json(),
            "classes": labels}
    pres = Presentation(params.field, labels, _klr_labels(n), moves, rels, degrees=degrees,
                        structural=STRUCTURAL, metadata=meta,
                        name=f"klr-fixed(e={_e(params)},p={params.p},n={n})")
    pres.metadata["class_objects"] = classes
    return pres


def grpn_presentation(params: Params, varlambda: Weight, variant: str = "BMR") -> Presentation:
    """Hecke algebra of G(r,p,n) with the level-d weight varlambda over I."""
    variant = variant.upper()
    if variant not in ("BMR", "AR"):
        raise PresentationError(f"unknown variant {variant!r}")
    if variant == "AR" and params.p < 2:
        raise PresentationError("the Ar variant needs p >= 2")
    if varlambda.domain != "I" or varlambda.level != params.d:
        raise PresentationError(f"expected a weight over I of level d={params.d}")
    n, p = params.n, params.p
    if n < 2:
        raise PresentationError("G(r,p,n) presentations need n >= 2")
    spec = params.field
    F = spec.field
    q = params.q
    arrows = ["s", "t1'"] + [f"t{a}" for a in range(1, n)]
    s, tp = 0, 1

    def t(a: int) -> int:
        return a + 1

    def w(*letters: int) -> tuple:
        return (0, tuple(letters))

    one, m1 = F.one, F.neg(F.one)
    roots = [(F.pow(q, p * i), m) for i, m in varlambda.entries]
    coeffs = cyclotomic_coefficients(F, roots)
    rels = [Relation("cyclotomic", _poly(F, [(c, w(*([s] * m))) for m, c in enumerate(coeffs)]))]

    def quad(x: int) -> Poly:
        return _poly(F, [(one, w(x, x)), (F.sub(one, q), w(x)), (F.neg(q), w())])

    def eq(lhs: Sequence[int], rhs: Sequence[int]) -> Poly:
        return _poly(F, [(one, w(*lhs)), (m1, w(*rhs))])

    rels.append(Relation("quadratic[1']", quad(tp)))
    for a in range(1, n):
        rels.append(Relation(f"quadratic[{a}]", quad(t(a))))
    if n >= 3:
        rels.append(Relation("braid[1',2]", eq((tp, t(2), tp), (t(2), tp, t(2)))))
    for a in range(1, n - 1):
        rels.append(Relation(f"braid[{a}]", eq((t(a), t(a + 1), t(a)), (t(a + 1), t(a), t(a + 1)))))
    if n >= 3:
        rels.append(Relation("braid6", eq((tp, t(1), t(2)) * 2, (t(2), tp, t(1)) * 2)))
    for a in range(3, n):
        rels.append(Relation(f"commute[1',{a}]", eq((t(a), tp), (tp, t(a)))))
    for a in range(1, n):
        for b in range(a + 2, n):
            rels.append(Relation(f"commute[{a},{b}]", eq((t(b), t(a)), (t(a), t(b)))))
    for a in range(2, n):
        rels.append(Relation(f"s_commute[{a}]", eq((t(a), s), (s, t(a)))))
    rels.append(Relation("s_t1'_t1", eq((tp, t(1), s), (s, tp, t(1)))))
    meta: dict[str, Any] = {"kind": "grpn", "variant": variant, "params": params.to_json(),
                            "weight": varlambda.to_json()}
    if variant == "BMR":
        lhs = [s] + [(tp, t(1))[m % 2] for m in range(p)]
        rhs = [t(1), s] + [(tp, t(1))[m % 2] for m in range(p - 1)]
        rels.append(Relation("big_braid", eq(lhs, rhs)))
    else:
        rels.append(Relation("ariki_relation", _ariki_cleared(F, q, p, s, tp, t(1))))
        meta["clearing_factor"] = f"(q^-1 t1' t1)^{p - 2}"
    return Presentation(spec, ["1"], arrows, [[0] for _ in arrows], rels,
                        name=f"grpn-{variant.lower()}(e={_e(params)},p={p},n={n})", metadata=meta)


def _ariki_cleared(F, q, p: int, s: int, tp: int, t1: int) -> Poly:
    """A^{p-2} s t1' t1 - t1 s t1' - (q-1) sum_{k=1}^{p-2} A^{p-1-k} s t1', A = q^-1 t1' t1."""
    qinv = F.inv(q)

    def A_pow(m: int) -> Poly:
        return {(0, (tp, t1) * m): F.pow(qinv, m)}

    out: Poly = {}
    for mono, c in _poly_mul_1v(F, A_pow(p - 2), {(0, (s, tp, t1)): F.one}).items():
        _add(out, F, mono, c)
    _add(out, F, (0, (t1, s, tp)), F.neg(F.one))
    qm1 = F.sub(q, F.one)
    for k in range(1, p - 1):
        for mono, c in _poly_mul_1v(F, A_pow(p - 1 - k), {(0, (s, tp)): F.one}).items():
            _add(out, F, mono, F.neg(F.mul(qm1, c)))
    return out
