"""KLR generators inside the Ariki-Koike algebra.

The Hecke algebra H is realized by its regular representation.  From the
Jucys-Murphy elements X_a we build the spectral idempotents e(k), the
nilpotent y_a and, for a chosen Q-family, the intertwiners psi_a.  All KLR
relations are then checked as exact matrix identities.

The P and Q formulas are written once against a tiny arithmetic protocol
(a unit, an inverse, ring operations, scalar multiplication) so that the
same code evaluates them on corners e(k)He(k) and on truncated power series.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field as dc_field
from typing import Any, Callable, Sequence

from .params import Params, Weight
from .presentations import ak_weight, ariki_koike_presentation, klr_cyclotomic_presentation
from .quiver import (BACK, BOTH, EQUAL, FWD, NONE, Quiver, Vertex, adjacency, build_quiver,
                     composition_of, sequences, swap)
from .repalg import (AlgElement, MatrixAlgebra, corner_inverse, nilpotency_index,
                     regular_representation, spectral_idempotents)
from .rewrite import Caps, basis_and_dimension, complete
from .series import Series

__all__ = [
    "BKError",
    "SW",
    "BK",
    "SW_UNSIGNED",
    "FAMILIES",
    "HeckeModel",
    "BKImages",
    "Arith",
    "build_hecke",
    "jucys_murphy",
    "p_formula",
    "q_formula",
    "eval_P",
    "eval_Q",
    "build_g_images",
    "verify_klr_relations",
    "verify_roundtrip",
    "verify_bk_property",
    "intertwiner_checks",
    "commutation_checks",
    "morita_dimension_check",
    "block_idempotents",
]

SW, BK = "SW", "BK"
# the SW family with (1 - P)/(y_(a+1) - y_a) on single back-edges as well;
# kept as a negative control, it breaks the product constraint when e >= 3
SW_UNSIGNED = "SW-UNSIGNED"
FAMILIES = (SW, BK, SW_UNSIGNED)


class BKError(RuntimeError):
    pass


@dataclass
class HeckeModel:
    params: Params
    quiver: Quiver
    weight: Weight
    alg: MatrixAlgebra
    S: AlgElement
    T: list
    X: list
    grid: dict

    @property
    def dim(self) -> int:
        return self.alg.dim


def jucys_murphy(S: AlgElement, T: Sequence[AlgElement], q: Any) -> list:
    """X_1 = S and X_{a+1} = q^{-1} T_a X_a T_a."""
    F = S.F
    qinv = F.inv(q)
    X = [S]
    for Ta in T:
        X.append(Ta * X[-1] * Ta * qinv)
    return X


def build_hecke(params: Params, lam: Weight, caps: Caps = Caps(), quiver: Quiver | None = None) -> HeckeModel:
    """Complete the Ariki-Koike presentation and build its regular representation.

    ``lam`` is the weight over K = I x J' (or a j-independent weight over I)."""
    if lam.domain == "I":
        lam = Weight.from_map("IxJ'", ak_weight(lam, params))
    pres = ariki_koike_presentation(params, lam)
    rs = complete(pres, caps)
    if not rs.complete:
        raise BKError(f"Ariki-Koike completion hit a cap: {rs.diagnostics.get('cap')}")
    nb = basis_and_dimension(rs)
    alg = regular_representation(rs, nb)
    if quiver is None:
        quiver = build_quiver(params, lam)
    S = alg.gen("S")
    T = [alg.gen(f"T{a}") for a in range(1, params.n)]
    X = jucys_murphy(S, T, params.q)
    grid = {v.value: v for v in quiver.vertices}
    return HeckeModel(params, quiver, lam, alg, S, T, X, grid)


@dataclass
class Arith:
    """Arithmetic for the P/Q formulas: ``one`` is the unit, ``inv`` inverts."""

    one: Any
    inv: Callable[[Any], Any]


def _y_of(ar: Arith, value: Any, Y: Any) -> Any:
    return (ar.one - Y) * value


def p_formula(ar: Arith, F, q: Any, u: Vertex, w: Vertex, Ya: Any, Yb: Any) -> Any:
    """P for the letter pair (u, w) = (k_a, k_{a+1}) with variables Ya, Yb."""
    if u == w:
        return ar.one
    ya = _y_of(ar, u.value, Ya)
    yb = _y_of(ar, w.value, Yb)
    return ar.inv(ar.one - ya * ar.inv(yb)) * F.sub(F.one, q)


def q_formula(ar: Arith, F, q: Any, family: str, adj: str, u: Vertex, w: Vertex, Ya: Any, Yb: Any,
              P: Any = None, check: bool = True) -> Any:
    if adj == EQUAL:
        return ar.one * F.sub(F.one, q) + Yb * q - Ya
    ya = _y_of(ar, u.value, Ya)
    yb = _y_of(ar, w.value, Yb)
    if family in (SW, SW_UNSIGNED):
        if P is None:
            P = p_formula(ar, F, q, u, w, Ya, Yb)
        if adj == BOTH or (adj == BACK and family == SW_UNSIGNED):
            Q = ar.inv(ya - yb) * u.value
            if check and not (Q * (Yb - Ya) == ar.one - P):
                raise BKError(f"closed form disagrees with (1 - P)/(y_(a+1) - y_a) at {u},{w}")
            return Q
        if adj == BACK:
            # a single back-edge needs the divisor y_a - y_(a+1) for the
            # product constraint to hold against the forward partner
            Q = ar.inv(yb - ya) * u.value
            if check and not (Q * (Ya - Yb) == ar.one - P):
                raise BKError(f"closed form disagrees with (1 - P)/(y_a - y_(a+1)) at {u},{w}")
            return Q
        return ar.one - P
    if family == BK:
        if adj == NONE:
            return (ya - yb * q) * ar.inv(ya - yb)
        if adj == FWD:
            d = ar.inv(ya - yb)
            return (ya - yb * q) * d * d
        if adj == BACK:
            return ar.one * u.value
        return ar.inv(ya - yb) * u.value
    raise ValueError(f"unknown Q-family {family!r}")


def corner_arith(e: AlgElement) -> Arith:
    return Arith(e, lambda x: corner_inverse(x, e))


def series_arith(F, n: int, D: int) -> Arith:
    return Arith(Series.one(F, n, D), lambda x: x.inverse())


@dataclass
class BKImages:
    hecke: HeckeModel
    family: str
    idempotents: dict
    y: list
    psi: list
    P: dict
    Q: dict
    Qinv: dict
    diagnostics: dict = dc_field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.hecke.params.n

    def e(self, k) -> AlgElement:
        got = self.idempotents.get(tuple(k))
        return got if got is not None else self.hecke.alg.zero()

    def Y(self, a: int, k) -> AlgElement:
        """y_a e(k)."""
        return self.y[a - 1] * self.e(k)


def eval_P(images_or_hecke, a: int, k, Y: Callable[[int], Any] | None = None) -> AlgElement:
    """P_a(k) on the corner e(k)."""
    img = images_or_hecke
    e = img.e(k)
    F = e.F
    ar = corner_arith(e)
    Ya = img.Y(a, k) if Y is None else Y(a)
    Yb = img.Y(a + 1, k) if Y is None else Y(a + 1)
    return p_formula(ar, F, img.hecke.params.q, k[a - 1], k[a], Ya, Yb)


def eval_Q(img: BKImages, a: int, k, family: str | None = None) -> AlgElement:
    e = img.e(k)
    F = e.F
    quiver = img.hecke.quiver
    adj = adjacency(k[a - 1], k[a], quiver)
    ar = corner_arith(e)
    return q_formula(ar, F, img.hecke.params.q, family or img.family, adj, k[a - 1], k[a],
                     img.Y(a, k), img.Y(a + 1, k))


def build_g_images(hecke: HeckeModel, family: str = SW, idempotents: dict | None = None,
                   verify: bool = True) -> BKImages:
    """e(k), y_a, psi_a inside H for the chosen Q-family."""
    family = family.upper()
    if family not in FAMILIES:
        raise ValueError(f"unknown Q-family {family!r}")
    alg = hecke.alg
    F = alg.F
    n = hecke.params.n
    q = hecke.params.q
    if idempotents is None:
        idempotents = spectral_idempotents(hecke.X, hecke.grid)
    y = []
    for a in range(1, n + 1):
        acc = alg.zero()
        for k, e in idempotents.items():
            acc = acc + e - hecke.X[a - 1] * e * F.inv(k[a - 1].value)
        y.append(acc)
    img = BKImages(hecke, family, idempotents, y, [], {}, {}, {})
    for a in range(1, n):
        psi = alg.zero()
        for k, e in idempotents.items():
            adj = adjacency(k[a - 1], k[a], hecke.quiver)
            ar = corner_arith(e)
            Ya, Yb = img.Y(a, k), img.Y(a + 1, k)
            P = p_formula(ar, F, q, k[a - 1], k[a], Ya, Yb)
            Q = q_formula(ar, F, q, family, adj, k[a - 1], k[a], Ya, Yb, P=P)
            Qinv = corner_inverse(Q, e)
            img.P[(a, k)] = P
            img.Q[(a, k)] = Q
            img.Qinv[(a, k)] = Qinv
            psi = psi + (hecke.T[a - 1] + P) * Qinv
        img.psi.append(psi)
    img.diagnostics["nonzero_idempotents"] = len(idempotents)
    img.diagnostics["nilpotency_index"] = [nilpotency_index(ya) for ya in y]
    if verify:
        report = verify_klr_relations(img)
        if not report["ok"]:
            bad = [r for r in report["rows"] if not r["ok"]][:5]
            raise BKError(f"KLR relations fail on the images: {bad}")
        img.diagnostics["relations"] = report["summary"]
    return img


def verify_klr_relations(img: BKImages) -> dict:
    """Every KLR and cyclotomic relation, evaluated on the images."""
    hecke = img.hecke
    alg = hecke.alg
    n = hecke.params.n
    seqs = sorted({k for k in img.idempotents} |
                  {swap(k, a) for k in img.idempotents for a in range(1, n)})
    rows = []
    # structural families
    total = alg.zero()
    for e in img.idempotents.values():
        total = total + e
    rows.append({"family": "sum_e", "id": "sum_e", "ok": total == alg.one()})
    es = list(img.idempotents.items())
    ortho = all((e1 * e2 == (e1 if k1 == k2 else alg.zero())) for (k1, e1), (k2, e2) in
                itertools.product(es, es))
    rows.append({"family": "idempotent_orthogonality", "id": "idempotent_orthogonality", "ok": ortho})
    for a in range(1, n + 1):
        ok = all(img.y[a - 1] * e == e * img.y[a - 1] for e in img.idempotents.values())
        rows.append({"family": "y_e_commute", "id": f"y_e_commute[{a}]", "ok": ok})
    for a in range(1, n):
        ok = all(img.psi[a - 1] * img.e(k) == img.e(swap(k, a)) * img.psi[a - 1] for k in seqs)
        rows.append({"family": "psi_e", "id": f"psi_e[{a}]", "ok": ok})
    # the remaining families from the presentation, block by block
    blocks = sorted({composition_of(k) for k in img.idempotents}, key=lambda c: c.counts)
    arrows = img.y + img.psi
    for block in blocks:
        pres = klr_cyclotomic_presentation(hecke.quiver, hecke.weight, n, block=block)
        block_seqs = pres.metadata["sequence_objects"]
        zero = alg.zero()
        vimg = {v: img.idempotents.get(k, zero) for v, k in enumerate(block_seqs)}
        for rel in pres.relations:
            (vertex, _word), = [m for m, _c in list(rel.terms.items())[:1]]
            if vimg[vertex].is_zero():
                continue
            family = rel.id.split("[")[0].split("(")[0]
            ok = alg.evaluate(rel.terms, arrows, vimg).is_zero()
            rows.append({"family": family, "id": rel.id, "ok": ok})
    summary: dict = {}
    for r in rows:
        s = summary.setdefault(r["family"], {"checked": 0, "failed": 0})
        s["checked"] += 1
        s["failed"] += 0 if r["ok"] else 1
    return {"ok": all(r["ok"] for r in rows), "rows": rows, "summary": summary}


def verify_roundtrip(img: BKImages) -> dict:
    """X_a and T_a rebuilt from e(k), y_a, psi_a."""
    hecke = img.hecke
    alg = hecke.alg
    F = alg.F
    n = hecke.params.n
    rows = []
    for a in range(1, n + 1):
        acc = alg.zero()
        for k, e in img.idempotents.items():
            acc = acc + (e - img.Y(a, k)) * k[a - 1].value
        rows.append({"id": f"X[{a}]", "ok": acc == hecke.X[a - 1]})
    for a in range(1, n):
        acc = alg.zero()
        for k, e in img.idempotents.items():
            acc = acc + img.psi[a - 1] * img.Q[(a, k)] - img.P[(a, k)]
        rows.append({"id": f"T[{a}]", "ok": acc == hecke.T[a - 1]})
    seqs = sorted({k for k in img.idempotents} |
                  {swap(k, a) for k in img.idempotents for a in range(1, n)})
    for a in range(1, n):
        ok = all(img.psi[a - 1] * img.e(k) == img.e(swap(k, a)) * img.psi[a - 1] for k in seqs)
        rows.append({"id": f"psi_e[{a}]", "ok": ok})
    return {"ok": all(r["ok"] for r in rows), "rows": rows}


def _bk_rows_for(ar_of: Callable, Yof: Callable, F, q, family: str, quiver: Quiver, n: int,
                 ks: Sequence, label: str) -> list[dict]:
    """The (BK) conditions, for one arithmetic route.

    ar_of(k) -> Arith on which to evaluate; Yof(k, a) -> variable y_a there."""
    rows = []
    for k in ks:
        ar = ar_of(k)
        for a in range(1, n):
            u, w = k[a - 1], k[a]
            adj = adjacency(u, w, quiver)
            Ya, Yb = Yof(k, a), Yof(k, a + 1)
            P = p_formula(ar, F, q, u, w, Ya, Yb)
            Q = q_formula(ar, F, q, family, adj, u, w, Ya, Yb, P=P, check=False)
            kid = ",".join(v.label for v in k)
            try:
                ar.inv(Q)
                inv_ok = True
            except (ArithmeticError, ZeroDivisionError):
                inv_ok = False
            rows.append({"route": label, "check": "invertible", "a": a, "k": kid, "ok": inv_ok})
            if adj == EQUAL:
                forced = ar.one * F.sub(F.one, q) + Yb * q - Ya
                rows.append({"route": label, "check": "equal_form", "a": a, "k": kid, "ok": Q == forced})
                continue
            # Q(s_a k)^{s_a}: the formula for the swapped pair with swapped variables
            Ps = p_formula(ar, F, q, w, u, Yb, Ya)
            Qs = q_formula(ar, F, q, family, adjacency(w, u, quiver), w, u, Yb, Ya, P=Ps, check=False)
            rows.append({"route": label, "check": "P_swap_sum", "a": a, "k": kid,
                         "ok": P + Ps == ar.one * F.sub(F.one, q)})
            target = (ar.one - P) * (P + ar.one * q)
            if adj == NONE:
                divisor = ar.one
            elif adj == FWD:
                divisor = Yb - Ya
            elif adj == BACK:
                divisor = Ya - Yb
            else:
                divisor = (Yb - Ya) * (Ya - Yb)
            rows.append({"route": label, "check": f"product_{adj}", "a": a, "k": kid,
                         "ok": Q * Qs * divisor == target})
        for a in range(1, n - 1):
            # Q_{a+1}(s_{a+1}s_a k)^{s_a} versus Q_a(s_a s_{a+1} k)^{s_{a+1}}, both in (y_a, y_{a+2})
            k1 = swap(swap(k, a), a + 1)
            k2 = swap(swap(k, a + 1), a)
            Ya, Yc = Yof(k, a), Yof(k, a + 2)
            lhs = q_formula(ar, F, q, family, adjacency(k1[a], k1[a + 1], quiver), k1[a], k1[a + 1],
                            Ya, Yc, check=False)
            rhs = q_formula(ar, F, q, family, adjacency(k2[a - 1], k2[a], quiver), k2[a - 1], k2[a],
                            Ya, Yc, check=False)
            rows.append({"route": label, "check": "braid_compatible", "a": a,
                         "k": ",".join(v.label for v in k), "ok": lhs == rhs})
    return rows


def verify_bk_property(family: str, quiver: Quiver, n: int = 2, images: BKImages | None = None,
                       degree: int = 6) -> dict:
    """The (BK) conditions by two routes.

    Series route: exact in F[[y]] truncated at ``degree``; divisions in the
    product conditions are multiplied through, which is faithful because
    F[[y]] is a domain.  Hecke route (when images are given): the same
    identities on every nonzero corner e(k)He(k)."""
    family = family.upper()
    params = quiver.params
    F = params.field.field
    q = params.q
    ar = series_arith(F, n, degree)
    variables = {a: Series.var(F, n, degree, a) for a in range(1, n + 1)}
    rows = _bk_rows_for(lambda k: ar, lambda k, a: variables[a], F, q, family, quiver, n,
                        sequences(quiver, n), "series")
    if images is not None:
        ks = sorted(images.idempotents)
        rows += _bk_rows_for(lambda k: corner_arith(images.e(k)), lambda k, a: images.Y(a, k),
                             F, q, family, quiver, images.n, ks, "hecke")
    return {"family": family, "ok": all(r["ok"] for r in rows), "rows": rows,
            "failed": [r for r in rows if not r["ok"]]}


def intertwiner_checks(img: BKImages) -> dict:
    """Phi_a = sum_k (T_a + P_a(k)) e(k) against X_a, X_{a+1}."""
    hecke = img.hecke
    alg = hecke.alg
    q = hecke.params.q
    rows = []
    for a in range(1, img.n):
        Phi = alg.zero()
        for k, e in img.idempotents.items():
            Phi = Phi + hecke.T[a - 1] * e + img.P[(a, k)]
        Xa, Xb = hecke.X[a - 1], hecke.X[a]
        for k, e in img.idempotents.items():
            lhs = Xb * Phi * e
            rhs = Phi * Xa * e
            if k[a - 1] == k[a]:
                rhs = rhs + (Xb * q - Xa) * e
            rows.append({"a": a, "k": ",".join(v.label for v in k), "ok": lhs == rhs})
    return {"ok": all(r["ok"] for r in rows), "rows": rows}


def commutation_checks(img: BKImages) -> dict:
    """f psi_a e(k) = psi_a f^{s_a} e(k) + [k_a = k_{a+1}] d_a(f) e(k) for f = y_a, y_{a+1}."""
    rows = []
    for a in range(1, img.n):
        psi = img.psi[a - 1]
        ya, yb = img.y[a - 1], img.y[a]
        for k, e in img.idempotents.items():
            eq = k[a - 1] == k[a]
            # d_a(y_a) = -1, d_a(y_{a+1}) = +1
            ok1 = ya * psi * e == psi * yb * e - (e if eq else e * 0)
            ok2 = yb * psi * e == psi * ya * e + (e if eq else e * 0)
            rows.append({"a": a, "k": ",".join(v.label for v in k), "ok": ok1 and ok2})
    return {"ok": all(r["ok"] for r in rows), "rows": rows}


def block_idempotents(img_or_idems) -> dict:
    idems = img_or_idems.idempotents if isinstance(img_or_idems, BKImages) else img_or_idems
    blocks: dict = {}
    for k, e in idems.items():
        alpha = composition_of(k)
        blocks[alpha] = blocks[alpha] + e if alpha in blocks else e
    return blocks


def _compositions(n: int, parts: int):
    if parts == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in _compositions(n - first, parts - 1):
            yield (first,) + rest


def morita_dimension_check(params: Params, lam: Weight, n: int | None = None,
                           hecke: HeckeModel | None = None, idempotents: dict | None = None) -> dict:
    """r^n n! against the sum over J'-compositions, plus block idempotent checks."""
    n = params.n if n is None else n
    if lam.domain == "I":
        lam = Weight.from_map("IxJ'", ak_weight(lam, params))
    levels = {j: 0 for j in params.jprime}
    for (i, j), v in lam.entries:
        levels[j] += v
    lhs = params.r ** n * math.factorial(n)
    table = []
    rhs = 0
    for lam_parts in _compositions(n, params.pprime):
        m = math.factorial(n)
        for part in lam_parts:
            m //= math.factorial(part)
        prod = 1
        for j, part in zip(params.jprime, lam_parts):
            prod *= levels[j] ** part * math.factorial(part)
        term = m * m * prod
        rhs += term
        table.append({"lambda": list(lam_parts), "m": m, "block_dims": prod, "term": term})
    report: dict[str, Any] = {"lhs": lhs, "rhs": rhs, "table": table, "levels": levels,
                              "identity_ok": lhs == rhs}
    if hecke is not None:
        alg = hecke.alg
        if idempotents is None:
            idempotents = spectral_idempotents(hecke.X, hecke.grid)
        blocks = block_idempotents(idempotents)
        total = alg.zero()
        for e in blocks.values():
            total = total + e
        gens = [hecke.S] + list(hecke.T)
        central = all(e * g == g * e for e in blocks.values() for g in gens)
        ranks = {alpha.label: e.rank() for alpha, e in sorted(blocks.items(), key=lambda t: t[0].counts)}
        report.update({
            "blocks": ranks,
            "sum_is_one": total == alg.one(),
            "central": central,
            "rank_sum": sum(ranks.values()),
            "dim": alg.dim,
        })
        report["blocks_ok"] = report["sum_is_one"] and central and report["rank_sum"] == alg.dim
    report["ok"] = report["identity_ok"] and report.get("blocks_ok", True)
    return report
