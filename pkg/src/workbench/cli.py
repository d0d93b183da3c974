"""The ``workbench`` command line.

Scenarios come from flags, from a TOML file, or both (flags win).  Reports
are JSON with ``"schema": 1``; identical inputs give byte-identical output
unless ``--timings`` is requested.

Exit codes: 0 every non-skipped check passed, 1 some check failed,
2 the configuration was invalid.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable

if sys.version_info >= (3, 11):
    import tomllib
else:  # pragma: no cover
    import tomli as tomllib

from . import __version__
from .bkiso import (BK, SW, BKError, build_g_images, build_hecke, commutation_checks,
                    intertwiner_checks, morita_dimension_check, verify_bk_property, verify_roundtrip)
from .fixedpoint import (FixedPointError, appendix_checks, averaging_projector, fixed_presentation_check,
                         graded_subalgebra_check, hecke_shift, independence_of_q_check, klr_dimension,
                         phi_images, shift_sectors, verify_intertwining)
from .params import Params, ParamsError, Weight, derive_params, hecke_weight
from .presentations import (PresentationError, ariki_koike_presentation, fixed_point_presentation,
                            grpn_presentation, klr_cyclotomic_presentation)
from .quiver import QuiverError, build_quiver
from .repalg import matrix_to_csv, spectral_idempotents
from .rewrite import Caps, InfiniteDimensionalError, basis_and_dimension, check_homogeneous, complete, parse_pres
from .scalars import INF, FieldError, FieldSpec, element_order, find_prime_field, rational_field_spec

__all__ = [
    "ConfigError",
    "Scenario",
    "CHECKS",
    "load_scenario",
    "run_scenario",
    "render_report",
    "main",
]

SCHEMA = 1
CHECKS = ("params", "dims", "bk", "shift", "grpn", "morita", "appendix", "grading", "independence")
PRESETS = ("ariki-koike", "klr", "klr-fixed", "grpn-bmr", "grpn-ar")

CLAIMS = {
    "params": "p', eta and omega solve zeta^p' = q^eta with omega = p/p'",
    "dims": "the presented algebras have dimensions r^n n!, r^n n! and r^n n!/p",
    "bk": "the g-images satisfy every KLR relation and invert f on generators",
    "shift": "the shift commutes with the isomorphism for the chosen Q-family",
    "grpn": "phi embeds the G(r,p,n) Hecke algebra onto the shift-fixed points",
    "morita": "r^n n! equals the sum over J'-compositions of m^2 times the block dimensions",
    "appendix": "the G(r,p,n) presentation variants agree and p = 1 gives the Ariki-Koike algebra",
    "grading": "the KLR relations are homogeneous and the fixed algebra sits inside degree by degree",
    "independence": "the fixed-point presentation does not depend on the choice of q",
}


class ConfigError(ValueError):
    pass


class CapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Scenario:
    e: Any = 2
    p: int = 2
    d: int = 1
    n: int = 2
    weight: str = "0:1"
    prime: int | None = None
    q: Any = None
    zeta: Any = None
    rationals: bool = False
    family: str = SW
    variant: str = "BMR"
    checks: tuple = CHECKS
    expect: tuple = ()
    caps: Caps = Caps()

    def field_spec(self) -> FieldSpec:
        e = self.e
        try:
            if self.rationals or e == INF:
                if self.p > 2:
                    raise ConfigError("e = inf (or the rationals) needs p <= 2")
                spec = rational_field_spec(2 if self.q is None else Fraction(str(self.q)), self.p)
                if spec.e != e:
                    raise ConfigError(f"q={spec.q} has order {spec.e}, not e={e}")
                return spec
            if self.prime is None and self.q is None and self.zeta is None:
                return find_prime_field(e, self.p)
            if self.prime is None:
                raise ConfigError("--q/--zeta need --prime")
            ell = self.prime
            F = find_prime_field(e, self.p, min_prime=ell, max_prime=ell).field
            q = int(self.q) if self.q is not None else next(
                x for x in range(2, ell) if element_order(x, F) == e)
            zeta = int(self.zeta) if self.zeta is not None else next(
                x for x in range(1, ell) if element_order(x, F) == self.p)
            return FieldSpec("prime", ell, q % ell, zeta % ell, e, self.p)
        except (FieldError, StopIteration) as exc:
            raise ConfigError(f"field: {exc or 'no suitable element'}") from exc

    def params(self) -> Params:
        try:
            return derive_params(self.e, self.p, self.d, self.n, self.field_spec())
        except ParamsError as exc:
            raise ConfigError(f"params: {exc}") from exc

    def varlambda(self) -> Weight:
        return parse_weight(self.weight, self.d)

    def to_json(self) -> dict:
        return {
            "e": "inf" if self.e == INF else self.e,
            "p": self.p, "d": self.d, "n": self.n,
            "lambda": self.weight,
            "family": self.family, "variant": self.variant,
            "checks": list(self.checks),
            "expect": {c: "fail" for c in self.expect},
            "caps": {"max_rules": self.caps.max_rules, "max_degree": self.caps.max_degree,
                     "max_steps": self.caps.max_steps},
        }


def parse_weight(text: str, level: int | None = None) -> Weight:
    """``"0:1,2:1"`` -> weight over I with those multiplicities."""
    entries: dict = {}
    try:
        for part in str(text).replace(" ", "").split(","):
            if not part:
                continue
            i, _, m = part.partition(":")
            entries[int(i)] = entries.get(int(i), 0) + (int(m) if m else 1)
    except ValueError as exc:
        raise ConfigError(f"lambda: cannot parse {text!r} (expected i:m,i:m)") from exc
    w = Weight.from_map("I", entries)
    if level is not None and w.level != level:
        raise ConfigError(f"lambda: level {w.level} differs from d={level}")
    return w


def _parse_e(value: Any) -> Any:
    if isinstance(value, str) and value.lower() in ("inf", "infinity", "oo"):
        return INF
    try:
        e = int(value)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"e: expected an integer or 'inf', got {value!r}") from exc
    if e < 2:
        raise ConfigError("e must be >= 2 (or inf)")
    return e


def _parse_caps(spec: str) -> dict:
    """WORKBENCH_CAPS: ``max_rules=5000,max_steps=100000`` or a JSON object."""
    spec = spec.strip()
    if not spec:
        return {}
    if spec.startswith("{"):
        data = json.loads(spec)
    else:
        data = {}
        for part in spec.split(","):
            k, _, v = part.partition("=")
            data[k.strip()] = v.strip()
    out = {}
    for k, v in data.items():
        if k not in ("max_rules", "max_degree", "max_steps"):
            raise ConfigError(f"caps: unknown cap {k!r}")
        out[k] = int(v)
    return out


def _checks(value: Any) -> tuple:
    items = value if isinstance(value, (list, tuple)) else str(value).split(",")
    items = [str(x).strip().lower() for x in items if str(x).strip()]
    if "all" in items:
        return CHECKS
    bad = [x for x in items if x not in CHECKS]
    if bad:
        raise ConfigError(f"checks: unknown {bad}; choose from {list(CHECKS)} or all")
    return tuple(c for c in CHECKS if c in items)


def load_scenario(toml_path: str | None, flags: dict, env: dict | None = None) -> Scenario:
    """Defaults, then the TOML file, then WORKBENCH_CAPS, then flags."""
    env = os.environ if env is None else env
    data: dict = {}
    caps: dict = {}
    expect: dict = {}
    if toml_path:
        try:
            with open(toml_path, "rb") as fh:
                raw = tomllib.load(fh)
        except (OSError, tomllib.TOMLDecodeError) as exc:
            raise ConfigError(f"config {toml_path}: {exc}") from exc
        data.update({k: v for k, v in raw.items() if not isinstance(v, dict)})
        data.update(raw.get("scenario", {}))
        field_tbl = raw.get("field", {})
        for k in ("prime", "q", "zeta", "rationals"):
            if k in field_tbl:
                data[k] = field_tbl[k]
        caps.update(raw.get("caps", {}))
        expect.update(raw.get("expect", {}))
    caps.update(_parse_caps(env.get("WORKBENCH_CAPS", "")))
    for k in ("max_rules", "max_degree", "max_steps"):
        if flags.get(k) is not None:
            caps[k] = flags[k]
    for k, v in flags.items():
        if v is not None and k not in ("max_rules", "max_degree", "max_steps", "expect_fail"):
            data[k] = v
    for c in flags.get("expect_fail") or ():
        expect[c] = "fail"
    if "lambda" in data:
        data["weight"] = data.pop("lambda")
    known = {"e", "p", "d", "n", "weight", "prime", "q", "zeta", "rationals", "family", "variant", "checks"}
    unknown = set(data) - known
    if unknown:
        raise ConfigError(f"unknown config keys {sorted(unknown)}")
    kw: dict = {}
    if "e" in data:
        kw["e"] = _parse_e(data["e"])
    for k in ("p", "d", "n", "prime"):
        if k in data:
            try:
                kw[k] = int(data[k])
            except (TypeError, ValueError) as exc:
                raise ConfigError(f"{k}: expected an integer") from exc
    for k in ("q", "zeta"):
        if k in data:
            kw[k] = data[k]
    if "rationals" in data:
        kw["rationals"] = bool(data["rationals"])
    if "weight" in data:
        kw["weight"] = str(data["weight"])
    if "family" in data:
        fam = str(data["family"]).upper()
        if fam not in (SW, BK):
            raise ConfigError(f"family: expected SW or BK, got {data['family']!r}")
        kw["family"] = fam
    if "variant" in data:
        var = str(data["variant"]).upper()
        if var not in ("BMR", "AR"):
            raise ConfigError(f"variant: expected BMR or Ar, got {data['variant']!r}")
        kw["variant"] = var
    if "checks" in data:
        kw["checks"] = _checks(data["checks"])
    for c, v in expect.items():
        if c not in CHECKS or str(v).lower() not in ("fail", "pass"):
            raise ConfigError(f"expect: {c} = {v!r} is not a check with 'fail' or 'pass'")
    kw["expect"] = tuple(c for c in CHECKS if str(expect.get(c, "pass")).lower() == "fail")
    try:
        kw["caps"] = Caps(**caps)
    except TypeError as exc:
        raise ConfigError(f"caps: {exc}") from exc
    sc = Scenario(**kw)
    for k in ("p", "d", "n"):
        if getattr(sc, k) < 1:
            raise ConfigError(f"{k} must be >= 1")
    if sc.variant == "AR" and sc.p < 2:
        raise ConfigError("variant Ar needs p >= 2")
    sc.params()
    sc.varlambda()
    return sc


class Context:
    """Shared, lazily built objects for one scenario; safe across threads."""

    def __init__(self, sc: Scenario) -> None:
        self.sc = sc
        self.params = sc.params()
        self.varlambda = sc.varlambda()
        self.lam = hecke_weight(self.varlambda, self.params)
        self._values: dict = {}
        self._locks: dict = {}
        self._guard = threading.Lock()

    def memo(self, key: str, build: Callable[[], Any]) -> Any:
        with self._guard:
            lock = self._locks.setdefault(key, threading.Lock())
        with lock:
            if key not in self._values:
                try:
                    self._values[key] = ("ok", build())
                except Exception as exc:  # replayed to every caller
                    self._values[key] = ("err", exc)
            kind, val = self._values[key]
        if kind == "err":
            raise val
        return val

    def hecke(self):
        def build():
            try:
                return build_hecke(self.params, self.lam, self.sc.caps)
            except BKError as exc:
                if "cap" in str(exc):
                    raise CapExceeded(str(exc)) from exc
                raise
        return self.memo("hecke", build)

    def idempotents(self):
        h = self.hecke()
        return self.memo("idempotents", lambda: spectral_idempotents(h.X, h.grid))

    def images(self, family: str):
        h = self.hecke()
        return self.memo(f"images:{family}",
                         lambda: build_g_images(h, family, idempotents=self.idempotents(), verify=False))

    def shift(self):
        return self.memo("shift", lambda: hecke_shift(self.hecke()))

    def mu(self):
        return self.memo("mu", lambda: averaging_projector(self.shift(), self.params.p))

    def fixed(self):
        def build():
            out = fixed_presentation_check(self.params, self.lam, self.sc.caps)
            if not out["complete"]:
                raise CapExceeded(out.get("cap") or "fixed-point completion capped")
            return out
        return self.memo("fixed", build)

    def klr(self):
        def build():
            out = klr_dimension(self.params, self.lam, self.sc.caps)
            if not out["complete"]:
                raise CapExceeded(out.get("cap") or "KLR completion capped")
            return out
        return self.memo("klr", build)


def _verdict(ok: bool) -> str:
    return "pass" if ok else "fail"


def check_params(ctx: Context) -> dict:
    P = ctx.params
    F = P.field.field
    lhs = F.pow(P.zeta, P.pprime)
    rhs = F.pow(P.q, P.eta)
    ok = lhs == rhs and P.pprime * P.omega == P.p
    if math.isfinite(P.e):
        ok = ok and P.pprime == P.p // math.gcd(P.p, int(P.e))
    return {"status": _verdict(ok), "params": P.to_json(),
            "weight_over_K": [[i, j, m] for (i, j), m in ctx.lam.entries]}


def check_dims(ctx: Context) -> dict:
    P = ctx.params
    h = ctx.hecke()
    klr = ctx.klr()
    fx = ctx.fixed()
    expected = P.r ** P.n * math.factorial(P.n)
    ok = h.dim == expected and klr["dimension"] == expected and fx["dimension"] * P.p == expected
    return {"status": _verdict(ok), "expected_hecke": expected,
            "dimensions": {"H": h.dim, "klr": klr["dimension"], "fixed": fx["dimension"]},
            "graded": {"klr": klr["graded_dimension"].to_json(), "fixed": fx["graded_dimension"].to_json()}}


def check_bk(ctx: Context) -> dict:
    from .bkiso import verify_klr_relations
    fam = ctx.sc.family
    img = ctx.images(fam)
    rel = verify_klr_relations(img)
    rt = verify_roundtrip(img)
    bkp = verify_bk_property(fam, img.hecke.quiver, img.n, img)
    inter = intertwiner_checks(img)
    comm = commutation_checks(img)
    nil_ok = all(x is not None for x in img.diagnostics["nilpotency_index"])
    ok = rel["ok"] and rt["ok"] and bkp["ok"] and inter["ok"] and comm["ok"] and nil_ok
    out = {
        "status": _verdict(ok),
        "family": fam,
        "nonzero_idempotents": len(img.idempotents),
        "relations": rel["summary"],
        "roundtrip": {r["id"]: r["ok"] for r in rt["rows"]},
        "bk_property": _tally(bkp["rows"], ("route", "check")),
        "intertwiner": inter["ok"],
        "commutation": comm["ok"],
        "nilpotency_index": img.diagnostics.get("nilpotency_index"),
    }
    if not ok:
        out["failed_relations"] = [r["id"] for r in rel["rows"] if not r["ok"]][:20]
        out["failed_bk_property"] = bkp["failed"][:20]
    return out


def _tally(rows: list, keys: tuple) -> dict:
    out: dict = {}
    for r in rows:
        key = ":".join(str(r[k]) for k in keys)
        s = out.setdefault(key, {"checked": 0, "failed": 0})
        s["checked"] += 1
        s["failed"] += 0 if r["ok"] else 1
    return dict(sorted(out.items()))


def check_shift(ctx: Context) -> dict:
    sh = ctx.shift()
    mu = ctx.mu()
    fam = ctx.sc.family
    inter = verify_intertwining(ctx.images(fam), sh)
    ok = sh.verified and mu.ok and inter["ok"]
    return {"status": _verdict(ok), "family": fam, "shift": dict(sorted(sh.residuals.items())),
            "mu": {"rank": mu.rank, **mu.checks}, "intertwining": inter["summary"]}


def check_grpn(ctx: Context) -> dict:
    h = ctx.hecke()
    mu = ctx.mu()
    ph = phi_images(h, ctx.varlambda, mu, ctx.sc.variant)
    fx = ctx.fixed()
    ok = ph.ok and fx["dimension"] == ph.dimension == mu.rank
    return {"status": _verdict(ok), "variant": ctx.sc.variant,
            "relations": dict(sorted(ph.residuals.items())),
            "dimensions": {"rank_mu": mu.rank, "phi_subalgebra": ph.dimension,
                           "fixed_presentation": fx["dimension"]},
            "equals_fixed_points": ph.equals_fixed_points}


def check_morita(ctx: Context) -> dict:
    rep = morita_dimension_check(ctx.params, ctx.lam, hecke=ctx.hecke(), idempotents=ctx.idempotents())
    rep = dict(rep)
    rep["levels"] = {str(k): v for k, v in rep["levels"].items()}
    return {"status": _verdict(rep.pop("ok")), **rep}


def check_appendix(ctx: Context) -> dict:
    if ctx.params.n < 2:
        return {"status": "skip", "note": "G(r,p,n) presentations need n >= 2"}
    rep = appendix_checks(ctx.params, ctx.varlambda, ctx.hecke(), ctx.sc.caps)
    ok = rep.pop("ok")
    if ok and any(str(v.get("status", "")).startswith("skip") for v in rep.values() if isinstance(v, dict)):
        return {"status": "skip(cap)", **rep}
    return {"status": _verdict(ok), **rep}


def check_grading(ctx: Context) -> dict:
    P = ctx.params
    quiver = build_quiver(P, ctx.lam)
    pres = klr_cyclotomic_presentation(quiver, ctx.lam, P.n)
    homog = check_homogeneous(pres)
    fpres = fixed_point_presentation(quiver, ctx.lam, P.n)
    fhomog = check_homogeneous(fpres)
    klr = ctx.klr()
    fx = ctx.fixed()
    sh = ctx.shift()
    sectors = shift_sectors(sh, P.zeta, P.p)
    sub = graded_subalgebra_check(fx["graded_dimension"], klr["graded_dimension"], sectors, ctx.hecke().dim)
    at_one = klr["graded_dimension"].at_one() == klr["dimension"]
    ok = all(r["homogeneous"] for r in homog + fhomog) and at_one and sub["ok"]
    return {"status": _verdict(ok),
            "inhomogeneous": [r["id"] for r in homog + fhomog if not r["homogeneous"]],
            "relations_checked": len(homog) + len(fhomog),
            "graded_at_one_equals_dimension": at_one,
            "subalgebra": sub,
            "note": "degree-wise domination plus the sector sum is the verified consequence"}


def check_independence(ctx: Context) -> dict:
    P = ctx.params
    rep = independence_of_q_check(P.e, P.p, P.d, P.n, ctx.varlambda, P.field, ctx.sc.caps)
    rep = dict(rep)
    rep.pop("ok", None)
    return rep


RUNNERS = {
    "params": check_params,
    "dims": check_dims,
    "bk": check_bk,
    "shift": check_shift,
    "grpn": check_grpn,
    "morita": check_morita,
    "appendix": check_appendix,
    "grading": check_grading,
    "independence": check_independence,
}


def _run_one(ctx: Context, name: str) -> tuple[dict, float]:
    t0 = time.perf_counter()
    try:
        out = RUNNERS[name](ctx)
    except CapExceeded as exc:
        out = {"status": "skip(cap)", "cap": str(exc)}
    except (InfiniteDimensionalError, QuiverError) as exc:
        out = {"status": "skip(cap)", "cap": str(exc)}
    except (BKError, FixedPointError, PresentationError, ArithmeticError, ValueError) as exc:
        out = {"status": "fail", "error": f"{type(exc).__name__}: {exc}"}
    status = out["status"]
    if name in ctx.sc.expect:
        if status == "fail":
            out["status"] = "expected-fail"
        elif status == "pass":
            out["status"] = "fail"
            out["error"] = "expected failure did not occur"
    if out["status"] == "fail":
        out["claim"] = CLAIMS[name]
    return out, time.perf_counter() - t0


def run_scenario(sc: Scenario, jobs: int = 1, timings: bool = False) -> dict:
    ctx = Context(sc)
    names = list(sc.checks)
    t0 = time.perf_counter()
    if jobs > 1 and len(names) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(lambda c: _run_one(ctx, c), names))
    else:
        results = [_run_one(ctx, c) for c in names]
    checks = {c: r for c, (r, _) in zip(names, results)}
    dims: dict = {}
    for key, label in (("hecke", "H"), ("fixed", "fixed"), ("klr", "klr")):
        val = ctx._values.get(key)
        if val and val[0] == "ok":
            dims[label] = val[1].dim if key == "hecke" else val[1]["dimension"]
    statuses = [r["status"] for r in checks.values()]
    overall = "fail" if "fail" in statuses else "pass"
    report = {
        "schema": SCHEMA,
        "tool": {"name": "workbench", "version": __version__},
        "seed": 0,
        "config": sc.to_json(),
        "params": ctx.params.to_json(),
        "status": overall,
        "dimensions": dims,
        "checks": checks,
    }
    if timings:
        report["timings"] = {"total_s": round(time.perf_counter() - t0, 6),
                             **{c: round(t, 6) for c, (_, t) in zip(names, results)}}
    return report


def _jsonable(x: Any) -> Any:
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if hasattr(x, "to_json"):
        return _jsonable(x.to_json())
    if isinstance(x, Fraction):
        return str(x)
    if hasattr(x, "item"):
        return x.item()
    return x


def render_report(report: dict) -> str:
    return json.dumps(_jsonable(report), indent=2, sort_keys=True) + "\n"


def exit_code(report: dict) -> int:
    return 1 if report.get("status") == "fail" else 0


# ---------------------------------------------------------------- parsing

def _scenario_args(ap: argparse.ArgumentParser, with_checks: bool = False) -> None:
    ap.add_argument("--config", help="TOML scenario file (flags override it)")
    ap.add_argument("--e", help="quantum characteristic (integer >= 2 or inf)")
    ap.add_argument("--p", type=int)
    ap.add_argument("--d", type=int)
    ap.add_argument("--n", type=int)
    ap.add_argument("--lambda", dest="lambda_", metavar="SPEC", help="weight over I, e.g. 0:1 or 0:1,1:1")
    ap.add_argument("--prime", type=int, help="use GF(prime)")
    ap.add_argument("--q", help="q in the chosen field")
    ap.add_argument("--zeta", help="zeta in the chosen field")
    ap.add_argument("--rationals", action="store_true", default=None, help="work over Q (p <= 2)")
    ap.add_argument("--family", help="Q-family: SW or BK")
    ap.add_argument("--variant", help="G(r,p,n) variant: BMR or Ar")
    ap.add_argument("--max-rules", type=int)
    ap.add_argument("--max-degree", type=int)
    ap.add_argument("--max-steps", type=int)
    ap.add_argument("--expect-fail", action="append", metavar="CHECK", help="declare an expected failure")
    if with_checks:
        ap.add_argument("--checks", help=f"comma list from {','.join(CHECKS)} or all")
    ap.add_argument("--jobs", type=int, default=1, help="worker threads for independent checks")
    ap.add_argument("--out", help="write the report here instead of stdout")
    ap.add_argument("--timings", action="store_true", help="add wall-clock timings to the report")


def _flags(ns: argparse.Namespace) -> dict:
    return {
        "e": ns.e, "p": ns.p, "d": ns.d, "n": ns.n, "lambda": ns.lambda_,
        "prime": ns.prime, "q": ns.q, "zeta": ns.zeta, "rationals": ns.rationals,
        "family": ns.family, "variant": ns.variant,
        "max_rules": ns.max_rules, "max_degree": ns.max_degree, "max_steps": ns.max_steps,
        "expect_fail": ns.expect_fail, "checks": getattr(ns, "checks", None),
    }


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="workbench", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"workbench {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("params", help="derive p', eta, omega and the weight over K")
    _scenario_args(p)
    p = sub.add_parser("fields", help="find a prime field with q of order e and zeta of order p")
    _scenario_args(p)
    p = sub.add_parser("gb", help="complete a presentation and report its rewriting system")
    _scenario_args(p)
    p.add_argument("--preset", choices=PRESETS, default="ariki-koike")
    p.add_argument("--input", help="complete this .pres file instead of a preset")
    p.add_argument("--dump", help="write the rules to this file")
    p.add_argument("--dump-pres", help="write the presentation (.pres) to this file")
    p = sub.add_parser("dims", help="dimension and graded dimension of a presented algebra")
    _scenario_args(p)
    p.add_argument("--preset", choices=PRESETS, default="ariki-koike")
    p.add_argument("--input", help=".pres file instead of a preset")
    p.add_argument("--words", action="store_true", help="list the normal words")
    p = sub.add_parser("verify", help="run one check suite")
    p.add_argument("suite", choices=CHECKS + ("all",))
    _scenario_args(p)
    p = sub.add_parser("run", help="run a scenario")
    _scenario_args(p, with_checks=True)
    p = sub.add_parser("dump-matrices", help="CSV matrices of S, T_a, X_a (and g-images)")
    _scenario_args(p)
    p.add_argument("--dir", required=True, help="output directory")
    p.add_argument("--images", action="store_true", help="also dump e(k), y_a, psi_a")
    return ap


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _preset(sc: Scenario, preset: str):
    P = sc.params()
    vl = sc.varlambda()
    lam = hecke_weight(vl, P)
    if preset == "ariki-koike":
        return ariki_koike_presentation(P, lam)
    if preset == "klr":
        return klr_cyclotomic_presentation(build_quiver(P, lam), lam, P.n)
    if preset == "klr-fixed":
        return fixed_point_presentation(build_quiver(P, lam), lam, P.n)
    return grpn_presentation(P, vl, "BMR" if preset == "grpn-bmr" else "AR")


def _presentation(ns: argparse.Namespace, sc: Scenario):
    if ns.input:
        try:
            return parse_pres(Path(ns.input).read_text())
        except (OSError, ValueError) as exc:
            raise ConfigError(f"input: {exc}") from exc
    return _preset(sc, ns.preset)


def cmd_gb(ns, sc) -> int:
    pres = _presentation(ns, sc)
    if ns.dump_pres:
        Path(ns.dump_pres).write_text(pres.dumps())
    rs = complete(pres, sc.caps)
    out: dict = {"schema": SCHEMA, "presentation": pres.name, "complete": rs.complete,
                 "rules": len(rs.rules), "dead_vertices": sorted(pres.vertices[v] for v in rs.dead)}
    if ns.dump:
        Path(ns.dump).write_text(rs.dumps())
    if rs.complete:
        try:
            nb = basis_and_dimension(rs)
            out["dimension"] = nb.dimension
            out["status"] = "pass"
        except InfiniteDimensionalError as exc:
            out["status"] = "skip(cap)"
            out["note"] = str(exc)
    else:
        out["status"] = "skip(cap)"
        out["cap"] = rs.diagnostics.get("cap")
    _emit(render_report(out), ns.out)
    return 0


def cmd_dims(ns, sc) -> int:
    pres = _presentation(ns, sc)
    rs = complete(pres, sc.caps)
    out: dict = {"schema": SCHEMA, "presentation": pres.name, "complete": rs.complete}
    if not rs.complete:
        out.update({"status": "skip(cap)", "cap": rs.diagnostics.get("cap")})
    else:
        nb = basis_and_dimension(rs)
        out.update({"status": "pass", "dimension": nb.dimension})
        if nb.graded_dimension is not None:
            out["graded_dimension"] = nb.graded_dimension
            out["graded_dimension_text"] = str(nb.graded_dimension)
        if ns.words:
            out["words"] = [pres.format_monomial(m) for m in nb.words]
    _emit(render_report(out), ns.out)
    return 0


def cmd_params(ns, sc) -> int:
    P = sc.params()
    lam = hecke_weight(sc.varlambda(), P)
    out = {"schema": SCHEMA, "params": P.to_json(), "pprime": P.pprime, "eta": P.eta, "omega": P.omega,
           "weight_over_K": [[i, j, m] for (i, j), m in lam.entries]}
    _emit(render_report(out), ns.out)
    return 0


def cmd_fields(ns, sc) -> int:
    spec = sc.field_spec()
    out = {"schema": SCHEMA, "field": spec.to_json()}
    if spec.kind == "prime":
        out["ell"] = spec.modulus
    _emit(render_report(out), ns.out)
    return 0


def cmd_dump_matrices(ns, sc) -> int:
    ctx = Context(sc)
    h = ctx.hecke()
    F = h.alg.F
    d = Path(ns.dir)
    d.mkdir(parents=True, exist_ok=True)
    written = []

    def put(name: str, M) -> None:
        path = d / f"{name}.csv"
        path.write_text(matrix_to_csv(M, F))
        written.append(path.name)

    put("S", h.S.M)
    for a, Ta in enumerate(h.T, start=1):
        put(f"T{a}", Ta.M)
    for a, Xa in enumerate(h.X, start=1):
        put(f"X{a}", Xa.M)
    if ns.images:
        img = ctx.images(sc.family)
        for k, e in sorted(img.idempotents.items()):
            put("e_" + "-".join(v.label for v in k), e.M)
        for a, ya in enumerate(img.y, start=1):
            put(f"y{a}", ya.M)
        for a, psi in enumerate(img.psi, start=1):
            put(f"psi{a}_{sc.family}", psi.M)
    _emit(render_report({"schema": SCHEMA, "dimension": h.dim, "files": written}), ns.out)
    return 0


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    ns = ap.parse_args(argv)
    try:
        flags = _flags(ns)
        if ns.command == "verify":
            flags["checks"] = ns.suite
        sc = load_scenario(ns.config, flags)
        if ns.command in ("run", "verify"):
            report = run_scenario(sc, jobs=max(1, ns.jobs), timings=ns.timings)
            _emit(render_report(report), ns.out)
            return exit_code(report)
        handler = {"gb": cmd_gb, "dims": cmd_dims, "params": cmd_params, "fields": cmd_fields,
                   "dump-matrices": cmd_dump_matrices}[ns.command]
        return handler(ns, sc)
    except (ConfigError, PresentationError, ParamsError) as exc:
        print(f"workbench: config error: {exc}", file=sys.stderr)
        return 2
    except CapExceeded as exc:
        print(f"workbench: skipped, cap exceeded: {exc}", file=sys.stderr)
        return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
