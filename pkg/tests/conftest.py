from __future__ import annotations

import functools
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from workbench.bkiso import build_g_images, build_hecke
from workbench.params import Weight, derive_params, hecke_weight
from workbench.scalars import find_prime_field

SCENARIOS = Path(__file__).parent / "scenarios"

_criteria: dict[str, tuple[str, str]] = {}


@functools.lru_cache(maxsize=None)
def setup(e: int, p: int, n: int, d: int = 1, weight: tuple = ((0, 1),)):
    """(params, varlambda over I, weight over K) for the smallest prime field."""
    P = derive_params(e, p, d, n, find_prime_field(e, p))
    vl = Weight.from_map("I", dict(weight))
    return P, vl, hecke_weight(vl, P)


@functools.lru_cache(maxsize=None)
def hecke(e: int, p: int, n: int):
    P, _, lam = setup(e, p, n)
    return build_hecke(P, lam)


@functools.lru_cache(maxsize=None)
def images(e: int, p: int, n: int, family: str):
    return build_g_images(hecke(e, p, n), family)


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    name = report.nodeid.split("::")[-1]
    if "test_acceptance.py" in report.nodeid and name.startswith("test_criterion_"):
        number = name.split("_")[2]
        title = " ".join(name.split("_")[3:])
        _criteria[number] = (title, "PASS" if report.passed else "FAIL")


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria, key=int):
        title, verdict = _criteria[number]
        terminalreporter.write_line(f"criterion {int(number):2d} {verdict}  {title}")
