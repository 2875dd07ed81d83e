"""Named identity suites runnable from the CLI and the acceptance tests.

Each suite returns a dict report with one entry per check; every value is
computed exactly, so a check either matches or it does not.
"""

from __future__ import annotations

from fractions import Fraction

from .charclass import (
    blowup_chi_y,
    chi_y,
    chi_y_hypersurface,
    hirzebruch_class,
    line_bundle,
    projective_chi_y,
    twist_one_plus_y,
)
from .exact import BiPolyUV, LaurentPolyY
from .motivic import MotivicClass, verify_blowup_identity
from .rings import catalog, point, projective_space, ring_product, ring_proj_bundle
from .stringy import SncModel, compare_resolutions, stringy_e, stringy_euler

SUITES = ("ghrr", "comp-twist", "blowup", "milnor", "stringy-a1")


def _check(checks: list, name: str, ok: bool, detail: str = ""):
    checks.append({"name": name, "pass": bool(ok), "detail": detail})


def suite_ghrr() -> list[dict]:
    checks: list[dict] = []
    for n in range(9):
        got = chi_y(projective_space(n))
        want = projective_chi_y(n)
        _check(checks, f"chi_y(P{n}) = 1 + (-y) + ... + (-y)^{n}", got == want, f"got {got}")
    for n in range(7):
        poly = chi_y(projective_space(n))
        _check(checks, f"chi_-1(P{n}) = e = {n + 1}", poly.evaluate(Fraction(-1)) == n + 1)
        _check(checks, f"chi_0(P{n}) = 1", poly.evaluate(Fraction(0)) == 1)
        sign = 1 if n % 2 == 0 else 0
        _check(checks, f"chi_1(P{n}) = sign = {sign}", poly.evaluate(Fraction(1)) == sign)
    p2 = projective_space(2)
    got = chi_y(p2, line_bundle(p2, p2.hyperplane()))
    _check(checks, "chi_0(P2, O(1)) = 3 (HRR)", got.evaluate(Fraction(0)) == 3, f"got {got}")
    return checks


def suite_comp_twist() -> list[dict]:
    checks: list[dict] = []
    for x in catalog(max_dim=4):
        normalized = hirzebruch_class(x, "normalized")
        unnormalized = hirzebruch_class(x, "unnormalized")
        twisted = twist_one_plus_y(unnormalized, x)
        _check(
            checks,
            f"(1+y)-twist of unnormalized class = normalized class on {x.name}",
            twisted == normalized,
        )
        _check(
            checks,
            f"degree-0 parts integrate equally on {x.name}",
            x.integrate(normalized) == x.integrate(unnormalized),
        )
    return checks


def suite_blowup() -> list[dict]:
    checks: list[dict] = []
    bl = blowup_chi_y(projective_chi_y(2), projective_chi_y(0), 2)
    want = LaurentPolyY({0: 1, 1: -2, 2: 1})
    _check(checks, "blow-up of P2 at a point: chi_y = 1 - 2y + y^2", bl == want, f"got {bl}")
    p1p1 = chi_y(ring_product(projective_space(1), projective_space(1)))
    _check(checks, "equals chi_y(P1 x P1)", bl == p1p1)
    _check(
        checks,
        "arithmetic genus is birationally invariant (y = 0)",
        bl.evaluate(Fraction(0)) == projective_chi_y(2).evaluate(Fraction(0)),
    )
    bl_k0 = MotivicClass.projective(2) + MotivicClass.lefschetz()
    _check(
        checks,
        "Grothendieck-ring blow-up identity for Bl_pt P2 under E",
        verify_blowup_identity(
            bl_k0,
            MotivicClass.projective(1),
            MotivicClass.projective(2),
            MotivicClass.point_class(),
        ),
    )
    return checks


def suite_milnor() -> list[dict]:
    checks: list[dict] = []
    for n in range(1, 4):
        for m in range(1, n + 1):
            ambient = ring_product(projective_space(n), projective_space(m))
            h = ambient.hyperplane(0) + ambient.hyperplane(1)
            got = chi_y_hypersurface(ambient, h)
            want = projective_chi_y(n - 1) * projective_chi_y(m)
            _check(
                checks,
                f"chi_y(H_{n},{m}) = chi_y(P{n - 1}) * chi_y(P{m})",
                got == want,
                f"got {got}",
            )
    p2 = projective_space(2)
    for offsets in ([p2.zero(), p2.zero()], [p2.zero(), -1 * p2.hyperplane()]):
        bundle = ring_proj_bundle(p2, offsets)
        _check(
            checks,
            f"P1-bundle over P2 ({bundle.name}): chi_y = chi_y(P2) * (1 - y)",
            chi_y(bundle) == projective_chi_y(2) * projective_chi_y(1),
        )
    return checks


def a1_minimal_model() -> SncModel:
    """Minimal resolution of the A1 surface singularity: one exceptional
    P1 with discrepancy 0 inside the total space of O(-2) on P1."""
    t = BiPolyUV.uv_power(1)
    return SncModel(
        "A1",
        2,
        (("E", 0),),
        "closed",
        {frozenset(): t + t * t, frozenset({0}): BiPolyUV.one() + t},
    )


def a1_double_model() -> SncModel:
    """The same singularity after one more point blow-up: strict transform
    (discrepancy 0) and a new exceptional P1 (discrepancy 1) crossing it."""
    t = BiPolyUV.uv_power(1)
    one = BiPolyUV.one()
    return SncModel(
        "A1",
        2,
        (("E1", 0), ("E2", 1)),
        "closed",
        {
            frozenset(): 2 * t + t * t,
            frozenset({0}): one + t,
            frozenset({1}): one + t,
            frozenset({0, 1}): one,
        },
    )


def suite_stringy_a1() -> list[dict]:
    checks: list[dict] = []
    minimal = a1_minimal_model()
    double = a1_double_model()
    want = BiPolyUV({(1, 1): 1, (2, 2): 1})
    e_min = stringy_e(minimal)
    e_dbl = stringy_e(double)
    _check(
        checks,
        "minimal resolution: stringy E = uv + (uv)^2",
        e_min.to_polynomial() == want,
        f"got {e_min}",
    )
    _check(
        checks,
        "blown-up resolution: stringy E = uv + (uv)^2",
        e_dbl.to_polynomial() == want,
        f"got {e_dbl}",
    )
    _check(checks, "the two resolutions agree (cross-multiplied)", compare_resolutions(minimal, double))
    _check(checks, "stringy Euler number = 2 (minimal)", stringy_euler(minimal) == 2)
    _check(checks, "stringy Euler number = 2 (blown-up, both routes)", stringy_euler(double) == 2)
    return checks


def run_suite(name: str) -> dict:
    """Run one suite (or 'all'); returns a JSON-ready report."""
    table = {
        "ghrr": suite_ghrr,
        "comp-twist": suite_comp_twist,
        "blowup": suite_blowup,
        "milnor": suite_milnor,
        "stringy-a1": suite_stringy_a1,
    }
    if name == "all":
        suites = [{"suite": s, "checks": table[s]()} for s in SUITES]
        for entry in suites:
            entry["pass"] = all(c["pass"] for c in entry["checks"])
        return {"suite": "all", "suites": suites, "pass": all(e["pass"] for e in suites)}
    if name not in table:
        raise ValueError(f"unknown suite {name!r} (expected one of {SUITES + ('all',)})")
    checks = table[name]()
    return {"suite": name, "checks": checks, "pass": all(c["pass"] for c in checks)}
