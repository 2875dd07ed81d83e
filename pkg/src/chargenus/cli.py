"""Command-line front end.

    chargenus genus   [--series chi_y|todd|L|chern] [--y-value p/q] [--json] EXPR
    chargenus class   [--variant normalized|unnormalized] [--json] EXPR
    chargenus measure [--kind E|Hc|chi_y|weight|euler] [--json] EXPR
    chargenus stringy [--json] [--compare PATH] PATH
    chargenus verify  SUITE        (ghrr comp-twist blowup milnor stringy-a1 all)

Variety expressions:

    expr := term ('*' term)*
    term := 'P(' INT ')' | 'A(' INT ')' | 'L' | 'pt' | IDENT
          | 'Pbundle(' expr ';' INT (',' INT)* ')'
          | 'Hyp(' expr ';' INT (',' INT)* ')'
          | 'scissor(' expr ',' expr ')' | '(' expr ')'

`A(n)` is the n-th power of the Lefschetz class, IDENT names a registered
atom (the CHARGENUS_ATOMS environment variable may point at a TOML atom
catalog).  All numbers are printed exactly, JSON values as "p/q" strings;
identical inputs produce byte-identical output.  Exit codes: 0 success,
1 computation error, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .charclass import (
    chi_y,
    genus_of_hypersurface,
    chi_y_hypersurface,
    hirzebruch_class,
    multiplicative_class,
    series_builtin,
    tangent_bundle,
)
from .exact import CoeffY, ExactError, LaurentPolyY
from .motivic import (
    AtomRegistry,
    LocalizedClassError,
    MotivicClass,
    default_registry,
    measure,
)
from .rings import SmoothVariety, projective_space, ring_product, ring_proj_bundle
from .verify import SUITES, run_suite


class ExprParseError(ValueError):
    def __init__(self, message: str, column: int):
        super().__init__(f"{message} at column {column}")
        self.column = column


class MotivicOnlyError(ExactError):
    """The expression only lives in the Grothendieck ring, not the smooth catalog."""


# ---------------------------------------------------------------------------
# Variety expressions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Proj:
    n: int


@dataclass(frozen=True)
class Product:
    left: "VarietyExpr"
    right: "VarietyExpr"


@dataclass(frozen=True)
class ProjBundle:
    base: "VarietyExpr"
    offsets: tuple[int, ...]


@dataclass(frozen=True)
class Hypersurface:
    ambient: "VarietyExpr"
    multidegree: tuple[int, ...]


@dataclass(frozen=True)
class AtomRef:
    name: str


@dataclass(frozen=True)
class Lefschetz:
    power: int = 1


@dataclass(frozen=True)
class Scissor:
    left: "VarietyExpr"
    right: "VarietyExpr"


VarietyExpr = Union[Proj, Product, ProjBundle, Hypersurface, AtomRef, Lefschetz, Scissor]


class _ExprParser:
    def __init__(self, src: str):
        self.src = src
        self.i = 0

    def error(self, message: str):
        raise ExprParseError(message, self.i + 1)

    def skip_ws(self):
        while self.i < len(self.src) and self.src[self.i].isspace():
            self.i += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.src[self.i] if self.i < len(self.src) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.i += 1

    def read_int(self) -> int:
        self.skip_ws()
        start = self.i
        if self.i < len(self.src) and self.src[self.i] == "-":
            self.i += 1
        while self.i < len(self.src) and self.src[self.i].isdigit():
            self.i += 1
        if self.i == start or self.src[start:self.i] == "-":
            self.error("expected integer")
        return int(self.src[start:self.i])

    def read_int_list(self) -> tuple[int, ...]:
        out = [self.read_int()]
        while self.peek() == ",":
            self.i += 1
            out.append(self.read_int())
        return tuple(out)

    def read_ident(self) -> str:
        self.skip_ws()
        start = self.i
        while self.i < len(self.src) and (self.src[self.i].isalnum() or self.src[self.i] == "_"):
            self.i += 1
        if self.i == start:
            self.error("expected name")
        return self.src[start:self.i]

    def parse(self) -> VarietyExpr:
        expr = self.parse_expr()
        self.skip_ws()
        if self.i != len(self.src):
            self.error("expected end of input or '*'")
        return expr

    def parse_expr(self) -> VarietyExpr:
        node = self.parse_term()
        while self.peek() == "*":
            self.i += 1
            node = Product(node, self.parse_term())
        return node

    def parse_term(self) -> VarietyExpr:
        c = self.peek()
        if c == "(":
            self.i += 1
            node = self.parse_expr()
            self.expect(")")
            return node
        if not (c.isalpha() or c == "_"):
            self.error("expected a variety term")
        name = self.read_ident()
        if self.peek() == "(":
            self.i += 1
            if name == "P":
                n = self.read_int()
                self.expect(")")
                if n < 0:
                    self.error("projective dimension must be >= 0")
                return Proj(n)
            if name == "A":
                n = self.read_int()
                self.expect(")")
                if n < 0:
                    self.error("affine power must be >= 0")
                return Lefschetz(n)
            if name == "Pbundle":
                base = self.parse_expr()
                self.expect(";")
                offsets = self.read_int_list()
                self.expect(")")
                return ProjBundle(base, offsets)
            if name == "Hyp":
                ambient = self.parse_expr()
                self.expect(";")
                degrees = self.read_int_list()
                self.expect(")")
                return Hypersurface(ambient, degrees)
            if name == "scissor":
                left = self.parse_expr()
                self.expect(",")
                right = self.parse_expr()
                self.expect(")")
                return Scissor(left, right)
            self.error(f"unknown constructor {name!r}")
        if name == "L":
            return Lefschetz(1)
        if name == "pt":
            return Proj(0)
        return AtomRef(name)


def parse_variety_expr(src: str) -> VarietyExpr:
    return _ExprParser(src).parse()


def expr_to_string(e: VarietyExpr) -> str:
    if isinstance(e, Proj):
        return f"P({e.n})"
    if isinstance(e, Product):
        right = expr_to_string(e.right)
        if isinstance(e.right, Product):
            right = f"({right})"
        return f"{expr_to_string(e.left)}*{right}"
    if isinstance(e, ProjBundle):
        return f"Pbundle({expr_to_string(e.base)};{','.join(map(str, e.offsets))})"
    if isinstance(e, Hypersurface):
        return f"Hyp({expr_to_string(e.ambient)};{','.join(map(str, e.multidegree))})"
    if isinstance(e, AtomRef):
        return e.name
    if isinstance(e, Lefschetz):
        return "L" if e.power == 1 else f"A({e.power})"
    if isinstance(e, Scissor):
        return f"scissor({expr_to_string(e.left)},{expr_to_string(e.right)})"
    raise TypeError(f"not a variety expression: {e!r}")


# ---------------------------------------------------------------------------
# Evaluation into the two layers
# ---------------------------------------------------------------------------


def build_variety(e: VarietyExpr) -> SmoothVariety:
    if isinstance(e, Proj):
        return projective_space(e.n)
    if isinstance(e, Product):
        return ring_product(build_variety(e.left), build_variety(e.right))
    if isinstance(e, ProjBundle):
        if not isinstance(e.base, Proj):
            raise ExactError(
                "Pbundle on the command line needs a P(n) base; "
                "general bases are available through the library API"
            )
        base = build_variety(e.base)
        offsets = [c * base.hyperplane() if c else base.zero() for c in e.offsets]
        return ring_proj_bundle(base, offsets, name=expr_to_string(e))
    if isinstance(e, Hypersurface):
        raise ExactError("hypersurfaces have no ring model; only genera are defined")
    if isinstance(e, (Lefschetz, AtomRef, Scissor)):
        raise MotivicOnlyError(
            f"{expr_to_string(e)} only exists in the motivic layer; try `measure`"
        )
    raise TypeError(f"not a variety expression: {e!r}")


def _product_factors(e: VarietyExpr) -> list[Proj]:
    if isinstance(e, Product):
        return _product_factors(e.left) + _product_factors(e.right)
    if isinstance(e, Proj):
        return [e]
    raise ExactError("hypersurface ambient must be a product of projective spaces")


def build_motivic(e: VarietyExpr, registry: Optional[AtomRegistry] = None) -> MotivicClass:
    reg = registry if registry is not None else default_registry()
    if isinstance(e, Proj):
        return MotivicClass.projective(e.n)
    if isinstance(e, Lefschetz):
        return MotivicClass.lefschetz(e.power)
    if isinstance(e, AtomRef):
        return MotivicClass.of_atom(reg.get(e.name))
    if isinstance(e, Product):
        return build_motivic(e.left, reg).mul(build_motivic(e.right, reg), reg)
    if isinstance(e, Scissor):
        return build_motivic(e.left, reg) - build_motivic(e.right, reg)
    if isinstance(e, ProjBundle):
        # Zariski-locally trivial: [P(E) -> X] = [X] * [P^r]
        fiber = MotivicClass.projective(len(e.offsets) - 1)
        return build_motivic(e.base, reg).mul(fiber, reg)
    if isinstance(e, Hypersurface):
        raise ExactError(
            "the class of a hypersurface is not determined by its multidegree alone; "
            "register it as an atom with its E-polynomial"
        )
    raise TypeError(f"not a variety expression: {e!r}")


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

SERIES_FLAGS = {"chi_y": "Qy", "todd": "todd", "L": "Lclass", "chern": "chern"}


def _emit(payload: dict, text: str, as_json: bool):
    if as_json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _poly_coefficients(poly: LaurentPolyY) -> list[list]:
    return [[e, str(c)] for e, c in poly.items()]


def cmd_genus(args) -> int:
    expr = parse_variety_expr(args.expr)
    series = args.series
    try:
        if isinstance(expr, Hypersurface):
            factors = _product_factors(expr.ambient)
            if len(expr.multidegree) != len(factors):
                raise ExactError(
                    f"multidegree has {len(expr.multidegree)} entries "
                    f"for {len(factors)} ambient factors"
                )
            ambient = build_variety(expr.ambient)
            h = ambient.zero()
            for i, d in enumerate(expr.multidegree):
                h = h + d * ambient.hyperplane(i)
            if series == "chi_y":
                poly = chi_y_hypersurface(ambient, h)
            else:
                s = series_builtin(SERIES_FLAGS[series], ambient.ring.top_degree)
                poly = genus_of_hypersurface(ambient, h, s).as_polynomial()
        else:
            x = build_variety(expr)
            if series == "chi_y":
                poly = chi_y(x)
            else:
                s = series_builtin(SERIES_FLAGS[series], x.ring.top_degree)
                val = x.integrate(multiplicative_class(s, tangent_bundle(x), x))
                poly = val.as_polynomial()
    except MotivicOnlyError:
        if series != "chi_y":
            raise ExactError(
                "only the chi_y genus extends to motivic expressions; try `measure`"
            )
        print("note: motivic expression, computed as measure --kind chi_y", file=sys.stderr)
        poly = measure(build_motivic(expr), "chi_y")
    if args.y_value is not None:
        value = poly.evaluate(Fraction(args.y_value))
        _emit(
            {"expr": args.expr, "series": series, "y": str(Fraction(args.y_value)), "value": str(value)},
            str(value),
            args.json,
        )
        return 0
    _emit(
        {"expr": args.expr, "series": series, "coefficients": _poly_coefficients(poly)},
        poly.format(),
        args.json,
    )
    return 0


def cmd_class(args) -> int:
    expr = parse_variety_expr(args.expr)
    x = build_variety(expr)
    cls = hirzebruch_class(x, args.variant)
    components = [[k, cls.component(k).format()] for k in range(x.dimension + 1)]
    text = "; ".join(f"deg{k}: {s}" for k, s in components)
    _emit(
        {"expr": args.expr, "variant": args.variant, "components": components},
        text,
        args.json,
    )
    return 0


def cmd_measure(args) -> int:
    expr = parse_variety_expr(args.expr)
    mc = build_motivic(expr)
    val = measure(mc, args.kind)
    if isinstance(val, Fraction):
        text = str(val)
    elif isinstance(val, LaurentPolyY):
        text = val.format(symbol="w" if args.kind == "weight" else "y")
    else:
        text = val.format()
    _emit({"expr": args.expr, "kind": args.kind, "value": text}, text, args.json)
    return 0


def cmd_stringy(args) -> int:
    from .stringy import compare_resolutions, load_snc_toml, stringy_report

    model = load_snc_toml(args.path)
    report = stringy_report(model)
    if args.compare:
        other = load_snc_toml(args.compare)
        report["compare"] = {
            "model": other.name,
            "equal": compare_resolutions(model, other),
        }
    if args.json:
        print(json.dumps(report, sort_keys=True))
        return 0
    for field in ("stringy_E", "stringy_chi"):
        entry = report[field]
        if entry["polynomial"] is not None:
            print(f"{field} = {entry['polynomial']}")
        else:
            dens = " / ".join(f"({d})" for d in entry["denominator_factors"])
            print(f"{field} = ({entry['numerator']}) / {dens}")
    print(f"stringy_euler = {report['stringy_euler']}")
    print(f"is_polynomial = {'true' if report['is_polynomial'] else 'false'}")
    if "compare" in report:
        print(f"equal: {'true' if report['compare']['equal'] else 'false'}")
    return 0


def cmd_verify(args) -> int:
    report = run_suite(args.suite)
    print(json.dumps(report, sort_keys=True))
    if report["suite"] == "all":
        for entry in report["suites"]:
            for c in entry["checks"]:
                status = "PASS" if c["pass"] else "FAIL"
                print(f"{status} [{entry['suite']}] {c['name']}", file=sys.stderr)
    else:
        for c in report["checks"]:
            status = "PASS" if c["pass"] else "FAIL"
            print(f"{status} {c['name']}", file=sys.stderr)
    return 0 if report["pass"] else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chargenus",
        description="Exact chi_y genera, Hirzebruch classes, motivic measures, stringy invariants.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("genus", help="genus of a smooth-catalog expression")
    p.add_argument("expr")
    p.add_argument("--series", choices=sorted(SERIES_FLAGS), default="chi_y")
    p.add_argument("--y-value", dest="y_value", default=None, metavar="P/Q")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_genus)

    p = sub.add_parser("class", help="Hirzebruch class by graded component")
    p.add_argument("expr")
    p.add_argument("--variant", choices=("normalized", "unnormalized"), default="normalized")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_class)

    p = sub.add_parser("measure", help="motivic measure of an expression")
    p.add_argument("expr")
    p.add_argument("--kind", choices=("E", "Hc", "chi_y", "weight", "euler"), default="E")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("stringy", help="stringy invariants from an SNC model file")
    p.add_argument("path")
    p.add_argument("--compare", default=None, metavar="PATH")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_stringy)

    p = sub.add_parser("verify", help="run a named identity suite")
    p.add_argument("suite", choices=SUITES + ("all",))
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "y_value", None) is not None and args.series != "chi_y":
        parser.error("--y-value only applies to --series chi_y")
    atoms_path = os.environ.get("CHARGENUS_ATOMS")
    if atoms_path:
        try:
            default_registry().load_toml(atoms_path)
        except Exception as exc:
            print(f"error loading CHARGENUS_ATOMS: {exc}", file=sys.stderr)
            return 1
    try:
        return args.func(args)
    except ExprParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ExactError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
