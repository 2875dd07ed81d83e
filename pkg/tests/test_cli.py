"""Command-line layer: expression grammar, command output, exit codes,
byte-determinism."""

import json

import pytest

from chargenus.cli import (
    AtomRef,
    ExprParseError,
    Hypersurface,
    Lefschetz,
    Product,
    Proj,
    ProjBundle,
    Scissor,
    build_motivic,
    build_variety,
    expr_to_string,
    main,
    parse_variety_expr,
)
from chargenus.motivic import measure


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestExprParser:
    def test_product(self):
        assert parse_variety_expr("P(2)*P(1)") == Product(Proj(2), Proj(1))

    def test_left_associative(self):
        got = parse_variety_expr("P(1)*P(2)*P(3)")
        assert got == Product(Product(Proj(1), Proj(2)), Proj(3))

    def test_milnor_input(self):
        got = parse_variety_expr("Hyp(P(2)*P(2); 1,1)")
        assert got == Hypersurface(Product(Proj(2), Proj(2)), (1, 1))

    def test_pbundle(self):
        got = parse_variety_expr("Pbundle(P(1); 0, -2)")
        assert got == ProjBundle(Proj(1), (0, -2))

    def test_atoms_and_lefschetz(self):
        assert parse_variety_expr("L") == Lefschetz(1)
        assert parse_variety_expr("A(3)") == Lefschetz(3)
        assert parse_variety_expr("pt") == Proj(0)
        assert parse_variety_expr("elliptic") == AtomRef("elliptic")
        assert parse_variety_expr("scissor(P(2), L)") == Scissor(Proj(2), Lefschetz(1))

    def test_parens(self):
        got = parse_variety_expr("P(1)*(P(2)*P(3))")
        assert got == Product(Proj(1), Product(Proj(2), Proj(3)))

    def test_error_column(self):
        with pytest.raises(ExprParseError) as err:
            parse_variety_expr("P(2")
        assert err.value.column == 4
        with pytest.raises(ExprParseError):
            parse_variety_expr("P(2))")
        with pytest.raises(ExprParseError):
            parse_variety_expr("Pbundle(P(1))")
        with pytest.raises(ExprParseError):
            parse_variety_expr("")

    @pytest.mark.parametrize(
        "src",
        [
            "P(2)*P(1)",
            "Hyp(P(2)*P(2);1,1)",
            "Pbundle(P(1);0,-2)",
            "scissor(P(2),L)",
            "P(1)*(P(2)*P(3))",
            "A(4)",
            "pt",
            "elliptic*L",
        ],
    )
    def test_print_parse_round_trip(self, src):
        ast = parse_variety_expr(src)
        assert parse_variety_expr(expr_to_string(ast)) == ast


class TestEvaluation:
    def test_build_variety_bundle(self):
        x = build_variety(parse_variety_expr("Pbundle(P(1);0,-2)"))
        assert x.dimension == 2 and x.euler_number() == 4

    def test_motivic_pbundle_is_zariski_trivial(self):
        mc = build_motivic(parse_variety_expr("Pbundle(P(1);0,-2)"))
        assert measure(mc, "E") == measure(build_motivic(parse_variety_expr("P(1)*P(1)")), "E")

    def test_motivic_rejects_hyp(self):
        with pytest.raises(Exception):
            build_motivic(parse_variety_expr("Hyp(P(3);4)"))


class TestCommands:
    def test_genus_product(self, capsys):
        code, out, _ = run(capsys, "genus", "--series", "chi_y", "P(2)*P(1)")
        assert code == 0 and out == "1 - 2*y + 2*y^2 - y^3\n"

    def test_genus_signature_odd_projective(self, capsys):
        code, out, _ = run(capsys, "genus", "--series", "L", "P(3)")
        assert code == 0 and out == "0\n"

    def test_genus_k3(self, capsys):
        code, out, _ = run(capsys, "genus", "--series", "chi_y", "Hyp(P(3); 4)")
        assert code == 0 and out == "2 - 20*y + 2*y^2\n"

    def test_genus_y_value(self, capsys):
        code, out, _ = run(capsys, "genus", "--y-value", "-1", "Hyp(P(3); 4)")
        assert code == 0 and out == "24\n"

    def test_genus_json(self, capsys):
        code, out, _ = run(capsys, "genus", "--json", "P(1)")
        assert code == 0
        assert json.loads(out) == {
            "expr": "P(1)",
            "series": "chi_y",
            "coefficients": [[0, "1"], [1, "-1"]],
        }

    def test_genus_motivic_delegation(self, capsys):
        code, out, err = run(capsys, "genus", "L")
        assert code == 0 and out == "-y\n"
        assert "measure" in err

    def test_class_p1(self, capsys):
        code, out, _ = run(capsys, "class", "P(1)")
        assert code == 0 and out == "deg0: 1; deg1: (1-y)*h\n"

    def test_class_unnormalized(self, capsys):
        code, out, _ = run(capsys, "class", "--variant", "unnormalized", "P(1)")
        assert code == 0 and out == "deg0: 1+y; deg1: (1-y)*h\n"

    def test_class_point(self, capsys):
        code, out, _ = run(capsys, "class", "P(0)")
        assert code == 0 and out == "deg0: 1\n"

    def test_measure_examples(self, capsys):
        code, out, _ = run(capsys, "measure", "--kind", "E", "P(2)")
        assert code == 0 and out == "1 + u*v + u^2*v^2\n"
        code, out, _ = run(capsys, "measure", "--kind", "chi_y", "L")
        assert code == 0 and out == "-y\n"
        code, out, _ = run(capsys, "measure", "--kind", "Hc", "elliptic")
        assert code == 0 and out == "1 + u + v + u*v\n"
        code, out, _ = run(capsys, "measure", "--kind", "weight", "elliptic")
        assert code == 0 and out == "1 + 2*w + w^2\n"
        code, out, _ = run(capsys, "measure", "--kind", "euler", "P(2)")
        assert code == 0 and out == "3\n"

    def test_exit_codes(self, capsys):
        code, _, err = run(capsys, "genus", "P(2")
        assert code == 2 and "column 4" in err
        code, _, err = run(capsys, "genus", "--series", "todd", "L")
        assert code == 1
        code, _, err = run(capsys, "measure", "unknown_atom")
        assert code == 1

    def test_y_value_requires_chi_y(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["genus", "--series", "todd", "--y-value", "1", "P(1)"])
        assert exc.value.code == 2
        capsys.readouterr()


A1_MINIMAL_TOML = """\
[model]
name = "A1"
dimension = 2
strata_mode = "closed"

[[divisor]]
name = "E"
discrepancy = 0

[strata]
"" = "u*v + u^2*v^2"
"E" = "1 + u*v"
"""

A1_DOUBLE_TOML = """\
[model]
name = "A1"
dimension = 2
strata_mode = "closed"

[[divisor]]
name = "E1"
discrepancy = 0

[[divisor]]
name = "E2"
discrepancy = 1

[strata]
"" = "2*u*v + u^2*v^2"
"E1" = "1 + u*v"
"E2" = "1 + u*v"
"E1,E2" = "1"
"""


class TestStringyCommand:
    def test_minimal(self, capsys, tmp_path):
        path = tmp_path / "a1.toml"
        path.write_text(A1_MINIMAL_TOML)
        code, out, _ = run(capsys, "stringy", str(path))
        assert code == 0
        assert out.splitlines() == [
            "stringy_E = u*v + u^2*v^2",
            "stringy_chi = y + y^2",
            "stringy_euler = 2",
            "is_polynomial = true",
        ]

    def test_compare(self, capsys, tmp_path):
        p1 = tmp_path / "a.toml"
        p2 = tmp_path / "b.toml"
        p1.write_text(A1_MINIMAL_TOML)
        p2.write_text(A1_DOUBLE_TOML)
        code, out, _ = run(capsys, "stringy", str(p2), "--compare", str(p1))
        assert code == 0 and out.splitlines()[-1] == "equal: true"

    def test_negative_discrepancy(self, capsys, tmp_path):
        path = tmp_path / "bad.toml"
        path.write_text(A1_MINIMAL_TOML.replace("discrepancy = 0", "discrepancy = -2"))
        code, _, err = run(capsys, "stringy", str(path))
        assert code == 1 and "log-terminal" in err

    def test_malformed_toml(self, capsys, tmp_path):
        path = tmp_path / "broken.toml"
        path.write_text("[model\nname=")
        code, _, err = run(capsys, "stringy", str(path))
        assert code == 1

    def test_json_determinism(self, capsys, tmp_path):
        path = tmp_path / "a1.toml"
        path.write_text(A1_DOUBLE_TOML)
        _, out1, _ = run(capsys, "stringy", "--json", str(path))
        _, out2, _ = run(capsys, "stringy", "--json", str(path))
        assert out1 == out2
        payload = json.loads(out1)
        assert payload["stringy_E"]["denominator_factors"] == ["1 + u*v"]
        assert payload["is_polynomial"] is True


class TestVerifyCommand:
    def test_all_passes_and_is_stable(self, capsys):
        code1, out1, err1 = run(capsys, "verify", "all")
        code2, out2, _ = run(capsys, "verify", "all")
        assert code1 == code2 == 0
        assert out1 == out2
        report = json.loads(out1)
        assert report["pass"] is True
        assert {e["suite"] for e in report["suites"]} == {
            "ghrr", "comp-twist", "blowup", "milnor", "stringy-a1",
        }
        assert "PASS" in err1

    def test_single_suite(self, capsys):
        code, out, _ = run(capsys, "verify", "milnor")
        assert code == 0
        assert json.loads(out)["pass"] is True


class TestAtomCatalogEnv:
    def test_env_atoms(self, capsys, tmp_path, monkeypatch):
        path = tmp_path / "atoms.toml"
        path.write_text('[[atom]]\nname = "genus2curve"\ndim = 1\ne = "1 - 2*u - 2*v + u*v"\n')
        monkeypatch.setenv("CHARGENUS_ATOMS", str(path))
        code, out, _ = run(capsys, "measure", "--kind", "euler", "genus2curve")
        assert code == 0 and out == "-2\n"
