"""CLI: expression parsing, spec files, commands, determinism, exit codes."""

import json
from fractions import Fraction

import pytest

from nfc.scalar import GaussianRational, I, ONE
from nfc.cli import (
    ParseError,
    build_surface,
    main,
    parse_expression,
    parse_surface_spec,
    surface_spec_to_obj,
)


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestExpressionParser:
    def test_quadric(self):
        terms = parse_expression("u*z*zb")
        assert terms == {(1, 1, 1): ONE}

    def test_cd_style(self):
        terms = parse_expression("u*(z*zb + 1/4*z^2*zb^2)")
        assert terms[(1, 1, 1)] == ONE
        assert terms[(2, 2, 1)] == GaussianRational(Fraction(1, 4))

    def test_imaginary_unit_and_minus(self):
        terms = parse_expression("i*z^2*zb*u - i*z*zb^2*u")
        assert terms[(2, 1, 1)] == I
        assert terms[(1, 2, 1)] == -I

    def test_power_and_cancellation(self):
        assert parse_expression("(z + zb)^2 - z^2 - 2*z*zb - zb^2") == {}

    def test_syntax_error_position(self):
        with pytest.raises(ParseError, match="column 6: unexpected token"):
            parse_expression("z*zb*")

    def test_unknown_symbol(self):
        with pytest.raises(ParseError, match="unknown symbol 'w'"):
            parse_expression("w*z")

    def test_bad_exponent(self):
        with pytest.raises(ParseError, match="exponent must be a non-negative integer"):
            parse_expression("z^1/2")
        with pytest.raises(ParseError, match="expected 'num'"):
            parse_expression("z^(2)")


class TestSurfaceSpec:
    def test_expr_spec_hermitian_rejected(self):
        with pytest.raises(ParseError, match="not Hermitian"):
            parse_surface_spec({"order": 8, "expr": "u*(z*zb + i*z^2*zb)"})

    def test_series_spec_round_trip(self):
        spec = parse_surface_spec({
            "order": 8,
            "series": [
                {"a": 1, "b": 1, "c": 1, "re": "1", "im": "0"},
                {"a": 2, "b": 2, "c": 1, "re": "-3/4", "im": "0"},
            ],
        })
        obj = surface_spec_to_obj(spec)
        spec2 = parse_surface_spec(obj)
        assert surface_spec_to_obj(spec2) == obj
        M = build_surface(spec)
        assert M.phi.coeff(2, 2, 1) == GaussianRational(Fraction(-3, 4))

    def test_family_spec_round_trip(self):
        spec = parse_surface_spec({"order": 9, "family": {"name": "mmt", "m": 2, "T": "1/2"}})
        obj = surface_spec_to_obj(spec)
        assert parse_surface_spec(obj) == spec
        M = build_surface(spec)
        assert M.phi.coeff(2, 2, 1) == GaussianRational(Fraction(-1))

    def test_exactly_one_source(self):
        with pytest.raises(ParseError, match="exactly one"):
            parse_surface_spec({"order": 8})
        with pytest.raises(ParseError, match="exactly one"):
            parse_surface_spec({"order": 8, "expr": "u*z*zb", "family": {"name": "quadric"}})


class TestCommands:
    def test_resonances_mm(self, capsys):
        code, out, _ = run_cli(capsys, "resonances", "--family", "mm", "--m", "1",
                               "--order-total", "9")
        assert code == 0
        rep = json.loads(out)
        assert rep["results"]["resonances"] == [2, 3]

    def test_charpoly_quadric(self, capsys):
        code, out, _ = run_cli(capsys, "charpoly", "--family", "quadric",
                               "--order-total", "9")
        assert code == 0
        rep = json.loads(out)
        assert rep["results"]["monic_constant"] == {"re": "3/16", "im": "0"}
        assert rep["results"]["char_poly"][-1] == {"re": "1", "im": "0"}
        assert rep["results"]["resonances"] == []

    def test_expr_surface(self, capsys):
        code, out, _ = run_cli(capsys, "resonances", "--expr",
                               "u*(z*zb + z^3*zb^3)", "--order-total", "9")
        assert code == 0
        rep = json.loads(out)
        assert rep["results"]["resonances"] == [2, 3]   # phi33 = 1 matches m = 1

    def test_normalize_cd(self, capsys):
        code, out, _ = run_cli(capsys, "normalize", "--family", "cd",
                               "--C", "0", "--D", "-24", "--order-total", "11",
                               "--order", "5")
        assert code == 0
        rep = json.loads(out)
        assert [s["status"] for s in rep["results"]["stages"]] == ["solved"] * 4
        assert rep["results"]["map_defect_zero_to_order"] == 11
        assert rep["results"]["resonances_observed"] == []

    def test_normalize_strict_resonant_exit_1(self, capsys):
        code, _, err = run_cli(capsys, "normalize", "--family", "mm", "--m", "1",
                               "--order-total", "10", "--order", "3",
                               "--policy", "strict")
        assert code == 1
        assert "resonant" in err

    def test_verify_map_ht(self, capsys):
        code, out, _ = run_cli(capsys, "verify-map", "--family", "mm", "--m", "1",
                               "--map", "ht", "--t", "1", "--order-total", "11")
        assert code == 0
        rep = json.loads(out)
        assert rep["results"]["defect_zero"] is True
        assert rep["results"]["order"] == 11

    def test_verify_field_builtin(self, capsys):
        code, out, _ = run_cli(capsys, "verify-field", "--family", "mmt",
                               "--m", "1", "--T", "1", "--order-total", "9")
        assert code == 0
        rep = json.loads(out)
        assert rep["results"]["defect_zero"] is True

    def test_verify_field_reports_first_nonzero(self, capsys):
        code, out, _ = run_cli(capsys, "verify-field", "--family", "quadric",
                               "--m", "1", "--T", "0", "--order-total", "9")
        assert code == 0
        rep = json.loads(out)
        assert rep["results"]["defect_zero"] is False
        assert rep["results"]["first_nonzero"] == {
            "a": 3, "b": 3, "c": 2, "re": "1", "im": "0"}

    def test_transform_surface_file(self, capsys, tmp_path):
        sfile = tmp_path / "surface.json"
        sfile.write_text(json.dumps({"order": 9, "expr": "u*z*zb"}))
        mfile = tmp_path / "map.json"
        mfile.write_text(json.dumps({"f": [{"l": 2, "k": 0, "re": "1", "im": "0"}],
                                     "g": []}))
        code, out, _ = run_cli(capsys, "transform", "--surface", str(sfile),
                               "--map", str(mfile))
        assert code == 0
        rep = json.loads(out)
        assert rep["results"]["in_class"] is True
        terms = {(t["a"], t["b"], t["c"]): t["re"] for t in rep["results"]["surface"]}
        assert terms[(1, 1, 1)] == "1"
        assert terms[(2, 1, 1)] == "-1"   # z -> z + z^2 pushes phi21 to -1

    def test_parse_error_exit_2(self, capsys):
        code, _, err = run_cli(capsys, "resonances", "--expr", "u*(z*zb",
                               "--order-total", "9")
        assert code == 2
        assert "parse error" in err

    def test_missing_surface_exit_2(self, capsys):
        code, _, err = run_cli(capsys, "resonances")
        assert code == 2
        assert "no surface" in err

    def test_domain_error_exit_1(self, capsys):
        # not in the class: phi11 = 0
        code, _, err = run_cli(capsys, "charpoly", "--expr", "u^2*z*zb",
                               "--order-total", "9")
        assert code == 1

    def test_selftest(self, capsys):
        code, out, _ = run_cli(capsys, "selftest")
        assert code == 0
        rep = json.loads(out)
        assert rep["results"]["all_ok"] is True

    def test_reports_byte_identical(self, capsys):
        args = ("charpoly", "--family", "mmt", "--m", "2", "--T", "1",
                "--order-total", "9")
        _, out1, _ = run_cli(capsys, *args)
        _, out2, _ = run_cli(capsys, *args)
        assert out1 == out2

    def test_text_format(self, capsys):
        code, out, _ = run_cli(capsys, "resonances", "--family", "mm", "--m", "2",
                               "--order-total", "9", "--format", "text")
        assert code == 0
        assert "resonances" in out and "json" not in out
