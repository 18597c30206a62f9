"""File grammar, subcommands, exit codes and JSON round trips."""

import io
import json

import pytest

from arrfree import GinConfig, analyze
from arrfree.cli import (EXIT_COMPUTE, EXIT_OK, EXIT_PARSE, EXIT_USAGE,
                         ParseError, main, parse_expression, parse_input,
                         report_from_dict, report_to_dict,
                         render_sectional_matrix)
from helpers import polys

FIVE_ARR = """\
# five planes through the origin
vars x y z
hyperplane x
hyperplane y
hyperplane z
hyperplane x+y
hyperplane x-y
"""

NOT_FREE_ARR = """\
vars x y z
hyperplane x
hyperplane x+y-z
hyperplane x+z
hyperplane x+2z
hyperplane x+y+z
"""

STAIR_IDEAL = """\
vars x y
gen x^2
gen x*y
gen y^5
"""


def run_cli(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


class TestExpressionParsing:
    def test_basic_forms(self):
        names = ("x", "y", "z")
        assert str(parse_expression("x + y - z", names)) == "x + y - z"
        assert str(parse_expression("x+2z", names)) == "x + 2*z"
        assert str(parse_expression("2 x y", names)) == "2*x*y"
        assert str(parse_expression("-x^2 + (x+y)^2", names)) == "2*x*y + y^2"

    def test_multicharacter_names(self):
        names = ("x1", "x2")
        f = parse_expression("x1^2 - 3x2", names)
        assert str(f) == "x^2 - 3*y"  # display aliases for two variables

    def test_unknown_variable(self):
        with pytest.raises(ParseError) as err:
            parse_expression("x + q", ("x", "y"))
        assert err.value.col == 5

    def test_trailing_garbage(self):
        with pytest.raises(ParseError):
            parse_expression("x +", ("x",))
        with pytest.raises(ParseError):
            parse_expression("x ) y", ("x", "y"))


class TestInputDocuments:
    def test_arrangement_document(self):
        doc = parse_input(FIVE_ARR, "five.arr")
        assert doc.kind == "arrangement" and doc.var_names == ("x", "y", "z")
        assert len(doc.items) == 5
        A = doc.as_arrangement()
        assert A.n == 5 and A.essential

    def test_ideal_document(self):
        doc = parse_input(STAIR_IDEAL, "stair.ideal")
        assert doc.kind == "ideal"
        B = doc.as_monomial_ideal()
        assert str(B) == "<x^2, x*y, y^5>"

    def test_nonlinear_form_rejected(self):
        with pytest.raises(ParseError) as err:
            parse_input("vars x y\nhyperplane x^2\n")
        assert "linear homogeneous" in err.value.message
        assert err.value.line == 2

    def test_non_monomial_generator_rejected(self):
        with pytest.raises(ParseError) as err:
            parse_input("vars x y\ngen x + y\n")
        assert "single monomial" in err.value.message

    def test_mixed_kinds_rejected(self):
        with pytest.raises(ParseError):
            parse_input("vars x y\nhyperplane x\ngen y\n")

    def test_vars_required_first(self):
        with pytest.raises(ParseError):
            parse_input("hyperplane x\nvars x\n")

    def test_duplicate_names_rejected(self):
        with pytest.raises(ParseError):
            parse_input("vars x x\nhyperplane x\n")


class TestCommands:
    def test_analyze_pretty(self, tmp_path):
        path = tmp_path / "five.arr"
        path.write_text(FIVE_ARR)
        code, text = run_cli("analyze", str(path), "--seed", "7")
        assert code == EXIT_OK
        assert "verdict   : FREE" in text
        assert "<x^4, x^3*y, x^2*y^2, x*y^4, y^6>" in text
        assert "exponents : (1, 1, 3)" in text

    def test_analyze_json_fields(self, tmp_path):
        path = tmp_path / "five.arr"
        path.write_text(FIVE_ARR)
        code, text = run_cli("analyze", str(path), "--seed", "7", "--json")
        data = json.loads(text)
        assert data["free"] is True
        assert data["exponents"] == [1, 1, 3]
        assert data["d0"] == 5 and data["regularity"] == 6
        assert data["rgin"] == ["x^4", "x^3*y", "x^2*y^2", "x*y^4", "y^6"]
        assert data["provenance"]["seed"] == 7

    def test_analyze_not_free(self, tmp_path):
        path = tmp_path / "nf.arr"
        path.write_text(NOT_FREE_ARR)
        code, text = run_cli("analyze", str(path), "--seed", "3")
        assert code == EXIT_OK and "NOT FREE" in text

    def test_seed_determinism(self, tmp_path):
        path = tmp_path / "five.arr"
        path.write_text(FIVE_ARR)
        _, first = run_cli("analyze", str(path), "--seed", "11", "--json")
        _, second = run_cli("analyze", str(path), "--seed", "11", "--json")
        assert first == second

    def test_seed_determinism_across_processes(self, tmp_path):
        import subprocess
        import sys
        path = tmp_path / "five.arr"
        path.write_text(FIVE_ARR)
        cmd = [sys.executable, "-m", "arrfree.cli", "analyze", str(path),
               "--seed", "11", "--json"]
        runs = [subprocess.run(cmd, capture_output=True, text=True)
                for _ in range(2)]
        assert all(r.returncode == 0 for r in runs)
        assert runs[0].stdout == runs[1].stdout != ""

    def test_rgin_on_ideal(self, tmp_path):
        path = tmp_path / "b.ideal"
        path.write_text(STAIR_IDEAL)
        code, text = run_cli("rgin", str(path), "--seed", "2")
        assert code == EXIT_OK
        assert "rgin: <x^2, x*y, y^5>" in text

    def test_sm_table(self, tmp_path):
        path = tmp_path / "five.arr"
        path.write_text(FIVE_ARR)
        code, text = run_cli("sm", str(path), "--seed", "7")
        assert code == EXIT_OK
        assert "[5]" in text  # d0 column marker
        assert "13" in text

    def test_sm_dmax(self, tmp_path):
        path = tmp_path / "five.arr"
        path.write_text(FIVE_ARR)
        code, text = run_cli("sm", str(path), "--seed", "7", "--dmax", "10",
                             "--json")
        data = json.loads(text)
        assert len(data["sectional_matrix"][0]) == 11

    def test_exponents_paths(self, tmp_path):
        arr_path = tmp_path / "five.arr"
        arr_path.write_text(FIVE_ARR)
        code, text = run_cli("exponents", str(arr_path), "--seed", "7")
        assert code == EXIT_OK and "(1, 1, 3)" in text
        ideal_path = tmp_path / "b.ideal"
        ideal_path.write_text("vars x y z\ngen x^3\ngen x^2y\ngen x*y^2\ngen y^4\n")
        code, text = run_cli("exponents", str(ideal_path))
        assert code == EXIT_OK and "(1, 1, 2)" in text

    def test_construct_golden(self):
        code, text = run_cli("construct", "--exponents", "1,2,4", "--dim", "3")
        assert code == EXIT_OK
        lines = text.strip().splitlines()
        assert lines[0] == "vars x y z"
        assert lines[1:] == [
            "hyperplane x", "hyperplane x - y", "hyperplane x - 2*y",
            "hyperplane x - z", "hyperplane x - 2*z", "hyperplane x - 3*z",
            "hyperplane x - 4*z"]

    def test_construct_output_reparses(self, tmp_path):
        code, text = run_cli("construct", "--exponents", "1,1,2")
        doc = parse_input(text, "constructed")
        A = doc.as_arrangement()
        assert A.n == 4 and A.essential

    def test_construct_dim_mismatch(self):
        code, _ = run_cli("construct", "--exponents", "1,2", "--dim", "3")
        assert code == EXIT_PARSE

    def test_realize_yes(self, tmp_path):
        path = tmp_path / "b.ideal"
        path.write_text("vars x y z\n" + "\n".join(
            f"gen {m}" for m in ["x^6", "x^5y", "x^4y^2", "x^3y^4",
                                 "x^2y^5", "x*y^7", "y^9"]) + "\n")
        code, text = run_cli("realize", str(path), "--seed", "4")
        assert code == EXIT_OK
        assert "YES: exponents (1, 2, 4) (rgin verified)" in text

    def test_realize_no(self, tmp_path):
        path = tmp_path / "b.ideal"
        path.write_text("vars x y z\ngen x^3\ngen x^2y\ngen x*y^2\ngen y^5\n")
        code, text = run_cli("realize", str(path))
        assert code == EXIT_OK
        assert "NO: no minimal generator of degree 4" in text

    def test_conjecture_both_cases(self, tmp_path):
        holding = tmp_path / "h.ideal"
        holding.write_text("vars x y z\n" + "\n".join(
            f"gen {m}" for m in ["x^4", "x^3y", "x^2y^2", "x*y^4",
                                 "y^5", "x*y^3z^2"]) + "\n")
        code, text = run_cli("conjecture", str(holding))
        assert code == EXIT_OK and "holds" in text and "d0 = 4" in text
        failing = tmp_path / "f.ideal"
        failing.write_text("vars x y z\ngen x^2\ngen x*y\ngen x*z\ngen y^3\n")
        code, text = run_cli("conjecture", str(failing))
        assert code == EXIT_OK and "fails" in text and "x*z" in text


class TestExitCodes:
    def test_usage(self):
        assert run_cli("analyze")[0] == EXIT_USAGE
        assert run_cli("unknown-command")[0] == EXIT_USAGE
        assert run_cli("construct", "--exponents", "2,1")[0] == EXIT_USAGE

    def test_bad_coeff_flag_is_usage(self, tmp_path):
        path = tmp_path / "five.arr"
        path.write_text(FIVE_ARR)
        assert run_cli("analyze", str(path), "--coeff", "float")[0] == EXIT_USAGE
        assert run_cli("analyze", str(path), "--coeff", "mod:4")[0] == EXIT_USAGE
        assert run_cli("analyze", str(path),
                       "--coeff", "mod:7,7")[0] == EXIT_USAGE

    def test_parse_error(self, tmp_path):
        path = tmp_path / "bad.arr"
        path.write_text("vars x y\nhyperplane x^2\n")
        assert run_cli("analyze", str(path))[0] == EXIT_PARSE
        missing = tmp_path / "missing.arr"
        assert run_cli("analyze", str(missing))[0] == EXIT_PARSE

    def test_duplicate_hyperplane_is_input_error(self, tmp_path):
        path = tmp_path / "dup.arr"
        path.write_text("vars x y\nhyperplane x\nhyperplane 2x\n")
        assert run_cli("analyze", str(path))[0] == EXIT_PARSE

    def test_compute_failure(self, tmp_path, monkeypatch):
        from arrfree.gin import GenericityExhaustedError
        import arrfree.cli as cli_module

        def explode(*args, **kwargs):
            raise GenericityExhaustedError("no agreement", [])
        monkeypatch.setattr(cli_module.arr, "analyze", explode)
        monkeypatch.setattr(cli_module, "analyze", explode)
        path = tmp_path / "five.arr"
        path.write_text(FIVE_ARR)
        assert run_cli("analyze", str(path))[0] == EXIT_COMPUTE


class TestJsonRoundTrip:
    def test_report_bits(self, tmp_path):
        from arrfree import Arrangement
        A = Arrangement(polys(["x", "y", "z", "x-y"], 3))
        report = analyze(A, GinConfig(seed=13))
        encoded = json.dumps(report_to_dict(report))
        rebuilt = report_from_dict(json.loads(encoded))
        assert rebuilt == report
        assert json.dumps(report_to_dict(rebuilt)) == encoded

    def test_not_free_report_roundtrip(self):
        from arrfree import Arrangement
        A = Arrangement(polys(["x", "x+y-z", "x+z", "x+2z", "x+y+z"], 3))
        report = analyze(A, GinConfig(seed=21))
        rebuilt = report_from_dict(json.loads(json.dumps(report_to_dict(report))))
        assert rebuilt == report

    def test_trivially_free_report_roundtrip(self):
        from arrfree import Arrangement, Polynomial
        A = Arrangement([Polynomial.variable(1, 1)])
        report = analyze(A, GinConfig(seed=2))
        rebuilt = report_from_dict(json.loads(json.dumps(report_to_dict(report))))
        assert rebuilt == report and rebuilt.trivially_free


class TestRendering:
    def test_marks_failures_and_d0(self):
        from arrfree import StronglyStableIdeal, sectional_matrix
        B = StronglyStableIdeal([(2, 0, 0, 0), (1, 2, 0, 0),
                                 (1, 1, 1, 0), (0, 4, 0, 0)], 4)
        M = sectional_matrix(B, 5)
        text = render_sectional_matrix(M, d0=3)
        assert "[3]" in text
        assert "!5" in text  # the broken triangle position in row 3
