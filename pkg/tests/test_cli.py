import io
import json
import subprocess
import sys

import pytest

from metabelian import arith
from metabelian.cli import main
from metabelian.group import evaluate_word
from metabelian.words import parse_element, parse_word


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    status = main(list(argv), stdout=out, stderr=err)
    return status, out.getvalue(), err.getvalue()


def test_nf_example():
    assert run("nf", "--rank", "2", "x2 x1") == (0, "x1 x2 [x2,x1]^(1)\n", "")


def test_eq_example():
    assert run("eq", "--rank", "2", "x1 x1^-1", "1")[:2] == (0, "true\n")
    assert run("eq", "--rank", "2", "x1 x2", "x2 x1")[:2] == (0, "false\n")


def test_check_axioms_example():
    status, out, _ = run("check-axioms", "--rank", "3", "--samples", "200", "--seed", "7")
    assert status == 0
    assert out.strip().endswith("all properties pass")


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["mul", "--rank", "2", "x2", "x1"], "x1 x2 [x2,x1]^(1)"),
        (["inv", "--rank", "2", "x1 x2"], "x1^-1 x2^-1 [x2,x1]^(a1^-1*a2^-1)"),
        (["pow", "--rank", "2", "[x2,x1]", "-3"], "[x2,x1]^(-3)"),
        (["comm", "--rank", "2", "x2", "x1"], "[x2,x1]^(1)"),
        (["fox", "--rank", "2", "x1 x2 x1^-1", "--index", "1"], "-a2 + 1"),
        (["collect", "--rank", "3", "[x1,x3]^(a2)"], "[x3,x1]^(-a2)"),
        # matches the Fox recovery of the expanded word
        (["collect", "--rank", "3", "[x2,x1]^(a3)"], "[x2,x1]^(1) * [x3,x1]^(a2 - 1) * [x3,x2]^(-a1 + 1)"),
        (["recover", "--rank", "2", "[x2,x1]"], "[x2,x1]^(1)"),
        (["expand", "--rank", "2", "[x2,x1]^(a1)"], "x1^-1 x2^-1 x1^-1 x2 x1^2"),
        (["eval", "--rank", "2", "--alpha", "2,3", "a1^-1 + a2"], "7/2"),
        (["quotient-eq", "--rank", "3", "--alpha", "1,1,1", "[x2,x1]^(a1)", "[x2,x1]"], "true"),
        (["basis-cert", "--rank", "2", "x1^2", "x2"], "FailAbelianization (det = 2)"),
    ],
)
def test_commands(argv, expected):
    status, out, err = run(*argv)
    assert (status, err) == (0, "")
    assert out.strip() == expected


def test_collect_matches_library():
    from metabelian.commod import collect
    from metabelian.words import parse_module_expr, print_module_expr

    text = "[x2,x1]^(a3 + a2^-1) * [x1,x3]^(a2)"
    assert run("collect", "--rank", "3", text)[1].strip() == print_module_expr(collect(parse_module_expr(text, 3)))


def test_encode_decode_roundtrip():
    status, out, _ = run("encode", "--rank", "3", "x3 x1^2 x2^-1")
    assert status == 0
    code = out.strip()
    assert int(code) == arith.encode_element(evaluate_word(parse_word("x3 x1^2 x2^-1", 3)))
    status, out, _ = run("decode", "--rank", "3", code)
    assert parse_element(out.strip(), 3) == evaluate_word(parse_word("x3 x1^2 x2^-1", 3))
    # the JSON envelope is accepted too
    assert run("decode", "--rank", "3", json.dumps({"code": code}))[1] == out


def test_coded_mul():
    e = lambda t: str(arith.encode_element(evaluate_word(parse_word(t, 2))))  # noqa: E731
    status, out, _ = run("coded-mul", "--rank", "2", e("x2"), e("x1"))
    assert (status, out.strip()) == (0, e("x2 x1"))


def test_discriminate():
    status, out, _ = run("discriminate", "--rank", "2", "--json", "--poly", "a1 - a2", "a1 - 1")
    assert status == 0
    payload = json.loads(out)
    a1, a2 = payload["alpha"]
    assert a1 != a2 and a1 != 1
    assert "0" not in payload["values"]


def test_json_envelope_and_determinism():
    argv = ["check-axioms", "--rank", "2", "--samples", "20", "--seed", "3", "--json"]
    first, second = run(*argv), run(*argv)
    assert first == second
    payload = json.loads(first[1])
    assert payload["v"] == 1 and payload["command"] == "check-axioms"
    assert payload["failures"] == 0
    assert first[1] == json.dumps(payload, sort_keys=True) + "\n"
    status, out, _ = run("nf", "--rank", "2", "--json", "x2 x1")
    payload = json.loads(out)
    assert payload["text"] == "x1 x2 [x2,x1]^(1)"
    assert payload["element"]["rank"] == 2


def error_of(err):
    payload = json.loads(err)
    assert payload["v"] == 1
    return payload["error"], payload["message"]


def test_syntax_errors_exit_2():
    status, out, err = run("nf", "--rank", "2", "x1 ^")
    assert status == 2 and out == ""
    kind, message = error_of(err)
    assert kind == "ParseError" and "position 4" in message
    assert run("nf", "--rank", "2")[0] == 2
    assert run("frobnicate", "--rank", "2")[0] == 2
    assert run("nf", "x1")[0] == 2
    assert run("nf", "--rank", "1", "x1")[0] == 2
    assert run("eval", "--rank", "2", "a1")[0] == 2
    assert run("eval", "--rank", "2", "--alpha", "1,x", "a1")[0] == 2
    assert run("decode", "--rank", "2", "12a")[0] == 2


def test_domain_errors_exit_1():
    status, _, err = run("nf", "--rank", "2", "x1 x3")
    assert status == 1 and error_of(err)[0] == "BadIndex"
    status, _, err = run("recover", "--rank", "2", "x1")
    assert status == 1 and error_of(err)[0] == "NotInCommutant"
    status, _, err = run("decode", "--rank", "3", "5")
    assert status == 1 and error_of(err)[0] == "NotACode"
    status, _, err = run("eval", "--rank", "2", "--alpha", "0,1", "a1")
    assert status == 1 and error_of(err)[0] == "ZeroEvaluationPoint"
    status, _, err = run("discriminate", "--rank", "2", "--poly", "0")
    assert status == 1 and error_of(err)[0] == "ZeroPolynomial"


def test_corpus(tmp_path):
    f = tmp_path / "pairs.txt"
    f.write_text("x2 x1 ; x1 x2 [x2,x1]\n\nx1 x2 ; x2 x1\n")
    status, out, _ = run("corpus", "--rank", "2", str(f))
    assert status == 0
    lines = out.strip().splitlines()
    assert lines[0].endswith(": equal/equal")
    assert lines[-1].endswith(": unequal/unequal")


def test_corpus_empty(tmp_path):
    f = tmp_path / "empty.txt"
    f.write_text("")
    status, out, err = run("corpus", "--rank", "2", str(f))
    assert (status, out.strip(), err) == (0, "", "")


def test_corpus_malformed(tmp_path):
    f = tmp_path / "bad.txt"
    f.write_text("x1 ; x1\nx1 x2\n")
    status, _, err = run("corpus", "--rank", "2", str(f))
    assert status == 2
    assert "line 2" in error_of(err)[1]
    status, _, err = run("corpus", "--rank", "2", str(tmp_path / "missing.txt"))
    assert status == 1


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "metabelian.cli", "nf", "--rank", "2", "x2 x1"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout == "x1 x2 [x2,x1]^(1)\n"
