"""Expression grammar, printer round-trips, and the CLI driver."""

import json
import subprocess
import sys

import numpy as np
import pytest

from hyperclifford import (
    Multivector,
    ParseError,
    clifford,
    eval_ast,
    parse,
    parse_scalar_field,
    print_ast,
)
from hyperclifford.expr import BasisE, BasisT, Bin
from hyperclifford.exterior import hyperbolic


CORPUS = [
    "e1",
    "t1",
    "e2",
    "t2",
    "3",
    "3.5",
    "-2",
    "e1 ^ t1",
    "e1^e2",
    "t1^t2",
    "e1 ^ t1 ^ e2",
    "e1 + t1",
    "e1 - t1",
    "e1 + t1 - e2",
    "e1 * t1",
    "t1*e1 + e1*t1",
    "e1 _| (e1^t1)",
    "(e1^t1) |_ t1",
    "e1 _| t1 _| e2",
    "e1 |_ t1 |_ e2",
    "sigma",
    "hodge(sigma)",
    "unhodge(sigma)",
    "rev(e1^t1)",
    "gi(e1^t1)",
    "conj(e1^t1)",
    "hconj(e1)",
    "part(e1^e2, 1)",
    "part(3 + e1 + e1^e2, 0)",
    "sp(e1, t1)",
    "sp(sigma, sigma)",
    "hodge(e1^t1)",
    "2 * e1",
    "2 ^ e1",
    "e1 ^ 2",
    "(e1 + e2) ^ t1",
    "(e1 + e2) * (t1 + t2)",
    "e1 * e2 * t1 * t2",
    "rev(sigma) _| sigma",
    "hodge(e1) + unhodge(e1)",
    "part(sigma, 4)",
    "sp(e1 ^ e2, t1 ^ t2)",
    "1 + 2 + 3",
    "1 - 2 - 3",
    "e1 ^ (t1 + t2)",
    "hconj(e1 ^ t1)",
    "rev(rev(e1))",
    "part(part(sigma, 4), 4)",
    "sp(hodge(e1), hodge(t1))",
    "(e1 _| (e1 ^ t1)) * t2",
    "-e1 + t1",
    "0.25 * sigma",
    "gi(hconj(conj(rev(e1^t2))))",
]


def test_roundtrip_corpus():
    assert len(CORPUS) >= 50
    for text in CORPUS:
        ast = parse(text, 2)
        printed = print_ast(ast)
        again = parse(printed, 2)
        assert again == ast, f"round-trip failed for {text!r} -> {printed!r}"


def test_parse_examples():
    ast = parse("e1^t1", 2)
    assert ast == Bin("^", BasisE(1), BasisT(1))
    val = eval_ast(parse("t1*e1 + e1*t1", 2), 2)
    assert val.max_diff(Multivector.scalar(hyperbolic(2), 2.0)) == 0.0
    val = eval_ast(parse("part(e1^e2, 1)", 2), 2)
    assert val.norm_inf() == 0.0
    val = eval_ast(parse("hodge(sigma)", 2), 2)
    assert val.max_diff(Multivector.scalar(hyperbolic(2), 1.0)) == 0.0
    # precedence: wedge binds before contraction before product before sum
    ast = parse("e1 ^ t1 _| e2 * t2 + e1", 2)
    assert ast.op == "+"
    assert ast.left.op == "*"
    assert ast.left.left.op == "_|"
    assert ast.left.left.left.op == "^"


def test_parse_errors_carry_offsets():
    with pytest.raises(ParseError) as err:
        parse("e1 ^", 2)
    assert err.value.offset == 5
    with pytest.raises(ParseError) as err:
        parse("e3", 2)
    assert "out of range" in str(err.value)
    with pytest.raises(ParseError) as err:
        parse("foo(e1)", 2)
    assert "unknown function" in str(err.value)
    with pytest.raises(ParseError) as err:
        parse("part(e1)", 2)
    assert "argument" in str(err.value)
    with pytest.raises(ParseError) as err:
        parse("e1 $ e2", 2)
    assert err.value.offset == 4
    with pytest.raises(ParseError):
        parse("(e1", 2)
    with pytest.raises(ParseError):
        parse("e1 e2", 2)


def test_scalar_field_grammar():
    f = parse_scalar_field("cos(x1)/sin(x1)", 2)
    assert float(f((1.0, 0.5))) == pytest.approx(1 / np.tan(1.0))
    g = parse_scalar_field("-sin(x1)*cos(x1)", 2)
    assert float(g((0.7, 0.0))) == pytest.approx(-np.sin(0.7) * np.cos(0.7))
    h = parse_scalar_field("x1^2 + 2*x2 - 1", 2)
    assert float(h((3.0, 4.0))) == pytest.approx(9 + 8 - 1)
    with pytest.raises(ParseError):
        parse_scalar_field("x3", 2)
    with pytest.raises(ParseError):
        parse_scalar_field("tan(x1)", 2)
    with pytest.raises(ParseError):
        parse_scalar_field("x1 ^ 1.5", 2)


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "hyperclifford.cli", *args],
        capture_output=True,
        text=True,
        timeout=600,
    )


def test_cli_eval():
    out = run_cli("--dim", "2", "eval", "t1*e1 + e1*t1")
    assert out.returncode == 0
    assert float(out.stdout.strip()) == pytest.approx(2.0)
    out = run_cli("--dim", "2", "eval", "e1^t1", "--json")
    payload = json.loads(out.stdout)
    assert payload["n"] == 2
    assert payload["blades"] == [{"mask": 5, "coeff": 1.0}]
    out = run_cli("--dim", "2", "eval", "e9")
    assert out.returncode == 2
    assert "error" in out.stderr


def test_cli_basis_and_curvature():
    out = run_cli("--dim", "2", "basis")
    assert out.returncode == 0
    assert "s1" in out.stdout and "0.7071" in out.stdout
    out = run_cli("curvature", "--preset", "sphere", "--point", "1.5707963,0.3")
    assert out.returncode == 0
    assert "rho(d1,d2,d2) = 1.0000 e1" in out.stdout
    assert "torsion(d1,d2) = 0" in out.stdout
    out = run_cli("curvature", "--preset", "sphere", "--point", "9.9,0.0")
    assert out.returncode == 2
    # custom preset reproduces the polar-chart curvature
    out = run_cli(
        "curvature",
        "--preset",
        "custom",
        "--point",
        "1.5707963,0.3",
        "--gamma",
        "1,2,2=-sin(x1)*cos(x1)",
        "--gamma",
        "2,1,2=cos(x1)/sin(x1)",
        "--gamma",
        "2,2,1=cos(x1)/sin(x1)",
    )
    assert out.returncode == 0
    assert "rho(d1,d2,d2) = 1.0000 e1" in out.stdout


def test_cli_check_determinism_and_exit():
    a = run_cli("--dim", "2", "check", "--suite", "duality", "--cases", "5", "--seed", "7")
    b = run_cli("--dim", "2", "check", "--suite", "duality", "--cases", "5", "--seed", "7")
    assert a.returncode == 0
    assert a.stdout == b.stdout
    bad = run_cli("--dim", "2", "check", "--suite", "nonsense", "--cases", "1")
    assert bad.returncode == 2


def test_cli_check_exit_code_on_failure():
    # an absurd tolerance forces failures and exit code 1
    out = run_cli("--dim", "2", "check", "--suite", "duality", "--cases", "2",
                  "--seed", "7", "--tol", "1e-30")
    assert out.returncode == 1
    assert "FAIL" in out.stdout
