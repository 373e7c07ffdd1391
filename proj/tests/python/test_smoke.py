import json
import os
from fractions import Fraction

import pytest
import sympy as sp

import ncgcurv as nc

FIXTURES = os.environ.get("NCGCURV_FIXTURES", os.path.join(os.path.dirname(__file__), "..", "fixtures"))

L = sp.Symbol("L")


def to_sympy(s):
    """Independent reading of a scalar token as a sympy expression."""
    text = str(s).replace("^", "**").replace("r2", "sqrt(2)").replace("i", "I")
    return sp.sympify(text, locals={"L": L, "I": sp.I, "sqrt": sp.sqrt})


def same(a, b):
    return sp.simplify(sp.expand(a - b)) == 0


@pytest.mark.parametrize(
    "text",
    ["0", "1/2*L", "2*r2*L", "-i*L^-3", "(1)/(1+L)", "(L^2-1)/(L-1)", "(1/3+i*r2)*L^2 + L^-1"],
)
def test_scalar_round_trip(text):
    s = nc.Scalar(text)
    assert nc.Scalar(str(s)) == s
    assert same(to_sympy(s), to_sympy(text))


def test_scalar_arithmetic_against_sympy():
    samples = ["1+L", "i*L^-1", "r2 - 1/2*L^3", "(2)/(1-L)", "3"]
    for a in samples:
        for b in samples:
            x, y = nc.Scalar(a), nc.Scalar(b)
            ex, ey = to_sympy(a), to_sympy(b)
            assert same(to_sympy(x + y), ex + ey)
            assert same(to_sympy(x * y), ex * ey)
            assert same(to_sympy(x - y), ex - ey)
            assert same(to_sympy(x / y), ex / ey)


def test_scalar_canonical_and_eval():
    assert nc.Scalar("(L^2-1)/(L-1)") == nc.Scalar("1+L")
    assert nc.Scalar.L(1) * nc.Scalar.L(-1) == nc.Scalar(1)
    z = nc.Scalar("L").eval("1/4")
    assert abs(z - 1j) < 1e-12
    conj = nc.Scalar("i*L^2").conj()
    assert conj == nc.Scalar("-i*L^-2")
    with pytest.raises(ValueError):
        nc.Scalar("1+")
    with pytest.raises(ZeroDivisionError):
        nc.Scalar("0").inv()
    with pytest.raises(ZeroDivisionError):
        nc.Scalar("(1)/(1+L)").eval("1/2")


def test_builtins_and_round_trip():
    names = nc.builtin_names()
    assert {"torus", "sphere3", "sphere3_real"} <= set(names)
    for n in names:
        g = nc.builtin(n)
        assert all(c["status"] == "pass" for c in nc.validate(g))
        assert nc.parse_geometry(g.to_yaml()) == g
    with pytest.raises(KeyError):
        nc.builtin("nope")


def test_curvature_oracles():
    torus, sphere = nc.builtin("torus"), nc.builtin("sphere3")
    sol = nc.solve_levi_civita(torus)
    assert sol["A"]["terms"] == [] and sol["concordant"]
    assert all(c["status"] == "pass" for c in sol["postconditions"])
    assert nc.scalar_curvature(torus) == "0"
    for mode in ("classical", "deformed"):
        for ch in ("right", "left"):
            assert nc.scalar_curvature(sphere, mode, ch) == "6"
    assert nc.weitzenbock_residue(sphere) == "3/2"
    assert Fraction(nc.weitzenbock_residue(sphere, "classical")) == Fraction(6, 4)
    assert nc.weitzenbock_residue(torus) == "0"


def test_theta_identities():
    checks = nc.verify_theta_theorems(nc.builtin("torus"), theta="1/5", samples=3)
    assert checks and all(c["status"] == "pass" for c in checks)


def test_malformed_inputs():
    with pytest.raises(ValueError) as e:
        nc.parse_geometry("meta: {name: x\n  dimension: [\n")
    assert "line" in str(e.value)
    with pytest.raises(ValueError):
        nc.load_geometry(os.path.join(FIXTURES, "bad_gram.geom"))


def test_cli_round_trip():
    code, rep = nc.report("scalar", "--geometry", "sphere3")
    assert code == 0 and rep["objects"]["r"] == "6"
    code, rep = nc.report("check-all", "--geometry", os.path.join(FIXTURES, "sabotage_connection.geom"))
    assert code == 1
    assert any(c["status"] == "fail" and c.get("witness") for c in rep["checks"])
    code, out, err = nc.run_cli(["scalar", "--geometry", "missing"])
    assert code == 2 and err
    a = nc.run_cli(["connection", "-g", "sphere3", "--seed", "4", "--json", "-"])[1]
    assert json.loads(a) == json.loads(nc.run_cli(["connection", "-g", "sphere3", "--seed", "4", "--json", "-"])[1])
