from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gffcheck import Chart, builtin_fixture, load_manifold_spec, parse_manifold_spec
from gffcheck.expressions import ParseError, parse_expression, parse_vector_expression
from gffcheck.specfile import FIXTURES, SpecError, format_manifold_spec, parse_point

CH = Chart(["x", "y"])
x, y = CH.coordinate("x"), CH.coordinate("y")


@pytest.mark.parametrize(
    "text, expected",
    [
        ("-y^2", -(y * y)),
        ("(x+1)^2*3/4", (x + 1) * (x + 1) * Fraction(3, 4)),
        ("2*x*y - 3/4", 2 * x * y - Fraction(3, 4)),
        ("--x", x),
        ("x^0", CH.one),
        ("1/2 - 2*y^2", Fraction(1, 2) - 2 * y * y),
    ],
)
def test_parse_examples(text, expected):
    assert parse_expression(text, CH) == expected


@pytest.mark.parametrize(
    "text, column",
    [("1.5", 2), ("x^", 3), ("(x", 3), ("x**2", 3), ("z", 1), ("x^-1", 3), ("", 1), ("1/0", 3), ("2 x", 3), ("x/2", 2)],
)
def test_parse_errors_carry_position(text, column):
    with pytest.raises(ParseError) as err:
        parse_expression(text, CH)
    assert err.value.column == column


@st.composite
def expressions(draw, depth=0):
    if depth > 2 or draw(st.booleans()):
        return draw(st.sampled_from(["x", "y", "1", "3/4", "2"]))
    a, b = draw(expressions(depth=depth + 1)), draw(expressions(depth=depth + 1))
    op = draw(st.sampled_from(["+", "-", "*", "^"]))
    if op == "^":
        return f"({a})^{draw(st.integers(0, 3))}"
    return f"({a}) {op} ({b})"


@given(expressions())
def test_print_parse_round_trip(text):
    f = parse_expression(text, CH)
    assert parse_expression(str(f), CH) == f


@given(expressions())
def test_parse_agrees_with_python_evaluation(text):
    # oracle: Python evaluates the same arithmetic on Fractions
    pt = {"x": Fraction(2, 3), "y": Fraction(-5, 7)}
    py = text.replace("^", "**").replace("3/4", "Fraction(3, 4)")
    expected = eval(py, {"Fraction": Fraction}, {k: v for k, v in pt.items()})
    assert parse_expression(text, CH).evaluate(pt) == expected


def test_vector_expressions():
    basis = {"dx": [CH.one, CH.zero], "dy": [CH.zero, CH.one]}
    assert parse_vector_expression("dx - y*dy", CH, basis) == [CH.one, -y]
    assert parse_vector_expression("2*(dx+y*dy)", CH, basis) == [2 * CH.one, 2 * y]
    for bad in ("dx*dy", "dx^2", "dx+1"):
        with pytest.raises(ParseError):
            parse_vector_expression(bad, CH, basis)


def test_parse_point():
    assert parse_point("x=1, y=-1/2", CH.coords) == {"x": 1, "y": Fraction(-1, 2)}
    assert parse_point("0", CH.coords) == {"x": 0, "y": 0}
    assert parse_point("y=3", CH.coords)["x"] == 0
    for bad in ("x=0.5", "w=1", "x", "x=1/0"):
        with pytest.raises(SpecError):
            parse_point(bad, CH.coords)


@pytest.mark.parametrize("name", FIXTURES)
def test_fixture_round_trip(name):
    spec = builtin_fixture(name)
    again = parse_manifold_spec(format_manifold_spec(spec))
    assert again.coords == spec.coords and again.r == spec.r
    for field in ("phi", "xi", "eta", "metric"):
        a, b = getattr(spec, field), getattr(again, field)
        assert all(u == v for ra, rb in zip(a, b) for u, v in zip(ra, rb)), field


def test_load_from_file(tmp_path):
    p = tmp_path / "ex3.gff"
    p.write_text(format_manifold_spec(builtin_fixture("example3")))
    assert load_manifold_spec(p).dim == 4


GOOD = """dim 3
frame 1
coords x y z
phi[1][2] = -1
phi[2][1] = 1
xi[1][3] = 1
eta[1][3] = 1
g[1][1] = 1
g[2][2] = 1
g[3][3] = 1
sample x=1 y=0 z=0
"""


def test_minimal_file_and_samples():
    spec = parse_manifold_spec(GOOD)
    assert spec.dim == 3 and spec.r == 1
    assert spec.points() == [{"x": 1, "y": 0, "z": 0}]


@pytest.mark.parametrize(
    "edit, line",
    [
        (("g[3][3] = 1", "g[3][3] = 1.0"), 10),
        (("g[2][2] = 1", "g[2][2] = 1\ng[1][2] = x\ng[2][1] = y"), 11),
        (("phi[2][1] = 1", "phi[4][1] = 1"), 5),
        (("dim 3", "dim 4"), 0),
        (("frame 1", "frame 2"), 0),
        (("coords x y z", "coords x y y"), 3),
        (("eta[1][3] = 1", "eta[1][3] = w"), 7),
        (("xi[1][3] = 1", "xi[1][3] = 1\nxi[1][3] = 2"), 7),
        (("sample x=1 y=0 z=0", "sample q=1"), 11),
    ],
)
def test_spec_errors(edit, line):
    with pytest.raises((SpecError, ParseError)) as err:
        parse_manifold_spec(GOOD.replace(*edit))
    if line:
        assert getattr(err.value, "line", None) == line


def test_missing_file():
    with pytest.raises(OSError):
        load_manifold_spec("/nonexistent/file.gff")
