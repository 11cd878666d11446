"""Manifold definition files.

A definition file is line oriented::

    # comments start with '#'
    dim 4
    frame 2
    coords x y z1 z2
    phi[1][2] = -1
    xi[1][3] = 1
    eta[1][1] = y
    g[1][1] = 1/2
    sample x=1 y=0 z1=0 z2=0

Indices are 1-based and omitted entries are zero.  ``phi[i][j]`` is the
i-th component of phi applied to the j-th coordinate frame vector.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Mapping

from .expressions import parse_expression
from .scalars import Chart, ScalarField

FIXTURES = ("example1", "example2", "example3")

_ENTRY = re.compile(r"(phi|xi|eta|g)\s*\[\s*(\d+)\s*\]\s*\[\s*(\d+)\s*\]\s*=(.*)\Z")
_RATIONAL = re.compile(r"\s*-?\d+(?:/\d+)?\s*\Z")


class SpecError(ValueError):
    """Structural problem in a manifold definition (line is 0 if global)."""

    def __init__(self, message: str, line: int = 0):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


Point = Mapping[str, Fraction]


@dataclass(frozen=True)
class ManifoldSpec:
    chart: Chart
    r: int
    phi: tuple  # phi[i][j], dim x dim
    xi: tuple  # xi[a][i], r x dim
    eta: tuple  # eta[a][i], r x dim
    metric: tuple  # g[i][j], symmetric
    sample_points: tuple = field(default=())  # tuple of dicts coord -> Fraction

    @property
    def dim(self) -> int:
        return self.chart.dim

    @property
    def coords(self) -> tuple[str, ...]:
        return self.chart.coords

    def points(self) -> list[dict[str, Fraction]]:
        """Declared sample points, or the default set when none are given."""
        if self.sample_points:
            return [dict(p) for p in self.sample_points]
        return default_sample_points(self.coords)


def default_sample_points(coords) -> list[dict[str, Fraction]]:
    """The origin plus every point with a single coordinate equal to +1 or -1."""
    origin = {c: Fraction(0) for c in coords}
    pts = [origin]
    for c in coords:
        for s in (1, -1):
            p = dict(origin)
            p[c] = Fraction(s)
            pts.append(p)
    return pts


def parse_point(text: str, coords, line: int = 0) -> dict[str, Fraction]:
    """Parse ``x=1 y=-1/2`` (space or comma separated); unbound coordinates are 0.

    The single token ``0`` stands for the origin.
    """
    point = {c: Fraction(0) for c in coords}
    items = [t for t in re.split(r"[,\s]+", text.strip()) if t]
    if items == ["0"]:
        return point
    for item in items:
        name, sep, value = item.partition("=")
        if not sep:
            raise SpecError(f"expected name=value, found {item!r}", line)
        if name not in point:
            raise SpecError(f"unknown coordinate {name!r}", line)
        if not _RATIONAL.match(value):
            raise SpecError(f"point values must be rationals a or a/b, found {value!r}", line)
        if "/" in value and int(value.split("/")[1]) == 0:
            raise SpecError("zero denominator", line)
        point[name] = Fraction(value.strip())
    return point


def parse_manifold_spec(text: str) -> ManifoldSpec:
    dim = r = None
    coords = None
    entries: dict[str, dict[tuple[int, int], tuple[str, int, int]]] = {k: {} for k in ("phi", "xi", "eta", "g")}
    samples_raw = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        stripped = body.strip()
        head = stripped.split(None, 1)[0]
        if head == "dim":
            dim = _header_int(stripped, "dim", lineno)
        elif head == "frame":
            r = _header_int(stripped, "frame", lineno)
        elif head == "coords":
            coords = tuple(stripped.split()[1:])
            coords_line = lineno
            if not coords:
                raise SpecError("coords needs at least one name", lineno)
        elif head == "sample":
            samples_raw.append((stripped[len("sample"):], lineno))
        else:
            m = _ENTRY.match(stripped)
            if not m:
                raise SpecError(f"unrecognised line {stripped!r}", lineno)
            kind, i, j, expr = m.group(1), int(m.group(2)), int(m.group(3)), m.group(4)
            key = (i, j)
            if key in entries[kind]:
                raise SpecError(f"{kind}[{i}][{j}] given twice", lineno)
            column = body.index("=") + 2
            entries[kind][key] = (expr, lineno, column)

    if dim is None or r is None or coords is None:
        missing = [n for n, v in (("dim", dim), ("frame", r), ("coords", coords)) if v is None]
        raise SpecError(f"missing header(s): {', '.join(missing)}")
    if len(coords) != dim:
        raise SpecError(f"dim is {dim} but {len(coords)} coordinates were declared")
    try:
        chart = Chart(coords)
    except ValueError as exc:
        raise SpecError(str(exc), coords_line) from None
    if r >= dim:
        raise SpecError(f"frame size r={r} must be smaller than dim={dim}")
    if (dim - r) % 2 or dim - r <= 0:
        raise SpecError(f"dim - r = {dim - r} must be even and positive")

    limits = {"phi": (dim, dim), "xi": (r, dim), "eta": (r, dim), "g": (dim, dim)}
    values = {}
    for kind, (rows, cols) in limits.items():
        mat = [[chart.zero] * cols for _ in range(rows)]
        for (i, j), (expr, lineno, column) in entries[kind].items():
            if not (1 <= i <= rows and 1 <= j <= cols):
                raise SpecError(f"{kind}[{i}][{j}] out of range ({rows}x{cols})", lineno)
            mat[i - 1][j - 1] = parse_expression(expr, chart, lineno, column)
        values[kind] = mat

    g = values["g"]
    for (i, j), (_, lineno, _) in entries["g"].items():
        if i > j:
            if (j, i) in entries["g"]:
                if g[i - 1][j - 1] != g[j - 1][i - 1]:
                    raise SpecError(f"metric is not symmetric: g[{i}][{j}] != g[{j}][{i}]", lineno)
            else:
                g[j - 1][i - 1] = g[i - 1][j - 1]
    for i in range(dim):
        for j in range(i + 1, dim):
            g[j][i] = g[i][j]

    samples = tuple(parse_point(t, coords, ln) for t, ln in samples_raw)
    freeze = lambda m: tuple(tuple(row) for row in m)  # noqa: E731
    return ManifoldSpec(
        chart=chart,
        r=r,
        phi=freeze(values["phi"]),
        xi=freeze(values["xi"]),
        eta=freeze(values["eta"]),
        metric=freeze(g),
        sample_points=samples,
    )


def _header_int(line: str, name: str, lineno: int) -> int:
    parts = line.split()
    if len(parts) != 2 or not parts[1].isdigit() or int(parts[1]) <= 0:
        raise SpecError(f"{name} expects one positive integer", lineno)
    return int(parts[1])


def format_manifold_spec(spec: ManifoldSpec) -> str:
    """Render a manifold definition in the file syntax (upper triangle of g only)."""
    lines = [f"dim {spec.dim}", f"frame {spec.r}", "coords " + " ".join(spec.coords)]

    def emit(kind, mat, upper=False):
        for i, row in enumerate(mat):
            for j, f in enumerate(row):
                if upper and j < i:
                    continue
                if not f.is_zero():
                    lines.append(f"{kind}[{i + 1}][{j + 1}] = {f}")

    emit("phi", spec.phi)
    emit("xi", spec.xi)
    emit("eta", spec.eta)
    emit("g", spec.metric, upper=True)
    for p in spec.sample_points:
        lines.append("sample " + " ".join(f"{c}={p[c]}" for c in spec.coords))
    return "\n".join(lines) + "\n"


def load_manifold_spec(path) -> ManifoldSpec:
    with open(path, encoding="utf-8") as fh:
        return parse_manifold_spec(fh.read())


def builtin_fixture(name: str) -> ManifoldSpec:
    """One of the bundled example structures: example1, example2, example3."""
    if name not in FIXTURES:
        raise KeyError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURES)}")
    text = resources.files("gffcheck.fixtures").joinpath(f"{name}.gff").read_text(encoding="utf-8")
    return parse_manifold_spec(text)
