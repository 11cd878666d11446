"""gffcheck command line.

Exit codes::

    0   everything requested holds or was computed
    1   a mathematical verdict fails, or a plane is degenerate
    2   input or usage error
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from . import curvature as cv
from .expressions import ParseError, parse_vector_expression
from .report import Report, serialize_report
from .specfile import FIXTURES, SpecError, builtin_fixture, load_manifold_spec, parse_point
from .structure import GffStructure, StructureError
from .suite import classify_report, curvature_report, verify_report

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    path: Optional[str] = None
    fixture: Optional[str] = None
    format: str = "text"
    point: Optional[str] = None
    plane: Optional[str] = None
    phi: Optional[str] = None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gffcheck", description="Exact checks for indefinite metric g.f.f-manifolds.")
    p.add_argument("command", choices=("classify", "curvature", "verify"))
    p.add_argument("path", nargs="?", help="manifold definition file")
    p.add_argument("--fixture", choices=FIXTURES, help="use a bundled example instead of a file")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--point", help="evaluation point, e.g. x=1,y=-1/2 (unset coordinates are 0; the default is the origin)")
    p.add_argument("--plane", help='plane as "X=<vector>; Y=<vector>" using d<coord> and Z1..Zr')
    p.add_argument("--phi", help='vector in D for the phi-sectional curvature, "X=<vector>"')
    return p


def load_spec(cfg: RunConfig):
    if (cfg.path is None) == (cfg.fixture is None):
        raise UsageError("give exactly one of a definition file or --fixture")
    if cfg.fixture is not None:
        return builtin_fixture(cfg.fixture)
    return load_manifold_spec(cfg.path)


def vector_basis(s: GffStructure) -> dict:
    chart = s.chart
    basis = {}
    for i, c in enumerate(s.coords):
        basis[f"d{c}"] = [chart.one if j == i else chart.zero for j in range(s.dim)]
    for a, x in enumerate(s.xi):
        basis[f"Z{a + 1}"] = list(x.comps)
    return basis


def _vector_at(s: GffStructure, text: str, point: dict):
    comps = parse_vector_expression(text, s.chart, vector_basis(s))
    return [f.evaluate(point) for f in comps]


def _named(text: str, names: Sequence[str]) -> dict:
    out = {}
    for part in text.split(";"):
        if not part.strip():
            continue
        name, sep, expr = part.partition("=")
        name = name.strip()
        if not sep or name not in names:
            raise UsageError(f"expected {' and '.join(n + '=<vector>' for n in names)}, found {part.strip()!r}")
        if name in out:
            raise UsageError(f"{name} given twice")
        out[name] = expr
    missing = [n for n in names if n not in out]
    if missing:
        raise UsageError(f"missing {', '.join(missing)}")
    return out


def parse_plane(s: GffStructure, text: str, point: dict):
    parts = _named(text, ("X", "Y"))
    return _vector_at(s, parts["X"], point), _vector_at(s, parts["Y"], point)


def parse_phi_vector(s: GffStructure, text: str, point: dict):
    if "=" not in text:
        text = "X=" + text
    return _vector_at(s, _named(text, ("X",))["X"], point)


def run(cfg: RunConfig) -> tuple[Report, int]:
    spec = load_spec(cfg)
    point = parse_point(cfg.point if cfg.point is not None else "0", spec.coords)
    s = GffStructure.from_spec(spec)
    if cfg.command == "classify":
        rep = classify_report(s)
        return rep, EXIT_OK if rep.classification != "not-gff" else EXIT_FAIL
    if cfg.command == "curvature":
        plane = parse_plane(s, cfg.plane, point) if cfg.plane else None
        phi_vec = parse_phi_vector(s, cfg.phi, point) if cfg.phi else None
        rep = curvature_report(s, point, plane, phi_vec)
        return rep, EXIT_OK if rep.all_hold else EXIT_FAIL
    rep = verify_report(s)
    return rep, EXIT_OK if rep.all_hold else EXIT_FAIL


GEOMETRIC_ERRORS = (
    cv.LinearDependenceError,
    cv.DegeneratePlaneError,
    cv.LightlikeVectorError,
    cv.NotInDistributionError,
)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(args.command, args.path, args.fixture, args.format, args.point, args.plane, args.phi)
    try:
        rep, code = run(cfg)
    except GEOMETRIC_ERRORS as exc:
        print(f"gffcheck: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (OSError, SpecError, ParseError, UsageError, StructureError) as exc:
        print(f"gffcheck: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(serialize_report(rep, cfg.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
