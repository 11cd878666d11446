"""Shared fixtures and independent sympy oracles."""

from functools import lru_cache

import numpy as np
import pytest
import sympy
from hypothesis import settings

from gffcheck import GffStructure, builtin_fixture

# sympy oracles are slow; exactness matters here, not latency
settings.register_profile("exact", deadline=None)
settings.load_profile("exact")


@lru_cache(maxsize=None)
def structure(name: str) -> GffStructure:
    return GffStructure.from_spec(builtin_fixture(name))


@lru_cache(maxsize=None)
def curvature(name: str):
    return structure(name).curvature


def to_sympy(f, coords):
    """Convert a ScalarField to a sympy expression through its printed form."""
    syms = {c: sympy.Symbol(c) for c in coords}
    return sympy.sympify(str(f).replace("^", "**"), locals=syms)


def sympy_matrix(arr, coords) -> sympy.Matrix:
    arr = np.asarray(arr, dtype=object)
    return sympy.Matrix(arr.shape[0], arr.shape[1], lambda i, j: to_sympy(arr[i, j], coords))


def sympy_christoffel(G: sympy.Matrix, syms):
    """Gamma^k_ij straight from the textbook formula, simplified by sympy."""
    n = len(syms)
    Ginv = G.inv()
    out = {}
    for k in range(n):
        for i in range(n):
            for j in range(n):
                val = sum(
                    Ginv[k, l] * (sympy.diff(G[l, i], syms[j]) + sympy.diff(G[l, j], syms[i]) - sympy.diff(G[i, j], syms[l]))
                    for l in range(n)
                ) / 2
                out[k, i, j] = sympy.cancel(val)
    return out


@pytest.fixture(params=["example1", "example2", "example3"])
def fixture_name(request):
    return request.param


ACCEPTANCE_LINES: list = []


def report_criterion(number: int, ok: bool, detail: str) -> None:
    line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
