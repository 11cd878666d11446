"""Verdicts and reports, with text or JSON serialization."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from .scalars import ScalarField, format_rational

CLASSES = ("not-gff", "metric-gff", "K", "C", "almost-S", "S", "S-space-form")


@dataclass(frozen=True)
class Verdict:
    """Outcome of one check.  ``holds`` is None when the check was skipped."""

    name: str
    holds: Optional[bool]
    witness: Optional[str] = None

    @property
    def status(self) -> str:
        if self.holds is None:
            return "skipped"
        return "holds" if self.holds else "fails"

    def __bool__(self):
        return bool(self.holds)


def skipped(name: str, reason: str = "precondition failed") -> Verdict:
    return Verdict(name, None, reason)


def render_value(v) -> str:
    if isinstance(v, Fraction):
        return format_rational(v)
    if isinstance(v, ScalarField):
        return str(v)
    return str(v)


def render_index(idx, labels=None) -> str:
    if labels is None:
        return "[" + ",".join(str(i + 1) for i in idx) + "]"
    return "(" + ", ".join(labels[i] for i in idx) + ")"


def zero_verdict(name: str, arr, labels=None) -> Verdict:
    """Verdict that every component of ``arr`` vanishes identically.

    The witness for a failure is the first nonzero component and its value.
    """
    arr = np.asarray(arr, dtype=object)
    for idx in np.ndindex(arr.shape):
        f = arr[idx]
        if not f.is_zero():
            return Verdict(name, False, f"{render_index(idx, labels)} = {f.reduced()}")
    return Verdict(name, True)


def combine(name: str, verdicts) -> Verdict:
    """Conjunction of sub-verdicts; skipped parts are ignored, witness from the first failure."""
    verdicts = list(verdicts)
    for v in verdicts:
        if v.holds is False:
            witness = v.name if not v.witness else f"{v.name}: {v.witness}"
            return Verdict(name, False, witness)
    if verdicts and all(v.holds is None for v in verdicts):
        return Verdict(name, None, verdicts[0].witness)
    return Verdict(name, True)


@dataclass
class Report:
    classification: str = "not-gff"
    space_form_c: Optional[Fraction] = None
    verdicts: list = field(default_factory=list)
    quantities: list = field(default_factory=list)  # (name, rendered value)

    def add(self, *verdicts: Verdict) -> None:
        self.verdicts.extend(verdicts)

    def note(self, name: str, value) -> None:
        self.quantities.append((name, render_value(value)))

    def verdict(self, name: str) -> Verdict:
        for v in self.verdicts:
            if v.name == name:
                return v
        raise KeyError(name)

    @property
    def failures(self) -> list:
        return [v for v in self.verdicts if v.holds is False]

    @property
    def all_hold(self) -> bool:
        return not self.failures


def serialize_report(report: Report, fmt: str = "text") -> str:
    if fmt == "json":
        doc = {
            "classification": report.classification,
            "space_form_c": None if report.space_form_c is None else format_rational(report.space_form_c),
            "verdicts": [
                {"name": v.name, "holds": v.holds, "status": v.status, "witness": v.witness}
                for v in report.verdicts
            ],
            "quantities": [{"name": n, "value": val} for n, val in report.quantities],
        }
        return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    lines = [f"classification: {report.classification}"]
    if report.space_form_c is not None:
        lines.append(f"space form constant c = {format_rational(report.space_form_c)}")
    for name, value in report.quantities:
        lines.append(f"{name}: {value}")
    if report.verdicts:
        width = max(len(v.name) for v in report.verdicts)
        for v in report.verdicts:
            line = f"  {v.name.ljust(width)}  {v.status}"
            if v.witness and v.holds is not True:
                line += f"  ({v.witness})"
            lines.append(line)
    return "\n".join(lines) + "\n"
